//! Randomized equivalence checks of the gate-level circuits against the
//! classical byte operations.

use qwc_core::cipher::ByteMatrix;
use qwc_core::image_io::GrayImage;
use qwc_core::qcircuit::{
    apply, build_olc_circuit, build_xor_circuit, build_zfh_circuit, decode_image,
    decode_zfh_output, encode_into_view, gate_count, gqir_decode, gqir_encode, GateCounts,
    QcError, QubitRegisterLayout,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct KindResult {
    pub pass: bool,
    pub failures: u32,
    pub gates: GateCounts,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOutcome {
    pub size: usize,
    pub q: u8,
    pub trials: u32,
    pub seed: u64,
    pub olc: KindResult,
    pub zfh: KindResult,
    pub xor: KindResult,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.olc.pass && self.zfh.pass && self.xor.pass
    }

    pub fn summary_lines(&self) -> Vec<String> {
        [("olc", &self.olc), ("zfh", &self.zfh), ("xor", &self.xor)]
            .iter()
            .map(|(name, r)| {
                format!(
                    "{}: {} (trials={}, failures={}, gates: x={} h={} mcx={})",
                    name,
                    if r.pass { "PASS" } else { "FAIL" },
                    self.trials,
                    r.failures,
                    r.gates.pauli_x,
                    r.gates.hadamard,
                    r.gates.multi_controlled_x,
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let kind = |r: &KindResult| {
            format!(
                "{{\"pass\": {}, \"failures\": {}, \"gates\": {{\"pauli_x\": {}, \"hadamard\": {}, \"multi_controlled_x\": {}}}}}",
                r.pass, r.failures, r.gates.pauli_x, r.gates.hadamard, r.gates.multi_controlled_x
            )
        };
        format!(
            "{{\n  \"size\": {},\n  \"q\": {},\n  \"trials\": {},\n  \"seed\": {},\n  \"olc\": {},\n  \"zfh\": {},\n  \"xor\": {}\n}}\n",
            self.size,
            self.q,
            self.trials,
            self.seed,
            kind(&self.olc),
            kind(&self.zfh),
            kind(&self.xor)
        )
    }
}

fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize, q: u8) -> GrayImage {
    let pixels = (0..h * w).map(|_| rng.gen_range(0..(1u16 << q)) as u8).collect();
    GrayImage::new(h, w, q, pixels).expect("generated pixels respect the depth")
}

pub fn run(size: usize, q: u8, trials: u32, seed: u64) -> Result<VerifyOutcome, QcError> {
    let bits = size.ilog2() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let olc = run_olc(size, bits, q, trials, &mut rng)?;
    let zfh = run_zfh(size, bits, q, trials, &mut rng)?;
    let xor = run_xor(size, bits, q, trials, &mut rng)?;
    Ok(VerifyOutcome { size, q, trials, seed, olc, zfh, xor })
}

fn run_olc(
    size: usize,
    bits: usize,
    q: u8,
    trials: u32,
    rng: &mut ChaCha8Rng,
) -> Result<KindResult, QcError> {
    let circuit = build_olc_circuit(bits, bits, usize::from(q))?;
    let layout = circuit.layout().clone();
    let mut failures = 0;
    for _ in 0..trials {
        let img = random_image(rng, size, size, q);
        let input = encode_into_view(&img, &layout, *layout.primary())?;
        let output = apply(&circuit, &input)?;
        let decoded = decode_image(&output, &layout, layout.secondary().expect("olc target"))?;
        let ok = (output.norm_sqr() - 1.0).abs() <= NORM_TOL
            && (0..size).all(|y| {
                (0..size).all(|x| {
                    let expected = if y < size / 2 && x < size / 2 { img.get(y, x) } else { 0 };
                    decoded.get(y, x) == expected
                })
            });
        if !ok {
            failures += 1;
        }
    }
    Ok(KindResult { pass: failures == 0, failures, gates: gate_count(&circuit) })
}

fn run_zfh(
    size: usize,
    bits: usize,
    q: u8,
    trials: u32,
    rng: &mut ChaCha8Rng,
) -> Result<KindResult, QcError> {
    let circuit = build_zfh_circuit(bits, bits, usize::from(q))?;
    let layout = circuit.layout().clone();
    let low = size / 2;
    let mut failures = 0;
    for _ in 0..trials {
        let ll = random_image(rng, low, low, q);
        let input = encode_into_view(&ll, &layout, *layout.primary())?;
        let output = apply(&circuit, &input)?;
        let decoded = decode_zfh_output(&output, &layout)?;
        let ok = (output.norm_sqr() - 1.0).abs() <= NORM_TOL
            && (0..size).all(|y| {
                (0..size).all(|x| {
                    let expected = if y < low && x < low { ll.get(y, x) } else { 0 };
                    decoded.get(y, x) == expected
                })
            });
        if !ok {
            failures += 1;
        }
    }
    Ok(KindResult { pass: failures == 0, failures, gates: gate_count(&circuit) })
}

fn run_xor(
    size: usize,
    bits: usize,
    q: u8,
    trials: u32,
    rng: &mut ChaCha8Rng,
) -> Result<KindResult, QcError> {
    let layout = QubitRegisterLayout::plain(bits, bits, usize::from(q))?;
    let mut failures = 0;
    let mut gates = GateCounts::default();
    for trial in 0..trials {
        let img = random_image(rng, size, size, q);
        let key_img = random_image(rng, size, size, q);
        let key = ByteMatrix::new(size, size, key_img.pixels().to_vec())
            .expect("key matrix matches image dimensions");
        let circuit = build_xor_circuit(&key, &layout)?;
        if trial == 0 {
            gates = gate_count(&circuit);
        }
        let output = apply(&circuit, &gqir_encode(&img)?)?;
        let decoded = gqir_decode(&output, &layout)?;
        let ok = (output.norm_sqr() - 1.0).abs() <= NORM_TOL
            && (0..size)
                .all(|y| (0..size).all(|x| decoded.get(y, x) == img.get(y, x) ^ key.get(y, x)));
        if !ok {
            failures += 1;
        }
    }
    Ok(KindResult { pass: failures == 0, failures, gates })
}
