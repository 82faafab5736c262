//! The encryption pipeline: quantize the LL band, XOR it with the keystream,
//! and package the result; decryption reverses the XOR, zero-fills the detail
//! bands and inverse-transforms.

use crate::dwt::{self, DwtError, RealMatrix};
use crate::image_io::GrayImage;
use crate::keystream::{self, KeyError, KeyParams};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CipherError {
    #[error("length mismatch: data {data} bytes vs keystream {keystream} bytes")]
    LengthMismatch { data: usize, keystream: usize },
    #[error("image must have even dimensions >= 8 and 8-bit depth, got {h}x{w} q={q}")]
    UnsupportedImage { h: usize, w: usize, q: u8 },
    #[error("non-finite coefficient")]
    NonFinite,
    #[error(transparent)]
    Dwt(#[from] DwtError),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error("format error: {0}")]
    Format(String),
}

/// Affine quantizer parameters; stored in the clear in the package header.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantParams {
    pub minimum: f64,
    pub step: f64,
}

/// Row-major matrix of quantized coefficient bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl ByteMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, CipherError> {
        if data.len() != rows * cols {
            return Err(CipherError::LengthMismatch { data: data.len(), keystream: rows * cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }
}

/// The wire/disk artifact: header plus ciphertext payload.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherPackage {
    pub height: usize,
    pub width: usize,
    pub bit_depth: u8,
    pub quant: QuantParams,
    pub payload: Vec<u8>,
}

const MAGIC: &[u8; 4] = b"QWC1";
const VERSION: u8 = 0x01;

impl CipherPackage {
    fn check(&self) -> Result<(), CipherError> {
        if self.height % 2 != 0 || self.width % 2 != 0 {
            return Err(CipherError::Format("odd image dimensions in header".into()));
        }
        let expected = (self.height / 2) * (self.width / 2);
        if self.payload.len() != expected {
            return Err(CipherError::Format(format!(
                "payload length {} does not match header ({} expected)",
                self.payload.len(),
                expected
            )));
        }
        Ok(())
    }

    /// Serializes to the bit-exact container format: magic, version, H, W, q,
    /// quantizer minimum and step as big-endian binary64, payload length,
    /// payload bytes.
    pub fn to_bytes(&self) -> Result<Vec<u8>, CipherError> {
        self.check()?;
        let mut out = Vec::with_capacity(30 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.height as u32).to_be_bytes());
        out.extend_from_slice(&(self.width as u32).to_be_bytes());
        out.push(self.bit_depth);
        out.extend_from_slice(&self.quant.minimum.to_be_bytes());
        out.extend_from_slice(&self.quant.step.to_be_bytes());
        out.extend_from_slice(&(self.payload.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.payload);
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CipherError> {
        if bytes.len() < 4 || &bytes[0..4] != MAGIC {
            return Err(CipherError::Format("bad magic".into()));
        }
        if bytes.len() < 30 {
            return Err(CipherError::Format("truncated header".into()));
        }
        if bytes[4] != VERSION {
            return Err(CipherError::Format(format!("unsupported version {}", bytes[4])));
        }
        let height = u32::from_be_bytes(bytes[5..9].try_into().unwrap()) as usize;
        let width = u32::from_be_bytes(bytes[9..13].try_into().unwrap()) as usize;
        let bit_depth = bytes[13];
        let minimum = f64::from_be_bytes(bytes[14..22].try_into().unwrap());
        let step = f64::from_be_bytes(bytes[22..30].try_into().unwrap());
        let len = u32::from_be_bytes(bytes[30..34].try_into().unwrap()) as usize;
        if bytes.len() < 34 + len {
            return Err(CipherError::Format("truncated payload".into()));
        }
        let pkg = CipherPackage {
            height,
            width,
            bit_depth,
            quant: QuantParams { minimum, step },
            payload: bytes[34..34 + len].to_vec(),
        };
        pkg.check()?;
        Ok(pkg)
    }
}

/// Maps LL coefficients onto the q-bit lattice: `b = round((v - min) / step)`,
/// with `step = (max - min) / (2^q - 1)` (or 1 for a constant band).
pub fn quantize_ll(ll: &RealMatrix, bit_depth: u8) -> Result<(ByteMatrix, QuantParams), CipherError> {
    if ll.data().iter().any(|v| !v.is_finite()) {
        return Err(CipherError::NonFinite);
    }
    let levels = f64::from((1u32 << bit_depth) - 1);
    let minimum = ll.data().iter().cloned().fold(f64::INFINITY, f64::min);
    let maximum = ll.data().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let step = if maximum > minimum { (maximum - minimum) / levels } else { 1.0 };
    let data = ll
        .data()
        .iter()
        .map(|&v| ((v - minimum) / step).round().clamp(0.0, levels) as u8)
        .collect();
    Ok((ByteMatrix::new(ll.rows(), ll.cols(), data)?, QuantParams { minimum, step }))
}

/// Inverse of [`quantize_ll`]: `v = minimum + step * b`.
pub fn dequantize_ll(bytes: &ByteMatrix, qp: &QuantParams) -> RealMatrix {
    let data = bytes.data().iter().map(|&b| qp.minimum + qp.step * f64::from(b)).collect();
    RealMatrix::new(bytes.rows(), bytes.cols(), data).expect("finite lattice values")
}

/// Elementwise XOR of equal-length byte sequences.
pub fn xor_bytes(data: &[u8], ks: &[u8]) -> Result<Vec<u8>, CipherError> {
    if data.len() != ks.len() {
        return Err(CipherError::LengthMismatch { data: data.len(), keystream: ks.len() });
    }
    Ok(data.iter().zip(ks).map(|(a, b)| a ^ b).collect())
}

fn keystream_len(height: usize, width: usize) -> usize {
    (height / 2) * (width / 2)
}

/// Full encryption pipeline: forward transform, keep LL, quantize, XOR.
pub fn encrypt(img: &GrayImage, key: &KeyParams) -> Result<CipherPackage, CipherError> {
    let (h, w, q) = (img.height(), img.width(), img.bit_depth());
    if h < 8 || w < 8 || h % 2 != 0 || w % 2 != 0 || q != 8 {
        return Err(CipherError::UnsupportedImage { h, w, q });
    }
    let bands = dwt::forward_d4_2d(&RealMatrix::from_image(img))?;
    let ll = dwt::extract_ll(&bands);
    let (bytes, quant) = quantize_ll(&ll, q)?;
    let ks = keystream::generate(key, keystream_len(h, w))?;
    let payload = xor_bytes(bytes.data(), &ks)?;
    Ok(CipherPackage { height: h, width: w, bit_depth: q, quant, payload })
}

/// Full decryption pipeline: XOR, dequantize, zero-fill, inverse transform,
/// round and clamp.
pub fn decrypt(pkg: &CipherPackage, key: &KeyParams) -> Result<GrayImage, CipherError> {
    pkg.check()?;
    let ks = keystream::generate(key, pkg.payload.len())?;
    let ll_bytes = xor_bytes(&pkg.payload, &ks)?;
    let ll_matrix = ByteMatrix::new(pkg.height / 2, pkg.width / 2, ll_bytes)?;
    let ll = dequantize_ll(&ll_matrix, &pkg.quant);
    let rec = dwt::inverse_d4_2d(&dwt::zero_fill(ll))?;
    Ok(rec.to_image(pkg.bit_depth))
}

/// Decrypts only as far as the LL byte matrix (before dequantization); used
/// by the bit-exactness checks.
pub fn decrypt_ll_bytes(pkg: &CipherPackage, key: &KeyParams) -> Result<ByteMatrix, CipherError> {
    pkg.check()?;
    let ks = keystream::generate(key, pkg.payload.len())?;
    ByteMatrix::new(pkg.height / 2, pkg.width / 2, xor_bytes(&pkg.payload, &ks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwt::{forward_d4_2d, zero_fill};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize) -> GrayImage {
        let pixels = (0..h * w).map(|_| rng.gen()).collect();
        GrayImage::new(h, w, 8, pixels).unwrap()
    }

    #[test]
    fn quantize_endpoints() {
        let ll = RealMatrix::new(1, 2, vec![0.0, 510.0]).unwrap();
        let (bytes, qp) = quantize_ll(&ll, 8).unwrap();
        assert_eq!(bytes.data(), &[0, 255]);
        assert_eq!(qp, QuantParams { minimum: 0.0, step: 2.0 });
    }

    #[test]
    fn quantize_constant_band() {
        let ll = RealMatrix::new(1, 2, vec![7.0, 7.0]).unwrap();
        let (bytes, qp) = quantize_ll(&ll, 8).unwrap();
        assert_eq!(bytes.data(), &[0, 0]);
        assert_eq!(qp, QuantParams { minimum: 7.0, step: 1.0 });
    }

    #[test]
    fn dequantize_direct() {
        let qp = QuantParams { minimum: 0.0, step: 2.0 };
        let m = ByteMatrix::new(1, 1, vec![0]).unwrap();
        assert_eq!(dequantize_ll(&m, &qp).data(), &[0.0]);
        let m = ByteMatrix::new(1, 1, vec![255]).unwrap();
        assert_eq!(dequantize_ll(&m, &qp).data(), &[510.0]);
    }

    #[test]
    fn xor_basics() {
        assert_eq!(xor_bytes(&[0xAC], &[0x53]).unwrap(), vec![0xFF]);
        assert!(matches!(xor_bytes(&[1, 2], &[3]), Err(CipherError::LengthMismatch { .. })));
        let data = [1u8, 2, 3, 4];
        assert_eq!(xor_bytes(&data, &[0, 0, 0, 0]).unwrap(), data.to_vec());
    }

    #[test]
    fn encrypt_rejects_bad_images() {
        let key = KeyParams::new(0.31, 3.99, 100).unwrap();
        let img = GrayImage::new(6, 8, 8, vec![0; 48]).unwrap();
        assert!(matches!(encrypt(&img, &key), Err(CipherError::UnsupportedImage { .. })));
        let img = GrayImage::new(8, 8, 4, vec![0; 64]).unwrap();
        assert!(matches!(encrypt(&img, &key), Err(CipherError::UnsupportedImage { .. })));
    }

    #[test]
    fn payload_is_quarter_of_pixels() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let img = random_image(&mut rng, 32, 16);
        let key = KeyParams::new(0.31, 3.99, 100).unwrap();
        let pkg = encrypt(&img, &key).unwrap();
        assert_eq!(pkg.payload.len(), 32 * 16 / 4);
    }

    #[test]
    fn wrong_seed_flips_payload_bits() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let img = random_image(&mut rng, 64, 64);
        let a = encrypt(&img, &KeyParams::new(0.31, 3.99, 1000).unwrap()).unwrap();
        let b = encrypt(&img, &KeyParams::new(0.31 + 1e-10, 3.99, 1000).unwrap()).unwrap();
        let differing: u32 =
            a.payload.iter().zip(&b.payload).map(|(x, y)| (x ^ y).count_ones()).sum();
        let fraction = f64::from(differing) / (a.payload.len() as f64 * 8.0);
        assert!(fraction >= 0.45, "bit difference fraction {}", fraction);
    }

    #[test]
    fn loss_is_bounded_by_band_discard_plus_quantization() {
        // Compare decrypt output against the zero-filled exact-LL
        // reconstruction; the residual is quantization only, at most one
        // gray level after rounding.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let img = random_image(&mut rng, 32, 32);
        let key = KeyParams::new(0.41, 3.98, 500).unwrap();
        let decrypted = decrypt(&encrypt(&img, &key).unwrap(), &key).unwrap();

        let bands = forward_d4_2d(&RealMatrix::from_image(&img)).unwrap();
        let exact = crate::dwt::inverse_d4_2d(&zero_fill(bands.ll)).unwrap().to_image(8);
        for (a, b) in decrypted.pixels().iter().zip(exact.pixels()) {
            assert!((i16::from(*a) - i16::from(*b)).abs() <= 1);
        }
    }

    #[test]
    fn format_round_trip_and_errors() {
        let pkg = CipherPackage {
            height: 8,
            width: 8,
            bit_depth: 8,
            quant: QuantParams { minimum: -1.5, step: 2.25 },
            payload: (0..16).collect(),
        };
        let bytes = pkg.to_bytes().unwrap();
        assert_eq!(CipherPackage::from_bytes(&bytes).unwrap(), pkg);
        assert!(matches!(CipherPackage::from_bytes(&bytes[..20]), Err(CipherError::Format(_))));
        assert!(matches!(CipherPackage::from_bytes(b"nope"), Err(CipherError::Format(_))));
        let mut wrong_len = bytes.clone();
        wrong_len[33] = 99;
        assert!(matches!(CipherPackage::from_bytes(&wrong_len), Err(CipherError::Format(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn quantizer_round_trip_bound(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<f64> = (0..64).map(|_| rng.gen_range(-500.0..500.0)).collect();
            let ll = RealMatrix::new(8, 8, data).unwrap();
            let (bytes, qp) = quantize_ll(&ll, 8).unwrap();
            let back = dequantize_ll(&bytes, &qp);
            for (v, r) in ll.data().iter().zip(back.data()) {
                prop_assert!((v - r).abs() <= qp.step / 2.0 + 1e-12);
            }
            // Lattice values are fixed points of the quantizer.
            let (again, _) = quantize_ll(&back, 8).unwrap();
            prop_assert_eq!(again.data(), bytes.data());
        }

        #[test]
        fn xor_involution(data in proptest::collection::vec(any::<u8>(), 0..128)) {
            let ks: Vec<u8> = data.iter().map(|b| b.wrapping_mul(167).wrapping_add(13)).collect();
            let once = xor_bytes(&data, &ks).unwrap();
            prop_assert_eq!(xor_bytes(&once, &ks).unwrap(), data);
        }

        #[test]
        fn ll_bytes_survive_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let img = random_image(&mut rng, 16, 16);
            let key = KeyParams::new(0.31, 3.99, 200).unwrap();
            let bands = forward_d4_2d(&RealMatrix::from_image(&img)).unwrap();
            let (expected, _) = quantize_ll(&bands.ll, 8).unwrap();
            let pkg = encrypt(&img, &key).unwrap();
            prop_assert_eq!(decrypt_ll_bytes(&pkg, &key).unwrap(), expected);
        }
    }
}
