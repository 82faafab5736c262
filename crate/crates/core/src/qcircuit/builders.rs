//! Circuit constructions: keyed XOR, low-frequency selection (OLC) and
//! high-frequency zero fill (ZFH), plus gate tallies.

use super::{Circuit, Control, Gate, GateKind, QcError, QubitRegisterLayout, Span};
use crate::cipher::ByteMatrix;

/// Control pattern selecting one register value, MSB first.
fn select(span: &Span, value: usize) -> impl Iterator<Item = Control> + '_ {
    span.qubits().enumerate().map(move |(t, qubit)| Control {
        qubit,
        polarity: ((value >> (span.len - 1 - t)) & 1) as u8,
    })
}

/// One multi-controlled X per set key bit: controls select the full position,
/// the target is the matching color qubit.
pub fn build_xor_circuit(key: &ByteMatrix, layout: &QubitRegisterLayout) -> Result<Circuit, QcError> {
    let view = *layout.primary();
    if key.rows() != view.height() || key.cols() != view.width() {
        return Err(QcError::Shape(format!(
            "key matrix {}x{} does not match layout {}x{}",
            key.rows(),
            key.cols(),
            view.height(),
            view.width()
        )));
    }
    let q = view.color.len;
    let mut circuit = Circuit::new(layout.clone());
    for y in 0..key.rows() {
        for x in 0..key.cols() {
            let word = usize::from(key.get(y, x));
            if word >> q != 0 {
                return Err(QcError::Shape(format!("key word {} exceeds {} bits", word, q)));
            }
            for bit in 0..q {
                // Color bit 0 is the most significant, so key bit (q-1-bit).
                if (word >> (q - 1 - bit)) & 1 == 1 {
                    let controls = select(&view.pos_y, y).chain(select(&view.pos_x, x)).collect();
                    circuit.push(Gate::mcx(view.color.start + bit, controls))?;
                }
            }
        }
    }
    Ok(circuit)
}

/// Low-frequency selection: one block per position whose top coordinate bits
/// are zero. Each block copies the source color into the fresh target
/// register through the ancilla: flip the ancilla on (position, source bit),
/// flip the target off the ancilla, flip the ancilla back. The source
/// register is left untouched.
pub fn build_olc_circuit(h: usize, w: usize, q: usize) -> Result<Circuit, QcError> {
    if h < 1 || w < 1 {
        return Err(QcError::Shape("olc needs h, w >= 1".into()));
    }
    let layout = QubitRegisterLayout::olc(h, w, q)?;
    let source = *layout.primary();
    let target = *layout.secondary().expect("olc layout has a target register");
    let ancilla = layout.ancilla().expect("olc layout has an ancilla");
    let mut circuit = Circuit::new(layout);
    for x in 0..1usize << (w - 1) {
        for y in 0..1usize << (h - 1) {
            for bit in 0..q {
                let mark: Vec<Control> = select(&source.pos_y, y)
                    .chain(select(&source.pos_x, x))
                    .chain(std::iter::once(Control {
                        qubit: source.color.start + bit,
                        polarity: 1,
                    }))
                    .collect();
                circuit.push(Gate::mcx(ancilla, mark.clone()))?;
                circuit.push(Gate::mcx(
                    target.color.start + bit,
                    vec![Control { qubit: ancilla, polarity: 1 }],
                ))?;
                circuit.push(Gate::mcx(ancilla, mark))?;
            }
        }
    }
    Ok(circuit)
}

/// Zero fill: Hadamards spread the fresh output position register over every
/// coordinate, then one block per low-frequency position copies the source
/// pixel into the output color register when both position registers select
/// it.
pub fn build_zfh_circuit(h: usize, w: usize, q: usize) -> Result<Circuit, QcError> {
    let layout = QubitRegisterLayout::zfh(h, w, q)?;
    let source = *layout.primary();
    let output = *layout.secondary().expect("zfh layout has an output image");
    let mut circuit = Circuit::new(layout);
    for qubit in output.pos_y.qubits().chain(output.pos_x.qubits()) {
        circuit.push(Gate::h(qubit))?;
    }
    for x in 0..1usize << (w - 1) {
        for y in 0..1usize << (h - 1) {
            for bit in 0..q {
                let controls: Vec<Control> = select(&source.pos_y, y)
                    .chain(select(&source.pos_x, x))
                    .chain(select(&output.pos_y, y))
                    .chain(select(&output.pos_x, x))
                    .chain(std::iter::once(Control {
                        qubit: source.color.start + bit,
                        polarity: 1,
                    }))
                    .collect();
                circuit.push(Gate::mcx(output.color.start + bit, controls))?;
            }
        }
    }
    Ok(circuit)
}

/// Exact tally per gate kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub pauli_x: usize,
    pub hadamard: usize,
    pub multi_controlled_x: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.pauli_x + self.hadamard + self.multi_controlled_x
    }
}

pub fn gate_count(circuit: &Circuit) -> GateCounts {
    let mut counts = GateCounts::default();
    for gate in circuit.gates() {
        match gate.kind {
            GateKind::PauliX => counts.pauli_x += 1,
            GateKind::Hadamard => counts.hadamard += 1,
            GateKind::MultiControlledX => counts.multi_controlled_x += 1,
        }
    }
    counts
}
