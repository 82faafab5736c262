//! Dense state-vector simulation.

use super::{Circuit, Gate, GateKind, QcError, QubitRegisterLayout, MAX_QUBITS};
use num_complex::Complex64;

/// Dense complex amplitude vector over `2^n_qubits` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |index> as a computational basis state.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self, QcError> {
        if n_qubits > MAX_QUBITS {
            return Err(QcError::TooLarge(n_qubits));
        }
        let mut amplitudes = vec![Complex64::ZERO; 1 << n_qubits];
        amplitudes[index] = Complex64::ONE;
        Ok(Self { n_qubits, amplitudes })
    }

    pub(crate) fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        Self { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Scales every amplitude by a unit-modulus factor; used in tests to
    /// check global-phase irrelevance.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let factor = Complex64::from_polar(1.0, phase);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }
}

/// Applies the circuit's gates in order and returns the evolved state.
pub fn apply(circuit: &Circuit, state: &StateVector) -> Result<StateVector, QcError> {
    let layout = circuit.layout();
    if layout.n_qubits() != state.n_qubits {
        return Err(QcError::QubitMismatch { circuit: layout.n_qubits(), state: state.n_qubits });
    }
    let mut amps = state.amplitudes.clone();
    for gate in circuit.gates() {
        apply_gate(layout, gate, &mut amps);
    }
    Ok(StateVector { n_qubits: state.n_qubits, amplitudes: amps })
}

fn apply_gate(layout: &QubitRegisterLayout, gate: &Gate, amps: &mut [Complex64]) {
    let target_mask = layout.qubit_mask(gate.target);
    match gate.kind {
        GateKind::PauliX => {
            for i in 0..amps.len() {
                if i & target_mask == 0 {
                    amps.swap(i, i | target_mask);
                }
            }
        }
        GateKind::Hadamard => {
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..amps.len() {
                if i & target_mask == 0 {
                    let j = i | target_mask;
                    let (a, b) = (amps[i], amps[j]);
                    amps[i] = (a + b) * scale;
                    amps[j] = (a - b) * scale;
                }
            }
        }
        GateKind::MultiControlledX => {
            let mut control_mask = 0usize;
            let mut control_value = 0usize;
            for c in &gate.controls {
                let mask = layout.qubit_mask(c.qubit);
                control_mask |= mask;
                if c.polarity == 1 {
                    control_value |= mask;
                }
            }
            for i in 0..amps.len() {
                if i & control_mask == control_value && i & target_mask == 0 {
                    amps.swap(i, i | target_mask);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Control, Gate, QubitRegisterLayout};
    use super::*;

    fn single_qubit_circuit(gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new(QubitRegisterLayout::plain(1, 1, 1).unwrap());
        for g in gates {
            c.push(g).unwrap();
        }
        c
    }

    #[test]
    fn empty_circuit_is_identity() {
        let state = StateVector::basis(3, 5).unwrap();
        let circuit = single_qubit_circuit(vec![]);
        assert_eq!(apply(&circuit, &state).unwrap(), state);
    }

    #[test]
    fn pauli_x_flips() {
        // 3-qubit layout; flip qubit 0 of |000>.
        let state = StateVector::basis(3, 0).unwrap();
        let circuit = single_qubit_circuit(vec![Gate::x(0)]);
        let out = apply(&circuit, &state).unwrap();
        assert_eq!(out.amplitudes()[0b100], Complex64::ONE);
    }

    #[test]
    fn hadamard_superposes() {
        let state = StateVector::basis(3, 0).unwrap();
        let circuit = single_qubit_circuit(vec![Gate::h(0)]);
        let out = apply(&circuit, &state).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0b000].re - s).abs() < 1e-12);
        assert!((out.amplitudes()[0b100].re - s).abs() < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mcx_polarities() {
        // Controls: qubit 1 must be 0, qubit 2 must be 1; target qubit 0.
        let controls =
            vec![Control { qubit: 1, polarity: 0 }, Control { qubit: 2, polarity: 1 }];
        let circuit = single_qubit_circuit(vec![Gate::mcx(0, controls)]);
        let fired = apply(&circuit, &StateVector::basis(3, 0b001).unwrap()).unwrap();
        assert_eq!(fired.amplitudes()[0b101], Complex64::ONE);
        let idle = apply(&circuit, &StateVector::basis(3, 0b011).unwrap()).unwrap();
        assert_eq!(idle.amplitudes()[0b011], Complex64::ONE);
    }

    #[test]
    fn state_vector_guard() {
        assert!(StateVector::basis(MAX_QUBITS + 1, 0).is_err());
    }

    #[test]
    fn qubit_mismatch_rejected() {
        let circuit = single_qubit_circuit(vec![]);
        let state = StateVector::basis(4, 0).unwrap();
        assert!(matches!(apply(&circuit, &state), Err(QcError::QubitMismatch { .. })));
    }
}
