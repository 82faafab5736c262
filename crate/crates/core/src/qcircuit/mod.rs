//! Gate-level model and dense amplitude-vector simulator for the cipher's
//! circuits: image-state preparation, low-frequency selection (OLC),
//! high-frequency zero fill (ZFH) and the keyed XOR, each checked against its
//! classical counterpart on small instances.

mod builders;
mod gqir;
mod sim;

pub use builders::{build_olc_circuit, build_xor_circuit, build_zfh_circuit, gate_count, GateCounts};
pub use gqir::{decode_image, decode_zfh_output, encode_into_view, gqir_decode, gqir_encode};
pub use sim::{apply, StateVector};

use thiserror::Error;

/// Dense simulation guard: 2^20 amplitudes at most.
pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum QcError {
    #[error("register too large: {0} qubits (limit {MAX_QUBITS})")]
    TooLarge(usize),
    #[error("image dimensions must be powers of two, got {0}x{1}")]
    NonPowerOfTwo(usize, usize),
    #[error("unsupported color depth {0}")]
    Depth(u8),
    #[error("qubit count mismatch: circuit has {circuit}, state has {state}")]
    QubitMismatch { circuit: usize, state: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("decode error: {0}")]
    Decode(String),
}

/// Contiguous run of qubits holding one register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

impl Span {
    pub fn qubits(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// The registers that make up one image: color plus the two coordinate
/// registers, most-significant coordinate bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageView {
    pub color: Span,
    pub pos_y: Span,
    pub pos_x: Span,
}

impl ImageView {
    pub fn height(&self) -> usize {
        1 << self.pos_y.len
    }

    pub fn width(&self) -> usize {
        1 << self.pos_x.len
    }
}

/// Named register spans over a qubit line; spans are disjoint and cover
/// `0..n_qubits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitRegisterLayout {
    n_qubits: usize,
    primary: ImageView,
    secondary: Option<ImageView>,
    ancilla: Option<usize>,
}

impl QubitRegisterLayout {
    /// Plain single-image layout: color, then Y, then X.
    pub fn plain(h: usize, w: usize, q: usize) -> Result<Self, QcError> {
        let n = q + h + w;
        Self::guard(n)?;
        Ok(Self {
            n_qubits: n,
            primary: ImageView {
                color: Span { start: 0, len: q },
                pos_y: Span { start: q, len: h },
                pos_x: Span { start: q + h, len: w },
            },
            secondary: None,
            ancilla: None,
        })
    }

    /// Low-frequency selection layout: source image, a fresh target color
    /// register sharing the source position, and one ancilla.
    pub fn olc(h: usize, w: usize, q: usize) -> Result<Self, QcError> {
        let n = 2 * q + h + w + 1;
        Self::guard(n)?;
        let pos_y = Span { start: q, len: h };
        let pos_x = Span { start: q + h, len: w };
        Ok(Self {
            n_qubits: n,
            primary: ImageView { color: Span { start: 0, len: q }, pos_y, pos_x },
            secondary: Some(ImageView {
                color: Span { start: q + h + w, len: q },
                pos_y,
                pos_x,
            }),
            ancilla: Some(2 * q + h + w),
        })
    }

    /// Zero-fill layout: the quarter-size low-frequency image plus a fresh
    /// full-size output image.
    pub fn zfh(h: usize, w: usize, q: usize) -> Result<Self, QcError> {
        if h < 1 || w < 1 {
            return Err(QcError::Shape("zfh needs h, w >= 1".into()));
        }
        let (hp, wp) = (h - 1, w - 1);
        let n = 2 * q + hp + wp + h + w;
        Self::guard(n)?;
        Ok(Self {
            n_qubits: n,
            primary: ImageView {
                color: Span { start: 0, len: q },
                pos_y: Span { start: q, len: hp },
                pos_x: Span { start: q + hp, len: wp },
            },
            secondary: Some(ImageView {
                color: Span { start: q + hp + wp, len: q },
                pos_y: Span { start: 2 * q + hp + wp, len: h },
                pos_x: Span { start: 2 * q + hp + wp + h, len: w },
            }),
            ancilla: None,
        })
    }

    fn guard(n: usize) -> Result<usize, QcError> {
        if n > MAX_QUBITS {
            Err(QcError::TooLarge(n))
        } else {
            Ok(n)
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn primary(&self) -> &ImageView {
        &self.primary
    }

    pub fn secondary(&self) -> Option<&ImageView> {
        self.secondary.as_ref()
    }

    pub fn ancilla(&self) -> Option<usize> {
        self.ancilla
    }

    /// Basis-index mask of one qubit; qubit 0 is the most significant bit.
    pub(crate) fn qubit_mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Reads a register value out of a basis index, span MSB first.
    pub(crate) fn extract(&self, index: usize, span: &Span) -> usize {
        let mut value = 0;
        for qubit in span.qubits() {
            value = (value << 1) | usize::from(index & self.qubit_mask(qubit) != 0);
        }
        value
    }

    /// Places a register value into a basis index, span MSB first.
    pub(crate) fn place(&self, value: usize, span: &Span) -> usize {
        let mut index = 0;
        for (t, qubit) in span.qubits().enumerate() {
            if value & (1 << (span.len - 1 - t)) != 0 {
                index |= self.qubit_mask(qubit);
            }
        }
        index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    PauliX,
    Hadamard,
    MultiControlledX,
}

/// One control line with its trigger polarity (the extended-Toffoli
/// convention: a control may fire on |0> as well as |1>).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub polarity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn x(target: usize) -> Self {
        Self { kind: GateKind::PauliX, target, controls: Vec::new() }
    }

    pub fn h(target: usize) -> Self {
        Self { kind: GateKind::Hadamard, target, controls: Vec::new() }
    }

    pub fn mcx(target: usize, controls: Vec<Control>) -> Self {
        Self { kind: GateKind::MultiControlledX, target, controls }
    }

    fn validate(&self, n_qubits: usize) -> Result<(), QcError> {
        if self.target >= n_qubits {
            return Err(QcError::InvalidGate(format!("target {} out of range", self.target)));
        }
        match self.kind {
            GateKind::PauliX | GateKind::Hadamard => {
                if !self.controls.is_empty() {
                    return Err(QcError::InvalidGate("single-qubit gate with controls".into()));
                }
            }
            GateKind::MultiControlledX => {
                for c in &self.controls {
                    if c.qubit >= n_qubits {
                        return Err(QcError::InvalidGate(format!("control {} out of range", c.qubit)));
                    }
                    if c.qubit == self.target {
                        return Err(QcError::InvalidGate("target is also a control".into()));
                    }
                    if c.polarity > 1 {
                        return Err(QcError::InvalidGate("polarity must be 0 or 1".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Ordered gate list over a register layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    layout: QubitRegisterLayout,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: QubitRegisterLayout) -> Self {
        Self { layout, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), QcError> {
        gate.validate(self.layout.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn layout(&self) -> &QubitRegisterLayout {
        &self.layout
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// The circuit run backwards; X, H and MCX are all self-inverse, so
    /// reversing the gate order inverts the whole circuit.
    pub fn inverted(&self) -> Self {
        Self { layout: self.layout.clone(), gates: self.gates.iter().rev().cloned().collect() }
    }
}
