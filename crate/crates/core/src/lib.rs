//! Wavelet-domain grayscale image cipher.
//!
//! The pipeline decomposes an image with a one-level Daubechies-4 transform,
//! keeps only the low-frequency quadrant, quantizes it and XORs it with a
//! logistic-map keystream. Decryption reverses the XOR, zero-fills the
//! discarded detail bands and inverse-transforms. A dense state-vector
//! simulator validates the gate-level form of the selection, zero-fill and
//! XOR stages against the classical operations on small instances.

pub mod cipher;
pub mod dwt;
pub mod image_io;
pub mod keystream;
pub mod metrics;
pub mod qcircuit;

pub use cipher::{CipherPackage, QuantParams};
pub use dwt::{RealMatrix, SubbandSet};
pub use image_io::GrayImage;
pub use keystream::KeyParams;
pub use metrics::MetricsReport;
pub use qcircuit::{Circuit, QubitRegisterLayout, StateVector};
