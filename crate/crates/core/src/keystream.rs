//! Logistic-map keystream generation.
//!
//! The stream is part of the cipher's format contract, so every iteration is
//! plain f64 arithmetic in a fixed evaluation order: `(mu * x) * (1 - x)`,
//! never a fused multiply-add.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KeyError {
    #[error("x0 must lie strictly inside (0, 1), got {0}")]
    SeedOutOfRange(f64),
    #[error("mu must lie in (3.57, 4.0], got {0}")]
    MuOutOfRange(f64),
    #[error("logistic state {0} outside [0, 1]")]
    StateOutOfRange(f64),
}

/// Secret parameters of the keystream source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyParams {
    pub x0: f64,
    pub mu: f64,
    pub burn_in: u32,
}

pub const DEFAULT_MU: f64 = 3.99;
pub const DEFAULT_BURN_IN: u32 = 1000;

impl KeyParams {
    pub fn new(x0: f64, mu: f64, burn_in: u32) -> Result<Self, KeyError> {
        let params = Self { x0, mu, burn_in };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), KeyError> {
        if !(self.x0 > 0.0 && self.x0 < 1.0) {
            return Err(KeyError::SeedOutOfRange(self.x0));
        }
        if !(self.mu > 3.57 && self.mu <= 4.0) {
            return Err(KeyError::MuOutOfRange(self.mu));
        }
        Ok(())
    }
}

/// One logistic-map step, `mu * x * (1 - x)`.
pub fn logistic_next(x: f64, mu: f64) -> Result<f64, KeyError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(KeyError::StateOutOfRange(x));
    }
    Ok((mu * x) * (1.0 - x))
}

/// Deterministic keystream: discard `burn_in` iterates, then emit the low
/// byte of a 24-bit fixation of each subsequent state.
pub fn generate(key: &KeyParams, n_bytes: usize) -> Result<Vec<u8>, KeyError> {
    key.validate()?;
    let mut x = key.x0;
    for _ in 0..key.burn_in {
        x = (key.mu * x) * (1.0 - x);
    }
    let mut out = Vec::with_capacity(n_bytes);
    for _ in 0..n_bytes {
        x = (key.mu * x) * (1.0 - x);
        out.push(((x * 16_777_216.0).floor() as u64 % 256) as u8);
    }
    Ok(out)
}
