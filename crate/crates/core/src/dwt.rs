//! One-level 2D Daubechies-4 transform with periodic boundary extension.
//!
//! The analysis/synthesis taps are the orthonormal set, so a forward pass
//! followed by the inverse reconstructs the input to floating-point accuracy
//! and energy is conserved across the transform.

use crate::image_io::GrayImage;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DwtError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("non-finite entry at index {0}")]
    NonFinite(usize),
}

/// Dense row-major matrix of f64 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, DwtError> {
        if data.len() != rows * cols {
            return Err(DwtError::Dimension(format!(
                "expected {} entries for {}x{}, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(DwtError::NonFinite(i));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn constant(rows: usize, cols: usize, value: f64) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_image(img: &GrayImage) -> Self {
        Self {
            rows: img.height(),
            cols: img.width(),
            data: img.pixels().iter().map(|&p| f64::from(p)).collect(),
        }
    }

    /// Rounds half away from zero and clamps to `[0, 2^q - 1]`.
    pub fn to_image(&self, bit_depth: u8) -> GrayImage {
        let max = f64::from((1u32 << bit_depth) - 1);
        let pixels = self.data.iter().map(|&v| v.round().clamp(0.0, max) as u8).collect();
        GrayImage::new(self.rows, self.cols, bit_depth, pixels).expect("clamped pixels are valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }
}

/// The four subbands of one decomposition level, each (H/2)x(W/2).
///
/// `hl` holds the horizontal detail (high-pass along rows), `lh` the vertical
/// detail, matching the usual quadrant picture with `ll` in the upper left.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandSet {
    pub ll: RealMatrix,
    pub hl: RealMatrix,
    pub lh: RealMatrix,
    pub hh: RealMatrix,
}

impl SubbandSet {
    fn check(&self) -> Result<(), DwtError> {
        let shape = (self.ll.rows, self.ll.cols);
        for (name, band) in [("hl", &self.hl), ("lh", &self.lh), ("hh", &self.hh)] {
            if (band.rows, band.cols) != shape {
                return Err(DwtError::Dimension(format!(
                    "subband {} is {}x{}, expected {}x{}",
                    name, band.rows, band.cols, shape.0, shape.1
                )));
            }
        }
        Ok(())
    }
}

/// Orthonormal D4 analysis low-pass taps; the high-pass is the quadrature
/// mirror g[k] = (-1)^k h[3-k].
fn d4_taps() -> ([f64; 4], [f64; 4]) {
    let s3 = 3.0f64.sqrt();
    let norm = 4.0 * 2.0f64.sqrt();
    let h = [(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm];
    let g = [h[3], -h[2], h[1], -h[0]];
    (h, g)
}

fn analyze_1d(input: &[f64], low: &mut [f64], high: &mut [f64]) {
    let (h, g) = d4_taps();
    let n = input.len();
    for i in 0..n / 2 {
        let mut a = 0.0;
        let mut d = 0.0;
        for k in 0..4 {
            let x = input[(2 * i + k) % n];
            a += h[k] * x;
            d += g[k] * x;
        }
        low[i] = a;
        high[i] = d;
    }
}

fn synthesize_1d(low: &[f64], high: &[f64], output: &mut [f64]) {
    let (h, g) = d4_taps();
    let n = output.len();
    output.fill(0.0);
    for i in 0..n / 2 {
        for k in 0..4 {
            output[(2 * i + k) % n] += h[k] * low[i] + g[k] * high[i];
        }
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<(), DwtError> {
    if rows < 4 || cols < 4 || rows % 2 != 0 || cols % 2 != 0 {
        return Err(DwtError::Dimension(format!("{}x{} (need even dimensions >= 4)", rows, cols)));
    }
    Ok(())
}

/// Separable forward transform: D4 along each row, then along each column of
/// the two half-width results.
pub fn forward_d4_2d(input: &RealMatrix) -> Result<SubbandSet, DwtError> {
    check_dims(input.rows, input.cols)?;
    let (rows, cols) = (input.rows, input.cols);
    let half_c = cols / 2;
    let half_r = rows / 2;

    let mut row_low = RealMatrix::zeros(rows, half_c);
    let mut row_high = RealMatrix::zeros(rows, half_c);
    let mut lo = vec![0.0; half_c];
    let mut hi = vec![0.0; half_c];
    for r in 0..rows {
        analyze_1d(&input.data[r * cols..(r + 1) * cols], &mut lo, &mut hi);
        row_low.data[r * half_c..(r + 1) * half_c].copy_from_slice(&lo);
        row_high.data[r * half_c..(r + 1) * half_c].copy_from_slice(&hi);
    }

    let mut ll = RealMatrix::zeros(half_r, half_c);
    let mut lh = RealMatrix::zeros(half_r, half_c);
    let mut hl = RealMatrix::zeros(half_r, half_c);
    let mut hh = RealMatrix::zeros(half_r, half_c);
    let mut col = vec![0.0; rows];
    let mut lo = vec![0.0; half_r];
    let mut hi = vec![0.0; half_r];
    for c in 0..half_c {
        for r in 0..rows {
            col[r] = row_low.data[r * half_c + c];
        }
        analyze_1d(&col, &mut lo, &mut hi);
        for r in 0..half_r {
            ll.data[r * half_c + c] = lo[r];
            lh.data[r * half_c + c] = hi[r];
        }
        for r in 0..rows {
            col[r] = row_high.data[r * half_c + c];
        }
        analyze_1d(&col, &mut lo, &mut hi);
        for r in 0..half_r {
            hl.data[r * half_c + c] = lo[r];
            hh.data[r * half_c + c] = hi[r];
        }
    }
    Ok(SubbandSet { ll, hl, lh, hh })
}

/// Exact inverse of [`forward_d4_2d`]: synthesis along columns, then rows.
pub fn inverse_d4_2d(bands: &SubbandSet) -> Result<RealMatrix, DwtError> {
    bands.check()?;
    let half_r = bands.ll.rows;
    let half_c = bands.ll.cols;
    let rows = half_r * 2;
    let cols = half_c * 2;
    check_dims(rows, cols)?;

    let mut row_low = RealMatrix::zeros(rows, half_c);
    let mut row_high = RealMatrix::zeros(rows, half_c);
    let mut lo = vec![0.0; half_r];
    let mut hi = vec![0.0; half_r];
    let mut col = vec![0.0; rows];
    for c in 0..half_c {
        for r in 0..half_r {
            lo[r] = bands.ll.data[r * half_c + c];
            hi[r] = bands.lh.data[r * half_c + c];
        }
        synthesize_1d(&lo, &hi, &mut col);
        for r in 0..rows {
            row_low.data[r * half_c + c] = col[r];
        }
        for r in 0..half_r {
            lo[r] = bands.hl.data[r * half_c + c];
            hi[r] = bands.hh.data[r * half_c + c];
        }
        synthesize_1d(&lo, &hi, &mut col);
        for r in 0..rows {
            row_high.data[r * half_c + c] = col[r];
        }
    }

    let mut out = RealMatrix::zeros(rows, cols);
    let mut row = vec![0.0; cols];
    for r in 0..rows {
        synthesize_1d(
            &row_low.data[r * half_c..(r + 1) * half_c],
            &row_high.data[r * half_c..(r + 1) * half_c],
            &mut row,
        );
        out.data[r * cols..(r + 1) * cols].copy_from_slice(&row);
    }
    Ok(out)
}

/// The classical reading of the low-frequency selection circuit: the LL
/// quadrant unchanged.
pub fn extract_ll(bands: &SubbandSet) -> RealMatrix {
    bands.ll.clone()
}

/// The classical reading of the high-frequency zero-fill circuit.
pub fn zero_fill(ll: RealMatrix) -> SubbandSet {
    let (r, c) = (ll.rows, ll.cols);
    SubbandSet {
        ll,
        hl: RealMatrix::zeros(r, c),
        lh: RealMatrix::zeros(r, c),
        hh: RealMatrix::zeros(r, c),
    }
}
