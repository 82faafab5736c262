//! Image statistics: PSNR, adjacent-pixel correlation, entropy, spatial
//! frequency, histogram, and the low-frequency substitution experiment.

use crate::dwt::{self, DwtError, RealMatrix};
use crate::image_io::GrayImage;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("unsupported depth: {0} bits (expected 8)")]
    UnsupportedDepth(u8),
    #[error("correlation undefined: zero variance over the pair set")]
    UndefinedCorrelation,
    #[error("image too small for this statistic")]
    DegenerateDimensions,
    #[error(transparent)]
    Dwt(#[from] DwtError),
}

/// Peak signal-to-noise ratio; identical images get an explicit marker
/// instead of a division by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Decibels(f64),
    Infinite,
}

impl Psnr {
    pub fn decibels(&self) -> Option<f64> {
        match self {
            Psnr::Decibels(v) => Some(*v),
            Psnr::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    Zero,
    Max,
}

pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<Psnr, MetricsError> {
    if a.height() != b.height() || a.width() != b.width() {
        return Err(MetricsError::DimensionMismatch(a.height(), a.width(), b.height(), b.width()));
    }
    if a.bit_depth() != 8 || b.bit_depth() != 8 {
        return Err(MetricsError::UnsupportedDepth(a.bit_depth().max(b.bit_depth())));
    }
    let n = a.pixels().len() as f64;
    let sse: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = f64::from(x) - f64::from(y);
            d * d
        })
        .sum();
    if sse == 0.0 {
        return Ok(Psnr::Infinite);
    }
    let mse = sse / n;
    Ok(Psnr::Decibels(10.0 * (255.0 * 255.0 / mse).log10()))
}

/// Pearson correlation over all adjacent pixel pairs in one direction,
/// population variance convention. Diagonal pairs use the down-right
/// neighbor.
pub fn adjacency_correlation(img: &GrayImage, direction: Direction) -> Result<f64, MetricsError> {
    let (h, w) = (img.height(), img.width());
    let (dy, dx) = match direction {
        Direction::Horizontal => (0, 1),
        Direction::Vertical => (1, 0),
        Direction::Diagonal => (1, 1),
    };
    if h <= dy || w <= dx || (h - dy) * (w - dx) < 2 {
        return Err(MetricsError::DegenerateDimensions);
    }
    let mut n = 0.0f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
    for y in 0..h - dy {
        for x in 0..w - dx {
            let a = f64::from(img.get(y, x));
            let b = f64::from(img.get(y + dy, x + dx));
            n += 1.0;
            sx += a;
            sy += b;
            sxx += a * a;
            syy += b * b;
            sxy += a * b;
        }
    }
    let vx = sxx / n - (sx / n) * (sx / n);
    let vy = syy / n - (sy / n) * (sy / n);
    if vx <= 0.0 || vy <= 0.0 {
        return Err(MetricsError::UndefinedCorrelation);
    }
    let cov = sxy / n - (sx / n) * (sy / n);
    Ok((cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

/// Shannon entropy of the gray-level histogram, in bits.
pub fn entropy(img: &GrayImage) -> f64 {
    byte_entropy(img.pixels())
}

/// Shannon entropy of a byte sequence's value histogram, in bits.
pub fn byte_entropy(bytes: &[u8]) -> f64 {
    let mut counts = [0u64; 256];
    for &b in bytes {
        counts[b as usize] += 1;
    }
    let n = bytes.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialFrequency {
    pub rf: f64,
    pub cf: f64,
    pub sf: f64,
}

/// Row/column/overall spatial frequency. Inner difference sums start at
/// index 1; the divisor stays at M*N.
pub fn spatial_frequency(img: &GrayImage) -> Result<SpatialFrequency, MetricsError> {
    let (m, n) = (img.height(), img.width());
    if m < 2 || n < 2 {
        return Err(MetricsError::DegenerateDimensions);
    }
    let mut row_sum = 0.0f64;
    let mut col_sum = 0.0f64;
    for y in 0..m {
        for x in 1..n {
            let d = f64::from(img.get(y, x)) - f64::from(img.get(y, x - 1));
            row_sum += d * d;
        }
    }
    for y in 1..m {
        for x in 0..n {
            let d = f64::from(img.get(y, x)) - f64::from(img.get(y - 1, x));
            col_sum += d * d;
        }
    }
    let scale = (m * n) as f64;
    let rf = (row_sum / scale).sqrt();
    let cf = (col_sum / scale).sqrt();
    Ok(SpatialFrequency { rf, cf, sf: (rf * rf + cf * cf).sqrt() })
}

/// Exact gray-level counts.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

/// Low-frequency substitution at the coefficient level: transform, replace
/// every LL entry by 0 or by the maximum LL entry, inverse-transform.
pub fn ablate_ll_matrix(input: &RealMatrix, fill: Fill) -> Result<RealMatrix, MetricsError> {
    let mut bands = dwt::forward_d4_2d(input)?;
    let value = match fill {
        Fill::Zero => 0.0,
        Fill::Max => bands.ll.data().iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    };
    bands.ll = RealMatrix::constant(bands.ll.rows(), bands.ll.cols(), value);
    Ok(dwt::inverse_d4_2d(&bands)?)
}

/// [`ablate_ll_matrix`] on a pixel image, with round-and-clamp finalization.
pub fn ablate_ll(img: &GrayImage, fill: Fill) -> Result<GrayImage, MetricsError> {
    Ok(ablate_ll_matrix(&RealMatrix::from_image(img), fill)?.to_image(img.bit_depth()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub psnr_db: Option<Psnr>,
    pub horizontal: f64,
    pub vertical: f64,
    pub diagonal: f64,
    pub entropy_bits: f64,
    pub rf: f64,
    pub cf: f64,
    pub sf: f64,
    pub histogram: [u64; 256],
}

/// All single-image statistics, plus PSNR against a reference when given.
pub fn report(img: &GrayImage, against: Option<&GrayImage>) -> Result<MetricsReport, MetricsError> {
    let psnr_db = against.map(|b| psnr(img, b)).transpose()?;
    let freq = spatial_frequency(img)?;
    Ok(MetricsReport {
        psnr_db,
        horizontal: adjacency_correlation(img, Direction::Horizontal)?,
        vertical: adjacency_correlation(img, Direction::Vertical)?,
        diagonal: adjacency_correlation(img, Direction::Diagonal)?,
        entropy_bits: entropy(img),
        rf: freq.rf,
        cf: freq.cf,
        sf: freq.sf,
        histogram: histogram(img),
    })
}
