//! Shared test fixtures: deterministic natural-style grayscale scenes.
//!
//! The scenes mix smooth shading, blobs, straight edges and mild texture so
//! they behave like photographic content under the wavelet pipeline: most
//! energy in the low band, a non-trivial remainder in the detail bands.

use qwc_core::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn scene(seed: u64, size: usize) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = size as f64;

    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            (
                rng.gen_range(20.0..60.0),              // amplitude
                rng.gen_range(1.0..4.0) / n,            // y frequency
                rng.gen_range(1.0..4.0) / n,            // x frequency
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let blobs: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            (
                rng.gen_range(0.0..n),                  // center y
                rng.gen_range(0.0..n),                  // center x
                rng.gen_range(n / 16.0..n / 4.0),       // radius
                rng.gen_range(-60.0..60.0),             // height
            )
        })
        .collect();
    let edges: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(0.0..std::f64::consts::PI), // orientation
                rng.gen_range(0.2..0.8) * n,              // offset
                rng.gen_range(20.0..50.0),                // step height
            )
        })
        .collect();

    let mut pixels = Vec::with_capacity(size * size);
    for y in 0..size {
        for x in 0..size {
            let (yf, xf) = (y as f64, x as f64);
            let mut v = 120.0;
            for &(amp, fy, fx, phase) in &waves {
                v += amp * (std::f64::consts::TAU * (fy * yf + fx * xf) + phase).sin();
            }
            for &(cy, cx, r, height) in &blobs {
                let d2 = (yf - cy).powi(2) + (xf - cx).powi(2);
                v += height * (-d2 / (2.0 * r * r)).exp();
            }
            for &(theta, offset, step) in &edges {
                if yf * theta.cos() + xf * theta.sin() > offset {
                    v += step;
                }
            }
            v += rng.gen_range(-4.0..4.0);
            pixels.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(size, size, 8, pixels).expect("scene pixels are valid")
}

/// The three 512x512 scenes the acceptance suite runs on.
pub fn standard_scenes() -> Vec<(&'static str, GrayImage)> {
    vec![("scene-a", scene(11, 512)), ("scene-b", scene(23, 512)), ("scene-c", scene(47, 512))]
}

pub fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize) -> GrayImage {
    let pixels = (0..h * w).map(|_| rng.gen()).collect();
    GrayImage::new(h, w, 8, pixels).unwrap()
}
