//! Image <-> state-vector conversion: a `2^h x 2^w` q-bit image becomes a
//! uniform superposition of |color>|Y>|X> basis states, and a measurement-free
//! readout reconstructs the pixel matrix for testing.

use super::sim::StateVector;
use super::{ImageView, QcError, QubitRegisterLayout};
use crate::image_io::GrayImage;
use num_complex::Complex64;

const AMP_TOL: f64 = 1e-9;

/// Encodes an image into the plain single-image layout.
pub fn gqir_encode(img: &GrayImage) -> Result<StateVector, QcError> {
    let layout = layout_for(img)?;
    encode_into_view(img, &layout, *layout.primary())
}

/// Encodes an image into one image view of a larger layout; all qubits
/// outside the view stay |0>.
pub fn encode_into_view(
    img: &GrayImage,
    layout: &QubitRegisterLayout,
    view: ImageView,
) -> Result<StateVector, QcError> {
    if img.height() != view.height() || img.width() != view.width() {
        return Err(QcError::Shape(format!(
            "image {}x{} does not fit view {}x{}",
            img.height(),
            img.width(),
            view.height(),
            view.width()
        )));
    }
    if usize::from(img.bit_depth()) != view.color.len {
        return Err(QcError::Depth(img.bit_depth()));
    }
    let positions = img.height() * img.width();
    let amp = Complex64::new(1.0 / (positions as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::ZERO; 1 << layout.n_qubits()];
    for y in 0..img.height() {
        for x in 0..img.width() {
            let index = layout.place(usize::from(img.get(y, x)), &view.color)
                | layout.place(y, &view.pos_y)
                | layout.place(x, &view.pos_x);
            amplitudes[index] = amp;
        }
    }
    Ok(StateVector::from_amplitudes(layout.n_qubits(), amplitudes))
}

/// Reads the primary image back out of a plain-layout state.
pub fn gqir_decode(state: &StateVector, layout: &QubitRegisterLayout) -> Result<GrayImage, QcError> {
    decode_image(state, layout, layout.primary())
}

/// Reads one image view out of a state. Requires the state to be of image
/// form for that view: uniform nonzero magnitudes and exactly one color value
/// per position. The global phase is irrelevant.
pub fn decode_image(
    state: &StateVector,
    layout: &QubitRegisterLayout,
    view: &ImageView,
) -> Result<GrayImage, QcError> {
    if state.n_qubits() != layout.n_qubits() {
        return Err(QcError::QubitMismatch { circuit: layout.n_qubits(), state: state.n_qubits() });
    }
    let (h, w) = (view.height(), view.width());
    let mut colors: Vec<Option<usize>> = vec![None; h * w];
    let mut magnitude: Option<f64> = None;
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let norm = amp.norm();
        if norm <= AMP_TOL {
            continue;
        }
        match magnitude {
            None => magnitude = Some(norm),
            Some(m) if (m - norm).abs() > AMP_TOL => {
                return Err(QcError::Decode("non-uniform amplitude magnitudes".into()))
            }
            _ => {}
        }
        let y = layout.extract(index, &view.pos_y);
        let x = layout.extract(index, &view.pos_x);
        let color = layout.extract(index, &view.color);
        let slot = &mut colors[y * w + x];
        match slot {
            None => *slot = Some(color),
            Some(existing) if *existing != color => {
                return Err(QcError::Decode(format!(
                    "superposed colors at position ({}, {})",
                    y, x
                )))
            }
            _ => {}
        }
    }
    let pixels: Result<Vec<u8>, QcError> = colors
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.map(|v| v as u8)
                .ok_or_else(|| QcError::Decode(format!("no amplitude for position index {}", i)))
        })
        .collect();
    GrayImage::new(h, w, view.color.len as u8, pixels?)
        .map_err(|e| QcError::Decode(e.to_string()))
}

/// Readout for the zero-fill circuit's output image.
///
/// The circuit entangles the quarter-size source image with the fresh
/// full-size register, so a low output position carries its pixel value only
/// in the branches where the source position register points at it; every
/// other branch leaves the output color at zero. This readout asserts exactly
/// that contract.
pub fn decode_zfh_output(
    state: &StateVector,
    layout: &QubitRegisterLayout,
) -> Result<GrayImage, QcError> {
    if state.n_qubits() != layout.n_qubits() {
        return Err(QcError::QubitMismatch { circuit: layout.n_qubits(), state: state.n_qubits() });
    }
    let source = layout.primary();
    let output = layout.secondary().ok_or_else(|| QcError::Shape("layout has no output image".into()))?;
    let (h, w) = (output.height(), output.width());
    let (low_h, low_w) = (source.height(), source.width());
    let mut colors: Vec<Option<usize>> = vec![None; h * w];
    let mut magnitude: Option<f64> = None;
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let norm = amp.norm();
        if norm <= AMP_TOL {
            continue;
        }
        match magnitude {
            None => magnitude = Some(norm),
            Some(m) if (m - norm).abs() > AMP_TOL => {
                return Err(QcError::Decode("non-uniform amplitude magnitudes".into()))
            }
            _ => {}
        }
        let sy = layout.extract(index, &source.pos_y);
        let sx = layout.extract(index, &source.pos_x);
        let oy = layout.extract(index, &output.pos_y);
        let ox = layout.extract(index, &output.pos_x);
        let color = layout.extract(index, &output.color);
        let matched = oy < low_h && ox < low_w && (sy, sx) == (oy, ox);
        if matched {
            let slot = &mut colors[oy * w + ox];
            match slot {
                None => *slot = Some(color),
                Some(existing) if *existing != color => {
                    return Err(QcError::Decode(format!(
                        "superposed colors at output position ({}, {})",
                        oy, ox
                    )))
                }
                _ => {}
            }
        } else if color != 0 {
            return Err(QcError::Decode(format!(
                "nonzero color {} outside the selected branch at ({}, {})",
                color, oy, ox
            )));
        }
    }
    let pixels: Result<Vec<u8>, QcError> = (0..h * w)
        .map(|i| {
            let (y, x) = (i / w, i % w);
            if y < low_h && x < low_w {
                colors[i]
                    .map(|v| v as u8)
                    .ok_or_else(|| QcError::Decode(format!("no branch covers position ({}, {})", y, x)))
            } else {
                Ok(0)
            }
        })
        .collect();
    GrayImage::new(h, w, output.color.len as u8, pixels?)
        .map_err(|e| QcError::Decode(e.to_string()))
}

fn layout_for(img: &GrayImage) -> Result<QubitRegisterLayout, QcError> {
    if !img.height().is_power_of_two() || !img.width().is_power_of_two() {
        return Err(QcError::NonPowerOfTwo(img.height(), img.width()));
    }
    if img.bit_depth() > 8 {
        return Err(QcError::Depth(img.bit_depth()));
    }
    QubitRegisterLayout::plain(
        img.h_bits() as usize,
        img.w_bits() as usize,
        usize::from(img.bit_depth()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize, q: u8) -> GrayImage {
        let pixels = (0..h * w).map(|_| rng.gen_range(0..(1u16 << q)) as u8).collect();
        GrayImage::new(h, w, q, pixels).unwrap()
    }

    #[test]
    fn two_by_two_amplitudes() {
        let img = GrayImage::new(2, 2, 2, vec![0, 1, 2, 3]).unwrap();
        let state = gqir_encode(&img).unwrap();
        let layout = QubitRegisterLayout::plain(1, 1, 2).unwrap();
        let nonzero: Vec<usize> = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(nonzero.len(), 4);
        for &i in &nonzero {
            assert!((state.amplitudes()[i].re - 0.5).abs() < 1e-12);
            let y = layout.extract(i, &layout.primary().pos_y);
            let x = layout.extract(i, &layout.primary().pos_x);
            let c = layout.extract(i, &layout.primary().color);
            assert_eq!(c, usize::from(img.get(y, x)));
        }
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn round_trip_small_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let layout = QubitRegisterLayout::plain(2, 2, 2).unwrap();
        for _ in 0..20 {
            let img = random_image(&mut rng, 4, 4, 2);
            let state = gqir_encode(&img).unwrap();
            assert_eq!(gqir_decode(&state, &layout).unwrap(), img);
        }
    }

    #[test]
    fn global_phase_is_irrelevant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let img = random_image(&mut rng, 4, 4, 2);
        let layout = QubitRegisterLayout::plain(2, 2, 2).unwrap();
        let state = gqir_encode(&img).unwrap().with_global_phase(1.234);
        assert_eq!(gqir_decode(&state, &layout).unwrap(), img);
    }

    #[test]
    fn all_zero_image_round_trips() {
        let img = GrayImage::new(4, 4, 2, vec![0; 16]).unwrap();
        let layout = QubitRegisterLayout::plain(2, 2, 2).unwrap();
        assert_eq!(gqir_decode(&gqir_encode(&img).unwrap(), &layout).unwrap(), img);
    }

    #[test]
    fn superposed_color_rejected() {
        // Two colors at position (0,0) of a 2x2 q=1 image.
        let layout = QubitRegisterLayout::plain(1, 1, 1).unwrap();
        let mut amps = vec![Complex64::ZERO; 8];
        let a = Complex64::new(0.5, 0.0);
        amps[0b000] = a; // color 0 at (0,0)
        amps[0b100] = a; // color 1 at (0,0)
        amps[0b001] = a;
        amps[0b010] = a;
        let state = StateVector::from_amplitudes(3, amps);
        assert!(matches!(gqir_decode(&state, &layout), Err(QcError::Decode(_))));
    }

    #[test]
    fn non_uniform_magnitudes_rejected() {
        let layout = QubitRegisterLayout::plain(1, 1, 1).unwrap();
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0b000] = Complex64::new(0.8, 0.0);
        amps[0b001] = Complex64::new(0.2, 0.0);
        amps[0b010] = Complex64::new(0.4, 0.0);
        amps[0b011] = Complex64::new(0.4, 0.0);
        let state = StateVector::from_amplitudes(3, amps);
        assert!(matches!(gqir_decode(&state, &layout), Err(QcError::Decode(_))));
    }

    #[test]
    fn rejects_non_power_of_two() {
        let img = GrayImage::new(3, 4, 2, vec![0; 12]).unwrap();
        assert_eq!(gqir_encode(&img), Err(QcError::NonPowerOfTwo(3, 4)));
    }
}
