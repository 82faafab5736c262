//! Binary PGM ("P5") codec and the canonical in-memory grayscale image type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PgmError {
    #[error("not a binary PGM: bad magic")]
    BadMagic,
    #[error("malformed header: {0}")]
    BadHeader(&'static str),
    #[error("unsupported depth: maxval {0} (only 8-bit supported)")]
    UnsupportedDepth(u32),
    #[error("payload truncated: expected {expected} bytes, got {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("invalid image: {0}")]
    InvalidImage(&'static str),
}

/// Row-major grayscale image with `bit_depth` bits per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    height: usize,
    width: usize,
    bit_depth: u8,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(height: usize, width: usize, bit_depth: u8, pixels: Vec<u8>) -> Result<Self, PgmError> {
        if height == 0 || width == 0 {
            return Err(PgmError::InvalidImage("empty dimensions"));
        }
        if bit_depth == 0 || bit_depth > 8 {
            return Err(PgmError::InvalidImage("bit depth out of range"));
        }
        if pixels.len() != height * width {
            return Err(PgmError::InvalidImage("pixel count does not match dimensions"));
        }
        if bit_depth < 8 {
            let max = (1u16 << bit_depth) - 1;
            if pixels.iter().any(|&p| u16::from(p) > max) {
                return Err(PgmError::InvalidImage("pixel exceeds bit depth"));
            }
        }
        Ok(Self { height, width, bit_depth, pixels })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bit_depth(&self) -> u8 {
        self.bit_depth
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, y: usize, x: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Number of qubits needed for the vertical coordinate: ceil(log2 H), min 1.
    pub fn h_bits(&self) -> u32 {
        coord_bits(self.height)
    }

    /// Number of qubits needed for the horizontal coordinate: ceil(log2 W), min 1.
    pub fn w_bits(&self) -> u32 {
        coord_bits(self.width)
    }
}

pub(crate) fn coord_bits(extent: usize) -> u32 {
    if extent <= 1 {
        1
    } else {
        (extent - 1).ilog2() + 1
    }
}

/// Parses a binary "P5" graymap. Header comments (`#` to end of line) are skipped.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut pos = 2;
    let width = read_header_int(bytes, &mut pos)?;
    let height = read_header_int(bytes, &mut pos)?;
    let maxval = read_header_int(bytes, &mut pos)?;
    if maxval > 255 {
        return Err(PgmError::UnsupportedDepth(maxval));
    }
    if maxval == 0 {
        return Err(PgmError::BadHeader("maxval is zero"));
    }
    // Exactly one whitespace byte separates the header from the payload.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(PgmError::BadHeader("missing separator before payload")),
    }
    let expected = (width as usize) * (height as usize);
    let payload = &bytes[pos..];
    if payload.len() < expected {
        return Err(PgmError::Truncated { expected, actual: payload.len() });
    }
    GrayImage::new(height as usize, width as usize, 8, payload[..expected].to_vec())
}

/// Emits the canonical form: `P5\n<W> <H>\n255\n` followed by the raw rows.
pub fn write_pgm(img: &GrayImage) -> Result<Vec<u8>, PgmError> {
    if img.bit_depth != 8 {
        return Err(PgmError::UnsupportedDepth(u32::from(img.bit_depth)));
    }
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    Ok(out)
}

fn read_header_int(bytes: &[u8], pos: &mut usize) -> Result<u32, PgmError> {
    // Skip whitespace and comments.
    loop {
        match bytes.get(*pos) {
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(*pos) {
                    *pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            Some(_) => break,
            None => return Err(PgmError::BadHeader("unexpected end of header")),
        }
    }
    let start = *pos;
    while matches!(bytes.get(*pos), Some(b) if b.is_ascii_digit()) {
        *pos += 1;
    }
    if *pos == start {
        return Err(PgmError::BadHeader("expected integer"));
    }
    let text = std::str::from_utf8(&bytes[start..*pos]).expect("digits are ascii");
    text.parse::<u32>().map_err(|_| PgmError::BadHeader("integer overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_single_pixel() {
        let img = read_pgm(b"P5\n1 1\n255\n\x7f").unwrap();
        assert_eq!((img.height(), img.width(), img.bit_depth()), (1, 1, 8));
        assert_eq!(img.pixels(), &[127]);
    }

    #[test]
    fn reads_row_image() {
        let img = read_pgm(b"P5\n2 1\n255\n\x00\xff").unwrap();
        assert_eq!((img.height(), img.width()), (1, 2));
        assert_eq!(img.pixels(), &[0, 255]);
    }

    #[test]
    fn rejects_deep_maxval() {
        assert_eq!(read_pgm(b"P5\n2 2\n65535\n\x00\x00\x00\x00"), Err(PgmError::UnsupportedDepth(65535)));
    }

    #[test]
    fn rejects_bad_magic() {
        assert_eq!(read_pgm(b"P6\n1 1\n255\n\x00"), Err(PgmError::BadMagic));
    }

    #[test]
    fn rejects_short_payload() {
        assert!(matches!(
            read_pgm(b"P5\n2 2\n255\n\x00\x01\x02"),
            Err(PgmError::Truncated { expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn skips_header_comments() {
        let img = read_pgm(b"P5\n# a comment\n2 1 # inline\n255\n\x05\x06").unwrap();
        assert_eq!(img.pixels(), &[5, 6]);
    }

    #[test]
    fn canonical_writer_header() {
        let img = GrayImage::new(1, 1, 8, vec![0]).unwrap();
        assert_eq!(write_pgm(&img).unwrap(), b"P5\n1 1\n255\n\x00");
    }

    #[test]
    fn writer_rejects_non_8bit() {
        let img = GrayImage::new(1, 1, 4, vec![3]).unwrap();
        assert_eq!(write_pgm(&img), Err(PgmError::UnsupportedDepth(4)));
    }

    #[test]
    fn coord_bits_edge_cases() {
        assert_eq!(coord_bits(1), 1);
        assert_eq!(coord_bits(2), 1);
        assert_eq!(coord_bits(3), 2);
        assert_eq!(coord_bits(512), 9);
        assert_eq!(coord_bits(513), 10);
    }

    proptest! {
        #[test]
        fn round_trip_identity(h in 1usize..12, w in 1usize..12, seed in any::<u64>()) {
            let mut state = seed;
            let pixels: Vec<u8> = (0..h * w)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 56) as u8
                })
                .collect();
            let img = GrayImage::new(h, w, 8, pixels).unwrap();
            let bytes = write_pgm(&img).unwrap();
            prop_assert_eq!(read_pgm(&bytes).unwrap(), img);
        }
    }
}
