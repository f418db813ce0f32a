use std::fs;
use std::path::Path;

use crate::error::IoError;
use crate::image::GrayImage;

/// Smallest side accepted by the cipher commands.
pub const MIN_CIPHER_SIDE: usize = 8;

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, IoError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(IoError::Header(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| IoError::Header(format!("{what} out of range")))
    }
}

/// Parses a binary (P5) graymap with maxval 255.
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayImage, IoError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(IoError::Header("missing P5 magic".into()));
    }
    let mut h = Header { bytes, pos: 2 };
    if h.pos < bytes.len() && !bytes[h.pos].is_ascii_whitespace() && bytes[h.pos] != b'#' {
        return Err(IoError::Header("missing whitespace after magic".into()));
    }
    let width = h.number("width")? as usize;
    let height = h.number("height")? as usize;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(IoError::Header(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(IoError::Maxval(maxval));
    }
    match bytes.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => h.pos += 1,
        _ => return Err(IoError::Header("missing single whitespace before raster".into())),
    }
    let expected = width * height;
    let payload = &bytes[h.pos..];
    if payload.len() < expected {
        return Err(IoError::Truncated { expected, found: payload.len() });
    }
    Ok(GrayImage::new(width, height, payload[..expected].to_vec()))
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage, IoError> {
    decode_pgm(&fs::read(path)?)
}

pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<(), IoError> {
    fs::write(path, encode_pgm(img))?;
    Ok(())
}

/// Square, power-of-two side, at least 8.
pub fn require_cipher_shape(img: &GrayImage) -> Result<(), IoError> {
    let (w, h) = (img.width(), img.height());
    if w != h || !w.is_power_of_two() || w < MIN_CIPHER_SIDE {
        return Err(IoError::Shape { width: w, height: h });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_header_parses() {
        let mut bytes = b"P5\n8 8\n255\n".to_vec();
        bytes.extend((0..64).map(|i| i as u8));
        let img = decode_pgm(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (8, 8));
        assert_eq!(img.get(7, 7), 63);
    }

    #[test]
    fn comments_in_header() {
        let mut bytes = b"P5 # made by hand\n# another\n4\n# mid\n2 255\n".to_vec();
        bytes.extend([9u8; 8]);
        let img = decode_pgm(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (4, 2));
    }

    #[test]
    fn zero_image_roundtrip() {
        let img = GrayImage::filled(8, 8, 0);
        assert_eq!(decode_pgm(&encode_pgm(&img)).unwrap(), img);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(decode_pgm(b"P2\n2 2\n255\n0000"), Err(IoError::Header(_))));
        assert!(matches!(decode_pgm(b"P5\n2 2\n65535\n00000000"), Err(IoError::Maxval(65535))));
        assert!(matches!(decode_pgm(b"P5\n2 2\n255\n000"), Err(IoError::Truncated { expected: 4, found: 3 })));
        assert!(matches!(decode_pgm(b"P5\n2\n"), Err(IoError::Header(_))));
        assert!(matches!(decode_pgm(b"P5\n0 2\n255\n"), Err(IoError::Header(_))));
    }

    #[test]
    fn cipher_shape() {
        assert!(require_cipher_shape(&GrayImage::filled(8, 8, 0)).is_ok());
        assert!(require_cipher_shape(&GrayImage::filled(8, 16, 0)).is_err());
        assert!(require_cipher_shape(&GrayImage::filled(12, 12, 0)).is_err());
        assert!(require_cipher_shape(&GrayImage::filled(4, 4, 0)).is_err());
    }
}
