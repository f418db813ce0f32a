//! Binary PGM images and the line-oriented key file.

mod keyfile;
mod pgm;

pub use crate::image::GrayImage;
pub use keyfile::{format_key_file, parse_key_file, read_key_file};
pub use pgm::{decode_pgm, encode_pgm, read_pgm, require_cipher_shape, write_pgm};
