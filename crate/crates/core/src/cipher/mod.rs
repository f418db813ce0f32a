//! Encryption pipeline: two-level chaotic Haar decomposition, spiral swapping,
//! inverse transform with fresh keys, quantisation and XOR.
//!
//! Two modes share the pipeline. In [`CipherMode::Literal`] the chaotic image
//! is computed from the plaintext itself, so decryption needs the plaintext
//! and only [`verify_roundtrip`] is available. In [`CipherMode::Keystream`] it
//! is computed from a key-derived pseudorandom image, which makes
//! [`decrypt`] well defined.

mod spiral;

pub use spiral::{partner_scan, spiral_order, spiral_swap, swap_plan, DetailBand, Swap, SwapRecord, MIN_SIDE};

use crate::chaos::{frac, ChaosParams, LambdaStream, DEFAULT_BURN_IN};
use crate::error::CipherError;
use crate::image::GrayImage;
use crate::matrix::Matrix;
use crate::wavelet::{build_level_matrix, decompose, reconstruct, HaarMatrix, Normalization};

/// Extra iterates discarded by the keystream generator beyond the key's burn-in.
pub const KEYSTREAM_BURN_IN_OFFSET: usize = 1000;

pub const LEVEL1_FORWARD: usize = 0;
pub const LEVEL2_FORWARD: usize = 1;
pub const LEVEL2_INVERSE: usize = 2;
pub const LEVEL1_INVERSE: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CipherMode {
    /// Chaotic image derived from the plaintext.
    Literal,
    /// Chaotic image derived from a key-generated image; invertible.
    #[default]
    Keystream,
}

/// Four parameter sets, one per transform stage, plus global options.
#[derive(Clone, Debug, PartialEq)]
pub struct KeySchedule {
    /// Indexed by [`LEVEL1_FORWARD`], [`LEVEL2_FORWARD`], [`LEVEL2_INVERSE`], [`LEVEL1_INVERSE`].
    pub stages: [ChaosParams<f64>; 4],
    pub burn_in: usize,
    pub normalization: Normalization,
    pub mode: CipherMode,
}

impl KeySchedule {
    /// Validates every stage and uses the default burn-in, raw
    /// normalisation and keystream mode.
    pub fn new(stages: [ChaosParams<f64>; 4]) -> Result<Self, CipherError> {
        let ks = Self { stages, burn_in: DEFAULT_BURN_IN, normalization: Normalization::Raw, mode: CipherMode::Keystream };
        ks.validate()?;
        Ok(ks)
    }

    pub fn with_mode(mut self, mode: CipherMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn validate(&self) -> Result<(), CipherError> {
        for p in &self.stages {
            p.validate()?;
        }
        Ok(())
    }

    fn stream(&self, stage: usize) -> Result<LambdaStream<f64>, CipherError> {
        Ok(LambdaStream::new(self.stages[stage], self.burn_in)?)
    }

    fn matrix(&self, stage: usize, n: usize) -> Result<HaarMatrix<f64>, CipherError> {
        let mut s = self.stream(stage)?;
        Ok(build_level_matrix(n, &mut s, self.normalization)?)
    }
}

fn check_cipher_side(n: usize, what: &str) -> Result<(), CipherError> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(CipherError::Dimension(format!("{what} side must be a positive multiple of 4, got {n}")));
    }
    Ok(())
}

fn check_square(img: &GrayImage) -> Result<usize, CipherError> {
    if !img.is_square() {
        return Err(CipherError::Dimension(format!("image must be square, got {}x{}", img.width(), img.height())));
    }
    check_cipher_side(img.width(), "image")?;
    Ok(img.width())
}

fn to_matrix(img: &GrayImage) -> Matrix<f64> {
    Matrix::from_vec(img.height(), img.width(), img.pixels().iter().map(|&p| p as f64).collect())
}

/// Swaps the given level in place, or leaves it alone when its quadrants are
/// smaller than the spiral traversal allows.
fn swap_level(tree: &mut crate::wavelet::Decomposition<f64>, level: usize) -> Result<(), CipherError> {
    let sb = tree.subbands(level);
    if sb.side() < MIN_SIDE {
        return Ok(());
    }
    let (swapped, _) = spiral_swap(&sb)?;
    tree.set_subbands(level, &swapped)?;
    Ok(())
}

/// The real-valued chaotic Haar image of `m` under `ks`.
pub fn chaotic_image(m: &Matrix<f64>, ks: &KeySchedule) -> Result<Matrix<f64>, CipherError> {
    if !m.is_square() {
        return Err(CipherError::Dimension(format!("matrix must be square, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    check_cipher_side(n, "matrix")?;
    let forward = [ks.matrix(LEVEL1_FORWARD, n)?, ks.matrix(LEVEL2_FORWARD, n / 2)?];
    let mut tree = decompose(m, &forward)?;
    swap_level(&mut tree, 2)?;
    swap_level(&mut tree, 1)?;
    let inverse = [ks.matrix(LEVEL1_INVERSE, n)?, ks.matrix(LEVEL2_INVERSE, n / 2)?];
    Ok(reconstruct(&tree, &inverse)?)
}

/// Round half away from zero, then reduce modulo 256.
pub fn quantize(f: &Matrix<f64>) -> Result<GrayImage, CipherError> {
    let mut px = Vec::with_capacity(f.rows() * f.cols());
    for r in 0..f.rows() {
        for c in 0..f.cols() {
            let v = f[(r, c)];
            if !v.is_finite() {
                return Err(CipherError::NonFinite { row: r, col: c });
            }
            px.push(v.round().rem_euclid(256.0) as u8);
        }
    }
    Ok(GrayImage::new(f.cols(), f.rows(), px))
}

pub fn xor_combine(f: &GrayImage, m: &GrayImage) -> Result<GrayImage, CipherError> {
    if (f.width(), f.height()) != (m.width(), m.height()) {
        return Err(CipherError::Dimension(format!(
            "cannot combine {}x{} with {}x{}",
            f.width(),
            f.height(),
            m.width(),
            m.height()
        )));
    }
    let px = f.pixels().iter().zip(m.pixels()).map(|(a, b)| a ^ b).collect();
    Ok(GrayImage::new(m.width(), m.height(), px))
}

/// Pseudorandom byte image from the level-1 forward stage, burned in an extra
/// [`KEYSTREAM_BURN_IN_OFFSET`] steps; pixel = `floor(256 frac(x))`, row-major.
pub fn keystream_image(ks: &KeySchedule, n: usize) -> Result<GrayImage, CipherError> {
    check_cipher_side(n, "keystream")?;
    let mut s = LambdaStream::new(ks.stages[LEVEL1_FORWARD], ks.burn_in + KEYSTREAM_BURN_IN_OFFSET)?;
    let mut px = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let x = s.next_iterate()?;
        px.push((frac(x) * 256.0).floor().clamp(0.0, 255.0) as u8);
    }
    Ok(GrayImage::new(n, n, px))
}

/// Quantised chaotic image used as the XOR pad for `m`.
fn pad_for(m: &GrayImage, ks: &KeySchedule) -> Result<GrayImage, CipherError> {
    let n = check_square(m)?;
    let source = match ks.mode {
        CipherMode::Literal => to_matrix(m),
        CipherMode::Keystream => to_matrix(&keystream_image(ks, n)?),
    };
    quantize(&chaotic_image(&source, ks)?)
}

pub fn encrypt(m: &GrayImage, ks: &KeySchedule) -> Result<GrayImage, CipherError> {
    let pad = pad_for(m, ks)?;
    xor_combine(&pad, m)
}

pub fn decrypt(e: &GrayImage, ks: &KeySchedule) -> Result<GrayImage, CipherError> {
    if ks.mode == CipherMode::Literal {
        return Err(CipherError::LiteralModeDecrypt);
    }
    let pad = pad_for(e, ks)?;
    xor_combine(e, &pad)
}

/// Checks `e XOR pad(m) == m`, recomputing the pad from `m` in either mode.
pub fn verify_roundtrip(e: &GrayImage, m: &GrayImage, ks: &KeySchedule) -> Result<bool, CipherError> {
    let pad = pad_for(m, ks)?;
    Ok(xor_combine(e, &pad)? == *m)
}
