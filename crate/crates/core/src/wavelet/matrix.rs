//! Classic and chaotic Haar transform matrices.

use crate::chaos::LambdaStream;
use crate::error::WaveletError;
use crate::matrix::{Lu, Matrix};
use crate::scalar::Real;
use crate::wavelet::functions::sloped_coeffs;

/// Matrices with `|det| <= MIN_ABS_DET` are rejected.
pub const MIN_ABS_DET: f64 = 1e-9;

/// Redraws allowed after the first singular draw.
pub const MAX_REDRAWS: usize = 8;

/// Scaling applied to the two-scale coefficients when they enter a matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Entries are `p_i` unchanged.
    #[default]
    Raw,
    /// Entries are `p_i / sqrt 2`.
    Normalized,
}

impl Normalization {
    pub fn apply<T: Real>(self, p: T) -> T {
        match self {
            Normalization::Raw => p,
            Normalization::Normalized => p / T::SQRT_2(),
        }
    }
}

/// A dense invertible transform matrix with its LU factorisation.
#[derive(Clone, Debug)]
pub struct HaarMatrix<T> {
    entries: Matrix<T>,
    lu: Lu<T>,
    normalization: Normalization,
}

impl<T: Real> HaarMatrix<T> {
    /// Wraps a square matrix of even side after checking `|det| > 1e-9`.
    pub fn new(entries: Matrix<T>, normalization: Normalization) -> Result<Self, WaveletError> {
        let n = entries.rows();
        if !entries.is_square() || n < 2 || !n.is_multiple_of(2) {
            return Err(WaveletError::Dimension(format!(
                "transform matrix must be square with even side >= 2, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let lu = Lu::factor(&entries).ok_or(WaveletError::Singular)?;
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the gate
        if !(lu.log_abs_det() > T::lit(MIN_ABS_DET.ln())) {
            return Err(WaveletError::Singular);
        }
        Ok(Self { entries, lu, normalization })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<T> {
        &self.entries
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn log_abs_det(&self) -> T {
        self.lu.log_abs_det()
    }

    pub(crate) fn lu(&self) -> &Lu<T> {
        &self.lu
    }

    /// Embeds this matrix in the top-left corner of an `n x n` identity.
    pub fn embed(&self, n: usize) -> Matrix<T> {
        assert!(n >= self.dim());
        let mut m = Matrix::identity(n);
        m.set_block(0, 0, &self.entries);
        m
    }
}

/// Standard orthonormal Haar matrix of side `n` (a power of two).
///
/// Row 0 is the constant `1/sqrt n`; row `2^j + k` is the Haar function at
/// scale `j` and shift `k`, `+2^{j/2}/sqrt n` on the first half of its support
/// and negative on the second half.
pub fn classic_haar_matrix<T: Real>(n: usize) -> Result<HaarMatrix<T>, WaveletError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(WaveletError::Dimension(format!("classic Haar needs a power-of-two side >= 2, got {n}")));
    }
    let inv_sqrt_n = T::one() / T::lit(n as f64).sqrt();
    let mut m = Matrix::zeros(n, n);
    for c in 0..n {
        m[(0, c)] = inv_sqrt_n;
    }
    let mut row = 1;
    let mut scale = 1usize;
    while scale < n {
        let width = n / scale;
        let amp = T::lit(scale as f64).sqrt() * inv_sqrt_n;
        for k in 0..scale {
            for c in 0..width {
                m[(row, k * width + c)] = if c < width / 2 { amp } else { -amp };
            }
            row += 1;
        }
        scale *= 2;
    }
    HaarMatrix::new(m, Normalization::Normalized)
}

/// Slope slots consumed by one single-stage matrix of side `n`.
pub fn level_slot_count(n: usize) -> usize {
    2 * n
}

/// Single-stage butterfly matrix from explicit slope slots.
///
/// Row `r < n/2` holds `p0(l)` at column `2r` and `p1(l')` at `2r + 1`; row
/// `n/2 + r` holds `p1(l)` at `2r` and `-p0(l')` at `2r + 1`. Slots are
/// consumed averaging rows first, top to bottom, two per row, then the
/// differencing rows in the same way.
pub fn level_matrix_from_lambdas<T: Real>(
    n: usize,
    lambdas: &[T],
    normalization: Normalization,
) -> Result<HaarMatrix<T>, WaveletError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(WaveletError::Dimension(format!("level matrix side must be even and >= 2, got {n}")));
    }
    if lambdas.len() != level_slot_count(n) {
        return Err(WaveletError::Dimension(format!(
            "side {n} needs {} slopes, got {}",
            level_slot_count(n),
            lambdas.len()
        )));
    }
    let half = n / 2;
    let mut m = Matrix::zeros(n, n);
    let mut slot = lambdas.iter().copied();
    let mut next = || sloped_coeffs(slot.next().expect("slot count checked"));
    for r in 0..half {
        m[(r, 2 * r)] = normalization.apply(next()?.p0);
        m[(r, 2 * r + 1)] = normalization.apply(next()?.p1);
    }
    for r in 0..half {
        m[(half + r, 2 * r)] = normalization.apply(next()?.p1);
        m[(half + r, 2 * r + 1)] = -normalization.apply(next()?.p0);
    }
    HaarMatrix::new(m, normalization)
}

/// Draws slopes from `stream` and builds a single-stage matrix of side `n`.
///
/// A draw whose determinant fails the gate is discarded and replaced by the
/// next `2n` slopes, at most [`MAX_REDRAWS`] times.
pub fn build_level_matrix<T: Real>(
    n: usize,
    stream: &mut LambdaStream<T>,
    normalization: Normalization,
) -> Result<HaarMatrix<T>, WaveletError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(WaveletError::Dimension(format!("level matrix side must be even and >= 2, got {n}")));
    }
    let mut lambdas = Vec::with_capacity(level_slot_count(n));
    for _ in 0..=MAX_REDRAWS {
        lambdas.clear();
        for _ in 0..level_slot_count(n) {
            lambdas.push(stream.next_lambda()?);
        }
        match level_matrix_from_lambdas(n, &lambdas, normalization) {
            Ok(h) => return Ok(h),
            Err(WaveletError::Singular) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(WaveletError::SingularAfterRedraws { attempts: MAX_REDRAWS })
}

/// Slope slots consumed by the composed pyramid of side `n`.
pub fn pyramid_slot_count(n: usize) -> usize {
    let mut total = 0;
    let mut side = n;
    while side >= 2 {
        total += level_slot_count(side);
        side /= 2;
    }
    total
}

/// Full pyramid `S_k ... S_2 S_1`: stage `i` is the single-stage matrix of
/// side `n / 2^{i-1}` embedded in the identity, slots consumed stage by stage.
pub fn pyramid_matrix_from_lambdas<T: Real>(
    n: usize,
    lambdas: &[T],
    normalization: Normalization,
) -> Result<HaarMatrix<T>, WaveletError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(WaveletError::Dimension(format!("pyramid side must be a power of two >= 2, got {n}")));
    }
    if lambdas.len() != pyramid_slot_count(n) {
        return Err(WaveletError::Dimension(format!(
            "pyramid of side {n} needs {} slopes, got {}",
            pyramid_slot_count(n),
            lambdas.len()
        )));
    }
    let mut acc = Matrix::identity(n);
    let mut side = n;
    let mut offset = 0;
    while side >= 2 {
        let k = level_slot_count(side);
        let stage = level_matrix_from_lambdas(side, &lambdas[offset..offset + k], normalization)?;
        acc = stage.embed(n).matmul(&acc);
        offset += k;
        side /= 2;
    }
    HaarMatrix::new(acc, normalization)
}
