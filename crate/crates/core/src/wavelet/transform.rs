//! Separable 2-D transforms, quadrant sub-bands and multilevel decomposition.

use crate::chaos::LambdaStream;
use crate::error::WaveletError;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::wavelet::matrix::{build_level_matrix, HaarMatrix, Normalization};

fn check_dims<T: Real>(m: &Matrix<T>, h: &HaarMatrix<T>) -> Result<(), WaveletError> {
    if !m.is_square() || m.rows() != h.dim() {
        return Err(WaveletError::Dimension(format!(
            "{}x{} input does not match a {}x{} transform",
            m.rows(),
            m.cols(),
            h.dim(),
            h.dim()
        )));
    }
    Ok(())
}

/// `H M H^T`.
pub fn forward_2d<T: Real>(m: &Matrix<T>, h: &HaarMatrix<T>) -> Result<Matrix<T>, WaveletError> {
    check_dims(m, h)?;
    // H M H^T = H (H M^T)^T keeps the sparse factor on the left of both products.
    let hmt = h.entries().matmul(&m.transpose());
    Ok(h.entries().matmul(&hmt.transpose()))
}

/// `H^{-1} F H^{-T}`, via two LU solves.
pub fn inverse_2d<T: Real>(f: &Matrix<T>, h: &HaarMatrix<T>) -> Result<Matrix<T>, WaveletError> {
    check_dims(f, h)?;
    let y = h.lu().solve(f);
    Ok(h.lu().solve(&y.transpose()).transpose())
}

/// The four quadrants of a one-level transform.
///
/// `ll` is the top-left block, `hl` top-right, `lh` bottom-left and `hh`
/// bottom-right.
#[derive(Clone, Debug, PartialEq)]
pub struct SubBands<T> {
    pub ll: Matrix<T>,
    pub lh: Matrix<T>,
    pub hl: Matrix<T>,
    pub hh: Matrix<T>,
    pub level: usize,
}

impl<T: Real> SubBands<T> {
    /// Side length of each quadrant.
    pub fn side(&self) -> usize {
        self.ll.rows()
    }
}

pub fn split_subbands<T: Real>(f: &Matrix<T>, level: usize) -> Result<SubBands<T>, WaveletError> {
    let n = f.rows();
    if !f.is_square() || n < 2 || !n.is_multiple_of(2) {
        return Err(WaveletError::Dimension(format!(
            "cannot split a {}x{} matrix into quadrants",
            f.rows(),
            f.cols()
        )));
    }
    let h = n / 2;
    Ok(SubBands {
        ll: f.block(0, 0, h, h),
        hl: f.block(0, h, h, h),
        lh: f.block(h, 0, h, h),
        hh: f.block(h, h, h, h),
        level,
    })
}

pub fn merge_subbands<T: Real>(sb: &SubBands<T>) -> Result<Matrix<T>, WaveletError> {
    let h = sb.ll.rows();
    for q in [&sb.ll, &sb.lh, &sb.hl, &sb.hh] {
        if q.rows() != h || q.cols() != h {
            return Err(WaveletError::Dimension("sub-bands must share one square size".into()));
        }
    }
    let mut f = Matrix::zeros(2 * h, 2 * h);
    f.set_block(0, 0, &sb.ll);
    f.set_block(0, h, &sb.hl);
    f.set_block(h, 0, &sb.lh);
    f.set_block(h, h, &sb.hh);
    Ok(f)
}

/// Multilevel decomposition stored in the nested quadrant layout: the level-`k`
/// quadrants occupy the top-left `n / 2^{k-1}` block, whose own LL quadrant
/// holds level `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    coeffs: Matrix<T>,
    levels: usize,
}

impl<T: Real> Decomposition<T> {
    pub fn from_parts(coeffs: Matrix<T>, levels: usize) -> Result<Self, WaveletError> {
        let n = coeffs.rows();
        if !coeffs.is_square() || levels == 0 || levels >= usize::BITS as usize || !n.is_multiple_of(1 << levels) {
            return Err(WaveletError::Dimension(format!("side {n} is not divisible by 2^{levels}")));
        }
        Ok(Self { coeffs, levels })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn size(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &Matrix<T> {
        &self.coeffs
    }

    fn region(&self, level: usize) -> usize {
        assert!((1..=self.levels).contains(&level), "level {level} out of range");
        self.size() >> (level - 1)
    }

    /// Quadrants of `level` (1-based). The LL quadrant of any level but the
    /// deepest still contains the deeper levels in nested layout.
    pub fn subbands(&self, level: usize) -> SubBands<T> {
        let s = self.region(level);
        split_subbands(&self.coeffs.block(0, 0, s, s), level).expect("region is even")
    }

    pub fn set_subbands(&mut self, level: usize, sb: &SubBands<T>) -> Result<(), WaveletError> {
        let s = self.region(level);
        if sb.side() * 2 != s {
            return Err(WaveletError::Dimension(format!(
                "level {level} quadrants must be {}x{}",
                s / 2,
                s / 2
            )));
        }
        self.coeffs.set_block(0, 0, &merge_subbands(sb)?);
        Ok(())
    }

    /// Deepest approximation band.
    pub fn approximation(&self) -> Matrix<T> {
        self.subbands(self.levels).ll
    }
}

/// Decomposes `image` with one matrix per level; `matrices[k]` must have side
/// `n / 2^k`.
pub fn decompose<T: Real>(image: &Matrix<T>, matrices: &[HaarMatrix<T>]) -> Result<Decomposition<T>, WaveletError> {
    let n = image.rows();
    let levels = matrices.len();
    if levels == 0 {
        return Err(WaveletError::Dimension("at least one level is required".into()));
    }
    if !image.is_square() || levels >= usize::BITS as usize || !n.is_multiple_of(1 << levels) {
        return Err(WaveletError::Dimension(format!(
            "{}x{} image is not square with side divisible by 2^{levels}",
            image.rows(),
            image.cols()
        )));
    }
    let mut coeffs = image.clone();
    for (k, h) in matrices.iter().enumerate() {
        let s = n >> k;
        let t = forward_2d(&coeffs.block(0, 0, s, s), h)?;
        coeffs.set_block(0, 0, &t);
    }
    Decomposition::from_parts(coeffs, levels)
}

/// Inverts a decomposition deepest level first with `matrices[k]` for level `k + 1`.
pub fn reconstruct<T: Real>(tree: &Decomposition<T>, matrices: &[HaarMatrix<T>]) -> Result<Matrix<T>, WaveletError> {
    if matrices.len() != tree.levels() {
        return Err(WaveletError::Dimension(format!(
            "{} matrices for a {}-level tree",
            matrices.len(),
            tree.levels()
        )));
    }
    let n = tree.size();
    let mut coeffs = tree.coeffs().clone();
    for (k, h) in matrices.iter().enumerate().rev() {
        let s = n >> k;
        let t = inverse_2d(&coeffs.block(0, 0, s, s), h)?;
        coeffs.set_block(0, 0, &t);
    }
    Ok(coeffs)
}

/// Builds the per-level matrices for an `n x n` image, one stream per level.
pub fn level_matrices<T: Real>(
    n: usize,
    streams: &mut [LambdaStream<T>],
    normalization: Normalization,
) -> Result<Vec<HaarMatrix<T>>, WaveletError> {
    let levels = streams.len();
    if levels == 0 || levels >= usize::BITS as usize || !n.is_multiple_of(1 << levels) {
        return Err(WaveletError::Dimension(format!("side {n} is not divisible by 2^{levels}")));
    }
    streams
        .iter_mut()
        .enumerate()
        .map(|(k, s)| build_level_matrix(n >> k, s, normalization))
        .collect()
}

/// Affine map of a band onto `0..=255` (min to 0, max to 255); a constant band
/// maps to 128.
pub fn rescale_to_gray<T: Real>(band: &Matrix<T>) -> Vec<u8> {
    let Some((lo, hi)) = band.min_max() else {
        return Vec::new();
    };
    let span = hi - lo;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN span counts as constant
    if !(span > T::zero()) {
        return vec![128; band.rows() * band.cols()];
    }
    band.as_slice()
        .iter()
        .map(|&v| {
            let s = ((v - lo) / span * T::lit(255.0)).round();
            s.to_f64().unwrap_or(0.0).clamp(0.0, 255.0) as u8
        })
        .collect()
}
