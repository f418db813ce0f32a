//! Sloped Haar scaling and wavelet functions, their two-scale coefficients, and
//! the 1-D dyadic projection.

use crate::error::WaveletError;
use crate::scalar::Real;

/// Two-scale coefficients of the sloped scaling function for one slope.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopedCoeffs<T> {
    pub lambda: T,
    pub p0: T,
    pub p1: T,
}

/// `p0 = l^2/24 - l/4 + 1`, `p1 = l^2/24 + l/4 + 1`.
///
/// Both quadratics have negative discriminant, so the coefficients stay
/// positive on the whole slope range.
pub fn sloped_coeffs<T: Real>(lambda: T) -> Result<SlopedCoeffs<T>, WaveletError> {
    let two = T::lit(2.0);
    if !(lambda >= -two && lambda <= two) {
        return Err(WaveletError::LambdaRange(lambda.to_f64().unwrap_or(f64::NAN)));
    }
    let q = lambda * lambda / T::lit(24.0) + T::one();
    let l = lambda / T::lit(4.0);
    Ok(SlopedCoeffs { lambda, p0: q - l, p1: q + l })
}

/// Sloped scaling function: `lambda (x - 1/2) + 1` on `[0, 1)`, zero elsewhere.
pub fn phi<T: Real>(x: T, lambda: T) -> T {
    if x >= T::zero() && x < T::one() {
        lambda * (x - T::lit(0.5)) + T::one()
    } else {
        T::zero()
    }
}

/// Sloped wavelet, piecewise linear on the two half intervals.
pub fn psi<T: Real>(x: T, lambda: T) -> T {
    let half = T::lit(0.5);
    let q = lambda * lambda / T::lit(24.0) + T::one();
    let l = lambda / T::lit(4.0);
    let two_lx = T::lit(2.0) * lambda * x;
    if x >= T::zero() && x < half {
        (q + l) * (two_lx - lambda * half + T::one())
    } else if x >= half && x < T::one() {
        -(q - l) * (two_lx - T::lit(1.5) * lambda + T::one())
    } else {
        T::zero()
    }
}

/// Largest value strictly below `b` that the scalar can distinguish from it.
fn just_below<T: Real>(b: T) -> T {
    b - b.abs().max(T::one()) * T::epsilon()
}

/// Composite trapezoid rule applied separately on each `[breaks[i], breaks[i+1])`.
///
/// `f` is sampled on half-open pieces, so the right end of each piece is taken
/// as a left limit. With `nodes` intervals per piece the rule is exact (up to
/// rounding) for piecewise-linear integrands.
pub fn trapezoid_piecewise<T: Real>(f: impl Fn(T) -> T, breaks: &[T], nodes: usize) -> T {
    assert!(nodes >= 1);
    let mut total = T::zero();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = (b - a) / T::lit(nodes as f64);
        let mut s = (f(a) + f(just_below(b))) * T::lit(0.5);
        for i in 1..nodes {
            s = s + f(a + h * T::lit(i as f64));
        }
        total = total + s * h;
    }
    total
}

/// Projects uniformly spaced samples onto the dyadic sloped scaling functions.
///
/// `samples` covers the closed interval `[0, length]` with equal spacing,
/// endpoints included. Returns `c_{m,k} = integral of f(x) phi(2^m x - k)`
/// over `[k 2^-m, (k+1) 2^-m)` for `k = 0 .. length * 2^m`, computed with the
/// trapezoid rule on the sample grid. The scaling function is taken with unit
/// amplitude and evaluated as its closure on each interval.
pub fn project_1d<T: Real>(samples: &[T], length: usize, level: u32, lambda: T) -> Result<Vec<T>, WaveletError> {
    if length == 0 {
        return Err(WaveletError::Dimension("interval length must be positive".into()));
    }
    let slots = length
        .checked_mul(1usize << level)
        .ok_or_else(|| WaveletError::Resolution(format!("level {level} too deep")))?;
    let spans = samples.len().saturating_sub(1);
    if spans == 0 || !spans.is_multiple_of(slots) {
        return Err(WaveletError::Resolution(format!(
            "{} samples do not place a grid point on every boundary of {slots} dyadic intervals",
            samples.len()
        )));
    }
    // spans >= slots here, so every interval holds at least two samples
    let per = spans / slots;
    let h = T::lit(length as f64) / T::lit(spans as f64);
    // local coordinate t in [0, 1] over one interval
    let local = |j: usize| lambda * (T::lit(j as f64) / T::lit(per as f64) - T::lit(0.5)) + T::one();
    let coeffs = (0..slots)
        .map(|k| {
            let base = k * per;
            let mut s = (samples[base] * local(0) + samples[base + per] * local(per)) * T::lit(0.5);
            for j in 1..per {
                s = s + samples[base + j] * local(j);
            }
            s * h
        })
        .collect();
    Ok(coeffs)
}
