//! Trigonometric chaotic maps, their symmetric coupling, and the slope stream
//! that feeds the sloped Haar coefficients.
//!
//! The two maps are
//!
//! ```text
//! f1(x) = tan^2(N1 * atan(sqrt x)) / a1^2
//! f2(x) = cot^2(N2 * atan(1 / sqrt x)) / a2^2
//! x_{n+1} = (1 - eps) f1(x_n) + eps f2(x_n)
//! ```
//!
//! Iterates live on `[0, inf)`; [`lambda_from_iterate`] folds them into the
//! slope range `[-2, 2)`.

use crate::error::ChaosError;
use crate::scalar::Real;

/// Transient discarded before a stream emits its first value.
pub const DEFAULT_BURN_IN: usize = 64;

/// Offset added to the state when a step hits a pole.
const RETRY_PERTURBATION: f64 = 1e-6;

/// The six control parameters of the coupled map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChaosParams<T> {
    pub x0: T,
    pub n1: u32,
    pub n2: u32,
    pub a1: T,
    pub a2: T,
    pub eps: T,
}

impl<T: Real> ChaosParams<T> {
    pub fn new(x0: T, n1: u32, n2: u32, a1: T, a2: T, eps: T) -> Result<Self, ChaosError> {
        let p = Self { x0, n1, n2, a1, a2, eps };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ChaosError> {
        let bad = |name, reason: &str| Err(ChaosError::InvalidParam { name, reason: reason.into() });
        if !(self.x0.is_finite() && self.x0 > T::zero()) {
            return bad("x0", "must be finite and > 0");
        }
        if self.n1 < 2 {
            return bad("N1", "must be an integer >= 2");
        }
        if self.n2 < 2 {
            return bad("N2", "must be an integer >= 2");
        }
        if !(self.a1.is_finite() && self.a1 > T::zero()) {
            return bad("a1", "must be finite and > 0");
        }
        if !(self.a2.is_finite() && self.a2 > T::zero()) {
            return bad("a2", "must be finite and > 0");
        }
        if !(self.eps > T::zero() && self.eps < T::one()) {
            return bad("eps", "must lie in the open interval (0, 1)");
        }
        Ok(())
    }
}

/// Distance below which an angle counts as sitting on a tan/cot pole.
fn pole_tolerance<T: Real>(angle: T) -> T {
    T::epsilon() * T::lit(64.0) * angle.abs().max(T::one())
}

fn check_degree_and_scale<T: Real>(a: T, n: u32) -> Result<(), ChaosError> {
    if n == 0 {
        return Err(ChaosError::InvalidParam { name: "N", reason: "must be >= 1".into() });
    }
    if !(a.is_finite() && a > T::zero()) {
        return Err(ChaosError::InvalidParam { name: "a", reason: "must be finite and > 0".into() });
    }
    Ok(())
}

/// `tan^2(n * atan(sqrt x)) / a^2`.
pub fn f1<T: Real>(x: T, a: T, n: u32) -> Result<T, ChaosError> {
    check_degree_and_scale(a, n)?;
    if !(x.is_finite() && x >= T::zero()) {
        return Err(ChaosError::Domain { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    let angle = T::lit(n as f64) * x.sqrt().atan();
    // nearest odd multiple of pi/2
    let k = (angle / T::PI() - T::lit(0.5)).round();
    let pole = (k + T::lit(0.5)) * T::PI();
    if (angle - pole).abs() <= pole_tolerance(angle) {
        return Err(ChaosError::Pole { angle: angle.to_f64().unwrap_or(f64::NAN) });
    }
    let t = angle.tan();
    let v = t * t / (a * a);
    if !v.is_finite() {
        return Err(ChaosError::Overflow { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(v)
}

/// `cot^2(n * atan(x^{-1/2})) / a^2`.
pub fn f2<T: Real>(x: T, a: T, n: u32) -> Result<T, ChaosError> {
    check_degree_and_scale(a, n)?;
    if !(x.is_finite() && x > T::zero()) {
        return Err(ChaosError::Domain { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    let angle = T::lit(n as f64) * x.sqrt().recip().atan();
    let pole = (angle / T::PI()).round() * T::PI();
    if (angle - pole).abs() <= pole_tolerance(angle) {
        return Err(ChaosError::Pole { angle: angle.to_f64().unwrap_or(f64::NAN) });
    }
    let c = angle.cos() / angle.sin();
    let v = c * c / (a * a);
    if !v.is_finite() {
        return Err(ChaosError::Overflow { x: x.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(v)
}

/// One step of the symmetric coupling `(1 - eps) f1 + eps f2`.
pub fn step_coupled<T: Real>(x: T, p: &ChaosParams<T>) -> Result<T, ChaosError> {
    let u = f1(x, p.a1, p.n1)?;
    let v = f2(x, p.a2, p.n2)?;
    Ok((T::one() - p.eps) * u + p.eps * v)
}

/// Folds an iterate into `[-2, 2)` via `4 frac(x) - 2`.
#[inline]
pub fn lambda_from_iterate<T: Real>(x: T) -> T {
    T::lit(4.0) * frac(x) - T::lit(2.0)
}

/// Fractional part `x - floor(x)` in `[0, 1)`.
#[inline]
pub fn frac<T: Real>(x: T) -> T {
    let f = x - x.floor();
    // rounds up to 1 for tiny negative x
    if f >= T::one() {
        T::zero()
    } else {
        f
    }
}

/// Stateful generator of slopes from the coupled-map orbit.
///
/// Single owner: stepping mutates the state. Independent streams may run on
/// separate threads.
#[derive(Clone, Debug)]
pub struct LambdaStream<T> {
    params: ChaosParams<T>,
    state: T,
    burn_in: usize,
}

impl<T: Real> LambdaStream<T> {
    /// Validates `params` and discards `burn_in` iterates starting from `x0`.
    pub fn new(params: ChaosParams<T>, burn_in: usize) -> Result<Self, ChaosError> {
        params.validate()?;
        let mut s = Self { params, state: params.x0, burn_in };
        for _ in 0..burn_in {
            s.advance()?;
        }
        Ok(s)
    }

    pub fn params(&self) -> &ChaosParams<T> {
        &self.params
    }

    pub fn state(&self) -> T {
        self.state
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    fn advance(&mut self) -> Result<T, ChaosError> {
        let next = match step_coupled(self.state, &self.params) {
            Ok(v) => v,
            Err(_) => {
                let nudged = self.state + T::lit(RETRY_PERTURBATION);
                step_coupled(nudged, &self.params).map_err(|_| ChaosError::Degenerate {
                    state: self.state.to_f64().unwrap_or(f64::NAN),
                })?
            }
        };
        debug_assert!(next.is_finite() && next >= T::zero());
        self.state = next;
        Ok(next)
    }

    /// Advances one step and returns the raw iterate.
    pub fn next_iterate(&mut self) -> Result<T, ChaosError> {
        self.advance()
    }

    /// Advances one step and returns the folded slope in `[-2, 2)`.
    pub fn next_lambda(&mut self) -> Result<T, ChaosError> {
        self.advance().map(lambda_from_iterate)
    }
}

/// Same as [`LambdaStream::new`].
pub fn init_stream<T: Real>(params: ChaosParams<T>, burn_in: usize) -> Result<LambdaStream<T>, ChaosError> {
    LambdaStream::new(params, burn_in)
}
