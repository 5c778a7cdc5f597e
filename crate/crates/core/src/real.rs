//! Scalar abstraction so the kernel and samplers work over `f32` or `f64`.

use std::fmt::{Display, LowerExp};

use num_traits::{Float, FloatConst, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftNum;

/// Floating-point scalar usable everywhere in this crate.
///
/// `FftNum` brings `FromPrimitive + Signed + Send + Sync + Debug + 'static`,
/// so the only additions are float semantics, formatting, and a fixed
/// Gaussian sampling hook (ziggurat via `rand_distr::StandardNormal`, so a
/// given RNG stream always maps to the same variates).
pub trait Real: Float + FloatConst + FftNum + ToPrimitive + Display + LowerExp {
    /// One standard normal variate from `rng`.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Conversion from `f64` for constants and tolerances.
    fn cast(x: f64) -> Self;

    fn cast_usize(n: usize) -> Self {
        Self::cast(n as f64)
    }

    /// Widen to `f64` for reporting and file formats.
    fn as_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn cast(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn cast(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// One unit in the last place of `scale`, approximated as `|scale|·ε`.
///
/// Algebraic identities in this crate are checked against tolerances of the
/// form `k` ulps of the largest magnitude entering the identity, because the
/// compared quantities can be small differences of large terms.
#[inline]
pub fn ulp<T: Real>(scale: T) -> T {
    scale.abs() * T::epsilon()
}

/// `n` ulps of `scale`.
#[inline]
pub fn ulps<T: Real>(n: u32, scale: T) -> T {
    T::cast_usize(n as usize) * ulp(scale)
}
