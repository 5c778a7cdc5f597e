use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kernel::{pow_exp, ProcessParams};
use crate::real::Real;

/// Arguments below this evaluate the second difference directly; above it,
/// the direct form loses too many digits to cancellation and the even
/// binomial series takes over (`u = 1/x ≤ 1/8`, so it converges in a few
/// terms).
const SERIES_THRESHOLD: f64 = 8.0;

/// Centered second difference `(x+1)^e − 2x^e + (x−1)^e` for `x ≥ 1`,
/// accurate in relative terms for arbitrarily large `x`.
///
/// For large `x` this equals `x^e·[(1+u)^e + (1−u)^e − 2]` with `u = 1/x`,
/// and the bracket is summed as `2·Σ_{k≥1} C(e,2k) u^{2k}`, avoiding the
/// subtraction of near-equal powers. At `e = 1` every series coefficient
/// carries the factor `(e−1)`, so the result is exactly zero.
pub fn second_difference_pow<T: Real>(x: T, e: T) -> T {
    debug_assert!(x >= T::one());
    if x < T::cast(SERIES_THRESHOLD) {
        return pow_exp(x + T::one(), e) - T::cast(2.0) * pow_exp(x, e)
            + pow_exp(x - T::one(), e);
    }
    let one = T::one();
    let two = T::cast(2.0);
    let u2 = (one / x) * (one / x);
    // C(e, 2) u², then the recurrence C(e, j+2) = C(e, j)·(e−j)(e−j−1)/((j+1)(j+2)).
    let mut coeff = e * (e - one) / two;
    let mut u_pow = u2;
    let mut sum = coeff * u_pow;
    let mut j = two;
    for _ in 0..40 {
        coeff = coeff * (e - j) * (e - j - one) / ((j + one) * (j + two));
        u_pow = u_pow * u2;
        let term = coeff * u_pow;
        sum = sum + term;
        j = j + two;
        if term.abs() <= sum.abs() * T::epsilon() {
            break;
        }
    }
    two * x.powf(e) * sum
}

/// Increment autocovariance `R(p, p+n)` tabulated over a set of lags,
/// together with its two-term large-`n` expansion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutocovSeries<T> {
    pub p: u64,
    pub lags: Vec<u64>,
    pub values: Vec<T>,
    pub asymptote: Vec<T>,
}

impl<T: Real> AutocovSeries<T> {
    pub fn compute(params: &ProcessParams<T>, p: u64, lags: &[u64]) -> Result<Self> {
        let mut values = Vec::with_capacity(lags.len());
        let mut asymptote = Vec::with_capacity(lags.len());
        for &n in lags {
            values.push(params.autocov(p, n)?);
            asymptote.push(params.autocov_asymptote(p, n)?);
        }
        Ok(Self { p, lags: lags.to_vec(), values, asymptote })
    }
}
