//! Long-range dependence classification from the exact increment
//! autocovariance.
//!
//! Increments are long-range dependent exactly when `H > 1/2` and `b ≠ c`;
//! then `R(p,p+n) ≈ H(2H−1)(b−c)²·n^{2H−2}` and the partial sums diverge.
//! With `b = c` the leading term cancels and the decay steepens to
//! `n^{2H−3}`, which is always summable. Divergence itself is not
//! observable, so the scan fits the decay exponent of `log|R|` against
//! `log n` over dyadic lags and cross-checks the summability boundary
//! (slope `> −1` ⇔ divergent) against the parameter predicate.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kernel::ProcessParams;
use crate::real::Real;
use crate::verify::stats::ols_fit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LrdClass {
    LongRange,
    ShortRange,
}

/// Outcome of [`lrd_scan`].
///
/// `fitted_slope` and `expected_slope` are absent when the autocovariance
/// vanishes identically (`H = 1/2`, or `b = c = 0`), which is reported via
/// `zero_signal` instead of being classified by slope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LrdVerdict<T> {
    pub classification: LrdClass,
    pub fitted_slope: Option<T>,
    pub expected_slope: Option<T>,
    pub p: u64,
    pub zero_signal: bool,
}

/// Classify dependence and fit the decay exponent over dyadic lags in
/// `[n_min, n_max]`.
pub fn lrd_scan<T: Real>(
    params: &ProcessParams<T>,
    p: u64,
    n_min: u64,
    n_max: u64,
) -> Result<LrdVerdict<T>> {
    if n_min < 1 || n_min >= n_max {
        return Err(domain(format!(
            "lag range must satisfy 1 <= n_min < n_max, got [{n_min}, {n_max}]"
        )));
    }
    if n_max < 2 * n_min {
        return Err(domain("lag range too narrow: need n_max >= 2*n_min for a slope fit"));
    }

    let half = T::cast(0.5);
    let b_ne_c = params.b() != params.c();
    let long_range = params.hurst() > half && b_ne_c;
    let classification = if long_range { LrdClass::LongRange } else { LrdClass::ShortRange };

    // Dyadic lags n_min, 2·n_min, … ≤ n_max.
    let mut lags = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        lags.push(n);
        n = n.saturating_mul(2);
    }

    let mut values = Vec::with_capacity(lags.len());
    for &lag in &lags {
        values.push(params.autocov(p, lag)?);
    }
    if values.iter().all(|v| *v == T::zero()) {
        return Ok(LrdVerdict {
            classification: LrdClass::ShortRange,
            fitted_slope: None,
            expected_slope: None,
            p,
            zero_signal: true,
        });
    }

    let xs: Vec<f64> = lags.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.as_f64().abs().ln()).collect();
    let (slope, _) = ols_fit(&xs, &ys);

    let two_h = params.two_h();
    let expected = if b_ne_c {
        two_h - T::cast(2.0)
    } else {
        two_h - T::cast(3.0)
    };

    Ok(LrdVerdict {
        classification,
        fitted_slope: Some(T::cast(slope)),
        expected_slope: Some(expected),
        p,
        zero_signal: false,
    })
}

/// Running partial sums `Σ_{n=1..N} R(p, p+n)` for each requested `N`.
pub fn partial_sum_curve<T: Real>(
    params: &ProcessParams<T>,
    p: u64,
    n_list: &[u64],
) -> Result<Vec<(u64, T)>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("N_list must be strictly increasing"));
    }
    let mut out = Vec::with_capacity(n_list.len());
    let mut sum = T::zero();
    let mut n = 1u64;
    for &target in n_list {
        if target < 1 {
            return Err(domain("partial sum bounds must be >= 1"));
        }
        while n <= target {
            sum = sum + params.autocov(p, n)?;
            n += 1;
        }
        out.push((target, sum));
    }
    Ok(out)
}
