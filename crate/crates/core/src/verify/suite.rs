//! Named checks with pass/fail semantics, as run by the CLI `verify`
//! command. Every check returns a [`CheckReport`]; a suite is just a list of
//! them.

use serde_json::json;

use crate::error::Result;
use crate::grid::TimeGrid;
use crate::kernel::ProcessParams;
use crate::real::{ulps, Real};
use crate::sampler::PathEnsemble;
use crate::verify::{
    self, analytic_variogram_exponent, expected_quadratic_variation, holder_estimate,
    mean_and_se, quadratic_variation, CheckReport, LrdClass,
};

/// Witness threshold for existence checks (non-self-similarity,
/// non-stationarity), in absolute covariance units.
pub const WITNESS_THRESHOLD: f64 = 1e-6;
/// Witness threshold for the Markov criterion, relative to the product
/// scale of the four covariances.
pub const MARKOV_WITNESS_RTOL: f64 = 1e-9;
/// Ulp budget for analytic identities.
pub const IDENTITY_ULPS: u32 = 8;
/// Tolerance on fitted decay exponents.
pub const SLOPE_TOL: f64 = 0.05;

pub fn cov_consistency<T: Real>(ens: &PathEnsemble<T>, tol_z: f64) -> Result<CheckReport> {
    verify::covariance_consistency(ens, tol_z)
}

/// Decay-exponent classification against the parameter predicate
/// `(H > 1/2) ∧ (b ≠ c)`, with the summability boundary (slope −1) as a
/// cross-check.
pub fn lrd<T: Real>(params: &ProcessParams<T>, p: u64, n_min: u64, n_max: u64) -> Result<CheckReport> {
    let verdict = verify::lrd_scan(params, p, n_min, n_max)?;
    if verdict.zero_signal {
        return Ok(CheckReport {
            name: "lrd".into(),
            passed: true,
            statistic: 0.0,
            threshold: 0.0,
            details: json!({
                "classification": verdict.classification,
                "zero_signal": true,
                "note": "autocovariance vanishes identically; no slope to fit",
            }),
        });
    }
    let fitted = verdict.fitted_slope.unwrap().as_f64();
    let expected = verdict.expected_slope.unwrap().as_f64();
    let slope_ok = (fitted - expected).abs() <= SLOPE_TOL;
    let boundary_ok = (fitted > -1.0) == (verdict.classification == LrdClass::LongRange);
    Ok(CheckReport {
        name: "lrd".into(),
        passed: slope_ok && boundary_ok,
        statistic: fitted,
        threshold: SLOPE_TOL,
        details: json!({
            "classification": verdict.classification,
            "expected_slope": expected,
            "fitted_slope": fitted,
            "slope_within_tolerance": slope_ok,
            "boundary_consistent": boundary_ok,
            "p": verdict.p,
            "n_range": [n_min, n_max],
        }),
    })
}

/// Variogram regularity estimate against its exact expectation on the same
/// lags. The Kolmogorov bound exponent `1/2 ∧ H` is reported alongside; it
/// coincides with the variogram exponent whenever the Brownian component is
/// present or `H < 1/2`, and is a strict underestimate for pure fractional
/// paths with `H > 1/2`.
pub fn holder<T: Real>(ens: &PathEnsemble<T>) -> Result<CheckReport> {
    let estimate = holder_estimate(ens)?;
    let expected = analytic_variogram_exponent(ens.params(), ens.grid())?;
    let kolmogorov = ens.params().hurst().as_f64().min(0.5);
    Ok(CheckReport {
        name: "holder".into(),
        passed: (estimate - expected).abs() <= SLOPE_TOL,
        statistic: estimate,
        threshold: SLOPE_TOL,
        details: json!({
            "estimate": estimate,
            "expected_exponent": expected,
            "kolmogorov_exponent": kolmogorov,
            "n_paths": ens.n_paths(),
            "n_times": ens.n_times(),
        }),
    })
}

/// Realized quadratic variation at the finest mesh against its exact
/// expectation, in units of the Monte-Carlo standard error of the ensemble
/// mean.
pub fn qv<T: Real>(ens: &PathEnsemble<T>) -> Result<CheckReport> {
    let curve = quadratic_variation(ens)?;
    let finest = &curve.levels[0];
    let expected = expected_quadratic_variation(ens, finest.stride)?;
    let (mean, se) = mean_and_se(&finest.per_path);
    let z = if se == 0.0 { 0.0 } else { (mean - expected) / se };
    let ratios: Vec<f64> = curve
        .levels
        .windows(2)
        .map(|w| w[0].mean / w[1].mean)
        .collect();
    let a = ens.params().a().as_f64();
    let t_max = ens.grid().times().last().map(|t| t.as_f64()).unwrap_or(0.0);
    Ok(CheckReport {
        name: "qv".into(),
        passed: z.abs() <= 3.0,
        statistic: z,
        threshold: 3.0,
        details: json!({
            "mean_realized": mean,
            "expected": expected,
            "brownian_limit": a * a * t_max,
            "mesh": finest.mesh,
            "fine_to_coarse_ratios": ratios,
        }),
    })
}

/// Plain self-similarity defect over a grid: a witness `> 1e-6` must exist
/// when `a ≠ 0` and `H ≠ 1/2`; otherwise the defect must be rounding noise.
pub fn self_similarity<T: Real>(
    params: &ProcessParams<T>,
    h_factors: &[T],
    grid: &TimeGrid<T>,
) -> Result<CheckReport> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &h in h_factors {
        worst = worst.max(verify::self_similarity_defect(params, h, grid)?);
        scale = scale.max(verify::self_similarity_scale(params, h, grid));
    }
    let self_similar = params.a() == T::zero() || params.hurst() == T::cast(0.5);
    let (passed, threshold) = if self_similar {
        let tol = ulps(IDENTITY_ULPS, scale);
        (worst <= tol, tol.as_f64())
    } else {
        (worst.as_f64() > WITNESS_THRESHOLD, WITNESS_THRESHOLD)
    };
    Ok(CheckReport {
        name: "self-similarity".into(),
        passed,
        statistic: worst.as_f64(),
        threshold,
        details: json!({
            "self_similar_case": self_similar,
            "direction": if self_similar { "defect <= threshold" } else { "defect > threshold" },
            "h_factors": h_factors.iter().map(|h| h.as_f64()).collect::<Vec<_>>(),
        }),
    })
}

/// Mixed self-similarity identity; always an ulp-level check.
pub fn mixed_self_similarity<T: Real>(
    params: &ProcessParams<T>,
    h_factors: &[T],
    grid: &TimeGrid<T>,
) -> Result<CheckReport> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &h in h_factors {
        worst = worst.max(verify::mixed_self_similarity_defect(params, h, grid)?);
        scale = scale.max(verify::self_similarity_scale(params, h, grid));
    }
    let tol = ulps(IDENTITY_ULPS, scale);
    Ok(CheckReport {
        name: "mixed-self-similarity".into(),
        passed: worst <= tol,
        statistic: worst.as_f64(),
        threshold: tol.as_f64(),
        details: json!({
            "h_factors": h_factors.iter().map(|h| h.as_f64()).collect::<Vec<_>>(),
        }),
    })
}

/// Markov-criterion scan over `s = √t, u = t²` for `t ∈ {2,4,8,16}`.
///
/// Markov members (`(b,c) = (0,0)` or `H = 1/2`) must show only rounding;
/// everything else must produce a witness above `1e-9` of the product scale.
pub fn markov<T: Real>(params: &ProcessParams<T>) -> Result<CheckReport> {
    let mut worst_rel = 0.0f64;
    let mut witnesses = Vec::new();
    for t in [2.0, 4.0, 8.0, 16.0] {
        let t = T::cast(t);
        let s = t.sqrt();
        let u = t * t;
        let defect = params.markov_defect(s, t, u)?;
        let scale = params.markov_defect_scale(s, t, u);
        let rel = (defect / scale).abs().as_f64();
        witnesses.push(json!({
            "t": t.as_f64(),
            "defect": defect.as_f64(),
            "relative": rel,
        }));
        worst_rel = worst_rel.max(rel);
    }
    let markov_case =
        (params.b() == T::zero() && params.c() == T::zero()) || params.hurst() == T::cast(0.5);
    let (passed, threshold) = if markov_case {
        let tol = IDENTITY_ULPS as f64 * f64::EPSILON;
        (worst_rel <= tol, tol)
    } else {
        (worst_rel > MARKOV_WITNESS_RTOL, MARKOV_WITNESS_RTOL)
    };
    Ok(CheckReport {
        name: "markov".into(),
        passed,
        statistic: worst_rel,
        threshold,
        details: json!({
            "markov_case": markov_case,
            "direction": if markov_case { "defect <= threshold" } else { "defect > threshold" },
            "scan": witnesses,
        }),
    })
}

/// Increment-stationarity scan over `(s, t) ∈ {1/2, 1, 2}²`.
///
/// The gap vanishes identically when `bc = 0`; otherwise a witness above
/// `1e-6` of the variance scale must appear (for `H ≠ 1/2`).
pub fn stationarity<T: Real>(params: &ProcessParams<T>) -> Result<CheckReport> {
    let pts = [0.5, 1.0, 2.0];
    let mut worst_rel = 0.0f64;
    let mut scan = Vec::new();
    for &s in &pts {
        for &t in &pts {
            let (s, t) = (T::cast(s), T::cast(t));
            let gap = verify::stationarity_gap(params, s, t)?;
            let scale = verify::stationarity_gap_scale(params, s, t);
            let rel = (gap / scale).abs().as_f64();
            scan.push(json!({"s": s.as_f64(), "t": t.as_f64(), "gap": gap.as_f64()}));
            worst_rel = worst_rel.max(rel);
        }
    }
    let stationary_case =
        params.b() * params.c() == T::zero() || params.hurst() == T::cast(0.5);
    let (passed, threshold) = if stationary_case {
        let tol = IDENTITY_ULPS as f64 * f64::EPSILON;
        (worst_rel <= tol, tol)
    } else {
        (worst_rel > WITNESS_THRESHOLD, WITNESS_THRESHOLD)
    };
    Ok(CheckReport {
        name: "stationarity".into(),
        passed,
        statistic: worst_rel,
        threshold,
        details: json!({
            "stationary_case": stationary_case,
            "direction": if stationary_case { "gap <= threshold" } else { "gap > threshold" },
            "scan": scan,
        }),
    })
}
