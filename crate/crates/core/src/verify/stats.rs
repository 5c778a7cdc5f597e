//! Shared statistical helpers for the verification checks.

use crate::real::Real;
use crate::sampler::PathEnsemble;

/// Survival function of the standard normal, `P(Z > z)`.
///
/// Uses the Abramowitz–Stegun 7.1.26 rational approximation of `erf`
/// (absolute error ≤ 1.5e-7), which is plenty for exceedance thresholds.
pub fn normal_sf(z: f64) -> f64 {
    if z < 0.0 {
        return 1.0 - normal_sf(-z);
    }
    let x = z / std::f64::consts::SQRT_2;
    let t = 1.0 / (1.0 + 0.327_591_1 * x);
    let poly = t
        * (0.254_829_592
            + t * (-0.284_496_736 + t * (1.421_413_741 + t * (-1.453_152_027 + t * 1.061_405_429))));
    0.5 * poly * (-x * x).exp()
}

/// How many `|z| > tol_z` entries among `m` comparisons are compatible with
/// pure sampling noise: binomial mean plus four standard deviations, plus one
/// for discreteness.
pub fn allowed_exceedances(m: usize, tol_z: f64) -> f64 {
    let p = 2.0 * normal_sf(tol_z);
    let mean = m as f64 * p;
    mean + 4.0 * (mean * (1.0 - p)).sqrt() + 1.0
}

/// Least-squares slope and intercept of `y` on `x`.
pub fn ols_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Sample covariance matrix of an ensemble, using the known zero mean
/// (`ĉ_ij = Σ_p x_i x_j / n`), upper triangle inclusive, row-major full
/// matrix in `f64`.
pub fn sample_covariance<T: Real>(ens: &PathEnsemble<T>) -> Vec<f64> {
    let n_times = ens.n_times();
    let n_paths = ens.n_paths();
    let mut acc = vec![0.0f64; n_times * n_times];
    for p in 0..n_paths {
        let row = ens.path(p);
        for i in 0..n_times {
            let xi = row[i].as_f64();
            for j in i..n_times {
                acc[i * n_times + j] += xi * row[j].as_f64();
            }
        }
    }
    let inv = 1.0 / n_paths as f64;
    for i in 0..n_times {
        for j in i..n_times {
            let v = acc[i * n_times + j] * inv;
            acc[i * n_times + j] = v;
            acc[j * n_times + i] = v;
        }
    }
    acc
}

/// Standard error of the zero-mean sample covariance `ĉ_ij` under Gaussian
/// theory: `Var(ĉ_ij) = (c_ii c_jj + c_ij²)/n`.
pub fn covariance_se(c_ii: f64, c_jj: f64, c_ij: f64, n_paths: usize) -> f64 {
    ((c_ii * c_jj + c_ij * c_ij) / n_paths as f64).sqrt()
}

/// Mean and standard error of the mean of a sample.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}
