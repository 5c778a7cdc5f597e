//! Stationary fractional Gaussian noise by circulant embedding.

use std::sync::Arc;

use rand::Rng;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Result};
use crate::kernel::second_difference_pow;
use crate::linalg::{cholesky_lower, SquareMatrix};
use crate::real::Real;
use crate::sampler::{path_rng, StreamPurpose};

/// Relative eigenvalue floor: anything below `−1e-8·λ_max` is treated as a
/// genuinely indefinite embedding rather than rounding noise.
const EIGENVALUE_RTOL: f64 = 1e-8;

/// Exact sampler for fractional Gaussian noise on a uniform step `dt`:
/// the stationary sequence with autocovariance
///
/// ```text
/// γ(k) = dt^{2H}/2 · (|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H})
/// ```
///
/// The Toeplitz covariance of `n` samples is embedded in a circulant of
/// power-of-two size `M ≥ 2(n−1)` whose eigenvalues come from one FFT of the
/// first row; each sample is then one complex FFT. For fGn this embedding is
/// nonnegative definite, so the guard against negative eigenvalues only
/// catches rounding; if it ever trips, sampling falls back to a dense
/// Cholesky of the Toeplitz matrix with a logged warning.
pub struct FgnSampler<T: Real> {
    hurst: T,
    n_steps: usize,
    dt: T,
    scale: T,
    backend: Backend<T>,
}

enum Backend<T: Real> {
    /// One sample is just a scaled normal.
    Single,
    Circulant {
        m: usize,
        /// `sqrt(λ_k / M)` for each circulant eigenvalue.
        weights: Vec<T>,
        fft: Arc<dyn Fft<T>>,
    },
    ToeplitzCholesky(SquareMatrix<T>),
}

/// Reusable per-thread scratch for [`FgnSampler::sample_into`].
pub struct FgnWorkspace<T: Real> {
    buf: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
    normals: Vec<T>,
}

impl<T: Real> FgnSampler<T> {
    pub fn new(hurst: T, n_steps: usize, dt: T) -> Result<Self> {
        if !(hurst > T::zero() && hurst < T::one()) {
            return Err(domain(format!("hurst must lie in (0,1), got {hurst}")));
        }
        if n_steps == 0 {
            return Err(domain("fGn sampler needs at least one step"));
        }
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(domain(format!("step dt must be positive and finite, got {dt}")));
        }
        let scale = dt.powf(hurst);
        if n_steps == 1 {
            return Ok(Self { hurst, n_steps, dt, scale, backend: Backend::Single });
        }

        let m = (2 * (n_steps - 1)).next_power_of_two().max(2);
        let mut row: Vec<Complex<T>> = (0..m)
            .map(|j| Complex::new(unit_autocovariance(hurst, j.min(m - j) as u64), T::zero()))
            .collect();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        fft.process(&mut row);

        let mut lambda_min = T::infinity();
        let mut lambda_max = T::neg_infinity();
        for v in &row {
            lambda_min = lambda_min.min(v.re);
            lambda_max = lambda_max.max(v.re);
        }
        if lambda_min < -T::cast(EIGENVALUE_RTOL) * lambda_max {
            log::warn!(
                "circulant embedding for fGn (H={hurst}, n={n_steps}) has eigenvalue {:e} < -{EIGENVALUE_RTOL:e}*{:e}; falling back to Toeplitz Cholesky",
                lambda_min.as_f64(),
                lambda_max.as_f64()
            );
            let toeplitz = SquareMatrix::from_fn(n_steps, |i, j| {
                unit_autocovariance(hurst, i.abs_diff(j) as u64)
            });
            let factor = cholesky_lower(&toeplitz).map_err(|_| {
                crate::error::Error::NotPositiveDefinite {
                    min_eigenvalue: lambda_min.as_f64(),
                }
            })?;
            return Ok(Self { hurst, n_steps, dt, scale, backend: Backend::ToeplitzCholesky(factor) });
        }

        let m_t = T::cast_usize(m);
        let weights = row
            .iter()
            .map(|v| (v.re.max(T::zero()) / m_t).sqrt())
            .collect();
        Ok(Self { hurst, n_steps, dt, scale, backend: Backend::Circulant { m, weights, fft } })
    }

    pub fn hurst(&self) -> T {
        self.hurst
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// Theoretical autocovariance `γ(lag)` of the generated noise.
    pub fn autocovariance(hurst: T, dt: T, lag: u64) -> T {
        dt.powf(hurst + hurst) * unit_autocovariance(hurst, lag)
    }

    pub fn workspace(&self) -> FgnWorkspace<T> {
        match &self.backend {
            Backend::Single => FgnWorkspace { buf: Vec::new(), scratch: Vec::new(), normals: Vec::new() },
            Backend::Circulant { m, fft, .. } => FgnWorkspace {
                buf: vec![Complex::new(T::zero(), T::zero()); *m],
                scratch: vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()],
                normals: Vec::new(),
            },
            Backend::ToeplitzCholesky(_) => FgnWorkspace {
                buf: Vec::new(),
                scratch: Vec::new(),
                normals: vec![T::zero(); self.n_steps],
            },
        }
    }

    /// One fGn path into `out` (length `n_steps`), consuming variates from
    /// `rng` in a fixed order.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, ws: &mut FgnWorkspace<T>, out: &mut [T]) {
        assert_eq!(out.len(), self.n_steps, "output slice length mismatch");
        match &self.backend {
            Backend::Single => {
                out[0] = self.scale * T::standard_normal(rng);
            }
            Backend::Circulant { weights, fft, .. } => {
                for (z, &w) in ws.buf.iter_mut().zip(weights.iter()) {
                    let re = T::standard_normal(rng);
                    let im = T::standard_normal(rng);
                    *z = Complex::new(re * w, im * w);
                }
                fft.process_with_scratch(&mut ws.buf, &mut ws.scratch);
                for (o, z) in out.iter_mut().zip(ws.buf.iter()) {
                    *o = z.re * self.scale;
                }
            }
            Backend::ToeplitzCholesky(l) => {
                for z in ws.normals.iter_mut() {
                    *z = T::standard_normal(rng);
                }
                for i in 0..self.n_steps {
                    let mut acc = T::zero();
                    let row = l.row(i);
                    for (k, &z) in ws.normals[..=i].iter().enumerate() {
                        acc = acc + row[k] * z;
                    }
                    out[i] = acc * self.scale;
                }
            }
        }
    }
}

/// Autocovariance of unit-step fGn at integer lag.
fn unit_autocovariance<T: Real>(hurst: T, lag: u64) -> T {
    if lag == 0 {
        T::one()
    } else {
        T::cast(0.5) * second_difference_pow(T::cast(lag as f64), hurst + hurst)
    }
}

/// Stationary fGn increments, one row per path, each path from its own RNG
/// substream keyed by `(seed, path index)`.
pub fn fgn_circulant<T: Real>(
    hurst: T,
    n_steps: usize,
    dt: T,
    n_paths: usize,
    seed: u64,
) -> Result<Vec<Vec<T>>> {
    if n_paths == 0 {
        return Err(domain("n_paths must be at least 1"));
    }
    let sampler = FgnSampler::new(hurst, n_steps, dt)?;
    let mut ws = sampler.workspace();
    let mut rows = Vec::with_capacity(n_paths);
    for i in 0..n_paths {
        let mut rng = path_rng(seed, i as u64, StreamPurpose::Fgn);
        let mut row = vec![T::zero(); n_steps];
        sampler.sample_into(&mut rng, &mut ws, &mut row);
        rows.push(row);
    }
    Ok(rows)
}
