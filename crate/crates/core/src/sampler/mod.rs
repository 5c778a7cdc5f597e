//! Exact path simulation.
//!
//! Two exact-in-law samplers realize `M_t = a·B_t + b·B^H_t + c·B^H_{-t}`:
//!
//! * [`CholeskySampler`] factors the full covariance matrix and works on any
//!   grid — `O(N³)` setup, `O(N²)` per path;
//! * [`FastSampler`] needs a uniform zero-anchored grid and builds the
//!   fractional part from one stationary fGn stream over the symmetric index
//!   range `−N..N−1` (so the joint law of `(B^H_t, B^H_{-t})` is exact),
//!   plus an independent Brownian stream — `O(N log N)` per path.
//!
//! Determinism: every path draws from its own ChaCha12 substream keyed by
//! `(seed, path index, purpose)` and all summations run in fixed order, so
//! results are bit-reproducible and independent of how paths might be
//! distributed over threads. Gaussian variates come from the ziggurat of
//! `rand_distr::StandardNormal`.

mod fgn;
mod io;

pub use fgn::{fgn_circulant, FgnSampler, FgnWorkspace};
pub use io::EnsembleMeta;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::grid::TimeGrid;
use crate::kernel::ProcessParams;
use crate::linalg::{cholesky_lower, symmetric_eigenvalues, SquareMatrix};
use crate::real::Real;

/// Name of the generator behind every sampler.
pub const RNG_ALGORITHM: &str = "chacha12";
/// Name of the Gaussian transform (fixed so a seed pins the exact variates).
pub const GAUSSIAN_ALGORITHM: &str = "ziggurat";

/// Jitter added to the diagonal (relative to `trace/N`) when a Cholesky
/// attempt fails, escalated tenfold up to [`JITTER_ESCALATIONS`] times.
const JITTER_REL: f64 = 1e-12;
const JITTER_ESCALATIONS: u32 = 3;

/// Number of RNG substreams reserved per path.
const STREAMS_PER_PATH: u64 = 4;

#[derive(Clone, Copy, Debug)]
pub(crate) enum StreamPurpose {
    /// Gaussian vector of the Cholesky sampler.
    Gaussian = 0,
    /// fGn driving the fractional components.
    Fgn = 1,
    /// Brownian increments.
    Brownian = 2,
}

/// RNG for one `(seed, path, purpose)` triple.
pub(crate) fn path_rng(seed: u64, path: u64, purpose: StreamPurpose) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(path.wrapping_mul(STREAMS_PER_PATH).wrapping_add(purpose as u64));
    rng
}

/// Which sampler produced an ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMethod {
    Cholesky,
    Circulant,
}

impl std::fmt::Display for SampleMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SampleMethod::Cholesky => "cholesky",
            SampleMethod::Circulant => "circulant",
        })
    }
}

/// Simulated paths with everything needed to reproduce them.
///
/// Rows are paths; if time zero is on the grid, that column is identically
/// zero. Each row is a draw of the centered Gaussian vector with covariance
/// `C(t_i, t_j)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathEnsemble<T> {
    grid: TimeGrid<T>,
    params: ProcessParams<T>,
    seed: u64,
    method: SampleMethod,
    n_paths: usize,
    values: Vec<T>,
}

impl<T: Real> PathEnsemble<T> {
    pub fn from_parts(
        grid: TimeGrid<T>,
        params: ProcessParams<T>,
        seed: u64,
        method: SampleMethod,
        n_paths: usize,
        values: Vec<T>,
    ) -> Result<Self> {
        if values.len() != n_paths * grid.len() {
            return Err(Error::Format(format!(
                "value buffer has {} entries, expected {} paths x {} times",
                values.len(),
                n_paths,
                grid.len()
            )));
        }
        Ok(Self { grid, params, seed, method, n_paths, values })
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn params(&self) -> &ProcessParams<T> {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn method(&self) -> SampleMethod {
        self.method
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn n_times(&self) -> usize {
        self.grid.len()
    }

    pub fn path(&self, i: usize) -> &[T] {
        let n = self.n_times();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[T]> {
        (0..self.n_paths).map(move |i| self.path(i))
    }

    /// Flat row-major storage.
    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Covariance matrix `[C(t_i, t_j)]` of the process on a grid.
///
/// Entries are exactly the kernel covariance; the upper triangle is computed
/// and mirrored, so the matrix is symmetric by construction.
pub fn covariance_matrix<T: Real>(
    params: &ProcessParams<T>,
    grid: &TimeGrid<T>,
) -> Result<SquareMatrix<T>> {
    let times = grid.times();
    let n = times.len();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = params.covariance(times[i], times[j])?;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

/// Dense exact sampler: factor once, then each path costs one matrix-vector
/// product. Works on arbitrary grids.
pub struct CholeskySampler<T: Real> {
    params: ProcessParams<T>,
    grid: TimeGrid<T>,
    factor: SquareMatrix<T>,
}

impl<T: Real> CholeskySampler<T> {
    /// Build the covariance matrix and factor it.
    ///
    /// The covariance is positive semidefinite in exact arithmetic; if
    /// rounding makes the factorization fail, a diagonal jitter of
    /// `1e-12·trace/N` is added (skipping exactly-zero diagonal entries so a
    /// time-zero column stays exactly zero) and escalated tenfold up to three
    /// times before giving up with the smallest eigenvalue in the error.
    pub fn new(params: &ProcessParams<T>, grid: &TimeGrid<T>) -> Result<Self> {
        let cov = covariance_matrix(params, grid)?;
        let n = cov.n();
        match cholesky_lower(&cov) {
            Ok(factor) => {
                return Ok(Self { params: *params, grid: grid.clone(), factor });
            }
            Err(_) => {}
        }
        let mut jitter = T::cast(JITTER_REL) * cov.trace() / T::cast_usize(n.max(1));
        for _ in 0..JITTER_ESCALATIONS {
            let mut jittered = cov.clone();
            for i in 0..n {
                if jittered[(i, i)] != T::zero() {
                    jittered[(i, i)] = jittered[(i, i)] + jitter;
                }
            }
            if let Ok(factor) = cholesky_lower(&jittered) {
                log::warn!(
                    "covariance factorization needed diagonal jitter {:e}",
                    jitter.as_f64()
                );
                return Ok(Self { params: *params, grid: grid.clone(), factor });
            }
            jitter = jitter * T::cast(10.0);
        }
        let eig = symmetric_eigenvalues(&cov);
        Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.first().map(|v| v.as_f64()).unwrap_or(f64::NAN),
        })
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    /// `n_paths` i.i.d. draws of the Gaussian vector, deterministic in `seed`.
    pub fn sample(&self, n_paths: usize, seed: u64) -> Result<PathEnsemble<T>> {
        if n_paths == 0 {
            return Err(domain("n_paths must be at least 1"));
        }
        let n = self.grid.len();
        let mut values = vec![T::zero(); n_paths * n];
        let mut z = vec![T::zero(); n];
        for i in 0..n_paths {
            let mut rng = path_rng(seed, i as u64, StreamPurpose::Gaussian);
            for zk in z.iter_mut() {
                *zk = T::standard_normal(&mut rng);
            }
            let row = &mut values[i * n..(i + 1) * n];
            for j in 0..n {
                let lrow = self.factor.row(j);
                let mut acc = T::zero();
                for (k, &zk) in z[..=j].iter().enumerate() {
                    acc = acc + lrow[k] * zk;
                }
                row[j] = acc;
            }
        }
        PathEnsemble::from_parts(
            self.grid.clone(),
            self.params,
            seed,
            SampleMethod::Cholesky,
            n_paths,
            values,
        )
    }
}

/// FFT-based exact sampler for uniform grids anchored at zero.
///
/// The fractional component needs `B^H` on both `+t_k` and `−t_k`; one fGn
/// stream of `2N` increments spanning the symmetric window does this exactly
/// because fGn is stationary over the whole line. Cumulative sums anchor
/// `B^H(0) = 0`, and an independent stream supplies Brownian increments.
pub struct FastSampler<T: Real> {
    params: ProcessParams<T>,
    grid: TimeGrid<T>,
    fgn: Option<FgnSampler<T>>,
    sqrt_dt: T,
}

impl<T: Real> FastSampler<T> {
    pub fn new(params: &ProcessParams<T>, grid: &TimeGrid<T>) -> Result<Self> {
        if !grid.is_uniform_from_zero() {
            return Err(domain(
                "the circulant sampler needs a uniform grid starting at 0; use the Cholesky sampler for arbitrary grids",
            ));
        }
        let n_steps = grid.n_steps();
        let (fgn, sqrt_dt) = if n_steps == 0 {
            (None, T::zero())
        } else {
            let dt = grid.dt().expect("uniform grid has a step");
            (Some(FgnSampler::new(params.hurst(), 2 * n_steps, dt)?), dt.sqrt())
        };
        Ok(Self { params: *params, grid: grid.clone(), fgn, sqrt_dt })
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn sample(&self, n_paths: usize, seed: u64) -> Result<PathEnsemble<T>> {
        if n_paths == 0 {
            return Err(domain("n_paths must be at least 1"));
        }
        let n = self.grid.len();
        let steps = self.grid.n_steps();
        let mut values = vec![T::zero(); n_paths * n];
        if let Some(fgn) = &self.fgn {
            let mut ws = fgn.workspace();
            let mut g = vec![T::zero(); 2 * steps];
            let (a, b, c) = (self.params.a(), self.params.b(), self.params.c());
            for i in 0..n_paths {
                let mut rng_f = path_rng(seed, i as u64, StreamPurpose::Fgn);
                fgn.sample_into(&mut rng_f, &mut ws, &mut g);
                let mut rng_b = path_rng(seed, i as u64, StreamPurpose::Brownian);
                let row = &mut values[i * n..(i + 1) * n];
                // g[N + k] is the increment over [k·dt, (k+1)·dt] and
                // g[N − k] the one over [−k·dt, −(k−1)·dt].
                let mut bm = T::zero();
                let mut bh_pos = T::zero();
                let mut bh_neg = T::zero();
                for k in 1..=steps {
                    bm = bm + self.sqrt_dt * T::standard_normal(&mut rng_b);
                    bh_pos = bh_pos + g[steps + k - 1];
                    bh_neg = bh_neg - g[steps - k];
                    row[k] = a * bm + b * bh_pos + c * bh_neg;
                }
            }
        }
        PathEnsemble::from_parts(
            self.grid.clone(),
            self.params,
            seed,
            SampleMethod::Circulant,
            n_paths,
            values,
        )
    }

    /// Terminal values of the two independent components `a·B_T` and
    /// `b·B^H_T + c·B^H_{-T}`, path by path.
    #[cfg(test)]
    pub(crate) fn terminal_components(&self, n_paths: usize, seed: u64) -> (Vec<T>, Vec<T>) {
        let steps = self.grid.n_steps();
        let fgn = self.fgn.as_ref().expect("nontrivial grid");
        let mut ws = fgn.workspace();
        let mut g = vec![T::zero(); 2 * steps];
        let (a, b, c) = (self.params.a(), self.params.b(), self.params.c());
        let mut bms = Vec::with_capacity(n_paths);
        let mut mixes = Vec::with_capacity(n_paths);
        for i in 0..n_paths {
            let mut rng_f = path_rng(seed, i as u64, StreamPurpose::Fgn);
            fgn.sample_into(&mut rng_f, &mut ws, &mut g);
            let mut rng_b = path_rng(seed, i as u64, StreamPurpose::Brownian);
            let mut bm = T::zero();
            let mut bh_pos = T::zero();
            let mut bh_neg = T::zero();
            for k in 1..=steps {
                bm = bm + self.sqrt_dt * T::standard_normal(&mut rng_b);
                bh_pos = bh_pos + g[steps + k - 1];
                bh_neg = bh_neg - g[steps - k];
            }
            bms.push(a * bm);
            mixes.push(b * bh_pos + c * bh_neg);
        }
        (bms, mixes)
    }
}

/// One-shot convenience for [`CholeskySampler`].
pub fn cholesky_sample<T: Real>(
    params: &ProcessParams<T>,
    grid: &TimeGrid<T>,
    n_paths: usize,
    seed: u64,
) -> Result<PathEnsemble<T>> {
    CholeskySampler::new(params, grid)?.sample(n_paths, seed)
}

/// One-shot convenience for [`FastSampler`].
pub fn fast_sample<T: Real>(
    params: &ProcessParams<T>,
    grid: &TimeGrid<T>,
    n_paths: usize,
    seed: u64,
) -> Result<PathEnsemble<T>> {
    FastSampler::new(params, grid)?.sample(n_paths, seed)
}

#[cfg(test)]
mod tests;
