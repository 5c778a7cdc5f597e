//! Sample-time grids.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::real::Real;

/// Relative spacing tolerance under which a grid counts as uniform.
const UNIFORMITY_RTOL: f64 = 1e-12;

/// Ordered, strictly increasing, nonnegative sample times.
///
/// A grid is flagged uniform when consecutive spacings agree with a common
/// step `dt` to within `1e-12·dt`; uniform zero-anchored grids are what the
/// fast circulant sampler accepts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid<T> {
    times: Vec<T>,
    dt: Option<T>,
}

impl<T: Real> TimeGrid<T> {
    /// Grid from explicit times; uniformity is detected.
    pub fn new(times: Vec<T>) -> Result<Self> {
        if times.is_empty() {
            return Err(domain("time grid must contain at least one point"));
        }
        for (i, &t) in times.iter().enumerate() {
            if !t.is_finite() || t < T::zero() {
                return Err(domain(format!("grid time[{i}] = {t} is not a finite nonnegative value")));
            }
            if i > 0 && t <= times[i - 1] {
                return Err(domain(format!(
                    "grid times must be strictly increasing (time[{}] = {} >= time[{i}] = {t})",
                    i - 1,
                    times[i - 1]
                )));
            }
        }
        let dt = detect_uniform_step(&times);
        Ok(Self { times, dt })
    }

    /// Uniform grid `0, dt, 2dt, …, n_steps·dt` (`n_steps + 1` points).
    pub fn uniform(n_steps: usize, dt: T) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(domain(format!("step dt must be positive and finite, got {dt}")));
        }
        let times = (0..=n_steps).map(|k| T::cast_usize(k) * dt).collect();
        Ok(Self { times, dt: Some(dt) })
    }

    /// Uniform grid over `[0, t_max]` with `n_steps` steps.
    pub fn uniform_to(t_max: T, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(domain("uniform grid needs at least one step"));
        }
        if !(t_max > T::zero()) || !t_max.is_finite() {
            return Err(domain(format!("t_max must be positive and finite, got {t_max}")));
        }
        Self::uniform(n_steps, t_max / T::cast_usize(n_steps))
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Common step when the grid is uniform.
    pub fn dt(&self) -> Option<T> {
        self.dt
    }

    pub fn is_uniform(&self) -> bool {
        self.dt.is_some() || self.times.len() <= 1
    }

    /// Uniform and anchored at time zero — the precondition of the fast
    /// circulant sampler.
    pub fn is_uniform_from_zero(&self) -> bool {
        self.is_uniform() && self.times[0] == T::zero()
    }

    /// Number of steps (points minus one).
    pub fn n_steps(&self) -> usize {
        self.times.len().saturating_sub(1)
    }
}

fn detect_uniform_step<T: Real>(times: &[T]) -> Option<T> {
    if times.len() < 2 {
        return None;
    }
    let n = times.len() - 1;
    let dt = (times[n] - times[0]) / T::cast_usize(n);
    let tol = T::cast(UNIFORMITY_RTOL) * dt;
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > tol {
            return None;
        }
    }
    Some(dt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_uniform_grids() {
        let g = TimeGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(g.is_uniform());
        assert!(!g.is_uniform_from_zero());
        assert_eq!(g.dt(), Some(1.0));

        let g = TimeGrid::new(vec![0.0, 0.5, 1.0, 1.5]).unwrap();
        assert!(g.is_uniform_from_zero());

        let g = TimeGrid::new(vec![0.3, 0.9, 1.1]).unwrap();
        assert!(!g.is_uniform());
        assert_eq!(g.dt(), None);
    }

    #[test]
    fn uniform_constructor_is_zero_anchored() {
        let g = TimeGrid::<f64>::uniform_to(1.0, 256).unwrap();
        assert_eq!(g.len(), 257);
        assert_eq!(g.times()[0], 0.0);
        assert!(g.is_uniform_from_zero());
        assert!((g.times()[256] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_times() {
        assert!(TimeGrid::<f64>::new(vec![]).is_err());
        assert!(TimeGrid::new(vec![-1.0, 0.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.0]).is_err());
        assert!(TimeGrid::new(vec![1.0, 0.5]).is_err());
        assert!(TimeGrid::new(vec![0.0, f64::NAN]).is_err());
        assert!(TimeGrid::uniform(4, 0.0).is_err());
        assert!(TimeGrid::uniform_to(0.0, 4).is_err());
    }

    #[test]
    fn single_point_grid() {
        let g = TimeGrid::new(vec![0.0]).unwrap();
        assert!(g.is_uniform_from_zero());
        assert_eq!(g.n_steps(), 0);
    }
}
