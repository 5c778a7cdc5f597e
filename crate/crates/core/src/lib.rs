//! Mixed generalized fractional Brownian motion: kernels, samplers, checks.
//!
//! The process `M_t = a·B_t + b·B^H_t + c·B^H_{-t}` interpolates between
//! Brownian motion, fractional and sub-fractional Brownian motion, and their
//! mixed variants. This crate provides
//!
//! * [`kernel`] — exact closed-form covariance, variance, increment moments,
//!   increment autocovariance with its large-lag expansion, regime bound
//!   coefficients, the Markov-criterion defect, and the mixed
//!   self-similarity parameter map;
//! * [`sampler`] — exact path simulation: dense Cholesky on arbitrary grids
//!   and FFT circulant embedding of fractional Gaussian noise on uniform
//!   grids, both reproducible from a single seed;
//! * [`verify`] — executable property checks: Monte-Carlo covariance
//!   consistency, long/short-range dependence classification, stationarity
//!   and self-similarity defects, path-regularity and quadratic-variation
//!   diagnostics.
//!
//! Numerical code is generic over the scalar type through the [`Real`]
//! trait; `f64` aliases for the main types live at the crate root.

pub mod error;
pub mod grid;
pub mod kernel;
pub mod linalg;
pub mod real;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use kernel::{
    classify_regime, regime_coefficients, AutocovSeries, ProcessParams, Regime,
    RegimeCoefficients, SpecialCase,
};
pub use real::Real;
pub use sampler::{
    cholesky_sample, covariance_matrix, fast_sample, fgn_circulant, CholeskySampler, FastSampler,
    FgnSampler, PathEnsemble, SampleMethod,
};
pub use verify::{CheckReport, LrdClass, LrdVerdict};

/// `f64` aliases for the commonly used generic types.
pub type ProcessParams64 = ProcessParams<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type PathEnsemble64 = PathEnsemble<f64>;
pub type AutocovSeries64 = AutocovSeries<f64>;
pub type RegimeCoefficients64 = RegimeCoefficients<f64>;

/// `f32` aliases; the kernel and samplers accept them wherever `f64` works.
pub type ProcessParams32 = ProcessParams<f32>;
pub type TimeGrid32 = TimeGrid<f32>;
pub type PathEnsemble32 = PathEnsemble<f32>;
