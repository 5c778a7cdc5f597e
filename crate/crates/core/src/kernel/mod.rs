//! Closed-form kernel of the mixed generalized fractional Brownian motion
//!
//! The process is `M_t = a·B_t + b·B^H_t + c·B^H_{-t}` for `t ≥ 0`, where `B`
//! is a Brownian motion and `B^H` an independent two-sided fractional
//! Brownian motion with Hurst parameter `H ∈ (0,1)`. Its covariance is
//!
//! ```text
//! C(t,s) = a²(t∧s) + (b+c)²/2·(t^{2H}+s^{2H}) − bc·(t+s)^{2H} − (b²+c²)/2·|t−s|^{2H}
//! ```
//!
//! Everything in this module is a pure function of its arguments: variance,
//! increment moments, increment autocovariance and its large-lag expansion,
//! the Markov-criterion defect, regime bound coefficients, and the parameter
//! map realizing mixed self-similarity.

mod autocov;
mod regime;
mod special;

pub use autocov::{second_difference_pow, AutocovSeries};
pub use regime::{classify_regime, regime_coefficients, Regime, RegimeCoefficients};
pub use special::SpecialCase;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::real::Real;

/// Parameter quadruple `(a, b, c, H)` of a mixed generalized fractional
/// Brownian motion.
///
/// `a` weights the Brownian part, `b` and `c` weight the fractional part at
/// `+t` and `−t`, and `H` is the Hurst parameter. Construction rejects
/// `H ∉ (0,1)` and the degenerate all-zero weight triple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams<T> {
    a: T,
    b: T,
    c: T,
    hurst: T,
}

impl<T: Real> ProcessParams<T> {
    pub fn new(a: T, b: T, c: T, hurst: T) -> Result<Self> {
        if !(hurst > T::zero() && hurst < T::one()) {
            return Err(domain(format!("hurst must lie in (0,1), got {hurst}")));
        }
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(domain("weights a, b, c must be finite"));
        }
        if a == T::zero() && b == T::zero() && c == T::zero() {
            return Err(domain("weights (a,b,c) must not all be zero"));
        }
        Ok(Self { a, b, c, hurst })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn hurst(&self) -> T {
        self.hurst
    }

    /// The exponent `2H` used throughout the kernel formulas.
    pub fn two_h(&self) -> T {
        self.hurst + self.hurst
    }

    /// Covariance `C(t,s)` of the process at nonnegative times.
    ///
    /// Symmetric in `(t,s)` bit-for-bit, and `C(0,s) = 0` up to rounding of
    /// the weight combinations.
    pub fn covariance(&self, t: T, s: T) -> Result<T> {
        check_time(t, "t")?;
        check_time(s, "s")?;
        Ok(self.covariance_unchecked(t, s))
    }

    pub(crate) fn covariance_unchecked(&self, t: T, s: T) -> T {
        let two_h = self.two_h();
        let half = T::cast(0.5);
        let (a, b, c) = (self.a, self.b, self.c);
        a * a * t.min(s) + (b + c) * (b + c) * half * (pow_exp(t, two_h) + pow_exp(s, two_h))
            - b * c * pow_exp(t + s, two_h)
            - (b * b + c * c) * half * pow_exp((t - s).abs(), two_h)
    }

    /// Sum of the absolute magnitudes of the four covariance terms.
    ///
    /// This is the natural scale against which ulp-level identities involving
    /// `C(t,s)` are measured: the covariance itself can be a small difference
    /// of large terms.
    pub fn covariance_scale(&self, t: T, s: T) -> T {
        let two_h = self.two_h();
        let half = T::cast(0.5);
        let (a, b, c) = (self.a, self.b, self.c);
        (a * a * t.min(s)).abs()
            + ((b + c) * (b + c) * half * (pow_exp(t, two_h) + pow_exp(s, two_h))).abs()
            + (b * c * pow_exp(t + s, two_h)).abs()
            + ((b * b + c * c) * half * pow_exp((t - s).abs(), two_h)).abs()
    }

    /// Variance `E[M_t²] = a²t + (b²+c²−(2^{2H}−2)bc)·t^{2H}`.
    pub fn variance(&self, t: T) -> Result<T> {
        check_time(t, "t")?;
        let (a, b, c) = (self.a, self.b, self.c);
        let two_h = self.two_h();
        let two_pow = two_h.exp2();
        Ok(a * a * t + (b * b + c * c - (two_pow - T::cast(2.0)) * b * c) * pow_exp(t, two_h))
    }

    /// Increment second moment
    /// `E[(M_t−M_s)²] = a²(t−s) − 2^{2H}bc(t^{2H}+s^{2H}) + (b²+c²)(t−s)^{2H} + 2bc(t+s)^{2H}`
    /// for `0 ≤ s < t`.
    pub fn increment_variance(&self, s: T, t: T) -> Result<T> {
        check_increment_pair(s, t)?;
        let (a, b, c) = (self.a, self.b, self.c);
        let two_h = self.two_h();
        let two_pow = two_h.exp2();
        Ok(a * a * (t - s) - two_pow * b * c * (pow_exp(t, two_h) + pow_exp(s, two_h))
            + (b * b + c * c) * pow_exp(t - s, two_h)
            + T::cast(2.0) * b * c * pow_exp(t + s, two_h))
    }

    /// Lower and upper bounds on the increment second moment:
    /// `a²(t−s) + γ(t−s)^{2H} ≤ E[(M_t−M_s)²] ≤ a²(t−s) + ν(t−s)^{2H}`.
    ///
    /// Undefined at `H = 1/2`, where both coefficients degenerate.
    pub fn increment_bounds(&self, s: T, t: T) -> Result<(T, T)> {
        check_increment_pair(s, t)?;
        let coeff = regime_coefficients(self.b, self.c, self.hurst)?;
        let diff = t - s;
        let base = self.a * self.a * diff;
        let diff_pow = pow_exp(diff, self.two_h());
        Ok((base + coeff.gamma * diff_pow, base + coeff.nu * diff_pow))
    }

    /// Regime classification of `(b, c, H)`.
    pub fn regime(&self) -> Result<Regime> {
        classify_regime(self.b, self.c, self.hurst)
    }

    /// Bound coefficients `(γ, ν)` for the current `(b, c, H)`.
    pub fn regime_coefficients(&self) -> Result<RegimeCoefficients<T>> {
        regime_coefficients(self.b, self.c, self.hurst)
    }

    /// Increment autocovariance
    /// `R(p, p+n) = E[(M_{p+1}−M_p)(M_{p+n+1}−M_{p+n})]` in closed form:
    ///
    /// ```text
    /// (b²+c²)/2·Δ²(n) − bc·Δ²(2p+n+1),   Δ²(x) = (x+1)^{2H} − 2x^{2H} + (x−1)^{2H}
    /// ```
    ///
    /// The second differences are evaluated by a series for large arguments,
    /// so values stay accurate in relative terms out to `n` of 10⁶ and
    /// beyond even when the two Δ² terms nearly cancel.
    pub fn autocov(&self, p: u64, n: u64) -> Result<T> {
        check_lag_pair(p, n)?;
        let (b, c) = (self.b, self.c);
        let two_h = self.two_h();
        let half = T::cast(0.5);
        let first = (b * b + c * c) * half * second_difference_pow(T::cast(n as f64), two_h);
        let second = b * c * second_difference_pow(T::cast((2 * p + n + 1) as f64), two_h);
        Ok(first - second)
    }

    /// Two-term large-`n` expansion of [`Self::autocov`]:
    ///
    /// ```text
    /// H(2H−1)(b−c)²·n^{2H−2} − 4H(2H−1)(H−1)·bc·(2p+1)·n^{2H−3}
    /// ```
    pub fn autocov_asymptote(&self, p: u64, n: u64) -> Result<T> {
        check_lag_pair(p, n)?;
        let (b, c) = (self.b, self.c);
        let h = self.hurst;
        let one = T::one();
        let two = T::cast(2.0);
        let lead = h * (two * h - one);
        let nf = T::cast(n as f64);
        let first = lead * (b - c) * (b - c) * nf.powf(two * h - two);
        let second = T::cast(4.0) * lead * (h - one) * b * c
            * T::cast((2 * p + 1) as f64)
            * nf.powf(two * h - T::cast(3.0));
        Ok(first - second)
    }

    /// Markov-criterion defect `C(s,u)·C(t,t) − C(s,t)·C(t,u)` for
    /// `0 < s < t < u`. Identically zero for every triple exactly when the
    /// (Gaussian) process is Markov.
    pub fn markov_defect(&self, s: T, t: T, u: T) -> Result<T> {
        if !(T::zero() < s && s < t && t < u) {
            return Err(domain(format!(
                "markov defect requires 0 < s < t < u, got s={s}, t={t}, u={u}"
            )));
        }
        Ok(self.covariance_unchecked(s, u) * self.covariance_unchecked(t, t)
            - self.covariance_unchecked(s, t) * self.covariance_unchecked(t, u))
    }

    /// Scale for ulp-level comparisons of [`Self::markov_defect`]: the larger
    /// magnitude of the two covariance products.
    pub fn markov_defect_scale(&self, s: T, t: T, u: T) -> T {
        let lhs = self.covariance_scale(s, u) * self.covariance_scale(t, t);
        let rhs = self.covariance_scale(s, t) * self.covariance_scale(t, u);
        lhs.max(rhs)
    }

    /// Parameters of the time-rescaled process: `{M_{ht}}` has the law of
    /// the process with parameters `(a·h^{1/2}, b·h^H, c·h^H, H)`.
    pub fn rescaled(&self, h: T) -> Result<Self> {
        if !(h > T::zero()) || !h.is_finite() {
            return Err(domain(format!("scaling factor h must be positive, got {h}")));
        }
        let hh = h.powf(self.hurst);
        Ok(Self {
            a: self.a * h.sqrt(),
            b: self.b * hh,
            c: self.c * hh,
            hurst: self.hurst,
        })
    }

    /// Kolmogorov-criterion constant `a² + ν` bounding increments on the unit
    /// interval: `E[(M_t−M_s)²] ≤ (a²+ν)(t−s)^{2(1/2 ∧ H)}` for
    /// `0 ≤ s < t ≤ 1`. Undefined at `H = 1/2` along with `ν`.
    pub fn holder_constant(&self) -> Result<T> {
        let coeff = regime_coefficients(self.b, self.c, self.hurst)?;
        Ok(self.a * self.a + coeff.nu)
    }
}

/// `x^e` for `x ≥ 0` with `0^e = 0` exactly.
#[inline]
pub(crate) fn pow_exp<T: Real>(x: T, e: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x.powf(e)
    }
}

fn check_time<T: Real>(t: T, name: &str) -> Result<()> {
    if t < T::zero() || !t.is_finite() {
        Err(domain(format!("time {name} must be finite and nonnegative, got {t}")))
    } else {
        Ok(())
    }
}

fn check_increment_pair<T: Real>(s: T, t: T) -> Result<()> {
    check_time(s, "s")?;
    check_time(t, "t")?;
    if s >= t {
        Err(domain(format!("increment requires 0 <= s < t, got s={s}, t={t}")))
    } else {
        Ok(())
    }
}

fn check_lag_pair(p: u64, n: u64) -> Result<()> {
    if p < 1 {
        Err(domain("base index p must be >= 1"))
    } else if n < 1 {
        Err(domain("lag n must be >= 1"))
    } else {
        Ok(())
    }
}
