use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::real::Real;

/// Which of the two increment-bound coefficients is the lower one.
///
/// `C` covers `(H > 1/2, bc ≥ 0)` and `(H < 1/2, bc ≤ 0)`; `D` covers the two
/// opposite sign combinations; `Boundary` is `H = 1/2` exactly, where the
/// bounds degenerate to an equality. When `bc = 0` (and `H ≠ 1/2`) the point
/// lies in both sets and both coefficient formulas give `γ = ν = b²+c²`;
/// classification returns `C` by convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    C,
    D,
    Boundary,
}

/// Coefficients of the increment-variance sandwich
/// `a²(t−s) + γ(t−s)^{2H} ≤ E[(M_t−M_s)²] ≤ a²(t−s) + ν(t−s)^{2H}`.
///
/// Always `γ ≤ ν`, and `γ > 0` whenever `(b,c) ≠ (0,0)` and `H ≠ 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeCoefficients<T> {
    pub gamma: T,
    pub nu: T,
}

pub fn classify_regime<T: Real>(b: T, c: T, hurst: T) -> Result<Regime> {
    let half = T::cast(0.5);
    if !(hurst > T::zero() && hurst < T::one()) {
        return Err(domain(format!("hurst must lie in (0,1), got {hurst}")));
    }
    let bc = b * c;
    Ok(if hurst == half {
        Regime::Boundary
    } else if (hurst > half && bc >= T::zero()) || (hurst < half && bc <= T::zero()) {
        Regime::C
    } else {
        Regime::D
    })
}

/// `(γ, ν)` for `(b, c, H)` with `H ≠ 1/2`.
///
/// On regime `C`: `γ = b²+c²−2bc(2^{2H−1}−1)` and `ν = b²+c²`; on `D` the two
/// formulas swap roles.
pub fn regime_coefficients<T: Real>(b: T, c: T, hurst: T) -> Result<RegimeCoefficients<T>> {
    let regime = classify_regime(b, c, hurst)?;
    let sum_sq = b * b + c * c;
    let mixed = sum_sq
        - T::cast(2.0) * b * c * ((hurst + hurst - T::one()).exp2() - T::one());
    match regime {
        Regime::Boundary => Err(domain(
            "regime coefficients are undefined at hurst = 1/2 (bounds degenerate to equality)",
        )),
        Regime::C => Ok(RegimeCoefficients { gamma: mixed, nu: sum_sq }),
        Regime::D => Ok(RegimeCoefficients { gamma: sum_sq, nu: mixed }),
    }
}
