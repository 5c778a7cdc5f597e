use crate::error::{domain, Result};
use crate::kernel::ProcessParams;
use crate::real::Real;

/// Named members of the family, each fixing the weight triple `(a, b, c)`.
///
/// * `BrownianMotion` — `(1, 0, 0)`
/// * `FractionalBm` — `(0, 1, 0)`
/// * `SubFractionalBm` — `(0, 1/√2, 1/√2)`
/// * `GeneralizedFbm { b, c }` — `(0, b, c)`
/// * `MixedFbm { a, b }` — `(a, b, 0)`
/// * `SubMixedFbm { a, b }` — `(a, b/√2, b/√2)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpecialCase<T> {
    BrownianMotion,
    FractionalBm,
    SubFractionalBm,
    GeneralizedFbm { b: T, c: T },
    MixedFbm { a: T, b: T },
    SubMixedFbm { a: T, b: T },
}

impl<T: Real> SpecialCase<T> {
    /// Resolve a preset name plus whatever extra weights it needs.
    ///
    /// Names are `bm`, `fbm`, `sfbm`, `gfbm`, `mfbm`, `smfbm`; `gfbm` needs
    /// `b` and `c`, `mfbm` and `smfbm` need `a` and `b`.
    pub fn from_name(name: &str, a: Option<T>, b: Option<T>, c: Option<T>) -> Result<Self> {
        let need = |v: Option<T>, flag: &str| {
            v.ok_or_else(|| domain(format!("preset '{name}' requires parameter {flag}")))
        };
        match name {
            "bm" => Ok(Self::BrownianMotion),
            "fbm" => Ok(Self::FractionalBm),
            "sfbm" => Ok(Self::SubFractionalBm),
            "gfbm" => Ok(Self::GeneralizedFbm { b: need(b, "b")?, c: need(c, "c")? }),
            "mfbm" => Ok(Self::MixedFbm { a: need(a, "a")?, b: need(b, "b")? }),
            "smfbm" => Ok(Self::SubMixedFbm { a: need(a, "a")?, b: need(b, "b")? }),
            other => Err(domain(format!(
                "unknown special case '{other}' (expected bm, fbm, sfbm, gfbm, mfbm, smfbm)"
            ))),
        }
    }

    pub fn params(self, hurst: T) -> Result<ProcessParams<T>> {
        let zero = T::zero();
        let one = T::one();
        let inv_sqrt2 = T::FRAC_1_SQRT_2();
        match self {
            Self::BrownianMotion => ProcessParams::new(one, zero, zero, hurst),
            Self::FractionalBm => ProcessParams::new(zero, one, zero, hurst),
            Self::SubFractionalBm => ProcessParams::new(zero, inv_sqrt2, inv_sqrt2, hurst),
            Self::GeneralizedFbm { b, c } => ProcessParams::new(zero, b, c, hurst),
            Self::MixedFbm { a, b } => ProcessParams::new(a, b, zero, hurst),
            Self::SubMixedFbm { a, b } => {
                ProcessParams::new(a, b * inv_sqrt2, b * inv_sqrt2, hurst)
            }
        }
    }
}
