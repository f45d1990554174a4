//! Characteristic-class ingredients of the four-dimensional index
//! computation, built from the splitting-principle variables `x1, x2`.
//!
//! The complexified tangent bundle splits into conjugate line-bundle pairs
//! with formal roots `±x1, ±x2`; everything here is a polynomial identity
//! in those roots, computed exactly in the truncated graded ring.

use crate::error::{Error, Result};
use crate::graded::{GradedClass, NUMERATOR_TRUNC};
use crate::scalar::{gint, int, real, GaussRat, Rat};

/// Element of the graded ring with Gaussian-rational coefficients.
pub type Class = GradedClass<GaussRat>;

/// Supported gauge groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeGroup {
    /// `SU(N)` with `N >= 2`.
    SuN(u32),
    U1,
}

/// How the first Pontryagin class of the complexified adjoint bundle is
/// handled in the index integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjointP1Mode {
    /// Omit it: it is a 4-form the final dimension formula never absorbs.
    #[default]
    Drop,
    /// Carry the `SU(2)` value `-8 c2(E)` into the class, for reporting.
    Su2FromC2,
}

/// Gauge-bundle data entering the dimension formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleData {
    pub group: GaugeGroup,
    pub dim_g: u32,
    pub rank_g: u32,
    pub p1_ad_mode: AdjointP1Mode,
}

impl BundleData {
    /// `SU(N)` bundle: `dim G = N^2 - 1`, `rank G = N - 1`.
    pub fn su(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("SU({n}) requires N >= 2")));
        }
        Ok(BundleData {
            group: GaugeGroup::SuN(n),
            dim_g: n * n - 1,
            rank_g: n - 1,
            p1_ad_mode: AdjointP1Mode::Drop,
        })
    }

    pub fn su2() -> Self {
        Self::su(2).expect("N = 2 is valid")
    }

    pub fn u1() -> Self {
        BundleData {
            group: GaugeGroup::U1,
            dim_g: 1,
            rank_g: 1,
            p1_ad_mode: AdjointP1Mode::Drop,
        }
    }

    pub fn dim_g_rat(&self) -> Rat {
        int(i64::from(self.dim_g))
    }

    /// Parse `su2`, `su3`, ..., or `u1`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "u1" || t == "u(1)" {
            return Ok(Self::u1());
        }
        let digits = t
            .strip_prefix("su")
            .map(|r| r.trim_matches(|c| c == '(' || c == ')'))
            .ok_or_else(|| Error::Domain(format!("unknown gauge group `{s}`")))?;
        let n: u32 = digits
            .parse()
            .map_err(|_| Error::Domain(format!("unknown gauge group `{s}`")))?;
        Self::su(n)
    }
}

impl std::fmt::Display for GaugeGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaugeGroup::SuN(n) => write!(f, "su{n}"),
            GaugeGroup::U1 => write!(f, "u1"),
        }
    }
}

fn x1() -> Class {
    Class::var_x1(NUMERATOR_TRUNC)
}

fn x2() -> Class {
    Class::var_x2(NUMERATOR_TRUNC)
}

/// Chern character of the p-th exterior power of the complexified
/// cotangent bundle, for `p` in `0..=2`.
pub fn ch_lambda(p: u32) -> Result<Class> {
    let exp = |l: &Class| Class::exp_linear(l);
    match p {
        0 => Ok(Class::one_trunc(NUMERATOR_TRUNC)),
        1 => {
            // e^{x1} + e^{-x1} + e^{x2} + e^{-x2}
            let mut acc = Class::zero_trunc(NUMERATOR_TRUNC);
            for l in [x1(), -&x1(), x2(), -&x2()] {
                acc = &acc + &exp(&l)?;
            }
            Ok(acc)
        }
        2 => {
            // 2 + sum over e^{±x1±x2}
            let mut acc = Class::constant_trunc(NUMERATOR_TRUNC, gint(2));
            for l in [
                &x1() + &x2(),
                &x1() - &x2(),
                &x2() - &x1(),
                -&(&x1() + &x2()),
            ] {
                acc = &acc + &exp(&l)?;
            }
            Ok(acc)
        }
        _ => Err(Error::Domain(format!(
            "exterior power {p} out of range 0..=2"
        ))),
    }
}

/// Alternating sum `ch(Lambda^0) - ch(Lambda^1) + ch(Lambda^2)`.
pub fn ch_alternating_sum() -> Result<Class> {
    Ok(&(&ch_lambda(0)? - &ch_lambda(1)?) + &ch_lambda(2)?)
}

/// Todd class of the complexified tangent bundle.
///
/// Each conjugate root pair contributes `-x^2 / (2 - e^x - e^{-x})`,
/// computed by series reciprocal; the product over both pairs gives
/// `(1 - x1^2/12 + x1^4/240)(1 - x2^2/12 + x2^4/240)` under truncation.
pub fn todd_tangent() -> Result<Class> {
    let pair = |var: u8| -> Result<Class> {
        // 2 - e^x - e^{-x} = -x^2 (1 + x^2/12 + x^4/360 + ...). Stripping
        // the -x^2 prefactor shifts degrees down by two, so the series is
        // built two degrees above the target truncation first.
        let high = NUMERATOR_TRUNC + 2;
        let x = if var == 1 {
            Class::var_x1(high)
        } else {
            Class::var_x2(high)
        };
        let two = Class::constant_trunc(high, gint(2));
        let series = &(&two - &Class::exp_linear(&x)?) - &Class::exp_linear(&-&x)?;
        let mut unit = Class::zero_trunc(NUMERATOR_TRUNC);
        for ((a, b, s), c) in series.terms() {
            debug_assert!(a + b >= 2);
            let key = if var == 1 {
                (a - 2, *b, *s)
            } else {
                (*a, b - 2, *s)
            };
            unit = &unit + &Class::monomial(NUMERATOR_TRUNC, key.0, key.1, key.2, -c.clone())?;
        }
        unit.series_reciprocal()
    };
    pair(1)?.ring_mul(&pair(2)?)
}

/// Euler class of the tangent bundle: `x1 * x2`.
pub fn euler_class() -> Class {
    &x1() * &x2()
}

/// First Pontryagin class of the base manifold: `x1^2 + x2^2`.
pub fn pontryagin_class() -> Class {
    &(&x1() * &x1()) + &(&x2() * &x2())
}

/// Chern character of the complexified adjoint bundle:
/// `dim G + (1/2) p1(ad)`.
///
/// `c2_value` is the integrated second Chern class of the fundamental
/// bundle. In `Su2FromC2` mode the 4-form part is carried as
/// `(1/2)(-8 c2) = -4 c2` times the `x1 x2` generator, for reporting; in
/// `Drop` mode only the rank term survives, matching the dimension
/// formula actually used downstream.
pub fn ch_adjoint(b: &BundleData, c2_value: &Rat) -> Result<Class> {
    let rank_term = Class::constant_trunc(NUMERATOR_TRUNC, gint(i64::from(b.dim_g)));
    match b.p1_ad_mode {
        AdjointP1Mode::Drop => Ok(rank_term),
        AdjointP1Mode::Su2FromC2 => {
            if b.group != GaugeGroup::SuN(2) {
                return Err(Error::Domain(
                    "the -8 c2 adjoint value is specific to SU(2)".into(),
                ));
            }
            let weight = real(int(-4) * c2_value.clone());
            Ok(&rank_term + &euler_class().scale(&weight))
        }
    }
}
