//! Assembly and regularization of the index integrand, and the resulting
//! dimension formulas.
//!
//! The integrand is a quotient of graded classes with declared denominator
//! `x1*x2`. Its pole terms are regularized by shifting `x_i -> x_i + xi`,
//! weighting with `lambda * xi^4` and sending `xi -> 0`; the weight
//! `lambda` stays symbolic, so the resulting 4-form coefficients are
//! degree-one polynomials in it.

use std::fmt;

use crate::classes::{self, BundleData, Class};
use crate::error::{Error, Result};
use crate::graded::{shifted_power, DEFAULT_TRUNC, NUMERATOR_TRUNC};
use crate::moduli::Manifold;
use crate::report::DivergenceReport;
use crate::scalar::{expect_real, gint, grat, int, rat_str, Rat, Scalar};

/// Degree-one polynomial `constant + slope * lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoly<C> {
    pub constant: C,
    pub slope: C,
}

impl<C: Scalar> AffinePoly<C> {
    pub fn new(constant: C, slope: C) -> Self {
        AffinePoly { constant, slope }
    }

    pub fn constant_only(c: C) -> Self {
        AffinePoly {
            constant: c,
            slope: C::zero(),
        }
    }

    pub fn eval(&self, lambda: &C) -> C {
        self.constant.clone() + self.slope.clone() * lambda.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        AffinePoly {
            constant: self.constant.clone() + other.constant.clone(),
            slope: self.slope.clone() + other.slope.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        AffinePoly {
            constant: self.constant.clone() * c.clone(),
            slope: self.slope.clone() * c.clone(),
        }
    }
}

impl<C: Scalar> fmt::Display for AffinePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*lambda", self.constant.coeff_str(), self.slope.coeff_str())
    }
}

/// Which truncation of the integrand numerator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegrandMode {
    /// The published truncation: quotient factor
    /// `(3 + x1^2 + x2^2 + x1^2 x2^2) / (x1 x2)` with the Todd factor
    /// `1 - (x1^2 + x2^2)/12`, pole terms bucketed before the Todd
    /// multiplication. Normative for all dimension results.
    #[default]
    Paper,
    /// Every truncation-surviving term of the exact product
    /// `ch-alternating-sum * todd`, with every pole term bucketed as
    /// singular. Feeds the divergence report only.
    Full,
}

impl IntegrandMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" => Ok(IntegrandMode::Paper),
            "full" => Ok(IntegrandMode::Full),
            other => Err(Error::Domain(format!("unknown integrand mode `{other}`"))),
        }
    }
}

/// The index integrand as a quotient: `base * todd / (x1 * x2)`.
///
/// `base` carries the alternating Chern-character sum (exact or published
/// truncation), `todd` the Todd factor; keeping them separate preserves
/// the published bucketing, where pole terms are identified before the
/// Todd multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integrand {
    pub mode: IntegrandMode,
    pub base: Class,
    pub todd: Class,
}

/// Coefficients of the regularized 4-form part of the integrand, in the
/// basis `{x1*x2, x1^2 + x2^2}`, each affine in the weight `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourFormCoeffs {
    pub c_euler: AffinePoly<Rat>,
    pub c_pontr: AffinePoly<Rat>,
}

impl FourFormCoeffs {
    /// Evaluate both coefficients at a concrete `lambda`.
    pub fn at(&self, lambda: &Rat) -> (Rat, Rat) {
        (self.c_euler.eval(lambda), self.c_pontr.eval(lambda))
    }
}

/// Build the integrand in the requested mode.
pub fn assemble_integrand(mode: IntegrandMode) -> Result<Integrand> {
    match mode {
        IntegrandMode::Paper => {
            let base = Class::from_terms(
                NUMERATOR_TRUNC,
                &[
                    (0, 0, 0, gint(3)),
                    (2, 0, 0, gint(1)),
                    (0, 2, 0, gint(1)),
                    (2, 2, 0, gint(1)),
                ],
            )?;
            let todd = Class::from_terms(
                NUMERATOR_TRUNC,
                &[
                    (0, 0, 0, gint(1)),
                    (2, 0, 0, grat(-1, 12)),
                    (0, 2, 0, grat(-1, 12)),
                ],
            )?;
            Ok(Integrand {
                mode,
                base,
                todd,
            })
        }
        IntegrandMode::Full => Ok(Integrand {
            mode,
            base: classes::ch_alternating_sum()?,
            todd: classes::todd_tangent()?,
        }),
    }
}

impl Integrand {
    /// The expanded numerator `base * todd` (over the `x1*x2` denominator).
    pub fn numerator(&self) -> Result<Class> {
        self.base.ring_mul(&self.todd)
    }

    /// Canonical rendering of the quotient.
    pub fn render(&self) -> String {
        format!(
            "({}) / (x1*x2) * ({})",
            self.base.render(),
            self.todd.render()
        )
    }
}

/// Split a numerator into the part divisible by `x1*x2` and the rest.
fn split_by_euler_divisibility(n: &Class) -> (Class, Class) {
    let mut divisible = Class::zero_trunc(n.trunc());
    let mut rest = Class::zero_trunc(n.trunc());
    for ((a, b, s), c) in n.terms() {
        let m = Class::monomial(n.trunc(), *a, *b, *s, c.clone()).expect("term fits window");
        if *a >= 1 && *b >= 1 {
            divisible = &divisible + &m;
        } else {
            rest = &rest + &m;
        }
    }
    (divisible, rest)
}

/// Quotient of an `x1*x2`-divisible class by `x1*x2` (exponent shift),
/// landing in the default-truncation ring.
fn quotient_by_euler(n: &Class) -> Class {
    let mut out = Class::zero_trunc(DEFAULT_TRUNC);
    for ((a, b, s), c) in n.terms() {
        debug_assert!(*a >= 1 && *b >= 1, "term not divisible by x1*x2");
        out = &out
            + &Class::monomial(DEFAULT_TRUNC, a - 1, b - 1, *s, c.clone())
                .expect("term fits window");
    }
    out
}

/// Regularized singular contribution: each pole term `c x1^a x2^b/(x1 x2)`
/// is shifted to `c (x1+xi)^{a-1} (x2+xi)^{b-1}`, expanded in the
/// default-truncation ring, weighted by `xi^4` and sent to `xi -> 0`.
/// The returned class multiplies the symbolic weight `lambda`.
fn regularized_singular(sing: &Class) -> Result<Class> {
    let mut acc = Class::zero_trunc(DEFAULT_TRUNC);
    for ((a, b, s), c) in sing.terms() {
        debug_assert_eq!(*s, 0, "integrand numerators carry no xi");
        let p1 = shifted_power(DEFAULT_TRUNC, 1, i64::from(*a) - 1)?;
        let p2 = shifted_power(DEFAULT_TRUNC, 2, i64::from(*b) - 1)?;
        acc = &acc + &p1.ring_mul(&p2)?.scale(c);
    }
    acc.xi_limit(4)
}

/// Apply the regularization and return the 4-form coefficients, affine in
/// the weight `lambda`.
pub fn regularize(q: &Integrand) -> Result<FourFormCoeffs> {
    let (regular, singular) = match q.mode {
        // Published bucketing: poles are identified in the bare quotient
        // factor; the Todd factor multiplies the regular part only (its
        // corrections to the pole terms vanish in the limit anyway).
        IntegrandMode::Paper => {
            let (div, sing) = split_by_euler_divisibility(&q.base);
            let (still_div, _) = split_by_euler_divisibility(&div.ring_mul(&q.todd)?);
            (quotient_by_euler(&still_div), sing)
        }
        // Exact product, every pole term treated as singular.
        IntegrandMode::Full => {
            let (div, sing) = split_by_euler_divisibility(&q.numerator()?);
            (quotient_by_euler(&div), sing)
        }
    };
    let singular_limit = regularized_singular(&singular)?;

    let reg4 = regular.homogeneous_part(2);
    let sing4 = singular_limit.homogeneous_part(2);

    let coeff = |cls: &Class, a: u32, b: u32| -> Result<Rat> {
        expect_real(&cls.coeff(a, b, 0)).map_err(Error::Domain)
    };
    let e_reg = coeff(&reg4, 1, 1)?;
    let e_sing = coeff(&sing4, 1, 1)?;
    let p_reg = coeff(&reg4, 2, 0)?;
    let p_sing = coeff(&sing4, 2, 0)?;
    if p_reg != coeff(&reg4, 0, 2)? || p_sing != coeff(&sing4, 0, 2)? {
        return Err(Error::Domain(
            "regularized 4-form is not symmetric in x1 <-> x2".into(),
        ));
    }
    Ok(FourFormCoeffs {
        c_euler: AffinePoly::new(e_reg, e_sing),
        c_pontr: AffinePoly::new(p_reg, p_sing),
    })
}

/// Virtual dimension as a function of the symbolic weight:
/// `h1 = -dim G [(3 lambda + 1) chi + 9 lambda |tau|]`.
///
/// The Euler number enters through `integral(x1 x2) = chi` and the
/// signature through `integral(x1^2 + x2^2) = 3 tau`; the published
/// dimension formula takes `|tau|` at exactly this step, which is where
/// this function applies it.
pub fn h1_from_four_form(b: &BundleData, m_fold: &Manifold, coeffs: &FourFormCoeffs) -> AffinePoly<Rat> {
    let chi = int(m_fold.chi);
    let abs_tau = int(m_fold.tau.abs());
    let index = coeffs
        .c_euler
        .scale(&chi)
        .add(&coeffs.c_pontr.scale(&(int(3) * abs_tau)));
    index.scale(&-b.dim_g_rat())
}

/// Signed pairing of the 4-form with the fundamental class:
/// `c_euler * chi + c_pontr * 3 tau` (no absolute value).
pub fn integrate_four_form(m_fold: &Manifold, coeffs: &FourFormCoeffs) -> AffinePoly<Rat> {
    coeffs
        .c_euler
        .scale(&int(m_fold.chi))
        .add(&coeffs.c_pontr.scale(&int(3 * m_fold.tau)))
}

/// Closed-form virtual dimension at a concrete weight `lambda`.
pub fn h1_of_lambda(b: &BundleData, m_fold: &Manifold, lambda: &Rat) -> Rat {
    let chi = int(m_fold.chi);
    let abs_tau = int(m_fold.tau.abs());
    let bracket = (int(3) * lambda.clone() + int(1)) * chi + int(9) * lambda.clone() * abs_tau;
    -b.dim_g_rat() * bracket
}

/// Virtual dimension in terms of the rational parameter `m`:
/// `h1 = dim G * 3 (m |tau| - chi) / (3 + m)`, with a pole at `m = -3`.
pub fn h1_of_m(b: &BundleData, m_fold: &Manifold, m: &Rat) -> Result<Rat> {
    Ok(b.dim_g_rat() * h1_units_of_m(m_fold, m)?)
}

/// Same as [`h1_of_m`] but in units of `dim G` (group-independent).
pub fn h1_units_of_m(m_fold: &Manifold, m: &Rat) -> Result<Rat> {
    let three = int(3);
    if *m == -three.clone() {
        return Err(Error::Pole("h1(m) has a pole at m = -3".into()));
    }
    let chi = int(m_fold.chi);
    let abs_tau = int(m_fold.tau.abs());
    Ok(three.clone() * (m.clone() * abs_tau - chi) / (three + m.clone()))
}

/// The weight reproducing a given `m`: `lambda = -m / (9 + 3m)`.
///
/// Solves the two matching conditions `3 lambda + 1 = alpha` and
/// `-9 lambda = alpha m` simultaneously. The published closed form prints
/// the opposite sign, which fails the consistency check below and is
/// recorded as a divergence.
pub fn lambda_of_m(m: &Rat) -> Result<Rat> {
    if *m == int(-3) {
        return Err(Error::Pole("lambda(m) has a pole at m = -3".into()));
    }
    Ok(-m.clone() / (int(9) + int(3) * m.clone()))
}

/// The published closed form `lambda = m / (9 + 3m)`, retained for the
/// divergence report.
pub fn lambda_of_m_printed(m: &Rat) -> Result<Rat> {
    lambda_of_m(m).map(|l| -l)
}

/// Verify `h1(lambda(m)) = h1(m)` across manifolds and weights, and record
/// that the published sign of `lambda(m)` fails the same check.
pub fn verify_lambda_map(
    b: &BundleData,
    manifolds: &[Manifold],
    ms: &[Rat],
    report: &mut DivergenceReport,
) -> Result<()> {
    let mut printed_fails = false;
    for m in ms {
        if *m == int(-3) {
            continue;
        }
        let derived = lambda_of_m(m)?;
        let printed = lambda_of_m_printed(m)?;
        for fold in manifolds {
            let via_m = h1_of_m(b, fold, m)?;
            if h1_of_lambda(b, fold, &derived) != via_m {
                return Err(Error::Domain(format!(
                    "derived lambda(m) failed consistency at m = {} on {}",
                    rat_str(m),
                    fold.name
                )));
            }
            if h1_of_lambda(b, fold, &printed) != via_m {
                printed_fails = true;
            }
        }
    }
    if printed_fails {
        report.push(
            "lambda-from-m-closed-form",
            "lambda = m/(9+3m)",
            "lambda = -m/(9+3m)",
        );
    }
    Ok(())
}

/// Divergence-report entry for the full-product integrand coefficients,
/// which have no published counterpart beyond the truncated ones.
pub fn full_mode_report(report: &mut DivergenceReport) -> Result<()> {
    let full = regularize(&assemble_integrand(IntegrandMode::Full)?)?;
    let paper = regularize(&assemble_integrand(IntegrandMode::Paper)?)?;
    if full != paper {
        report.push(
            "regularized-four-form-full-product",
            &format!(
                "dim G [({}) x1*x2 + ({}) (x1^2+x2^2)]",
                paper.c_euler, paper.c_pontr
            ),
            &format!(
                "dim G [({}) x1*x2 + ({}) (x1^2+x2^2)]",
                full.c_euler, full.c_pontr
            ),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli;
    use crate::scalar::rat;

    fn cp2() -> Manifold {
        Manifold {
            name: "CP2".into(),
            family_param: None,
            chi: 3,
            tau: 1,
        }
    }

    fn s4() -> Manifold {
        Manifold {
            name: "S4".into(),
            family_param: None,
            chi: 2,
            tau: 0,
        }
    }

    #[test]
    fn paper_numerator_matches_printed_expansion() {
        let q = assemble_integrand(IntegrandMode::Paper).unwrap();
        let n = q.numerator().unwrap();
        // (3 + x1^2 + x2^2 + x1^2 x2^2)(1 - (x1^2+x2^2)/12) truncated
        assert_eq!(n.coeff(0, 0, 0), gint(3));
        assert_eq!(n.coeff(2, 0, 0), grat(3, 4));
        assert_eq!(n.coeff(0, 2, 0), grat(3, 4));
        assert_eq!(n.coeff(2, 2, 0), grat(5, 6));
        assert_eq!(n.coeff(4, 0, 0), grat(-1, 12));
    }

    #[test]
    fn full_numerator_quartic_coefficient() {
        // exact series product: x1^4 coefficient 1/80
        let q = assemble_integrand(IntegrandMode::Full).unwrap();
        let n = q.numerator().unwrap();
        assert_eq!(n.coeff(4, 0, 0), grat(1, 80));
        assert_eq!(n.coeff(2, 2, 0), grat(41, 48));
    }

    #[test]
    fn modes_agree_on_pre_todd_pontryagin_coefficient() {
        let p = assemble_integrand(IntegrandMode::Paper).unwrap();
        let f = assemble_integrand(IntegrandMode::Full).unwrap();
        assert_eq!(p.base.coeff(2, 0, 0), gint(1));
        assert_eq!(f.base.coeff(2, 0, 0), gint(1));
    }

    #[test]
    fn paper_regularization_reproduces_affine_coefficients() {
        let coeffs = regularize(&assemble_integrand(IntegrandMode::Paper).unwrap()).unwrap();
        assert_eq!(coeffs.c_euler, AffinePoly::new(int(1), int(3)));
        assert_eq!(coeffs.c_pontr, AffinePoly::new(int(0), int(3)));
        // lambda = 0 collapses to the bare Euler term
        assert_eq!(coeffs.at(&int(0)), (int(1), int(0)));
    }

    #[test]
    fn full_regularization_coefficients() {
        let coeffs = regularize(&assemble_integrand(IntegrandMode::Full).unwrap()).unwrap();
        assert_eq!(coeffs.c_euler, AffinePoly::new(rat(41, 48), int(3)));
        assert_eq!(coeffs.c_pontr, AffinePoly::new(int(0), int(3)));
        let mut report = DivergenceReport::new();
        full_mode_report(&mut report).unwrap();
        assert!(report.contains("regularized-four-form-full-product"));
    }

    #[test]
    fn pipeline_reproduces_dimension_formula() {
        let b = BundleData::su2();
        let coeffs = regularize(&assemble_integrand(IntegrandMode::Paper).unwrap()).unwrap();
        for fold in moduli::default_catalog_manifolds() {
            let affine = h1_from_four_form(&b, &fold, &coeffs);
            let expected = AffinePoly::new(
                -b.dim_g_rat() * int(fold.chi),
                -b.dim_g_rat() * (int(3 * fold.chi) + int(9 * fold.tau.abs())),
            );
            assert_eq!(affine, expected, "mismatch on {}", fold.name);
            for lam in [int(0), rat(-1, 6), rat(2, 7)] {
                assert_eq!(affine.eval(&lam), h1_of_lambda(&b, &fold, &lam));
            }
        }
    }

    #[test]
    fn h1_of_lambda_examples() {
        let su2 = BundleData::su2();
        assert_eq!(h1_of_lambda(&su2, &s4(), &int(0)), int(-6));
        assert_eq!(h1_of_lambda(&su2, &cp2(), &rat(-1, 3)), int(9));
        // lambda = 0 collapses to -dim G * chi for any manifold
        assert_eq!(h1_of_lambda(&su2, &cp2(), &int(0)), int(-9));
    }

    #[test]
    fn h1_of_m_examples() {
        let su2 = BundleData::su2();
        assert_eq!(h1_of_m(&su2, &cp2(), &int(3)).unwrap(), int(0));
        let k3 = Manifold {
            name: "K3".into(),
            family_param: None,
            chi: 24,
            tau: -16,
        };
        assert_eq!(h1_of_m(&su2, &k3, &int(3)).unwrap(), int(36));
        assert!(matches!(
            h1_of_m(&su2, &k3, &int(-3)),
            Err(Error::Pole(_))
        ));
        // signature enters only through |tau|
        let k3_flip = Manifold { tau: 16, ..k3.clone() };
        assert_eq!(
            h1_of_m(&su2, &k3, &rat(7, 2)).unwrap(),
            h1_of_m(&su2, &k3_flip, &rat(7, 2)).unwrap()
        );
    }

    #[test]
    fn lambda_of_m_examples() {
        assert_eq!(lambda_of_m(&int(0)).unwrap(), int(0));
        assert_eq!(lambda_of_m(&int(3)).unwrap(), rat(-1, 6));
        assert_eq!(lambda_of_m_printed(&int(3)).unwrap(), rat(1, 6));
        assert!(lambda_of_m(&int(-3)).is_err());

        // consistency across the catalog at m = 3
        let su2 = BundleData::su2();
        for fold in moduli::default_catalog_manifolds() {
            assert_eq!(
                h1_of_lambda(&su2, &fold, &rat(-1, 6)),
                h1_of_m(&su2, &fold, &int(3)).unwrap()
            );
        }
    }

    #[test]
    fn lambda_map_verification_flags_printed_sign() {
        let su2 = BundleData::su2();
        let manifolds = moduli::default_catalog_manifolds();
        let ms = [int(3), int(6), rat(-7, 2), rat(22, 7)];
        let mut report = DivergenceReport::new();
        verify_lambda_map(&su2, &manifolds, &ms, &mut report).unwrap();
        assert!(report.contains("lambda-from-m-closed-form"));
        assert_eq!(report.len(), 1);
    }
}
