//! Truncated graded polynomial ring in two formal 2-form variables `x1`,
//! `x2` together with Laurent powers of a regulator `xi`.
//!
//! Monomials are indexed by `(a, b, s)` with `a, b >= 0` the exponents of
//! `x1, x2` and `s` the (possibly negative) exponent of `xi`. Terms whose
//! x-degree `a + b` exceeds the truncation degree are dropped silently:
//! truncation is an ideal. Terms whose xi exponent leaves the configured
//! window raise [`Error::Window`] instead — that bound exists to catch
//! regularization mistakes, so it must never be silent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncation degree used by plain class-level arithmetic (4-manifold:
/// form degree twice the x-degree).
pub const DEFAULT_TRUNC: u32 = 2;
/// Truncation degree for numerator-level work, where products against the
/// declared `x1*x2` denominator still need their x-degree-4 terms.
pub const NUMERATOR_TRUNC: u32 = 4;
/// Default Laurent window for xi exponents. The regularization pipeline
/// bottoms out at `xi^-4`; the margin absorbs intermediate products.
pub const DEFAULT_WINDOW: (i64, i64) = (-6, 6);

/// Exponent triple `(a, b, s)` for `x1^a * x2^b * xi^s`.
pub type Expt = (u32, u32, i64);

/// Element of the truncated graded ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass<C> {
    trunc: u32,
    window: (i64, i64),
    terms: BTreeMap<Expt, C>,
}

impl<C: Scalar> GradedClass<C> {
    /// The zero class at the default truncation degree and window.
    pub fn zero() -> Self {
        Self::zero_trunc(DEFAULT_TRUNC)
    }

    /// The zero class at a given truncation degree.
    pub fn zero_trunc(trunc: u32) -> Self {
        GradedClass {
            trunc,
            window: DEFAULT_WINDOW,
            terms: BTreeMap::new(),
        }
    }

    /// Constant class `c`.
    pub fn constant_trunc(trunc: u32, c: C) -> Self {
        let mut p = Self::zero_trunc(trunc);
        p.insert((0, 0, 0), c);
        p
    }

    pub fn one_trunc(trunc: u32) -> Self {
        Self::constant_trunc(trunc, C::one())
    }

    /// Single monomial `c * x1^a * x2^b * xi^s`. Over-truncation drops the
    /// term (result is zero); a xi exponent outside the window errors.
    pub fn monomial(trunc: u32, a: u32, b: u32, s: i64, c: C) -> Result<Self> {
        let mut p = Self::zero_trunc(trunc);
        if s < p.window.0 || s > p.window.1 {
            return Err(Error::Window {
                found: s,
                min: p.window.0,
                max: p.window.1,
            });
        }
        p.insert((a, b, s), c);
        Ok(p)
    }

    /// Build from a term list; same dropping/window rules as [`monomial`].
    pub fn from_terms(trunc: u32, terms: &[(u32, u32, i64, C)]) -> Result<Self> {
        let mut p = Self::zero_trunc(trunc);
        for (a, b, s, c) in terms {
            if *s < p.window.0 || *s > p.window.1 {
                return Err(Error::Window {
                    found: *s,
                    min: p.window.0,
                    max: p.window.1,
                });
            }
            p.accumulate((*a, *b, *s), c.clone());
        }
        Ok(p)
    }

    /// The variable `x1` at the given truncation degree.
    pub fn var_x1(trunc: u32) -> Self {
        Self::monomial(trunc, 1, 0, 0, C::one()).expect("x1 fits any window")
    }

    /// The variable `x2` at the given truncation degree.
    pub fn var_x2(trunc: u32) -> Self {
        Self::monomial(trunc, 0, 1, 0, C::one()).expect("x2 fits any window")
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x1^a * x2^b * xi^s` (zero when absent).
    pub fn coeff(&self, a: u32, b: u32, s: i64) -> C {
        self.terms.get(&(a, b, s)).cloned().unwrap_or_else(C::zero)
    }

    /// Iterate over stored terms in lexicographic `(a, b, s)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Expt, &C)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: Expt, c: C) {
        if key.0 + key.1 > self.trunc || c.is_zero() {
            return;
        }
        self.terms.insert(key, c);
    }

    fn accumulate(&mut self, key: Expt, c: C) {
        if key.0 + key.1 > self.trunc || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(C::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(
            self.trunc, other.trunc,
            "graded ring ops require equal truncation degrees"
        );
        assert_eq!(
            self.window, other.window,
            "graded ring ops require equal xi windows"
        );
    }

    /// Coefficient-wise sum with re-truncation.
    pub fn ring_add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    /// Exact distributive product; xi exponents add and are window-checked.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.assert_compatible(other);
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a1, b1, s1), c1) in &self.terms {
            for ((a2, b2, s2), c2) in &other.terms {
                let (a, b) = (a1 + a2, b1 + b2);
                if a + b > self.trunc {
                    continue;
                }
                let s = s1 + s2;
                if s < self.window.0 || s > self.window.1 {
                    return Err(Error::Window {
                        found: s,
                        min: self.window.0,
                        max: self.window.1,
                    });
                }
                out.accumulate((a, b, s), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Scale every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for (k, v) in &self.terms {
            out.accumulate(*k, v.clone() * c.clone());
        }
        out
    }

    /// Truncated exponential of a linear form in `x1, x2`.
    ///
    /// The argument must have only x-degree-1 terms with xi exponent 0;
    /// anything else is a [`Error::Domain`]. Higher powers of the linear
    /// form vanish under truncation, so the series is finite:
    /// `1 + l + l^2/2 + ... + l^T/T!`.
    pub fn exp_linear(linear: &Self) -> Result<Self> {
        for ((a, b, s), _) in linear.terms.iter() {
            if a + b != 1 || *s != 0 {
                return Err(Error::Domain(format!(
                    "exp argument must be linear in x1, x2 (found x1^{a}*x2^{b}*xi^{s})"
                )));
            }
        }
        let mut out = Self::one_trunc(linear.trunc);
        out.window = linear.window;
        let mut power = out.clone();
        let mut factorial = C::one();
        for k in 1..=linear.trunc {
            power = power.ring_mul(linear)?;
            factorial *= C::from_u32(k).expect("small integer");
            if power.is_zero() {
                break;
            }
            out = out.ring_add(&power.scale(&(C::one() / factorial.clone())));
        }
        Ok(out)
    }

    /// Multiplicative inverse as a truncated series.
    ///
    /// Requires the constant term to be the only x-degree-0 term (so the
    /// remainder is nilpotent under truncation) and invertible.
    pub fn series_reciprocal(&self) -> Result<Self> {
        let c = self.coeff(0, 0, 0);
        if c.is_zero() {
            return Err(Error::NotInvertible("zero constant term".into()));
        }
        for ((a, b, s), _) in self.terms.iter() {
            if *a == 0 && *b == 0 && *s != 0 {
                return Err(Error::NotInvertible(format!(
                    "x-degree-0 term xi^{s} makes the remainder non-nilpotent"
                )));
            }
        }
        let c_inv = C::one() / c;
        // p = c (1 - e) with e nilpotent: 1/p = (1/c)(1 + e + ... + e^T).
        let e = Self::one_trunc(self.trunc).ring_add(&self.scale(&c_inv.clone()).neg_class());
        let mut out = Self::one_trunc(self.trunc);
        out.window = self.window;
        let mut power = Self::one_trunc(self.trunc);
        power.window = self.window;
        for _ in 1..=self.trunc {
            power = power.ring_mul(&e)?;
            if power.is_zero() {
                break;
            }
            out = out.ring_add(&power);
        }
        Ok(out.scale(&c_inv))
    }

    fn neg_class(&self) -> Self {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for (k, v) in &self.terms {
            out.insert(*k, -v.clone());
        }
        out
    }

    /// Substitute `x1 -> x1 + xi`, `x2 -> x2 + xi` and expand exactly.
    pub fn xi_shift(&self) -> Result<Self> {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a, b, s), c) in &self.terms {
            let sh1 = binomial_shift::<C>(self.trunc, self.window, 1, *a)?;
            let sh2 = binomial_shift::<C>(self.trunc, self.window, 2, *b)?;
            let mut term = sh1.ring_mul(&sh2)?;
            term = term.mul_xi_power(*s)?;
            out = out.ring_add(&term.scale(c));
        }
        Ok(out)
    }

    /// Multiply by `xi^power` (shift every xi exponent).
    pub fn mul_xi_power(&self, power: i64) -> Result<Self> {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a, b, s), c) in &self.terms {
            let s2 = s + power;
            if s2 < self.window.0 || s2 > self.window.1 {
                return Err(Error::Window {
                    found: s2,
                    min: self.window.0,
                    max: self.window.1,
                });
            }
            out.insert((*a, *b, s2), c.clone());
        }
        Ok(out)
    }

    /// The `xi^0` part of `self * xi^power`, with the limit `xi -> 0`
    /// applied: positive residual powers vanish, negative ones are a
    /// [`Error::SingularLimit`].
    pub fn xi_limit(&self, power: i64) -> Result<Self> {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a, b, s), c) in &self.terms {
            let s2 = s + power;
            if s2 < 0 {
                return Err(Error::SingularLimit(s2));
            }
            if s2 == 0 {
                out.insert((*a, *b, 0), c.clone());
            }
        }
        Ok(out)
    }

    /// Keep only terms of exact x-degree `deg` (and xi exponent 0).
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a, b, s), c) in &self.terms {
            if a + b == deg && *s == 0 {
                out.insert((*a, *b, 0), c.clone());
            }
        }
        out
    }

    /// Re-truncate to a lower degree.
    pub fn truncate_to(&self, trunc: u32) -> Self {
        let mut out = Self::zero_trunc(trunc);
        out.window = self.window;
        for (k, c) in &self.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    /// Swap `x1 <-> x2`.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero_trunc(self.trunc);
        out.window = self.window;
        for ((a, b, s), c) in &self.terms {
            out.insert((*b, *a, *s), c.clone());
        }
        out
    }

    /// Canonical text rendering: x-degree ascending, higher `x1` powers
    /// first within a degree, then xi exponent.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&Expt, &C)> = self.terms.iter().collect();
        ordered.sort_by_key(|((a, b, s), _)| (a + b, *b, *s));
        let mut parts = Vec::new();
        for ((a, b, s), c) in ordered {
            let mut factors = Vec::new();
            if *a > 0 {
                factors.push(if *a == 1 { "x1".into() } else { format!("x1^{a}") });
            }
            if *b > 0 {
                factors.push(if *b == 1 { "x2".into() } else { format!("x2^{b}") });
            }
            if *s != 0 {
                factors.push(if *s == 1 { "xi".into() } else { format!("xi^{s}") });
            }
            let cs = c.coeff_str();
            let coeff = if cs.chars().all(|ch| ch.is_ascii_digit()) {
                cs
            } else {
                format!("({cs})")
            };
            if factors.is_empty() {
                parts.push(coeff);
            } else if c.is_one() {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{coeff}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

/// `(x + xi)^e` for variable `var` (1 or 2), expanded binomially.
fn binomial_shift<C: Scalar>(
    trunc: u32,
    window: (i64, i64),
    var: u8,
    e: u32,
) -> Result<GradedClass<C>> {
    let mut out = GradedClass::zero_trunc(trunc);
    out.window = window;
    for j in 0..=e {
        let s = i64::from(e - j);
        if s > window.1 {
            return Err(Error::Window {
                found: s,
                min: window.0,
                max: window.1,
            });
        }
        let coeff = C::from_u64(binomial(e, j)).expect("small binomial");
        let key = if var == 1 { (j, 0, s) } else { (0, j, s) };
        out.accumulate(key, coeff);
    }
    Ok(out)
}

/// `1/(x + xi)` for variable `var`, expanded as a geometric series in
/// `x/xi`: `xi^-1 * sum_j (-x/xi)^j` up to the truncation degree.
pub fn inverse_shift<C: Scalar>(trunc: u32, var: u8) -> Result<GradedClass<C>> {
    let mut out = GradedClass::zero_trunc(trunc);
    for j in 0..=trunc {
        let s = -1 - i64::from(j);
        if s < out.window.0 {
            return Err(Error::Window {
                found: s,
                min: out.window.0,
                max: out.window.1,
            });
        }
        let sign = if j % 2 == 0 { C::one() } else { -C::one() };
        let key = if var == 1 { (j, 0, s) } else { (0, j, s) };
        out.accumulate(key, sign);
    }
    Ok(out)
}

/// `(x + xi)^e` for integer `e` (negative meaning the geometric-series
/// expansion of the reciprocal power).
pub fn shifted_power<C: Scalar>(trunc: u32, var: u8, e: i64) -> Result<GradedClass<C>> {
    if e >= 0 {
        binomial_shift(trunc, DEFAULT_WINDOW, var, u32::try_from(e).unwrap())
    } else {
        let inv = inverse_shift::<C>(trunc, var)?;
        let mut out = GradedClass::one_trunc(trunc);
        for _ in 0..(-e) {
            out = out.ring_mul(&inv)?;
        }
        Ok(out)
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}

impl<'a, C: Scalar> Add for &'a GradedClass<C> {
    type Output = GradedClass<C>;
    fn add(self, rhs: Self) -> GradedClass<C> {
        self.ring_add(rhs)
    }
}

impl<'a, C: Scalar> Sub for &'a GradedClass<C> {
    type Output = GradedClass<C>;
    fn sub(self, rhs: Self) -> GradedClass<C> {
        self.ring_add(&rhs.neg_class())
    }
}

impl<'a, C: Scalar> Neg for &'a GradedClass<C> {
    type Output = GradedClass<C>;
    fn neg(self) -> GradedClass<C> {
        self.neg_class()
    }
}

impl<'a, C: Scalar> Mul for &'a GradedClass<C> {
    type Output = GradedClass<C>;
    fn mul(self, rhs: Self) -> GradedClass<C> {
        self.ring_mul(rhs).expect("xi window overflow in product")
    }
}

impl<C: Scalar> fmt::Display for GradedClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gint, grat, GaussRat};

    type Class = GradedClass<GaussRat>;

    fn x1() -> Class {
        Class::var_x1(DEFAULT_TRUNC)
    }

    fn x2() -> Class {
        Class::var_x2(DEFAULT_TRUNC)
    }

    #[test]
    fn additive_identity_and_doubling() {
        let p = Class::from_terms(2, &[(1, 0, 0, gint(1)), (0, 0, 0, grat(1, 3))]).unwrap();
        assert_eq!(Class::zero().ring_add(&p), p);
        assert_eq!(&x1() + &x1(), x1().scale(&gint(2)));
    }

    #[test]
    fn truncation_drops_degree_three() {
        // x1^2 * x2 has x-degree 3: stored as zero at truncation 2.
        let p = Class::monomial(2, 2, 1, 0, gint(1)).unwrap();
        assert!(p.is_zero());
        let q = &(&x1() * &x1()) * &x2();
        assert!(q.is_zero());
    }

    #[test]
    fn laurent_cancellation() {
        let xi = Class::monomial(2, 0, 0, 1, gint(1)).unwrap();
        let xi_inv = Class::monomial(2, 0, 0, -1, gint(1)).unwrap();
        assert_eq!(&xi_inv * &xi, Class::one_trunc(2));
    }

    #[test]
    fn difference_of_squares() {
        let one = Class::one_trunc(2);
        let lhs = &(&one + &x1()) * &(&one - &x1());
        let expected = &one - &(&x1() * &x1());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn window_overflow_is_an_error() {
        let deep = Class::monomial(2, 0, 0, -4, gint(1)).unwrap();
        let err = deep.ring_mul(&deep).unwrap_err();
        assert!(matches!(err, Error::Window { found: -8, .. }));
        assert!(Class::monomial(2, 0, 0, 9, gint(1)).is_err());
    }

    #[test]
    fn exp_of_x1() {
        let e = Class::exp_linear(&x1()).unwrap();
        let expected =
            Class::from_terms(2, &[(0, 0, 0, gint(1)), (1, 0, 0, gint(1)), (2, 0, 0, grat(1, 2))])
                .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(Class::exp_linear(&Class::zero()).unwrap(), Class::one_trunc(2));
    }

    #[test]
    fn exp_of_sum() {
        let e = Class::exp_linear(&(&x1() + &x2())).unwrap();
        let expected = Class::from_terms(
            2,
            &[
                (0, 0, 0, gint(1)),
                (1, 0, 0, gint(1)),
                (0, 1, 0, gint(1)),
                (2, 0, 0, grat(1, 2)),
                (1, 1, 0, gint(1)),
                (0, 2, 0, grat(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn exp_rejects_nonlinear() {
        let quad = Class::monomial(2, 2, 0, 0, gint(1)).unwrap();
        assert!(matches!(Class::exp_linear(&quad), Err(Error::Domain(_))));
        let with_xi = Class::monomial(2, 1, 0, 1, gint(1)).unwrap();
        assert!(matches!(Class::exp_linear(&with_xi), Err(Error::Domain(_))));
    }

    #[test]
    fn reciprocal_of_todd_like_factor() {
        // 1/(1 + x1^2/12) = 1 - x1^2/12 under degree-2 truncation;
        // oracle: multiply back and compare with 1.
        let p = Class::from_terms(2, &[(0, 0, 0, gint(1)), (2, 0, 0, grat(1, 12))]).unwrap();
        let q = p.series_reciprocal().unwrap();
        let expected =
            Class::from_terms(2, &[(0, 0, 0, gint(1)), (2, 0, 0, grat(-1, 12))]).unwrap();
        assert_eq!(q, expected);
        assert_eq!(&p * &q, Class::one_trunc(2));
    }

    #[test]
    fn reciprocal_trivial_cases() {
        assert_eq!(
            Class::one_trunc(2).series_reciprocal().unwrap(),
            Class::one_trunc(2)
        );
        let two = Class::constant_trunc(2, gint(2));
        assert_eq!(
            two.series_reciprocal().unwrap(),
            Class::constant_trunc(2, grat(1, 2))
        );
        assert!(matches!(
            Class::zero().series_reciprocal(),
            Err(Error::NotInvertible(_))
        ));
        let with_xi =
            Class::from_terms(2, &[(0, 0, 0, gint(1)), (0, 0, -1, gint(1))]).unwrap();
        assert!(matches!(
            with_xi.series_reciprocal(),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn xi_shift_of_variables() {
        let shifted = x1().xi_shift().unwrap();
        let expected =
            Class::from_terms(2, &[(1, 0, 0, gint(1)), (0, 0, 1, gint(1))]).unwrap();
        assert_eq!(shifted, expected);

        let prod = &x1() * &x2();
        let shifted = prod.xi_shift().unwrap();
        let expected = Class::from_terms(
            2,
            &[
                (1, 1, 0, gint(1)),
                (1, 0, 1, gint(1)),
                (0, 1, 1, gint(1)),
                (0, 0, 2, gint(1)),
            ],
        )
        .unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn geometric_inverse_shift_multiplies_back() {
        // 3/((x1+xi)(x2+xi)) expanded, then multiplied by (x1+xi)(x2+xi),
        // must give back 3 up to truncation-dropped x-degrees.
        let three = Class::constant_trunc(2, gint(3));
        let inv1 = inverse_shift::<GaussRat>(2, 1).unwrap();
        let inv2 = inverse_shift::<GaussRat>(2, 2).unwrap();
        let expanded = &(&three * &inv1) * &inv2;

        // leading terms: (3/xi^2)(1 - x1/xi - x2/xi + ...)
        assert_eq!(expanded.coeff(0, 0, -2), gint(3));
        assert_eq!(expanded.coeff(1, 0, -3), gint(-3));
        assert_eq!(expanded.coeff(0, 1, -3), gint(-3));
        assert_eq!(expanded.coeff(1, 1, -4), gint(3));
        assert_eq!(expanded.coeff(2, 0, -4), gint(3));

        let sh1 = x1().xi_shift().unwrap();
        let sh2 = x2().xi_shift().unwrap();
        let back = &(&expanded * &sh1) * &sh2;
        // The geometric series telescopes: (x + xi) * sum_j (-x/xi)^j / xi
        // is exactly 1 once truncation removes the top remainder term.
        assert_eq!(back, three);
    }

    #[test]
    fn xi_limit_extracts_the_pole_coefficient() {
        // (1/xi^4)[3(x1^2+x2^2) + 3 x1 x2 + 3 xi^2]: multiplying by xi^4
        // and sending xi -> 0 keeps the pole coefficient only.
        let p = Class::from_terms(
            2,
            &[
                (2, 0, -4, gint(3)),
                (0, 2, -4, gint(3)),
                (1, 1, -4, gint(3)),
                (0, 0, -2, gint(3)),
            ],
        )
        .unwrap();
        let lim = p.xi_limit(4).unwrap();
        let expected = Class::from_terms(
            2,
            &[(2, 0, 0, gint(3)), (0, 2, 0, gint(3)), (1, 1, 0, gint(3))],
        )
        .unwrap();
        assert_eq!(lim, expected);
    }

    #[test]
    fn xi_limit_edge_cases() {
        let xi2 = Class::monomial(2, 0, 0, 2, gint(1)).unwrap();
        assert!(xi2.xi_limit(0).unwrap().is_zero());
        let pole = Class::monomial(2, 0, 0, -1, gint(1)).unwrap();
        assert!(matches!(pole.xi_limit(0), Err(Error::SingularLimit(-1))));
    }

    #[test]
    fn rendering_is_canonical() {
        let p = Class::from_terms(
            NUMERATOR_TRUNC,
            &[(0, 0, 0, gint(3)), (2, 0, 0, gint(1)), (2, 0, -4, grat(-1, 12))],
        )
        .unwrap();
        assert_eq!(p.render(), "3 + (-1/12)*x1^2*xi^-4 + x1^2");
        assert_eq!(Class::zero().render(), "0");
    }
}
