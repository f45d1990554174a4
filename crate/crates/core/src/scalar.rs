//! Scalar abstraction for the algebra containers, plus the exact number
//! types used throughout: arbitrary-precision rationals and Gaussian
//! rationals (complex numbers with rational parts).

use std::fmt;
use std::ops::Neg;

use num::complex::Complex;
use num::rational::BigRational;
use num::traits::{FromPrimitive, Num, NumAssign};
use num::BigInt;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator.
pub type Rat = BigRational;

/// Gaussian rational: `re + im*i` with exact rational parts.
pub type GaussRat = Complex<Rat>;

/// Canonical text for a coefficient, used by class renderings and golden
/// tests (`Display` on complex types prints noisy zero parts).
pub trait CoeffStr {
    fn coeff_str(&self) -> String;
}

impl CoeffStr for Rat {
    fn coeff_str(&self) -> String {
        self.to_string()
    }
}

impl CoeffStr for GaussRat {
    fn coeff_str(&self) -> String {
        gauss_str(self)
    }
}

impl CoeffStr for f64 {
    fn coeff_str(&self) -> String {
        self.to_string()
    }
}

impl CoeffStr for f32 {
    fn coeff_str(&self) -> String {
        self.to_string()
    }
}

/// Coefficient requirements for the polynomial/series containers.
///
/// Satisfied by [`Rat`], [`GaussRat`] and the machine floats, so the same
/// container code serves both the exact pipeline and float cross-checks.
pub trait Scalar:
    Num + NumAssign + Clone + Neg<Output = Self> + FromPrimitive + CoeffStr + fmt::Debug + fmt::Display
{
}

impl<T> Scalar for T where
    T: Num
        + NumAssign
        + Clone
        + Neg<Output = T>
        + FromPrimitive
        + CoeffStr
        + fmt::Debug
        + fmt::Display
{
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Real rational as a Gaussian rational.
pub fn real(r: Rat) -> GaussRat {
    GaussRat::new(r, Rat::from(BigInt::from(0)))
}

/// Integer as a Gaussian rational.
pub fn gint(n: i64) -> GaussRat {
    real(int(n))
}

/// `n/d` as a Gaussian rational.
pub fn grat(n: i64, d: i64) -> GaussRat {
    real(rat(n, d))
}

/// The imaginary unit.
pub fn imag() -> GaussRat {
    GaussRat::new(int(0), int(1))
}

/// Parse a rational from `p`, `p/q` or `-p/q` text.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    match t.split_once('/') {
        None => t
            .parse::<BigInt>()
            .map(Rat::from)
            .map_err(|e| format!("invalid rational `{t}`: {e}")),
        Some((p, q)) => {
            let p = p
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("invalid numerator in `{t}`: {e}"))?;
            let q = q
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("invalid denominator in `{t}`: {e}"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in `{t}`"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical `p/q` text for a rational (`p` alone when integral).
pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

/// Canonical text for a Gaussian rational: `3`, `-1/2`, `i`, `-2*i`,
/// `1/2+3*i`, `1-i`.
pub fn gauss_str(z: &GaussRat) -> String {
    let zero = int(0);
    let one = int(1);
    let im_part = |im: &Rat, lead: bool| -> String {
        let (sign, mag) = if im < &zero {
            ("-", -im.clone())
        } else {
            (if lead { "" } else { "+" }, im.clone())
        };
        if mag == one {
            format!("{sign}i")
        } else {
            format!("{sign}{mag}*i")
        }
    };
    if z.im == zero {
        z.re.to_string()
    } else if z.re == zero {
        im_part(&z.im, true)
    } else {
        format!("{}{}", z.re, im_part(&z.im, false))
    }
}

/// Extract the real part of a Gaussian rational, rejecting nonzero
/// imaginary parts.
pub fn expect_real(z: &GaussRat) -> Result<Rat, String> {
    if z.im == int(0) {
        Ok(z.re.clone())
    } else {
        Err(format!("expected a real value, found {}", gauss_str(z)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(rat_str(&rat(-3, 6)), "-1/2");
        assert_eq!(rat_str(&int(7)), "7");
    }

    #[test]
    fn gaussian_field_ops_are_exact() {
        let z = GaussRat::new(rat(1, 2), rat(-1, 3));
        let w = GaussRat::new(rat(2, 5), rat(7, 4));
        let prod = z.clone() * w.clone();
        let back = prod / w;
        assert_eq!(back, z);
        // conjugation is an involution
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn gauss_rendering() {
        assert_eq!(gauss_str(&gint(3)), "3");
        assert_eq!(gauss_str(&grat(-1, 12)), "-1/12");
        assert_eq!(gauss_str(&imag()), "i");
        assert_eq!(gauss_str(&(-imag())), "-i");
        assert_eq!(gauss_str(&(gint(1) + imag())), "1+i");
        assert_eq!(
            gauss_str(&GaussRat::new(rat(1, 2), rat(-3, 2))),
            "1/2-3/2*i"
        );
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "5", "-5", "3/4", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
