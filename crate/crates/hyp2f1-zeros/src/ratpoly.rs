//! Dense univariate polynomials with exact big-rational coefficients.
//!
//! `RatPoly` is the currency of the whole crate: construction, formal
//! differentiation and Euclidean division are all exact, so downstream sign
//! tests are decidable rather than approximate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub use num_rational::BigRational;

/// Errors from polynomial arithmetic and rational-literal parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatPolyError {
    #[error("zero polynomial has no leading coefficient")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("dividend degree {dividend:?} is below divisor degree {divisor}")]
    DegreeOrder {
        dividend: Option<usize>,
        divisor: usize,
    },
    #[error("invalid rational literal {0:?} (expected \"p\" or \"p/q\", optional leading minus)")]
    BadRationalLiteral(String),
}

/// Shorthand for an integer-valued `BigRational`.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the reduced rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational literal: `p` or `p/q` with an optional leading minus,
/// no whitespace, decimal digits only. Decimal-point notation is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, RatPolyError> {
    let bad = || RatPolyError::BadRationalLiteral(s.to_string());
    let body = s.strip_prefix('-').unwrap_or(s);
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(numer) || !denom.is_none_or(digits) {
        return Err(bad());
    }
    if let Some(d) = denom {
        if d.bytes().all(|b| b == b'0') {
            return Err(bad());
        }
        let _ = d;
    }
    BigRational::from_str(s).map_err(|_| bad())
}

/// Dense polynomial over the rationals, constant term first.
///
/// Invariant: the last stored coefficient is nonzero; the zero polynomial is
/// the empty coefficient list and is never given a fake degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(v: BigRational) -> Self {
        RatPoly::from_coeffs(vec![v])
    }

    /// The monomial `z`.
    pub fn variable() -> Self {
        RatPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// Build from coefficients (constant term first), trimming high zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, constant term first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        RatPoly::from_coeffs(coeffs.iter().map(|&n| rat(n)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Result<&BigRational, RatPolyError> {
        self.coeffs.last().ok_or(RatPolyError::ZeroPolynomial)
    }

    /// Term-by-term formal derivative; constants map to the zero polynomial.
    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q * g + r` with `deg(r) < deg(g)` or `r = 0`.
    ///
    /// Requires `deg(self) >= deg(g)`. The remainder carries the standard
    /// `+r` sign; callers wanting the `f = q*g - r` convention negate it.
    pub fn divide(&self, g: &RatPoly) -> Result<(RatPoly, RatPoly), RatPolyError> {
        let dg = g.degree().ok_or(RatPolyError::DivisorZero)?;
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            other => {
                return Err(RatPolyError::DegreeOrder {
                    dividend: other,
                    divisor: dg,
                })
            }
        };
        let lead_g = &g.coeffs[dg];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); df - dg + 1];
        for shift in (0..=df - dg).rev() {
            let top = rem[shift + dg].clone();
            if top.is_zero() {
                continue;
            }
            let factor = top / lead_g;
            for i in 0..dg {
                let delta = &factor * &g.coeffs[i];
                rem[shift + i] = &rem[shift + i] - delta;
            }
            rem[shift + dg] = BigRational::zero();
            quot[shift] = factor;
        }
        rem.truncate(dg);
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        if s.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Substitute the affine map `z -> a*z + b`.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> RatPoly {
        let inner = RatPoly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &RatPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: usize) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// Wire format: a JSON array of rational literals, constant term first.
impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = RatPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of rational literals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RatPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    coeffs.push(parse_rational(&s).map_err(serde::de::Error::custom)?);
                }
                Ok(RatPoly::from_coeffs(coeffs))
            }
        }
        deserializer.deserialize_seq(PolyVisitor)
    }
}

/// Serde adapters for `BigRational` fields rendered as rational literals.
pub mod rational_str {
    use super::{parse_rational, BigRational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rational_str`] but for optional fields.
pub mod rational_str_opt {
    use super::{parse_rational, BigRational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|v| parse_rational(&v).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficient_reads_highest_term() {
        let p = RatPoly::from_integers(&[1, -1, 3]); // 3z^2 - z + 1
        assert_eq!(p.leading_coefficient().unwrap(), &rat(3));
        assert_eq!(
            RatPoly::from_integers(&[5]).leading_coefficient().unwrap(),
            &rat(5)
        );
        assert_eq!(RatPoly::variable().leading_coefficient().unwrap(), &rat(1));
        assert_eq!(
            RatPoly::zero().leading_coefficient(),
            Err(RatPolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn derivative_power_rule() {
        let p = RatPoly::from_integers(&[-1, 0, 1]); // z^2 - 1
        assert_eq!(p.derivative(), RatPoly::from_integers(&[0, 2]));
        assert_eq!(RatPoly::from_integers(&[7]).derivative(), RatPoly::zero());
        let q = RatPoly::from_integers(&[0, 1, 0, 1]); // z^3 + z
        assert_eq!(q.derivative(), RatPoly::from_integers(&[1, 0, 3]));
    }

    #[test]
    fn divide_single_step() {
        let f = RatPoly::from_integers(&[-1, 0, 1]); // z^2 - 1
        let g = RatPoly::from_integers(&[0, 2]); // 2z
        let (q, r) = f.divide(&g).unwrap();
        assert_eq!(q, RatPoly::from_coeffs(vec![rat(0), ratio(1, 2)]));
        assert_eq!(r, RatPoly::from_integers(&[-1]));
    }

    #[test]
    fn divide_exact_and_synthetic() {
        let f = RatPoly::from_integers(&[0, 0, 0, 1]); // z^3
        let g = RatPoly::variable();
        let (q, r) = f.divide(&g).unwrap();
        assert_eq!(q, RatPoly::from_integers(&[0, 0, 1]));
        assert!(r.is_zero());

        let f = RatPoly::from_integers(&[1, 0, 1]); // z^2 + 1
        let g = RatPoly::from_integers(&[-1, 1]); // z - 1
        let (q, r) = f.divide(&g).unwrap();
        assert_eq!(q, RatPoly::from_integers(&[1, 1]));
        assert_eq!(r, RatPoly::from_integers(&[2]));
    }

    #[test]
    fn divide_error_paths() {
        let f = RatPoly::from_integers(&[1, 1]);
        assert_eq!(f.divide(&RatPoly::zero()), Err(RatPolyError::DivisorZero));
        let g = RatPoly::from_integers(&[1, 1, 1]);
        assert_eq!(
            f.divide(&g),
            Err(RatPolyError::DegreeOrder {
                dividend: Some(1),
                divisor: 2
            })
        );
        assert_eq!(
            RatPoly::zero().divide(&g),
            Err(RatPolyError::DegreeOrder {
                dividend: None,
                divisor: 2
            })
        );
    }

    #[test]
    fn compose_affine_substitutes() {
        // p(z) = z^2, p(1 - z) = 1 - 2z + z^2
        let p = RatPoly::from_integers(&[0, 0, 1]);
        let q = p.compose_affine(&rat(-1), &rat(1));
        assert_eq!(q, RatPoly::from_integers(&[1, -2, 1]));
    }

    #[test]
    fn parse_rational_is_strict() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational("-10/4").unwrap(), ratio(-5, 2));
        for bad in ["", "1.5", "5/-2", "+3", " 5", "5 ", "a", "5/", "/2", "3/0"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = RatPoly::from_coeffs(vec![rat(1), ratio(-3, 2), rat(0), ratio(7, 5)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1","-3/2","0","7/5"]"#);
        let back: RatPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_is_readable() {
        let p = RatPoly::from_coeffs(vec![rat(1), rat(-4), rat(3)]);
        assert_eq!(p.to_string(), "1 - 4*z + 3*z^2");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }
}
