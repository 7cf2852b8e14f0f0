//! Terminating Gauss hypergeometric polynomials and the classical identities
//! used to relocate their zeros.
//!
//! Provides:
//! - [`pochhammer`]: rising factorial over exact rationals
//! - [`HypParams`] / [`build_2f1`]: the degree-n polynomial from parameters `(n, b, c)`
//! - [`pfaff_partner`]: the argument-reflection partner `(n, b, 1-n+b-c)` with its scale
//! - [`JacobiParams`] / [`jacobi_poly`]: Jacobi polynomials through the hypergeometric factory
//! - [`jacobi_reference`]: independent binomial-sum evaluation of the same polynomial
//! - [`verify_jacobi_representation`]: exact check of the three hypergeometric
//!   representations of a Jacobi polynomial (arguments `(x+1)/2`, `2/(x+1)`, `(x+1)/(x-1)`)

use crate::ratpoly::{rat, BigRational, RatPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Hyp2f1Error {
    #[error("parameter {name} = {value} is excluded for degree {n} (must avoid 0, -1, ..., -(n-1), and n must be positive)")]
    InvalidParams {
        name: &'static str,
        value: String,
        n: u32,
    },
    #[error(
        "reflection partner parameter 1-n+b-c = {third} lies in the excluded set for degree {n}"
    )]
    PartnerInvalid { third: String, n: u32 },
}

/// True iff `v` is one of `0, -1, ..., -(n-1)`.
fn in_excluded_set(v: &BigRational, n: u32) -> bool {
    v.is_integer() && !v.is_positive() && *v >= -rat(i64::from(n) - 1)
}

/// Parameters `(n, b, c)` of a terminating series of degree exactly `n`.
///
/// Construction enforces the standing assumptions: `n >= 1` and neither `b`
/// nor `c` lies in `{0, -1, ..., -(n-1)}`, so the polynomial has degree `n`
/// and every series denominator is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    n: u32,
    b: BigRational,
    c: BigRational,
}

impl HypParams {
    pub fn new(n: u32, b: BigRational, c: BigRational) -> Result<Self, Hyp2f1Error> {
        if n == 0 {
            return Err(Hyp2f1Error::InvalidParams {
                name: "n",
                value: "0".into(),
                n,
            });
        }
        if in_excluded_set(&b, n) {
            return Err(Hyp2f1Error::InvalidParams {
                name: "b",
                value: b.to_string(),
                n,
            });
        }
        if in_excluded_set(&c, n) {
            return Err(Hyp2f1Error::InvalidParams {
                name: "c",
                value: c.to_string(),
                n,
            });
        }
        Ok(HypParams { n, b, c })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1` for every
/// `a` including zero.
pub fn pochhammer(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

/// Generalized binomial coefficient `C(a, k) = a (a-1) ... (a-k+1) / k!`.
pub fn binomial(a: &BigRational, k: u32) -> BigRational {
    pochhammer(&(a - rat(i64::from(k) - 1)), k) / pochhammer(&BigRational::one(), k)
}

/// The polynomial `sum_k (-n)_k (b)_k / ((c)_k k!) z^k` of degree exactly `n`.
pub fn build_2f1(p: &HypParams) -> RatPoly {
    let n = i64::from(p.n);
    let mut coeffs = Vec::with_capacity(p.n as usize + 1);
    let mut term = BigRational::one();
    coeffs.push(term.clone());
    for k in 0..n {
        let kq = rat(k);
        term = term * (rat(-n) + &kq) * (&p.b + &kq) / ((&p.c + &kq) * (&kq + BigRational::one()));
        coeffs.push(term.clone());
    }
    RatPoly::from_coeffs(coeffs)
}

/// Result of the argument reflection `z -> 1-z`: parameters `(n, b, 1-n+b-c)`
/// and the scalar `(c-b)_n / (c)_n` that reconstructs the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfaffPartner {
    pub scale: BigRational,
    pub partner: HypParams,
}

impl PfaffPartner {
    /// `scale * partner_poly(1 - z)`, expanded exactly.
    pub fn expand(&self) -> RatPoly {
        build_2f1(&self.partner)
            .compose_affine(&rat(-1), &rat(1))
            .scale(&self.scale)
    }
}

/// Reflection partner of `p`. Fails when the partner's third parameter
/// `1-n+b-c` falls in the excluded set (where the right-hand side of the
/// identity is undefined).
pub fn pfaff_partner(p: &HypParams) -> Result<PfaffPartner, Hyp2f1Error> {
    let third = rat(1 - i64::from(p.n)) + &p.b - &p.c;
    if in_excluded_set(&third, p.n) {
        return Err(Hyp2f1Error::PartnerInvalid {
            third: third.to_string(),
            n: p.n,
        });
    }
    let scale = pochhammer(&(&p.c - &p.b), p.n) / pochhammer(&p.c, p.n);
    let partner = HypParams::new(p.n, p.b.clone(), third)?;
    Ok(PfaffPartner { scale, partner })
}

/// Jacobi parameters `(n, alpha, beta)`; any rational pair is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: BigRational, beta: BigRational) -> Self {
        JacobiParams { n, alpha, beta }
    }
}

/// `2^e` as an exact rational, for any sign of `e`.
fn two_pow(e: i64) -> BigRational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn factorial(n: u32) -> BigRational {
    pochhammer(&BigRational::one(), n)
}

/// Jacobi polynomial via the hypergeometric factory:
/// `(-1)^n (1+beta)_n / n! * F((x+1)/2)` with `F` of parameters
/// `(n, 1+alpha+beta+n, 1+beta)`. Requires both induced parameters to avoid
/// the excluded set.
pub fn jacobi_poly(j: &JacobiParams) -> Result<RatPoly, Hyp2f1Error> {
    let b = rat(1 + i64::from(j.n)) + &j.alpha + &j.beta;
    let c = BigRational::one() + &j.beta;
    let params = HypParams::new(j.n, b, c.clone())?;
    let sign = if j.n.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    };
    let scale = sign * pochhammer(&c, j.n) / factorial(j.n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(build_2f1(&params)
        .compose_affine(&half, &half)
        .scale(&scale))
}

/// Independent route to the same polynomial: the binomial double sum
/// `sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`,
/// which is polynomial in `(alpha, beta)` and therefore total.
pub fn jacobi_reference(j: &JacobiParams) -> RatPoly {
    let half = two_pow(-1);
    let x_minus = RatPoly::from_coeffs(vec![-half.clone(), half.clone()]);
    let x_plus = RatPoly::from_coeffs(vec![half.clone(), half]);
    let n = j.n;
    let mut acc = RatPoly::zero();
    for s in 0..=n {
        let coef = binomial(&(rat(i64::from(n)) + &j.alpha), n - s)
            * binomial(&(rat(i64::from(n)) + &j.beta), s);
        let term = &x_minus.pow(s as usize) * &x_plus.pow((n - s) as usize);
        acc = &acc + &term.scale(&coef);
    }
    acc
}

/// The three hypergeometric representations of `P_n^(alpha,beta)(x)`,
/// named by their argument maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiRep {
    /// Argument `(x+1)/2`; a plain polynomial identity.
    AffineArg,
    /// Argument `2/(x+1)` with prefactor `((x+1)/2)^n`; cleared by `(x+1)^n`.
    ReciprocalArg,
    /// Argument `(x+1)/(x-1)` with prefactor `((x-1)/2)^n`; cleared by `(x-1)^n`.
    RatioArg,
}

/// Expand the right-hand side of a representation to a polynomial in `x`.
///
/// The scalar prefactors are folded into the terminating sum with the
/// Pochhammer cancellations `(a)_n / (a)_k = (a+k)_(n-k)` and
/// `(1+alpha+beta)_(2n) / (1+alpha+beta)_n = (s)_n` where `s = 1+alpha+beta+n`,
/// so the expansion is defined for every rational `(alpha, beta)` even where
/// an individual factor of the printed form degenerates.
pub fn representation_expansion(rep: JacobiRep, j: &JacobiParams) -> RatPoly {
    let n = j.n;
    let ni = i64::from(n);
    let s = rat(1 + ni) + &j.alpha + &j.beta;
    let x_plus = RatPoly::from_coeffs(vec![rat(1), rat(1)]);
    let x_minus = RatPoly::from_coeffs(vec![rat(-1), rat(1)]);
    let minus_n = rat(-ni);
    let mut acc = RatPoly::zero();
    for k in 0..=n {
        let ki = i64::from(k);
        let shared = pochhammer(&minus_n, k) / factorial(k);
        let (coef, term) = match rep {
            JacobiRep::AffineArg => (
                shared
                    * pochhammer(&s, k)
                    * pochhammer(&(rat(1 + ki) + &j.beta), n - k)
                    * two_pow(-ki),
                x_plus.pow(k as usize),
            ),
            JacobiRep::ReciprocalArg => {
                let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
                (
                    shared
                        * pochhammer(&(-&j.beta - rat(ni)), k)
                        * sign
                        * pochhammer(&s, n - k)
                        * two_pow(ki - ni),
                    x_plus.pow((n - k) as usize),
                )
            }
            JacobiRep::RatioArg => (
                shared
                    * pochhammer(&(-&j.alpha - rat(ni)), k)
                    * pochhammer(&(rat(1 + ki) + &j.beta), n - k)
                    * two_pow(-ni),
                &x_plus.pow(k as usize) * &x_minus.pow((n - k) as usize),
            ),
        };
        acc = &acc + &term.scale(&coef);
    }
    let outer = match rep {
        JacobiRep::AffineArg if n % 2 == 1 => rat(-1),
        _ => rat(1),
    };
    acc.scale(&(outer / factorial(n)))
}

/// True iff the representation reproduces the binomial-sum Jacobi polynomial
/// exactly, coefficient by coefficient.
pub fn verify_jacobi_representation(rep: JacobiRep, j: &JacobiParams) -> bool {
    representation_expansion(rep, j) == jacobi_reference(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::ratio;

    fn hp(n: u32, b: BigRational, c: BigRational) -> HypParams {
        HypParams::new(n, b, c).unwrap()
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&rat(3), 2), rat(12));
        assert_eq!(pochhammer(&rat(-17), 0), rat(1));
        assert_eq!(pochhammer(&rat(0), 0), rat(1));
        assert_eq!(pochhammer(&rat(-2), 3), rat(0));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
    }

    #[test]
    fn params_reject_excluded_values() {
        assert!(HypParams::new(4, rat(0), rat(1)).is_err());
        assert!(HypParams::new(4, rat(-3), rat(1)).is_err());
        assert!(HypParams::new(4, rat(6), rat(-2)).is_err());
        assert!(HypParams::new(0, rat(1), rat(1)).is_err());
        // -4 is outside the excluded set for n = 4
        assert!(HypParams::new(4, rat(-4), rat(1)).is_ok());
        assert!(HypParams::new(4, ratio(-5, 2), rat(1)).is_ok());
    }

    #[test]
    fn build_small_degrees() {
        // n = 1, b = 3, c = 2: 1 - (3/2) z
        let p = build_2f1(&hp(1, rat(3), rat(2)));
        assert_eq!(p, RatPoly::from_coeffs(vec![rat(1), ratio(-3, 2)]));

        // n = 2: 1 - (2b/c) z + b(b+1)/(c(c+1)) z^2 at b = 2, c = 1
        let p = build_2f1(&hp(2, rat(2), rat(1)));
        assert_eq!(p, RatPoly::from_integers(&[1, -4, 3]));

        // n = 3 general-shape check at b = 2, c = 1:
        // 1 - 6z + 9z^2 - 4z^3 = (1-z)^2 (1-4z)
        let p = build_2f1(&hp(3, rat(2), rat(1)));
        assert_eq!(p, RatPoly::from_integers(&[1, -6, 9, -4]));
    }

    #[test]
    fn build_constant_term_and_leading_coefficient() {
        for (n, b, c) in [
            (4u32, rat(6), rat(1)),
            (5, ratio(-9, 2), ratio(22, 7)),
            (7, ratio(13, 3), ratio(-8, 5)),
        ] {
            let p = hp(n, b.clone(), c.clone());
            let poly = build_2f1(&p);
            assert_eq!(poly.degree(), Some(n as usize));
            assert_eq!(poly.coeff(0), rat(1));
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            let expect = sign * pochhammer(&b, n) / pochhammer(&c, n);
            assert_eq!(poly.leading_coefficient().unwrap(), &expect);
        }
    }

    #[test]
    fn pfaff_degree_one_by_hand() {
        let p = hp(1, rat(3), rat(2));
        let partner = pfaff_partner(&p).unwrap();
        assert_eq!(partner.scale, ratio(-1, 2));
        assert_eq!(partner.partner.c(), &rat(1));
        assert_eq!(partner.expand(), build_2f1(&p));
    }

    #[test]
    fn pfaff_exact_expansion() {
        for (n, b, c) in [
            (2u32, rat(5), rat(1)),
            (4, ratio(7, 2), ratio(4, 3)),
            (6, ratio(-13, 3), ratio(5, 7)),
        ] {
            let p = hp(n, b, c);
            let partner = pfaff_partner(&p).unwrap();
            assert_eq!(partner.expand(), build_2f1(&p), "n={n}");
        }
    }

    #[test]
    fn pfaff_partner_invalid_on_excluded_third_parameter() {
        // b - c integer in [0, n-1] forces 1-n+b-c into the excluded set
        let p = hp(4, ratio(7, 2), ratio(3, 2));
        assert!(matches!(
            pfaff_partner(&p),
            Err(Hyp2f1Error::PartnerInvalid { .. })
        ));
        let p = hp(2, rat(3), rat(3));
        assert!(matches!(
            pfaff_partner(&p),
            Err(Hyp2f1Error::PartnerInvalid { .. })
        ));
    }

    #[test]
    fn pfaff_involution() {
        for (n, b, c) in [
            (4u32, ratio(7, 2), ratio(4, 3)),
            (5, ratio(-9, 2), ratio(22, 7)),
        ] {
            let p = hp(n, b, c);
            let first = pfaff_partner(&p).unwrap();
            let second = pfaff_partner(&first.partner).unwrap();
            assert_eq!(&second.partner, &p);
            assert_eq!(&first.scale * &second.scale, rat(1));
        }
    }

    #[test]
    fn jacobi_poly_small_cases() {
        // Legendre P_1 = x
        let p = jacobi_poly(&JacobiParams::new(1, rat(0), rat(0))).unwrap();
        assert_eq!(p, RatPoly::variable());
        // P_2^(0,0) = (3x^2 - 1)/2
        let p = jacobi_poly(&JacobiParams::new(2, rat(0), rat(0))).unwrap();
        assert_eq!(
            p,
            RatPoly::from_coeffs(vec![ratio(-1, 2), rat(0), ratio(3, 2)])
        );
        assert_eq!(p.eval(&rat(1)), rat(1)); // P_n(1) = 1 for alpha = 0
                                             // P_1^(1,1) = 2x, against ((alpha+beta+2) x + alpha - beta)/2
        let p = jacobi_poly(&JacobiParams::new(1, rat(1), rat(1))).unwrap();
        assert_eq!(p, RatPoly::from_integers(&[0, 2]));
    }

    #[test]
    fn jacobi_routes_agree() {
        for (n, a, b) in [
            (1u32, rat(0), rat(0)),
            (2, rat(0), rat(0)),
            (3, ratio(-3, 2), ratio(-1, 2)),
            (5, ratio(-2, 3), ratio(3, 5)),
        ] {
            let j = JacobiParams::new(n, a, b);
            assert_eq!(jacobi_poly(&j).unwrap(), jacobi_reference(&j));
        }
    }

    #[test]
    fn representations_hold_exactly() {
        let draws = [
            (1u32, rat(0), rat(0)),
            (2, ratio(-3, 2), ratio(-3, 2)),
            (3, ratio(-3, 2), ratio(-1, 2)),
            (4, ratio(5, 3), ratio(-7, 4)),
            (5, ratio(-2, 3), ratio(3, 5)),
            (6, ratio(-13, 5), ratio(9, 4)),
        ];
        for (n, a, b) in draws {
            let j = JacobiParams::new(n, a, b);
            for rep in [
                JacobiRep::AffineArg,
                JacobiRep::ReciprocalArg,
                JacobiRep::RatioArg,
            ] {
                assert!(
                    verify_jacobi_representation(rep, &j),
                    "rep {rep:?} failed at n={n}"
                );
            }
        }
    }

    #[test]
    fn degenerate_jacobi_parameters_still_verify() {
        // At (n, alpha, beta) = (2, -3/2, -3/2) the printed reciprocal-argument
        // form has third parameter -1 and a vanishing prefactor; the cancelled
        // expansion resolves the 0/0 and the polynomial collapses to -1/8.
        let j = JacobiParams::new(2, ratio(-3, 2), ratio(-3, 2));
        assert_eq!(
            jacobi_reference(&j),
            RatPoly::from_coeffs(vec![ratio(-1, 8)])
        );
        assert!(verify_jacobi_representation(JacobiRep::ReciprocalArg, &j));
        // the direct factory route is undefined there
        assert!(jacobi_poly(&j).is_err());
    }

    #[test]
    fn representations_agree_pairwise() {
        let j = JacobiParams::new(4, ratio(5, 3), ratio(-7, 4));
        let e1 = representation_expansion(JacobiRep::AffineArg, &j);
        let e2 = representation_expansion(JacobiRep::ReciprocalArg, &j);
        let e3 = representation_expansion(JacobiRep::RatioArg, &j);
        assert_eq!(e1, e2);
        assert_eq!(e2, e3);
    }
}
