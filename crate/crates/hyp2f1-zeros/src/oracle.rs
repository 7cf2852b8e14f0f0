//! Floating-point ground truth: find all complex roots of a `RatPoly` by
//! simultaneous (Ehrlich-Aberth) iteration and bucket them into the
//! intervals `(-inf,0)`, `(0,1)`, `(1,inf)` for cross-validation of the
//! exact classifiers.
//!
//! The exact sequence module remains the rigorous authority; this module
//! exists to catch implementation mistakes, not to certify roots.

use crate::ratpoly::{BigRational, RatPoly};
use crate::regions::{CensusSource, ZeroReport};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("root finding needs degree >= 1 (got {0:?})")]
    DegreeTooSmall(Option<usize>),
    #[error("coefficient {index} does not convert to a finite double after scaling")]
    ConversionOverflow { index: usize },
    #[error("no convergence after {iterations} iterations (worst residual {max_residual:e})")]
    NoConvergence { iterations: u32, max_residual: f64 },
    #[error("roots {near:?} are within the boundary tolerance of 0 or 1; census refused")]
    BoundaryAmbiguity { near: Vec<f64> },
    #[error("{nonreal} roots are not real within tolerance")]
    NotAllReal { nonreal: usize },
}

/// Tolerances for the numeric census.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Imaginary parts below this are treated as zero.
    pub tol_real: f64,
    /// Real roots closer than this to 0 or 1 make the census fail loudly.
    pub tol_bnd: f64,
    /// Minimum pairwise distance certifying numeric simplicity.
    pub tol_gap: f64,
    /// Upper bound on the scaled residual of every accepted root.
    pub residual_bound: f64,
    pub max_iter: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            tol_real: 1e-8,
            tol_bnd: 1e-9,
            tol_gap: 1e-9,
            residual_bound: 1e-10,
            max_iter: 600,
        }
    }
}

/// All roots of a polynomial, sorted by real part then imaginary part,
/// with per-root scaled residuals and the tolerances used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    #[serde(with = "complex_pairs")]
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub tolerances: OracleConfig,
}

mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [z.re, z.im])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}

/// Convert with ~64 significant bits regardless of the magnitude of the
/// numerator and denominator; `BigInt::to_f64` alone turns huge/huge into
/// inf/inf.
fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let shift = 64i64 - (numer.bits() as i64 - denom.bits() as i64);
    let quotient: BigInt = if shift >= 0 {
        (numer << shift as u64) / denom
    } else {
        numer / (denom << (-shift) as u64)
    };
    let q = quotient.to_f64().unwrap_or(f64::NAN);
    let scale = if shift.unsigned_abs() > 2000 {
        if shift > 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        2f64.powi(-(shift as i32))
    };
    q * scale
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn scaled_residual(coeffs: &[f64], z: Complex64) -> f64 {
    if !z.re.is_finite() || !z.im.is_finite() {
        return f64::INFINITY;
    }
    let (p, _) = horner(coeffs, z);
    let base = z.norm().max(1.0);
    let mut scale = 0.0;
    let mut pw = 1.0;
    for &a in coeffs {
        scale += a.abs() * pw;
        pw *= base;
    }
    let r = p.norm() / scale;
    if r.is_finite() {
        r
    } else {
        f64::INFINITY
    }
}

/// Find all `deg(p)` complex roots by Ehrlich-Aberth iteration.
///
/// Coefficients are divided by the largest absolute coefficient in exact
/// arithmetic before conversion (roots are scale invariant). Convergence is
/// accepted when the relative correction drops to rounding level or every
/// scaled residual is within `cfg.residual_bound`.
pub fn find_roots(p: &RatPoly, cfg: &OracleConfig) -> Result<RootSet, OracleError> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        other => return Err(OracleError::DegreeTooSmall(other)),
    };
    let max_abs = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonzero polynomial");
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| ratio_to_f64(&(c / &max_abs)))
        .collect();
    if let Some(index) = coeffs.iter().position(|a| !a.is_finite()) {
        return Err(OracleError::ConversionOverflow { index });
    }
    if coeffs[deg] == 0.0 {
        // leading coefficient underflowed relative to the largest one
        return Err(OracleError::ConversionOverflow { index: deg });
    }

    let lead = coeffs[deg];
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|a| (a / lead).abs())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / (deg as f64) + 0.45;
            let r = radius * (0.55 + 0.4 * (i as f64 + 1.0) / (deg as f64));
            Complex64::from_polar(r, angle)
        })
        .collect();

    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let z = roots[i];
            let (pv, dv) = horner(&coeffs, z);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() == 0.0 {
                // sitting on a critical point: nudge off it
                Complex64::new(1e-8, 1e-8)
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, w) in roots.iter().enumerate() {
                if j != i {
                    let diff = z - w;
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            let next = z - step;
            if !next.re.is_finite() || !next.im.is_finite() {
                // diverged iterate; pull it back inside the root bound
                roots[i] = Complex64::from_polar(radius, 0.37 + i as f64);
                max_step = f64::INFINITY;
                continue;
            }
            roots[i] = next;
            max_step = max_step.max(step.norm() / (1.0 + next.norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }

    // the residual bound is the acceptance test; a step-stalled iteration
    // (e.g. at a multiple root) still passes when the residuals are tiny
    let residuals: Vec<f64> = roots.iter().map(|&z| scaled_residual(&coeffs, z)).collect();
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    if max_residual > cfg.residual_bound {
        return Err(OracleError::NoConvergence {
            iterations,
            max_residual,
        });
    }

    let mut order: Vec<usize> = (0..deg).collect();
    order.sort_by(|&a, &b| {
        (roots[a].re, roots[a].im)
            .partial_cmp(&(roots[b].re, roots[b].im))
            .expect("finite roots")
    });
    let roots: Vec<Complex64> = order.iter().map(|&i| roots[i]).collect();
    let residuals: Vec<f64> = order.iter().map(|&i| residuals[i]).collect();
    Ok(RootSet {
        roots,
        residuals,
        tolerances: *cfg,
    })
}

/// Bucket the roots into the three real intervals. Real roots within the
/// boundary tolerance of 0 or 1 abort the census instead of being binned.
pub fn census(rs: &RootSet) -> Result<ZeroReport, OracleError> {
    let cfg = &rs.tolerances;
    let (mut neg, mut unit, mut tail, mut nonreal) = (0u32, 0u32, 0u32, 0u32);
    let mut near = Vec::new();
    for z in &rs.roots {
        if z.im.abs() >= cfg.tol_real {
            nonreal += 1;
            continue;
        }
        let x = z.re;
        if x.abs() <= cfg.tol_bnd || (x - 1.0).abs() <= cfg.tol_bnd {
            near.push(x);
            continue;
        }
        if x < 0.0 {
            neg += 1;
        } else if x < 1.0 {
            unit += 1;
        } else {
            tail += 1;
        }
    }
    if !near.is_empty() {
        return Err(OracleError::BoundaryAmbiguity { near });
    }
    Ok(ZeroReport {
        neg,
        unit,
        tail,
        nonreal,
        source: CensusSource::Numeric,
    })
}

/// Minimum pairwise distance between the (all-real) roots; the numeric
/// simplicity witness.
pub fn min_gap(rs: &RootSet) -> Result<f64, OracleError> {
    let cfg = &rs.tolerances;
    let nonreal = rs
        .roots
        .iter()
        .filter(|z| z.im.abs() >= cfg.tol_real)
        .count();
    if nonreal > 0 {
        return Err(OracleError::NotAllReal { nonreal });
    }
    let mut gap = f64::INFINITY;
    for i in 0..rs.roots.len() {
        for j in i + 1..rs.roots.len() {
            gap = gap.min((rs.roots[i].re - rs.roots[j].re).abs());
        }
    }
    Ok(gap)
}
