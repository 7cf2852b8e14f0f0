//! The division-algorithm sequence that decides whether all zeros of a real
//! polynomial are real and simple.
//!
//! Starting from `f_0 = f` and `f_1 = f'`, each step divides with a flipped
//! remainder sign, `f_{k-1} = q_{k-1} f_k - r_k`, takes `f_{k+1} = r_k` (or
//! the derivative of `f_k` when the remainder vanishes) and records
//! `c_k = lc(f_{k+1}) / lc(f_{k-1})` (zero on the derivative branch). The
//! signs of `c_1, ..., c_{n-1}` decide the zero nature: all positive means
//! real and simple, all nonnegative with a zero means real with a repeated
//! zero, and any negative means a nonreal pair exists.

use crate::hyp2f1::{build_2f1, HypParams};
use crate::ratpoly::{rational_str_opt, BigRational, RatPoly};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SturmError {
    #[error("input degree {degree:?} is below 2")]
    DegreeTooSmall { degree: Option<usize> },
    #[error("sequence terminated after {produced} quotients where {required} are needed, with no negative value to decide; the sign criterion does not apply")]
    IndeterminateTrace { produced: usize, required: usize },
}

/// Verdict of the sign criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroNature {
    AllRealSimple,
    AllRealWithMultiple,
    HasNonReal,
}

impl std::fmt::Display for ZeroNature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ZeroNature::AllRealSimple => "all_real_simple",
            ZeroNature::AllRealWithMultiple => "all_real_with_multiple",
            ZeroNature::HasNonReal => "has_non_real",
        };
        write!(f, "{s}")
    }
}

/// One entry of the sequence. Record `k` holds `f_k` together with the
/// products of the division of `f_{k-1}` by `f_k`: the quotient, the
/// sign-flipped remainder (absent on the derivative branch), the branch flag
/// and `c_k`. The seed record `k = 0` and the terminal constant record carry
/// only the polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub k: usize,
    pub f: RatPoly,
    pub quotient: Option<RatPoly>,
    pub remainder: Option<RatPoly>,
    pub took_derivative_branch: bool,
    #[serde(with = "rational_str_opt")]
    pub c: Option<BigRational>,
    /// Set by [`classify_2f1`]: whether `f_k` matches the closed-form
    /// prediction `theta_k * F(-n+k, b+2-k; c+1; z)` exactly.
    pub theta_form_ok: Option<bool>,
}

/// Full record of a run, plus the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTrace {
    pub steps: Vec<StepRecord>,
    pub classification: ZeroNature,
}

impl SequenceTrace {
    /// The recorded `c_k` values in order, `k = 1, 2, ...`.
    pub fn c_values(&self) -> Vec<&BigRational> {
        self.steps.iter().filter_map(|s| s.c.as_ref()).collect()
    }

    /// Degree of the input polynomial `f_0`.
    pub fn input_degree(&self) -> usize {
        self.steps[0].f.degree().unwrap_or(0)
    }
}

/// Run the division sequence on `f` (degree at least 2).
///
/// A generic run of degree `n` produces exactly `n - 1` values `c_k`; the
/// sign pattern then classifies per the criterion. A remainder that skips
/// more than one degree shortens the run, and a short run without any
/// negative `c_k` is reported as [`SturmError::IndeterminateTrace`] rather
/// than interpreted.
pub fn run_sequence(f: &RatPoly) -> Result<SequenceTrace, SturmError> {
    let n = match f.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(SturmError::DegreeTooSmall { degree: other }),
    };

    let mut steps = vec![StepRecord {
        k: 0,
        f: f.clone(),
        quotient: None,
        remainder: None,
        took_derivative_branch: false,
        c: None,
        theta_form_ok: None,
    }];
    let mut prev = f.clone();
    let mut cur = f.derivative();
    let mut k = 1usize;
    let mut c_values: Vec<BigRational> = Vec::new();

    while cur.degree().is_some_and(|d| d > 0) {
        let (quotient, std_rem) = prev
            .divide(&cur)
            .expect("degrees strictly decrease along the sequence");
        let (next, remainder, took_derivative_branch, c) = if std_rem.is_zero() {
            (
                cur.derivative(),
                None,
                true,
                BigRational::from_integer(0.into()),
            )
        } else {
            let r = -&std_rem;
            let c = r.leading_coefficient().expect("nonzero remainder")
                / prev.leading_coefficient().expect("nonconstant dividend");
            (r.clone(), Some(r), false, c)
        };
        c_values.push(c.clone());
        steps.push(StepRecord {
            k,
            f: cur.clone(),
            quotient: Some(quotient),
            remainder,
            took_derivative_branch,
            c: Some(c),
            theta_form_ok: None,
        });
        prev = cur;
        cur = next;
        k += 1;
    }
    steps.push(StepRecord {
        k,
        f: cur,
        quotient: None,
        remainder: None,
        took_derivative_branch: false,
        c: None,
        theta_form_ok: None,
    });

    let required = n - 1;
    let negatives = c_values.iter().any(|c| c.is_negative());
    let zeros = c_values.iter().any(|c| c.is_zero());
    let classification = if negatives {
        ZeroNature::HasNonReal
    } else if c_values.len() < required {
        return Err(SturmError::IndeterminateTrace {
            produced: c_values.len(),
            required,
        });
    } else if zeros {
        ZeroNature::AllRealWithMultiple
    } else {
        ZeroNature::AllRealSimple
    };

    Ok(SequenceTrace {
        steps,
        classification,
    })
}

/// Build the hypergeometric polynomial for `p` and run the sequence,
/// annotating each interior step with whether `f_k` equals the closed-form
/// prediction `theta_k * F(-n+k, b+2-k; c+1; z)` (when that prediction is
/// itself defined).
pub fn classify_2f1(p: &HypParams) -> Result<SequenceTrace, SturmError> {
    let mut trace = run_sequence(&build_2f1(p))?;
    let n = p.n() as usize;
    for step in trace.steps.iter_mut() {
        if step.k >= 1 && step.k < n {
            step.theta_form_ok = crate::closedform::theta_form(step.k as u32, p)
                .map(|predicted| predicted == step.f);
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, ratio};

    #[test]
    fn square_minus_one_is_real_simple() {
        let trace = run_sequence(&RatPoly::from_integers(&[-1, 0, 1])).unwrap();
        assert_eq!(trace.classification, ZeroNature::AllRealSimple);
        assert_eq!(trace.c_values(), vec![&rat(1)]);
    }

    #[test]
    fn square_plus_one_has_nonreal_pair() {
        let trace = run_sequence(&RatPoly::from_integers(&[1, 0, 1])).unwrap();
        assert_eq!(trace.classification, ZeroNature::HasNonReal);
        assert_eq!(trace.c_values(), vec![&rat(-1)]);
    }

    #[test]
    fn double_zero_takes_derivative_branch() {
        let trace = run_sequence(&RatPoly::from_integers(&[0, 0, 1])).unwrap();
        assert_eq!(trace.classification, ZeroNature::AllRealWithMultiple);
        assert_eq!(trace.c_values(), vec![&rat(0)]);
        assert!(trace.steps[1].took_derivative_branch);
        assert!(trace.steps[1].remainder.is_none());
    }

    #[test]
    fn degree_guard() {
        assert_eq!(
            run_sequence(&RatPoly::from_integers(&[3, 1])),
            Err(SturmError::DegreeTooSmall { degree: Some(1) })
        );
        assert_eq!(
            run_sequence(&RatPoly::zero()),
            Err(SturmError::DegreeTooSmall { degree: None })
        );
    }

    #[test]
    fn early_degree_drop_is_reported_not_guessed() {
        // z^4 - z: the first remainder drops from degree 3 to 1, so only two
        // quotients appear and both are positive; the criterion is silent.
        let f = RatPoly::from_integers(&[0, -1, 0, 0, 1]);
        assert_eq!(
            run_sequence(&f),
            Err(SturmError::IndeterminateTrace {
                produced: 2,
                required: 3
            })
        );
    }

    #[test]
    fn early_drop_with_negative_still_decides() {
        // z^4 + 1: single step, c_1 = -1 < 0 decides nonreal regardless of count.
        let f = RatPoly::from_integers(&[1, 0, 0, 0, 1]);
        let trace = run_sequence(&f).unwrap();
        assert_eq!(trace.classification, ZeroNature::HasNonReal);
        assert_eq!(trace.c_values(), vec![&rat(-1)]);
    }

    #[test]
    fn reconstruction_along_the_trace() {
        let p = HypParams::new(4, rat(6), rat(1)).unwrap();
        let trace = classify_2f1(&p).unwrap();
        for k in 1..trace.steps.len() - 1 {
            let step = &trace.steps[k];
            if step.took_derivative_branch {
                continue;
            }
            let q = step.quotient.as_ref().unwrap();
            let f_next = &trace.steps[k + 1].f;
            let lhs = &trace.steps[k - 1].f;
            assert_eq!(lhs, &(&(q * &step.f) - f_next), "step {k}");
        }
    }

    #[test]
    fn classify_factored_quadratic() {
        // (1 - z)(1 - 3z) = 1 - 4z + 3z^2, zeros 1/3 and 1
        let p = HypParams::new(2, rat(2), rat(1)).unwrap();
        let trace = classify_2f1(&p).unwrap();
        assert_eq!(trace.classification, ZeroNature::AllRealSimple);
        assert_eq!(trace.c_values(), vec![&ratio(1, 9)]);
    }

    #[test]
    fn classify_interior_and_exterior_points() {
        let inside = HypParams::new(4, rat(6), rat(1)).unwrap();
        assert_eq!(
            classify_2f1(&inside).unwrap().classification,
            ZeroNature::AllRealSimple
        );
        let outside = HypParams::new(4, ratio(1, 2), rat(1)).unwrap();
        assert_eq!(
            classify_2f1(&outside).unwrap().classification,
            ZeroNature::HasNonReal
        );
    }

    #[test]
    fn binomial_power_case_is_all_real_with_multiple() {
        // b = c gives (1 - z)^n
        let p = HypParams::new(4, rat(1), rat(1)).unwrap();
        let trace = classify_2f1(&p).unwrap();
        assert_eq!(trace.classification, ZeroNature::AllRealWithMultiple);
        assert_eq!(trace.c_values(), vec![&rat(0), &rat(0), &rat(0)]);
    }

    #[test]
    fn frozen_trace_for_interior_point() {
        let p = HypParams::new(4, rat(6), rat(1)).unwrap();
        let trace = classify_2f1(&p).unwrap();
        assert_eq!(
            trace.c_values(),
            vec![&ratio(5, 54), &ratio(5, 98), &ratio(1, 25)]
        );
        // every interior step matches the closed-form shape
        for step in &trace.steps[1..4] {
            assert_eq!(step.theta_form_ok, Some(true), "step {}", step.k);
        }
    }

    #[test]
    fn positive_scaling_preserves_signs() {
        let f = build_2f1(&HypParams::new(4, rat(6), rat(1)).unwrap());
        let scaled = f.scale(&ratio(7, 3));
        let a = run_sequence(&f).unwrap();
        let b = run_sequence(&scaled).unwrap();
        assert_eq!(a.classification, b.classification);
        let signs = |t: &SequenceTrace| t.c_values().iter().map(|c| c.signum()).collect::<Vec<_>>();
        assert_eq!(signs(&a), signs(&b));
    }

    #[test]
    fn trace_json_round_trip_is_bit_exact() {
        let p = HypParams::new(3, ratio(-7, 2), ratio(5, 3)).unwrap();
        let trace = classify_2f1(&p).unwrap();
        let json = serde_json::to_string(&trace).unwrap();
        let back: SequenceTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, trace);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
