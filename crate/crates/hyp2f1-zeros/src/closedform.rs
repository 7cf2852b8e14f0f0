//! Closed-form companions of the division sequence: the Pochhammer-quotient
//! `alpha_{k,l}`, the two-step `theta` recurrence with its parity closed
//! forms, the closed forms for the quotients `c_k`, and an exact crosscheck
//! of all of them against an actual sequence run.

use crate::hyp2f1::{build_2f1, pochhammer, HypParams};
use crate::ratpoly::{rat, ratio, BigRational, RatPoly};
use crate::sturm::{run_sequence, SturmError};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("recurrence seed undefined: {reason}")]
    SeedUndefined { reason: String },
    #[error("denominator factor {factor} vanishes")]
    DenominatorVanishes { factor: String },
    #[error("index k = {k} outside the valid range 1..={max} for degree {n}")]
    IndexOutOfRange { k: u32, n: u32, max: u32 },
    #[error("trace is not generic ({reason}); crosscheck does not apply")]
    TraceDegenerate { reason: String },
    #[error(transparent)]
    Trace(#[from] SturmError),
}

/// The quotient of six Pochhammer symbols controlling the theta recurrence.
/// Inputs are taken raw so boundary values can be probed directly.
pub fn alpha_raw(
    k: i64,
    l: u32,
    n: i64,
    b: &BigRational,
    c: &BigRational,
) -> Result<BigRational, ClosedFormError> {
    let num = [
        (ratio(k - n, 2), "((k-n)/2)_l"),
        ((rat(2 * k - n - 3) - b) / rat(4), "((2k-n-b-3)/4)_l"),
        ((rat(k - 1) - b + c) / rat(2), "((k-b-1+c)/2)_l"),
    ];
    let den = [
        ((rat(k - 2) - b) / rat(2), "((k-b-2)/2)_l"),
        ((rat(2 * k - 1 - n) - b) / rat(4), "((2k-b-1-n)/4)_l"),
        ((rat(k - n - 1) - c) / rat(2), "((k-n-1-c)/2)_l"),
    ];
    let mut acc = BigRational::one();
    for (base, _) in &num {
        acc *= pochhammer(base, l);
    }
    for (base, name) in &den {
        let factor = pochhammer(base, l);
        if factor.is_zero() {
            return Err(ClosedFormError::DenominatorVanishes {
                factor: format!("{name} with base {base} at l={l}"),
            });
        }
        acc /= factor;
    }
    Ok(acc)
}

/// `alpha_{k,l}` for valid hypergeometric parameters.
pub fn alpha(k: u32, l: u32, p: &HypParams) -> Result<BigRational, ClosedFormError> {
    alpha_raw(i64::from(k), l, i64::from(p.n()), p.b(), p.c())
}

/// The sequence `theta_1, ..., theta_{n-1}` scaling the division chain,
/// together with the parameters it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSequence {
    params: HypParams,
    values: Vec<BigRational>,
}

impl ThetaSequence {
    /// `theta_k`, one-based.
    pub fn theta(&self, k: u32) -> Option<&BigRational> {
        self.values.get(k as usize - 1)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn params(&self) -> &HypParams {
        &self.params
    }
}

fn theta_seeds(p: &HypParams) -> Result<(BigRational, BigRational), ClosedFormError> {
    let n = rat(i64::from(p.n()));
    if p.c().is_zero() {
        return Err(ClosedFormError::SeedUndefined {
            reason: "c = 0".into(),
        });
    }
    let shifted = p.b() + &n - rat(1);
    if shifted.is_zero() {
        return Err(ClosedFormError::SeedUndefined {
            reason: "b + n - 1 = 0".into(),
        });
    }
    let theta1 = -(&n * p.b()) / p.c();
    let theta2 = (p.b() - p.c()) * (&n - rat(1)) / (p.c() * shifted);
    Ok((theta1, theta2))
}

/// Run the two-step recurrence `theta_{k+1} = alpha_{k,1} theta_{k-1}` from
/// the two seeds, producing `theta_1 ..= theta_{n-1}`.
pub fn theta_by_recurrence(p: &HypParams) -> Result<ThetaSequence, ClosedFormError> {
    let n = p.n();
    let (theta1, theta2) = theta_seeds(p)?;
    let mut values = vec![theta1];
    if n >= 3 {
        values.push(theta2);
    }
    for k in 2..=n.saturating_sub(2) {
        let step = alpha(k, 1, p)?;
        let prev = values[k as usize - 2].clone();
        values.push(step * prev);
    }
    Ok(ThetaSequence {
        params: p.clone(),
        values,
    })
}

/// Parity closed forms: `theta_{2m} = (b+1)(n+c) / (c(n+b+1)) * alpha_{1,m}`
/// and `theta_{2m+1} = -(n b / c) * alpha_{2,m}`, with the index ranges
/// `1 <= m <= floor((n-1)/2)` and `0 <= m <= floor((n-2)/2)` respectively.
pub fn theta_closed_form(k: u32, p: &HypParams) -> Result<BigRational, ClosedFormError> {
    let n = p.n();
    if k == 0 || k > n - 1 {
        return Err(ClosedFormError::IndexOutOfRange { k, n, max: n - 1 });
    }
    let nn = rat(i64::from(n));
    if k.is_multiple_of(2) {
        let m = k / 2;
        if m > (n - 1) / 2 {
            return Err(ClosedFormError::IndexOutOfRange { k, n, max: n - 1 });
        }
        let denom = p.c() * (&nn + p.b() + rat(1));
        if denom.is_zero() {
            return Err(ClosedFormError::DenominatorVanishes {
                factor: "c (n + b + 1)".into(),
            });
        }
        let prefactor = (p.b() + rat(1)) * (&nn + p.c()) / denom;
        Ok(prefactor * alpha(1, m, p)?)
    } else {
        let m = (k - 1) / 2;
        if m > (n - 2) / 2 {
            return Err(ClosedFormError::IndexOutOfRange { k, n, max: n - 1 });
        }
        let prefactor = -(&nn * p.b()) / p.c();
        Ok(prefactor * alpha(2, m, p)?)
    }
}

/// Factors of the closed form for `c_k`, `k >= 2`; used by the mutation
/// harness to demonstrate that a single sign error is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CkFactor {
    Num1,
    Num2,
    Num3,
    Num4,
    Den1,
    Den2,
    DenSq,
}

impl CkFactor {
    pub const ALL: [CkFactor; 7] = [
        CkFactor::Num1,
        CkFactor::Num2,
        CkFactor::Num3,
        CkFactor::Num4,
        CkFactor::Den1,
        CkFactor::Den2,
        CkFactor::DenSq,
    ];

    /// The linear factor this token denotes.
    pub fn expression(&self) -> &'static str {
        match self {
            CkFactor::Num1 => "n-k",
            CkFactor::Num2 => "n+c-k",
            CkFactor::Num3 => "b+1-k",
            CkFactor::Num4 => "b-c+1-k",
            CkFactor::Den1 => "n+b+2-2k",
            CkFactor::Den2 => "n+b-2k",
            CkFactor::DenSq => "(n+b+1-2k)^2",
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            CkFactor::Num1 => "num1",
            CkFactor::Num2 => "num2",
            CkFactor::Num3 => "num3",
            CkFactor::Num4 => "num4",
            CkFactor::Den1 => "den1",
            CkFactor::Den2 => "den2",
            CkFactor::DenSq => "densq",
        }
    }
}

impl FromStr for CkFactor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CkFactor::ALL
            .iter()
            .copied()
            .find(|f| f.token() == s)
            .ok_or_else(|| {
                format!("unknown factor {s:?}; expected one of num1..num4, den1, den2, densq")
            })
    }
}

/// Closed form for the quotient `c_k`:
/// `(n-1)(n+c-1)(b-c) / ((n+b-2)(n+b-1)^2)` at `k = 1` and
/// `(n-k)(n+c-k)(b+1-k)(b-c+1-k) / ((n+b+2-2k)(n+b-2k)(n+b+1-2k)^2)` for
/// `k = 2 ..= n-1`.
pub fn c_closed_form(k: u32, p: &HypParams) -> Result<BigRational, ClosedFormError> {
    c_closed_form_mutated(k, p, None)
}

/// Same as [`c_closed_form`] but with an optional single-factor sign flip in
/// the `k >= 2` formula. The flipped variant exists only so the verification
/// suite can prove it would catch such a defect.
pub fn c_closed_form_mutated(
    k: u32,
    p: &HypParams,
    flip: Option<CkFactor>,
) -> Result<BigRational, ClosedFormError> {
    let n = p.n();
    if k == 0 || k > n - 1 {
        return Err(ClosedFormError::IndexOutOfRange { k, n, max: n - 1 });
    }
    let nn = rat(i64::from(n));
    let kk = rat(i64::from(k));
    let (b, c) = (p.b(), p.c());
    if k == 1 {
        let d1 = &nn + b - rat(2);
        let d2 = &nn + b - rat(1);
        if d1.is_zero() || d2.is_zero() {
            return Err(ClosedFormError::DenominatorVanishes {
                factor: if d1.is_zero() { "n+b-2" } else { "(n+b-1)^2" }.into(),
            });
        }
        return Ok((&nn - rat(1)) * (&nn + c - rat(1)) * (b - c) / (d1 * (&d2 * &d2)));
    }
    let mutate = |which: CkFactor, v: BigRational| -> BigRational {
        if flip == Some(which) {
            -v
        } else {
            v
        }
    };
    let num1 = mutate(CkFactor::Num1, &nn - &kk);
    let num2 = mutate(CkFactor::Num2, &nn + c - &kk);
    let num3 = mutate(CkFactor::Num3, b + rat(1) - &kk);
    let num4 = mutate(CkFactor::Num4, b - c + rat(1) - &kk);
    let den1 = &nn + b + rat(2) - rat(2) * &kk;
    let den2 = &nn + b - rat(2) * &kk;
    let den3 = &nn + b + rat(1) - rat(2) * &kk;
    for (v, name) in [
        (&den1, "n+b+2-2k"),
        (&den2, "n+b-2k"),
        (&den3, "(n+b+1-2k)^2"),
    ] {
        if v.is_zero() {
            return Err(ClosedFormError::DenominatorVanishes {
                factor: name.into(),
            });
        }
    }
    let den1 = mutate(CkFactor::Den1, den1);
    let den2 = mutate(CkFactor::Den2, den2);
    let densq = mutate(CkFactor::DenSq, &den3 * &den3);
    Ok(num1 * num2 * num3 * num4 / (den1 * den2 * densq))
}

/// The predicted polynomial `theta_k * F(-n+k, b+2-k; c+1; z)` for step `k`,
/// or `None` when either the scale or the shifted parameters are undefined.
pub fn theta_form(k: u32, p: &HypParams) -> Option<RatPoly> {
    if k == 0 || k >= p.n() {
        return None;
    }
    let thetas = theta_by_recurrence(p).ok()?;
    let theta = thetas.theta(k)?.clone();
    let sub = HypParams::new(
        p.n() - k,
        p.b() + rat(2) - rat(i64::from(k)),
        p.c() + rat(1),
    )
    .ok()?;
    Some(build_2f1(&sub).scale(&theta))
}

/// One row of a crosscheck report. `c_closed`, `theta` and
/// `proportionality_ok` are `None` where the corresponding closed form is
/// undefined at these parameters (noted, not failed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckEntry {
    pub k: u32,
    #[serde(with = "crate::ratpoly::rational_str")]
    pub c_trace: BigRational,
    #[serde(with = "crate::ratpoly::rational_str_opt")]
    pub c_closed: Option<BigRational>,
    #[serde(with = "crate::ratpoly::rational_str_opt")]
    pub theta: Option<BigRational>,
    pub proportionality_ok: Option<bool>,
}

impl CrosscheckEntry {
    pub fn c_matches(&self) -> bool {
        self.c_closed.as_ref().is_none_or(|v| v == &self.c_trace)
    }
}

/// Exact comparison of a sequence run against every closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub n: u32,
    pub b: String,
    pub c: String,
    pub entries: Vec<CrosscheckEntry>,
    pub notes: Vec<String>,
    pub all_ok: bool,
}

/// Run the sequence on the polynomial for `p` and compare, for every step,
/// the traced `c_k` with its closed form and the traced `f_k` with
/// `theta_k * F(-n+k, b+2-k; c+1; z)`.
///
/// The trace must be generic: every remainder drops exactly one degree, and
/// a derivative branch is tolerated only at the final step `k = n-1` (where
/// the closed form itself vanishes on a region boundary).
pub fn crosscheck(p: &HypParams) -> Result<CrosscheckReport, ClosedFormError> {
    crosscheck_with(p, None)
}

/// [`crosscheck`] with an optional injected sign flip, for the mutation
/// sensitivity harness.
pub fn crosscheck_with(
    p: &HypParams,
    flip: Option<CkFactor>,
) -> Result<CrosscheckReport, ClosedFormError> {
    let n = p.n();
    let trace = run_sequence(&build_2f1(p))?;
    let required = n as usize - 1;
    let c_values: Vec<BigRational> = trace.steps.iter().filter_map(|s| s.c.clone()).collect();
    if c_values.len() != required {
        return Err(ClosedFormError::TraceDegenerate {
            reason: format!(
                "early degree drop left {} quotients instead of {}",
                c_values.len(),
                required
            ),
        });
    }
    for step in &trace.steps {
        if step.took_derivative_branch && step.k < required {
            return Err(ClosedFormError::TraceDegenerate {
                reason: format!("derivative branch at interior step {}", step.k),
            });
        }
    }

    let thetas = theta_by_recurrence(p).ok();
    let mut notes = Vec::new();
    let mut all_ok = true;
    let mut entries = Vec::with_capacity(required);
    for k in 1..=required as u32 {
        let c_trace = c_values[k as usize - 1].clone();
        let c_closed = match c_closed_form_mutated(k, p, flip) {
            Ok(v) => Some(v),
            Err(ClosedFormError::DenominatorVanishes { factor }) => {
                notes.push(format!("c_{k}: closed form undefined ({factor})"));
                None
            }
            Err(e) => return Err(e),
        };
        let theta = thetas.as_ref().and_then(|t| t.theta(k)).cloned();
        let predicted = theta_form(k, p);
        let proportionality_ok = predicted.map(|poly| poly == trace.steps[k as usize].f);
        if theta.is_none() {
            notes.push(format!("theta_{k}: recurrence undefined"));
        }
        let entry = CrosscheckEntry {
            k,
            c_trace,
            c_closed,
            theta,
            proportionality_ok,
        };
        all_ok &= entry.c_matches() && entry.proportionality_ok != Some(false);
        entries.push(entry);
    }
    Ok(CrosscheckReport {
        n,
        b: p.b().to_string(),
        c: p.c().to_string(),
        entries,
        notes,
        all_ok,
    })
}
