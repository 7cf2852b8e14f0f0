//! The verification suite: every classification claim the library makes,
//! exercised end to end at two effort levels. The CLI `verify` command and
//! the acceptance test target both run these checks.

use crate::closedform::{crosscheck_with, theta_by_recurrence, theta_closed_form, CkFactor};
use crate::hyp2f1::{
    build_2f1, pfaff_partner, verify_jacobi_representation, HypParams, JacobiParams, JacobiRep,
};
use crate::oracle::{census, find_roots, min_gap, OracleConfig};
use crate::ratpoly::{rat, ratio, BigRational, RatPoly};
use crate::regions::{
    boundary_clearance, main_region, predict_counts, scan_clearance, smalln_real_simple, LineSet,
    Prediction, RegionScheme,
};
use crate::sturm::{run_sequence, ZeroNature};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::time::Instant;

/// Suite effort. `Quick` trims grids and draw counts for interactive runs;
/// `Full` runs the complete acceptance workload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Result of one suite check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckOutcome {
    fn finish(name: &'static str, started: Instant, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name,
            passed,
            detail,
            millis: started.elapsed().as_millis(),
        }
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

/// Run every check. `mutate` injects a sign flip into the closed form for
/// `c_k` so the mutation-sensitivity harness can demonstrate detection.
pub fn run_suite(level: Level, mutate: Option<CkFactor>) -> Vec<CheckOutcome> {
    vec![
        check_region_equivalence(level),
        check_smalln_equivalence(level),
        check_closed_form_crosscheck(level, mutate),
        check_theta_closed_forms(level),
        check_pfaff_identity(level),
        check_jacobi_representations(level),
        check_census_predictions(level),
        check_derivative_branch(level),
        check_oracle_agreement(level),
    ]
}

/// Margin kept from every boundary line in grid sweeps.
fn margin() -> BigRational {
    ratio(1, 20)
}

/// Half-integer grid over `[lo, hi]`.
fn half_grid(lo: i64, hi: i64) -> Vec<BigRational> {
    (2 * lo..=2 * hi).map(|k| ratio(k, 2)).collect()
}

/// Degree-by-degree sweep: the exact sign classifier agrees with strict
/// region membership at every margin-safe grid point.
pub fn check_region_equivalence(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let (degrees, span): (Vec<u32>, i64) = match level {
        Level::Quick => ((4..=6).collect(), 8),
        Level::Full => ((4..=10).collect(), 12),
    };
    let values = half_grid(-span, span);
    let results: Vec<(usize, Vec<String>)> = degrees
        .par_iter()
        .flat_map(|&n| values.par_iter().map(move |c| (n, c)))
        .map(|(n, c)| {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for b in &values {
                let p = match HypParams::new(n, b.clone(), c.clone()) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                if boundary_clearance(LineSet::MainRegions, n, b, c) < margin() {
                    continue;
                }
                checked += 1;
                let label = main_region(&p).expect("degree checked");
                let inside = matches!(
                    label.scheme,
                    RegionScheme::R1 | RegionScheme::R2 | RegionScheme::R3 | RegionScheme::R4
                );
                let simple = matches!(
                    run_sequence(&build_2f1(&p)),
                    Ok(t) if t.classification == ZeroNature::AllRealSimple
                );
                if inside != simple {
                    bad.push(format!(
                        "n={n} b={b} c={c}: region says {} but sequence says {}",
                        inside, simple
                    ));
                }
            }
            (checked, bad)
        })
        .collect();
    let checked: usize = results.iter().map(|(c, _)| c).sum();
    let mismatches: Vec<String> = results.into_iter().flat_map(|(_, b)| b).collect();
    let passed = mismatches.is_empty() && checked > 1000;
    let detail = if mismatches.is_empty() {
        format!("{checked} grid points, zero mismatches")
    } else {
        format!(
            "{checked} grid points, {} mismatches; first: {}",
            mismatches.len(),
            mismatches[0]
        )
    };
    CheckOutcome::finish("region-equivalence", started, passed, detail)
}

/// Grid sweep for degrees 2 and 3: the sequence verdict matches the sign
/// trichotomy of the exact witness at every admissible grid point.
pub fn check_smalln_equivalence(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let span = match level {
        Level::Quick => 8,
        Level::Full => 12,
    };
    let values = half_grid(-span, span);
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for n in [2u32, 3] {
        for c in &values {
            for b in &values {
                let p = match HypParams::new(n, b.clone(), c.clone()) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                checked += 1;
                let (_, witness) = smalln_real_simple(&p).expect("n is 2 or 3");
                let expected = if witness.is_positive() {
                    ZeroNature::AllRealSimple
                } else if witness.is_zero() {
                    ZeroNature::AllRealWithMultiple
                } else {
                    ZeroNature::HasNonReal
                };
                match run_sequence(&build_2f1(&p)) {
                    Ok(t) if t.classification == expected => {}
                    other => mismatches.push(format!(
                        "n={n} b={b} c={c}: witness {witness} expects {expected:?}, got {other:?}"
                    )),
                }
            }
        }
    }
    let passed = mismatches.is_empty() && checked > 500;
    let detail = if mismatches.is_empty() {
        format!("{checked} grid points, zero mismatches")
    } else {
        format!("{} mismatches; first: {}", mismatches.len(), mismatches[0])
    };
    CheckOutcome::finish("small-n-equivalence", started, passed, detail)
}

fn eighth(rng: &mut StdRng, lo: i64, hi: i64) -> BigRational {
    ratio(rng.gen_range(lo..=hi), 8)
}

/// A positive offset in eighths that is never a whole number, so sampled
/// points keep their distance from every integer-spaced line.
fn offset(rng: &mut StdRng, max_eighths: i64) -> BigRational {
    loop {
        let m = rng.gen_range(1..=max_eighths);
        if m % 8 != 0 {
            return ratio(m, 8);
        }
    }
}

fn sample_region(rng: &mut StdRng, scheme: RegionScheme, n: u32) -> HypParams {
    let ni = i64::from(n);
    loop {
        let (b, c) = match scheme {
            RegionScheme::R1 => {
                let t1 = offset(rng, 40);
                let t2 = offset(rng, 40);
                let b = rat(2 - ni) - &t1;
                let c = &b - rat(ni - 2) - &t2;
                (b, c)
            }
            RegionScheme::R2 => {
                let c = rat(-1) + offset(rng, 90);
                let b = rat(2 - ni) - offset(rng, 70);
                (b, c)
            }
            RegionScheme::R3 => {
                let c = rat(-1) + offset(rng, 90);
                let floor = if c.is_positive() {
                    rat(ni - 2) + &c
                } else {
                    rat(ni - 2)
                };
                let b = floor + offset(rng, 70);
                (b, c)
            }
            RegionScheme::R4 => {
                let c = -eighth(rng, 2, 7);
                let w = -&c * ratio(rng.gen_range(2..=6), 8);
                let b = &c + rat(ni - 2) + w;
                (b, c)
            }
            _ => unreachable!("only R1..R4 are sampled"),
        };
        if let Ok(p) = HypParams::new(n, b.clone(), c.clone()) {
            let ok_margin = boundary_clearance(LineSet::MainRegions, n, &b, &c) >= margin();
            let ok_region = main_region(&p).map(|l| l.scheme) == Ok(scheme);
            if ok_margin && ok_region {
                return p;
            }
        }
    }
}

/// Interior-point crosscheck of the sequence against every closed form
/// (quotients, thetas, and the predicted shape of each `f_k`).
pub fn check_closed_form_crosscheck(level: Level, mutate: Option<CkFactor>) -> CheckOutcome {
    let started = Instant::now();
    let (degrees, per_region): (Vec<u32>, usize) = match level {
        Level::Quick => ((4..=6).collect(), 6),
        Level::Full => ((4..=10).collect(), 20),
    };
    let mut rng = StdRng::seed_from_u64(0x2f1_c0de);
    let mut points = Vec::new();
    for &n in &degrees {
        for scheme in [
            RegionScheme::R1,
            RegionScheme::R2,
            RegionScheme::R3,
            RegionScheme::R4,
        ] {
            for _ in 0..per_region {
                points.push(sample_region(&mut rng, scheme, n));
            }
        }
    }
    let failures: Vec<String> = points
        .par_iter()
        .filter_map(|p| {
            let report = match crosscheck_with(p, mutate) {
                Ok(r) => r,
                Err(e) => {
                    return Some(format!(
                        "n={} b={} c={}: crosscheck failed to run: {e}",
                        p.n(),
                        p.b(),
                        p.c()
                    ))
                }
            };
            let positive = report.entries.iter().all(|e| e.c_trace.is_positive());
            if report.all_ok && report.notes.is_empty() && positive {
                None
            } else {
                let bad_k: Vec<String> = report
                    .entries
                    .iter()
                    .filter(|e| !e.c_matches() || e.proportionality_ok == Some(false))
                    .map(|e| format!("k={} trace {} vs closed {:?}", e.k, e.c_trace, e.c_closed))
                    .collect();
                Some(format!(
                    "n={} b={} c={}: all_ok={} mismatched [{}] notes={:?}",
                    p.n(),
                    p.b(),
                    p.c(),
                    report.all_ok,
                    bad_k.join("; "),
                    report.notes
                ))
            }
        })
        .collect();
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{} interior points crosschecked exactly", points.len())
    } else {
        format!("{} failures; first: {}", failures.len(), failures[0])
    };
    CheckOutcome::finish("closed-form-crosscheck", started, passed, detail)
}

fn random_rational(rng: &mut StdRng, numer_span: i64) -> BigRational {
    let den = *[1i64, 2, 3, 4, 5, 6, 7, 8]
        .get(rng.gen_range(0..8))
        .unwrap();
    ratio(rng.gen_range(-numer_span..=numer_span), den)
}

/// Random-parameter agreement of the theta recurrence with its parity
/// closed forms, everywhere both are defined.
pub fn check_theta_closed_forms(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let wanted = match level {
        Level::Quick => 15,
        Level::Full => 50,
    };
    let mut rng = StdRng::seed_from_u64(0x7e7a);
    let mut accepted = 0usize;
    let mut compared = 0usize;
    let mut failures = Vec::new();
    let mut attempts = 0usize;
    while accepted < wanted && attempts < 4000 {
        attempts += 1;
        let n = rng.gen_range(2..=12u32);
        let b = random_rational(&mut rng, 60);
        let c = random_rational(&mut rng, 60);
        let p = match HypParams::new(n, b, c) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let thetas = match theta_by_recurrence(&p) {
            Ok(t) => t,
            Err(_) => continue, // denominator guard: redraw
        };
        accepted += 1;
        for k in 1..=n - 1 {
            let closed = match theta_closed_form(k, &p) {
                Ok(v) => v,
                Err(_) => continue, // closed form undefined at this k
            };
            compared += 1;
            if Some(&closed) != thetas.theta(k) {
                failures.push(format!(
                    "n={} b={} c={} k={k}: recurrence {:?} vs closed {closed}",
                    p.n(),
                    p.b(),
                    p.c(),
                    thetas.theta(k)
                ));
            }
        }
    }
    let passed = failures.is_empty() && accepted == wanted && compared > wanted;
    let detail = if failures.is_empty() {
        format!("{accepted} parameter draws, {compared} index comparisons, all exact")
    } else {
        format!("{} failures; first: {}", failures.len(), failures[0])
    };
    CheckOutcome::finish("theta-closed-forms", started, passed, detail)
}

/// Random-parameter expansion of the argument-reflection identity, both
/// sides as exact polynomials, plus the involution property.
pub fn check_pfaff_identity(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let wanted = match level {
        Level::Quick => 15,
        Level::Full => 50,
    };
    let mut rng = StdRng::seed_from_u64(0xbf4ff);
    let mut accepted = 0usize;
    let mut failures = Vec::new();
    let mut attempts = 0usize;
    while accepted < wanted && attempts < 4000 {
        attempts += 1;
        let n = rng.gen_range(1..=10u32);
        let b = random_rational(&mut rng, 40);
        let c = random_rational(&mut rng, 40);
        let p = match HypParams::new(n, b, c) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let partner = match pfaff_partner(&p) {
            Ok(pp) => pp,
            Err(_) => continue, // excluded partner parameter: redraw
        };
        accepted += 1;
        if partner.expand() != build_2f1(&p) {
            failures.push(format!("n={} b={} c={}", p.n(), p.b(), p.c()));
            continue;
        }
        if let Ok(back) = pfaff_partner(&partner.partner) {
            if back.partner != p || &back.scale * &partner.scale != rat(1) {
                failures.push(format!(
                    "involution broken at n={} b={} c={}",
                    p.n(),
                    p.b(),
                    p.c()
                ));
            }
        }
    }
    let passed = failures.is_empty() && accepted == wanted;
    let detail = if failures.is_empty() {
        format!("{accepted} draws, both sides coefficient-identical")
    } else {
        format!("{} failures; first: {}", failures.len(), failures[0])
    };
    CheckOutcome::finish("pfaff-identity", started, passed, detail)
}

/// Random-parameter verification of the three Jacobi representations
/// against the binomial-sum reference.
pub fn check_jacobi_representations(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let per_rep = match level {
        Level::Quick => 8,
        Level::Full => 20,
    };
    let mut rng = StdRng::seed_from_u64(0x14c0b1);
    let mut failures = Vec::new();
    let mut total = 0usize;
    for rep in [
        JacobiRep::AffineArg,
        JacobiRep::ReciprocalArg,
        JacobiRep::RatioArg,
    ] {
        for _ in 0..per_rep {
            let n = rng.gen_range(1..=8u32);
            let alpha = random_rational(&mut rng, 32);
            let beta = random_rational(&mut rng, 32);
            let j = JacobiParams::new(n, alpha, beta);
            total += 1;
            if !verify_jacobi_representation(rep, &j) {
                failures.push(format!(
                    "{rep:?} at n={n} alpha={} beta={}",
                    j.alpha, j.beta
                ));
            }
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{total} draws across three representations, all exact")
    } else {
        format!("{} failures; first: {}", failures.len(), failures[0])
    };
    CheckOutcome::finish("jacobi-representations", started, passed, detail)
}

struct CensusDraw {
    params: HypParams,
    rule_prefix: String,
}

fn sample_census_case(rng: &mut StdRng, case: usize) -> CensusDraw {
    loop {
        let n = rng.gen_range(4..=8u32);
        let ni = i64::from(n);
        let u = eighth(rng, 1, 7);
        let (b, c, rule): (BigRational, BigRational, String) = match case {
            // count-formula bands on c > 0
            0 => {
                let c = offset(rng, 80);
                (&c + rat(ni) + offset(rng, 40), c, "hilbert_klein.i".into())
            }
            1 => {
                let c = offset(rng, 80);
                // j = n-1 lands in the band that dispatches to quasi1_high.i
                let j = loop {
                    let j = rng.gen_range(1..=n);
                    if j != n - 1 {
                        break j;
                    }
                };
                let b = &c + rat(i64::from(j) - 1) + &u;
                (b, c, format!("hilbert_klein.ii[j={j}]"))
            }
            2 => {
                let c = rat(1) + offset(rng, 72);
                let b = &c * &u;
                (b, c, "hilbert_klein.iii".into())
            }
            3 => {
                let c = offset(rng, 80);
                // j = n-1 lands in the band that dispatches to quasi1_high.iii
                let j = loop {
                    let j = rng.gen_range(1..=n);
                    if j != n - 1 {
                        break j;
                    }
                };
                let b = rat(-i64::from(j)) + &u;
                (b, c, format!("hilbert_klein.iv[j={j}]"))
            }
            4 => {
                let c = offset(rng, 80);
                (rat(-ni) - offset(rng, 40), c, "hilbert_klein.v".into())
            }
            // two strays bracketing the bulk
            5 => {
                let c = -eighth(rng, 1, 7);
                (&c + rat(ni - 2) + &u, c, "quasi2.i".into())
            }
            6 => {
                let b = rat(1 - ni) + &u;
                let c = &b - rat(ni - 1) + eighth(rng, 1, 7);
                (b, c, "quasi2.ii".into())
            }
            7 => {
                let c = -eighth(rng, 1, 7);
                (rat(1 - ni) + &u, c, "quasi2.iii".into())
            }
            // one stray below the bulk
            8 => {
                let c = -eighth(rng, 1, 7);
                (&c + rat(ni - 1) + offset(rng, 40), c, "quasi1_low.i".into())
            }
            9 => {
                let b = rat(1 - ni) + &u;
                let c = &b - rat(ni + 1) - offset(rng, 40);
                (b, c, "quasi1_low.ii".into())
            }
            10 => {
                let c = -eighth(rng, 1, 7);
                (rat(1 - ni) - offset(rng, 40), c, "quasi1_low.iii".into())
            }
            // one stray above the bulk
            11 => {
                let c = offset(rng, 80);
                (&c + rat(ni - 2) + &u, c, "quasi1_high.i".into())
            }
            12 => {
                let b = rat(1 - ni) - offset(rng, 40);
                let c = &b - rat(ni - 2) - &u;
                (b, c, "quasi1_high.ii".into())
            }
            _ => {
                let c = offset(rng, 80);
                (rat(1 - ni) + &u, c, "quasi1_high.iii".into())
            }
        };
        if let Ok(params) = HypParams::new(n, b.clone(), c.clone()) {
            if boundary_clearance(LineSet::Census, n, &b, &c) >= margin() {
                return CensusDraw {
                    params,
                    rule_prefix: rule,
                };
            }
        }
    }
}

/// Sampled interval censuses: for every covered hypothesis band the numeric
/// root census must equal the predicted one exactly. Points from the band
/// whose printed hypothesis is under audit are logged in the detail.
pub fn check_census_predictions(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let per_case = match level {
        Level::Quick => 3,
        Level::Full => 10,
    };
    let mut rng = StdRng::seed_from_u64(0xce5505);
    let mut failures = Vec::new();
    let mut audit = Vec::new();
    let mut total = 0usize;
    let cfg = OracleConfig::default();
    for case in 0..14 {
        for _ in 0..per_case {
            let draw = sample_census_case(&mut rng, case);
            let p = &draw.params;
            total += 1;
            let tag = format!("n={} b={} c={}", p.n(), p.b(), p.c());
            let report = match predict_counts(p) {
                Ok(Prediction::Covered { report }) => report,
                other => {
                    failures.push(format!("{tag}: expected coverage, got {other:?}"));
                    continue;
                }
            };
            let rule = match &report.source {
                crate::regions::CensusSource::Predicted { rule } => rule.clone(),
                _ => unreachable!(),
            };
            if !rule.starts_with(&draw.rule_prefix) {
                failures.push(format!(
                    "{tag}: dispatched to {rule}, expected {}",
                    draw.rule_prefix
                ));
                continue;
            }
            let numeric = find_roots(&build_2f1(p), &cfg).and_then(|rs| census(&rs));
            match numeric {
                Ok(num) if num.counts() == report.counts() => {
                    if draw.rule_prefix == "quasi1_low.ii" {
                        audit.push(format!(
                            "{tag}: predicted and numeric both {:?}",
                            num.counts()
                        ));
                    }
                }
                Ok(num) => failures.push(format!(
                    "{tag} [{rule}]: predicted {:?}, numeric {:?}",
                    report.counts(),
                    num.counts()
                )),
                Err(e) => failures.push(format!("{tag}: oracle failed: {e}")),
            }
        }
    }
    let passed = failures.is_empty();
    let mut detail = if passed {
        format!("{total} sampled points, predicted = numeric everywhere")
    } else {
        format!("{} failures; first: {}", failures.len(), failures[0])
    };
    if !audit.is_empty() {
        detail.push_str(&format!(
            "; printed-hypothesis audit ({} points): {}",
            audit.len(),
            audit.join(" | ")
        ));
    }
    CheckOutcome::finish("census-predictions", started, passed, detail)
}

/// The vanishing-remainder branch: `z^k (z-1)` exercises it and must land
/// on the repeated-zero verdict with a recorded zero quotient.
pub fn check_derivative_branch(_level: Level) -> CheckOutcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    for k in [2usize, 3, 4] {
        // z^k (z - 1) = z^(k+1) - z^k
        let mut coeffs = vec![rat(0); k + 2];
        coeffs[k] = rat(-1);
        coeffs[k + 1] = rat(1);
        let f = RatPoly::from_coeffs(coeffs);
        match run_sequence(&f) {
            Ok(trace) => {
                let c_values = trace.c_values();
                let branch_taken = trace.steps.iter().any(|s| s.took_derivative_branch);
                let ok = trace.classification == ZeroNature::AllRealWithMultiple
                    && branch_taken
                    && c_values.iter().any(|c| c.is_zero())
                    && c_values.len() == k; // n - 1 = k quotients
                if !ok {
                    failures.push(format!(
                        "k={k}: classification {:?}, c = {:?}",
                        trace.classification, c_values
                    ));
                }
            }
            Err(e) => failures.push(format!("k={k}: {e}")),
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        "z^k(z-1) for k in {2,3,4}: repeated-zero verdict with zero quotient recorded".into()
    } else {
        failures.join("; ")
    };
    CheckOutcome::finish("derivative-branch", started, passed, detail)
}

/// Numeric cross-validation on a coarse grid: census agrees with the
/// predicted one wherever a band covers the point, and the numeric
/// real-simple witness agrees with the exact verdict.
pub fn check_oracle_agreement(level: Level) -> CheckOutcome {
    let started = Instant::now();
    let (degrees, values): (Vec<u32>, Vec<BigRational>) = match level {
        Level::Quick => (vec![4], (-8..=8).map(rat).collect()),
        Level::Full => (vec![4, 7, 10], half_grid(-8, 8)),
    };
    let cfg = OracleConfig::default();
    let results: Vec<(usize, Vec<String>)> = degrees
        .par_iter()
        .flat_map(|&n| values.par_iter().map(move |c| (n, c)))
        .map(|(n, c)| {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for b in &values {
                let p = match HypParams::new(n, b.clone(), c.clone()) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                if scan_clearance(n, b, c) < margin() {
                    continue;
                }
                let verdict = match run_sequence(&build_2f1(&p)) {
                    Ok(t) => t.classification,
                    Err(_) => continue, // indeterminate: outside every region
                };
                let rs = match find_roots(&build_2f1(&p), &cfg) {
                    Ok(rs) => rs,
                    Err(e) => {
                        bad.push(format!("n={n} b={b} c={c}: oracle failed: {e}"));
                        continue;
                    }
                };
                checked += 1;
                let numeric = match census(&rs) {
                    Ok(r) => r,
                    Err(e) => {
                        bad.push(format!("n={n} b={b} c={c}: census failed: {e}"));
                        continue;
                    }
                };
                let simple_numeric =
                    numeric.nonreal == 0 && min_gap(&rs).is_ok_and(|g| g > cfg.tol_gap);
                let simple_exact = verdict == ZeroNature::AllRealSimple;
                if simple_numeric != simple_exact {
                    bad.push(format!(
                        "n={n} b={b} c={c}: exact {verdict:?} vs numeric simple={simple_numeric}"
                    ));
                }
                if let Ok(Prediction::Covered { report }) = predict_counts(&p) {
                    if report.counts() != numeric.counts() {
                        bad.push(format!(
                            "n={n} b={b} c={c}: predicted {:?} vs numeric {:?}",
                            report.counts(),
                            numeric.counts()
                        ));
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let checked: usize = results.iter().map(|(c, _)| c).sum();
    let mismatches: Vec<String> = results.into_iter().flat_map(|(_, b)| b).collect();
    let passed = mismatches.is_empty() && checked > 50;
    let detail = if mismatches.is_empty() {
        format!("{checked} grid points cross-validated numerically")
    } else {
        format!("{} mismatches; first: {}", mismatches.len(), mismatches[0])
    };
    CheckOutcome::finish("oracle-agreement", started, passed, detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_is_green() {
        let outcomes = run_suite(Level::Quick, None);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
        assert_eq!(outcomes.len(), 9);
    }

    #[test]
    fn mutation_is_detected() {
        let outcome = check_closed_form_crosscheck(Level::Quick, Some(CkFactor::Num3));
        assert!(!outcome.passed);
    }
}
