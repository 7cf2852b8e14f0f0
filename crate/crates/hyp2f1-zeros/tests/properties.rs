//! Property tests for the arithmetic core and the sequence engine.

use hyp2f1_zeros::closedform::theta_by_recurrence;
use hyp2f1_zeros::hyp2f1::{build_2f1, pfaff_partner, pochhammer, HypParams};
use hyp2f1_zeros::ratpoly::{rat, ratio, BigRational, RatPoly};
use hyp2f1_zeros::regions::{main_region, orthogonality_region, RegionScheme};
use hyp2f1_zeros::sturm::{run_sequence, SequenceTrace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=24).prop_map(|(n, d)| ratio(n, d))
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(arb_rational(), 0..=max_len).prop_map(RatPoly::from_coeffs)
}

fn reduced(r: &BigRational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()) == BigInt::one() || r.is_zero()
}

proptest! {
    #[test]
    fn division_reconstructs_exactly(f in arb_poly(9), g in arb_poly(5)) {
        prop_assume!(!g.is_zero());
        prop_assume!(f.degree() >= g.degree());
        let (q, r) = f.divide(&g).unwrap();
        prop_assert_eq!(&(&(&q * &g) + &r), &f);
        if !r.is_zero() {
            prop_assert!(r.degree().unwrap() < g.degree().unwrap());
        }
        // determinism
        let (q2, r2) = f.divide(&g).unwrap();
        prop_assert_eq!(q, q2);
        prop_assert_eq!(&r, &r2);
        for c in f.coeffs().iter().chain(r2.coeffs()) {
            prop_assert!(reduced(c));
        }
    }

    #[test]
    fn derivative_drops_degree_by_one(p in arb_poly(9)) {
        match p.degree() {
            Some(d) if d >= 1 => prop_assert_eq!(p.derivative().degree(), Some(d - 1)),
            _ => prop_assert!(p.derivative().is_zero()),
        }
    }

    #[test]
    fn pochhammer_shift_identity(a in arb_rational(), k in 0u32..12) {
        let lhs = pochhammer(&a, k + 1);
        let rhs = (&a + rat(i64::from(k))) * pochhammer(&a, k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poly_json_round_trip(p in arb_poly(9)) {
        let json = serde_json::to_string(&p).unwrap();
        let back: RatPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

fn arb_params(max_n: u32) -> impl Strategy<Value = HypParams> {
    (2u32..=max_n, arb_rational(), arb_rational())
        .prop_filter_map("excluded parameter values", |(n, b, c)| {
            HypParams::new(n, b, c).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_shape(p in arb_params(9)) {
        let poly = build_2f1(&p);
        prop_assert_eq!(poly.degree(), Some(p.n() as usize));
        prop_assert_eq!(poly.coeff(0), rat(1));
        let sign = if p.n() % 2 == 0 { rat(1) } else { rat(-1) };
        let lead = sign * pochhammer(p.b(), p.n()) / pochhammer(p.c(), p.n());
        prop_assert_eq!(poly.leading_coefficient().unwrap(), &lead);
    }

    #[test]
    fn reflection_is_an_involution(p in arb_params(8)) {
        if let Ok(first) = pfaff_partner(&p) {
            prop_assert_eq!(first.expand(), build_2f1(&p));
            let second = pfaff_partner(&first.partner).unwrap();
            prop_assert_eq!(&second.partner, &p);
            prop_assert_eq!(&first.scale * &second.scale, rat(1));
        }
    }

    #[test]
    fn trace_degrees_strictly_decrease(p in arb_params(8)) {
        let trace = match run_sequence(&build_2f1(&p)) {
            Ok(t) => t,
            Err(_) => return Ok(()), // indeterminate inputs carry no claim
        };
        let n = p.n() as usize;
        prop_assert!(trace.steps.len() <= n + 2);
        let mut last = usize::MAX;
        for step in &trace.steps {
            let d = step.f.degree().unwrap();
            prop_assert!(d < last || last == usize::MAX);
            last = d;
        }
        prop_assert!(trace.c_values().len() < n);
        // reconstruction with the flipped-sign convention
        for k in 1..trace.steps.len() - 1 {
            let step = &trace.steps[k];
            if step.took_derivative_branch { continue; }
            let q = step.quotient.as_ref().unwrap();
            let expect = &(q * &step.f) - &trace.steps[k + 1].f;
            prop_assert_eq!(&trace.steps[k - 1].f, &expect);
        }
    }

    #[test]
    fn positive_scaling_fixes_sign_pattern(p in arb_params(7), num in 1i64..40, den in 1i64..40) {
        let f = build_2f1(&p);
        let scaled = f.scale(&ratio(num, den));
        let signs = |t: &SequenceTrace| t.c_values().iter().map(|c| c.signum()).collect::<Vec<_>>();
        match (run_sequence(&f), run_sequence(&scaled)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.classification, b.classification);
                prop_assert_eq!(signs(&a), signs(&b));
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "scaling changed the outcome: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn trace_serialization_is_bit_exact(p in arb_params(7)) {
        if let Ok(trace) = run_sequence(&build_2f1(&p)) {
            let json = serde_json::to_string(&trace).unwrap();
            let back: SequenceTrace = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &trace);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
    }

    #[test]
    fn theta_scales_the_whole_chain(p in arb_params(7)) {
        // where the recurrence is defined and the trace is generic, theta_k
        // is exactly the ratio of lc(f_k) to the predicted sub-series lead
        let trace = match run_sequence(&build_2f1(&p)) {
            Ok(t) if t.c_values().len() == p.n() as usize - 1 => t,
            _ => return Ok(()),
        };
        if let Ok(thetas) = theta_by_recurrence(&p) {
            for k in 1..=p.n() - 1 {
                let sub = HypParams::new(
                    p.n() - k,
                    p.b() + rat(2) - rat(i64::from(k)),
                    p.c() + rat(1),
                );
                let sub = match sub { Ok(s) => s, Err(_) => continue };
                let predicted = build_2f1(&sub).scale(thetas.theta(k).unwrap());
                if predicted == trace.steps[k as usize].f {
                    continue;
                }
                // a mismatch is only allowed when the trace left the
                // predicted family through an earlier derivative branch
                let branched = trace.steps[1..k as usize]
                    .iter()
                    .any(|s| s.took_derivative_branch);
                prop_assert!(branched, "shape broke at k={k} without a branch");
            }
        }
    }
}

/// Independent statement of the four region inequality sets, for the
/// disjointness property.
fn memberships(n: i64, b: &BigRational, c: &BigRational) -> Vec<RegionScheme> {
    let mut hits = Vec::new();
    if b - c - rat(n - 2) > rat(0) && *b < rat(2 - n) {
        hits.push(RegionScheme::R1);
    }
    if *c > rat(-1) && *b < rat(2 - n) {
        hits.push(RegionScheme::R2);
    }
    if *c > rat(-1) && *b > rat(n - 2) && b - c - rat(n - 2) > rat(0) {
        hits.push(RegionScheme::R3);
    }
    if *c > rat(-1) && *c < rat(0) && b - c - rat(n - 2) > rat(0) && *b < rat(n - 2) {
        hits.push(RegionScheme::R4);
    }
    hits
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn main_regions_are_disjoint(n in 4u32..=10, b in arb_rational(), c in arb_rational()) {
        let p = match HypParams::new(n, b.clone(), c.clone()) { Ok(p) => p, Err(_) => return Ok(()) };
        let hits = memberships(i64::from(n), &b, &c);
        prop_assert!(hits.len() <= 1, "overlap at n={n} b={b} c={c}: {hits:?}");
        let label = main_region(&p).unwrap();
        match label.scheme {
            RegionScheme::Outside => prop_assert!(hits.is_empty()),
            RegionScheme::Boundary => {} // line hits carry no claim
            scheme => prop_assert_eq!(vec![scheme], hits),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orthogonality_bands_sit_inside_main_regions(
        n in 4u32..=8,
        b in arb_rational(),
        c in arb_rational(),
    ) {
        let p = match HypParams::new(n, b, c) { Ok(p) => p, Err(_) => return Ok(()) };
        let orth = orthogonality_region(&p);
        if matches!(orth.scheme, RegionScheme::G1 | RegionScheme::G2 | RegionScheme::G3) {
            let main = main_region(&p).unwrap();
            prop_assert!(
                matches!(main.scheme, RegionScheme::R1 | RegionScheme::R2 | RegionScheme::R3),
                "{:?} landed in {:?}", orth.scheme, main.scheme
            );
            let trace = run_sequence(&build_2f1(&p)).unwrap();
            prop_assert_eq!(
                trace.classification,
                hyp2f1_zeros::sturm::ZeroNature::AllRealSimple
            );
        }
    }
}
