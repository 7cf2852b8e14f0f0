//! Parameter-plane classification: orthogonality regions, the four main
//! real-simple regions for degree at least 4, the small-degree discriminant
//! tests, and predicted zero censuses for every covered `(c, b)` band.
//!
//! Every predicate uses strict inequalities exactly as the criteria state
//! them; equality on any defining line yields an explicit `Boundary` (or a
//! boundary error for census predictions) rather than picking a side.

use crate::hyp2f1::HypParams;
use crate::ratpoly::{rat, BigRational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionsError {
    #[error("classification for degree {n} needs {needed}")]
    WrongDegree { n: u32, needed: &'static str },
    #[error("parameters sit on the hypothesis line {line}")]
    HypothesisBoundary { line: String },
    #[error("count formulas require c > 0 (got c = {c})")]
    PreconditionC { c: String },
    #[error("parameters sit on the case boundary {line}")]
    CaseBoundary { line: String },
}

/// Which region (if any) contains `(c, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionScheme {
    G1,
    G2,
    G3,
    R1,
    R2,
    R3,
    R4,
    CaseI,
    CaseII,
    CaseIII,
    Outside,
    Boundary,
}

impl std::fmt::Display for RegionScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegionScheme::G1 => "G1",
            RegionScheme::G2 => "G2",
            RegionScheme::G3 => "G3",
            RegionScheme::R1 => "R1",
            RegionScheme::R2 => "R2",
            RegionScheme::R3 => "R3",
            RegionScheme::R4 => "R4",
            RegionScheme::CaseI => "case_i",
            RegionScheme::CaseII => "case_ii",
            RegionScheme::CaseIII => "case_iii",
            RegionScheme::Outside => "outside",
            RegionScheme::Boundary => "boundary",
        };
        write!(f, "{s}")
    }
}

/// A classification, the family of criteria that produced it, and the
/// inequalities that matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub scheme: RegionScheme,
    /// Which family of criteria produced the label.
    pub basis: String,
    pub detail: String,
}

impl RegionLabel {
    fn new(scheme: RegionScheme, basis: &str, detail: impl Into<String>) -> Self {
        RegionLabel {
            scheme,
            basis: basis.to_string(),
            detail: detail.into(),
        }
    }

    pub fn is_real_simple_region(&self) -> bool {
        matches!(
            self.scheme,
            RegionScheme::G1
                | RegionScheme::G2
                | RegionScheme::G3
                | RegionScheme::R1
                | RegionScheme::R2
                | RegionScheme::R3
                | RegionScheme::R4
                | RegionScheme::CaseI
                | RegionScheme::CaseII
                | RegionScheme::CaseIII
        )
    }
}

/// Orthogonality bands: `G1` (`c > 0`, `b > c+n-1`, zeros in `(0,1)`),
/// `G2` (`c > 0`, `b < 1-n`, zeros in `(-inf,0)`) and
/// `G3` (`c+n-1 < b < 1-n`, zeros in `(1,inf)`).
pub fn orthogonality_region(p: &HypParams) -> RegionLabel {
    let n = i64::from(p.n());
    let (b, c) = (p.b(), p.c());
    let diag = b - c - rat(n - 1); // b - (c+n-1)
    let low = b - rat(1 - n); // b - (1-n)
    let basis = "orthogonality";
    if c.is_zero() || diag.is_zero() || low.is_zero() {
        return RegionLabel::new(RegionScheme::Boundary, basis, "on a defining line");
    }
    if c.is_positive() && diag.is_positive() {
        RegionLabel::new(
            RegionScheme::G1,
            basis,
            format!("c > 0 and b > c+n-1 = {}", c + rat(n - 1)),
        )
    } else if c.is_positive() && low.is_negative() {
        RegionLabel::new(
            RegionScheme::G2,
            basis,
            format!("c > 0 and b < 1-n = {}", rat(1 - n)),
        )
    } else if diag.is_positive() && low.is_negative() {
        RegionLabel::new(
            RegionScheme::G3,
            basis,
            format!("c+n-1 = {} < b < 1-n = {}", c + rat(n - 1), rat(1 - n)),
        )
    } else {
        RegionLabel::new(RegionScheme::Outside, basis, "no orthogonality band")
    }
}

/// The four real-simple regions for degree at least 4:
/// `R1 = {c+n-2 < b < 2-n}`, `R2 = {c > -1, b < 2-n}`,
/// `R3 = {c > -1, b > n-2, b > c+n-2}` and
/// `R4 = {-1 < c < 0, c+n-2 < b < n-2}`.
pub fn main_region(p: &HypParams) -> Result<RegionLabel, RegionsError> {
    let n_u = p.n();
    if n_u < 4 {
        return Err(RegionsError::WrongDegree {
            n: n_u,
            needed: "n >= 4",
        });
    }
    let n = i64::from(n_u);
    let (b, c) = (p.b(), p.c());
    let basis = "ck_positivity";
    let diag = b - c - rat(n - 2); // b - (c+n-2)
    let hi = b - rat(n - 2); // b - (n-2)
    let lo = b - rat(2 - n); // b - (2-n)
    let cm1 = c + rat(1); // c - (-1)
    if diag.is_zero() || hi.is_zero() || lo.is_zero() || cm1.is_zero() || c.is_zero() {
        return Ok(RegionLabel::new(
            RegionScheme::Boundary,
            basis,
            "on a defining line",
        ));
    }
    let label = if diag.is_positive() && lo.is_negative() {
        RegionLabel::new(
            RegionScheme::R1,
            basis,
            format!("c+n-2 = {} < b < 2-n = {}", c + rat(n - 2), rat(2 - n)),
        )
    } else if cm1.is_positive() && lo.is_negative() {
        RegionLabel::new(
            RegionScheme::R2,
            basis,
            format!("c > -1 and b < 2-n = {}", rat(2 - n)),
        )
    } else if cm1.is_positive() && hi.is_positive() && diag.is_positive() {
        RegionLabel::new(
            RegionScheme::R3,
            basis,
            format!(
                "c > -1, b > n-2 = {}, b > c+n-2 = {}",
                rat(n - 2),
                c + rat(n - 2)
            ),
        )
    } else if cm1.is_positive() && c.is_negative() && diag.is_positive() && hi.is_negative() {
        RegionLabel::new(
            RegionScheme::R4,
            basis,
            format!(
                "-1 < c < 0 and c+n-2 = {} < b < n-2 = {}",
                c + rat(n - 2),
                rat(n - 2)
            ),
        )
    } else {
        RegionLabel::new(RegionScheme::Outside, basis, "in none of R1..R4")
    };
    Ok(label)
}

/// Degree 2 and 3 classifiers with their exact sign witnesses: the radicand
/// product `b(c+1)(b-c)` for `n = 2` and the cubic discriminant
/// `108 b^2 (b+1)(b-c-1)(b-c)^2 / (c^4 (c+1)^3 (c+2)^2)` for `n = 3`.
/// Positive witness means real and simple; zero, a repeated real zero;
/// negative, a nonreal pair.
pub fn smalln_real_simple(p: &HypParams) -> Result<(RegionLabel, BigRational), RegionsError> {
    let (b, c) = (p.b(), p.c());
    match p.n() {
        2 => {
            let witness = b * (c + rat(1)) * (b - c);
            let basis = "quadratic_radicand";
            let label = if witness.is_zero() {
                RegionLabel::new(RegionScheme::Boundary, basis, "witness vanishes (b = c)")
            } else if witness.is_negative() {
                RegionLabel::new(RegionScheme::Outside, basis, "b(c+1)(b-c) < 0")
            } else if c.is_positive() {
                RegionLabel::new(RegionScheme::CaseIII, basis, "c > 0 and (b < 0 or b > c)")
            } else if (c + rat(1)).is_positive() {
                RegionLabel::new(
                    RegionScheme::CaseII,
                    basis,
                    "-1 < c < 0 and (b > 0 or b < c)",
                )
            } else {
                RegionLabel::new(RegionScheme::CaseI, basis, "c < -1 and c < b < 0")
            };
            Ok((label, witness))
        }
        3 => {
            let num = rat(108) * (b * b) * (b + rat(1)) * (b - c - rat(1)) * (b - c) * (b - c);
            let c4 = c * c * c * c;
            let cp1 = c + rat(1);
            let cp2 = c + rat(2);
            let den = c4 * (&cp1 * &cp1 * &cp1) * (&cp2 * &cp2);
            let witness = num / den;
            let basis = "cubic_discriminant";
            let label = if witness.is_zero() {
                RegionLabel::new(
                    RegionScheme::Boundary,
                    basis,
                    "discriminant vanishes (b = c or b = c+1)",
                )
            } else if witness.is_negative() {
                RegionLabel::new(RegionScheme::Outside, basis, "discriminant < 0")
            } else if cp1.is_positive() {
                RegionLabel::new(
                    RegionScheme::CaseIII,
                    basis,
                    "c > -1 and (b < -1 or b > c+1)",
                )
            } else if cp2.is_positive() {
                RegionLabel::new(RegionScheme::CaseII, basis, "-2 < c < -1 and -1 < b < c+1")
            } else {
                RegionLabel::new(RegionScheme::CaseI, basis, "c < -2 and c+1 < b < -1")
            };
            Ok((label, witness))
        }
        n => Err(RegionsError::WrongDegree {
            n,
            needed: "n in {2, 3}",
        }),
    }
}

/// Counts of zeros in `(-inf,0)`, `(0,1)`, `(1,inf)` plus nonreal ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroReport {
    pub neg: u32,
    pub unit: u32,
    pub tail: u32,
    pub nonreal: u32,
    pub source: CensusSource,
}

impl ZeroReport {
    pub fn total(&self) -> u32 {
        self.neg + self.unit + self.tail + self.nonreal
    }

    pub fn counts(&self) -> (u32, u32, u32, u32) {
        (self.neg, self.unit, self.tail, self.nonreal)
    }

    fn predicted(rule: String, neg: u32, unit: u32, tail: u32, nonreal: u32) -> Self {
        ZeroReport {
            neg,
            unit,
            tail,
            nonreal,
            source: CensusSource::Predicted { rule },
        }
    }
}

/// Where a census came from: a covered hypothesis band, or the numeric
/// root finder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CensusSource {
    Predicted { rule: String },
    Numeric,
}

/// Outcome of [`predict_counts`]: either a full census or an explicit
/// statement that no covered band applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Prediction {
    Covered { report: ZeroReport },
    NotCovered,
}

/// Strict-inequality evaluation with explicit edge detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fit {
    In,
    Edge,
    Out,
}

fn positive(v: &BigRational) -> Fit {
    if v.is_zero() {
        Fit::Edge
    } else if v.is_positive() {
        Fit::In
    } else {
        Fit::Out
    }
}

fn combine(parts: &[Fit]) -> Fit {
    if parts.contains(&Fit::Out) {
        Fit::Out
    } else if parts.contains(&Fit::Edge) {
        Fit::Edge
    } else {
        Fit::In
    }
}

struct CaseFit {
    fit: Fit,
    rule: &'static str,
    report: Option<ZeroReport>,
}

/// The nine quasi-orthogonality bands. `quasi2` has two stray zeros
/// bracketing the bulk; `quasi1_low` has a single stray below it and
/// `quasi1_high` a single stray above it (in the transformed variable).
fn quasi_cases(p: &HypParams) -> Vec<CaseFit> {
    let n_u = p.n();
    let n = i64::from(n_u);
    let (b, c) = (p.b(), p.c());
    // the two-stray bands need at least two zeros to place
    let quasi2_gate = if n_u >= 2 { Fit::In } else { Fit::Out };
    let bulk = n_u.saturating_sub(2);
    let c_band = [positive(&(c + rat(1))), positive(&(-c))]; // -1 < c < 0
    let b_strip = [
        positive(&(b - c - rat(n - 2))), // b > c+n-2
        positive(&(c + rat(n - 1) - b)), // b < c+n-1
    ];
    let b_low = [
        positive(&(b - rat(1 - n))), // b > 1-n
        positive(&(rat(2 - n) - b)), // b < 2-n
    ];
    vec![
        CaseFit {
            fit: combine(&[quasi2_gate, c_band[0], c_band[1], b_strip[0], b_strip[1]]),
            rule: "quasi2.i",
            report: Some(ZeroReport::predicted("quasi2.i".into(), 1, bulk, 1, 0)),
        },
        CaseFit {
            fit: combine(&[quasi2_gate, b_low[0], b_low[1], b_strip[0], b_strip[1]]),
            rule: "quasi2.ii",
            report: Some(ZeroReport::predicted("quasi2.ii".into(), 1, 1, bulk, 0)),
        },
        CaseFit {
            fit: combine(&[quasi2_gate, c_band[0], c_band[1], b_low[0], b_low[1]]),
            rule: "quasi2.iii",
            report: Some(ZeroReport::predicted("quasi2.iii".into(), bulk, 1, 1, 0)),
        },
        CaseFit {
            fit: combine(&[c_band[0], c_band[1], positive(&(b - c - rat(n - 1)))]),
            rule: "quasi1_low.i",
            report: Some(ZeroReport::predicted(
                "quasi1_low.i".into(),
                1,
                n_u - 1,
                0,
                0,
            )),
        },
        CaseFit {
            // hypothesis as printed: 1-n < b < 2-n and c < b-n-1
            fit: combine(&[b_low[0], b_low[1], positive(&(b - rat(n + 1) - c))]),
            rule: "quasi1_low.ii",
            report: Some(ZeroReport::predicted(
                "quasi1_low.ii".into(),
                1,
                0,
                n_u - 1,
                0,
            )),
        },
        CaseFit {
            fit: combine(&[c_band[0], c_band[1], positive(&(rat(1 - n) - b))]),
            rule: "quasi1_low.iii",
            report: Some(ZeroReport::predicted(
                "quasi1_low.iii".into(),
                n_u - 1,
                1,
                0,
                0,
            )),
        },
        CaseFit {
            fit: combine(&[positive(c), b_strip[0], b_strip[1]]),
            rule: "quasi1_high.i",
            report: Some(ZeroReport::predicted(
                "quasi1_high.i".into(),
                0,
                n_u - 1,
                1,
                0,
            )),
        },
        CaseFit {
            fit: combine(&[positive(&(rat(1 - n) - b)), b_strip[0], b_strip[1]]),
            rule: "quasi1_high.ii",
            report: Some(ZeroReport::predicted(
                "quasi1_high.ii".into(),
                0,
                1,
                n_u - 1,
                0,
            )),
        },
        CaseFit {
            fit: combine(&[positive(c), b_low[0], b_low[1]]),
            rule: "quasi1_high.iii",
            report: Some(ZeroReport::predicted(
                "quasi1_high.iii".into(),
                n_u - 1,
                0,
                1,
                0,
            )),
        },
    ]
}

/// Distribute `n - j` leftover zeros: conjugate pairs, with one extra real
/// zero in `(1, inf)` when the leftover count is odd.
fn parity_split(n: u32, j: u32) -> (u32, u32) {
    let rest = n - j;
    if rest.is_multiple_of(2) {
        (rest, 0)
    } else {
        (rest - 1, 1)
    }
}

enum HkFit {
    In(ZeroReport),
    Edge(String),
    Out,
}

/// Classical count formulas on `c > 0`, case by case over `b`.
fn hilbert_klein_fit(p: &HypParams) -> HkFit {
    let n_u = p.n();
    let n = i64::from(n_u);
    let (b, c) = (p.b(), p.c());
    let diff = b - c;
    // case boundaries: b - c integer in [0, n] or b integer in [-n, 0]
    if diff.is_integer() && !diff.is_negative() && diff <= rat(n) {
        return HkFit::Edge(format!("b = c + {diff}"));
    }
    if b.is_integer() && !b.is_positive() && *b >= rat(-n) {
        return HkFit::Edge(format!("b = {b}"));
    }
    if diff > rat(n) {
        return HkFit::In(ZeroReport::predicted(
            "hilbert_klein.i".into(),
            0,
            n_u,
            0,
            0,
        ));
    }
    if diff.is_positive() {
        // c + j - 1 < b < c + j
        let j = diff.ceil().to_integer();
        let j = u32::try_from(j).expect("0 < j <= n");
        let (nonreal, tail) = parity_split(n_u, j);
        return HkFit::In(ZeroReport::predicted(
            format!("hilbert_klein.ii[j={j}]"),
            0,
            j,
            tail,
            nonreal,
        ));
    }
    if b.is_positive() {
        // 0 < b < c
        let (nonreal, tail) = parity_split(n_u, 0);
        return HkFit::In(ZeroReport::predicted(
            "hilbert_klein.iii".into(),
            0,
            0,
            tail,
            nonreal,
        ));
    }
    if *b > rat(-n) {
        // -j < b < -j + 1
        let j = (-b).ceil().to_integer();
        let j = u32::try_from(j).expect("0 < j <= n");
        let (nonreal, tail) = parity_split(n_u, j);
        return HkFit::In(ZeroReport::predicted(
            format!("hilbert_klein.iv[j={j}]"),
            j,
            0,
            tail,
            nonreal,
        ));
    }
    if *b < rat(-n) {
        return HkFit::In(ZeroReport::predicted(
            "hilbert_klein.v".into(),
            n_u,
            0,
            0,
            0,
        ));
    }
    HkFit::Out
}

/// Census for `c > 0` from the classical count formulas.
pub fn hilbert_klein_counts(p: &HypParams) -> Result<ZeroReport, RegionsError> {
    if !p.c().is_positive() {
        return Err(RegionsError::PreconditionC {
            c: p.c().to_string(),
        });
    }
    match hilbert_klein_fit(p) {
        HkFit::In(report) => Ok(report),
        HkFit::Edge(line) => Err(RegionsError::CaseBoundary { line }),
        HkFit::Out => unreachable!("the five cases partition c > 0 off the boundaries"),
    }
}

/// Full predicted census when `(n, b, c)` matches a covered hypothesis band.
///
/// The quasi-orthogonality bands take precedence over the coarse count
/// formulas; where both apply the censuses are asserted equal. Parameters on
/// any defining line of a band error out instead of being binned.
pub fn predict_counts(p: &HypParams) -> Result<Prediction, RegionsError> {
    let mut edge: Option<String> = None;
    for case in quasi_cases(p) {
        match case.fit {
            Fit::In => {
                let report = case.report.expect("every quasi case carries a census");
                if p.c().is_positive() {
                    if let HkFit::In(hk) = hilbert_klein_fit(p) {
                        assert_eq!(
                            (report.neg, report.unit, report.tail, report.nonreal),
                            (hk.neg, hk.unit, hk.tail, hk.nonreal),
                            "overlapping hypotheses must agree at n={}, b={}, c={}",
                            p.n(),
                            p.b(),
                            p.c()
                        );
                    }
                }
                return Ok(Prediction::Covered { report });
            }
            Fit::Edge => {
                edge.get_or_insert_with(|| format!("edge of {}", case.rule));
            }
            Fit::Out => {}
        }
    }
    if p.c().is_positive() {
        match hilbert_klein_fit(p) {
            HkFit::In(report) => return Ok(Prediction::Covered { report }),
            HkFit::Edge(line) => {
                edge.get_or_insert(line);
            }
            HkFit::Out => {}
        }
    }
    match edge {
        Some(line) => Err(RegionsError::HypothesisBoundary { line }),
        None => Ok(Prediction::NotCovered),
    }
}

/// Line sets used for margin filtering in sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineSet {
    MainRegions,
    Orthogonality,
    Census,
    SmallN,
}

/// Values of the defining linear forms at `(c, b)`; a point is margin-safe
/// when every absolute value stays at or above the margin.
pub fn line_forms(set: LineSet, n: u32, b: &BigRational, c: &BigRational) -> Vec<BigRational> {
    let ni = i64::from(n);
    match set {
        LineSet::MainRegions => vec![
            b - c - rat(ni - 2),
            b - rat(2 - ni),
            c + rat(1),
            b - rat(ni - 2),
            c.clone(),
        ],
        LineSet::Orthogonality => vec![c.clone(), b - rat(1 - ni), b - c - rat(ni - 1)],
        LineSet::Census => {
            let mut forms = vec![
                c.clone(),
                c + rat(1),
                b - rat(1 - ni),
                b - rat(2 - ni),
                c - b + rat(ni + 1),
            ];
            for j in 0..=ni {
                forms.push(b - c - rat(j));
                forms.push(b + rat(j));
            }
            forms
        }
        LineSet::SmallN => match n {
            2 => vec![b.clone(), c + rat(1), b - c],
            _ => vec![
                b.clone(),
                b + rat(1),
                b - c,
                b - c - rat(1),
                c.clone(),
                c + rat(1),
                c + rat(2),
            ],
        },
    }
}

/// Minimum absolute value over a line set; the margin test for one point.
pub fn boundary_clearance(set: LineSet, n: u32, b: &BigRational, c: &BigRational) -> BigRational {
    line_forms(set, n, b, c)
        .into_iter()
        .map(|f| f.abs())
        .min()
        .expect("line sets are nonempty")
}

/// Clearance against every line relevant to a scan row at this degree.
pub fn scan_clearance(n: u32, b: &BigRational, c: &BigRational) -> BigRational {
    let mut sets = vec![LineSet::Census];
    if n >= 4 {
        sets.push(LineSet::MainRegions);
        sets.push(LineSet::Orthogonality);
    } else {
        sets.push(LineSet::SmallN);
    }
    sets.into_iter()
        .map(|s| boundary_clearance(s, n, b, c))
        .min()
        .expect("nonempty")
}
