//! Command-line front end: classify parameter points, dump sequence traces,
//! run the numeric root finder, predict interval censuses, sweep parameter
//! grids to CSV, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyp2f1_zeros::closedform::CkFactor;
use hyp2f1_zeros::hyp2f1::{build_2f1, HypParams};
use hyp2f1_zeros::oracle::{census, find_roots, min_gap, OracleConfig};
use hyp2f1_zeros::ratpoly::{parse_rational, BigRational};
use hyp2f1_zeros::regions::{
    main_region, orthogonality_region, predict_counts, scan_clearance, smalln_real_simple,
    Prediction, RegionLabel, ZeroReport,
};
use hyp2f1_zeros::sturm::classify_2f1;
use hyp2f1_zeros::verify::{all_passed, run_suite, Level};
use hyp2f1_zeros::{crosscheck, SturmError};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "hyp2f1",
    version,
    about = "Exact real-zero classification for terminating hypergeometric polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Polynomial degree
    #[arg(short)]
    n: u32,
    /// Second numerator parameter, as an exact rational ("5", "-7/2")
    #[arg(short, value_parser = parse_rat, allow_hyphen_values = true)]
    b: BigRational,
    /// Denominator parameter, as an exact rational
    #[arg(short, value_parser = parse_rat, allow_hyphen_values = true)]
    c: BigRational,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)] // parsed once, never stored in bulk
enum Command {
    /// Region membership and the exact zero-nature verdict for one point
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
        /// Also run the closed-form crosscheck and print its summary
        #[arg(long)]
        crosscheck: bool,
    },
    /// Full division-sequence trace as JSON
    Trace {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Numeric roots, census and minimum gap
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
    /// Predicted interval census, when a covered band applies
    Predict {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
    /// Sweep a (c, b) grid and emit one CSV row per admissible point
    Scan {
        /// Polynomial degree (at least 2)
        #[arg(short)]
        n: u32,
        /// b range as "min:max:step" in exact rationals
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        b_range: RangeSpec,
        /// c range as "min:max:step" in exact rationals
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        c_range: RangeSpec,
        /// Minimum distance from every boundary line to include a point
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "1/20")]
        margin: BigRational,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 0 iff every check passes
    Verify {
        #[arg(value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Same as the positional level, for flag-style invocation
        #[arg(long = "level", value_enum)]
        level_flag: Option<LevelArg>,
        #[arg(long)]
        json: bool,
        /// Self-test: flip one factor sign in the closed form for c_k and
        /// prove the suite catches it (num1..num4, den1, den2, densq)
        #[arg(long, value_parser = parse_ck_factor)]
        mutate_ck: Option<CkFactor>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Debug, Clone)]
struct RangeSpec {
    min: BigRational,
    max: BigRational,
    step: BigRational,
}

impl RangeSpec {
    fn values(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut v = self.min.clone();
        while v <= self.max {
            out.push(v.clone());
            v += &self.step;
        }
        out
    }
}

fn parse_rat(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range {s:?} must be min:max:step"));
    }
    let spec = RangeSpec {
        min: parse_rat(parts[0])?,
        max: parse_rat(parts[1])?,
        step: parse_rat(parts[2])?,
    };
    if !spec.step.is_positive() {
        return Err("range step must be positive".into());
    }
    if spec.min > spec.max {
        return Err("range is empty (min > max)".into());
    }
    Ok(spec)
}

fn parse_ck_factor(s: &str) -> Result<CkFactor, String> {
    CkFactor::from_str(s)
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(err: std::io::Error) -> Self {
        Failure {
            code: 3,
            message: err.to_string(),
        }
    }
}

fn params(args: &ParamArgs) -> Result<HypParams, Failure> {
    HypParams::new(args.n, args.b.clone(), args.c.clone())
        .map_err(|e| Failure::usage(e.to_string()))
}

/// The region label appropriate to the degree: the four main regions for
/// n >= 4, the discriminant cases for n in {2, 3}.
fn degree_region(p: &HypParams) -> Result<(RegionLabel, Option<BigRational>), Failure> {
    if p.n() >= 4 {
        let label = main_region(p).map_err(|e| Failure::usage(e.to_string()))?;
        Ok((label, None))
    } else if p.n() >= 2 {
        let (label, witness) = smalln_real_simple(p).map_err(|e| Failure::usage(e.to_string()))?;
        Ok((label, Some(witness)))
    } else {
        Err(Failure::usage("classification needs degree n >= 2"))
    }
}

fn cmd_classify(args: &ParamArgs, json: bool, with_crosscheck: bool) -> Result<(), Failure> {
    let p = params(args)?;
    let (region, witness) = degree_region(&p)?;
    let orth = orthogonality_region(&p);
    let trace = classify_2f1(&p);
    let (nature, c_values): (String, Vec<String>) = match &trace {
        Ok(t) => (
            t.classification.to_string(),
            t.c_values().iter().map(|c| c.to_string()).collect(),
        ),
        Err(SturmError::DegreeTooSmall { .. }) => {
            return Err(Failure::usage("sequence needs degree n >= 2"))
        }
        Err(e @ SturmError::IndeterminateTrace { .. }) => (format!("indeterminate ({e})"), vec![]),
    };
    let check = if with_crosscheck {
        Some(crosscheck(&p).map_err(|e| Failure::usage(e.to_string()))?)
    } else {
        None
    };
    if json {
        let value = json!({
            "n": p.n(),
            "b": p.b().to_string(),
            "c": p.c().to_string(),
            "region": region,
            "orthogonality": orth,
            "zero_nature": nature,
            "c_values": c_values,
            "witness": witness.map(|w| w.to_string()),
            "crosscheck": check,
        });
        println!("{value}");
    } else {
        println!("polynomial: {}", build_2f1(&p));
        println!(
            "region: {} ({}; {})",
            region.scheme, region.basis, region.detail
        );
        println!("orthogonality: {} ({})", orth.scheme, orth.detail);
        if let Some(w) = witness {
            println!("witness: {w}");
        }
        println!("zero_nature: {nature}");
        if !c_values.is_empty() {
            println!("c_values: {}", c_values.join(", "));
        }
        if let Some(report) = check {
            println!(
                "crosscheck: {} ({} entries{})",
                if report.all_ok { "all_ok" } else { "MISMATCH" },
                report.entries.len(),
                if report.notes.is_empty() {
                    String::new()
                } else {
                    format!("; notes: {}", report.notes.join(" | "))
                }
            );
        }
    }
    Ok(())
}

fn cmd_trace(args: &ParamArgs) -> Result<(), Failure> {
    let p = params(args)?;
    let trace = classify_2f1(&p).map_err(|e| Failure::usage(e.to_string()))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&trace).expect("trace serializes")
    );
    Ok(())
}

fn cmd_roots(args: &ParamArgs, json: bool) -> Result<(), Failure> {
    let p = params(args)?;
    let poly = build_2f1(&p);
    let cfg = OracleConfig::default();
    let rs = find_roots(&poly, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
    let report = census(&rs).ok();
    let gap = min_gap(&rs).ok();
    if json {
        let value = json!({
            "roots": rs,
            "census": report,
            "min_gap": gap,
        });
        println!("{value}");
    } else {
        println!("polynomial: {poly}");
        for (z, r) in rs.roots.iter().zip(&rs.residuals) {
            println!("root: {:+.12e} {:+.12e}i  (residual {r:.2e})", z.re, z.im);
        }
        match report {
            Some(rep) => println!(
                "census: neg={} unit={} tail={} nonreal={}",
                rep.neg, rep.unit, rep.tail, rep.nonreal
            ),
            None => println!("census: ambiguous (root at an interval endpoint)"),
        }
        if let Some(g) = gap {
            println!("min_gap: {g:.3e}");
        }
    }
    Ok(())
}

fn cmd_predict(args: &ParamArgs, json: bool) -> Result<(), Failure> {
    let p = params(args)?;
    let prediction = predict_counts(&p).map_err(|e| Failure::usage(e.to_string()))?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&prediction).expect("serializes")
        );
    } else {
        match prediction {
            Prediction::Covered { report } => println!(
                "covered: neg={} unit={} tail={} nonreal={} ({:?})",
                report.neg, report.unit, report.tail, report.nonreal, report.source
            ),
            Prediction::NotCovered => println!("not covered by any census band"),
        }
    }
    Ok(())
}

const SCAN_HEADER: &str = "c,b,region,sturm,pred_neg,pred_unit,pred_tail,pred_nonreal,num_neg,num_unit,num_tail,num_nonreal,agree";

fn scan_row(n: u32, b: &BigRational, c: &BigRational) -> Option<String> {
    let p = HypParams::new(n, b.clone(), c.clone()).ok()?;
    let region = if n >= 4 {
        main_region(&p).expect("n >= 4").scheme.to_string()
    } else {
        smalln_real_simple(&p)
            .expect("n in 2..=3")
            .0
            .scheme
            .to_string()
    };
    let sturm = match classify_2f1(&p) {
        Ok(t) => t.classification.to_string(),
        Err(_) => "indeterminate".to_string(),
    };
    let predicted: Option<ZeroReport> = match predict_counts(&p) {
        Ok(Prediction::Covered { report }) => Some(report),
        _ => None,
    };
    let numeric = find_roots(&build_2f1(&p), &OracleConfig::default())
        .ok()
        .and_then(|rs| census(&rs).ok());
    let blank = || ["", "", "", ""].map(String::from);
    let fmt = |r: &ZeroReport| {
        [
            r.neg.to_string(),
            r.unit.to_string(),
            r.tail.to_string(),
            r.nonreal.to_string(),
        ]
    };
    let pred_cols = predicted.as_ref().map_or_else(blank, fmt);
    let num_cols = numeric.as_ref().map_or_else(blank, fmt);
    let agree = match (&predicted, &numeric) {
        (Some(p), Some(q)) => {
            if p.counts() == q.counts() {
                "1"
            } else {
                "0"
            }
        }
        _ => "na",
    };
    Some(format!(
        "{c},{b},{region},{sturm},{},{},{}",
        pred_cols.join(","),
        num_cols.join(","),
        agree
    ))
}

fn cmd_scan(
    n: u32,
    b_range: &RangeSpec,
    c_range: &RangeSpec,
    margin: &BigRational,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::usage("scan needs degree n >= 2"));
    }
    if margin.is_negative() {
        return Err(Failure::usage("margin must be nonnegative"));
    }
    let b_values = b_range.values();
    let c_values = c_range.values();
    if b_values.is_empty() || c_values.is_empty() {
        return Err(Failure::usage("empty scan range"));
    }
    let rows: Vec<String> = c_values
        .par_iter()
        .flat_map(|c| {
            let b_values = &b_values;
            b_values.par_iter().filter_map(move |b| {
                if &scan_clearance(n, b, c) < margin {
                    return None;
                }
                scan_row(n, b, c)
            })
        })
        .collect();
    let mut body = String::with_capacity(rows.len() * 64 + SCAN_HEADER.len() + 1);
    body.push_str(SCAN_HEADER);
    body.push('\n');
    for row in rows {
        body.push_str(&row);
        body.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, body).map_err(Failure::io)?,
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(Failure::io)?,
    }
    Ok(())
}

fn cmd_verify(level: Level, json: bool, mutate: Option<CkFactor>) -> Result<(), Failure> {
    if let Some(factor) = mutate {
        eprintln!(
            "note: verifying with factor {} sign-flipped in the closed form for c_k",
            factor.expression()
        );
    }
    let outcomes = run_suite(level, mutate);
    for o in &outcomes {
        println!(
            "{} {} ({} ms): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.millis,
            o.detail
        );
    }
    let ok = all_passed(&outcomes);
    if json || !ok {
        let report = json!({
            "passed": ok,
            "checks": outcomes,
        });
        println!("{report}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "verification failed".into(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify {
            params,
            json,
            crosscheck,
        } => cmd_classify(params, *json, *crosscheck),
        Command::Trace { params } => cmd_trace(params),
        Command::Roots { params, json } => cmd_roots(params, *json),
        Command::Predict { params, json } => cmd_predict(params, *json),
        Command::Scan {
            n,
            b_range,
            c_range,
            margin,
            out,
        } => cmd_scan(*n, b_range, c_range, margin, out.as_ref()),
        Command::Verify {
            level,
            level_flag,
            json,
            mutate_ck,
        } => cmd_verify(level_flag.unwrap_or(*level).into(), *json, *mutate_ck),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
