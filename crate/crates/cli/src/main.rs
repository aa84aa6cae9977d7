//! `cabling`: command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 oracle mismatch.

mod output;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::process::ExitCode;

use cabling::cable::{bezout, cable_detected_set, torus_knot_detected, CableParams, DetectionMode};
use cabling::exact::parse_rational;
use cabling::intervals::{cable_interval, ray_union, relative_interval, Direction, RelativeIntervalResult};
use cabling::jn::{jn_realizable, JNQuery};
use cabling::oracle::grid_scan_interval;
use cabling::{Error, ExtRational, SlopeSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use output::{render_text, CommandResult, Payload, Witness};

#[derive(Parser, Debug)]
#[command(name = "cabling", version, about = "Exact JN-realisability and detected slopes of cabled knots")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide JN-realisability of (J; b; γ; τ).
    Jn(JnArgs),
    /// Relative intervals T and T~ (cable space via --p/--q, or raw --gamma data).
    Interval(IntervalArgs),
    /// Union of T(C; ∅; τ) over a ray of inner slopes.
    RayUnion(RayArgs),
    /// Push a companion's detected set through a cable space.
    Cable(CableArgs),
    /// Detected slopes of the (p, q) torus knot.
    Torus(PqArgs),
    /// Brute-force scan of a cable interval against the computed one.
    Oracle(OracleArgs),
    /// Bézout data (r, s) and γ for a cable space.
    Bezout(PqArgs),
}

#[derive(Args, Debug)]
struct JnArgs {
    /// Strict indices into --tau, 1-based, comma separated; "" for none.
    #[arg(long = "J", default_value = "", allow_hyphen_values = true)]
    j: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    tau: String,
}

#[derive(Args, Debug)]
struct IntervalArgs {
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    /// Raw Seifert data instead of a cable space.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
    gamma: Option<String>,
    /// The fixed entries τ₁..τ_{r−1}; a single slope for cable spaces.
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    #[arg(long = "J", default_value = "", allow_hyphen_values = true)]
    j: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Geq,
    Leq,
}

#[derive(Args, Debug)]
struct RayArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    #[arg(long, value_enum)]
    direction: DirectionArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Weak,
    Regular,
    Strong,
}

#[derive(Args, Debug)]
struct CableArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    /// Detected set of the companion knot, e.g. "[-inf,1]".
    #[arg(long, allow_hyphen_values = true)]
    input: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Regular)]
    mode: ModeArg,
    /// Do not assume the input is also the companion's weakly detected set.
    #[arg(long)]
    regular_only: bool,
}

#[derive(Args, Debug)]
struct PqArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    /// "1" makes the inner slot strict.
    #[arg(long = "J", default_value = "", allow_hyphen_values = true)]
    j: String,
    /// Scan T~ instead of T.
    #[arg(long)]
    strict_last: bool,
    #[arg(long = "max-denominator", default_value_t = 24)]
    max_denominator: u64,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<CommandResult, Failure>;

fn rationals(list: &str) -> Result<Vec<BigRational>, Failure> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(|x| parse_rational(x.trim()).map_err(Failure::from)).collect()
}

fn slopes(list: &str) -> Result<Vec<ExtRational>, Failure> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(|x| x.trim().parse::<ExtRational>().map_err(Failure::from)).collect()
}

fn one_slope(text: &str) -> Result<BigRational, Failure> {
    match text.trim().parse::<ExtRational>()? {
        ExtRational::Finite(q) => Ok(q),
        ExtRational::Infinity => Err(Error::InfiniteSlope.into()),
    }
}

/// 1-based comma list to 0-based indices.
fn strict_set(list: &str) -> Result<BTreeSet<usize>, Failure> {
    let mut out = BTreeSet::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let k: usize = part.parse().map_err(|_| Failure::Usage(format!("bad index {part:?} in --J")))?;
        if k == 0 {
            return Err(Failure::Usage("--J indices are 1-based".into()));
        }
        out.insert(k - 1);
    }
    Ok(out)
}

fn inner_strict(list: &str) -> Result<bool, Failure> {
    let j = strict_set(list)?;
    if j.iter().any(|&k| k != 0) {
        return Err(Failure::Usage("for a cable space --J may only contain 1".into()));
    }
    Ok(!j.is_empty())
}

fn params(p: i64, q: i64) -> Result<CableParams, Failure> {
    Ok(bezout(p, q)?)
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn result(command: &str, inputs: BTreeMap<String, String>, payload: Payload, refs: &[&str]) -> CommandResult {
    CommandResult { command: command.into(), inputs, result: payload, refs: refs.iter().map(|s| s.to_string()).collect() }
}

fn cmd_jn(a: &JnArgs) -> Outcome {
    let b: BigInt = a.b.trim().parse().map_err(|_| Failure::Usage(format!("--b must be an integer, got {:?}", a.b)))?;
    let q = JNQuery::from_slopes(rationals(&a.gamma)?, &slopes(&a.tau)?, strict_set(&a.j)?, b)?;
    let d = jn_realizable(&q)?;
    let payload = Payload {
        realizable: Some(d.realizable),
        witness: d.witness.map(|w| Witness { a: w.a, n: w.n, numerators: w.numerators, complemented: d.complemented }),
        ..Payload::default()
    };
    let ins = inputs(&[("J", a.j.clone()), ("b", a.b.clone()), ("gamma", a.gamma.clone()), ("tau", a.tau.clone())]);
    Ok(result("jn", ins, payload, &[d.rule.tag()]))
}

fn interval_payload(r: &RelativeIntervalResult) -> Payload {
    let mut values = BTreeMap::new();
    values.insert("m0".into(), r.quantities.m0.to_string());
    values.insert("m1".into(), r.quantities.m1.to_string());
    if let Some(e) = &r.eta {
        values.insert("eta".into(), ExtRational::Finite(e.clone()).to_string());
    }
    if let Some(x) = &r.xi {
        values.insert("xi".into(), ExtRational::Finite(x.clone()).to_string());
    }
    Payload {
        set: Some(r.t_set().arc_strings()),
        strict_set: Some(r.t_strict.arc_strings()),
        values,
        ..Payload::default()
    }
}

fn interval_refs(r: &RelativeIntervalResult) -> Vec<&'static str> {
    let mut refs = vec!["integer-core"];
    if r.eta.is_some() || r.xi.is_some() {
        refs.push("endpoint-search");
    }
    refs
}

fn cmd_interval(a: &IntervalArgs) -> Outcome {
    let (res, ins) = match (&a.gamma, a.p, a.q) {
        (Some(g), _, _) => {
            let res = relative_interval(&rationals(g)?, &rationals(&a.tau)?, &strict_set(&a.j)?)?;
            (res, inputs(&[("gamma", g.clone()), ("tau", a.tau.clone()), ("J", a.j.clone())]))
        }
        (None, Some(p), Some(q)) => {
            let c = params(p, q)?;
            let res = cable_interval(&c, inner_strict(&a.j)?, &one_slope(&a.tau)?)?;
            (res, inputs(&[("p", p.to_string()), ("q", q.to_string()), ("tau", a.tau.clone()), ("J", a.j.clone())]))
        }
        _ => return Err(Failure::Usage("interval needs --p and --q, or --gamma".into())),
    };
    let refs = interval_refs(&res);
    Ok(result("interval", ins, interval_payload(&res), &refs))
}

fn cmd_ray(a: &RayArgs) -> Outcome {
    let c = params(a.p, a.q)?;
    let dir = match a.direction {
        DirectionArg::Geq => Direction::Geq,
        DirectionArg::Leq => Direction::Leq,
    };
    let set = ray_union(&c, dir, &one_slope(&a.tau)?)?;
    let name = if dir == Direction::Geq { "geq" } else { "leq" };
    let ins = inputs(&[("p", a.p.to_string()), ("q", a.q.to_string()), ("tau", a.tau.clone()), ("direction", name.into())]);
    let payload = Payload { set: Some(set.arc_strings()), exactness: Some("equals".into()), ..Payload::default() };
    Ok(result("ray-union", ins, payload, &["ray-union"]))
}

fn cmd_cable(a: &CableArgs) -> Outcome {
    let c = params(a.p, a.q)?;
    let input: SlopeSet = a.input.parse()?;
    let mode = match a.mode {
        ModeArg::Weak => DetectionMode::Weak,
        ModeArg::Regular => DetectionMode::Regular,
        ModeArg::Strong => DetectionMode::Strong,
    };
    let d = cable_detected_set(&c, &input, mode, !a.regular_only)?;
    let payload = Payload {
        set: Some(d.set.arc_strings()),
        exactness: Some(d.exactness.name().into()),
        ..Payload::default()
    };
    let ins = inputs(&[
        ("p", a.p.to_string()),
        ("q", a.q.to_string()),
        ("input", a.input.clone()),
        ("mode", mode.name().into()),
        ("regular_only", a.regular_only.to_string()),
    ]);
    Ok(result("cable", ins, payload, &["mobius-change-of-basis", "interval-union", "fiber-slope-rule"]))
}

fn cmd_torus(a: &PqArgs) -> Outcome {
    let t = torus_knot_detected(a.p, a.q)?;
    let payload = Payload {
        set: Some(vec![t.regular.to_string()]),
        strict_set: Some(t.strong.arc_strings()),
        exactness: Some("equals".into()),
        ..Payload::default()
    };
    let ins = inputs(&[("p", a.p.to_string()), ("q", a.q.to_string())]);
    Ok(result("torus", ins, payload, &["endpoint-search", "mobius-change-of-basis"]))
}

fn cmd_oracle(a: &OracleArgs) -> Outcome {
    if a.max_denominator < 2 {
        return Err(Failure::Usage("--max-denominator must be at least 2".into()));
    }
    let c = params(a.p, a.q)?;
    let tau = one_slope(&a.tau)?;
    let strict = inner_strict(&a.j)?;
    let res = cable_interval(&c, strict, &tau)?;
    let expected = if a.strict_last { res.t_strict.clone() } else { res.t_set() };
    let rep = grid_scan_interval(&c.gamma(), &tau, strict, a.strict_last, a.max_denominator, Some(&expected))?;
    let show = |x: &BigRational| ExtRational::Finite(x.clone()).to_string();
    let mut values = BTreeMap::new();
    values.insert("tested_points".into(), rep.tested_points.to_string());
    if let (Some(lo), Some(hi)) = (&rep.hull_low, &rep.hull_high) {
        values.insert("hull_low".into(), show(lo));
        values.insert("hull_high".into(), show(hi));
    }
    let payload = Payload {
        set: Some(expected.arc_strings()),
        values,
        mismatches: rep.mismatches.iter().map(|(x, w, g)| (show(x), *w, *g)).collect(),
        ..Payload::default()
    };
    let ins = inputs(&[
        ("p", a.p.to_string()),
        ("q", a.q.to_string()),
        ("tau", a.tau.clone()),
        ("J", a.j.clone()),
        ("strict_last", a.strict_last.to_string()),
        ("max_denominator", a.max_denominator.to_string()),
    ]);
    Ok(result("oracle", ins, payload, &["grid-scan"]))
}

fn cmd_bezout(a: &PqArgs) -> Outcome {
    let c = params(a.p, a.q)?;
    let mut values = BTreeMap::new();
    values.insert("p".into(), c.p.to_string());
    values.insert("q".into(), c.q.to_string());
    values.insert("r".into(), c.r.to_string());
    values.insert("s".into(), c.s.to_string());
    values.insert("gamma".into(), ExtRational::Finite(c.gamma()).to_string());
    let payload = Payload { values, ..Payload::default() };
    Ok(result("bezout", inputs(&[("p", a.p.to_string()), ("q", a.q.to_string())]), payload, &["bezout"]))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Jn(a) => cmd_jn(a),
        Command::Interval(a) => cmd_interval(a),
        Command::RayUnion(a) => cmd_ray(a),
        Command::Cable(a) => cmd_cable(a),
        Command::Torus(a) => cmd_torus(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bezout(a) => cmd_bezout(a),
    };
    match outcome {
        Ok(r) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&r).expect("serialisable"),
                Format::Text => render_text(&r),
            };
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if r.result.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
