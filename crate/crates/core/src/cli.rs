//! The `kodaira` command-line front end.
//!
//! Every verb prints one JSON document on standard output. On failure the
//! whole output is an error object `{"code": …, "message": …}` and the exit
//! status is nonzero. Rationals are written `p/q`, complex values `re,im`
//! on the command line and `["re","im"]` in JSON.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{build_curve, list_types, CurveTypeId, KodairaCurve};
use crate::chamber;
use crate::charge::{self, CentralCharge};
use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::rational::{parse_cq, parse_q, q_to_f64, CQ};
use crate::twist::{apply_word, TwistWord};

#[derive(Debug, Parser)]
#[command(name = "kodaira", version, about = "Stability-condition lattice tools for Kodaira curves")]
pub struct Cli {
    /// Add decimal renderings of every exact value under "approx".
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List curve families, or show one curve's data.
    Catalog(CatalogArgs),
    /// Root system of a curve.
    Roots(RootsArgs),
    /// Euler pairing of two classes.
    Pair(PairArgs),
    /// Membership in P0 (and optionally the support form).
    Check(ChargeArgs),
    /// Apply a twist word to a class or a charge.
    Twist(TwistArgs),
    /// Walk a charge into the fundamental chamber.
    Reduce(ReduceArgs),
    /// Walls crossed by a straight segment of normalized charges.
    Walls(WallsArgs),
    /// Jordan–Hölder factors of a skyscraper on a wall.
    Jh(JhArgs),
}

#[derive(Debug, Args)]
pub struct CurveArg {
    /// Curve type: I_3, III, IV, IStar_1, IIStar, IIIStar, IVStar, mI_2:3 …
    #[arg(long)]
    pub curve: String,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// `list` (default) prints the families.
    pub action: Option<String>,
    #[arg(long)]
    pub curve: Option<String>,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    /// Also enumerate all roots with |c|, |m| ≤ bound.
    #[arg(long)]
    pub bound: Option<u32>,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    /// Class as `chi,r1,…,rn`.
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
}

#[derive(Debug, Args)]
pub struct ChargeInput {
    /// Z(O_x) as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<String>,
    /// Z(O_Θᵢ(−1)) as `re,im`, one per component.
    #[arg(long, num_args = 1..)]
    pub z: Vec<String>,
    /// Batch file: one charge per line, either `z0 z1 … zn` or a JSON object.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    #[command(flatten)]
    pub charge: ChargeInput,
    /// Include the support quadratic form with its certificates.
    #[arg(long)]
    pub support: bool,
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Class `chi,r1,…,rn` to twist; otherwise the charge is twisted.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[command(flatten)]
    pub charge: ChargeInput,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    #[command(flatten)]
    pub charge: ChargeInput,
    #[arg(long, default_value_t = 10_000)]
    pub max_steps: usize,
}

#[derive(Debug, Args)]
pub struct WallsArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    #[command(flatten)]
    pub charge: ChargeInput,
    /// End point Z(O_x); defaults to −1.
    #[arg(long, allow_hyphen_values = true)]
    pub z0_end: Option<String>,
    #[arg(long, num_args = 1.., required = true)]
    pub z_end: Vec<String>,
}

#[derive(Debug, Args)]
pub struct JhArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    #[arg(long)]
    pub i: usize,
    #[arg(long, value_parser = parse_int)]
    pub k: i64,
}

fn curve_of(arg: &CurveArg) -> Result<KodairaCurve> {
    build_curve(arg.curve.parse::<CurveTypeId>()?)
}

/// Parses `chi,r1,…,rn`.
pub fn parse_class(s: &str) -> Result<KClass> {
    let nums = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {p:?} in class {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match nums.split_first() {
        Some((chi, ranks)) => Ok(KClass::new(*chi, ranks.to_vec())),
        None => Err(Error::Parse("empty class".into())),
    }
}

fn parse_charge(z0: Option<&str>, z: &[String]) -> Result<CentralCharge> {
    let z0 = match z0 {
        Some(s) => parse_cq(s)?,
        None => return Err(Error::Parse("missing --z0".into())),
    };
    let z = z.iter().map(|s| parse_cq(s)).collect::<Result<Vec<CQ>>>()?;
    Ok(CentralCharge::new(z0, z))
}

/// One batch line: `z0 z1 … zn` or a JSON charge object.
pub fn parse_charge_line(line: &str) -> Result<CentralCharge> {
    let t = line.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
    }
    let parts: Vec<String> = t.split_whitespace().map(String::from).collect();
    match parts.split_first() {
        Some((z0, z)) => parse_charge(Some(z0), z),
        None => Err(Error::Parse("empty charge line".into())),
    }
}

enum Charges {
    One(CentralCharge),
    Batch(Vec<CentralCharge>),
}

fn charges_of(input: &ChargeInput) -> Result<Charges> {
    match &input.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let lines = text
                .lines()
                .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .enumerate()
                .map(|(n, l)| {
                    parse_charge_line(l).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Charges::Batch(lines))
        }
        None => Ok(Charges::One(parse_charge(input.z0.as_deref(), &input.z)?)),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Runs `f` on one charge, or on every batch line in parallel keeping order.
fn per_charge<F>(input: &ChargeInput, f: F) -> Result<Value>
where
    F: Fn(&CentralCharge) -> Result<Value> + Sync,
{
    match charges_of(input)? {
        Charges::One(z) => f(&z),
        Charges::Batch(zs) => {
            let out: Vec<Result<Value>> = zs.par_iter().map(&f).collect();
            let mut values = Vec::with_capacity(out.len());
            for (n, r) in out.into_iter().enumerate() {
                match r {
                    Ok(v) => values.push(v),
                    Err(e) => return Err(prefix_error(e, n + 1)),
                }
            }
            Ok(Value::Array(values))
        }
    }
}

fn prefix_error(e: Error, line: usize) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("line {line}: {m}")),
        Error::InvalidParams(m) => Error::InvalidParams(format!("line {line}: {m}")),
        other => other,
    }
}

fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Catalog(a) => match (a.action.as_deref(), &a.curve) {
            (_, Some(c)) => {
                let curve = build_curve(c.parse::<CurveTypeId>()?)?;
                Ok(json!({
                    "curve": curve,
                    "affine_node": curve.affine_node(),
                    "radical": curve.radical_basis(),
                }))
            }
            (None | Some("list"), None) => Ok(json!({ "types": list_types() })),
            (Some(other), None) => Err(Error::Parse(format!("unknown catalog action {other:?}"))),
        },
        Command::Roots(a) => {
            let curve = curve_of(&a.curve)?;
            let roots = curve.fundamental_roots();
            let mut out = json!({ "fundamental_count": roots.len() });
            if !a.count_only {
                out["fundamental"] = to_value(&roots);
                out["rho"] = to_value(&curve.rho());
            }
            if let Some(b) = a.bound {
                let boxed = curve.enumerate_roots_in_box(b);
                out["box_bound"] = json!(b);
                out["box_count"] = json!(boxed.len());
                if !a.count_only {
                    out["box"] = to_value(&boxed);
                }
            }
            Ok(out)
        }
        Command::Pair(a) => {
            let curve = curve_of(&a.curve)?;
            let v = parse_class(&a.v)?;
            let w = match &a.w {
                Some(w) => parse_class(w)?,
                None => v.clone(),
            };
            Ok(json!({ "v": v, "w": w, "pairing": curve.pair(&v, &w)? }))
        }
        Command::Check(a) => {
            let curve = curve_of(&a.curve)?;
            per_charge(&a.charge, |z| {
                let report = charge::membership(&curve, z)?;
                let mut out = to_value(&report);
                if a.support && report.in_p0 {
                    out["support_form"] = to_value(&charge::support_form(&curve, z)?);
                }
                Ok(out)
            })
        }
        Command::Twist(a) => {
            let curve = curve_of(&a.curve)?;
            let word: TwistWord = a.word.parse()?;
            match &a.v {
                Some(v) => {
                    let v = parse_class(v)?;
                    let out = apply_word(&curve, &word, &v)?;
                    Ok(json!({ "word": word, "input": v, "output": out }))
                }
                None => per_charge(&a.charge, |z| {
                    let out = apply_word(&curve, &word, z)?;
                    Ok(json!({ "word": word, "input": z, "output": out }))
                }),
            }
        }
        Command::Reduce(a) => {
            let curve = curve_of(&a.curve)?;
            per_charge(&a.charge, |z| {
                let trace = chamber::reduce_to_fundamental(&curve, z, a.max_steps)?;
                let verdict = chamber::in_fundamental_chamber(&curve, &trace.final_charge, true)?;
                let mut out = to_value(&trace);
                out["verdict"] = to_value(&verdict);
                Ok(out)
            })
        }
        Command::Walls(a) => {
            let curve = curve_of(&a.curve)?;
            let start = charge_single(&a.charge)?;
            let end = parse_charge(Some(a.z0_end.as_deref().unwrap_or("-1,0")), &a.z_end)?;
            let za = chamber::normalize(&curve, &start)?;
            let zb = chamber::normalize(&curve, &end)?;
            let events = chamber::wall_crossings_on_segment(&curve, &za, &zb)?;
            Ok(json!({ "start": za, "end": zb, "events": events }))
        }
        Command::Jh(a) => {
            let curve = curve_of(&a.curve)?;
            let tp = chamber::torsion_pair_data(&curve, a.i, a.k)?;
            Ok(json!({
                "i": a.i,
                "k": a.k,
                "factors": [&tp.jh_factors.0, &tp.jh_factors.1],
                "torsion_pair": tp,
            }))
        }
    }
}

fn charge_single(input: &ChargeInput) -> Result<CentralCharge> {
    match charges_of(input)? {
        Charges::One(z) => Ok(z),
        Charges::Batch(_) => Err(Error::Parse("--input is not supported by this verb".into())),
    }
}

/// Mirrors `v`, replacing every string that parses as a rational by its
/// decimal value; other strings are dropped.
fn approximate(v: &Value) -> Value {
    match v {
        Value::String(s) => parse_q(s).map(|x| json!(q_to_f64(&x))).unwrap_or(Value::Null),
        Value::Array(xs) => Value::Array(xs.iter().map(approximate).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), approximate(x))).collect()),
        other => other.clone(),
    }
}

fn looks_negative(s: &str) -> bool {
    let mut c = s.chars();
    c.next() == Some('-') && c.next().is_some_and(|d| d.is_ascii_digit() || d == '.')
}

fn parse_int(s: &str) -> std::result::Result<i64, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn error_json(e: &Error) -> String {
    json!({ "code": e.code(), "message": e.to_string() }).to_string()
}

/// Runs one invocation; returns the text for stdout and the exit status.
pub fn run(cli: &Cli) -> (String, i32) {
    match dispatch(cli) {
        Ok(mut v) => {
            if cli.approx {
                let a = approximate(&v);
                match &mut v {
                    Value::Object(m) => {
                        m.insert("approx".into(), a);
                    }
                    other => *other = json!({ "exact": other.clone(), "approx": a }),
                }
            }
            (serde_json::to_string_pretty(&v).expect("json"), 0)
        }
        Err(e) => (error_json(&e), 1),
    }
}

/// Parses arguments and runs; argument errors become `ParseError` objects.
pub fn run_from_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Values such as `-1,0` would otherwise end a multi-valued flag; a
    // leading space keeps them values and is trimmed by the parsers.
    let args = args.into_iter().map(|a| {
        let a: OsString = a.into();
        match a.to_str() {
            Some(s) if looks_negative(s) => OsString::from(format!(" {s}")),
            _ => a,
        }
    });
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                (e.to_string(), 0)
            }
            _ => (error_json(&Error::Parse(e.to_string().trim().to_string())), 2),
        },
    }
}
