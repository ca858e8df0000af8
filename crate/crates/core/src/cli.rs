//! Command-line front end.
//!
//! Every subcommand prints plain text by default; `--format json` emits one
//! `{"cmd", "inputs", "result"}` record and `--format csv` a header row plus
//! data rows. Exit codes: 0 on success, 1 on a domain error, 2 on bad usage.

use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::avcode::{hamming_distance, Code, CodeSpec, FamilySpec, MonomialFamily, SetSpec};
use crate::gf::{Field, FieldElem};
use crate::listdec::{decode, DecodeError, DecoderPlan, Preparation};
use crate::mpoly::Monomial;
use crate::zbounds::{improvement_stats, truncate3, BoundMethod, GridShape, MeanReading, StatKind, ZeroBound};

#[derive(Debug, Parser)]
#[command(name = "avcodes", version, about = "Affine variety codes: zero bounds, decoding radii and list decoding")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound on the zeros of multiplicity r of a polynomial with leading monomial X^i.
    Bound(BoundArgs),
    /// Improvement of the recursive bound over Schwartz-Zippel on uniform grids.
    Table(TableArgs),
    /// Length, dimension, distance bound and border of a code.
    CodeInfo(CodeArgs),
    /// Largest number of errors the decoder is prepared for.
    Radius(RadiusArgs),
    /// Precomputes decoder supports as JSON.
    Plan(PlanArgs),
    /// Decodes received words.
    Decode(DecodeArgs),
    /// Encodes random messages, adds errors and decodes.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long, value_parser = parse_method, default_value = "recursive")]
    pub method: BoundMethod,
    /// Exponent vector of the leading monomial.
    #[arg(long, value_delimiter = ',', required = true)]
    pub i: Vec<u32>,
    #[arg(long, value_parser = parse_shape)]
    pub shape: GridShape,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_stat)]
    pub which: StatKind,
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    /// Schwartz-Zippel term used by `--which mean`.
    #[arg(long, value_parser = parse_reading, default_value = "per-multiplicity")]
    pub reading: MeanReading,
}

/// A code, either as a JSON spec or through `--field`, `--m`/`--sets` and `--family`.
#[derive(Debug, Args, Serialize)]
pub struct CodeArgs {
    /// JSON code spec, inline or `@file`.
    #[arg(long, conflicts_with_all = ["field", "m", "sets", "family"])]
    pub code: Option<String>,
    /// `p,e`
    #[arg(long)]
    pub field: Option<String>,
    /// Full grid `F_q^m`.
    #[arg(long, conflicts_with = "sets")]
    pub m: Option<usize>,
    /// Point sets separated by `;`, each `full` or a list of integers, e.g. `0,1,2;full`.
    #[arg(long)]
    pub sets: Option<String>,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Args, Serialize)]
pub struct RadiusArgs {
    #[arg(long, value_parser = parse_shape)]
    pub shape: GridShape,
    #[arg(long, value_parser = parse_family)]
    pub family: FamilySpec,
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    #[arg(long, value_parser = parse_method, value_delimiter = ',', default_value = "recursive")]
    pub method: Vec<BoundMethod>,
}

#[derive(Debug, Args, Serialize)]
pub struct PlanArgs {
    #[arg(long, value_parser = parse_shape)]
    pub shape: GridShape,
    #[arg(long, value_parser = parse_family)]
    pub family: FamilySpec,
    #[arg(long)]
    pub r: u32,
    /// Number of errors; defaults to the largest feasible value.
    #[arg(short = 'E', long = "errors")]
    pub errors: Option<u64>,
    #[arg(long, value_parser = parse_method, default_value = "recursive")]
    pub method: BoundMethod,
    /// Also write the plan to this file.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Plan JSON, inline or `@file`; otherwise built from `--r`, `-E` and `--method`.
    #[arg(long, conflicts_with_all = ["r", "errors"])]
    pub plan: Option<String>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(short = 'E', long = "errors")]
    pub errors: Option<u64>,
    #[arg(long, value_parser = parse_method, default_value = "recursive")]
    pub method: BoundMethod,
    /// Received words, inline or `@file`: JSON arrays or whitespace/comma separated integers, one word per line.
    #[arg(long)]
    pub received: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub r: u32,
    /// Errors per trial; defaults to the largest feasible value.
    #[arg(short = 'E', long = "errors")]
    pub errors: Option<u64>,
    #[arg(long, value_parser = parse_method, default_value = "recursive")]
    pub method: BoundMethod,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    /// Seed of the ChaCha8 generator.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run even if E exceeds the decoding radius, decoding with the plan for the radius.
    #[arg(long)]
    pub force: bool,
    /// Report the elapsed time on stderr.
    #[arg(long)]
    pub timing: bool,
}

fn parse_shape(s: &str) -> Result<GridShape, String> {
    s.parse::<GridShape>().map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<BoundMethod, String> {
    s.parse::<BoundMethod>().map_err(|e| e.to_string())
}

fn parse_stat(s: &str) -> Result<StatKind, String> {
    s.parse()
}

fn parse_reading(s: &str) -> Result<MeanReading, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<FamilySpec, String> {
    let text = match s.strip_prefix("explicit:@") {
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            format!("explicit:{}", body.trim())
        }
        None => s.to_string(),
    };
    FamilySpec::parse(&text).map_err(|e| e.to_string())
}

fn inline_or_file(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain { name: String, message: String },
}

impl<E: std::error::Error + std::fmt::Debug> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain { name: error_name(&format!("{e:?}")), message: e.to_string() }
    }
}

/// Innermost variant name of a nested error's `Debug` form, e.g. `Code(Field(DivisionByZero))` gives `DivisionByZero`.
fn error_name(debug: &str) -> String {
    const WRAPPERS: [&str; 4] = ["Bound", "Poly", "Code", "Field"];
    let mut rest = debug;
    loop {
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        let name = &rest[..end];
        if WRAPPERS.contains(&name) && rest[end..].starts_with('(') {
            rest = &rest[end + 1..];
        } else {
            return name.to_string();
        }
    }
}

/// Output of one subcommand: a JSON result plus its text and CSV renderings.
struct Report {
    result: Value,
    text: String,
    csv: String,
}

/// Parses `args` (including the program name), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let (cmd, inputs, report) = match &cli.command {
        Command::Bound(a) => ("bound", json!(a), bound(a)),
        Command::Table(a) => ("table", json!(a), table(a)),
        Command::CodeInfo(a) => ("code-info", json!(a), code_info(a)),
        Command::Radius(a) => ("radius", json!(a), radius(a)),
        Command::Plan(a) => ("plan", json!(a), plan(a)),
        Command::Decode(a) => ("decode", json!(a), decode_cmd(a)),
        Command::Simulate(a) => ("simulate", json!(a), simulate(a, err)),
    };
    match report {
        Ok(rep) => {
            let body = match cli.format {
                Format::Text => rep.text,
                Format::Csv => rep.csv,
                Format::Json => {
                    serde_json::to_string(&json!({"cmd": cmd, "inputs": inputs, "result": rep.result})).expect("json") + "\n"
                }
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain { name, message }) => {
            if cli.format == Format::Json {
                let rec = json!({"cmd": cmd, "inputs": inputs, "error": {"name": name, "message": message}});
                let _ = writeln!(out, "{rec}");
            }
            let _ = writeln!(err, "error: {name}: {message}");
            1
        }
    }
}

fn single(result: Value, text: String, header: &str) -> Report {
    let csv = format!("{header}\n{text}\n");
    Report { result, text: text + "\n", csv }
}

fn bound(a: &BoundArgs) -> Result<Report, CliError> {
    if a.i.len() != a.shape.arity() {
        return Err(CliError::Usage(format!("--i has {} exponents but --shape has {} sizes", a.i.len(), a.shape.arity())));
    }
    let zb = ZeroBound::new(a.shape.clone(), a.method)?;
    let v = zb.dzero(&a.i, a.r)?;
    let text = if v.is_integer() { v.to_integer().to_string() } else { format!("{}/{}", v.numer(), v.denom()) };
    Ok(single(json!({"numer": v.numer(), "denom": v.denom(), "value": text}), text.clone(), "value"))
}

fn table(a: &TableArgs) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut csv = String::from("m,q,r,which,value\n");
    let mut text = String::new();
    let which = match a.which {
        StatKind::Max => "max",
        StatKind::Mean => "mean",
    };
    for &m in &a.m {
        for &q in &a.q {
            let cells: Vec<String> = a
                .r
                .iter()
                .map(|&r| improvement_stats(m, q, r, a.which, a.reading).map(|v| truncate3(&v)))
                .collect::<Result<_, _>>()?;
            for (&r, cell) in a.r.iter().zip(&cells) {
                rows.push(json!({"m": m, "q": q, "r": r, "value": cell}));
                let _ = writeln!(csv, "{m},{q},{r},{which},{cell}");
            }
            if a.m.len() * a.q.len() * a.r.len() == 1 {
                text = format!("{}\n", cells[0]);
            } else {
                let _ = writeln!(text, "m={m} q={q}: {}", cells.join(" "));
            }
        }
    }
    Ok(Report { result: Value::Array(rows), text, csv })
}

fn build_code(a: &CodeArgs) -> Result<Code, CliError> {
    let spec = match &a.code {
        Some(s) => serde_json::from_str::<CodeSpec>(&inline_or_file(s)?)
            .map_err(|e| CliError::Usage(format!("--code: {e}")))?,
        None => {
            let field = a.field.clone().ok_or_else(|| CliError::Usage("--field or --code is required".into()))?;
            let family = a.family.clone().ok_or_else(|| CliError::Usage("--family is required".into()))?;
            let sets = match (&a.m, &a.sets) {
                (Some(m), None) => vec![SetSpec::Full(crate::avcode::FullMarker::Full); *m],
                (None, Some(s)) => s
                    .split(';')
                    .map(|part| match part.trim() {
                        "full" => Ok(SetSpec::Full(crate::avcode::FullMarker::Full)),
                        t => t
                            .split(',')
                            .map(|x| x.trim().parse::<u32>())
                            .collect::<Result<Vec<_>, _>>()
                            .map(SetSpec::Values)
                            .map_err(|_| CliError::Usage(format!("--sets: bad set {t:?}"))),
                    })
                    .collect::<Result<_, _>>()?,
                _ => return Err(CliError::Usage("exactly one of --m and --sets is required".into())),
            };
            CodeSpec { field, sets, family }
        }
    };
    Ok(spec.build()?)
}

fn monomial_list(ms: &[Monomial]) -> Vec<Vec<u32>> {
    ms.iter().map(|m| m.exps().to_vec()).collect()
}

fn code_info(a: &CodeArgs) -> Result<Report, CliError> {
    let code = build_code(a)?;
    let field = code.field();
    let (n, k, d) = (code.n(), code.dimension(), code.dmin_bound());
    let half = d.saturating_sub(1) / 2;
    let family = code.family();
    let result = json!({
        "field": field.spec(),
        "modulus": field.modulus(),
        "shape": code.ensemble().shape().sizes(),
        "n": n,
        "k": k,
        "dmin_bound": d,
        "half_distance": half,
        "divisor_closed": family.is_divisor_closed(),
        "border": monomial_list(family.border()),
        "monomials": monomial_list(family.monomials()),
    });
    let border: Vec<String> = family.border().iter().map(ToString::to_string).collect();
    let text = format!(
        "field GF({}) shape {}\nn {n}\nk {k}\ndmin_bound {d}\nhalf_distance {half}\ndivisor_closed {}\nborder {}\n",
        field.order(),
        code.ensemble().shape(),
        family.is_divisor_closed(),
        border.join(" ")
    );
    let csv = format!("n,k,dmin_bound,half_distance\n{n},{k},{d},{half}\n");
    Ok(Report { result, text, csv })
}

fn radius(a: &RadiusArgs) -> Result<Report, CliError> {
    let family = MonomialFamily::build(&a.family, &a.shape)?;
    let single_cell = a.r.len() * a.method.len() == 1;
    let mut rows = Vec::new();
    let mut csv = String::from("r,method,radius\n");
    let mut text = String::new();
    for &r in &a.r {
        let mut cells = Vec::new();
        for &method in &a.method {
            let value = match Preparation::new(r, a.shape.clone(), &family, method)?.max_radius() {
                Ok(e) => Some(e),
                Err(DecodeError::NoCorrection(_)) if !single_cell => None,
                Err(e) => return Err(e.into()),
            };
            let shown = value.map_or("-".to_string(), |e| e.to_string());
            rows.push(json!({"r": r, "method": method.name(), "radius": value}));
            let _ = writeln!(csv, "{r},{},{shown}", method.name());
            cells.push(format!("{}={shown}", method.name()));
        }
        if single_cell {
            text = format!("{}\n", rows[0]["radius"]);
        } else {
            let _ = writeln!(text, "r={r}: {}", cells.join(" "));
        }
    }
    let result = if single_cell { rows.pop().expect("one cell") } else { Value::Array(rows) };
    Ok(Report { result, text, csv })
}

fn plan(a: &PlanArgs) -> Result<Report, CliError> {
    let family = MonomialFamily::build(&a.family, &a.shape)?;
    let prep = Preparation::new(a.r, a.shape.clone(), &family, a.method)?;
    let e = match a.errors {
        Some(e) => e,
        None => prep.max_radius()?,
    };
    let p = prep.plan(e, &family)?;
    let body = p.to_json();
    if let Some(path) = &a.out {
        std::fs::write(path, &body).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    }
    let csv = format!("r,E,t,unknowns\n{},{},{},{}\n", p.r, p.e, p.t, p.unknowns());
    Ok(Report { result: serde_json::from_str(&body).expect("plan json"), text: body + "\n", csv })
}

fn plan_for(code: &Code, r: u32, errors: Option<u64>, method: BoundMethod) -> Result<DecoderPlan, CliError> {
    let prep = Preparation::new(r, code.ensemble().shape().clone(), code.family(), method)?;
    let e = match errors {
        Some(e) => e,
        None => prep.max_radius()?,
    };
    Ok(prep.plan(e, code.family())?)
}

fn parse_words(text: &str, field: &Field) -> Result<Vec<Vec<FieldElem>>, CliError> {
    let trimmed = text.trim();
    let raw: Vec<Vec<u64>> = if trimmed.starts_with('[') {
        if let Ok(many) = serde_json::from_str::<Vec<Vec<u64>>>(trimmed) {
            many
        } else if let Ok(one) = serde_json::from_str::<Vec<u64>>(trimmed) {
            vec![one]
        } else {
            trimmed
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| serde_json::from_str::<Vec<u64>>(l.trim()))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("--received: {e}")))?
        }
    } else {
        trimmed
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(format!("--received: {e}")))?
    };
    Ok(raw
        .into_iter()
        .map(|w| w.into_iter().map(|v| field.elem(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?)
}

fn ints(v: &[FieldElem]) -> Vec<u32> {
    v.iter().map(|x| x.value()).collect()
}

fn decode_cmd(a: &DecodeArgs) -> Result<Report, CliError> {
    let code = build_code(&a.code)?;
    let plan = match &a.plan {
        Some(p) => DecoderPlan::from_json(&inline_or_file(p)?).map_err(|e| CliError::Usage(format!("--plan: {e}")))?,
        None => {
            let r = a.r.ok_or_else(|| CliError::Usage("--r or --plan is required".into()))?;
            plan_for(&code, r, a.errors, a.method)?
        }
    };
    let words = parse_words(&inline_or_file(&a.received)?, code.field())?;
    let mut results = Vec::new();
    let mut text = String::new();
    let mut csv = String::from("word,distance,codeword\n");
    for (w, word) in words.iter().enumerate() {
        let output = decode(&code, &plan, word)?;
        let list: Vec<Value> = output
            .candidates
            .iter()
            .map(|c| json!({"message": c.message.to_json_terms(), "codeword": ints(&c.codeword), "distance": c.distance}))
            .collect();
        let _ = writeln!(text, "word {w}: {} candidate(s)", output.candidates.len());
        for c in &output.candidates {
            let cw: Vec<String> = ints(&c.codeword).iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "  distance {}: {}  F = {}", c.distance, cw.join(","), c.message);
            let _ = writeln!(csv, "{w},{},{}", c.distance, cw.join(" "));
        }
        results.push(json!({"E": plan.e, "candidates": list}));
    }
    Ok(Report { result: Value::Array(results), text, csv })
}

fn simulate(a: &SimulateArgs, err: &mut dyn Write) -> Result<Report, CliError> {
    let start = Instant::now();
    let code = build_code(&a.code)?;
    let n = code.n() as u64;
    let prep = Preparation::new(a.r, code.ensemble().shape().clone(), code.family(), a.method)?;
    let e = match a.errors {
        Some(e) => e,
        None => prep.max_radius()?,
    };
    if e > n {
        return Err(DecodeError::RadiusInfeasible { r: a.r, e }.into());
    }
    let plan = match prep.plan(e, code.family()) {
        Ok(p) => p,
        Err(DecodeError::RadiusInfeasible { .. }) if a.force => prep.plan(prep.max_radius()?, code.family())?,
        Err(other) => return Err(other.into()),
    };
    let field: &Arc<Field> = code.field();
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut successes, mut list_total) = (0u32, 0usize);
    for _ in 0..a.trials {
        let message: Vec<FieldElem> = (0..code.dimension()).map(|_| FieldElem(rng.gen_range(0..q))).collect();
        let sent = code.encode(&message)?;
        let mut received = sent.clone();
        for pos in sample(&mut rng, n as usize, e as usize) {
            let shift = FieldElem(rng.gen_range(1..q));
            received[pos] = field.add(received[pos], shift);
        }
        debug_assert_eq!(hamming_distance(&sent, &received) as u64, e);
        let output = decode(&code, &plan, &received)?;
        list_total += output.candidates.len();
        if output.contains(&sent) {
            successes += 1;
        }
    }
    if a.timing {
        let _ = writeln!(err, "elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    let mean_list = if a.trials == 0 { 0.0 } else { list_total as f64 / a.trials as f64 };
    let rate = if a.trials == 0 { 1.0 } else { successes as f64 / a.trials as f64 };
    let result = json!({
        "E": e,
        "plan_E": plan.e,
        "trials": a.trials,
        "successes": successes,
        "success_rate": rate,
        "mean_list_size": mean_list,
    });
    let text = format!("E {e}\ntrials {}\nsuccesses {successes}\nmean_list_size {mean_list:.3}\n", a.trials);
    let csv = format!("E,trials,successes,mean_list_size\n{e},{},{successes},{mean_list:.3}\n", a.trials);
    Ok(Report { result, text, csv })
}
