//! Command-line front end: relation verification, trace replay, invariant
//! reports, divisor pairings, the covering sequence, obstruction checks,
//! the genus-two geography table, section bounds, and the T-operation.
//!
//! Exit codes: 0 = computed (including negative verdicts), 1 = a
//! verification failed, 2 = input error. Output is deterministic;
//! identical inputs give byte-identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz::corpus;
use lefschetz::invariants::{compute_report, FibrationData, InvariantReport, SignatureSource};
use lefschetz::moduli::{
    self, brill_noether_class, covering_divisor, hyperelliptic_class, weierstrass_class,
    DivisorClass, Normalization, SphereData,
};
use lefschetz::obstruct::{
    covering_boundedness, genus2_geography, genus2_section_bound, genus3_obstruction,
    CoveringVerdict, SectionBound,
};
use lefschetz::rewrite::{apply_t, apply_t_inv, check_trace, AxiomSet, TraceError};
use lefschetz::surface::CurveAlphabet;
use lefschetz::textio;
use lefschetz::word::{homology_image, verify_relation_homology, Relation, TwistWord};
use lefschetz::BigRational;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "lefschetz",
    about = "Positive relations of Dehn twists: verification, invariants, and moduli pairings",
    version
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check a relation at the homology level (necessary, not sufficient).
    Verify(VerifyArgs),
    /// Replay a rewriting trace and compare against its claimed end.
    Trace(TraceArgs),
    /// Compute the invariant report of a positive relation.
    Invariants(InvariantArgs),
    /// Pair a divisor class with sphere data.
    Pair(PairArgs),
    /// Evaluate the covering sequence and its boundedness verdict.
    Covering(CoveringArgs),
    /// Genus-three non-holomorphicity obstruction.
    Obstruct(ObstructArgs),
    /// The genus-two geography table.
    Geography,
    /// Genus-two section-square bound.
    SectionBound(SectionBoundArgs),
    /// Apply the T-operation or its inverse to a word.
    Transform(TransformArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Bundled relation ids; repeat the flag to verify a batch.
    #[arg(long = "corpus", num_args = 1.., value_name = "ID")]
    corpus: Vec<String>,
    /// Word file (left-hand side); requires --alphabet.
    #[arg(long)]
    word: Option<String>,
    /// Alphabet file for --word/--rhs.
    #[arg(long)]
    alphabet: Option<String>,
    /// Right-hand side word file; empty word when omitted.
    #[arg(long)]
    rhs: Option<String>,
    /// Verification mode.
    #[arg(long, default_value = "homology")]
    mode: String,
    /// Worker threads for batch verification.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct TraceArgs {
    /// Bundled trace id (`fuller`).
    #[arg(long)]
    corpus: Option<String>,
    /// Trace file (moves, one per line).
    #[arg(long)]
    file: Option<String>,
    /// Start word file (with --file).
    #[arg(long)]
    start: Option<String>,
    /// Claimed end word file (with --file).
    #[arg(long)]
    end: Option<String>,
    /// Alphabet file (with --file).
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args)]
struct InvariantArgs {
    /// Bundled relation id.
    #[arg(long)]
    corpus: Option<String>,
    /// Word file of the positive relation.
    #[arg(long)]
    relation: Option<String>,
    /// Alphabet file (with --relation).
    #[arg(long)]
    alphabet: Option<String>,
    /// Optional genus cross-check.
    #[arg(long)]
    genus: Option<usize>,
    /// Base points (0 = fibration).
    #[arg(long = "base-points", default_value_t = 0)]
    base_points: u32,
    /// Signature source: `endo` | `genus2` | `user:<sigma>`.
    #[arg(long = "sigma-source")]
    sigma_source: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    /// Class name (`hyperelliptic[-chow]` | `brill-noether:<g>` |
    /// `covering:<g>:<h>` | `weierstrass`) or a class file of
    /// `key = value` coefficients.
    #[arg(long)]
    class: String,
    /// Sphere data file (key = value lines).
    #[arg(long, conflicts_with = "report")]
    sphere: Option<String>,
    /// Invariant report file to build the sphere from.
    #[arg(long)]
    report: Option<String>,
    /// Section self-intersections for --report, e.g. -1,-1.
    #[arg(long, allow_hyphen_values = true)]
    sections: Option<String>,
}

#[derive(Args)]
struct CoveringArgs {
    /// K·ω for the integral symplectic form.
    #[arg(long = "K.w", alias = "k-dot-w", allow_hyphen_values = true)]
    k_dot_omega: i64,
    /// ω².
    #[arg(long = "w2")]
    omega_sq: i64,
    /// c₁² of the manifold.
    #[arg(long = "c1sq", allow_hyphen_values = true)]
    c1_sq: i64,
    /// c₂ of the manifold.
    #[arg(long = "c2", allow_hyphen_values = true)]
    c2: i64,
    /// Largest even degree to evaluate.
    #[arg(long)]
    kmax: u32,
}

#[derive(Args)]
struct ObstructArgs {
    #[arg(long, allow_hyphen_values = true)]
    e: i64,
    #[arg(long, allow_hyphen_values = true)]
    sigma: i64,
    /// Declare a reducible fibre (the obstruction then refuses a verdict).
    #[arg(long)]
    reducible: bool,
    /// Use the braid-factorisation refinement 14 | e+1.
    #[arg(long)]
    mod14: bool,
}

#[derive(Args)]
struct SectionBoundArgs {
    #[arg(long)]
    d0: u64,
    #[arg(long)]
    d1: u64,
    /// Section self-intersection s·s.
    #[arg(long, allow_hyphen_values = true)]
    ss: i64,
}

#[derive(Args)]
struct TransformArgs {
    /// Bundled relation id.
    #[arg(long)]
    corpus: Option<String>,
    /// Word file.
    #[arg(long)]
    word: Option<String>,
    /// Alphabet file (with --word).
    #[arg(long)]
    alphabet: Option<String>,
    /// Operation: t (δ₁δ₂ → chain side) or tinv.
    #[arg(long)]
    op: String,
    /// Letter position the operation applies at.
    #[arg(long)]
    at: usize,
    /// Embedding, e.g. u:a1,v:b1,w:a2,d1:d2,d2:e2.
    #[arg(long)]
    map: String,
}

/// Failures that should exit 2 with a diagnostic.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            print!("{report}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns the rendered report and whether verification (if any) passed.
fn run(cli: &Cli) -> Result<(String, bool), InputError> {
    match &cli.command {
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::Trace(args) => cmd_trace(args, cli.format),
        Command::Invariants(args) => cmd_invariants(args, cli.format),
        Command::Pair(args) => cmd_pair(args, cli.format),
        Command::Covering(args) => cmd_covering(args, cli.format),
        Command::Obstruct(args) => cmd_obstruct(args, cli.format),
        Command::Geography => cmd_geography(cli.format),
        Command::SectionBound(args) => cmd_section_bound(args, cli.format),
        Command::Transform(args) => cmd_transform(args, cli.format),
    }
}

fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn load_alphabet(path: &str) -> Result<Arc<CurveAlphabet>, InputError> {
    Ok(Arc::new(
        textio::parse_alphabet(&read_file(path)?).map_err(|e| InputError(format!("{path}: {e}")))?,
    ))
}

fn load_word(path: &str, alphabet: &Arc<CurveAlphabet>) -> Result<TwistWord, InputError> {
    textio::parse_word(&read_file(path)?, alphabet).map_err(|e| InputError(format!("{path}: {e}")))
}

fn corpus_entry(id: &str) -> Result<&'static corpus::CorpusEntry, InputError> {
    corpus::entry(id).ok_or_else(|| {
        let known: Vec<&str> = corpus::entries().iter().map(|e| e.id).collect();
        InputError(format!("unknown corpus id `{id}`; bundled: {}", known.join(", ")))
    })
}

fn render(format: Format, pairs: &[(&str, String)], structured: Value) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for (k, v) in pairs {
                let _ = writeln!(out, "{k} = {v}");
            }
            out
        }
        Format::Structured => {
            let mut text = serde_json::to_string_pretty(&structured).expect("serializable");
            text.push('\n');
            text
        }
    }
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<(String, bool), InputError> {
    if args.mode != "homology" {
        return Err(InputError(format!(
            "unknown mode `{}`; use homology (exact replay is the `trace` command)",
            args.mode
        )));
    }
    // Assemble (label, relation) pairs in input order.
    let mut tasks: Vec<(String, Relation)> = Vec::new();
    for id in &args.corpus {
        let entry = corpus_entry(id)?;
        let word = entry.word()?;
        tasks.push((id.clone(), Relation::to_identity(word)));
    }
    if let Some(word_path) = &args.word {
        let alphabet_path = args
            .alphabet
            .as_ref()
            .ok_or_else(|| InputError("--word needs --alphabet".into()))?;
        let alphabet = load_alphabet(alphabet_path)?;
        let lhs = load_word(word_path, &alphabet)?;
        let rhs = match &args.rhs {
            Some(path) => load_word(path, &alphabet)?,
            None => TwistWord::empty(alphabet.clone()),
        };
        tasks.push((word_path.clone(), Relation::new(lhs, rhs)?));
    }
    if tasks.is_empty() {
        return Err(InputError("nothing to verify: give --corpus or --word".into()));
    }

    let results: Vec<bool> = if args.jobs > 1 && tasks.len() > 1 {
        let chunk = tasks.len().div_ceil(args.jobs);
        let mut results = vec![false; tasks.len()];
        std::thread::scope(|scope| {
            for (slot, work) in results.chunks_mut(chunk).zip(tasks.chunks(chunk)) {
                scope.spawn(move || {
                    for (out, (_, relation)) in slot.iter_mut().zip(work) {
                        *out = verify_relation_homology(relation);
                    }
                });
            }
        });
        results
    } else {
        tasks.iter().map(|(_, r)| verify_relation_homology(r)).collect()
    };

    let all_ok = results.iter().all(|&ok| ok);
    let pairs: Vec<(&str, String)> = tasks
        .iter()
        .zip(&results)
        .map(|((label, _), ok)| {
            (label.as_str(), if *ok { "pass".to_string() } else { "fail".to_string() })
        })
        .collect();
    let items: Vec<Value> = tasks
        .iter()
        .zip(&results)
        .map(|((label, _), ok)| json!({"input": label, "pass": ok}))
        .collect();
    let structured = json!({
        "schema": "lefschetz/1",
        "command": "verify",
        "mode": "homology",
        "results": items,
        "pass": all_ok,
    });
    Ok((render(format, &pairs, structured), all_ok))
}

// ---------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------

fn cmd_trace(args: &TraceArgs, format: Format) -> Result<(String, bool), InputError> {
    let trace = match (&args.corpus, &args.file) {
        (Some(id), None) => {
            if id != "fuller" {
                return Err(InputError(format!("unknown bundled trace `{id}`; bundled: fuller")));
            }
            corpus::fuller_trace()?
        }
        (None, Some(file)) => {
            let alphabet_path = args
                .alphabet
                .as_ref()
                .ok_or_else(|| InputError("--file needs --alphabet".into()))?;
            let start_path =
                args.start.as_ref().ok_or_else(|| InputError("--file needs --start".into()))?;
            let end_path =
                args.end.as_ref().ok_or_else(|| InputError("--file needs --end".into()))?;
            let alphabet = load_alphabet(alphabet_path)?;
            let start = load_word(start_path, &alphabet)?;
            let claimed_end = load_word(end_path, &alphabet)?;
            let moves = textio::parse_moves(&read_file(file)?)
                .map_err(|e| InputError(format!("{file}: {e}")))?;
            textio::trace_from_parts(start, moves, claimed_end)
        }
        _ => return Err(InputError("give exactly one of --corpus or --file".into())),
    };
    let moves = trace.moves.len();
    let outcome = check_trace(&trace, &AxiomSet::builtin());
    let (ok, detail) = match &outcome {
        Ok(()) => (true, "replayed to the claimed end".to_string()),
        Err(TraceError::MoveFailed { index, source }) => {
            (false, format!("move {index} failed: {source}"))
        }
        Err(TraceError::EndMismatch) => (false, "replay does not match the claimed end".into()),
    };
    let pairs = vec![
        ("moves", moves.to_string()),
        ("result", if ok { "pass".into() } else { "fail".into() }),
        ("detail", detail.clone()),
    ];
    let structured = json!({
        "schema": "lefschetz/1",
        "command": "trace",
        "moves": moves,
        "pass": ok,
        "detail": detail,
    });
    Ok((render(format, &pairs, structured), ok))
}

// ---------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------

fn parse_sigma_source(value: &str) -> Result<SignatureSource, InputError> {
    match value {
        "endo" | "endo_g3" => Ok(SignatureSource::EndoGenus3),
        "genus2" | "genus2_formula" => Ok(SignatureSource::Genus2Formula),
        other => {
            let value = other
                .strip_prefix("user:")
                .ok_or_else(|| {
                    InputError(format!("bad --sigma-source `{other}`; endo | genus2 | user:<n>"))
                })?
                .parse::<i64>()
                .map_err(|_| InputError(format!("bad user signature in `{other}`")))?;
            Ok(SignatureSource::UserSupplied(value))
        }
    }
}

fn report_json(rep: &InvariantReport) -> Value {
    let mut census = BTreeMap::new();
    census.insert("n".to_string(), json!(rep.census.n));
    for (h, count) in &rep.census.s_by_genus {
        census.insert(format!("s{h}"), json!(count));
    }
    census.insert("total".to_string(), json!(rep.census.total));
    let mut value = json!({
        "base_points": rep.base_points,
        "c1_sq": rep.c1_sq,
        "c2": rep.c2,
        "census": census,
        "e": rep.e,
        "genus": rep.genus,
        "h1": rep.h1.as_ref().map(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        "lambda": rep.lambda.to_string(),
        "sigma": rep.sigma,
        "sigma_fib": rep.sigma_fib(),
        "sigma_source": rep.signature_source.label(),
    });
    if rep.signature_source == SignatureSource::Genus2Formula {
        value["sigma_note"] = json!(textio::GENUS2_SIGN_NOTE);
    }
    value
}

fn cmd_invariants(args: &InvariantArgs, format: Format) -> Result<(String, bool), InputError> {
    let data = match (&args.corpus, &args.relation) {
        (Some(id), None) => {
            let entry = corpus_entry(id)?;
            let mut data = entry.fibration()?;
            if let Some(source) = &args.sigma_source {
                data.signature_source = parse_sigma_source(source)?;
            }
            data
        }
        (None, Some(path)) => {
            let alphabet_path = args
                .alphabet
                .as_ref()
                .ok_or_else(|| InputError("--relation needs --alphabet".into()))?;
            let alphabet = load_alphabet(alphabet_path)?;
            let word = load_word(path, &alphabet)?;
            let source = args
                .sigma_source
                .as_ref()
                .ok_or_else(|| InputError("--relation needs --sigma-source".into()))?;
            FibrationData {
                word,
                base_points: args.base_points,
                signature_source: parse_sigma_source(source)?,
            }
        }
        _ => return Err(InputError("give exactly one of --corpus or --relation".into())),
    };
    if let Some(expected) = args.genus {
        if data.word.genus() != expected {
            return Err(InputError(format!(
                "genus cross-check failed: alphabet has genus {}, --genus says {expected}",
                data.word.genus()
            )));
        }
    }
    let rep = compute_report(&data)?;
    match format {
        Format::Text => Ok((textio::emit_report_text(&rep), true)),
        Format::Structured => {
            let structured = json!({
                "schema": "lefschetz/1",
                "command": "invariants",
                "report": report_json(&rep),
            });
            Ok((render(format, &[], structured), true))
        }
    }
}

// ---------------------------------------------------------------------
// pair
// ---------------------------------------------------------------------

fn parse_class(value: &str) -> Result<DivisorClass, InputError> {
    match value {
        "hyperelliptic" => Ok(hyperelliptic_class(Normalization::Functor)),
        "hyperelliptic-chow" => Ok(hyperelliptic_class(Normalization::Chow)),
        "weierstrass" => Ok(weierstrass_class()),
        path if std::path::Path::new(path).is_file() => {
            parse_class_file(&read_file(path)?, path)
        }
        other => {
            if let Some(g) = other.strip_prefix("brill-noether:") {
                let g: u64 =
                    g.parse().map_err(|_| InputError(format!("bad genus in `{other}`")))?;
                return Ok(brill_noether_class(g)?);
            }
            if let Some(rest) = other.strip_prefix("covering:") {
                let (g, h) = rest
                    .split_once(':')
                    .ok_or_else(|| InputError(format!("`{other}` needs covering:<g>:<h>")))?;
                let g: u64 =
                    g.parse().map_err(|_| InputError(format!("bad genus in `{other}`")))?;
                let h: usize =
                    h.parse().map_err(|_| InputError(format!("bad marking in `{other}`")))?;
                return Ok(covering_divisor(g, h)?);
            }
            Err(InputError(format!(
                "unknown class `{other}`; use hyperelliptic, hyperelliptic-chow, \
                 brill-noether:<g>, covering:<g>:<h>, weierstrass"
            )))
        }
    }
}

/// A divisor class from `key = value` lines: g, h, optional
/// normalization (functor|chow), and rational coefficients `lambda`,
/// `delta<i>`, `psi<j>`, `omega_rd`.
fn parse_class_file(input: &str, path: &str) -> Result<DivisorClass, InputError> {
    let kv = key_value_lines(input, path)?;
    let fetch = |key: &str| -> Result<String, InputError> {
        kv.get(key).cloned().ok_or_else(|| InputError(format!("{path}: missing `{key}`")))
    };
    let rational = |key: &str, v: &str| -> Result<BigRational, InputError> {
        BigRational::from_str(v).map_err(|_| InputError(format!("{path}: bad rational `{key}`")))
    };
    let g: usize = fetch("g")?.parse().map_err(|_| InputError(format!("{path}: bad g")))?;
    let h: usize = fetch("h")?.parse().map_err(|_| InputError(format!("{path}: bad h")))?;
    let mut class = DivisorClass::zero(g, h);
    class.normalization = match kv.get("normalization").map(String::as_str) {
        None | Some("functor") => Normalization::Functor,
        Some("chow") => Normalization::Chow,
        Some(other) => {
            return Err(InputError(format!("{path}: bad normalization `{other}`")))
        }
    };
    for (k, v) in &kv {
        match k.as_str() {
            "g" | "h" | "normalization" => {}
            "lambda" => class.coeff_lambda = rational(k, v)?,
            "omega_rd" => class.coeff_omega_rd = rational(k, v)?,
            _ => {
                if let Some(i) = k.strip_prefix("delta") {
                    let i: usize = i
                        .parse()
                        .map_err(|_| InputError(format!("{path}: bad key `{k}`")))?;
                    if i >= class.coeff_delta.len() {
                        return Err(InputError(format!("{path}: delta{i} out of range")));
                    }
                    class.coeff_delta[i] = rational(k, v)?;
                } else if let Some(j) = k.strip_prefix("psi") {
                    let j: usize = j
                        .parse()
                        .map_err(|_| InputError(format!("{path}: bad key `{k}`")))?;
                    if j == 0 || j > h {
                        return Err(InputError(format!("{path}: psi{j} out of range")));
                    }
                    class.coeff_psi[j - 1] = rational(k, v)?;
                } else {
                    return Err(InputError(format!("{path}: unknown key `{k}`")));
                }
            }
        }
    }
    Ok(class)
}

fn key_value_lines(input: &str, path: &str) -> Result<BTreeMap<String, String>, InputError> {
    let mut kv = BTreeMap::new();
    for (ln, raw) in input.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| InputError(format!("{path}:{}: expected `key = value`", ln + 1)))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(kv)
}

fn parse_sphere(input: &str, path: &str) -> Result<SphereData, InputError> {
    let kv = key_value_lines(input, path)?;
    let fetch = |key: &str| -> Result<String, InputError> {
        kv.get(key).cloned().ok_or_else(|| InputError(format!("{path}: missing `{key}`")))
    };
    let g: usize = fetch("g")?.parse().map_err(|_| InputError(format!("{path}: bad g")))?;
    let h: usize = fetch("h")?.parse().map_err(|_| InputError(format!("{path}: bad h")))?;
    let lambda_value = BigRational::from_str(&fetch("lambda")?)
        .map_err(|_| InputError(format!("{path}: bad lambda")))?;
    let mut delta_values = vec![BigInt::zero(); g / 2 + 1];
    for (i, slot) in delta_values.iter_mut().enumerate() {
        if let Some(v) = kv.get(&format!("delta{i}")) {
            *slot =
                BigInt::from_str(v).map_err(|_| InputError(format!("{path}: bad delta{i}")))?;
        }
    }
    let mut psi_values = vec![0i64; h];
    for (j, slot) in psi_values.iter_mut().enumerate() {
        if let Some(v) = kv.get(&format!("psi{}", j + 1)) {
            *slot = v.parse().map_err(|_| InputError(format!("{path}: bad psi{}", j + 1)))?;
        }
    }
    let omega_rd_value = match kv.get("omega_rd") {
        Some(v) => v.parse().map_err(|_| InputError(format!("{path}: bad omega_rd")))?,
        None => 0,
    };
    Ok(SphereData { g, h, lambda_value, delta_values, psi_values, omega_rd_value })
}

fn cmd_pair(args: &PairArgs, format: Format) -> Result<(String, bool), InputError> {
    let class = parse_class(&args.class)?;
    let sphere = match (&args.sphere, &args.report) {
        (Some(path), None) => parse_sphere(&read_file(path)?, path)?,
        (None, Some(path)) => {
            let rep = textio::parse_report_text(&read_file(path)?)
                .map_err(|e| InputError(format!("{path}: {e}")))?;
            let sections: Vec<i64> = match &args.sections {
                None => Vec::new(),
                Some(csv) => csv
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| InputError(format!("bad section square `{s}`")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            SphereData::from_report(&rep, &sections)
        }
        _ => return Err(InputError("give exactly one of --sphere or --report".into())),
    };
    let value = moduli::pair(&class, &sphere)?;
    let warning = moduli::normalization_warning(&class, &sphere);
    let mut pairs = vec![("class", args.class.clone()), ("value", value.to_string())];
    if let Some(w) = warning {
        pairs.push(("warning", w.to_string()));
    }
    let structured = json!({
        "schema": "lefschetz/1",
        "command": "pair",
        "class": args.class,
        "value": value.to_string(),
        "warnings": warning.map(|w| vec![w]).unwrap_or_default(),
    });
    Ok((render(format, &pairs, structured), true))
}

// ---------------------------------------------------------------------
// covering
// ---------------------------------------------------------------------

const COVERING_NOTE: &str = "pipeline values are authoritative; they equal \
((g+3)/12)c1sq + ((1-g)/12)c2 + ((g+7)/6)k(K.w), whose K.w slot is the usual \
(g+1)(g+7)/12 under k = (g+1)/2 and whose c2 slot differs from the -(g+11)/12 \
reading by exactly c2";

fn cmd_covering(args: &CoveringArgs, format: Format) -> Result<(String, bool), InputError> {
    if args.kmax < 2 || !args.kmax.is_multiple_of(2) {
        return Err(InputError("--kmax must be even and >= 2".into()));
    }
    let report =
        covering_boundedness(args.k_dot_omega, args.omega_sq, args.c1_sq, args.c2, args.kmax)?;
    let verdict = match report.verdict {
        CoveringVerdict::UnboundedGrowth => "unbounded_growth",
        CoveringVerdict::Bounded => "bounded",
        CoveringVerdict::IdenticallyZero => "identically_zero",
    };
    match format {
        Format::Text => {
            let mut out = String::new();
            for (k, term) in &report.terms {
                match term {
                    Some(v) => {
                        let _ = writeln!(out, "{k}: {v}");
                    }
                    None => {
                        let _ = writeln!(out, "{k}: 0 # even genus, zero by convention");
                    }
                }
            }
            let _ = writeln!(out, "verdict: {verdict}");
            let _ = writeln!(out, "note: {COVERING_NOTE}");
            Ok((out, true))
        }
        Format::Structured => {
            let terms: Vec<Value> = report
                .terms
                .iter()
                .map(|(k, term)| match term {
                    Some(v) => json!({"k": k, "value": v.to_string()}),
                    None => json!({"k": k, "value": "0", "convention": "even genus"}),
                })
                .collect();
            let structured = json!({
                "schema": "lefschetz/1",
                "command": "covering",
                "terms": terms,
                "verdict": verdict,
                "note": COVERING_NOTE,
            });
            Ok((render(format, &[], structured), true))
        }
    }
}

// ---------------------------------------------------------------------
// obstruct / geography / section-bound / transform
// ---------------------------------------------------------------------

fn cmd_obstruct(args: &ObstructArgs, format: Format) -> Result<(String, bool), InputError> {
    let verdict = genus3_obstruction(args.e, args.sigma, args.reducible, args.mod14)?;
    let pairs = vec![
        ("e", args.e.to_string()),
        ("hyperelliptic_possible", verdict.hyperelliptic_possible.to_string()),
        ("non_holomorphic", verdict.non_holomorphic.to_string()),
        ("pairing_value", verdict.pairing_value.to_string()),
        ("reasons", verdict.reasons.join("; ")),
        ("sigma", args.sigma.to_string()),
    ];
    let structured = json!({
        "schema": "lefschetz/1",
        "command": "obstruct",
        "e": args.e,
        "sigma": args.sigma,
        "hyperelliptic_possible": verdict.hyperelliptic_possible,
        "pairing_value": verdict.pairing_value.to_string(),
        "non_holomorphic": verdict.non_holomorphic,
        "reasons": verdict.reasons,
    });
    Ok((render(format, &pairs, structured), true))
}

fn cmd_geography(format: Format) -> Result<(String, bool), InputError> {
    let cases = genus2_geography();
    match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<12} {:>3} {:>3} {:>3} {:>4} {:>5} {:>6}  {:<9} listed",
                "branch", "n", "s", "b1", "e", "sigma", "c1_sq", "homeo"
            );
            for c in &cases {
                let _ = writeln!(
                    out,
                    "{:<12} {:>3} {:>3} {:>3} {:>4} {:>5} {:>6}  {:<9} {}",
                    c.branch.label(),
                    c.n,
                    c.s,
                    c.b1,
                    c.e,
                    c.sigma,
                    c.c1_sq,
                    c.homeo_word.unwrap_or("-"),
                    if c.listed { "yes" } else { "unlisted" }
                );
            }
            Ok((out, true))
        }
        Format::Structured => {
            let items: Vec<Value> = cases
                .iter()
                .map(|c| {
                    json!({
                        "branch": c.branch.label(),
                        "n": c.n,
                        "s": c.s,
                        "b1": c.b1,
                        "omega_sq": c.omega_sq,
                        "e": c.e,
                        "sigma": c.sigma,
                        "c1_sq": c.c1_sq,
                        "homeo_word": c.homeo_word,
                        "listed": c.listed,
                    })
                })
                .collect();
            let structured = json!({
                "schema": "lefschetz/1",
                "command": "geography",
                "cases": items,
            });
            Ok((render(format, &[], structured), true))
        }
    }
}

fn cmd_section_bound(
    args: &SectionBoundArgs,
    format: Format,
) -> Result<(String, bool), InputError> {
    let verdict = genus2_section_bound(args.d0, args.d1, args.ss)?;
    let label = match verdict {
        SectionBound::Case1 => "case1",
        SectionBound::Case2 => "case2",
        SectionBound::Violation => "violation",
    };
    let m = (args.d0 + 2 * args.d1) / 10;
    let pairs = vec![
        ("assumption", "symplectic isotopy conjecture".to_string()),
        ("m", m.to_string()),
        ("verdict", label.to_string()),
    ];
    let structured = json!({
        "schema": "lefschetz/1",
        "command": "section-bound",
        "m": m,
        "verdict": label,
        "assumption": "symplectic isotopy conjecture",
    });
    Ok((render(format, &pairs, structured), true))
}

fn cmd_transform(args: &TransformArgs, format: Format) -> Result<(String, bool), InputError> {
    let word = match (&args.corpus, &args.word) {
        (Some(id), None) => corpus_entry(id)?.word()?,
        (None, Some(path)) => {
            let alphabet_path = args
                .alphabet
                .as_ref()
                .ok_or_else(|| InputError("--word needs --alphabet".into()))?;
            load_word(path, &load_alphabet(alphabet_path)?)?
        }
        _ => return Err(InputError("give exactly one of --corpus or --word".into())),
    };
    let mut embedding = BTreeMap::new();
    for entry in args.map.split(',') {
        let (role, curve) = entry
            .split_once(':')
            .ok_or_else(|| InputError(format!("map entry `{entry}` needs role:curve")))?;
        embedding.insert(role.to_string(), curve.to_string());
    }
    let axioms = AxiomSet::builtin();
    let out = match args.op.as_str() {
        "t" | "T" => apply_t(&word, args.at, &embedding, &axioms)?,
        "tinv" | "Tinv" => apply_t_inv(&word, args.at, &embedding, &axioms)?,
        other => return Err(InputError(format!("unknown op `{other}`; use t or tinv"))),
    };
    debug_assert_eq!(homology_image(&word), homology_image(&out));
    match format {
        Format::Text => Ok((textio::emit_word(&out), true)),
        Format::Structured => {
            let letters: Vec<String> = out
                .letter_ids()
                .iter()
                .map(|(id, e)| if *e == 1 { (*id).to_string() } else { format!("{id}^-1") })
                .collect();
            let structured = json!({
                "schema": "lefschetz/1",
                "command": "transform",
                "length": out.len(),
                "word": letters,
            });
            Ok((render(format, &[], structured), true))
        }
    }
}
