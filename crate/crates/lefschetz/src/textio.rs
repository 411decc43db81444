//! Plain-text formats: word files, alphabet files, trace files, and the
//! key-value report rendering. Parsers report line/column positions;
//! emitters are deterministic (no timestamps, no locale, keys sorted), so
//! identical inputs produce byte-identical output.
//!
//! Word files: whitespace-separated letters `id` or `id^-1`, with
//! parenthesised groups raised to powers: `( a1 b1 )^7`. Groups nest.
//!
//! Alphabet files: one curve per line, `id h=<2g comma-separated ints>
//! sep=<0|1>[,h=<split>]`, followed by `i(id1,id2)=n` lines declaring the
//! nonzero geometric intersections.
//!
//! Trace files: one move per line, `braid@i`, `commute@i`, `cyc@k`,
//! `cancel@i`, or `sub axiom=<id> dir=<f|b> @i map=role:curve,…`.
//! `#` starts a comment anywhere; blank lines are ignored.

use crate::invariants::{InvariantReport, SignatureSource};
use crate::rewrite::{Direction, RewriteMove, Trace};
use crate::surface::{Curve, CurveAlphabet};
use crate::word::{TwistCensus, TwistWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

/// A token with its source position (1-based).
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn tokenize(input: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut col = 0;
        for piece in body.split_whitespace() {
            let at = raw[col..].find(piece).map(|p| p + col).unwrap_or(col);
            col = at + piece.len();
            tokens.push(Token { text: piece, line: ln + 1, col: at + 1 });
        }
    }
    tokens
}

// ---------------------------------------------------------------------
// Word files
// ---------------------------------------------------------------------

/// Parses a word file against an alphabet, expanding powered groups.
pub fn parse_word(input: &str, alphabet: &Arc<CurveAlphabet>) -> Result<TwistWord, ParseError> {
    let tokens = tokenize(input);
    let mut pos = 0;
    let letters = parse_group_contents(&tokens, &mut pos, true, alphabet)?;
    if pos != tokens.len() {
        let t = &tokens[pos];
        return Err(ParseError::new(t.line, t.col, "unmatched `)`"));
    }
    Ok(TwistWord::from_letters(alphabet.clone(), letters))
}

fn parse_group_contents(
    tokens: &[Token<'_>],
    pos: &mut usize,
    top_level: bool,
    alphabet: &CurveAlphabet,
) -> Result<Vec<crate::word::Letter>, ParseError> {
    let mut out = Vec::new();
    while *pos < tokens.len() {
        let t = &tokens[*pos];
        if t.text == "(" {
            let open = (t.line, t.col);
            *pos += 1;
            let inner = parse_group_contents(tokens, pos, false, alphabet)?;
            // Expect `)` or `)^k`.
            let Some(close) = tokens.get(*pos) else {
                return Err(ParseError::new(open.0, open.1, "unclosed `(`"));
            };
            let power = if close.text == ")" {
                1usize
            } else if let Some(exp) = close.text.strip_prefix(")^") {
                exp.parse::<usize>().map_err(|_| {
                    ParseError::new(close.line, close.col, format!("bad power `{}`", close.text))
                })?
            } else {
                return Err(ParseError::new(close.line, close.col, "expected `)` or `)^k`"));
            };
            *pos += 1;
            for _ in 0..power {
                out.extend(inner.iter().copied());
            }
        } else if t.text == ")" || t.text.starts_with(")^") {
            if top_level {
                return Err(ParseError::new(t.line, t.col, "unmatched `)`"));
            }
            return Ok(out);
        } else {
            let (id, exponent) = match t.text.split_once('^') {
                None => (t.text, 1i8),
                Some((id, "-1")) => (id, -1i8),
                Some((_, other)) => {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("letter exponent must be -1, got `{other}`"),
                    ))
                }
            };
            let curve = alphabet.curve_index(id).map_err(|_| {
                ParseError::new(t.line, t.col, format!("unknown curve `{id}`"))
            })?;
            out.push(crate::word::Letter { curve, exponent });
            *pos += 1;
        }
    }
    if top_level {
        Ok(out)
    } else {
        Err(ParseError::new(0, 0, "unclosed `(`"))
    }
}

/// Renders a word one letter per token, wrapped at twelve letters per
/// line. Expanded form: powers are not re-folded.
pub fn emit_word(w: &TwistWord) -> String {
    let mut out = String::new();
    for (i, (id, exp)) in w.letter_ids().iter().enumerate() {
        if i > 0 {
            out.push(if i % 12 == 0 { '\n' } else { ' ' });
        }
        out.push_str(id);
        if *exp == -1 {
            out.push_str("^-1");
        }
    }
    out.push('\n');
    out
}

// ---------------------------------------------------------------------
// Alphabet files
// ---------------------------------------------------------------------

/// Parses an alphabet file: curve lines, then intersection lines.
pub fn parse_alphabet(input: &str) -> Result<CurveAlphabet, ParseError> {
    let mut curves: Vec<Curve> = Vec::new();
    let mut inters: Vec<(String, String, u32)> = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let line_no = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("i(") {
            let (pair, value) = rest.split_once(")=").ok_or_else(|| {
                ParseError::new(line_no, 1, "intersection line must be `i(id1,id2)=n`")
            })?;
            let (u, v) = pair.split_once(',').ok_or_else(|| {
                ParseError::new(line_no, 1, "intersection line needs two curve ids")
            })?;
            let n: u32 = value.trim().parse().map_err(|_| {
                ParseError::new(line_no, 1, format!("bad intersection count `{value}`"))
            })?;
            inters.push((u.trim().to_string(), v.trim().to_string(), n));
            continue;
        }
        let mut fields = body.split_whitespace();
        let id = fields.next().unwrap().to_string();
        let mut homology: Option<Vec<i64>> = None;
        let mut separating = false;
        let mut split_genus: Option<u32> = None;
        for field in fields {
            if let Some(csv) = field.strip_prefix("h=") {
                let vec: Result<Vec<i64>, _> = csv.split(',').map(|x| x.trim().parse()).collect();
                homology = Some(vec.map_err(|_| {
                    ParseError::new(line_no, 1, format!("bad homology vector `{csv}`"))
                })?);
            } else if let Some(sep) = field.strip_prefix("sep=") {
                let mut parts = sep.split(',');
                match parts.next() {
                    Some("0") => separating = false,
                    Some("1") => separating = true,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            1,
                            format!("sep must be 0 or 1, got `{}`", other.unwrap_or("")),
                        ))
                    }
                }
                if let Some(extra) = parts.next() {
                    let h = extra.strip_prefix("h=").ok_or_else(|| {
                        ParseError::new(line_no, 1, "separating curve takes `sep=1,h=<k>`")
                    })?;
                    split_genus = Some(h.parse().map_err(|_| {
                        ParseError::new(line_no, 1, format!("bad split genus `{h}`"))
                    })?);
                }
            } else {
                return Err(ParseError::new(line_no, 1, format!("unknown field `{field}`")));
            }
        }
        let homology = homology
            .ok_or_else(|| ParseError::new(line_no, 1, format!("curve `{id}` needs h=<vector>")))?;
        curves.push(Curve { id, homology, separating, split_genus });
    }
    if curves.is_empty() {
        return Err(ParseError::new(0, 0, "alphabet file declares no curves"));
    }
    let len = curves[0].homology.len();
    if len == 0 || !len.is_multiple_of(2) || curves.iter().any(|c| c.homology.len() != len) {
        return Err(ParseError::new(0, 0, "homology vectors must share an even length 2g"));
    }
    let refs: Vec<(&str, &str, u32)> =
        inters.iter().map(|(u, v, n)| (u.as_str(), v.as_str(), *n)).collect();
    CurveAlphabet::new(len / 2, curves, &refs).map_err(|e| ParseError::new(0, 0, e.to_string()))
}

pub fn emit_alphabet(a: &CurveAlphabet) -> String {
    let mut out = String::new();
    for c in a.curves() {
        let csv: Vec<String> = c.homology.iter().map(|x| x.to_string()).collect();
        let _ = write!(out, "{} h={} sep={}", c.id, csv.join(","), u8::from(c.separating));
        if let Some(h) = c.split_genus {
            let _ = write!(out, ",h={h}");
        }
        out.push('\n');
    }
    for (u, v, n) in a.intersections() {
        let _ = writeln!(out, "i({u},{v})={n}");
    }
    out
}

// ---------------------------------------------------------------------
// Trace files
// ---------------------------------------------------------------------

/// Parses a move list, one per line.
pub fn parse_moves(input: &str) -> Result<Vec<RewriteMove>, ParseError> {
    let mut moves = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let line_no = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parse_at = |s: &str, what: &str| -> Result<usize, ParseError> {
            s.parse()
                .map_err(|_| ParseError::new(line_no, 1, format!("bad {what} index `{s}`")))
        };
        let m = if let Some(i) = body.strip_prefix("braid@") {
            RewriteMove::Braid { position: parse_at(i, "braid")? }
        } else if let Some(i) = body.strip_prefix("commute@") {
            RewriteMove::Commute { position: parse_at(i, "commute")? }
        } else if let Some(k) = body.strip_prefix("cyc@") {
            RewriteMove::CyclicShift { shift: parse_at(k, "shift")? }
        } else if let Some(i) = body.strip_prefix("cancel@") {
            RewriteMove::CancelPair { position: parse_at(i, "cancel")? }
        } else if let Some(rest) = body.strip_prefix("sub ") {
            parse_sub_move(rest, line_no)?
        } else {
            return Err(ParseError::new(line_no, 1, format!("unknown move `{body}`")));
        };
        moves.push(m);
    }
    Ok(moves)
}

fn parse_sub_move(rest: &str, line_no: usize) -> Result<RewriteMove, ParseError> {
    let mut axiom_id = None;
    let mut direction = None;
    let mut position = None;
    let mut embedding = BTreeMap::new();
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("axiom=") {
            axiom_id = Some(v.to_string());
        } else if let Some(v) = field.strip_prefix("dir=") {
            direction = Some(match v {
                "f" => Direction::Forward,
                "b" => Direction::Backward,
                other => {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("dir must be f or b, got `{other}`"),
                    ))
                }
            });
        } else if let Some(v) = field.strip_prefix('@') {
            position = Some(v.parse::<usize>().map_err(|_| {
                ParseError::new(line_no, 1, format!("bad substitute position `{v}`"))
            })?);
        } else if let Some(v) = field.strip_prefix("map=") {
            for entry in v.split(',') {
                let (role, curve) = entry.split_once(':').ok_or_else(|| {
                    ParseError::new(line_no, 1, format!("map entry `{entry}` needs role:curve"))
                })?;
                embedding.insert(role.to_string(), curve.to_string());
            }
        } else {
            return Err(ParseError::new(line_no, 1, format!("unknown sub field `{field}`")));
        }
    }
    let axiom_id =
        axiom_id.ok_or_else(|| ParseError::new(line_no, 1, "sub move needs axiom=<id>"))?;
    let direction =
        direction.ok_or_else(|| ParseError::new(line_no, 1, "sub move needs dir=<f|b>"))?;
    let position = position.ok_or_else(|| ParseError::new(line_no, 1, "sub move needs @<i>"))?;
    Ok(RewriteMove::AxiomSubstitute { axiom_id, direction, position, embedding })
}

pub fn emit_moves(moves: &[RewriteMove]) -> String {
    let mut out = String::new();
    for m in moves {
        match m {
            RewriteMove::Braid { position } => {
                let _ = writeln!(out, "braid@{position}");
            }
            RewriteMove::Commute { position } => {
                let _ = writeln!(out, "commute@{position}");
            }
            RewriteMove::CyclicShift { shift } => {
                let _ = writeln!(out, "cyc@{shift}");
            }
            RewriteMove::CancelPair { position } => {
                let _ = writeln!(out, "cancel@{position}");
            }
            RewriteMove::AxiomSubstitute { axiom_id, direction, position, embedding } => {
                let dir = match direction {
                    Direction::Forward => "f",
                    Direction::Backward => "b",
                };
                let map: Vec<String> =
                    embedding.iter().map(|(r, c)| format!("{r}:{c}")).collect();
                let _ = writeln!(
                    out,
                    "sub axiom={axiom_id} dir={dir} @{position} map={}",
                    map.join(",")
                );
            }
        }
    }
    out
}

/// Assembles a trace from already-parsed pieces.
pub fn trace_from_parts(start: TwistWord, moves: Vec<RewriteMove>, claimed_end: TwistWord) -> Trace {
    Trace { start, moves, claimed_end }
}

// ---------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------

/// Emitted whenever the genus-two signature formula produced the report:
/// the fibre-count signs differ from the form the formula is sometimes
/// quoted in, and the corrected sign is load-bearing downstream.
pub const GENUS2_SIGN_NOTE: &str =
    "genus-two signature uses sigma_fib = -(3n+s)/5; sign fixed by the thirty-fibre K3 pencil";

/// Renders a report as sorted `key = value` lines. Rationals print as
/// `p/q` in lowest terms (plain integers when the denominator is 1).
pub fn emit_report_text(rep: &InvariantReport) -> String {
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    kv.insert("base_points".into(), rep.base_points.to_string());
    kv.insert("c1_sq".into(), rep.c1_sq.to_string());
    kv.insert("c2".into(), rep.c2.to_string());
    kv.insert("census_n".into(), rep.census.n.to_string());
    for (h, count) in &rep.census.s_by_genus {
        kv.insert(format!("census_s{h}"), count.to_string());
    }
    kv.insert("census_total".into(), rep.census.total.to_string());
    kv.insert("e".into(), rep.e.to_string());
    kv.insert("genus".into(), rep.genus.to_string());
    kv.insert("h1".into(), render_h1(rep.h1.as_deref()));
    kv.insert("lambda".into(), rep.lambda.to_string());
    kv.insert("sigma".into(), rep.sigma.to_string());
    kv.insert("sigma_source".into(), rep.signature_source.label());
    if rep.signature_source == SignatureSource::Genus2Formula {
        kv.insert("sigma_note".into(), GENUS2_SIGN_NOTE.into());
    }
    let mut out = String::new();
    for (k, v) in kv {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

fn render_h1(h1: Option<&[BigInt]>) -> String {
    match h1 {
        None => "unknown".into(),
        Some(factors) => {
            let inner: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            format!("[{}]", inner.join(", "))
        }
    }
}

/// Parses the text rendering back into a report; inverse of
/// `emit_report_text`.
pub fn parse_report_text(input: &str) -> Result<InvariantReport, ParseError> {
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    for (ln, raw) in input.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| ParseError::new(ln + 1, 1, "expected `key = value`"))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let fetch = |key: &str| -> Result<&String, ParseError> {
        kv.get(key).ok_or_else(|| ParseError::new(0, 0, format!("missing key `{key}`")))
    };
    let int_field = |key: &str| -> Result<i64, ParseError> {
        fetch(key)?
            .parse()
            .map_err(|_| ParseError::new(0, 0, format!("bad integer for `{key}`")))
    };
    let mut s_by_genus = BTreeMap::new();
    for (k, v) in &kv {
        if let Some(h) = k.strip_prefix("census_s") {
            if let Ok(h) = h.parse::<u32>() {
                let count: u64 = v
                    .parse()
                    .map_err(|_| ParseError::new(0, 0, format!("bad count for `{k}`")))?;
                s_by_genus.insert(h, count);
            }
        }
    }
    let census = TwistCensus {
        n: int_field("census_n")? as u64,
        s_by_genus,
        total: int_field("census_total")? as u64,
    };
    let lambda = BigRational::from_str(fetch("lambda")?)
        .map_err(|_| ParseError::new(0, 0, "bad rational for `lambda`"))?;
    let h1 = parse_h1(fetch("h1")?)?;
    let signature_source = parse_source(fetch("sigma_source")?)?;
    Ok(InvariantReport {
        genus: int_field("genus")? as usize,
        base_points: int_field("base_points")? as u32,
        e: int_field("e")?,
        sigma: int_field("sigma")?,
        c1_sq: int_field("c1_sq")?,
        c2: int_field("c2")?,
        lambda,
        census,
        signature_source,
        h1,
    })
}

fn parse_h1(v: &str) -> Result<Option<Vec<BigInt>>, ParseError> {
    if v == "unknown" {
        return Ok(None);
    }
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(0, 0, "h1 must be `[..]` or `unknown`"))?;
    if inner.trim().is_empty() {
        return Ok(Some(Vec::new()));
    }
    inner
        .split(',')
        .map(|x| {
            BigInt::from_str(x.trim()).map_err(|_| ParseError::new(0, 0, "bad h1 factor"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn parse_source(v: &str) -> Result<SignatureSource, ParseError> {
    match v {
        "endo_g3" => Ok(SignatureSource::EndoGenus3),
        "genus2_formula" => Ok(SignatureSource::Genus2Formula),
        other => {
            let inner = other
                .strip_prefix("user(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| ParseError::new(0, 0, format!("bad sigma_source `{other}`")))?;
            let s: i64 = inner
                .parse()
                .map_err(|_| ParseError::new(0, 0, "bad user signature value"))?;
            Ok(SignatureSource::UserSupplied(s))
        }
    }
}
