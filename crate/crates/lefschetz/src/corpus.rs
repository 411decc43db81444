//! Bundled example relations with expected reports.
//!
//! The corpus ships the genus-three chain relation (a₁b₁a₂b₂a₃b₃)¹⁴, the
//! ten-shorter relation obtained from it by the inverse T-operation
//! together with the full rewriting trace deriving it, and the three
//! genus-two relations of the finiteness theorem. Words are stored
//! expanded; the powered form appears as a comment in each file.
//!
//! Set `LEFSCHETZ_CORPUS_DIR` to override the embedded files with a
//! directory of the same layout.

use crate::invariants::{FibrationData, InvariantReport, SignatureSource};
use crate::rewrite::Trace;
use crate::surface::CurveAlphabet;
use crate::textio::{self, ParseError};
use crate::word::TwistWord;
use std::sync::Arc;

/// One bundled relation.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub genus: usize,
    pub base_points: u32,
    pub signature_source: SignatureSource,
    /// Where the relation comes from.
    pub provenance: &'static str,
    word_file: &'static str,
    alphabet_file: &'static str,
    report_file: &'static str,
}

const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        id: "horikawa_g3",
        genus: 3,
        base_points: 0,
        signature_source: SignatureSource::EndoGenus3,
        provenance: "genus-three chain relation (a1 b1 a2 b2 a3 b3)^14 = 1; hyperelliptic, \
                     double cover of F_2; signature -48 by the hyperelliptic signature formula",
        word_file: "horikawa_g3.word",
        alphabet_file: "g3.alpha",
        report_file: "horikawa_g3.report",
    },
    CorpusEntry {
        id: "fuller_W",
        genus: 3,
        base_points: 0,
        signature_source: SignatureSource::UserSupplied(-42),
        provenance: "inverse T-substitution (a1 b1 a2)^4 -> d2 e2 applied inside \
                     (a1 b1 a2 b2 a3 b3)^14; signature -42 = -48 + 6 via the T-operation deltas \
                     from the hyperelliptic ancestor (the derivation ships as fuller.trace)",
        word_file: "fuller_w.word",
        alphabet_file: "g3.alpha",
        report_file: "fuller_w.report",
    },
    CorpusEntry {
        id: "g2_word1",
        genus: 2,
        base_points: 1,
        signature_source: SignatureSource::Genus2Formula,
        provenance: "(a1 b1 a2 b2 a3 a3 b2 a2 b1 a1)^2 = 1; the twenty-fibre genus-two pencil \
                     with b_+ = 1",
        word_file: "g2_word1.word",
        alphabet_file: "g2x.alpha",
        report_file: "g2_word1.report",
    },
    CorpusEntry {
        id: "g2_word2",
        genus: 2,
        base_points: 2,
        signature_source: SignatureSource::Genus2Formula,
        provenance: "(a1 b1 a2 b2 a3)^6 = 1; the thirty-fibre pencil homeomorphic to a K3 \
                     surface (blown up twice as a fibration)",
        word_file: "g2_word2.word",
        alphabet_file: "g2x.alpha",
        report_file: "g2_word2.report",
    },
    CorpusEntry {
        id: "g2_word3",
        genus: 2,
        base_points: 1,
        signature_source: SignatureSource::Genus2Formula,
        provenance: "(a1 b1 a2 b2)^10 = 1; the forty-fibre pencil of a general-type surface \
                     with K^2 = 1",
        word_file: "g2_word3.word",
        alphabet_file: "g2x.alpha",
        report_file: "g2_word3.report",
    },
];

fn embedded(name: &str) -> Option<&'static str> {
    match name {
        "g3.alpha" => Some(include_str!("../corpus/g3.alpha")),
        "g2x.alpha" => Some(include_str!("../corpus/g2x.alpha")),
        "horikawa_g3.word" => Some(include_str!("../corpus/horikawa_g3.word")),
        "fuller_w.word" => Some(include_str!("../corpus/fuller_w.word")),
        "g2_word1.word" => Some(include_str!("../corpus/g2_word1.word")),
        "g2_word2.word" => Some(include_str!("../corpus/g2_word2.word")),
        "g2_word3.word" => Some(include_str!("../corpus/g2_word3.word")),
        "horikawa_g3.report" => Some(include_str!("../corpus/horikawa_g3.report")),
        "fuller_w.report" => Some(include_str!("../corpus/fuller_w.report")),
        "g2_word1.report" => Some(include_str!("../corpus/g2_word1.report")),
        "g2_word2.report" => Some(include_str!("../corpus/g2_word2.report")),
        "g2_word3.report" => Some(include_str!("../corpus/g2_word3.report")),
        "fuller.trace" => Some(include_str!("../corpus/fuller.trace")),
        _ => None,
    }
}

/// Environment variable naming a directory that overrides the bundled
/// corpus files.
pub const CORPUS_DIR_VAR: &str = "LEFSCHETZ_CORPUS_DIR";

fn read(name: &str) -> Result<String, ParseError> {
    if let Ok(dir) = std::env::var(CORPUS_DIR_VAR) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path).map_err(|e| ParseError {
            line: 0,
            col: 0,
            msg: format!("cannot read corpus file {}: {e}", path.display()),
        });
    }
    embedded(name)
        .map(str::to_string)
        .ok_or_else(|| ParseError { line: 0, col: 0, msg: format!("no corpus file `{name}`") })
}

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn entry(id: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

impl CorpusEntry {
    pub fn alphabet(&self) -> Result<Arc<CurveAlphabet>, ParseError> {
        Ok(Arc::new(textio::parse_alphabet(&read(self.alphabet_file)?)?))
    }

    pub fn word(&self) -> Result<TwistWord, ParseError> {
        textio::parse_word(&read(self.word_file)?, &self.alphabet()?)
    }

    pub fn fibration(&self) -> Result<FibrationData, ParseError> {
        Ok(FibrationData {
            word: self.word()?,
            base_points: self.base_points,
            signature_source: self.signature_source,
        })
    }

    /// The report stored alongside the entry; continuous testing checks
    /// it matches recomputation exactly.
    pub fn expected_report(&self) -> Result<InvariantReport, ParseError> {
        textio::parse_report_text(&read(self.report_file)?)
    }
}

/// The bundled derivation from the chain relation (a₁…b₃)¹⁴ to the
/// ten-shorter relation of `fuller_W`.
pub fn fuller_trace() -> Result<Trace, ParseError> {
    let horikawa = entry("horikawa_g3").expect("bundled");
    let modified = entry("fuller_W").expect("bundled");
    let start = horikawa.word()?;
    let claimed_end = modified.word()?;
    let moves = textio::parse_moves(&read("fuller.trace")?)?;
    Ok(Trace { start, moves, claimed_end })
}
