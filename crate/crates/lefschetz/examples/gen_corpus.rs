//! Regenerates the bundled corpus files (words, alphabets, expected
//! reports, and the rewriting trace). The trace derivation runs the
//! bidirectional search, so build with --release.

use lefschetz::invariants::{compute_report, FibrationData, SignatureSource};
use lefschetz::rewrite::derive;
use lefschetz::rewrite::{check_trace, AxiomSet};
use lefschetz::surface::{hyperelliptic_alphabet, standard_alphabet};
use lefschetz::textio::{emit_alphabet, emit_moves, emit_report_text, emit_word};
use lefschetz::word::TwistWord;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

fn write(dir: &Path, name: &str, contents: &str) {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    println!("wrote {}", path.display());
}

fn word_file(comment: &str, w: &TwistWord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    out.push_str(&emit_word(w));
    out
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");

    let g3 = Arc::new(standard_alphabet(3).unwrap());
    let g2 = Arc::new(hyperelliptic_alphabet(2).unwrap());
    write(&dir, "g3.alpha", &emit_alphabet(&g3));
    write(&dir, "g2x.alpha", &emit_alphabet(&g2));

    let horikawa = derive::chain_power_word(g3.clone());
    write(
        &dir,
        "horikawa_g3.word",
        &word_file("( a1 b1 a2 b2 a3 b3 )^14", &horikawa),
    );

    let fuller = derive::modified_word(g3.clone());
    write(
        &dir,
        "fuller_w.word",
        &word_file(
            "d2 e2 b2 a2 b1 a1 a3 b2 a2 b1 b3 a3 b2 a2 ( a1 b1 a2 b2 a3 b3 )^10",
            &fuller,
        ),
    );

    let w1 = TwistWord::positive(
        g2.clone(),
        &["a1", "b1", "a2", "b2", "a3", "a3", "b2", "a2", "b1", "a1"],
    )
    .unwrap()
    .repeat(2);
    write(
        &dir,
        "g2_word1.word",
        &word_file("( a1 b1 a2 b2 a3 a3 b2 a2 b1 a1 )^2", &w1),
    );
    let w2 = TwistWord::positive(g2.clone(), &["a1", "b1", "a2", "b2", "a3"])
        .unwrap()
        .repeat(6);
    write(&dir, "g2_word2.word", &word_file("( a1 b1 a2 b2 a3 )^6", &w2));
    let w3 = TwistWord::positive(g2, &["a1", "b1", "a2", "b2"]).unwrap().repeat(10);
    write(&dir, "g2_word3.word", &word_file("( a1 b1 a2 b2 )^10", &w3));

    let reports = [
        ("horikawa_g3.report", &horikawa, 0u32, SignatureSource::EndoGenus3),
        ("fuller_w.report", &fuller, 0, SignatureSource::UserSupplied(-42)),
        ("g2_word1.report", &w1, 1, SignatureSource::Genus2Formula),
        ("g2_word2.report", &w2, 2, SignatureSource::Genus2Formula),
        ("g2_word3.report", &w3, 1, SignatureSource::Genus2Formula),
    ];
    for (name, word, base_points, signature_source) in reports {
        let rep = compute_report(&FibrationData {
            word: (*word).clone(),
            base_points,
            signature_source,
        })
        .unwrap();
        write(&dir, name, &emit_report_text(&rep));
    }

    println!("deriving the rewriting trace (bidirectional search)...");
    let trace = derive::fuller_trace(g3);
    check_trace(&trace, &AxiomSet::builtin()).expect("derived trace must replay");
    let mut text = String::new();
    let _ = writeln!(
        text,
        "# derivation: ( a1 b1 a2 b2 a3 b3 )^14  ->  d2 e2 b2 a2 b1 a1 a3 b2 a2 b1 b3 a3 b2 a2 ( a1 b1 a2 b2 a3 b3 )^10"
    );
    let _ = writeln!(text, "# {} moves; positions are 0-based letter indices", trace.moves.len());
    text.push_str(&emit_moves(&trace.moves));
    write(&dir, "fuller.trace", &text);
}
