//! Word rewriting: braid and commutation moves, chain-relation
//! substitutions, replayable traces, and the T-operation.
//!
//! Move legality depends only on declared geometric intersection numbers:
//! a braid move needs the two alternating curves to meet once, a
//! commutation needs disjoint curves, and an axiom substitution needs an
//! embedding of the axiom's supporting curves whose intersections match
//! the axiom template. Cyclic shifts are meaningful on relations to the
//! identity only (conjugation invariance); traces replay them literally.

use crate::word::{Letter, TwistWord};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("move position {0} out of bounds for word of length {1}")]
    OutOfBounds(usize, usize),
    #[error("wrong intersection number between `{u}` and `{v}`: need {need}, declared {got}")]
    WrongIntersection { u: String, v: String, need: u32, got: u32 },
    #[error("pattern mismatch at position {0}: {1}")]
    PatternMismatch(usize, String),
    #[error("bad embedding: {0}")]
    BadEmbedding(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("move {index} failed: {source}")]
    MoveFailed { index: usize, source: MoveError },
    #[error("replay ended at a word different from the claimed end")]
    EndMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Replace the boundary-twist string by the chain side (lengthens).
    Forward,
    /// Replace the chain side by the boundary-twist string (shortens).
    Backward,
}

/// A single rewriting move at a position of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteMove {
    /// x y x ↦ y x y at positions i, i+1, i+2; needs i(x,y) = 1.
    Braid { position: usize },
    /// x y ↦ y x at positions i, i+1; needs i(x,y) = 0.
    Commute { position: usize },
    /// Rotate left by k.
    CyclicShift { shift: usize },
    /// Remove adjacent mutually inverse letters at i, i+1.
    CancelPair { position: usize },
    /// Substitute one side of a registered axiom for the other.
    AxiomSubstitute {
        axiom_id: String,
        direction: Direction,
        position: usize,
        /// role name ↦ curve id
        embedding: BTreeMap<String, String>,
    },
}

/// A two-sided relation of positive twists in abstract roles, with the
/// geometric intersections its supporting curves must realise.
#[derive(Debug, Clone)]
pub struct Axiom {
    pub id: String,
    pub roles: Vec<String>,
    /// Required geometric intersection for every unordered role pair.
    template: BTreeMap<(usize, usize), u32>,
    /// Chain side, as indices into `roles` (all positive twists).
    chain_side: Vec<usize>,
    /// Boundary side, as indices into `roles` (all positive twists).
    boundary_side: Vec<usize>,
}

impl Axiom {
    /// (τ_u τ_v τ_w)⁴ = δ₁ δ₂ in a two-holed torus: u,v and v,w meet once,
    /// u,w are disjoint, the boundary twists are disjoint from everything.
    pub fn chain3() -> Axiom {
        Axiom::chain("chain3", &["u", "v", "w"], &["d1", "d2"], 4)
    }

    /// (τ_a τ_b)⁶ = δ in a one-holed torus.
    pub fn chain2() -> Axiom {
        Axiom::chain("chain2", &["a", "b"], &["d"], 6)
    }

    fn chain(id: &str, chain_roles: &[&str], boundary_roles: &[&str], power: usize) -> Axiom {
        let roles: Vec<String> = chain_roles
            .iter()
            .chain(boundary_roles.iter())
            .map(|s| s.to_string())
            .collect();
        let nc = chain_roles.len();
        let mut template = BTreeMap::new();
        for i in 0..roles.len() {
            for j in i + 1..roles.len() {
                let need = if j < nc && j == i + 1 { 1 } else { 0 };
                template.insert((i, j), need);
            }
        }
        let chain_side: Vec<usize> = (0..power).flat_map(|_| 0..nc).collect();
        let boundary_side: Vec<usize> = (nc..roles.len()).collect();
        Axiom { id: id.to_string(), roles, template, chain_side, boundary_side }
    }

    /// A user-registered relation: `lhs` and `rhs` are positive words in
    /// the given roles, and `pairs` declares the required geometric
    /// intersection for every role pair (unlisted pairs default to 0).
    /// The lhs plays the chain-side part for Forward/Backward directions.
    pub fn user(
        id: &str,
        roles: &[&str],
        pairs: &[(&str, &str, u32)],
        lhs: &[&str],
        rhs: &[&str],
    ) -> Result<Axiom, MoveError> {
        let roles: Vec<String> = roles.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| -> Result<usize, MoveError> {
            roles
                .iter()
                .position(|r| r == name)
                .ok_or_else(|| MoveError::BadEmbedding(format!("unknown role `{name}`")))
        };
        let mut template = BTreeMap::new();
        for i in 0..roles.len() {
            for j in i + 1..roles.len() {
                template.insert((i, j), 0);
            }
        }
        for &(u, v, n) in pairs {
            let (iu, iv) = (find(u)?, find(v)?);
            template.insert((iu.min(iv), iu.max(iv)), n);
        }
        let side = |word: &[&str]| -> Result<Vec<usize>, MoveError> {
            word.iter().map(|r| find(r)).collect()
        };
        let chain_side = side(lhs)?;
        let boundary_side = side(rhs)?;
        Ok(Axiom { id: id.to_string(), roles, template, chain_side, boundary_side })
    }

    fn side(&self, direction: Direction) -> (&[usize], &[usize]) {
        match direction {
            Direction::Forward => (&self.boundary_side, &self.chain_side),
            Direction::Backward => (&self.chain_side, &self.boundary_side),
        }
    }
}

/// Registry of axioms a trace may substitute.
#[derive(Debug, Clone)]
pub struct AxiomSet {
    axioms: Vec<Axiom>,
}

impl AxiomSet {
    /// chain2 and chain3.
    pub fn builtin() -> AxiomSet {
        AxiomSet { axioms: vec![Axiom::chain2(), Axiom::chain3()] }
    }

    pub fn register(&mut self, axiom: Axiom) {
        self.axioms.retain(|a| a.id != axiom.id);
        self.axioms.push(axiom);
    }

    pub fn get(&self, id: &str) -> Result<&Axiom, MoveError> {
        self.axioms
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| MoveError::UnknownAxiom(id.to_string()))
    }
}

impl Default for AxiomSet {
    fn default() -> Self {
        AxiomSet::builtin()
    }
}

/// Applies one move; the input word is untouched on failure.
pub fn apply_move(
    w: &TwistWord,
    m: &RewriteMove,
    axioms: &AxiomSet,
) -> Result<TwistWord, MoveError> {
    let letters = w.letters();
    let n = letters.len();
    let curves = w.alphabet().curves();
    let id_of = |l: &Letter| curves[l.curve].id.as_str();
    match m {
        RewriteMove::Braid { position } => {
            let i = *position;
            if i + 3 > n {
                return Err(MoveError::OutOfBounds(i, n));
            }
            let (x, y, x2) = (letters[i], letters[i + 1], letters[i + 2]);
            if x.exponent != 1 || y.exponent != 1 || x2.exponent != 1 {
                return Err(MoveError::PatternMismatch(i, "braid needs positive twists".into()));
            }
            if x.curve != x2.curve || x.curve == y.curve {
                return Err(MoveError::PatternMismatch(i, "need alternating x y x".into()));
            }
            let geom = w
                .alphabet()
                .geometric_intersection(id_of(&x), id_of(&y))
                .expect("letters resolve in their own alphabet");
            if geom != 1 {
                return Err(MoveError::WrongIntersection {
                    u: id_of(&x).into(),
                    v: id_of(&y).into(),
                    need: 1,
                    got: geom,
                });
            }
            let mut out = letters.to_vec();
            out[i] = y;
            out[i + 1] = x;
            out[i + 2] = y;
            Ok(TwistWord::from_letters(w.alphabet().clone(), out))
        }
        RewriteMove::Commute { position } => {
            let i = *position;
            if i + 2 > n {
                return Err(MoveError::OutOfBounds(i, n));
            }
            let (x, y) = (letters[i], letters[i + 1]);
            let geom = w
                .alphabet()
                .geometric_intersection(id_of(&x), id_of(&y))
                .expect("letters resolve in their own alphabet");
            if geom != 0 {
                return Err(MoveError::WrongIntersection {
                    u: id_of(&x).into(),
                    v: id_of(&y).into(),
                    need: 0,
                    got: geom,
                });
            }
            let mut out = letters.to_vec();
            out.swap(i, i + 1);
            Ok(TwistWord::from_letters(w.alphabet().clone(), out))
        }
        RewriteMove::CyclicShift { shift } => {
            if n == 0 {
                return Ok(w.clone());
            }
            let k = shift % n;
            let mut out = Vec::with_capacity(n);
            out.extend_from_slice(&letters[k..]);
            out.extend_from_slice(&letters[..k]);
            Ok(TwistWord::from_letters(w.alphabet().clone(), out))
        }
        RewriteMove::CancelPair { position } => {
            let i = *position;
            if i + 2 > n {
                return Err(MoveError::OutOfBounds(i, n));
            }
            let (x, y) = (letters[i], letters[i + 1]);
            if x.curve != y.curve || x.exponent + y.exponent != 0 {
                return Err(MoveError::PatternMismatch(i, "need t t⁻¹ or t⁻¹ t".into()));
            }
            let mut out = letters.to_vec();
            out.drain(i..i + 2);
            Ok(TwistWord::from_letters(w.alphabet().clone(), out))
        }
        RewriteMove::AxiomSubstitute { axiom_id, direction, position, embedding } => {
            let axiom = axioms.get(axiom_id)?;
            let curve_for = check_embedding(w, axiom, embedding)?;
            let (source, target) = axiom.side(*direction);
            let i = *position;
            if i + source.len() > n {
                return Err(MoveError::OutOfBounds(i, n));
            }
            for (off, &role) in source.iter().enumerate() {
                let l = letters[i + off];
                if l.exponent != 1 || l.curve != curve_for[role] {
                    return Err(MoveError::PatternMismatch(
                        i + off,
                        format!(
                            "expected `{}` (role `{}`), found `{}`",
                            curves[curve_for[role]].id,
                            axiom.roles[role],
                            id_of(&l)
                        ),
                    ));
                }
            }
            let mut out = Vec::with_capacity(n - source.len() + target.len());
            out.extend_from_slice(&letters[..i]);
            out.extend(target.iter().map(|&role| Letter { curve: curve_for[role], exponent: 1 }));
            out.extend_from_slice(&letters[i + source.len()..]);
            Ok(TwistWord::from_letters(w.alphabet().clone(), out))
        }
    }
}

/// Resolves an embedding and checks injectivity plus the intersection
/// template. Returns curve indices per role index.
fn check_embedding(
    w: &TwistWord,
    axiom: &Axiom,
    embedding: &BTreeMap<String, String>,
) -> Result<Vec<usize>, MoveError> {
    let alphabet = w.alphabet();
    let mut curve_for = Vec::with_capacity(axiom.roles.len());
    for role in &axiom.roles {
        let id = embedding
            .get(role)
            .ok_or_else(|| MoveError::BadEmbedding(format!("role `{role}` not assigned")))?;
        let idx = alphabet
            .curve_index(id)
            .map_err(|_| MoveError::BadEmbedding(format!("unknown curve `{id}`")))?;
        curve_for.push(idx);
    }
    for i in 0..curve_for.len() {
        for j in i + 1..curve_for.len() {
            if curve_for[i] == curve_for[j] {
                return Err(MoveError::BadEmbedding(format!(
                    "roles `{}` and `{}` map to the same curve",
                    axiom.roles[i], axiom.roles[j]
                )));
            }
            let need = axiom.template[&(i, j)];
            let u = &alphabet.curves()[curve_for[i]].id;
            let v = &alphabet.curves()[curve_for[j]].id;
            let got = alphabet
                .geometric_intersection(u, v)
                .expect("indices resolve");
            if got != need {
                return Err(MoveError::WrongIntersection {
                    u: u.clone(),
                    v: v.clone(),
                    need,
                    got,
                });
            }
        }
    }
    Ok(curve_for)
}

/// The T-operation: replace the boundary string δ₁δ₂ at `position` by
/// (τ_u τ_v τ_w)⁴ under the given chain3 embedding. Word grows by 10.
pub fn apply_t(
    w: &TwistWord,
    position: usize,
    embedding: &BTreeMap<String, String>,
    axioms: &AxiomSet,
) -> Result<TwistWord, MoveError> {
    apply_move(
        w,
        &RewriteMove::AxiomSubstitute {
            axiom_id: "chain3".into(),
            direction: Direction::Forward,
            position,
            embedding: embedding.clone(),
        },
        axioms,
    )
}

/// Inverse T-operation: (τ_u τ_v τ_w)⁴ at `position` becomes δ₁δ₂.
/// Word shrinks by 10.
pub fn apply_t_inv(
    w: &TwistWord,
    position: usize,
    embedding: &BTreeMap<String, String>,
    axioms: &AxiomSet,
) -> Result<TwistWord, MoveError> {
    apply_move(
        w,
        &RewriteMove::AxiomSubstitute {
            axiom_id: "chain3".into(),
            direction: Direction::Backward,
            position,
            embedding: embedding.clone(),
        },
        axioms,
    )
}

/// A replayable derivation: a start word, a move list, and the claimed
/// result of applying the moves in order.
#[derive(Debug, Clone)]
pub struct Trace {
    pub start: TwistWord,
    pub moves: Vec<RewriteMove>,
    pub claimed_end: TwistWord,
}

/// Replays a trace. `Ok` means every move was legal and the final word is
/// literally the claimed end; errors carry the first failing move index.
pub fn check_trace(t: &Trace, axioms: &AxiomSet) -> Result<(), TraceError> {
    let mut w = t.start.clone();
    for (index, m) in t.moves.iter().enumerate() {
        w = apply_move(&w, m, axioms).map_err(|source| TraceError::MoveFailed { index, source })?;
    }
    if w.same_letters(&t.claimed_end) {
        Ok(())
    } else {
        Err(TraceError::EndMismatch)
    }
}

pub mod derive;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard_alphabet;
    use crate::word::{homology_image, TwistWord};
    use std::sync::Arc;

    fn g3() -> Arc<crate::surface::CurveAlphabet> {
        Arc::new(standard_alphabet(3).unwrap())
    }

    fn word(a: &Arc<crate::surface::CurveAlphabet>, ids: &[&str]) -> TwistWord {
        TwistWord::positive(a.clone(), ids).unwrap()
    }

    fn chain3_embedding() -> BTreeMap<String, String> {
        [("u", "a1"), ("v", "b1"), ("w", "a2"), ("d1", "d2"), ("d2", "e2")]
            .into_iter()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect()
    }

    #[test]
    fn braid_move() {
        let a = g3();
        let w = word(&a, &["a1", "b1", "a1"]);
        let out = apply_move(&w, &RewriteMove::Braid { position: 0 }, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.letter_ids(), vec![("b1", 1), ("a1", 1), ("b1", 1)]);
        assert_eq!(homology_image(&w), homology_image(&out));
    }

    #[test]
    fn braid_rejects_disjoint_curves() {
        let a = g3();
        let w = word(&a, &["a1", "a3", "a1"]);
        let err = apply_move(&w, &RewriteMove::Braid { position: 0 }, &AxiomSet::builtin());
        assert!(matches!(err, Err(MoveError::WrongIntersection { .. })));
    }

    #[test]
    fn commute_move() {
        let a = g3();
        let w = word(&a, &["a1", "a3"]);
        let out =
            apply_move(&w, &RewriteMove::Commute { position: 0 }, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.letter_ids(), vec![("a3", 1), ("a1", 1)]);
        let bad = word(&a, &["a1", "b1"]);
        assert!(apply_move(&bad, &RewriteMove::Commute { position: 0 }, &AxiomSet::builtin()).is_err());
    }

    #[test]
    fn cancel_pair_shrinks_and_preserves_homology() {
        let a = g3();
        let w = TwistWord::from_ids(a, &[("a1", 1), ("b1", 1), ("b1", -1), ("a2", 1)]).unwrap();
        let before = homology_image(&w);
        let out =
            apply_move(&w, &RewriteMove::CancelPair { position: 1 }, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.len(), w.len() - 2);
        assert_eq!(before, homology_image(&out));
    }

    #[test]
    fn chain3_substitution_backward() {
        let a = g3();
        let w = word(&a, &["a1", "b1", "a2"]).repeat(4);
        let m = RewriteMove::AxiomSubstitute {
            axiom_id: "chain3".into(),
            direction: Direction::Backward,
            position: 0,
            embedding: chain3_embedding(),
        };
        let out = apply_move(&w, &m, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.letter_ids(), vec![("d2", 1), ("e2", 1)]);
        assert_eq!(homology_image(&w), homology_image(&out));
    }

    #[test]
    fn t_and_t_inverse_cancel() {
        let a = g3();
        let axioms = AxiomSet::builtin();
        let emb = chain3_embedding();
        let w = word(&a, &["a3", "d2", "e2", "b3"]);
        let up = apply_t(&w, 1, &emb, &axioms).unwrap();
        assert_eq!(up.len(), w.len() + 10);
        let down = apply_t_inv(&up, 1, &emb, &axioms).unwrap();
        assert!(down.same_letters(&w));
    }

    #[test]
    fn t_rejects_missing_boundary_string() {
        let a = g3();
        let w = word(&a, &["a1", "b1"]);
        let err = apply_t(&w, 0, &chain3_embedding(), &AxiomSet::builtin());
        assert!(matches!(err, Err(MoveError::PatternMismatch(..))));
    }

    #[test]
    fn embedding_must_match_template() {
        let a = g3();
        let w = word(&a, &["a1", "b1", "a2"]).repeat(4);
        // b2 meets d2, so it cannot play a boundary role.
        let mut emb = chain3_embedding();
        emb.insert("d1".into(), "b2".into());
        let m = RewriteMove::AxiomSubstitute {
            axiom_id: "chain3".into(),
            direction: Direction::Backward,
            position: 0,
            embedding: emb,
        };
        assert!(matches!(
            apply_move(&w, &m, &AxiomSet::builtin()),
            Err(MoveError::WrongIntersection { .. })
        ));
    }

    #[test]
    fn cyclic_shift_rotates() {
        let a = g3();
        let w = word(&a, &["a1", "b1", "a2"]);
        let out =
            apply_move(&w, &RewriteMove::CyclicShift { shift: 1 }, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.letter_ids(), vec![("b1", 1), ("a2", 1), ("a1", 1)]);
    }

    #[test]
    fn empty_trace_checks() {
        let a = g3();
        let w = word(&a, &["a1"]);
        let t = Trace { start: w.clone(), moves: vec![], claimed_end: w };
        assert!(check_trace(&t, &AxiomSet::builtin()).is_ok());
    }

    #[test]
    fn trace_reports_first_failing_move() {
        let a = g3();
        let w = word(&a, &["a1", "b1", "a1"]);
        let t = Trace {
            start: w.clone(),
            moves: vec![
                RewriteMove::Braid { position: 0 },
                RewriteMove::Braid { position: 1 },
            ],
            claimed_end: w,
        };
        match check_trace(&t, &AxiomSet::builtin()) {
            Err(TraceError::MoveFailed { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected failure at move 1, got {other:?}"),
        }
    }

    #[test]
    fn chain2_substitution_on_user_alphabet() {
        use crate::surface::{Curve, CurveAlphabet};
        // One-holed torus sitting inside genus 2: boundary is separating.
        let curves = vec![
            Curve::non_separating("a1", vec![1, 0, 0, 0]),
            Curve::non_separating("b1", vec![0, 1, 0, 0]),
            Curve::separating("s", 2, 1),
        ];
        let alphabet =
            Arc::new(CurveAlphabet::new(2, curves, &[("a1", "b1", 1)]).unwrap());
        let w = TwistWord::positive(alphabet, &["s"]).unwrap();
        let emb: BTreeMap<String, String> = [("a", "a1"), ("b", "b1"), ("d", "s")]
            .into_iter()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect();
        let m = RewriteMove::AxiomSubstitute {
            axiom_id: "chain2".into(),
            direction: Direction::Forward,
            position: 0,
            embedding: emb,
        };
        let out = apply_move(&w, &m, &AxiomSet::builtin()).unwrap();
        assert_eq!(out.len(), 12);
        // (t_a t_b)⁶ acts trivially on H₁, as does the separating twist.
        assert_eq!(homology_image(&w), homology_image(&out));
    }

    #[test]
    fn user_registered_axiom_substitutes() {
        let a = g3();
        let mut axioms = AxiomSet::builtin();
        // A user relation template: two disjoint twists swap.
        let axiom = Axiom::user(
            "swap",
            &["x", "y"],
            &[("x", "y", 0)],
            &["x", "y"],
            &["y", "x"],
        )
        .unwrap();
        axioms.register(axiom);
        let w = word(&a, &["a1", "a3"]);
        let emb: BTreeMap<String, String> = [("x", "a1"), ("y", "a3")]
            .into_iter()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect();
        let m = RewriteMove::AxiomSubstitute {
            axiom_id: "swap".into(),
            direction: Direction::Backward,
            position: 0,
            embedding: emb,
        };
        let out = apply_move(&w, &m, &axioms).unwrap();
        assert_eq!(out.letter_ids(), vec![("a3", 1), ("a1", 1)]);
        assert!(matches!(
            apply_move(&w, &RewriteMove::AxiomSubstitute {
                axiom_id: "missing".into(),
                direction: Direction::Forward,
                position: 0,
                embedding: BTreeMap::new(),
            }, &axioms),
            Err(MoveError::UnknownAxiom(_))
        ));
    }
}
