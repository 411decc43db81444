//! Twist words and the homology level of the monodromy representation.
//!
//! A positive relation ∏δᵢ = 1 determines a Lefschetz fibration; at the
//! level of H₁ each letter acts by the transvection of its curve, so the
//! ordered matrix product is a necessary (not sufficient — the Torelli
//! group is the kernel) certificate for a relation. Exact certificates go
//! through the rewriting engine instead.

use crate::matrix::IntMatrix;
use crate::surface::{transvection_matrix, transvection_matrix_inverse, AlphabetError, CurveAlphabet};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("words live on different alphabets")]
    AlphabetMismatch,
    #[error("operation requires a positive word, letter {0} has exponent -1")]
    NegativeExponent(usize),
    #[error("operation supports genus {expected} only, word has genus {got}")]
    UnsupportedGenus { expected: usize, got: usize },
    #[error("relation right-hand side must be empty")]
    NonEmptyRhs,
}

/// One twist: a curve of the alphabet with exponent ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    /// Index into the alphabet's curve list.
    pub curve: usize,
    pub exponent: i8,
}

/// An ordered word of signed Dehn twists over a shared alphabet.
#[derive(Clone)]
pub struct TwistWord {
    alphabet: Arc<CurveAlphabet>,
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn empty(alphabet: Arc<CurveAlphabet>) -> Self {
        TwistWord { alphabet, letters: Vec::new() }
    }

    pub fn from_ids(
        alphabet: Arc<CurveAlphabet>,
        ids: &[(&str, i8)],
    ) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(ids.len());
        for &(id, exponent) in ids {
            assert!(exponent == 1 || exponent == -1, "exponent must be ±1");
            let curve = alphabet.curve_index(id)?;
            letters.push(Letter { curve, exponent });
        }
        Ok(TwistWord { alphabet, letters })
    }

    /// All-positive word from curve ids.
    pub fn positive(alphabet: Arc<CurveAlphabet>, ids: &[&str]) -> Result<Self, WordError> {
        let pairs: Vec<(&str, i8)> = ids.iter().map(|&id| (id, 1)).collect();
        TwistWord::from_ids(alphabet, &pairs)
    }

    pub(crate) fn from_letters(alphabet: Arc<CurveAlphabet>, letters: Vec<Letter>) -> Self {
        TwistWord { alphabet, letters }
    }

    pub fn alphabet(&self) -> &Arc<CurveAlphabet> {
        &self.alphabet
    }

    pub fn genus(&self) -> usize {
        self.alphabet.genus()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_ids(&self) -> Vec<(&str, i8)> {
        self.letters
            .iter()
            .map(|l| (self.alphabet.curves()[l.curve].id.as_str(), l.exponent))
            .collect()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exponent == 1)
    }

    /// w^k by repetition.
    pub fn repeat(&self, k: usize) -> TwistWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        TwistWord { alphabet: self.alphabet.clone(), letters }
    }

    pub fn concat(&self, other: &TwistWord) -> Result<TwistWord, WordError> {
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) && self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(TwistWord { alphabet: self.alphabet.clone(), letters })
    }

    /// Literal equality of letter sequences (same alphabet).
    pub fn same_letters(&self, other: &TwistWord) -> bool {
        self.alphabet == other.alphabet && self.letters == other.letters
    }

    /// Equality up to rotation; relations to the identity are conjugation
    /// invariant, so corpus comparisons may normalise cyclically.
    pub fn cyclically_equal(&self, other: &TwistWord) -> bool {
        if self.alphabet != other.alphabet || self.letters.len() != other.letters.len() {
            return false;
        }
        if self.letters.is_empty() {
            return true;
        }
        (0..self.letters.len()).any(|k| {
            self.letters[k..]
                .iter()
                .chain(self.letters[..k].iter())
                .eq(other.letters.iter())
        })
    }
}

impl fmt::Debug for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let id = &self.alphabet.curves()[l.curve].id;
                if l.exponent == 1 {
                    id.clone()
                } else {
                    format!("{id}^-1")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An asserted equality of two twist words on one alphabet.
#[derive(Clone, Debug)]
pub struct Relation {
    pub lhs: TwistWord,
    pub rhs: TwistWord,
}

impl Relation {
    pub fn new(lhs: TwistWord, rhs: TwistWord) -> Result<Self, WordError> {
        if lhs.alphabet() != rhs.alphabet() {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(Relation { lhs, rhs })
    }

    /// lhs = 1.
    pub fn to_identity(lhs: TwistWord) -> Self {
        let rhs = TwistWord::empty(lhs.alphabet.clone());
        Relation { lhs, rhs }
    }
}

/// Ordered product of transvection matrices; exponent −1 letters use the
/// inverse transvection. The empty word maps to the identity.
pub fn homology_image(w: &TwistWord) -> IntMatrix {
    let g = w.genus();
    let mut acc = IntMatrix::identity(2 * g);
    for l in &w.letters {
        let c = &w.alphabet.curves()[l.curve];
        let m = if l.exponent == 1 {
            transvection_matrix(c, g)
        } else {
            transvection_matrix_inverse(c, g)
        };
        acc = acc.mul(&m);
    }
    acc
}

/// Necessary-condition check: do both sides act identically on H₁?
pub fn verify_relation_homology(r: &Relation) -> bool {
    homology_image(&r.lhs) == homology_image(&r.rhs)
}

/// Counts of letters by vanishing-cycle type: n non-separating twists and
/// `s_by_genus[h]` separating twists splitting off genus h.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistCensus {
    pub n: u64,
    pub s_by_genus: BTreeMap<u32, u64>,
    pub total: u64,
}

impl TwistCensus {
    pub fn s_total(&self) -> u64 {
        self.s_by_genus.values().sum()
    }

    /// δ₀ of the associated fibration (irreducible singular fibres).
    pub fn irreducible(&self) -> u64 {
        self.n
    }

    /// δ_h for h ≥ 1 (reducible singular fibres of the given split genus).
    pub fn reducible(&self, h: u32) -> u64 {
        self.s_by_genus.get(&h).copied().unwrap_or(0)
    }
}

/// Census of a positive word: rejects negative exponents because fibre
/// counts only make sense for positive relations.
pub fn classify_twists(w: &TwistWord) -> Result<TwistCensus, WordError> {
    if let Some(i) = w.letters.iter().position(|l| l.exponent != 1) {
        return Err(WordError::NegativeExponent(i));
    }
    let mut census = TwistCensus::default();
    for l in &w.letters {
        let c = &w.alphabet.curves()[l.curve];
        match c.split_genus {
            Some(h) => *census.s_by_genus.entry(h).or_insert(0) += 1,
            None => census.n += 1,
        }
        census.total += 1;
    }
    Ok(census)
}

/// (n + 2s) mod 10 on a census: the image of a positive genus-two word
/// in the abelianisation (Γ₂)_ab = ℤ₁₀.
pub fn census_residue_mod_ten(census: &TwistCensus) -> u64 {
    (census.n + 2 * census.s_total()) % 10
}

/// The residue of a positive genus-two word.
pub fn abelianized_residue(w: &TwistWord) -> Result<u64, WordError> {
    if w.genus() != 2 {
        return Err(WordError::UnsupportedGenus { expected: 2, got: w.genus() });
    }
    Ok(census_residue_mod_ten(&classify_twists(w)?))
}

/// Fibre sum of two relations to the identity of the same genus:
/// concatenation of the monodromy words.
pub fn fibre_sum(r1: &Relation, r2: &Relation) -> Result<Relation, WordError> {
    if !r1.rhs.is_empty() || !r2.rhs.is_empty() {
        return Err(WordError::NonEmptyRhs);
    }
    if r1.lhs.genus() != r2.lhs.genus() {
        return Err(WordError::AlphabetMismatch);
    }
    Ok(Relation::to_identity(r1.lhs.concat(&r2.lhs)?))
}
