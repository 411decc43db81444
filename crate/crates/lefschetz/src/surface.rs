//! Reference surface data: curve alphabets with homology classes and
//! declared geometric intersection numbers, and the transvection action
//! of Dehn twists on first homology.
//!
//! Homology lives in H₁(Σ_g; ℤ) ≅ ℤ^{2g} with the standard symplectic
//! basis ordered (a₁, b₁, …, a_g, b_g). A positive twist about a curve c
//! acts by the transvection x ↦ x + ⟨x, c⟩·c; the opposite convention is
//! an equally valid global choice and identity-word checks do not depend
//! on it.
//!
//! Geometric intersection numbers are declared alphabet data, not computed
//! from embeddings. Move legality in the rewriting engine only ever reads
//! the values 0 and 1.

use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("curve `{0}`: homology vector has length {1}, expected {2}")]
    BadVectorLength(String, usize, usize),
    #[error("curve `{0}`: separating flag inconsistent with homology class")]
    SeparatingMismatch(String),
    #[error("curve `{0}`: split genus {1} outside [1, g/2]")]
    BadSplitGenus(String, u32),
    #[error("duplicate curve id `{0}`")]
    DuplicateId(String),
    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),
    #[error("self-intersection of `{0}` must be declared 0")]
    SelfIntersection(String),
    #[error("|algebraic intersection| of `{0}`,`{1}` is {2}, exceeds declared geometric {3}")]
    PairingExceedsGeometric(String, String, i64, u32),
    #[error("curves come from alphabets of different genus")]
    GenusMismatch,
}

/// A labelled simple closed curve on the reference surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    /// Class in the basis (a₁, b₁, …, a_g, b_g).
    pub homology: Vec<i64>,
    pub separating: bool,
    /// Genus of the smaller side, present iff separating.
    pub split_genus: Option<u32>,
}

impl Curve {
    pub fn non_separating(id: &str, homology: Vec<i64>) -> Self {
        Curve {
            id: id.to_string(),
            homology,
            separating: false,
            split_genus: None,
        }
    }

    pub fn separating(id: &str, genus: usize, split_genus: u32) -> Self {
        Curve {
            id: id.to_string(),
            homology: vec![0; 2 * genus],
            separating: true,
            split_genus: Some(split_genus),
        }
    }
}

/// The symplectic pairing Σᵢ (u_{aᵢ} v_{bᵢ} − u_{bᵢ} v_{aᵢ}).
pub fn algebraic_intersection(u: &Curve, v: &Curve) -> Result<i64, AlphabetError> {
    if u.homology.len() != v.homology.len() {
        return Err(AlphabetError::GenusMismatch);
    }
    Ok(pairing(&u.homology, &v.homology))
}

/// The same pairing on raw coefficient vectors in the ordered basis
/// (a₁, b₁, …, a_g, b_g).
pub fn pairing_of_vectors(u: &[i64], v: &[i64]) -> i64 {
    debug_assert_eq!(u.len(), v.len());
    (0..u.len() / 2)
        .map(|h| u[2 * h] * v[2 * h + 1] - u[2 * h + 1] * v[2 * h])
        .sum()
}

pub(crate) use pairing_of_vectors as pairing;

/// A curve alphabet: the curves a word may twist about, together with the
/// symmetric table of declared geometric intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveAlphabet {
    genus: usize,
    curves: Vec<Curve>,
    /// Nonzero geometric intersections, keyed by (min idx, max idx).
    geom: BTreeMap<(usize, usize), u32>,
}

impl CurveAlphabet {
    pub fn new(
        genus: usize,
        curves: Vec<Curve>,
        intersections: &[(&str, &str, u32)],
    ) -> Result<Self, AlphabetError> {
        if genus == 0 {
            return Err(AlphabetError::ZeroGenus);
        }
        let mut index = BTreeMap::new();
        for (i, c) in curves.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(AlphabetError::DuplicateId(c.id.clone()));
            }
            if c.homology.len() != 2 * genus {
                return Err(AlphabetError::BadVectorLength(
                    c.id.clone(),
                    c.homology.len(),
                    2 * genus,
                ));
            }
            let zero = c.homology.iter().all(|&x| x == 0);
            if c.separating != zero || c.split_genus.is_some() != c.separating {
                return Err(AlphabetError::SeparatingMismatch(c.id.clone()));
            }
            if let Some(h) = c.split_genus {
                if h == 0 || h as usize > genus / 2 {
                    return Err(AlphabetError::BadSplitGenus(c.id.clone(), h));
                }
            }
        }
        let mut geom = BTreeMap::new();
        for &(u, v, n) in intersections {
            let iu = *index.get(u).ok_or_else(|| AlphabetError::UnknownCurve(u.into()))?;
            let iv = *index.get(v).ok_or_else(|| AlphabetError::UnknownCurve(v.into()))?;
            if iu == iv {
                if n != 0 {
                    return Err(AlphabetError::SelfIntersection(u.into()));
                }
                continue;
            }
            if n > 0 {
                geom.insert((iu.min(iv), iu.max(iv)), n);
            }
        }
        let alphabet = CurveAlphabet { genus, curves, geom };
        alphabet.validate_pairings()?;
        Ok(alphabet)
    }

    fn validate_pairings(&self) -> Result<(), AlphabetError> {
        for i in 0..self.curves.len() {
            for j in i + 1..self.curves.len() {
                let alg = pairing(&self.curves[i].homology, &self.curves[j].homology);
                let geo = self.geom.get(&(i, j)).copied().unwrap_or(0);
                if alg.unsigned_abs() > u64::from(geo) {
                    return Err(AlphabetError::PairingExceedsGeometric(
                        self.curves[i].id.clone(),
                        self.curves[j].id.clone(),
                        alg,
                        geo,
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curve(&self, id: &str) -> Result<&Curve, AlphabetError> {
        self.curve_index(id).map(|i| &self.curves[i])
    }

    pub(crate) fn curve_index(&self, id: &str) -> Result<usize, AlphabetError> {
        self.curves
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| AlphabetError::UnknownCurve(id.to_string()))
    }

    /// Declared geometric intersection number (symmetric, default 0).
    pub fn geometric_intersection(&self, u: &str, v: &str) -> Result<u32, AlphabetError> {
        let iu = self.curve_index(u)?;
        let iv = self.curve_index(v)?;
        if iu == iv {
            return Ok(0);
        }
        Ok(self.geom.get(&(iu.min(iv), iu.max(iv))).copied().unwrap_or(0))
    }

    pub fn intersections(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        self.geom
            .iter()
            .map(|(&(i, j), &n)| (self.curves[i].id.as_str(), self.curves[j].id.as_str(), n))
    }
}

impl fmt::Display for CurveAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus-{} alphabet ({} curves)", self.genus, self.curves.len())
    }
}

/// The chain alphabet a₁,b₁,…,a_g,b_g.
///
/// The curves form the standard chain: consecutive members (aᵢ,bᵢ) and
/// (bᵢ,aᵢ₊₁) meet once, all other pairs are disjoint. Homology classes are
/// those of an embedded chain: `[aᵢ]` is the i-th a-basis vector while
/// `[bᵢ]` = bᵢ − bᵢ₊₁ (and `[b_g]` = b_g), the unique assignment compatible
/// with the chain's intersection pattern. For g = 3 the alphabet also
/// carries d₂, e₂, the boundary curves of a neighbourhood of a₁∪b₁∪a₂,
/// with class `[a₁]+[a₂]`; each meets b₂ once and is disjoint from the rest.
pub fn standard_alphabet(g: usize) -> Result<CurveAlphabet, AlphabetError> {
    if g == 0 {
        return Err(AlphabetError::ZeroGenus);
    }
    let mut curves = Vec::with_capacity(2 * g + 2);
    for i in 1..=g {
        curves.push(Curve::non_separating(&format!("a{i}"), a_class(g, i)));
        curves.push(Curve::non_separating(&format!("b{i}"), b_chain_class(g, i)));
    }
    let mut inter: Vec<(String, String, u32)> = Vec::new();
    for i in 1..=g {
        inter.push((format!("a{i}"), format!("b{i}"), 1));
        if i < g {
            inter.push((format!("b{i}"), format!("a{}", i + 1), 1));
        }
    }
    if g == 3 {
        let d2 = sum_class(g, &[1, 2]);
        curves.push(Curve::non_separating("d2", d2.clone()));
        curves.push(Curve::non_separating("e2", d2));
        inter.push(("d2".into(), "b2".into(), 1));
        inter.push(("e2".into(), "b2".into(), 1));
    }
    let refs: Vec<(&str, &str, u32)> = inter
        .iter()
        .map(|(u, v, n)| (u.as_str(), v.as_str(), *n))
        .collect();
    CurveAlphabet::new(g, curves, &refs)
}

/// The standard alphabet extended by the closing curve of the hyperelliptic
/// chain, labelled a_{g+1}, with class `[a₁]+⋯+[a_g]`; it meets b_g once and
/// is disjoint from the rest of the chain. The genus-two relations
/// (a₁b₁a₂b₂a₃)⁶ and (a₁b₁a₂b₂a₃a₃b₂a₂b₁a₁)² live on this alphabet.
pub fn hyperelliptic_alphabet(g: usize) -> Result<CurveAlphabet, AlphabetError> {
    if g < 2 {
        return Err(AlphabetError::ZeroGenus);
    }
    let base = standard_alphabet(g)?;
    let mut curves = base.curves().to_vec();
    let id = format!("a{}", g + 1);
    let all: Vec<usize> = (1..=g).collect();
    curves.push(Curve::non_separating(&id, sum_class(g, &all)));
    let mut inter: Vec<(String, String, u32)> = base
        .intersections()
        .map(|(u, v, n)| (u.to_string(), v.to_string(), n))
        .collect();
    inter.push((id, format!("b{g}"), 1));
    let refs: Vec<(&str, &str, u32)> = inter
        .iter()
        .map(|(u, v, n)| (u.as_str(), v.as_str(), *n))
        .collect();
    CurveAlphabet::new(g, curves, &refs)
}

fn a_class(g: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    v[2 * (i - 1)] = 1;
    v
}

fn b_chain_class(g: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    v[2 * (i - 1) + 1] = 1;
    if i < g {
        v[2 * i + 1] = -1;
    }
    v
}

fn sum_class(g: usize, a_indices: &[usize]) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    for &i in a_indices {
        v[2 * (i - 1)] = 1;
    }
    v
}

/// Matrix of the positive-twist transvection x ↦ x + ⟨x, c⟩·c.
/// Separating curves have zero class, so they act trivially.
pub fn transvection_matrix(c: &Curve, g: usize) -> IntMatrix {
    assert_eq!(c.homology.len(), 2 * g, "curve not from a genus-{g} alphabet");
    let n = 2 * g;
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let coef = pairing(&e, &c.homology);
        if coef != 0 {
            for (i, &ci) in c.homology.iter().enumerate() {
                let v = &m[(i, j)] + BigInt::from(coef) * BigInt::from(ci);
                m[(i, j)] = v;
            }
        }
    }
    m
}

/// Inverse transvection (the twist with exponent −1): x ↦ x − ⟨x, c⟩·c.
pub fn transvection_matrix_inverse(c: &Curve, g: usize) -> IntMatrix {
    let n = 2 * g;
    let t = transvection_matrix(c, g);
    let mut inv = IntMatrix::zero(n, n);
    // Unipotent: T = I + N with N² = 0, so T⁻¹ = 2I − T.
    for i in 0..n {
        for j in 0..n {
            let two_id = if i == j { BigInt::from(2) } else { BigInt::from(0) };
            inv[(i, j)] = two_id - t[(i, j)].clone();
        }
    }
    inv
}
