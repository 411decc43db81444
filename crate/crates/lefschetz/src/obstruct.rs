//! Decision procedures: the genus-three non-holomorphicity obstruction,
//! parity certificates for irreducibility, the Hodge-index gate on
//! reducible members, the genus-two geography enumeration, section-square
//! bounds, the reducible-fibre trade, and covering-sequence boundedness.
//!
//! Verdicts are certificates or silence: a `false` from a parity gate
//! never claims a reducible fibre exists, only that no certificate of
//! irreducibility is available from that test.

use crate::moduli::{covering_sequence_term, ModuliError};
use crate::word::TwistCensus;
use crate::ratio;
#[cfg(test)]
use crate::int;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructError {
    #[error("the obstruction needs irreducible fibres; a reducible fibre was declared")]
    RefusesVerdict,
    #[error("δ₀ + 2δ₁ = {0} is not divisible by 10")]
    NonDivisible(i64),
    #[error("no reducible fibre of split genus {0} in the census")]
    NoSuchFibre(u32),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}

/// Outcome of the genus-three obstruction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionVerdict {
    /// Whether the integrality of the hyperelliptic signature leaves a
    /// hyperelliptic structure possible: 7 | e+1 (14 under the braid
    /// refinement flag).
    pub hyperelliptic_possible: bool,
    /// ⟨S², hyperelliptic class⟩ = (9σ + 5e + 40)/4.
    pub pairing_value: BigRational,
    pub non_holomorphic: bool,
    pub reasons: Vec<String>,
}

/// Genus-three Lefschetz fibrations with irreducible fibres: if e+1 is
/// not divisible by 7 and 9σ + 5e + 40 < 0, the fibration is not
/// isotopic to a holomorphic one. `refine_mod14` strengthens the first
/// gate to 14 | e+1 (braid-factorisation refinement).
pub fn genus3_obstruction(
    e: i64,
    sigma: i64,
    has_reducible: bool,
    refine_mod14: bool,
) -> Result<ObstructionVerdict, ObstructError> {
    if has_reducible {
        return Err(ObstructError::RefusesVerdict);
    }
    let modulus = if refine_mod14 { 14 } else { 7 };
    let hyperelliptic_possible = (e + 1) % modulus == 0;
    let pairing_value = ratio(9 * sigma + 5 * e + 40, 4);
    let mut reasons = Vec::new();
    if hyperelliptic_possible {
        reasons.push(format!("e+1 = {} is divisible by {}", e + 1, modulus));
    } else {
        reasons.push(format!(
            "e+1 = {} is not divisible by {}: not hyperelliptic",
            e + 1,
            modulus
        ));
    }
    let negative = pairing_value.is_negative();
    reasons.push(format!(
        "hyperelliptic pairing (9σ+5e+40)/4 = {pairing_value} is {}",
        if negative { "negative" } else { "non-negative" }
    ));
    let non_holomorphic = !hyperelliptic_possible && negative;
    if non_holomorphic {
        reasons.push("sphere meets an effective divisor negatively: not holomorphic".into());
    }
    Ok(ObstructionVerdict { hyperelliptic_possible, pairing_value, non_holomorphic, reasons })
}

/// Certificate that a pencil of even degree k has no reducible fibres,
/// valid when the intersection form is even or the canonical class is
/// two-divisible. `false` means no certificate, never a disproof.
pub fn reducibility_parity_certificate(form_even: bool, canonical_even: bool, k: i64) -> bool {
    k % 2 == 0 && (form_even || canonical_even)
}

/// Why the Hodge-index gate rejected a candidate splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOutcome {
    /// Gate not applicable (k = 1 or k²C² ≤ 4); nothing is certified.
    NotApplicable,
    /// The candidate violates D₁² + D₂² = k²C² − 2.
    SplittingArithmetic,
    /// 1 + D₂² > 0 fails: components have positive symplectic area.
    AreaPositivity,
    /// k must divide D₂·(kω) = 1 + D₂².
    Divisibility,
    /// Two positive-square pieces with D₁·D₂ = 1 contradict the Hodge
    /// index theorem.
    HodgeIndex,
}

impl GateOutcome {
    pub fn feasible(self) -> bool {
        self == GateOutcome::NotApplicable
    }
}

/// Feasibility of a reducible member k·C = D₁ + D₂ with D₁·D₂ = 1 on a
/// Kähler surface. For k ≥ 2 with k²C² > 4 every candidate fails one of
/// the displayed constraints; the outcome names the first that fires.
pub fn hodge_index_reducibility_gate(
    d1_sq: i64,
    d2_sq: i64,
    k: i64,
    c_sq: i64,
) -> GateOutcome {
    if k < 2 || k * k * c_sq <= 4 {
        return GateOutcome::NotApplicable;
    }
    if d1_sq + d2_sq != k * k * c_sq - 2 {
        return GateOutcome::SplittingArithmetic;
    }
    if d2_sq <= -1 {
        return GateOutcome::AreaPositivity;
    }
    if (1 + d2_sq) % k != 0 {
        return GateOutcome::Divisibility;
    }
    GateOutcome::HodgeIndex
}

/// The three branches of the genus-two finiteness analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    /// K = 0 (so ω² = 2): n + 7s = 30.
    KZero,
    /// K·ω = 1, ω² = 1: n + 7s = 40.
    KOmegaOne,
    /// b₊ = 1: n + 2s = 20 − 5b₁ with b₁ ∈ {0, 2}.
    BPlusOne,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::KZero => "K_zero",
            Branch::KOmegaOne => "K_omega_one",
            Branch::BPlusOne => "b_plus_one",
        }
    }
}

/// One solved case of the genus-two finiteness theorem, at the pencil
/// level (b = ω² base-points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeographyCase {
    pub branch: Branch,
    pub n: u64,
    pub s: u64,
    pub b1: u32,
    pub omega_sq: u32,
    pub e: i64,
    pub sigma: i64,
    pub c1_sq: i64,
    /// Corpus word the fibration is homeomorphic to, for the s = 0 cases.
    pub homeo_word: Option<&'static str>,
    /// Whether the case is individually worked out in the classification
    /// this table encodes; the remaining lattice solutions pass every
    /// stated gate but carry no classification label.
    pub listed: bool,
}

impl GeographyCase {
    pub fn branch_equation_holds(&self) -> bool {
        match self.branch {
            Branch::KZero => self.n + 7 * self.s == 30,
            Branch::KOmegaOne => self.n + 7 * self.s == 40,
            Branch::BPlusOne => self.n + 2 * self.s == 20 - 5 * u64::from(self.b1),
        }
    }
}

fn geography_case(
    branch: Branch,
    n: u64,
    s: u64,
    b1: u32,
    omega_sq: u32,
    homeo_word: Option<&'static str>,
    listed: bool,
) -> GeographyCase {
    // σ at the pencil level: −(3n+s)/5 + ω²; the lattice gates guarantee
    // divisibility by 5 on every emitted case.
    let sigma = -((3 * n + s) as i64) / 5 + i64::from(omega_sq);
    let e = n as i64 + s as i64 - 4 - i64::from(omega_sq);
    let c1_sq = 2 * e + 3 * sigma;
    GeographyCase { branch, n, s, b1, omega_sq, e, sigma, c1_sq, homeo_word, listed }
}

/// The complete finite list of genus-two pencil geographies.
///
/// Each branch enumerates the non-negative lattice solutions of its
/// equation that pass two gates: the abelianisation gate 10 | n + 2s,
/// and the homology-rank gate n ≥ 4 − b₁ (the vanishing classes span a
/// rank-(4 − b₁) sublattice of H₁(Σ₂) and separating classes vanish).
/// The b₊ = 1 branch drops s = 0 with b₁ = 2, since fibrations without
/// reducible fibres have simply connected total spaces.
pub fn genus2_geography() -> Vec<GeographyCase> {
    let mut cases = Vec::new();
    let mod10 = |n: u64, s: u64| (n + 2 * s).is_multiple_of(10);
    let rank_gate = |n: u64, b1: u32| n as i64 >= 4 - i64::from(b1);

    // K = 0: n + 7s = 30, ω² = 2, b₁ = 0.
    for s in 0..=(30 / 7) {
        let n = 30 - 7 * s;
        if !mod10(n, s) || !rank_gate(n, 0) {
            continue;
        }
        let word = (s == 0).then_some("g2_word2");
        cases.push(geography_case(Branch::KZero, n, s, 0, 2, word, true));
    }

    // K·ω = 1, ω² = 1: n + 7s = 40, b₁ = 0.
    for s in 0..=(40 / 7) {
        let n = 40 - 7 * s;
        if !mod10(n, s) || !rank_gate(n, 0) {
            continue;
        }
        let word = (s == 0).then_some("g2_word3");
        cases.push(geography_case(Branch::KOmegaOne, n, s, 0, 1, word, s == 0));
    }

    // b₊ = 1: n + 2s = 20 − 5b₁, pinned to the K·ω = 1, ω² = 1 vertex of
    // the adjunction square; K·ω = 0 here forces 2K = 0 and lands back in
    // the torsion-canonical geography above.
    for b1 in [0u32, 2] {
        let total = 20 - 5 * u64::from(b1);
        for s in 0..=(total / 2) {
            let n = total - 2 * s;
            if s == 0 && b1 == 2 {
                continue;
            }
            if !mod10(n, s) || !rank_gate(n, b1) {
                continue;
            }
            let word = (s == 0 && b1 == 0 && n == 20).then_some("g2_word1");
            let listed = s == 0 && b1 == 0;
            cases.push(geography_case(Branch::BPlusOne, n, s, b1, 1, word, listed));
        }
    }
    cases
}

/// Verdict of the genus-two section-square bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionBound {
    /// 3|s·s| ≥ m + δ₁.
    Case1,
    /// 4|s·s| = m + δ₁.
    Case2,
    /// Neither case holds: contradicts the bound (under the isotopy
    /// hypothesis), flagging a non-holomorphic candidate.
    Violation,
}

/// Genus-two fibrations with a distinguished section of square s·s and
/// δ₀ + 2δ₁ = 10m: either 3|s·s| ≥ m + δ₁ or 4|s·s| = m + δ₁. Anything
/// else is a violation. Conditional on the symplectic isotopy conjecture.
pub fn genus2_section_bound(
    delta0: u64,
    delta1: u64,
    s_dot_s: i64,
) -> Result<SectionBound, ObstructError> {
    let weighted = (delta0 + 2 * delta1) as i64;
    if weighted % 10 != 0 {
        return Err(ObstructError::NonDivisible(weighted));
    }
    let m = weighted / 10;
    let ss = s_dot_s.abs();
    if 3 * ss >= m + delta1 as i64 {
        Ok(SectionBound::Case1)
    } else if 4 * ss == m + delta1 as i64 {
        Ok(SectionBound::Case2)
    } else {
        Ok(SectionBound::Violation)
    }
}

/// Trade one reducible fibre of split genus h for (4h+2)·2h irreducible
/// ones. For genus two (h = 1) that is twelve irreducible fibres, and the
/// quantity 3|s·s| − m − δ₁ is unchanged.
pub fn trade_reducible(census: &TwistCensus, h: u32) -> Result<TwistCensus, ObstructError> {
    let mut out = census.clone();
    let slot = out.s_by_genus.get_mut(&h).filter(|c| **c > 0);
    let Some(count) = slot else {
        return Err(ObstructError::NoSuchFibre(h));
    };
    *count -= 1;
    if *count == 0 {
        out.s_by_genus.remove(&h);
    }
    let gained = (4 * u64::from(h) + 2) * 2 * u64::from(h);
    out.n += gained;
    out.total = out.total - 1 + gained;
    Ok(out)
}

/// Whether the Poincaré dual of the fibre can be represented by a
/// symplectic form positive on the fibres: obstructed exactly for a
/// single base-point together with a reducible member.
pub fn pencil_duality_check(base_points: u32, delta1: u64) -> bool {
    !(base_points == 1 && delta1 >= 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringVerdict {
    UnboundedGrowth,
    Bounded,
    IdenticallyZero,
}

/// The covering sequence with its verdict. Terms with even adjunction
/// genus are zero by convention and carried as `None`.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub terms: Vec<(u32, Option<BigRational>)>,
    pub verdict: CoveringVerdict,
}

/// Evaluates the covering sequence over even k ≤ kmax. The sequence is
/// bounded above only if 2c₁ = 0 (here: K·ω = 0 inputs), and vanishes
/// identically iff the Chern data vanish too.
pub fn covering_boundedness(
    k_dot_omega: i64,
    omega_sq: i64,
    c1_sq: i64,
    c2: i64,
    kmax: u32,
) -> Result<CoveringReport, ObstructError> {
    assert!(kmax >= 2 && kmax.is_multiple_of(2), "kmax must be even and ≥ 2");
    let mut terms = Vec::new();
    for k in (2..=kmax).step_by(2) {
        match covering_sequence_term(k_dot_omega, omega_sq, c1_sq, c2, k) {
            Ok(v) => terms.push((k, Some(v))),
            Err(ModuliError::BadCoveringGenus(_)) => terms.push((k, None)),
            Err(e) => return Err(e.into()),
        }
    }
    let defined: Vec<&BigRational> = terms.iter().filter_map(|(_, v)| v.as_ref()).collect();
    let verdict = if k_dot_omega > 0 {
        CoveringVerdict::UnboundedGrowth
    } else if defined.iter().all(|v| v.is_zero()) {
        CoveringVerdict::IdenticallyZero
    } else {
        CoveringVerdict::Bounded
    };
    Ok(CoveringReport { terms, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn obstruction_on_the_modified_pencil() {
        let v = genus3_obstruction(66, -42, false, false).unwrap();
        assert!(!v.hyperelliptic_possible); // 67 = 7·9 + 4
        assert_eq!(v.pairing_value, int(-2));
        assert!(v.non_holomorphic);
    }

    #[test]
    fn obstruction_on_the_hyperelliptic_ancestor() {
        let v = genus3_obstruction(76, -48, false, false).unwrap();
        assert!(v.hyperelliptic_possible); // 77 = 7·11
        assert_eq!(v.pairing_value, int(-3));
        assert!(!v.non_holomorphic);
    }

    #[test]
    fn obstruction_refuses_reducible_input() {
        assert!(matches!(
            genus3_obstruction(66, -42, true, false),
            Err(ObstructError::RefusesVerdict)
        ));
    }

    #[test]
    fn mod14_refinement_tightens_the_gate() {
        // e+1 = 7·9: divisible by 7 but not 14.
        let v7 = genus3_obstruction(62, -50, false, false).unwrap();
        assert!(v7.hyperelliptic_possible);
        let v14 = genus3_obstruction(62, -50, false, true).unwrap();
        assert!(!v14.hyperelliptic_possible);
    }

    #[test]
    fn parity_certificates() {
        assert!(reducibility_parity_certificate(true, false, 2));
        assert!(reducibility_parity_certificate(false, true, 4));
        assert!(!reducibility_parity_certificate(false, false, 2));
        assert!(!reducibility_parity_certificate(true, true, 3));
    }

    #[test]
    fn hodge_gate_examples() {
        // D₂² ≤ −1 trips area positivity (with consistent splitting sum).
        assert_eq!(
            hodge_index_reducibility_gate(19, -1, 2, 5),
            GateOutcome::AreaPositivity
        );
        // D₂² = 0, k = 2: 2 ∤ 1.
        assert_eq!(
            hodge_index_reducibility_gate(18, 0, 2, 5),
            GateOutcome::Divisibility
        );
        // Both positive with k | 1 + D₂²: Hodge index contradiction.
        assert_eq!(
            hodge_index_reducibility_gate(17, 1, 2, 5),
            GateOutcome::HodgeIndex
        );
        // k = 1 exempt.
        assert_eq!(
            hodge_index_reducibility_gate(0, 0, 1, 5),
            GateOutcome::NotApplicable
        );
        assert!(hodge_index_reducibility_gate(0, 0, 1, 5).feasible());
        // Inconsistent candidate data.
        assert_eq!(
            hodge_index_reducibility_gate(3, 3, 2, 5),
            GateOutcome::SplittingArithmetic
        );
    }

    #[test]
    fn geography_k_zero_branch() {
        let cases = genus2_geography();
        let k_zero: Vec<(u64, u64)> = cases
            .iter()
            .filter(|c| c.branch == Branch::KZero)
            .map(|c| (c.n, c.s))
            .collect();
        assert_eq!(k_zero, vec![(30, 0), (16, 2)]);
    }

    #[test]
    fn geography_named_cases() {
        let cases = genus2_geography();
        let word2 = cases.iter().find(|c| c.homeo_word == Some("g2_word2")).unwrap();
        assert_eq!((word2.n, word2.s, word2.e, word2.sigma, word2.c1_sq), (30, 0, 24, -16, 0));
        let word3 = cases.iter().find(|c| c.homeo_word == Some("g2_word3")).unwrap();
        assert_eq!((word3.n, word3.e, word3.sigma, word3.c1_sq), (40, 35, -23, 1));
        let word1 = cases.iter().find(|c| c.homeo_word == Some("g2_word1")).unwrap();
        assert_eq!((word1.n, word1.s, word1.b1), (20, 0, 0));
    }

    #[test]
    fn geography_gates_hold_everywhere() {
        let cases = genus2_geography();
        assert!(!cases.is_empty());
        for c in &cases {
            assert!(c.branch_equation_holds(), "{c:?}");
            assert_eq!((c.n + 2 * c.s) % 10, 0, "{c:?}");
            assert!(c.e < 40, "{c:?}");
            assert_eq!(c.c1_sq, 2 * c.e + 3 * c.sigma);
        }
        assert_eq!(cases.iter().map(|c| c.e).max(), Some(35));
        // No duplicate records.
        for (i, a) in cases.iter().enumerate() {
            for b in &cases[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn section_bound_cases() {
        assert_eq!(genus2_section_bound(30, 0, -1).unwrap(), SectionBound::Case1);
        assert_eq!(genus2_section_bound(40, 0, -1).unwrap(), SectionBound::Case2);
        assert_eq!(genus2_section_bound(100, 0, -1).unwrap(), SectionBound::Violation);
        assert!(matches!(
            genus2_section_bound(33, 0, -1),
            Err(ObstructError::NonDivisible(33))
        ));
    }

    #[test]
    fn trade_preserves_threshold() {
        let mut s_by_genus = BTreeMap::new();
        s_by_genus.insert(1u32, 2u64);
        let census = TwistCensus { n: 16, s_by_genus, total: 18 };
        let traded = trade_reducible(&census, 1).unwrap();
        assert_eq!(traded.n, 28);
        assert_eq!(traded.reducible(1), 1);
        // δ₀ + 2δ₁ gains 10, so m gains 1 while δ₁ drops 1: the
        // threshold 3|s·s| − m − δ₁ is untouched.
        let m0 = (census.n + 2 * census.s_total()) / 10;
        let m1 = (traded.n + 2 * traded.s_total()) / 10;
        assert_eq!(m1, m0 + 1);
        assert_eq!(m1 + traded.s_total(), m0 + census.s_total());
        // h = 2 trades forty fibres in.
        let mut s2 = BTreeMap::new();
        s2.insert(2u32, 1u64);
        let census2 = TwistCensus { n: 0, s_by_genus: s2, total: 1 };
        assert_eq!(trade_reducible(&census2, 2).unwrap().n, 40);
        // Trading a fibre that is not there fails.
        assert!(matches!(
            trade_reducible(&census2, 1),
            Err(ObstructError::NoSuchFibre(1))
        ));
    }

    #[test]
    fn duality_check() {
        assert!(!pencil_duality_check(1, 1));
        assert!(pencil_duality_check(2, 5));
        assert!(pencil_duality_check(1, 0));
    }

    #[test]
    fn covering_verdicts() {
        let zero = covering_boundedness(0, 1, 0, 0, 8).unwrap();
        assert_eq!(zero.verdict, CoveringVerdict::IdenticallyZero);
        let bounded = covering_boundedness(0, 1, 0, 24, 8).unwrap();
        assert_eq!(bounded.verdict, CoveringVerdict::Bounded);
        for (_, term) in bounded.terms.iter() {
            if let Some(v) = term {
                assert!(v.is_negative());
            }
        }
        let growth = covering_boundedness(1, 1, 1, 1, 8).unwrap();
        assert_eq!(growth.verdict, CoveringVerdict::UnboundedGrowth);
        let defined: Vec<&BigRational> =
            growth.terms.iter().filter_map(|(_, v)| v.as_ref()).collect();
        assert!(defined.len() >= 2);
        for w in defined.windows(2) {
            assert!(w[1] > w[0], "terms must strictly increase");
        }
        assert!(defined.last().unwrap().is_positive());
    }
}
