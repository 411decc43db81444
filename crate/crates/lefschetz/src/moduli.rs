//! Formal divisor-class calculus on the Picard group of the moduli space
//! of stable (possibly pointed) curves, and its pairing against the
//! sphere data carried by a fibration.
//!
//! Classes are formal rational combinations of λ, the boundary classes
//! δ₀…δ_{⌊g/2⌋}, the cotangent classes ψ₁…ψ_h and (for h = 1) the
//! relative dualising class ω_RD. No moduli geometry happens here: a
//! class is its coefficient vector, a sphere is the list of values the
//! generators take on it, and pairing is a fold. Everything is an exact
//! rational.

use crate::invariants::{adjunction_genus, InvariantError, InvariantReport};
use crate::{int, ratio};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuliError {
    #[error("classes on M̄_{{{g1},{h1}}} cannot pair with sphere data on M̄_{{{g2},{h2}}}")]
    DimensionMismatch { g1: usize, h1: usize, g2: usize, h2: usize },
    #[error("the covering divisor needs odd genus ≥ 3, got {0}")]
    EvenGenus(u64),
    #[error("genus from adjunction is {0}, need odd and ≥ 3")]
    BadCoveringGenus(u64),
    #[error("k must be even and ≥ 2, got {0}")]
    OddDegree(u32),
    #[error("marking count must be positive, got {0}")]
    NoMarkedPoints(i64),
    #[error("negative fibre count δ₀ = {0}")]
    NegativeFibreCount(BigInt),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Which Picard group the coefficients are written in. The functor and
/// Chow normalisations differ on the hyperelliptic locus by orbifold
/// factors; rescaling is inconsequential exactly when δ₁ pairs to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Functor,
    Chow,
}

/// A formal rational divisor class on M̄_{g,h}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub g: usize,
    pub h: usize,
    pub coeff_lambda: BigRational,
    /// Indexed 0 ..= ⌊g/2⌋.
    pub coeff_delta: Vec<BigRational>,
    /// Indexed 1 ..= h (stored 0-based).
    pub coeff_psi: Vec<BigRational>,
    /// Meaningful only when h = 1.
    pub coeff_omega_rd: BigRational,
    pub normalization: Normalization,
}

impl DivisorClass {
    pub fn zero(g: usize, h: usize) -> Self {
        DivisorClass {
            g,
            h,
            coeff_lambda: int(0),
            coeff_delta: vec![int(0); g / 2 + 1],
            coeff_psi: vec![int(0); h],
            coeff_omega_rd: int(0),
            normalization: Normalization::Functor,
        }
    }

    pub fn scale(&self, c: &BigRational) -> DivisorClass {
        DivisorClass {
            g: self.g,
            h: self.h,
            coeff_lambda: &self.coeff_lambda * c,
            coeff_delta: self.coeff_delta.iter().map(|x| x * c).collect(),
            coeff_psi: self.coeff_psi.iter().map(|x| x * c).collect(),
            coeff_omega_rd: &self.coeff_omega_rd * c,
            normalization: self.normalization,
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, ModuliError> {
        if self.g != other.g || self.h != other.h {
            return Err(ModuliError::DimensionMismatch {
                g1: self.g,
                h1: self.h,
                g2: other.g,
                h2: other.h,
            });
        }
        let zip = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        };
        Ok(DivisorClass {
            g: self.g,
            h: self.h,
            coeff_lambda: &self.coeff_lambda + &other.coeff_lambda,
            coeff_delta: zip(&self.coeff_delta, &other.coeff_delta),
            coeff_psi: zip(&self.coeff_psi, &other.coeff_psi),
            coeff_omega_rd: &self.coeff_omega_rd + &other.coeff_omega_rd,
            normalization: self.normalization,
        })
    }
}

/// The values the generators take on the sphere of one fibration: fibre
/// counts for the δᵢ, λ from the signature formula, −(s·s) for ψ at each
/// marked point and for ω_RD.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereData {
    pub g: usize,
    pub h: usize,
    pub lambda_value: BigRational,
    /// ⟨δᵢ⟩, indexed 0 ..= ⌊g/2⌋; transverse fibre counts.
    pub delta_values: Vec<BigInt>,
    /// ⟨ψⱼ⟩ = −(sⱼ·sⱼ); +1 on exceptional sections.
    pub psi_values: Vec<i64>,
    /// ⟨ω_RD⟩ = −(s·s); meaningful when h = 1.
    pub omega_rd_value: i64,
}

impl SphereData {
    /// Sphere data of a fibration report with the given section squares.
    /// Marked points correspond to the sections; an exceptional section
    /// has square −1 and so contributes ψ-value +1.
    pub fn from_report(rep: &InvariantReport, section_squares: &[i64]) -> SphereData {
        let mut delta_values = vec![BigInt::zero(); rep.genus / 2 + 1];
        delta_values[0] = BigInt::from(rep.census.n);
        for (&h, &count) in &rep.census.s_by_genus {
            delta_values[h as usize] = BigInt::from(count);
        }
        SphereData {
            g: rep.genus,
            h: section_squares.len(),
            lambda_value: rep.lambda.clone(),
            delta_values,
            psi_values: section_squares.iter().map(|&s| -s).collect(),
            omega_rd_value: section_squares.first().map_or(0, |&s| -s),
        }
    }

    pub fn delta_total(&self) -> BigInt {
        self.delta_values.iter().sum()
    }
}

/// ⟨D, S²⟩ = Σ coefficient · value over all generators.
pub fn pair(class: &DivisorClass, sphere: &SphereData) -> Result<BigRational, ModuliError> {
    if class.g != sphere.g || class.h != sphere.h {
        return Err(ModuliError::DimensionMismatch {
            g1: class.g,
            h1: class.h,
            g2: sphere.g,
            h2: sphere.h,
        });
    }
    let mut acc = &class.coeff_lambda * &sphere.lambda_value;
    for (c, v) in class.coeff_delta.iter().zip(&sphere.delta_values) {
        acc += c * BigRational::from(v.clone());
    }
    for (c, v) in class.coeff_psi.iter().zip(&sphere.psi_values) {
        acc += c * int(*v);
    }
    acc += &class.coeff_omega_rd * int(sphere.omega_rd_value);
    Ok(acc)
}

/// Chow-normalised coefficients only rescale harmlessly when δ₁ pairs to
/// zero; flag the pairing otherwise.
pub fn normalization_warning(class: &DivisorClass, sphere: &SphereData) -> Option<&'static str> {
    if class.normalization == Normalization::Chow
        && sphere.delta_values.get(1).is_some_and(|d| !d.is_zero())
    {
        Some("chow normalization with δ₁ ≠ 0: functor/chow rescaling is not a global scalar here")
    } else {
        None
    }
}

/// The hyperelliptic locus in genus three: 9λ − δ₀ − 3δ₁ in the functor
/// normalisation, 18λ − 2δ₀ − 3δ₁ in the Chow ring.
pub fn hyperelliptic_class(mode: Normalization) -> DivisorClass {
    let mut class = DivisorClass::zero(3, 0);
    class.normalization = mode;
    match mode {
        Normalization::Functor => {
            class.coeff_lambda = int(9);
            class.coeff_delta[0] = int(-1);
            class.coeff_delta[1] = int(-3);
        }
        Normalization::Chow => {
            class.coeff_lambda = int(18);
            class.coeff_delta[0] = int(-2);
            class.coeff_delta[1] = int(-3);
        }
    }
    class
}

/// The universal constant c_k = 3(2k−4)! / (k!(k−2)!).
pub fn covering_constant(k: u64) -> BigRational {
    assert!(k >= 2);
    let fact = |n: u64| -> BigInt { (1..=n).map(BigInt::from).fold(BigInt::one(), |a, b| a * b) };
    BigRational::new(BigInt::from(3) * fact(2 * k - 4), fact(k) * fact(k - 2))
}

/// The degree-k covering divisor class in odd genus g = 2k−1:
/// c_k·[(g+3)λ − ((g+1)/6)δ₀ − Σ_{i≥1} i(g−i)δᵢ] on the unmarked space.
pub fn brill_noether_class(g: u64) -> Result<DivisorClass, ModuliError> {
    let bracket = brill_noether_bracket(g)?;
    let ck = covering_constant(g.div_ceil(2));
    Ok(bracket.scale(&ck))
}

/// The bracketed class (g+3)λ − ((g+1)/6)δ₀ − Σ i(g−i)δᵢ, i.e. the
/// covering divisor normalised by 1/c_k.
fn brill_noether_bracket(g: u64) -> Result<DivisorClass, ModuliError> {
    if g.is_multiple_of(2) || g < 3 {
        return Err(ModuliError::EvenGenus(g));
    }
    let gi = g as i64;
    let mut class = DivisorClass::zero(g as usize, 0);
    class.coeff_lambda = int(gi + 3);
    class.coeff_delta[0] = ratio(-(gi + 1), 6);
    for i in 1..=(g / 2) as i64 {
        class.coeff_delta[i as usize] = int(-i * (gi - i));
    }
    Ok(class)
}

/// The ψ-translated covering divisor on M̄_{g,h}: the normalised class
/// (1/c_k)·D¹_k extended by coefficient −1 on every ψⱼ.
pub fn covering_divisor(g: u64, h: usize) -> Result<DivisorClass, ModuliError> {
    if h == 0 {
        return Err(ModuliError::NoMarkedPoints(0));
    }
    let bracket = brill_noether_bracket(g)?;
    Ok(DivisorClass {
        g: g as usize,
        h,
        coeff_lambda: bracket.coeff_lambda,
        coeff_delta: bracket.coeff_delta,
        coeff_psi: vec![int(-1); h],
        coeff_omega_rd: int(0),
        normalization: Normalization::Functor,
    })
}

/// The Weierstrass divisor on M̄_{2,1}: 3ω_RD − λ − δ₁.
pub fn weierstrass_class() -> DivisorClass {
    let mut class = DivisorClass::zero(2, 1);
    class.coeff_omega_rd = int(3);
    class.coeff_lambda = int(-1);
    class.coeff_delta[1] = int(-1);
    class
}

/// Change of ⟨S², aλ − bΔ⟩ under one forward T-operation: −(10b − a).
pub fn t_pairing_delta(a: &BigRational, b: &BigRational) -> BigRational {
    -(int(10) * b - a)
}

/// One term of the covering sequence, evaluated through the full
/// pipeline: genus by adjunction, base-point count h = k²ω², all fibres
/// irreducible (δ_{i>0} = 0, the stabilised-pencil vanishing), λ from the
/// signature formula, ψ-values +1 on the h exceptional sections.
///
/// Inputs describe the pencil's manifold: K·ω and ω² for the integral
/// symplectic form, c₁² and c₂ its Chern numbers.
pub fn covering_sequence_term(
    k_dot_omega: i64,
    omega_sq: i64,
    c1_sq: i64,
    c2: i64,
    k: u32,
) -> Result<BigRational, ModuliError> {
    let (_, sphere, class) = covering_pipeline(k_dot_omega, omega_sq, c1_sq, c2, k)?;
    pair(&class, &sphere)
}

/// The pipeline pieces behind `covering_sequence_term`, exposed so the
/// closed-form cross-check can compare intermediate data.
pub fn covering_pipeline(
    k_dot_omega: i64,
    omega_sq: i64,
    c1_sq: i64,
    c2: i64,
    k: u32,
) -> Result<(u64, SphereData, DivisorClass), ModuliError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(ModuliError::OddDegree(k));
    }
    let g = adjunction_genus(k_dot_omega, omega_sq, k)?;
    if g % 2 == 0 || g < 3 {
        return Err(ModuliError::BadCoveringGenus(g));
    }
    let h = i64::from(k) * i64::from(k) * omega_sq;
    if h <= 0 {
        return Err(ModuliError::NoMarkedPoints(h));
    }
    let h = h as usize;
    // δ₀ = c₂ + h + 4(g−1): Euler characteristic bookkeeping for the
    // blown-up fibration with only irreducible critical fibres.
    let delta0 = BigInt::from(c2) + BigInt::from(h as i64) + BigInt::from(4 * (g as i64 - 1));
    if delta0.is_negative() {
        return Err(ModuliError::NegativeFibreCount(delta0));
    }
    // σ(X) = (c₁² − 2c₂)/3, exact; σ_fib subtracts the h blow-ups.
    let sigma = ratio(c1_sq - 2 * c2, 3);
    let sigma_fib = sigma - int(h as i64);
    let lambda = (sigma_fib + BigRational::from(delta0.clone())) / int(4);
    let mut delta_values = vec![BigInt::zero(); g as usize / 2 + 1];
    delta_values[0] = delta0;
    let sphere = SphereData {
        g: g as usize,
        h,
        lambda_value: lambda,
        delta_values,
        psi_values: vec![1; h],
        omega_rd_value: if h == 1 { 1 } else { 0 },
    };
    let class = covering_divisor(g, h)?;
    Ok((g, sphere, class))
}

/// Exact closed form of the pipeline term:
/// ((g+3)/12)c₁² + ((1−g)/12)c₂ + ((g+7)/6)·k·(K·ω).
///
/// Under the identification k = (g+1)/2 of pencil degree with covering
/// degree, the last coefficient reads ((g+1)(g+7)/12)·(K·ω), the usual
/// printed form; the two agree verbatim whenever K·ω = 0.
pub fn covering_closed_form(k_dot_omega: i64, c1_sq: i64, c2: i64, g: u64, k: u32) -> BigRational {
    let gi = g as i64;
    ratio(gi + 3, 12) * int(c1_sq)
        + ratio(1 - gi, 12) * int(c2)
        + ratio(gi + 7, 6) * int(i64::from(k)) * int(k_dot_omega)
}
