//! Positive relations of Dehn twists as computable objects.
//!
//! A Lefschetz pencil or fibration on a four-manifold is encoded by a word
//! of positive Dehn twists equal to the identity in the mapping class
//! group. This crate makes that encoding executable:
//!
//! - [`surface`] — curve alphabets, homology classes, declared geometric
//!   intersections, and the transvection action of twists on H₁;
//! - [`word`] — twist words, the homology-level relation check, twist
//!   censuses, and fibre sums;
//! - [`rewrite`] — braid/commute/cyclic moves, chain-relation
//!   substitutions, replayable derivation traces, and the T-operation;
//! - [`invariants`] — Euler characteristic, signature, Chern numbers,
//!   the Hodge pairing λ, and first homology of total spaces;
//! - [`moduli`] — formal divisor classes on moduli of curves and their
//!   pairings against the sphere data of a fibration;
//! - [`obstruct`] — non-holomorphicity obstructions, parity certificates,
//!   section-square bounds, and the genus-two geography enumeration;
//! - [`corpus`] — the bundled example relations with expected reports;
//! - [`textio`] — the plain-text word/alphabet/trace/report formats.
//!
//! All arithmetic is exact: matrices over big integers, coefficients as
//! exact rationals. Nothing here rounds.
//!
//! ```
//! use lefschetz::invariants::{compute_report, FibrationData, SignatureSource};
//! use lefschetz::surface::standard_alphabet;
//! use lefschetz::word::{homology_image, TwistWord};
//! use std::sync::Arc;
//!
//! // The genus-three chain relation (a1 b1 a2 b2 a3 b3)^14 = 1.
//! let alphabet = Arc::new(standard_alphabet(3)?);
//! let word = TwistWord::positive(alphabet, &["a1", "b1", "a2", "b2", "a3", "b3"])?.repeat(14);
//! assert!(homology_image(&word).is_identity());
//!
//! let report = compute_report(&FibrationData {
//!     word,
//!     base_points: 0,
//!     signature_source: SignatureSource::EndoGenus3,
//! })?;
//! assert_eq!((report.e, report.sigma, report.c1_sq), (76, -48, 8));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod corpus;
pub mod invariants;
pub mod matrix;
pub mod moduli;
pub mod obstruct;
pub mod rewrite;
pub mod surface;
pub mod textio;
pub mod word;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Rational from an integer numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}
