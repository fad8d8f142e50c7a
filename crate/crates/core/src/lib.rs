//! Workbench for Andrews-Curtis equivalence of balanced group presentations.

pub mod composition;
pub mod error;
pub mod knot;
pub mod laurent;
pub mod matrix;
pub mod moves;
pub mod presentation;
pub mod scalar;
pub mod search;
pub mod series;
pub mod triviality;
pub mod word;

pub use error::ParseError;
pub use matrix::Matrix;
pub use moves::{apply_move, verify_certificate, AcMove, Certificate, IllegalMove};
pub use presentation::{CanonicalKey, Presentation, PresentationError};
pub use scalar::Scalar;
pub use word::{Alphabet, Letter, Word, WordFormat};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
