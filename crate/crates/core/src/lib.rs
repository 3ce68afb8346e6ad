//! Exact computation of the θ-invariant of the canonical contact structure
//! on the boundary of a negative-definite plumbing tree, together with the
//! Heegaard Floer correction term, rotation-vector realizability and the
//! search for symmetric stars with θ = −2.
//!
//! All arithmetic is exact over `BigInt` / `BigRational`.

pub mod contfrac;
pub mod dinv;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod matrix;
pub mod recursion;
pub mod rotation;
pub mod samples;
pub mod search;
pub mod seifert;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use contfrac::{CoprimePair, HJExpansion};
pub use dinv::{CharSearchResult, DInvariantReport};
pub use error::{Error, ErrorClass, ParseError, ParseErrorKind, Result};
pub use graph::{parse_graph, PlumbingGraph};
pub use matrix::{IntegerMatrix, RationalMatrix, RationalVector};
pub use recursion::{ContributionTable, NodeState, RootedTree};
pub use rotation::{Classification, MinimizationOptions, MinimizationReport, RotationVector};
pub use search::SymmetricStar;
pub use seifert::SeifertData;
