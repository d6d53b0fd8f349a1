//! Possibilistic representation of belief functions and evidence
//! combination with triangular operators.
//!
//! A BPA is decomposed into its empty-set mass, a singleton possibility
//! profile and layer-wise commitment profiles ([`isopignistic`]). Fusing
//! these profiles pointwise with t-norms or t-conorms ([`tnorm`]) and
//! reconstructing gives the rules in [`fusion`], alongside the classical
//! conjunctive, disjunctive, cautious and bold rules.

pub mod cli;
pub mod document;
pub mod error;
pub mod fusion;
pub mod isopignistic;
pub mod mass;
pub mod multiview;
pub mod powerset;
pub mod tnorm;

pub use document::BpaDocument;
pub use error::{Error, Result};
pub use fusion::{pecr, CombinationRule, FusionConfig};
pub use isopignistic::{reconstruct, relativize, RelativeRepresentation};
pub use mass::MassFunction;
pub use powerset::{Frame, Subset};
pub use tnorm::TriangularOperator;
