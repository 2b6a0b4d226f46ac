//! Face enumeration for simplicial complexes, homology manifolds and graded posets.

pub mod complex;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod homology;
pub mod posets;
pub mod scalar;

pub use complex::{Face, Label, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{betti, manifold_report, BettiVector, ManifoldReport};
pub use scalar::FieldSpec;
