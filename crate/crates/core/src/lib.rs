//! Knot Floer complexes of blown-down two-bridge links.
//!
//! The crate builds genus-one doubly pointed diagrams from continued
//! fractions, reads off bifiltered complexes, compares them with closed-form
//! models, forms filtered mapping cones for cables in surgeries, and
//! evaluates the concordance invariants `phi_{i,j}`.

pub mod complex;
pub mod cone;
pub mod diagram;
pub mod golden;
pub mod phi;
pub mod tangle;
pub mod verify;

pub use complex::{BifilteredComplex, ComplexError, Generator};
pub use tangle::{Presentation, Sign, Tangle, TangleError};

/// Exact rationals over the default scalar.
pub type Rational = num_rational::Ratio<i64>;
