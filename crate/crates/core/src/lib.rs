//! Exact computations with finite-dimensional algebras over prime fields:
//! bound quiver algebras, modules, homological invariants, τ-tilting theory
//! and delooping levels.

pub mod algebra;
pub mod corpus;
pub mod dell;
pub mod enumerate;
pub mod error;
pub mod exactla;
pub mod format;
pub mod homology;
pub mod modrep;
pub mod suite;
pub mod tautilt;

pub use error::{Error, Result};
