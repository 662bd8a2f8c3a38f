//! Exact arithmetic: finite fields, echelon-form subspaces, rational matrices.

pub mod field;
pub mod rational;
pub mod subspace;

pub use field::{Elem, FieldSpec};
pub use rational::{ChainComplexQ, MatrixQ, Rational};
pub use subspace::{enumerate_subspaces, for_each_subspace, proper_subspaces, SubspaceGF};
