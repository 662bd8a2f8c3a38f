//! Cohomology of period domains over finite fields.
//!
//! The crate computes the compactly supported cohomology of the semistable
//! locus (and of its closed complement) in a flag variety of `GL_d` over
//! `F_q`, as a table of generalized Steinberg representations with Tate
//! twists, and checks it against brute-force point counts over `F_{q^n}` and
//! against explicit chain complexes of parabolic inductions.

pub mod cohomology;
pub mod complexes;
pub mod error;
pub mod exactalg;
pub mod flagenum;
pub mod qcount;

pub use error::{Error, Result};
pub mod slopes;
pub mod weyl;

/// Exact rational slope values.
pub type Slope = num_rational::Rational64;
