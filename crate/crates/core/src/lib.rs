//! Numerical verification toolkit for finite-dimensional Hopf *-algebras.
//!
//! Starting from structure constants it builds the Haar functional, the block
//! decomposition, the regular monoid `(π_l, m̃, η̃)` with its Frobenius
//! structure and absorbing isomorphisms, the embedding functor
//! `E(X) = Hom(ε, π_l × X)`, the algebra reconstructed from `E`, and the
//! fusion ring with its dimension functions. Every identity is checked by a
//! residual against a [`Tolerance`] and collected in a [`VerificationReport`].

#![allow(clippy::needless_range_loop)]

pub mod embedding;
pub mod error;
pub mod fusion;
pub mod hopf;
pub mod io;
pub mod monoid;
pub mod numeric;
pub mod rep;
pub mod report;
pub mod suite;
pub mod tannaka;

pub use error::{Error, Result};
pub use hopf::{BlockStructure, FiniteGroup, FiniteHopfStarAlgebra, HaarData};
pub use numeric::{c64, ComplexMatrix, Tolerance, C64};
pub use rep::{Intertwiner, Representation};
pub use report::{Check, VerificationReport};
pub use embedding::EmbeddingFunctorData;
pub use fusion::FusionData;
pub use monoid::{ComonoidObject, MonoidObject};
pub use suite::SuiteOptions;
pub use tannaka::ReconstructedHopf;
