//! Orthogonality graphs of finite quadratic spaces.
//!
//! The ambient space is `(F_q^n, λdot_n)` with `λdot_n = x_1² + ... + x_{n-1}² + λ x_n²`
//! and `λ` a nonsquare. Two graphs are built on its `k`-dimensional subspaces,
//! both joining `x` and `y` when `x ⊆ y⊥`:
//!
//! * [`graph::build_gamma_square`]: vertices are the subspaces on which the
//!   form restricts to `x_1² + ... + x_k²`;
//! * [`graph::build_gamma_bar`]: vertices are all `k`-subspaces.
//!
//! The crate enumerates these exactly and checks their clique numbers,
//! transitivity, local structure, walk counts and spectra. See the guide in
//! `book/` for the background.

pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod quadform;
pub mod spectral;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, Fq};
pub use graph::{GraphKind, LoopPolicy, OrthGraph};
pub use matrix::Matrix;
pub use quadform::{construct_isometry, FormClass, LineType, QuadraticSpace, StandardForm};
pub use subspace::{canonicalize, enumerate_subspaces, gaussian_binomial, Subspace, SubspaceSet};

/// The guide in `book/` is compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/subspaces.md")]
    mod subspaces {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
