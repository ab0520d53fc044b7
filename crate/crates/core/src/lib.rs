//! Exact computations for Artin groups given by Coxeter graphs.
//!
//! * [`graph`]: Coxeter graphs, the text format, graph statistics.
//! * [`classify`]: recognition against the spherical and simply laced
//!   affine catalogs, presets, spherical subsets.
//! * [`poincare`]: integer polynomials and Poincaré polynomials.
//! * [`salvetti`]: the Salvetti chain complex with integer coefficients.
//! * [`matrix`] and [`homology`]: Smith normal form, abelian groups, `H_k`.
//! * [`modeltheory`]: invariants separating Artin groups up to elementary
//!   and existential equivalence.
//!
//! The crate is `no_std` and only needs an allocator.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod modeltheory;
pub mod poincare;
pub mod salvetti;
mod unionfind;

pub use classify::{classify, preset_graph, recognize_irreducible, spherical_subsets, CoxeterType, Decomposition, Family};
pub use graph::{CoxeterGraph, Label, NonEdge};
pub use homology::{embeds, h1_of_artin, h2_fast, homology_at, AbelianGroup};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use poincare::{boundary_coefficient, poincare_of_subset, poincare_polynomial, IntPolynomial};
pub use salvetti::{build_complex, ChainComplex};
