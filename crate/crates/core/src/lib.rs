//! Exact-arithmetic toolkit for the moduli spaces of topological gauge
//! fields in two and four dimensions, and for mechanical verification of
//! the canonical (Hamiltonian) structure of the modified two-form action.
//!
//! Everything is computed over arbitrary-precision rationals or Gaussian
//! rationals; there is no floating point anywhere in the main pipeline.
//! The algebra containers are generic over the scalar type (see
//! [`scalar::Scalar`]); the concrete instantiations used throughout are
//! exported as type aliases here.
//!
//! The crate splits into two halves:
//!
//! * the index pipeline — [`graded`], [`classes`], [`index`], [`moduli`] —
//!   which builds characteristic classes in a truncated graded ring,
//!   regularizes the singular class quotient, and evaluates moduli-space
//!   dimensions over a catalog of base four-manifolds;
//! * the canonical-analysis engine — [`jets`], [`torus`], [`constraints`] —
//!   which manipulates differential polynomials exactly, evaluates smeared
//!   functionals and Poisson brackets on trigonometric field
//!   configurations over the 3-torus, and verifies the constraint algebra.
//!
//! Exact computations that contradict a published table or formula are
//! never patched silently: they are collected in a [`report::DivergenceReport`].

pub mod classes;
pub mod constraints;
pub mod error;
pub mod graded;
pub mod index;
pub mod jets;
pub mod moduli;
pub mod report;
pub mod scalar;
pub mod torus;

pub use classes::{AdjointP1Mode, BundleData, Class, GaugeGroup};
pub use error::{Error, Result};
pub use graded::GradedClass;
pub use scalar::{GaussRat, Rat, Scalar};

/// Trigonometric polynomial over Gaussian rationals, the concrete
/// instantiation used by the phase-space evaluator.
pub type TrigPoly = torus::TrigPolyRing<GaussRat>;

/// Degree-one polynomial in the regularization weight, over exact
/// rationals.
pub type Affine = index::AffinePoly<Rat>;
