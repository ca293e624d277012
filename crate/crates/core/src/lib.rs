//! Exact computation of generalized Casimir operators (coadjoint invariants)
//! of the triangular Lie algebras t0(n) (strictly upper triangular), t(n)
//! (upper triangular) and st(n) (traceless upper triangular).
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere. Invariant bases are produced twice, by
//! independent code paths:
//!
//! * [`normalization`] runs the moving-frame style normalization of the
//!   lifted invariant matrix I = B X B^-1 and solves the resulting linear
//!   subsystems over the rational-function field;
//! * [`closed_form`] builds the same bases directly from determinant
//!   formulas.
//!
//! The [`verifier`] module certifies both against the infinitesimal
//! criterion (an exact symbolic zero), random group-element invariance and
//! Jacobian rank counting, and [`uea`] checks the polynomial invariants of
//! t0(n) as honest Casimir elements of the universal enveloping algebra.

pub mod algebra;
pub mod closed_form;
pub mod error;
pub mod lifted;
pub mod matrix;
pub mod normalization;
pub mod poly;
pub mod ratexpr;
pub mod rational;
pub mod render;
pub mod sample;
pub mod suite;
pub mod uea;
pub mod vars;
pub mod verifier;



pub use algebra::{build_algebra, AlgebraKind, AlgebraSpec, BasisLabel, Family};
pub use closed_form::{st_basis, t0_basis, t_basis, InvariantBasis};
pub use error::Error;
pub use matrix::PolyMatrix;
pub use poly::{Monomial, MultiPoly};
pub use ratexpr::RationalExpr;
pub use rational::BigRational;
pub use vars::{VarId, VarKind};
