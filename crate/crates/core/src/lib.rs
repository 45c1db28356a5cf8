//! Exact construction of the Rumin/BGG complex of a graded nilpotent Lie
//! algebra.
//!
//! The crate is `no_std` (it needs `alloc`). Modules, bottom up:
//!
//! * [`rational`], [`linalg`]: exact scalars and sparse/dense linear algebra.
//! * [`algebra`]: graded nilpotent Lie algebras, built-in models, dilations.
//! * [`exterior`]: `Λ g*`, the coboundary `d₀`, its adjoint `δ`, cohomology
//!   and the bigraded ranks of `ker δ / im δ`.
//! * [`poly`], [`calculus`]: polynomial-coefficient forms on the group, the
//!   de Rham differential in the left-invariant coframe, contractions and Lie
//!   derivatives.
//! * [`rumin`]: the homotopy operators `q`, `π`, the retraction `ι` and the
//!   differential `D = ι d ι⁻¹` on sections of `ker δ / im δ`.
//! * [`tables`]: strip bounds, truncated rank sequences and the
//!   quasi-conformality test.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod budget;
pub mod calculus;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod report;
pub mod rumin;
pub mod tables;

pub use algebra::{builtin, GradedLieAlgebra, Model, RawAlgebra};
pub use error::{Error, Result};
pub use rational::Rational;
