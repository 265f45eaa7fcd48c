//! Classical dynamical r-matrices, the dynamical Yang-Baxter equation and
//! homogeneous Poisson structures on flag manifolds `K/T`.
//!
//! Modules:
//! - [`rootsys`]: root systems, Weyl groups, parabolic coset combinatorics.
//! - [`liealg`]: normalized Chevalley bases, Casimir, Schouten bracket, compact form.
//! - [`dynr`]: dynamical r-matrices and the dynamical Yang-Baxter equation.
//! - [`homog`]: the Poisson structures `π_{X,X₁,λ}` on `K/T` at the base point.
//! - [`matrixrep`]: the defining representation of `su(n)`, group-level brackets, moment maps.
//! - [`acceptance`]: end-to-end checks with fixed thresholds.

pub mod acceptance;
pub mod dynr;
pub mod error;
pub mod exact;
pub mod homog;
pub mod liealg;
pub mod linalg;
pub mod matrixrep;
pub mod rootsys;
pub mod scalar;
pub mod tol;

pub use error::{Error, Result};
pub use homog::{LagrangianSubalgebra, LeafAtlas, PoissonHomSpec};
pub use liealg::{Algebra, CompactForm, ExactAlgebra, LieAlgebra, Normalization, Tensor, Wedge};
pub use rootsys::{CosetDecomposition, Family, RootSystem, WeylGroup};
pub use scalar::{GaussRational, Rational, Scalar, C64};
pub use tol::Tolerances;
