//! Low Dirichlet and Neumann eigenvalues of the Laplacian on planar domains,
//! Bessel-function machinery for the ball, checks of the classical eigenvalue
//! isoperimetric inequalities, and a numerical replay of the trial-function
//! argument bounding the first eigenvalue gaps.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod eigensolver;
pub mod error;
pub mod geometry;
pub mod inequalities;
pub mod linalg;
pub mod proofcheck;
pub mod specfun;

pub use error::{Error, Result};
