//! Sparse and small dense linear algebra used by the eigensolver and the
//! proof replay.

mod dense;
mod envelope;
mod sparse;

pub use dense::{householder_qr, symmetric_eigen, Mat};
pub use envelope::EnvelopeCholesky;
pub use sparse::CsrMatrix;
