//! Bessel functions of the first kind, their zeros, and ball eigenmodes.

mod ball;
mod bessel;
mod gamma;
mod zeros;

pub use ball::{
    ball_dirichlet_eigenvalues, ball_eigenfunction_u1, ball_eigenfunction_xi, ball_modes, ball_neumann_eigenvalues,
    ball_neumann_mu1, unit_ball_volume, BallModes, MAX_BALL_DIMENSION,
};
pub use bessel::{bessel_eval, bessel_j, bessel_j_prime, BesselEval, MAX_ARGUMENT, MAX_ORDER};
pub use gamma::{gamma, ln_gamma};
pub use zeros::{bessel_prime_zero, bessel_zero, MAX_ZERO_INDEX};

pub(crate) use bessel::{j, j_scaled, taylor_derivatives};
