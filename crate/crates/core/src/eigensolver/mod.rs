//! Discrete Laplacians on grids and their lowest eigenpairs.

mod analytic;
mod extrapolate;
mod lanczos;
mod operator;

pub use analytic::{analytic_spectrum, rectangle_dirichlet, rectangle_neumann};
pub use extrapolate::{
    default_h_list, extrapolate, extrapolate_with, extrapolation_order, solve_on_grid, EigenReport, GridSolve, Source,
};
pub use lanczos::{
    clusters, smallest_eigenpairs, smallest_eigenpairs_with, SolverOptions, Spectrum, CLUSTER_TOLERANCE, MAX_EIGENPAIRS,
};
pub use operator::{assemble, CoefficientBounds, DiscreteOperator, ProblemKind, Sampler, WeightedCoefficients};
