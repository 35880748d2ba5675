//! Planar domains, n-balls, and uniform lattices over them.

mod domain;
mod grid;
mod polygon;

pub use domain::{DomainSpec, Placement, Shape};
pub use grid::{build_cell_grid, build_grid, build_grid_unchecked, Grid, Lattice, DIRECTIONS};
