use super::lanczos::{clusters, smallest_eigenpairs_with, SolverOptions, Spectrum};
use super::operator::{assemble, DiscreteOperator, ProblemKind};
use crate::error::{Error, Result};
use crate::geometry::{build_cell_grid, build_grid, DomainSpec, Shape};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Analytic,
    Grid,
}

/// Eigenvalues of one domain with their provenance and error estimates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenReport {
    pub domain: DomainSpec,
    pub kind: String,
    pub source: Source,
    /// Spacings solved on, coarsest first.
    pub h_list: Vec<f64>,
    /// Raw eigenvalues per spacing.
    pub levels: Vec<Vec<f64>>,
    /// Extrapolated (or exact) eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// |extrapolated − finest| per eigenvalue; zero for closed forms.
    pub error_estimates: Vec<f64>,
    /// Solver residuals on the finest grid.
    pub residuals: Vec<f64>,
    /// Assumed convergence order in h.
    pub order: Option<f64>,
    pub clusters: Vec<Vec<usize>>,
}

impl EigenReport {
    pub fn analytic(domain: &DomainSpec, kind: &str, eigenvalues: Vec<f64>) -> Self {
        Self {
            domain: domain.clone(),
            kind: kind.to_string(),
            source: Source::Analytic,
            h_list: Vec::new(),
            levels: Vec::new(),
            error_estimates: vec![0.0; eigenvalues.len()],
            residuals: vec![0.0; eigenvalues.len()],
            order: None,
            clusters: clusters(&eigenvalues),
            eigenvalues,
        }
    }

    /// Finest spacing, `None` for closed forms.
    pub fn h_min(&self) -> Option<f64> {
        self.h_list.last().copied()
    }
}

/// An operator together with its computed spectrum.
#[derive(Debug, Clone)]
pub struct GridSolve {
    pub operator: DiscreteOperator,
    pub spectrum: Spectrum,
}

/// Builds the grid suited to `kind` (cell-centred for Neumann), assembles and solves.
pub fn solve_on_grid(d: &DomainSpec, kind: &ProblemKind, h: f64, k: usize, opts: &SolverOptions) -> Result<GridSolve> {
    let grid = match kind {
        ProblemKind::Neumann => build_cell_grid(d, h)?,
        _ => build_grid(d, h)?,
    };
    let operator = assemble(&grid, kind)?;
    let spectrum = smallest_eigenpairs_with(&operator, k, opts)?;
    Ok(GridSolve { operator, spectrum })
}

/// Error order in h of the 5-point eigenvalues: 2 when the boundary lies on
/// grid lines and the domain is convex, 1 for reentrant corners and
/// staircase-approximated curved or slanted boundaries.
pub fn extrapolation_order(d: &DomainSpec) -> f64 {
    match d.shape {
        Shape::Rectangle { .. } if d.is_rectilinear() => 2.0,
        _ => 1.0,
    }
}

/// Two spacings in ratio 2 scaled to the domain: the shorter side over
/// 64 and 128 for axis-aligned rectangles and L-shapes, √|Ω| over 64 and 128
/// otherwise.
pub fn default_h_list(d: &DomainSpec) -> Result<Vec<f64>> {
    let base = match d.shape {
        Shape::Rectangle { width, height } | Shape::LShape { width, height } if d.is_rectilinear() => width.min(height),
        _ => d.volume()?.sqrt(),
    };
    Ok(vec![base / 64.0, base / 128.0])
}

fn check_h_list(h_list: &[f64]) -> Result<()> {
    if h_list.len() < 2 {
        return Err(Error::InvalidArgument(
            "extrapolation needs at least two spacings".into(),
        ));
    }
    for w in h_list.windows(2) {
        if !((w[0] / w[1] - 2.0).abs() < 1e-9) {
            return Err(Error::InvalidArgument(format!(
                "successive spacings must halve, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Richardson extrapolation of the `k` lowest eigenvalues from the two finest
/// spacings of `h_list` (listed coarsest first, each half the previous).
pub fn extrapolate(d: &DomainSpec, kind: &ProblemKind, k: usize, h_list: &[f64]) -> Result<EigenReport> {
    Ok(extrapolate_with(d, kind, k, h_list, &SolverOptions::default())?.0)
}

/// As [`extrapolate`], also returning the finest-grid solve.
pub fn extrapolate_with(
    d: &DomainSpec,
    kind: &ProblemKind,
    k: usize,
    h_list: &[f64],
    opts: &SolverOptions,
) -> Result<(EigenReport, GridSolve)> {
    check_h_list(h_list)?;
    let mut levels = Vec::with_capacity(h_list.len());
    let mut finest = None;
    for &h in h_list {
        let solve = solve_on_grid(d, kind, h, k, opts)?;
        levels.push(solve.spectrum.eigenvalues.clone());
        finest = Some(solve);
    }
    let finest = finest.expect("h_list is non-empty");
    let order = extrapolation_order(d);
    let factor = 1.0 / (2f64.powf(order) - 1.0);
    let fine = &levels[levels.len() - 1];
    let coarse = &levels[levels.len() - 2];
    let eigenvalues: Vec<f64> = fine.iter().zip(coarse).map(|(f, c)| f + (f - c) * factor).collect();
    let error_estimates = eigenvalues.iter().zip(fine).map(|(e, f)| (e - f).abs()).collect();
    let report = EigenReport {
        domain: d.clone(),
        kind: kind.name().to_string(),
        source: Source::Grid,
        h_list: h_list.to_vec(),
        clusters: clusters(&eigenvalues),
        levels,
        eigenvalues,
        error_estimates,
        residuals: finest.spectrum.residuals.clone(),
        order: Some(order),
    };
    Ok((report, finest))
}
