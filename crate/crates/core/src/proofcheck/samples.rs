use crate::eigensolver::{GridSolve, WeightedCoefficients};
use crate::error::{Error, Result};
use crate::specfun::{
    ball_dirichlet_eigenvalues, ball_eigenfunction_u1, ball_eigenfunction_xi, ball_modes, unit_ball_volume,
};

/// The first n+1 eigenfunctions sampled at quadrature nodes of equal volume,
/// normalized so that vol·Σ r u_i u_j = δ_ij.
#[derive(Debug, Clone)]
pub struct ModeSamples {
    pub dim: usize,
    /// Node coordinates, `dim` per node.
    pub points: Vec<f64>,
    pub cell_volume: f64,
    pub h: f64,
    /// λ₁..λ_{n+1} belonging to `modes`.
    pub eigenvalues: Vec<f64>,
    pub modes: Vec<Vec<f64>>,
    /// r(x) at the nodes for the weighted problem.
    pub weight: Option<Vec<f64>>,
    /// a(x) at the nodes for the weighted problem.
    pub conductivity: Option<Vec<f64>>,
}

impl ModeSamples {
    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn r(&self, i: usize) -> f64 {
        self.weight.as_ref().map_or(1.0, |r| r[i])
    }

    pub(crate) fn a(&self, i: usize) -> f64 {
        self.conductivity.as_ref().map_or(1.0, |a| a[i])
    }

    /// The lowest n+1 eigenpairs of a planar grid solve. `coefficients` must
    /// be the ones the operator was assembled with, if any.
    pub fn from_grid(solve: &GridSolve, coefficients: Option<&WeightedCoefficients>) -> Result<Self> {
        let grid = solve.operator.grid();
        let n = 2;
        let have = solve.spectrum.vectors.len();
        if have < n + 1 {
            return Err(Error::InsufficientEigenvalues { need: n + 1, have });
        }
        let mut points = Vec::with_capacity(2 * grid.len());
        for node in 0..grid.len() {
            points.extend_from_slice(&grid.point(node));
        }
        let (weight, conductivity) = match coefficients {
            Some(c) => (
                Some(solve.operator.mass().to_vec()),
                Some((0..grid.len()).map(|i| (c.a)(grid.point(i))).collect()),
            ),
            None => (None, None),
        };
        Ok(Self {
            dim: n,
            points,
            cell_volume: grid.cell_volume(),
            h: grid.h(),
            eigenvalues: solve.spectrum.eigenvalues[..n + 1].to_vec(),
            modes: solve.spectrum.vectors[..n + 1].to_vec(),
            weight,
            conductivity,
        })
    }

    /// Closed-form first and second eigenspace of the n-ball of the given
    /// radius centred at the origin, sampled on the lattice hZⁿ. Returns the
    /// samples and the relative quadrature error of the lattice sum of u₁²
    /// and ξ₁² against their exact integrals.
    pub fn ball_lattice(n: usize, radius: f64, h: f64) -> Result<(Self, f64)> {
        let modes = ball_modes(n, radius)?;
        if !(h > 0.0 && h <= radius / 4.0) {
            return Err(Error::TooCoarse { h, limit: radius / 4.0 });
        }
        let m = (radius / h).floor() as i64;
        let side = (2 * m + 1) as usize;
        let total = side.checked_pow(n as u32).unwrap_or(usize::MAX);
        if total > 50_000_000 {
            return Err(Error::InvalidArgument(format!(
                "lattice with {side}^{n} candidate nodes is too large"
            )));
        }
        let inner = radius * (1.0 - 1e-12);
        let mut points = Vec::new();
        let mut idx = vec![-m; n];
        'outer: loop {
            let x: Vec<f64> = idx.iter().map(|&i| i as f64 * h).collect();
            if x.iter().map(|v| v * v).sum::<f64>().sqrt() < inner {
                points.extend_from_slice(&x);
            }
            for d in 0..n {
                idx[d] += 1;
                if idx[d] <= m {
                    continue 'outer;
                }
                idx[d] = -m;
            }
            break;
        }
        let count = points.len() / n;
        let mut raw = vec![Vec::with_capacity(count); n + 1];
        for i in 0..count {
            let x = &points[i * n..(i + 1) * n];
            raw[0].push(ball_eigenfunction_u1(n, radius, x)?);
            for k in 1..=n {
                raw[k].push(ball_eigenfunction_xi(n, radius, k, x)?);
            }
        }
        let cell_volume = h.powi(n as i32);
        let nu = 0.5 * n as f64 - 1.0;
        let sphere = n as f64 * unit_ball_volume(n);
        // ∫_0^R ρ J_ν(jρ/R)² dρ = R² J_{ν+1}(j)²/2 at a zero j of J_ν
        let exact_u1 = sphere * radius * radius * crate::specfun::j(nu + 1.0, modes.alpha).powi(2) / 2.0;
        let exact_xi = unit_ball_volume(n) * radius * radius * crate::specfun::j(nu + 2.0, modes.beta).powi(2) / 2.0;
        let mut quadrature_error: f64 = 0.0;
        let mut normalized = Vec::with_capacity(n + 1);
        for (k, u) in raw.into_iter().enumerate() {
            let sum = cell_volume * u.iter().map(|v| v * v).sum::<f64>();
            if k <= 1 {
                let exact = if k == 0 { exact_u1 } else { exact_xi };
                quadrature_error = quadrature_error.max((sum / exact - 1.0).abs());
            }
            let s = 1.0 / sum.sqrt();
            normalized.push(u.into_iter().map(|v| v * s).collect());
        }
        Ok((
            Self {
                dim: n,
                points,
                cell_volume,
                h,
                eigenvalues: ball_dirichlet_eigenvalues(n, radius, n + 1)?,
                modes: normalized,
                weight: None,
                conductivity: None,
            },
            quadrature_error,
        ))
    }
}
