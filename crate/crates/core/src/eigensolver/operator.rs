use crate::error::{Error, Result};
use crate::geometry::{Grid, Lattice};
use crate::linalg::CsrMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A scalar field on the plane.
pub type Sampler = Arc<dyn Fn([f64; 2]) -> f64 + Send + Sync>;

/// Declared bounds a ≤ a(x) ≤ A and c ≤ r(x) ≤ C of a weighted problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientBounds {
    pub a_min: f64,
    pub a_max: f64,
    pub r_min: f64,
    pub r_max: f64,
}

impl CoefficientBounds {
    pub const UNIT: CoefficientBounds = CoefficientBounds {
        a_min: 1.0,
        a_max: 1.0,
        r_min: 1.0,
        r_max: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi;
        if !ok(self.a_min, self.a_max) {
            return Err(Error::CoefficientBounds(format!(
                "need 0 < a <= A, got a = {}, A = {}",
                self.a_min, self.a_max
            )));
        }
        if !ok(self.r_min, self.r_max) {
            return Err(Error::CoefficientBounds(format!(
                "need 0 < c <= C, got c = {}, C = {}",
                self.r_min, self.r_max
            )));
        }
        Ok(())
    }
}

/// Coefficients of −div(a ∇u) + q u = λ r u with isotropic a.
#[derive(Clone)]
pub struct WeightedCoefficients {
    pub a: Sampler,
    pub q: Sampler,
    pub r: Sampler,
    pub bounds: CoefficientBounds,
}

impl WeightedCoefficients {
    pub fn new(
        a: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static,
        q: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static,
        r: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static,
        bounds: CoefficientBounds,
    ) -> Self {
        Self {
            a: Arc::new(a),
            q: Arc::new(q),
            r: Arc::new(r),
            bounds,
        }
    }

    /// a ≡ 1, q ≡ 0, r ≡ 1.
    pub fn unit() -> Self {
        Self::new(|_| 1.0, |_| 0.0, |_| 1.0, CoefficientBounds::UNIT)
    }
}

impl fmt::Debug for WeightedCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedCoefficients")
            .field("bounds", &self.bounds)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum ProblemKind {
    Dirichlet,
    /// Zero normal derivative; axis-aligned rectangles and L-shapes only.
    Neumann,
    /// Dirichlet conditions for the weighted operator.
    Weighted(WeightedCoefficients),
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Dirichlet => "dirichlet",
            ProblemKind::Neumann => "neumann",
            ProblemKind::Weighted(_) => "weighted",
        }
    }
}

/// The pencil (A, M) of a discretized eigenproblem A u = λ M u, with M diagonal.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    grid: Grid,
    kind: &'static str,
    matrix: CsrMatrix,
    mass: Vec<f64>,
    shift: f64,
}

impl DiscreteOperator {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    /// Diagonal of M: r(x) at the nodes, or all ones.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Shift σ used to factor A − σM.
    pub fn shift(&self) -> f64 {
        self.shift
    }
}

/// Assembles the 5-point operator on `grid` for the given problem.
///
/// Dirichlet rows drop exterior neighbours (u = 0 there). Neumann rows treat a
/// missing neighbour as a mirror image of the node, so that face carries no
/// flux. The weighted operator uses the face average (a_i + a_j)/2 between
/// interior nodes and a_i on faces towards the boundary.
pub fn assemble(grid: &Grid, kind: &ProblemKind) -> Result<DiscreteOperator> {
    let n = grid.len();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    let mut mass = vec![1.0; n];
    let mut shift = 0.0;
    match kind {
        ProblemKind::Dirichlet => {
            for node in 0..n {
                let mut row = vec![(node, 4.0 * inv_h2)];
                for dir in 0..4 {
                    if let Some(m) = grid.neighbor(node, dir) {
                        row.push((m, -inv_h2));
                    }
                }
                rows.push(row);
            }
        }
        ProblemKind::Neumann => {
            if !grid.domain().is_rectilinear() || grid.lattice() != Lattice::CellCentered {
                return Err(Error::Unsupported {
                    operation: "Neumann operator",
                    detail: format!(
                        "needs a cell-centred grid on an axis-aligned rectangle or L-shape, got {}",
                        grid.domain().name()
                    ),
                });
            }
            for node in 0..n {
                let mut row = Vec::with_capacity(5);
                let mut faces = 0.0;
                for dir in 0..4 {
                    if let Some(m) = grid.neighbor(node, dir) {
                        row.push((m, -inv_h2));
                        faces += 1.0;
                    }
                }
                row.push((node, faces * inv_h2));
                rows.push(row);
            }
            // below μ₀ = 0 by one unit of the domain's own scale
            shift = -1.0 / grid.domain().volume()?;
        }
        ProblemKind::Weighted(c) => {
            c.bounds.validate()?;
            let b = c.bounds;
            let tol = 1e-12;
            let mut a = Vec::with_capacity(n);
            for node in 0..n {
                let x = grid.point(node);
                let (av, qv, rv) = ((c.a)(x), (c.q)(x), (c.r)(x));
                if !(av >= b.a_min * (1.0 - tol) && av <= b.a_max * (1.0 + tol)) {
                    return Err(Error::CoefficientBounds(format!(
                        "a({x:?}) = {av} outside [{}, {}]",
                        b.a_min, b.a_max
                    )));
                }
                if !(qv >= 0.0 && qv.is_finite()) {
                    return Err(Error::CoefficientBounds(format!("q({x:?}) = {qv} is negative")));
                }
                if !(rv >= b.r_min * (1.0 - tol) && rv <= b.r_max * (1.0 + tol)) {
                    return Err(Error::CoefficientBounds(format!(
                        "r({x:?}) = {rv} outside [{}, {}]",
                        b.r_min, b.r_max
                    )));
                }
                a.push(av);
                mass[node] = rv;
                rows.push(vec![(node, qv)]);
            }
            for node in 0..n {
                let mut faces = 0.0;
                for dir in 0..4 {
                    match grid.neighbor(node, dir) {
                        Some(m) => {
                            let face = 0.5 * (a[node] + a[m]);
                            rows[node].push((m, -face * inv_h2));
                            faces += face;
                        }
                        None => faces += a[node],
                    }
                }
                // q + Σ a_face / h², summed in the same order as the Dirichlet diagonal
                let diag = faces * inv_h2;
                rows[node][0].1 += diag;
            }
        }
    }
    Ok(DiscreteOperator {
        grid: grid.clone(),
        kind: kind.name(),
        matrix: CsrMatrix::from_rows(rows),
        mass,
        shift,
    })
}
