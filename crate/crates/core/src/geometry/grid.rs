use super::domain::{DomainSpec, Shape};
use crate::error::{Error, Result};

/// Where the lattice points sit relative to the bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    /// Points on the box corners and edges; the box boundary is never interior.
    Vertex,
    /// Points at the centres of the h-cells tiling the box.
    CellCentered,
}

/// Lattice directions: +x, −x, +y, −y.
pub const DIRECTIONS: [[isize; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

const ABSENT: usize = usize::MAX;

/// Uniform lattice over a planar domain with the interior nodes numbered
/// 0..N. Nodes are numbered along the shorter box axis first, which keeps the
/// band of the 5-point operator narrow.
#[derive(Debug, Clone)]
pub struct Grid {
    domain: DomainSpec,
    h: f64,
    lattice: Lattice,
    origin: [f64; 2],
    extent: [usize; 2],
    /// lattice slot -> interior index (ABSENT outside)
    index: Vec<usize>,
    /// interior index -> lattice coordinates
    nodes: Vec<[usize; 2]>,
}

fn check_spacing(d: &DomainSpec, h: f64) -> Result<()> {
    d.validate()?;
    if d.dimension() != 2 {
        return Err(Error::Unsupported {
            operation: "grid discretization",
            detail: format!(
                "only planar domains can be discretized, got dimension {}",
                d.dimension()
            ),
        });
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Range {
            what: "grid spacing",
            value: h,
            range: "(0, inf)",
        });
    }
    Ok(())
}

/// Vertex lattice centred on the domain's bounding box. Refuses spacings
/// that are not below a quarter of the inradius.
pub fn build_grid(d: &DomainSpec, h: f64) -> Result<Grid> {
    check_spacing(d, h)?;
    let limit = d.inradius()? / 4.0;
    if h >= limit {
        return Err(Error::TooCoarse { h, limit });
    }
    Grid::vertex(d, h)
}

/// [`build_grid`] without the resolution check, for coarse textbook cases.
pub fn build_grid_unchecked(d: &DomainSpec, h: f64) -> Result<Grid> {
    check_spacing(d, h)?;
    Grid::vertex(d, h)
}

/// Cell-centred lattice whose cells tile a rectilinear domain exactly; used
/// by the mirrored-ghost Neumann operator.
pub fn build_cell_grid(d: &DomainSpec, h: f64) -> Result<Grid> {
    check_spacing(d, h)?;
    if !d.is_rectilinear() {
        return Err(Error::Unsupported {
            operation: "cell-centred grid",
            detail: format!("{} is not an axis-aligned rectangle or L-shape", d.name()),
        });
    }
    let limit = d.inradius()? / 4.0;
    if h >= limit {
        return Err(Error::TooCoarse { h, limit });
    }
    let (lo, hi) = d.bounding_box();
    let mut extent = [0; 2];
    for k in 0..2 {
        let cells = (hi[k] - lo[k]) / h;
        // the reentrant corner of an L-shape sits at the box centre
        let need = if matches!(d.shape, Shape::LShape { .. }) {
            0.5 * cells
        } else {
            cells
        };
        if (need - need.round()).abs() > 1e-9 * need.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "spacing {h} does not tile the {} box exactly",
                d.name()
            )));
        }
        extent[k] = cells.round() as usize;
    }
    let origin = [lo[0] + 0.5 * h, lo[1] + 0.5 * h];
    Grid::from_lattice(d, h, Lattice::CellCentered, origin, extent)
}

impl Grid {
    fn vertex(d: &DomainSpec, h: f64) -> Result<Grid> {
        let (lo, hi) = d.bounding_box();
        let mut extent = [0; 2];
        let mut origin = [0.0; 2];
        for k in 0..2 {
            let width = hi[k] - lo[k];
            let steps = (width / h * (1.0 - 1e-12)).ceil() as usize;
            extent[k] = steps + 1;
            let centre = 0.5 * (lo[k] + hi[k]);
            origin[k] = centre - 0.5 * steps as f64 * h;
        }
        Self::from_lattice(d, h, Lattice::Vertex, origin, extent)
    }

    fn from_lattice(d: &DomainSpec, h: f64, lattice: Lattice, origin: [f64; 2], extent: [usize; 2]) -> Result<Grid> {
        let slots = extent[0]
            .checked_mul(extent[1])
            .filter(|&s| s <= 50_000_000)
            .ok_or_else(|| Error::InvalidArgument(format!("grid of {extent:?} points is too large")))?;
        let mut grid = Grid {
            domain: d.clone(),
            h,
            lattice,
            origin,
            extent,
            index: vec![ABSENT; slots],
            nodes: Vec::new(),
        };
        let eps = 1e-12 * h;
        let fast = grid.fast_axis();
        let slow = 1 - fast;
        for s in 0..extent[slow] {
            for f in 0..extent[fast] {
                let mut ij = [0; 2];
                ij[fast] = f;
                ij[slow] = s;
                let p = grid.lattice_point(ij[0] as isize, ij[1] as isize);
                if d.contains_with_clearance(p, eps) {
                    let slot = grid.slot(ij);
                    grid.index[slot] = grid.nodes.len();
                    grid.nodes.push(ij);
                }
            }
        }
        if grid.nodes.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Ok(grid)
    }

    /// Axis along which consecutive interior indices advance.
    pub fn fast_axis(&self) -> usize {
        if self.extent[0] <= self.extent[1] {
            0
        } else {
            1
        }
    }

    fn slot(&self, ij: [usize; 2]) -> usize {
        ij[0] + self.extent[0] * ij[1]
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Number of interior nodes N.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature weight h² of every node.
    pub fn cell_volume(&self) -> f64 {
        self.h * self.h
    }

    /// N·h², the lattice approximation of |Ω|.
    pub fn volume(&self) -> f64 {
        self.len() as f64 * self.cell_volume()
    }

    /// Lattice extents (points along x and y), interior or not.
    pub fn extent(&self) -> [usize; 2] {
        self.extent
    }

    /// Coordinates of lattice point (i, j); indices may fall outside the lattice.
    pub fn lattice_point(&self, i: isize, j: isize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    pub fn lattice_coords(&self, node: usize) -> [usize; 2] {
        self.nodes[node]
    }

    pub fn point(&self, node: usize) -> [f64; 2] {
        let [i, j] = self.nodes[node];
        self.lattice_point(i as isize, j as isize)
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        (0..self.len()).map(|n| self.point(n))
    }

    /// Interior index of lattice point (i, j), if it is interior.
    pub fn index_of(&self, i: isize, j: isize) -> Option<usize> {
        if i < 0 || j < 0 || i as usize >= self.extent[0] || j as usize >= self.extent[1] {
            return None;
        }
        match self.index[self.slot([i as usize, j as usize])] {
            ABSENT => None,
            n => Some(n),
        }
    }

    /// Interior neighbour of `node` in direction `dir` (see [`DIRECTIONS`]).
    pub fn neighbor(&self, node: usize, dir: usize) -> Option<usize> {
        let [i, j] = self.nodes[node];
        let [di, dj] = DIRECTIONS[dir];
        self.index_of(i as isize + di, j as isize + dj)
    }

    /// Coordinates of the lattice neighbour, interior or not.
    pub fn neighbor_point(&self, node: usize, dir: usize) -> [f64; 2] {
        let [i, j] = self.nodes[node];
        let [di, dj] = DIRECTIONS[dir];
        self.lattice_point(i as isize + di, j as isize + dj)
    }

    /// Checks that the index map and the node list are inverse to each other.
    pub fn check_bijection(&self) -> Result<()> {
        for (n, &ij) in self.nodes.iter().enumerate() {
            if self.index[self.slot(ij)] != n {
                return Err(Error::InvalidDomain(format!("node {n} does not map back to itself")));
            }
        }
        let mapped = self.index.iter().filter(|&&v| v != ABSENT).count();
        if mapped != self.nodes.len() {
            return Err(Error::InvalidDomain(format!(
                "index map has {mapped} entries for {} nodes",
                self.nodes.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_square_has_63_squared_nodes() {
        let g = build_grid(&DomainSpec::rectangle(1.0, 1.0), 1.0 / 64.0).unwrap();
        assert_eq!(g.len(), 63 * 63);
        g.check_bijection().unwrap();
        let p = g.point(0);
        assert!((p[0] + 0.5 - 1.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn disk_volume_by_counting() {
        let g = build_grid(&DomainSpec::disk(1.0), 1.0 / 64.0).unwrap();
        assert!((g.volume() - PI).abs() < 0.05 * PI);
        for p in g.points() {
            assert!(p[0] * p[0] + p[1] * p[1] < 1.0);
        }
    }

    #[test]
    fn annulus_hole_is_empty() {
        let g = build_grid(&DomainSpec::annulus(1.0, 2.0), 1.0 / 128.0).unwrap();
        assert!(g.points().all(|p| p[0].hypot(p[1]) > 1.0));
    }

    #[test]
    fn too_coarse_and_unsupported() {
        let d = DomainSpec::rectangle(1.0, 1.0);
        assert!(matches!(build_grid(&d, 0.125), Err(Error::TooCoarse { .. })));
        assert_eq!(build_grid_unchecked(&d, 0.25).unwrap().len(), 9);
        assert!(build_grid(&DomainSpec::ball(3, 1.0), 0.01).is_err());
        assert!(build_cell_grid(&DomainSpec::disk(1.0), 0.01).is_err());
    }

    #[test]
    fn cell_grid_tiles_rectilinear_domains() {
        let g = build_cell_grid(&DomainSpec::rectangle(1.0, 2.0), 1.0 / 16.0).unwrap();
        assert_eq!(g.len(), 16 * 32);
        assert_eq!(g.fast_axis(), 0);
        let l = build_cell_grid(&DomainSpec::lshape(1.0, 1.0), 1.0 / 32.0).unwrap();
        assert!((l.volume() - 0.75).abs() < 1e-12);
        assert!(build_cell_grid(&DomainSpec::rectangle(1.0, 1.0), 0.3 / 4.0).is_err());
    }

    #[test]
    fn neighbours_are_consistent() {
        let g = build_grid(&DomainSpec::lshape(1.0, 1.0), 1.0 / 32.0).unwrap();
        for n in 0..g.len() {
            for dir in 0..4 {
                match g.neighbor(n, dir) {
                    Some(m) => assert_eq!(g.neighbor(m, dir ^ 1), Some(n)),
                    None => assert!(!g.domain().contains(&g.neighbor_point(n, dir))),
                }
            }
        }
    }
}
