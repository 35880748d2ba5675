use super::operator::ProblemKind;
use crate::error::Result;
use crate::geometry::{DomainSpec, Shape};
use crate::specfun::{ball_dirichlet_eigenvalues, ball_neumann_eigenvalues};
use std::f64::consts::PI;

fn rectangle_modes(width: f64, height: f64, k: usize, first: usize) -> Vec<f64> {
    let mut values = Vec::new();
    for m in first..first + k {
        for n in first..first + k {
            let (m, n) = (m as f64, n as f64);
            values.push(PI * PI * (m * m / (width * width) + n * n / (height * height)));
        }
    }
    values.sort_by(f64::total_cmp);
    values.truncate(k);
    values
}

/// π²(m²/w² + n²/h²), m, n ≥ 1, the k smallest with multiplicity.
pub fn rectangle_dirichlet(width: f64, height: f64, k: usize) -> Vec<f64> {
    rectangle_modes(width, height, k, 1)
}

/// π²(m²/w² + n²/h²), m, n ≥ 0, the k smallest with multiplicity (μ₀ = 0 first).
pub fn rectangle_neumann(width: f64, height: f64, k: usize) -> Vec<f64> {
    rectangle_modes(width, height, k, 0)
}

/// Closed-form spectrum of balls and rectangles, `None` for other shapes and
/// for weighted problems.
pub fn analytic_spectrum(d: &DomainSpec, kind: &ProblemKind, k: usize) -> Option<Result<Vec<f64>>> {
    if let Err(e) = d.validate() {
        return Some(Err(e));
    }
    let neumann = match kind {
        ProblemKind::Dirichlet => false,
        ProblemKind::Neumann => true,
        ProblemKind::Weighted(_) => return None,
    };
    match d.shape {
        Shape::Ball { dim, radius } => Some(if neumann {
            ball_neumann_eigenvalues(dim, radius, k)
        } else {
            ball_dirichlet_eigenvalues(dim, radius, k)
        }),
        Shape::Rectangle { width, height } => Some(Ok(if neumann {
            rectangle_neumann(width, height, k)
        } else {
            rectangle_dirichlet(width, height, k)
        })),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let v = rectangle_dirichlet(1.0, 1.0, 4);
        let p2 = PI * PI;
        assert_eq!(v, vec![2.0 * p2, 5.0 * p2, 5.0 * p2, 8.0 * p2]);
        let n = rectangle_neumann(1.0, 2.0, 3);
        assert_eq!(n[0], 0.0);
        assert!((n[1] - p2 / 4.0).abs() < 1e-14);
        assert!((n[2] - p2).abs() < 1e-14);
    }

    #[test]
    fn dispatch() {
        let disk = analytic_spectrum(&DomainSpec::disk(1.0), &ProblemKind::Dirichlet, 3)
            .unwrap()
            .unwrap();
        assert!((disk[0] - 5.783_185_962_946_784).abs() < 1e-10);
        assert!(analytic_spectrum(&DomainSpec::ellipse(1.0, 2.0), &ProblemKind::Dirichlet, 3).is_none());
    }
}
