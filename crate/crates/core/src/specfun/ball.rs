//! Dirichlet and Neumann modes of the n-ball expressed through Bessel zeros.

use super::bessel::j_scaled;
use super::gamma::gamma;
use super::zeros::{bessel_zero, cross_zero};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const MAX_BALL_DIMENSION: usize = 50;

/// First and second Dirichlet eigenvalues of the ball of radius `radius` in R^n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallModes {
    pub dimension: usize,
    pub radius: f64,
    /// (alpha / r)²
    pub lambda1: f64,
    /// (beta / r)², with multiplicity n
    pub lambda2: f64,
    /// j_{n/2-1,1}
    pub alpha: f64,
    /// j_{n/2,1}
    pub beta: f64,
}

fn check_ball(n: usize, r: f64) -> Result<()> {
    if !(2..=MAX_BALL_DIMENSION).contains(&n) {
        return Err(Error::Range {
            what: "dimension",
            value: n as f64,
            range: "[2, 50]",
        });
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Range {
            what: "radius",
            value: r,
            range: "(0, inf)",
        });
    }
    Ok(())
}

pub fn ball_modes(n: usize, r: f64) -> Result<BallModes> {
    check_ball(n, r)?;
    let half = 0.5 * n as f64;
    let alpha = bessel_zero(half - 1.0, 1)?;
    let beta = bessel_zero(half, 1)?;
    Ok(BallModes {
        dimension: n,
        radius: r,
        lambda1: (alpha / r).powi(2),
        lambda2: (beta / r).powi(2),
        alpha,
        beta,
    })
}

/// |B^n|, the volume of the unit ball.
pub fn unit_ball_volume(n: usize) -> f64 {
    let half = 0.5 * n as f64;
    PI.powf(half) / gamma(half + 1.0)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn check_point(n: usize, r: f64, x: &[f64]) -> Result<f64> {
    if x.len() != n {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, expected {n}",
            x.len()
        )));
    }
    let rho = norm(x);
    if rho > r * (1.0 + 1e-14) {
        return Err(Error::OutsideDomain {
            point: x.to_vec(),
            detail: format!("|x| = {rho} exceeds radius {r}"),
        });
    }
    Ok(rho)
}

/// First Dirichlet eigenfunction |x|^{1-n/2} J_{n/2-1}(alpha |x| / r), normalized so
/// that the constant in front is 1.
pub fn ball_eigenfunction_u1(n: usize, r: f64, x: &[f64]) -> Result<f64> {
    check_ball(n, r)?;
    let rho = check_point(n, r, x)?;
    let modes = ball_modes(n, r)?;
    let nu = 0.5 * n as f64 - 1.0;
    let k = modes.alpha / r;
    // |x|^{-ν} J_ν(k|x|) = (k/2)^ν · J_ν(z)/(z/2)^ν
    Ok((0.5 * k).powf(nu) * j_scaled(nu, k * rho))
}

/// The i-th basis function (i = 1..=n) of the second Dirichlet eigenspace,
/// |x|^{1-n/2} J_{n/2}(beta |x| / r) x_i / |x|.
pub fn ball_eigenfunction_xi(n: usize, r: f64, i: usize, x: &[f64]) -> Result<f64> {
    check_ball(n, r)?;
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("eigenspace index {i} outside 1..={n}")));
    }
    let rho = check_point(n, r, x)?;
    let modes = ball_modes(n, r)?;
    let nu = 0.5 * n as f64;
    let k = modes.beta / r;
    // |x|^{1-ν} J_ν(k|x|) / |x| · x_i = (k/2)^ν J_ν(z)/(z/2)^ν · x_i
    Ok((0.5 * k).powf(nu) * j_scaled(nu, k * rho) * x[i - 1])
}

/// dim of degree-l harmonic polynomials on R^n.
fn harmonic_multiplicity(n: usize, l: usize) -> usize {
    fn binom(a: i64, b: i64) -> i64 {
        if b < 0 || a < b {
            return 0;
        }
        let mut r = 1i64;
        for i in 0..b {
            r = r * (a - i) / (i + 1);
        }
        r
    }
    let (n, l) = (n as i64, l as i64);
    (binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1)) as usize
}

/// Collects the `count` smallest squared zeros over families indexed by the
/// angular degree l. Zeros increase in k within a family and the first zero
/// increases with l, so the scan stops at the first family that cannot contribute.
fn collect_modes(n: usize, count: usize, mut zero: impl FnMut(usize, usize) -> Result<f64>) -> Result<Vec<f64>> {
    let mut values: Vec<f64> = Vec::new();
    if count == 0 {
        return Ok(values);
    }
    let threshold = |values: &Vec<f64>| {
        if values.len() >= count {
            values[count - 1]
        } else {
            f64::INFINITY
        }
    };
    for l in 0.. {
        let first = zero(l, 1)?;
        if first * first >= threshold(&values) {
            break;
        }
        let m = harmonic_multiplicity(n, l);
        for k in 1..=count {
            let z = if k == 1 { first } else { zero(l, k)? };
            let v = z * z;
            if v >= threshold(&values) {
                break;
            }
            values.extend(std::iter::repeat_n(v, m));
            values.sort_by(f64::total_cmp);
            values.truncate(count);
        }
    }
    Ok(values)
}

/// The `count` smallest Dirichlet eigenvalues of the ball, with multiplicity.
pub fn ball_dirichlet_eigenvalues(n: usize, r: f64, count: usize) -> Result<Vec<f64>> {
    check_ball(n, r)?;
    let half = 0.5 * n as f64;
    let unit = collect_modes(n, count, |l, k| bessel_zero(l as f64 + half - 1.0, k))?;
    Ok(unit.into_iter().map(|v| v / (r * r)).collect())
}

/// The `count` smallest Neumann eigenvalues of the ball (starting with μ₀ = 0).
///
/// Radial profiles are |x|^{1-n/2} J_ν(√μ |x|) with ν = l + n/2 − 1, whose
/// derivative vanishes at the boundary when x J'_ν(x) + (1 − n/2) J_ν(x) = 0.
pub fn ball_neumann_eigenvalues(n: usize, r: f64, count: usize) -> Result<Vec<f64>> {
    check_ball(n, r)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let half = 0.5 * n as f64;
    let c = 1.0 - half;
    let positive = collect_modes(n, count - 1, |l, k| {
        let nu = l as f64 + half - 1.0;
        // μ ≥ l(l+n−2) on the unit ball
        let start = if l == 0 {
            0.1
        } else {
            0.9 * ((l * (l + n - 2)) as f64).sqrt()
        };
        cross_zero(nu, c, k, start)
    })?;
    let mut out = Vec::with_capacity(count);
    out.push(0.0);
    out.extend(positive.into_iter().map(|v| v / (r * r)));
    Ok(out)
}

/// First nonzero Neumann eigenvalue of the ball of radius r in R^n.
pub fn ball_neumann_mu1(n: usize, r: f64) -> Result<f64> {
    Ok(ball_neumann_eigenvalues(n, r, 2)?[1])
}
