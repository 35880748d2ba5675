//! Numerical replay of the trial-function argument behind the lower bound on
//! Σ_{k=2}^{n} λ₁/(λ_k − λ₁).
//!
//! Given sampled eigenfunctions u₁..u_{n+1} the replay fixes the origin so
//! that the g-weighted first moments of u₁² vanish, rotates coordinates by a
//! QR factorization so that the trial functions φ_k = g(|x|)x_k/|x| are
//! orthogonal to u₁..u_k against u₁, and then evaluates each inequality of
//! the argument by quadrature on the samples.

mod functions;
mod samples;

pub use functions::{check_w_bound, ProofFunctions};
pub use samples::ModeSamples;

use crate::eigensolver::{
    extrapolate_with, CoefficientBounds, EigenReport, ProblemKind, SolverOptions, WeightedCoefficients,
};
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Shape};
use crate::inequalities::{elliptic_bound, gap_sum_first_n, normalized_gap_sum, weighted_gap_sum};
use crate::linalg::{householder_qr, Mat};
use serde::Serialize;

/// Relative residual required of the centring moments.
pub const CENTER_TOLERANCE: f64 = 1e-9;
/// Relative residual required of each rotated orthogonality condition.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;
const CENTER_MAX_ITERATIONS: usize = 200;
const W_BOUND_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub seed: Vec<f64>,
    pub point: Vec<f64>,
    /// ‖F(y)‖ / Σ g u₁² with F the g-weighted moment vector.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityResidual {
    /// Rotated coordinate, 1-based.
    pub i: usize,
    /// Eigenfunction index j of u_{j+1}, 0-based.
    pub j: usize,
    /// |∫ g x_i/|x| u₁ u_{j+1}| / ∫ g |u₁ u_{j+1}|.
    pub residual: f64,
}

/// (λ_{k+1} − λ₁)∫rφ_k²u₁² ≤ ∫a|∇φ_k|²u₁² with |∇φ_k|² from the radial
/// gradient identity.
#[derive(Debug, Clone, Serialize)]
pub struct GapCheck {
    pub k: usize,
    pub gap: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs / ∫rφ_k²u₁², the trial Rayleigh quotient bounding the gap.
    pub trial_quotient: f64,
    pub holds: bool,
}

/// One displayed inequality of the summation argument, `lhs ≤ rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofReplay {
    pub shape: String,
    pub n: usize,
    pub h: f64,
    pub nodes: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Relative error allowance of the sampled eigenpairs; comparisons accept
    /// a relative excess of 5 × tolerance.
    pub tolerance: f64,
    /// max of w′(t)² − (w(t)/t)² over 1000 samples of (0, 3].
    pub w_bound_violation: f64,
    pub center: CenterReport,
    /// P with p_ij = ∫ x_i g/|x| u₁ u_{j+1}, in the unrotated frame.
    pub moment_matrix: Vec<Vec<f64>>,
    /// U with UP upper triangular; rows are the new basis vectors.
    pub rotation: Vec<Vec<f64>>,
    /// ‖UᵀU − I‖_max.
    pub rotation_defect: f64,
    pub rank_deficient: bool,
    pub orthogonality: Vec<OrthogonalityResidual>,
    pub max_orthogonality: f64,
    pub gaps: Vec<GapCheck>,
    /// ∫B(γ|x|)u₁² / ∫w(γ|x|)²u₁².
    pub quotient: f64,
    pub quotient_bound: f64,
    pub quotient_holds: bool,
    pub chain: Vec<ChainStep>,
    /// Σ_{k=2}^{n} λ₁/(λ_k − λ₁) of the reported spectrum.
    pub final_lhs: f64,
    pub final_rhs: f64,
    pub final_margin: f64,
    pub final_holds: bool,
    /// |final_lhs − lhs of the inequality report| on the same spectrum.
    pub report_difference: f64,
    pub all_hold: bool,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// vol·Σ r g(|x−y|) (x−y)/|x−y| u₁², and vol·Σ r g u₁² for scale.
fn moments(s: &ModeSamples, pf: &ProofFunctions, y: &[f64]) -> (Vec<f64>, f64) {
    let n = s.dim;
    let mut f = vec![0.0; n];
    let mut scale = 0.0;
    let mut z = vec![0.0; n];
    for i in 0..s.len() {
        let x = s.point(i);
        for d in 0..n {
            z[d] = x[d] - y[d];
        }
        let (g, g_over_rho, _) = pf.g_parts(norm(&z));
        let u = s.modes[0][i];
        let m = s.r(i) * u * u;
        for d in 0..n {
            f[d] += z[d] * g_over_rho * m;
        }
        scale += g * m;
    }
    for v in &mut f {
        *v *= s.cell_volume;
    }
    (f, scale * s.cell_volume)
}

/// Origin y with vanishing g-weighted moments of r u₁², by damped Newton with
/// a finite-difference Jacobian started from the r u₁²-weighted centroid.
pub fn find_center(s: &ModeSamples, pf: &ProofFunctions) -> Result<CenterReport> {
    let n = s.dim;
    let mut seed = vec![0.0; n];
    let mut mass = 0.0;
    for i in 0..s.len() {
        let u = s.modes[0][i];
        let m = s.r(i) * u * u;
        for d in 0..n {
            seed[d] += s.point(i)[d] * m;
        }
        mass += m;
    }
    for v in &mut seed {
        *v /= mass;
    }
    let mut y = seed.clone();
    let (mut f, mut scale) = moments(s, pf, &y);
    let mut res = norm(&f);
    let step = 1e-6 * s.h.max(1e-300) * 64.0;
    let mut history = Vec::new();
    for it in 0..=CENTER_MAX_ITERATIONS {
        if res <= CENTER_TOLERANCE * scale {
            return Ok(CenterReport {
                seed,
                point: y,
                residual: res / scale,
                iterations: it,
            });
        }
        history.push(res / scale);
        if it == CENTER_MAX_ITERATIONS {
            break;
        }
        // columns ∂F/∂y_d by central differences
        let mut jac = vec![vec![0.0; n]; n];
        for d in 0..n {
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[d] += step;
            ym[d] -= step;
            let (fp, _) = moments(s, pf, &yp);
            let (fm, _) = moments(s, pf, &ym);
            for r in 0..n {
                jac[r][d] = (fp[r] - fm[r]) / (2.0 * step);
            }
        }
        let delta = solve_dense(jac, f.iter().map(|v| -v).collect())?;
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = y.iter().zip(&delta).map(|(a, b)| a + t * b).collect();
            let (ft, st) = moments(s, pf, &trial);
            let rt = norm(&ft);
            if rt < res || t < 1e-6 {
                y = trial;
                f = ft;
                scale = st;
                res = rt;
                break;
            }
            t *= 0.5;
        }
    }
    Err(Error::NoConvergence {
        what: "centring moments",
        iterations: CENTER_MAX_ITERATIONS,
        residuals: history.split_off(history.len().saturating_sub(5)),
    })
}

/// Gaussian elimination with partial pivoting for the small Newton systems.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .expect("non-empty");
        if a[p][c] == 0.0 || !a[p][c].is_finite() {
            return Err(Error::Factorization("singular centring Jacobian".into()));
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Ok(x)
}

/// Coordinates relative to the center, rotated by `u` when given.
fn frame(s: &ModeSamples, center: &[f64], u: Option<&Mat>) -> Vec<f64> {
    let n = s.dim;
    let mut out = Vec::with_capacity(s.points.len());
    let mut z = vec![0.0; n];
    for i in 0..s.len() {
        let x = s.point(i);
        for d in 0..n {
            z[d] = x[d] - center[d];
        }
        match u {
            Some(u) => out.extend((0..n).map(|r| (0..n).map(|c| u[(r, c)] * z[c]).sum::<f64>())),
            None => out.extend_from_slice(&z),
        }
    }
    out
}

/// p_ij = vol·Σ r z_i g/|z| u₁ u_{j+1} for coordinates `z`.
fn moment_matrix(s: &ModeSamples, pf: &ProofFunctions, z: &[f64]) -> Mat {
    let n = s.dim;
    let mut p = vec![vec![0.0; n + 1]; n];
    for i in 0..s.len() {
        let zi = &z[i * n..(i + 1) * n];
        let (_, g_over_rho, _) = pf.g_parts(norm(zi));
        let u1 = s.modes[0][i];
        let r = s.r(i);
        for j in 0..=n {
            let prod = r * u1 * s.modes[j][i];
            for d in 0..n {
                p[d][j] += zi[d] * g_over_rho * prod;
            }
        }
    }
    let rows: Vec<Vec<f64>> = p
        .into_iter()
        .map(|row| row[1..].iter().map(|v| v * s.cell_volume).collect())
        .collect();
    Mat::from_rows(&rows)
}

/// U = Qᵀ for P = QR, so that UP = R is upper triangular. Returns U, and
/// whether P is numerically rank deficient.
pub fn qr_rotate(s: &ModeSamples, pf: &ProofFunctions, center: &[f64]) -> Result<(Mat, Mat, bool)> {
    let z = frame(s, center, None);
    let p = moment_matrix(s, pf, &z);
    let (q, r) = householder_qr(&p);
    let scale = (0..s.dim)
        .flat_map(|i| (0..s.dim).map(move |j| (i, j)))
        .map(|(i, j)| p[(i, j)].abs())
        .fold(0.0, f64::max);
    let deficient = (0..s.dim).any(|i| r[(i, i)].abs() <= 1e-10 * scale);
    Ok((q.transpose(), p, deficient))
}

/// Residuals of ∫ g x_i/|x| u₁ u_{j+1} = 0 for j = 0..i−1, recomputed in the
/// rotated frame.
fn orthogonality(s: &ModeSamples, pf: &ProofFunctions, z: &[f64]) -> Vec<OrthogonalityResidual> {
    let n = s.dim;
    let mut value = vec![vec![0.0; n]; n];
    let mut scale = vec![0.0; n];
    for i in 0..s.len() {
        let zi = &z[i * n..(i + 1) * n];
        let (g, g_over_rho, _) = pf.g_parts(norm(zi));
        let u1 = s.modes[0][i];
        let r = s.r(i);
        for j in 0..n {
            let prod = r * u1 * s.modes[j][i];
            scale[j] += g * prod.abs();
            for d in j..n {
                value[d][j] += zi[d] * g_over_rho * prod;
            }
        }
    }
    let mut out = Vec::new();
    for d in 0..n {
        for j in 0..=d {
            out.push(OrthogonalityResidual {
                i: d + 1,
                j,
                residual: value[d][j].abs() / scale[j],
            });
        }
    }
    out
}

/// Radial integrals over the rotated samples needed by the gap checks and
/// the summation chain, all against u₁² (and r or a where the weighted
/// problem puts them).
struct Integrals {
    /// ∫ r φ_k² u₁²
    phi2_r: Vec<f64>,
    /// ∫ a |∇φ_k|² u₁²
    grad2_a: Vec<f64>,
    /// ∫ |∇φ_k|² u₁² and ∫ φ_k² u₁²
    grad2: Vec<f64>,
    phi2: Vec<f64>,
    /// ∫ (g′² − g²/ρ²) x_k²/ρ² u₁²
    radial_excess: Vec<f64>,
    /// ∫ g² u₁², ∫ g²/ρ² u₁², ∫ g′² u₁²
    g2: f64,
    g_over_rho2: f64,
    gp2: f64,
    /// ∫ B(γρ) u₁² and ∫ w(γρ)² u₁²
    b: f64,
    w2: f64,
}

fn integrals(s: &ModeSamples, pf: &ProofFunctions, z: &[f64]) -> Integrals {
    let n = s.dim;
    let mut it = Integrals {
        phi2_r: vec![0.0; n],
        grad2_a: vec![0.0; n],
        grad2: vec![0.0; n],
        phi2: vec![0.0; n],
        radial_excess: vec![0.0; n],
        g2: 0.0,
        g_over_rho2: 0.0,
        gp2: 0.0,
        b: 0.0,
        w2: 0.0,
    };
    let tiny = 1e-12 * s.h;
    for i in 0..s.len() {
        let zi = &z[i * n..(i + 1) * n];
        let rho = norm(zi);
        let (g, gr, gp) = pf.g_parts(rho);
        let u2 = s.modes[0][i] * s.modes[0][i];
        let (r, a) = (s.r(i), s.a(i));
        for k in 0..n {
            // at the origin φ_k is linear with slope g′(0) in every direction
            let c2 = if rho > tiny { zi[k] * zi[k] / (rho * rho) } else { 1.0 };
            let phi2 = g * g * c2;
            let grad2 = (gp * gp - gr * gr) * c2 + gr * gr;
            it.phi2_r[k] += r * phi2 * u2;
            it.grad2_a[k] += a * grad2 * u2;
            it.phi2[k] += phi2 * u2;
            it.grad2[k] += grad2 * u2;
            it.radial_excess[k] += (gp * gp - gr * gr) * c2 * u2;
        }
        it.g2 += g * g * u2;
        it.g_over_rho2 += gr * gr * u2;
        it.gp2 += gp * gp * u2;
        let t = pf.gamma * rho;
        let w = pf.w(t);
        it.b += pf.b(t) * u2;
        it.w2 += w * w * u2;
    }
    let v = s.cell_volume;
    for list in [
        &mut it.phi2_r,
        &mut it.grad2_a,
        &mut it.grad2,
        &mut it.phi2,
        &mut it.radial_excess,
    ] {
        for x in list.iter_mut() {
            *x *= v;
        }
    }
    it.g2 *= v;
    it.g_over_rho2 *= v;
    it.gp2 *= v;
    it.b *= v;
    it.w2 *= v;
    it
}

fn within(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + 5.0 * tol * rhs.abs().max(lhs.abs())
}

/// What the replay compares against at the end: the spectrum the inequality
/// report is computed from, and the coefficient bounds for the weighted
/// problem.
pub struct ReplayTarget<'a> {
    pub report: &'a EigenReport,
    pub bounds: Option<CoefficientBounds>,
}

/// Runs every step of the argument on the samples. `tolerance` is the
/// relative error allowance of the sampled eigenpairs.
pub fn replay(s: &ModeSamples, target: &ReplayTarget<'_>, tolerance: f64) -> Result<ProofReplay> {
    let n = s.dim;
    if s.modes.len() < n + 1 || s.eigenvalues.len() < n + 1 {
        return Err(Error::InsufficientEigenvalues {
            need: n + 1,
            have: s.modes.len().min(s.eigenvalues.len()),
        });
    }
    let lambda = &s.eigenvalues;
    let pf = match &target.bounds {
        Some(b) => ProofFunctions::weighted(n, lambda[0], b)?,
        None => ProofFunctions::new(n, lambda[0])?,
    };
    // κ = A/c turns the weighted gap bound into the unweighted form
    let kappa = target.bounds.map_or(1.0, |b| b.a_max / b.r_min);
    let w_bound_violation = check_w_bound(&pf, W_BOUND_SAMPLES)?;
    let center = find_center(s, &pf)?;
    let (u, p, rank_deficient) = qr_rotate(s, &pf, &center.point)?;
    let rotation_defect = u.orthogonality_defect();
    let z = frame(s, &center.point, Some(&u));
    let orth = orthogonality(s, &pf, &z);
    let max_orthogonality = orth.iter().map(|o| o.residual).fold(0.0, f64::max);
    let it = integrals(s, &pf, &z);

    let mut gaps = Vec::with_capacity(n);
    let mut gap = Vec::with_capacity(n);
    for k in 0..n {
        let gk = lambda[k + 1] - lambda[0];
        if !(gk > 0.0) {
            return Err(Error::DegenerateSpectrum(format!(
                "λ_{} − λ₁ = {gk} is not positive",
                k + 2
            )));
        }
        if !(it.phi2_r[k] > 0.0) {
            return Err(Error::DegenerateSpectrum(format!("trial function {} vanishes", k + 1)));
        }
        let lhs = gk * it.phi2_r[k];
        let rhs = it.grad2_a[k];
        gaps.push(GapCheck {
            k: k + 1,
            gap: gk,
            lhs,
            rhs,
            trial_quotient: rhs / it.phi2_r[k],
            holds: within(lhs, rhs, tolerance),
        });
        gap.push(gk);
    }

    let quotient = it.b / it.w2;
    let quotient_bound = pf.beta * pf.beta - pf.alpha * pf.alpha;
    let quotient_holds = within(quotient, quotient_bound, tolerance);

    let mut chain = Vec::new();
    let inv: Vec<f64> = gap.iter().map(|g| kappa / g).collect();
    // per-k bounds divided by the gaps and summed
    let summed: f64 = (0..n).map(|k| inv[k] * it.grad2[k]).sum();
    chain.push(ChainStep {
        name: "summed_gap_bounds".into(),
        lhs: it.g2,
        rhs: summed,
        holds: within(it.g2, summed, tolerance),
    });
    let cross: f64 = (0..n - 1).map(|k| (inv[k] - inv[n - 1]) * it.radial_excess[k]).sum();
    chain.push(ChainStep {
        name: "ordered_gap_cross_term".into(),
        lhs: cross,
        rhs: 0.0,
        holds: cross <= 1e-12 * it.g2 * inv[0],
    });
    let split = inv[n - 1] * it.gp2 + (0..n - 1).map(|k| inv[k]).sum::<f64>() * it.g_over_rho2;
    chain.push(ChainStep {
        name: "radial_split".into(),
        lhs: it.g2,
        rhs: split,
        holds: within(it.g2, split, tolerance),
    });
    let mean_inv = (0..n - 1).map(|k| inv[k]).sum::<f64>() / (n as f64 - 1.0);
    let averaged = mean_inv * (it.gp2 + (n as f64 - 1.0) * it.g_over_rho2);
    chain.push(ChainStep {
        name: "averaged_gaps".into(),
        lhs: split,
        rhs: averaged,
        holds: within(split, averaged, 1e-12),
    });
    let mean_plain = mean_inv / kappa;
    let ratio = it.g2 / (kappa * (it.gp2 + (n as f64 - 1.0) * it.g_over_rho2));
    chain.push(ChainStep {
        name: "mean_reciprocal_gap".into(),
        lhs: ratio,
        rhs: mean_plain,
        holds: within(ratio, mean_plain, tolerance),
    });
    let scaled = it.w2 / (kappa * pf.gamma * pf.gamma * it.b);
    let floor = 1.0 / (kappa * pf.gamma * pf.gamma * quotient_bound);
    chain.push(ChainStep {
        name: "quotient_lower_bound".into(),
        lhs: floor,
        rhs: scaled,
        holds: within(floor, scaled, tolerance),
    });

    let report = target.report;
    let values = &report.eigenvalues;
    if values.len() < n {
        return Err(Error::InsufficientEigenvalues {
            need: n,
            have: values.len(),
        });
    }
    let (final_lhs, _) = normalized_gap_sum(values, n);
    let (final_rhs, ineq) = match &target.bounds {
        Some(b) => (
            elliptic_bound(n, b.a_min, b.a_max, b.r_min, b.r_max)?,
            weighted_gap_sum(report, b)?,
        ),
        None => (elliptic_bound(n, 1.0, 1.0, 1.0, 1.0)?, gap_sum_first_n(report)?),
    };
    let final_margin = (final_lhs - final_rhs) / final_rhs;
    let final_holds = final_margin >= -ineq.tolerance;
    let report_difference = (final_lhs - ineq.lhs).abs();

    let all_hold = w_bound_violation <= 1e-10
        && center.residual <= CENTER_TOLERANCE
        && rotation_defect <= 1e-12
        && max_orthogonality <= ORTHOGONALITY_TOLERANCE
        && gaps.iter().all(|g| g.holds)
        && quotient_holds
        && chain.iter().all(|c| c.holds)
        && final_holds
        && report_difference <= 1e-12 * final_lhs.abs();
    Ok(ProofReplay {
        shape: report.domain.to_string(),
        n,
        h: s.h,
        nodes: s.len(),
        alpha: pf.alpha,
        beta: pf.beta,
        gamma: pf.gamma,
        tolerance,
        w_bound_violation,
        center,
        moment_matrix: p.to_rows(),
        rotation: u.to_rows(),
        rotation_defect,
        rank_deficient,
        orthogonality: orth,
        max_orthogonality,
        gaps,
        quotient,
        quotient_bound,
        quotient_holds,
        chain,
        final_lhs,
        final_rhs,
        final_margin,
        final_holds,
        report_difference,
        all_hold,
    })
}

/// Relative error allowance of a grid spectrum: the largest propagated
/// error of the gaps λ_{k+1} − λ₁, k = 1..n, plus the solver tolerance.
fn grid_tolerance(report: &EigenReport, n: usize, solver: f64) -> f64 {
    let v = &report.eigenvalues;
    let e = &report.error_estimates;
    (1..=n)
        .map(|k| (e[0] + e[k]) / (v[k] - v[0]).abs().max(1e-300))
        .fold(0.0, f64::max)
        + solver
}

/// Solves the Dirichlet problem on the spacings `h_list` and replays the
/// argument on the finest grid. Balls of dimension three or more are
/// replayed on their closed-form modes sampled on a lattice instead.
pub fn replay_gap_sum_bound(d: &DomainSpec, h_list: &[f64]) -> Result<ProofReplay> {
    d.validate()?;
    let n = d.dimension();
    if n != 2 {
        let Shape::Ball { radius, .. } = d.shape else {
            unreachable!("only balls have dimension other than 2")
        };
        let h = h_list.last().copied().unwrap_or(radius / 24.0);
        return replay_ball_lattice(n, radius, h);
    }
    let opts = SolverOptions::default();
    let (report, finest) = extrapolate_with(d, &ProblemKind::Dirichlet, n + 1, h_list, &opts)?;
    let samples = ModeSamples::from_grid(&finest, None)?;
    let tol = grid_tolerance(&report, n, opts.tol);
    replay(
        &samples,
        &ReplayTarget {
            report: &report,
            bounds: None,
        },
        tol,
    )
}

/// The replay on closed-form ball modes sampled on hZⁿ; the allowance is the
/// lattice quadrature error of the mode normalizations.
pub fn replay_ball_lattice(n: usize, radius: f64, h: f64) -> Result<ProofReplay> {
    let (samples, quadrature) = ModeSamples::ball_lattice(n, radius, h)?;
    let d = DomainSpec::ball(n, radius);
    let report = EigenReport::analytic(&d, "dirichlet", samples.eigenvalues.clone());
    replay(
        &samples,
        &ReplayTarget {
            report: &report,
            bounds: None,
        },
        quadrature.max(1e-12),
    )
}

/// The replay for −div(a∇u) + qu = λru on the finest of `h_list`, with the
/// centring and orthogonality conditions weighted by r.
pub fn replay_weighted(d: &DomainSpec, coefficients: &WeightedCoefficients, h_list: &[f64]) -> Result<ProofReplay> {
    d.validate()?;
    let n = d.dimension();
    let opts = SolverOptions::default();
    let kind = ProblemKind::Weighted(coefficients.clone());
    let (report, finest) = extrapolate_with(d, &kind, n + 1, h_list, &opts)?;
    let samples = ModeSamples::from_grid(&finest, Some(coefficients))?;
    let tol = grid_tolerance(&report, n, opts.tol);
    replay(
        &samples,
        &ReplayTarget {
            report: &report,
            bounds: Some(coefficients.bounds),
        },
        tol,
    )
}
