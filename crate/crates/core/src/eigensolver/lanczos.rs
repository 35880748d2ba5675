//! Smallest eigenpairs of a symmetric-definite pencil by restarted block
//! Lanczos on the shift-inverted operator.
//!
//! With D = √M the pencil A x = λ M x becomes K y = λ y, K = D⁻¹ A D⁻¹,
//! y = D x. Krylov blocks are generated with (K − σ)⁻¹ = D (A − σM)⁻¹ D,
//! applied through an envelope Cholesky factor, and fully reorthogonalized.
//! Ritz pairs are extracted with K itself, so Ritz values are upper bounds
//! and residuals are measured on the original pencil. Each cycle restarts
//! from the current best Ritz block.

use super::operator::DiscreteOperator;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, EnvelopeCholesky, Mat};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const MAX_EIGENPAIRS: usize = 12;

/// Below this size the pencil is diagonalized densely.
const DENSE_LIMIT: usize = 100;
const BLOCKS_PER_CYCLE: usize = 6;
const MAX_CYCLES: usize = 60;
/// Relative gap below which neighbouring eigenvalues form a cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Required relative residual.
    pub tol: f64,
    /// Seed of the random start block.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 0 }
    }
}

/// Eigenpairs λ₁ ≤ … ≤ λ_k of a discrete operator.
///
/// Eigenvectors are grid functions normalized so that h²Σ r u_i u_j = δ_ij.
/// `residuals[i]` is ‖A u − λ M u‖_{M⁻¹} / (max(|λ|, |σ|)·‖u‖_M).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: String,
    pub h: f64,
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    /// max over i ≠ j of |h²Σ r u_i u_j|
    pub orthogonality: f64,
    /// Index groups of numerically degenerate eigenvalues.
    pub clusters: Vec<Vec<usize>>,
    pub cycles: usize,
    #[serde(skip)]
    pub vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

struct Pencil<'a> {
    op: &'a DiscreteOperator,
    dinv: Vec<f64>,
    d: Vec<f64>,
    factor: EnvelopeCholesky,
    shift: f64,
}

impl Pencil<'_> {
    /// K y
    fn apply(&self, y: &[f64]) -> Vec<f64> {
        let x: Vec<f64> = y.iter().zip(&self.dinv).map(|(v, s)| v * s).collect();
        let mut ax = vec![0.0; x.len()];
        self.op.matrix().mul_vec(&x, &mut ax);
        ax.iter().zip(&self.dinv).map(|(v, s)| v * s).collect()
    }

    /// (K − σ)⁻¹ y
    fn apply_inverse(&self, y: &[f64]) -> Vec<f64> {
        let mut x: Vec<f64> = y.iter().zip(&self.d).map(|(v, s)| v * s).collect();
        self.factor.solve_in_place(&mut x);
        for (v, s) in x.iter_mut().zip(&self.d) {
            *v *= s;
        }
        x
    }
}

fn factor_with_retries(op: &DiscreteOperator) -> Result<(EnvelopeCholesky, f64)> {
    let base = op.shift();
    let scale = op
        .matrix()
        .diagonal()
        .iter()
        .zip(op.mass())
        .map(|(a, m)| a / m)
        .fold(0.0f64, f64::max);
    let mut last = None;
    for attempt in 0..4 {
        let shift = if attempt == 0 {
            base
        } else {
            base - 1e-8 * scale * 100f64.powi(attempt - 1)
        };
        match EnvelopeCholesky::factor(op.matrix(), -shift, op.mass()) {
            Ok(f) => return Ok((f, shift)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Orthogonalizes `v` against `basis` twice; returns the norm left over
/// relative to the input norm.
fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) -> f64 {
    let before = norm(v);
    if before == 0.0 {
        return 0.0;
    }
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, v);
            axpy(-c, q, v);
        }
    }
    norm(v) / before
}

/// Appends the columns of `block` to `basis` as orthonormal vectors,
/// replacing numerically dependent ones with fresh random directions.
fn extend_basis(basis: &mut Vec<Vec<f64>>, block: Vec<Vec<f64>>, rng: &mut ChaCha8Rng) -> usize {
    let n = block.first().map_or(0, Vec::len);
    let mut added = 0;
    for mut v in block {
        if basis.len() >= n {
            break;
        }
        let mut kept = orthogonalize(&mut v, basis);
        let mut tries = 0;
        while kept < 1e-10 && tries < 5 {
            v = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            kept = orthogonalize(&mut v, basis);
            tries += 1;
        }
        if kept < 1e-10 {
            continue;
        }
        let s = 1.0 / norm(&v);
        v.iter_mut().for_each(|x| *x *= s);
        basis.push(v);
        added += 1;
    }
    added
}

fn ritz(pencil: &Pencil, basis: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>, Vec<f64>) {
    let m = basis.len();
    let kq: Vec<Vec<f64>> = basis.iter().map(|q| pencil.apply(q)).collect();
    let mut h = Mat::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = 0.5 * (dot(&basis[i], &kq[j]) + dot(&basis[j], &kq[i]));
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    let (theta, s) = symmetric_eigen(&h);
    let n = basis[0].len();
    let mut vectors = Vec::with_capacity(m);
    let mut residuals = Vec::with_capacity(m);
    for c in 0..m {
        let mut y = vec![0.0; n];
        let mut ky = vec![0.0; n];
        for i in 0..m {
            axpy(s[(i, c)], &basis[i], &mut y);
            axpy(s[(i, c)], &kq[i], &mut ky);
        }
        axpy(-theta[c], &y, &mut ky);
        let scale = theta[c].abs().max(pencil.shift.abs()).max(f64::MIN_POSITIVE);
        residuals.push(norm(&ky) / (scale * norm(&y)));
        vectors.push(y);
    }
    (theta, vectors, residuals)
}

fn dense_solve(pencil: &Pencil) -> (Vec<f64>, Vec<Vec<f64>>, Vec<f64>) {
    let n = pencil.op.dim();
    let identity: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    ritz(pencil, &identity)
}

/// Smallest `k` eigenpairs of `op` with relative residuals below `tol`.
pub fn smallest_eigenpairs(op: &DiscreteOperator, k: usize, tol: f64) -> Result<Spectrum> {
    smallest_eigenpairs_with(
        op,
        k,
        &SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}

pub fn smallest_eigenpairs_with(op: &DiscreteOperator, k: usize, opts: &SolverOptions) -> Result<Spectrum> {
    let n = op.dim();
    if k == 0 || k > MAX_EIGENPAIRS || k > n {
        return Err(Error::Range {
            what: "eigenpair count",
            value: k as f64,
            range: "[1, min(N, 12)]",
        });
    }
    if !(opts.tol >= 1e-12) {
        return Err(Error::Range {
            what: "tolerance",
            value: opts.tol,
            range: "[1e-12, inf)",
        });
    }
    let (factor, shift) = factor_with_retries(op)?;
    let d: Vec<f64> = op.mass().iter().map(|m| m.sqrt()).collect();
    let pencil = Pencil {
        op,
        dinv: d.iter().map(|s| 1.0 / s).collect(),
        d,
        factor,
        shift,
    };

    let ((values, vectors, residuals), cycles) = if n <= DENSE_LIMIT {
        (dense_solve(&pencil), 0)
    } else {
        iterate(&pencil, k, opts)?
    };

    let h = op.grid().h();
    let mut spectrum = Spectrum {
        kind: op.kind().to_string(),
        h,
        eigenvalues: values[..k].to_vec(),
        residuals: residuals[..k].to_vec(),
        orthogonality: 0.0,
        clusters: Vec::new(),
        cycles,
        vectors: vectors[..k]
            .iter()
            .map(|y| y.iter().zip(&pencil.dinv).map(|(v, s)| v * s / h).collect())
            .collect(),
    };
    for u in &mut spectrum.vectors {
        fix_sign(u);
    }
    spectrum.orthogonality = max_off_diagonal(&spectrum.vectors, op.mass(), h);
    spectrum.clusters = clusters(&spectrum.eigenvalues);
    Ok(spectrum)
}

/// Ritz values, vectors and residuals.
type RitzPairs = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>);

fn iterate(pencil: &Pencil, k: usize, opts: &SolverOptions) -> Result<(RitzPairs, usize)> {
    let n = pencil.op.dim();
    let p = (k + 2).min(n);
    let cap = (BLOCKS_PER_CYCLE * p).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            pencil.apply_inverse(&v)
        })
        .collect();
    let mut block = start;
    let mut best: Option<RitzPairs> = None;
    for cycle in 1..=MAX_CYCLES {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap);
        let mut first = basis.len();
        extend_basis(&mut basis, block, &mut rng);
        while basis.len() < cap {
            let next: Vec<Vec<f64>> = basis[first..]
                .iter()
                .take(cap - basis.len())
                .map(|q| pencil.apply_inverse(q))
                .collect();
            first = basis.len();
            if extend_basis(&mut basis, next, &mut rng) == 0 {
                break;
            }
        }
        let (mut theta, mut vectors, mut residuals) = ritz(pencil, &basis);
        let mut done = residuals[..k].iter().all(|&r| r <= opts.tol);
        if !done {
            // Rayleigh-Ritz cannot see rounding noise of high frequency in
            // near-dependent Krylov vectors (it moves θ only quadratically),
            // but one inverse step on the wanted vectors damps it.
            let mut refined = Vec::with_capacity(p);
            let images = vectors[..p].iter().map(|y| pencil.apply_inverse(y)).collect();
            extend_basis(&mut refined, images, &mut rng);
            if refined.len() >= k {
                let (t, v, r) = ritz(pencil, &refined);
                if r[..k].iter().all(|&x| x <= opts.tol) {
                    (theta, vectors, residuals) = (t, v, r);
                    done = true;
                }
            }
        }
        block = vectors[..p.min(vectors.len())].to_vec();
        if done {
            return Ok(((theta, vectors, residuals), cycle));
        }
        best = Some((theta, vectors, residuals));
    }
    let residuals = best.map(|b| b.2[..k].to_vec()).unwrap_or_default();
    Err(Error::NoConvergence {
        what: "block Lanczos",
        iterations: MAX_CYCLES,
        residuals,
    })
}

/// Makes the vector's sum positive, or its largest entry when the sum is negligible.
fn fix_sign(u: &mut [f64]) {
    let sum: f64 = u.iter().sum();
    let abs: f64 = u.iter().map(|v| v.abs()).sum();
    let flip = if sum.abs() > 1e-8 * abs {
        sum < 0.0
    } else {
        let peak = u
            .iter()
            .copied()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        peak < 0.0
    };
    if flip {
        u.iter_mut().for_each(|v| *v = -*v);
    }
}

fn max_off_diagonal(vectors: &[Vec<f64>], mass: &[f64], h: f64) -> f64 {
    let h2 = h * h;
    let mut worst = 0.0f64;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            let s: f64 = vectors[i]
                .iter()
                .zip(&vectors[j])
                .zip(mass)
                .map(|((a, b), r)| a * b * r)
                .sum();
            worst = worst.max((h2 * s).abs());
        }
    }
    worst
}

/// Groups consecutive eigenvalues whose relative gap is below [`CLUSTER_TOLERANCE`].
pub fn clusters(values: &[f64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0];
    for i in 1..values.len() {
        let scale = values[i].abs().max(values[i - 1].abs());
        if (values[i] - values[i - 1]).abs() <= CLUSTER_TOLERANCE * scale {
            current.push(i);
        } else {
            if current.len() > 1 {
                out.push(current);
            }
            current = vec![i];
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}
