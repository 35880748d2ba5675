//! Classical eigenvalue isoperimetric inequalities evaluated on computed or
//! closed-form spectra.
//!
//! Every check produces an [`InequalityReport`] whose margin is positive when
//! the inequality holds. The tolerance is three times the first-order
//! propagation of the eigenvalue error estimates into the margin, plus a
//! floor for rounding.

mod report;

pub use report::{write_csv, write_jsonl, InequalityReport, Status};

use crate::eigensolver::{CoefficientBounds, EigenReport};
use crate::error::{Error, Result};
use crate::specfun::{ball_modes, ball_neumann_mu1, unit_ball_volume};

/// Finite stand-in for +∞ when a gap λ_k − λ₁ vanishes.
pub const DEGENERATE_SENTINEL: f64 = 1e300;
/// Margin tolerance when the eigenvalues carry no error estimate.
pub const TOLERANCE_FLOOR: f64 = 1e-9;
const TOLERANCE_FACTOR: f64 = 3.0;

/// Sum-ratio bounds on (λ₂ + λ₃)/λ₁ for planar domains, weakest first.
pub fn planar_sum_constants() -> [(&'static str, f64, &'static str); 5] {
    [
        ("sum_ratio_6", 6.0, "Payne-Polya-Weinberger 1956"),
        ("sum_ratio_3_plus_sqrt7", 3.0 + 7f64.sqrt(), "Brands 1964"),
        ("sum_ratio_5_622", 5.622, "Hile-Protter 1980"),
        (
            "sum_ratio_15_plus_sqrt345_over_6",
            (15.0 + 345f64.sqrt()) / 6.0,
            "Marcellini 1980",
        ),
        (
            "sum_ratio_5_3507",
            5.3507,
            "Chen-Zheng; stated as 5.3507 from below, checked as <= 5.3507",
        ),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    AtLeast,
    AtMost,
}

struct Def {
    id: String,
    status: Status,
    direction: Direction,
    citation: String,
}

impl Def {
    fn new(id: &str, status: Status, direction: Direction, citation: &str) -> Self {
        Self {
            id: id.to_string(),
            status,
            direction,
            citation: citation.to_string(),
        }
    }
}

/// Value of one side pair plus whether a degenerate gap was hit.
type Sides = (f64, f64, bool);

fn margin(direction: Direction, lhs: f64, rhs: f64) -> f64 {
    let m = (lhs - rhs) / rhs.abs();
    match direction {
        Direction::AtLeast => m,
        Direction::AtMost => -m,
    }
}

fn evaluate(
    spectrum: &EigenReport,
    n: usize,
    needed: usize,
    def: Def,
    sides: impl Fn(&[f64]) -> Result<Sides>,
) -> Result<InequalityReport> {
    if spectrum.eigenvalues.len() < needed {
        return Err(Error::InsufficientEigenvalues {
            need: needed,
            have: spectrum.eigenvalues.len(),
        });
    }
    let values = &spectrum.eigenvalues[..needed];
    let (lhs, rhs, degenerate) = sides(values)?;
    let m = margin(def.direction, lhs, rhs);
    let mut spread = 0.0;
    if !degenerate {
        for i in 0..needed {
            let err = spectrum.error_estimates.get(i).copied().unwrap_or(0.0);
            if err == 0.0 {
                continue;
            }
            let step = 1e-6 * values[i].abs().max(1e-300);
            let mut up = values.to_vec();
            let mut down = values.to_vec();
            up[i] += step;
            down[i] -= step;
            let (lu, ru, du) = sides(&up)?;
            let (ld, rd, dd) = sides(&down)?;
            if du || dd {
                continue;
            }
            let grad = (margin(def.direction, lu, ru) - margin(def.direction, ld, rd)) / (2.0 * step);
            spread += grad.abs() * err;
        }
    }
    let tolerance = TOLERANCE_FACTOR * spread + TOLERANCE_FLOOR;
    Ok(InequalityReport {
        id: def.id,
        shape: spectrum.domain.to_string(),
        domain: Some(spectrum.domain.clone()),
        n,
        h_min: spectrum.h_min(),
        lhs,
        rhs,
        margin: m,
        tolerance,
        satisfied: m >= -tolerance,
        equality: m.abs() <= tolerance,
        degenerate,
        status: def.status,
        citation: def.citation,
    })
}

/// (α, β) = (j_{n/2−1,1}, j_{n/2,1}).
fn ball_zeros(n: usize) -> Result<(f64, f64)> {
    let m = ball_modes(n, 1.0)?;
    Ok((m.alpha, m.beta))
}

/// (β/α)², the ratio λ₂/λ₁ of the n-ball.
fn ball_ratio(n: usize) -> Result<f64> {
    let (a, b) = ball_zeros(n)?;
    Ok((b / a).powi(2))
}

/// Σ_{k=2}^{last} λ₁/(λ_k − λ₁) over 1-based indices; a vanishing gap makes
/// the sum the sentinel and sets the flag.
pub fn normalized_gap_sum(values: &[f64], last: usize) -> (f64, bool) {
    let l1 = values[0];
    let mut sum = 0.0;
    for &lk in &values[1..last] {
        let gap = lk - l1;
        if gap <= 1e-12 * l1.abs() {
            return (DEGENERATE_SENTINEL, true);
        }
        sum += l1 / gap;
    }
    (sum, false)
}

fn reciprocal_gap_sum(values: &[f64], last: usize) -> (f64, bool) {
    let (s, degenerate) = normalized_gap_sum(values, last);
    if degenerate {
        (DEGENERATE_SENTINEL, true)
    } else {
        (s / values[0], false)
    }
}

fn dimension(spectrum: &EigenReport) -> usize {
    spectrum.domain.dimension()
}

fn positive_first(values: &[f64]) -> Result<()> {
    if values[0] > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateSpectrum(format!(
            "first Dirichlet eigenvalue {} is not positive",
            values[0]
        )))
    }
}

/// λ₁(Ω) ≥ (|Bⁿ|/|Ω|)^{2/n} j²_{n/2−1,1}.
pub fn faber_krahn(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let (alpha, _) = ball_zeros(n)?;
    let vol = spectrum.domain.volume()?;
    let rhs = (unit_ball_volume(n) / vol).powf(2.0 / n as f64) * alpha * alpha;
    let def = Def::new(
        "faber_krahn",
        Status::Proven,
        Direction::AtLeast,
        "Faber-Krahn inequality (Faber 1923, Krahn 1925); equality only for balls",
    );
    evaluate(spectrum, n, 1, def, |v| Ok((v[0], rhs, false)))
}

/// λ₂/λ₁ ≤ (j_{n/2,1}/j_{n/2−1,1})².
pub fn ppw_ratio(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let rhs = ball_ratio(n)?;
    let def = Def::new(
        "ppw_ratio",
        Status::Proven,
        Direction::AtMost,
        "Payne-Polya-Weinberger ratio conjecture, proved by Ashbaugh-Benguria",
    );
    evaluate(spectrum, n, 2, def, |v| {
        positive_first(v)?;
        Ok((v[1] / v[0], rhs, false))
    })
}

fn sum_ratio(v: &[f64], n: usize) -> f64 {
    v[1..=n].iter().sum::<f64>() / v[0]
}

/// (λ₂ + … + λ_{n+1})/λ₁ ≤ n (j_{n/2,1}/j_{n/2−1,1})².
pub fn ppw_sum(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let rhs = n as f64 * ball_ratio(n)?;
    let def = Def::new(
        "ppw_sum",
        Status::Conjecture,
        Direction::AtMost,
        "Payne-Polya-Weinberger sum conjecture; equality for balls",
    );
    evaluate(spectrum, n, n + 1, def, |v| {
        positive_first(v)?;
        Ok((sum_ratio(v, n), rhs, false))
    })
}

/// (λ₂ + λ₃)/λ₁ against each historical planar constant.
pub fn bounds_2d(spectrum: &EigenReport) -> Result<Vec<InequalityReport>> {
    let n = dimension(spectrum);
    if n != 2 {
        return Err(Error::Unsupported {
            operation: "planar sum-ratio bounds",
            detail: format!("domain has dimension {n}"),
        });
    }
    planar_sum_constants()
        .iter()
        .map(|&(id, c, who)| {
            let def = Def::new(
                id,
                Status::Proven,
                Direction::AtMost,
                &format!("(l2+l3)/l1 bound, {who}"),
            );
            evaluate(spectrum, 2, 3, def, |v| {
                positive_first(v)?;
                Ok((sum_ratio(v, 2), c, false))
            })
        })
        .collect()
}

/// (λ₂ + … + λ_{n+1})/λ₁ ≤ n + 4.
pub fn thompson(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let def = Def::new(
        "thompson",
        Status::Proven,
        Direction::AtMost,
        "Thompson 1969, read as (l2+...+l_{n+1})/l1 <= n+4 since including l1 fails on the disk",
    );
    evaluate(spectrum, n, n + 1, def, |v| {
        positive_first(v)?;
        Ok((sum_ratio(v, n), n as f64 + 4.0, false))
    })
}

/// Σ_{k=2}^{n+1} 1/(λ_k − λ₁) ≥ (2 j²_{n/2−1,1} + n(n−4))/(6 λ₁).
pub fn ab_harmonic(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let (alpha, _) = ball_zeros(n)?;
    let c = (2.0 * alpha * alpha + (n as f64) * (n as f64 - 4.0)) / 6.0;
    let def = Def::new(
        "ab_harmonic",
        Status::Proven,
        Direction::AtLeast,
        "Ashbaugh-Benguria harmonic-mean gap bound",
    );
    evaluate(spectrum, n, n + 1, def, |v| {
        positive_first(v)?;
        let (lhs, degenerate) = reciprocal_gap_sum(v, n + 1);
        Ok((lhs, c / v[0], degenerate))
    })
}

/// (n−1)ac / (AC((j_{n/2,1}/j_{n/2−1,1})² − 1)), the lower bound for the
/// weighted problem with a ≤ a(x) ≤ A and c ≤ r(x) ≤ C.
pub fn elliptic_bound(n: usize, a: f64, big_a: f64, c: f64, big_c: f64) -> Result<f64> {
    CoefficientBounds {
        a_min: a,
        a_max: big_a,
        r_min: c,
        r_max: big_c,
    }
    .validate()?;
    let ratio = ball_ratio(n)?;
    Ok((n as f64 - 1.0) * a * c / (big_a * big_c * (ratio - 1.0)))
}

/// Σ_{k=2}^{n} λ₁/(λ_k − λ₁) ≥ (n−1)/((j_{n/2,1}/j_{n/2−1,1})² − 1).
pub fn gap_sum_first_n(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let rhs = elliptic_bound(n, 1.0, 1.0, 1.0, 1.0)?;
    let def = Def::new(
        "gap_sum_first_n",
        Status::Proven,
        Direction::AtLeast,
        "lower bound on the normalized gaps of the first n Dirichlet eigenvalues; equality only for balls",
    );
    evaluate(spectrum, n, n, def, |v| {
        positive_first(v)?;
        let (lhs, degenerate) = normalized_gap_sum(v, n);
        Ok((lhs, rhs, degenerate))
    })
}

/// Σ_{k=2}^{n+1} λ₁/(λ_k − λ₁) ≥ n/((j_{n/2,1}/j_{n/2−1,1})² − 1).
pub fn gap_sum_first_n_plus_1(spectrum: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let rhs = n as f64 / (ball_ratio(n)? - 1.0);
    let def = Def::new(
        "gap_sum_first_n_plus_1",
        Status::Conjecture,
        Direction::AtLeast,
        "Ashbaugh-Benguria conjecture on the first n+1 Dirichlet eigenvalues",
    );
    evaluate(spectrum, n, n + 1, def, |v| {
        positive_first(v)?;
        let (lhs, degenerate) = normalized_gap_sum(v, n + 1);
        Ok((lhs, rhs, degenerate))
    })
}

/// Σ_{k=2}^{n} λ₁/(λ_k − λ₁) ≥ [`elliptic_bound`] for a weighted spectrum.
pub fn weighted_gap_sum(spectrum: &EigenReport, bounds: &CoefficientBounds) -> Result<InequalityReport> {
    let n = dimension(spectrum);
    let rhs = elliptic_bound(n, bounds.a_min, bounds.a_max, bounds.r_min, bounds.r_max)?;
    let def = Def::new(
        "weighted_gap_sum",
        Status::Proven,
        Direction::AtLeast,
        "gap-sum bound for -div(a grad u) + q u = l r u with a <= a(x) <= A, c <= r(x) <= C, q >= 0",
    );
    evaluate(spectrum, n, n, def, |v| {
        positive_first(v)?;
        let (lhs, degenerate) = normalized_gap_sum(v, n);
        Ok((lhs, rhs, degenerate))
    })
}

/// One row of the comparison between the conjectured constant
/// n/((β/α)² − 1) and the proven λ₁-normalized constant (2α² + n(n−4))/6.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ConstantComparison {
    pub n: usize,
    pub conjectured: f64,
    pub harmonic: f64,
}

pub fn constant_comparison(dims: std::ops::RangeInclusive<usize>) -> Result<Vec<ConstantComparison>> {
    dims.map(|n| {
        let (alpha, _) = ball_zeros(n)?;
        Ok(ConstantComparison {
            n,
            conjectured: n as f64 / (ball_ratio(n)? - 1.0),
            harmonic: (2.0 * alpha * alpha + (n as f64) * (n as f64 - 4.0)) / 6.0,
        })
    })
    .collect()
}

fn neumann_first(values: &[f64], volume: f64, n: usize) -> Result<()> {
    // μ₁ must be clearly positive on the domain's own scale
    if values[1] * volume.powf(2.0 / n as f64) <= 1e-8 {
        return Err(Error::DegenerateSpectrum(format!(
            "first nonzero Neumann eigenvalue {} is not positive",
            values[1]
        )));
    }
    Ok(())
}

/// μ₁(Ω)|Ω|^{2/n} ≤ μ₁(Bⁿ)|Bⁿ|^{2/n}. The spectrum lists μ₀ = 0 first.
pub fn szego_weinberger(neumann: &EigenReport) -> Result<InequalityReport> {
    let n = dimension(neumann);
    let vol = neumann.domain.volume()?;
    let scale = vol.powf(2.0 / n as f64);
    let rhs = ball_neumann_mu1(n, 1.0)? * unit_ball_volume(n).powf(2.0 / n as f64);
    let def = Def::new(
        "szego_weinberger",
        Status::Proven,
        Direction::AtMost,
        "Szego-Weinberger inequality; equality only for balls",
    );
    evaluate(neumann, n, 2, def, |v| {
        neumann_first(v, vol, n)?;
        Ok((v[1] * scale, rhs, false))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReciprocalSum {
    /// Σ_{i=1}^{n} 1/μ_i ≥ n/μ₁(B_Ω), conjectured.
    Full,
    /// Σ_{i=1}^{n−1} 1/μ_i ≥ (n−1)/μ₁(B_Ω), proven.
    Partial,
}

/// Reciprocal Neumann sums against the equal-volume ball.
pub fn neumann_recip(neumann: &EigenReport, which: ReciprocalSum) -> Result<InequalityReport> {
    let n = dimension(neumann);
    let vol = neumann.domain.volume()?;
    let ball = neumann.domain.equal_volume_ball()?;
    let radius = match ball.shape {
        crate::geometry::Shape::Ball { radius, .. } => radius,
        _ => unreachable!("equal_volume_ball returns a ball"),
    };
    let mu_ball = ball_neumann_mu1(n, radius)?;
    let (m, def) = match which {
        ReciprocalSum::Full => (
            n,
            Def::new(
                "neumann_recip_full",
                Status::Conjecture,
                Direction::AtLeast,
                "Ashbaugh-Benguria conjecture on the first n reciprocal Neumann eigenvalues",
            ),
        ),
        ReciprocalSum::Partial => (
            n - 1,
            Def::new(
                "neumann_recip_partial",
                Status::Proven,
                Direction::AtLeast,
                "lower bound on the first n-1 reciprocal Neumann eigenvalues; equality only for balls",
            ),
        ),
    };
    let rhs = m as f64 / mu_ball;
    evaluate(neumann, n, m + 1, def, |v| {
        neumann_first(v, vol, n)?;
        Ok((v[1..=m].iter().map(|mu| 1.0 / mu).sum(), rhs, false))
    })
}

/// Every Dirichlet check (and the Neumann checks when a Neumann spectrum is
/// given), in a fixed order.
pub fn check_all(dirichlet: &EigenReport, neumann: Option<&EigenReport>) -> Result<Vec<InequalityReport>> {
    let n = dimension(dirichlet);
    let mut out = vec![faber_krahn(dirichlet)?, ppw_ratio(dirichlet)?, ppw_sum(dirichlet)?];
    if n == 2 {
        out.extend(bounds_2d(dirichlet)?);
    }
    out.push(thompson(dirichlet)?);
    out.push(ab_harmonic(dirichlet)?);
    out.push(gap_sum_first_n(dirichlet)?);
    out.push(gap_sum_first_n_plus_1(dirichlet)?);
    if let Some(nm) = neumann {
        out.push(szego_weinberger(nm)?);
        out.push(neumann_recip(nm, ReciprocalSum::Full)?);
        out.push(neumann_recip(nm, ReciprocalSum::Partial)?);
    }
    Ok(out)
}
