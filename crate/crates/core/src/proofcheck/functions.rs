use crate::eigensolver::CoefficientBounds;
use crate::error::{Error, Result};
use crate::specfun::{ball_modes, j_scaled, taylor_derivatives};
use serde::Serialize;

const TAYLOR_TERMS: usize = 30;

/// The radial functions of the trial-function construction for dimension n:
///
/// w(t) = J_{n/2}(βt)/J_{n/2−1}(αt) on [0, 1), continued by the constant w(1)
/// for t ≥ 1; B(t) = w′(t)² + (n−1)w(t)²/t²; g(t) = w(γt), where
/// α = j_{n/2−1,1}, β = j_{n/2,1}.
#[derive(Debug, Clone, Serialize)]
pub struct ProofFunctions {
    pub dimension: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Orders n/2 and n/2 − 1.
    p: f64,
    /// β^{n/2}/(2α^{n/2−1}), so w(t) = t·k·Ĵ_{n/2}(βt)/Ĵ_{n/2−1}(αt) with Ĵ_p(z) = J_p(z)/(z/2)^p.
    k: f64,
    /// Half-width of the window around t = 1 where w is a ratio of Taylor series.
    window: f64,
    /// Taylor coefficients about t = 1 of J_{n/2}(βt)/(t−1) and J_{n/2−1}(αt)/(t−1).
    num: Vec<f64>,
    den: Vec<f64>,
    w1: f64,
}

fn shifted_coefficients(p: f64, z: f64) -> Vec<f64> {
    // J_p(z(1+s)) = Σ d_k z^k s^k / k!; the k = 0 term vanishes at a zero
    let d = taylor_derivatives(p, z, TAYLOR_TERMS);
    let mut c = Vec::with_capacity(TAYLOR_TERMS);
    let mut f = 1.0;
    for (k, dk) in d.iter().enumerate().skip(1) {
        f *= z / k as f64;
        c.push(dk * f);
    }
    c
}

fn poly(c: &[f64], s: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut dv = 0.0;
    for &ci in c.iter().rev() {
        dv = dv * s + v;
        v = v * s + ci;
    }
    (v, dv)
}

impl ProofFunctions {
    /// γ = √λ₁/α.
    pub fn new(n: usize, lambda1: f64) -> Result<Self> {
        Self::check(n, lambda1)?;
        let alpha = ball_modes(n, 1.0)?.alpha;
        Self::with_gamma(n, lambda1.sqrt() / alpha)
    }

    /// γ = √(Cλ₁/a)/α for −div(a∇u) + qu = λru with a ≤ a(x) and r(x) ≤ C.
    pub fn weighted(n: usize, lambda1: f64, bounds: &CoefficientBounds) -> Result<Self> {
        Self::check(n, lambda1)?;
        bounds.validate()?;
        let alpha = ball_modes(n, 1.0)?.alpha;
        Self::with_gamma(n, (bounds.r_max * lambda1 / bounds.a_min).sqrt() / alpha)
    }

    fn check(n: usize, lambda1: f64) -> Result<()> {
        if n < 2 {
            return Err(Error::Range {
                what: "dimension",
                value: n as f64,
                range: "n >= 2",
            });
        }
        if !(lambda1 > 0.0 && lambda1.is_finite()) {
            return Err(Error::Range {
                what: "first eigenvalue",
                value: lambda1,
                range: "positive and finite",
            });
        }
        Ok(())
    }

    fn with_gamma(n: usize, gamma: f64) -> Result<Self> {
        let modes = ball_modes(n, 1.0)?;
        let (alpha, beta) = (modes.alpha, modes.beta);
        let p = 0.5 * n as f64;
        let num = shifted_coefficients(p, beta);
        let den = shifted_coefficients(p - 1.0, alpha);
        let w1 = num[0] / den[0];
        Ok(Self {
            dimension: n,
            alpha,
            beta,
            gamma,
            p,
            k: beta.powf(p) / (2.0 * alpha.powf(p - 1.0)),
            window: (0.5 / beta).min(0.05),
            num,
            den,
            w1,
        })
    }

    /// (w(t), w(t)/t, w′(t)); w/t at t = 0 is its limit w′(0).
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        if t >= 1.0 {
            return (self.w1, self.w1 / t, 0.0);
        }
        if 1.0 - t < self.window {
            let s = t - 1.0;
            let (nv, nd) = poly(&self.num, s);
            let (dv, dd) = poly(&self.den, s);
            let w = nv / dv;
            let wp = (nd * dv - nv * dd) / (dv * dv);
            return (w, w / t, wp);
        }
        let p = self.p;
        let (a, b) = (self.alpha, self.beta);
        // d/dz Ĵ_p(z) = −(z/2) Ĵ_{p+1}(z)
        let num = j_scaled(p, b * t);
        let den = j_scaled(p - 1.0, a * t);
        let dnum = -b * (0.5 * b * t) * j_scaled(p + 1.0, b * t);
        let dden = -a * (0.5 * a * t) * j_scaled(p, a * t);
        let over_t = self.k * num / den;
        let wp = self.k * (num / den + t * (dnum * den - num * dden) / (den * den));
        (t * over_t, over_t, wp)
    }

    pub fn w(&self, t: f64) -> f64 {
        self.eval(t).0
    }

    /// w(t)/t, continuous at 0.
    pub fn w_over_t(&self, t: f64) -> f64 {
        self.eval(t).1
    }

    /// Left derivative at t = 1, zero beyond.
    pub fn w_prime(&self, t: f64) -> f64 {
        self.eval(t).2
    }

    /// The value w(1) of the constant continuation.
    pub fn w_at_one(&self) -> f64 {
        self.w1
    }

    pub fn b(&self, t: f64) -> f64 {
        let (_, wt, wp) = self.eval(t);
        wp * wp + (self.dimension as f64 - 1.0) * wt * wt
    }

    pub fn g(&self, rho: f64) -> f64 {
        self.w(self.gamma * rho)
    }

    /// (g(ρ), g(ρ)/ρ, g′(ρ)).
    pub fn g_parts(&self, rho: f64) -> (f64, f64, f64) {
        let (w, wt, wp) = self.eval(self.gamma * rho);
        (w, self.gamma * wt, self.gamma * wp)
    }
}

/// max over t_i = 3i/samples, i = 1..=samples, of w′(t)² − (w(t)/t)².
pub fn check_w_bound(pf: &ProofFunctions, samples: usize) -> Result<f64> {
    if samples < 100 {
        return Err(Error::Range {
            what: "sample count",
            value: samples as f64,
            range: ">= 100",
        });
    }
    Ok((1..=samples)
        .map(|i| {
            let t = 3.0 * i as f64 / samples as f64;
            let (_, wt, wp) = pf.eval(t);
            wp * wp - wt * wt
        })
        .fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j, bessel_j_prime};

    #[test]
    fn matches_direct_quotient() {
        let pf = ProofFunctions::new(2, 5.0).unwrap();
        assert_eq!(pf.w(0.0), 0.0);
        for t in [0.1, 0.5, 0.9, 0.97, 0.999] {
            let direct = bessel_j(1.0, pf.beta * t).unwrap() / bessel_j(0.0, pf.alpha * t).unwrap();
            assert!((pf.w(t) - direct).abs() < 1e-9 * direct, "t = {t}");
            assert!(pf.w(t) > 0.0);
        }
        let limit =
            pf.beta * bessel_j_prime(1.0, pf.beta).unwrap() / (pf.alpha * bessel_j_prime(0.0, pf.alpha).unwrap());
        assert!((pf.w_at_one() - limit).abs() < 1e-12);
    }

    #[test]
    fn continuous_at_one() {
        for n in 2..=6 {
            let pf = ProofFunctions::new(n, 1.0).unwrap();
            assert!((pf.w(1.0 - 1e-9) - pf.w(1.0)).abs() < 1e-8, "n = {n}");
            let inner = 1.0 - pf.window;
            let (a, b) = (pf.w(inner - 1e-12), pf.w(inner + 1e-12));
            assert!((a - b).abs() < 1e-12 * a.abs(), "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for n in [2, 3, 4, 7] {
            let pf = ProofFunctions::new(n, 2.0).unwrap();
            for t in [0.05, 0.3, 0.7, 0.96, 0.99] {
                let e = 1e-6;
                let fd = (pf.w(t + e) - pf.w(t - e)) / (2.0 * e);
                assert!((pf.w_prime(t) - fd).abs() < 1e-6, "n = {n}, t = {t}");
            }
            assert_eq!(pf.w_prime(1.5), 0.0);
        }
    }

    #[test]
    fn b_dominates_tangential_part() {
        let pf = ProofFunctions::new(3, 1.0).unwrap();
        for i in 1..50 {
            let t = i as f64 / 20.0;
            let tangential = 2.0 * pf.w_over_t(t).powi(2);
            assert!(pf.b(t) - tangential >= 0.0);
            assert!(pf.b(t) > 0.0);
        }
    }

    #[test]
    fn derivative_bound() {
        for n in [2, 3, 4] {
            let pf = ProofFunctions::new(n, 1.0).unwrap();
            assert!(check_w_bound(&pf, 1000).unwrap() <= 1e-10, "n = {n}");
        }
        assert!(check_w_bound(&ProofFunctions::new(2, 1.0).unwrap(), 10).is_err());
    }

    #[test]
    fn small_t_limit() {
        // w(t)/t → β^{n/2}/(2α^{n/2−1}) · Γ(n/2)/Γ(n/2+1) = k/(n/2)
        let pf = ProofFunctions::new(2, 1.0).unwrap();
        let limit = pf.beta / 2.0;
        assert!((pf.w_over_t(0.0) - limit).abs() < 1e-14);
        assert!((pf.w_prime(0.0) - limit).abs() < 1e-14);
        // J₁(βt)/J₀(αt) = c₁t + c₃t³ + O(t⁵), so w′² − (w/t)² = 4c₁c₃t² + O(t⁴)
        let c1 = pf.beta / 2.0;
        let c3 = c1 * (pf.alpha.powi(2) / 4.0 - pf.beta.powi(2) / 8.0);
        for t in [1e-3, 1e-4, 1e-5] {
            let diff = pf.w_prime(t).powi(2) - pf.w_over_t(t).powi(2);
            let series = 4.0 * c1 * c3 * t * t;
            assert!((diff - series).abs() <= 1e-4 * series.abs() + 1e-13, "t = {t}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ProofFunctions::new(1, 1.0).is_err());
        assert!(ProofFunctions::new(2, 0.0).is_err());
    }
}
