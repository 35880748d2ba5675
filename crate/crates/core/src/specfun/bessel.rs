//! Bessel functions of the first kind, J_p(x), for real order p ≥ 0 and x ≥ 0.
//!
//! Three evaluation routes are combined:
//!
//! * the ascending power series, used whenever its terms do not cancel
//!   badly (the absolute size of the largest partial sums bounds the error);
//! * Miller's backward recurrence, normalized with the Neumann-type sum
//!   `(x/2)^ν = Σ_m (ν + 2m) Γ(ν + m) / m! · J_{ν+2m}(x)`, for the
//!   intermediate range;
//! * Hankel's large-argument expansion once `x` dominates `p²`.
//!
//! Half-integer orders take the closed spherical-Bessel form when the
//! argument exceeds the order, where upward recurrence is stable.

use super::gamma::gamma;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const MAX_ORDER: f64 = 50.0;
pub const MAX_ARGUMENT: f64 = 1.0e4;

/// Largest absolute partial-sum magnitude accepted from the power series.
const SERIES_CANCELLATION_LIMIT: f64 = 100.0;

/// One evaluation of J_p and its derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselEval {
    pub order: f64,
    pub argument: f64,
    pub value: f64,
    pub derivative: f64,
}

pub(crate) fn check_order(order: f64) -> Result<()> {
    if !(order.is_finite() && (0.0..=MAX_ORDER).contains(&order)) {
        return Err(Error::Range {
            what: "order",
            value: order,
            range: "[0, 50]",
        });
    }
    Ok(())
}

fn check_argument(x: f64) -> Result<()> {
    if !(x.is_finite() && (0.0..=MAX_ARGUMENT).contains(&x)) {
        return Err(Error::Range {
            what: "argument",
            value: x,
            range: "[0, 1e4]",
        });
    }
    Ok(())
}

/// J_order(x).
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    check_argument(x)?;
    Ok(j(order, x))
}

/// d/dx J_order(x). At x = 0 the one-sided limit is returned (infinite for 0 < order < 1).
pub fn bessel_j_prime(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    check_argument(x)?;
    Ok(jp(order, x))
}

pub fn bessel_eval(order: f64, x: f64) -> Result<BesselEval> {
    check_order(order)?;
    check_argument(x)?;
    Ok(BesselEval {
        order,
        argument: x,
        value: j(order, x),
        derivative: jp(order, x),
    })
}

/// Ascending series in scaled form: J_p(x) = prefactor · sum, with
/// prefactor = (x/2)^p / Γ(p+1).
struct Series {
    prefactor: f64,
    sum: f64,
    /// Σ (2m + p) t_m, so that J'_p(x) = prefactor · dsum / x.
    dsum: f64,
    abs_sum: f64,
}

fn series(p: f64, x: f64) -> Series {
    let half = 0.5 * x;
    let q = -half * half;
    let prefactor = if p == 0.0 { 1.0 } else { half.powf(p) / gamma(p + 1.0) };
    let mut term = 1.0;
    let mut sum = 1.0;
    // Neumaier compensation for the alternating sum
    let mut carry = 0.0;
    let mut dsum = p;
    let mut abs_sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + p));
        let t = sum + term;
        carry += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        dsum += (2.0 * m + p) * term;
        abs_sum += term.abs();
        if term.abs() <= 1e-17 * sum.abs() && m * (m + p) > -q {
            break;
        }
        if m > 400.0 {
            break;
        }
    }
    Series {
        prefactor,
        sum: sum + carry,
        dsum,
        abs_sum,
    }
}

/// Series result if its rounding error stays well below 1e-13 absolute.
fn series_if_accurate(p: f64, x: f64) -> Option<Series> {
    // the terms peak near m ≈ x/2; beyond a moderate x the series cannot win
    if x > 2.0 * p + 16.0 {
        return None;
    }
    let s = series(p, x);
    (s.prefactor * s.abs_sum <= SERIES_CANCELLATION_LIMIT).then_some(s)
}

fn half_integer_degree(p: f64) -> Option<usize> {
    let twice = 2.0 * p;
    let r = twice.round();
    if (twice - r).abs() <= 1e-12 && r as i64 % 2 == 1 {
        Some(((r as i64 - 1) / 2) as usize)
    } else {
        None
    }
}

/// sqrt(2x/π) j_l(x) by upward recurrence from the trigonometric forms.
fn half_integer(l: usize, x: f64) -> Option<f64> {
    let lf = l as f64;
    if l > 0 && x < lf + 1.0 {
        return None;
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let value = if l == 0 {
        j0
    } else {
        let mut prev = j0;
        let mut cur = (j0 - c) / x;
        for m in 1..l {
            let next = (2 * m + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    Some((2.0 * x / PI).sqrt() * value)
}

fn miller(p: f64, x: f64) -> f64 {
    let n = p.floor() as usize;
    let nu = p - n as f64;
    let big = n.max(x.ceil() as usize);
    let mut top = big + 30 + (40.0 * big as f64).sqrt() as usize;
    top += top % 2;

    // weight of f_{2j}: (ν + 2j) Γ(ν + j) / j!, with Γ(ν + 1) at j = 0.
    // Walked downward from the top via ratio Γ(ν+j)/j! = r_{j+1} (j+1)/(ν+j).
    let jtop = top / 2;
    let mut ratio = if nu == 0.0 {
        1.0 / jtop as f64
    } else {
        (super::gamma::ln_gamma(nu + jtop as f64) - super::gamma::ln_gamma(jtop as f64 + 1.0)).exp()
    };

    let mut f_next = 0.0;
    let mut f = 1e-30;
    let mut norm = 0.0;
    let mut saved = 0.0;
    let mut k = top;
    loop {
        if k.is_multiple_of(2) {
            let j = k / 2;
            let weight = if j == 0 {
                gamma(nu + 1.0)
            } else {
                (nu + k as f64) * ratio
            };
            norm += weight * f;
            if j > 1 {
                ratio *= j as f64 / (nu + j as f64 - 1.0);
            }
        }
        if k == n {
            saved = f;
        }
        if k == 0 {
            break;
        }
        let f_prev = 2.0 * (nu + k as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        k -= 1;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            saved *= 1e-250;
        }
    }
    let scale = if nu == 0.0 { 1.0 } else { (0.5 * x).powf(nu) };
    saved * scale / norm
}

fn hankel_applies(p: f64, x: f64) -> bool {
    x >= 30.0 && x >= 0.5 * p * p
}

fn hankel(p: f64, x: f64) -> f64 {
    let mu = 4.0 * p * p;
    let mut term = 1.0;
    let mut big_p = 1.0;
    let mut big_q = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last {
            break;
        }
        last = mag;
        // P takes even k with sign (-1)^{k/2}, Q odd k with (-1)^{(k-1)/2}
        match k % 4 {
            0 => big_p += term,
            1 => big_q += term,
            2 => big_p -= term,
            _ => big_q -= term,
        }
        if mag < 1e-17 {
            break;
        }
    }
    let phase = (0.5 * p + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (big_p * cos_chi - big_q * sin_chi)
}

/// J_p(x) without range checks.
pub(crate) fn j(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0.0 { 1.0 } else { 0.0 };
    }
    if let Some(l) = half_integer_degree(p) {
        if let Some(v) = half_integer(l, x) {
            return v;
        }
    }
    if let Some(s) = series_if_accurate(p, x) {
        return s.prefactor * s.sum;
    }
    if hankel_applies(p, x) {
        hankel(p, x)
    } else {
        miller(p, x)
    }
}

/// J'_p(x) without range checks.
pub(crate) fn jp(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0.0 || p > 1.0 {
            0.0
        } else if p == 1.0 {
            0.5
        } else {
            f64::INFINITY
        };
    }
    if half_integer_degree(p).is_none() || x < p + 1.0 {
        if let Some(s) = series_if_accurate(p, x) {
            return s.prefactor * s.dsum / x;
        }
    }
    if p >= 1.0 {
        0.5 * (j(p - 1.0, x) - j(p + 1.0, x))
    } else {
        p / x * j(p, x) - j(p + 1.0, x)
    }
}

/// J_p''(x) from Bessel's equation.
pub(crate) fn jpp(p: f64, x: f64) -> f64 {
    let v = j(p, x);
    let d = jp(p, x);
    -d / x - (1.0 - p * p / (x * x)) * v
}

/// J_p(z) / (z/2)^p, an entire function of z equal to 1/Γ(p+1) at the origin.
pub(crate) fn j_scaled(p: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 1.0 / gamma(p + 1.0);
    }
    if z <= 2.0 * p + 16.0 {
        let s = series(p, z);
        if s.prefactor * s.abs_sum <= SERIES_CANCELLATION_LIMIT || s.abs_sum <= 1e3 {
            return s.sum / gamma(p + 1.0);
        }
    }
    j(p, z) / (0.5 * z).powf(p)
}

/// Derivatives J_p^{(k)}(z0) for k = 0..=count, obtained by differentiating
/// Bessel's equation z² f'' + z f' + (z² − p²) f = 0 repeatedly.
pub(crate) fn taylor_derivatives(p: f64, z0: f64, count: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(count + 1);
    d.push(j(p, z0));
    if count == 0 {
        return d;
    }
    d.push(jp(p, z0));
    let z2 = z0 * z0;
    for k in 0..count.saturating_sub(1) {
        let kf = k as f64;
        let mut rhs = (2.0 * kf + 1.0) * z0 * d[k + 1] + (kf * kf + z2 - p * p) * d[k];
        if k >= 1 {
            rhs += 2.0 * kf * z0 * d[k - 1];
        }
        if k >= 2 {
            rhs += kf * (kf - 1.0) * d[k - 2];
        }
        d.push(-rhs / z2);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_prime(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_prime(1.0, 0.0).unwrap(), 0.5);
    }

    #[test]
    fn half_order_vanishes_at_pi() {
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-12);
    }

    #[test]
    fn known_values() {
        // reference values from a 40-digit evaluation
        let cases = [
            (0.0, 1.0, 0.765_197_686_557_966_6),
            (1.0, 2.5, 0.497_094_102_464_274_04),
            (0.0, 10.0, -0.245_935_764_451_348_34),
            (2.0, 20.0, -0.160_341_351_922_998_15),
            (0.0, 100.0, 0.019_985_850_304_223_122),
            (10.0, 30.0, -0.129_876_893_998_588_77),
            (50.0, 60.0, -0.137_982_731_485_352_12),
            (20.0, 45.0, 0.004_763_343_790_031_299),
            (50.0, 3000.0, 0.012_107_457_521_534_443),
            (0.3, 9999.0, 0.002_924_546_376_629_717),
        ];
        for (p, x, want) in cases {
            let got = bessel_j(p, x).unwrap();
            assert!((got - want).abs() < 1e-13, "J_{p}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn derivative_of_order_zero_is_minus_j1() {
        for &x in &[0.1, 1.0, 2.404_825_557_695_773, 7.3, 15.0, 42.0, 300.0] {
            let d = bessel_j_prime(0.0, x).unwrap();
            let j1 = bessel_j(1.0, x).unwrap();
            assert!((d + j1).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn routes_agree_in_overlap() {
        for &p in &[0.0, 0.3, 1.0, 2.7, 7.0] {
            for &x in &[5.0, 6.5, 8.0] {
                let s = series(p, x);
                let a = s.prefactor * s.sum;
                let b = miller(p, x);
                assert!((a - b).abs() < 1e-12, "p {p} x {x}: {a} vs {b}");
            }
            for &x in &[40.0, 60.0, 95.0] {
                let a = hankel(p, x);
                let b = miller(p, x);
                assert!((a - b).abs() < 1e-13, "p {p} x {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn half_integer_path_matches_general() {
        for &l in &[0usize, 1, 3, 6] {
            let p = l as f64 + 0.5;
            for &x in &[l as f64 + 1.5, 12.0, 33.0] {
                let a = half_integer(l, x).unwrap();
                let b = miller(p, x);
                assert!((a - b).abs() < 1e-13, "l {l} x {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn taylor_derivatives_match_finite_differences() {
        let p = 1.0;
        let z = 3.0;
        let d = taylor_derivatives(p, z, 4);
        let h = 1e-3;
        let fd2 = (j(p, z + h) - 2.0 * j(p, z) + j(p, z - h)) / (h * h);
        assert!((d[2] - fd2).abs() < 1e-6);
        assert!((d[2] - jpp(p, z)).abs() < 1e-14);
        let fd3 = (jpp(p, z + h) - jpp(p, z - h)) / (2.0 * h);
        assert!((d[3] - fd3).abs() < 1e-6);
    }

    #[test]
    fn scaled_form_is_smooth_at_origin() {
        assert!((j_scaled(0.0, 0.0) - 1.0).abs() < 1e-15);
        let near = j_scaled(1.0, 1e-8);
        assert!((near - 1.0).abs() < 1e-14);
        let x = 3.7;
        assert!((j_scaled(1.5, x) * (0.5 * x).powf(1.5) - j(1.5, x)).abs() < 1e-14);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(bessel_j(51.0, 1.0).is_err());
        assert!(bessel_j(-0.5, 1.0).is_err());
        assert!(bessel_j(1.0, 2e4).is_err());
        assert!(bessel_j(1.0, f64::NAN).is_err());
    }
}
