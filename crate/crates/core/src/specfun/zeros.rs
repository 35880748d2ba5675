//! Positive zeros of J_p, J'_p and of the cross combination x J'_p(x) + c J_p(x).
//!
//! Every zero is located by counting sign changes on a fixed-step scan
//! starting below a known lower bound, so the k-th zero is never confused
//! with a neighbour, then refined by Newton steps safeguarded by bisection.
//! McMahon's expansion seeds the Newton iteration when it falls inside the
//! bracket.

use super::bessel::{check_order, j, jp, jpp};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

pub const MAX_ZERO_INDEX: usize = 20;

/// Consecutive zeros of all the functions handled here are > 2.5 apart.
const SCAN_STEP: f64 = 0.5;
const SCAN_LIMIT: f64 = 2.0e3;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Value,
    Derivative,
    Cross(u64),
}

type CacheKey = (Kind, u64, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(key: CacheKey, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if let Some(v) = cache().read().expect("zero cache poisoned").get(&key) {
        return Ok(*v);
    }
    let v = compute()?;
    cache().write().expect("zero cache poisoned").insert(key, v);
    Ok(v)
}

fn check_index(k: usize) -> Result<()> {
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Range {
            what: "zero index",
            value: k as f64,
            range: "[1, 20]",
        });
    }
    Ok(())
}

fn mcmahon(p: f64, k: usize) -> f64 {
    let b = (k as f64 + 0.5 * p - 0.25) * PI;
    let mu = 4.0 * p * p;
    let eb = 8.0 * b;
    b - (mu - 1.0) / eb - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eb.powi(3))
}

/// k-th positive zero of J_order.
pub fn bessel_zero(order: f64, k: usize) -> Result<f64> {
    check_order(order)?;
    check_index(k)?;
    cached((Kind::Value, order.to_bits(), k), || {
        // j_{p,1} > sqrt(p (p + 2))
        let start = (order * (order + 2.0)).sqrt().max(1e-3);
        let guess = mcmahon(order, k);
        find_kth_root(
            &format!("J_{order} zero #{k}"),
            |x| j(order, x),
            |x| jp(order, x),
            start,
            k,
            Some(guess),
        )
    })
}

/// k-th positive zero of J'_order (x = 0 is not counted for order 0).
pub fn bessel_prime_zero(order: f64, k: usize) -> Result<f64> {
    check_order(order)?;
    check_index(k)?;
    let order = if order < 1e-12 { 0.0 } else { order };
    cached((Kind::Derivative, order.to_bits(), k), || {
        // j'_{p,1} > p for p > 0
        let start = order.max(1e-3);
        find_kth_root(
            &format!("J'_{order} zero #{k}"),
            |x| jp(order, x),
            |x| jpp(order, x),
            start,
            k,
            None,
        )
    })
}

/// k-th positive zero of x J'_order(x) + c J_order(x), scanning upward from `start`
/// (which must lie below the first zero).
pub(crate) fn cross_zero(order: f64, c: f64, k: usize, start: f64) -> Result<f64> {
    check_order(order)?;
    check_index(k)?;
    cached((Kind::Cross(c.to_bits()), order.to_bits(), k), || {
        find_kth_root(
            &format!("x J'_{order} + {c} J_{order} zero #{k}"),
            |x| x * jp(order, x) + c * j(order, x),
            |x| (1.0 + c) * jp(order, x) + x * jpp(order, x),
            start,
            k,
            None,
        )
    })
}

fn find_kth_root(
    what: &str,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    start: f64,
    k: usize,
    guess: Option<f64>,
) -> Result<f64> {
    let mut lo = start;
    let mut f_lo = f(lo);
    let mut found = 0;
    loop {
        let hi = lo + SCAN_STEP;
        if hi > SCAN_LIMIT {
            return Err(Error::Bracket {
                what: what.to_string(),
                lo: start,
                hi,
            });
        }
        let f_hi = f(hi);
        if f_hi == 0.0 {
            found += 1;
            if found == k {
                return Ok(hi);
            }
            // step past the exact zero so it is not counted twice
            lo = hi + 1e-9;
            f_lo = f(lo);
            continue;
        }
        if f_lo.signum() != f_hi.signum() {
            found += 1;
            if found == k {
                return refine(what, &f, &df, lo, hi, f_lo, guess);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
}

fn refine(
    what: &str,
    f: &impl Fn(f64) -> f64,
    df: &impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    f_a: f64,
    guess: Option<f64>,
) -> Result<f64> {
    let sign_a = f_a.signum();
    let mut x = match guess {
        Some(g) if g > a && g < b => g,
        _ => 0.5 * (a + b),
    };
    let mut last_step = b - a;
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let step;
        if newton.is_finite() && newton > a && newton < b && (newton - x).abs() < 0.5 * last_step {
            step = (newton - x).abs();
            x = newton;
        } else {
            step = 0.5 * (b - a);
            x = 0.5 * (a + b);
        }
        last_step = step;
        if step <= 2.0 * f64::EPSILON * x.abs() || (b - a) <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(polish(f, x));
        }
    }
    Err(Error::Bracket {
        what: what.to_string(),
        lo: a,
        hi: b,
    })
}

/// The double within four ulps of `x` where |f| is smallest.
fn polish(f: &impl Fn(f64) -> f64, x: f64) -> f64 {
    let mut best = (f(x).abs(), x);
    let (mut down, mut up) = (x, x);
    for _ in 0..4 {
        down = down.next_down();
        up = up.next_up();
        for y in [down, up] {
            let fy = f(y).abs();
            if fy < best.0 {
                best = (fy, y);
            }
        }
    }
    best.1
}
