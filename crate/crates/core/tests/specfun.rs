use isospec::specfun::{
    ball_dirichlet_eigenvalues, ball_modes, ball_neumann_mu1, bessel_eval, bessel_j, bessel_j_prime, bessel_prime_zero,
    bessel_zero, unit_ball_volume,
};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_term_recurrence(p in 1.0f64..20.0, x in 0.1f64..60.0) {
        let lhs = bessel_j(p - 1.0, x).unwrap() + bessel_j(p + 1.0, x).unwrap();
        let rhs = 2.0 * p / x * bessel_j(p, x).unwrap();
        let scale = bessel_j(p - 1.0, x).unwrap().abs() + bessel_j(p + 1.0, x).unwrap().abs() + 1e-300;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1e-3), "p={p} x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn derivative_identity(p in 1.0f64..15.0, x in 0.5f64..40.0) {
        let d = bessel_j_prime(p, x).unwrap();
        let r = 0.5 * (bessel_j(p - 1.0, x).unwrap() - bessel_j(p + 1.0, x).unwrap());
        prop_assert!((d - r).abs() <= 1e-11);
    }

    #[test]
    fn zeros_are_roots_and_interlace(p in 0.0f64..12.0, k in 1usize..6) {
        let z = bessel_zero(p, k).unwrap();
        let next = bessel_zero(p, k + 1).unwrap();
        let shifted = bessel_zero(p + 1.0, k).unwrap();
        prop_assert!(bessel_j(p, z).unwrap().abs() <= 1e-13 * (1.0 + z));
        prop_assert!(z < shifted && shifted < next, "interlacing fails at p={p}, k={k}");
    }

    #[test]
    fn half_integer_closed_forms(x in 0.05f64..80.0) {
        let j_half = (2.0 / (PI * x)).sqrt() * x.sin();
        let j_three_halves = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
        prop_assert!((bessel_j(0.5, x).unwrap() - j_half).abs() <= 1e-13);
        prop_assert!((bessel_j(1.5, x).unwrap() - j_three_halves).abs() <= 1e-13);
    }

    #[test]
    fn ball_eigenvalues_scale_inverse_square(n in 2usize..8, r in 0.1f64..10.0) {
        let unit = ball_dirichlet_eigenvalues(n, 1.0, 4).unwrap();
        let scaled = ball_dirichlet_eigenvalues(n, r, 4).unwrap();
        for (a, b) in unit.iter().zip(&scaled) {
            prop_assert!((a / (r * r) - b).abs() <= 1e-12 * b);
        }
        let mu = ball_neumann_mu1(n, r).unwrap();
        prop_assert!((mu * r * r - ball_neumann_mu1(n, 1.0).unwrap()).abs() <= 1e-12 * mu * r * r);
    }
}

#[test]
fn reference_zeros() {
    // j_{p,k} and j'_{p,k}, tabulated to 16 digits
    assert!((bessel_zero(0.0, 1).unwrap() - 2.404825557695773).abs() < 1e-13);
    assert!((bessel_zero(0.0, 3).unwrap() - 8.653727912911013).abs() < 1e-12);
    assert!((bessel_zero(2.0, 2).unwrap() - 8.417244140399865).abs() < 1e-12);
    assert!((bessel_prime_zero(1.0, 1).unwrap() - 1.8411837813406593).abs() < 1e-12);
    assert!((bessel_prime_zero(0.0, 1).unwrap() - 3.8317059702075125).abs() < 1e-12);
}

#[test]
fn ball_modes_match_zeros() {
    for n in 2..=6 {
        let m = ball_modes(n, 2.0).unwrap();
        let half = n as f64 / 2.0;
        assert_eq!(m.alpha, bessel_zero(half - 1.0, 1).unwrap());
        assert_eq!(m.beta, bessel_zero(half, 1).unwrap());
        assert!((m.lambda1 - (m.alpha / 2.0).powi(2)).abs() < 1e-14 * m.lambda1);
        let v = ball_dirichlet_eigenvalues(n, 2.0, n + 1).unwrap();
        assert!(
            v[1..].iter().all(|x| (x - m.lambda2).abs() < 1e-12 * x),
            "multiplicity n of λ₂"
        );
    }
}

#[test]
fn neumann_mu1_for_the_disk_and_ball() {
    // j'_{1,1}² for the disk; for the 3-ball the first root of tan x = 2x/(2 − x²)
    assert!((ball_neumann_mu1(2, 1.0).unwrap() - 1.8411837813406593f64.powi(2)).abs() < 1e-11);
    assert!((ball_neumann_mu1(3, 1.0).unwrap() - 2.081_575_977_818_191_f64.powi(2)).abs() < 1e-10);
}

#[test]
fn volumes() {
    assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
    assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
    assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
}

#[test]
fn evaluation_bundle_is_consistent() {
    let e = bessel_eval(2.5, 7.0).unwrap();
    assert_eq!(e.value, bessel_j(2.5, 7.0).unwrap());
    assert_eq!(e.derivative, bessel_j_prime(2.5, 7.0).unwrap());
}

#[test]
fn out_of_range_arguments_are_errors() {
    assert!(bessel_j(-1.0, 1.0).is_err());
    assert!(bessel_j(1.0, -1.0).is_err());
    assert!(bessel_zero(0.0, 0).is_err());
    assert!(ball_modes(1, 1.0).is_err());
}
