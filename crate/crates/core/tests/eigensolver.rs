use isospec::eigensolver::{
    analytic_spectrum, assemble, extrapolate, smallest_eigenpairs, solve_on_grid, CoefficientBounds, ProblemKind,
    SolverOptions, WeightedCoefficients,
};
use isospec::geometry::{build_grid, DomainSpec};
use isospec::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn eigenvalues_scale_with_inverse_square(s in 0.2f64..5.0) {
        let d = DomainSpec::ellipse(1.0, 0.6);
        let h = 1.0 / 24.0;
        let opts = SolverOptions::default();
        let base = solve_on_grid(&d, &ProblemKind::Dirichlet, h, 3, &opts).unwrap();
        let scaled = solve_on_grid(&d.scaled(s), &ProblemKind::Dirichlet, s * h, 3, &opts).unwrap();
        prop_assert_eq!(base.operator.dim(), scaled.operator.dim());
        for (a, b) in base.spectrum.eigenvalues.iter().zip(&scaled.spectrum.eigenvalues) {
            prop_assert!(rel(a / (s * s), *b) < 1e-8);
        }
    }
}

#[test]
fn square_converges_at_second_order() {
    let d = DomainSpec::rectangle(1.0, 1.0);
    let exact = 2.0 * PI * PI;
    let opts = SolverOptions::default();
    let errs: Vec<f64> = [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0]
        .iter()
        .map(|&h| {
            let s = solve_on_grid(&d, &ProblemKind::Dirichlet, h, 1, &opts).unwrap();
            rel(s.spectrum.eigenvalues[0], exact)
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 4.0).abs() < 0.1, "{errs:?}");
    }
}

#[test]
fn extrapolated_rectangle_matches_closed_form() {
    let d = DomainSpec::rectangle(1.0, 2.0);
    let r = extrapolate(&d, &ProblemKind::Dirichlet, 4, &[1.0 / 32.0, 1.0 / 64.0]).unwrap();
    let exact = analytic_spectrum(&d, &ProblemKind::Dirichlet, 4).unwrap().unwrap();
    for (i, (a, e)) in r.eigenvalues.iter().zip(&exact).enumerate() {
        assert!(rel(*a, *e) < 1e-4, "λ{}: {a} vs {e}", i + 1);
        assert!(r.error_estimates[i] < 0.01 * e);
    }
    assert_eq!(r.order, Some(2.0));
    assert!(r.residuals.iter().all(|&x| x <= 1e-9));
}

#[test]
fn neumann_rectangle_matches_closed_form() {
    let d = DomainSpec::rectangle(1.0, 2.0);
    let r = extrapolate(&d, &ProblemKind::Neumann, 4, &[1.0 / 32.0, 1.0 / 64.0]).unwrap();
    let exact = analytic_spectrum(&d, &ProblemKind::Neumann, 4).unwrap().unwrap();
    assert!(r.eigenvalues[0].abs() < 1e-8);
    for (a, e) in r.eigenvalues[1..].iter().zip(&exact[1..]) {
        assert!(rel(*a, *e) < 1e-4, "{a} vs {e}");
    }
}

#[test]
fn neumann_needs_rectilinear_domains() {
    let e = solve_on_grid(
        &DomainSpec::disk(1.0),
        &ProblemKind::Neumann,
        0.05,
        2,
        &SolverOptions::default(),
    );
    assert!(matches!(e, Err(Error::Unsupported { .. })));
}

#[test]
fn disk_second_eigenvalue_is_double() {
    let s = solve_on_grid(
        &DomainSpec::disk(1.0),
        &ProblemKind::Dirichlet,
        1.0 / 32.0,
        4,
        &SolverOptions::default(),
    )
    .unwrap()
    .spectrum;
    assert!(s.clusters.iter().any(|c| c == &vec![1, 2]), "{:?}", s.clusters);
    assert!(s.orthogonality < 1e-10);
}

#[test]
fn nested_domains_have_smaller_eigenvalues() {
    let hs = [1.0 / 32.0, 1.0 / 64.0];
    let small = extrapolate(&DomainSpec::disk(0.8), &ProblemKind::Dirichlet, 2, &hs).unwrap();
    let square = extrapolate(&DomainSpec::rectangle(1.6, 1.6), &ProblemKind::Dirichlet, 2, &hs).unwrap();
    let big = extrapolate(&DomainSpec::disk(1.6 / 2f64.sqrt()), &ProblemKind::Dirichlet, 2, &hs).unwrap();
    for k in 0..2 {
        assert!(small.eigenvalues[k] > square.eigenvalues[k]);
        assert!(square.eigenvalues[k] > big.eigenvalues[k]);
    }
}

#[test]
fn constant_coefficients_rescale_the_spectrum() {
    let d = DomainSpec::ellipse(1.0, 0.7);
    let grid = build_grid(&d, 1.0 / 24.0).unwrap();
    let bounds = CoefficientBounds {
        a_min: 2.0,
        a_max: 2.0,
        r_min: 0.5,
        r_max: 0.5,
    };
    let weighted = WeightedCoefficients::new(|_| 2.0, |_| 0.0, |_| 0.5, bounds);
    let w = smallest_eigenpairs(&assemble(&grid, &ProblemKind::Weighted(weighted)).unwrap(), 3, 1e-10).unwrap();
    let plain = smallest_eigenpairs(&assemble(&grid, &ProblemKind::Dirichlet).unwrap(), 3, 1e-10).unwrap();
    for (a, b) in w.eigenvalues.iter().zip(&plain.eigenvalues) {
        assert!(rel(*a, 4.0 * b) < 1e-9);
    }
}

#[test]
fn unit_coefficients_reproduce_dirichlet_exactly() {
    let d = DomainSpec::lshape(1.0, 1.0);
    let opts = SolverOptions::default();
    let a = solve_on_grid(&d, &ProblemKind::Dirichlet, 1.0 / 32.0, 3, &opts).unwrap();
    let b = solve_on_grid(
        &d,
        &ProblemKind::Weighted(WeightedCoefficients::unit()),
        1.0 / 32.0,
        3,
        &opts,
    )
    .unwrap();
    assert_eq!(a.spectrum.eigenvalues, b.spectrum.eigenvalues);
}

#[test]
fn out_of_bounds_coefficients_are_rejected() {
    let bounds = CoefficientBounds {
        a_min: 1.0,
        a_max: 1.5,
        r_min: 1.0,
        r_max: 2.0,
    };
    let bad = WeightedCoefficients::new(|_| 1.7, |_| 0.0, |_| 1.0, bounds);
    let grid = build_grid(&DomainSpec::disk(1.0), 0.1).unwrap();
    assert!(matches!(
        assemble(&grid, &ProblemKind::Weighted(bad)),
        Err(Error::CoefficientBounds(_))
    ));
}

#[test]
fn small_neumann_eigenvalues_reach_tight_residuals() {
    // μ₁ is small against ‖K‖ on long thin rectangles
    for (len, h) in [(2.5, 1.0 / 16.0), (3.0, 1.0 / 32.0), (4.0, 1.0 / 64.0)] {
        let s = solve_on_grid(
            &DomainSpec::rectangle(1.0, len),
            &ProblemKind::Neumann,
            h,
            4,
            &SolverOptions::default(),
        )
        .unwrap()
        .spectrum;
        assert!(s.residuals.iter().all(|&r| r <= 1e-9), "{len}: {:?}", s.residuals);
        let exact = 4.0 / (h * h) * (PI * h / (2.0 * len)).sin().powi(2);
        assert!(rel(s.eigenvalues[1], exact) < 1e-12);
    }
}
