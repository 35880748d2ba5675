use isospec::eigensolver::{analytic_spectrum, EigenReport, ProblemKind};
use isospec::geometry::DomainSpec;
use isospec::inequalities::{
    check_all, constant_comparison, elliptic_bound, gap_sum_first_n, normalized_gap_sum, ppw_sum, write_csv,
    write_jsonl, InequalityReport, Status,
};
use isospec::specfun::bessel_zero;
use proptest::prelude::*;

fn analytic(d: &DomainSpec, kind: ProblemKind, k: usize) -> EigenReport {
    let v = analytic_spectrum(d, &kind, k).unwrap().unwrap();
    EigenReport::analytic(d, kind.name(), v)
}

fn rectangle_reports(w: f64, h: f64) -> Vec<InequalityReport> {
    let d = DomainSpec::rectangle(w, h);
    check_all(
        &analytic(&d, ProblemKind::Dirichlet, 6),
        Some(&analytic(&d, ProblemKind::Neumann, 4)),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn proven_inequalities_hold_on_rectangles(w in 0.1f64..10.0, aspect in 1.0f64..12.0) {
        for r in rectangle_reports(w, w * aspect) {
            if r.status == Status::Proven {
                prop_assert!(r.satisfied, "{} fails on {}: margin {}", r.id, r.shape, r.margin);
            }
            prop_assert!(!r.degenerate || r.satisfied);
        }
    }

    #[test]
    fn margins_are_scale_invariant(w in 0.2f64..5.0, aspect in 1.0f64..6.0, s in 0.01f64..100.0) {
        let a = rectangle_reports(w, w * aspect);
        let b = rectangle_reports(s * w, s * w * aspect);
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.id, &y.id);
            prop_assert!((x.margin - y.margin).abs() <= 1e-10, "{}: {} vs {}", x.id, x.margin, y.margin);
        }
    }

    #[test]
    fn balls_are_equality_cases(n in 2usize..9, r in 0.1f64..10.0) {
        let d = DomainSpec::ball(n, r);
        let s = analytic(&d, ProblemKind::Dirichlet, n + 1);
        let t = gap_sum_first_n(&s).unwrap();
        prop_assert!(t.margin.abs() <= 1e-10 && t.equality);
        let c = ppw_sum(&s).unwrap();
        prop_assert!(c.margin.abs() <= 1e-10 && c.equality);
    }
}

#[test]
fn gap_sum_bound_from_independent_zeros() {
    // j_{0,1} and j_{1,1} to 16 digits
    let (a, b) = (2.404825557695773f64, 3.8317059702075125f64);
    let expect = 1.0 / ((b / a).powi(2) - 1.0);
    assert!((elliptic_bound(2, 1.0, 1.0, 1.0, 1.0).unwrap() - expect).abs() < 1e-13);
    let (a3, b3) = (std::f64::consts::PI, 4.493409457909064f64);
    let expect3 = 2.0 / ((b3 / a3).powi(2) - 1.0);
    assert!((elliptic_bound(3, 1.0, 1.0, 1.0, 1.0).unwrap() - expect3).abs() < 1e-13);
}

#[test]
fn constant_table_orders() {
    let table = constant_comparison(2..=12).unwrap();
    assert_eq!(table.len(), 11);
    for row in &table {
        let half = row.n as f64 / 2.0;
        let (a, b) = (bessel_zero(half - 1.0, 1).unwrap(), bessel_zero(half, 1).unwrap());
        assert!((row.conjectured - row.n as f64 / ((b / a).powi(2) - 1.0)).abs() < 1e-12);
        assert!((row.harmonic - (2.0 * a * a + (row.n * row.n) as f64 - 4.0 * row.n as f64) / 6.0).abs() < 1e-12);
    }
}

#[test]
fn normalized_sum_is_the_shared_formula() {
    let d = DomainSpec::rectangle(1.0, 3.0);
    let s = analytic(&d, ProblemKind::Dirichlet, 4);
    let (sum, degenerate) = normalized_gap_sum(&s.eigenvalues, 2);
    assert!(!degenerate);
    assert_eq!(gap_sum_first_n(&s).unwrap().lhs, sum);
}

#[test]
fn neumann_checks_need_a_positive_first_eigenvalue() {
    let d = DomainSpec::rectangle(1.0, 1.0);
    let dir = analytic(&d, ProblemKind::Dirichlet, 4);
    let bad = EigenReport::analytic(&d, "neumann", vec![0.0, 0.0, 1.0]);
    assert!(matches!(
        check_all(&dir, Some(&bad)),
        Err(isospec::Error::DegenerateSpectrum(_))
    ));
}

#[test]
fn csv_and_jsonl_output() {
    let reports = rectangle_reports(1.0, 2.0);
    let mut csv = Vec::new();
    write_csv(&reports, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,shape,n,h_min,lhs,rhs,margin,satisfied,citation"
    );
    assert_eq!(lines.count(), reports.len());

    let mut jsonl = Vec::new();
    write_jsonl(&reports, &mut jsonl).unwrap();
    let text = String::from_utf8(jsonl).unwrap();
    for (line, r) in text.lines().zip(&reports) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["id"], r.id.as_str());
        assert_eq!(
            v["status"],
            if r.status == Status::Proven {
                "proven"
            } else {
                "conjecture"
            }
        );
    }
}
