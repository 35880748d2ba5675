use isospec::eigensolver::{EigenReport, Source};
use isospec::inequalities::InequalityReport;
use isospec::proofcheck::{ProofReplay, CENTER_TOLERANCE, ORTHOGONALITY_TOLERANCE};
use serde::Serialize;
use std::fmt::Write;

/// A conjectured inequality failing beyond tolerance.
#[derive(Debug, Serialize)]
pub struct CandidateRecord<'a> {
    pub record: &'static str,
    pub id: &'a str,
    pub shape: &'a str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
}

impl<'a> CandidateRecord<'a> {
    pub fn new(r: &'a InequalityReport) -> Self {
        Self {
            record: "COUNTEREXAMPLE-CANDIDATE",
            id: &r.id,
            shape: &r.shape,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            tolerance: r.tolerance,
        }
    }
}

pub fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("report records serialize"));
    out.push('\n');
}

fn verdict(r: &InequalityReport) -> &'static str {
    if r.is_violation() {
        "VIOLATION"
    } else if r.is_counterexample_candidate() {
        "COUNTEREXAMPLE-CANDIDATE"
    } else if r.degenerate {
        "degenerate"
    } else if r.equality {
        "equality"
    } else {
        "ok"
    }
}

fn describe_source(r: &EigenReport) -> String {
    match r.source {
        Source::Analytic => format!("{}: closed form", r.kind),
        Source::Grid => {
            let h: Vec<String> = r.h_list.iter().map(|h| format!("{h}")).collect();
            format!("{}: grid h = {}", r.kind, h.join(", "))
        }
    }
}

pub fn spectrum_table(out: &mut String, r: &EigenReport) {
    let _ = writeln!(out, "{}  [{}]", r.domain, describe_source(r));
    let _ = writeln!(
        out,
        "  {:>3}  {:>20}  {:>12}  {:>10}",
        "i", "eigenvalue", "error", "residual"
    );
    let first = if r.kind == "neumann" { 0 } else { 1 };
    for (i, v) in r.eigenvalues.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:>3}  {:>20.12}  {:>12.3e}  {:>10.2e}",
            i + first,
            v,
            r.error_estimates[i],
            r.residuals[i]
        );
    }
}

pub fn spectrum_csv_header(out: &mut String) {
    out.push_str("shape,kind,i,eigenvalue,error_estimate,residual\n");
}

pub fn spectrum_csv(out: &mut String, r: &EigenReport) {
    let first = if r.kind == "neumann" { 0 } else { 1 };
    let shape = r.domain.to_string().replace('"', "\"\"");
    for (i, v) in r.eigenvalues.iter().enumerate() {
        let _ = writeln!(
            out,
            "\"{shape}\",{},{},{v:?},{:?},{:?}",
            r.kind,
            i + first,
            r.error_estimates[i],
            r.residuals[i]
        );
    }
}

pub fn check_table(out: &mut String, sources: &[&EigenReport], reports: &[InequalityReport]) {
    let Some(first) = sources.first() else { return };
    let described: Vec<String> = sources.iter().map(|r| describe_source(r)).collect();
    let _ = writeln!(out, "{}  [{}]", first.domain, described.join("; "));
    let _ = writeln!(
        out,
        "  {:<32}  {:>16}  {:>16}  {:>11}  {:>9}  {:<10}  {:<24}  citation",
        "id", "lhs", "rhs", "margin", "tolerance", "status", "result"
    );
    for r in reports {
        let status = match r.status {
            isospec::inequalities::Status::Proven => "proven",
            isospec::inequalities::Status::Conjecture => "conjecture",
        };
        let _ = writeln!(
            out,
            "  {:<32}  {:>16.10}  {:>16.10}  {:>11.3e}  {:>9.1e}  {:<10}  {:<24}  {}",
            r.id,
            r.lhs,
            r.rhs,
            r.margin,
            r.tolerance,
            status,
            verdict(r),
            r.citation
        );
    }
}

fn row(out: &mut String, name: &str, lhs: f64, rhs: f64, holds: bool) {
    let _ = writeln!(
        out,
        "  {:<36}  {:>18.12e}  {:>18.12e}  {}",
        name,
        lhs,
        rhs,
        if holds { "holds" } else { "FAILS" }
    );
}

/// Every compared quantity of a replay as (name, lhs, rhs, holds), read as lhs ≤ rhs.
pub fn replay_rows(p: &ProofReplay) -> Vec<(String, f64, f64, bool)> {
    let mut rows = vec![
        (
            "w_bound".to_string(),
            p.w_bound_violation,
            1e-10,
            p.w_bound_violation <= 1e-10,
        ),
        (
            "center_residual".to_string(),
            p.center.residual,
            CENTER_TOLERANCE,
            p.center.residual <= CENTER_TOLERANCE,
        ),
        (
            "rotation_defect".to_string(),
            p.rotation_defect,
            1e-12,
            p.rotation_defect <= 1e-12,
        ),
    ];
    for o in &p.orthogonality {
        rows.push((
            format!("orthogonality x{} u{}", o.i, o.j + 1),
            o.residual,
            ORTHOGONALITY_TOLERANCE,
            o.residual <= ORTHOGONALITY_TOLERANCE,
        ));
    }
    for g in &p.gaps {
        rows.push((format!("gap k={}", g.k), g.lhs, g.rhs, g.holds));
    }
    rows.push(("quotient".to_string(), p.quotient, p.quotient_bound, p.quotient_holds));
    for c in &p.chain {
        rows.push((c.name.clone(), c.lhs, c.rhs, c.holds));
    }
    // the final inequality is a lower bound on the gap sum
    rows.push(("final (rhs ≤ lhs)".to_string(), p.final_rhs, p.final_lhs, p.final_holds));
    rows
}

pub fn replay_table(out: &mut String, p: &ProofReplay) {
    let _ = writeln!(
        out,
        "{}  [n = {}, h = {}, {} nodes, tolerance {:.2e}]",
        p.shape, p.n, p.h, p.nodes, p.tolerance
    );
    let _ = writeln!(
        out,
        "  alpha {:.15}  beta {:.15}  gamma {:.12}",
        p.alpha, p.beta, p.gamma
    );
    let _ = writeln!(
        out,
        "  center {:?} from seed {:?} after {} iterations",
        p.center.point, p.center.seed, p.center.iterations
    );
    let _ = writeln!(out, "  moment matrix {:?}", p.moment_matrix);
    let _ = writeln!(
        out,
        "  rotation {:?}{}",
        p.rotation,
        if p.rank_deficient { " (rank deficient)" } else { "" }
    );
    for g in &p.gaps {
        let _ = writeln!(
            out,
            "  gap k={}: λ gap {:.12}, trial quotient {:.12}",
            g.k, g.gap, g.trial_quotient
        );
    }
    let _ = writeln!(out, "  {:<36}  {:>18}  {:>18}", "quantity", "lhs", "rhs");
    for (name, lhs, rhs, holds) in replay_rows(p) {
        row(out, &name, lhs, rhs, holds);
    }
    let _ = writeln!(
        out,
        "  final margin {:.6e}, report difference {:e}: {}",
        p.final_margin,
        p.report_difference,
        if p.all_hold {
            "all steps hold"
        } else {
            "SOME STEPS FAIL"
        }
    );
}

pub fn replay_csv_header(out: &mut String) {
    out.push_str("shape,quantity,lhs,rhs,holds\n");
}

pub fn replay_csv(out: &mut String, p: &ProofReplay) {
    let shape = p.shape.replace('"', "\"\"");
    for (name, lhs, rhs, holds) in replay_rows(p) {
        let _ = writeln!(out, "\"{shape}\",\"{name}\",{lhs:?},{rhs:?},{holds}");
    }
}
