use std::process::{Command, Output};

const COARSE: &str = "0.0625,0.03125";

fn isospec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isospec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn bessel_prints_the_first_zero() {
    let o = isospec(&["bessel", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2.404825557695773"), "{text}");
    assert!(text.contains("3.831705970207512"), "{text}");
}

#[test]
fn disk_check_flags_the_equality_cases() {
    let o = isospec(&["check", "--shape", "disk", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    for id in ["faber_krahn", "ppw_ratio", "gap_sum_first_n", "szego_weinberger"] {
        let r = records.iter().find(|r| r["id"] == id).unwrap();
        assert_eq!(r["equality"], true, "{id}");
        assert_eq!(r["satisfied"], true, "{id}");
    }
    assert!(records.iter().all(|r| r["satisfied"] == true));
}

#[test]
fn rectangle_csv_is_stable() {
    let args = [
        "check",
        "--shape",
        "rectangle",
        "--width",
        "1",
        "--height",
        "2",
        "--h",
        COARSE,
        "--format",
        "csv",
    ];
    let a = isospec(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let text = stdout(&a);
    assert_eq!(
        text.lines().next(),
        Some("id,shape,n,h_min,lhs,rhs,margin,satisfied,citation")
    );
    // Dirichlet battery plus the three Neumann checks on a rectangle
    assert_eq!(text.lines().count(), 1 + 12 + 3);
    assert_eq!(a.stdout, isospec(&args).stdout);
}

#[test]
fn config_file_runs_every_domain_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "[run]\nh = [0.05, 0.025]\nformat = \"jsonl\"\n\n\
         [[domain]]\nshape = \"lshape\"\nwidth = 1.0\nheight = 1.0\n\n\
         [[domain]]\nshape = \"ellipse\"\na = 1.0\nb = 0.6\ntheta = 0.5\n",
    )
    .unwrap();
    let path = config.to_str().unwrap();
    let o = isospec(&["eigs", "--config", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["domain"]["shape"], "lshape");
    assert_eq!(reports[1]["domain"]["theta"], 0.5);

    let out = dir.path().join("eigs.csv");
    let o = isospec(&[
        "eigs",
        "--config",
        path,
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 4);
}

#[test]
fn square_eigenvalues() {
    let o = isospec(&[
        "eigs",
        "--shape",
        "rectangle",
        "--width",
        "1",
        "--height",
        "1",
        "--h",
        COARSE,
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let first = text.lines().nth(1).unwrap();
    let value: f64 = first.split(',').nth(3).unwrap().parse().unwrap();
    let exact = 2.0 * std::f64::consts::PI.powi(2);
    assert!(((value - exact) / exact).abs() < 1e-3, "{value}");
}

#[test]
fn proofcheck_reports_every_step() {
    let o = isospec(&[
        "proofcheck",
        "--shape",
        "rectangle",
        "--width",
        "1",
        "--height",
        "1",
        "--h",
        COARSE,
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["all_hold"], true);
    assert_eq!(r["gaps"].as_array().unwrap().len(), 2);
    assert_eq!(r["report_difference"], 0.0);
    let csv = isospec(&[
        "proofcheck",
        "--shape",
        "rectangle",
        "--width",
        "1",
        "--height",
        "1",
        "--h",
        COARSE,
        "--format",
        "csv",
    ]);
    let text = stdout(&csv);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
}

#[test]
fn sweep_is_independent_of_the_job_count() {
    let run = |jobs: &str| {
        isospec(&[
            "sweep",
            "--family",
            "all",
            "--samples",
            "3",
            "--h",
            COARSE,
            "--seed",
            "11",
            "--jobs",
            jobs,
            "--format",
            "jsonl",
        ])
    };
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let records = json_lines(&a);
    let minima: Vec<_> = records.iter().filter(|r| r["record"] == "MINIMUM-MARGIN").collect();
    assert_eq!(minima.len(), 2);
    assert!(records
        .iter()
        .any(|r| r["shape"].as_str().unwrap().starts_with("polygon")));
    // a different seed draws different polygons
    let c = isospec(&[
        "sweep",
        "--family",
        "polygons",
        "--samples",
        "2",
        "--h",
        COARSE,
        "--seed",
        "12",
        "--format",
        "csv",
    ]);
    let d = isospec(&[
        "sweep",
        "--family",
        "polygons",
        "--samples",
        "2",
        "--h",
        COARSE,
        "--seed",
        "11",
        "--format",
        "csv",
    ]);
    assert_ne!(c.stdout, d.stdout);
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["frobnicate"],
        vec!["check"],
        vec!["check", "--shape", "rectangle", "--width", "1"],
        vec!["check", "--shape", "rectangle", "--width", "-1", "--height", "1"],
        vec!["check", "--shape", "disk", "--h", "0.01,0.02"],
        vec!["check", "--shape", "disk", "--k", "2"],
        vec!["eigs", "--shape", "ball", "--dim", "3", "--numeric-balls"],
        vec!["eigs", "--config", "/nonexistent/run.toml"],
    ] {
        let o = isospec(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(isospec(&["--help"]).status.code(), Some(0));
    assert_eq!(isospec(&["--version"]).status.code(), Some(0));
}

#[test]
fn higher_dimensional_balls_use_closed_forms() {
    let o = isospec(&[
        "check", "--shape", "ball", "--dim", "4", "--radius", "2", "--format", "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    let r = records.iter().find(|r| r["id"] == "gap_sum_first_n").unwrap();
    assert_eq!(r["n"], 4);
    assert_eq!(r["equality"], true);
}
