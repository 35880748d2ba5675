use crate::args::{Command, Family, Format, Kind};
use crate::config::Settings;
use crate::output::{self, json_line, CandidateRecord};
use crate::Failure;
use isospec::eigensolver::{
    analytic_spectrum, default_h_list, extrapolate_with, EigenReport, ProblemKind, SolverOptions,
};
use isospec::geometry::{DomainSpec, Shape};
use isospec::inequalities::{check_all, write_csv, InequalityReport};
use isospec::proofcheck::replay_gap_sum_bound;
use isospec::specfun::{bessel_prime_zero, bessel_zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 2;

/// Runs a subcommand and returns its exit code.
pub fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Bessel { order, k } => bessel(order, k),
        Command::Eigs { run, kind } => eigs(&Settings::resolve(&run)?, kind),
        Command::Check(run) => check(&Settings::resolve(&run)?),
        Command::Proofcheck(run) => proofcheck(&Settings::resolve(&run)?),
        Command::Sweep { run, family, samples } => sweep(&Settings::resolve(&run)?, family, samples),
    }
}

fn emit(s: &Settings, text: &str) -> Result<(), Failure> {
    match &s.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Maps `f` over `items` on `jobs` threads, keeping the input order.
fn map_ordered<T: Sync, R: Send>(
    items: &[T],
    jobs: Option<usize>,
    f: impl Fn(&T) -> R + Sync + Send,
) -> Result<Vec<R>, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

/// Prints a diagnostic for each failed domain and returns the exit code of
/// the first failure, if any.
fn report_failures<T>(domains: &[DomainSpec], results: &[Result<T, Failure>]) -> Option<u8> {
    let mut code = None;
    for (d, r) in domains.iter().zip(results) {
        if let Err(f) = r {
            f.print(Some(d));
            code.get_or_insert(f.exit_code());
        }
    }
    code
}

fn bessel(order: f64, k: usize) -> Result<u8, Failure> {
    let z = bessel_zero(order, k)?;
    let zp = bessel_prime_zero(order, k)?;
    println!("j_{{{order},{k}}}  = {z:.15}");
    println!("j'_{{{order},{k}}} = {zp:.15}");
    Ok(EXIT_OK)
}

fn spectrum(d: &DomainSpec, kind: &ProblemKind, k: usize, s: &Settings) -> Result<EigenReport, Failure> {
    if d.is_ball() && !s.numeric_balls {
        if let Some(values) = analytic_spectrum(d, kind, k) {
            return Ok(EigenReport::analytic(d, kind.name(), values?));
        }
    }
    let h = match &s.h {
        Some(h) => h.clone(),
        None => default_h_list(d)?,
    };
    let opts = SolverOptions {
        tol: s.tol,
        seed: s.seed,
    };
    Ok(extrapolate_with(d, kind, k, &h, &opts)?.0)
}

fn has_neumann(d: &DomainSpec, s: &Settings) -> bool {
    (d.is_ball() && !s.numeric_balls) || d.is_rectilinear()
}

fn eigs(s: &Settings, kind: Kind) -> Result<u8, Failure> {
    let domains = s.require_domains()?;
    let problem = match kind {
        Kind::Dirichlet => ProblemKind::Dirichlet,
        Kind::Neumann => ProblemKind::Neumann,
    };
    let results = map_ordered(domains, s.jobs, |d| spectrum(d, &problem, s.k_for(d.dimension())?, s))?;
    let mut out = String::new();
    if s.format == Format::Csv {
        output::spectrum_csv_header(&mut out);
    }
    for r in results.iter().flatten() {
        match s.format {
            Format::Table => output::spectrum_table(&mut out, r),
            Format::Csv => output::spectrum_csv(&mut out, r),
            Format::Jsonl => json_line(&mut out, r),
        }
    }
    emit(s, &out)?;
    Ok(report_failures(domains, &results).unwrap_or(EXIT_OK))
}

struct DomainCheck {
    dirichlet: EigenReport,
    neumann: Option<EigenReport>,
    reports: Vec<InequalityReport>,
}

fn check_domain(d: &DomainSpec, s: &Settings) -> Result<DomainCheck, Failure> {
    let k = s.k_for(d.dimension())?;
    let dirichlet = spectrum(d, &ProblemKind::Dirichlet, k, s)?;
    let neumann = if has_neumann(d, s) {
        Some(spectrum(d, &ProblemKind::Neumann, k, s)?)
    } else {
        None
    };
    let reports = check_all(&dirichlet, neumann.as_ref())?;
    Ok(DomainCheck {
        dirichlet,
        neumann,
        reports,
    })
}

/// Writes the reports of every successful check and returns whether any
/// proven inequality was violated.
fn write_checks(s: &Settings, checks: &[&DomainCheck], out: &mut String) -> Result<bool, Failure> {
    let all: Vec<&InequalityReport> = checks.iter().flat_map(|c| &c.reports).collect();
    match s.format {
        Format::Table => {
            for c in checks {
                let mut sources = vec![&c.dirichlet];
                sources.extend(&c.neumann);
                output::check_table(out, &sources, &c.reports);
            }
        }
        Format::Csv => {
            let owned: Vec<InequalityReport> = all.iter().map(|r| (*r).clone()).collect();
            let mut buf = Vec::new();
            write_csv(&owned, &mut buf)?;
            out.push_str(&String::from_utf8(buf).expect("csv output is utf-8"));
        }
        Format::Jsonl => {
            for r in &all {
                json_line(out, r);
            }
        }
    }
    for r in all.iter().filter(|r| r.is_counterexample_candidate()) {
        let record = CandidateRecord::new(r);
        match s.format {
            Format::Jsonl => json_line(out, &record),
            Format::Table => {
                let _ = writeln!(
                    out,
                    "COUNTEREXAMPLE-CANDIDATE {} on {}: margin {:.3e} beyond tolerance {:.1e}",
                    r.id, r.shape, r.margin, r.tolerance
                );
            }
            Format::Csv => eprintln!("{}", serde_json::to_string(&record).expect("record serializes")),
        }
    }
    Ok(all.iter().any(|r| r.is_violation()))
}

fn check(s: &Settings) -> Result<u8, Failure> {
    let domains = s.require_domains()?;
    let results = map_ordered(domains, s.jobs, |d| check_domain(d, s))?;
    let ok: Vec<&DomainCheck> = results.iter().flatten().collect();
    let mut out = String::new();
    let violation = write_checks(s, &ok, &mut out)?;
    emit(s, &out)?;
    let failure = report_failures(domains, &results);
    Ok(if violation {
        EXIT_VIOLATION
    } else {
        failure.unwrap_or(EXIT_OK)
    })
}

fn proofcheck(s: &Settings) -> Result<u8, Failure> {
    let domains = s.require_domains()?;
    let results = map_ordered(domains, s.jobs, |d| {
        let h = match (&s.h, &d.shape) {
            (Some(h), _) => h.clone(),
            // closed-form modes on a lattice pick their own spacing
            (None, Shape::Ball { dim, .. }) if *dim > 2 => Vec::new(),
            (None, _) => default_h_list(d)?,
        };
        Ok::<_, Failure>(replay_gap_sum_bound(d, &h)?)
    })?;
    let mut out = String::new();
    if s.format == Format::Csv {
        output::replay_csv_header(&mut out);
    }
    let mut violation = false;
    for p in results.iter().flatten() {
        violation |= !p.all_hold;
        match s.format {
            Format::Table => output::replay_table(&mut out, p),
            Format::Csv => output::replay_csv(&mut out, p),
            Format::Jsonl => json_line(&mut out, p),
        }
    }
    emit(s, &out)?;
    let failure = report_failures(domains, &results);
    Ok(if violation {
        EXIT_VIOLATION
    } else {
        failure.unwrap_or(EXIT_OK)
    })
}

fn rectangles(samples: usize) -> Vec<DomainSpec> {
    (0..samples)
        .map(|i| {
            let aspect = if samples == 1 {
                1.0
            } else {
                1.0 + 7.0 * i as f64 / (samples - 1) as f64
            };
            DomainSpec::rectangle(1.0, aspect)
        })
        .collect()
}

fn ellipses(samples: usize) -> Vec<DomainSpec> {
    (0..samples)
        .map(|i| {
            let e = if samples == 1 {
                0.0
            } else {
                0.9 * i as f64 / (samples - 1) as f64
            };
            DomainSpec::ellipse(1.0, (1.0 - e * e).sqrt())
        })
        .collect()
}

/// Star-shaped polygons about the origin: one vertex per angular sector with
/// jittered angle and radius, hence simple and counter-clockwise.
pub fn random_polygons(samples: usize, seed: u64) -> Vec<DomainSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let m: usize = rng.random_range(5..=9);
            let vertices = (0..m)
                .map(|j| {
                    let t = 2.0 * PI * (j as f64 + rng.random_range(-0.3..0.3)) / m as f64;
                    let r = rng.random_range(0.5..1.0);
                    [r * t.cos(), r * t.sin()]
                })
                .collect();
            DomainSpec::polygon(vertices)
        })
        .collect()
}

fn family_domains(family: Family, samples: Option<usize>, seed: u64) -> Vec<DomainSpec> {
    match family {
        Family::Rectangles => rectangles(samples.unwrap_or(15)),
        Family::Ellipses => ellipses(samples.unwrap_or(10)),
        Family::Polygons => random_polygons(samples.unwrap_or(8), seed),
        Family::All => {
            let mut all = family_domains(Family::Rectangles, samples, seed);
            all.extend(family_domains(Family::Ellipses, samples, seed));
            all.extend(family_domains(Family::Polygons, samples, seed));
            all
        }
    }
}

/// The two gap sums whose smallest margins a sweep highlights.
const HIGHLIGHT: [&str; 2] = ["gap_sum_first_n", "gap_sum_first_n_plus_1"];

#[derive(Serialize)]
struct MinimumRecord<'a> {
    record: &'static str,
    id: &'a str,
    index: usize,
    shape: &'a str,
    margin: f64,
}

fn sweep(s: &Settings, family: Family, samples: Option<usize>) -> Result<u8, Failure> {
    if samples == Some(0) {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let domains = if s.domains.is_empty() {
        family_domains(family, samples, s.seed)
    } else {
        s.domains.clone()
    };
    let results = map_ordered(&domains, s.jobs, |d| check_domain(d, s))?;

    let mut minima: Vec<Option<(usize, &InequalityReport)>> = vec![None; HIGHLIGHT.len()];
    for (i, c) in results.iter().enumerate() {
        let Ok(c) = c else { continue };
        for r in &c.reports {
            if let Some(slot) = HIGHLIGHT.iter().position(|id| *id == r.id) {
                if minima[slot].is_none_or(|(_, m)| r.margin < m.margin) {
                    minima[slot] = Some((i, r));
                }
            }
        }
    }

    let mut out = String::new();
    let ok: Vec<&DomainCheck> = results.iter().flatten().collect();
    let violation = match s.format {
        Format::Table => {
            let _ = writeln!(
                out,
                "{:>4}  {:<40}  {:>12}  {:<26}  {:>14}  {:>14}",
                "#", "shape", "min margin", "attained by", HIGHLIGHT[0], HIGHLIGHT[1]
            );
            for (i, c) in results.iter().enumerate() {
                let Ok(c) = c else {
                    let _ = writeln!(out, "{i:>4}  {:<40}  failed", domains[i].to_string());
                    continue;
                };
                let worst = c
                    .reports
                    .iter()
                    .filter(|r| !r.degenerate)
                    .min_by(|a, b| a.margin.total_cmp(&b.margin))
                    .expect("every check produces reports");
                let margin_of = |id: &str| c.reports.iter().find(|r| r.id == id).map_or(f64::NAN, |r| r.margin);
                let _ = writeln!(
                    out,
                    "{i:>4}  {:<40}  {:>12.4e}  {:<26}  {:>14.6e}  {:>14.6e}",
                    domains[i].to_string(),
                    worst.margin,
                    worst.id,
                    margin_of(HIGHLIGHT[0]),
                    margin_of(HIGHLIGHT[1])
                );
            }
            for (id, m) in HIGHLIGHT.iter().zip(&minima) {
                if let Some((i, r)) = m {
                    let _ = writeln!(out, "minimum {id} margin {:.6e} at #{i} {}", r.margin, r.shape);
                }
            }
            let flagged: Vec<&InequalityReport> = ok
                .iter()
                .flat_map(|c| &c.reports)
                .filter(|r| r.is_violation() || r.is_counterexample_candidate())
                .collect();
            for r in &flagged {
                let _ = writeln!(
                    out,
                    "{} {} on {}: margin {:.3e} beyond tolerance {:.1e}",
                    if r.is_violation() {
                        "VIOLATION"
                    } else {
                        "COUNTEREXAMPLE-CANDIDATE"
                    },
                    r.id,
                    r.shape,
                    r.margin,
                    r.tolerance
                );
            }
            flagged.iter().any(|r| r.is_violation())
        }
        _ => {
            let v = write_checks(s, &ok, &mut out)?;
            if s.format == Format::Jsonl {
                for (id, m) in HIGHLIGHT.iter().zip(&minima) {
                    if let Some((index, r)) = m {
                        json_line(
                            &mut out,
                            &MinimumRecord {
                                record: "MINIMUM-MARGIN",
                                id,
                                index: *index,
                                shape: &r.shape,
                                margin: r.margin,
                            },
                        );
                    }
                }
            }
            v
        }
    };
    emit(s, &out)?;
    let failure = report_failures(&domains, &results);
    Ok(if violation {
        EXIT_VIOLATION
    } else {
        failure.unwrap_or(EXIT_OK)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygons_are_valid_and_reproducible() {
        let a = random_polygons(20, 7);
        assert_eq!(a, random_polygons(20, 7));
        assert_ne!(a, random_polygons(20, 8));
        for d in &a {
            d.validate().unwrap();
        }
    }

    #[test]
    fn rectangle_family_spans_aspect_one_to_eight() {
        let r = rectangles(15);
        assert_eq!(r.first(), Some(&DomainSpec::rectangle(1.0, 1.0)));
        assert_eq!(r[1], DomainSpec::rectangle(1.0, 1.5));
        assert_eq!(r.last(), Some(&DomainSpec::rectangle(1.0, 8.0)));
    }
}
