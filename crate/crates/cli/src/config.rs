use crate::args::{DomainArgs, Format, RunArgs};
use crate::Failure;
use isospec::geometry::{DomainSpec, Placement, Shape};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    h: Option<Vec<f64>>,
    k: Option<usize>,
    tol: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    jobs: Option<usize>,
    #[serde(default)]
    numeric_balls: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    run: RunSection,
    #[serde(default)]
    domain: Vec<DomainSpec>,
}

/// Resolved settings: command-line flags override the config file.
#[derive(Debug, Clone)]
pub struct Settings {
    pub domains: Vec<DomainSpec>,
    pub h: Option<Vec<f64>>,
    pub k: Option<usize>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub numeric_balls: bool,
}

impl Settings {
    pub fn resolve(args: &RunArgs) -> Result<Self, Failure> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let domains = match domain_from_flags(&args.domain)? {
            Some(d) => vec![d],
            None => file.domain,
        };
        for d in &domains {
            d.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let s = Settings {
            domains,
            h: args.h.clone().or(file.run.h),
            k: args.k.or(file.run.k),
            tol: args.tol.or(file.run.tol).unwrap_or(1e-9),
            format: args.format.or(file.run.format).unwrap_or(Format::Table),
            out: args.out.clone().or(file.run.out),
            seed: args.seed.or(file.run.seed).unwrap_or(0),
            jobs: args.jobs.or(file.run.jobs),
            numeric_balls: args.numeric_balls || file.run.numeric_balls,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<(), Failure> {
        if let Some(h) = &self.h {
            if h.len() < 2 || h.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Failure::Usage("--h needs at least two positive spacings".into()));
            }
            if h.windows(2).any(|w| w[1] >= w[0]) {
                return Err(Failure::Usage("--h spacings must be strictly decreasing".into()));
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.jobs == Some(0) {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Eigenvalue count for a domain of dimension `n`: by default λ₁..λ_{n+2},
    /// the fewest the conjectured gap sum needs.
    pub fn k_for(&self, n: usize) -> Result<usize, Failure> {
        match self.k {
            None => Ok(n + 2),
            Some(k) if k >= n + 2 => Ok(k),
            Some(k) => Err(Failure::Usage(format!(
                "--k = {k} is too small: the checks need at least {} eigenvalues in dimension {n}",
                n + 2
            ))),
        }
    }

    pub fn require_domains(&self) -> Result<&[DomainSpec], Failure> {
        if self.domains.is_empty() {
            Err(Failure::Usage(
                "no domain given: use --shape or a config file with [[domain]] entries".into(),
            ))
        } else {
            Ok(&self.domains)
        }
    }
}

fn need(v: Option<f64>, flag: &str, shape: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--shape {shape} needs --{flag}")))
}

fn parse_vertices(text: &str) -> Result<Vec<[f64; 2]>, Failure> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let xy: Vec<&str> = p.split(',').collect();
            match xy.as_slice() {
                [x, y] => match (x.trim().parse(), y.trim().parse()) {
                    (Ok(x), Ok(y)) => Ok([x, y]),
                    _ => Err(Failure::Usage(format!("bad vertex {p:?}"))),
                },
                _ => Err(Failure::Usage(format!("bad vertex {p:?}, expected x,y"))),
            }
        })
        .collect()
}

pub fn domain_from_flags(a: &DomainArgs) -> Result<Option<DomainSpec>, Failure> {
    let Some(name) = a.shape.as_deref() else {
        return Ok(None);
    };
    let shape = match name {
        "disk" => Shape::Ball {
            dim: 2,
            radius: a.radius.unwrap_or(1.0),
        },
        "ball" => Shape::Ball {
            dim: a.dim.unwrap_or(2),
            radius: a.radius.unwrap_or(1.0),
        },
        "rectangle" => Shape::Rectangle {
            width: need(a.width, "width", name)?,
            height: need(a.height, "height", name)?,
        },
        "ellipse" => Shape::Ellipse {
            a: need(a.a, "a", name)?,
            b: need(a.b, "b", name)?,
        },
        "annulus" => Shape::Annulus {
            r_in: need(a.r_in, "r-in", name)?,
            r_out: need(a.r_out, "r-out", name)?,
        },
        "lshape" => Shape::LShape {
            width: need(a.width, "width", name)?,
            height: need(a.height, "height", name)?,
        },
        "stadium" => Shape::Stadium {
            length: need(a.length, "length", name)?,
            radius: need(a.radius, "radius", name)?,
        },
        "polygon" => Shape::Polygon {
            vertices: parse_vertices(
                a.vertices
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("--shape polygon needs --vertices".into()))?,
            )?,
        },
        other => return Err(Failure::Usage(format!("unknown shape {other:?}"))),
    };
    let placement = Placement {
        tx: a.tx.unwrap_or(0.0),
        ty: a.ty.unwrap_or(0.0),
        theta: a.theta.unwrap_or(0.0),
    };
    Ok(Some(DomainSpec::new(shape).with_placement(placement)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_parse() {
        let v = parse_vertices("0,0; 1,0;0.5,-1").unwrap();
        assert_eq!(v, vec![[0.0, 0.0], [1.0, 0.0], [0.5, -1.0]]);
        assert!(parse_vertices("0,0;1").is_err());
    }

    #[test]
    fn config_file_parses_domains() {
        let text = r#"
[run]
h = [0.1, 0.05]
format = "csv"

[[domain]]
shape = "rectangle"
width = 1.0
height = 2.0

[[domain]]
shape = "ellipse"
a = 1.0
b = 0.5
theta = 0.3
"#;
        let c: ConfigFile = toml::from_str(text).unwrap();
        assert_eq!(c.domain.len(), 2);
        assert_eq!(c.domain[0], DomainSpec::rectangle(1.0, 2.0));
        assert_eq!(c.domain[1].placement.theta, 0.3);
        assert_eq!(c.run.format, Some(Format::Csv));
        assert!(toml::from_str::<ConfigFile>("[run]\nbogus = 1").is_err());
    }
}
