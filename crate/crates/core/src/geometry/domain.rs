use super::polygon;
use crate::error::{Error, Result};
use crate::specfun::unit_ball_volume;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Shape parameters in the shape's local frame. Every shape except the
/// polygon is centred on the local origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// n-dimensional ball. Only `dim = 2` can be discretized.
    Ball {
        dim: usize,
        radius: f64,
    },
    Rectangle {
        width: f64,
        height: f64,
    },
    /// Semi-axes `a` (along x) and `b` (along y).
    Ellipse {
        a: f64,
        b: f64,
    },
    Annulus {
        r_in: f64,
        r_out: f64,
    },
    /// The `width × height` rectangle with its upper-right quarter removed;
    /// the reentrant corner sits at the origin.
    #[serde(rename = "lshape")]
    LShape {
        width: f64,
        height: f64,
    },
    /// A `length × 2·radius` rectangle capped by two half-disks.
    Stadium {
        length: f64,
        radius: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

/// Rigid motion applied after the local shape: rotate by `theta`, then translate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Placement {
    #[serde(default)]
    pub tx: f64,
    #[serde(default)]
    pub ty: f64,
    #[serde(default)]
    pub theta: f64,
}

impl Placement {
    pub fn translation(tx: f64, ty: f64) -> Self {
        Self { tx, ty, theta: 0.0 }
    }

    fn is_identity(&self) -> bool {
        self.tx == 0.0 && self.ty == 0.0 && self.theta == 0.0
    }

    fn to_local(self, p: [f64; 2]) -> [f64; 2] {
        let (dx, dy) = (p[0] - self.tx, p[1] - self.ty);
        if self.theta == 0.0 {
            return [dx, dy];
        }
        let (s, c) = self.theta.sin_cos();
        [c * dx + s * dy, -s * dx + c * dy]
    }

    fn to_world(self, p: [f64; 2]) -> [f64; 2] {
        if self.theta == 0.0 {
            return [p[0] + self.tx, p[1] + self.ty];
        }
        let (s, c) = self.theta.sin_cos();
        [c * p[0] - s * p[1] + self.tx, s * p[0] + c * p[1] + self.ty]
    }

    /// Rotation by a multiple of a right angle.
    fn is_axis_aligned(&self) -> bool {
        (2.0 * self.theta).sin().abs() < 1e-12
    }
}

/// A bounded domain: a shape together with its placement in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(flatten)]
    pub placement: Placement,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidDomain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl DomainSpec {
    pub fn new(shape: Shape) -> Self {
        Self {
            shape,
            placement: Placement::default(),
        }
    }

    pub fn with_placement(mut self, placement: Placement) -> Self {
        self.placement = placement;
        self
    }

    pub fn disk(radius: f64) -> Self {
        Self::new(Shape::Ball { dim: 2, radius })
    }

    pub fn ball(dim: usize, radius: f64) -> Self {
        Self::new(Shape::Ball { dim, radius })
    }

    pub fn rectangle(width: f64, height: f64) -> Self {
        Self::new(Shape::Rectangle { width, height })
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        Self::new(Shape::Ellipse { a, b })
    }

    pub fn annulus(r_in: f64, r_out: f64) -> Self {
        Self::new(Shape::Annulus { r_in, r_out })
    }

    pub fn lshape(width: f64, height: f64) -> Self {
        Self::new(Shape::LShape { width, height })
    }

    pub fn stadium(length: f64, radius: f64) -> Self {
        Self::new(Shape::Stadium { length, radius })
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Self {
        Self::new(Shape::Polygon { vertices })
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.placement;
        if !(p.tx.is_finite() && p.ty.is_finite() && p.theta.is_finite()) {
            return Err(Error::InvalidDomain("placement must be finite".into()));
        }
        match &self.shape {
            Shape::Ball { dim, radius } => {
                if *dim < 2 || *dim > crate::specfun::MAX_BALL_DIMENSION {
                    return Err(Error::InvalidDomain(format!("ball dimension {dim} outside 2..=50")));
                }
                if *dim > 2 && !p.is_identity() {
                    return Err(Error::InvalidDomain(
                        "placement is only supported for planar domains".into(),
                    ));
                }
                positive("radius", *radius)
            }
            Shape::Rectangle { width, height } => {
                positive("width", *width)?;
                positive("height", *height)
            }
            Shape::Ellipse { a, b } => {
                positive("a", *a)?;
                positive("b", *b)
            }
            Shape::Annulus { r_in, r_out } => {
                positive("r_in", *r_in)?;
                positive("r_out", *r_out)?;
                if r_in >= r_out {
                    return Err(Error::InvalidDomain(format!(
                        "annulus needs r_in < r_out, got {r_in} >= {r_out}"
                    )));
                }
                Ok(())
            }
            Shape::LShape { width, height } => {
                positive("width", *width)?;
                positive("height", *height)
            }
            Shape::Stadium { length, radius } => {
                positive("radius", *radius)?;
                if !(length.is_finite() && *length >= 0.0) {
                    return Err(Error::InvalidDomain(format!(
                        "stadium length must be non-negative, got {length}"
                    )));
                }
                Ok(())
            }
            Shape::Polygon { vertices } => {
                if vertices.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidDomain("polygon vertices must be finite".into()));
                }
                if !polygon::is_simple(vertices) {
                    return Err(Error::InvalidDomain("polygon is not simple".into()));
                }
                if polygon::signed_area(vertices).abs() <= 0.0 {
                    return Err(Error::InvalidDomain("polygon has zero area".into()));
                }
                Ok(())
            }
        }
    }

    /// Spatial dimension n.
    pub fn dimension(&self) -> usize {
        match self.shape {
            Shape::Ball { dim, .. } => dim,
            _ => 2,
        }
    }

    pub fn is_ball(&self) -> bool {
        matches!(self.shape, Shape::Ball { .. })
    }

    pub fn name(&self) -> &'static str {
        match self.shape {
            Shape::Ball { .. } => "ball",
            Shape::Rectangle { .. } => "rectangle",
            Shape::Ellipse { .. } => "ellipse",
            Shape::Annulus { .. } => "annulus",
            Shape::LShape { .. } => "lshape",
            Shape::Stadium { .. } => "stadium",
            Shape::Polygon { .. } => "polygon",
        }
    }

    /// |Ω|: area for planar shapes, n-volume for balls.
    pub fn volume(&self) -> Result<f64> {
        self.validate()?;
        Ok(match &self.shape {
            Shape::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
            Shape::Rectangle { width, height } => width * height,
            Shape::Ellipse { a, b } => PI * a * b,
            Shape::Annulus { r_in, r_out } => PI * (r_out * r_out - r_in * r_in),
            Shape::LShape { width, height } => 0.75 * width * height,
            Shape::Stadium { length, radius } => 2.0 * radius * length + PI * radius * radius,
            Shape::Polygon { vertices } => polygon::signed_area(vertices).abs(),
        })
    }

    /// Boundary measure (perimeter in the plane, surface area for balls).
    pub fn perimeter(&self) -> Result<f64> {
        self.validate()?;
        Ok(match &self.shape {
            Shape::Ball { dim, radius } => *dim as f64 * unit_ball_volume(*dim) * radius.powi(*dim as i32 - 1),
            Shape::Rectangle { width, height } => 2.0 * (width + height),
            Shape::Ellipse { a, b } => {
                // Ramanujan's second approximation
                let h = ((a - b) / (a + b)).powi(2);
                PI * (a + b) * (1.0 + 3.0 * h / (10.0 + (4.0 - 3.0 * h).sqrt()))
            }
            Shape::Annulus { r_in, r_out } => 2.0 * PI * (r_in + r_out),
            Shape::LShape { width, height } => 2.0 * (width + height),
            Shape::Stadium { length, radius } => 2.0 * length + 2.0 * PI * radius,
            Shape::Polygon { vertices } => polygon::perimeter(vertices),
        })
    }

    /// Radius of the largest inscribed disk; for polygons the lower estimate
    /// area / perimeter is used.
    pub fn inradius(&self) -> Result<f64> {
        self.validate()?;
        Ok(match &self.shape {
            Shape::Ball { radius, .. } => *radius,
            Shape::Rectangle { width, height } => 0.5 * width.min(*height),
            Shape::Ellipse { a, b } => a.min(*b),
            Shape::Annulus { r_in, r_out } => 0.5 * (r_out - r_in),
            Shape::LShape { width, height } => 0.25 * width.min(*height),
            Shape::Stadium { radius, .. } => *radius,
            Shape::Polygon { .. } => self.volume()? / self.perimeter()?,
        })
    }

    fn contains_local(&self, p: [f64; 2]) -> bool {
        let [x, y] = p;
        match &self.shape {
            Shape::Ball { radius, .. } => x * x + y * y < radius * radius,
            Shape::Rectangle { width, height } => x.abs() < 0.5 * width && y.abs() < 0.5 * height,
            Shape::Ellipse { a, b } => (x / a).powi(2) + (y / b).powi(2) < 1.0,
            Shape::Annulus { r_in, r_out } => {
                let r2 = x * x + y * y;
                r2 > r_in * r_in && r2 < r_out * r_out
            }
            Shape::LShape { width, height } => {
                x.abs() < 0.5 * width && y.abs() < 0.5 * height && !(x >= 0.0 && y >= 0.0)
            }
            Shape::Stadium { length, radius } => {
                let ex = (x.abs() - 0.5 * length).max(0.0);
                ex * ex + y * y < radius * radius
            }
            Shape::Polygon { vertices } => polygon::contains(vertices, p),
        }
    }

    /// Open-set membership: boundary points are outside.
    ///
    /// Points must have `dimension()` coordinates.
    pub fn contains(&self, x: &[f64]) -> bool {
        if let Shape::Ball { dim, radius } = self.shape {
            if dim != 2 {
                return x.len() == dim && x.iter().map(|v| v * v).sum::<f64>() < radius * radius;
            }
        }
        if x.len() != 2 {
            return false;
        }
        self.contains_local(self.placement.to_local([x[0], x[1]]))
    }

    /// Membership with a clearance: `x` is inside and so are its axis
    /// neighbours at distance `eps`.
    pub(crate) fn contains_with_clearance(&self, x: [f64; 2], eps: f64) -> bool {
        self.contains(&x)
            && [[eps, 0.0], [-eps, 0.0], [0.0, eps], [0.0, -eps]]
                .iter()
                .all(|d| self.contains(&[x[0] + d[0], x[1] + d[1]]))
    }

    fn local_bounds(&self) -> ([f64; 2], [f64; 2]) {
        match &self.shape {
            Shape::Ball { radius, .. } => ([-radius, -radius], [*radius, *radius]),
            Shape::Rectangle { width, height } | Shape::LShape { width, height } => {
                ([-0.5 * width, -0.5 * height], [0.5 * width, 0.5 * height])
            }
            Shape::Ellipse { a, b } => ([-a, -b], [*a, *b]),
            Shape::Annulus { r_out, .. } => ([-r_out, -r_out], [*r_out, *r_out]),
            Shape::Stadium { length, radius } => {
                let hx = 0.5 * length + radius;
                ([-hx, -radius], [hx, *radius])
            }
            Shape::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Axis-aligned bounding box of the placed planar domain.
    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let (lo, hi) = self.local_bounds();
        if self.placement.theta == 0.0 {
            return (self.placement.to_world(lo), self.placement.to_world(hi));
        }
        let corners = [[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
        let mut wlo = [f64::INFINITY; 2];
        let mut whi = [f64::NEG_INFINITY; 2];
        for c in corners {
            let w = self.placement.to_world(c);
            for k in 0..2 {
                wlo[k] = wlo[k].min(w[k]);
                whi[k] = whi[k].max(w[k]);
            }
        }
        (wlo, whi)
    }

    /// Rectangles and L-shapes placed with a right-angle rotation.
    pub fn is_rectilinear(&self) -> bool {
        matches!(self.shape, Shape::Rectangle { .. } | Shape::LShape { .. }) && self.placement.is_axis_aligned()
    }

    /// The ball with the same volume (and dimension), centred at the placement translation.
    pub fn equal_volume_ball(&self) -> Result<DomainSpec> {
        if self.is_ball() {
            self.validate()?;
            return Ok(self.clone());
        }
        let n = self.dimension();
        let radius = (self.volume()? / unit_ball_volume(n)).powf(1.0 / n as f64);
        Ok(DomainSpec {
            shape: Shape::Ball { dim: n, radius },
            placement: Placement::translation(self.placement.tx, self.placement.ty),
        })
    }

    /// The image under x -> s·x (shape and translation both scaled).
    pub fn scaled(&self, s: f64) -> DomainSpec {
        let shape = match &self.shape {
            Shape::Ball { dim, radius } => Shape::Ball {
                dim: *dim,
                radius: s * radius,
            },
            Shape::Rectangle { width, height } => Shape::Rectangle {
                width: s * width,
                height: s * height,
            },
            Shape::Ellipse { a, b } => Shape::Ellipse { a: s * a, b: s * b },
            Shape::Annulus { r_in, r_out } => Shape::Annulus {
                r_in: s * r_in,
                r_out: s * r_out,
            },
            Shape::LShape { width, height } => Shape::LShape {
                width: s * width,
                height: s * height,
            },
            Shape::Stadium { length, radius } => Shape::Stadium {
                length: s * length,
                radius: s * radius,
            },
            Shape::Polygon { vertices } => Shape::Polygon {
                vertices: vertices.iter().map(|v| [s * v[0], s * v[1]]).collect(),
            },
        };
        DomainSpec {
            shape,
            placement: Placement {
                tx: s * self.placement.tx,
                ty: s * self.placement.ty,
                theta: self.placement.theta,
            },
        }
    }

    /// Key-value text form (TOML).
    pub fn to_kv_string(&self) -> String {
        toml::to_string(self).expect("domain specs always serialize")
    }

    pub fn from_kv_str(text: &str) -> Result<DomainSpec> {
        let spec: DomainSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Ball { dim, radius } => write!(f, "ball(n={dim}, r={radius})")?,
            Shape::Rectangle { width, height } => write!(f, "rectangle({width}x{height})")?,
            Shape::Ellipse { a, b } => write!(f, "ellipse(a={a}, b={b})")?,
            Shape::Annulus { r_in, r_out } => write!(f, "annulus({r_in}, {r_out})")?,
            Shape::LShape { width, height } => write!(f, "lshape({width}x{height})")?,
            Shape::Stadium { length, radius } => write!(f, "stadium(L={length}, R={radius})")?,
            Shape::Polygon { vertices } => write!(f, "polygon({} vertices)", vertices.len())?,
        }
        if !self.placement.is_identity() {
            let p = self.placement;
            write!(f, "@({}, {}; {})", p.tx, p.ty, p.theta)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        assert!((DomainSpec::disk(1.0).volume().unwrap() - PI).abs() < 1e-15);
        assert_eq!(DomainSpec::rectangle(1.0, 1.0).volume().unwrap(), 1.0);
        assert!((DomainSpec::annulus(1.0, 2.0).volume().unwrap() - 3.0 * PI).abs() < 1e-14);
        assert!((DomainSpec::ball(3, 1.0).volume().unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((DomainSpec::stadium(2.0, 1.0).volume().unwrap() - (4.0 + PI)).abs() < 1e-14);
        let tri = DomainSpec::polygon(vec![[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]]);
        assert!((tri.volume().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equal_volume_balls() {
        let b = DomainSpec::rectangle(1.0, 1.0).equal_volume_ball().unwrap();
        match b.shape {
            Shape::Ball { dim: 2, radius } => assert!((radius - 1.0 / PI.sqrt()).abs() < 1e-15),
            _ => panic!(),
        }
        let e = DomainSpec::ellipse(2.0, 1.0).equal_volume_ball().unwrap();
        match e.shape {
            Shape::Ball { radius, .. } => assert!((radius - 2f64.sqrt()).abs() < 1e-15),
            _ => panic!(),
        }
        let d = DomainSpec::disk(0.7);
        assert_eq!(d.equal_volume_ball().unwrap(), d);
        assert_eq!(d.equal_volume_ball().unwrap().equal_volume_ball().unwrap(), d);
    }

    #[test]
    fn open_domain_membership() {
        let d = DomainSpec::disk(1.0);
        assert!(d.contains(&[0.0, 0.0]));
        assert!(!d.contains(&[1.0, 0.0]));
        let l = DomainSpec::lshape(1.0, 1.0);
        assert!(l.contains(&[-0.25, 0.25]));
        assert!(!l.contains(&[0.1, 0.1]));
        assert!(!l.contains(&[0.0, 0.2]));
        let a = DomainSpec::annulus(1.0, 2.0);
        assert!(!a.contains(&[0.5, 0.0]));
        assert!(a.contains(&[1.5, 0.0]));
        let s = DomainSpec::stadium(2.0, 0.5);
        assert!(s.contains(&[1.3, 0.0]));
        assert!(!s.contains(&[1.3, 0.45]));
    }

    #[test]
    fn placement_moves_the_domain() {
        let d = DomainSpec::rectangle(2.0, 1.0).with_placement(Placement {
            tx: 1.0,
            ty: -1.0,
            theta: std::f64::consts::FRAC_PI_2,
        });
        // rotated a quarter turn: now 1 wide and 2 tall, centred at (1, -1)
        assert!(d.contains(&[1.0, -0.2]));
        assert!(!d.contains(&[1.7, -1.0]));
        let (lo, hi) = d.bounding_box();
        assert!((lo[0] - 0.5).abs() < 1e-12 && (hi[1] - 0.0).abs() < 1e-12);
        assert!(d.is_rectilinear());
    }

    #[test]
    fn validation() {
        assert!(DomainSpec::annulus(2.0, 1.0).validate().is_err());
        assert!(DomainSpec::rectangle(-1.0, 1.0).validate().is_err());
        assert!(
            DomainSpec::polygon(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
                .validate()
                .is_err()
        );
        assert!(DomainSpec::ball(1, 1.0).validate().is_err());
    }

    #[test]
    fn kv_text_round_trip() {
        let d = DomainSpec::polygon(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
            .with_placement(Placement::translation(0.5, 0.25));
        let text = d.to_kv_string();
        assert!(text.contains("shape = \"polygon\""), "{text}");
        assert_eq!(DomainSpec::from_kv_str(&text).unwrap(), d);
        let parsed = DomainSpec::from_kv_str("shape = \"ellipse\"\na = 2.0\nb = 1.0\n").unwrap();
        assert_eq!(parsed, DomainSpec::ellipse(2.0, 1.0));
        assert!(DomainSpec::from_kv_str("shape = \"annulus\"\nr_in = 3.0\nr_out = 1.0\n").is_err());
    }
}
