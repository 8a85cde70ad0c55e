//! Norm evaluation and unit-circle geometry for Euclidean, L_p, and
//! centrally-symmetric polygonal norms.
//!
//! The unit circle of a polygonal norm is the polygon itself; line-circle
//! intersections and support lines for L1 and L-infinity are routed through
//! the same exact polygon machinery (diamond and square respectively).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::{Line, Point2, Segment};

/// Membership band for "on the unit circle": `| ||p|| - 1 | <= EPS_ON`.
pub const EPS_ON: f64 = 1e-9;

/// The plane's norm: Euclidean, an L_p norm (`p >= 1`, `p = inf` allowed), or
/// the gauge of a centrally-symmetric convex polygon.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    Euclidean,
    Lp(f64),
    Polygon(PolygonBall),
}

/// Unit ball of a polygonal norm with the precomputed angular fan used for
/// O(log n) gauge evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonBall {
    vertices: Vec<Point2>,
    angles: Vec<f64>,
}

impl PolygonBall {
    /// Validates and normalizes a vertex list: even count >= 4, strictly
    /// convex, counterclockwise, centrally symmetric, origin strictly inside.
    /// The list is rotated so vertex angles ascend, which the gauge's binary
    /// search relies on.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidNorm(format!(
                "polygon needs an even vertex count >= 4, got {n}"
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidNorm("polygon vertices must be finite".into()));
        }
        let scale = vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(0.0_f64, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidNorm("polygon is a single point".into()));
        }
        let half = n / 2;
        for i in 0..half {
            let sum = vertices[i] + vertices[i + half];
            if sum.x.abs() > 1e-12 * scale.max(1.0) || sum.y.abs() > 1e-12 * scale.max(1.0) {
                return Err(Error::InvalidNorm(format!(
                    "polygon is not centrally symmetric at vertex {i}"
                )));
            }
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let turn = (b - a).cross(c - b);
            if turn <= 1e-12 * scale * scale {
                return Err(Error::InvalidNorm(format!(
                    "polygon is not strictly convex counterclockwise at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            if a.cross(b) <= 0.0 {
                return Err(Error::InvalidNorm(
                    "origin is not strictly inside the polygon".into(),
                ));
            }
        }
        // Rotate so angles ascend; central symmetry and orientation survive.
        let start = (0..n)
            .min_by(|&i, &j| {
                let ai = vertices[i].y.atan2(vertices[i].x);
                let aj = vertices[j].y.atan2(vertices[j].x);
                ai.total_cmp(&aj)
            })
            .unwrap();
        let rotated: Vec<Point2> = (0..n).map(|i| vertices[(start + i) % n]).collect();
        let angles: Vec<f64> = rotated.iter().map(|v| v.y.atan2(v.x)).collect();
        debug_assert!(angles.windows(2).all(|w| w[0] < w[1]));
        Ok(Self { vertices: rotated, angles })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Minkowski gauge of `v`: the factor by which the polygon must be scaled
    /// for `v` to land on its boundary.
    pub fn gauge(&self, v: Point2) -> f64 {
        if v.x == 0.0 && v.y == 0.0 {
            return 0.0;
        }
        let (a, b) = self.sector(v);
        let e = b - a;
        v.cross(e) / a.cross(b)
    }

    /// Edge `(v_i, v_{i+1})` of the angular sector containing direction `v`.
    fn sector(&self, v: Point2) -> (Point2, Point2) {
        let n = self.vertices.len();
        let i = self.sector_index(v);
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub(crate) fn sector_index(&self, v: Point2) -> usize {
        let theta = v.y.atan2(v.x);
        let pos = self.angles.partition_point(|&a| a <= theta);
        if pos == 0 {
            self.vertices.len() - 1
        } else {
            pos - 1
        }
    }

    /// Gradient of the gauge anywhere inside sector `i`.
    pub(crate) fn sector_gradient(&self, i: usize) -> Point2 {
        let n = self.vertices.len();
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % n];
        let e = b - a;
        Point2::new(e.y, -e.x).scale(1.0 / a.cross(b))
    }
}

impl NormSpec {
    pub fn euclidean() -> Self {
        NormSpec::Euclidean
    }

    pub fn lp(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidNorm(format!("lp exponent must be >= 1, got {p}")));
        }
        Ok(NormSpec::Lp(p))
    }

    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        Ok(NormSpec::Polygon(PolygonBall::new(vertices)?))
    }

    /// Evaluates the norm of `v`.
    pub fn eval(&self, v: Point2) -> f64 {
        let (ax, ay) = (v.x.abs(), v.y.abs());
        match self {
            NormSpec::Euclidean => ax.hypot(ay),
            NormSpec::Lp(p) => {
                if *p == 1.0 {
                    ax + ay
                } else if p.is_infinite() {
                    ax.max(ay)
                } else if *p == 2.0 {
                    ax.hypot(ay)
                } else if *p == 3.0 {
                    (ax * ax * ax + ay * ay * ay).cbrt()
                } else if *p == 1.5 {
                    let s = ax * ax.sqrt() + ay * ay.sqrt();
                    let c = s.cbrt();
                    c * c
                } else {
                    // Rescale by the max coordinate to dodge overflow for
                    // large p.
                    let m = ax.max(ay);
                    if m == 0.0 {
                        return 0.0;
                    }
                    m * ((ax / m).powf(*p) + (ay / m).powf(*p)).powf(1.0 / *p)
                }
            }
            NormSpec::Polygon(ball) => ball.gauge(v),
        }
    }

    pub fn distance(&self, a: Point2, b: Point2) -> f64 {
        self.eval(a - b)
    }

    /// The boundary point of the unit ball in direction `theta`.
    pub fn unit_point(&self, theta: f64) -> Point2 {
        let d = Point2::new(theta.cos(), theta.sin());
        d.scale(1.0 / self.eval(d))
    }

    /// A (sub)gradient of the norm at `v != 0`. Exact on smooth norms and in
    /// the interior of each linearity region of polyhedral norms; at kinks an
    /// arbitrary active piece is chosen.
    pub fn gradient(&self, v: Point2) -> Point2 {
        match self {
            NormSpec::Euclidean => v.scale(1.0 / v.hypot()),
            NormSpec::Lp(p) => {
                if *p == 1.0 {
                    Point2::new(v.x.signum(), v.y.signum())
                } else if p.is_infinite() {
                    if v.x.abs() >= v.y.abs() {
                        Point2::new(v.x.signum(), 0.0)
                    } else {
                        Point2::new(0.0, v.y.signum())
                    }
                } else if *p == 2.0 {
                    v.scale(1.0 / v.hypot())
                } else {
                    let n = self.eval(v);
                    let f = |c: f64| c.signum() * (c.abs() / n).powf(*p - 1.0);
                    Point2::new(f(v.x), f(v.y))
                }
            }
            NormSpec::Polygon(ball) => {
                let (a, b) = ball.sector(v);
                let e = b - a;
                Point2::new(e.y, -e.x).scale(1.0 / a.cross(b))
            }
        }
    }

    /// Canonical textual key; distinct norms stay distinct, so the key is
    /// safe to hash for seed derivation and report merging.
    pub fn stable_key(&self) -> String {
        match self {
            NormSpec::Euclidean => "euclidean".to_string(),
            NormSpec::Lp(p) if p.is_infinite() => "lp:inf".to_string(),
            NormSpec::Lp(p) => format!("lp:{p}"),
            NormSpec::Polygon(ball) => {
                let mut key = String::from("polygon:");
                for v in ball.vertices() {
                    key.push_str(&format!("{},{};", v.x, v.y));
                }
                key
            }
        }
    }

    /// True for norms whose unit circle contains no segment.
    pub fn is_strictly_convex(&self) -> bool {
        match self {
            NormSpec::Euclidean => true,
            NormSpec::Lp(p) => *p > 1.0 && p.is_finite(),
            NormSpec::Polygon(_) => false,
        }
    }

    /// Polygon model of the unit ball where one exists (L1, L-infinity, and
    /// explicit polygons).
    pub(crate) fn as_polygon(&self) -> Option<PolygonBall> {
        match self {
            NormSpec::Polygon(ball) => Some(ball.clone()),
            NormSpec::Lp(p) if *p == 1.0 => Some(
                PolygonBall::new(vec![
                    Point2::new(1.0, 0.0),
                    Point2::new(0.0, 1.0),
                    Point2::new(-1.0, 0.0),
                    Point2::new(0.0, -1.0),
                ])
                .expect("diamond is a valid ball"),
            ),
            NormSpec::Lp(p) if p.is_infinite() => Some(
                PolygonBall::new(vec![
                    Point2::new(1.0, 1.0),
                    Point2::new(-1.0, 1.0),
                    Point2::new(-1.0, -1.0),
                    Point2::new(1.0, -1.0),
                ])
                .expect("square is a valid ball"),
            ),
            _ => None,
        }
    }

    /// All intersections of a line with the unit circle.
    pub fn unit_circle_line_intersections(&self, line: &Line) -> LineCircleIntersection {
        if let Some(ball) = self.as_polygon() {
            return polygon_line_intersections(&ball, line);
        }
        smooth_line_intersections(self, line)
    }

    /// Whether the line through `boundary_point` with `direction` supports
    /// the unit disc (touches it only along the boundary, whole disc in one
    /// closed half-plane).
    pub fn support_line_exists(&self, boundary_point: Point2, direction: Point2) -> Result<bool> {
        let dev = (self.eval(boundary_point) - 1.0).abs();
        if dev > EPS_ON {
            return Err(Error::NotOnUnitCircle(dev));
        }
        if direction == Point2::ZERO {
            return Err(Error::InvalidInput("support direction must be nonzero".into()));
        }
        if let Some(ball) = self.as_polygon() {
            // Half-plane test over the vertices.
            let mut pos = false;
            let mut neg = false;
            for &v in ball.vertices() {
                let rel = v - boundary_point;
                let s = direction.cross(rel);
                let thr = 1e-9 * direction.hypot() * rel.hypot();
                if s > thr {
                    pos = true;
                } else if s < -thr {
                    neg = true;
                }
            }
            return Ok(!(pos && neg));
        }
        // Smooth and strictly convex: the support line at a boundary point is
        // the unique tangent, orthogonal to the outward normal.
        let n = match self {
            NormSpec::Euclidean => boundary_point,
            NormSpec::Lp(p) => {
                let f = |c: f64| c.signum() * c.abs().powf(*p - 1.0);
                Point2::new(f(boundary_point.x), f(boundary_point.y))
            }
            NormSpec::Polygon(_) => unreachable!(),
        };
        Ok(n.dot(direction).abs() <= 1e-9 * n.hypot() * direction.hypot())
    }
}

/// Intersection of a line with the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub enum LineCircleIntersection {
    Empty,
    /// One (tangency) or two proper intersection points, ordered along the
    /// line.
    Points(Vec<Point2>),
    /// The line contains a full edge of a polygonal unit circle.
    EdgeSegment(Segment),
}

impl LineCircleIntersection {
    pub fn points(&self) -> &[Point2] {
        match self {
            LineCircleIntersection::Points(p) => p,
            _ => &[],
        }
    }
}

fn polygon_line_intersections(ball: &PolygonBall, line: &Line) -> LineCircleIntersection {
    let verts = ball.vertices();
    let n = verts.len();
    let d = line.dir;
    let mut hits: Vec<(f64, Point2)> = Vec::new();
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        let e = b - a;
        let denom = d.cross(e);
        let rel = a - line.base;
        if denom.abs() <= 1e-14 * d.hypot() * e.hypot() {
            // Parallel; collinear means the line carries this whole edge.
            if rel.cross(e).abs() <= 1e-12 * rel.hypot().max(e.hypot()) * e.hypot() {
                return LineCircleIntersection::EdgeSegment(
                    Segment::new(a, b).expect("polygon edges are non-degenerate"),
                );
            }
            continue;
        }
        let s = rel.cross(d) / denom;
        if !(-1e-9..=1.0 + 1e-9).contains(&s) {
            continue;
        }
        let p = a + e * s.clamp(0.0, 1.0);
        let t = if d.x.abs() >= d.y.abs() {
            (p.x - line.base.x) / d.x
        } else {
            (p.y - line.base.y) / d.y
        };
        hits.push((t, p));
    }
    hits.sort_by(|u, v| u.0.total_cmp(&v.0));
    // Collapse duplicates from a vertex shared by adjacent edges.
    let mut out: Vec<Point2> = Vec::new();
    for (_, p) in hits {
        if out.iter().all(|q| (*q - p).hypot() > 1e-9) {
            out.push(p);
        }
    }
    if out.is_empty() {
        LineCircleIntersection::Empty
    } else {
        LineCircleIntersection::Points(out)
    }
}

/// Intersections for strictly convex norms: closed form for Euclidean,
/// convexity-driven ternary search plus bisection for general L_p.
fn smooth_line_intersections(norm: &NormSpec, line: &Line) -> LineCircleIntersection {
    if matches!(norm, NormSpec::Euclidean | NormSpec::Lp(2.0)) {
        let b = line.base;
        let d = line.dir;
        let qa = d.dot(d);
        let qb = 2.0 * b.dot(d);
        let qc = b.dot(b) - 1.0;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return LineCircleIntersection::Empty;
        }
        let sq = disc.sqrt();
        let t1 = (-qb - sq) / (2.0 * qa);
        let t2 = (-qb + sq) / (2.0 * qa);
        let p1 = line.at(t1);
        let p2 = line.at(t2);
        if (p1 - p2).hypot() <= 1e-12 {
            return LineCircleIntersection::Points(vec![p1]);
        }
        return LineCircleIntersection::Points(vec![p1, p2]);
    }

    // g(t) = ||base + t dir|| is convex with at most two unit-level crossings.
    let g = |t: f64| norm.eval(line.at(t));
    let dn = norm.eval(line.dir);
    let bracket = (1.0 + norm.eval(line.base)) / dn + 1.0;
    let (mut lo, mut hi) = (-bracket, bracket);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-14 * bracket {
            break;
        }
    }
    let tmin = 0.5 * (lo + hi);
    let gmin = g(tmin);
    if gmin > 1.0 + 1e-12 {
        return LineCircleIntersection::Empty;
    }
    if gmin > 1.0 - 1e-12 {
        return LineCircleIntersection::Points(vec![line.at(tmin)]);
    }
    let mut roots = Vec::with_capacity(2);
    for (mut a, mut b) in [(-bracket, tmin), (tmin, bracket)] {
        // g - 1 changes sign exactly once on each monotone side.
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if (b - a).abs() < 1e-15 * bracket.max(1.0) {
                break;
            }
            let inside = g(mid) < 1.0;
            let left_outside = g(a) > 1.0;
            if inside == left_outside {
                b = mid;
            } else {
                a = mid;
            }
        }
        roots.push(line.at(0.5 * (a + b)));
    }
    LineCircleIntersection::Points(roots)
}

/// A circle `center + radius * C` of the plane's norm.
#[derive(Debug, Clone, Copy)]
pub struct MinkCircle<'a> {
    pub center: Point2,
    pub radius: f64,
    pub norm: &'a NormSpec,
}

impl<'a> MinkCircle<'a> {
    pub fn new(norm: &'a NormSpec, center: Point2, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "circle radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { center, radius, norm })
    }

    /// Boundary membership: `| ||w - center|| - radius | <= tol * max(1, radius)`.
    pub fn contains(&self, w: Point2, tol: f64) -> bool {
        (self.norm.distance(w, self.center) - self.radius).abs() <= tol * self.radius.max(1.0)
    }

    /// Signed deviation of `w` from the boundary, relative to the radius.
    pub fn boundary_deviation(&self, w: Point2) -> f64 {
        (self.norm.distance(w, self.center) - self.radius).abs() / self.radius
    }
}

/// A chord of the unit circle of a given norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub p: Point2,
    pub q: Point2,
}

impl Chord {
    pub fn new(norm: &NormSpec, p: Point2, q: Point2) -> Result<Self> {
        for (label, pt) in [("p", p), ("q", q)] {
            let dev = (norm.eval(pt) - 1.0).abs();
            if dev > EPS_ON {
                return Err(Error::InvalidInput(format!(
                    "chord endpoint {label} is off the unit circle by {dev:.3e}"
                )));
            }
        }
        if (p - q).hypot() <= EPS_ON {
            return Err(Error::InvalidInput("chord endpoints must be distinct".into()));
        }
        Ok(Self { p, q })
    }

    pub fn direction(&self) -> Point2 {
        self.q - self.p
    }
}

// -- JSON encoding -----------------------------------------------------------
//
// {"kind":"euclidean"} | {"kind":"lp","p":number|"inf"} |
// {"kind":"polygon","vertices":[[x,y],...]}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NormSpecWire {
    Euclidean,
    Lp { p: LpExponent },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LpExponent {
    Finite(f64),
    Named(String),
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match self {
            NormSpec::Euclidean => NormSpecWire::Euclidean,
            NormSpec::Lp(p) => NormSpecWire::Lp {
                p: if p.is_infinite() {
                    LpExponent::Named("inf".into())
                } else {
                    LpExponent::Finite(*p)
                },
            },
            NormSpec::Polygon(ball) => NormSpecWire::Polygon {
                vertices: ball.vertices().iter().map(|&v| v.into()).collect(),
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = NormSpecWire::deserialize(deserializer)?;
        let spec = match wire {
            NormSpecWire::Euclidean => NormSpec::Euclidean,
            NormSpecWire::Lp { p } => {
                let p = match p {
                    LpExponent::Finite(v) => v,
                    LpExponent::Named(s) if s == "inf" => f64::INFINITY,
                    LpExponent::Named(s) => {
                        return Err(D::Error::custom(format!("unknown lp exponent {s:?}")))
                    }
                };
                NormSpec::lp(p).map_err(D::Error::custom)?
            }
            NormSpecWire::Polygon { vertices } => {
                NormSpec::polygon(vertices.into_iter().map(Point2::from).collect())
                    .map_err(D::Error::custom)?
            }
        };
        Ok(spec)
    }
}

/// Human-oriented short label, used in CLI summaries and test output.
impl std::fmt::Display for NormSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormSpec::Euclidean => write!(f, "euclidean"),
            NormSpec::Lp(p) if p.is_infinite() => write!(f, "linf"),
            NormSpec::Lp(p) => write!(f, "lp({p})"),
            NormSpec::Polygon(ball) => write!(f, "polygon({}gon)", ball.vertices().len()),
        }
    }
}

/// The unit square as a polygon ball, handy in tests and figures.
pub fn square_ball() -> NormSpec {
    NormSpec::polygon(vec![
        Point2::new(1.0, 1.0),
        Point2::new(-1.0, 1.0),
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, -1.0),
    ])
    .expect("square is valid")
}

/// Regular hexagon ball with a vertex at (1, 0).
pub fn regular_hexagon_ball() -> NormSpec {
    let h = 3.0_f64.sqrt() / 2.0;
    NormSpec::polygon(vec![
        Point2::new(1.0, 0.0),
        Point2::new(0.5, h),
        Point2::new(-0.5, h),
        Point2::new(-1.0, 0.0),
        Point2::new(-0.5, -h),
        Point2::new(0.5, -h),
    ])
    .expect("regular hexagon is valid")
}
