//! Triangle-level constructions: orthocentric systems, antitriangles, the
//! six-point (Feuerbach) circle, Euler and Poncelet points.
//!
//! Only the circumcenter itself requires optimization (see
//! [`crate::solver`]); every derived point here is closed-form affine
//! arithmetic and is never re-solved numerically.

use crate::affine::{midpoint, point_symmetry};
use crate::error::{Error, Result};
use crate::norm::{MinkCircle, NormSpec};
use crate::point::{Point2, Triangle};
use crate::solver::{equidistance_residual, mean_radius};

/// A triangle together with a circumcenter, the associated symmetry point,
/// and the orthocenter it induces.
///
/// The four points `{x1, x2, x3, x4}` form an orthocentric system: each is
/// the orthocenter of the other three.
#[derive(Debug, Clone, Copy)]
pub struct OrthoSystem<'a> {
    pub x1: Point2,
    pub x2: Point2,
    pub x3: Point2,
    /// The chosen circumcenter of the triangle.
    pub p4: Point2,
    /// Circumradius.
    pub lambda: f64,
    /// Common midpoint of the segments `[x_i, p_i]`; center of the six-point
    /// circle.
    pub q: Point2,
    /// Orthocenter: `x1 + x2 + x3 - 2 p4`.
    pub x4: Point2,
    pub norm: &'a NormSpec,
}

impl<'a> OrthoSystem<'a> {
    pub fn triangle(&self) -> Triangle {
        Triangle::new(self.x1, self.x2, self.x3).expect("validated at construction")
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// The system quadruple `{x1, x2, x3, x4}`.
    pub fn quadruple(&self) -> [Point2; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn diameter(&self) -> f64 {
        self.triangle().diameter()
    }

    pub fn circumcircle(&self) -> MinkCircle<'a> {
        MinkCircle { center: self.p4, radius: self.lambda, norm: self.norm }
    }

    pub fn feuerbach_circle(&self) -> MinkCircle<'a> {
        MinkCircle { center: self.q, radius: self.lambda / 2.0, norm: self.norm }
    }

    /// Test-side hook: returns a copy with the orthocenter displaced, used by
    /// the harness mutation self-test to prove the verifiers can fail.
    pub fn with_perturbed_orthocenter(&self, delta: Point2) -> OrthoSystem<'a> {
        OrthoSystem { x4: self.x4 + delta, ..*self }
    }
}

/// Everything the six-point circle touches, derived from a system by
/// closed-form arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct ConstructionBundle<'a> {
    /// Side midpoints `m_i`, indexed by the opposite vertex.
    pub medial: Triangle,
    /// Antitriangle vertices `p_i = S_{m_i}(p4)`.
    pub anti: Triangle,
    /// Euler triangle vertices `d_i = (x_i + x4) / 2`.
    pub euler_triangle: Triangle,
    pub euler_points: [Point2; 3],
    /// Circle of center `q` and radius `lambda / 2`.
    pub feuerbach: MinkCircle<'a>,
    pub barycenter: Point2,
}

/// Symmetry point of a triangle and its `p4`-antitriangle:
/// `q = (x1 + x2 + x3 - p4) / 2`.
pub fn symmetry_point_q(tri: &Triangle, p4: Point2) -> Point2 {
    (tri.v1 + tri.v2 + tri.v3 - p4).scale(0.5)
}

/// Orthocenter associated with the circumcenter `p4`:
/// `x4 = x1 + x2 + x3 - 2 p4 = S_q(p4)`.
pub fn c_orthocenter(tri: &Triangle, p4: Point2) -> Point2 {
    tri.v1 + tri.v2 + tri.v3 - p4.scale(2.0)
}

/// The `p4`-antitriangle: each vertex is the reflection of `p4` through a
/// side midpoint.
pub fn antitriangle(tri: &Triangle, p4: Point2) -> Result<Triangle> {
    let m = tri.side_midpoints();
    Triangle::new(
        point_symmetry(m[0], p4),
        point_symmetry(m[1], p4),
        point_symmetry(m[2], p4),
    )
    .map_err(|_| Error::DegenerateTriangle("antitriangle collapsed".into()))
}

/// Builds the full system once `p4` is confirmed to be a circumcenter of the
/// triangle within `tol * diameter`.
pub fn build_system<'a>(
    norm: &'a NormSpec,
    tri: &Triangle,
    p4: Point2,
    tol: f64,
) -> Result<OrthoSystem<'a>> {
    let residual = equidistance_residual(norm, tri, p4);
    let allowed = tol * tri.diameter();
    if !(residual <= allowed) {
        return Err(Error::NotACircumcenter { residual, allowed });
    }
    let q = symmetry_point_q(tri, p4);
    Ok(OrthoSystem {
        x1: tri.v1,
        x2: tri.v2,
        x3: tri.v3,
        p4,
        lambda: mean_radius(norm, tri, p4),
        q,
        x4: c_orthocenter(tri, p4),
        norm,
    })
}

/// A decomposition of four points into an orthocenter and the circumcenter
/// of the remaining triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemWitness {
    /// Index (0..4) of the point acting as the orthocenter.
    pub orthocenter_index: usize,
    /// The consistent circumcenter `(sum of the other three - h) / 2`.
    pub p4: Point2,
}

/// Checks whether four points form an orthocentric system.
///
/// For each candidate orthocenter `h` the only consistent circumcenter is
/// `(sum of the others - h) / 2`; the first candidate (by index) whose
/// circumcenter is equidistant from the other three wins.
pub fn is_c_orthocentric(
    norm: &NormSpec,
    pts: &[Point2; 4],
    tol: f64,
) -> Option<SystemWitness> {
    let scale = quad_diameter(pts);
    let total = pts[0] + pts[1] + pts[2] + pts[3];
    for (i, &h) in pts.iter().enumerate() {
        let p4 = (total - h - h).scale(0.5);
        let mut others = pts.iter().enumerate().filter(|&(j, _)| j != i);
        let (_, &a) = others.next().unwrap();
        let rest: Vec<f64> = others.map(|(_, &b)| norm.distance(p4, b)).collect();
        let da = norm.distance(p4, a);
        let residual = rest
            .iter()
            .map(|d| (d - da).abs())
            .fold(0.0_f64, f64::max)
            .max((rest[0] - rest[1]).abs());
        if residual <= tol * scale {
            return Some(SystemWitness { orthocenter_index: i, p4 });
        }
    }
    None
}

/// Residual of one specific orthocenter/circumcenter decomposition, relative
/// to the quadruple's diameter.
pub fn decomposition_residual(norm: &NormSpec, pts: &[Point2; 4], orthocenter_index: usize) -> f64 {
    let total = pts[0] + pts[1] + pts[2] + pts[3];
    let h = pts[orthocenter_index];
    let p4 = (total - h - h).scale(0.5);
    let ds: Vec<f64> = pts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != orthocenter_index)
        .map(|(_, &b)| norm.distance(p4, b))
        .collect();
    let mut r: f64 = 0.0;
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            r = r.max((ds[i] - ds[j]).abs());
        }
    }
    r / quad_diameter(pts).max(f64::MIN_POSITIVE)
}

fn quad_diameter(pts: &[Point2; 4]) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..4 {
        for j in i + 1..4 {
            d = d.max((pts[i] - pts[j]).hypot());
        }
    }
    d
}

/// Derives the medial/Euler/antitriangle data and the six-point circle.
pub fn construction_bundle<'a>(sys: &OrthoSystem<'a>) -> ConstructionBundle<'a> {
    let tri = sys.triangle();
    let m = tri.side_midpoints();
    let anti = antitriangle(&tri, sys.p4).expect("antitriangle of a valid system");
    let d = [
        midpoint(sys.x1, sys.x4),
        midpoint(sys.x2, sys.x4),
        midpoint(sys.x3, sys.x4),
    ];
    ConstructionBundle {
        medial: Triangle::new(m[0], m[1], m[2]).expect("medial of a valid triangle"),
        anti,
        euler_triangle: Triangle::new(d[0], d[1], d[2]).expect("euler triangle of a valid system"),
        euler_points: d,
        feuerbach: sys.feuerbach_circle(),
        barycenter: tri.barycenter(),
    }
}

/// Midpoint of the segment from the orthocenter to a point `w` of the
/// circumscribed circle.
pub fn poncelet_point(sys: &OrthoSystem<'_>, w: Point2, tol: f64) -> Result<Point2> {
    let circ = sys.circumcircle();
    if !circ.contains(w, tol) {
        return Err(Error::NotOnCircumcircle(circ.boundary_deviation(w)));
    }
    Ok(midpoint(sys.x4, w))
}

/// The point of the circumcircle diametrically opposite vertex `i` (0-based):
/// `2 p4 - x_i`, which coincides with the reflection of `x4` through the
/// opposite side midpoint.
pub fn circumcircle_antipode(sys: &OrthoSystem<'_>, i: usize) -> Point2 {
    let v = sys.vertices();
    let antipode = point_symmetry(sys.p4, v[i]);
    debug_assert!({
        let mi = sys.triangle().opposite_midpoint(i);
        (antipode - point_symmetry(mi, sys.x4)).hypot() <= 1e-12 * sys.diameter().max(1.0)
    });
    antipode
}
