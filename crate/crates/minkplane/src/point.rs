//! Plain 2D points, segments, lines, and triangles.
//!
//! Everything here is norm-independent. The Euclidean helpers (`hypot`,
//! `cross`) are used for scale measures and orientation tests only; distances
//! that matter geometrically go through [`crate::norm::NormSpec`].

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative cross-product threshold below which a triangle counts as flat.
pub const EPS_COLLINEAR: f64 = 1e-9;

/// A point of the plane (doubles as a free vector).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub const ZERO: Point2 = Point2::new(0.0, 0.0);

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean length; used as a scale measure, not as the plane's norm.
    pub fn hypot(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(&self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product of two plane vectors.
    pub fn cross(&self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn scale(&self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        self.scale(rhs)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// A non-degenerate segment between two distinct points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput("segment endpoints must be finite".into()));
        }
        if a == b {
            return Err(Error::InvalidInput("segment endpoints must be distinct".into()));
        }
        Ok(Self { a, b })
    }

    pub fn direction(&self) -> Point2 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> Point2 {
        crate::affine::midpoint(self.a, self.b)
    }
}

/// A line given by a base point and a nonzero direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub base: Point2,
    pub dir: Point2,
}

impl Line {
    pub fn new(base: Point2, dir: Point2) -> Result<Self> {
        if !base.is_finite() || !dir.is_finite() {
            return Err(Error::InvalidInput("line data must be finite".into()));
        }
        if dir == Point2::ZERO {
            return Err(Error::InvalidInput("line direction must be nonzero".into()));
        }
        Ok(Self { base, dir })
    }

    /// Line through two distinct points.
    pub fn through(a: Point2, b: Point2) -> Result<Self> {
        Line::new(a, b - a)
    }

    pub fn at(&self, t: f64) -> Point2 {
        self.base + self.dir * t
    }
}

/// A genuine triangle: pairwise-distinct, non-collinear vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub v1: Point2,
    pub v2: Point2,
    pub v3: Point2,
}

impl Triangle {
    pub fn new(v1: Point2, v2: Point2, v3: Point2) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite() && v3.is_finite()) {
            return Err(Error::DegenerateTriangle("vertices must be finite".into()));
        }
        if v1 == v2 || v2 == v3 || v1 == v3 {
            return Err(Error::DegenerateTriangle("vertices must be pairwise distinct".into()));
        }
        let tri = Self { v1, v2, v3 };
        let area2 = (v2 - v1).cross(v3 - v1).abs();
        let d = tri.diameter();
        if area2 <= EPS_COLLINEAR * d * d {
            return Err(Error::DegenerateTriangle("vertices are collinear".into()));
        }
        Ok(tri)
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.v1, self.v2, self.v3]
    }

    /// Largest pairwise Euclidean distance; the scale measure used by
    /// tolerances throughout.
    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.vertices();
        (a - b)
            .hypot()
            .max((b - c).hypot())
            .max((a - c).hypot())
    }

    /// Midpoint of the side opposite vertex `i` (0-based).
    pub fn opposite_midpoint(&self, i: usize) -> Point2 {
        let v = self.vertices();
        crate::affine::midpoint(v[(i + 1) % 3], v[(i + 2) % 3])
    }

    /// The three side midpoints, indexed by the opposite vertex.
    pub fn side_midpoints(&self) -> [Point2; 3] {
        [
            self.opposite_midpoint(0),
            self.opposite_midpoint(1),
            self.opposite_midpoint(2),
        ]
    }

    pub fn barycenter(&self) -> Point2 {
        (self.v1 + self.v2 + self.v3).scale(1.0 / 3.0)
    }

    /// Smallest interior angle in radians (Euclidean).
    pub fn min_angle(&self) -> f64 {
        let v = self.vertices();
        let mut min = f64::INFINITY;
        for i in 0..3 {
            let a = v[(i + 1) % 3] - v[i];
            let b = v[(i + 2) % 3] - v[i];
            let ang = a.cross(b).abs().atan2(a.dot(b));
            min = min.min(ang);
        }
        min
    }
}
