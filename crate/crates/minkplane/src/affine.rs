//! Exact affine primitives: point symmetry, homothety, midpoints,
//! collinearity, and the harmonic-conjugate check.

use crate::error::{Error, Result};
use crate::point::Point2;

/// Reflection of `w` through `p`: `2p - w`. An involution and an isometry in
/// every norm.
pub fn point_symmetry(p: Point2, w: Point2) -> Point2 {
    p.scale(2.0) - w
}

/// Homothety with center `p` and ratio `k`: `(1 - k) p + k w`.
///
/// `k = 1` is the identity, `k = -1` coincides with `point_symmetry(p, _)`.
pub fn homothety(center: Point2, ratio: f64, w: Point2) -> Point2 {
    center.scale(1.0 - ratio) + w.scale(ratio)
}

pub fn midpoint(a: Point2, b: Point2) -> Point2 {
    (a + b).scale(0.5)
}

/// Scale-aware collinearity test: `|cross(b-a, c-a)| <= tol * |b-a| * |c-a|`.
///
/// The threshold is fully relative so the verdict is invariant under uniform
/// scaling of all three points. Coincident points are collinear.
pub fn collinear(a: Point2, b: Point2, c: Point2, tol: f64) -> bool {
    let u = b - a;
    let v = c - a;
    u.cross(v).abs() <= tol * u.hypot() * v.hypot()
}

/// Harmonic-conjugate test for `e` and `w` with respect to `x` and `z`:
/// with `z0 = point_symmetry(w, z)`, both `homothety(e, -k, z) = x` and
/// `homothety(w, -k, z0) = x` must hold to within `tol` (Euclidean, absolute).
pub fn harmonic_conjugates_check(
    e: Point2,
    w: Point2,
    x: Point2,
    z: Point2,
    k: u32,
    tol: f64,
) -> Result<bool> {
    if x == z {
        return Err(Error::InvalidInput(
            "harmonic conjugates need distinct reference points x and z".into(),
        ));
    }
    let k = f64::from(k);
    let z0 = point_symmetry(w, z);
    let first = (homothety(e, -k, z) - x).hypot() <= tol;
    let second = (homothety(w, -k, z0) - x).hypot() <= tol;
    Ok(first && second)
}
