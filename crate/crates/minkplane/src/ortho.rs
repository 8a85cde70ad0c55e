//! Isosceles, Birkhoff, and chordal orthogonality as tolerance-aware
//! predicates, plus a constructive chordal-partner search.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::norm::{Chord, LineCircleIntersection, NormSpec, EPS_ON};
use crate::point::{Line, Point2};

/// Default relative tolerance for all predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `x` is isosceles-orthogonal to `y` when `||x + y|| = ||x - y||`.
///
/// The comparison is fully relative, which makes the predicate literal under
/// positive scaling of both arguments.
pub fn isosceles_orthogonal(norm: &NormSpec, x: Point2, y: Point2, tol: f64) -> bool {
    let plus = norm.eval(x + y);
    let minus = norm.eval(x - y);
    (plus - minus).abs() <= tol * (plus + minus)
}

/// Residual of the isosceles relation, relative to the magnitudes involved.
pub fn isosceles_residual(norm: &NormSpec, x: Point2, y: Point2) -> f64 {
    let plus = norm.eval(x + y);
    let minus = norm.eval(x - y);
    if plus + minus == 0.0 {
        0.0
    } else {
        (plus - minus).abs() / (plus + minus)
    }
}

/// `x` is Birkhoff-orthogonal to `y` when `||x + t y|| >= ||x||` for all `t`.
///
/// The map `t -> ||x + t y||` is convex, so its minimum is located by ternary
/// search on a bracket that provably contains the minimizer.
pub fn birkhoff_orthogonal(norm: &NormSpec, x: Point2, y: Point2, tol: f64) -> Result<bool> {
    if y == Point2::ZERO {
        return Err(Error::InvalidInput("birkhoff direction must be nonzero".into()));
    }
    if x == Point2::ZERO {
        return Ok(true);
    }
    let nx = norm.eval(x);
    let ny = norm.eval(y);
    let g = |t: f64| norm.eval(x + y * t);
    // Outside |t| > (2 nx)/ny the value exceeds nx, so the bracket is safe.
    let bracket = 4.0 * nx / ny + 1.0;
    let (mut lo, mut hi) = (-bracket, bracket);
    while hi - lo > 1e-12 * bracket {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let gmin = g(0.5 * (lo + hi)).min(g(0.0));
    Ok(gmin >= nx - tol * nx.max(1.0))
}

/// Chordal orthogonality of `c1` to `c2` with respect to the unit circle.
///
/// With `p2'` the opposite of `c2.p`, the line through `c2.q` and `p2'` must
/// be parallel to `c1`; when `p2' = c2.q` the relation degenerates to the
/// existence of a support line at `c2.q` in `c1`'s direction.
pub fn chordal_orthogonal(norm: &NormSpec, c1: &Chord, c2: &Chord, tol: f64) -> bool {
    chordal_relation(norm, c1.direction(), c2.p, c2.q, tol).unwrap_or(false)
}

/// Residual of the parallelism underlying `chordal_orthogonal`, relative to
/// the direction magnitudes. Zero in the degenerate support-line branch.
pub fn chordal_residual(_norm: &NormSpec, c1: &Chord, c2: &Chord) -> f64 {
    let d1 = c1.direction();
    let opposite = -c2.p;
    let d2 = opposite - c2.q;
    if d2.hypot() <= EPS_ON {
        return 0.0;
    }
    d1.cross(d2).abs() / (d1.hypot() * d2.hypot())
}

/// The raw chordal criterion for a directed pair `(p2, q2)` that is not
/// required to be a chord: parallelism of `<q2, -p2>` with `dir1`, falling
/// back to the support-line test when `-p2` and `q2` coincide.
pub fn chordal_relation(
    norm: &NormSpec,
    dir1: Point2,
    p2: Point2,
    q2: Point2,
    tol: f64,
) -> Result<bool> {
    let opposite = -p2;
    let d2 = opposite - q2;
    if d2.hypot() > EPS_ON {
        Ok(dir1.cross(d2).abs() <= tol * dir1.hypot() * d2.hypot())
    } else {
        norm.support_line_exists(q2, dir1)
    }
}

/// Finds some chord of the unit circle that `c1` is chordally orthogonal to.
///
/// Sweeps candidate first endpoints `z` over the boundary; the second
/// endpoint is the remaining intersection of the line through `-z` with
/// direction `c1` and the circle. The result is self-checked before being
/// returned.
pub fn chordal_partner(norm: &NormSpec, c1: &Chord) -> Result<Chord> {
    const SWEEP: usize = 256;
    let d1 = c1.direction();
    for j in 0..SWEEP {
        let theta = TAU * (j as f64 + 0.37) / SWEEP as f64;
        let z = norm.unit_point(theta);
        let line = match Line::new(-z, d1) {
            Ok(l) => l,
            Err(_) => continue,
        };
        let points = match norm.unit_circle_line_intersections(&line) {
            LineCircleIntersection::Points(p) => p,
            _ => continue,
        };
        for &w in &points {
            // The base -z is itself on the circle; we want the other point.
            if (w + z).hypot() <= 1e-7 {
                continue;
            }
            let Ok(candidate) = Chord::new(norm, z, w) else { continue };
            if chordal_orthogonal(norm, c1, &candidate, DEFAULT_TOL) {
                return Ok(candidate);
            }
        }
        // Tangency at -z: the diameter [z, -z] is orthogonal through the
        // support-line branch.
        if points.len() == 1 && (points[0] + z).hypot() <= 1e-7 {
            if let Ok(diameter) = Chord::new(norm, z, -z) {
                if chordal_orthogonal(norm, c1, &diameter, DEFAULT_TOL) {
                    return Ok(diameter);
                }
            }
        }
    }
    Err(Error::SearchExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::square_ball;

    #[test]
    fn isosceles_axis_pairs() {
        let e = NormSpec::Euclidean;
        assert!(isosceles_orthogonal(&e, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), 1e-9));
        let l1 = NormSpec::lp(1.0).unwrap();
        assert!(isosceles_orthogonal(&l1, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), 1e-9));
        let linf = NormSpec::lp(f64::INFINITY).unwrap();
        assert!(!isosceles_orthogonal(&linf, Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), 1e-9));
    }

    #[test]
    fn birkhoff_examples() {
        let e = NormSpec::Euclidean;
        assert!(birkhoff_orthogonal(&e, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), 1e-9).unwrap());

        let l1 = NormSpec::lp(1.0).unwrap();
        // ||(1 + t, t)||_1 >= 1 for every t.
        assert!(birkhoff_orthogonal(&l1, Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), 1e-9).unwrap());
        // At t = -1 the norm of (1 + t, 1) drops to 1 < 2: not orthogonal,
        // which also shows the relation is not symmetric.
        assert!(!birkhoff_orthogonal(&l1, Point2::new(1.0, 1.0), Point2::new(1.0, 0.0), 1e-9).unwrap());
    }

    #[test]
    fn birkhoff_agrees_with_grid_minimum() {
        let l1 = NormSpec::lp(1.0).unwrap();
        let x = Point2::new(1.0, 0.0);
        let y = Point2::new(1.0, 1.0);
        let mut grid_min = f64::INFINITY;
        for k in -4000..=4000 {
            let t = k as f64 * 1e-3;
            grid_min = grid_min.min(l1.eval(x + y * t));
        }
        assert!(grid_min >= l1.eval(x) - 1e-9);
    }

    #[test]
    fn birkhoff_rejects_zero_direction() {
        let e = NormSpec::Euclidean;
        let r = birkhoff_orthogonal(&e, Point2::new(1.0, 0.0), Point2::ZERO, 1e-9);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn chordal_diameters_are_orthogonal() {
        let e = NormSpec::Euclidean;
        let c1 = Chord::new(&e, Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0)).unwrap();
        let c2 = Chord::new(&e, Point2::new(0.0, 1.0), Point2::new(0.0, -1.0)).unwrap();
        assert!(chordal_orthogonal(&e, &c1, &c2, 1e-9));
    }

    #[test]
    fn chordal_generic_euclidean_pair() {
        let e = NormSpec::Euclidean;
        let c1 = Chord::new(&e, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        let c2 = Chord::new(&e, Point2::new(0.0, 1.0), Point2::new(-1.0, 0.0)).unwrap();
        assert!(chordal_orthogonal(&e, &c1, &c2, 1e-9));
    }

    #[test]
    fn chordal_square_diagonals() {
        let sq = square_ball();
        let c1 = Chord::new(&sq, Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0)).unwrap();
        let c2 = Chord::new(&sq, Point2::new(-1.0, 1.0), Point2::new(1.0, -1.0)).unwrap();
        assert!(chordal_orthogonal(&sq, &c1, &c2, 1e-9));
    }

    #[test]
    fn partner_for_horizontal_diameter_is_vertical_ish() {
        let e = NormSpec::Euclidean;
        let c1 = Chord::new(&e, Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0)).unwrap();
        let partner = chordal_partner(&e, &c1).unwrap();
        assert!(chordal_orthogonal(&e, &c1, &partner, 1e-9));
    }

    #[test]
    fn partner_on_the_square_for_a_vertical_edge_chord() {
        let sq = square_ball();
        let c1 = Chord::new(&sq, Point2::new(1.0, 1.0), Point2::new(1.0, -1.0)).unwrap();
        let partner = chordal_partner(&sq, &c1).unwrap();
        assert!(chordal_orthogonal(&sq, &c1, &partner, 1e-9));
    }

    #[test]
    fn partner_for_random_lp_chords() {
        let n = NormSpec::lp(1.5).unwrap();
        let c1 = Chord::new(&n, n.unit_point(0.3), n.unit_point(2.1)).unwrap();
        let partner = chordal_partner(&n, &c1).unwrap();
        assert!(chordal_orthogonal(&n, &c1, &partner, 1e-9));
    }
}
