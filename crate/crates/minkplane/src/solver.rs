//! Multistart derivative-free circumcenter solver.
//!
//! A circumcenter of a triangle under a norm is a zero of the equioscillation
//! residual `F(c) = max_{i<j} | ||c - x_i|| - ||c - x_j|| |`. The zero set can
//! be a single point, a curve, or an unbounded region depending on the norm,
//! so the solver runs a simplex descent from many starts and reports up to
//! `max_witnesses` clustered representatives ordered by radius.

use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::point::{Point2, Triangle};

/// Options for [`circumcenters`].
#[derive(Debug, Clone, Copy)]
pub struct SolverOpts {
    /// Accept a minimum when `F(c) <= tol * diameter`.
    pub tol: f64,
    /// Number of descent starts.
    pub budget: usize,
    /// Maximum number of clustered representatives returned.
    pub max_witnesses: usize,
}

impl Default for SolverOpts {
    fn default() -> Self {
        Self { tol: 1e-9, budget: 64, max_witnesses: 8 }
    }
}

/// One accepted circumcenter with its radius and residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub center: Point2,
    pub radius: f64,
    pub residual: f64,
}

/// Equioscillation residual of a candidate center.
pub fn equidistance_residual(norm: &NormSpec, tri: &Triangle, c: Point2) -> f64 {
    let [a, b, v] = tri.vertices();
    let d1 = norm.distance(c, a);
    let d2 = norm.distance(c, b);
    let d3 = norm.distance(c, v);
    (d1 - d2).abs().max((d2 - d3).abs()).max((d1 - d3).abs())
}

/// Mean distance from `c` to the vertices.
pub fn mean_radius(norm: &NormSpec, tri: &Triangle, c: Point2) -> f64 {
    let [a, b, v] = tri.vertices();
    (norm.distance(c, a) + norm.distance(c, b) + norm.distance(c, v)) / 3.0
}

/// All circumcenters the multistart search can distinguish, ordered by
/// `(radius, x, y)` ascending.
pub fn circumcenters(norm: &NormSpec, tri: &Triangle, opts: &SolverOpts) -> Result<Vec<Witness>> {
    let diam = tri.diameter();
    let f = |c: Point2| equidistance_residual(norm, tri, c);

    let accept = opts.tol * diam;
    let mut minima: Vec<(Point2, f64)> = Vec::new();
    for start in starts(norm, tri, opts.budget) {
        // Equalizing the three distances through their local linearization
        // converges in a few steps when it works; the simplex descent covers
        // the rest, and the pattern search finishes off kinks the simplex
        // wedges on.
        let (mut c, mut fc) = newton_polish(norm, tri, start, f(start), diam);
        if fc > accept {
            let (c2, fc2) = nelder_mead(&f, c, diam);
            if fc2 < fc {
                (c, fc) = (c2, fc2);
            }
        }
        if fc > accept {
            (c, fc) = compass_polish(&f, c, fc, 0.25 * diam, diam);
        }
        if fc > accept && fc <= 1e-2 * diam {
            (c, fc) = newton_polish(norm, tri, c, fc, diam);
        }
        // Refine barely-accepted minima down to machine precision so the
        // clustering sees one tight point per distinct circumcenter and the
        // first witness is not a straggler near the accept threshold.
        if fc <= accept && fc > 1e-14 * diam {
            (c, fc) = newton_polish(norm, tri, c, fc, diam);
            if fc > 1e-14 * diam {
                (c, fc) = compass_polish(&f, c, fc, 1e-6 * diam, diam);
            }
        }
        if fc <= accept {
            minima.push((c, fc));
        }
    }
    // Polygonal norms admit a complete enumeration of transversal crossings:
    // inside a fixed sector triple the three distances are linear, so each
    // candidate is a 2x2 solve. The true residual filters wrong guesses.
    if let Some(ball) = norm.as_polygon() {
        let n = ball.vertices().len();
        let [x1, x2, x3] = tri.vertices();
        for s1 in 0..n {
            let g1 = ball.sector_gradient(s1);
            for s2 in 0..n {
                let g2 = ball.sector_gradient(s2);
                let a1 = g1 - g2;
                let b1 = g1.dot(x1) - g2.dot(x2);
                for s3 in 0..n {
                    let g3 = ball.sector_gradient(s3);
                    let a2 = g2 - g3;
                    let det = a1.cross(a2);
                    if det.abs() < 1e-12 {
                        continue;
                    }
                    let b2 = g2.dot(x2) - g3.dot(x3);
                    let c = Point2::new(
                        (b1 * a2.y - b2 * a1.y) / det,
                        (a1.x * b2 - a2.x * b1) / det,
                    );
                    if !c.is_finite() {
                        continue;
                    }
                    let fc = f(c);
                    if fc <= accept {
                        minima.push((c, fc));
                    }
                }
            }
        }
    }
    if minima.is_empty() {
        return Err(Error::NoWitness);
    }

    let mut witnesses: Vec<Witness> = minima
        .into_iter()
        .map(|(c, fc)| Witness {
            center: c,
            radius: mean_radius(norm, tri, c),
            residual: fc,
        })
        .collect();
    witnesses.sort_by(|a, b| {
        (a.radius, a.center.x, a.center.y)
            .partial_cmp(&(b.radius, b.center.x, b.center.y))
            .expect("residual-accepted witnesses are finite")
    });

    // Greedy clustering on the sorted list; the representative is the
    // lowest-residual member of each cluster.
    let merge = (opts.tol * diam).max(1e-12 * diam);
    let mut clusters: Vec<Witness> = Vec::new();
    for w in witnesses {
        match clusters
            .iter_mut()
            .find(|c| (c.center - w.center).hypot() <= merge)
        {
            Some(c) => {
                if w.residual < c.residual {
                    *c = w;
                }
            }
            None => clusters.push(w),
        }
    }
    clusters.truncate(opts.max_witnesses);
    Ok(clusters)
}

/// Deterministic start list: Euclidean circumcenter, centroid, a coarse grid
/// over the 3x-scaled bounding box, and outer rings at growing scales.
///
/// The rings matter for polygonal norms, where the (possibly empty)
/// circumcenter set can sit many diameters away from the triangle along a
/// bisector asymptote; asymptote directions follow the unit ball's vertex
/// and edge directions, so the rings are aligned with them.
fn starts(norm: &NormSpec, tri: &Triangle, budget: usize) -> Vec<Point2> {
    let mut out = Vec::with_capacity(budget.max(2));
    if let Some(e) = euclidean_circumcenter(tri) {
        out.push(e);
    }
    out.push(tri.barycenter());

    let [a, b, c] = tri.vertices();
    let min = Point2::new(a.x.min(b.x).min(c.x), a.y.min(b.y).min(c.y));
    let max = Point2::new(a.x.max(b.x).max(c.x), a.y.max(b.y).max(c.y));
    let center = crate::affine::midpoint(min, max);
    let half = (max - min).scale(1.5);
    let diam = tri.diameter();

    let dirs = ring_directions(norm);
    let rings = 4 * dirs.len();
    let grid_budget = budget.saturating_sub(out.len() + rings);
    let k = (grid_budget as f64).sqrt().ceil().max(2.0) as usize;
    'grid: for row in 0..k {
        for col in 0..k {
            if out.len() + rings >= budget {
                break 'grid;
            }
            let fx = col as f64 / (k - 1) as f64;
            let fy = row as f64 / (k - 1) as f64;
            out.push(Point2::new(
                center.x + half.x * (2.0 * fx - 1.0),
                center.y + half.y * (2.0 * fy - 1.0),
            ));
        }
    }
    for scale in [3.0, 9.0, 27.0, 81.0] {
        for d in &dirs {
            if out.len() >= budget.max(8) {
                break;
            }
            out.push(center + d.scale(scale * diam));
        }
    }
    out
}

/// Outward directions for the ring starts: the unit ball's vertex and
/// edge-midpoint directions for polygonal norms, eight compass directions
/// otherwise.
fn ring_directions(norm: &NormSpec) -> Vec<Point2> {
    let polygonal = match norm {
        NormSpec::Polygon(ball) => Some(ball.vertices().to_vec()),
        NormSpec::Lp(p) if *p == 1.0 => Some(vec![
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, -1.0),
        ]),
        NormSpec::Lp(p) if p.is_infinite() => Some(vec![
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
        ]),
        _ => None,
    };
    match polygonal {
        Some(verts) => {
            let n = verts.len();
            let mut dirs = Vec::with_capacity(2 * n);
            for i in 0..n {
                let v = verts[i];
                let mid = crate::affine::midpoint(v, verts[(i + 1) % n]);
                dirs.push(v.scale(1.0 / v.hypot()));
                dirs.push(mid.scale(1.0 / mid.hypot()));
            }
            dirs
        }
        None => (0..8)
            .map(|s| {
                let theta = std::f64::consts::TAU * s as f64 / 8.0;
                Point2::new(theta.cos(), theta.sin())
            })
            .collect(),
    }
}

/// Newton iteration on the equidistance system `d1 = d2 = d3` using norm
/// (sub)gradients. Within one linearity region of a polyhedral norm the
/// system is exactly linear, so a genuine crossing is reached in a handful
/// of steps; smooth norms converge quadratically.
fn newton_polish(
    norm: &NormSpec,
    tri: &Triangle,
    start: Point2,
    fstart: f64,
    scale: f64,
) -> (Point2, f64) {
    let [x1, x2, x3] = tri.vertices();
    let mut c = start;
    let mut best = (start, fstart);
    for _ in 0..40 {
        let r = [c - x1, c - x2, c - x3];
        if r.iter().any(|v| v.hypot() < 1e-12 * scale) {
            break;
        }
        let g: Vec<Point2> = r.iter().map(|&v| norm.gradient(v)).collect();
        let d: Vec<f64> = r.iter().map(|&v| norm.eval(v)).collect();
        let a1 = g[0] - g[1];
        let a2 = g[1] - g[2];
        let det = a1.cross(a2);
        if det.abs() < 1e-14 {
            break;
        }
        let b1 = d[1] - d[0];
        let b2 = d[2] - d[1];
        // Solve [a1; a2] delta = (b1, b2).
        let delta = Point2::new(
            (b1 * a2.y - b2 * a1.y) / det,
            (a1.x * b2 - a2.x * b1) / det,
        );
        let capped = if delta.hypot() > scale {
            delta.scale(scale / delta.hypot())
        } else {
            delta
        };
        c = c + capped;
        let fc = equidistance_residual(norm, tri, c);
        if fc < best.1 {
            best = (c, fc);
        }
        if fc <= 1e-16 * scale {
            break;
        }
    }
    best
}

/// Pattern search over eight compass directions with step halving; finishes
/// the descent where the simplex stalls on piecewise-linear kinks.
fn compass_polish(
    f: &dyn Fn(Point2) -> f64,
    mut c: Point2,
    mut fc: f64,
    step0: f64,
    scale: f64,
) -> (Point2, f64) {
    const DIAG: f64 = std::f64::consts::FRAC_1_SQRT_2;
    let dirs = [
        Point2::new(1.0, 0.0),
        Point2::new(-1.0, 0.0),
        Point2::new(0.0, 1.0),
        Point2::new(0.0, -1.0),
        Point2::new(DIAG, DIAG),
        Point2::new(DIAG, -DIAG),
        Point2::new(-DIAG, DIAG),
        Point2::new(-DIAG, -DIAG),
    ];
    let mut step = step0;
    let mut iters = 0;
    while step > 1e-15 * scale && fc > 1e-16 * scale && iters < 600 {
        iters += 1;
        let mut best: Option<(f64, Point2)> = None;
        for d in dirs {
            let cand = c + d.scale(step);
            let fcand = f(cand);
            if fcand < fc && best.map_or(true, |(bf, _)| fcand < bf) {
                best = Some((fcand, cand));
            }
        }
        match best {
            Some((bf, bc)) => {
                c = bc;
                fc = bf;
            }
            None => step *= 0.5,
        }
    }
    (c, fc)
}

/// Closed-form Euclidean circumcenter; `None` when the triangle is too flat
/// for the determinant to be trusted.
pub fn euclidean_circumcenter(tri: &Triangle) -> Option<Point2> {
    let [a, b, c] = tri.vertices();
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d.abs() < 1e-12 * tri.diameter() * tri.diameter() {
        return None;
    }
    let a2 = a.dot(a);
    let b2 = b.dot(b);
    let c2 = c.dot(c);
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let p = Point2::new(ux, uy);
    p.is_finite().then_some(p)
}

const NM_ITERS: usize = 200;

/// Standard Nelder-Mead on two variables, tuned for the equioscillation
/// residual: terminates once the simplex collapses well below the accept
/// threshold's scale.
fn nelder_mead(f: &dyn Fn(Point2) -> f64, start: Point2, scale: f64) -> (Point2, f64) {
    let h = 0.05 * scale;
    let mut simplex = [
        start,
        start + Point2::new(h, 0.0),
        start + Point2::new(0.0, h),
    ];
    let mut values = simplex.map(f);

    for _ in 0..NM_ITERS {
        // Order best..worst.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let (b, m, w) = (idx[0], idx[1], idx[2]);

        let spread = values[w] - values[b];
        let size = (simplex[b] - simplex[w])
            .hypot()
            .max((simplex[b] - simplex[m]).hypot());
        if values[b] <= 1e-15 * scale || (spread <= 1e-15 * scale && size <= 1e-13 * scale) {
            break;
        }

        let centroid = crate::affine::midpoint(simplex[b], simplex[m]);
        let reflected = centroid + (centroid - simplex[w]);
        let fr = f(reflected);
        if fr < values[b] {
            let expanded = centroid + (centroid - simplex[w]).scale(2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[w] = expanded;
                values[w] = fe;
            } else {
                simplex[w] = reflected;
                values[w] = fr;
            }
        } else if fr < values[m] {
            simplex[w] = reflected;
            values[w] = fr;
        } else {
            let contracted = if fr < values[w] {
                centroid + (reflected - centroid).scale(0.5)
            } else {
                centroid + (simplex[w] - centroid).scale(0.5)
            };
            let fc = f(contracted);
            if fc < values[w].min(fr) {
                simplex[w] = contracted;
                values[w] = fc;
            } else {
                // Shrink toward the best vertex.
                for i in [m, w] {
                    simplex[i] = crate::affine::midpoint(simplex[b], simplex[i]);
                    values[i] = f(simplex[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..3 {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best], values[best])
}
