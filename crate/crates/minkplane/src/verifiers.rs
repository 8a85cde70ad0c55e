//! One verifier per numbered result. Each evaluates the corresponding
//! geometric statements on a scene and reports the worst relative residual.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{homothety, midpoint, point_symmetry};
use crate::construct::{
    antitriangle, c_orthocenter, construction_bundle, decomposition_residual, is_c_orthocentric,
    poncelet_point, symmetry_point_q, ConstructionBundle, OrthoSystem,
};
use crate::harness::{scene_rng, Scene, TheoremId, Tolerances, TrialOutcome};
use crate::norm::{Chord, LineCircleIntersection, NormSpec, EPS_ON};
use crate::ortho::{chordal_orthogonal, chordal_relation, chordal_residual, isosceles_residual};
use crate::point::{Line, Point2, Triangle};
use crate::solver::{circumcenters, SolverOpts};

const SALT_L2_1: u64 = 0x6c32_31;
const SALT_T3_2A: u64 = 0x7433_3261;
const SALT_T3_5: u64 = 0x7433_35;
const SALT_L3_4: u64 = 0x6c33_34;
const SALT_MUTATION: u64 = 0x6d75_74;

/// Accumulates per-check verdicts; failure dominates inconclusiveness.
struct Checks {
    worst: f64,
    worst_failure: Option<f64>,
    inconclusive: Option<String>,
}

impl Checks {
    fn new() -> Self {
        Self { worst: 0.0, worst_failure: None, inconclusive: None }
    }

    /// Records a relative residual that must stay within `allowed`.
    fn bound(&mut self, residual: f64, allowed: f64) {
        self.worst = self.worst.max(residual);
        if !(residual <= allowed) {
            let prev = self.worst_failure.unwrap_or(0.0);
            self.worst_failure = Some(prev.max(residual));
        }
    }

    /// Records a predicate that must hold, with a residual witnessing how
    /// badly it fails.
    fn hold(&mut self, ok: bool, residual: f64) {
        self.worst = self.worst.max(residual);
        if !ok {
            let prev = self.worst_failure.unwrap_or(0.0);
            self.worst_failure = Some(prev.max(residual.max(1.0)));
        }
    }

    fn skip(&mut self, reason: &str) {
        if self.inconclusive.is_none() {
            self.inconclusive = Some(reason.to_string());
        }
    }

    fn outcome(self) -> TrialOutcome {
        if let Some(residual) = self.worst_failure {
            TrialOutcome::Fail { residual }
        } else if let Some(reason) = self.inconclusive {
            TrialOutcome::Inconclusive { reason }
        } else {
            TrialOutcome::Pass { residual: self.worst }
        }
    }
}

fn rel(a: Point2, b: Point2, scale: f64) -> f64 {
    (a - b).hypot() / scale.max(f64::MIN_POSITIVE)
}

pub(crate) fn verify(
    id: TheoremId,
    scene: &Scene,
    sys: Option<&OrthoSystem<'_>>,
    tols: &Tolerances,
) -> TrialOutcome {
    if id == TheoremId::L2_1 {
        return verify_l2_1(scene, tols);
    }
    let sys = sys.expect("system required for triangle-level theorems");
    let bundle = construction_bundle(sys);
    let ctx = Ctx { scene, sys, bundle: &bundle, tols };
    match id {
        TheoremId::T2_1 => ctx.t2_1(),
        TheoremId::C2_1 => ctx.c2_1(),
        TheoremId::T3_1 => ctx.t3_1(),
        TheoremId::C3_1 => ctx.c3_1(),
        TheoremId::C3_2 => ctx.c3_2(),
        TheoremId::L3_1 => ctx.l3_1(),
        TheoremId::L3_2 => ctx.l3_2(),
        TheoremId::T3_2a => ctx.t3_2a(),
        TheoremId::L3_3 => ctx.l3_3(),
        TheoremId::T3_2b => ctx.t3_2b(),
        TheoremId::L3_4 => ctx.l3_4(),
        TheoremId::T3_4 => ctx.t3_4(),
        TheoremId::T3_5 => ctx.t3_5(),
        TheoremId::C3_3 => ctx.c3_3(),
        TheoremId::L2_1 => unreachable!(),
    }
}

struct Ctx<'a> {
    scene: &'a Scene,
    sys: &'a OrthoSystem<'a>,
    bundle: &'a ConstructionBundle<'a>,
    tols: &'a Tolerances,
}

impl Ctx<'_> {
    fn norm(&self) -> &NormSpec {
        &self.scene.norm
    }

    fn diam(&self) -> f64 {
        self.sys.diameter()
    }

    /// The quadruple `{x1, x2, x3, x4}`.
    fn quad(&self) -> [Point2; 4] {
        self.sys.quadruple()
    }

    /// Antitriangle vertices extended with `p4` as the fourth antipoint.
    fn antiquad(&self) -> [Point2; 4] {
        let a = self.bundle.anti;
        [a.v1, a.v2, a.v3, self.sys.p4]
    }

    fn medial(&self) -> [Point2; 3] {
        self.bundle.medial.vertices()
    }

    /// Membership residual of `w` on the circle of center `c` and radius
    /// `r`, relative to `r`.
    fn on_circle(&self, c: Point2, r: f64, w: Point2) -> f64 {
        (self.norm().distance(w, c) - r).abs() / r
    }

    /// The segments `[x_i, p_i]` share the midpoint q; doubled offsets of q
    /// from the side midpoints reproduce `x_i - p4`; differences across the
    /// quadruple and antiquadruple swap; the ratio -2 homothety at the
    /// barycenter maps p4 to x4.
    fn t2_1(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let quad = self.quad();
        let anti = self.antiquad();
        let m = self.medial();

        for i in 0..3 {
            cs.bound(rel(midpoint(quad[i], anti[i]), sys.q, d), self.tols.exact);
            let lhs = (sys.q - m[i]).scale(2.0);
            cs.bound(rel(lhs, quad[i] - sys.p4, d), self.tols.exact);
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                cs.bound(rel(quad[i] - quad[j], anti[j] - anti[i], d), self.tols.exact);
            }
        }
        for [i, j, k, l] in permutations4() {
            cs.bound(rel(quad[i] - anti[j], anti[k] - quad[l], d), self.tols.exact);
        }
        let g = self.bundle.barycenter;
        cs.bound(rel(homothety(g, -2.0, sys.p4), sys.x4, d), self.tols.exact);
        cs.outcome()
    }

    /// `x4 = x1 + x2 + x3 - 2 p4`, and the antitriangle's barycenter is the
    /// reflection of the barycenter through q as well as of p4 through g.
    fn c2_1(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let tri = sys.triangle();
        cs.bound(rel(sys.x4, c_orthocenter(&tri, sys.p4), d), self.tols.exact);
        cs.bound(rel(sys.x4, point_symmetry(sys.q, sys.p4), d), self.tols.exact);

        let a = self.bundle.anti;
        let g = self.bundle.barycenter;
        let g1 = (a.v1 + a.v2 + a.v3).scale(1.0 / 3.0);
        cs.bound(rel(g1, point_symmetry(sys.q, g), d), self.tols.exact);
        cs.bound(rel(g1, point_symmetry(g, sys.p4), d), self.tols.exact);
        cs.outcome()
    }

    /// Every antipoint is a circumcenter of the triangle formed by the other
    /// three system points (common radius lambda); all pairwise midpoints and
    /// their antitriangle twins lie on the six-point circle; the half
    /// homothety at x4 carries the circumcircle onto it.
    fn t3_1(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let quad = self.quad();
        let anti = self.antiquad();
        let lam = sys.lambda;

        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    cs.bound(self.on_circle(anti[i], lam, quad[j]), self.tols.membership);
                }
            }
        }
        let feuer = self.bundle.feuerbach;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let mij = midpoint(quad[i], quad[j]);
                let dij = midpoint(anti[i], anti[j]);
                cs.bound(feuer.boundary_deviation(mij), self.tols.membership);
                cs.bound(feuer.boundary_deviation(dij), self.tols.membership);
                cs.bound(rel(dij, point_symmetry(sys.q, mij), d), self.tols.exact);
            }
        }
        cs.bound(rel(sys.q, homothety(sys.x4, 0.5, sys.p4), d), self.tols.exact);
        for k in 0..32 {
            let theta = TAU * k as f64 / 32.0;
            let w = sys.p4 + self.norm().unit_point(theta).scale(lam);
            cs.bound(
                feuer.boundary_deviation(homothety(sys.x4, 0.5, w)),
                self.tols.membership,
            );
        }
        cs.outcome()
    }

    /// The six-point circles of the triangle and of its antitriangle
    /// coincide (center q, radius lambda/2), and the closed-form exchange
    /// identities between the quadruple and the antiquadruple hold.
    fn c3_1(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let quad = self.quad();
        let anti = self.antiquad();
        let a = self.bundle.anti;

        // The antitriangle's own system: circumcenter x4, orthocenter p4,
        // symmetry point q.
        for v in a.vertices() {
            cs.bound(self.on_circle(sys.x4, sys.lambda, v), self.tols.membership);
        }
        cs.bound(rel(symmetry_point_q(&a, sys.x4), sys.q, d), self.tols.exact);
        cs.bound(rel(c_orthocenter(&a, sys.x4), sys.p4, d), self.tols.exact);
        let feuer = self.bundle.feuerbach;
        for i in 0..3 {
            let side_mid = midpoint(a.vertices()[i], a.vertices()[(i + 1) % 3]);
            let euler = midpoint(a.vertices()[i], sys.p4);
            cs.bound(feuer.boundary_deviation(side_mid), self.tols.membership);
            cs.bound(feuer.boundary_deviation(euler), self.tols.membership);
        }

        for l in 0..4 {
            let sum = (0..4)
                .filter(|&i| i != l)
                .map(|i| quad[i])
                .fold(Point2::ZERO, |acc, p| acc + p);
            cs.bound(rel(sys.q, (sum - anti[l]).scale(0.5), d), self.tols.exact);
        }
        for i in 0..4 {
            let sum = (0..4)
                .filter(|&j| j != i)
                .map(|j| quad[j])
                .fold(Point2::ZERO, |acc, p| acc + p);
            cs.bound(rel(quad[i], sum - anti[i].scale(2.0), d), self.tols.exact);
        }
        cs.outcome()
    }

    /// Euler points are Poncelet points, for the triangle and for its
    /// antitriangle, and all of them lie on the six-point circle.
    fn c3_2(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let feuer = self.bundle.feuerbach;

        for (i, &v) in sys.vertices().iter().enumerate() {
            match poncelet_point(sys, v, self.tols.membership) {
                Ok(p) => {
                    cs.bound(rel(p, self.bundle.euler_points[i], d), self.tols.exact);
                    cs.bound(feuer.boundary_deviation(p), self.tols.membership);
                }
                Err(_) => cs.hold(false, 1.0),
            }
        }
        // Antitriangle: circumcircle C(x4, lambda), orthocenter p4; its
        // Euler points are midpoints of [p_i, p4].
        for &v in self.bundle.anti.vertices().iter() {
            cs.bound(self.on_circle(sys.x4, sys.lambda, v), self.tols.membership);
            cs.bound(feuer.boundary_deviation(midpoint(v, sys.p4)), self.tols.membership);
        }
        for &e in &self.bundle.euler_points {
            cs.bound(feuer.boundary_deviation(e), self.tols.membership);
        }
        cs.outcome()
    }

    /// The Euler and medial triangles are congruent with negated side
    /// vectors, share the circumcenter q at radius lambda/2, have p4 and x4
    /// as orthocenters with respect to q, and reflecting x4 through a side
    /// midpoint lands on the circumcircle antipode of the opposite vertex.
    fn l3_1(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let m = self.medial();
        let dp = self.bundle.euler_points;
        let lam = sys.lambda;

        for i in 0..3 {
            for j in (i + 1)..3 {
                cs.bound(((dp[i] - dp[j]) + (m[i] - m[j])).hypot() / d, self.tols.exact);
            }
        }
        for i in 0..3 {
            cs.bound(self.on_circle(sys.q, lam / 2.0, m[i]), self.tols.membership);
            cs.bound(self.on_circle(sys.q, lam / 2.0, dp[i]), self.tols.membership);
        }

        let medial_quad = [m[0], m[1], m[2], sys.p4];
        cs.bound(
            decomposition_residual(self.norm(), &medial_quad, 3),
            self.tols.membership,
        );
        let p_med = (m[0] + m[1] + m[2] - sys.p4).scale(0.5);
        cs.bound(rel(p_med, sys.q, d), self.tols.exact);
        cs.hold(
            is_c_orthocentric(self.norm(), &medial_quad, self.tols.membership).is_some(),
            0.0,
        );

        let euler_quad = [dp[0], dp[1], dp[2], sys.x4];
        cs.bound(
            decomposition_residual(self.norm(), &euler_quad, 3),
            self.tols.membership,
        );
        let p_eul = (dp[0] + dp[1] + dp[2] - sys.x4).scale(0.5);
        cs.bound(rel(p_eul, sys.q, d), self.tols.exact);
        cs.hold(
            is_c_orthocentric(self.norm(), &euler_quad, self.tols.membership).is_some(),
            0.0,
        );

        for (i, &v) in sys.vertices().iter().enumerate() {
            let reflected = point_symmetry(m[i], sys.x4);
            let antipode = point_symmetry(sys.p4, v);
            cs.bound(rel(reflected, antipode, d), self.tols.exact);
            cs.bound(self.on_circle(sys.p4, lam, reflected), self.tols.membership);
        }
        cs.outcome()
    }

    /// Reflections through q exchange side midpoints with Euler points and
    /// vertices with antitriangle vertices; q and p4 are harmonic conjugates
    /// of x4 and the barycenter through the identity pair
    /// `H_{g,-2}(q) = p4`, `S_q(x4) = p4`; each reflected vertex, the
    /// matching side midpoint, and x4 are collinear.
    fn l3_2(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let m = self.medial();
        let dp = self.bundle.euler_points;
        let anti = self.antiquad();
        let g = self.bundle.barycenter;
        let quad = self.quad();

        for i in 0..3 {
            cs.bound(rel(point_symmetry(sys.q, m[i]), dp[i], d), self.tols.exact);
            cs.bound(rel(point_symmetry(sys.q, quad[i]), anti[i], d), self.tols.exact);
        }
        cs.bound(rel(homothety(g, -2.0, sys.q), sys.p4, d), self.tols.exact);
        cs.bound(rel(point_symmetry(sys.q, sys.x4), sys.p4, d), self.tols.exact);

        for (i, &v) in sys.vertices().iter().enumerate() {
            let s = point_symmetry(sys.p4, v);
            let u = m[i] - s;
            let w = sys.x4 - s;
            let residual = u.cross(w).abs() / (u.hypot() * w.hypot()).max(f64::MIN_POSITIVE);
            cs.hold(
                crate::affine::collinear(s, m[i], sys.x4, self.tols.predicate),
                residual,
            );
        }
        cs.outcome()
    }

    /// Poncelet points of the triangle and of its antitriangle lie on the
    /// six-point circle, which also passes through the side midpoints.
    fn t3_2a(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let sys = self.sys;
        let lam = sys.lambda;
        let feuer = self.bundle.feuerbach;
        let mut rng = scene_rng(self.scene, SALT_T3_2A);

        for &mi in &self.medial() {
            cs.bound(self.on_circle(sys.q, lam / 2.0, mi), self.tols.membership);
        }
        for _ in 0..16 {
            let theta = rng.gen_range(0.0..TAU);
            let w = sys.p4 + self.norm().unit_point(theta).scale(lam);
            match poncelet_point(sys, w, self.tols.membership) {
                Ok(p) => cs.bound(feuer.boundary_deviation(p), self.tols.membership),
                Err(_) => cs.hold(false, 1.0),
            }
        }
        for _ in 0..16 {
            let theta = rng.gen_range(0.0..TAU);
            let z = sys.x4 + self.norm().unit_point(theta).scale(lam);
            cs.bound(feuer.boundary_deviation(midpoint(sys.p4, z)), self.tols.membership);
        }
        cs.outcome()
    }

    /// Three derived quadruples are orthocentric systems with half-scale
    /// vector relations: midpoints of [p4, x_i] together with q; the Euler
    /// points with x4; the side midpoints with p4.
    fn l3_3(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let quad = self.quad();
        let anti = self.antiquad();
        let m = self.medial();
        let dp = self.bundle.euler_points;
        let lam = sys.lambda;

        cs.bound(rel(sys.q, midpoint(sys.x4, sys.p4), d), self.tols.exact);

        let qi = [
            midpoint(sys.p4, quad[0]),
            midpoint(sys.p4, quad[1]),
            midpoint(sys.p4, quad[2]),
        ];
        let q_quad = [qi[0], qi[1], qi[2], sys.q];
        cs.hold(
            is_c_orthocentric(self.norm(), &q_quad, self.tols.membership).is_some(),
            0.0,
        );
        cs.bound(decomposition_residual(self.norm(), &q_quad, 3), self.tols.membership);
        for i in 0..3 {
            let (ja, ka) = ((i + 1) % 3, (i + 2) % 3);
            cs.bound(self.on_circle(m[ja], lam / 2.0, qi[i]), self.tols.membership);
            cs.bound(self.on_circle(m[ka], lam / 2.0, qi[i]), self.tols.membership);
            cs.bound(
                rel(qi[i] - sys.q, (quad[i] - sys.x4).scale(0.5), d),
                self.tols.exact,
            );
            for j in (i + 1)..3 {
                cs.bound(
                    rel(qi[i] - qi[j], (quad[i] - quad[j]).scale(0.5), d),
                    self.tols.exact,
                );
            }
        }

        let euler_quad = [dp[0], dp[1], dp[2], sys.x4];
        cs.hold(
            is_c_orthocentric(self.norm(), &euler_quad, self.tols.membership).is_some(),
            0.0,
        );
        for i in 0..3 {
            cs.bound(
                rel(dp[i] - sys.x4, (quad[i] - sys.x4).scale(0.5), d),
                self.tols.exact,
            );
            for j in (i + 1)..3 {
                cs.bound(
                    rel(dp[i] - dp[j], (quad[i] - quad[j]).scale(0.5), d),
                    self.tols.exact,
                );
            }
        }

        let medial_quad = [m[0], m[1], m[2], sys.p4];
        cs.hold(
            is_c_orthocentric(self.norm(), &medial_quad, self.tols.membership).is_some(),
            0.0,
        );
        for i in 0..3 {
            cs.bound(
                rel(m[i] - sys.p4, (anti[i] - sys.p4).scale(0.5), d),
                self.tols.exact,
            );
            for j in (i + 1)..3 {
                cs.bound(
                    rel(m[i] - m[j], (anti[i] - anti[j]).scale(0.5), d),
                    self.tols.exact,
                );
            }
        }
        cs.outcome()
    }

    /// Every two-pair partition of the system is isosceles-orthogonal.
    fn t3_2b(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let quad = self.quad();
        for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let u = quad[i] - quad[j];
            let v = quad[k] - quad[l];
            cs.bound(isosceles_residual(self.norm(), u, v), self.tols.ortho);
        }
        cs.outcome()
    }

    /// The circumcircle circumscribes the antitriangle exactly when q = p4.
    /// Forward: a constructed scene whose barycenter is a circumcenter has
    /// its antitriangle inscribed. Reverse: scenes with q well away from p4
    /// do not.
    fn l3_4(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let sys = self.sys;
        let d = self.diam();

        match build_symmetric_scene(self.norm(), self.scene.seed) {
            Some((tri, center, lam)) => {
                let anti = antitriangle(&tri, center).expect("constructed scene is valid");
                let q = symmetry_point_q(&tri, center);
                cs.bound(rel(q, center, tri.diameter()), 1e-9);
                for v in anti.vertices() {
                    cs.bound(
                        (self.norm().distance(v, center) - lam).abs() / lam,
                        self.tols.membership,
                    );
                }
            }
            None => cs.skip("symmetric scene construction failed"),
        }

        if (sys.q - sys.p4).hypot() > 1e-3 * d {
            let worst_gap = self
                .bundle
                .anti
                .vertices()
                .iter()
                .map(|&v| (self.norm().distance(v, sys.p4) - sys.lambda).abs() / sys.lambda)
                .fold(0.0_f64, f64::max);
            // Inscribed despite q != p4 would contradict the statement.
            cs.hold(worst_gap > 1e-7, 0.0);
        }
        cs.outcome()
    }

    /// Chordal orthogonality on the scene normalized so its six-point circle
    /// is the unit circle: side chords against vertex-to-orthocenter
    /// crossings, and midpoint chords against Euler-point chords.
    fn t3_4(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let sys = self.sys;
        let norm = self.norm();
        let s = 2.0 / sys.lambda;
        let to_unit = |p: Point2| (p - sys.q).scale(s);

        let p: Vec<Point2> = sys.vertices().iter().map(|&v| to_unit(v)).collect();
        let h = to_unit(sys.x4);
        let m: Vec<Point2> = self.medial().iter().map(|&v| to_unit(v)).collect();

        // Side chords: C meets each side line in the midpoint and one more
        // point; when the segment from the opposite vertex to the
        // orthocenter crosses C exactly once, those chords are orthogonal.
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let Ok(side) = Line::through(p[i], p[j]) else {
                cs.skip("degenerate side line");
                continue;
            };
            let pts = match norm.unit_circle_line_intersections(&side) {
                LineCircleIntersection::Points(pts) => pts,
                _ => {
                    cs.skip("degenerate intersection");
                    continue;
                }
            };
            let mut best = 0;
            for (n, pt) in pts.iter().enumerate() {
                if (*pt - m[k]).hypot() < (pts[best] - m[k]).hypot() {
                    best = n;
                }
            }
            let mk = pts[best];
            if (mk - m[k]).hypot() > 1e-6 {
                cs.hold(false, (mk - m[k]).hypot());
                continue;
            }
            let others: Vec<Point2> = pts
                .iter()
                .enumerate()
                .filter(|&(n, _)| n != best)
                .map(|(_, &q)| q)
                .collect();
            if others.len() != 1 || (others[0] - mk).hypot() <= 1e-9 {
                cs.skip("degenerate intersection");
                continue;
            }
            let vk = others[0];

            let Ok(seg_line) = Line::through(p[k], h) else {
                continue; // orthocenter at the vertex: hypothesis vacuous
            };
            let dir = h - p[k];
            let on_segment: Vec<Point2> = match norm.unit_circle_line_intersections(&seg_line) {
                LineCircleIntersection::Points(pts) => pts
                    .into_iter()
                    .filter(|&w| {
                        let t = (w - p[k]).dot(dir) / dir.dot(dir);
                        (-1e-9..=1.0 + 1e-9).contains(&t)
                    })
                    .collect(),
                LineCircleIntersection::EdgeSegment(_) => {
                    cs.skip("degenerate intersection");
                    continue;
                }
                LineCircleIntersection::Empty => Vec::new(),
            };
            if on_segment.len() != 1 {
                continue; // hypothesis unmet for this side
            }
            let uk = on_segment[0];
            match (Chord::new(norm, mk, vk), Chord::new(norm, vk, uk)) {
                (Ok(c1), Ok(c2)) => {
                    let residual = chordal_residual(norm, &c1, &c2);
                    cs.hold(chordal_orthogonal(norm, &c1, &c2, self.tols.predicate), residual);
                }
                _ => cs.skip("degenerate intersection"),
            }
        }

        // Euler-point chords: u_k = (p_k + h)/2 lies on C; [m_i, -m_j] is
        // chordally orthogonal to [-h, u_k] (the criterion line runs through
        // u_k and h, parallel to m_i + m_j), and [m_i, m_j] to [u_i, -u_j].
        let u: Vec<Point2> = (0..3).map(|k| midpoint(p[k], h)).collect();
        for k in 0..3 {
            cs.bound((norm.eval(u[k]) - 1.0).abs(), 2.0 * self.tols.membership);
        }
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            for (a, b) in [(i, j), (j, i)] {
                let dir1 = -m[b] - m[a];
                match chordal_relation(norm, dir1, -h, u[k], self.tols.predicate) {
                    Ok(ok) => {
                        let d2 = h - u[k];
                        let residual = if d2.hypot() > EPS_ON {
                            dir1.cross(d2).abs() / (dir1.hypot() * d2.hypot())
                        } else {
                            0.0
                        };
                        cs.hold(ok, residual);
                    }
                    Err(_) => cs.skip("degenerate euler chord"),
                }
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                match (Chord::new(norm, m[i], m[j]), Chord::new(norm, u[i], -u[j])) {
                    (Ok(c1), Ok(c2)) => {
                        let residual = chordal_residual(norm, &c1, &c2);
                        cs.hold(chordal_orthogonal(norm, &c1, &c2, self.tols.predicate), residual);
                    }
                    _ => cs.skip("degenerate euler chord"),
                }
            }
        }
        cs.outcome()
    }

    /// Homothetic images of a system are systems, with the mapped
    /// circumcenter as the witness.
    fn t3_5(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let sys = self.sys;
        let quad = self.quad();
        let mut rng = scene_rng(self.scene, SALT_T3_5);
        let w = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let mag = rng.gen_range(0.1..3.0);
        let k = if rng.gen_bool(0.5) { mag } else { -mag };

        let image: Vec<Point2> = quad.iter().map(|&x| homothety(w, k, x)).collect();
        let p4_image = homothety(w, k, sys.p4);
        let scale = self.diam() * k.abs();

        cs.bound(
            rel(image[3], image[0] + image[1] + image[2] - p4_image.scale(2.0), scale),
            self.tols.exact,
        );
        let lam_image = sys.lambda * k.abs();
        for i in 0..3 {
            let dist = self.norm().distance(p4_image, image[i]);
            cs.bound((dist - lam_image).abs() / lam_image, self.tols.membership);
        }
        let image4 = [image[0], image[1], image[2], image[3]];
        cs.hold(
            is_c_orthocentric(self.norm(), &image4, self.tols.membership).is_some(),
            0.0,
        );
        cs.outcome()
    }

    /// The barycenters of the four sub-triangles of a system form a system
    /// with third-scale vector relations; for strictly convex norms the same
    /// relation holds through re-solved sub-triangle circumcenters.
    fn c3_3(&self) -> TrialOutcome {
        let mut cs = Checks::new();
        let d = self.diam();
        let sys = self.sys;
        let quad = self.quad();
        let total = quad[0] + quad[1] + quad[2] + quad[3];
        let g: Vec<Point2> = (0..4).map(|i| (total - quad[i]).scale(1.0 / 3.0)).collect();

        for i in 0..4 {
            for j in (i + 1)..4 {
                cs.bound(
                    rel(g[i] - g[j], (quad[j] - quad[i]).scale(1.0 / 3.0), d),
                    self.tols.exact,
                );
            }
        }
        let g_quad = [g[0], g[1], g[2], g[3]];
        cs.hold(
            is_c_orthocentric(self.norm(), &g_quad, self.tols.membership).is_some(),
            0.0,
        );
        cs.bound(decomposition_residual(self.norm(), &g_quad, 3), self.tols.membership);
        let expected_center = homothety(sys.q, -1.0 / 3.0, sys.p4);
        let derived_center = (g[0] + g[1] + g[2] - g[3]).scale(0.5);
        cs.bound(rel(derived_center, expected_center, d), self.tols.exact);

        // Through re-solved circumcenters of the sub-triangles; witness
        // choice is unambiguous only for strictly convex norms.
        if self.norm().is_strictly_convex() {
            let mut centers = Vec::with_capacity(4);
            for i in 0..4 {
                let others: Vec<Point2> = (0..4).filter(|&j| j != i).map(|j| quad[j]).collect();
                let Ok(tri) = Triangle::new(others[0], others[1], others[2]) else {
                    cs.skip("degenerate sub-triangle");
                    return cs.outcome();
                };
                match circumcenters(self.norm(), &tri, &SolverOpts::default()) {
                    Ok(ws) => centers.push(ws[0].center),
                    Err(_) => {
                        cs.skip("no circumcenter witness for a sub-triangle");
                        return cs.outcome();
                    }
                }
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    cs.bound(
                        rel(g[i] - g[j], (centers[i] - centers[j]).scale(1.0 / 3.0), d),
                        self.tols.solver_derived,
                    );
                }
            }
        }
        cs.outcome()
    }
}

/// All 24 permutations of `[0, 1, 2, 3]`.
fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            if j == i {
                continue;
            }
            for k in 0..4 {
                if k == i || k == j {
                    continue;
                }
                out.push([i, j, k, 6 - i - j - k]);
            }
        }
    }
    out
}

/// Chords through a common endpoint are mutually chordally orthogonal
/// exactly when the free endpoints are opposite points of the circle.
fn verify_l2_1(scene: &Scene, tols: &Tolerances) -> TrialOutcome {
    let mut cs = Checks::new();
    let norm = &scene.norm;
    let mut rng = scene_rng(scene, SALT_L2_1);

    let mut triple = None;
    for _ in 0..100 {
        let x = norm.unit_point(rng.gen_range(0.0..TAU));
        let y = norm.unit_point(rng.gen_range(0.0..TAU));
        let z = norm.unit_point(rng.gen_range(0.0..TAU));
        let apart =
            (x - y).hypot() > 1e-4 && (x - z).hypot() > 1e-4 && (y - z).hypot() > 1e-4;
        let off_boundary =
            (z + x).hypot() > 1e-3 && (z + y).hypot() > 1e-3 && (x + y).hypot() > 1e-3;
        if apart && off_boundary {
            triple = Some((x, y, z));
            break;
        }
    }
    let Some((x, y, z)) = triple else {
        cs.skip("triple generation failed");
        return cs.outcome();
    };

    let both = |a: Point2, b: Point2, c: Point2| -> Option<bool> {
        let ca = Chord::new(norm, a, c).ok()?;
        let cb = Chord::new(norm, b, c).ok()?;
        Some(
            chordal_orthogonal(norm, &ca, &cb, tols.predicate)
                && chordal_orthogonal(norm, &cb, &ca, tols.predicate),
        )
    };
    match both(x, y, z) {
        Some(lhs) => {
            let rhs = norm.eval(x + y) <= EPS_ON;
            cs.hold(lhs == rhs, if lhs == rhs { 0.0 } else { 1.0 });
        }
        None => cs.skip("chord construction failed"),
    }

    // Constructed antipodal pair: the reverse direction of the equivalence.
    let x2 = norm.unit_point(rng.gen_range(0.0..TAU));
    let y2 = -x2;
    let mut z2 = norm.unit_point(rng.gen_range(0.0..TAU));
    for _ in 0..100 {
        if (z2 + x2).hypot() > 1e-3 && (z2 - x2).hypot() > 1e-3 {
            break;
        }
        z2 = norm.unit_point(rng.gen_range(0.0..TAU));
    }
    match both(x2, y2, z2) {
        Some(lhs) => {
            let c1 = Chord::new(norm, x2, z2).expect("on-circle by construction");
            let c2 = Chord::new(norm, y2, z2).expect("on-circle by construction");
            cs.hold(lhs, chordal_residual(norm, &c1, &c2));
        }
        None => cs.skip("chord construction failed"),
    }
    cs.outcome()
}

/// Builds a triangle whose barycenter is itself a circumcenter: three unit
/// directions summing to zero, scaled and translated. Returns the triangle,
/// the center, and the circumradius.
fn build_symmetric_scene(norm: &NormSpec, seed: u64) -> Option<(Triangle, Point2, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SALT_L3_4);
    for _ in 0..64 {
        let u1 = norm.unit_point(rng.gen_range(0.0..TAU));
        let s = -u1;
        // Find u2 on the circle with ||s - u2|| = 1; then u3 = s - u2 is on
        // the circle as well and u1 + u2 + u3 = 0.
        let f = |theta: f64| norm.eval(s - norm.unit_point(theta)) - 1.0;
        let samples = 128;
        let mut root = None;
        let mut prev_theta = 0.0;
        let mut prev_val = f(0.0);
        for i in 1..=samples {
            let theta = TAU * i as f64 / samples as f64;
            let val = f(theta);
            if prev_val == 0.0 {
                root = Some(prev_theta);
                break;
            }
            if prev_val * val < 0.0 {
                let (mut lo, mut hi) = (prev_theta, theta);
                let mut flo = prev_val;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                root = Some(0.5 * (lo + hi));
                break;
            }
            prev_theta = theta;
            prev_val = val;
        }
        let Some(theta) = root else { continue };
        let u2 = norm.unit_point(theta);
        let u3 = s - u2;
        let lam = rng.gen_range(0.5..2.0);
        let center = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if let Ok(tri) = Triangle::new(
            center + u1.scale(lam),
            center + u2.scale(lam),
            center + u3.scale(lam),
        ) {
            if tri.min_angle() >= crate::harness::MIN_ANGLE {
                return Some((tri, center, lam));
            }
        }
    }
    None
}

/// Runs a theorem against a deliberately corrupted orthocenter; used to show
/// the verifiers are not vacuous.
pub fn verify_with_mutated_orthocenter(
    id: TheoremId,
    scene: &Scene,
    tols: &Tolerances,
) -> TrialOutcome {
    let sys = match scene.system(tols.circumcenter) {
        Ok(sys) => sys,
        Err(e) => {
            return TrialOutcome::Inconclusive { reason: format!("system build failed: {e}") }
        }
    };
    let mut rng = scene_rng(scene, SALT_MUTATION);
    let phi = rng.gen_range(0.0..TAU);
    let delta = Point2::new(phi.cos(), phi.sin()).scale(0.1 * sys.diameter());
    let mutated = sys.with_perturbed_orthocenter(delta);
    crate::harness::verify_theorem_on_system(id, scene, &mutated, tols)
}
