//! Acceptance suite. Each test covers one criterion, prints one PASS line,
//! and pins every tolerance in code.

use std::process::Command;
use std::time::Instant;

use minkplane::affine::{homothety, midpoint, point_symmetry};
use minkplane::construct::antitriangle;
use minkplane::norm::EPS_ON;
use minkplane::ortho::chordal_orthogonal;
use minkplane::{
    builtin_norm_pool, circumcenters, mutation_self_test, random_scene, run_suite, Chord,
    NormSpec, Point2, SolverOpts, TheoremId, Triangle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minkplane"))
}

/// Equioscillation residual evaluated independently of the solver path.
fn residual(norm: &NormSpec, tri: &Triangle, c: Point2) -> f64 {
    let [a, b, v] = tri.vertices();
    let d1 = norm.eval(c - a);
    let d2 = norm.eval(c - b);
    let d3 = norm.eval(c - v);
    (d1 - d2).abs().max((d2 - d3).abs()).max((d1 - d3).abs())
}

fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let mut draw = || Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if let Ok(t) = Triangle::new(draw(), draw(), draw()) {
            if t.min_angle() >= 5.0_f64.to_radians() && (1.0..=4.0).contains(&t.diameter()) {
                return t;
            }
        }
    }
}

/// Scenes with a solved witness, drawn until `count` succeed.
fn sample_systems(norm: &NormSpec, count: usize, seed: u64) -> Vec<minkplane::Scene> {
    let scenes: Vec<minkplane::Scene> = (0..count as u64 * 4)
        .into_par_iter()
        .filter_map(|k| random_scene(norm, seed.wrapping_add(k * 0x9e37_79b9)).ok())
        .collect();
    assert!(
        scenes.len() >= count,
        "{norm}: only {} witnessed scenes out of {}",
        scenes.len(),
        count * 4
    );
    scenes.into_iter().take(count).collect()
}

/// Criterion 1: the full CLI verify run over the builtin pool exits 0 with
/// zero failures, per-scene relative residuals within 1e-7, in under five
/// minutes.
#[test]
fn acceptance_1_full_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let t0 = Instant::now();
    let out = bin()
        .args([
            "verify",
            "--theorems",
            "all",
            "--trials",
            "100",
            "--seed",
            "1",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    let elapsed = t0.elapsed();
    assert_eq!(
        out.status.code(),
        Some(0),
        "verify exited nonzero; stderr:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 15 * 6, "one report per (theorem, norm)");
    for r in arr {
        let id = r["theorem_id"].as_str().unwrap();
        let failures = r["failures"].as_array().unwrap();
        assert!(failures.is_empty(), "{id}: {} failures", failures.len());
        let max_residual = r["max_residual"].as_f64().unwrap();
        assert!(
            max_residual <= 1e-7,
            "{id}: max relative residual {max_residual} above 1e-7"
        );
    }
    assert!(
        elapsed.as_secs() < 300,
        "full suite took {elapsed:?}, budget is five minutes"
    );
    println!(
        "ACCEPTANCE 1 full-suite: PASS (90 reports, 0 failures, wall {:.1}s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: every solver witness on 50 random triangles per norm is
/// confirmed by the exhaustive grid oracle (step diam/2000 over the
/// 3x-scaled bounding box, refined once) at 1e-6 * diam, and the grid never
/// certifies a circumcenter the solver missed. The L-infinity staple
/// triangle yields (1,1) with radius 1 within 1e-6.
#[test]
fn acceptance_2_solver_vs_grid_oracle() {
    let pool = builtin_norm_pool();
    let mut confirmed = 0usize;
    let mut no_witness = 0usize;
    for norm in &pool {
        let results: Vec<(usize, usize)> = (0..50u64)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0002 ^ (k * 7919));
                let tri = random_triangle(&mut rng);
                let diam = tri.diameter();
                let h = diam / 2000.0;
                let witnesses = circumcenters(norm, &tri, &SolverOpts::default()).ok();

                // Exhaustive coarse pass over the 3x-scaled bounding box.
                let [a, b, c] = tri.vertices();
                let lo = Point2::new(a.x.min(b.x).min(c.x), a.y.min(b.y).min(c.y));
                let hi = Point2::new(a.x.max(b.x).max(c.x), a.y.max(b.y).max(c.y));
                let center = midpoint(lo, hi);
                let half = (hi - lo).scale(1.5);
                let cols = (2.0 * half.x / h).ceil() as usize + 1;
                let rows = (2.0 * half.y / h).ceil() as usize + 1;
                let mut coarse = (f64::INFINITY, Point2::ZERO);
                for row in 0..rows {
                    let y = center.y - half.y + row as f64 * h;
                    for col in 0..cols {
                        let x = center.x - half.x + col as f64 * h;
                        let p = Point2::new(x, y);
                        let f = residual(norm, &tri, p);
                        if f < coarse.0 {
                            coarse = (f, p);
                        }
                    }
                }
                // Refined once: a fine pass around the coarse argmin.
                let mut oracle_min = coarse.0;
                for i in -100i32..=100 {
                    for j in -100i32..=100 {
                        let p = coarse.1 + Point2::new(i as f64, j as f64).scale(h / 100.0);
                        oracle_min = oracle_min.min(residual(norm, &tri, p));
                    }
                }

                match witnesses {
                    Some(ws) => {
                        for w in &ws {
                            // Confirmation: a fine grid centered on the
                            // witness (the witness is the middle node).
                            let mut local = f64::INFINITY;
                            for i in -100i32..=100 {
                                for j in -100i32..=100 {
                                    let p = w.center
                                        + Point2::new(i as f64, j as f64).scale(h / 100.0);
                                    local = local.min(residual(norm, &tri, p));
                                }
                            }
                            assert!(
                                local <= 1e-6 * diam,
                                "{norm}: witness {:?} unconfirmed (local grid min {local:.3e}, diam {diam})",
                                w.center
                            );
                        }
                        (ws.len(), 0)
                    }
                    None => {
                        assert!(
                            oracle_min > 1e-6 * diam,
                            "{norm}: solver reported no witness but the grid oracle found residual {oracle_min:.3e} (diam {diam})"
                        );
                        (0, 1)
                    }
                }
            })
            .collect();
        confirmed += results.iter().map(|r| r.0).sum::<usize>();
        no_witness += results.iter().map(|r| r.1).sum::<usize>();
    }

    // The pinned polygonal example: minimum-radius circumcenter (1,1).
    let linf = NormSpec::lp(f64::INFINITY).unwrap();
    let tri = Triangle::new(
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(0.0, 2.0),
    )
    .unwrap();
    let ws = circumcenters(&linf, &tri, &SolverOpts::default()).unwrap();
    let hit = ws
        .iter()
        .find(|w| (w.center - Point2::new(1.0, 1.0)).hypot() < 1e-6)
        .expect("witness near (1,1)");
    assert!((hit.radius - 1.0).abs() < 1e-6);
    println!(
        "ACCEPTANCE 2 solver-vs-oracle: PASS ({confirmed} witnesses confirmed, {no_witness} empty scenes cross-checked)"
    );
}

/// Criterion 3: closed-form identity battery at 1e-12 * diam over a thousand
/// systems per norm.
#[test]
fn acceptance_3_exact_identity_battery() {
    let pool = builtin_norm_pool();
    for norm in &pool {
        let scenes = sample_systems(norm, 1000, 0xacce_0003);
        let worst = scenes
            .par_iter()
            .map(|scene| {
                let sys = scene.system(1e-8).expect("witnessed scene");
                let tri = sys.triangle();
                let d = tri.diameter();
                let x = [sys.x1, sys.x2, sys.x3, sys.x4];
                let m = tri.side_midpoints();
                let anti = antitriangle(&tri, sys.p4).unwrap();
                let p = [anti.v1, anti.v2, anti.v3, sys.p4];
                let g = tri.barycenter();
                let mut worst: f64 = 0.0;
                fn track_into(worst: &mut f64, v: Point2, d: f64) {
                    *worst = (*worst).max(v.hypot() / d);
                }
                macro_rules! track {
                    ($v:expr) => {
                        track_into(&mut worst, $v, d)
                    };
                }

                // T2.1 1: common midpoint and the doubled offset identity.
                for i in 0..3 {
                    track!(midpoint(x[i], p[i]) - sys.q);
                    track!((sys.q - m[i]).scale(2.0) - (x[i] - sys.p4));
                }
                // T2.1 2: x_i - x_j = p_j - p_i.
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        track!((x[i] - x[j]) - (p[j] - p[i]));
                    }
                }
                // T2.1 3: x_i - p_j = p_k - x_l over all permutations.
                for i in 0..4 {
                    for j in 0..4 {
                        for k in 0..4 {
                            if j == i || k == i || k == j {
                                continue;
                            }
                            let l = 6 - i - j - k;
                            track!((x[i] - p[j]) - (p[k] - x[l]));
                        }
                    }
                }
                // T2.1 4 and C2.1.
                track!(homothety(g, -2.0, sys.p4) - sys.x4);
                track!(sys.x4 - (x[0] + x[1] + x[2] - sys.p4.scale(2.0)));
                let g1 = (p[0] + p[1] + p[2]).scale(1.0 / 3.0);
                track!(g1 - point_symmetry(sys.q, g));
                track!(g1 - point_symmetry(g, sys.p4));
                // C3.1 2 and 3.
                for l in 0..4 {
                    let sum = (0..4).filter(|&i| i != l).fold(Point2::ZERO, |acc, i| acc + x[i]);
                    track!(sys.q - (sum - p[l]).scale(0.5));
                    track!(x[l] - (sum - p[l].scale(2.0)));
                }
                // L3.2 items 1-4.
                let dpts = [
                    midpoint(x[0], sys.x4),
                    midpoint(x[1], sys.x4),
                    midpoint(x[2], sys.x4),
                ];
                for i in 0..3 {
                    track!(point_symmetry(sys.q, m[i]) - dpts[i]);
                    track!(point_symmetry(sys.q, x[i]) - p[i]);
                }
                track!(homothety(g, -2.0, sys.q) - sys.p4);
                track!(point_symmetry(sys.q, sys.x4) - sys.p4);
                for i in 0..3 {
                    let s = point_symmetry(sys.p4, x[i]);
                    let u = m[i] - s;
                    let w = sys.x4 - s;
                    worst = worst.max(u.cross(w).abs() / (u.hypot() * w.hypot()).max(1e-300));
                }
                // L3.3 vector relations.
                let qi = [
                    midpoint(sys.p4, x[0]),
                    midpoint(sys.p4, x[1]),
                    midpoint(sys.p4, x[2]),
                ];
                for i in 0..3 {
                    track!((qi[i] - sys.q) - (x[i] - sys.x4).scale(0.5));
                    track!((dpts[i] - sys.x4) - (x[i] - sys.x4).scale(0.5));
                    track!((m[i] - sys.p4) - (p[i] - sys.p4).scale(0.5));
                    for j in (i + 1)..3 {
                        track!((qi[i] - qi[j]) - (x[i] - x[j]).scale(0.5));
                        track!((dpts[i] - dpts[j]) - (x[i] - x[j]).scale(0.5));
                        track!((m[i] - m[j]) - (p[i] - p[j]).scale(0.5));
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max);
        assert!(worst <= 1e-12, "{norm}: worst closed-form residual {worst:.3e}");
    }
    println!("ACCEPTANCE 3 exact-identities: PASS (1000 systems x 6 norms, residual <= 1e-12*diam)");
}

/// Criterion 4: the isosceles property of every pair partition at
/// 1e-8 * (|u| + |v|) over a thousand systems per norm.
#[test]
fn acceptance_4_isosceles_partitions() {
    let pool = builtin_norm_pool();
    for norm in &pool {
        let scenes = sample_systems(norm, 1000, 0xacce_0004);
        let worst = scenes
            .par_iter()
            .map(|scene| {
                let sys = scene.system(1e-8).expect("witnessed scene");
                let x = [sys.x1, sys.x2, sys.x3, sys.x4];
                let mut worst: f64 = 0.0;
                for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
                    let u = x[i] - x[j];
                    let v = x[k] - x[l];
                    let gap = (norm.eval(u + v) - norm.eval(u - v)).abs();
                    worst = worst.max(gap / (norm.eval(u) + norm.eval(v)));
                }
                worst
            })
            .reduce(|| 0.0, f64::max);
        assert!(worst <= 1e-8, "{norm}: worst isosceles gap {worst:.3e}");
    }
    println!("ACCEPTANCE 4 isosceles-partitions: PASS (3 partitions x 1000 systems x 6 norms)");
}

/// Criterion 5: mutual chordal orthogonality of chords through a common
/// endpoint is equivalent to antipodality of the free endpoints, over a
/// thousand random triples per norm plus constructed antipodal pairs.
#[test]
fn acceptance_5_chordal_biconditional() {
    use std::f64::consts::TAU;
    let pool = builtin_norm_pool();
    for norm in &pool {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
        let mut tested = 0;
        while tested < 1000 {
            let x = norm.unit_point(rng.gen_range(0.0..TAU));
            let y = norm.unit_point(rng.gen_range(0.0..TAU));
            let z = norm.unit_point(rng.gen_range(0.0..TAU));
            let apart =
                (x - y).hypot() > 1e-4 && (x - z).hypot() > 1e-4 && (y - z).hypot() > 1e-4;
            if !apart
                || (z + x).hypot() <= 1e-3
                || (z + y).hypot() <= 1e-3
                || (x + y).hypot() <= 1e-3
            {
                continue;
            }
            let cxz = Chord::new(norm, x, z).unwrap();
            let cyz = Chord::new(norm, y, z).unwrap();
            let lhs = chordal_orthogonal(norm, &cxz, &cyz, 1e-9)
                && chordal_orthogonal(norm, &cyz, &cxz, 1e-9);
            let rhs = norm.eval(x + y) <= EPS_ON;
            assert_eq!(lhs, rhs, "{norm}: equivalence broken at x={x:?} y={y:?} z={z:?}");
            tested += 1;
        }
        let mut antipodal = 0;
        while antipodal < 100 {
            let x = norm.unit_point(rng.gen_range(0.0..TAU));
            let z = norm.unit_point(rng.gen_range(0.0..TAU));
            if (z - x).hypot() <= 1e-3 || (z + x).hypot() <= 1e-3 {
                continue;
            }
            let cxz = Chord::new(norm, x, z).unwrap();
            let cyz = Chord::new(norm, -x, z).unwrap();
            assert!(
                chordal_orthogonal(norm, &cxz, &cyz, 1e-9)
                    && chordal_orthogonal(norm, &cyz, &cxz, 1e-9),
                "{norm}: antipodal pair not mutually orthogonal"
            );
            antipodal += 1;
        }
    }
    println!("ACCEPTANCE 5 chordal-biconditional: PASS (1000 triples + 100 antipodal x 6 norms)");
}

/// Criterion 6: the chordal-orthogonality theorem on normalized scenes: no
/// failures anywhere, no inconclusives on strictly convex norms, and an
/// inconclusive rate below one half on the polygonal ones.
#[test]
fn acceptance_6_normalized_chordal_scenes() {
    let pool = builtin_norm_pool();
    let run = run_suite(&[TheoremId::T3_4], 200, &pool, 0xacce_0006);
    let mut summary = String::new();
    for r in &run.reports {
        assert!(
            r.failures.is_empty(),
            "{}: {} failures under {}",
            r.theorem_id,
            r.failures.len(),
            r.norm
        );
        if r.norm.is_strictly_convex() {
            assert_eq!(
                r.inconclusive, 0,
                "{}: inconclusive scenes on strictly convex {}",
                r.theorem_id, r.norm
            );
        } else {
            assert!(
                f64::from(r.inconclusive) < 0.5 * f64::from(r.trials),
                "{}: inconclusive rate {}/{} on {}",
                r.theorem_id,
                r.inconclusive,
                r.trials,
                r.norm
            );
        }
        summary.push_str(&format!("{}={}incl ", r.norm, r.inconclusive));
    }
    println!("ACCEPTANCE 6 normalized-chordal: PASS (200 scenes/norm; {summary})");
}

/// Criterion 7: corrupting the orthocenter by a tenth of the diameter makes
/// every orthocenter-referencing verifier fail at least once.
#[test]
fn acceptance_7_mutation_self_test() {
    let outcomes = mutation_self_test(&NormSpec::Euclidean, 4, 0xacce_0007);
    assert_eq!(outcomes.len(), 13, "thirteen theorems reference the orthocenter");
    for o in &outcomes {
        assert!(
            o.failures_detected >= 1,
            "{}: verifier passed on every corrupted scene",
            o.theorem_id
        );
    }
    println!(
        "ACCEPTANCE 7 mutation-self-test: PASS ({})",
        outcomes
            .iter()
            .map(|o| format!("{}:{}/{}", o.theorem_id, o.failures_detected, o.trials))
            .collect::<Vec<_>>()
            .join(" ")
    );
}

/// Criterion 8: identical flags give byte-identical report JSON and SVG.
#[test]
fn acceptance_8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let status = bin()
            .args([
                "verify",
                "--theorems",
                "T3.2b,L3.4,T3.4",
                "--trials",
                "5",
                "--seed",
                "9",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "report JSON must be byte-identical"
    );

    let scene = dir.path().join("scene.json");
    std::fs::write(
        &scene,
        r#"{"norm":{"kind":"polygon","vertices":[[1,0],[0.5,0.866],[-0.5,0.866],[-1,0],[-0.5,-0.866],[0.5,-0.866]]},"triangle":[[0.3,-0.7],[1.9,0.2],[-0.4,1.1]]}"#,
    )
    .unwrap();
    let s1 = dir.path().join("f1.svg");
    let s2 = dir.path().join("f2.svg");
    for out in [&s1, &s2] {
        let status = bin()
            .args(["figure", scene.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(&s1).unwrap(),
        std::fs::read(&s2).unwrap(),
        "SVG must be byte-identical"
    );
    println!("ACCEPTANCE 8 determinism: PASS (byte-identical reports and figures)");
}
