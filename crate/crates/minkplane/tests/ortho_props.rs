//! Property tests for the orthogonality predicates.

use std::f64::consts::TAU;

use minkplane::norm::EPS_ON;
use minkplane::ortho::{birkhoff_orthogonal, chordal_orthogonal, isosceles_orthogonal};
use minkplane::{builtin_norm_pool, Chord, NormSpec, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn isosceles_orthogonality_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for norm in builtin_norm_pool() {
        for _ in 0..400 {
            let x = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            assert_eq!(
                isosceles_orthogonal(&norm, x, y, 1e-9),
                isosceles_orthogonal(&norm, y, x, 1e-9),
            );
        }
    }
}

#[test]
fn isosceles_orthogonality_is_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for norm in builtin_norm_pool() {
        for _ in 0..400 {
            let x = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let verdict = isosceles_orthogonal(&norm, x, y, 1e-9);
            for lambda in [1e-6, 0.5, 3.0, 1e6] {
                assert_eq!(
                    verdict,
                    isosceles_orthogonal(&norm, x.scale(lambda), y.scale(lambda), 1e-9),
                    "norm {norm}, lambda {lambda}"
                );
            }
        }
    }
}

#[test]
fn birkhoff_is_reflexively_true_for_zero_base() {
    let e = NormSpec::Euclidean;
    assert!(birkhoff_orthogonal(&e, Point2::ZERO, Point2::new(1.0, 2.0), 1e-9).unwrap());
}

/// Two chords through a common endpoint are mutually chordally orthogonal
/// exactly when the free endpoints are antipodal.
#[test]
fn opposite_points_characterize_mutual_chordal_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for norm in builtin_norm_pool() {
        let mut antipodal_checked = 0;
        for _ in 0..1000 {
            let x = norm.unit_point(rng.gen_range(0.0..TAU));
            let y = norm.unit_point(rng.gen_range(0.0..TAU));
            let z = norm.unit_point(rng.gen_range(0.0..TAU));
            let apart =
                (x - y).hypot() > 1e-4 && (x - z).hypot() > 1e-4 && (y - z).hypot() > 1e-4;
            if !apart || (z + x).hypot() <= 1e-3 || (z + y).hypot() <= 1e-3 {
                continue;
            }
            if (x + y).hypot() <= 1e-3 {
                continue;
            }
            let cxz = Chord::new(&norm, x, z).unwrap();
            let cyz = Chord::new(&norm, y, z).unwrap();
            let lhs = chordal_orthogonal(&norm, &cxz, &cyz, 1e-9)
                && chordal_orthogonal(&norm, &cyz, &cxz, 1e-9);
            let rhs = norm.eval(x + y) <= EPS_ON;
            assert_eq!(lhs, rhs, "norm {norm}: x={x:?} y={y:?} z={z:?}");
        }
        // Constructed antipodal pairs: the reverse direction.
        for _ in 0..50 {
            let x = norm.unit_point(rng.gen_range(0.0..TAU));
            let y = -x;
            let z = norm.unit_point(rng.gen_range(0.0..TAU));
            if (z - x).hypot() <= 1e-3 || (z + x).hypot() <= 1e-3 {
                continue;
            }
            let cxz = Chord::new(&norm, x, z).unwrap();
            let cyz = Chord::new(&norm, y, z).unwrap();
            assert!(chordal_orthogonal(&norm, &cxz, &cyz, 1e-9), "norm {norm}");
            assert!(chordal_orthogonal(&norm, &cyz, &cxz, 1e-9), "norm {norm}");
            antipodal_checked += 1;
        }
        assert!(antipodal_checked > 30);
    }
}

/// The Birkhoff predicate agrees with a dense grid scan of the section
/// minimum on random instances.
#[test]
fn birkhoff_matches_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for norm in builtin_norm_pool() {
        for _ in 0..40 {
            let x = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if norm.eval(y) < 1e-3 || norm.eval(x) < 1e-3 {
                continue;
            }
            let nx = norm.eval(x);
            let bound = 4.0 * nx / norm.eval(y) + 1.0;
            let mut grid_min = f64::INFINITY;
            for k in 0..=4000 {
                let t = -bound + 2.0 * bound * k as f64 / 4000.0;
                grid_min = grid_min.min(norm.eval(x + y * t));
            }
            let verdict = birkhoff_orthogonal(&norm, x, y, 1e-9).unwrap();
            // The grid undershoots the true minimum by at most its spacing
            // times the slope; compare with a margin wide enough for both.
            let margin = 2.0 * bound / 4000.0 * norm.eval(y) + 1e-9 * nx.max(1.0);
            if verdict {
                assert!(grid_min >= nx - margin, "norm {norm}: {grid_min} vs {nx}");
            } else {
                assert!(grid_min < nx + margin, "norm {norm}: {grid_min} vs {nx}");
            }
        }
    }
}
