//! Randomized scene generation and per-theorem verification.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{build_system, OrthoSystem};
use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::point::{Point2, Triangle};
use crate::solver::{circumcenters, SolverOpts};

/// Minimum interior angle accepted for random triangles (radians).
pub const MIN_ANGLE: f64 = 5.0 * std::f64::consts::PI / 180.0;

/// A reproducible verification scene: a norm, a triangle, and one
/// solver-confirmed circumcenter.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SceneWire", into = "SceneWire")]
pub struct Scene {
    pub norm: NormSpec,
    pub tri: Triangle,
    pub p4: Point2,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct SceneWire {
    norm: NormSpec,
    triangle: [[f64; 2]; 3],
    p4: [f64; 2],
    seed: u64,
}

impl From<Scene> for SceneWire {
    fn from(s: Scene) -> Self {
        SceneWire {
            norm: s.norm,
            triangle: [s.tri.v1.into(), s.tri.v2.into(), s.tri.v3.into()],
            p4: s.p4.into(),
            seed: s.seed,
        }
    }
}

impl TryFrom<SceneWire> for Scene {
    type Error = Error;
    fn try_from(w: SceneWire) -> Result<Self> {
        let [a, b, c] = w.triangle;
        Ok(Scene {
            norm: w.norm,
            tri: Triangle::new(a.into(), b.into(), c.into())?,
            p4: w.p4.into(),
            seed: w.seed,
        })
    }
}

impl Scene {
    /// Builds the orthocentric system this scene describes.
    pub fn system(&self, tol: f64) -> Result<OrthoSystem<'_>> {
        build_system(&self.norm, &self.tri, self.p4, tol)
    }
}

/// Draws a scene: vertices i.i.d. uniform in `[-2, 2]^2`, redrawn until the
/// minimum angle is at least 5 degrees and the diameter lies in `[1, 4]`;
/// the circumcenter is the solver's first witness.
pub fn random_scene(norm: &NormSpec, seed: u64) -> Result<Scene> {
    random_scene_with_limit(norm, seed, 1000)
}

pub(crate) fn random_scene_with_limit(norm: &NormSpec, seed: u64, max_draws: u32) -> Result<Scene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    while rejected < max_draws {
        let mut draw = || Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (a, b, c) = (draw(), draw(), draw());
        let Ok(tri) = Triangle::new(a, b, c) else {
            rejected += 1;
            continue;
        };
        let diam = tri.diameter();
        if tri.min_angle() < MIN_ANGLE || !(1.0..=4.0).contains(&diam) {
            rejected += 1;
            continue;
        }
        let witnesses = circumcenters(norm, &tri, &SolverOpts::default())?;
        return Ok(Scene { norm: norm.clone(), tri, p4: witnesses[0].center, seed });
    }
    Err(Error::GenerationFailed(rejected))
}

/// Deterministic per-trial RNG; `salt` separates independent draws made by
/// different verifiers on the same scene.
pub(crate) fn scene_rng(scene: &Scene, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(scene.seed ^ salt)
}

/// The fifteen verified results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    L2_1,
    T2_1,
    C2_1,
    T3_1,
    C3_1,
    C3_2,
    L3_1,
    L3_2,
    T3_2a,
    L3_3,
    T3_2b,
    L3_4,
    T3_4,
    T3_5,
    C3_3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::L2_1,
        TheoremId::T2_1,
        TheoremId::C2_1,
        TheoremId::T3_1,
        TheoremId::C3_1,
        TheoremId::C3_2,
        TheoremId::L3_1,
        TheoremId::L3_2,
        TheoremId::T3_2a,
        TheoremId::L3_3,
        TheoremId::T3_2b,
        TheoremId::L3_4,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::C3_3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::L2_1 => "L2.1",
            TheoremId::T2_1 => "T2.1",
            TheoremId::C2_1 => "C2.1",
            TheoremId::T3_1 => "T3.1",
            TheoremId::C3_1 => "C3.1",
            TheoremId::C3_2 => "C3.2",
            TheoremId::L3_1 => "L3.1",
            TheoremId::L3_2 => "L3.2",
            TheoremId::T3_2a => "T3.2a",
            TheoremId::L3_3 => "L3.3",
            TheoremId::T3_2b => "T3.2b",
            TheoremId::L3_4 => "L3.4",
            TheoremId::T3_4 => "T3.4",
            TheoremId::T3_5 => "T3.5",
            TheoremId::C3_3 => "C3.3",
        }
    }

    /// Whether the verifier reads the orthocenter, i.e. whether the mutation
    /// self-test must be able to make it fail.
    pub fn references_orthocenter(&self) -> bool {
        !matches!(self, TheoremId::L2_1 | TheoremId::L3_4)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownTheoremId(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Tolerance bundle used by the verifiers. All values are relative to the
/// natural scale of the quantity they gate.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Closed-form affine identities, relative to the triangle diameter.
    pub exact: f64,
    /// Circle memberships, relative to the radius.
    pub membership: f64,
    /// Isosceles orthogonality.
    pub ortho: f64,
    /// Parallelism and collinearity predicates.
    pub predicate: f64,
    /// Circumcenter acceptance when building systems.
    pub circumcenter: f64,
    /// Derived checks limited by solver accuracy (re-solved circumcenters).
    pub solver_derived: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: 1e-12,
            membership: 1e-8,
            ortho: 1e-8,
            predicate: 1e-9,
            circumcenter: 1e-8,
            solver_derived: 1e-6,
        }
    }
}

/// Result of one verification trial.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Pass { residual: f64 },
    Fail { residual: f64 },
    Inconclusive { reason: String },
}

impl TrialOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, TrialOutcome::Pass { .. })
    }
    pub fn is_fail(&self) -> bool {
        matches!(self, TrialOutcome::Fail { .. })
    }
}

/// Evaluates one theorem on one scene.
pub fn verify_theorem(id: TheoremId, scene: &Scene, tols: &Tolerances) -> TrialOutcome {
    if id == TheoremId::L2_1 {
        // Unit-circle statement; no system needed.
        return crate::verifiers::verify(id, scene, None, tols);
    }
    match scene.system(tols.circumcenter) {
        Ok(sys) => crate::verifiers::verify(id, scene, Some(&sys), tols),
        Err(e) => TrialOutcome::Inconclusive { reason: format!("system build failed: {e}") },
    }
}

/// Same as [`verify_theorem`] but with a caller-supplied system; the mutation
/// self-test uses this to feed verifiers a corrupted orthocenter.
pub fn verify_theorem_on_system(
    id: TheoremId,
    scene: &Scene,
    sys: &OrthoSystem<'_>,
    tols: &Tolerances,
) -> TrialOutcome {
    crate::verifiers::verify(id, scene, Some(sys), tols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenes_are_deterministic() {
        let e = NormSpec::Euclidean;
        let a = random_scene(&e, 42).unwrap();
        let b = random_scene(&e, 42).unwrap();
        assert_eq!(a.tri.v1, b.tri.v1);
        assert_eq!(a.tri.v2, b.tri.v2);
        assert_eq!(a.tri.v3, b.tri.v3);
        assert_eq!(a.p4, b.p4);
    }

    #[test]
    fn generation_failure_surfaces_after_exhaustion() {
        let e = NormSpec::Euclidean;
        let r = random_scene_with_limit(&e, 1, 0);
        assert!(matches!(r, Err(Error::GenerationFailed(_))));
    }

    #[test]
    fn linf_scenes_have_small_residual_or_no_witness() {
        // Not every triangle has a circumcenter under a polygonal norm;
        // witnesses that do come back must meet the residual contract.
        let linf = NormSpec::lp(f64::INFINITY).unwrap();
        let mut found = 0;
        for seed in 0..12 {
            match random_scene(&linf, seed) {
                Ok(scene) => {
                    let res = crate::solver::equidistance_residual(&linf, &scene.tri, scene.p4);
                    assert!(res <= 1e-7 * scene.tri.diameter());
                    found += 1;
                }
                Err(Error::NoWitness) => {}
                Err(e) => panic!("unexpected scene error: {e}"),
            }
        }
        assert!(found >= 6, "witness rate collapsed: {found}/12");
    }

    #[test]
    fn theorem_ids_round_trip_through_strings() {
        for id in TheoremId::ALL {
            let s = id.as_str();
            let back: TheoremId = s.parse().unwrap();
            assert_eq!(back, id);
        }
        assert!(matches!(
            "T9.9".parse::<TheoremId>(),
            Err(Error::UnknownTheoremId(_))
        ));
    }

    #[test]
    fn scene_json_round_trips() {
        let e = NormSpec::Euclidean;
        let scene = random_scene(&e, 3).unwrap();
        let json = serde_json::to_string(&scene).unwrap();
        let back: Scene = serde_json::from_str(&json).unwrap();
        assert_eq!(back.tri.v1, scene.tri.v1);
        assert_eq!(back.p4, scene.p4);
        assert_eq!(back.seed, scene.seed);
    }
}
