//! Scene JSON input: a norm, a triangle, and an optional circumcenter.

use minkplane::construct::{build_system, construction_bundle, ConstructionBundle, OrthoSystem};
use minkplane::{circumcenters, NormSpec, Point2, Result, SolverOpts, Triangle};
use serde::Deserialize;

/// Wire format of a scene file.
#[derive(Deserialize)]
pub struct SceneInput {
    pub norm: NormSpec,
    pub triangle: [[f64; 2]; 3],
    #[serde(default)]
    pub p4: Option<[f64; 2]>,
}

/// A validated scene with a confirmed circumcenter.
pub struct ResolvedScene {
    pub norm: NormSpec,
    pub tri: Triangle,
    pub p4: Point2,
}

/// Tolerance used to admit a user-supplied circumcenter.
const P4_TOL: f64 = 1e-6;

pub fn resolve_scene(input: SceneInput) -> Result<ResolvedScene> {
    let [a, b, c] = input.triangle;
    let tri = Triangle::new(a.into(), b.into(), c.into())?;
    let p4 = match input.p4 {
        Some(p) => {
            let p = Point2::from(p);
            // Validate before accepting.
            build_system(&input.norm, &tri, p, P4_TOL)?;
            p
        }
        None => circumcenters(&input.norm, &tri, &SolverOpts::default())?[0].center,
    };
    Ok(ResolvedScene { norm: input.norm, tri, p4 })
}

impl ResolvedScene {
    pub fn system(&self) -> OrthoSystem<'_> {
        build_system(&self.norm, &self.tri, self.p4, P4_TOL)
            .expect("validated during resolution")
    }

    pub fn bundle<'a>(&'a self, sys: &OrthoSystem<'a>) -> ConstructionBundle<'a> {
        construction_bundle(sys)
    }
}
