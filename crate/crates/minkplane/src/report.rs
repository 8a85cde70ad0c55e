//! Suite execution and machine-readable verification reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::harness::{random_scene, verify_theorem, Scene, TheoremId, Tolerances, TrialOutcome};
use crate::norm::{regular_hexagon_ball, NormSpec};
use crate::verifiers::verify_with_mutated_orthocenter;

/// Aggregated outcome of one theorem over one norm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub norm: NormSpec,
    pub trials: u32,
    pub passes: u32,
    pub inconclusive: u32,
    pub failures: Vec<FailureRecord>,
    pub max_residual: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureRecord {
    pub scene: Scene,
    pub residual: f64,
}

/// A full suite run: one report per (theorem, norm) pair, plus bookkeeping
/// the reports do not carry.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub reports: Vec<VerificationReport>,
    /// Trials whose scene generation exhausted its rejection budget.
    pub generation_failures: u32,
}

impl SuiteRun {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.failures.is_empty())
    }
}

/// The six norms every acceptance run exercises.
pub fn builtin_norm_pool() -> Vec<NormSpec> {
    vec![
        NormSpec::Euclidean,
        NormSpec::lp(1.0).expect("valid"),
        NormSpec::lp(f64::INFINITY).expect("valid"),
        NormSpec::lp(1.5).expect("valid"),
        NormSpec::lp(3.0).expect("valid"),
        regular_hexagon_ball(),
    ]
}

/// Runs `trials_per_norm` scenes for every (theorem, norm) pair.
///
/// Each trial draws its scene from the sub-seed
/// `seed ^ fnv1a(theorem, norm, index)`, so results do not depend on worker
/// count or execution order; trials run in parallel.
pub fn run_suite(
    ids: &[TheoremId],
    trials_per_norm: u32,
    norm_pool: &[NormSpec],
    seed: u64,
) -> SuiteRun {
    let tols = Tolerances::default();
    let jobs: Vec<(usize, usize, u32)> = ids
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            norm_pool
                .iter()
                .enumerate()
                .flat_map(move |(n, _)| (0..trials_per_norm).map(move |t| (i, n, t)))
        })
        .collect();

    let outcomes: Vec<(TrialOutcome, Option<Scene>)> = jobs
        .par_iter()
        .map(|&(i, n, t)| {
            let id = ids[i];
            let norm = &norm_pool[n];
            let sub_seed = seed ^ trial_hash(id, norm, t);
            match random_scene(norm, sub_seed) {
                Ok(scene) => {
                    let outcome = verify_theorem(id, &scene, &tols);
                    (outcome, Some(scene))
                }
                Err(crate::error::Error::GenerationFailed(n)) => (
                    TrialOutcome::Inconclusive { reason: format!("generation failed after {n} draws") },
                    None,
                ),
                Err(e) => (
                    TrialOutcome::Inconclusive { reason: format!("scene setup failed: {e}") },
                    None,
                ),
            }
        })
        .collect();

    let mut reports = Vec::with_capacity(ids.len() * norm_pool.len());
    let mut generation_failures = 0;
    for (i, &id) in ids.iter().enumerate() {
        for (n, norm) in norm_pool.iter().enumerate() {
            let mut report = VerificationReport {
                theorem_id: id,
                norm: norm.clone(),
                trials: trials_per_norm,
                passes: 0,
                inconclusive: 0,
                failures: Vec::new(),
                max_residual: 0.0,
                seed,
            };
            for t in 0..trials_per_norm {
                let idx = (i * norm_pool.len() + n) * trials_per_norm as usize + t as usize;
                let (outcome, scene) = &outcomes[idx];
                match outcome {
                    TrialOutcome::Pass { residual } => {
                        report.passes += 1;
                        report.max_residual = report.max_residual.max(*residual);
                    }
                    TrialOutcome::Fail { residual } => {
                        report.max_residual = report.max_residual.max(*residual);
                        report.failures.push(FailureRecord {
                            scene: scene.clone().expect("failures always carry a scene"),
                            residual: *residual,
                        });
                    }
                    TrialOutcome::Inconclusive { reason } => {
                        report.inconclusive += 1;
                        if reason.starts_with("generation failed") {
                            generation_failures += 1;
                        }
                    }
                }
            }
            debug_assert_eq!(
                report.trials,
                report.passes + report.inconclusive + report.failures.len() as u32
            );
            reports.push(report);
        }
    }
    SuiteRun { reports, generation_failures }
}

/// Outcome of the mutation self-test for one theorem.
#[derive(Debug, Clone)]
pub struct MutationOutcome {
    pub theorem_id: TheoremId,
    pub trials: u32,
    pub failures_detected: u32,
}

/// Perturbs the orthocenter of otherwise-valid scenes by a tenth of the
/// diameter and counts how many trials each orthocenter-referencing verifier
/// rejects. A verifier that cannot fail is worthless; callers assert at
/// least one detection per theorem.
pub fn mutation_self_test(norm: &NormSpec, trials: u32, seed: u64) -> Vec<MutationOutcome> {
    let tols = Tolerances::default();
    TheoremId::ALL
        .iter()
        .filter(|id| id.references_orthocenter())
        .map(|&id| {
            let mut failures = 0;
            for t in 0..trials {
                let sub_seed = seed ^ trial_hash(id, norm, t) ^ 0x6d75_7461_6e74;
                if let Ok(scene) = random_scene(norm, sub_seed) {
                    if verify_with_mutated_orthocenter(id, &scene, &tols).is_fail() {
                        failures += 1;
                    }
                }
            }
            MutationOutcome { theorem_id: id, trials, failures_detected: failures }
        })
        .collect()
}

/// Stable 64-bit sub-seed component for a (theorem, norm, index) trial.
fn trial_hash(id: TheoremId, norm: &NormSpec, index: u32) -> u64 {
    let mut h = fnv1a(0xcbf2_9ce4_8422_2325, id.as_str().as_bytes());
    h = fnv1a(h, norm.stable_key().as_bytes());
    fnv1a(h, &index.to_le_bytes())
}

fn fnv1a(mut hash: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x1000_0000_01b3);
    }
    hash
}
