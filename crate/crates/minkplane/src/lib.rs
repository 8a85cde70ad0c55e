//! Triangle geometry in arbitrary two-dimensional normed (Minkowski) planes.
//!
//! The crate constructs orthocentric systems, six-point (Feuerbach) circles,
//! Euler and Poncelet points, and antitriangles under Euclidean, L_p, and
//! polygonal norms, exposes the isosceles / Birkhoff / chordal orthogonality
//! relations, and ships a randomized harness that verifies the classical
//! statements about these objects over seeded scene distributions.

pub mod affine;
pub mod construct;
pub mod error;
pub mod harness;
pub mod norm;
pub mod ortho;
pub mod point;
pub mod report;
pub mod solver;
mod verifiers;

pub use error::{Error, Result};
pub use harness::{random_scene, verify_theorem, Scene, TheoremId, Tolerances, TrialOutcome};
pub use norm::{Chord, LineCircleIntersection, MinkCircle, NormSpec};
pub use point::{Line, Point2, Segment, Triangle};
pub use report::{builtin_norm_pool, mutation_self_test, run_suite, SuiteRun, VerificationReport};
pub use solver::{circumcenters, SolverOpts, Witness};
