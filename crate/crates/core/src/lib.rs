//! Stable matching toolkit: deferred acceptance (sequential and
//! divide-and-conquer), score-based pair-deletion refinement, brute-force
//! oracles, stability verification and step-count analytics.

pub mod analysis;
pub mod analytics;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod gsa;
pub mod modgsa;
pub mod oracle;
pub mod pargsa;
pub mod prefs;

pub use analysis::{classify_worst_case, is_blocking, is_stable, score, Score, Stability, WorstCaseReport};
pub use error::{Error, Result};
pub use gsa::{gsa_resume, gsa_solve, EngineState, Orientation, TraceCounters};
pub use modgsa::{mod_gsa, DeletionTrial, Engine, ModGsaResult};
pub use pargsa::{mod_pgsa, pargsa_solve};
pub use prefs::{
    parse_instance, parse_matching, serialize_instance, serialize_matching, ManId, Matching,
    PreferenceInstance, Rank, Side, WomanId,
};
