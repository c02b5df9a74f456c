//! Score-based pair deletion on top of a men-proposing baseline.
//!
//! Each pair of the baseline matching is deleted in turn, the reduced
//! instance is re-solved, and the resulting matching is scored against the
//! original lists. The deletion with the lowest score is kept; ties go to
//! the lowest deleted man id. The deleted couple is excluded from the
//! output and is not re-examined.
//!
//! Trials are independent and run on the rayon pool; results are assembled
//! in baseline pair order, so the outcome does not depend on scheduling.

use std::fmt;

use rayon::prelude::*;

use crate::analysis::{classify_worst_case, score, Score, WorstCaseReport};
use crate::error::{Error, Result};
use crate::gsa::{gsa_solve, Orientation, TraceCounters};
use crate::pargsa::pargsa_solve;
use crate::prefs::{ManId, Matching, PreferenceInstance, WomanId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Sequential,
    Parallel,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Sequential => f.write_str("sequential"),
            Engine::Parallel => f.write_str("parallel"),
        }
    }
}

impl Engine {
    /// Men-proposing solve with this engine.
    pub fn solve(self, inst: &PreferenceInstance) -> (Matching, TraceCounters) {
        match self {
            Engine::Sequential => gsa_solve(inst, Orientation::MenPropose),
            Engine::Parallel => pargsa_solve(inst),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionTrial {
    pub deleted_pair: (ManId, WomanId),
    pub matching: Matching,
    pub trial_score: Score,
    pub proposals: TraceCounters,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModGsaResult {
    pub baseline: Matching,
    pub baseline_score: Score,
    pub baseline_proposals: TraceCounters,
    /// One trial per baseline pair, in baseline (man id) order.
    pub trials: Vec<DeletionTrial>,
    /// Index into `trials` of the retained deletion.
    pub chosen: usize,
    pub improved: bool,
    pub engine: Engine,
    pub worst_case: WorstCaseReport,
}

impl ModGsaResult {
    pub fn chosen(&self) -> &DeletionTrial {
        &self.trials[self.chosen]
    }

    /// Total proposals spent on the trials (the baseline run excluded).
    pub fn trial_proposals(&self) -> TraceCounters {
        self.trials
            .iter()
            .fold(TraceCounters::default(), |acc, t| acc + t.proposals)
    }
}

pub fn mod_gsa(inst: &PreferenceInstance, engine: Engine) -> Result<ModGsaResult> {
    if inst.n() < 2 {
        return Err(Error::InstanceTooSmall { n: inst.n(), min: 2 });
    }
    let (baseline, baseline_proposals) = gsa_solve(inst, Orientation::MenPropose);
    let baseline_score = score(inst, &baseline, Orientation::MenPropose)?;

    let trials: Vec<DeletionTrial> = baseline
        .pairs()
        .par_iter()
        .map(|&(man, woman)| run_trial(inst, man, woman, engine))
        .collect::<Result<_>>()?;

    // strict `<` keeps the first (lowest man id) among equal scores
    let chosen = trials
        .iter()
        .enumerate()
        .fold(0, |best, (i, t)| {
            if t.trial_score < trials[best].trial_score {
                i
            } else {
                best
            }
        });
    let improved = trials[chosen].trial_score < baseline_score;

    Ok(ModGsaResult {
        baseline,
        baseline_score,
        baseline_proposals,
        trials,
        chosen,
        improved,
        engine,
        worst_case: classify_worst_case(inst),
    })
}

fn run_trial(
    inst: &PreferenceInstance,
    man: ManId,
    woman: WomanId,
    engine: Engine,
) -> Result<DeletionTrial> {
    let reduced = inst.delete_pair(man, woman)?;
    let (matching, proposals) = engine.solve(&reduced);
    let trial_score = score(inst, &matching, Orientation::MenPropose)?;
    Ok(DeletionTrial {
        deleted_pair: (man, woman),
        matching,
        trial_score,
        proposals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pair(m: u32, w: u32) -> (ManId, WomanId) {
        (ManId(m), WomanId(w))
    }

    #[test]
    fn reference_instance_sequential() {
        let r = mod_gsa(&fixtures::paper_4x4(), Engine::Sequential).unwrap();
        assert_eq!(r.baseline_score, Score(8));
        assert_eq!(r.trials.len(), 4);
        let scores: Vec<u64> = r.trials.iter().map(|t| t.trial_score.0).collect();
        assert_eq!(scores, vec![6, 6, 3, 6]);
        assert_eq!(r.chosen().deleted_pair, pair(3, 4));
        assert_eq!(
            r.chosen().matching,
            Matching::from_raw(&[(1, 1), (2, 3), (4, 2)]).unwrap()
        );
        assert_eq!(r.chosen().trial_score, Score(3));
        assert!(r.improved);
        assert!(r.worst_case.unique_stable);
    }

    #[test]
    fn reference_trial_for_m2_w1() {
        let r = mod_gsa(&fixtures::paper_4x4(), Engine::Sequential).unwrap();
        let t = &r.trials[1];
        assert_eq!(t.deleted_pair, pair(2, 1));
        assert_eq!(t.matching, Matching::from_raw(&[(1, 2), (3, 4), (4, 3)]).unwrap());
        assert_eq!(t.trial_score, Score(6));
    }

    #[test]
    fn two_by_two_ties_go_to_lowest_man() {
        let r = mod_gsa(&fixtures::two_by_two(), Engine::Sequential).unwrap();
        assert_eq!(r.baseline_score, Score(2));
        let scores: Vec<u64> = r.trials.iter().map(|t| t.trial_score.0).collect();
        assert_eq!(scores, vec![1, 1]);
        assert_eq!(r.chosen().deleted_pair, pair(1, 1));
        // one fewer pair always scores lower here
        assert!(r.improved);
        assert!(!r.worst_case.unique_stable);
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            mod_gsa(&fixtures::singleton(), Engine::Sequential),
            Err(Error::InstanceTooSmall { n: 1, min: 2 })
        ));
        assert!(mod_gsa(&PreferenceInstance::empty(), Engine::Parallel).is_err());
    }

    #[test]
    fn engines_agree_on_reference_instance() {
        let seq = mod_gsa(&fixtures::paper_4x4(), Engine::Sequential).unwrap();
        let par = mod_gsa(&fixtures::paper_4x4(), Engine::Parallel).unwrap();
        assert_eq!(seq.baseline, par.baseline);
        assert_eq!(seq.chosen, par.chosen);
        for (a, b) in seq.trials.iter().zip(&par.trials) {
            assert_eq!(a.matching, b.matching);
            assert_eq!(a.trial_score, b.trial_score);
        }
    }
}
