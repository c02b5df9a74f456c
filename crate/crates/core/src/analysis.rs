//! Stability checks, scores and worst-case classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::gsa::{gsa_solve, Orientation};
use crate::prefs::{ManId, Matching, PreferenceInstance, Side, WomanId};

/// Proposer-side rank sum of a matching. Lower means happier proposers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(pub u64);

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// Lexicographically first blocking pair.
    Blocked(ManId, WomanId),
}

impl Stability {
    pub fn is_stable(self) -> bool {
        self == Stability::Stable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorstCaseReport {
    /// Men-proposing and women-proposing runs agree.
    pub unique_stable: bool,
    /// Always equal to `unique_stable`: the men-proposing result is
    /// man-optimal, the women-proposing one man-pessimal.
    pub man_pessimal: bool,
    /// No man gets his first choice in the men-proposing result.
    pub no_first_choice: bool,
    pub proposer_score: Score,
}

impl WorstCaseReport {
    pub fn is_worst_case(&self) -> bool {
        self.unique_stable && self.no_first_choice
    }
}

/// True iff `man` and `woman` each prefer the other to their partner in
/// `matching`. Both must be matched.
pub fn is_blocking(
    inst: &PreferenceInstance,
    matching: &Matching,
    man: ManId,
    woman: WomanId,
) -> Result<bool> {
    let (Some(his), Some(hers)) = (matching.woman_of(man), matching.man_of(woman)) else {
        return Err(Error::Unmatched { man, woman });
    };
    Ok(inst.man_rank(man, woman)? < inst.man_rank(man, his)?
        && inst.woman_rank(woman, man)? < inst.woman_rank(woman, hers)?)
}

/// Checks every (man, woman) pair among matched participants. Unmatched
/// participants of `inst` are outside the check.
pub fn is_stable(inst: &PreferenceInstance, matching: &Matching) -> Result<Stability> {
    matching.check_ids(inst)?;
    let men_rank = inst.ranks(Side::Men);
    let women_rank = inst.ranks(Side::Women);
    // index pairs; women side sorted by woman id for the witness order
    let by_man: Vec<(ManId, usize, usize)> = matching
        .pairs()
        .iter()
        .map(|&(m, w)| (m, inst.man_index(m).unwrap(), inst.woman_index(w).unwrap()))
        .collect();
    let mut by_woman: Vec<(WomanId, usize, usize)> = matching
        .pairs()
        .iter()
        .map(|&(m, w)| (w, inst.woman_index(w).unwrap(), inst.man_index(m).unwrap()))
        .collect();
    by_woman.sort_unstable();

    for &(man, m, his) in &by_man {
        for &(woman, w, hers) in &by_woman {
            if men_rank[m][w] < men_rank[m][his] && women_rank[w][m] < women_rank[w][hers] {
                return Ok(Stability::Blocked(man, woman));
            }
        }
    }
    Ok(Stability::Stable)
}

/// Sum over pairs of the proposer's rank for his or her partner, read from
/// `original`. Matchings of reduced instances are scored against the full
/// lists.
pub fn score(original: &PreferenceInstance, matching: &Matching, orientation: Orientation) -> Result<Score> {
    let mut total = 0u64;
    for &(m, w) in matching.pairs() {
        let rank = match orientation {
            Orientation::MenPropose => original.man_rank(m, w)?,
            Orientation::WomenPropose => original.woman_rank(w, m)?,
        };
        total += u64::from(rank.get());
    }
    Ok(Score(total))
}

pub fn classify_worst_case(inst: &PreferenceInstance) -> WorstCaseReport {
    let (men, _) = gsa_solve(inst, Orientation::MenPropose);
    let (women, _) = gsa_solve(inst, Orientation::WomenPropose);
    let unique_stable = men == women;
    let no_first_choice = !men.is_empty()
        && men
            .pairs()
            .iter()
            .all(|&(m, w)| inst.man_rank(m, w).map(|r| r.get() > 1).unwrap_or(false));
    let proposer_score =
        score(inst, &men, Orientation::MenPropose).expect("engine output uses instance ids");
    WorstCaseReport {
        unique_stable,
        man_pessimal: unique_stable,
        no_first_choice,
        proposer_score,
    }
}
