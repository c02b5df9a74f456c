//! Brute-force ground truth for small instances.
//!
//! Every perfect matching is visited in lexicographic order of the women
//! assigned to men 1..n, and any partial assignment that already contains a
//! blocking pair is cut off (a blocking pair between assigned participants
//! stays blocking however the rest is filled in).

use crate::error::{Error, Result};
use crate::gsa::Orientation;
use crate::prefs::{Matching, PreferenceInstance, Side};

pub const DEFAULT_CAP: usize = 8;

pub fn enumerate_stable(inst: &PreferenceInstance, limit_n: usize) -> Result<Vec<Matching>> {
    let n = inst.n();
    if n > limit_n {
        return Err(Error::OracleInfeasible { n, cap: limit_n });
    }
    let mut search = Search {
        men_rank: inst.ranks(Side::Men),
        women_rank: inst.ranks(Side::Women),
        wife: Vec::with_capacity(n),
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend();
    Ok(search
        .found
        .into_iter()
        .map(|wives| {
            Matching::from_pairs(
                wives
                    .into_iter()
                    .enumerate()
                    .map(|(m, w)| (inst.men_ids()[m], inst.women_ids()[w])),
            )
            .expect("a permutation is one-to-one")
        })
        .collect())
}

struct Search<'a> {
    men_rank: &'a [Vec<u32>],
    women_rank: &'a [Vec<u32>],
    wife: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&mut self) {
        let n = self.used.len();
        let man = self.wife.len();
        if man == n {
            self.found.push(self.wife.clone());
            return;
        }
        for woman in 0..n {
            if self.used[woman] || self.blocks_with_assigned(man, woman) {
                continue;
            }
            self.used[woman] = true;
            self.wife.push(woman);
            self.extend();
            self.wife.pop();
            self.used[woman] = false;
        }
    }

    // Would adding (man, woman) create a blocking pair with the couples
    // already fixed?
    fn blocks_with_assigned(&self, man: usize, woman: usize) -> bool {
        let (mr, wr) = (self.men_rank, self.women_rank);
        self.wife.iter().enumerate().any(|(other, &her)| {
            // man with the other man's wife
            let a = mr[man][her] < mr[man][woman] && wr[her][man] < wr[her][other];
            // the other man with this woman
            let b = mr[other][woman] < mr[other][her] && wr[woman][other] < wr[woman][man];
            a || b
        })
    }
}

/// The matching of `matchings` in which every proposer gets his or her
/// best partner across the whole set. Errors if no single matching does.
pub fn proposer_optimal(
    inst: &PreferenceInstance,
    matchings: &[Matching],
    orientation: Orientation,
) -> Result<Matching> {
    if matchings.is_empty() {
        return Err(Error::EmptyInput("no matchings to choose from"));
    }
    let ranks = |m: &Matching| -> Result<Vec<u32>> {
        m.pairs()
            .iter()
            .map(|&(man, woman)| {
                Ok(match orientation {
                    Orientation::MenPropose => inst.man_rank(man, woman)?.get(),
                    Orientation::WomenPropose => inst.woman_rank(woman, man)?.get(),
                })
            })
            .collect()
    };
    let per_matching: Vec<Vec<u32>> = matchings.iter().map(ranks).collect::<Result<_>>()?;
    // For women proposing the rank vectors are in man order, so compare
    // per woman via a lookup keyed by woman index instead.
    let keyed: Vec<Vec<u32>> = match orientation {
        Orientation::MenPropose => per_matching,
        Orientation::WomenPropose => matchings
            .iter()
            .zip(per_matching)
            .map(|(m, r)| {
                let mut by_woman: Vec<(u32, u32)> =
                    m.pairs().iter().zip(r).map(|(p, r)| (p.1 .0, r)).collect();
                by_woman.sort_unstable();
                by_woman.into_iter().map(|(_, r)| r).collect()
            })
            .collect(),
    };
    let width = keyed[0].len();
    if keyed.iter().any(|k| k.len() != width) {
        return Err(Error::NoOptimum);
    }
    let best: Vec<u32> = (0..width)
        .map(|i| keyed.iter().map(|k| k[i]).min().unwrap())
        .collect();
    keyed
        .iter()
        .position(|k| *k == best)
        .map(|i| matchings[i].clone())
        .ok_or(Error::NoOptimum)
}
