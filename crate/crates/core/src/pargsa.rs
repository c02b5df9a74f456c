//! Divide-and-conquer deferred acceptance.
//!
//! The proposers are split recursively into contiguous id blocks
//! (`ceil(k/2)` / `floor(k/2)`), down to single proposers. Each block is
//! solved against the full receiver side, so a block's run is a valid
//! prefix of a deferred-acceptance run on the whole instance. Sibling
//! blocks are solved concurrently and merged bottom-up: their holdings are
//! overlaid, a receiver held by one proposer from each side keeps the one
//! she ranks higher, and the losers resume proposing from where they
//! stopped. Every rejection made inside a block stays justified after the
//! merge because a receiver's holder only ever improves, so the root
//! reproduces the sequential result exactly.
//!
//! Only proposals are counted; overlay bookkeeping is free.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::gsa::{holdings_to_matching, run, Orientation, TraceCounters};
use crate::modgsa::{mod_gsa, Engine, ModGsaResult};
use crate::prefs::{ManId, Matching, PreferenceInstance, WomanId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubproblemTree {
    /// A single proposer, by position in the sorted id vector.
    Leaf { proposers: Range<usize> },
    Node {
        proposers: Range<usize>,
        left: Box<SubproblemTree>,
        right: Box<SubproblemTree>,
    },
}

impl SubproblemTree {
    /// Tree over proposer positions `0..n`; `None` when `n == 0`.
    pub fn build(n: usize) -> Option<Self> {
        (n > 0).then(|| Self::split(0..n))
    }

    fn split(range: Range<usize>) -> Self {
        if range.len() == 1 {
            return SubproblemTree::Leaf { proposers: range };
        }
        let mid = range.start + range.len().div_ceil(2);
        SubproblemTree::Node {
            left: Box::new(Self::split(range.start..mid)),
            right: Box::new(Self::split(mid..range.end)),
            proposers: range,
        }
    }

    pub fn proposers(&self) -> &Range<usize> {
        match self {
            SubproblemTree::Leaf { proposers } | SubproblemTree::Node { proposers, .. } => proposers,
        }
    }

    /// Number of merge levels above the leaves.
    pub fn depth(&self) -> usize {
        match self {
            SubproblemTree::Leaf { .. } => 0,
            SubproblemTree::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<Range<usize>> {
        match self {
            SubproblemTree::Leaf { proposers } => vec![proposers.clone()],
            SubproblemTree::Node { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// Siblings via `rayon::join`.
    Concurrent,
    Serial,
}

/// Result of one tree node: the holdings of its proposers after its merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub proposers: Range<usize>,
    pub matching: Matching,
    /// Proposals made at this node alone (leaf run or merge resumption).
    pub proposals: TraceCounters,
}

const EXHAUSTED: &str = "a block never has more proposers than receivers";

// (proposer, receiver, cursor) for each proposer of a block, ascending.
type Holdings = Vec<(usize, usize, usize)>;

struct Solver<'a> {
    inst: &'a PreferenceInstance,
    orientation: Orientation,
    order: &'a [Vec<usize>],
    receiver_rank: &'a [Vec<u32>],
    schedule: Schedule,
    trace: bool,
}

struct Solved {
    holdings: Holdings,
    counters: TraceCounters,
    records: Vec<NodeRecord>,
}

impl Solver<'_> {
    fn solve(&self, tree: &SubproblemTree) -> Solved {
        match tree {
            SubproblemTree::Leaf { proposers } => {
                let (holdings, counters) = self.overlay(proposers.clone(), Vec::new()).expect(EXHAUSTED);
                self.finish(proposers, holdings, counters, TraceCounters::default(), Vec::new())
            }
            SubproblemTree::Node {
                proposers,
                left,
                right,
            } => {
                let (l, r) = match self.schedule {
                    Schedule::Concurrent => rayon::join(|| self.solve(left), || self.solve(right)),
                    Schedule::Serial => (self.solve(left), self.solve(right)),
                };
                let mut seeds = l.holdings;
                seeds.extend(r.holdings);
                let (holdings, counters) = self.overlay(std::iter::empty(), seeds).expect(EXHAUSTED);
                let mut records = l.records;
                records.extend(r.records);
                self.finish(proposers, holdings, counters, l.counters + r.counters, records)
            }
        }
    }

    fn finish(
        &self,
        proposers: &Range<usize>,
        holdings: Holdings,
        here: TraceCounters,
        below: TraceCounters,
        mut records: Vec<NodeRecord>,
    ) -> Solved {
        if self.trace {
            records.push(NodeRecord {
                proposers: proposers.clone(),
                matching: self.to_matching(&holdings),
                proposals: here,
            });
        }
        Solved {
            holdings,
            counters: here + below,
            records,
        }
    }

    /// Overlays `seeds`, resolves receivers held twice by the receiver's
    /// list, and resumes until quiescent. Proposers in `fresh` have no seed
    /// and start from the top of their lists.
    fn overlay(
        &self,
        fresh: impl IntoIterator<Item = usize>,
        seeds: Holdings,
    ) -> Result<(Holdings, TraceCounters)> {
        let n = self.inst.n();
        let mut cursors = vec![0; n];
        let mut holders: Vec<Option<usize>> = vec![None; n];
        let mut free: BTreeSet<usize> = fresh.into_iter().collect();
        let active = free.len() + seeds.len();
        for (p, r, c) in seeds {
            cursors[p] = c;
            match holders[r] {
                None => holders[r] = Some(p),
                Some(q) if self.receiver_rank[r][p] < self.receiver_rank[r][q] => {
                    holders[r] = Some(p);
                    free.insert(q);
                }
                Some(_) => {
                    free.insert(p);
                }
            }
        }
        #[cfg(debug_assertions)]
        let before = cursors.clone();
        let counters = run(self.order, self.receiver_rank, &mut cursors, &mut holders, free)?;
        // no proposer ever revisits a receiver
        #[cfg(debug_assertions)]
        debug_assert!(cursors.iter().zip(&before).all(|(a, b)| a >= b));
        let mut holdings: Holdings = holders
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.map(|p| (p, r, cursors[p])))
            .collect();
        holdings.sort_unstable();
        debug_assert_eq!(holdings.len(), active);
        Ok((holdings, counters))
    }

    fn to_matching(&self, holdings: &Holdings) -> Matching {
        let n = self.inst.n();
        let mut holders = vec![None; n];
        for &(p, r, _) in holdings {
            holders[r] = Some(p);
        }
        holdings_to_matching(self.inst, self.orientation, &holders)
    }
}

fn solver(inst: &PreferenceInstance, orientation: Orientation, schedule: Schedule, trace: bool) -> Solver<'_> {
    Solver {
        inst,
        orientation,
        order: inst.order(orientation.proposers()),
        receiver_rank: inst.ranks(orientation.receivers()),
        schedule,
        trace,
    }
}

/// Men-proposing divide-and-conquer solve; equal to
/// `gsa_solve(inst, Orientation::MenPropose).0`.
pub fn pargsa_solve(inst: &PreferenceInstance) -> (Matching, TraceCounters) {
    pargsa_solve_with(inst, Orientation::MenPropose, Schedule::Concurrent)
}

pub fn pargsa_solve_with(
    inst: &PreferenceInstance,
    orientation: Orientation,
    schedule: Schedule,
) -> (Matching, TraceCounters) {
    let (m, c, _) = solve_tree(inst, orientation, schedule, false);
    (m, c)
}

/// Like [`pargsa_solve_with`] but also returns every node's result in
/// post-order (left subtree, right subtree, node).
pub fn pargsa_solve_traced(
    inst: &PreferenceInstance,
    orientation: Orientation,
    schedule: Schedule,
) -> (Matching, TraceCounters, Vec<NodeRecord>) {
    solve_tree(inst, orientation, schedule, true)
}

fn solve_tree(
    inst: &PreferenceInstance,
    orientation: Orientation,
    schedule: Schedule,
    trace: bool,
) -> (Matching, TraceCounters, Vec<NodeRecord>) {
    let Some(tree) = SubproblemTree::build(inst.n()) else {
        return (Matching::empty(), TraceCounters::default(), Vec::new());
    };
    let s = solver(inst, orientation, schedule, trace);
    let solved = s.solve(&tree);
    (s.to_matching(&solved.holdings), solved.counters, solved.records)
}

/// Men-proposing run restricted to `men`, each proposing over his full list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSolution {
    pub matching: Matching,
    /// Women each man proposed to, in proposal order.
    pub histories: BTreeMap<ManId, Vec<WomanId>>,
    pub proposals: TraceCounters,
}

pub fn solve_block(inst: &PreferenceInstance, men: &[ManId]) -> Result<BlockSolution> {
    let s = solver(inst, Orientation::MenPropose, Schedule::Serial, false);
    let n = inst.n();
    let mut cursors = vec![0; n];
    let mut holders = vec![None; n];
    let free = men.iter().map(|&m| inst.man_index(m)).collect::<Result<BTreeSet<_>>>()?;
    let proposals = run(s.order, s.receiver_rank, &mut cursors, &mut holders, free)?;
    let matching = holdings_to_matching(inst, Orientation::MenPropose, &holders);
    let histories = men
        .iter()
        .map(|&m| {
            let i = inst.man_index(m).unwrap();
            let list = inst.man_prefs(m).unwrap();
            (m, list[..cursors[i]].to_vec())
        })
        .collect();
    Ok(BlockSolution {
        matching,
        histories,
        proposals,
    })
}

/// Merges two men-proposing block results over disjoint men.
///
/// Every man starts out holding his block partner. A woman claimed from
/// both sides keeps the man she ranks higher; the other resumes proposing
/// after the last woman in his history. `histories` must record, for every
/// man of either block, the prefix of his list he has proposed to, ending
/// at his current partner.
pub fn merge_matchings(
    inst: &PreferenceInstance,
    left: &Matching,
    right: &Matching,
    histories: &BTreeMap<ManId, Vec<WomanId>>,
) -> Result<(Matching, TraceCounters)> {
    let mut seeds: Holdings = Vec::with_capacity(left.len() + right.len());
    let mut seen = BTreeSet::new();
    for &(m, w) in left.pairs().iter().chain(right.pairs()) {
        if !seen.insert(m) {
            return Err(Error::NotOneToOne(format!("{m} appears in both blocks")));
        }
        let history = histories
            .get(&m)
            .ok_or_else(|| Error::InconsistentHistories(format!("no history for {m}")))?;
        if history.last() != Some(&w) {
            return Err(Error::InconsistentHistories(format!(
                "history of {m} does not end at his partner {w}"
            )));
        }
        let list = inst.man_prefs(m)?;
        if !list.starts_with(history) {
            return Err(Error::InconsistentHistories(format!(
                "history of {m} is not a prefix of his list"
            )));
        }
        seeds.push((inst.man_index(m)?, inst.woman_index(w)?, history.len()));
    }
    seeds.sort_unstable();
    let s = solver(inst, Orientation::MenPropose, Schedule::Serial, false);
    let (holdings, counters) = s.overlay(std::iter::empty(), seeds)?;
    Ok((s.to_matching(&holdings), counters))
}

/// Pair deletion with every trial solved by the divide-and-conquer engine;
/// the baseline stays sequential.
pub fn mod_pgsa(inst: &PreferenceInstance) -> Result<ModGsaResult> {
    mod_gsa(inst, Engine::Parallel)
}
