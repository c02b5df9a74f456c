//! Sequential deferred acceptance (Gale-Shapley) with proposal counting and
//! warm starts.
//!
//! Free proposers are served lowest id first and a rejected proposer goes
//! straight back into the free set, so both the matching and the proposal
//! count are reproducible. Every proposal counts as one step, accepted or
//! not.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::prefs::{ManId, Matching, PreferenceInstance, Side, WomanId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    MenPropose,
    WomenPropose,
}

impl Orientation {
    pub fn proposers(self) -> Side {
        match self {
            Orientation::MenPropose => Side::Men,
            Orientation::WomenPropose => Side::Women,
        }
    }

    pub fn receivers(self) -> Side {
        self.proposers().opposite()
    }

    /// Index-space `(proposer, receiver)` to an id pair.
    pub(crate) fn pair(
        self,
        inst: &PreferenceInstance,
        proposer: usize,
        receiver: usize,
    ) -> (ManId, WomanId) {
        match self {
            Orientation::MenPropose => (inst.men_ids()[proposer], inst.women_ids()[receiver]),
            Orientation::WomenPropose => (inst.men_ids()[receiver], inst.women_ids()[proposer]),
        }
    }

    /// Id pair to index-space `(proposer, receiver)`.
    pub(crate) fn indices(
        self,
        inst: &PreferenceInstance,
        man: ManId,
        woman: WomanId,
    ) -> Result<(usize, usize)> {
        let m = inst.man_index(man)?;
        let w = inst.woman_index(woman)?;
        Ok(match self {
            Orientation::MenPropose => (m, w),
            Orientation::WomenPropose => (w, m),
        })
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::MenPropose => f.write_str("men"),
            Orientation::WomenPropose => f.write_str("women"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct TraceCounters {
    pub proposals: u64,
}

impl Add for TraceCounters {
    type Output = TraceCounters;

    fn add(self, rhs: Self) -> Self {
        TraceCounters {
            proposals: self.proposals + rhs.proposals,
        }
    }
}

impl AddAssign for TraceCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.proposals += rhs.proposals;
    }
}

/// Snapshot of a deferred-acceptance run.
///
/// `cursors[p]` is the number of list entries proposer `p` has already
/// used, so his next proposal goes to rank `cursors[p] + 1`. Proposers and
/// receivers are indexed by their position in the instance's sorted id
/// vectors. A proposer is free iff no receiver holds him.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineState {
    orientation: Orientation,
    cursors: Vec<usize>,
    holders: Vec<Option<usize>>,
}

impl EngineState {
    pub fn fresh(inst: &PreferenceInstance, orientation: Orientation) -> Self {
        Self {
            orientation,
            cursors: vec![0; inst.n()],
            holders: vec![None; inst.n()],
        }
    }

    /// Seeds a state where each pair of `held` is a proposer currently held
    /// by a receiver, and every held proposer has proposed exactly down to
    /// that receiver. Unheld proposers start fresh.
    pub fn with_holdings(
        inst: &PreferenceInstance,
        orientation: Orientation,
        held: &Matching,
    ) -> Result<Self> {
        let order = inst.order(orientation.proposers());
        let mut cursors = vec![0; inst.n()];
        for &(m, w) in held.pairs() {
            let (p, r) = orientation.indices(inst, m, w)?;
            cursors[p] = position(&order[p], r) + 1;
        }
        Self::from_parts(inst, orientation, held, cursors)
    }

    /// Builds a state from holdings and explicit per-proposer cursors
    /// (entries consumed, indexed by proposer position).
    pub fn from_parts(
        inst: &PreferenceInstance,
        orientation: Orientation,
        held: &Matching,
        cursors: Vec<usize>,
    ) -> Result<Self> {
        let n = inst.n();
        if cursors.len() != n {
            return Err(Error::InconsistentState(format!(
                "{} cursors for {n} proposers",
                cursors.len()
            )));
        }
        if let Some(c) = cursors.iter().find(|&&c| c > n) {
            return Err(Error::InconsistentState(format!("cursor {c} exceeds list length {n}")));
        }
        let order = inst.order(orientation.proposers());
        let mut holders = vec![None; n];
        for &(m, w) in held.pairs() {
            let (p, r) = orientation.indices(inst, m, w)?;
            if cursors[p] <= position(&order[p], r) {
                return Err(Error::InconsistentState(format!(
                    "({m},{w}) is held but the proposer's cursor has not passed it"
                )));
            }
            holders[r] = Some(p);
        }
        Ok(Self {
            orientation,
            cursors,
            holders,
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn cursors(&self) -> &[usize] {
        &self.cursors
    }

    pub fn held(&self, inst: &PreferenceInstance) -> Matching {
        holdings_to_matching(inst, self.orientation, &self.holders)
    }
}

fn position(list: &[usize], target: usize) -> usize {
    list.iter()
        .position(|&x| x == target)
        .expect("complete lists contain every partner")
}

pub(crate) fn holdings_to_matching(
    inst: &PreferenceInstance,
    orientation: Orientation,
    holders: &[Option<usize>],
) -> Matching {
    Matching::from_pairs(
        holders
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.map(|p| orientation.pair(inst, p, r))),
    )
    .expect("each receiver holds at most one proposer and each proposer is held once")
}

/// Runs deferred acceptance to quiescence over index-space tables.
///
/// `order[p]` is proposer `p`'s list; `receiver_rank[r][p]` is `p`'s rank
/// for receiver `r`. Only proposers in `free` (and those displaced during
/// the run) act, which is what lets the parallel engine run a subset of
/// proposers against shared tables.
pub(crate) fn run(
    order: &[Vec<usize>],
    receiver_rank: &[Vec<u32>],
    cursors: &mut [usize],
    holders: &mut [Option<usize>],
    mut free: BTreeSet<usize>,
) -> Result<TraceCounters> {
    let mut proposals = 0;
    while let Some(p) = free.pop_first() {
        let Some(&r) = order[p].get(cursors[p]) else {
            return Err(Error::InconsistentState(format!(
                "proposer at index {p} exhausted his list"
            )));
        };
        cursors[p] += 1;
        proposals += 1;
        match holders[r] {
            None => holders[r] = Some(p),
            Some(q) if receiver_rank[r][p] < receiver_rank[r][q] => {
                holders[r] = Some(p);
                free.insert(q);
            }
            Some(_) => {
                free.insert(p);
            }
        }
    }
    Ok(TraceCounters { proposals })
}

/// Proposer-optimal stable matching of `inst`.
pub fn gsa_solve(inst: &PreferenceInstance, orientation: Orientation) -> (Matching, TraceCounters) {
    gsa_resume(inst, EngineState::fresh(inst, orientation))
        .expect("a fresh state on a complete instance always resolves")
}

/// Continues deferred acceptance from `state` until no proposer is free.
pub fn gsa_resume(
    inst: &PreferenceInstance,
    mut state: EngineState,
) -> Result<(Matching, TraceCounters)> {
    let n = inst.n();
    if state.cursors.len() != n || state.holders.len() != n {
        return Err(Error::InconsistentState(format!(
            "state sized for {} participants, instance has {n}",
            state.cursors.len()
        )));
    }
    let proposers = state.orientation.proposers();
    let mut is_held = vec![false; n];
    for &p in state.holders.iter().flatten() {
        if p >= n || std::mem::replace(&mut is_held[p], true) {
            return Err(Error::InconsistentState(format!(
                "proposer at index {p} is held twice or out of range"
            )));
        }
    }
    let free = (0..n).filter(|&p| !is_held[p]).collect();
    let counters = run(
        inst.order(proposers),
        inst.ranks(proposers.opposite()),
        &mut state.cursors,
        &mut state.holders,
        free,
    )?;
    Ok((holdings_to_matching(inst, state.orientation, &state.holders), counters))
}
