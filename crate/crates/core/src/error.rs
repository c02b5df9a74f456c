use thiserror::Error;

use crate::prefs::{ManId, Side, WomanId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{side} row {row} is not a permutation: {detail}")]
    NotPermutation {
        side: Side,
        row: usize,
        detail: String,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unknown {side} id {id}")]
    UnknownId { side: Side, id: u32 },

    #[error("matching is not one-to-one: {0}")]
    NotOneToOne(String),

    #[error("pair ({man},{woman}) involves a participant that is not matched")]
    Unmatched { man: ManId, woman: WomanId },

    #[error("instance too small to delete a pair: n = {n}, need at least {min}")]
    InstanceTooSmall { n: usize, min: usize },

    #[error("oracle infeasible at this size: n = {n} exceeds cap {cap}")]
    OracleInfeasible { n: usize, cap: usize },

    #[error("inconsistent engine state: {0}")]
    InconsistentState(String),

    #[error("inconsistent histories: {0}")]
    InconsistentHistories(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("no candidate is optimal for every proposer")]
    NoOptimum,

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("worst-case generator gave up after {attempts} attempts at n = {n}")]
    GeneratorExhausted { n: usize, attempts: u64 },
}
