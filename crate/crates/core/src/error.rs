use thiserror::Error;

use crate::dynkin::{Interval, Node};

/// Input errors raised by the engine. Every variant describes bad caller
/// data; internal invariant breaches panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("node {node} outside the diagram 1..={rank}")]
    NodeOutOfRange { node: Node, rank: Node },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: Node, hi: Node },

    #[error("node {node} does not lie in {interval}")]
    NodeNotInInterval { node: Node, interval: Interval },

    #[error("{inner} is not contained in {outer}")]
    NotSubinterval { inner: Interval, outer: Interval },

    #[error("weights must be positive")]
    ZeroWeight,

    #[error("exponent gap {m} is not in the reducibility set of ({i}, {r}) and ({j}, {s})")]
    NotReducible {
        i: Node,
        r: u32,
        j: Node,
        s: u32,
        m: i64,
    },

    #[error("tableau entry {entry} outside 1..={max}")]
    TableauEntry { entry: Node, max: Node },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
