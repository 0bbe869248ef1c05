//! Type A Dynkin diagram geometry.
//!
//! Nodes are identified with `1..=n` so that `d(i, j) = |i - j|`. Connected
//! subdiagrams are closed intervals `[lo, hi]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node (color) of the diagram.
pub type Node = u32;

/// The Dynkin diagram of type `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinA {
    rank: Node,
}

impl DynkinA {
    pub fn new(rank: Node) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(DynkinA { rank })
    }

    pub fn rank(&self) -> Node {
        self.rank
    }

    /// The whole node set as an interval.
    pub fn full(&self) -> Interval {
        Interval {
            lo: 1,
            hi: self.rank,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        1..=self.rank
    }

    pub fn check(&self, node: Node) -> Result<Node> {
        if node == 0 || node > self.rank {
            Err(Error::NodeOutOfRange {
                node,
                rank: self.rank,
            })
        } else {
            Ok(node)
        }
    }

    /// Checks that `interval` is a subdiagram of this diagram.
    pub fn check_interval(&self, interval: Interval) -> Result<Interval> {
        self.full().check_contains_interval(interval)?;
        Ok(interval)
    }

    pub fn distance(&self, i: Node, j: Node) -> Result<u32> {
        self.check(i)?;
        self.check(j)?;
        Ok(i.abs_diff(j))
    }

    /// `d_{i,j}^k = (d(k,i) + d(k,j) - d(i,j)) / 2`, the distance from `k`
    /// to the segment `[i, j]`.
    pub fn d_ijk(&self, i: Node, j: Node, k: Node) -> Result<u32> {
        let total = self.distance(k, i)? + self.distance(k, j)?;
        let dij = self.distance(i, j)?;
        debug_assert!(total >= dij && (total - dij) % 2 == 0);
        Ok((total - dij) / 2)
    }

    /// The diagram automorphism `i -> n + 1 - i`.
    pub fn color_dual(&self, i: Node) -> Result<Node> {
        self.check(i)?;
        Ok(self.rank + 1 - i)
    }

    /// Dual Coxeter number of the whole diagram.
    pub fn dual_coxeter(&self) -> u32 {
        self.full().dual_coxeter()
    }
}

/// A connected subdiagram `[lo, hi]` (closed, nonempty).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    lo: Node,
    hi: Node,
}

impl Interval {
    pub fn new(lo: Node, hi: Node) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The smallest interval containing both nodes.
    pub fn spanning(i: Node, j: Node) -> Result<Self> {
        Interval::new(i.min(j), i.max(j))
    }

    pub fn lo(&self) -> Node {
        self.lo
    }

    pub fn hi(&self) -> Node {
        self.hi
    }

    /// Number of nodes.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, node: Node) -> bool {
        self.lo <= node && node <= self.hi
    }

    pub fn contains_interval(&self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn check_contains(&self, node: Node) -> Result<()> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(Error::NodeNotInInterval {
                node,
                interval: *self,
            })
        }
    }

    fn check_contains_interval(&self, inner: Interval) -> Result<()> {
        if self.contains_interval(inner) {
            Ok(())
        } else {
            Err(Error::NotSubinterval {
                inner,
                outer: *self,
            })
        }
    }

    /// Image of `i` under the longest Weyl group element of this subdiagram:
    /// the reflection `i -> lo + hi - i`.
    pub fn w0_image(&self, i: Node) -> Result<Node> {
        self.check_contains(i)?;
        Ok(self.lo + self.hi - i)
    }

    /// Dual Coxeter number of type `A_len`.
    pub fn dual_coxeter(&self) -> u32 {
        self.len() + 1
    }

    /// `d(K, ∂J)` for `K = self`, the distance from this interval to the
    /// boundary of the enclosing interval `outer`.
    pub fn boundary_distance(&self, outer: Interval) -> Result<u32> {
        outer.check_contains_interval(*self)?;
        Ok((self.lo - outer.lo).min(outer.hi - self.hi))
    }

    /// All intervals contained in this one.
    pub fn subintervals(&self) -> impl Iterator<Item = Interval> + '_ {
        (self.lo..=self.hi).flat_map(move |lo| (lo..=self.hi).map(move |hi| Interval { lo, hi }))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
