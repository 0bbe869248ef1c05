//! Reducibility sets for tensor products of two Kirillov-Reshetikhin modules
//! in type A.
//!
//! For colors `i, j` of weights `r, s` inside a connected subdiagram `J`,
//! the set is
//!
//! ```text
//! { r + s + d(i,j) - 2p : -d([i,j], ∂J) <= p < min(r, s) }
//! ```
//!
//! and the tensor product of the two modules (restricted to `J`) is
//! reducible exactly when the ratio of spectral parameters is `q^m` with
//! `|m|` in the set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinA, Interval, Node};
use crate::error::{Error, Result};

/// What a reducibility set was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSetParams {
    pub i: Node,
    pub r: u32,
    pub j: Node,
    pub s: u32,
    /// `None` for the color-free sl₂ set.
    pub within: Option<Interval>,
}

/// A finite set of positive exponent gaps, stored in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSet {
    elements: Vec<i64>,
    params: RSetParams,
}

impl RSet {
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn params(&self) -> RSetParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `true` iff `|m|` lies in the set.
    pub fn contains(&self, m: i64) -> bool {
        self.elements.binary_search(&m.abs()).is_ok()
    }

    pub fn max(&self) -> Option<i64> {
        self.elements.last().copied()
    }

    pub fn min(&self) -> Option<i64> {
        self.elements.first().copied()
    }

    pub fn is_subset(&self, other: &RSet) -> bool {
        self.elements.iter().all(|m| other.contains(*m))
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// `true` iff `|m|` lies in `set`.
pub fn member(m: i64, set: &RSet) -> bool {
    set.contains(m)
}

fn check_weights(r: u32, s: u32) -> Result<()> {
    if r == 0 || s == 0 {
        Err(Error::ZeroWeight)
    } else {
        Ok(())
    }
}

/// Offset `r + s + d(i,j)` and the admissible window `[p_lo, p_hi)` for the
/// string parameter.
fn window(
    g: &DynkinA,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
    within: Interval,
) -> Result<(i64, i64, i64)> {
    check_weights(r, s)?;
    g.check_interval(within)?;
    let span = Interval::spanning(g.check(i)?, g.check(j)?)?;
    let slack = span.boundary_distance(within)?;
    let top = i64::from(r) + i64::from(s) + i64::from(i.abs_diff(j));
    Ok((top, -i64::from(slack), i64::from(r.min(s))))
}

/// The reducibility set of colors `i, j` with weights `r, s` over the
/// subdiagram `within`.
pub fn r_set(g: &DynkinA, i: Node, r: u32, j: Node, s: u32, within: Interval) -> Result<RSet> {
    let (top, p_lo, p_hi) = window(g, i, r, j, s, within)?;
    let mut elements: Vec<i64> = (p_lo..p_hi).map(|p| top - 2 * p).collect();
    elements.reverse();
    Ok(RSet {
        elements,
        params: RSetParams {
            i,
            r,
            j,
            s,
            within: Some(within),
        },
    })
}

/// The reducibility set over the whole diagram.
pub fn r_set_global(g: &DynkinA, i: Node, r: u32, j: Node, s: u32) -> Result<RSet> {
    r_set(g, i, r, j, s, g.full())
}

/// The sl₂ set `{ r + s - 2p : 0 <= p < min(r, s) }`, which governs merging
/// of same-colored q-strings.
pub fn sl2_set(r: u32, s: u32) -> Result<RSet> {
    check_weights(r, s)?;
    let top = i64::from(r) + i64::from(s);
    let elements = (0..i64::from(r.min(s)))
        .rev()
        .map(|p| top - 2 * p)
        .collect();
    Ok(RSet {
        elements,
        params: RSetParams {
            i: 0,
            r,
            j: 0,
            s,
            within: None,
        },
    })
}

/// Arithmetic membership test that does not materialize the set.
pub fn is_reducible_gap(
    g: &DynkinA,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
    within: Interval,
    m: i64,
) -> Result<bool> {
    Ok(string_parameter(g, i, r, j, s, m.abs(), within)?.is_some())
}

/// Arithmetic sl₂ membership: `|m| = r + s - 2p` for some `0 <= p < min(r, s)`.
pub fn in_sl2_set(r: u32, s: u32, m: i64) -> bool {
    let m = m.abs();
    let top = i64::from(r) + i64::from(s);
    let gap = top - m;
    m > 0 && gap >= 0 && gap % 2 == 0 && gap / 2 < i64::from(r.min(s))
}

/// Solves `m = r + s + d(i,j) - 2p` for the string parameter `p`, returning
/// it when it is an integer inside the window `-d([i,j], ∂J) <= p < min(r,s)`.
pub fn string_parameter(
    g: &DynkinA,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
    m: i64,
    within: Interval,
) -> Result<Option<i64>> {
    let (top, p_lo, p_hi) = window(g, i, r, j, s, within)?;
    if m <= 0 || (top - m) % 2 != 0 {
        return Ok(None);
    }
    let p = (top - m) / 2;
    Ok((p_lo <= p && p < p_hi).then_some(p))
}

/// The unique minimal interval `J ⊇ [i, j]` with `m` in the reducibility set
/// over `J`, or `None` when `m` is not in the global set.
pub fn minimal_subdiagram(
    g: &DynkinA,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
    m: i64,
) -> Result<Option<Interval>> {
    let Some(p) = string_parameter(g, i, r, j, s, m, g.full())? else {
        return Ok(None);
    };
    let lo = i64::from(i.min(j));
    let hi = i64::from(i.max(j));
    let (lo, hi) = if p >= 0 { (lo, hi) } else { (lo + p, hi - p) };
    // p >= -d([i,j], ∂I) keeps the extension inside the diagram.
    let interval = Interval::new(lo as Node, hi as Node)?;
    Ok(Some(g.check_interval(interval)?))
}
