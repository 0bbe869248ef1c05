//! q-characters of fundamental modules in type A via column tableaux, and
//! the composition factors of a reducible product of two fundamentals.
//!
//! The box with entry `i` at support `s` carries the ℓ-weight
//! `ω_{i,s+i-1} ω_{i-1,s+i}^{-1}` (with `ω_0 = ω_{n+1} = 1`), and a column
//! of height `k` at support `s` puts its `j`-th box at support `s + 2(k-j)`.
//! The fundamental module of color `i` runs over columns of height `i`
//! supported at `1 - i`, so its top ℓ-weight is `ω_{i,0}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::drinfeld::{DrinfeldPoly, KRFactor};
use crate::dynkin::{DynkinA, Node};
use crate::error::{Error, Result};
use crate::redsets::{is_reducible_gap, string_parameter};

/// A Laurent monomial in the variables `ω_{i,c}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LWeight {
    #[serde(with = "monomial_serde")]
    monomial: BTreeMap<(Node, i64), i32>,
}

mod monomial_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::dynkin::Node;

    #[derive(Serialize, Deserialize)]
    struct Term {
        color: Node,
        exponent: i64,
        power: i32,
    }

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<(Node, i64), i32>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = m
            .iter()
            .map(|(&(color, exponent), &power)| Term {
                color,
                exponent,
                power,
            })
            .collect();
        terms.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<(Node, i64), i32>, D::Error> {
        let terms = Vec::<Term>::deserialize(de)?;
        Ok(terms
            .into_iter()
            .filter(|t| t.power != 0)
            .map(|t| ((t.color, t.exponent), t.power))
            .collect())
    }
}

impl LWeight {
    pub fn one() -> Self {
        LWeight::default()
    }

    /// `ω_{color,exponent}^power`; colors `0` and `n+1` are passed in already
    /// filtered by the caller.
    pub fn var(color: Node, exponent: i64, power: i32) -> Self {
        let mut w = LWeight::one();
        if power != 0 {
            w.monomial.insert((color, exponent), power);
        }
        w
    }

    pub fn is_one(&self) -> bool {
        self.monomial.is_empty()
    }

    pub fn power(&self, color: Node, exponent: i64) -> i32 {
        self.monomial.get(&(color, exponent)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Node, i64, i32)> + '_ {
        self.monomial.iter().map(|(&(c, e), &p)| (c, e, p))
    }

    pub fn is_dominant(&self) -> bool {
        self.monomial.values().all(|&p| p >= 0)
    }

    pub fn multiply(&self, other: &LWeight) -> LWeight {
        let mut monomial = self.monomial.clone();
        for (&key, &p) in &other.monomial {
            let entry = monomial.entry(key).or_insert(0);
            *entry += p;
            if *entry == 0 {
                monomial.remove(&key);
            }
        }
        LWeight { monomial }
    }

    pub fn shifted(&self, by: i64) -> LWeight {
        LWeight {
            monomial: self
                .monomial
                .iter()
                .map(|(&(c, e), &p)| ((c, e + by), p))
                .collect(),
        }
    }

    /// The classical weight `Σ p·ω_c`, as a coefficient vector indexed by
    /// color (entry 0 unused).
    pub fn classical_weight(&self, rank: Node) -> Vec<i64> {
        let mut wt = vec![0; rank as usize + 1];
        for (&(c, _), &p) in &self.monomial {
            wt[c as usize] += i64::from(p);
        }
        wt
    }

    /// The Drinfeld polynomial of a dominant monomial.
    pub fn to_polynomial(&self) -> Option<DrinfeldPoly> {
        if !self.is_dominant() {
            return None;
        }
        let mut poly = DrinfeldPoly::unit();
        for (&(c, e), &p) in &self.monomial {
            poly.insert_root(c, e, p as u32);
        }
        Some(poly)
    }
}

impl fmt::Display for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (&(c, e), &p)) in self.monomial.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "w[{c},{e}]")?;
            if p != 1 {
                write!(f, "^{p}")?;
            }
        }
        Ok(())
    }
}

/// A column tableau with strictly increasing entries in `1..=n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnTableau {
    entries: Vec<Node>,
    support: i64,
}

impl ColumnTableau {
    pub fn new(g: &DynkinA, entries: Vec<Node>, support: i64) -> Result<Self> {
        let max = g.rank() + 1;
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > max) {
            return Err(Error::TableauEntry { entry: bad, max });
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!(
                "column entries must increase strictly: {entries:?}"
            )));
        }
        Ok(ColumnTableau { entries, support })
    }

    pub fn entries(&self) -> &[Node] {
        &self.entries
    }

    pub fn support(&self) -> i64 {
        self.support
    }

    pub fn height(&self) -> usize {
        self.entries.len()
    }

    /// Number of places where consecutive entries jump by more than one,
    /// counting a jump from 0 before the first entry.
    pub fn gaps(&self) -> usize {
        let mut prev = 0;
        let mut gaps = 0;
        for &e in &self.entries {
            if e > prev + 1 {
                gaps += 1;
            }
            prev = e;
        }
        gaps
    }
}

/// `ω_{i,s+i-1} ω_{i-1,s+i}^{-1}`, dropping the trivial `ω_0` and `ω_{n+1}`.
pub fn box_lweight(g: &DynkinA, entry: Node, support: i64) -> Result<LWeight> {
    let max = g.rank() + 1;
    if entry == 0 || entry > max {
        return Err(Error::TableauEntry { entry, max });
    }
    let e = i64::from(entry);
    let mut w = LWeight::one();
    if entry <= g.rank() {
        w = w.multiply(&LWeight::var(entry, support + e - 1, 1));
    }
    if entry >= 2 {
        w = w.multiply(&LWeight::var(entry - 1, support + e, -1));
    }
    Ok(w)
}

pub fn tableau_lweight(g: &DynkinA, t: &ColumnTableau) -> Result<LWeight> {
    let k = t.height() as i64;
    t.entries
        .iter()
        .enumerate()
        .try_fold(LWeight::one(), |acc, (idx, &entry)| {
            let j = idx as i64 + 1;
            Ok(acc.multiply(&box_lweight(g, entry, t.support + 2 * (k - j))?))
        })
}

fn increasing_sequences(len: usize, max: Node) -> Vec<Vec<Node>> {
    fn go(start: Node, max: Node, left: usize, cur: &mut Vec<Node>, out: &mut Vec<Vec<Node>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for e in start..=max {
            if (max - e) as usize + 1 < left {
                break;
            }
            cur.push(e);
            go(e + 1, max, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max, len, &mut Vec::new(), &mut out);
    out
}

/// All column tableaux of height `i` supported at `1 - i`.
pub fn fundamental_tableaux(g: &DynkinA, i: Node) -> Result<Vec<ColumnTableau>> {
    g.check(i)?;
    let support = 1 - i64::from(i);
    increasing_sequences(i as usize, g.rank() + 1)
        .into_iter()
        .map(|entries| ColumnTableau::new(g, entries, support))
        .collect()
}

/// The ℓ-weights of the fundamental module of color `i` based at exponent 0,
/// one per tableau (every ℓ-weight space is one-dimensional).
pub fn fundamental_qchar(g: &DynkinA, i: Node) -> Result<Vec<LWeight>> {
    fundamental_tableaux(g, i)?
        .iter()
        .map(|t| tableau_lweight(g, t))
        .collect()
}

/// The tableau `1, …, k, l+1, …, l+i-k` of height `i` at support `1 - i`.
pub fn one_gap_tableau(g: &DynkinA, i: Node, k: Node, l: Node) -> Result<ColumnTableau> {
    let entries = (1..=k).chain(l + 1..=l + i - k).collect();
    ColumnTableau::new(g, entries, 1 - i64::from(i))
}

/// Closed form `ω_{l,i+l-2k}^{-1} ω_{k,i-k} ω_{i+l-k,l-k}` of the one-gap
/// tableau's ℓ-weight.
pub fn one_gap_lweight(g: &DynkinA, i: Node, k: Node, l: Node) -> LWeight {
    let (ii, kk, ll) = (i64::from(i), i64::from(k), i64::from(l));
    let nontrivial = |c: Node| c >= 1 && c <= g.rank();
    let mut w = LWeight::one();
    if nontrivial(l) {
        w = w.multiply(&LWeight::var(l, ii + ll - 2 * kk, -1));
    }
    if nontrivial(k) {
        w = w.multiply(&LWeight::var(k, ii - kk, 1));
    }
    if nontrivial(i + l - k) {
        w = w.multiply(&LWeight::var(i + l - k, ll - kk, 1));
    }
    w
}

/// The `p` with `m = 2 + d(i,j) - 2p`, `p <= 0`, for a reducible product of
/// fundamentals; input error otherwise.
pub fn fundamental_pair_parameter(g: &DynkinA, i: Node, j: Node, m: i64) -> Result<i64> {
    string_parameter(g, i, 1, j, 1, m, g.full())?.ok_or(Error::NotReducible {
        i,
        r: 1,
        j,
        s: 1,
        m,
    })
}

/// Dominant ℓ-weights of `L(ω_{j,m}) ⊗ L(ω_{i,0})`, by brute force over
/// products of the two q-characters. Returned sorted and deduplicated.
pub fn dominant_product_lweights(g: &DynkinA, i: Node, j: Node, m: i64) -> Result<Vec<LWeight>> {
    fundamental_pair_parameter(g, i, j, m)?;
    let left = fundamental_qchar(g, i)?;
    let right: Vec<LWeight> = fundamental_qchar(g, j)?
        .iter()
        .map(|w| w.shifted(m))
        .collect();
    let mut out: Vec<LWeight> = left
        .iter()
        .flat_map(|a| right.iter().map(move |b| a.multiply(b)))
        .filter(LWeight::is_dominant)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A fundamental factor of the socle, possibly trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleFactor {
    pub color: Node,
    pub exponent: i64,
    /// Color 0 or `n+1`: the factor is the trivial module and is dropped.
    pub trivial: bool,
}

impl SocleFactor {
    fn lweight(&self) -> LWeight {
        if self.trivial {
            LWeight::one()
        } else {
            LWeight::var(self.color, self.exponent, 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SocleHead {
    pub p: i64,
    pub socle_pair: [SocleFactor; 2],
    /// Nontrivial socle factors only.
    pub socle: Vec<KRFactor>,
    pub head: DrinfeldPoly,
    /// The socle factors form a simple tensor product.
    pub socle_simple: bool,
}

impl SocleHead {
    /// The closed-form dominant set: head and socle highest ℓ-weights.
    pub fn dominant_set(&self) -> Vec<LWeight> {
        let head = self.head.roots().fold(LWeight::one(), |acc, (c, e, mult)| {
            acc.multiply(&LWeight::var(c, e, mult as i32))
        });
        let socle = self.socle_pair[0]
            .lweight()
            .multiply(&self.socle_pair[1].lweight());
        let mut out = vec![head, socle];
        out.sort();
        out
    }
}

/// Socle and head of `L(ω_{j,m}) ⊗ L(ω_{i,0})`: the socle is
/// `L(ω_{i_-+p-1, 1-p+i-i_-}) ⊗ L(ω_{i_++1-p, 1-p+j-i_-})` and the head is
/// `L(ω_{i,0} ω_{j,m})`.
pub fn socle_head(g: &DynkinA, i: Node, j: Node, m: i64) -> Result<SocleHead> {
    let p = fundamental_pair_parameter(g, i, j, m)?;
    let lo = i64::from(i.min(j));
    let hi = i64::from(i.max(j));
    let n1 = i64::from(g.rank()) + 1;
    let factor = |color: i64, exponent: i64| SocleFactor {
        color: color as Node,
        exponent,
        trivial: color <= 0 || color >= n1,
    };
    let first = factor(lo + p - 1, 1 - p + i64::from(i) - lo);
    let second = factor(hi + 1 - p, 1 - p + i64::from(j) - lo);
    // The window p >= -d([i,j], ∂I) keeps both colors in 0..=n+1.
    debug_assert!(first.color <= g.rank() + 1 && second.color <= g.rank() + 1);
    let socle: Vec<KRFactor> = [first, second]
        .iter()
        .filter(|f| !f.trivial)
        .map(|f| KRFactor::new(f.color, f.exponent, 1))
        .collect::<Result<_>>()?;
    let socle_simple = match socle.as_slice() {
        [a, b] => !is_reducible_gap(g, a.color, 1, b.color, 1, g.full(), a.exponent - b.exponent)?,
        _ => true,
    };
    let head = DrinfeldPoly::from_factors(&[KRFactor::new(i, 0, 1)?, KRFactor::new(j, m, 1)?]);
    Ok(SocleHead {
        p,
        socle_pair: [first, second],
        socle,
        head,
        socle_simple,
    })
}
