//! Drinfeld polynomials over the exponent lattice of a formal base `a`.
//!
//! A fundamental root `ω_{i, a q^c}` is recorded as the pair `(i, c)`; only
//! exponent differences carry meaning. A Kirillov-Reshetikhin factor
//! `ω_{i, a q^c, r}` is the q-string of `r` roots centered at `c` with step 2.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinA, Interval, Node};
use crate::error::{Error, Result};
use crate::redsets::in_sl2_set;

/// One q-factor `ω_{color, a q^exponent, weight}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KRFactor {
    pub color: Node,
    pub exponent: i64,
    pub weight: u32,
}

impl KRFactor {
    pub fn new(color: Node, exponent: i64, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::ZeroWeight);
        }
        if color == 0 {
            return Err(Error::InvalidConfig("colors start at 1".into()));
        }
        Ok(KRFactor {
            color,
            exponent,
            weight,
        })
    }

    /// Exponents of the roots of this string, highest first.
    pub fn roots(&self) -> impl Iterator<Item = i64> {
        let top = self.exponent + i64::from(self.weight) - 1;
        (0..i64::from(self.weight)).map(move |k| top - 2 * k)
    }

    fn lowest_root(&self) -> i64 {
        self.exponent - i64::from(self.weight) + 1
    }

    fn highest_root(&self) -> i64 {
        self.exponent + i64::from(self.weight) - 1
    }

    /// The string spanning `[lo, hi]` (same parity).
    fn from_span(color: Node, lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi && (hi - lo) % 2 == 0);
        KRFactor {
            color,
            exponent: (lo + hi) / 2,
            weight: ((hi - lo) / 2 + 1) as u32,
        }
    }

    pub fn expand(&self) -> DrinfeldPoly {
        let mut poly = DrinfeldPoly::unit();
        for c in self.roots() {
            poly.insert_root(self.color, c, 1);
        }
        poly
    }

    /// Same color strings in special position: their union is a string
    /// strictly containing both.
    pub fn in_special_position(&self, other: &KRFactor) -> bool {
        self.color == other.color
            && in_sl2_set(self.weight, other.weight, self.exponent - other.exponent)
    }

    /// Right dual within the subdiagram `within`: reflect the color and
    /// shift the exponent down by the dual Coxeter number.
    pub fn dual_within(&self, within: Interval) -> Result<KRFactor> {
        Ok(KRFactor {
            color: within.w0_image(self.color)?,
            exponent: self.exponent - i64::from(within.dual_coxeter()),
            weight: self.weight,
        })
    }

    /// Left dual within `within` (exponent shifted up).
    pub fn left_dual_within(&self, within: Interval) -> Result<KRFactor> {
        Ok(KRFactor {
            color: within.w0_image(self.color)?,
            exponent: self.exponent + i64::from(within.dual_coxeter()),
            weight: self.weight,
        })
    }

    /// Right dual over the whole diagram.
    pub fn dual(&self, g: &DynkinA) -> Result<KRFactor> {
        g.check(self.color)?;
        self.dual_within(g.full())
    }

    pub fn left_dual(&self, g: &DynkinA) -> Result<KRFactor> {
        g.check(self.color)?;
        self.left_dual_within(g.full())
    }

    /// Restriction to a subdiagram: the factor itself when its color lies
    /// in `within`, otherwise the unit.
    pub fn restrict(&self, within: Interval) -> Option<KRFactor> {
        within.contains(self.color).then_some(*self)
    }

    pub fn shifted(&self, by: i64) -> KRFactor {
        KRFactor {
            exponent: self.exponent + by,
            ..*self
        }
    }
}

impl fmt::Display for KRFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}@{}", self.color, self.weight, self.exponent)
    }
}

/// A Drinfeld polynomial as a multiset of fundamental roots grouped by color.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DrinfeldPoly {
    roots: BTreeMap<Node, BTreeMap<i64, u32>>,
}

impl DrinfeldPoly {
    pub fn unit() -> Self {
        DrinfeldPoly::default()
    }

    pub fn is_unit(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn from_roots(roots: impl IntoIterator<Item = (Node, i64)>) -> Self {
        let mut poly = DrinfeldPoly::unit();
        for (color, c) in roots {
            poly.insert_root(color, c, 1);
        }
        poly
    }

    pub fn from_factors<'a>(factors: impl IntoIterator<Item = &'a KRFactor>) -> Self {
        factors
            .into_iter()
            .fold(DrinfeldPoly::unit(), |acc, f| acc.multiply(&f.expand()))
    }

    pub fn insert_root(&mut self, color: Node, exponent: i64, multiplicity: u32) {
        if multiplicity == 0 {
            return;
        }
        *self
            .roots
            .entry(color)
            .or_default()
            .entry(exponent)
            .or_insert(0) += multiplicity;
    }

    /// Roots with multiplicity, ordered by color then exponent.
    pub fn roots(&self) -> impl Iterator<Item = (Node, i64, u32)> + '_ {
        self.roots
            .iter()
            .flat_map(|(&color, row)| row.iter().map(move |(&c, &k)| (color, c, k)))
    }

    pub fn degree(&self) -> u32 {
        self.roots().map(|(_, _, k)| k).sum()
    }

    pub fn colors(&self) -> impl Iterator<Item = Node> + '_ {
        self.roots.keys().copied()
    }

    pub fn multiply(&self, other: &DrinfeldPoly) -> DrinfeldPoly {
        let mut out = self.clone();
        for (color, c, k) in other.roots() {
            out.insert_root(color, c, k);
        }
        out
    }

    pub fn check_colors(&self, g: &DynkinA) -> Result<()> {
        self.colors().try_for_each(|c| g.check(c).map(|_| ()))
    }

    /// The q-factorization: the unique multiset of q-strings, no two of the
    /// same color in special position, whose roots make up this polynomial.
    pub fn q_factorize(&self) -> Vec<KRFactor> {
        self.q_factorize_with(|_| 0)
    }

    /// Like [`q_factorize`](Self::q_factorize), but `choose(k)` picks which
    /// of the `k` currently special pairs is resolved next. The result does
    /// not depend on the choices.
    pub fn q_factorize_with(&self, mut choose: impl FnMut(usize) -> usize) -> Vec<KRFactor> {
        let mut out = Vec::new();
        for (&color, row) in &self.roots {
            let mut strings: Vec<KRFactor> = row
                .iter()
                .flat_map(|(&c, &k)| {
                    std::iter::repeat_n(
                        KRFactor {
                            color,
                            exponent: c,
                            weight: 1,
                        },
                        k as usize,
                    )
                })
                .collect();
            loop {
                let pairs: Vec<(usize, usize)> = (0..strings.len())
                    .flat_map(|a| (a + 1..strings.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| strings[a].in_special_position(&strings[b]))
                    .collect();
                if pairs.is_empty() {
                    break;
                }
                let (a, b) = pairs[choose(pairs.len()) % pairs.len()];
                let (x, y) = (strings[a], strings[b]);
                strings.swap_remove(b);
                strings.swap_remove(a);
                // Union and intersection of the two root progressions.
                strings.push(KRFactor::from_span(
                    color,
                    x.lowest_root().min(y.lowest_root()),
                    x.highest_root().max(y.highest_root()),
                ));
                let lo = x.lowest_root().max(y.lowest_root());
                let hi = x.highest_root().min(y.highest_root());
                if lo <= hi {
                    strings.push(KRFactor::from_span(color, lo, hi));
                }
            }
            out.extend(strings);
        }
        out.sort();
        out
    }
}

/// `true` when no two same-colored factors are in special position.
pub fn is_q_factorization(factors: &[KRFactor]) -> bool {
    factors
        .iter()
        .enumerate()
        .all(|(k, a)| factors[k + 1..].iter().all(|b| !a.in_special_position(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(color: Node, exponent: i64, weight: u32) -> KRFactor {
        KRFactor::new(color, exponent, weight).unwrap()
    }

    fn a(n: Node) -> DynkinA {
        DynkinA::new(n).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            f(1, 3, 2).expand(),
            DrinfeldPoly::from_roots([(1, 4), (1, 2)])
        );
        assert_eq!(f(2, 0, 1).expand(), DrinfeldPoly::from_roots([(2, 0)]));
        assert_eq!(
            f(3, 6, 3).expand(),
            DrinfeldPoly::from_roots([(3, 8), (3, 6), (3, 4)])
        );
    }

    #[test]
    fn q_factorize_examples() {
        let poly = DrinfeldPoly::from_roots([(1, 2), (1, 4)]).multiply(&f(2, 0, 2).expand());
        assert_eq!(poly.q_factorize(), vec![f(1, 3, 2), f(2, 0, 2)]);

        let poly = DrinfeldPoly::from_roots([(3, 8)]).multiply(&f(3, 6, 3).expand());
        assert_eq!(poly.degree(), 4);
        assert_eq!(poly.q_factorize(), vec![f(3, 6, 3), f(3, 8, 1)]);

        assert_eq!(
            DrinfeldPoly::from_roots([(2, 5)]).q_factorize(),
            vec![f(2, 5, 1)]
        );
        assert!(DrinfeldPoly::unit().q_factorize().is_empty());
    }

    #[test]
    fn overlapping_strings_split_into_union_and_intersection() {
        // {-1, 1} and {1, 3} are in special position; the factorization is
        // {-1, 1, 3} together with {1}.
        let poly = f(1, 0, 2).expand().multiply(&f(1, 2, 2).expand());
        assert_eq!(poly.q_factorize(), vec![f(1, 1, 1), f(1, 1, 3)]);
    }

    #[test]
    fn mixed_parities_never_merge() {
        let poly = DrinfeldPoly::from_roots([(1, 0), (1, 1), (1, 3)]);
        assert_eq!(poly.q_factorize(), vec![f(1, 0, 1), f(1, 2, 2)]);
    }

    #[test]
    fn multiply_examples() {
        let pi = f(1, 1, 2).expand();
        assert_eq!(pi.multiply(&DrinfeldPoly::unit()), pi);
        let one = DrinfeldPoly::from_roots([(1, 0)]);
        let mut twice = DrinfeldPoly::unit();
        twice.insert_root(1, 0, 2);
        assert_eq!(one.multiply(&one), twice);
        assert_eq!(
            f(1, 1, 2).expand().multiply(&f(2, 5, 1).expand()),
            DrinfeldPoly::from_roots([(1, 2), (1, 0), (2, 5)])
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(f(1, 7, 2).dual(&a(2)), Ok(f(2, 4, 2)));
        assert_eq!(f(2, 3, 1).dual(&a(2)), Ok(f(1, 0, 1)));
        let j = Interval::new(1, 2).unwrap();
        assert_eq!(f(1, 0, 1).dual_within(j), Ok(f(2, -3, 1)));
        assert_eq!(f(1, 0, 1).left_dual_within(j), Ok(f(2, 3, 1)));
        assert!(f(3, 0, 1).dual_within(j).is_err());
        assert!(f(3, 0, 1).dual(&a(2)).is_err());
    }

    #[test]
    fn double_dual_shifts_exponent() {
        for n in 1..=5 {
            let g = a(n);
            for color in g.nodes() {
                let x = f(color, 3, 2);
                let back = x.dual(&g).unwrap().dual(&g).unwrap();
                assert_eq!(back, x.shifted(-2 * i64::from(n + 1)));
                assert_eq!(x.dual(&g).unwrap().left_dual(&g).unwrap(), x);
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let iv = |lo, hi| Interval::new(lo, hi).unwrap();
        assert_eq!(f(3, 6, 3).restrict(iv(1, 3)), Some(f(3, 6, 3)));
        assert_eq!(f(3, 8, 1).restrict(iv(1, 2)), None);
        assert_eq!(f(2, 5, 1).restrict(iv(2, 2)), Some(f(2, 5, 1)));
    }

    #[test]
    fn validity_checks() {
        assert!(is_q_factorization(&[f(1, 3, 2), f(2, 0, 2)]));
        assert!(!is_q_factorization(&[f(1, 2, 1), f(1, 4, 1)]));
        assert_eq!(KRFactor::new(1, 0, 0), Err(Error::ZeroWeight));
        assert!(DrinfeldPoly::from_roots([(4, 0)])
            .check_colors(&a(3))
            .is_err());
    }
}
