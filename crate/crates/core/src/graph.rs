//! q-factorization graphs.
//!
//! Vertices are the q-factors of a Drinfeld polynomial. There is an arrow
//! `v -> w` labeled `m = c_v - c_w` whenever `m` lies in the reducibility set
//! of the two factors; this is exactly when the tensor product `L(v) ⊗ L(w)`
//! is reducible and highest-ℓ-weight. The arrows generate a partial order
//! (heads below tails).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::drinfeld::{is_q_factorization, DrinfeldPoly, KRFactor};
use crate::dynkin::DynkinA;
use crate::error::Result;
use crate::redsets::is_reducible_gap;

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: VertexId,
    pub head: VertexId,
    pub epsilon: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFactGraph {
    ambient: DynkinA,
    vertices: Vec<KRFactor>,
    arrows: Vec<Arrow>,
    refactorized: bool,
}

/// Shape tags. For connected graphs on three vertices the tag is one of the
/// three line/triangle shapes; larger connected graphs are tagged
/// `TotallyOrdered` before `Tree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeTag {
    Empty,
    Singleton,
    TwoLine,
    MonotonicLine3,
    AlternatingLine3,
    Triangle,
    Tree,
    TotallyOrdered,
    Disconnected,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    pub components: Vec<Vec<VertexId>>,
    /// For three-vertex lines: `[end, middle, end]`.
    pub line: Option<[VertexId; 3]>,
    pub is_tree: bool,
    pub totally_ordered: bool,
}

/// Builds the q-factorization graph of the product of `factors`. Inputs that
/// are not a q-factorization (two same-colored strings in special position)
/// are first refactorized; [`QFactGraph::was_refactorized`] records this.
pub fn build_graph(factors: &[KRFactor], ambient: DynkinA) -> Result<QFactGraph> {
    for f in factors {
        ambient.check(f.color)?;
    }
    if is_q_factorization(factors) {
        QFactGraph::from_vertices(ambient, factors.to_vec(), false)
    } else {
        let normalized = DrinfeldPoly::from_factors(factors).q_factorize();
        QFactGraph::from_vertices(ambient, normalized, true)
    }
}

impl QFactGraph {
    fn from_vertices(
        ambient: DynkinA,
        mut vertices: Vec<KRFactor>,
        refactorized: bool,
    ) -> Result<Self> {
        vertices.sort();
        let mut arrows = Vec::new();
        for (t, tail) in vertices.iter().enumerate() {
            for (h, head) in vertices.iter().enumerate() {
                let epsilon = tail.exponent - head.exponent;
                if epsilon > 0
                    && is_reducible_gap(
                        &ambient,
                        tail.color,
                        tail.weight,
                        head.color,
                        head.weight,
                        ambient.full(),
                        epsilon,
                    )?
                {
                    arrows.push(Arrow {
                        tail: t,
                        head: h,
                        epsilon,
                    });
                }
            }
        }
        arrows.sort();
        Ok(QFactGraph {
            ambient,
            vertices,
            arrows,
            refactorized,
        })
    }

    pub fn ambient(&self) -> DynkinA {
        self.ambient
    }

    pub fn vertices(&self) -> &[KRFactor] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> KRFactor {
        self.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn was_refactorized(&self) -> bool {
        self.refactorized
    }

    pub fn polynomial(&self) -> DrinfeldPoly {
        DrinfeldPoly::from_factors(&self.vertices)
    }

    /// The arrow between two vertices, in either direction.
    pub fn arrow_between(&self, u: VertexId, v: VertexId) -> Option<Arrow> {
        self.arrows
            .iter()
            .copied()
            .find(|a| (a.tail == u && a.head == v) || (a.tail == v && a.head == u))
    }

    pub fn arrow_from(&self, tail: VertexId, head: VertexId) -> Option<Arrow> {
        self.arrows
            .iter()
            .copied()
            .find(|a| a.tail == tail && a.head == head)
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.arrow_between(u, v).is_some()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .arrows
            .iter()
            .filter_map(|a| {
                if a.tail == v {
                    Some(a.head)
                } else if a.head == v {
                    Some(a.tail)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.tail == v || a.head == v)
            .count()
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.arrows.len() + 1 == self.len()
    }

    /// `below[u][v]` iff `v ≺ u`, i.e. a directed path leads from `u` to `v`.
    #[allow(clippy::needless_range_loop)]
    pub fn order_closure(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut below = vec![vec![false; n]; n];
        for a in &self.arrows {
            below[a.tail][a.head] = true;
        }
        for k in 0..n {
            for u in 0..n {
                if below[u][k] {
                    for v in 0..n {
                        if below[k][v] {
                            below[u][v] = true;
                        }
                    }
                }
            }
        }
        below
    }

    /// Every pair of distinct vertices is comparable in the arrow order.
    pub fn is_totally_ordered(&self) -> bool {
        let below = self.order_closure();
        (0..self.len()).all(|u| (u + 1..self.len()).all(|v| below[u][v] || below[v][u]))
    }

    /// Vertices of undirected degree at most one.
    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.degree(v) <= 1).collect()
    }

    pub fn classify(&self) -> ShapeClass {
        let components = self.components();
        let is_tree = self.is_tree();
        let totally_ordered = self.is_totally_ordered();
        let mut line = None;
        let tag = match self.len() {
            0 => ShapeTag::Empty,
            _ if components.len() > 1 => ShapeTag::Disconnected,
            1 => ShapeTag::Singleton,
            2 => ShapeTag::TwoLine,
            3 if self.arrows.len() == 3 => ShapeTag::Triangle,
            3 => {
                let middle = (0..3)
                    .find(|&v| self.degree(v) == 2)
                    .expect("connected 3-line has a middle");
                let ends: Vec<VertexId> = (0..3).filter(|&v| v != middle).collect();
                line = Some([ends[0], middle, ends[1]]);
                let out_degree = self.arrows.iter().filter(|a| a.tail == middle).count();
                if out_degree == 1 {
                    ShapeTag::MonotonicLine3
                } else {
                    ShapeTag::AlternatingLine3
                }
            }
            _ if totally_ordered => ShapeTag::TotallyOrdered,
            _ if is_tree => ShapeTag::Tree,
            _ => ShapeTag::Other,
        };
        ShapeClass {
            tag,
            components,
            line,
            is_tree,
            totally_ordered,
        }
    }

    /// The graph of the polynomial with all exponents negated; every arrow is
    /// reversed with its label kept.
    pub fn arrow_dual(&self) -> QFactGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|f| KRFactor {
                exponent: -f.exponent,
                ..*f
            })
            .collect();
        QFactGraph::from_vertices(self.ambient, vertices, self.refactorized)
            .expect("colors already validated")
    }

    /// The color dual `i -> n + 1 - i`, with exponents shifted by `-(n + 1)`.
    pub fn color_dual_graph(&self) -> QFactGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|f| f.dual(&self.ambient).expect("colors already validated"))
            .collect();
        QFactGraph::from_vertices(self.ambient, vertices, self.refactorized)
            .expect("colors already validated")
    }

    /// The induced subgraph on `subset`. Any subset of a q-factorization is
    /// again a q-factorization, so this is the graph of the sub-product.
    pub fn induced(&self, subset: &[VertexId]) -> QFactGraph {
        let vertices = subset.iter().map(|&v| self.vertices[v]).collect();
        QFactGraph::from_vertices(self.ambient, vertices, false).expect("colors already validated")
    }

    /// Vertex sets of size `k` inducing a connected subgraph, in
    /// lexicographic order.
    pub fn connected_vertex_sets(&self, k: usize) -> Vec<Vec<VertexId>> {
        let n = self.len();
        if k == 0 || k > n {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        // Grow connected sets from each vertex; sizes are desk scale.
        let mut frontier: BTreeSet<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
        for _ in 1..k {
            let mut next = BTreeSet::new();
            for set in &frontier {
                for &v in set {
                    for w in self.neighbors(v) {
                        if !set.contains(&w) {
                            let mut grown = set.clone();
                            grown.push(w);
                            grown.sort_unstable();
                            next.insert(grown);
                        }
                    }
                }
            }
            frontier = next;
        }
        out.extend(frontier);
        out.into_iter().collect()
    }

    pub fn connected_subgraphs(&self, k: usize) -> Vec<QFactGraph> {
        self.connected_vertex_sets(k)
            .iter()
            .map(|s| self.induced(s))
            .collect()
    }

    /// Vertices translated so the smallest exponent is zero; two graphs are
    /// equal up to the choice of base iff these agree (with the ambient).
    pub fn canonical_vertices(&self) -> Vec<KRFactor> {
        let shift = self.vertices.iter().map(|f| f.exponent).min().unwrap_or(0);
        let mut out: Vec<KRFactor> = self.vertices.iter().map(|f| f.shifted(-shift)).collect();
        out.sort();
        out
    }

    pub fn same_up_to_translation(&self, other: &QFactGraph) -> bool {
        self.ambient == other.ambient && self.canonical_vertices() == other.canonical_vertices()
    }

    /// Graphviz rendering. Vertices are labeled `color^weight@exponent` and
    /// listed in (color, exponent, weight) order.
    pub fn to_dot(&self) -> String {
        let mut order: Vec<VertexId> = (0..self.len()).collect();
        order.sort_by_key(|&v| {
            let f = self.vertices[v];
            (f.color, f.exponent, f.weight)
        });
        let mut out = String::from("digraph qfactorization {\n  rankdir=LR;\n");
        for &v in &order {
            let f = self.vertices[v];
            let _ = writeln!(
                out,
                "  v{v} [label=\"{}^{}@{}\"];",
                f.color, f.weight, f.exponent
            );
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                a.tail, a.head, a.epsilon
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(color: u32, exponent: i64, weight: u32) -> KRFactor {
        KRFactor::new(color, exponent, weight).unwrap()
    }

    fn a(n: u32) -> DynkinA {
        DynkinA::new(n).unwrap()
    }

    fn find(g: &QFactGraph, x: KRFactor) -> VertexId {
        g.vertices().iter().position(|v| *v == x).unwrap()
    }

    fn tree_example() -> QFactGraph {
        build_graph(&[f(1, 1, 2), f(2, 5, 1), f(3, 6, 3), f(3, 8, 1)], a(3)).unwrap()
    }

    #[test]
    fn builds_four_vertex_tree() {
        let g = tree_example();
        assert!(!g.was_refactorized());
        let (v31, v2, v1, v33) = (
            find(&g, f(3, 8, 1)),
            find(&g, f(2, 5, 1)),
            find(&g, f(1, 1, 2)),
            find(&g, f(3, 6, 3)),
        );
        assert_eq!(g.arrow_from(v31, v2).map(|a| a.epsilon), Some(3));
        assert_eq!(g.arrow_from(v2, v1).map(|a| a.epsilon), Some(4));
        assert_eq!(g.arrow_from(v33, v1).map(|a| a.epsilon), Some(5));
        assert!(!g.adjacent(v31, v1));
        assert_eq!(g.arrows().len(), 3);
        assert_eq!(g.classify().tag, ShapeTag::Tree);
        assert_eq!(
            g.boundary_vertices(),
            vec![find(&g, f(3, 6, 3)), v31]
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn three_vertex_subgraphs_of_tree() {
        let g = tree_example();
        let subs = g.connected_subgraphs(3);
        assert_eq!(subs.len(), 2);
        let tags: BTreeSet<_> = subs
            .iter()
            .map(|s| format!("{:?}", s.classify().tag))
            .collect();
        assert_eq!(
            tags,
            ["AlternatingLine3", "MonotonicLine3"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        assert_eq!(g.connected_subgraphs(1).len(), 4);
        assert_eq!(g.connected_subgraphs(4).len(), 1);
        assert_eq!(g.connected_subgraphs(5).len(), 0);
    }

    #[test]
    fn alternating_line_family() {
        for r in 2..=8 {
            let g =
                build_graph(&[f(1, i64::from(r) + 1, r), f(2, 0, 2), f(1, 4, 1)], a(2)).unwrap();
            assert!(!g.was_refactorized());
            let shape = g.classify();
            assert_eq!(shape.tag, ShapeTag::AlternatingLine3, "r = {r}");
            let middle = shape.line.unwrap()[1];
            assert_eq!(g.vertex(middle), f(2, 0, 2));
            let labels: BTreeSet<i64> = g.arrows().iter().map(|a| a.epsilon).collect();
            assert_eq!(labels, [i64::from(r) + 1, 4].into_iter().collect());
            let dual = g.arrow_dual();
            assert_eq!(dual.classify().tag, ShapeTag::AlternatingLine3);
            assert!(dual.arrow_dual().same_up_to_translation(&g));
            assert_eq!(dual.arrow_dual(), g);
        }
    }

    #[test]
    fn weight_one_member_is_refactorized() {
        let g = build_graph(&[f(1, 2, 1), f(2, 0, 2), f(1, 4, 1)], a(2)).unwrap();
        assert!(g.was_refactorized());
        assert_eq!(g.vertices(), &[f(1, 3, 2), f(2, 0, 2)]);
        assert_eq!(
            g.arrows(),
            &[Arrow {
                tail: 0,
                head: 1,
                epsilon: 3
            }]
        );
    }

    #[test]
    fn four_cycle_is_other() {
        let g = build_graph(&[f(1, 7, 2), f(1, 0, 1), f(2, 4, 2), f(2, 3, 1)], a(2)).unwrap();
        assert_eq!(g.arrows().len(), 4);
        let shape = g.classify();
        assert_eq!(shape.tag, ShapeTag::Other);
        assert!(!shape.is_tree && !shape.totally_ordered);
        assert!(g.boundary_vertices().is_empty());
        let dual = g.color_dual_graph();
        assert!(dual.vertices().contains(&f(2, 4, 2)));
    }

    #[test]
    fn singleton_and_disconnected() {
        let g = build_graph(&[f(1, 0, 1)], a(2)).unwrap();
        assert_eq!(g.classify().tag, ShapeTag::Singleton);
        assert_eq!(g.boundary_vertices(), vec![0]);
        assert!(g.arrows().is_empty());
        let g = build_graph(&[f(1, 0, 1), f(1, 20, 1)], a(2)).unwrap();
        assert_eq!(g.classify().tag, ShapeTag::Disconnected);
        assert_eq!(g.classify().components.len(), 2);
    }

    #[test]
    fn triangle_is_totally_ordered() {
        let g = build_graph(&[f(1, 0, 2), f(2, 3, 2), f(3, 6, 2)], a(3)).unwrap();
        let shape = g.classify();
        assert_eq!(g.arrows().len(), 3);
        assert_eq!(shape.tag, ShapeTag::Triangle);
        assert!(shape.totally_ordered);
    }

    #[test]
    fn path_boundary() {
        let g = tree_example();
        let path = g.induced(&g.connected_vertex_sets(3)[0]);
        assert_eq!(path.boundary_vertices().len(), 2);
        let pairs = path.connected_vertex_sets(2);
        assert_eq!(pairs.len(), 2);
    }

    #[test]
    fn rejects_out_of_range_colors() {
        assert!(build_graph(&[f(3, 0, 1)], a(2)).is_err());
    }

    #[test]
    fn dot_output_is_deterministic() {
        let g = build_graph(&[f(1, 3, 2), f(2, 0, 2)], a(2)).unwrap();
        assert_eq!(
            g.to_dot(),
            "digraph qfactorization {\n  rankdir=LR;\n  v0 [label=\"1^2@3\"];\n  v1 [label=\"2^2@0\"];\n  v0 -> v1 [label=\"3\"];\n}\n"
        );
    }
}
