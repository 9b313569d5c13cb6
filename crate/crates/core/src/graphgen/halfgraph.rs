use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::conj;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub label: usize,
}

/// A tree edge from parent `a` to child `b` covering a line `deg` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub deg: u32,
}

/// Marked point `k` (1-based) sits at `vertex`; `sign` says whether the
/// `+` or the `-` member of the conjugate pair lies on this half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub k: usize,
    pub vertex: usize,
    pub sign: i8,
}

/// One half of a reflection-symmetric fixed-locus graph: a rooted tree whose
/// root carries the half-edge of degree `d0` towards the conjugate point.
///
/// Vertex `0` is the root and every parent precedes its children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfGraph {
    pub d0: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub marked: Vec<MarkedPoint>,
}

pub const ROOT: usize = 0;

impl HalfGraph {
    pub fn single_vertex(label: usize, d0: u32, marked: Vec<MarkedPoint>) -> Self {
        HalfGraph {
            d0,
            vertices: vec![Vertex { id: 0, label }],
            edges: Vec::new(),
            marked,
        }
    }

    pub fn root_label(&self) -> usize {
        self.vertices[ROOT].label
    }

    pub fn label(&self, v: usize) -> usize {
        self.vertices[v].label
    }

    pub fn num_marked(&self) -> usize {
        self.marked.len()
    }

    /// `d0 + 2 Σ d_e`, the degree of the full symmetric graph.
    pub fn total_degree(&self) -> u32 {
        self.d0 + 2 * self.edges.iter().map(|e| e.deg).sum::<u32>()
    }

    pub fn parent_edge(&self, v: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.b == v)
    }

    pub fn child_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.a == v)
    }

    pub fn marks_at(&self, v: usize) -> impl Iterator<Item = &MarkedPoint> {
        self.marked.iter().filter(move |m| m.vertex == v)
    }

    /// Number of edge flags at `v`, counting the half-edge at the root.
    pub fn edge_valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count() + usize::from(v == ROOT)
    }

    /// Edge flags plus marked points.
    pub fn valence(&self, v: usize) -> usize {
        self.edge_valence(v) + self.marks_at(v).count()
    }

    pub fn signs(&self) -> Vec<i8> {
        let mut s = vec![1; self.marked.len()];
        for m in &self.marked {
            s[m.k - 1] = m.sign;
        }
        s
    }

    /// Same graph with the marked-point signs replaced (indexed by `k - 1`).
    pub fn with_signs(&self, signs: &[i8]) -> Self {
        let mut g = self.clone();
        for m in &mut g.marked {
            m.sign = signs[m.k - 1];
        }
        g
    }

    /// Structural checks against a torus of rank `rank`.
    pub fn validate(&self, rank: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidQuery(format!("invalid half-graph: {msg}")));
        let n = self.vertices.len();
        if n == 0 || self.d0 == 0 {
            return bad("empty graph or zero half-edge degree".into());
        }
        for (idx, v) in self.vertices.iter().enumerate() {
            if v.id != idx || v.label == 0 || v.label > 2 * rank {
                return bad(format!("vertex {v:?}"));
            }
        }
        if self.edges.len() + 1 != n {
            return bad("not a tree".into());
        }
        let mut has_parent = vec![false; n];
        for e in &self.edges {
            if e.a >= n || e.b >= n || e.b == ROOT || e.a >= e.b || e.deg == 0 {
                return bad(format!("edge {e:?}"));
            }
            if has_parent[e.b] {
                return bad(format!("vertex {} has two parents", e.b));
            }
            has_parent[e.b] = true;
            if self.label(e.a) == self.label(e.b) {
                return bad(format!("edge {e:?} joins equal labels"));
            }
        }
        debug_assert_ne!(self.root_label(), conj(self.root_label()));
        let mut ks: Vec<usize> = self.marked.iter().map(|m| m.k).collect();
        ks.sort_unstable();
        if ks != (1..=self.marked.len()).collect::<Vec<_>>() {
            return bad("marked points must be 1..=l, each once".into());
        }
        if self.marked.iter().any(|m| m.vertex >= n || (m.sign != 1 && m.sign != -1)) {
            return bad("marked point with bad vertex or sign".into());
        }
        Ok(())
    }

    fn subtree_key(&self, v: usize) -> String {
        let mut marks: Vec<(usize, i8)> = self.marks_at(v).map(|m| (m.k, m.sign)).collect();
        marks.sort_unstable();
        let marks: Vec<String> = marks
            .iter()
            .map(|(k, s)| format!("{k}{}", if *s > 0 { '+' } else { '-' }))
            .collect();
        let mut children: Vec<String> = self
            .child_edges(v)
            .map(|e| format!("{}:{}", e.deg, self.subtree_key(e.b)))
            .collect();
        children.sort();
        format!("({};{};{})", self.label(v), marks.join(","), children.join(","))
    }

    /// Isomorphism-invariant encoding of the decorated rooted tree.
    pub fn canonical_key(&self) -> String {
        format!("{}|{}", self.d0, self.subtree_key(ROOT))
    }

    fn subtree_aut(&self, v: usize) -> u64 {
        let mut groups: BTreeMap<(u32, String), u64> = BTreeMap::new();
        let mut acc = 1u64;
        for e in self.child_edges(v) {
            acc *= self.subtree_aut(e.b);
            *groups.entry((e.deg, self.subtree_key(e.b))).or_default() += 1;
        }
        for mult in groups.values() {
            acc *= (1..=*mult).product::<u64>();
        }
        acc
    }

    /// Order of the group of root-fixing automorphisms preserving labels,
    /// edge degrees and marked points.
    pub fn automorphism_order(&self) -> u64 {
        self.subtree_aut(ROOT)
    }

    /// `|Aut| · d0 · ∏ d_e`.
    pub fn combinatorial_denominator(&self) -> u64 {
        self.automorphism_order()
            * u64::from(self.d0)
            * self.edges.iter().map(|e| u64::from(e.deg)).product::<u64>()
    }
}
