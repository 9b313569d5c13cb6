//! Isomorph-free generation of decorated rooted trees.
//!
//! Subtrees are generated bottom-up with memoization; a vertex's children
//! are chosen as a multiset from a sorted option list, so every isomorphism
//! class comes out exactly once. Marked points are distinguishable, which
//! means only unmarked options can be chosen more than once.

use std::collections::HashMap;
use std::rc::Rc;

use super::halfgraph::{Edge, HalfGraph, MarkedPoint, Vertex};
use super::{GraphClass, Involution, SignMode};

#[derive(Debug)]
struct Node {
    label: usize,
    /// Bit `k` set means marked point `k + 1` sits here.
    marks: u32,
    children: Vec<(u32, Rc<Node>)>,
    /// Degree carried by the subtree below this vertex.
    weight: u32,
    key: String,
}

impl Node {
    fn new(label: usize, marks: u32, children: Vec<(u32, Rc<Node>)>) -> Self {
        let weight = children.iter().map(|(d, c)| d + c.weight).sum();
        let key = format!(
            "({};{:b};{})",
            label,
            marks,
            children
                .iter()
                .map(|(d, c)| format!("{d}:{}", c.key))
                .collect::<Vec<_>>()
                .join(",")
        );
        Node {
            label,
            marks,
            children,
            weight,
            key,
        }
    }

    fn all_marks(&self) -> u32 {
        self.children.iter().fold(self.marks, |m, (_, c)| m | c.all_marks())
    }
}

type Options = Rc<Vec<(u32, Rc<Node>)>>;

struct Generator {
    num_labels: usize,
    subtrees: HashMap<(usize, u32, u32), Rc<Vec<Rc<Node>>>>,
    child_sets: HashMap<(usize, u32, u32), Rc<Vec<Vec<(u32, Rc<Node>)>>>>,
}

fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    // all s ⊆ mask, including 0 and mask itself
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

impl Generator {
    fn new(num_labels: usize) -> Self {
        Generator {
            num_labels,
            subtrees: HashMap::new(),
            child_sets: HashMap::new(),
        }
    }

    /// All subtrees rooted at a vertex labelled `label` carrying exactly the
    /// degree `budget` below it and exactly the marked points in `mask`.
    fn subtrees(&mut self, label: usize, budget: u32, mask: u32) -> Rc<Vec<Rc<Node>>> {
        if let Some(hit) = self.subtrees.get(&(label, budget, mask)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for here in submasks(mask) {
            let rest = mask & !here;
            for children in self.child_sets(label, budget, rest).iter() {
                out.push(Rc::new(Node::new(label, here, children.clone())));
            }
        }
        let out = Rc::new(out);
        self.subtrees.insert((label, budget, mask), out.clone());
        out
    }

    fn options(&mut self, parent: usize, budget: u32, mask: u32) -> Options {
        let mut opts = Vec::new();
        for sub in submasks(mask) {
            for label in (1..=self.num_labels).filter(|&l| l != parent) {
                for deg in 1..=budget {
                    for below in 0..=(budget - deg) {
                        for c in self.subtrees(label, below, sub).iter() {
                            opts.push((deg, c.clone()));
                        }
                    }
                }
            }
        }
        opts.sort_by(|a, b| (a.0, &a.1.key).cmp(&(b.0, &b.1.key)));
        Rc::new(opts)
    }

    /// Multisets of child subtrees of a `parent`-labelled vertex using
    /// exactly `budget` degree and the marked points in `mask`.
    fn child_sets(&mut self, parent: usize, budget: u32, mask: u32) -> Rc<Vec<Vec<(u32, Rc<Node>)>>> {
        if let Some(hit) = self.child_sets.get(&(parent, budget, mask)) {
            return hit.clone();
        }
        let opts = self.options(parent, budget, mask);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        choose(&opts, 0, budget, mask, &mut chosen, &mut out);
        let out = Rc::new(out);
        self.child_sets.insert((parent, budget, mask), out.clone());
        out
    }
}

fn choose(
    opts: &[(u32, Rc<Node>)],
    start: usize,
    budget: u32,
    mask: u32,
    chosen: &mut Vec<(u32, Rc<Node>)>,
    out: &mut Vec<Vec<(u32, Rc<Node>)>>,
) {
    if budget == 0 {
        if mask == 0 {
            out.push(chosen.clone());
        }
        return;
    }
    for (idx, (deg, node)) in opts.iter().enumerate().skip(start) {
        let cost = deg + node.weight;
        let used = node.all_marks();
        if cost > budget || used & !mask != 0 {
            continue;
        }
        chosen.push((*deg, node.clone()));
        let next = if used == 0 { idx } else { idx + 1 };
        choose(opts, next, budget - cost, mask & !used, chosen, out);
        chosen.pop();
    }
}

fn flatten(root: &Node, d0: u32) -> HalfGraph {
    let mut g = HalfGraph {
        d0,
        vertices: Vec::new(),
        edges: Vec::new(),
        marked: Vec::new(),
    };
    fn visit(node: &Node, g: &mut HalfGraph) -> usize {
        let id = g.vertices.len();
        g.vertices.push(Vertex { id, label: node.label });
        for bit in 0..32 {
            if node.marks & (1 << bit) != 0 {
                g.marked.push(MarkedPoint { k: bit + 1, vertex: id, sign: 1 });
            }
        }
        for (deg, child) in &node.children {
            let cid = visit(child, g);
            g.edges.push(Edge { a: id, b: cid, deg: *deg });
        }
        id
    }
    visit(root, &mut g);
    g.marked.sort_by_key(|m| m.k);
    g
}

/// Half-edge degrees allowed for the class `c` under the involution `phi`.
pub fn admissible_d0(d: u32, phi: Involution, c: Involution) -> Vec<u32> {
    (1..=d)
        .filter(|d0| (d - d0).is_multiple_of(2))
        .filter(|&d0| GraphClass { c }.admits(phi, d0))
        .collect()
}

/// Every half-graph with all marked points signed `+`, one per isomorphism
/// class, in a deterministic order.
pub fn enumerate_shapes(rank: usize, d: u32, l: usize, phi: Involution, c: Involution) -> Vec<HalfGraph> {
    assert!(rank >= 1 && d >= 1, "rank and degree must be positive");
    assert!(l < 32, "at most 31 marked points");
    let mut gen = Generator::new(2 * rank);
    let full = if l == 0 { 0 } else { (1u32 << l) - 1 };
    let mut out = Vec::new();
    for d0 in admissible_d0(d, phi, c) {
        let budget = (d - d0) / 2;
        for root in 1..=2 * rank {
            for node in gen.subtrees(root, budget, full).iter() {
                out.push(flatten(node, d0));
            }
        }
    }
    out
}

/// All sign vectors of length `l`, starting with all `+`.
pub fn sign_vectors(l: usize) -> impl Iterator<Item = Vec<i8>> {
    (0u64..(1u64 << l)).map(move |bits| {
        (0..l)
            .map(|k| if bits & (1 << k) != 0 { -1 } else { 1 })
            .collect()
    })
}

/// Stream the decorated half-graphs of class `c` for `M̄_l(P^(2M-1), d)`
/// under the involution `phi`.
pub fn enumerate_half_graphs(
    rank: usize,
    d: u32,
    l: usize,
    phi: Involution,
    c: Involution,
    sign_mode: SignMode,
) -> impl Iterator<Item = HalfGraph> {
    let shapes = enumerate_shapes(rank, d, l, phi, c);
    shapes.into_iter().flat_map(move |g| {
        let signs: Vec<Vec<i8>> = match sign_mode {
            SignMode::PlusOnly => vec![vec![1; l]],
            SignMode::AllSigns => sign_vectors(l).collect(),
        };
        signs.into_iter().map(move |s| g.with_signs(&s))
    })
}
