#![allow(dead_code)]

use realgw::graphgen::{Edge, HalfGraph, MarkedPoint, Vertex};

/// Ordered tuples of `len` odd positive integers summing to `sum`.
pub fn odd_vectors(sum: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if sum == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut first = 1;
    while first <= sum {
        for mut rest in odd_vectors(sum - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 2;
    }
    out
}

fn parent_arrays(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(v: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if v == p.len() {
            f(p);
            return;
        }
        for q in 0..v {
            p[v] = q;
            rec(v + 1, p, f);
        }
    }
    let mut p = vec![0; n];
    rec(1, &mut p, f);
}

fn labelings(parents: &[usize], labels: &[usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(v: usize, parents: &[usize], labels: &[usize], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if v == parents.len() {
            f(cur);
            return;
        }
        for &l in labels {
            if v > 0 && cur[parents[v]] == l {
                continue;
            }
            cur[v] = l;
            rec(v + 1, parents, labels, cur, f);
        }
    }
    let mut cur = vec![0; parents.len()];
    rec(0, parents, labels, &mut cur, f);
}

fn tuples(len: usize, choices: &[u32], f: &mut dyn FnMut(&[u32])) {
    fn rec(i: usize, choices: &[u32], cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i == cur.len() {
            f(cur);
            return;
        }
        for &c in choices {
            cur[i] = c;
            rec(i + 1, choices, cur, f);
        }
    }
    let mut cur = vec![0; len];
    rec(0, choices, &mut cur, f);
}

fn build(d0: u32, parents: &[usize], labels: &[usize], degs: &[u32], marked: Vec<MarkedPoint>) -> HalfGraph {
    HalfGraph {
        d0,
        vertices: labels.iter().enumerate().map(|(id, &label)| Vertex { id, label }).collect(),
        edges: (1..parents.len())
            .map(|b| Edge { a: parents[b], b, deg: degs[b - 1] })
            .collect(),
        marked,
    }
}

/// Trees on up to `max_vertices` vertices given as parent arrays (so
/// isomorphic copies repeat), labels from `labels` with adjacent labels
/// distinct, edge degrees from `degrees`, and no marked point or one
/// marked point (sign +) anywhere. Half-edge degree 1.
pub fn for_each_small_tree(max_vertices: usize, labels: &[usize], degrees: &[u32], f: &mut dyn FnMut(&HalfGraph)) {
    for n in 1..=max_vertices {
        parent_arrays(n, &mut |parents| {
            labelings(parents, labels, &mut |labs| {
                tuples(n - 1, degrees, &mut |degs| {
                    let base = build(1, parents, labs, degs, vec![]);
                    f(&base);
                    for v in 0..n {
                        let mut g = base.clone();
                        g.marked.push(MarkedPoint { k: 1, vertex: v, sign: 1 });
                        f(&g);
                    }
                })
            })
        });
    }
}

fn adjacency(g: &HalfGraph) -> Vec<u32> {
    let n = g.vertices.len();
    let mut adj = vec![0; n * n];
    for e in &g.edges {
        adj[e.a * n + e.b] = e.deg;
        adj[e.b * n + e.a] = e.deg;
    }
    adj
}

fn mark_map(g: &HalfGraph) -> Vec<Vec<(usize, i8)>> {
    let mut m = vec![Vec::new(); g.vertices.len()];
    for p in &g.marked {
        m[p.vertex].push((p.k, p.sign));
    }
    for v in &mut m {
        v.sort_unstable();
    }
    m
}

/// Visit every bijection `π` from the vertices of `g` to those of `h` with
/// `π(root) = root` and matching labels and marked points; `f` returns
/// false to stop.
fn for_each_matching_permutation(g: &HalfGraph, h: &HalfGraph, f: &mut dyn FnMut(&[usize]) -> bool) {
    let n = g.vertices.len();
    if h.vertices.len() != n {
        return;
    }
    let (mg, mh) = (mark_map(g), mark_map(h));
    fn rec(
        v: usize,
        g: &HalfGraph,
        h: &HalfGraph,
        mg: &[Vec<(usize, i8)>],
        mh: &[Vec<(usize, i8)>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == perm.len() {
            return f(perm);
        }
        let candidates: Vec<usize> = if v == 0 { vec![0] } else { (1..perm.len()).collect() };
        for u in candidates {
            if used[u] || g.vertices[v].label != h.vertices[u].label || mg[v] != mh[u] {
                continue;
            }
            used[u] = true;
            perm[v] = u;
            let go_on = rec(v + 1, g, h, mg, mh, perm, used, f);
            used[u] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut perm = vec![0; n];
    let mut used = vec![false; n];
    rec(0, g, h, &mg, &mh, &mut perm, &mut used, f);
}

// edge counts agree, so edges landing on edges of equal degree is a bijection
fn maps_edges(g: &HalfGraph, h_adj: &[u32], perm: &[usize]) -> bool {
    let n = perm.len();
    g.edges.iter().all(|e| h_adj[perm[e.a] * n + perm[e.b]] == e.deg)
}

/// Automorphism count by checking every label- and mark-preserving
/// permutation that fixes the root.
pub fn permutation_automorphisms(g: &HalfGraph) -> u64 {
    let adj = adjacency(g);
    let mut count = 0;
    for_each_matching_permutation(g, g, &mut |perm| {
        if maps_edges(g, &adj, perm) {
            count += 1;
        }
        true
    });
    count
}

pub fn isomorphic(g: &HalfGraph, h: &HalfGraph) -> bool {
    if g.d0 != h.d0 || g.edges.len() != h.edges.len() || g.marked.len() != h.marked.len() {
        return false;
    }
    let adj = adjacency(h);
    let mut found = false;
    for_each_matching_permutation(g, h, &mut |perm| {
        found = maps_edges(g, &adj, perm);
        !found
    });
    found
}

/// Every half-graph for `P^(2M-1)` in degree `d` with `l` signed marked
/// points, up to isomorphism, by generating all labelled trees and
/// discarding isomorphic copies. Only half-edge degrees in `d0s` are used.
pub fn brute_force_census(rank: usize, d: u32, l: usize, d0s: &[u32]) -> Vec<HalfGraph> {
    let labels: Vec<usize> = (1..=2 * rank).collect();
    let mut reps: Vec<HalfGraph> = Vec::new();
    for &d0 in d0s {
        let budget = (d - d0) / 2;
        let max_vertices = budget as usize + 1;
        let degrees: Vec<u32> = (1..=budget.max(1)).collect();
        for n in 1..=max_vertices {
            parent_arrays(n, &mut |parents| {
                labelings(parents, &labels, &mut |labs| {
                    tuples(n - 1, &degrees, &mut |degs| {
                        if degs.iter().sum::<u32>() != budget {
                            return;
                        }
                        // each marked point: a vertex and a sign
                        let slots: Vec<u32> = (0..(2 * n) as u32).collect();
                        tuples(l, &slots, &mut |places| {
                            let marked = places
                                .iter()
                                .enumerate()
                                .map(|(k, &p)| MarkedPoint {
                                    k: k + 1,
                                    vertex: p as usize / 2,
                                    sign: if p % 2 == 0 { 1 } else { -1 },
                                })
                                .collect();
                            let g = build(d0, parents, labs, degs, marked);
                            if !reps.iter().any(|r| isomorphic(r, &g)) {
                                reps.push(g);
                            }
                        });
                    })
                })
            });
        }
    }
    reps
}
