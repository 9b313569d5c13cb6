//! Slow, obviously-correct reference computations.

use crate::error::Result;
use crate::exactmath::Scalar;
use crate::graphgen::{Edge, HalfGraph, MarkedPoint, Vertex};
use crate::modulipoint::{psi_integral, vertex_integral, vertex_integral_closed_form};

/// Count root-fixing permutations of the vertices that preserve parents,
/// labels, edge degrees and marked points, by backtracking.
pub fn brute_force_automorphism_order(g: &HalfGraph) -> u64 {
    let n = g.vertices.len();
    let mut parent = vec![None; n];
    let mut deg = vec![0u32; n];
    for e in &g.edges {
        parent[e.b] = Some(e.a);
        deg[e.b] = e.deg;
    }
    let marks: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut ks: Vec<usize> = g.marks_at(v).map(|m| m.k).collect();
            ks.sort_unstable();
            ks
        })
        .collect();
    // vertices in an order where parents come first
    let mut order = vec![0usize];
    let mut idx = 0;
    while idx < order.len() {
        let v = order[idx];
        order.extend(g.child_edges(v).map(|e| e.b));
        idx += 1;
    }

    fn search(
        pos: usize,
        order: &[usize],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, &[Option<usize>]) -> bool,
    ) -> u64 {
        if pos == order.len() {
            return 1;
        }
        let v = order[pos];
        let mut count = 0;
        for u in 0..image.len() {
            if used[u] || !ok(v, u, image) {
                continue;
            }
            used[u] = true;
            image[v] = Some(u);
            count += search(pos + 1, order, image, used, ok);
            image[v] = None;
            used[u] = false;
        }
        count
    }

    let ok = |v: usize, u: usize, image: &[Option<usize>]| {
        g.label(v) == g.label(u)
            && deg[v] == deg[u]
            && marks[v] == marks[u]
            && match (parent[v], parent[u]) {
                (None, None) => true,
                (Some(pv), Some(pu)) => image[pv] == Some(pu),
                _ => false,
            }
    };
    let mut image = vec![None; n];
    let mut used = vec![false; n];
    search(0, &order, &mut image, &mut used, &ok)
}

/// Every rooted tree on up to `max_vertices` vertices (as a parent array,
/// so isomorphic copies repeat) with labels from `labels`, adjacent labels
/// distinct, edge degrees from `degrees`, and either no marked point or one
/// marked point at any vertex. Half-edge degree 1.
pub fn small_decorated_trees(max_vertices: usize, labels: &[usize], degrees: &[u32]) -> Vec<HalfGraph> {
    fn parent_arrays(v: usize, parents: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if v == parents.len() {
            f(parents);
            return;
        }
        for p in 0..v {
            parents[v] = p;
            parent_arrays(v + 1, parents, f);
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut parents = vec![0usize; n];
        parent_arrays(1, &mut parents, &mut |p| decorate(p, labels, degrees, &mut out));
    }
    out
}

fn decorate(parents: &[usize], labels: &[usize], degrees: &[u32], out: &mut Vec<HalfGraph>) {
    let n = parents.len();
    let mut lab = vec![0usize; n];
    let mut degs = vec![0u32; n];
    fn rec(
        v: usize,
        parents: &[usize],
        labels: &[usize],
        degrees: &[u32],
        lab: &mut Vec<usize>,
        degs: &mut Vec<u32>,
        out: &mut Vec<HalfGraph>,
    ) {
        let n = parents.len();
        if v == n {
            let base = HalfGraph {
                d0: 1,
                vertices: (0..n).map(|id| Vertex { id, label: lab[id] }).collect(),
                edges: (1..n).map(|b| Edge { a: parents[b], b, deg: degs[b] }).collect(),
                marked: Vec::new(),
            };
            for at in 0..n {
                let mut g = base.clone();
                g.marked.push(MarkedPoint { k: 1, vertex: at, sign: 1 });
                out.push(g);
            }
            out.push(base);
            return;
        }
        for &l in labels {
            if v > 0 && l == lab[parents[v]] {
                continue;
            }
            lab[v] = l;
            if v == 0 {
                rec(v + 1, parents, labels, degrees, lab, degs, out);
            } else {
                for &d in degrees {
                    degs[v] = d;
                    rec(v + 1, parents, labels, degrees, lab, degs, out);
                }
            }
        }
    }
    rec(0, parents, labels, degrees, &mut lab, &mut degs, out);
}

/// `∫ ψ^a ψ_n^0 = Σ_(i: a_i > 0) ∫ ψ^(a - e_i)` on `M̄(0, n)` for every
/// exponent vector `a`, `4 <= n <= max_n`.
pub fn string_equation_holds(max_n: usize) -> Result<bool> {
    for n in 4..=max_n {
        let mut exps = vec![0u32; n - 1];
        if !string_rec(0, (n - 3) as u32, &mut exps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn string_rec(slot: usize, remaining: u32, exps: &mut Vec<u32>) -> Result<bool> {
    if slot + 1 == exps.len() {
        exps[slot] = remaining;
        let mut full = exps.clone();
        full.push(0);
        let lhs = psi_integral(&full)?;
        let mut rhs = crate::exactmath::Rational::zero();
        for i in 0..exps.len() {
            if exps[i] > 0 {
                let mut lower = exps.clone();
                lower[i] -= 1;
                rhs = &rhs + &psi_integral(&lower)?;
            }
        }
        return Ok(lhs == rhs);
    }
    for k in 0..=remaining {
        exps[slot] = k;
        if !string_rec(slot + 1, remaining - k, exps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The term-by-term vertex integral equals the closed form for every
/// valence `3..=max_valence` and every split into edge flags and marked
/// points, at the given flag weights.
pub fn vertex_integrals_agree<S: Scalar>(weights: &[S], max_valence: usize) -> Result<bool> {
    for n in 3..=max_valence {
        for flags in 1..=n.min(weights.len()) {
            let ws = &weights[..flags];
            if vertex_integral(ws, n)? != vertex_integral_closed_form(ws, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
