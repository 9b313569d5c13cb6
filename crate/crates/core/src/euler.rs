//! Equivariant Euler class of the moving part of the deformation complex
//! of a fixed locus, and the resulting per-graph integrand.
//!
//! Everything is generic over [`WeightField`], so the same code runs on
//! rational functions and on rationals at a sampled weight point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rational, Scalar};
use crate::graphgen::{Edge, HalfGraph, Involution, ROOT};
use crate::modulipoint::vertex_integral;
use crate::weights::{conj, flag_weight_in, vertex_euler_in, Flag, WeightField};

/// Sign convention for the half-edge factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityMode {
    /// Targets `P^(4m-1)`: torus rank must be even.
    #[default]
    Canonical,
    /// Any rank; the sign depends on the class `c` of the locus.
    General(Involution),
}

/// Which `k` the edge factor's inner product skips.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKRange {
    /// `k ∉ {j1, j2}`.
    #[default]
    Literal,
    /// `k ∉ {j1, j2, j̄1, j̄2}`. Wrong; kept so the cross-checks can be
    /// shown to catch it.
    ExcludeConjugates,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EulerConfig {
    pub parity_mode: ParityMode,
    pub edge_k_range: EdgeKRange,
}

/// One summand of the localization sum.
#[derive(Clone, Debug)]
pub struct LocusContribution<'a, V> {
    pub graph: &'a HalfGraph,
    pub value: V,
}

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn sign_pow(exp: u64) -> Rational {
    if exp.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn flag_at(g: &HalfGraph, v: usize, e: &Edge) -> Flag {
    let other = if e.a == v { e.b } else { e.a };
    Flag {
        vertex_label: g.label(v),
        other_label: g.label(other),
        degree: e.deg,
    }
}

/// Edge flags at `v`, the half-edge first when `v` is the root.
pub fn edge_flags(g: &HalfGraph, v: usize) -> Vec<Flag> {
    let mut flags = Vec::new();
    if v == ROOT {
        flags.push(Flag::half_edge(g.root_label(), g.d0));
    }
    flags.extend(
        g.edges
            .iter()
            .filter(|e| e.a == v || e.b == v)
            .map(|e| flag_at(g, v, e)),
    );
    flags
}

/// Product of `w_(v,e)` over non-root vertices of valence 1.
pub fn aut_moving<W: WeightField>(g: &HalfGraph, w: &W) -> W::Value {
    let mut acc = w.constant(&Rational::one());
    for v in (0..g.vertices.len()).filter(|&v| v != ROOT && g.valence(v) == 1) {
        let e = g.parent_edge(v).expect("non-root vertex has a parent");
        acc = acc.mul_ref(&flag_weight_in(w, &flag_at(g, v, e)));
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeSmoothing<V> {
    /// `∏ (w_F1 + w_F2)` over vertices of valence 2 with two edge flags.
    pub scalar: V,
    /// Edge-flag weights at each vertex of valence at least 3.
    pub flag_weights: BTreeMap<usize, Vec<V>>,
}

pub fn node_smoothing<W: WeightField>(g: &HalfGraph, w: &W) -> NodeSmoothing<W::Value> {
    let mut scalar = w.constant(&Rational::one());
    let mut flag_weights = BTreeMap::new();
    for v in 0..g.vertices.len() {
        let val = g.valence(v);
        if val < 2 {
            continue;
        }
        let flags = edge_flags(g, v);
        let weights: Vec<W::Value> = flags.iter().map(|f| flag_weight_in(w, f)).collect();
        if val == 2 {
            if weights.len() == 2 {
                scalar = scalar.mul_ref(&weights[0].add_ref(&weights[1]));
            }
        } else {
            flag_weights.insert(v, weights);
        }
    }
    NodeSmoothing { scalar, flag_weights }
}

/// Contribution of a degree-`d` cover of the line through `P_j1`, `P_j2`.
pub fn edge_contribution<W: WeightField>(w: &W, j1: usize, j2: usize, d: u32, range: EdgeKRange) -> W::Value {
    let (l1, l2) = (w.lambda(j1), w.lambda(j2));
    let d_big = BigInt::from(d);
    let f = factorial(d);
    let coeff = &sign_pow(u64::from(d))
        * &Rational::new(&f * &f, num_traits::pow(d_big, 2 * d as usize)).expect("d >= 1");
    let mut acc = l1.sub_ref(&l2).pow(2 * d).scale(&coeff);
    let skip = |k: usize| match range {
        EdgeKRange::Literal => k == j1 || k == j2,
        EdgeKRange::ExcludeConjugates => k == j1 || k == j2 || k == conj(j1) || k == conj(j2),
    };
    let inv_d = Rational::new(1, d).expect("d >= 1");
    for r in 0..=d {
        let point = l1
            .scale(&Rational::from(i64::from(r)))
            .add_ref(&l2.scale(&Rational::from(i64::from(d - r))))
            .scale(&inv_d);
        for k in w.system().indices().filter(|&k| !skip(k)) {
            acc = acc.mul_ref(&point.sub_ref(&w.lambda(k)));
        }
    }
    acc
}

/// Contribution of the degree-`d0` half-edge at a root labelled `i`.
pub fn half_edge_contribution<W: WeightField>(w: &W, d0: u32, i: usize, mode: ParityMode) -> Result<W::Value> {
    let rank = w.system().rank();
    w.system().check_index(i)?;
    if d0 == 0 {
        return Err(Error::InvalidQuery("half-edge degree must be positive".into()));
    }
    let exp = match mode {
        ParityMode::Canonical => {
            if !rank.is_multiple_of(2) {
                return Err(Error::CanonicalNeedsEvenRank(rank));
            }
            u64::from(d0)
        }
        ParityMode::General(c) => {
            (rank as u64 - 1) * u64::from(d0) + rank as u64 * u64::from(c.parity()) * conj(i) as u64
        }
    };
    let li = w.lambda(i);
    let inv_d0 = Rational::new(1, d0).expect("d0 >= 1");
    let coeff = &sign_pow(exp) * &Rational::from(factorial(d0));
    let mut acc = li.scale(&(&Rational::from(2) * &inv_d0)).pow(d0).scale(&coeff);
    for j in w.system().indices().filter(|&j| j != i && j % 2 == i % 2) {
        let lj = w.lambda(j);
        for r in 0..=d0 {
            let c = &Rational::from(i64::from(d0) - 2 * i64::from(r)) * &inv_d0;
            acc = acc.mul_ref(&li.scale(&c).sub_ref(&lj));
        }
    }
    Ok(acc)
}

/// `∏_v e(T_(P_jv)) · half-edge · ∏_e edge / ∏_F e(T_(P_jF))`.
pub fn map_deformation<W: WeightField>(g: &HalfGraph, w: &W, cfg: &EulerConfig) -> Result<W::Value> {
    let mut num = half_edge_contribution(w, g.d0, g.root_label(), cfg.parity_mode)?;
    for e in &g.edges {
        num = num.mul_ref(&edge_contribution(w, g.label(e.a), g.label(e.b), e.deg, cfg.edge_k_range));
    }
    // each vertex factor cancels one of its flag factors
    let mut euler: Vec<Option<W::Value>> = vec![None; w.system().num_points() + 1];
    let mut den = w.constant(&Rational::one());
    for v in 0..g.vertices.len() {
        let extra = g.edge_valence(v) - 1;
        if extra == 0 {
            continue;
        }
        let j = g.label(v);
        let e = euler[j].get_or_insert_with(|| vertex_euler_in(w, j));
        den = den.mul_ref(&e.pow(extra as u32));
    }
    num.try_div(&den)
}

/// `∏_k s_k^(t_k+1) λ_(j_v(k))^(t_k)`.
pub fn marked_factor<W: WeightField>(g: &HalfGraph, t: &[u32], w: &W) -> Result<W::Value> {
    if t.len() != g.num_marked() {
        return Err(Error::InsertionCountMismatch {
            expected: g.num_marked(),
            got: t.len(),
        });
    }
    let mut acc = w.constant(&Rational::one());
    let mut sign = 0u64;
    for m in &g.marked {
        let tk = t[m.k - 1];
        if m.sign < 0 {
            sign += u64::from(tk) + 1;
        }
        acc = acc.mul_ref(&w.lambda(g.label(m.vertex)).pow(tk));
    }
    Ok(acc.scale(&sign_pow(sign)))
}

/// `∏_k s_k^(t_k+1)` for a sign vector indexed by `k - 1`.
pub fn marked_sign(signs: &[i8], t: &[u32]) -> i64 {
    let odd = signs
        .iter()
        .zip(t)
        .filter(|(s, tk)| **s < 0 && **tk % 2 == 0)
        .count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Everything in the locus contribution except the marked-point factor;
/// it does not depend on the signs `s_k`.
pub fn structural_factor<W: WeightField>(g: &HalfGraph, w: &W, cfg: &EulerConfig) -> Result<W::Value> {
    let smoothing = node_smoothing(g, w);
    let mut num = aut_moving(g, w);
    for (v, weights) in &smoothing.flag_weights {
        num = num.mul_ref(&vertex_integral(weights, g.valence(*v))?);
    }
    let den = map_deformation(g, w, cfg)?
        .mul_ref(&smoothing.scalar)
        .scale(&Rational::from(BigInt::from(g.combinatorial_denominator())));
    num.try_div(&den)
}

/// `∫ (evaluation classes) / e(N)` over the fixed locus of `g`.
pub fn locus_contribution<'a, W: WeightField>(
    g: &'a HalfGraph,
    t: &[u32],
    w: &W,
    cfg: &EulerConfig,
) -> Result<LocusContribution<'a, W::Value>> {
    let marked = marked_factor(g, t, w)?;
    let value = marked.mul_ref(&structural_factor(g, w, cfg)?);
    Ok(LocusContribution { graph: g, value })
}
