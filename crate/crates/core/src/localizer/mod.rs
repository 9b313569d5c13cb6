//! Invariants as signed sums of locus contributions, plus the independent
//! cross-checks used to certify the engine.

mod checks;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{
    complex_line_check, complex_line_check_at, degree1_closed_form, degree1_closed_form_at, residue_identity,
    RootSumRange,
};

use crate::error::{Error, Result};
use crate::euler::{marked_factor, marked_sign, structural_factor, EdgeKRange, EulerConfig, ParityMode};
use crate::exactmath::{sample_weight_point, Rational, Scalar, WeightPoint};
use crate::graphgen::{load_or_build_census, sign_vectors, CensusKey, HalfGraph, Involution, SignMode};
use crate::weights::{PointWeights, SymbolicWeights, WeightField, WeightSystem};

/// Normalization between the signed sum over all half-graphs and the
/// invariant. Pinned by `N_1^τ(3) = 1` on `P^3`.
pub fn kappa() -> Rational {
    Rational::new(1, 2).expect("nonzero denominator")
}

pub const DEFAULT_SAMPLES: usize = 3;
const MAX_RESEEDS: usize = 64;
const MAX_SYMBOLIC_RANK: usize = 2;
const MAX_SYMBOLIC_DEGREE: u32 = 3;
const MAX_MARKED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EvalMode {
    /// Evaluate at `samples` generic points drawn from `seed`, `seed + 1`, ...
    Specialized { samples: usize, seed: u64 },
    Symbolic,
}

impl Default for EvalMode {
    fn default() -> Self {
        EvalMode::Specialized {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumPath {
    /// `κ (Σ_τ-class − Σ_η-class)` over every sign assignment.
    #[default]
    General,
    /// `±2^(l-1)` times the plus-only sum; odd `d` and odd `t` only.
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantQuery {
    #[serde(rename = "M")]
    pub rank: usize,
    pub d: u32,
    pub phi: Involution,
    pub t: Vec<u32>,
    pub mode: EvalMode,
    pub path: SumPath,
}

impl InvariantQuery {
    pub fn new(rank: usize, d: u32, phi: Involution, t: &[u32]) -> Self {
        InvariantQuery {
            rank,
            d,
            phi,
            t: t.to_vec(),
            mode: EvalMode::default(),
            path: SumPath::default(),
        }
    }

    pub fn with_mode(mut self, mode: EvalMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_path(mut self, path: SumPath) -> Self {
        self.path = path;
        self
    }
}

/// Knobs that do not change the mathematical question.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Use the class-dependent half-edge sign, valid for any rank.
    pub general_parity: bool,
    pub edge_k_range: EdgeKRange,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub query: InvariantQuery,
    pub value: Rational,
    /// Summed τ-class graphs, counting each sign assignment on the general path.
    pub graph_count_tau: u64,
    pub graph_count_eta: u64,
    pub samples_agreed: usize,
    pub dimension_ok: bool,
    /// Points the specialized sum was evaluated at; empty in symbolic mode.
    pub points: Vec<WeightPoint>,
}

/// `Σ t_k = M(d+1) - 2 + l`.
pub fn dimension_check(rank: usize, d: u32, t: &[u32]) -> bool {
    let sum: i64 = t.iter().map(|&x| i64::from(x)).sum();
    sum == rank as i64 * (i64::from(d) + 1) - 2 + t.len() as i64
}

/// Every `t` of length `l` passing [`dimension_check`], optionally only
/// odd entries, in lexicographic order.
pub fn admissible_t_vectors(rank: usize, d: u32, l: usize, odd_only: bool) -> Vec<Vec<u32>> {
    fn rec(sum: i64, slots: usize, odd_only: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let step = if odd_only { 2 } else { 1 };
        let mut x = 1i64;
        while x <= sum - (slots as i64 - 1) {
            cur.push(x as u32);
            rec(sum - x, slots - 1, odd_only, cur, out);
            cur.pop();
            x += step;
        }
    }
    let target = rank as i64 * (i64::from(d) + 1) - 2 + l as i64;
    let mut out = Vec::new();
    if l > 0 {
        rec(target, l, odd_only, &mut Vec::new(), &mut out);
    } else if target == 0 {
        out.push(Vec::new());
    }
    out
}

struct ClassTerm {
    c: Involution,
    coeff: Rational,
    shapes: Vec<HalfGraph>,
    signs: Vec<Vec<i8>>,
}

struct SumPlan {
    terms: Vec<ClassTerm>,
    t: Vec<u32>,
    general_parity: bool,
    edge_k_range: EdgeKRange,
}

impl SumPlan {
    fn build(q: &InvariantQuery, opts: &EngineOptions) -> Result<Self> {
        let l = q.t.len();
        let census = |c: Involution| {
            let key = CensusKey {
                rank: q.rank,
                d: q.d,
                l,
                phi: q.phi,
                c,
                sign_mode: SignMode::PlusOnly,
            };
            load_or_build_census(opts.cache_dir.as_deref(), &key).map(|(g, _)| g)
        };
        let terms = match q.path {
            SumPath::General => {
                let all: Vec<Vec<i8>> = sign_vectors(l).collect();
                vec![
                    ClassTerm {
                        c: Involution::Tau,
                        coeff: kappa(),
                        shapes: census(Involution::Tau)?,
                        signs: all.clone(),
                    },
                    ClassTerm {
                        c: Involution::Eta,
                        coeff: -kappa(),
                        shapes: census(Involution::Eta)?,
                        signs: all,
                    },
                ]
            }
            SumPath::Reduced => {
                let two_pow = Rational::from(2).powi(l as i64 - 1)?;
                let coeff = match q.phi {
                    Involution::Tau => two_pow,
                    Involution::Eta => -two_pow,
                };
                // for odd d the class must equal φ
                vec![ClassTerm {
                    c: q.phi,
                    coeff,
                    shapes: census(q.phi)?,
                    signs: vec![vec![1; l]],
                }]
            }
        };
        Ok(SumPlan {
            terms,
            t: q.t.clone(),
            general_parity: opts.general_parity,
            edge_k_range: opts.edge_k_range,
        })
    }

    fn count(&self, c: Involution) -> u64 {
        self.terms
            .iter()
            .filter(|term| term.c == c)
            .map(|term| (term.shapes.len() * term.signs.len()) as u64)
            .sum()
    }

    fn evaluate<W: WeightField>(&self, w: &W) -> Result<W::Value>
    where
        W::Value: Send,
    {
        let mut total = w.constant(&Rational::zero());
        for term in &self.terms {
            let cfg = EulerConfig {
                parity_mode: if self.general_parity {
                    ParityMode::General(term.c)
                } else {
                    ParityMode::Canonical
                },
                edge_k_range: self.edge_k_range,
            };
            let sum = term
                .shapes
                .par_iter()
                .map(|g| shape_sum(g, &term.signs, &self.t, w, &cfg))
                .try_reduce(|| w.constant(&Rational::zero()), |a, b| Ok(a.add_ref(&b)))?;
            total = total.add_ref(&sum.scale(&term.coeff));
        }
        Ok(total)
    }
}

/// Sum of the locus contributions of `g` over the given sign assignments.
/// Only the marked-point factor depends on the signs, and only through
/// `∏ s_k^(t_k+1)`.
fn shape_sum<W: WeightField>(g: &HalfGraph, signs: &[Vec<i8>], t: &[u32], w: &W, cfg: &EulerConfig) -> Result<W::Value> {
    let base = marked_factor(&g.with_signs(&vec![1; t.len()]), t, w)?;
    let multiplicity: i64 = signs.iter().map(|s| marked_sign(s, t)).sum();
    let structural = structural_factor(g, w, cfg)?;
    Ok(base.mul_ref(&structural).scale(&Rational::from(multiplicity)))
}

fn validate(q: &InvariantQuery, opts: &EngineOptions) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidQuery(msg));
    if q.rank == 0 {
        return bad("torus rank M must be positive".into());
    }
    if q.d == 0 {
        return bad("degree d must be positive".into());
    }
    if q.t.contains(&0) {
        return bad("insertion exponents t_k must be positive".into());
    }
    if q.t.len() > MAX_MARKED {
        return bad(format!("at most {MAX_MARKED} insertions"));
    }
    if !opts.general_parity && !q.rank.is_multiple_of(2) {
        return Err(Error::CanonicalNeedsEvenRank(q.rank));
    }
    if q.path == SumPath::Reduced && (q.d.is_multiple_of(2) || q.t.iter().any(|x| x % 2 == 0)) {
        return bad("the reduced path needs odd d and odd t_k".into());
    }
    match q.mode {
        EvalMode::Symbolic if q.rank > MAX_SYMBOLIC_RANK || q.d > MAX_SYMBOLIC_DEGREE => bad(format!(
            "symbolic mode is limited to M <= {MAX_SYMBOLIC_RANK} and d <= {MAX_SYMBOLIC_DEGREE}"
        )),
        EvalMode::Specialized { samples, .. } if samples < DEFAULT_SAMPLES => {
            bad(format!("at least {DEFAULT_SAMPLES} samples are required"))
        }
        _ => Ok(()),
    }
}

/// Evaluate `f` at `samples` distinct generic points, reseeding past poles,
/// and insist that every value agrees.
pub(crate) fn sample_constant(
    rank: usize,
    samples: usize,
    seed: u64,
    mut f: impl FnMut(&WeightPoint) -> Result<Rational>,
) -> Result<(Rational, Vec<WeightPoint>)> {
    let mut points: Vec<WeightPoint> = Vec::with_capacity(samples);
    let mut values: Vec<Rational> = Vec::with_capacity(samples);
    let mut offset = 0u64;
    let mut failures = 0usize;
    while values.len() < samples {
        let p = sample_weight_point(rank, seed.wrapping_add(offset));
        offset += 1;
        if points.contains(&p) {
            continue;
        }
        match f(&p) {
            Ok(v) => {
                points.push(p);
                values.push(v);
            }
            Err(Error::Pole) => {
                failures += 1;
                if failures > MAX_RESEEDS {
                    return Err(Error::SampleDisagreement(format!(
                        "gave up after {MAX_RESEEDS} points hit a pole"
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(bad) = values.iter().position(|v| *v != values[0]) {
        return Err(Error::SampleDisagreement(format!(
            "{} at {:?} but {} at {:?}",
            values[0],
            points[0].values(),
            values[bad],
            points[bad].values()
        )));
    }
    Ok((values.swap_remove(0), points))
}

pub fn invariant(q: &InvariantQuery) -> Result<InvariantResult> {
    invariant_with(q, &EngineOptions::default())
}

pub fn invariant_with(q: &InvariantQuery, opts: &EngineOptions) -> Result<InvariantResult> {
    validate(q, opts)?;
    let mut result = InvariantResult {
        query: q.clone(),
        value: Rational::zero(),
        graph_count_tau: 0,
        graph_count_eta: 0,
        samples_agreed: 0,
        dimension_ok: false,
        points: Vec::new(),
    };
    if !dimension_check(q.rank, q.d, &q.t) {
        return Ok(result);
    }
    result.dimension_ok = true;
    let plan = SumPlan::build(q, opts)?;
    result.graph_count_tau = plan.count(Involution::Tau);
    result.graph_count_eta = plan.count(Involution::Eta);
    let ws = WeightSystem::new(q.rank);
    match q.mode {
        EvalMode::Symbolic => {
            let total = plan.evaluate(&SymbolicWeights::new(ws))?;
            result.value = total
                .constant_value()
                .ok_or_else(|| Error::NotConstant(total.to_string()))?;
        }
        EvalMode::Specialized { samples, seed } => {
            let (value, points) = sample_constant(q.rank, samples, seed, |p| {
                plan.evaluate(&PointWeights::new(ws.clone(), p)?)
            })?;
            result.value = value;
            result.samples_agreed = points.len();
            result.points = points;
        }
    }
    Ok(result)
}
