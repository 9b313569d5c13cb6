use serde::{Deserialize, Serialize};

use super::{dimension_check, sample_constant};
use crate::error::{Error, Result};
use crate::euler::{edge_contribution, EdgeKRange};
use crate::exactmath::{Rational, Scalar, WeightPoint};
use crate::modulipoint::vertex_integral;
use crate::weights::{flag_weight_in, Flag, PointWeights, WeightField, WeightSystem};

/// Root labels summed over in the degree-1 closed form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSumRange {
    /// The `M` free generators, prefactor `-2^l`.
    #[default]
    FreeGenerators,
    /// All `2M` labels, prefactor `-2^(l-1)`.
    AllLabels,
}

/// `-2^l Σ_i λi^(Σt) / (2λi ∏_(j≠i) (λj² - λi²)) · (2λi)^(-(l-1))` at `point`.
pub fn degree1_closed_form_at(rank: usize, t: &[u32], range: RootSumRange, point: &WeightPoint) -> Result<Rational> {
    if t.iter().any(|x| x % 2 == 0) || !dimension_check(rank, 1, t) {
        return Err(Error::InvalidQuery(
            "the degree-1 closed form needs odd t with Σt = 2M - 2 + l".into(),
        ));
    }
    let ws = WeightSystem::new(rank);
    let w = PointWeights::new(ws.clone(), point)?;
    let l = t.len() as i64;
    let total: u32 = t.iter().sum();
    let labels: Vec<usize> = match range {
        RootSumRange::FreeGenerators => (0..rank).map(|g| 2 * g + 1).collect(),
        RootSumRange::AllLabels => ws.indices().collect(),
    };
    let mut sum = Rational::zero();
    for &i in &labels {
        let li = w.lambda(i);
        let two_li = &Rational::from(2) * &li;
        let mut den = two_li.clone();
        for j in labels.iter().filter(|&&j| j != i && j % 2 == i % 2) {
            let lj = w.lambda(*j);
            den = &den * &(&(&lj * &lj) - &(&li * &li));
        }
        let term = li.pow(total).try_div(&den)?;
        sum = &sum + &(&term * &two_li.powi(-(l - 1))?);
    }
    let two_pow = match range {
        RootSumRange::FreeGenerators => Rational::from(2).powi(l)?,
        RootSumRange::AllLabels => Rational::from(2).powi(l - 1)?,
    };
    Ok(-(&two_pow * &sum))
}

/// [`degree1_closed_form_at`] at `samples` points, which must agree.
pub fn degree1_closed_form(rank: usize, t: &[u32], range: RootSumRange, samples: usize, seed: u64) -> Result<Rational> {
    sample_constant(rank, samples, seed, |p| degree1_closed_form_at(rank, t, range, p)).map(|(v, _)| v)
}

/// `Σ_i s_i^(M-1) / ∏_(j≠i) (s_i - s_j)` over the squared generators
/// `s_i`; identically 1 by the residue theorem.
pub fn residue_identity(rank: usize, point: &WeightPoint) -> Result<Rational> {
    if point.rank() != rank {
        return Err(Error::InvalidWeightPoint(format!(
            "point has {} values for torus rank {rank}",
            point.rank()
        )));
    }
    let squares: Vec<Rational> = point.values().iter().map(|v| v * v).collect();
    let mut sum = Rational::zero();
    for (i, si) in squares.iter().enumerate() {
        let mut den = Rational::one();
        for (j, sj) in squares.iter().enumerate() {
            if j != i {
                den = &den * &(si - sj);
            }
        }
        sum = &sum + &si.pow(rank as u32 - 1).try_div(&den)?;
    }
    Ok(sum)
}

/// Lines through two generic points of `P^(2M-1)` by full-graph torus
/// localization on `M̄_2(P^(2M-1), 1)` with two insertions `H^(2M-1)`.
pub fn complex_line_check_at(rank: usize, point: &WeightPoint, range: EdgeKRange) -> Result<Rational> {
    let ws = WeightSystem::new(rank);
    let w = PointWeights::new(ws.clone(), point)?;
    let h = (2 * rank - 1) as u32;
    let mut total = Rational::zero();
    for a in ws.indices() {
        for b in ws.indices().filter(|&b| b != a) {
            let edge = edge_contribution(&w, a, b, 1, range);
            let wa = flag_weight_in(&w, &Flag { vertex_label: a, other_label: b, degree: 1 });
            let wb = flag_weight_in(&w, &Flag { vertex_label: b, other_label: a, degree: 1 });
            let (la, lb) = (w.lambda(a), w.lambda(b));
            // both points at a: trivalent vertex there, bare leaf at b
            let both = &(&la.pow(2 * h) * &vertex_integral(&[wa], 3)?) * &wb;
            total = &total + &both.try_div(&edge)?;
            // first point at a, second at b
            total = &total + &(&la.pow(h) * &lb.pow(h)).try_div(&edge)?;
        }
    }
    Ok(total)
}

/// [`complex_line_check_at`] at `samples` points, which must agree.
pub fn complex_line_check(rank: usize, range: EdgeKRange, samples: usize, seed: u64) -> Result<Rational> {
    sample_constant(rank, samples, seed, |p| complex_line_check_at(rank, p, range)).map(|(v, _)| v)
}
