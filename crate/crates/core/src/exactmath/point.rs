use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Values for the free generators `λ1, λ3, ..., λ(2M-1)`.
///
/// All values are nonzero with pairwise distinct absolute values, so every
/// `λi ± λj` with `j ∉ {i, ī}` and every `λi` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct WeightPoint {
    values: Vec<Rational>,
}

impl WeightPoint {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeightPoint("no values".into()));
        }
        let mut seen = HashSet::new();
        for v in &values {
            if v.is_zero() {
                return Err(Error::InvalidWeightPoint("zero value".into()));
            }
            if !seen.insert(v.abs()) {
                return Err(Error::InvalidWeightPoint(format!(
                    "repeated absolute value {}",
                    v.abs()
                )));
            }
        }
        Ok(WeightPoint { values })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }
}

impl TryFrom<Vec<Rational>> for WeightPoint {
    type Error = Error;

    fn try_from(values: Vec<Rational>) -> Result<Self> {
        WeightPoint::new(values)
    }
}

impl From<WeightPoint> for Vec<Rational> {
    fn from(p: WeightPoint) -> Self {
        p.values
    }
}

const SAMPLE_LO: i64 = 2;
const SAMPLE_HI: i64 = 2000;

/// Draw a deterministic generic point: signed integers with magnitudes in
/// `[2, 2000]` and distinct absolute values.
pub fn sample_weight_point(rank: usize, seed: u64) -> WeightPoint {
    assert!(rank >= 1, "torus rank must be positive");
    assert!(
        rank <= (SAMPLE_HI - SAMPLE_LO + 1) as usize,
        "torus rank too large for the sampling range"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = HashSet::new();
    let mut values = Vec::with_capacity(rank);
    while values.len() < rank {
        let mag = rng.gen_range(SAMPLE_LO..=SAMPLE_HI);
        if !used.insert(mag) {
            continue;
        }
        let v = if rng.gen_bool(0.5) { mag } else { -mag };
        values.push(Rational::from(v));
    }
    WeightPoint::new(values).expect("sampler enforces the invariants")
}
