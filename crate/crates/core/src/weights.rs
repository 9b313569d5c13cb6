//! Torus weights of `P^(2M-1)`: fixed points `P1..P(2M)` paired as
//! `i <-> ī`, with `λī = -λi` and free generators `λ1, λ3, ..., λ(2M-1)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{MultiPolynomial, Rational, RationalFunction, Scalar, WeightPoint};

/// Index algebra of the standard `M`-torus acting on `P^(2M-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    vars: Arc<[String]>,
}

/// Conjugate index: `ī = i+1` for odd `i`, `i-1` for even `i`.
pub fn conj(i: usize) -> usize {
    if i % 2 == 1 {
        i + 1
    } else {
        i - 1
    }
}

impl WeightSystem {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1, "torus rank must be positive");
        let vars: Vec<String> = (0..rank).map(|g| format!("l{}", 2 * g + 1)).collect();
        WeightSystem {
            rank,
            vars: Arc::from(vars),
        }
    }

    /// Torus rank `M`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of fixed points, `2M`.
    pub fn num_points(&self) -> usize {
        2 * self.rank
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        1..=self.num_points()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.num_points()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.num_points(),
            })
        }
    }

    /// `(generator, sign)` with `λi = sign * generator`.
    pub fn generator_of(&self, i: usize) -> (usize, i64) {
        let g = (i - 1) / 2;
        (g, if i % 2 == 1 { 1 } else { -1 })
    }

    pub fn lambda(&self, i: usize) -> Result<MultiPolynomial> {
        self.check_index(i)?;
        let (g, s) = self.generator_of(i);
        Ok(MultiPolynomial::var(self.vars.clone(), g).scale(&Rational::from(s)))
    }

    /// `(λ_vertex - λ_other) / degree` as a rational function.
    pub fn flag_weight(&self, f: &Flag) -> Result<RationalFunction> {
        self.check_flag(f)?;
        Ok(flag_weight_in(&SymbolicWeights::new(self.clone()), f))
    }

    /// `∏_{k ≠ j} (λj - λk)`.
    pub fn vertex_euler(&self, j: usize) -> Result<MultiPolynomial> {
        self.check_index(j)?;
        let lj = self.lambda(j)?;
        let mut acc = MultiPolynomial::constant(self.vars.clone(), Rational::one());
        for k in self.indices().filter(|&k| k != j) {
            acc = &acc * &(&lj - &self.lambda(k)?);
        }
        Ok(acc)
    }

    fn check_flag(&self, f: &Flag) -> Result<()> {
        self.check_index(f.vertex_label)?;
        self.check_index(f.other_label)?;
        if f.vertex_label == f.other_label || f.degree == 0 {
            return Err(Error::InvalidQuery(format!("invalid flag {f:?}")));
        }
        Ok(())
    }
}

/// An incidence of a vertex with an edge (or with the half-edge, whose far
/// label is the conjugate of the root label).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub vertex_label: usize,
    pub other_label: usize,
    pub degree: u32,
}

impl Flag {
    pub fn half_edge(root_label: usize, d0: u32) -> Self {
        Flag {
            vertex_label: root_label,
            other_label: conj(root_label),
            degree: d0,
        }
    }
}

/// A ring in which the weights `λi` take values: rational functions for the
/// symbolic mode, rationals at a fixed point for the specialized mode.
pub trait WeightField: Sync {
    type Value: Scalar;

    fn system(&self) -> &WeightSystem;

    /// `λi`; `i` must be a valid index.
    fn lambda(&self, i: usize) -> Self::Value;

    fn constant(&self, r: &Rational) -> Self::Value {
        Self::Value::from_rational(r)
    }
}

pub struct SymbolicWeights {
    ws: WeightSystem,
    lambdas: Vec<RationalFunction>,
}

impl SymbolicWeights {
    pub fn new(ws: WeightSystem) -> Self {
        let lambdas = ws
            .indices()
            .map(|i| RationalFunction::from_poly(ws.lambda(i).expect("valid index")))
            .collect();
        SymbolicWeights { ws, lambdas }
    }
}

impl WeightField for SymbolicWeights {
    type Value = RationalFunction;

    fn system(&self) -> &WeightSystem {
        &self.ws
    }

    fn lambda(&self, i: usize) -> RationalFunction {
        self.lambdas[i - 1].clone()
    }

    fn constant(&self, r: &Rational) -> RationalFunction {
        RationalFunction::constant(self.ws.vars().clone(), r.clone())
    }
}

pub struct PointWeights {
    ws: WeightSystem,
    lambdas: Vec<Rational>,
}

impl PointWeights {
    pub fn new(ws: WeightSystem, point: &WeightPoint) -> Result<Self> {
        if point.rank() != ws.rank() {
            return Err(Error::InvalidWeightPoint(format!(
                "point has {} values for torus rank {}",
                point.rank(),
                ws.rank()
            )));
        }
        let lambdas = ws
            .indices()
            .map(|i| {
                let (g, s) = ws.generator_of(i);
                &point.values()[g] * &Rational::from(s)
            })
            .collect();
        Ok(PointWeights { ws, lambdas })
    }
}

impl WeightField for PointWeights {
    type Value = Rational;

    fn system(&self) -> &WeightSystem {
        &self.ws
    }

    fn lambda(&self, i: usize) -> Rational {
        self.lambdas[i - 1].clone()
    }
}

pub fn flag_weight_in<W: WeightField>(w: &W, f: &Flag) -> W::Value {
    let diff = w.lambda(f.vertex_label).sub_ref(&w.lambda(f.other_label));
    diff.scale(&Rational::new(1, f.degree).expect("positive degree"))
}

pub fn vertex_euler_in<W: WeightField>(w: &W, j: usize) -> W::Value {
    let lj = w.lambda(j);
    w.system()
        .indices()
        .filter(|&k| k != j)
        .fold(w.constant(&Rational::one()), |acc, k| acc.mul_ref(&lj.sub_ref(&w.lambda(k))))
}
