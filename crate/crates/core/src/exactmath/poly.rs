use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
///
/// Ties in total degree are broken by the exponent of the *last* variable
/// first, so with generators `λ1, λ3, ...` we get `λ1 < λ3 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over the rationals in a fixed, ordered list of variables.
///
/// No stored coefficient is zero; every exponent vector has one entry per
/// variable.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Ring operation with an explicit variable-list check.
pub fn poly_arith(a: &MultiPolynomial, b: &MultiPolynomial, op: PolyOp) -> Result<MultiPolynomial> {
    a.check_vars(b)?;
    Ok(match op {
        PolyOp::Add => a.add_unchecked(b),
        PolyOp::Sub => a.add_unchecked(&b.neg_ref()),
        PolyOp::Mul => a.mul_unchecked(b),
    })
}

impl MultiPolynomial {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// The `idx`-th variable (0-based) as a polynomial.
    pub fn var(vars: Arc<[String]>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    pub fn from_terms(
        vars: Arc<[String]>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::InvalidQuery(format!(
                    "exponent vector {e:?} has wrong length for {} variables",
                    p.vars.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    pub(crate) fn check_vars(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPolynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.vars.clone()); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub(crate) fn leading_coeff_in(&self, var: usize) -> MultiPolynomial {
        self.coeffs_in(var).pop().expect("at least one coefficient")
    }

    pub(crate) fn mul_var_pow(&self, var: usize, k: u32) -> Self {
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[var] += k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lm)?;
            let qc = c * &lc_inv;
            let mut t = Self::zero(self.vars.clone());
            t.terms.insert(qm.clone(), qc.clone());
            rem = rem.add_unchecked(&t.mul_unchecked(divisor).neg_ref());
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "evaluation point has wrong dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitute a polynomial for each variable.
    pub fn substitute(&self, images: &[MultiPolynomial]) -> Result<MultiPolynomial> {
        if images.len() != self.nvars() {
            return Err(Error::InvalidQuery(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let target_vars = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for img in images {
            img.check_vars(&images[0])?;
        }
        let mut acc = Self::zero(target_vars.clone());
        for (m, c) in &self.terms {
            let mut t = Self::constant(target_vars.clone(), c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul_unchecked(&img.pow(e));
                }
            }
            acc = acc.add_unchecked(&t);
        }
        Ok(acc)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        poly_arith(self, other, PolyOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        poly_arith(self, other, PolyOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        poly_arith(self, other, PolyOp::Mul)
    }
}

// Operator forms panic on mismatched variable lists; use `poly_arith` or the
// `try_*` methods when the lists may differ.
impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self.try_add(rhs).expect("polynomial variable lists differ")
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self.try_sub(rhs).expect("polynomial variable lists differ")
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self.try_mul(rhs).expect("polynomial variable lists differ")
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        self.neg_ref()
    }
}

impl Serialize for MultiPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(&m.0, c))?;
        }
        seq.end()
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if n > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
