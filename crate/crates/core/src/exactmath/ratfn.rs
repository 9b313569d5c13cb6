use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::gcd::poly_gcd;
use super::point::WeightPoint;
use super::poly::MultiPolynomial;
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A quotient of polynomials in canonical form: numerator and denominator
/// are coprime and the denominator's graded-lex leading coefficient is 1.
///
/// Because the form is canonical, structural equality is field equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPolynomial,
    den: MultiPolynomial,
}

/// Build the canonical form of `num / den`.
pub fn ratfn_canonicalize(num: MultiPolynomial, den: MultiPolynomial) -> Result<RationalFunction> {
    num.check_vars(&den)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        let one = MultiPolynomial::constant(den.vars().clone(), Rational::one());
        return Ok(RationalFunction { num, den: one });
    }
    let g = poly_gcd(&num, &den);
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        (
            num.exact_div(&g).expect("gcd divides numerator"),
            den.exact_div(&g).expect("gcd divides denominator"),
        )
    };
    Ok(normalize_lc(num, den))
}

fn normalize_lc(num: MultiPolynomial, den: MultiPolynomial) -> RationalFunction {
    let lc = den.leading_coefficient().expect("nonzero denominator").clone();
    if lc.is_one() {
        RationalFunction { num, den }
    } else {
        let inv = lc.inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

/// Evaluate at a weight point; `Error::Pole` when the denominator vanishes.
pub fn ratfn_eval(f: &RationalFunction, p: &WeightPoint) -> Result<Rational> {
    f.eval(p.values())
}

impl RationalFunction {
    pub fn from_poly(p: MultiPolynomial) -> Self {
        let one = MultiPolynomial::constant(p.vars().clone(), Rational::one());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        Self::from_poly(MultiPolynomial::constant(vars, c))
    }

    pub fn numer(&self) -> &MultiPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &MultiPolynomial {
        &self.den
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.num.vars()
    }

    /// `Some(c)` if this function is the constant `c`.
    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::constant(self.vars().clone(), Rational::zero());
        }
        // Cross-cancel so the product of canonical inputs is already reduced.
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        normalize_lc(&n1 * &n2, &d1 * &d2)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return ratfn_canonicalize(&self.num + &other.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let g = poly_gcd(&self.den, &other.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = other.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&other.num * &a);
        let den = &self.den * &b;
        ratfn_canonicalize(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Pole);
        }
        Ok(normalize_lc(self.den.clone(), self.num.clone()))
    }

    /// Substitute polynomials for the variables in numerator and denominator.
    pub fn substitute(&self, images: &[MultiPolynomial]) -> Result<Self> {
        ratfn_canonicalize(self.num.substitute(images)?, self.den.substitute(images)?)
    }
}

impl Scalar for RationalFunction {
    // The constructors have no variable list to hand, so they build
    // variable-free constants that `promote` lifts on first use.
    fn zero() -> Self {
        RationalFunction::constant(Arc::from(Vec::<String>::new()), Rational::zero())
    }

    fn one() -> Self {
        RationalFunction::constant(Arc::from(Vec::<String>::new()), Rational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        RationalFunction::constant(Arc::from(Vec::<String>::new()), r.clone())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let (a, b) = promote(self, rhs);
        a.add(&b)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let (a, b) = promote(self, rhs);
        a.add(&b.neg())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (a, b) = promote(self, rhs);
        RationalFunction::mul(&a, &b)
    }

    fn negate(&self) -> Self {
        self.neg()
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = promote(self, rhs);
        Ok(RationalFunction::mul(&a, &b.inv()?))
    }
}

/// Constants built through the `Scalar` constructors carry no variables;
/// lift them into the other operand's ring before combining.
fn promote(a: &RationalFunction, b: &RationalFunction) -> (RationalFunction, RationalFunction) {
    let lift = |c: &RationalFunction, vars: &Arc<[String]>| {
        RationalFunction::constant(vars.clone(), c.constant_value().expect("variable-free value is constant"))
    };
    match (a.vars().is_empty(), b.vars().is_empty()) {
        (true, false) => (lift(a, b.vars()), b.clone()),
        (false, true) => (a.clone(), lift(b, a.vars())),
        _ => (a.clone(), b.clone()),
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("RationalFunction", 2)?;
        s.serialize_field("num", &self.num)?;
        s.serialize_field("den", &self.den)?;
        s.end()
    }
}
