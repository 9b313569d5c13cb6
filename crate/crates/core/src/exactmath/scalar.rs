use std::fmt::Debug;

use super::rational::Rational;
use crate::error::Result;

/// The field operations the localization formulas need.
///
/// Implemented by [`Rational`] (specialized evaluation at a weight point)
/// and by [`RationalFunction`](super::RationalFunction) (symbolic mode), so
/// every formula is written once and run in either mode.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    /// Division; `Error::Pole` when `rhs` is zero.
    fn try_div(&self, rhs: &Self) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    fn try_inv(&self) -> Result<Self> {
        Self::one().try_div(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negate(&self) -> Self {
        -self
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn pow(&self, e: u32) -> Self {
        Rational::pow(self, e)
    }
}
