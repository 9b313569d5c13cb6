//! Multivariate gcd over the rationals by recursive content extraction and
//! primitive pseudo-remainder sequences, one variable at a time.

use super::poly::MultiPolynomial;
use super::rational::Rational;

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// `gcd(0, 0) = 0`; the gcd with a nonzero constant is 1.
pub fn poly_gcd(a: &MultiPolynomial, b: &MultiPolynomial) -> MultiPolynomial {
    a.check_vars(b).expect("gcd of polynomials in different variables");
    gcd_rec(a, b).monic()
}

fn one_like(p: &MultiPolynomial) -> MultiPolynomial {
    MultiPolynomial::constant(p.vars().clone(), Rational::one())
}

fn main_var(a: &MultiPolynomial, b: &MultiPolynomial) -> Option<usize> {
    (0..a.nvars()).rev().find(|&v| a.involves(v) || b.involves(v))
}

fn gcd_rec(a: &MultiPolynomial, b: &MultiPolynomial) -> MultiPolynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return one_like(a);
    }
    let x = main_var(a, b).expect("non-constant input involves a variable");

    let ca = content(a, x);
    let cb = content(b, x);
    let g_content = gcd_rec(&ca, &cb);

    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");

    let g_prim = primitive_prs(pa, pb, x);
    (&g_content * &g_prim).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &MultiPolynomial, x: usize) -> MultiPolynomial {
    let mut g = MultiPolynomial::zero(p.vars().clone());
    for c in p.coeffs_in(x).into_iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return one_like(p);
        }
    }
    g.monic()
}

fn primitive_part(p: &MultiPolynomial, x: usize) -> MultiPolynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, x);
    p.exact_div(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
fn pseudo_rem(a: &MultiPolynomial, b: &MultiPolynomial, x: usize) -> MultiPolynomial {
    let db = b.degree_in(x);
    let lcb = b.leading_coeff_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.involves(x) && r.degree_in(x) >= db {
        let k = r.degree_in(x) - db;
        let lcr = r.leading_coeff_in(x);
        r = &(&lcb * &r) - &(&lcr * &b.mul_var_pow(x, k));
    }
    // A remainder of degree 0 in x can still satisfy deg >= db when db == 0;
    // callers never pass such a b.
    r
}

/// Gcd of two primitive polynomials in `x`.
fn primitive_prs(a: MultiPolynomial, b: MultiPolynomial, x: usize) -> MultiPolynomial {
    let (mut p, mut q) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if q.is_zero() {
            return primitive_part(&p, x);
        }
        if !q.involves(x) {
            // q is a nonzero element of the coefficient ring; both inputs are
            // primitive so the gcd is a unit.
            return one_like(&p);
        }
        let r = pseudo_rem(&p, &q, x);
        p = q;
        q = primitive_part(&r, x);
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn setup() -> (MultiPolynomial, MultiPolynomial, MultiPolynomial) {
        let v: Arc<[String]> = Arc::from(vec!["a".into(), "b".into(), "c".into()]);
        (
            MultiPolynomial::var(v.clone(), 0),
            MultiPolynomial::var(v.clone(), 1),
            MultiPolynomial::var(v, 2),
        )
    }

    #[test]
    fn common_linear_factor() {
        let (x, y, _) = setup();
        let p = &x.pow(2) - &y.pow(2);
        let q = &(&x - &y).pow(2) * &x;
        assert_eq!(poly_gcd(&p, &q), (&x - &y).monic());
    }

    #[test]
    fn coprime_gives_one() {
        let (x, y, z) = setup();
        let p = &(&x + &y) * &z;
        let q = &(&x - &y) * &(&y + &z);
        assert!(poly_gcd(&p, &q).constant_value().unwrap().is_one());
    }

    #[test]
    fn content_in_lower_variables() {
        let (x, y, z) = setup();
        let f = &(&x + &y) * &(&z - &x);
        let p = &f * &(&z + &y).pow(2);
        let q = &f * &(&x.pow(2) + &z);
        assert_eq!(poly_gcd(&p, &q), f.monic());
    }

    #[test]
    fn zero_and_scaling() {
        let (x, y, _) = setup();
        let p = (&x + &y).scale(&Rational::from(6));
        assert_eq!(poly_gcd(&p, &p.scale(&Rational::new(3, 7).unwrap())), (&x + &y).monic());
        let zero = MultiPolynomial::zero(x.vars().clone());
        assert_eq!(poly_gcd(&zero, &p), p.monic());
    }
}
