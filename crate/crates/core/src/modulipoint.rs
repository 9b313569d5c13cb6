//! Genus-zero ψ-class integrals on `M̄(0,n)` and the vertex integral
//! `∫ ∏_F 1/(w_F - ψ_F)` for contracted components of valence ≥ 3.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{Rational, Scalar};

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∫_{M̄(0,n)} ψ1^a1 ... ψn^an`: the multinomial `(n-3)! / ∏ ai!` when the
/// exponents sum to `n - 3`, zero otherwise.
pub fn psi_integral(exponents: &[u32]) -> Result<Rational> {
    let n = exponents.len();
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let total: u32 = exponents.iter().sum();
    if total as usize != n - 3 {
        return Ok(Rational::zero());
    }
    let den = exponents.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
    Rational::new(factorial(total), den)
}

/// Integrate `∏_F 1/(w_F - ψ_F)` over `M̄(0, n_total)`.
///
/// `weights` holds one entry per edge flag at the vertex; the remaining
/// `n_total - weights.len()` points are marked points, which carry no
/// `(w - ψ)` factor.
pub fn vertex_integral<S: Scalar>(weights: &[S], n_total: usize) -> Result<S> {
    if n_total < 3 {
        return Err(Error::TooFewPoints(n_total));
    }
    if weights.len() > n_total {
        return Err(Error::InvalidQuery(format!(
            "{} flags at a vertex of valence {n_total}",
            weights.len()
        )));
    }
    if weights.iter().any(Scalar::is_zero) {
        return Err(Error::Pole);
    }
    let dim = (n_total - 3) as u32;
    let inverses: Vec<S> = weights.iter().map(S::try_inv).collect::<Result<_>>()?;

    // 1/(w - ψ) = Σ_k ψ^k / w^(k+1); keep the total ψ-degree equal to dim.
    let mut acc = S::zero();
    let mut exps = vec![0u32; n_total];
    for_each_composition(dim, weights.len(), &mut |parts| {
        exps[..parts.len()].copy_from_slice(parts);
        let coeff = psi_integral(&exps).expect("n_total >= 3");
        let mut term = S::from_rational(&coeff);
        for (inv, &k) in inverses.iter().zip(parts) {
            term = term.mul_ref(&inv.pow(k + 1));
        }
        acc = acc.add_ref(&term);
    });
    Ok(acc)
}

/// `(Σ_F 1/w_F)^(n-3) / ∏_F w_F`, the summed form of [`vertex_integral`].
pub fn vertex_integral_closed_form<S: Scalar>(weights: &[S], n_total: usize) -> Result<S> {
    if n_total < 3 {
        return Err(Error::TooFewPoints(n_total));
    }
    let mut sum = S::zero();
    let mut prod = S::one();
    for w in weights {
        sum = sum.add_ref(&w.try_inv()?);
        prod = prod.mul_ref(w);
    }
    sum.pow((n_total - 3) as u32).try_div(&prod)
}

/// Calls `f` with every vector of `parts` nonnegative integers summing to
/// `total`. With zero parts only the empty vector for `total == 0`.
fn for_each_composition(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(remaining: u32, slot: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            buf[slot] = remaining;
            f(buf);
            return;
        }
        for k in 0..=remaining {
            buf[slot] = k;
            rec(remaining - k, slot + 1, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0; parts];
    rec(total, 0, &mut buf, f);
}
