use std::sync::Arc;

use proptest::prelude::*;

use realgw::euler::{edge_contribution, locus_contribution, EdgeKRange, EulerConfig, ParityMode};
use realgw::exactmath::{
    ratfn_canonicalize, ratfn_eval, sample_weight_point, MultiPolynomial, Rational, RationalFunction, WeightPoint,
};
use realgw::graphgen::{enumerate_half_graphs, HalfGraph, Involution, SignMode};
use realgw::localizer::{admissible_t_vectors, invariant, EvalMode, InvariantQuery, SumPath};
use realgw::modulipoint::{psi_integral, vertex_integral, vertex_integral_closed_form};
use realgw::weights::{PointWeights, SymbolicWeights, WeightSystem};
use realgw::Error;

fn vars() -> Arc<[String]> {
    Arc::from(vec!["l1".to_string(), "l3".to_string()])
}

fn poly() -> impl Strategy<Value = MultiPolynomial> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 1..4).prop_map(|terms| {
        MultiPolynomial::from_terms(vars(), terms.into_iter().map(|((a, b), c)| (vec![a, b], Rational::from(c))))
            .unwrap()
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| ratfn_canonicalize(n, d).unwrap())
}

fn one() -> RationalFunction {
    RationalFunction::constant(vars(), Rational::one())
}

fn point() -> impl Strategy<Value = WeightPoint> {
    (-30i64..=30, -30i64..=30)
        .prop_filter("generic", |(a, b)| *a != 0 && *b != 0 && a.abs() != b.abs())
        .prop_map(|(a, b)| WeightPoint::from_ints(&[a, b]).unwrap())
}

proptest! {
    #[test]
    fn quotient_times_inverse_is_one(a in nonzero_poly(), b in nonzero_poly()) {
        let f = ratfn_canonicalize(a.clone(), b.clone()).unwrap();
        let g = ratfn_canonicalize(b, a).unwrap();
        prop_assert!(f.mul(&g) == one());
    }

    #[test]
    fn adding_then_subtracting_is_identity(f in ratfn(), g in ratfn()) {
        prop_assert!(f.add(&g).add(&g.neg()) == f);
    }

    #[test]
    fn canonical_form_is_idempotent(f in ratfn()) {
        let again = ratfn_canonicalize(f.numer().clone(), f.denom().clone()).unwrap();
        prop_assert!(again == f);
    }

    #[test]
    fn canonical_form_ignores_common_factors(n in poly(), d in nonzero_poly(), k in nonzero_poly()) {
        let f = ratfn_canonicalize(n.clone(), d.clone()).unwrap();
        let g = ratfn_canonicalize(&n * &k, &d * &k).unwrap();
        prop_assert!(f == g);
    }

    #[test]
    fn evaluation_is_multiplicative(f in ratfn(), g in ratfn(), p in point()) {
        if let (Ok(a), Ok(b), Ok(ab)) = (ratfn_eval(&f, &p), ratfn_eval(&g, &p), ratfn_eval(&f.mul(&g), &p)) {
            prop_assert_eq!(ab, &a * &b);
        }
    }

    #[test]
    fn evaluation_is_additive(f in ratfn(), g in ratfn(), p in point()) {
        if let (Ok(a), Ok(b), Ok(s)) = (ratfn_eval(&f, &p), ratfn_eval(&g, &p), ratfn_eval(&f.add(&g), &p)) {
            prop_assert_eq!(s, &a + &b);
        }
    }

    #[test]
    fn rationals_normalize(n in -1000i64..1000, d in 1i64..1000, k in 1i64..50) {
        let r = Rational::new(n, d).unwrap();
        prop_assert_eq!(Rational::new(n * k, d * k).unwrap(), r.clone());
        prop_assert_eq!(Rational::new(-n, -d).unwrap(), r);
        prop_assert!(Rational::new(n, 0).is_err());
    }

    #[test]
    fn psi_integrals_are_symmetric(
        (n, slots) in (3usize..9).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, n - 3))),
        rot in 0usize..8,
    ) {
        let mut a = vec![0u32; n];
        for s in slots {
            a[s] += 1;
        }
        let mut b = a.clone();
        b.rotate_left(rot % n);
        b.swap(0, n - 1);
        prop_assert_eq!(psi_integral(&a).unwrap(), psi_integral(&b).unwrap());
    }

    #[test]
    fn vertex_integral_matches_closed_form(
        ws in prop::collection::vec((-40i64..=40).prop_filter("nonzero", |w| *w != 0), 1..7),
        extra in 0usize..4,
    ) {
        let weights: Vec<Rational> = ws.iter().map(|&w| Rational::from(w)).collect();
        let n = (weights.len() + extra).max(3);
        prop_assert_eq!(
            vertex_integral(&weights, n).unwrap(),
            vertex_integral_closed_form(&weights, n).unwrap()
        );
    }

    #[test]
    fn edge_factor_is_symmetric(rank in 1usize..4, a in 1usize..7, b in 1usize..7, d in 1u32..5, seed in 0u64..500) {
        let ws = WeightSystem::new(rank);
        let (j1, j2) = (1 + (a - 1) % (2 * rank), 1 + (b - 1) % (2 * rank));
        prop_assume!(j1 != j2);
        let w = PointWeights::new(ws, &sample_weight_point(rank, seed)).unwrap();
        prop_assert_eq!(
            edge_contribution(&w, j1, j2, d, EdgeKRange::Literal),
            edge_contribution(&w, j2, j1, d, EdgeKRange::Literal)
        );
    }
}

#[test]
fn psi_integrals_sum_to_n_power() {
    fn sum_over(slots: usize, remaining: u32, prefix: &mut Vec<u32>) -> Rational {
        if slots == 1 {
            prefix.push(remaining);
            let v = psi_integral(prefix).unwrap();
            prefix.pop();
            return v;
        }
        let mut acc = Rational::zero();
        for k in 0..=remaining {
            prefix.push(k);
            acc += &sum_over(slots - 1, remaining - k, prefix);
            prefix.pop();
        }
        acc
    }
    for n in 3..=8usize {
        let total = sum_over(n, (n - 3) as u32, &mut Vec::new());
        assert_eq!(total, Rational::from((n as i64).pow(n as u32 - 3)), "n = {n}");
    }
}

#[test]
fn edge_factor_is_symmetric_symbolically() {
    let w = SymbolicWeights::new(WeightSystem::new(2));
    for j1 in 1..=4 {
        for j2 in 1..=4 {
            if j1 != j2 {
                for d in 1..=3 {
                    assert!(
                        edge_contribution(&w, j1, j2, d, EdgeKRange::Literal)
                            == edge_contribution(&w, j2, j1, d, EdgeKRange::Literal)
                    );
                }
            }
        }
    }
}

fn p1_graphs(d: u32, l: usize) -> Vec<(HalfGraph, Involution)> {
    let mut out = Vec::new();
    for phi in [Involution::Tau, Involution::Eta] {
        for c in [Involution::Tau, Involution::Eta] {
            out.extend(enumerate_half_graphs(1, d, l, phi, c, SignMode::AllSigns).map(|g| (g, c)));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flipping_a_sign_follows_insertion_parity(
        d in 1u32..=3,
        t in prop::collection::vec(1u32..6, 1..=2),
        k in 0usize..2,
        seed in 0u64..1000,
    ) {
        let k = k % t.len();
        let w = PointWeights::new(WeightSystem::new(1), &sample_weight_point(1, seed)).unwrap();
        for (g, c) in p1_graphs(d, t.len()) {
            let cfg = EulerConfig { parity_mode: ParityMode::General(c), ..EulerConfig::default() };
            let mut signs = g.signs();
            signs[k] = -signs[k];
            let flipped = g.with_signs(&signs);
            let (a, b) = match (locus_contribution(&g, &t, &w, &cfg), locus_contribution(&flipped, &t, &w, &cfg)) {
                (Ok(a), Ok(b)) => (a.value, b.value),
                (Err(Error::Pole), _) | (_, Err(Error::Pole)) => continue,
                (Err(e), _) | (_, Err(e)) => panic!("{e}"),
            };
            if t[k] % 2 == 0 {
                prop_assert_eq!(b, -&a);
            } else {
                prop_assert_eq!(b, a);
            }
        }
    }

    #[test]
    fn insertion_order_does_not_matter(d in prop::sample::select(vec![1u32, 2, 3]), l in 1usize..=3, pick in any::<prop::sample::Index>(), rot in 1usize..3) {
        let ts = admissible_t_vectors(2, d, l, false);
        let t = pick.get(&ts).clone();
        let mut u = t.clone();
        u.rotate_left(rot % l);
        u.reverse();
        let a = invariant(&InvariantQuery::new(2, d, Involution::Tau, &t)).unwrap().value;
        let b = invariant(&InvariantQuery::new(2, d, Involution::Tau, &u)).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn value_does_not_depend_on_the_weight_point(d in prop::sample::select(vec![1u32, 3]), l in 1usize..=3, pick in any::<prop::sample::Index>(), seed in 1u64..1_000_000) {
        let ts = admissible_t_vectors(2, d, l, true);
        let t = pick.get(&ts);
        let base = InvariantQuery::new(2, d, Involution::Tau, t);
        let a = invariant(&base).unwrap().value;
        let b = invariant(&base.clone().with_mode(EvalMode::Specialized { samples: 4, seed })).unwrap().value;
        prop_assert_eq!(a, b);
    }
}

fn odd_cases() -> Vec<(usize, u32, Vec<u32>)> {
    let mut out = Vec::new();
    for d in [1, 3] {
        for l in 1..=3 {
            out.extend(admissible_t_vectors(2, d, l, true).into_iter().map(|t| (2, d, t)));
        }
    }
    for l in 1..=2 {
        out.extend(admissible_t_vectors(4, 1, l, true).into_iter().map(|t| (4, 1, t)));
    }
    out
}

#[test]
fn eta_is_minus_tau() {
    for (rank, d, t) in odd_cases() {
        let tau = invariant(&InvariantQuery::new(rank, d, Involution::Tau, &t)).unwrap().value;
        let eta = invariant(&InvariantQuery::new(rank, d, Involution::Eta, &t)).unwrap().value;
        assert_eq!(eta, -&tau, "M={rank} d={d} t={t:?}");
    }
}

#[test]
fn reduced_and_general_paths_agree_and_are_integral() {
    for (rank, d, t) in odd_cases() {
        for phi in [Involution::Tau, Involution::Eta] {
            let q = InvariantQuery::new(rank, d, phi, &t);
            let general = invariant(&q).unwrap().value;
            let reduced = invariant(&q.clone().with_path(SumPath::Reduced)).unwrap().value;
            assert_eq!(general, reduced, "M={rank} d={d} {phi} t={t:?}");
            assert!(general.is_integer(), "M={rank} d={d} {phi} t={t:?}: {general}");
        }
    }
}

#[test]
fn even_insertions_vanish() {
    for l in 1..=3 {
        for t in admissible_t_vectors(2, 1, l, false) {
            if t.iter().any(|x| x % 2 == 0) {
                let v = invariant(&InvariantQuery::new(2, 1, Involution::Tau, &t)).unwrap().value;
                assert!(v.is_zero(), "t={t:?}: {v}");
            }
        }
    }
}

#[test]
fn even_degree_vanishes() {
    for d in [2, 4] {
        for l in 1..=2 {
            for t in admissible_t_vectors(2, d, l, false) {
                let v = invariant(&InvariantQuery::new(2, d, Involution::Tau, &t)).unwrap().value;
                assert!(v.is_zero(), "d={d} t={t:?}: {v}");
            }
        }
    }
}
