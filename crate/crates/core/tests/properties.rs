mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qhodge::filtration::{weight_filtration, ExactMatrix, NilpotentOperator};
use qhodge::instanton::InstantonTable;
use qhodge::ring::{Rat, Ring};
use qhodge::scalar::{Monomial, TwistedScalar};
use qhodge::series::{RatSeries, Series, Var};
use qhodge::taupoly::TauPoly;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn scalar() -> impl Strategy<Value = TwistedScalar> {
    prop::collection::vec(((-3i32..=3, 0u32..=2), small_rat()), 0..4).prop_map(|terms| {
        TwistedScalar::from_terms(terms.into_iter().map(|((p, c), r)| (Monomial::new(p, c), r)))
    })
}

fn rat_series(order: usize) -> impl Strategy<Value = RatSeries> {
    prop::collection::vec(small_rat(), order).prop_map(|c| Series::from_coeffs(Var::S, c))
}

fn q_series(order: usize) -> impl Strategy<Value = qhodge::series::QSeries> {
    prop::collection::vec(scalar(), order).prop_map(|c| Series::from_coeffs(Var::Q, c))
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&TwistedScalar::one()), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
    }

    #[test]
    fn product_matches_naive_convolution(a in rat_series(64), b in rat_series(64)) {
        let want = common::mul(a.coeffs(), b.coeffs(), 64);
        let (seq, dispatched) = (a.mul_sequential(&b), a.mul(&b));
        prop_assert_eq!(seq.coeffs(), want.as_slice());
        prop_assert_eq!(dispatched.coeffs(), want.as_slice());
    }

    #[test]
    fn integral_fast_path_matches_naive(
        a in prop::collection::vec(-1000i64..1000, 40),
        b in prop::collection::vec(-1000i64..1000, 40),
    ) {
        let to = |v: &[i64]| Series::from_coeffs(Var::S, v.iter().map(|&x| Rat::from_integer(x.into())).collect());
        let (sa, sb) = (to(&a), to(&b));
        let want = common::mul(sa.coeffs(), sb.coeffs(), 40);
        let got = sa.mul_sequential(&sb);
        prop_assert_eq!(got.coeffs(), want.as_slice());
    }

    #[test]
    fn symbol_series_product_commutes(a in q_series(12), b in q_series(12)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn reversion_is_an_involution(tail in rat_series(16), lead in 1i64..5) {
        let mut f = tail;
        f.set_coeff(0, Rat::from_integer(0.into()));
        f.set_coeff(1, Rat::from_integer(lead.into()));
        let g = f.revert().unwrap();
        prop_assert_eq!(g.revert().unwrap(), f.clone());
        let id = f.compose(&g).unwrap();
        prop_assert_eq!(id, Series::var_series(Var::S, 16));
    }

    #[test]
    fn exp_log_roundtrip(tail in rat_series(16)) {
        let mut f = tail;
        f.set_coeff(0, Rat::from_integer(0.into()));
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn tau_shift_commutes_with_dtau(c in prop::collection::vec(q_series(8), 4), k in -3i64..=3) {
        let p = TauPoly::from_terms(c).unwrap();
        prop_assert_eq!(p.shift(k).dtau(), p.dtau().shift(k));
        prop_assert_eq!(p.shift(k).shift(-k), p);
    }

    #[test]
    fn multicover_roundtrip(bps in prop::collection::vec(-10_000i64..10_000, 1..12)) {
        // N_D = Σ_{k|D} n_{D/k}/k³
        let d_max = bps.len();
        let gw: Vec<Rat> = (1..=d_max)
            .map(|d| {
                (1..=d).filter(|k| d % k == 0).fold(Rat::from_integer(0.into()), |acc, k| {
                    acc + Rat::new(bps[d / k - 1].into(), BigInt::from(k * k * k))
                })
            })
            .collect();
        let table = InstantonTable::from_gw(gw).unwrap();
        prop_assert!(table.multicover_holds());
        for (d, n) in bps.iter().enumerate() {
            prop_assert_eq!(table.bps(d as u32 + 1), Some(&BigInt::from(*n)));
        }
    }
}

#[cfg(feature = "parallel")]
proptest! {
    #[test]
    fn parallel_kernel_matches_sequential(a in rat_series(48), b in rat_series(48)) {
        prop_assert_eq!(a.mul_parallel(&b), a.mul_sequential(&b));
    }

    #[test]
    fn parallel_kernel_matches_sequential_symbols(a in q_series(30), b in q_series(30)) {
        prop_assert_eq!(a.mul_parallel(&b), a.mul_sequential(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Random strictly lower triangular operators: the constructed weight
    /// filtration passes its own axioms and has symmetric graded pieces.
    #[test]
    fn weight_filtration_is_symmetric(entries in prop::collection::vec(-3i64..=3, 10), center in 0i32..=6) {
        let mut it = entries.into_iter();
        let rows: Vec<Vec<Rat>> = (0..5)
            .map(|i| (0..5).map(|j| Rat::from_integer(if j < i { it.next().unwrap_or(0) } else { 0 }.into())).collect())
            .collect();
        let n = NilpotentOperator::new(ExactMatrix::from_rat_rows(&rows)).unwrap();
        let m = weight_filtration(&n, center).unwrap();
        for k in 0..=5 {
            prop_assert_eq!(m.graded_dim(center + k), m.graded_dim(center - k));
        }
        let total: usize = (center - 6..=center + 6).map(|a| m.graded_dim(a)).sum();
        prop_assert_eq!(total, 5);
    }
}
