use num_traits::One;
use proptest::prelude::*;

use opow_core::coefficients::{
    bell_numbers, factorial, stirling1_unsigned_triangle, stirling2_triangle,
};
use opow_core::series_oracle::{apply_a, apply_a_repeated, apply_expansion, Precision};
use opow_core::{expand, DiffMonomial, DiffPolynomial, ExactInt, ExponentVector, TruncatedLaurentSeries};

fn monomial() -> impl Strategy<Value = DiffMonomial> {
    (-5i64..=5, prop::collection::vec(0u32..3, 0..4))
        .prop_map(|(c, e)| DiffMonomial::new(c, ExponentVector::new(e)))
}

fn poly() -> impl Strategy<Value = DiffPolynomial> {
    prop::collection::vec(monomial(), 0..5).prop_map(DiffPolynomial::normalize)
}

fn int_poly(max_len: usize) -> impl Strategy<Value = TruncatedLaurentSeries> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
        .prop_map(|c| TruncatedLaurentSeries::from_integers(0, &c))
}

proptest! {
    #[test]
    fn total_derivative_is_a_derivation(a in poly(), b in poly()) {
        let lhs = a.mul(&b).total_derivative();
        let rhs = a.total_derivative().mul(&b).add(&a.mul(&b.total_derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(DiffPolynomial::normalize(a.monomials().to_vec()), a);
    }

    #[test]
    fn canonical_form_is_sorted_and_nonzero(a in poly()) {
        let m = a.monomials();
        prop_assert!(m.windows(2).all(|w| w[0].exps < w[1].exps));
        prop_assert!(m.iter().all(|x| x.coeff != ExactInt::from(0)));
    }

    #[test]
    fn derivative_keeps_degree_and_raises_weight(a in poly()) {
        let degrees: std::collections::BTreeSet<_> = a.monomials().iter().map(|m| (m.exps.degree(), m.exps.weight())).collect();
        for d in a.total_derivative().monomials() {
            prop_assert!(degrees.contains(&(d.exps.degree(), d.exps.weight() - 1)));
        }
    }

    #[test]
    fn direct_and_expanded_application_agree(k in 1u32..=6, u in int_poly(5), f in int_poly(7)) {
        let direct = apply_a_repeated(&u, &f, k).unwrap();
        let expanded = apply_expansion(&expand(k).unwrap(), &u, &f).unwrap();
        prop_assert_eq!(direct, expanded);
    }

    #[test]
    fn precision_loss_per_application_is_bounded(
        min_exp in -2i64..=2,
        u in prop::collection::vec(-9i64..=9, 1..4),
        f in prop::collection::vec(-9i64..=9, 1..8),
    ) {
        let u = TruncatedLaurentSeries::from_integers(min_exp, &u);
        let prec = 8;
        let f = TruncatedLaurentSeries::new(0, f.iter().map(|&c| opow_core::ExactRational::from_integer(c.into())).collect(), Precision::Below(prec));
        let g = apply_a(&u, &f);
        if let Precision::Below(p) = g.prec() {
            prop_assert!(prec - p <= 1 + u.min_exp().abs());
        }
    }
}

#[test]
fn stirling_row_sums() {
    let sigma = stirling2_triangle(15);
    let c = stirling1_unsigned_triangle(15);
    let bell = bell_numbers(15);
    for n in 1..=15 {
        let s2: ExactInt = sigma[n].iter().sum();
        let s1: ExactInt = c[n].iter().sum();
        assert_eq!(s2, bell[n]);
        assert_eq!(s1, factorial(n as u64));
    }
    assert!(bell[0].is_one());
}
