use num_bigint::BigInt;
use proptest::prelude::*;

use quotstab::fforacle::{build_ambient, enumerate_submodules, hs_function_of};
use quotstab::motives::{gaussian_binomial, gaussian_binomial_by_product, grassmannian_infinite};
use quotstab::{LPolynomial, MultiTruncatedSeries, PrimeField, TruncatedLSeries};

fn poly() -> impl Strategy<Value = LPolynomial> {
    prop::collection::vec(-50i64..50, 0..8).prop_map(|c| LPolynomial::from_i64s(&c))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly(), b in poly(), v in -20i64..20) {
        let v = BigInt::from(v);
        prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
        prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
    }

    #[test]
    fn geometric_inverse_is_an_inverse(tail in prop::collection::vec(-9i64..9, 0..6), sign in prop::bool::ANY, order in 1usize..20) {
        let mut c = vec![if sign { 1 } else { -1 }];
        c.extend(tail);
        let p = LPolynomial::from_i64s(&c);
        let inv = TruncatedLSeries::geometric_inverse(&p, order).unwrap();
        prop_assert_eq!(&inv * &p, TruncatedLSeries::one(order));
    }

    #[test]
    fn truncation_is_a_homomorphism(a in poly(), b in poly(), order in 1usize..12) {
        let direct = (&a * &b).truncate(order);
        let via = &a.truncate(order) * &b.truncate(order);
        prop_assert_eq!(direct, via);
        let big = &a.truncate(order + 5) * &b.truncate(order + 5);
        prop_assert_eq!(big.reduce(order), (&a * &b).truncate(order));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn gaussian_routes_agree(n in 0usize..14, d in 0usize..14) {
        prop_assume!(d <= n);
        let g = gaussian_binomial(d, n);
        prop_assert_eq!(&g, &gaussian_binomial_by_product(d, n));
        prop_assert_eq!(&g, &gaussian_binomial(n - d, n));
        prop_assert_eq!(g.degree(), Some(d * (n - d)));
    }

    #[test]
    fn grassmannians_stabilise(d in 0usize..6, order in 1usize..12, extra in 0usize..4) {
        let n = d + order + extra;
        prop_assert!(grassmannian_infinite(d, order).agrees_with(&gaussian_binomial(d, n)));
    }

    #[test]
    fn multivariate_product_commutes(
        e1 in prop::collection::vec(0u32..3, 2), e2 in prop::collection::vec(0u32..3, 2),
        c1 in prop::collection::vec(-3i64..3, 1..4), c2 in prop::collection::vec(-3i64..3, 1..4)
    ) {
        let a = MultiTruncatedSeries::monomial(2, 5, e1, TruncatedLSeries::from_i64s(&c1, 6)).unwrap();
        let b = MultiTruncatedSeries::monomial(2, 5, e2, TruncatedLSeries::from_i64s(&c2, 6)).unwrap();
        let one = MultiTruncatedSeries::one(2, 5, 6);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }
}

#[test]
fn oracle_output_is_deterministic_and_stable() {
    for q in [2, 3] {
        let field = PrimeField::new(q).unwrap();
        let m = build_ambient(2, 2, 2, field).unwrap();
        for codim in 0..=4 {
            let first = enumerate_submodules(&m, codim).unwrap();
            let again = enumerate_submodules(&m, codim).unwrap();
            assert_eq!(first, again);
            for w in &first {
                assert!(w.is_stable(&m));
                assert_eq!(w.codim(), codim);
                if codim > 0 {
                    assert_eq!(hs_function_of(w, &m).size() as usize, codim);
                }
            }
        }
    }
}
