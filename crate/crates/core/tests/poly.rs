use std::collections::BTreeMap;

use lamring_core::poly::{Monomial, MultiPoly, VarId};
use num_bigint::BigInt;
use proptest::prelude::*;

const VARS: [VarId; 6] = [VarId::S(1), VarId::S(2), VarId::Sigma(1), VarId::Lam(0, 3), VarId::Gen(1, 2), VarId::Coeff(4)];

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (-6i64..=6, proptest::collection::vec((0..VARS.len(), 0u32..3), 0..3));
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, pairs)| {
            let pairs: Vec<(VarId, u32)> = pairs.into_iter().map(|(v, e)| (VARS[v], e)).collect();
            (Monomial::from_pairs(&pairs), BigInt::from(c))
        }))
    })
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, VARS.len())
}

fn eval(p: &MultiPoly, at: &[i64]) -> BigInt {
    p.eval_int(|v| VARS.iter().position(|w| w == v).map(|i| BigInt::from(at[i]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in point()) {
        prop_assert_eq!(eval(&(&a + &b), &at), eval(&a, &at) + eval(&b, &at));
        prop_assert_eq!(eval(&(&a * &b), &at), eval(&a, &at) * eval(&b, &at));
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in 0..VARS.len()) {
        let x = VARS[v];
        let lhs = (&a * &b).partial_derivative(x);
        let rhs = &(&a.partial_derivative(x) * &b) + &(&a * &b.partial_derivative(x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly(), images in proptest::collection::vec(poly(), VARS.len())) {
        let assignment: BTreeMap<VarId, MultiPoly> = VARS.iter().copied().zip(images).collect();
        let sub = |p: &MultiPoly| p.substitute(&assignment).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a - &b)), &sub(&a) - &sub(&b));
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let text = a.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn power_matches_repeated_product(a in poly(), e in 0u32..4) {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(e), acc);
    }
}

#[test]
fn parse_reports_position() {
    assert!("s1 + * s2".parse::<MultiPoly>().is_err());
    assert!("l2(z)".parse::<MultiPoly>().is_err());
    let p: MultiPoly = "-(s1 - 2*sig1)^2".parse().unwrap();
    assert_eq!(p.to_string(), "-s1^2 + 4*s1*sig1 - 4*sig1^2");
}
