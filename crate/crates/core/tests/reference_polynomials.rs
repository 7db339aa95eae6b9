//! Hand transcriptions of the polynomial tables, compared term by term.

use std::collections::BTreeMap;

use lamring_core::poly::{Monomial, MultiPoly, VarId};
use lamring_core::symm::{
    adams_poly, adams_polys_in, elementary_of_monomials, elementary_symmetric_in, partial_p, partial_p_comp, universal_p, universal_p_comp, Slot,
};
use num_bigint::BigInt;

fn parse(text: &str) -> MultiPoly {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Shorthand `r`, `L2`, `L3`, … for `λ¹(r)`, `λ²(r)`, `λ³(r)`, ….
fn lam(text: &str) -> MultiPoly {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'r' => out.push_str("l1(r)"),
            'L' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                out.push_str(&format!("l{digits}(r)"));
            }
            other => out.push(other),
        }
    }
    parse(&out)
}

fn psi_r(k: u32) -> MultiPoly {
    adams_poly(k)
}

fn psi_s(k: u32) -> MultiPoly {
    adams_polys_in(k, |i| VarId::Lam(1, i)).pop().unwrap()
}

fn in_r(p: MultiPoly) -> MultiPoly {
    p.map_vars(|v| match v {
        VarId::S(m) => VarId::Lam(0, m),
        other => other,
    })
}

fn int(c: i64) -> MultiPoly {
    MultiPoly::from_int(c)
}

const ADAMS: [&str; 8] = [
    "r",
    "r^2 - 2*L2",
    "r^3 - 3*r*L2 + 3*L3",
    "r^4 - 4*r^2*L2 + 4*r*L3 + 2*L2^2 - 4*L4",
    "r^5 - 5*r^3*L2 + 5*r^2*L3 + 5*r*L2^2 - 5*r*L4 - 5*L2*L3 + 5*L5",
    "r^6 - 6*r^4*L2 + 6*r^3*L3 + 9*r^2*L2^2 - 6*r^2*L4 - 12*r*L2*L3 + 6*r*L5 - 2*L2^3 + 3*L3^2 + 6*L2*L4 - 6*L6",
    "r^7 - 7*r^5*L2 + 7*r^4*L3 + 14*r^3*L2^2 - 7*r^3*L4 - 21*r^2*L2*L3 + 7*r^2*L5 - 7*r*L2^3 + 7*r*L3^2 + 14*r*L2*L4 - 7*r*L6 \
     + 7*L2^2*L3 - 7*L3*L4 - 7*L2*L5 + 7*L7",
    "r^8 - 8*r^6*L2 + 8*r^5*L3 + 20*r^4*L2^2 - 8*r^4*L4 - 32*r^3*L2*L3 + 8*r^3*L5 - 16*r^2*L2^3 + 12*r^2*L3^2 + 24*r^2*L2*L4 \
     - 8*r^2*L6 + 24*r*L2^2*L3 - 16*r*L3*L4 - 16*r*L2*L5 + 8*r*L7 + 2*L2^4 - 8*L2*L3^2 + 4*L4^2 - 8*L2^2*L4 + 8*L3*L5 + 8*L2*L6 - 8*L8",
];

#[test]
fn adams_operations_match_table() {
    for (k, text) in (1..).zip(ADAMS) {
        assert_eq!(adams_poly(k), lam(text), "Psi^{k}");
    }
    assert_eq!(adams_poly(8).len(), 22);
}

const PRODUCT: [&str; 4] = [
    "s1*sig1",
    "s1^2*sig2 - 2*s2*sig2 + s2*sig1^2",
    "s1^3*sig3 + s1*s2*sig1*sig2 - 3*s1*s2*sig3 + s3*sig1^3 - 3*s3*sig1*sig2 + 3*s3*sig3",
    "-2*s1*s3*sig2^2 + 2*s4*sig2^2 + 4*s4*sig1*sig3 - 4*s1^2*s2*sig4 - 2*s2^2*sig1*sig3 - 4*s4*sig1^2*sig2 + 4*s1*s3*sig4 \
     + s1^2*s2*sig1*sig3 + s1*s3*sig1^2*sig2 - s1*s3*sig1*sig3 + s1^4*sig4 + s2^2*sig2^2 + 2*s2^2*sig4 + s4*sig1^4 - 4*s4*sig4",
];

#[test]
fn product_polynomials_match_table() {
    for (k, text) in (1..).zip(PRODUCT) {
        assert_eq!(universal_p(k), parse(text), "P_{k}");
    }
    assert_eq!(universal_p(4).len(), 15);
}

fn swap_alphabets(p: &MultiPoly) -> MultiPoly {
    p.map_vars(|v| match v {
        VarId::S(i) => VarId::Sigma(i),
        VarId::Sigma(i) => VarId::S(i),
        other => other,
    })
}

#[test]
fn product_polynomials_are_symmetric_and_back_substitute() {
    for k in 1..=5 {
        let p = universal_p(k);
        assert_eq!(swap_alphabets(&p), p, "P_{k}");
        let mut assignment = BTreeMap::new();
        for i in 1..=k {
            assignment.insert(VarId::S(i), elementary_symmetric_in(i, k, VarId::Xi));
            assignment.insert(VarId::Sigma(i), elementary_symmetric_in(i, k, VarId::Eta));
        }
        let monomials: Vec<Monomial> =
            (1..=k).flat_map(|i| (1..=k).map(move |j| Monomial::from_pairs(&[(VarId::Xi(i), 1), (VarId::Eta(j), 1)]))).collect();
        let expected = elementary_of_monomials(&monomials, k).pop().unwrap();
        assert_eq!(p.substitute(&assignment).unwrap(), expected, "P_{k}");
    }
}

fn s(i: u32) -> MultiPoly {
    MultiPoly::var(VarId::S(i))
}

#[test]
fn composition_polynomials_match_table() {
    for j in 1..=6 {
        assert_eq!(universal_p_comp(1, j), s(j), "P_1,{j}");
        assert_eq!(universal_p_comp(j, 1), s(j), "P_{j},1");
    }
    for j in 1..=5 {
        let mut closed = s(2 * j).scale(&BigInt::from(if j % 2 == 1 { 1 } else { -1 }));
        for k in 1..j {
            let t = &s(j - k) * &s(j + k);
            closed = if k % 2 == 1 { &closed + &t } else { &closed - &t };
        }
        assert_eq!(universal_p_comp(2, j), closed, "P_2,{j}");
    }
    assert_eq!(universal_p_comp(2, 2), parse("s1*s3 - s4"));
    let p24 = parse("s3*s5 - s2*s6 + s1*s7 - s8");
    let p42 = parse("s1*s3*s4 - 3*s1*s2*s5 + s1^3*s5 - s4^2 + s3*s5 - s1^2*s6 + s1*s7 + 2*s2*s6 - s8");
    let p52 = parse(
        "s1^4*s6 + s2*s4^2 + 3*s1*s2*s7 + 3*s1*s3*s6 - 4*s1^2*s2*s6 - 2*s1*s4*s5 - 2*s2*s3*s5 + s1^2*s3*s5 + s10 - s3*s7 + 2*s5^2 \
         - s1^3*s7 - 2*s4*s6 + 2*s2^2*s6 + s1^2*s8 - s1*s9 - 2*s2*s8",
    );
    assert_eq!(universal_p_comp(2, 4), p24);
    assert_eq!(universal_p_comp(4, 2), p42);
    assert_eq!(universal_p_comp(5, 2), p52);
    assert_ne!(universal_p_comp(2, 4), universal_p_comp(4, 2));
}

#[test]
fn worked_partial_derivatives() {
    assert_eq!(partial_p(2, Slot::First, 1), parse("2*l1(r)*l2(s)"));
    assert_eq!(partial_p(2, Slot::First, 2), parse("l1(s)^2 - 2*l2(s)"));
    assert_eq!(partial_p_comp(2, 2, 1), lam("L3"));
    // The convention for the second slot mirrors the first.
    assert_eq!(partial_p(2, Slot::Second, 2), parse("l1(r)^2 - 2*l2(r)"));
}

#[test]
fn composition_partials_match_table() {
    let l = |k: u32| MultiPoly::var(VarId::Lam(0, k));
    let r = l(1);
    let p42 = [
        (1, None),
        (2, None),
        (3, Some(&(&r * &l(4)) + &l(5))),
        (4, Some(&(&r * &l(3)) - &l(4).scale(&BigInt::from(2)))),
        (5, Some(&psi_r(3) - &l(3).scale(&BigInt::from(2)))),
        (6, Some(-psi_r(2))),
        (7, Some(r.clone())),
        (8, Some(int(-1))),
        (9, Some(MultiPoly::zero())),
        (10, Some(MultiPoly::zero())),
    ];
    for (k, expected) in p42 {
        if let Some(e) = expected {
            assert_eq!(partial_p_comp(4, 2, k), e, "dP_4,2/dl{k}");
        }
    }
    let p52 = [
        (6, &(&psi_r(4) - &(&r * &l(3))) + &l(4).scale(&BigInt::from(2))),
        (7, &-psi_r(3) + &l(3).scale(&BigInt::from(2))),
        (8, psi_r(2)),
        (9, -r.clone()),
        (10, int(1)),
    ];
    for (k, e) in p52 {
        assert_eq!(partial_p_comp(5, 2, k), e, "dP_5,2/dl{k}");
    }
}

#[test]
fn first_and_second_composition_partials() {
    for n in 1..=6 {
        for k in 1..=2 * n + 1 {
            let expected = if k == n { int(1) } else { MultiPoly::zero() };
            assert_eq!(partial_p_comp(1, n, k), expected, "dP_1,{n}/dl{k}");

            // (-1)^{k+n+1} λ^{2n-k}(r), with λ^0 = 1.
            let expected = if k == n || k > 2 * n {
                MultiPoly::zero()
            } else {
                let v = if k == 2 * n { int(1) } else { MultiPoly::var(VarId::Lam(0, 2 * n - k)) };
                if (k + n) % 2 == 1 { v } else { -v }
            };
            assert_eq!(partial_p_comp(2, n, k), expected, "dP_2,{n}/dl{k}");
        }
    }
}

#[test]
fn printed_second_composition_rule_fails_for_odd_n() {
    // The printed sign (-1)^{k+1} agrees with the expansion exactly for even n.
    for n in 1..=6u32 {
        let printed = |k: u32| {
            let v = if k == 2 * n { int(1) } else { MultiPoly::var(VarId::Lam(0, 2 * n - k)) };
            if k % 2 == 0 { -v } else { v }
        };
        let agrees = (1..=2 * n).filter(|&k| k != n).all(|k| partial_p_comp(2, n, k) == printed(k));
        assert_eq!(agrees, n % 2 == 0, "n = {n}");
    }
}

#[test]
fn top_composition_partial_is_a_sign() {
    for i in 1..=4 {
        for j in 1..=4 {
            let sign = if ((i + 1) * (j + 1)) % 2 == 0 { 1 } else { -1 };
            assert_eq!(partial_p_comp(i, j, i * j), int(sign), "dP_{i},{j}/dl{}", i * j);
        }
    }
}

#[test]
fn product_partials_match_table() {
    let s1 = MultiPoly::var(VarId::Lam(1, 1));
    let r = MultiPoly::var(VarId::Lam(0, 1));
    for i in 1..=4u32 {
        for k in 1..=4u32 {
            let got = partial_p(i, Slot::First, k);
            if k > i {
                assert!(got.is_zero(), "dP_{i}/dl{k}");
            } else if k == i {
                assert_eq!(got, psi_s(i), "dP_{i}/dl{k}");
            }
        }
    }
    // The printed entry r(s^2 - Ψ^2(s)).
    assert_eq!(partial_p(2, Slot::First, 1), &r * &(&s1.pow(2) - &psi_s(2)));
}

#[test]
fn diagonal_conjecture_holds_to_eight() {
    for i in 1..=8 {
        assert_eq!(partial_p(i, Slot::First, i), psi_s(i), "i = {i}");
    }
}

#[test]
fn subdiagonal_identity_holds_in_corrected_form() {
    let r = MultiPoly::var(VarId::Lam(0, 1));
    let s1 = MultiPoly::var(VarId::Lam(1, 1));
    for i in 1..=8 {
        let got = partial_p(i + 1, Slot::First, i);
        let corrected = &r * &(&(&s1 * &psi_s(i)) - &psi_s(i + 1));
        assert_eq!(got, corrected, "i = {i}");
        let literal = &r * &(&s1.pow(i + 1) - &psi_s(i + 1));
        assert_eq!(got == literal, i == 1, "i = {i}");
    }
}

#[test]
fn composition_polynomials_in_lambda_variables() {
    // P_{i,j} in λ(r) evaluated at the trivial λ-structure of Z on 1: λ^k(1) = 0 for k >= 2.
    for (i, j) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let p = in_r(universal_p_comp(i, j));
        let v = p.eval_int(|v| match v {
            VarId::Lam(0, 1) => Some(BigInt::from(1)),
            VarId::Lam(0, _) => Some(BigInt::from(0)),
            _ => None,
        });
        assert_eq!(v.unwrap(), BigInt::from(0), "P_{i},{j}(1)");
    }
}
