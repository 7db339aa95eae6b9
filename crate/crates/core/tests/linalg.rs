use lamring_core::linalg::{
    cokernel, homology_at, kernel_basis, rank, saturated_left_inverse, smith_normal_form, stabilized_gcd, stabilized_gcd_coprime_to, IndexPolynomial,
    IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-entry..=entry, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

/// Leibniz expansion, independent of the elimination code.
fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * leibniz(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n).flat_map(|first| subsets(n, k - 1).into_iter().filter(move |s| s.iter().all(|&x| x > first)).map(move |mut s| {
        s.insert(0, first);
        s
    })).collect()
}

/// gcd of all `k × k` minors.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect();
            g = g.gcd(&leibniz(&sub));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_invariants_match_minor_gcds(m in matrix(4, 9)) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let mut prefix = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let g = minor_gcd(&m, k);
            if k <= d.len() {
                prefix *= &d[k - 1];
                prop_assert_eq!(prefix.abs(), g);
            } else {
                prop_assert!(g.is_zero());
            }
        }
        prop_assert_eq!(rank(&m), d.len());
    }

    #[test]
    fn kernel_is_saturated_and_complete(m in matrix(4, 5)) {
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), m.cols() - rank(&m));
        if k.cols() > 0 {
            prop_assert!(smith_normal_form(&k).invariant_factors().iter().all(One::is_one));
            let inv = saturated_left_inverse(&k).unwrap();
            prop_assert!(inv.mul(&k).is_identity());
        }
    }

    #[test]
    fn cokernel_order_is_product_of_factors(m in matrix(3, 6)) {
        let g = cokernel(&m);
        let d = smith_normal_form(&m).invariant_factors();
        prop_assert_eq!(g.free_rank, m.rows() - d.len());
        let order: BigInt = d.iter().map(|x| x.abs()).product();
        prop_assert_eq!(g.torsion_order(), order);
    }

    #[test]
    fn homology_of_composable_pair(a in matrix(3, 4), b in matrix(3, 4)) {
        // d_out · d_in = 0 with d_in = K·a for a kernel basis K of d_out.
        let k = kernel_basis(&b);
        prop_assume!(k.cols() > 0);
        let a = IntMatrix::from_columns(k.cols(), &(0..a.cols()).map(|c| (0..k.cols()).map(|r| if r < a.rows() { a.get(r, c).clone() } else { BigInt::zero() }).collect()).collect::<Vec<_>>());
        let d_in = k.mul(&a);
        let h = homology_at(&d_in, &b).unwrap();
        prop_assert_eq!(h.free_rank, k.cols() - rank(&d_in));
        prop_assert_eq!(h, cokernel(&a));
    }

    #[test]
    fn stabilized_gcd_matches_window(a in 0u32..8, b in 0u32..8, start in 1u64..4) {
        let f = IndexPolynomial::power_difference(a, b);
        let brute = (start..start + 400).fold(BigInt::zero(), |g, l| g.gcd(&f.eval(&BigInt::from(l))));
        match stabilized_gcd(&f, start) {
            None => prop_assert!(a == b),
            Some(g) => prop_assert_eq!(g, brute),
        }
    }

    #[test]
    fn coprime_gcd_matches_window(j in 1u32..10, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let f = IndexPolynomial::power_difference(j, 0);
        let brute = (2u64..600).filter(|l| l % p != 0).fold(BigInt::zero(), |g, l| g.gcd(&f.eval(&BigInt::from(l))));
        prop_assert_eq!(stabilized_gcd_coprime_to(&f, 2, p).unwrap(), brute);
    }
}

#[test]
fn homology_rejects_non_complex() {
    let d = IntMatrix::identity(2);
    assert!(homology_at(&d, &d).is_err());
}
