#![allow(dead_code)]

use lamring_core::cohomology::{Coefficients, CochainComplex};
use lamring_core::linalg::IntMatrix;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

/// A unimodular matrix together with its inverse, as a product of elementary
/// matrices.
pub fn unimodular(rng: &mut StdRng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(c));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, BigInt::from(-c));
        u = u.mul(&e);
        inv = e_inv.mul(&inv);
    }
    debug_assert!(u.mul(&inv).is_identity());
    (u, inv)
}

/// A random complex with known cohomology.
pub struct KnownComplex {
    pub complex: CochainComplex,
    /// Free rank of `H^n`.
    pub betti: Vec<usize>,
    /// Cyclic orders making up the torsion of `H^n`.
    pub torsion: Vec<Vec<BigInt>>,
}

/// `C^n = B^n ⊕ H^n ⊕ X^n`, where `d` carries `X^n` onto scalar multiples
/// of `B^{n+1}`, conjugated by random unimodular changes of basis.
pub fn random_complex(rng: &mut StdRng, top: usize, max_summand: usize) -> KnownComplex {
    let mut b = vec![0usize; top + 1];
    let mut h = vec![0usize; top + 1];
    let mut x = vec![0usize; top + 1];
    for n in 0..=top {
        h[n] = rng.gen_range(0..=max_summand);
        if n < top {
            x[n] = rng.gen_range(0..=max_summand);
            b[n + 1] = x[n];
        }
    }
    let ranks: Vec<usize> = (0..=top).map(|n| b[n] + h[n] + x[n]).collect();
    let bases: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| unimodular(rng, r)).collect();
    let mut torsion = vec![Vec::new(); top + 1];
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut d = IntMatrix::zeros(ranks[n + 1], ranks[n]);
        for i in 0..x[n] {
            let mut c: i64 = rng.gen_range(1..=4);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            d.set(i, b[n] + h[n] + i, BigInt::from(c));
            if c.abs() > 1 {
                torsion[n + 1].push(BigInt::from(c.abs()));
            }
        }
        diffs.push(bases[n + 1].0.mul(&d).mul(&bases[n].1));
    }
    let complex = CochainComplex::new(Coefficients::Integers, ranks, diffs).expect("d∘d = 0 by construction");
    KnownComplex { complex, betti: h, torsion }
}

pub fn random_vector(rng: &mut StdRng, n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect()
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, entry: i64) -> IntMatrix {
    let v: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-entry..=entry)).collect();
    IntMatrix::from_i64(rows, cols, &v)
}
