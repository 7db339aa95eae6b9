mod common;

use common::{random_complex, random_matrix, random_vector, unimodular};
use lamring_core::algebra::RingPresentation;
use lamring_core::cohomology::{
    bw_cohomology, bw_complex, cohomology_of, diagram_harrison_bicomplex, e2_page, euler_characteristic, harrison_basis, harrison_cohomology,
    harrison_complex, hochschild_complex, psi_harrison_bicomplex, total_complex, AlgebraDiagram, Bicomplex, CochainComplex, CohomologyGroup,
    Coefficients, FinAlgebra, FiniteCategory, NaturalSystem,
};
use lamring_core::ktheory::{reduced_sphere_module, sphere_k_ring};
use lamring_core::linalg::{kernel_basis, rank, FgAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn assert_d_squared_zero(c: &CochainComplex) {
    for w in c.differentials().windows(2) {
        assert!(w[1].mul(&w[0]).is_zero());
    }
}

/// `Z[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
fn truncated_polynomials(n: usize) -> RingPresentation {
    let structure = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| BigInt::from(u8::from(i + j == k))).collect()).collect())
        .collect();
    let mut unit = vec![BigInt::zero(); n];
    unit[0] = BigInt::from(1);
    RingPresentation::new(names(n), unit, structure).unwrap()
}

#[test]
fn random_complexes_have_the_planted_cohomology() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let top = rng.gen_range(1..=4);
        let k = random_complex(&mut rng, top, 2);
        let h = cohomology_of(&k.complex);
        for n in 0..=top {
            let expected = FgAbGroup::from_cyclic_orders(k.betti[n], &k.torsion[n]);
            assert_eq!(h[n], CohomologyGroup::Integral(expected));
        }
        let q = cohomology_of(&k.complex.clone().rationalize());
        assert_eq!(q.iter().map(CohomologyGroup::dimension).collect::<Vec<_>>(), k.betti);
    }
}

/// Two columns `A → B` joined by a chain map `f = d s + s d (+ k·id when A = B)`.
fn mapping_bicomplex(rng: &mut StdRng, a: &CochainComplex, b: &CochainComplex, shift: Option<i64>) -> Bicomplex {
    let top = a.top_degree();
    assert_eq!(top, b.top_degree());
    let s: Vec<IntMatrix> = (0..=top + 1)
        .map(|q| if q == 0 || q > top { IntMatrix::zeros(0, 0) } else { random_matrix(rng, b.ranks()[q - 1], a.ranks()[q], 2) })
        .collect();
    let f: Vec<IntMatrix> = (0..=top)
        .map(|q| {
            let mut m = IntMatrix::zeros(b.ranks()[q], a.ranks()[q]);
            if q >= 1 {
                m = m.add(&b.differentials()[q - 1].mul(&s[q]));
            }
            if q < top {
                m = m.add(&s[q + 1].mul(&a.differentials()[q]));
            }
            if let Some(k) = shift {
                m = m.add(&IntMatrix::identity(a.ranks()[q]).scale(&BigInt::from(k)));
            }
            m
        })
        .collect();
    Bicomplex::new(
        Coefficients::Rationals,
        vec![a.ranks().to_vec(), b.ranks().to_vec()],
        vec![f],
        vec![a.differentials().to_vec(), b.differentials().to_vec()],
    )
    .unwrap()
}

fn total_dims(b: &Bicomplex) -> Vec<usize> {
    let t = total_complex(b).unwrap();
    assert_d_squared_zero(&t);
    cohomology_of(&t).iter().map(CohomologyGroup::dimension).collect()
}

fn e2_euler(e2: &[Vec<usize>]) -> i64 {
    let mut chi = 0;
    for (p, col) in e2.iter().enumerate() {
        for (q, &d) in col.iter().enumerate() {
            chi += if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) };
        }
    }
    chi
}

/// With at most two columns the spectral sequence stops at `E_2`.
fn assert_degenerates(e2: &[Vec<usize>], total: &[usize]) {
    for (n, &dim) in total.iter().enumerate() {
        let diag: usize = e2.iter().enumerate().filter_map(|(p, col)| n.checked_sub(p).and_then(|q| col.get(q))).sum();
        assert_eq!(diag, dim, "degree {n}");
    }
}

#[test]
fn e2_euler_characteristic_matches_total_on_random_bicomplexes() {
    let mut rng = StdRng::seed_from_u64(11);
    for case in 0..20 {
        let b = match case % 3 {
            0 => {
                let top = rng.gen_range(1..=2);
                let a = random_complex(&mut rng, top, 2);
                let top = rng.gen_range(1..=2);
                let c = random_complex(&mut rng, top, 2);
                let t = Bicomplex::tensor(&a.complex.clone().rationalize(), &c.complex.clone().rationalize());
                let e2 = e2_page(&t).unwrap();
                for (p, col) in e2.iter().enumerate() {
                    for (q, &d) in col.iter().enumerate() {
                        assert_eq!(d, a.betti[p] * c.betti[q], "Künneth at ({p},{q})");
                    }
                }
                t
            }
            1 => {
                let top = rng.gen_range(1..=3);
                let a = random_complex(&mut rng, top, 2);
                let c = random_complex(&mut rng, top, 2);
                mapping_bicomplex(&mut rng, &a.complex, &c.complex, None)
            }
            _ => {
                let top = rng.gen_range(1..=3);
                let a = random_complex(&mut rng, top, 2);
                let k = rng.gen_range(-2..=2);
                mapping_bicomplex(&mut rng, &a.complex, &a.complex, Some(k))
            }
        };
        assert!(b.check().is_ok());
        let e2 = e2_page(&b).unwrap();
        let total = total_dims(&b);
        let total_groups: Vec<CohomologyGroup> = total.iter().map(|&d| CohomologyGroup::Rational(d)).collect();
        assert_eq!(e2_euler(&e2), euler_characteristic(&total_groups), "case {case}");
        assert_degenerates(&e2, &total);
    }
}

#[test]
fn identity_mapping_bicomplex_is_acyclic() {
    let mut rng = StdRng::seed_from_u64(3);
    let a = random_complex(&mut rng, 3, 2);
    let b = mapping_bicomplex(&mut rng, &a.complex, &a.complex, Some(1));
    assert!(total_dims(&b).iter().all(|&d| d == 0));
}

fn map_for(cat: &FiniteCategory, f: impl Fn(usize, usize) -> IntMatrix) -> Vec<IntMatrix> {
    cat.morphisms().iter().map(|m| f(m.source, m.target)).collect()
}

#[test]
fn bw_cohomology_vanishes_with_an_initial_object() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..5 {
        let r: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
        let a = random_matrix(&mut rng, r[1], r[0], 3);
        let b = random_matrix(&mut rng, r[2], r[1], 3);
        let c = random_matrix(&mut rng, r[3], r[1], 3);

        let arrow = FiniteCategory::poset(names(2), &[(0, 1)]).unwrap();
        let arrow_maps = map_for(&arrow, |s, t| if s == t { IntMatrix::identity(r[s]) } else { a.clone() });
        let arrow_f = NaturalSystem::from_functor(&arrow, &r[..2], &arrow_maps).unwrap();

        let chain = FiniteCategory::poset(names(3), &[(0, 1), (1, 2)]).unwrap();
        let chain_maps = map_for(&chain, |s, t| match (s, t) {
            (s, t) if s == t => IntMatrix::identity(r[s]),
            (0, 1) => a.clone(),
            (1, 2) => b.clone(),
            _ => b.mul(&a),
        });
        let chain_f = NaturalSystem::from_functor(&chain, &r[..3], &chain_maps).unwrap();

        // F(2) = F(0) with F(0 → 2) = id, so F(2 → 3) = F(1 → 3) F(0 → 1).
        let square = FiniteCategory::poset(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let sq_ranks = [r[0], r[1], r[0], r[3]];
        let square_maps = map_for(&square, |s, t| match (s, t) {
            (s, t) if s == t => IntMatrix::identity(sq_ranks[s]),
            (0, 1) => a.clone(),
            (0, 2) => IntMatrix::identity(r[0]),
            (1, 3) => c.clone(),
            _ => c.mul(&a),
        });
        let square_f = NaturalSystem::from_functor(&square, &sq_ranks, &square_maps).unwrap();

        for (cat, f, h0) in [(&arrow, &arrow_f, r[0]), (&chain, &chain_f, r[0]), (&square, &square_f, r[0])] {
            assert_eq!(cat.initial_objects(), vec![0]);
            assert_d_squared_zero(&bw_complex(cat, f, 3).unwrap());
            let h = bw_cohomology(cat, f, 3).unwrap();
            assert_eq!(h[0], CohomologyGroup::Integral(FgAbGroup::free(h0)));
            assert!(h[1..].iter().all(CohomologyGroup::is_zero), "{h:?}");
        }
    }
}

#[test]
fn bw_without_initial_object_can_have_higher_cohomology() {
    // Two points joined by two zigzags: 0 → 2 ← 1 → 3 ← 0 has H^1 = Z.
    let cat = FiniteCategory::poset(names(4), &[(0, 2), (1, 2), (1, 3), (0, 3)]).unwrap();
    assert!(cat.initial_objects().is_empty());
    let h = bw_cohomology(&cat, &NaturalSystem::constant(&cat, 1), 2).unwrap();
    assert_eq!(h[0].to_string(), "Z");
    assert_eq!(h[1].to_string(), "Z");
}

/// Index of `f(a_1, …, a_q)_c` in the cochain coordinates.
fn cochain_index(args: &[usize], c: usize, n: usize, m: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a) * m + c
}

#[test]
fn harrison_bases_match_explicit_conditions() {
    for (n, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let mut rows2 = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for c in 0..m {
                    let mut row = vec![0i64; n * n * m];
                    row[cochain_index(&[x, y], c, n, m)] += 1;
                    row[cochain_index(&[y, x], c, n, m)] -= 1;
                    rows2.push(row);
                }
            }
        }
        let mut rows3 = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for c in 0..m {
                        let mut row = vec![0i64; n * n * n * m];
                        row[cochain_index(&[x, y, z], c, n, m)] += 1;
                        row[cochain_index(&[y, x, z], c, n, m)] -= 1;
                        row[cochain_index(&[y, z, x], c, n, m)] += 1;
                        rows3.push(row);
                    }
                }
            }
        }
        for (q, rows) in [(2, rows2), (3, rows3)] {
            let width = rows[0].len();
            let flat: Vec<i64> = rows.iter().flatten().copied().collect();
            let cond = IntMatrix::from_i64(rows.len(), width, &flat);
            let basis = harrison_basis(n, m, q);
            assert!(cond.mul(&basis).is_zero(), "degree {q}, n = {n}, m = {m}");
            assert_eq!(basis.cols(), width - rank(&cond), "degree {q}, n = {n}, m = {m}");
            assert_eq!(basis.cols(), kernel_basis(&cond).cols());
        }
    }
}

/// `dim Der(A, A)` from the Leibniz conditions on an unknown matrix `D`.
fn derivation_dimension(a: &RingPresentation) -> usize {
    let n = a.rank();
    let var = |row: usize, col: usize| row * n + col;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // D(e_i e_j) - e_i D(e_j) - e_j D(e_i) = 0, coordinate k.
            for k in 0..n {
                let mut row = vec![BigInt::zero(); n * n];
                for (l, c) in a.basis_product(i, j).iter().enumerate() {
                    row[var(k, l)] += c;
                }
                for l in 0..n {
                    row[var(l, j)] -= &a.basis_product(i, l)[k];
                    row[var(l, i)] -= &a.basis_product(j, l)[k];
                }
                rows.push(row);
            }
        }
    }
    let m = IntMatrix::from_rows(rows).unwrap();
    n * n - rank(&m)
}

#[test]
fn first_harrison_group_is_derivations() {
    for n in 2..=4 {
        let ring = truncated_polynomials(n);
        let der = derivation_dimension(&ring);
        let a = FinAlgebra::regular(Coefficients::Rationals, ring).unwrap();
        let h = harrison_cohomology(&a, 2).unwrap();
        assert_eq!(h[1].dimension(), der, "Z[x]/(x^{n})");
        assert_eq!(der, n - 1);
    }
}

#[test]
fn complexes_have_square_zero_differentials() {
    for n in 2..=3 {
        let a = FinAlgebra::regular(Coefficients::Rationals, truncated_polynomials(n)).unwrap();
        assert_d_squared_zero(&hochschild_complex(&a, 3).unwrap());
        assert_d_squared_zero(&harrison_complex(&a, 3).unwrap());
    }
    for (n, n2) in [(1, 1), (1, 2), (2, 3)] {
        let r = sphere_k_ring(n, 8).unwrap();
        let (_, m) = reduced_sphere_module(n2, 8).unwrap();
        let ph = psi_harrison_bicomplex(r.psi(), &m, 8, 2).unwrap();
        assert!(ph.bicomplex.check().is_ok());
        assert_d_squared_zero(&total_complex(&ph.bicomplex).unwrap());
    }
}

fn chain_diagram() -> AlgebraDiagram {
    let cat = FiniteCategory::poset(names(3), &[(0, 1), (1, 2)]).unwrap();
    let ring = truncated_polynomials(2);
    let regular = FinAlgebra::regular(Coefficients::Rationals, ring.clone()).unwrap();
    let phi = map_for(&cat, |s, t| {
        let scale = [1, 2, 6];
        IntMatrix::from_i64(2, 2, &[1, 0, 0, scale[t] / scale[s]])
    });
    AlgebraDiagram::new(cat, vec![ring; 3], phi.clone(), vec![(names(2), regular.action().to_vec()); 3], phi).unwrap()
}

#[test]
fn diagram_differentials_commute_on_random_cochains() {
    let d = chain_diagram();
    let b = diagram_harrison_bicomplex(&d, 2, 2).unwrap();
    assert!(b.check().is_ok());
    assert_d_squared_zero(&total_complex(&b).unwrap());
    let (cols, rows) = b.dims();
    let mut rng = StdRng::seed_from_u64(13);
    let mut tested = 0;
    while tested < 50 {
        let p = rng.gen_range(0..cols - 1);
        let q = rng.gen_range(0..rows - 1);
        let x = random_vector(&mut rng, b.rank_at(p, q));
        let hv = b.horizontal(p, q + 1).apply(&b.vertical(p, q).apply(&x));
        let vh = b.vertical(p + 1, q).apply(&b.horizontal(p, q).apply(&x));
        assert_eq!(hv, vh, "({p},{q})");
        tested += 1;
    }
}

#[test]
fn conjugated_complexes_keep_their_cohomology() {
    let mut rng = StdRng::seed_from_u64(17);
    let k = random_complex(&mut rng, 3, 2);
    let ranks = k.complex.ranks().to_vec();
    let changes: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| unimodular(&mut rng, r)).collect();
    let diffs: Vec<IntMatrix> = k.complex.differentials().iter().enumerate().map(|(n, d)| changes[n + 1].0.mul(d).mul(&changes[n].1)).collect();
    let c = CochainComplex::new(Coefficients::Integers, ranks, diffs).unwrap();
    assert_eq!(cohomology_of(&c), cohomology_of(&k.complex));
}
