//! Hochschild and Harrison cochains of finite commutative algebras, for a
//! single algebra, for diagrams of algebras and for Ψ-rings.
//!
//! A `q`-cochain is stored by its values `f(e_{a_1}, …, e_{a_q}) ∈ M` with
//! coordinate index `(a_1 … a_q) · m + c`, tuples in lexicographic order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bw::{add_block, bw_differential, FiniteCategory};
use super::{cohomology_of, total_complex, Bicomplex, CochainComplex, Coefficients, CohomologyGroup};
use crate::algebra::{CommRing, RingPresentation};
use crate::linalg::{kernel_basis, saturated_left_inverse, IntMatrix};
use crate::psi::{check_module_action, PsiModule, PsiStructure};
use crate::CohomologyError;

/// A commutative algebra of finite rank with a symmetric module `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    coefficients: Coefficients,
    algebra: RingPresentation,
    module_names: Vec<String>,
    action: Vec<IntMatrix>,
}

impl FinAlgebra {
    /// `action[a]` is the matrix of `e_a` acting on `M`.
    pub fn new(coefficients: Coefficients, algebra: RingPresentation, module_names: Vec<String>, action: Vec<IntMatrix>) -> Result<Self, CohomologyError> {
        let mut report = algebra.check_axioms();
        report.merge(check_module_action(&algebra, &module_names, &action));
        if let Some(v) = report.violations.first() {
            return Err(CohomologyError::Invalid(format!("{}: {}", v.condition, v.detail)));
        }
        Ok(FinAlgebra { coefficients, algebra, module_names, action })
    }

    /// `A` as a module over itself.
    pub fn regular(coefficients: Coefficients, algebra: RingPresentation) -> Result<Self, CohomologyError> {
        let action = (0..algebra.rank()).map(|i| algebra.action_matrix(&algebra.basis(i))).collect();
        let names = algebra.names().to_vec();
        Self::new(coefficients, algebra, names, action)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn algebra(&self) -> &RingPresentation {
        &self.algebra
    }

    pub fn module_rank(&self) -> usize {
        self.module_names.len()
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }
}

fn tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..q {
        out = out.into_iter().flat_map(|t| (0..n).map(move |a| {
            let mut t = t.clone();
            t.push(a);
            t
        })).collect();
    }
    out
}

fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &a| acc * n + a)
}

fn pow(n: usize, q: usize) -> usize {
    (0..q).fold(1, |acc, _| acc * n)
}

/// Hochschild coboundary `C^q(A, M) → C^{q+1}(A, M)` for a symmetric
/// action given by one matrix per basis element.
pub fn hochschild_differential(algebra: &RingPresentation, action: &[IntMatrix], q: usize) -> IntMatrix {
    let n = algebra.rank();
    let m = action.first().map_or(0, IntMatrix::rows);
    let mut d = IntMatrix::zeros(pow(n, q + 1) * m, pow(n, q) * m);
    for t in tuples(n, q + 1) {
        let row = tuple_index(&t, n) * m;
        let first = tuple_index(&t[1..], n) * m;
        add_block(&mut d, row, first, &action[t[0]]);
        for i in 0..q {
            let sign = if i % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            let prod = algebra.basis_product(t[i], t[i + 1]);
            for (c, coeff) in prod.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut s = t[..i].to_vec();
                s.push(c);
                s.extend_from_slice(&t[i + 2..]);
                add_block(&mut d, row, tuple_index(&s, n) * m, &IntMatrix::identity(m).scale(&(coeff * &sign)));
            }
        }
        let last = tuple_index(&t[..q], n) * m;
        let a = &action[t[q]];
        add_block(&mut d, row, last, &if q % 2 == 0 { a.neg() } else { a.clone() });
    }
    d
}

/// `C^0 … C^{n_max + 1}` of the Hochschild complex.
pub fn hochschild_complex(a: &FinAlgebra, n_max: usize) -> Result<CochainComplex, CohomologyError> {
    let n = a.algebra.rank();
    let m = a.module_rank();
    let ranks = (0..=n_max + 1).map(|q| pow(n, q) * m).collect();
    let diffs = (0..=n_max).map(|q| hochschild_differential(&a.algebra, &a.action, q)).collect();
    CochainComplex::new(a.coefficients, ranks, diffs)
}

pub fn hochschild_cohomology(a: &FinAlgebra, n_max: usize) -> Result<Vec<CohomologyGroup>, CohomologyError> {
    let mut h = cohomology_of(&hochschild_complex(a, n_max)?);
    h.truncate(n_max + 1);
    Ok(h)
}

/// All `(p, q)`-shuffles `σ`, as the lists `[σ(1), …, σ(p+q)]`.
pub fn shuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let firsts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| i + 1).collect();
        let mut sigma = firsts;
        sigma.extend(rest);
        out.push(sigma);
    }
    out.sort();
    out
}

pub fn permutation_sign(sigma: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rows spanning the shuffle products `Σ sgn(σ) σ·(a_1, …, a_deg)` in the
/// chain space with basis the tuples of algebra basis elements.
pub fn shuffle_relations(a: &FinAlgebra, deg: usize) -> IntMatrix {
    shuffle_relations_for_rank(a.algebra.rank(), deg)
}

fn shuffle_relations_for_rank(n: usize, deg: usize) -> IntMatrix {
    let cols = pow(n, deg);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for p in 1..deg {
        let shs = shuffles(p, deg - p);
        for t in tuples(n, deg) {
            let mut row = vec![BigInt::zero(); cols];
            for sigma in &shs {
                let mut inv = vec![0; deg];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s - 1] = i;
                }
                let permuted: Vec<usize> = (0..deg).map(|k| t[inv[k]]).collect();
                row[tuple_index(&permuted, n)] += permutation_sign(sigma);
            }
            if row.iter().any(|v| !v.is_zero()) && !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(rows).expect("rows share one length")
}

/// Columns spanning the saturated lattice of Harrison cochains in `C^q`.
pub fn harrison_basis(n: usize, m: usize, q: usize) -> IntMatrix {
    let dim = pow(n, q) * m;
    if q < 2 || m == 0 {
        return IntMatrix::identity(dim);
    }
    let rel = shuffle_relations_for_rank(n, q);
    if rel.rows() == 0 {
        return IntMatrix::identity(dim);
    }
    kernel_basis(&rel).kronecker(&IntMatrix::identity(m))
}

/// Harrison cochain bases in degrees `0..=hi` with left inverses for restriction.
struct HarrisonData {
    bases: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
}

impl HarrisonData {
    fn new(n: usize, m: usize, hi: usize) -> Result<Self, CohomologyError> {
        let bases: Vec<IntMatrix> = (0..=hi).map(|q| harrison_basis(n, m, q)).collect();
        let inverses = bases
            .iter()
            .map(|b| if b.cols() == 0 { Ok(IntMatrix::zeros(0, b.rows())) } else { saturated_left_inverse(b) })
            .collect::<Result<_, _>>()?;
        Ok(HarrisonData { bases, inverses })
    }

    /// Expresses `map ∘ basis_q` in the Harrison basis of the target degree.
    fn restrict(&self, map: &IntMatrix, from: usize, to: usize) -> Result<IntMatrix, CohomologyError> {
        let image = map.mul(&self.bases[from]);
        let coords = self.inverses[to].mul(&image);
        if self.bases[to].mul(&coords) != image {
            return Err(CohomologyError::Invalid(format!("map leaves the Harrison subspace in degree {to}")));
        }
        Ok(coords)
    }
}

fn harrison_differentials(algebra: &RingPresentation, action: &[IntMatrix], data: &HarrisonData, lo: usize, hi: usize) -> Result<Vec<IntMatrix>, CohomologyError> {
    (lo..hi).map(|q| data.restrict(&hochschild_differential(algebra, action, q), q, q + 1)).collect()
}

/// `C^0_Harr … C^{n_max + 1}_Harr`.
pub fn harrison_complex(a: &FinAlgebra, n_max: usize) -> Result<CochainComplex, CohomologyError> {
    let data = HarrisonData::new(a.algebra.rank(), a.module_rank(), n_max + 1)?;
    let diffs = harrison_differentials(&a.algebra, &a.action, &data, 0, n_max + 1)?;
    let ranks = data.bases.iter().map(IntMatrix::cols).collect();
    CochainComplex::new(Coefficients::Rationals, ranks, diffs)
}

pub fn harrison_cohomology(a: &FinAlgebra, n_max: usize) -> Result<Vec<CohomologyGroup>, CohomologyError> {
    let mut h = cohomology_of(&harrison_complex(a, n_max)?);
    h.truncate(n_max + 1);
    Ok(h)
}

/// Precomposition with an algebra map `φ: A' → A` on `C^q(A, M)`.
fn pull_matrix(phi: &IntMatrix, m: usize, q: usize) -> IntMatrix {
    let t = phi.transpose();
    (0..q).fold(IntMatrix::identity(1), |acc, _| acc.kronecker(&t)).kronecker(&IntMatrix::identity(m))
}

/// Postcomposition with a module map `μ: M → M'` on `C^q(A, M)`.
fn push_matrix(mu: &IntMatrix, n: usize, q: usize) -> IntMatrix {
    IntMatrix::identity(pow(n, q)).kronecker(mu)
}

/// A diagram of commutative algebras over a finite category with a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDiagram {
    pub category: FiniteCategory,
    pub algebras: Vec<RingPresentation>,
    /// `A(α)` as a matrix from `A(source)` to `A(target)`.
    pub algebra_maps: Vec<IntMatrix>,
    pub modules: Vec<(Vec<String>, Vec<IntMatrix>)>,
    pub module_maps: Vec<IntMatrix>,
}

impl AlgebraDiagram {
    pub fn new(
        category: FiniteCategory,
        algebras: Vec<RingPresentation>,
        algebra_maps: Vec<IntMatrix>,
        modules: Vec<(Vec<String>, Vec<IntMatrix>)>,
        module_maps: Vec<IntMatrix>,
    ) -> Result<Self, CohomologyError> {
        let d = AlgebraDiagram { category, algebras, algebra_maps, modules, module_maps };
        d.check()?;
        Ok(d)
    }

    /// The same algebra and module at every object, with identity maps.
    pub fn constant(category: FiniteCategory, algebra: &FinAlgebra) -> Result<Self, CohomologyError> {
        let objs = category.objects().len();
        let k = category.morphisms().len();
        let n = algebra.algebra.rank();
        let m = algebra.module_rank();
        Self::new(
            category,
            vec![algebra.algebra.clone(); objs],
            vec![IntMatrix::identity(n); k],
            vec![(algebra.module_names.clone(), algebra.action.clone()); objs],
            vec![IntMatrix::identity(m); k],
        )
    }

    fn check(&self) -> Result<(), CohomologyError> {
        let cat = &self.category;
        let ms = cat.morphisms();
        let objs = cat.objects().len();
        if self.algebras.len() != objs || self.modules.len() != objs || self.algebra_maps.len() != ms.len() || self.module_maps.len() != ms.len() {
            return Err(CohomologyError::Shape("one algebra and module per object, one map pair per morphism".into()));
        }
        for i in 0..objs {
            let mut r = self.algebras[i].check_axioms();
            r.merge(check_module_action(&self.algebras[i], &self.modules[i].0, &self.modules[i].1));
            if let Some(v) = r.violations.first() {
                return Err(CohomologyError::Invalid(format!("object {}: {}", cat.objects()[i], v.detail)));
            }
        }
        let bad = |s: String| Err(CohomologyError::NotFunctorial(s));
        for (f, mf) in ms.iter().enumerate() {
            let (a_s, a_t) = (&self.algebras[mf.source], &self.algebras[mf.target]);
            let (phi, mu) = (&self.algebra_maps[f], &self.module_maps[f]);
            if phi.rows() != a_t.rank() || phi.cols() != a_s.rank() || mu.rows() != self.modules[mf.target].0.len() || mu.cols() != self.modules[mf.source].0.len() {
                return Err(CohomologyError::Shape(format!("maps of {} have the wrong size", mf.name)));
            }
            if cat.is_identity(f) && (!phi.is_identity() || !mu.is_identity()) {
                return bad(format!("{} is not sent to identities", mf.name));
            }
            if phi.apply(a_s.unit()) != *a_t.unit() {
                return bad(format!("A({}) does not preserve 1", mf.name));
            }
            for a in 0..a_s.rank() {
                let pa = phi.apply(&a_s.basis(a));
                for b in 0..a_s.rank() {
                    let pb = phi.apply(&a_s.basis(b));
                    if phi.apply(a_s.basis_product(a, b)) != a_t.mul(&pa, &pb) {
                        return bad(format!("A({}) is not multiplicative", mf.name));
                    }
                }
                let act_t = act(&self.modules[mf.target].1, &pa, mu.rows());
                if mu.mul(&self.modules[mf.source].1[a]) != act_t.mul(mu) {
                    return bad(format!("M({}) is not A-linear", mf.name));
                }
            }
            for (g, _) in ms.iter().enumerate() {
                if let Some(gf) = cat.compose(g, f) {
                    if self.algebra_maps[gf] != self.algebra_maps[g].mul(phi) || self.module_maps[gf] != self.module_maps[g].mul(mu) {
                        return bad(format!("composition through {}", mf.name));
                    }
                }
            }
        }
        Ok(())
    }

    /// `A(i)` acting on `M(j)` through `A(α)` for `α: i → j`.
    fn pulled_action(&self, f: usize) -> Vec<IntMatrix> {
        let mf = &self.category.morphisms()[f];
        let a_s = &self.algebras[mf.source];
        let m = self.modules[mf.target].0.len();
        (0..a_s.rank()).map(|a| act(&self.modules[mf.target].1, &self.algebra_maps[f].apply(&a_s.basis(a)), m)).collect()
    }
}

fn act(action: &[IntMatrix], x: &[BigInt], m: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(m, m);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&action[i].scale(c));
        }
    }
    out
}

/// `C^{p,q} = ∏_{α_1 … α_p} C^{q+1}_Harr(A(i_p), α^* M(i_0))` for
/// `p <= p_max`, `q <= q_max`, with the Baues-Wirsching coboundary in `p`
/// and the Harrison coboundary in `q`.
pub fn diagram_harrison_bicomplex(d: &AlgebraDiagram, p_max: usize, q_max: usize) -> Result<Bicomplex, CohomologyError> {
    let cat = &d.category;
    let ms = cat.morphisms();
    let k = ms.len();
    let dims: Vec<(usize, usize)> = (0..k).map(|f| (d.algebras[ms[f].source].rank(), d.modules[ms[f].target].0.len())).collect();
    let mut data: BTreeMap<(usize, usize), HarrisonData> = BTreeMap::new();
    for &(n, m) in &dims {
        if let alloc::collections::btree_map::Entry::Vacant(e) = data.entry((n, m)) {
            e.insert(HarrisonData::new(n, m, q_max + 1)?);
        }
    }
    let basis_rank = |f: usize, q: usize| data[&dims[f]].bases[q + 1].cols();
    let ranks: Vec<Vec<usize>> =
        (0..=p_max).map(|p| (0..=q_max).map(|q| cat.chains(p).iter().map(|(_, c)| basis_rank(*c, q)).sum()).collect()).collect();
    let mut horizontal = Vec::new();
    for p in 0..p_max {
        let mut col = Vec::new();
        for q in 0..=q_max {
            let deg = q + 1;
            let rank = |f: usize| basis_rank(f, q);
            let push = |a: usize, f: usize| {
                let af = cat.compose(a, f).expect("composable");
                let (n, _) = dims[f];
                let raw = push_matrix(&d.module_maps[a], n, deg);
                let src = &data[&dims[f]];
                let tgt = &data[&dims[af]];
                tgt.inverses[deg].mul(&raw).mul(&src.bases[deg])
            };
            let pull = |f: usize, b: usize| {
                let fb = cat.compose(f, b).expect("composable");
                let (_, m) = dims[f];
                let raw = pull_matrix(&d.algebra_maps[b], m, deg);
                let src = &data[&dims[f]];
                let tgt = &data[&dims[fb]];
                tgt.inverses[deg].mul(&raw).mul(&src.bases[deg])
            };
            col.push(bw_differential(cat, p, &rank, &push, &pull));
        }
        horizontal.push(col);
    }
    let mut vertical = Vec::new();
    for p in 0..=p_max {
        let chains = cat.chains(p);
        let mut col = Vec::new();
        for q in 0..q_max {
            let blocks = chains
                .iter()
                .map(|(_, f)| {
                    let mf = &ms[*f];
                    let h = &data[&dims[*f]];
                    h.restrict(&hochschild_differential(&d.algebras[mf.source], &d.pulled_action(*f), q + 1), q + 1, q + 2)
                })
                .collect::<Result<Vec<_>, _>>()?;
            col.push(IntMatrix::block_diagonal(&blocks));
        }
        vertical.push(col);
    }
    Bicomplex::new(Coefficients::Rationals, ranks, horizontal, vertical)
}

/// `H^n(Tot)` of the diagram bicomplex for `n = 0..=n_max`.
pub fn diagram_harrison_cohomology(d: &AlgebraDiagram, n_max: usize) -> Result<Vec<CohomologyGroup>, CohomologyError> {
    let b = diagram_harrison_bicomplex(d, n_max + 1, n_max + 1)?;
    let mut h = cohomology_of(&total_complex(&b)?.truncated(n_max + 1));
    h.truncate(n_max + 1);
    Ok(h)
}

/// Tuples `(t_1, …, t_p)` with `t_i >= 2` and `t_1 ⋯ t_p <= bound`, in
/// lexicographic order.
pub fn index_tuples(p: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![(Vec::new(), 1u32)];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|(t, prod)| {
                (2..=bound / prod).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    (t, prod * x)
                })
            })
            .collect();
    }
    let mut tuples: Vec<Vec<u32>> = out.into_iter().map(|(t, _)| t).collect();
    tuples.sort();
    tuples
}

#[derive(Clone, Debug)]
pub struct PsiHarrison {
    pub bicomplex: Bicomplex,
    /// Degrees where truncation makes the total cohomology unreliable.
    pub notes: Vec<String>,
    pub index_bound: u32,
}

/// The truncated Ψ-Harrison bicomplex: column `p` is indexed by `p`-tuples of
/// integers `>= 2` with product at most `index_bound`, row `q` is
/// `C^{q+1}_Harr(R, t^* M)` with `r · m = Ψ^t(r) m`.
pub fn psi_harrison_bicomplex(r: &PsiStructure, m: &PsiModule, index_bound: u32, n_max: usize) -> Result<PsiHarrison, CohomologyError> {
    if index_bound > r.bound() || index_bound > m.bound() {
        return Err(CohomologyError::Invalid(format!(
            "index bound {index_bound} exceeds the Adams operations provided (ring {}, module {})",
            r.bound(),
            m.bound()
        )));
    }
    let ring = r.ring();
    let n = ring.rank();
    let mr = m.rank();
    let data = HarrisonData::new(n, mr, n_max + 2)?;
    let mut p_top = 0;
    while !index_tuples(p_top + 1, index_bound).is_empty() {
        p_top += 1;
    }
    let columns: Vec<Vec<Vec<u32>>> = (0..=p_top).map(|p| index_tuples(p, index_bound)).collect();
    let composite = |t: &[u32]| t.iter().product::<u32>();
    let psi_r = |t: u32| if t == 1 { IntMatrix::identity(n) } else { r.ops()[t as usize - 1].clone() };
    let psi_m = |t: u32| if t == 1 { IntMatrix::identity(mr) } else { m.ops()[t as usize - 1].clone() };
    let action_for = |t: u32| -> Vec<IntMatrix> { (0..n).map(|a| m.act(&psi_r(t).apply(&ring.basis(a)))).collect() };
    let block = |q: usize| data.bases[q + 1].cols();
    let ranks: Vec<Vec<usize>> = columns.iter().map(|c| (0..=n_max).map(|q| c.len() * block(q)).collect()).collect();

    let mut vertical = Vec::new();
    let mut actions: BTreeMap<u32, Vec<IntMatrix>> = BTreeMap::new();
    for c in &columns {
        let mut col = Vec::new();
        for q in 0..n_max {
            let mut blocks = Vec::new();
            for t in c {
                let act = actions.entry(composite(t)).or_insert_with(|| action_for(composite(t)));
                blocks.push(data.restrict(&hochschild_differential(ring, act, q + 1), q + 1, q + 2)?);
            }
            col.push(IntMatrix::block_diagonal(&blocks));
        }
        vertical.push(col);
    }

    let mut horizontal = Vec::new();
    for p in 0..p_top {
        let src = &columns[p];
        let tgt = &columns[p + 1];
        let index: BTreeMap<&Vec<u32>, usize> = src.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut col = Vec::new();
        for q in 0..=n_max {
            let deg = q + 1;
            let w = block(q);
            let restrict = |raw: &IntMatrix| data.inverses[deg].mul(raw).mul(&data.bases[deg]);
            let mut b = IntMatrix::zeros(tgt.len() * w, src.len() * w);
            for (row, t) in tgt.iter().enumerate() {
                let r0 = row * w;
                add_block(&mut b, r0, index[&t[1..].to_vec()] * w, &restrict(&push_matrix(&psi_m(t[0]), n, deg)));
                for k in 1..=p {
                    let mut merged = t[..k - 1].to_vec();
                    merged.push(t[k - 1] * t[k]);
                    merged.extend_from_slice(&t[k + 1..]);
                    let id = IntMatrix::identity(w);
                    add_block(&mut b, r0, index[&merged] * w, &if k % 2 == 0 { id } else { id.neg() });
                }
                let pulled = restrict(&pull_matrix(&psi_r(t[p]), mr, deg));
                add_block(&mut b, r0, index[&t[..p].to_vec()] * w, &if p % 2 == 1 { pulled } else { pulled.neg() });
            }
            col.push(b);
        }
        horizontal.push(col);
    }
    let bicomplex = Bicomplex::new(Coefficients::Rationals, ranks, horizontal, vertical)?;
    let notes = vec![
        format!("columns restricted to index tuples with entries >= 2 and product <= {index_bound}"),
        format!("rows stop at C^{}_Harr; total degrees above {} omit the next row", n_max + 1, n_max.saturating_sub(1)),
    ];
    Ok(PsiHarrison { bicomplex, notes, index_bound })
}

/// Total cohomology of the truncated Ψ-Harrison bicomplex in degrees
/// `0..n_max`, where no row is missing.
pub fn psi_harrison_cohomology(r: &PsiStructure, m: &PsiModule, index_bound: u32, n_max: usize) -> Result<(Vec<CohomologyGroup>, PsiHarrison), CohomologyError> {
    let ph = psi_harrison_bicomplex(r, m, index_bound, n_max)?;
    let mut h = cohomology_of(&total_complex(&ph.bicomplex)?.truncated(n_max));
    h.truncate(n_max);
    Ok((h, ph))
}
