//! Finite categories, natural systems and Baues-Wirsching cohomology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{cohomology_of, CochainComplex, Coefficients, CohomologyGroup};
use crate::linalg::IntMatrix;
use crate::CohomologyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A category with finitely many morphisms and a full composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` when `target(f) = source(g)`.
    compose: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    /// `table` lists `(g, f, g ∘ f)` for every composable pair.
    pub fn new(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<usize>, table: &[(usize, usize, usize)]) -> Result<Self, CohomologyError> {
        let k = morphisms.len();
        let n = objects.len();
        if identities.len() != n || identities.iter().any(|&i| i >= k) || morphisms.iter().any(|m| m.source >= n || m.target >= n) {
            return Err(CohomologyError::Shape("objects, morphisms and identities do not match".into()));
        }
        let mut compose = vec![vec![None; k]; k];
        for &(g, f, gf) in table {
            if g >= k || f >= k || gf >= k {
                return Err(CohomologyError::Shape(format!("composition ({g}, {f}) refers to an unknown morphism")));
            }
            if morphisms[f].target != morphisms[g].source {
                return Err(CohomologyError::Invalid(format!("{} ∘ {} is not composable", morphisms[g].name, morphisms[f].name)));
            }
            if morphisms[gf].source != morphisms[f].source || morphisms[gf].target != morphisms[g].target {
                return Err(CohomologyError::Invalid(format!("{} ∘ {} has the wrong endpoints", morphisms[g].name, morphisms[f].name)));
            }
            compose[g][f] = Some(gf);
        }
        let cat = FiniteCategory { objects, morphisms, identities, compose };
        cat.check()?;
        Ok(cat)
    }

    /// The poset on `objects` generated by `relations` `(i, j)` meaning
    /// `i ≤ j`, with one morphism `i → j` for each `i ≤ j`.
    pub fn poset(objects: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, CohomologyError> {
        let n = objects.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(CohomologyError::Shape("relation refers to an unknown object".into()));
            }
            le[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(CohomologyError::Invalid("relations contain a cycle".into()));
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    let name = if i == j { format!("id_{}", objects[i]) } else { format!("{}→{}", objects[i], objects[j]) };
                    index.insert((i, j), morphisms.len());
                    morphisms.push(Morphism { name, source: i, target: j });
                }
            }
        }
        let identities = (0..n).map(|i| index[&(i, i)]).collect();
        let mut table = Vec::new();
        for (&(i, j), &f) in &index {
            for (&(j2, k), &g) in &index {
                if j2 == j {
                    table.push((g, f, index[&(i, k)]));
                }
            }
        }
        Self::new(objects, morphisms, identities, &table)
    }

    fn check(&self) -> Result<(), CohomologyError> {
        let k = self.morphisms.len();
        for f in 0..k {
            for g in 0..k {
                if self.morphisms[f].target == self.morphisms[g].source && self.compose[g][f].is_none() {
                    return Err(CohomologyError::Invalid(format!("missing composite {} ∘ {}", self.morphisms[g].name, self.morphisms[f].name)));
                }
            }
            let m = &self.morphisms[f];
            if self.compose[self.identities[m.target]][f] != Some(f) || self.compose[f][self.identities[m.source]] != Some(f) {
                return Err(CohomologyError::Invalid(format!("identities do not act trivially on {}", m.name)));
            }
        }
        for f in 0..k {
            for g in 0..k {
                let Some(gf) = self.compose[g][f] else { continue };
                for h in 0..k {
                    let Some(hg) = self.compose[h][g] else { continue };
                    if self.compose[h][gf] != self.compose[hg][f] {
                        return Err(CohomologyError::Invalid("composition is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Composable chains `α_1 … α_n` with `α_j: i_j → i_{j-1}`, together with
    /// their composites. Degree `0` lists the identities.
    pub fn chains(&self, n: usize) -> Vec<(Vec<usize>, usize)> {
        if n == 0 {
            return self.identities.iter().map(|&i| (vec![i], i)).collect();
        }
        let mut out: Vec<(Vec<usize>, usize)> = (0..self.morphisms.len()).map(|f| (vec![f], f)).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for (chain, comp) in &out {
                let last = *chain.last().expect("chains are nonempty");
                for b in 0..self.morphisms.len() {
                    if self.morphisms[b].target == self.morphisms[last].source {
                        let mut c = chain.clone();
                        c.push(b);
                        next.push((c, self.compose[*comp][b].expect("checked at construction")));
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Objects `i` with exactly one morphism `i → j` for every `j`.
    pub fn initial_objects(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&i| (0..self.objects.len()).all(|j| self.morphisms.iter().filter(|m| m.source == i && m.target == j).count() == 1))
            .collect()
    }
}

/// A functor on the factorization category: free groups `D(f)` with
/// `a_*: D(f) → D(a f)` and `b^*: D(f) → D(f b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSystem {
    ranks: Vec<usize>,
    push: BTreeMap<(usize, usize), IntMatrix>,
    pull: BTreeMap<(usize, usize), IntMatrix>,
}

impl NaturalSystem {
    /// `push[(a, f)]` and `pull[(f, b)]` must be given for every composable pair.
    pub fn new(
        cat: &FiniteCategory,
        ranks: Vec<usize>,
        push: BTreeMap<(usize, usize), IntMatrix>,
        pull: BTreeMap<(usize, usize), IntMatrix>,
    ) -> Result<Self, CohomologyError> {
        let d = NaturalSystem { ranks, push, pull };
        d.check(cat)?;
        Ok(d)
    }

    /// A functor `F` viewed as a natural system: `D(f) = F(target f)`.
    pub fn from_functor(cat: &FiniteCategory, ranks: &[usize], maps: &[IntMatrix]) -> Result<Self, CohomologyError> {
        let ms = cat.morphisms();
        if ranks.len() != cat.objects().len() || maps.len() != ms.len() {
            return Err(CohomologyError::Shape("one rank per object and one matrix per morphism".into()));
        }
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        for (f, mf) in ms.iter().enumerate() {
            for (a, ma) in ms.iter().enumerate() {
                if ma.source == mf.target {
                    push.insert((a, f), maps[a].clone());
                }
                if ma.target == mf.source {
                    pull.insert((f, a), IntMatrix::identity(ranks[mf.target]));
                }
            }
        }
        Self::new(cat, ms.iter().map(|m| ranks[m.target]).collect(), push, pull)
    }

    /// The constant natural system `Z^r` with identity maps.
    pub fn constant(cat: &FiniteCategory, r: usize) -> Self {
        let maps = vec![IntMatrix::identity(r); cat.morphisms().len()];
        Self::from_functor(cat, &vec![r; cat.objects().len()], &maps).expect("constant functors are functorial")
    }

    pub fn rank(&self, f: usize) -> usize {
        self.ranks[f]
    }

    pub fn push(&self, a: usize, f: usize) -> &IntMatrix {
        &self.push[&(a, f)]
    }

    pub fn pull(&self, f: usize, b: usize) -> &IntMatrix {
        &self.pull[&(f, b)]
    }

    fn check(&self, cat: &FiniteCategory) -> Result<(), CohomologyError> {
        let ms = cat.morphisms();
        let k = ms.len();
        let bad = |s: String| Err(CohomologyError::NotFunctorial(s));
        if self.ranks.len() != k {
            return Err(CohomologyError::Shape("one rank per morphism".into()));
        }
        for f in 0..k {
            for a in 0..k {
                if ms[a].source == ms[f].target {
                    let af = cat.compose(a, f).expect("composable");
                    match self.push.get(&(a, f)) {
                        Some(m) if m.cols() == self.ranks[f] && m.rows() == self.ranks[af] => {}
                        _ => return Err(CohomologyError::Shape(format!("push ({}, {}) missing or of the wrong size", ms[a].name, ms[f].name))),
                    }
                }
                if ms[a].target == ms[f].source {
                    let fa = cat.compose(f, a).expect("composable");
                    match self.pull.get(&(f, a)) {
                        Some(m) if m.cols() == self.ranks[f] && m.rows() == self.ranks[fa] => {}
                        _ => return Err(CohomologyError::Shape(format!("pull ({}, {}) missing or of the wrong size", ms[f].name, ms[a].name))),
                    }
                }
            }
        }
        for f in 0..k {
            let (s, t) = (ms[f].source, ms[f].target);
            if !self.push(cat.identity(t), f).is_identity() || !self.pull(f, cat.identity(s)).is_identity() {
                return bad(format!("identities do not act trivially on D({})", ms[f].name));
            }
            for a in 0..k {
                let Some(af) = cat.compose(a, f) else { continue };
                for a2 in 0..k {
                    let Some(a2a) = cat.compose(a2, a) else { continue };
                    let lhs = self.push(a2a, f);
                    let rhs = self.push(a2, af).mul(self.push(a, f));
                    if *lhs != rhs {
                        return bad(format!("push along {} ∘ {} on D({})", ms[a2].name, ms[a].name, ms[f].name));
                    }
                }
                for b in 0..k {
                    let Some(fb) = cat.compose(f, b) else { continue };
                    let lhs = self.pull(af, b).mul(self.push(a, f));
                    let rhs = self.push(a, fb).mul(self.pull(f, b));
                    if lhs != rhs {
                        return bad(format!("push along {} and pull along {} do not commute on D({})", ms[a].name, ms[b].name, ms[f].name));
                    }
                }
            }
            for b in 0..k {
                let Some(fb) = cat.compose(f, b) else { continue };
                for b2 in 0..k {
                    let Some(bb2) = cat.compose(b, b2) else { continue };
                    let lhs = self.pull(f, bb2);
                    let rhs = self.pull(fb, b2).mul(self.pull(f, b));
                    if *lhs != rhs {
                        return bad(format!("pull along {} ∘ {} on D({})", ms[b].name, ms[b2].name, ms[f].name));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Offsets of each chain's block in `C^n = ∏ D(α_1 … α_n)`.
pub(crate) fn chain_offsets(chains: &[(Vec<usize>, usize)], rank: impl Fn(usize) -> usize) -> (BTreeMap<Vec<usize>, usize>, usize) {
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for (c, comp) in chains {
        offsets.insert(c.clone(), total);
        total += rank(*comp);
    }
    (offsets, total)
}

/// The coboundary `C^n → C^{n+1}` for any coefficient system given by its
/// ranks and push/pull matrices.
pub(crate) fn bw_differential(
    cat: &FiniteCategory,
    n: usize,
    rank: &dyn Fn(usize) -> usize,
    push: &dyn Fn(usize, usize) -> IntMatrix,
    pull: &dyn Fn(usize, usize) -> IntMatrix,
) -> IntMatrix {
    let source = cat.chains(n);
    let target = cat.chains(n + 1);
    let (src_off, src_total) = chain_offsets(&source, rank);
    let (_, tgt_total) = chain_offsets(&target, rank);
    let mut d = IntMatrix::zeros(tgt_total, src_total);
    let ms = cat.morphisms();
    let mut row = 0;
    for (chain, comp) in &target {
        let r = rank(*comp);
        let (rest, front) = if n == 0 {
            (vec![cat.identity(ms[chain[0]].source)], vec![cat.identity(ms[chain[0]].target)])
        } else {
            (chain[1..].to_vec(), chain[..n].to_vec())
        };
        let rest_comp = if n == 0 { rest[0] } else { compose_chain(cat, &rest) };
        let front_comp = if n == 0 { front[0] } else { compose_chain(cat, &front) };
        add_block(&mut d, row, src_off[&rest], &push(chain[0], rest_comp));
        for j in 1..=n {
            let mut merged = chain[..j - 1].to_vec();
            merged.push(cat.compose(chain[j - 1], chain[j]).expect("composable"));
            merged.extend_from_slice(&chain[j + 1..]);
            let id = IntMatrix::identity(r);
            add_block(&mut d, row, src_off[&merged], &if j % 2 == 0 { id } else { id.neg() });
        }
        let p = pull(front_comp, chain[n]);
        add_block(&mut d, row, src_off[&front], &if n % 2 == 1 { p } else { p.neg() });
        row += r;
    }
    d
}

pub(crate) fn compose_chain(cat: &FiniteCategory, chain: &[usize]) -> usize {
    chain[1..].iter().fold(chain[0], |acc, &b| cat.compose(acc, b).expect("composable"))
}

pub(crate) fn add_block(d: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !num_traits::Zero::is_zero(v) {
                let cur = d.get(r0 + r, c0 + c) + v;
                d.set(r0 + r, c0 + c, cur);
            }
        }
    }
}

/// `C^n_BW(I, D)` for `n = 0..=n_max + 1`.
pub fn bw_complex(cat: &FiniteCategory, d: &NaturalSystem, n_max: usize) -> Result<CochainComplex, CohomologyError> {
    let rank = |f: usize| d.rank(f);
    let push = |a: usize, f: usize| d.push(a, f).clone();
    let pull = |f: usize, b: usize| d.pull(f, b).clone();
    let ranks = (0..=n_max + 1).map(|n| cat.chains(n).iter().map(|(_, c)| d.rank(*c)).sum()).collect();
    let diffs = (0..=n_max).map(|n| bw_differential(cat, n, &rank, &push, &pull)).collect();
    CochainComplex::new(Coefficients::Integers, ranks, diffs)
}

/// `H^n_BW(I, D)` for `n = 0..=n_max`.
pub fn bw_cohomology(cat: &FiniteCategory, d: &NaturalSystem, n_max: usize) -> Result<Vec<CohomologyGroup>, CohomologyError> {
    let c = bw_complex(cat, d, n_max)?;
    let mut h = cohomology_of(&c);
    h.truncate(n_max + 1);
    Ok(h)
}
