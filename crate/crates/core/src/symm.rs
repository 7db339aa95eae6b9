//! Symmetric functions and the universal polynomials of λ-rings.
//!
//! `P_k` expresses `λ^k(rs)` through `λ^i(r)` (variables `s_i`) and `λ^j(s)`
//! (variables `σ_j`); `P_{k,l}` expresses `λ^k(λ^l(r))` through `λ^i(r)`.
//! Adams polynomials `Ψ^k` come from the Newton recursion.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{Monomial, MultiPoly, VarId};
use crate::SymmError;

/// `e_k(ξ_1, …, ξ_n)`.
pub fn elementary_symmetric(k: u32, n: u32) -> MultiPoly {
    elementary_symmetric_in(k, n, VarId::Xi)
}

/// `e_k` over the variables `var(1), …, var(n)`.
pub fn elementary_symmetric_in<F: Fn(u32) -> VarId>(k: u32, n: u32, var: F) -> MultiPoly {
    let monomials: Vec<Monomial> = (1..=n).map(|i| Monomial::var(var(i))).collect();
    elementary_of_monomials(&monomials, k).pop().unwrap_or_default()
}

/// `[e_0, …, e_k]` of a list of monomials, i.e. the coefficients of
/// `Π (1 + m t)` up to `t^k`.
pub fn elementary_of_monomials(monomials: &[Monomial], k: u32) -> Vec<MultiPoly> {
    let k = k as usize;
    let mut e = vec![MultiPoly::zero(); k + 1];
    e[0] = MultiPoly::one();
    let one = BigInt::one();
    for m in monomials {
        for j in (1..=k).rev() {
            if e[j - 1].is_zero() {
                continue;
            }
            let shifted = e[j - 1].mul_monomial(m, &one);
            e[j] = &e[j] + &shifted;
        }
    }
    e
}

/// Number of variables in each alphabet of a symmetric polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetrizeContext {
    /// Number of `ξ` variables.
    pub first: u32,
    /// Number of `η` variables; zero for a single alphabet.
    pub second: u32,
}

/// Rewrites a polynomial in `ξ_1..ξ_q` (and `η_1..η_r`), symmetric in each
/// alphabet separately, as a polynomial in `s_i = e_i(ξ)` and `σ_j = e_j(η)`.
pub fn symmetrize(p: &MultiPoly, ctx: SymmetrizeContext) -> Result<MultiPoly, SymmError> {
    for v in p.variables() {
        let ok = match v {
            VarId::Xi(i) => (1..=ctx.first).contains(&i),
            VarId::Eta(j) => (1..=ctx.second).contains(&j),
            _ => false,
        };
        if !ok {
            return Err(SymmError::UnsupportedVariable(v));
        }
    }
    let xi: Vec<MultiPoly> = (0..=ctx.first).map(|k| elementary_symmetric_in(k, ctx.first, VarId::Xi)).collect();
    let eta: Vec<MultiPoly> = (0..=ctx.second).map(|k| elementary_symmetric_in(k, ctx.second, VarId::Eta)).collect();
    let mut powers: BTreeMap<(bool, u32, u32), MultiPoly> = BTreeMap::new();
    let mut remainder = p.clone();
    let mut out = MultiPoly::zero();
    while let Some((lead, c)) = remainder.leading_term() {
        let (lead, c) = (lead.clone(), c.clone());
        let a: Vec<u32> = (1..=ctx.first).map(|i| lead.exponent(VarId::Xi(i))).collect();
        let b: Vec<u32> = (1..=ctx.second).map(|j| lead.exponent(VarId::Eta(j))).collect();
        if a.windows(2).any(|w| w[0] < w[1]) || b.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymmError::NotSymmetric);
        }
        let mut target = Monomial::one();
        let mut expansion = MultiPoly::constant(c.clone());
        for (family, exps, elem) in [(false, &a, &xi), (true, &b, &eta)] {
            for i in 0..exps.len() {
                let next = exps.get(i + 1).copied().unwrap_or(0);
                let d = exps[i] - next;
                if d == 0 {
                    continue;
                }
                let idx = (i + 1) as u32;
                let v = if family { VarId::Sigma(idx) } else { VarId::S(idx) };
                target = target.mul(&Monomial::power(v, d));
                let factor = powers.entry((family, idx, d)).or_insert_with(|| elem[i + 1].pow(d));
                expansion = &expansion * factor;
            }
        }
        remainder = &remainder - &expansion;
        out.add_term(target, c);
    }
    Ok(out)
}

/// `[Ψ^0, Ψ^1, …, Ψ^k]` as polynomials in `var(1), var(2), …`, where `var(i)`
/// stands for `λ^i`. `Ψ^0` is returned as zero and never used.
pub fn adams_polys_in<F: Fn(u32) -> VarId>(k: u32, var: F) -> Vec<MultiPoly> {
    let mut psi = vec![MultiPoly::zero()];
    for n in 1..=k {
        let mut acc = MultiPoly::var(var(n)).scale(&BigInt::from(n));
        if n % 2 == 0 {
            acc = -acc;
        }
        for i in 1..n {
            let t = &MultiPoly::var(var(i)) * &psi[(n - i) as usize];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        psi.push(acc);
    }
    psi
}

/// `Ψ^k` in the variables `λ^i(r)`; `adams_poly(2)` renders as `l1(r)^2 - 2*l2(r)`.
pub fn adams_poly(k: u32) -> MultiPoly {
    adams_polys_in(k, |i| VarId::Lam(0, i)).pop().unwrap_or_default()
}

/// Newton's identities: from power sums `p[1..]` to `[e_0, …, e_k]`.
/// `p[0]` is ignored.
pub fn newton_elementary(p: &[MultiPoly], k: u32) -> Vec<MultiPoly> {
    let mut e = vec![MultiPoly::one()];
    for n in 1..=k as usize {
        let mut acc = MultiPoly::zero();
        for i in 1..=n {
            let t = &e[n - i] * &p[i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        let en = acc.exact_div(&BigInt::from(n)).expect("Newton recursion divides exactly");
        e.push(en);
    }
    e
}

/// `P_k(s_1..s_k; σ_1..σ_k)`, the polynomial with `λ^k(rs) = P_k(λ(r); λ(s))`.
pub fn universal_p(k: u32) -> MultiPoly {
    let ps = adams_polys_in(k, VarId::S);
    let pg = adams_polys_in(k, VarId::Sigma);
    let power_sums: Vec<MultiPoly> = (0..=k as usize).map(|n| &ps[n] * &pg[n]).collect();
    newton_elementary(&power_sums, k).pop().unwrap_or_default()
}

/// `P_{k,l}(s_1..s_{kl})`, the polynomial with `λ^k(λ^l(r)) = P_{k,l}(λ(r))`.
pub fn universal_p_comp(k: u32, l: u32) -> MultiPoly {
    assert!(l >= 1, "P_{{k,0}} is not a universal polynomial");
    let adams = adams_polys_in(k * l, VarId::S);
    let mut power_sums = vec![MultiPoly::zero()];
    for n in 1..=k {
        let inner: Vec<MultiPoly> =
            (0..=l).map(|m| if m == 0 { MultiPoly::zero() } else { adams[(m * n) as usize].clone() }).collect();
        power_sums.push(newton_elementary(&inner, l).pop().unwrap_or_default());
    }
    newton_elementary(&power_sums, k).pop().unwrap_or_default()
}

/// `P_k` by expanding `Π_{i,j}(1 + ξ_i η_j t)` in `k + k` variables and
/// symmetrizing the coefficient of `t^k`.
pub fn universal_p_by_expansion(k: u32) -> MultiPoly {
    let monomials: Vec<Monomial> = (1..=k)
        .flat_map(|i| (1..=k).map(move |j| Monomial::from_pairs(&[(VarId::Xi(i), 1), (VarId::Eta(j), 1)])))
        .collect();
    let coeff = elementary_of_monomials(&monomials, k).pop().unwrap_or_default();
    symmetrize(&coeff, SymmetrizeContext { first: k, second: k }).expect("coefficient is bisymmetric")
}

/// `P_{k,l}` by expanding `Π_{i_1<…<i_l}(1 + ξ_{i_1}⋯ξ_{i_l} t)` in `kl`
/// variables and symmetrizing the coefficient of `t^k`.
pub fn universal_p_comp_by_expansion(k: u32, l: u32) -> MultiPoly {
    let q = k * l;
    let mut monomials = Vec::new();
    let mut subset: Vec<u32> = (1..=l).collect();
    loop {
        monomials.push(Monomial::from_pairs(&subset.iter().map(|&i| (VarId::Xi(i), 1)).collect::<Vec<_>>()));
        let Some(pos) = (0..l as usize).rev().find(|&p| subset[p] < q - (l - 1 - p as u32)) else { break };
        subset[pos] += 1;
        for p in pos + 1..l as usize {
            subset[p] = subset[p - 1] + 1;
        }
    }
    let coeff = elementary_of_monomials(&monomials, k).pop().unwrap_or_default();
    symmetrize(&coeff, SymmetrizeContext { first: q, second: 0 }).expect("coefficient is symmetric")
}

/// Argument slot of `P_i(r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

fn p_in_lambda_vars(i: u32, first: u32, second: u32) -> MultiPoly {
    universal_p(i).map_vars(|v| match v {
        VarId::S(m) => VarId::Lam(first, m),
        VarId::Sigma(m) => VarId::Lam(second, m),
        other => other,
    })
}

/// `∂P_i(r,s)/∂λ^j(r)` for the first slot, and `∂P_i(s,r)/∂λ^j(s)` for the
/// second, in the variables `λ^m(r)` and `λ^m(s)`.
pub fn partial_p(i: u32, slot: Slot, j: u32) -> MultiPoly {
    match slot {
        Slot::First => p_in_lambda_vars(i, 0, 1).partial_derivative(VarId::Lam(0, j)),
        Slot::Second => p_in_lambda_vars(i, 1, 0).partial_derivative(VarId::Lam(1, j)),
    }
}

/// `∂P_{i,k}(r)/∂λ^j(r)` in the variables `λ^m(r)`.
pub fn partial_p_comp(i: u32, k: u32, j: u32) -> MultiPoly {
    universal_p_comp(i, k)
        .map_vars(|v| match v {
            VarId::S(m) => VarId::Lam(0, m),
            other => other,
        })
        .partial_derivative(VarId::Lam(0, j))
}

/// All universal polynomials needed by λ-structures truncated at `bound`:
/// `Ψ^k`, `P_k` for `k <= bound`, and `P_{i,j}` for `ij <= bound`.
#[derive(Clone, Debug)]
pub struct UniversalTable {
    bound: u32,
    adams: Vec<MultiPoly>,
    products: Vec<MultiPoly>,
    compositions: BTreeMap<(u32, u32), MultiPoly>,
}

impl UniversalTable {
    pub fn new(bound: u32) -> Self {
        let adams = adams_polys_in(bound, VarId::S);
        let products = (0..=bound).map(|k| if k == 0 { MultiPoly::one() } else { universal_p(k) }).collect();
        let mut compositions = BTreeMap::new();
        for i in 1..=bound {
            for j in 1..=bound / i {
                compositions.insert((i, j), universal_p_comp(i, j));
            }
        }
        UniversalTable { bound, adams, products, compositions }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `Ψ^k` in the variables `s_i`.
    pub fn adams(&self, k: u32) -> Option<&MultiPoly> {
        (1..=self.bound).contains(&k).then(|| &self.adams[k as usize])
    }

    /// `P_k` in the variables `s_i`, `σ_j`.
    pub fn product(&self, k: u32) -> Option<&MultiPoly> {
        self.products.get(k as usize)
    }

    /// `P_{i,j}` in the variables `s_m`.
    pub fn composition(&self, i: u32, j: u32) -> Option<&MultiPoly> {
        self.compositions.get(&(i, j))
    }
}
