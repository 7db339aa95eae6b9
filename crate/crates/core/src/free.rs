//! Truncated free Ψ-rings, free λ-rings, free λ-modules and their semidirect
//! products, as polynomial rings in the variables `a_{g,j}` and `m_{h,k}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::{series_mul, series_one, series_pow, split_by, CommRing, PolyRing, Report, Series};
use crate::lambda::{eval_adams, module_sign, product_series, LambdaRing};
use crate::poly::{MultiPoly, VarId};
use crate::symm::{adams_polys_in, UniversalTable};
use crate::LambdaError;

fn is_mod(v: &VarId) -> bool {
    matches!(v, VarId::Mod(..))
}

/// Free Ψ-ring on `gens` generators with `Ψ^i(a_{g,j}) = a_{g,ij}`, keeping
/// the variables `a_{g,j}` with `j <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreePsiRing {
    gens: u32,
    bound: u32,
}

impl FreePsiRing {
    pub fn new(gens: u32, bound: u32) -> Self {
        FreePsiRing { gens, bound }
    }

    pub fn gens(&self) -> u32 {
        self.gens
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn generator(&self, g: u32, j: u32) -> Result<MultiPoly, LambdaError> {
        if g >= self.gens || j == 0 || j > self.bound {
            return Err(LambdaError::BeyondBound(format!("a_{{{g},{j}}} with {} generators and bound {}", self.gens, self.bound)));
        }
        Ok(MultiPoly::var(VarId::Gen(g, j)))
    }

    pub fn psi(&self, i: u32, p: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let mut missing = None;
        let out = p.substitute_with(|v| match *v {
            VarId::Gen(g, j) if g < self.gens && i * j <= self.bound => Some(MultiPoly::var(VarId::Gen(g, i * j))),
            other => {
                missing = Some(other);
                None
            }
        });
        match missing {
            Some(v) => Err(LambdaError::BeyondBound(format!("Ψ^{i}({v})"))),
            None => Ok(out),
        }
    }

    /// `Ψ^1 = id`, multiplicativity and `Ψ^i Ψ^j = Ψ^{ij}` on the samples.
    pub fn verify(&self, samples: &[MultiPoly]) -> Report {
        let mut report = Report::new();
        for x in samples {
            match self.psi(1, x) {
                Ok(y) => report.check("psi.identity", || y == *x, || format!("Ψ^1({x}) = {y}")),
                Err(e) => report.fail("psi.evaluation", format!("{e}")),
            }
            for i in 2..=self.bound {
                for j in 2..=self.bound / i {
                    if let (Ok(inner), Ok(direct)) = (self.psi(j, x), self.psi(i * j, x)) {
                        match self.psi(i, &inner) {
                            Ok(lhs) => report.check("psi.composition", || lhs == direct, || format!("Ψ^{i}Ψ^{j}({x}) != Ψ^{}({x})", i * j)),
                            Err(e) => report.fail("psi.evaluation", format!("{e}")),
                        }
                    }
                }
            }
            for y in samples {
                for i in 1..=self.bound {
                    if let (Ok(a), Ok(b), Ok(c)) = (self.psi(i, x), self.psi(i, y), self.psi(i, &(x * y))) {
                        report.check("psi.multiplicative", || c == &a * &b, || format!("Ψ^{i}(({x})({y}))"));
                    }
                }
            }
        }
        report
    }
}

/// Free λ-ring on `gens` generators: `Z[a_{g,1}, a_{g,2}, …]` with
/// `λ^i(a_{g,1}) = a_{g,i}` and `λ^i(a_{g,j}) = P_{i,j}(a_{g,1}, …, a_{g,ij})`,
/// truncated at `ij <= bound`.
#[derive(Clone, Debug)]
pub struct FreeLambdaRing {
    gens: u32,
    table: Arc<UniversalTable>,
    carrier: PolyRing,
}

impl FreeLambdaRing {
    pub fn new(gens: u32, bound: u32) -> Self {
        Self::with_table(gens, Arc::new(UniversalTable::new(bound)))
    }

    pub fn with_table(gens: u32, table: Arc<UniversalTable>) -> Self {
        FreeLambdaRing { gens, table, carrier: PolyRing::plain() }
    }

    pub fn gens(&self) -> u32 {
        self.gens
    }

    pub fn shared_table(&self) -> Arc<UniversalTable> {
        self.table.clone()
    }

    pub fn generator(&self, g: u32, j: u32) -> Result<MultiPoly, LambdaError> {
        if g >= self.gens || j == 0 || j > self.table.bound() {
            return Err(LambdaError::BeyondBound(format!("a_{{{g},{j}}} with {} generators and bound {}", self.gens, self.table.bound())));
        }
        Ok(MultiPoly::var(VarId::Gen(g, j)))
    }

    /// `[1, a_{g,j}, λ^2(a_{g,j}), …]` up to degree `⌊bound / j⌋`.
    pub fn generator_series(&self, g: u32, j: u32) -> Result<Series<MultiPoly>, LambdaError> {
        self.generator(g, j)?;
        let len = (self.table.bound() / j) as usize + 1;
        let mut out = vec![MultiPoly::one()];
        for i in 1..len as u32 {
            let p = self.table.composition(i, j).ok_or_else(|| LambdaError::BeyondBound(format!("P_{i},{j}")))?;
            out.push(p.map_vars(|v| match v {
                VarId::S(m) => VarId::Gen(g, m),
                other => other,
            }));
        }
        Ok(out)
    }

    /// `Ψ^k` on a polynomial, a ring endomorphism with
    /// `Ψ^k(a_{g,j}) = N_k(λ^1(a_{g,j}), …, λ^k(a_{g,j}))`.
    pub fn psi(&self, k: u32, p: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let mut images = BTreeMap::new();
        for v in p.variables() {
            let VarId::Gen(g, j) = v else {
                return Err(LambdaError::Shape(format!("{v} is not a ring variable")));
            };
            let series = self.generator_series(g, j)?;
            if series.len() <= k as usize {
                return Err(LambdaError::BeyondBound(format!("Ψ^{k}({v})")));
            }
            images.insert(v, eval_adams(self, k, &series)?);
        }
        Ok(p.substitute(&images).expect("every variable has an image"))
    }
}

impl LambdaRing for FreeLambdaRing {
    type Ring = PolyRing;

    fn ring(&self) -> &PolyRing {
        &self.carrier
    }

    fn bound(&self) -> u32 {
        self.table.bound()
    }

    fn table(&self) -> &UniversalTable {
        &self.table
    }

    fn lambda_series(&self, x: &MultiPoly) -> Result<Series<MultiPoly>, LambdaError> {
        let ring = &self.carrier;
        let full = self.table.bound() as usize + 1;
        let mut acc = series_one(ring, full);
        for (m, c) in x.terms() {
            let mut mono: Option<Series<MultiPoly>> = None;
            for &(v, e) in m.factors() {
                let VarId::Gen(g, j) = v else {
                    return Err(LambdaError::Shape(format!("{v} is not a ring variable")));
                };
                let sv = self.generator_series(g, j)?;
                for _ in 0..e {
                    mono = Some(match mono {
                        None => sv.clone(),
                        Some(acc) => product_series(self, &acc, &sv)?,
                    });
                }
            }
            let mono = mono.unwrap_or_else(|| {
                let mut unit = series_one(ring, full);
                if full > 1 {
                    unit[1] = MultiPoly::one();
                }
                unit
            });
            acc = series_mul(ring, &acc, &series_pow(ring, &mono, c)?);
        }
        Ok(acc)
    }

    fn generators(&self) -> Vec<(String, MultiPoly)> {
        (0..self.gens).map(|g| (format!("{}", VarId::Gen(g, 1)), MultiPoly::var(VarId::Gen(g, 1)))).collect()
    }
}

/// Free λ-module over a free λ-ring on `gens` generators `m_h`, with basis
/// `m_{h,k} = Λ^k(m_h)` over the ring and
/// `Λ^i(r m_{h,k}) = (-1)^{(i+1)(k+1)} Ψ^i(r) m_{h,ik}`.
#[derive(Clone, Debug)]
pub struct FreeLambdaModule {
    gens: u32,
    bound: u32,
}

impl FreeLambdaModule {
    pub fn new(gens: u32, bound: u32) -> Self {
        FreeLambdaModule { gens, bound }
    }

    pub fn gens(&self) -> u32 {
        self.gens
    }

    pub fn generator(&self, h: u32, k: u32) -> Result<MultiPoly, LambdaError> {
        if h >= self.gens || k == 0 || k > self.bound {
            return Err(LambdaError::BeyondBound(format!("m_{{{h},{k}}}")));
        }
        Ok(MultiPoly::var(VarId::Mod(h, k)))
    }

    /// Coefficients `r_{h,k}` of a module element `Σ r_{h,k} m_{h,k}`.
    pub fn coordinates(&self, mu: &MultiPoly) -> Result<BTreeMap<VarId, MultiPoly>, LambdaError> {
        let mut out = BTreeMap::new();
        for v in mu.variables() {
            if is_mod(&v) {
                out.insert(v, mu.partial_derivative(v));
            }
        }
        let rebuilt = out.iter().fold(MultiPoly::zero(), |acc, (v, r)| &acc + &(r * &MultiPoly::var(*v)));
        if rebuilt != *mu {
            return Err(LambdaError::Shape(format!("{mu} is not linear in the module generators")));
        }
        Ok(out)
    }

    /// `Λ^i` on a module element.
    pub fn lambda_op(&self, ring: &FreeLambdaRing, i: u32, mu: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let mut out = MultiPoly::zero();
        for (v, r) in self.coordinates(mu)? {
            let VarId::Mod(h, k) = v else { unreachable!() };
            let target = self.generator(h, i * k)?;
            let coeff = ring.psi(i, &r)?.scale(&module_sign(i, k));
            out = &out + &(&coeff * &target);
        }
        Ok(out)
    }

    /// `ψ^i = (-1)^{i+1} i Λ^i`.
    pub fn psi_op(&self, ring: &FreeLambdaRing, i: u32, mu: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let sign = if i % 2 == 1 { BigInt::from(i) } else { -BigInt::from(i) };
        Ok(self.lambda_op(ring, i, mu)?.scale(&sign))
    }
}

/// `R ⋊_λ M` for a free λ-ring and a free λ-module, as polynomials whose
/// module variables square to zero.
#[derive(Clone, Debug)]
pub struct FreeSemidirectLambda {
    ring: FreeLambdaRing,
    module: FreeLambdaModule,
    carrier: PolyRing,
}

impl FreeSemidirectLambda {
    pub fn new(ring_gens: u32, module_gens: u32, bound: u32) -> Self {
        let ring = FreeLambdaRing::new(ring_gens, bound);
        FreeSemidirectLambda { ring, module: FreeLambdaModule::new(module_gens, bound), carrier: PolyRing::with_square_zero_module() }
    }

    pub fn base(&self) -> &FreeLambdaRing {
        &self.ring
    }

    pub fn module(&self) -> &FreeLambdaModule {
        &self.module
    }

    /// `χ_i(r, μ) = Σ_{j=1}^i Λ^j(μ) λ^{i-j}(r)` from the series of `r`.
    fn chi(&self, i: usize, r_series: &[MultiPoly], mu: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let mut acc = MultiPoly::zero();
        for j in 1..=i {
            let lam = self.module.lambda_op(&self.ring, j as u32, mu)?;
            acc = &acc + &self.carrier.mul(&lam, &r_series[i - j]);
        }
        Ok(acc)
    }

    /// `Ψ^k(r, μ)` expected from the semidirect Ψ-structure: `(Ψ^k r, ψ^k μ)`.
    pub fn product_adams(&self, k: u32, x: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let (r, mu) = split_by(x, is_mod);
        Ok(&self.ring.psi(k, &r)? + &self.module.psi_op(&self.ring, k, &mu)?)
    }
}

impl LambdaRing for FreeSemidirectLambda {
    type Ring = PolyRing;

    fn ring(&self) -> &PolyRing {
        &self.carrier
    }

    fn bound(&self) -> u32 {
        self.ring.bound()
    }

    fn table(&self) -> &UniversalTable {
        self.ring.table()
    }

    fn lambda_series(&self, x: &MultiPoly) -> Result<Series<MultiPoly>, LambdaError> {
        let (r, mu) = split_by(x, is_mod);
        let sr = self.ring.lambda_series(&r)?;
        let mut out = vec![MultiPoly::one()];
        for i in 1..sr.len() {
            match self.chi(i, &sr, &mu) {
                Ok(c) => out.push(&sr[i] + &c),
                Err(LambdaError::BeyondBound(_)) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    fn generators(&self) -> Vec<(String, MultiPoly)> {
        let mut out = self.ring.generators();
        out.extend((0..self.module.gens).map(|h| (format!("{}", VarId::Mod(h, 1)), MultiPoly::var(VarId::Mod(h, 1)))));
        out
    }
}

/// `Ψ^k` through the Newton polynomials agrees with `(Ψ^k r, ψ^k μ)` on the
/// samples for every `k` within the truncation.
pub fn check_semidirect_adams(x: &FreeSemidirectLambda, samples: &[MultiPoly]) -> Report {
    let mut report = Report::new();
    for p in samples {
        let series = match x.lambda_series(p) {
            Ok(s) => s,
            Err(e) => {
                report.fail("lambda.evaluation", format!("{e}"));
                continue;
            }
        };
        for k in 1..series.len() as u32 {
            let Ok(expected) = x.product_adams(k, p) else { continue };
            match eval_adams(x, k, &series) {
                Ok(newton) => report.check("semidirect.adams", || newton == expected, || format!("Ψ^{k}({p}) = {newton} but (Ψ^{k} r, ψ^{k} m) = {expected}")),
                Err(e) => report.fail("lambda.evaluation", format!("{e}")),
            }
        }
    }
    report
}

/// `χ_i(r, m)` for generic `r = a_1` and `m = m_1`:
/// `Σ_{j=1}^i m_j a_{i-j}` with `a_0 = 1`.
pub fn chi(i: u32) -> MultiPoly {
    let a = |j: u32| if j == 0 { MultiPoly::one() } else { MultiPoly::var(VarId::Gen(0, j)) };
    (1..=i).fold(MultiPoly::zero(), |acc, j| &acc + &(&MultiPoly::var(VarId::Mod(0, j)) * &a(i - j)))
}

/// The left side of the χ-lemma identity at `ν` for generic `r` and `m`.
pub fn chi_lemma_lhs(nu: u32) -> MultiPoly {
    let psi = adams_polys_in(nu, |i| VarId::Gen(0, i));
    let mut acc = MultiPoly::zero();
    for i in 1..nu {
        let t = &chi(i) * &psi[(nu - i) as usize];
        acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        let u = (&MultiPoly::var(VarId::Gen(0, i)) * &MultiPoly::var(VarId::Mod(0, nu - i))).scale(&BigInt::from(i));
        acc = if nu % 2 == 1 { &acc + &u } else { &acc - &u };
    }
    acc
}

/// Checks that the χ-lemma identity vanishes for `2 <= ν <= nu_max`.
pub fn chi_lemma_check(nu_max: u32) -> Report {
    let mut report = Report::new();
    for nu in 2..=nu_max {
        let lhs = chi_lemma_lhs(nu);
        report.check("chi.identity", || lhs.is_zero(), || format!("ν = {nu} leaves {lhs}"));
    }
    report
}

/// A derivation of a free λ-ring into a free λ-module, given on the
/// variables `a_{g,j}` and extended by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDerivation {
    values: BTreeMap<VarId, MultiPoly>,
}

impl FreeDerivation {
    pub fn new(values: BTreeMap<VarId, MultiPoly>) -> Self {
        FreeDerivation { values }
    }

    /// `d(a_{g,1}) = μ_g` and `d(a_{g,i}) = Σ_{j=1}^i Λ^j(μ_g) a_{g,i-j}`.
    pub fn explicit(x: &FreeSemidirectLambda, images: &[MultiPoly]) -> Result<Self, LambdaError> {
        if images.len() != x.ring.gens as usize {
            return Err(LambdaError::Shape("one image per generator is required".into()));
        }
        let mut values = BTreeMap::new();
        for (g, mu) in images.iter().enumerate() {
            let g = g as u32;
            for i in 1..=x.bound() {
                let mut acc = MultiPoly::zero();
                for j in 1..=i {
                    let lam = match x.module.lambda_op(&x.ring, j, mu) {
                        Ok(l) => l,
                        Err(LambdaError::BeyondBound(_)) => break,
                        Err(e) => return Err(e),
                    };
                    let a = if j == i { MultiPoly::one() } else { MultiPoly::var(VarId::Gen(g, i - j)) };
                    acc = &acc + &(&lam * &a);
                }
                values.insert(VarId::Gen(g, i), acc);
            }
        }
        Ok(FreeDerivation { values })
    }

    pub fn values(&self) -> &BTreeMap<VarId, MultiPoly> {
        &self.values
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly, LambdaError> {
        let mut acc = MultiPoly::zero();
        for v in p.variables() {
            let dv = self.values.get(&v).ok_or_else(|| LambdaError::BeyondBound(format!("d({v}) is not given")))?;
            acc = &acc + &(&p.partial_derivative(v) * dv);
        }
        Ok(acc.reduce_square_zero(is_mod))
    }
}

/// Leibniz on sample pairs and `d(λ^i r) = Σ_{j=1}^i Λ^j(dr) λ^{i-j}(r)`
/// for every degree the truncation supports.
pub fn check_free_lambda_derivation(x: &FreeSemidirectLambda, d: &FreeDerivation, samples: &[MultiPoly]) -> Report {
    let mut report = Report::new();
    let ring = &x.carrier;
    for (a, p) in samples.iter().enumerate() {
        for q in &samples[a..] {
            if let (Ok(lhs), Ok(dp), Ok(dq)) = (d.apply(&ring.mul(p, q)), d.apply(p), d.apply(q)) {
                let rhs = &ring.mul(&dp, q) + &ring.mul(p, &dq);
                report.check("derivation.leibniz", || lhs == rhs, || format!("d(({p})({q}))"));
            }
        }
        let (sr, dp) = match (x.ring.lambda_series(p), d.apply(p)) {
            (Ok(s), Ok(dp)) => (s, dp),
            (Err(e), _) | (_, Err(e)) => {
                report.fail("lambda.evaluation", format!("{e}"));
                continue;
            }
        };
        for i in 1..sr.len() {
            let lhs = match d.apply(&sr[i]) {
                Ok(v) => v,
                Err(_) => break,
            };
            let rhs = match x.chi(i, &sr, &dp) {
                Ok(v) => v,
                Err(LambdaError::BeyondBound(_)) => {
                    report.notes.push(format!("d(λ^{i}({p})) not checked: Λ leaves the truncation"));
                    break;
                }
                Err(e) => {
                    report.fail("lambda.evaluation", format!("{e}"));
                    break;
                }
            };
            report.check("derivation.lambda", || lhs == rhs, || format!("d(λ^{i}({p})) = {lhs} but Σ Λ^j(dr) λ^{{i-j}}(r) = {rhs}"));
        }
    }
    report
}

/// `d(Ψ^ν r) = ψ^ν(d r)` with `ψ^ν = (-1)^{ν+1} ν Λ^ν`, for `ν <= nu_max`.
pub fn check_free_psi_derivation(x: &FreeSemidirectLambda, d: &FreeDerivation, samples: &[MultiPoly], nu_max: u32) -> Report {
    let mut report = Report::new();
    for p in samples {
        let Ok(dp) = d.apply(p) else {
            report.fail("lambda.evaluation", format!("d({p})"));
            continue;
        };
        for nu in 1..=nu_max {
            let (Ok(psi_p), Ok(rhs)) = (x.ring.psi(nu, p), x.module.psi_op(&x.ring, nu, &dp)) else {
                report.notes.push(format!("ν = {nu} on {p} not checked: outside the truncation"));
                continue;
            };
            match d.apply(&psi_p) {
                Ok(lhs) => report.check("derivation.psi", || lhs == rhs, || format!("d(Ψ^{nu}({p})) = {lhs} but ψ^{nu}(d({p})) = {rhs}")),
                Err(e) => report.fail("lambda.evaluation", format!("{e}")),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::verify_lambda_ring;

    fn a(j: u32) -> MultiPoly {
        MultiPoly::var(VarId::Gen(0, j))
    }

    fn m(k: u32) -> MultiPoly {
        MultiPoly::var(VarId::Mod(0, k))
    }

    #[test]
    fn free_psi_ring_indices_multiply() {
        let f = FreePsiRing::new(1, 8);
        assert_eq!(f.psi(2, &a(3)).unwrap(), a(6));
        assert!(f.psi(3, &a(3)).is_err());
        assert!(f.verify(&[a(1), &a(2) * &a(1), &a(1) + &a(4)]).is_ok());
    }

    #[test]
    fn free_lambda_ring_values() {
        let f = FreeLambdaRing::new(1, 6);
        let s = f.lambda_series(&a(2)).unwrap();
        assert_eq!(s[1], a(2));
        assert_eq!(s[2], &(&a(1) * &a(3)) - &a(4));
        let s1 = f.lambda_series(&a(1)).unwrap();
        assert_eq!(s1[5], a(5));
        let samples = [a(1), a(2), &a(1) - &MultiPoly::one()];
        assert!(verify_lambda_ring(&f, &samples).is_ok());
        assert_eq!(f.psi(2, &a(1)).unwrap(), &(&a(1) * &a(1)) - &a(2).scale(&BigInt::from(2)));
    }

    #[test]
    fn semidirect_axioms_and_adams() {
        let x = FreeSemidirectLambda::new(1, 1, 6);
        let samples = [a(1), m(1), &a(1) + &m(1), &a(1) * &m(1), a(2), &a(2) - &m(2)];
        let report = verify_lambda_ring(&x, &samples);
        assert!(report.is_ok(), "{:?}", report.violations);
        assert!(check_semidirect_adams(&x, &samples).is_ok());
    }

    #[test]
    fn chi_lemma_low_degrees() {
        assert_eq!(chi(2), &m(2) + &(&m(1) * &a(1)));
        assert!(chi_lemma_check(5).is_ok());
    }

    #[test]
    fn explicit_derivation_is_lambda_and_psi() {
        let x = FreeSemidirectLambda::new(1, 1, 6);
        let d = FreeDerivation::explicit(&x, &[m(1)]).unwrap();
        let samples = [a(1), a(2), &a(1) * &a(1)];
        assert!(check_free_lambda_derivation(&x, &d, &samples).is_ok());
        assert!(check_free_psi_derivation(&x, &d, &samples, 6).is_ok());
        let mut wrong = d.values().clone();
        wrong.insert(VarId::Gen(0, 2), MultiPoly::zero());
        let bad = FreeDerivation::new(wrong);
        assert!(!check_free_lambda_derivation(&x, &bad, &[a(1)]).is_ok());
    }
}
