//! Cocycle data of split Ψ-ring and λ-ring extensions `0 → M → X → R → 0`.
//!
//! For the λ variants `ε^ν` is given on the generating basis `[1, g_1, …]`
//! of `R`; its value on other elements is the module part of `λ^ν(r, 0)` in
//! `X`, so the addition rule
//! `ε^ν(r+s) = Σ_i [ε^i(r) λ^{ν-i}(s) + ε^{ν-i}(s) λ^i(r)]` holds by
//! construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{eval_poly, CommRing, Element, Report, Series};
use crate::lambda::{adams_from_lambda, verify_lambda_ring, GeneratedLambdaStructure, LambdaModule, LambdaRing};
use crate::linalg::IntMatrix;
use crate::poly::{MultiPoly, VarId};
use crate::psi::{additive_extension_conditions, semidirect_psi_conditions, PsiModule, PsiStructure};
use crate::LambdaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtensionKind {
    AExtPsi,
    MExtPsi,
    AExtLambda,
    MExtLambda,
}

impl ExtensionKind {
    pub fn is_lambda(self) -> bool {
        matches!(self, ExtensionKind::AExtLambda | ExtensionKind::MExtLambda)
    }

    pub fn is_additive(self) -> bool {
        matches!(self, ExtensionKind::AExtPsi | ExtensionKind::AExtLambda)
    }
}

/// `f` and `ε` of a split extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub kind: ExtensionKind,
    /// `f[a][b] = f(e_a, e_b)` in module coordinates, on the ring basis.
    pub f: Option<Vec<Vec<Element>>>,
    /// `eps[k - 1] = ε^k`: on the ring basis for Ψ variants, on the
    /// generating basis `[1, g_1, …]` for λ variants.
    pub eps: Vec<IntMatrix>,
}

impl ExtensionData {
    /// The split extension: `f = 0`, `ε = 0`.
    pub fn split(kind: ExtensionKind, ring_rank: usize, module_rank: usize, bound: u32) -> Self {
        let f = kind.is_additive().then(|| vec![vec![vec![BigInt::zero(); module_rank]; ring_rank]; ring_rank]);
        ExtensionData { kind, f, eps: (0..bound).map(|_| IntMatrix::zeros(module_rank, ring_rank)).collect() }
    }

    fn f_is_zero(&self) -> bool {
        self.f.as_ref().map_or(true, |f| f.iter().flatten().flatten().all(Zero::is_zero))
    }
}

fn shape_check(e: &ExtensionData, ring_rank: usize, module_rank: usize, report: &mut Report) -> bool {
    if e.eps.iter().any(|m| m.rows() != module_rank || m.cols() != ring_rank) {
        report.fail("ext.shape", format!("ε matrices must be {module_rank}×{ring_rank}"));
        return false;
    }
    if let Some(f) = &e.f {
        if f.len() != ring_rank || f.iter().any(|row| row.len() != ring_rank || row.iter().any(|v| v.len() != module_rank)) {
            report.fail("ext.shape", "f must be a ring×ring table of module elements".into());
            return false;
        }
    }
    true
}

fn f_absent(e: &ExtensionData, report: &mut Report) {
    report.check("ext.f_absent", || e.f_is_zero(), || "multiplicatively split data must have f = 0".into());
}

/// Conditions of `AExt_Ψ` (twisted Leibniz, cocycle `f`) or `MExt_Ψ`.
pub fn check_psi_extension(r: &PsiStructure, m: &PsiModule, e: &ExtensionData) -> Report {
    let mut report = Report::new();
    if e.kind.is_lambda() {
        report.fail("ext.kind", "λ-extension data passed to the Ψ checker".into());
        return report;
    }
    if !shape_check(e, r.ring().rank(), m.rank(), &mut report) {
        return report;
    }
    match e.kind {
        ExtensionKind::MExtPsi => {
            f_absent(e, &mut report);
            report.merge(semidirect_psi_conditions(r, m, &e.eps));
        }
        _ => {
            let zero = vec![vec![vec![BigInt::zero(); m.rank()]; r.ring().rank()]; r.ring().rank()];
            report.merge(additive_extension_conditions(r, m, &e.eps, e.f.as_deref().unwrap_or(&zero)));
        }
    }
    report
}

/// The Ψ-ring `X = R ⊕ M` with multiplication twisted by `f` and
/// `Ψ^k(r, m) = (Ψ^k r, ψ^k m + ε^k r)`.
pub fn psi_extension_ring(r: &PsiStructure, m: &PsiModule, e: &ExtensionData) -> Result<PsiStructure, LambdaError> {
    let n = r.ring().rank();
    if e.eps.iter().any(|x| x.rows() != m.rank() || x.cols() != n) {
        return Err(LambdaError::Shape("ε matrices must map the ring to the module".into()));
    }
    let ring = r.ring().semidirect(m.names(), m.action(), e.f.as_deref());
    let bound = r.bound().min(m.bound()).min(e.eps.len() as u32);
    let ops = (0..bound as usize)
        .map(|i| {
            let mut op = IntMatrix::block_diagonal(&[r.ops()[i].clone(), m.ops()[i].clone()]);
            op.paste(n, 0, &e.eps[i]);
            op
        })
        .collect();
    PsiStructure::new(ring, ops)
}

/// The λ-ring candidate `X = R ⊕ M` with `λ^ν(r, m) = (λ^ν r, Σ_i Λ^i(m) λ^{ν-i}(r) + ε^ν(r))`.
pub fn lambda_extension_ring(r: &GeneratedLambdaStructure, m: &LambdaModule, e: &ExtensionData) -> Result<GeneratedLambdaStructure, LambdaError> {
    let n = r.presentation().rank();
    let k = m.rank();
    let gens = r.generators();
    let bound = r.bound();
    if e.eps.len() < bound as usize || e.eps.iter().any(|x| x.rows() != k || x.cols() != gens.len() + 1) {
        return Err(LambdaError::Shape(format!("ε needs {bound} matrices of size {k}×{}", gens.len() + 1)));
    }
    if m.bound() < bound {
        return Err(LambdaError::BeyondBound("module operations stop below the ring's bound".into()));
    }
    let ring = r.presentation().semidirect(m.names(), m.action(), e.f.as_deref());
    let join = |x: &Element, y: Vec<BigInt>| {
        let mut v = x.clone();
        v.extend(y);
        v
    };
    let mut generators: Vec<(String, Element)> = gens.iter().map(|(name, g)| (name.clone(), join(g, vec![BigInt::zero(); k]))).collect();
    let mut tables: Vec<Vec<Element>> =
        r.generator_tables().iter().enumerate().map(|(g, t)| t.iter().enumerate().map(|(i, x)| join(x, e.eps[i].column(g + 1))).collect()).collect();
    for b in 0..k {
        let mut v = vec![BigInt::zero(); n + k];
        v[n + b] = BigInt::from(1);
        generators.push((m.names()[b].clone(), v));
        tables.push((0..bound as usize).map(|i| join(&vec![BigInt::zero(); n], m.ops()[i].column(b))).collect());
    }
    let unit = r.unit_series()[1..].iter().enumerate().map(|(i, x)| join(x, e.eps[i].column(0))).collect();
    GeneratedLambdaStructure::with_table(ring, generators, tables, Some(unit), r.shared_table())
}

struct LambdaExtContext<'a> {
    r: &'a GeneratedLambdaStructure,
    m: &'a LambdaModule,
    x: GeneratedLambdaStructure,
    n: usize,
}

impl LambdaExtContext<'_> {
    fn embed(&self, a: &Element) -> Element {
        let mut v = a.clone();
        v.extend(core::iter::repeat(BigInt::zero()).take(self.m.rank()));
        v
    }

    /// `[ε^0(a), …, ε^N(a)]` as module elements.
    fn eps_series(&self, a: &Element) -> Result<Vec<Element>, LambdaError> {
        Ok(self.x.lambda_series(&self.embed(a))?.into_iter().map(|v| v[self.n..].to_vec()).collect())
    }

    fn act(&self, a: &Element, v: &[BigInt]) -> Element {
        self.m.act(a).apply(v)
    }

    fn eval_at(&self, p: &MultiPoly, sr: &[Element], ss: &[Element]) -> Result<Element, LambdaError> {
        eval_poly(self.r.presentation(), p, |v| match *v {
            VarId::S(i) => sr.get(i as usize).cloned(),
            VarId::Sigma(i) => ss.get(i as usize).cloned(),
            _ => None,
        })
    }
}

fn add_into(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn sub_into(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a -= b;
    }
}

/// Conditions of `AExt_λ` or `MExt_λ`, plus the λ-ring axioms on `X`.
pub fn check_lambda_extension(r: &GeneratedLambdaStructure, m: &LambdaModule, e: &ExtensionData) -> Report {
    let mut report = Report::new();
    if !e.kind.is_lambda() {
        report.fail("ext.kind", "Ψ-extension data passed to the λ checker".into());
        return report;
    }
    let n = r.presentation().rank();
    let cols = r.generators().len() + 1;
    if !shape_check(&ExtensionData { kind: e.kind, f: None, eps: e.eps.clone() }, cols, m.rank(), &mut report) {
        return report;
    }
    if let Some(f) = &e.f {
        if f.len() != n || f.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != m.rank())) {
            report.fail("ext.shape", "f must be a ring×ring table of module elements".into());
            return report;
        }
    }
    if let Some(first) = e.eps.first() {
        report.check("ext_lambda.eps1", || first.is_zero(), || "ε^1 is not zero".into());
    }
    for (i, eps) in e.eps.iter().enumerate() {
        report.check("ext_lambda.unit", || eps.column(0).iter().all(Zero::is_zero), || format!("ε^{}(1) is not zero", i + 1));
    }
    let x = match lambda_extension_ring(r, m, e) {
        Ok(x) => x,
        Err(err) => {
            report.fail("ext.shape", format!("{err}"));
            return report;
        }
    };
    let ctx = LambdaExtContext { r, m, x, n };
    report.merge(ctx.x.presentation().check_axioms());
    let ring_tests = r.default_test_set();
    let mut tests: Vec<Element> = ring_tests.iter().map(|a| ctx.embed(a)).collect();
    for b in 0..m.rank() {
        let mb = ctx.x.presentation().basis(n + b);
        tests.push(mb.clone());
        if let Some(g) = r.generators().first() {
            tests.push(ctx.x.presentation().add(&ctx.embed(&g.1), &mb));
        }
    }
    report.merge(verify_lambda_ring(&ctx.x, &tests));
    if e.kind == ExtensionKind::MExtLambda {
        f_absent(e, &mut report);
        mext_literal(&ctx, &ring_tests, &mut report);
    } else {
        aext_literal(&ctx, e, &ring_tests, &mut report);
    }
    report
}

fn partials(p: &MultiPoly, vars: impl Iterator<Item = VarId>) -> BTreeMap<VarId, MultiPoly> {
    vars.map(|v| (v, p.partial_derivative(v))).collect()
}

fn mext_literal(ctx: &LambdaExtContext<'_>, tests: &[Element], report: &mut Report) {
    let r = ctx.r;
    let ring = r.presentation();
    let bound = r.bound();
    let table = r.table();
    let mut series = Vec::new();
    for a in tests {
        match (r.lambda_series(a), ctx.eps_series(a)) {
            (Ok(s), Ok(es)) => series.push((a.clone(), s, es)),
            (Err(err), _) | (_, Err(err)) => report.fail("lambda.evaluation", format!("{err}")),
        }
    }
    for nu in 2..=bound {
        let p = table.product(nu).expect("bound covers P_ν");
        let d = partials(p, (1..=nu).flat_map(|i| [VarId::S(i), VarId::Sigma(i)]));
        for (ia, (a, sa, ea)) in series.iter().enumerate() {
            for (b, sb, eb) in &series[ia..] {
                let Ok(lhs) = ctx.eps_series(&ring.mul(a, b)) else { continue };
                let mut rhs = vec![BigInt::zero(); ctx.m.rank()];
                let mut ok = true;
                for i in 1..=nu {
                    match (ctx.eval_at(&d[&VarId::S(i)], sa, sb), ctx.eval_at(&d[&VarId::Sigma(i)], sa, sb)) {
                        (Ok(da), Ok(db)) => {
                            add_into(&mut rhs, &ctx.act(&da, &ea[i as usize]));
                            add_into(&mut rhs, &ctx.act(&db, &eb[i as usize]));
                        }
                        _ => ok = false,
                    }
                }
                if !ok {
                    report.fail("lambda.evaluation", format!("∂P_{nu} outside the truncation"));
                    continue;
                }
                let lhs = &lhs[nu as usize];
                report.check(
                    "mext_lambda.product",
                    || *lhs == rhs,
                    || format!("ε^{nu}({} {}) differs from Σ ε^i ∂P_{nu}/∂λ^i", ring.render(a), ring.render(b)),
                );
            }
        }
    }
    for nu in 2..=bound {
        for k in 2..=bound / nu {
            let p = table.composition(k, nu).expect("bound covers P_{k,ν}");
            let d = partials(p, (1..=nu * k).map(VarId::S));
            let literal = (nu != k).then(|| {
                let q = table.composition(nu, k).expect("bound covers P_{ν,k}");
                partials(q, (1..=nu * k).map(VarId::S))
            });
            for (a, sa, ea) in &series {
                let inner = &sa[nu as usize];
                let (Ok(s_inner), Ok(e_inner)) = (r.lambda_series(inner), ctx.eps_series(inner)) else {
                    report.fail("lambda.evaluation", format!("λ^{nu}({})", ring.render(a)));
                    continue;
                };
                let mut tail = vec![BigInt::zero(); ctx.m.rank()];
                for j in 1..=k as usize {
                    let lam = ctx.m.ops()[j - 1].apply(&ea[nu as usize]);
                    add_into(&mut tail, &ctx.act(&s_inner[k as usize - j], &lam));
                }
                let sum_with = |d: &BTreeMap<VarId, MultiPoly>| -> Result<Element, LambdaError> {
                    let mut acc = vec![BigInt::zero(); ctx.m.rank()];
                    for i in 1..=nu * k {
                        let c = ctx.eval_at(&d[&VarId::S(i)], sa, &[])?;
                        add_into(&mut acc, &ctx.act(&c, &ea[i as usize]));
                    }
                    sub_into(&mut acc, &tail);
                    Ok(acc)
                };
                let rhs = match sum_with(&d) {
                    Ok(v) => v,
                    Err(err) => {
                        report.fail("lambda.evaluation", format!("{err}"));
                        continue;
                    }
                };
                let lhs = &e_inner[k as usize];
                report.check(
                    "mext_lambda.composition",
                    || *lhs == rhs,
                    || format!("ε^{k}(λ^{nu}({})) differs from Σ ε^i ∂P_{{{k},{nu}}}/∂λ^i - Σ Λ^j(ε^{nu}) λ^{{{k}-j}}(λ^{nu})", ring.render(a)),
                );
                if let Some(q) = &literal {
                    if let Ok(alt) = sum_with(q) {
                        if alt != rhs {
                            report.notes.push(format!(
                                "with P_{{{nu},{k}}} in place of P_{{{k},{nu}}} the composition condition would fail on {}",
                                ring.render(a)
                            ));
                        }
                    }
                }
            }
        }
    }
}

fn aext_literal(ctx: &LambdaExtContext<'_>, e: &ExtensionData, tests: &[Element], report: &mut Report) {
    let r = ctx.r;
    let ring = r.presentation();
    let x = &ctx.x;
    let xring = x.presentation();
    let n = ctx.n;
    let bound = r.bound() as usize;
    let zero_m = vec![BigInt::zero(); ctx.m.rank()];
    let f_at = |a: &Element, b: &Element| -> Element {
        let mut out = zero_m.clone();
        if let Some(f) = &e.f {
            for (i, p) in a.iter().enumerate() {
                for (j, q) in b.iter().enumerate() {
                    if !p.is_zero() && !q.is_zero() {
                        for (o, c) in out.iter_mut().zip(&f[i][j]) {
                            *o += p * q * c;
                        }
                    }
                }
            }
        }
        out
    };
    let mut series: Vec<(Element, Series<Element>, Vec<Element>)> = Vec::new();
    for a in tests {
        if let (Ok(s), Ok(es)) = (r.lambda_series(a), ctx.eps_series(a)) {
            series.push((a.clone(), s, es));
        }
    }
    let mut omitted_f = false;
    for (ia, (a, sa, ea)) in series.iter().enumerate() {
        for (b, sb, eb) in &series[ia..] {
            let Ok(lhs) = ctx.eps_series(&ring.add(a, b)) else { continue };
            for nu in 0..=bound {
                let mut rhs = zero_m.clone();
                for i in 0..=nu {
                    add_into(&mut rhs, &ctx.act(&sb[nu - i], &ea[i]));
                    add_into(&mut rhs, &ctx.act(&sa[i], &eb[nu - i]));
                }
                if lhs[nu] != rhs {
                    omitted_f = true;
                }
            }
        }
    }
    if omitted_f && !e.f.as_ref().map_or(true, |f| f.iter().flatten().flatten().all(Zero::is_zero)) {
        report.notes.push(
            "AExt_λ item 2 as written omits the terms f(λ^i r, λ^{ν-i} s) produced by the twisted product; \
             the checker uses the sum rule in X"
                .into(),
        );
    }
    let mut item4_disagrees = false;
    let mut item5_disagrees = false;
    for (ia, (a, sa, ea)) in series.iter().enumerate() {
        for (b, _, _) in &series[ia..] {
            let rs = ring.mul(a, b);
            let (Ok(srs), Ok(ers)) = (r.lambda_series(&rs), ctx.eps_series(&rs)) else { continue };
            let Ok(xprod) = x.lambda_series(&xring.mul(&ctx.embed(a), &ctx.embed(b))) else { continue };
            let fab = f_at(a, b);
            for i in 2..xprod.len().min(srs.len()) {
                let mut literal = zero_m.clone();
                for j in 1..=i {
                    let lam = ctx.m.ops()[j - 1].apply(&fab);
                    add_into(&mut literal, &ctx.act(&srs[i - j], &lam));
                    add_into(&mut literal, &ers[j]);
                }
                if xprod[i][n..] != literal[..] {
                    item4_disagrees = true;
                }
            }
        }
        for j in 2..=bound {
            let inner = &sa[j];
            let (Ok(s_inner), Ok(e_inner)) = (r.lambda_series(inner), ctx.eps_series(inner)) else { continue };
            let Ok(xs) = x.lambda_series(&ctx.embed(a)) else { continue };
            let Ok(xcomp) = x.lambda_series(&xs[j]) else { continue };
            for i in 2..=(bound / j) {
                let mut mu = zero_m.clone();
                for _ in 1..=j {
                    add_into(&mut mu, &ea[j]);
                }
                let mut literal = zero_m.clone();
                for k in 1..=i {
                    add_into(&mut literal, &ctx.act(&s_inner[i - k], &ctx.m.ops()[k - 1].apply(&mu)));
                }
                add_into(&mut literal, &e_inner[i]);
                if xcomp[i][n..] != literal[..] {
                    item5_disagrees = true;
                }
            }
        }
    }
    report.notes.push(
        "AExt_λ item 4 as written uses f(r, r') with r' unbound and adds ε^j(rs) inside the sum over j; read with r' = s".into(),
    );
    if item4_disagrees {
        report.notes.push("AExt_λ item 4, read literally, disagrees with λ^i((r,0)(s,0)) computed in X".into());
    }
    report.notes.push("AExt_λ item 5 as written adds ε^j(r) inside the sum over a".into());
    if item5_disagrees {
        report.notes.push("AExt_λ item 5, read literally, disagrees with λ^i(λ^j(r,0)) computed in X".into());
    }
}

/// Dispatches on the variant.
pub fn check_extension_data(
    ring: ExtensionRing<'_>,
    e: &ExtensionData,
) -> Report {
    match ring {
        ExtensionRing::Psi(r, m) => check_psi_extension(r, m, e),
        ExtensionRing::Lambda(r, m) => check_lambda_extension(r, m, e),
    }
}

/// The ring and module an extension datum refers to.
#[derive(Clone, Copy, Debug)]
pub enum ExtensionRing<'a> {
    Psi(&'a PsiStructure, &'a PsiModule),
    Lambda(&'a GeneratedLambdaStructure, &'a LambdaModule),
}

/// The `MExt_Ψ` datum of `R_Ψ` by `M_Ψ` attached to an `MExt_λ` datum by
/// `ε_Ψ^ν = Σ_{i=1}^{ν-1} (-1)^{i+1} [ε^i Ψ^{ν-i} + λ^i ε_Ψ^{ν-i}] + (-1)^{ν+1} ν ε^ν`,
/// on the ring basis.
pub fn lambda_ext_to_psi_ext(r: &GeneratedLambdaStructure, m: &LambdaModule, e: &ExtensionData) -> Result<ExtensionData, LambdaError> {
    if e.kind != ExtensionKind::MExtLambda {
        return Err(LambdaError::Invalid("an MExt_λ datum is required".into()));
    }
    let report = check_lambda_extension(r, m, e);
    if let Some(v) = report.violations.first() {
        return Err(LambdaError::Invalid(format!("{}: {}", v.condition, v.detail)));
    }
    let x = lambda_extension_ring(r, m, e)?;
    let n = r.presentation().rank();
    let ctx = LambdaExtContext { r, m, x, n };
    let psi = adams_from_lambda(r)?;
    let bound = r.bound() as usize;
    let mut columns: Vec<Vec<Element>> = vec![Vec::new(); bound];
    for a in 0..n {
        let basis = r.presentation().basis(a);
        let sa = r.lambda_series(&basis)?;
        let ea = ctx.eps_series(&basis)?;
        let mut eps_psi: Vec<Element> = vec![vec![BigInt::zero(); m.rank()]];
        for nu in 1..=bound {
            let mut acc = vec![BigInt::zero(); m.rank()];
            for i in 1..nu {
                let psi_r = psi.ops()[nu - i - 1].apply(&basis);
                let mut t = ctx.act(&psi_r, &ea[i]);
                add_into(&mut t, &ctx.act(&sa[i], &eps_psi[nu - i]));
                if i % 2 == 1 {
                    add_into(&mut acc, &t);
                } else {
                    sub_into(&mut acc, &t);
                }
            }
            let last: Element = ea[nu].iter().map(|c| c * BigInt::from(nu)).collect();
            if nu % 2 == 1 {
                add_into(&mut acc, &last);
            } else {
                sub_into(&mut acc, &last);
            }
            columns[nu - 1].push(acc.clone());
            eps_psi.push(acc);
        }
    }
    let eps = columns.iter().map(|c| IntMatrix::from_columns(m.rank(), c)).collect();
    Ok(ExtensionData { kind: ExtensionKind::MExtPsi, f: None, eps })
}

/// `ε_Ψ` read off the Adams operations of `X`: the module block of
/// `Ψ^ν(r, 0)`.
pub fn psi_ext_from_adams(r: &GeneratedLambdaStructure, m: &LambdaModule, e: &ExtensionData) -> Result<ExtensionData, LambdaError> {
    let x = lambda_extension_ring(r, m, e)?;
    let psi = adams_from_lambda(&x)?;
    let n = r.presentation().rank();
    let eps = psi.ops().iter().map(|op| op.row_slice(n, n + m.rank()).column_slice(0, n)).collect();
    Ok(ExtensionData { kind: ExtensionKind::MExtPsi, f: None, eps })
}
