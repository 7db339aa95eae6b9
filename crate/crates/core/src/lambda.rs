//! λ-rings, λ-modules and their Adams operations.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{eval_poly, series_mul, series_one, series_pow, BasisChange, CommRing, Element, Report, RingPresentation, Series};
use crate::linalg::IntMatrix;
use crate::poly::VarId;
use crate::psi::{check_module_action, leibniz, PsiModule, PsiStructure};
use crate::symm::UniversalTable;
use crate::LambdaError;

/// Element type of the ring underlying a λ-structure.
pub type ElemOf<L> = <<L as LambdaRing>::Ring as CommRing>::Elem;

/// A commutative ring with operations `λ^0, …, λ^N`.
pub trait LambdaRing {
    type Ring: CommRing;

    fn ring(&self) -> &Self::Ring;

    fn bound(&self) -> u32;

    fn table(&self) -> &UniversalTable;

    /// `[λ^0(x), …, λ^L(x)]` with `L <= bound`. `L` is smaller than the bound
    /// when `x` involves data truncated at a lower degree.
    fn lambda_series(&self, x: &ElemOf<Self>) -> Result<Series<ElemOf<Self>>, LambdaError>;

    /// Named generators usable as leaves of [`Expr`].
    fn generators(&self) -> Vec<(String, ElemOf<Self>)>;
}

/// `P_k(λ(x); λ(y))` evaluated in the ring.
pub fn eval_product<L: LambdaRing + ?Sized>(s: &L, k: u32, x: &[ElemOf<L>], y: &[ElemOf<L>]) -> Result<ElemOf<L>, LambdaError> {
    let p = s.table().product(k).ok_or_else(|| LambdaError::BeyondBound(format!("P_{k}")))?;
    eval_poly(s.ring(), p, |v| match *v {
        VarId::S(i) => x.get(i as usize).cloned(),
        VarId::Sigma(i) => y.get(i as usize).cloned(),
        _ => None,
    })
}

/// `P_{i,j}(λ(x))` evaluated in the ring.
pub fn eval_composition<L: LambdaRing + ?Sized>(s: &L, i: u32, j: u32, x: &[ElemOf<L>]) -> Result<ElemOf<L>, LambdaError> {
    let p = s.table().composition(i, j).ok_or_else(|| LambdaError::BeyondBound(format!("P_{i},{j}")))?;
    eval_poly(s.ring(), p, |v| match *v {
        VarId::S(m) => x.get(m as usize).cloned(),
        _ => None,
    })
}

/// `Ψ^k` applied through the Newton polynomial in `λ^1(x), …, λ^k(x)`.
pub fn eval_adams<L: LambdaRing + ?Sized>(s: &L, k: u32, x: &[ElemOf<L>]) -> Result<ElemOf<L>, LambdaError> {
    let p = s.table().adams(k).ok_or_else(|| LambdaError::BeyondBound(format!("Ψ^{k}")))?;
    eval_poly(s.ring(), p, |v| match *v {
        VarId::S(m) => x.get(m as usize).cloned(),
        _ => None,
    })
}

/// `Ψ^k(x)`.
pub fn adams_op<L: LambdaRing + ?Sized>(s: &L, k: u32, x: &ElemOf<L>) -> Result<ElemOf<L>, LambdaError> {
    let series = s.lambda_series(x)?;
    if series.len() <= k as usize {
        return Err(LambdaError::BeyondBound(format!("Ψ^{k} needs λ^{k}")));
    }
    eval_adams(s, k, &series)
}

/// `λ_t(xy)` from `λ_t(x)` and `λ_t(y)` through the polynomials `P_k`.
pub fn product_series<L: LambdaRing + ?Sized>(s: &L, x: &[ElemOf<L>], y: &[ElemOf<L>]) -> Result<Series<ElemOf<L>>, LambdaError> {
    let len = x.len().min(y.len());
    let mut out = series_one(s.ring(), len);
    for k in 1..len {
        out[k] = eval_product(s, k as u32, x, y)?;
    }
    Ok(out)
}

/// `λ_t(λ^j(x))` from `λ_t(x)` through the polynomials `P_{i,j}`.
pub fn composition_series<L: LambdaRing + ?Sized>(s: &L, x: &[ElemOf<L>], j: u32) -> Result<Series<ElemOf<L>>, LambdaError> {
    let len = if x.is_empty() { 0 } else { (x.len() - 1) / j as usize + 1 };
    let mut out = series_one(s.ring(), len);
    for i in 1..len {
        out[i] = eval_composition(s, i as u32, j, x)?;
    }
    Ok(out)
}

fn check_series_eq<R: CommRing>(ring: &R, report: &mut Report, condition: &str, what: &str, lhs: &[R::Elem], rhs: &[R::Elem]) {
    let len = lhs.len().min(rhs.len());
    for k in 0..len {
        report.check(condition, || lhs[k] == rhs[k], || format!("degree {k} of {what}: {} != {}", ring.render(&lhs[k]), ring.render(&rhs[k])));
    }
}

/// Checks `λ_t(1) = 1 + t` and, on the test set, `λ^0 = 1`, `λ^1 = id`, the
/// addition law, the product law through `P_k` and the composition law
/// through `P_{i,j}`.
pub fn verify_lambda_ring<L: LambdaRing + ?Sized>(s: &L, test_set: &[ElemOf<L>]) -> Report {
    let ring = s.ring();
    let mut report = Report::new();
    match s.lambda_series(&ring.one()) {
        Ok(u) => {
            for (k, c) in u.iter().enumerate().skip(1) {
                let expected = if k == 1 { ring.one() } else { ring.zero() };
                report.check("lambda.unit", || *c == expected, || format!("λ^{k}(1) = {} but λ_t(1) = 1 + t requires {}", ring.render(c), ring.render(&expected)));
            }
        }
        Err(e) => report.fail("lambda.evaluation", format!("λ_t(1): {e}")),
    }
    let mut series = Vec::with_capacity(test_set.len());
    for x in test_set {
        match s.lambda_series(x) {
            Ok(sx) => {
                if let Some(c) = sx.first() {
                    report.check("lambda.zeroth", || *c == ring.one(), || format!("λ^0({}) != 1", ring.render(x)));
                }
                if let Some(c) = sx.get(1) {
                    report.check("lambda.first", || c == x, || format!("λ^1({}) = {}", ring.render(x), ring.render(c)));
                }
                series.push(Some(sx));
            }
            Err(e) => {
                report.fail("lambda.evaluation", format!("λ_t({}): {e}", ring.render(x)));
                series.push(None);
            }
        }
    }
    for (a, x) in test_set.iter().enumerate() {
        let Some(sx) = &series[a] else { continue };
        for (b, y) in test_set.iter().enumerate().skip(a) {
            let Some(sy) = &series[b] else { continue };
            let what_sum = format!("λ_t({} + {})", ring.render(x), ring.render(y));
            match s.lambda_series(&ring.add(x, y)) {
                Ok(lhs) => check_series_eq(ring, &mut report, "lambda.additive", &what_sum, &lhs, &series_mul(ring, sx, sy)),
                Err(e) => report.fail("lambda.evaluation", format!("{what_sum}: {e}")),
            }
            let what_prod = format!("λ_t({} * {})", ring.render(x), ring.render(y));
            match (s.lambda_series(&ring.mul(x, y)), product_series(s, sx, sy)) {
                (Ok(lhs), Ok(rhs)) => check_series_eq(ring, &mut report, "lambda.product", &what_prod, &lhs, &rhs),
                (Err(e), _) | (_, Err(e)) => report.fail("lambda.evaluation", format!("{what_prod}: {e}")),
            }
        }
        for j in 2..sx.len() as u32 {
            let inner = &sx[j as usize];
            let what = format!("λ_t(λ^{j}({}))", ring.render(x));
            match (s.lambda_series(inner), composition_series(s, sx, j)) {
                (Ok(lhs), Ok(rhs)) => check_series_eq(ring, &mut report, "lambda.composition", &what, &lhs, &rhs),
                (Err(e), _) | (_, Err(e)) => report.fail("lambda.evaluation", format!("{what}: {e}")),
            }
        }
    }
    report
}

/// Expressions over the generators of a λ-structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(usize),
    Int(BigInt),
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Lambda(u32, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(Expr::Neg(Box::new(b))))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn lambda(i: u32, a: Expr) -> Expr {
        Expr::Lambda(i, Box::new(a))
    }
}

/// Value of an expression and its `λ`-series computed structurally: sums
/// multiply series, products use `P_k`, nested `λ` uses `P_{i,j}`.
pub fn evaluate_expr<L: LambdaRing + ?Sized>(s: &L, e: &Expr) -> Result<(ElemOf<L>, Series<ElemOf<L>>), LambdaError> {
    let ring = s.ring();
    match e {
        Expr::Gen(g) => {
            let gens = s.generators();
            let (_, x) = gens.get(*g).ok_or_else(|| LambdaError::Shape(format!("no generator with index {g}")))?;
            let series = s.lambda_series(x)?;
            Ok((x.clone(), series))
        }
        Expr::Int(n) => {
            let unit = s.lambda_series(&ring.one())?;
            Ok((ring.from_int(n), series_pow(ring, &unit, n)?))
        }
        Expr::Add(a, b) => {
            let (x, sx) = evaluate_expr(s, a)?;
            let (y, sy) = evaluate_expr(s, b)?;
            Ok((ring.add(&x, &y), series_mul(ring, &sx, &sy)))
        }
        Expr::Neg(a) => {
            let (x, sx) = evaluate_expr(s, a)?;
            Ok((ring.neg(&x), crate::algebra::series_inverse(ring, &sx)?))
        }
        Expr::Mul(a, b) => {
            let (x, sx) = evaluate_expr(s, a)?;
            let (y, sy) = evaluate_expr(s, b)?;
            Ok((ring.mul(&x, &y), product_series(s, &sx, &sy)?))
        }
        Expr::Lambda(i, a) => {
            let (_, sx) = evaluate_expr(s, a)?;
            let value = sx.get(*i as usize).cloned().ok_or_else(|| LambdaError::BeyondBound(format!("λ^{i} beyond the truncation")))?;
            Ok((value, composition_series(s, &sx, *i)?))
        }
    }
}

/// [`verify_lambda_ring`] on the values of the expressions, plus agreement of
/// each structural series with the series of its value.
pub fn verify_lambda_ring_exprs<L: LambdaRing + ?Sized>(s: &L, exprs: &[Expr]) -> Report {
    let ring = s.ring();
    let mut report = Report::new();
    let mut values = Vec::new();
    for e in exprs {
        match evaluate_expr(s, e) {
            Ok((x, structural)) => {
                match s.lambda_series(&x) {
                    Ok(direct) => check_series_eq(ring, &mut report, "lambda.well_defined", &format!("λ_t of {e:?}"), &structural, &direct),
                    Err(err) => report.fail("lambda.evaluation", format!("{e:?}: {err}")),
                }
                values.push(x);
            }
            Err(err) => report.fail("lambda.evaluation", format!("{e:?}: {err}")),
        }
    }
    report.merge(verify_lambda_ring(s, &values));
    report
}

/// λ-structure on a ring of finite rank, determined by `λ^i` on generators
/// that together with `1` form a basis over `Z`.
#[derive(Clone, Debug)]
pub struct GeneratedLambdaStructure {
    ring: RingPresentation,
    bound: u32,
    generators: Vec<(String, Element)>,
    tables: Vec<Vec<Element>>,
    unit_series: Vec<Element>,
    basis: BasisChange,
    table: Arc<UniversalTable>,
}

impl GeneratedLambdaStructure {
    /// `tables[g][i - 1]` is `λ^i` of generator `g` for `i = 1..=bound`;
    /// `unit` likewise lists `λ^i(1)` and defaults to `λ_t(1) = 1 + t`.
    pub fn new(
        ring: RingPresentation,
        bound: u32,
        generators: Vec<(String, Element)>,
        tables: Vec<Vec<Element>>,
        unit: Option<Vec<Element>>,
    ) -> Result<Self, LambdaError> {
        let table = Arc::new(UniversalTable::new(bound));
        Self::with_table(ring, generators, tables, unit, table)
    }

    /// Like [`GeneratedLambdaStructure::new`] with a precomputed table whose
    /// bound is the truncation bound.
    pub fn with_table(
        ring: RingPresentation,
        generators: Vec<(String, Element)>,
        tables: Vec<Vec<Element>>,
        unit: Option<Vec<Element>>,
        table: Arc<UniversalTable>,
    ) -> Result<Self, LambdaError> {
        let bound = table.bound();
        let n = ring.rank();
        if generators.len() + 1 != n {
            return Err(LambdaError::NotABasis);
        }
        let mut cols = vec![ring.unit().clone()];
        cols.extend(generators.iter().map(|(_, g)| g.clone()));
        if cols.iter().any(|c| c.len() != n) {
            return Err(LambdaError::Shape("generator has the wrong number of coordinates".into()));
        }
        let basis = BasisChange::new(&IntMatrix::from_columns(n, &cols))?;
        if tables.len() != generators.len() || tables.iter().any(|t| t.len() != bound as usize || t.iter().any(|x| x.len() != n)) {
            return Err(LambdaError::Shape(format!("each generator needs λ^1..λ^{bound}")));
        }
        let unit_tail = match unit {
            Some(u) => {
                if u.len() != bound as usize || u.iter().any(|x| x.len() != n) {
                    return Err(LambdaError::Shape(format!("λ_t(1) needs λ^1..λ^{bound}")));
                }
                u
            }
            None => (1..=bound).map(|k| if k == 1 { ring.one() } else { ring.zero() }).collect(),
        };
        let mut unit_series = vec![ring.one()];
        unit_series.extend(unit_tail);
        Ok(GeneratedLambdaStructure { ring, bound, generators, tables, unit_series, basis, table })
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn generator_tables(&self) -> &[Vec<Element>] {
        &self.tables
    }

    pub fn unit_series(&self) -> &[Element] {
        &self.unit_series
    }

    pub fn shared_table(&self) -> Arc<UniversalTable> {
        self.table.clone()
    }

    /// Ring basis elements followed by pairwise sums and products, and `2`.
    pub fn default_test_set(&self) -> Vec<Element> {
        let ring = &self.ring;
        let basis: Vec<Element> = (0..ring.rank()).map(|i| ring.basis(i)).collect();
        let mut out = basis.clone();
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i..] {
                out.push(ring.add(x, y));
                out.push(ring.sub(x, y));
            }
        }
        out.push(ring.from_int(&BigInt::from(2)));
        out.retain(|x| !ring.is_zero(x));
        out.dedup();
        out
    }
}

impl LambdaRing for GeneratedLambdaStructure {
    type Ring = RingPresentation;

    fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    fn bound(&self) -> u32 {
        self.bound
    }

    fn table(&self) -> &UniversalTable {
        &self.table
    }

    fn lambda_series(&self, x: &Element) -> Result<Series<Element>, LambdaError> {
        let coords = self.basis.coordinates(x);
        let mut acc = series_pow(&self.ring, &self.unit_series, &coords[0])?;
        for (g, c) in coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let mut sg = vec![self.ring.one()];
            sg.extend(self.tables[g - 1].iter().cloned());
            acc = series_mul(&self.ring, &acc, &series_pow(&self.ring, &sg, c)?);
        }
        Ok(acc)
    }

    fn generators(&self) -> Vec<(String, Element)> {
        self.generators.clone()
    }
}

/// Adams operations `Ψ^k = N_k(λ^1, …, λ^k)` of a λ-structure, as matrices.
pub fn adams_from_lambda(s: &GeneratedLambdaStructure) -> Result<PsiStructure, LambdaError> {
    let ring = &s.ring;
    let n = ring.rank();
    let series: Vec<Series<Element>> = (0..n).map(|i| s.lambda_series(&ring.basis(i))).collect::<Result<_, _>>()?;
    let mut ops = Vec::new();
    for k in 1..=s.bound {
        let cols: Vec<Element> = series.iter().map(|sx| eval_adams(s, k, sx)).collect::<Result<_, _>>()?;
        ops.push(IntMatrix::from_columns(n, &cols));
    }
    PsiStructure::new(ring.clone(), ops)
}

/// Module over a λ-structure with operations `Λ^1, …, Λ^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    names: Vec<String>,
    action: Vec<IntMatrix>,
    ops: Vec<IntMatrix>,
}

impl LambdaModule {
    /// `ops[k - 1]` is `Λ^k`.
    pub fn new(names: Vec<String>, action: Vec<IntMatrix>, ops: Vec<IntMatrix>) -> Result<Self, LambdaError> {
        let m = names.len();
        if action.iter().chain(&ops).any(|a| a.rows() != m || a.cols() != m) {
            return Err(LambdaError::Shape("module matrices must be square of the module's rank".into()));
        }
        Ok(LambdaModule { names, action, ops })
    }

    /// The zero module.
    pub fn zero(ring_rank: usize, bound: u32) -> Self {
        LambdaModule { names: Vec::new(), action: vec![IntMatrix::zeros(0, 0); ring_rank], ops: vec![IntMatrix::zeros(0, 0); bound as usize] }
    }

    /// `R` over itself with `Λ^k = (-1)^{k+1} Ψ^k`.
    pub fn regular(r: &GeneratedLambdaStructure) -> Result<Self, LambdaError> {
        let psi = adams_from_lambda(r)?;
        let ring = &r.ring;
        let action = (0..ring.rank()).map(|i| ring.action_matrix(&ring.basis(i))).collect();
        let ops = psi.ops().iter().enumerate().map(|(k, m)| if k % 2 == 0 { m.clone() } else { m.neg() }).collect();
        Ok(LambdaModule { names: ring.names().to_vec(), action, ops })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn ops(&self) -> &[IntMatrix] {
        &self.ops
    }

    pub fn bound(&self) -> u32 {
        self.ops.len() as u32
    }

    pub fn act(&self, r: &Element) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank(), self.rank());
        for (i, c) in r.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// The associated Ψ-module with `ψ^n = (-1)^{n+1} n Λ^n`.
    pub fn to_psi_module(&self) -> PsiModule {
        let ops = self.ops.iter().enumerate().map(|(k, m)| m.scale(&BigInt::from(if k % 2 == 0 { k as i64 + 1 } else { -(k as i64 + 1) }))).collect();
        PsiModule::new(self.names.clone(), self.action.clone(), ops).expect("shapes are preserved")
    }
}

/// Sign `(-1)^{(i+1)(j+1)}`.
pub fn module_sign(i: u32, j: u32) -> BigInt {
    if (i + 1) * (j + 1) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Module axioms, `Λ^1 = id`, `Λ^k(rm) = Ψ^k(r) Λ^k(m)` and
/// `Λ^{ij} = (-1)^{(i+1)(j+1)} Λ^i Λ^j`.
pub fn verify_lambda_module(r: &GeneratedLambdaStructure, m: &LambdaModule) -> Report {
    let mut report = check_module_action(&r.ring, &m.names, &m.action);
    if !report.is_ok() {
        return report;
    }
    let psi = match adams_from_lambda(r) {
        Ok(p) => p,
        Err(e) => {
            report.fail("lambda.evaluation", format!("Adams operations: {e}"));
            return report;
        }
    };
    let bound = m.bound().min(r.bound);
    if bound >= 1 {
        report.check("lambdamodule.identity", || m.ops[0].is_identity(), || "Λ^1 is not the identity".into());
    }
    for k in 1..=bound {
        let op = &m.ops[(k - 1) as usize];
        for a in 0..r.ring.rank() {
            let lhs = op.mul(&m.action[a]);
            let rhs = m.act(&psi.ops()[(k - 1) as usize].column(a)).mul(op);
            report.check("lambdamodule.semilinear", || lhs == rhs, || format!("Λ^{k}({} m) != Ψ^{k}({}) Λ^{k}(m)", r.ring.names()[a], r.ring.names()[a]));
        }
    }
    for i in 2..=bound {
        for j in 2..=bound / i {
            let lhs = &m.ops[(i * j - 1) as usize];
            let rhs = m.ops[(i - 1) as usize].mul(&m.ops[(j - 1) as usize]).scale(&module_sign(i, j));
            report.check("lambdamodule.composition", || *lhs == rhs, || format!("Λ^{} != (-1)^{{(i+1)(j+1)}} Λ^{i}Λ^{j} for i = {i}, j = {j}", i * j));
        }
    }
    report
}

/// `R ⋊ M` with `λ^i(r, m) = (λ^i r, Σ_{j=1}^i Λ^j(m) λ^{i-j}(r))`.
pub fn semidirect_lambda(r: &GeneratedLambdaStructure, m: &LambdaModule) -> Result<GeneratedLambdaStructure, LambdaError> {
    let n = r.ring.rank();
    let k = m.rank();
    if m.bound() < r.bound {
        return Err(LambdaError::BeyondBound("module operations stop below the ring's bound".into()));
    }
    let ring = r.ring.semidirect(m.names(), m.action(), None);
    let embed = |x: &Element| {
        let mut v = x.clone();
        v.extend(core::iter::repeat(BigInt::zero()).take(k));
        v
    };
    let mut generators: Vec<(String, Element)> = r.generators.iter().map(|(name, g)| (name.clone(), embed(g))).collect();
    let mut tables: Vec<Vec<Element>> = r.tables.iter().map(|t| t.iter().map(embed).collect()).collect();
    for b in 0..k {
        let mut v = vec![BigInt::zero(); n + k];
        v[n + b] = BigInt::one();
        generators.push((m.names()[b].clone(), v));
        let table = (0..r.bound as usize)
            .map(|i| {
                let mut w = vec![BigInt::zero(); n];
                w.extend(m.ops[i].column(b));
                w
            })
            .collect();
        tables.push(table);
    }
    let unit = r.unit_series[1..].iter().map(embed).collect();
    GeneratedLambdaStructure::with_table(ring, generators, tables, Some(unit), r.table.clone())
}

/// Checks Leibniz and `d(λ^i x) = Σ_{j=1}^i Λ^j(dx) λ^{i-j}(x)` on basis
/// elements and their pairwise sums.
pub fn is_lambda_derivation(d: &IntMatrix, r: &GeneratedLambdaStructure, m: &LambdaModule) -> Report {
    let mut report = Report::new();
    let ring = &r.ring;
    if d.rows() != m.rank() || d.cols() != ring.rank() {
        report.fail("derivation.shape", "d must map the ring to the module".into());
        return report;
    }
    leibniz(d, ring, &m.action, &m.names, &mut report);
    let mut samples: Vec<Element> = (0..ring.rank()).map(|i| ring.basis(i)).collect();
    for i in 0..ring.rank() {
        for j in i + 1..ring.rank() {
            samples.push(ring.add(&ring.basis(i), &ring.basis(j)));
        }
    }
    let bound = r.bound.min(m.bound());
    for x in &samples {
        let sx = match r.lambda_series(x) {
            Ok(s) => s,
            Err(e) => {
                report.fail("lambda.evaluation", format!("{e}"));
                continue;
            }
        };
        let dx = d.apply(x);
        for i in 1..=bound as usize {
            let lhs = d.apply(&sx[i]);
            let mut rhs = vec![BigInt::zero(); m.rank()];
            for j in 1..=i {
                let lam = m.ops[j - 1].apply(&dx);
                let term = m.act(&sx[i - j]).apply(&lam);
                for (a, b) in rhs.iter_mut().zip(term) {
                    *a += b;
                }
            }
            report.check(
                "derivation.lambda",
                || lhs == rhs,
                || format!("d(λ^{i}({})) differs from Σ Λ^j(dx) λ^{{i-j}}(x)", ring.render(x)),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::verify_psi_ring;

    fn integers_with_unit_series(unit: Option<Vec<Element>>) -> GeneratedLambdaStructure {
        GeneratedLambdaStructure::new(RingPresentation::integers(), 6, Vec::new(), Vec::new(), unit).unwrap()
    }

    #[test]
    fn binomial_integers() {
        let z = integers_with_unit_series(None);
        let test: Vec<Element> = [-3, -1, 1, 2, 5].iter().map(|&x| vec![BigInt::from(x)]).collect();
        let report = verify_lambda_ring(&z, &test);
        assert!(report.is_ok(), "{:?}", report.violations);
        let s = z.lambda_series(&vec![BigInt::from(5)]).unwrap();
        assert_eq!(s[2], vec![BigInt::from(10)]);
        let psi = adams_from_lambda(&z).unwrap();
        assert!(psi.ops().iter().all(IntMatrix::is_identity));
    }

    #[test]
    fn quadratic_unit_series_is_only_pre_lambda() {
        let unit: Vec<Element> = (1..=6).map(|k| vec![BigInt::from(if k <= 2 { 1 } else { 0 })]).collect();
        let z = integers_with_unit_series(Some(unit));
        let test: Vec<Element> = [1, 2, 3].iter().map(|&x| vec![BigInt::from(x)]).collect();
        let report = verify_lambda_ring(&z, &test);
        assert!(!report.violates("lambda.additive"));
        assert!(report.violates("lambda.unit"));
    }

    #[test]
    fn expressions_agree_with_values() {
        let z = integers_with_unit_series(None);
        let e = Expr::lambda(2, Expr::mul(Expr::int(3), Expr::add(Expr::int(2), Expr::int(-4))));
        let (v, series) = evaluate_expr(&z, &e).unwrap();
        assert_eq!(v, vec![BigInt::from(21)]);
        assert_eq!(series[2], vec![BigInt::from(210)]);
        assert!(verify_lambda_ring_exprs(&z, &[e]).is_ok());
    }

    #[test]
    fn regular_module_and_semidirect() {
        let z = integers_with_unit_series(None);
        let m = LambdaModule::regular(&z).unwrap();
        assert!(verify_lambda_module(&z, &m).is_ok());
        let x = semidirect_lambda(&z, &m).unwrap();
        assert!(verify_lambda_ring(&x, &x.default_test_set()).is_ok());
        let psi = adams_from_lambda(&x).unwrap();
        assert!(verify_psi_ring(&psi).is_ok());
    }
}
