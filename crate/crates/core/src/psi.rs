//! Ψ-rings and Ψ-modules of finite rank over `Z`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;

use crate::algebra::{CommRing, Element, RingPresentation, Report};
use crate::linalg::IntMatrix;
use crate::LambdaError;

/// Operations `Ψ^1, …, Ψ^N` on a ring of finite rank, as matrices acting on
/// coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiStructure {
    ring: RingPresentation,
    bound: u32,
    ops: Vec<IntMatrix>,
}

impl PsiStructure {
    /// `ops[k - 1]` is `Ψ^k`.
    pub fn new(ring: RingPresentation, ops: Vec<IntMatrix>) -> Result<Self, LambdaError> {
        let n = ring.rank();
        if ops.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(LambdaError::Shape("Ψ matrices must be square of the ring's rank".into()));
        }
        let bound = ops.len() as u32;
        Ok(PsiStructure { ring, bound, ops })
    }

    /// All operations equal to the identity.
    pub fn trivial(ring: RingPresentation, bound: u32) -> Self {
        let n = ring.rank();
        PsiStructure { ring, bound, ops: (0..bound).map(|_| IntMatrix::identity(n)).collect() }
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn op(&self, k: u32) -> Result<&IntMatrix, LambdaError> {
        if k == 0 || k > self.bound {
            return Err(LambdaError::BeyondBound(format!("Ψ^{k} with bound {}", self.bound)));
        }
        Ok(&self.ops[(k - 1) as usize])
    }

    pub fn ops(&self) -> &[IntMatrix] {
        &self.ops
    }

    pub fn apply(&self, k: u32, x: &Element) -> Result<Element, LambdaError> {
        Ok(self.op(k)?.apply(x))
    }
}

/// Checks `Ψ^1 = id`, that each `Ψ^k` is a unital ring endomorphism, and
/// `Ψ^i Ψ^j = Ψ^{ij}` for `ij <= N`.
pub fn verify_psi_ring(s: &PsiStructure) -> Report {
    let ring = &s.ring;
    let n = ring.rank();
    let mut report = ring.check_axioms();
    if s.bound >= 1 {
        report.check("psi.identity", || s.ops[0].is_identity(), || "Ψ^1 is not the identity".into());
    }
    for k in 1..=s.bound {
        let op = &s.ops[(k - 1) as usize];
        report.check("psi.unit", || op.apply(ring.unit()) == *ring.unit(), || format!("Ψ^{k}(1) != 1"));
        for a in 0..n {
            for b in a..n {
                let lhs = op.apply(ring.basis_product(a, b));
                let rhs = ring.mul(&op.apply(&ring.basis(a)), &op.apply(&ring.basis(b)));
                report.check(
                    "psi.multiplicative",
                    || lhs == rhs,
                    || format!("Ψ^{k}({} * {}) = {} but Ψ^{k}({})Ψ^{k}({}) = {}", ring.names()[a], ring.names()[b], ring.render(&lhs), ring.names()[a], ring.names()[b], ring.render(&rhs)),
                );
            }
        }
    }
    for i in 2..=s.bound {
        for j in 2..=s.bound / i {
            let lhs = s.ops[(i - 1) as usize].mul(&s.ops[(j - 1) as usize]);
            report.check("psi.composition", || lhs == s.ops[(i * j - 1) as usize], || format!("Ψ^{i}Ψ^{j} != Ψ^{}", i * j));
        }
    }
    report
}

fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Checks `Ψ^p(e) ≡ e^p (mod p)` on the basis for primes `p <= min(prime_bound, N)`.
pub fn verify_special_psi(s: &PsiStructure, prime_bound: u32) -> Report {
    let ring = &s.ring;
    let mut report = Report::new();
    for p in primes_up_to(prime_bound.min(s.bound)) {
        let pb = BigInt::from(p);
        for a in 0..ring.rank() {
            let e = ring.basis(a);
            let diff = ring.sub(&s.ops[(p - 1) as usize].apply(&e), &ring.pow(&e, p));
            report.check(
                "special.frobenius",
                || diff.iter().all(|x| x.mod_floor(&pb).is_zero()),
                || format!("Ψ^{p}({0}) - {0}^{p} = {1} is not divisible by {p}", ring.names()[a], ring.render(&diff)),
            );
        }
    }
    report
}

/// Coproduct in Ψ-rings: the tensor product with `Ψ^k ⊗ Ψ^k`.
pub fn psi_coproduct(r: &PsiStructure, s: &PsiStructure) -> Result<PsiStructure, LambdaError> {
    let bound = r.bound.min(s.bound);
    let ring = r.ring.tensor(&s.ring);
    let ops = (0..bound as usize).map(|k| r.ops[k].kronecker(&s.ops[k])).collect();
    PsiStructure::new(ring, ops)
}

/// Matrix of a ring map `f` between presentations is a Ψ-map when it
/// commutes with all operations up to the common bound.
pub fn is_psi_map(f: &IntMatrix, source: &PsiStructure, target: &PsiStructure) -> Report {
    let mut report = Report::new();
    for a in 0..source.ring.rank() {
        for b in a..source.ring.rank() {
            let lhs = f.apply(source.ring.basis_product(a, b));
            let rhs = target.ring.mul(&f.column(a), &f.column(b));
            report.check("map.multiplicative", || lhs == rhs, || format!("f({0} {1}) != f({0}) f({1})", source.ring.names()[a], source.ring.names()[b]));
        }
    }
    report.check("map.unit", || f.apply(source.ring.unit()) == *target.ring.unit(), || "f(1) != 1".into());
    for k in 1..=source.bound.min(target.bound) {
        let lhs = f.mul(&source.ops[(k - 1) as usize]);
        let rhs = target.ops[(k - 1) as usize].mul(f);
        report.check("map.psi", || lhs == rhs, || format!("f Ψ^{k} != Ψ^{k} f"));
    }
    report
}

/// Module of finite rank over a [`PsiStructure`] with operations `ψ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiModule {
    names: Vec<String>,
    action: Vec<IntMatrix>,
    ops: Vec<IntMatrix>,
}

impl PsiModule {
    /// `action[i]` is multiplication by the `i`-th ring basis element,
    /// `ops[k - 1]` is `ψ^k`.
    pub fn new(names: Vec<String>, action: Vec<IntMatrix>, ops: Vec<IntMatrix>) -> Result<Self, LambdaError> {
        let m = names.len();
        if action.iter().chain(&ops).any(|a| a.rows() != m || a.cols() != m) {
            return Err(LambdaError::Shape("module matrices must be square of the module's rank".into()));
        }
        Ok(PsiModule { names, action, ops })
    }

    /// `R` as a module over itself with `ψ^k = Ψ^k`.
    pub fn regular(r: &PsiStructure) -> Self {
        let ring = &r.ring;
        let action = (0..ring.rank()).map(|i| ring.action_matrix(&ring.basis(i))).collect();
        PsiModule { names: ring.names().to_vec(), action, ops: r.ops.clone() }
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

    pub fn op(&self, k: u32) -> Result<&IntMatrix, LambdaError> {
        if k == 0 || k as usize > self.ops.len() {
            return Err(LambdaError::BeyondBound(format!("ψ^{k} with bound {}", self.ops.len())));
        }
        Ok(&self.ops[(k - 1) as usize])
    }

    /// Matrix of multiplication by a ring element.
    pub fn act(&self, r: &Element) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank(), self.rank());
        for (i, c) in r.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn render(&self, m: &[BigInt]) -> String {
        crate::algebra::render_combination(m, &self.names)
    }
}

/// Module axioms for the action matrices over a ring presentation.
pub fn check_module_action(ring: &RingPresentation, names: &[String], action: &[IntMatrix]) -> Report {
    let mut report = Report::new();
    let m = names.len();
    if action.len() != ring.rank() {
        report.fail("module.shape", format!("{} action matrices for a ring of rank {}", action.len(), ring.rank()));
        return report;
    }
    let act = |r: &Element| {
        let mut out = IntMatrix::zeros(m, m);
        for (i, c) in r.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&action[i].scale(c));
            }
        }
        out
    };
    report.check("module.unit", || act(ring.unit()).is_identity(), || "1 does not act as the identity".into());
    for a in 0..ring.rank() {
        for b in 0..ring.rank() {
            let lhs = action[a].mul(&action[b]);
            let rhs = act(ring.basis_product(a, b));
            report.check("module.associative", || lhs == rhs, || format!("{0}({1} m) != ({0} {1}) m", ring.names()[a], ring.names()[b]));
        }
    }
    report
}

/// Checks the module axioms and `ψ^1 = id`, `ψ^k(rm) = Ψ^k(r) ψ^k(m)`,
/// `ψ^i ψ^j = ψ^{ij}`.
pub fn verify_psi_module(r: &PsiStructure, m: &PsiModule) -> Report {
    let mut report = check_module_action(&r.ring, &m.names, &m.action);
    if !report.is_ok() {
        return report;
    }
    let bound = m.bound().min(r.bound);
    if bound >= 1 {
        report.check("psimodule.identity", || m.ops[0].is_identity(), || "ψ^1 is not the identity".into());
    }
    for k in 1..=bound {
        let op = &m.ops[(k - 1) as usize];
        for a in 0..r.ring.rank() {
            let lhs = op.mul(&m.action[a]);
            let rhs = m.act(&r.ops[(k - 1) as usize].column(a)).mul(op);
            report.check("psimodule.semilinear", || lhs == rhs, || format!("ψ^{k}({} m) != Ψ^{k}({}) ψ^{k}(m)", r.ring.names()[a], r.ring.names()[a]));
        }
    }
    for i in 2..=bound {
        for j in 2..=bound / i {
            let lhs = m.ops[(i - 1) as usize].mul(&m.ops[(j - 1) as usize]);
            report.check("psimodule.composition", || lhs == m.ops[(i * j - 1) as usize], || format!("ψ^{i}ψ^{j} != ψ^{}", i * j));
        }
    }
    report
}

fn psi_extension_conditions(r: &PsiStructure, m: &PsiModule, eps: &[IntMatrix], f: Option<&[Vec<Element>]>, report: &mut Report) {
    let ring = &r.ring;
    let n = ring.rank();
    let bound = r.bound.min(m.bound()).min(eps.len() as u32);
    if bound >= 1 {
        report.check("ext.eps1", || eps[0].is_zero(), || "ε^1 is not zero".into());
    }
    let f_at = |x: &Element, y: &Element| -> Element {
        let mut out = alloc::vec![BigInt::zero(); m.rank()];
        if let Some(f) = f {
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (k, c) in f[i][j].iter().enumerate() {
                        out[k] += a * b * c;
                    }
                }
            }
        }
        out
    };
    for k in 1..=bound {
        let e = &eps[(k - 1) as usize];
        let psi_r = &r.ops[(k - 1) as usize];
        let psi_m = &m.ops[(k - 1) as usize];
        for a in 0..n {
            for b in a..n {
                let (x, y) = (ring.basis(a), ring.basis(b));
                let lhs = e.apply(ring.basis_product(a, b));
                let mut rhs = m.act(&psi_r.apply(&y)).apply(&e.apply(&x));
                let t = m.act(&psi_r.apply(&x)).apply(&e.apply(&y));
                rhs = rhs.iter().zip(&t).map(|(p, q)| p + q).collect();
                if f.is_some() {
                    let twist = f_at(&psi_r.apply(&x), &psi_r.apply(&y));
                    let back = psi_m.apply(&f_at(&x, &y));
                    rhs = rhs.iter().zip(twist.iter().zip(&back)).map(|(p, (q, s))| p + q - s).collect();
                }
                report.check(
                    "ext.leibniz",
                    || lhs == rhs,
                    || format!("ε^{k}({} {}) = {} but the twisted Leibniz rule gives {}", ring.names()[a], ring.names()[b], m.render(&lhs), m.render(&rhs)),
                );
            }
        }
    }
    for i in 2..=bound {
        for j in 2..=bound / i {
            let lhs = &eps[(i * j - 1) as usize];
            let rhs = m.ops[(i - 1) as usize].mul(&eps[(j - 1) as usize]).add(&eps[(i - 1) as usize].mul(&r.ops[(j - 1) as usize]));
            report.check("ext.composition", || *lhs == rhs, || format!("ε^{} != ψ^{i} ε^{j} + ε^{i} Ψ^{j}", i * j));
        }
    }
}

/// The conditions making `Ψ^k(r, m) = (Ψ^k r, ψ^k m + ε^k r)` a Ψ-ring
/// structure on `R ⋊ M`; `eps[k - 1]` is `ε^k`.
pub fn semidirect_psi_conditions(r: &PsiStructure, m: &PsiModule, eps: &[IntMatrix]) -> Report {
    let mut report = Report::new();
    psi_extension_conditions(r, m, eps, None, &mut report);
    report
}

/// Additive extension conditions: `f` symmetric Hochschild 2-cocycle and the
/// twisted rules for `ε`; `f[i][j]` is `f(e_i, e_j)`.
pub fn additive_extension_conditions(r: &PsiStructure, m: &PsiModule, eps: &[IntMatrix], f: &[Vec<Element>]) -> Report {
    let mut report = Report::new();
    let ring = &r.ring;
    let n = ring.rank();
    let f_at = |x: &Element, y: &Element| -> Element {
        let mut out = alloc::vec![BigInt::zero(); m.rank()];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                for (k, c) in f[i][j].iter().enumerate() {
                    out[k] += a * b * c;
                }
            }
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            report.check("ext.f_symmetric", || f[a][b] == f[b][a], || format!("f({0}, {1}) != f({1}, {0})", ring.names()[a], ring.names()[b]));
            for c in 0..n {
                let (x, y, z) = (ring.basis(a), ring.basis(b), ring.basis(c));
                let t1 = m.act(&x).apply(&f_at(&y, &z));
                let t2 = f_at(&ring.mul(&x, &y), &z);
                let t3 = f_at(&x, &ring.mul(&y, &z));
                let t4 = m.act(&z).apply(&f_at(&x, &y));
                let total: Vec<BigInt> = (0..m.rank()).map(|i| &t1[i] - &t2[i] + &t3[i] - &t4[i]).collect();
                report.check(
                    "ext.f_cocycle",
                    || total.iter().all(Zero::is_zero),
                    || format!("cocycle condition fails on ({}, {}, {})", ring.names()[a], ring.names()[b], ring.names()[c]),
                );
            }
        }
    }
    psi_extension_conditions(r, m, eps, Some(f), &mut report);
    report
}

/// `R ⋊ M` with `Ψ^k(r, m) = (Ψ^k r, ψ^k m + ε^k r)`.
pub fn semidirect_psi(r: &PsiStructure, m: &PsiModule, eps: &[IntMatrix]) -> Result<PsiStructure, LambdaError> {
    let n = r.ring.rank();
    let k = m.rank();
    let bound = r.bound.min(m.bound()).min(eps.len() as u32);
    if eps.iter().any(|e| e.rows() != k || e.cols() != n) {
        return Err(LambdaError::Shape("ε matrices must map the ring to the module".into()));
    }
    let ring = r.ring.semidirect(m.names(), m.action(), None);
    let ops = (0..bound as usize)
        .map(|i| {
            let mut op = IntMatrix::block_diagonal(&[r.ops[i].clone(), m.ops[i].clone()]);
            op.paste(n, 0, &eps[i]);
            op
        })
        .collect();
    PsiStructure::new(ring, ops)
}

/// Checks Leibniz `d(rs) = r ds + s dr` and `ψ^k d = d Ψ^k` for `d: R -> M`.
pub fn is_psi_derivation(d: &IntMatrix, r: &PsiStructure, m: &PsiModule) -> Report {
    let mut report = Report::new();
    let ring = &r.ring;
    if d.rows() != m.rank() || d.cols() != ring.rank() {
        report.fail("derivation.shape", "d must map the ring to the module".into());
        return report;
    }
    leibniz(d, ring, m.action(), m.names(), &mut report);
    for k in 1..=r.bound.min(m.bound()) {
        let lhs = m.ops[(k - 1) as usize].mul(d);
        let rhs = d.mul(&r.ops[(k - 1) as usize]);
        report.check("derivation.psi", || lhs == rhs, || format!("ψ^{k} d != d Ψ^{k}"));
    }
    report
}

pub(crate) fn leibniz(d: &IntMatrix, ring: &RingPresentation, action: &[IntMatrix], names: &[String], report: &mut Report) {
    let n = ring.rank();
    let act = |x: &Element| {
        let mut out = IntMatrix::zeros(names.len(), names.len());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&action[i].scale(c));
            }
        }
        out
    };
    for a in 0..n {
        for b in a..n {
            let (x, y) = (ring.basis(a), ring.basis(b));
            let lhs = d.apply(ring.basis_product(a, b));
            let p = act(&x).apply(&d.column(b));
            let q = act(&y).apply(&d.column(a));
            let rhs: Vec<BigInt> = p.iter().zip(&q).map(|(u, v)| u + v).collect();
            report.check("derivation.leibniz", || lhs == rhs, || format!("d({0} {1}) != {0} d{1} + {1} d{0}", ring.names()[a], ring.names()[b]));
        }
    }
}

/// Crossed-module condition `∂(c) c' = c ∂(c')` for a Ψ-module map
/// `∂: C → R`, together with `R`-linearity and compatibility with the operations.
pub fn check_crossed_psi_module(r: &PsiStructure, c: &PsiModule, boundary: &IntMatrix) -> Report {
    let mut report = verify_psi_module(r, c);
    let ring = &r.ring;
    if boundary.rows() != ring.rank() || boundary.cols() != c.rank() {
        report.fail("crossed.shape", "∂ must map the module to the ring".into());
        return report;
    }
    for a in 0..ring.rank() {
        let lhs = boundary.mul(&c.action()[a]);
        let rhs = ring.action_matrix(&ring.basis(a)).mul(boundary);
        report.check("crossed.linear", || lhs == rhs, || format!("∂({} c) != {} ∂(c)", ring.names()[a], ring.names()[a]));
    }
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let lhs = c.act(&boundary.column(i)).column(j);
            let rhs = c.act(&boundary.column(j)).column(i);
            report.check("crossed.peiffer", || lhs == rhs, || format!("∂({0}) {1} != {0} ∂({1})", c.names()[i], c.names()[j]));
        }
    }
    for k in 1..=r.bound.min(c.bound()) {
        let lhs = r.ops[(k - 1) as usize].mul(boundary);
        let rhs = boundary.mul(&c.ops[(k - 1) as usize]);
        report.check("crossed.psi", || lhs == rhs, || format!("Ψ^{k} ∂ != ∂ ψ^{k}"));
    }
    report
}
