//! Commutative rings used as carriers of λ- and Ψ-structures, truncated
//! power series over them, and verification reports.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{saturated_left_inverse, IntMatrix};
use crate::poly::{MultiPoly, VarId};
use crate::LambdaError;

/// A commutative unital ring with explicit element representation.
pub trait CommRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, k: &BigInt, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.scale(n, &self.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Coordinates of an element of a [`RingPresentation`] in its basis.
pub type Element = Vec<BigInt>;

/// Commutative ring free of finite rank over `Z`, given by structure constants
/// `e_i e_j = Σ_k c[i][j][k] e_k` and the coordinates of the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    names: Vec<String>,
    unit: Element,
    structure: Vec<Vec<Element>>,
}

impl RingPresentation {
    pub fn new(names: Vec<String>, unit: Element, structure: Vec<Vec<Element>>) -> Result<Self, LambdaError> {
        let n = names.len();
        if unit.len() != n || structure.len() != n || structure.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(LambdaError::Shape("structure constants do not match the basis size".into()));
        }
        Ok(RingPresentation { names, unit, structure })
    }

    /// `Z` with basis `{1}`.
    pub fn integers() -> Self {
        RingPresentation { names: vec!["1".into()], unit: vec![BigInt::one()], structure: vec![vec![vec![BigInt::one()]]] }
    }

    /// `Z ⊕ Z^k` where the unit is `e_0`, and all products of the remaining
    /// basis elements vanish.
    pub fn square_zero(names: Vec<String>) -> Self {
        let n = names.len();
        let mut structure = vec![vec![vec![BigInt::zero(); n]; n]; n];
        for i in 0..n {
            structure[0][i][i] = BigInt::one();
            structure[i][0][i] = BigInt::one();
        }
        let mut unit = vec![BigInt::zero(); n];
        if n > 0 {
            unit[0] = BigInt::one();
        }
        RingPresentation { names, unit, structure }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn structure(&self) -> &[Vec<Element>] {
        &self.structure
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Element {
        &self.structure[i][j]
    }

    /// Matrix of multiplication by `x`.
    pub fn action_matrix(&self, x: &Element) -> IntMatrix {
        let n = self.rank();
        let cols: Vec<Element> = (0..n).map(|j| self.mul(x, &self.basis(j))).collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Commutativity, associativity and unitality on basis elements.
    pub fn check_axioms(&self) -> Report {
        let mut report = Report::new();
        let n = self.rank();
        for i in 0..n {
            let e = self.basis(i);
            report.check("ring.unit", || self.mul(&self.unit, &e) == e, || format!("1 * {} != {}", self.names[i], self.names[i]));
            for j in 0..n {
                report.check(
                    "ring.commutative",
                    || self.structure[i][j] == self.structure[j][i],
                    || format!("{} * {} != {} * {}", self.names[i], self.names[j], self.names[j], self.names[i]),
                );
                for k in 0..n {
                    let lhs = self.mul(&self.structure[i][j], &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.structure[j][k]);
                    report.check(
                        "ring.associative",
                        || lhs == rhs,
                        || format!("({} {}) {} != {} ({} {})", self.names[i], self.names[j], self.names[k], self.names[i], self.names[j], self.names[k]),
                    );
                }
            }
        }
        report
    }

    /// `R ⊗ S` with basis `e_i ⊗ f_j` in row-major order.
    pub fn tensor(&self, other: &RingPresentation) -> RingPresentation {
        let (n, m) = (self.rank(), other.rank());
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("{a}⊗{b}"));
            }
        }
        let mut unit = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for j in 0..m {
                unit[i * m + j] = &self.unit[i] * &other.unit[j];
            }
        }
        let mut structure = vec![vec![vec![BigInt::zero(); n * m]; n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let out = &mut structure[i1 * m + j1][i2 * m + j2];
                        for k in 0..n {
                            let a = &self.structure[i1][i2][k];
                            if a.is_zero() {
                                continue;
                            }
                            for l in 0..m {
                                let b = &other.structure[j1][j2][l];
                                if !b.is_zero() {
                                    out[k * m + l] += a * b;
                                }
                            }
                        }
                    }
                }
            }
        }
        RingPresentation { names, unit, structure }
    }

    /// `R ⊕ M` with `(r, m)(r', m') = (rr', rm' + r'm + f(r, r'))`, where the
    /// module structure is given by matrices `action[i]` for the basis of `R`
    /// and `f` (optional) by its values `f[i][j]` on basis pairs.
    pub fn semidirect(&self, module_names: &[String], action: &[IntMatrix], f: Option<&[Vec<Element>]>) -> RingPresentation {
        let n = self.rank();
        let m = module_names.len();
        let mut names = self.names.clone();
        names.extend(module_names.iter().cloned());
        let mut unit = self.unit.clone();
        unit.extend(core::iter::repeat(BigInt::zero()).take(m));
        let mut structure = vec![vec![vec![BigInt::zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                structure[i][j][..n].clone_from_slice(&self.structure[i][j]);
                if let Some(f) = f {
                    structure[i][j][n..].clone_from_slice(&f[i][j]);
                }
            }
            for b in 0..m {
                let col = action[i].column(b);
                structure[i][n + b][n..].clone_from_slice(&col);
                structure[n + b][i][n..].clone_from_slice(&col);
            }
        }
        RingPresentation { names, unit, structure }
    }

    /// Projection of `R ⊕ M` coordinates to the first `r` coordinates.
    pub fn split_coordinates(x: &Element, r: usize) -> (Element, Element) {
        (x[..r].to_vec(), x[r..].to_vec())
    }
}

impl CommRing for RingPresentation {
    type Elem = Element;

    fn zero(&self) -> Element {
        vec![BigInt::zero(); self.rank()]
    }

    fn one(&self) -> Element {
        self.unit.clone()
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Element) -> Element {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.rank();
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn scale(&self, k: &BigInt, a: &Element) -> Element {
        a.iter().map(|x| x * k).collect()
    }

    fn render(&self, a: &Element) -> String {
        render_combination(a, &self.names)
    }
}

/// Renders `Σ c_i name_i` in the style of polynomial output.
pub fn render_combination(coords: &[BigInt], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coords.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if name == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(name);
        } else {
            out.push_str(&format!("{mag}*{name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Polynomial ring over `Z` in [`VarId`] variables, optionally with the module
/// generators [`VarId::Mod`] spanning a square-zero ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PolyRing {
    pub module_square_zero: bool,
}

impl PolyRing {
    pub fn plain() -> Self {
        PolyRing { module_square_zero: false }
    }

    pub fn with_square_zero_module() -> Self {
        PolyRing { module_square_zero: true }
    }

    fn reduce(&self, p: MultiPoly) -> MultiPoly {
        if self.module_square_zero {
            p.reduce_square_zero(|v| matches!(v, VarId::Mod(..)))
        } else {
            p
        }
    }
}

impl CommRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero()
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one()
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        if self.module_square_zero {
            let is_mod = |v: &VarId| matches!(v, VarId::Mod(..));
            let (a0, a1) = split_by(a, is_mod);
            let (b0, b1) = split_by(b, is_mod);
            let mut out = &a0 * &b0;
            out = &out + &(&a0 * &b1);
            out = &out + &(&a1 * &b0);
            return out;
        }
        a * b
    }

    fn scale(&self, k: &BigInt, a: &MultiPoly) -> MultiPoly {
        a.scale(k)
    }

    fn render(&self, a: &MultiPoly) -> String {
        a.to_string()
    }

    fn pow(&self, a: &MultiPoly, e: u32) -> MultiPoly {
        self.reduce(a.pow(e))
    }
}

/// Splits a polynomial into its part free of the selected variables and the rest.
pub fn split_by<F: Fn(&VarId) -> bool>(p: &MultiPoly, pred: F) -> (MultiPoly, MultiPoly) {
    let free = p.filter_terms(|m| !m.factors().iter().any(|(v, _)| pred(v)));
    let rest = p - &free;
    (free, rest)
}

/// Truncated power series `Σ_{i<len} a_i t^i` stored coefficientwise.
pub type Series<E> = Vec<E>;

pub fn series_one<R: CommRing>(ring: &R, len: usize) -> Series<R::Elem> {
    let mut s = vec![ring.zero(); len];
    if len > 0 {
        s[0] = ring.one();
    }
    s
}

pub fn series_mul<R: CommRing>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Series<R::Elem> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|k| {
            let mut acc = ring.zero();
            for i in 0..=k {
                if ring.is_zero(&a[i]) || ring.is_zero(&b[k - i]) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(&a[i], &b[k - i]));
            }
            acc
        })
        .collect()
}

/// Inverse of a series with constant term 1.
pub fn series_inverse<R: CommRing>(ring: &R, a: &[R::Elem]) -> Result<Series<R::Elem>, LambdaError> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    if a[0] != ring.one() {
        return Err(LambdaError::NonUnitSeries);
    }
    let mut inv = vec![ring.one()];
    for k in 1..a.len() {
        let mut acc = ring.zero();
        for i in 1..=k {
            acc = ring.add(&acc, &ring.mul(&a[i], &inv[k - i]));
        }
        inv.push(ring.neg(&acc));
    }
    Ok(inv)
}

/// `a^n` for an integer `n`, negative powers through the inverse.
pub fn series_pow<R: CommRing>(ring: &R, a: &[R::Elem], n: &BigInt) -> Result<Series<R::Elem>, LambdaError> {
    let base = if n.is_negative() { series_inverse(ring, a)? } else { a.to_vec() };
    let mut e = n.abs();
    let mut acc = series_one(ring, a.len());
    let mut b = base;
    let two = BigInt::from(2);
    while !e.is_zero() {
        if (&e % &two).is_one() {
            acc = series_mul(ring, &acc, &b);
        }
        e /= &two;
        if !e.is_zero() {
            b = series_mul(ring, &b, &b);
        }
    }
    Ok(acc)
}

/// Evaluates a polynomial with the variables replaced by ring elements.
pub fn eval_poly<R: CommRing, F: Fn(&VarId) -> Option<R::Elem>>(ring: &R, p: &MultiPoly, assign: F) -> Result<R::Elem, LambdaError> {
    let mut values: BTreeMap<VarId, R::Elem> = BTreeMap::new();
    let mut powers: BTreeMap<(VarId, u32), R::Elem> = BTreeMap::new();
    let mut acc = ring.zero();
    for (m, c) in p.terms() {
        let mut t = ring.from_int(c);
        for &(v, e) in m.factors() {
            if !values.contains_key(&v) {
                let x = assign(&v).ok_or(LambdaError::BeyondBound(format!("no value for {v}")))?;
                values.insert(v, x);
            }
            let pw = powers.entry((v, e)).or_insert_with(|| ring.pow(&values[&v], e)).clone();
            t = ring.mul(&t, &pw);
            if ring.is_zero(&t) {
                break;
            }
        }
        acc = ring.add(&acc, &t);
    }
    Ok(acc)
}

/// A failed condition: its identifier and a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub detail: String,
}

/// Outcome of a verification: number of individual checks and the failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub violations: Vec<Violation>,
    /// Remarks that are not failures, such as skipped degrees.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check<P: FnOnce() -> bool, D: FnOnce() -> String>(&mut self, condition: &str, pred: P, detail: D) {
        self.checks += 1;
        if !pred() {
            self.violations.push(Violation { condition: condition.to_string(), detail: detail() });
        }
    }

    pub fn fail(&mut self, condition: &str, detail: String) {
        self.checks += 1;
        self.violations.push(Violation { condition: condition.to_string(), detail });
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    /// Whether some violation concerns `condition`.
    pub fn violates(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

/// Solver for coordinates against a basis given by unimodular columns.
#[derive(Clone, Debug)]
pub struct BasisChange {
    inverse: IntMatrix,
}

impl BasisChange {
    /// `basis` holds the basis vectors as columns.
    pub fn new(basis: &IntMatrix) -> Result<Self, LambdaError> {
        if basis.rows() != basis.cols() {
            return Err(LambdaError::NotABasis);
        }
        let inverse = saturated_left_inverse(basis).map_err(|_| LambdaError::NotABasis)?;
        Ok(BasisChange { inverse })
    }

    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.inverse.apply(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_and_semidirect_are_rings() {
        let r = RingPresentation::square_zero(vec!["1".into(), "y".into()]);
        assert!(r.check_axioms().is_ok());
        assert!(r.tensor(&r).check_axioms().is_ok());
        let action: Vec<IntMatrix> = (0..2).map(|i| r.action_matrix(&r.basis(i))).collect();
        let x = r.semidirect(&["1'".into(), "y'".into()], &action, None);
        assert!(x.check_axioms().is_ok());
    }

    #[test]
    fn series_inverse_round_trip() {
        let z = RingPresentation::integers();
        let a: Vec<Element> = [1, 1, 1].iter().map(|&x| vec![BigInt::from(x)]).collect();
        let inv = series_inverse(&z, &a).unwrap();
        assert_eq!(series_mul(&z, &a, &inv), series_one(&z, 3));
        let cube = series_pow(&z, &a, &BigInt::from(-3)).unwrap();
        let back = series_pow(&z, &cube, &BigInt::from(-1)).unwrap();
        assert_eq!(back, series_pow(&z, &a, &BigInt::from(3)).unwrap());
    }

    #[test]
    fn square_zero_poly_ring() {
        let ring = PolyRing::with_square_zero_module();
        let m = MultiPoly::var(VarId::Mod(0, 1));
        assert!(ring.mul(&m, &m).is_zero());
        let x = &MultiPoly::one() + &m;
        assert_eq!(ring.pow(&x, 3).to_string(), "3*m1 + 1");
    }
}
