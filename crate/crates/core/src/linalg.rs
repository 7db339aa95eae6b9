//! Exact integer linear algebra: matrices over `Z`, Smith normal form,
//! finitely generated abelian groups and stabilized gcds of integer sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::LinalgError;

/// Arbitrary-precision integer used throughout the crate.
pub type Integer = BigInt;

/// Dense row-major matrix with integer entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::RaggedRows);
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix with `rows` rows and `cols` columns; panics on ragged input.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Diagonal matrix of the given shape.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics when the inner dimensions differ.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.try_mul(other).expect("matrix dimensions do not agree")
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(r, c) * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn kronecker(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Places `blocks` on the diagonal of a larger zero matrix.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    /// Columns `range` of the matrix.
    pub fn column_slice(&self, start: usize, end: usize) -> IntMatrix {
        let mut out = Self::zeros(self.rows, end - start);
        for r in 0..self.rows {
            for c in start..end {
                out.set(r, c - start, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rows `range` of the matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(source, c) * k;
            *self.get_mut(target, c) += v;
        }
    }

    /// col[target] += k * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, source) * k;
            *self.get_mut(r, target) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// Result of a Smith normal form computation: `u * m * v == s` with `u`, `v`
/// unimodular and `s` diagonal with each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries of `s`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with smallest-magnitude pivot selection.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_nonzero(&s, t, t) else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -(s.get(i, t) / s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -(s.get(t, j) / s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |r: usize, c: usize, s: &IntMatrix| {
                    let x = s.get(r, c);
                    if !x.is_zero() && best.map_or(true, |(br, bc)| x.magnitude() < s.get(br, bc).magnitude()) {
                        best = Some((r, c));
                    }
                };
                for i in t + 1..rows {
                    consider(i, t, &s);
                }
                for j in t + 1..cols {
                    consider(t, j, &s);
                }
                if let Some((br, bc)) = best {
                    if br != t {
                        s.swap_rows(t, br);
                        u.swap_rows(t, br);
                    }
                    if bc != t {
                        s.swap_cols(t, bc);
                        v.swap_cols(t, bc);
                    }
                }
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(s.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { s, u, v }
}

fn smallest_nonzero(m: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in r0..m.rows {
        for c in c0..m.cols {
            let x = m.get(r, c);
            if !x.is_zero() && best.map_or(true, |(br, bc)| x.magnitude() < m.get(br, bc).magnitude()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Rank over `Q`, by fraction-free row elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        a.swap_rows(r, p);
        let pivot = a.get(r, c).clone();
        for i in r + 1..rows {
            let lead = a.get(i, c).clone();
            for j in c..cols {
                let v = (&pivot * a.get(i, j) - &lead * a.get(r, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Basis of the integer kernel of `m`, as columns; the basis spans a direct
/// summand of `Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    snf.v.column_slice(r, m.cols)
}

/// A left inverse `l` with `l * b == I` for a matrix whose columns span a
/// direct summand of `Z^rows`.
pub fn saturated_left_inverse(b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let snf = smith_normal_form(b);
    let factors = snf.invariant_factors();
    if factors.len() != b.cols || factors.iter().any(|d| !d.is_one()) {
        return Err(LinalgError::NotSaturated);
    }
    let mut proj = IntMatrix::zeros(b.cols, b.rows);
    for i in 0..b.cols {
        proj.set(i, i, BigInt::one());
    }
    Ok(snf.v.mul(&proj).mul(&snf.u))
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    /// Zero orders contribute to the free rank; units are dropped.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut rank = free_rank;
        let finite: Vec<BigInt> = orders
            .iter()
            .filter_map(|d| {
                if d.is_zero() {
                    rank += 1;
                    None
                } else {
                    Some(d.abs())
                }
            })
            .collect();
        let n = finite.len();
        let snf = smith_normal_form(&IntMatrix::diagonal(n, n, &finite));
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        FgAbGroup { free_rank: rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            Ok(())
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Cokernel `Z^rows / im(m)`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let factors = smith_normal_form(m).invariant_factors();
    let rank = m.rows - factors.len();
    FgAbGroup { free_rank: rank, torsion: factors.into_iter().filter(|d| !d.is_one()).collect() }
}

/// Homology `ker(d_out) / im(d_in)` at the middle term of
/// `Z^a --d_in--> Z^b --d_out--> Z^c`.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FgAbGroup, LinalgError> {
    if d_in.rows != d_out.cols {
        return Err(LinalgError::DimensionMismatch {
            left: (d_out.rows, d_out.cols),
            right: (d_in.rows, d_in.cols),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    let rank_out = rank(d_out);
    let factors = smith_normal_form(d_in).invariant_factors();
    let free = d_in.rows - rank_out - factors.len();
    Ok(FgAbGroup { free_rank: free, torsion: factors.into_iter().filter(|d| !d.is_one()).collect() })
}

/// Integer polynomial `f(l) = Σ c_e l^e` used as an index-to-value map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPolynomial {
    terms: Vec<(BigInt, u32)>,
}

impl IndexPolynomial {
    /// Combines like powers and drops zero coefficients.
    pub fn new(terms: &[(BigInt, u32)]) -> Self {
        let mut combined: Vec<(BigInt, u32)> = Vec::new();
        for (c, e) in terms {
            match combined.iter_mut().find(|(_, e2)| e2 == e) {
                Some(slot) => slot.0 += c,
                None => combined.push((c.clone(), *e)),
            }
        }
        combined.retain(|(c, _)| !c.is_zero());
        combined.sort_by_key(|&(_, e)| e);
        IndexPolynomial { terms: combined }
    }

    /// `l^a - l^b`
    pub fn power_difference(a: u32, b: u32) -> Self {
        Self::new(&[(BigInt::one(), a), (-BigInt::one(), b)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn eval(&self, l: &BigInt) -> BigInt {
        self.terms.iter().map(|(c, e)| c * num_traits::pow(l.clone(), *e as usize)).sum()
    }

    /// Value modulo `m`, in `[0, m)`.
    pub fn eval_mod(&self, l: &BigInt, m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (c, e) in &self.terms {
            acc += c * l.modpow(&BigInt::from(*e), m);
        }
        acc.mod_floor(m)
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;
const REFINEMENT_POINTS: usize = 16;

/// `gcd{f(l) : l >= start}`, or `None` when the sequence is identically zero.
pub fn stabilized_gcd(f: &IndexPolynomial, start: u64) -> Option<BigInt> {
    stabilized_gcd_filtered(f, start, None)
}

/// `gcd{f(l) : l >= start, p ∤ l}`, or `None` when every such value is zero.
pub fn stabilized_gcd_coprime_to(f: &IndexPolynomial, start: u64, p: u64) -> Option<BigInt> {
    stabilized_gcd_filtered(f, start, Some(p))
}

fn stabilized_gcd_filtered(f: &IndexPolynomial, start: u64, excluded: Option<u64>) -> Option<BigInt> {
    if f.is_zero() {
        return None;
    }
    let q = excluded.unwrap_or(1);
    let admissible = |l: u64| excluded.map_or(true, |p| l % p != 0);
    let mut indices = (start..).filter(move |&l| admissible(l));

    let mut g = BigInt::zero();
    let mut seen = 0usize;
    let mut last = start;
    while seen < 2 || g.is_zero() {
        let l = indices.next().expect("index range is unbounded");
        g = g.gcd(&f.eval(&BigInt::from(l)));
        seen += 1;
        last = l;
    }
    for _ in 0..REFINEMENT_POINTS {
        if window_covered(last, start, &g, q) {
            return Some(g);
        }
        let l = indices.next().expect("index range is unbounded");
        g = g.gcd(&f.eval_mod(&BigInt::from(l), &g));
        last = l;
        if g.is_one() {
            return Some(g);
        }
    }

    let (prime_powers, cofactor) = trial_factor(&g);
    let mut result = BigInt::one();
    for (p, a) in prime_powers {
        let pb = BigInt::from(p);
        let modulus = num_traits::pow(pb.clone(), a as usize);
        let window = modulus.to_u64().and_then(|m| m.checked_mul(q)).expect("prime power window fits in u64");
        let mut b = a;
        for l in (start..start + window).filter(|&l| admissible(l)) {
            let v = f.eval_mod(&BigInt::from(l), &modulus);
            b = b.min(valuation_bounded(&v, &pb, a));
            if b == 0 {
                break;
            }
        }
        result *= num_traits::pow(pb, b as usize);
    }
    if !cofactor.is_one() {
        let mut c = cofactor;
        let mut l = start;
        while !c.is_one() && !window_covered(l, start, &c, q) {
            if admissible(l) {
                c = c.gcd(&f.eval_mod(&BigInt::from(l), &c));
            }
            l += 1;
        }
        result *= c;
    }
    Some(result)
}

/// True once indices `start..=last` cover every residue class modulo `g * q`.
fn window_covered(last: u64, start: u64, g: &BigInt, q: u64) -> bool {
    let span = BigInt::from(last - start + 1);
    span >= g * BigInt::from(q)
}

fn valuation_bounded(v: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if v.is_zero() {
        return cap;
    }
    let mut k = 0;
    let mut x = v.clone();
    while k < cap && (&x % p).is_zero() {
        x /= p;
        k += 1;
    }
    k
}

fn trial_factor(n: &BigInt) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_DIVISION_LIMIT {
        let db = BigInt::from(d);
        if &db * &db > rest {
            break;
        }
        let mut a = 0;
        while (&rest % &db).is_zero() {
            rest /= &db;
            a += 1;
        }
        if a > 0 {
            out.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() && rest < BigInt::from(TRIAL_DIVISION_LIMIT) * BigInt::from(TRIAL_DIVISION_LIMIT) {
        let p = rest.to_u64().expect("remaining prime fits in u64");
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += 1;
        } else {
            out.push((p, 1));
        }
        rest = BigInt::one();
    }
    (out, rest)
}

/// p-adic valuation of a nonzero integer.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut x = n.clone();
    while (&x % &pb).is_zero() {
        x /= &pb;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn smith_of_small_matrix() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors(), vec![big(2), big(4)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
    }

    #[test]
    fn smith_of_relatively_prime_entries() {
        let m = IntMatrix::from_i64(1, 2, &[4, 6]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![big(2)]);
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![big(1), big(6)]);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_i64(1, 1, &[2])), FgAbGroup { free_rank: 0, torsion: vec![big(2)] });
        assert_eq!(cokernel(&IntMatrix::zeros(1, 1)), FgAbGroup::free(1));
        let g = FgAbGroup::from_cyclic_orders(1, &[big(2), big(3)]);
        assert_eq!(g, FgAbGroup { free_rank: 1, torsion: vec![big(6)] });
        assert_eq!(alloc::format!("{g}"), "Z + Z/6");
    }

    #[test]
    fn homology_requires_complex() {
        let a = IntMatrix::from_i64(1, 1, &[1]);
        assert_eq!(homology_at(&a, &a), Err(LinalgError::NotAComplex));
        let d_in = IntMatrix::from_i64(2, 1, &[2, 0]);
        let d_out = IntMatrix::from_i64(1, 2, &[0, 1]);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), FgAbGroup { free_rank: 0, torsion: vec![big(2)] });
    }

    #[test]
    fn kernel_and_left_inverse() {
        let m = IntMatrix::from_i64(1, 3, &[1, 2, 3]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let l = saturated_left_inverse(&k).unwrap();
        assert!(l.mul(&k).is_identity());
        let twice = IntMatrix::from_i64(2, 1, &[2, 0]);
        assert_eq!(saturated_left_inverse(&twice), Err(LinalgError::NotSaturated));
    }

    #[test]
    fn stabilized_gcd_examples() {
        assert_eq!(stabilized_gcd(&IndexPolynomial::power_difference(1, 2), 2), Some(big(2)));
        assert_eq!(stabilized_gcd(&IndexPolynomial::power_difference(2, 4), 2), Some(big(12)));
        assert_eq!(stabilized_gcd(&IndexPolynomial::new(&[]), 2), None);
        assert_eq!(stabilized_gcd(&IndexPolynomial::power_difference(3, 3), 2), None);
    }

    #[test]
    fn stabilized_gcd_with_initial_zeros() {
        // (l - 2)(l - 3) = l^2 - 5l + 6 vanishes at the first two indices.
        let f = IndexPolynomial::new(&[(big(1), 2), (big(-5), 1), (big(6), 0)]);
        assert_eq!(stabilized_gcd(&f, 2), Some(big(2)));
    }

    #[test]
    fn coprime_filter() {
        let f = IndexPolynomial::new(&[(big(1), 4), (big(-1), 0)]);
        assert_eq!(stabilized_gcd_coprime_to(&f, 2, 2), Some(big(16)));
        let f = IndexPolynomial::new(&[(big(1), 2), (big(-1), 0)]);
        assert_eq!(stabilized_gcd_coprime_to(&f, 2, 2), Some(big(8)));
    }

    #[test]
    fn determinant_values() {
        let m = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(m.determinant().unwrap(), big(6));
        assert_eq!(IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]).determinant().unwrap(), big(0));
    }
}
