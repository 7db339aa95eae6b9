//! Cochain complexes, bicomplexes and the complexes built from categories,
//! algebras and Ψ-rings.

mod bw;
mod harrison;

pub use bw::*;
pub use harrison::*;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Report;
use crate::linalg::{homology_at, kernel_basis, rank, FgAbGroup, IntMatrix};
use crate::CohomologyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
}

/// Free modules `C^0, …, C^top` with integer differentials `d^n: C^n → C^{n+1}`.
/// Over the rationals the matrices are read as rational matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    coefficients: Coefficients,
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(coefficients: Coefficients, ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self, CohomologyError> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(CohomologyError::Shape("n + 1 ranks need n differentials".into()));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.cols() != ranks[n] || d.rows() != ranks[n + 1] {
                return Err(CohomologyError::Shape(format!("d^{n} must be {}×{}", ranks[n + 1], ranks[n])));
            }
        }
        for n in 1..differentials.len() {
            if !differentials[n].mul(&differentials[n - 1]).is_zero() {
                return Err(CohomologyError::NotAComplex(n - 1));
            }
        }
        Ok(CochainComplex { coefficients, ranks, differentials })
    }

    /// Ranks are read off the matrices; an empty list gives `C^0 = 0`.
    pub fn from_differentials(coefficients: Coefficients, differentials: Vec<IntMatrix>) -> Result<Self, CohomologyError> {
        let mut ranks: Vec<usize> = differentials.iter().map(IntMatrix::cols).collect();
        ranks.push(differentials.last().map_or(0, IntMatrix::rows));
        Self::new(coefficients, ranks, differentials)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// The same complex read over `Q`.
    pub fn rationalize(mut self) -> Self {
        self.coefficients = Coefficients::Rationals;
        self
    }

    /// Degrees `0..=top` only.
    pub fn truncated(mut self, top: usize) -> Self {
        if top < self.top_degree() {
            self.ranks.truncate(top + 1);
            self.differentials.truncate(top);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CohomologyGroup {
    Integral(FgAbGroup),
    /// Dimension of a rational vector space.
    Rational(usize),
}

impl CohomologyGroup {
    /// Rank over `Q`.
    pub fn dimension(&self) -> usize {
        match self {
            CohomologyGroup::Integral(g) => g.free_rank,
            CohomologyGroup::Rational(d) => *d,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CohomologyGroup::Integral(g) => g.is_trivial(),
            CohomologyGroup::Rational(d) => *d == 0,
        }
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyGroup::Integral(g) => write!(f, "{g}"),
            CohomologyGroup::Rational(0) => write!(f, "0"),
            CohomologyGroup::Rational(1) => write!(f, "Q"),
            CohomologyGroup::Rational(d) => write!(f, "Q^{d}"),
        }
    }
}

/// `H^n = ker d^n / im d^{n-1}` for every stored degree; the top degree
/// is computed with `d^top = 0`.
pub fn cohomology_of(c: &CochainComplex) -> Vec<CohomologyGroup> {
    let top = c.top_degree();
    (0..=top)
        .map(|n| {
            let d_in = if n == 0 { IntMatrix::zeros(c.ranks[0], 0) } else { c.differentials[n - 1].clone() };
            let d_out = if n == top { IntMatrix::zeros(0, c.ranks[n]) } else { c.differentials[n].clone() };
            match c.coefficients {
                Coefficients::Integers => CohomologyGroup::Integral(homology_at(&d_in, &d_out).expect("checked at construction")),
                Coefficients::Rationals => CohomologyGroup::Rational(c.ranks[n] - rank(&d_out) - rank(&d_in)),
            }
        })
        .collect()
}

/// `Σ (-1)^n dim H^n`.
pub fn euler_characteristic(groups: &[CohomologyGroup]) -> i64 {
    groups.iter().enumerate().map(|(n, g)| if n % 2 == 0 { g.dimension() as i64 } else { -(g.dimension() as i64) }).sum()
}

/// First-quadrant grid `C^{p,q}` with commuting squares
/// `h^{p,q+1} v^{p,q} = v^{p+1,q} h^{p,q}`. The sign `(-1)^p` on vertical
/// maps is applied only when totalizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomplex {
    coefficients: Coefficients,
    ranks: Vec<Vec<usize>>,
    horizontal: Vec<Vec<IntMatrix>>,
    vertical: Vec<Vec<IntMatrix>>,
}

impl Bicomplex {
    /// `ranks[p][q]`; `horizontal[p][q]: C^{p,q} → C^{p+1,q}` for `p + 1` in
    /// range and `vertical[p][q]: C^{p,q} → C^{p,q+1}` for `q + 1` in range.
    pub fn new(
        coefficients: Coefficients,
        ranks: Vec<Vec<usize>>,
        horizontal: Vec<Vec<IntMatrix>>,
        vertical: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, CohomologyError> {
        let cols = ranks.len();
        let rows = ranks.first().map_or(0, Vec::len);
        if cols == 0 || rows == 0 || ranks.iter().any(|r| r.len() != rows) {
            return Err(CohomologyError::Shape("ranks must form a nonempty rectangle".into()));
        }
        if horizontal.len() + 1 != cols || horizontal.iter().any(|h| h.len() != rows) {
            return Err(CohomologyError::Shape("horizontal maps needed for p < P".into()));
        }
        if vertical.len() != cols || vertical.iter().any(|v| v.len() + 1 != rows) {
            return Err(CohomologyError::Shape("vertical maps needed for q < Q".into()));
        }
        for p in 0..cols {
            for q in 0..rows {
                if p + 1 < cols {
                    let h = &horizontal[p][q];
                    if h.cols() != ranks[p][q] || h.rows() != ranks[p + 1][q] {
                        return Err(CohomologyError::Shape(format!("h^{{{p},{q}}} has the wrong size")));
                    }
                }
                if q + 1 < rows {
                    let v = &vertical[p][q];
                    if v.cols() != ranks[p][q] || v.rows() != ranks[p][q + 1] {
                        return Err(CohomologyError::Shape(format!("v^{{{p},{q}}} has the wrong size")));
                    }
                }
            }
        }
        Ok(Bicomplex { coefficients, ranks, horizontal, vertical })
    }

    /// `C^{p,q} = A^p ⊗ B^q` with `h = d_A ⊗ 1` and `v = 1 ⊗ d_B`.
    pub fn tensor(a: &CochainComplex, b: &CochainComplex) -> Self {
        let ranks: Vec<Vec<usize>> = a.ranks.iter().map(|&x| b.ranks.iter().map(|&y| x * y).collect()).collect();
        let horizontal = a.differentials.iter().map(|d| b.ranks.iter().map(|&y| d.kronecker(&IntMatrix::identity(y))).collect()).collect();
        let vertical = a.ranks.iter().map(|&x| b.differentials.iter().map(|d| IntMatrix::identity(x).kronecker(d)).collect()).collect();
        let coefficients = if a.coefficients == Coefficients::Integers && b.coefficients == Coefficients::Integers {
            Coefficients::Integers
        } else {
            Coefficients::Rationals
        };
        Bicomplex { coefficients, ranks, horizontal, vertical }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Number of columns `P` and rows `Q`.
    pub fn dims(&self) -> (usize, usize) {
        (self.ranks.len(), self.ranks[0].len())
    }

    pub fn rank_at(&self, p: usize, q: usize) -> usize {
        self.ranks[p][q]
    }

    pub fn horizontal(&self, p: usize, q: usize) -> &IntMatrix {
        &self.horizontal[p][q]
    }

    pub fn vertical(&self, p: usize, q: usize) -> &IntMatrix {
        &self.vertical[p][q]
    }

    /// Row `q` as a cochain complex in `p`.
    pub fn row(&self, q: usize) -> Result<CochainComplex, CohomologyError> {
        let (cols, _) = self.dims();
        CochainComplex::new(self.coefficients, (0..cols).map(|p| self.ranks[p][q]).collect(), (0..cols - 1).map(|p| self.horizontal[p][q].clone()).collect())
    }

    /// Column `p` as a cochain complex in `q`.
    pub fn column(&self, p: usize) -> Result<CochainComplex, CohomologyError> {
        CochainComplex::new(self.coefficients, self.ranks[p].clone(), self.vertical[p].clone())
    }

    /// `h∘h = 0`, `v∘v = 0` and commuting squares.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let (cols, rows) = self.dims();
        for p in 0..cols {
            for q in 0..rows {
                if p + 2 < cols {
                    report.check(
                        "bicomplex.horizontal",
                        || self.horizontal[p + 1][q].mul(&self.horizontal[p][q]).is_zero(),
                        || format!("h∘h ≠ 0 at ({p},{q})"),
                    );
                }
                if q + 2 < rows {
                    report.check(
                        "bicomplex.vertical",
                        || self.vertical[p][q + 1].mul(&self.vertical[p][q]).is_zero(),
                        || format!("v∘v ≠ 0 at ({p},{q})"),
                    );
                }
                if p + 1 < cols && q + 1 < rows {
                    report.check(
                        "bicomplex.commute",
                        || self.horizontal[p][q + 1].mul(&self.vertical[p][q]) == self.vertical[p + 1][q].mul(&self.horizontal[p][q]),
                        || format!("square at ({p},{q}) does not commute"),
                    );
                }
            }
        }
        report
    }
}

/// `Tot^n = ⊕_{p+q=n} C^{p,q}` ordered by `p`, with `d = h + (-1)^p v`.
pub fn total_complex(b: &Bicomplex) -> Result<CochainComplex, CohomologyError> {
    let (cols, rows) = b.dims();
    let top = cols + rows - 2;
    let cells = |n: usize| -> Vec<(usize, usize)> { (0..cols).filter(|&p| p <= n && n - p < rows).map(|p| (p, n - p)).collect() };
    let offsets = |n: usize| -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        cells(n)
            .into_iter()
            .map(|(p, q)| {
                let o = off;
                off += b.ranks[p][q];
                (p, q, o)
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top).map(|n| cells(n).iter().map(|&(p, q)| b.ranks[p][q]).sum()).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut d = IntMatrix::zeros(ranks[n + 1], ranks[n]);
        let target = offsets(n + 1);
        let find = |p: usize, q: usize| target.iter().find(|&&(a, c, _)| a == p && c == q).map(|&(_, _, o)| o);
        for (p, q, o) in offsets(n) {
            if let Some(t) = find(p + 1, q) {
                d.paste(t, o, &b.horizontal[p][q]);
            }
            if let Some(t) = find(p, q + 1) {
                let v = &b.vertical[p][q];
                d.paste(t, o, &if p % 2 == 0 { v.clone() } else { v.neg() });
            }
        }
        diffs.push(d);
    }
    CochainComplex::new(b.coefficients, ranks, diffs)
}

/// Columnwise span of `a` and `b` side by side.
fn joint_rank(a: &IntMatrix, b: &IntMatrix) -> usize {
    rank(&a.hstack(b))
}

/// `dim E_2^{p,q} = dim H_h^p H_v^q` over `Q`.
pub fn e2_page(b: &Bicomplex) -> Result<Vec<Vec<usize>>, CohomologyError> {
    let report = b.check();
    if let Some(v) = report.violations.first() {
        return Err(CohomologyError::Invalid(v.detail.clone()));
    }
    let (cols, rows) = b.dims();
    let image_in = |p: usize, q: usize| -> IntMatrix {
        if q == 0 {
            IntMatrix::zeros(b.ranks[p][0], 0)
        } else {
            b.vertical[p][q - 1].clone()
        }
    };
    let cycles = |p: usize, q: usize| -> IntMatrix {
        if q + 1 < rows {
            kernel_basis(&b.vertical[p][q])
        } else {
            IntMatrix::identity(b.ranks[p][q])
        }
    };
    let mut h_dim = vec![vec![0usize; rows]; cols];
    let mut induced = vec![vec![0usize; rows]; cols];
    for p in 0..cols {
        for q in 0..rows {
            let z = cycles(p, q);
            let bnd = image_in(p, q);
            h_dim[p][q] = z.cols() - rank(&bnd);
            if p + 1 < cols {
                let hz = b.horizontal[p][q].mul(&z);
                let next = image_in(p + 1, q);
                induced[p][q] = joint_rank(&hz, &next) - rank(&next);
            }
        }
    }
    Ok((0..cols)
        .map(|p| (0..rows).map(|q| h_dim[p][q] - induced[p][q] - if p > 0 { induced[p - 1][q] } else { 0 }).collect())
        .collect())
}

/// Renders a list of groups as `H^0 = …` lines.
pub fn render_cohomology(groups: &[CohomologyGroup], label: &str) -> String {
    let mut out = String::new();
    for (n, g) in groups.iter().enumerate() {
        out.push_str(&format!("{label}^{n} = {g}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn multiplication_by_two() {
        let c = CochainComplex::new(Coefficients::Integers, vec![1, 1], vec![m(1, 1, &[2])]).unwrap();
        let h = cohomology_of(&c);
        assert!(h[0].is_zero());
        assert_eq!(h[1].to_string(), "Z/2");
    }

    #[test]
    fn zero_and_exact_complexes() {
        let c = CochainComplex::new(Coefficients::Integers, vec![2, 3], vec![IntMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(cohomology_of(&c).iter().map(ToString::to_string).collect::<Vec<_>>(), ["Z^2", "Z^3"]);
        let exact = CochainComplex::new(Coefficients::Integers, vec![1, 2, 1], vec![m(2, 1, &[1, 0]), m(1, 2, &[0, 1])]).unwrap();
        assert!(cohomology_of(&exact).iter().all(CohomologyGroup::is_zero));
        assert_eq!(CochainComplex::new(Coefficients::Integers, vec![1, 1, 1], vec![m(1, 1, &[1]), m(1, 1, &[1])]), Err(CohomologyError::NotAComplex(0)));
    }

    #[test]
    fn single_row_and_column_totalize_to_themselves() {
        let row = Bicomplex::new(Coefficients::Integers, vec![vec![1], vec![1]], vec![vec![m(1, 1, &[3])]], vec![vec![], vec![]]).unwrap();
        let t = total_complex(&row).unwrap();
        assert_eq!(t.differentials(), &[m(1, 1, &[3])]);
        let col = Bicomplex::new(Coefficients::Integers, vec![vec![1, 1]], vec![], vec![vec![m(1, 1, &[5])]]).unwrap();
        assert_eq!(total_complex(&col).unwrap().differentials(), &[m(1, 1, &[5])]);
    }

    #[test]
    fn identity_square() {
        let one = m(1, 1, &[1]);
        let b = Bicomplex::new(
            Coefficients::Integers,
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![one.clone(), one.clone()]],
            vec![vec![one.clone()], vec![one.clone()]],
        )
        .unwrap();
        assert!(b.check().is_ok());
        let t = total_complex(&b).unwrap();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        assert_eq!(t.differentials()[0], m(2, 1, &[1, 1]));
        assert_eq!(t.differentials()[1], m(1, 2, &[1, -1]));
        assert!(cohomology_of(&t).iter().all(CohomologyGroup::is_zero));
        assert_eq!(e2_page(&b).unwrap(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn exact_columns_concentrate_in_row_zero() {
        let a = CochainComplex::new(Coefficients::Rationals, vec![1, 2], vec![IntMatrix::zeros(2, 1)]).unwrap();
        let col = CochainComplex::new(Coefficients::Rationals, vec![2, 1, 0], vec![m(1, 2, &[1, 0]), IntMatrix::zeros(0, 1)]).unwrap();
        let b = Bicomplex::tensor(&a, &col);
        assert!(b.check().is_ok());
        assert_eq!(e2_page(&b).unwrap(), vec![vec![1, 0, 0], vec![2, 0, 0]]);
        let tot = cohomology_of(&total_complex(&b).unwrap());
        assert_eq!(tot.iter().map(CohomologyGroup::dimension).collect::<Vec<_>>(), [1, 2, 0, 0]);
    }
}
