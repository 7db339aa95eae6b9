//! Truncated Ψ-ring and Ψ-operation deformations.
//!
//! `α_t = α_0 + t α_1 + …` with `α_0` the multiplication, and
//! `Ψ^i_t = ψ^i_0 + t ψ^i_1 + …` with `ψ^i_0 = Ψ^i`. All maps are given as
//! integer matrices, so additivity holds by construction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{CommRing, Element, Report};
use crate::extension::{ExtensionData, ExtensionKind};
use crate::linalg::IntMatrix;
use crate::psi::PsiStructure;

/// Coefficients of orders `1..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    /// `alpha[k - 1][a][b] = α_k(e_a, e_b)`; empty for a Ψ-operation deformation.
    pub alpha: Vec<Vec<Vec<Element>>>,
    /// `psi[k - 1][i - 1] = ψ^i_k`.
    pub psi: Vec<Vec<IntMatrix>>,
}

impl Deformation {
    pub fn trivial(r: &PsiStructure, order: u32) -> Self {
        let n = r.ring().rank();
        Deformation { alpha: Vec::new(), psi: vec![vec![IntMatrix::zeros(n, n); r.bound() as usize]; order as usize] }
    }

    pub fn order(&self) -> u32 {
        self.psi.len() as u32
    }

    /// Whether all `α_k` with `k >= 1` vanish.
    pub fn is_operation_deformation(&self) -> bool {
        self.alpha.iter().flatten().flatten().flatten().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeformationReport {
    pub report: Report,
    /// Smallest order `k` at which some identity fails.
    pub first_failure: Option<u32>,
}

impl DeformationReport {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }
}

struct Coefficients<'a> {
    r: &'a PsiStructure,
    d: &'a Deformation,
}

impl Coefficients<'_> {
    fn alpha(&self, k: usize, x: &Element, y: &Element) -> Element {
        let ring = self.r.ring();
        if k == 0 {
            return ring.mul(x, y);
        }
        let mut out = ring.zero();
        let Some(table) = self.d.alpha.get(k - 1) else { return out };
        for (a, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in y.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let c = p * q;
                for (o, v) in out.iter_mut().zip(&table[a][b]) {
                    *o += &c * v;
                }
            }
        }
        out
    }

    fn psi(&self, i: u32, k: usize, x: &Element) -> Element {
        if k == 0 {
            self.r.ops()[i as usize - 1].apply(x)
        } else {
            self.d.psi[k - 1][i as usize - 1].apply(x)
        }
    }
}

fn shape_ok(r: &PsiStructure, d: &Deformation, report: &mut Report) -> bool {
    let n = r.ring().rank();
    let bound = r.bound() as usize;
    if d.psi.iter().any(|ops| ops.len() != bound || ops.iter().any(|m| m.rows() != n || m.cols() != n)) {
        report.fail("deform.shape", format!("each order needs ψ^1..ψ^{bound} as {n}×{n} matrices"));
        return false;
    }
    if !d.alpha.is_empty()
        && (d.alpha.len() != d.psi.len()
            || d.alpha.iter().any(|t| t.len() != n || t.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))))
    {
        report.fail("deform.shape", "α needs one n×n table of ring elements per order".into());
        return false;
    }
    true
}

/// Conditions 2, 4 and 5 together with commutativity and associativity of
/// `α_t`, order by order up to `K`.
pub fn deformation_check(r: &PsiStructure, d: &Deformation) -> DeformationReport {
    let mut report = Report::new();
    if !shape_ok(r, d, &mut report) {
        return DeformationReport { report, first_failure: None };
    }
    let c = Coefficients { r, d };
    let ring = r.ring();
    let n = ring.rank();
    let bound = r.bound();
    let basis: Vec<Element> = (0..n).map(|i| ring.basis(i)).collect();
    let mut first_failure = None;
    for k in 1..=d.order() as usize {
        let before = report.violations.len();
        report.check("deform.psi1", || d.psi[k - 1][0].is_zero(), || format!("ψ^1_{k} is not zero"));
        if let Some(table) = d.alpha.get(k - 1) {
            for a in 0..n {
                for b in a + 1..n {
                    report.check("deform.commutative", || table[a][b] == table[b][a], || format!("α_{k}(e{a}, e{b}) ≠ α_{k}(e{b}, e{a})"));
                }
            }
            for (a, x) in basis.iter().enumerate() {
                for (b, y) in basis.iter().enumerate() {
                    for (e, z) in basis.iter().enumerate() {
                        let mut lhs = ring.zero();
                        let mut rhs = ring.zero();
                        for h in 0..=k {
                            lhs = ring.add(&lhs, &c.alpha(h, &c.alpha(k - h, x, y), z));
                            rhs = ring.add(&rhs, &c.alpha(h, x, &c.alpha(k - h, y, z)));
                        }
                        report.check("deform.associative", || lhs == rhs, || format!("order {k} associativity fails on (e{a}, e{b}, e{e})"));
                    }
                }
            }
        }
        for i in 1..=bound {
            for (a, x) in basis.iter().enumerate() {
                for (b, y) in basis.iter().enumerate().skip(a) {
                    let mut lhs = ring.zero();
                    let mut rhs = ring.zero();
                    for h in 0..=k {
                        lhs = ring.add(&lhs, &c.psi(i, h, &c.alpha(k - h, x, y)));
                        for l in 0..=k - h {
                            rhs = ring.add(&rhs, &c.alpha(h, &c.psi(i, l, x), &c.psi(i, k - h - l, y)));
                        }
                    }
                    report.check(
                        "deform.multiplicative",
                        || lhs == rhs,
                        || format!("order {k}: Σ ψ^{i}_h α_(k-h) ≠ Σ α_h(ψ^{i}_l, ψ^{i}_(k-h-l)) on (e{a}, e{b})"),
                    );
                }
            }
            for j in 1..=bound / i {
                for (a, x) in basis.iter().enumerate() {
                    let lhs = c.psi(i * j, k, x);
                    let mut rhs = ring.zero();
                    for l in 0..=k {
                        rhs = ring.add(&rhs, &c.psi(i, l, &c.psi(j, k - l, x)));
                    }
                    report.check(
                        "deform.composition",
                        || lhs == rhs,
                        || format!("order {k}: ψ^{}_{k}(e{a}) ≠ Σ_l ψ^{i}_l ψ^{j}_({k}-l)(e{a})", i * j),
                    );
                }
            }
        }
        if first_failure.is_none() && report.violations.len() > before {
            first_failure = Some(k as u32);
        }
    }
    DeformationReport { report, first_failure }
}

/// `(α_1, ψ^*_1)` as extension data of `R` by itself: `AExt_Ψ` with `f = α_1`,
/// or `MExt_Ψ` when `α_1 = 0`.
pub fn infinitesimal(r: &PsiStructure, d: &Deformation) -> ExtensionData {
    let n = r.ring().rank();
    let eps = d.psi.first().cloned().unwrap_or_else(|| vec![IntMatrix::zeros(n, n); r.bound() as usize]);
    if d.is_operation_deformation() {
        ExtensionData { kind: ExtensionKind::MExtPsi, f: None, eps }
    } else {
        ExtensionData { kind: ExtensionKind::AExtPsi, f: d.alpha.first().cloned(), eps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::algebra::RingPresentation;
    use crate::extension::check_psi_extension;
    use crate::linalg::p_adic_valuation;
    use crate::psi::PsiModule;

    fn dual_numbers(bound: u32) -> PsiStructure {
        let ring = RingPresentation::square_zero(vec!["1".into(), "x".into()]);
        let ops = (1..=bound as i64).map(|k| IntMatrix::from_i64(2, 2, &[1, 0, 0, k])).collect();
        PsiStructure::new(ring, ops).unwrap()
    }

    /// `ψ^k_1(x) = k v_2(k) x`.
    fn valuation_family(bound: u32) -> Vec<IntMatrix> {
        (1..=bound as i64)
            .map(|k| {
                let v = p_adic_valuation(&BigInt::from(k), 2).unwrap() as i64;
                IntMatrix::from_i64(2, 2, &[0, 0, 0, k * v])
            })
            .collect()
    }

    #[test]
    fn trivial_deformation_is_valid() {
        let r = dual_numbers(6);
        let d = Deformation::trivial(&r, 3);
        let out = deformation_check(&r, &d);
        assert!(out.is_ok());
        assert_eq!(out.first_failure, None);
        assert!(check_psi_extension(&r, &PsiModule::regular(&r), &infinitesimal(&r, &d)).is_ok());
    }

    #[test]
    fn identity_coefficient_is_rejected() {
        let r = dual_numbers(4);
        let mut d = Deformation::trivial(&r, 2);
        d.psi[0][0] = IntMatrix::from_i64(2, 2, &[0, 0, 0, 1]);
        let out = deformation_check(&r, &d);
        assert!(out.report.violates("deform.psi1"));
        assert_eq!(out.first_failure, Some(1));
    }

    #[test]
    fn first_order_family_fails_at_second_order() {
        let r = dual_numbers(4);
        let mut d = Deformation::trivial(&r, 2);
        d.psi[0] = valuation_family(4);
        let e = infinitesimal(&r, &d);
        assert!(check_psi_extension(&r, &PsiModule::regular(&r), &e).is_ok());
        let out = deformation_check(&r, &d);
        assert_eq!(out.first_failure, Some(2));
        assert!(out.report.violates("deform.composition"));
        let truncated = Deformation { alpha: Vec::new(), psi: vec![valuation_family(4)] };
        assert!(deformation_check(&r, &truncated).is_ok());
    }

    #[test]
    fn twisted_product_order_one() {
        // α_1(Ψ^k x, Ψ^k x) = k^2 while Ψ^k α_1(x, x) = 1.
        let r = dual_numbers(3);
        let mut alpha = vec![vec![vec![BigInt::zero(); 2]; 2]; 2];
        alpha[1][1][0] = BigInt::from(1);
        let mut d = Deformation { alpha: vec![alpha], psi: vec![vec![IntMatrix::zeros(2, 2); 3]] };
        let out = deformation_check(&r, &d);
        assert!(out.report.violates("deform.multiplicative"));
        assert_eq!(out.first_failure, Some(1));
        d.alpha[0][1][1][0] = BigInt::zero();
        assert!(deformation_check(&r, &d).is_ok());
    }
}
