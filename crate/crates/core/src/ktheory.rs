//! λ- and Ψ-structures on `K(S^{2n})` and their extensions by `K̃(S^{2n'})`.
//!
//! `K(S^{2n}) = Z·1 ⊕ Z·y` with `y² = 0`, `λ^k(y) = (-1)^{k-1} k^{n-1} y` and
//! `Ψ^k(y) = k^n y`. An extension `X = Zγ ⊕ Zβ ⊕ Zα` is determined by the
//! Hopf invariant `h` (`β² = hα`) and `Ψ^k(β) = k^n β + ν_k α`.
//!
//! The τ transformations from homotopy classes are not computed; only the
//! algebraic side of the correspondence is.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Element, RingPresentation};
use crate::extension::{ExtensionData, ExtensionKind};
use crate::lambda::{adams_from_lambda, GeneratedLambdaStructure, LambdaModule};
use crate::linalg::{p_adic_valuation, stabilized_gcd, stabilized_gcd_coprime_to, FgAbGroup, IndexPolynomial, IntMatrix};
use crate::psi::{PsiModule, PsiStructure};
use crate::LambdaError;

fn pow(base: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn signed_power(k: u32, e: u32) -> BigInt {
    let c = pow(k as u64, e);
    if k % 2 == 1 {
        c
    } else {
        -c
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `K(S^{2n})` with its λ-structure and the induced Adams operations.
#[derive(Clone, Debug)]
pub struct SphereKRing {
    n: u32,
    lambda: GeneratedLambdaStructure,
    psi: PsiStructure,
}

impl SphereKRing {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> &GeneratedLambdaStructure {
        &self.lambda
    }

    pub fn psi(&self) -> &PsiStructure {
        &self.psi
    }
}

pub fn sphere_k_ring(n: u32, bound: u32) -> Result<SphereKRing, LambdaError> {
    if n == 0 {
        return Err(LambdaError::Invalid("sphere dimension 2n needs n >= 1".into()));
    }
    let ring = RingPresentation::square_zero(vec!["1".into(), "y".into()]);
    let table = (1..=bound).map(|k| vec![BigInt::zero(), signed_power(k, n - 1)]).collect();
    let y = vec![BigInt::zero(), BigInt::one()];
    let lambda = GeneratedLambdaStructure::new(ring.clone(), bound, vec![("y".into(), y)], vec![table], None)?;
    let ops = (1..=bound).map(|k| IntMatrix::diagonal(2, 2, &[BigInt::one(), pow(k as u64, n)])).collect();
    let psi = PsiStructure::new(ring, ops)?;
    Ok(SphereKRing { n, lambda, psi })
}

/// `K̃(S^{2n'}) = Zα` as a module over `K(S^{2n})`, with `y α = 0`.
pub fn reduced_sphere_module(n2: u32, bound: u32) -> Result<(LambdaModule, PsiModule), LambdaError> {
    if n2 == 0 {
        return Err(LambdaError::Invalid("sphere dimension 2n' needs n' >= 1".into()));
    }
    let action = vec![IntMatrix::identity(1), IntMatrix::zeros(1, 1)];
    let lambda_ops = (1..=bound).map(|k| IntMatrix::diagonal(1, 1, &[signed_power(k, n2 - 1)])).collect();
    let psi_ops = (1..=bound).map(|k| IntMatrix::diagonal(1, 1, &[pow(k as u64, n2)])).collect();
    let names = vec![String::from("α")];
    Ok((LambdaModule::new(names.clone(), action.clone(), lambda_ops)?, PsiModule::new(names, action, psi_ops)?))
}

/// `G_{n,n'} = gcd{l^n - l^{n'} : l >= 2}`, `None` when `n = n'`.
pub fn big_g(n: u32, n2: u32) -> Option<BigInt> {
    stabilized_gcd(&IndexPolynomial::power_difference(n, n2), 2)
}

/// `(2^n - 2^{n'}) / G_{n,n'}`, the coefficient in the λ parity condition.
pub fn parity_coefficient(n: u32, n2: u32) -> Option<BigInt> {
    big_g(n, n2).map(|g| (pow(2, n) - pow(2, n2)) / g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtKind {
    PsiDistinct,
    PsiEqual,
    LambdaDistinct,
    LambdaEqual,
}

/// Side conditions cutting the λ groups out of the Ψ groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityConstraint {
    /// `h ≡ ν · coefficient (mod 2)`.
    Linear { coefficient: BigInt },
    /// `h ≡ ν_2 (mod 2)` and `ν_p ≡ 0 (mod p)` for odd primes `p`.
    PrimeIndexed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClassification {
    pub kind: ExtKind,
    pub n: u32,
    pub n2: u32,
    pub free_rank: usize,
    pub torsion_modulus: Option<BigInt>,
    /// The symbolic `∏_p Z` factor of the `n = n'` case.
    pub prime_indexed: bool,
    pub constraint: Option<ParityConstraint>,
}

impl ExtClassification {
    /// Whether the Hopf invariant of every extension is even.
    pub fn hopf_even_forced(&self) -> bool {
        match &self.constraint {
            Some(ParityConstraint::Linear { coefficient }) => coefficient.is_even(),
            _ => false,
        }
    }

    /// Abstract isomorphism type; `None` for the infinitely generated `n = n'` case.
    pub fn abstract_group(&self) -> Option<FgAbGroup> {
        let g = self.torsion_modulus.as_ref()?;
        let order = match &self.constraint {
            Some(ParityConstraint::Linear { coefficient }) if coefficient.is_odd() => g / 2,
            _ => g.clone(),
        };
        Some(FgAbGroup::from_cyclic_orders(self.free_rank, &[order]))
    }
}

fn cyclic(g: &BigInt) -> String {
    format!("Z_{g}")
}

impl fmt::Display for ExtClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, &self.torsion_modulus) {
            (ExtKind::PsiDistinct, Some(g)) if g.is_one() => write!(f, "Z"),
            (ExtKind::PsiDistinct, Some(g)) => write!(f, "Z ⊕ {}", cyclic(g)),
            (ExtKind::LambdaDistinct, Some(g)) => {
                if self.hopf_even_forced() {
                    write!(f, "2Z ⊕ {}", cyclic(g))
                } else {
                    write!(f, "{{(h, ν) ∈ Z ⊕ {} | h ≡ ν mod 2}}", cyclic(g))
                }
            }
            (ExtKind::LambdaEqual, _) => write!(f, "{{(h, ν_2, ν_3, …) ∈ Z ⊕ ∏_p Z | h ≡ ν_2 mod 2, ν_p ≡ 0 mod p for p > 2}}"),
            _ => write!(f, "Z ⊕ ∏_p Z"),
        }
    }
}

pub fn ext_psi(n: u32, n2: u32) -> ExtClassification {
    let g = big_g(n, n2);
    let kind = if g.is_some() { ExtKind::PsiDistinct } else { ExtKind::PsiEqual };
    ExtClassification { kind, n, n2, free_rank: 1, prime_indexed: g.is_none(), torsion_modulus: g, constraint: None }
}

pub fn ext_lambda(n: u32, n2: u32) -> ExtClassification {
    let mut out = ext_psi(n, n2);
    match &out.torsion_modulus {
        Some(g) => {
            out.kind = ExtKind::LambdaDistinct;
            out.constraint = Some(ParityConstraint::Linear { coefficient: (pow(2, n) - pow(2, n2)) / g });
        }
        None => {
            out.kind = ExtKind::LambdaEqual;
            out.constraint = Some(ParityConstraint::PrimeIndexed);
        }
    }
    out
}

/// Whether some λ-ring extension of `K(S^{2n})` by `K̃(S^{2n'})` has odd Hopf invariant.
pub fn hopf_odd_exists(n: u32, n2: u32) -> bool {
    parity_coefficient(n, n2).map_or(true, |c| c.is_odd())
}

fn divisible_by_power_of_two(x: u64, e: u32) -> bool {
    x == 0 || x.trailing_zeros() >= e
}

/// Which of the listed necessary conditions for an odd Hopf invariant holds,
/// numbered 1 to 5; `None` when none does.
pub fn odd_hopf_condition(n: u32, n2: u32) -> Option<u32> {
    let shifted = |a: u32, b: u32| b > a && a >= 3 && divisible_by_power_of_two((b - a) as u64, a - 2);
    if n == n2 {
        Some(1)
    } else if n == 1 || n2 == 1 {
        Some(2)
    } else if (n == 2 || n2 == 2) && n.abs_diff(n2) % 2 == 0 {
        Some(3)
    } else if shifted(n, n2) {
        Some(4)
    } else if shifted(n2, n) {
        Some(5)
    } else {
        None
    }
}

/// The three alternatives stated for the pair `(n, an)`: `n ∈ {1, 2, 4}`;
/// `n = 3` with `a` even; `n >= 5` with `an = 2n + 2^{n-2} b`, `b >= 0`.
pub fn multiple_pair_filter(n: u32, a: u32) -> bool {
    match n {
        1 | 2 | 4 => true,
        3 => a % 2 == 0,
        0 => false,
        _ => {
            let an = a as u64 * n as u64;
            an >= 2 * n as u64 && divisible_by_power_of_two(an - 2 * n as u64, n - 2)
        }
    }
}

/// Pairs `(n, a)` in range with an odd Hopf invariant that the filter rejects.
pub fn multiple_pair_exceptions(n_max: u32, a_max: u32) -> Vec<(u32, u32)> {
    (1..=n_max)
        .flat_map(|n| (1..=a_max).map(move |a| (n, a)))
        .filter(|&(n, a)| hopf_odd_exists(n, a * n) && !multiple_pair_filter(n, a))
        .collect()
}

/// `g^p_j`: the multiplicity of `p` in `gcd{k^j - 1 : k >= 2, p ∤ k}`.
pub fn multiplicity_g(p: u64, j: u32) -> Result<u32, LambdaError> {
    if !is_prime(p) {
        return Err(LambdaError::Invalid(format!("{p} is not prime")));
    }
    if j == 0 {
        return Err(LambdaError::Invalid("g^p_j needs j >= 1".into()));
    }
    let g = stabilized_gcd_coprime_to(&IndexPolynomial::power_difference(j, 0), 2, p).expect("k^j - 1 is not identically zero");
    Ok(p_adic_valuation(&g, p).expect("gcd is nonzero"))
}

/// First stable index `n = k + 2`.
pub fn stable_index(k: u32) -> u32 {
    k + 2
}

pub fn stable_ext(k: u32) -> ExtClassification {
    let n = stable_index(k);
    ext_lambda(n, n + k)
}

/// Entries of the stable homotopy column as printed alongside the Ext
/// groups; reference data only.
pub const STABLE_HOMOTOPY_REFERENCE: [&str; 8] =
    ["Z_2", "Z_24 ⊕ Z_3", "0", "Z_240", "Z_2 ⊕ Z_2 ⊕ Z_2", "Z_504", "Z_3", "Z_480 ⊕ Z_2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRow {
    pub k: u32,
    pub n: u32,
    pub ext: ExtClassification,
    pub homotopy_reference: Option<&'static str>,
}

pub fn stable_table(k_max: u32) -> Vec<StableRow> {
    (1..=k_max)
        .map(|k| StableRow {
            k,
            n: stable_index(k),
            ext: stable_ext(k),
            homotopy_reference: STABLE_HOMOTOPY_REFERENCE.get(k as usize - 1).copied(),
        })
        .collect()
}

pub fn render_stable_table(rows: &[StableRow]) -> String {
    let mut out = String::from("k | pi^s_{2k-1} (reference) | Ext^s_{2k}\n");
    for row in rows {
        out += &format!("{} | {} | {}\n", row.k, row.homotopy_reference.unwrap_or("-"), row.ext);
    }
    out
}

/// An extension of `K(S^{2n})` by `K̃(S^{2n'})`.
///
/// `other_primes` lists `ν_p` for odd primes and is only meaningful when
/// `n = n'`; otherwise every `ν_l` is a multiple of `ν_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereExtensionDatum {
    pub n: u32,
    pub n2: u32,
    pub h: BigInt,
    pub nu2: BigInt,
    pub other_primes: BTreeMap<u64, BigInt>,
}

impl SphereExtensionDatum {
    pub fn new(n: u32, n2: u32, h: BigInt, nu2: BigInt) -> Self {
        SphereExtensionDatum { n, n2, h, nu2, other_primes: BTreeMap::new() }
    }

    fn nu_prime(&self, p: u64) -> BigInt {
        if p == 2 {
            self.nu2.clone()
        } else {
            self.other_primes.get(&p).cloned().unwrap_or_default()
        }
    }

    fn check(&self) -> Result<(), LambdaError> {
        if self.n == 0 || self.n2 == 0 {
            return Err(LambdaError::Invalid("sphere dimensions need n, n' >= 1".into()));
        }
        if self.other_primes.keys().any(|&p| p == 2 || !is_prime(p)) {
            return Err(LambdaError::Invalid("other_primes must be keyed by odd primes".into()));
        }
        if !self.h.is_zero() && self.n2 != 2 * self.n {
            return Err(LambdaError::Invalid("Ψ^k(β)² = k^{2n} h α equals Ψ^k(hα) = k^{n'} h α only if h = 0 or n' = 2n".into()));
        }
        if self.n == self.n2 {
            return Ok(());
        }
        if self.other_primes.values().any(|v| !v.is_zero()) {
            return Err(LambdaError::Invalid("ν_p for odd p is determined by ν_2 when n ≠ n'".into()));
        }
        let d = pow(2, self.n2) - pow(2, self.n);
        let step = &d / big_g(self.n, self.n2).expect("n ≠ n'");
        if !self.nu2.is_multiple_of(&step) {
            return Err(LambdaError::Invalid(format!("ν_2 = {} is not a multiple of (2^n' - 2^n)/G = {step}, so some ν_l is not integral", self.nu2)));
        }
        Ok(())
    }

    /// `ν_l` for `l = 1..=l_max`.
    pub fn nu_family(&self, l_max: u32) -> Result<Vec<BigInt>, LambdaError> {
        self.check()?;
        let (n, n2) = (self.n, self.n2);
        if n != n2 {
            let d = pow(2, n2) - pow(2, n);
            return (1..=l_max as u64)
                .map(|l| {
                    let (q, r) = (&self.nu2 * (pow(l, n2) - pow(l, n))).div_rem(&d);
                    if r.is_zero() {
                        Ok(q)
                    } else {
                        Err(LambdaError::Invalid(format!("ν_{l} is not integral")))
                    }
                })
                .collect();
        }
        // ν_{pm} = p^n ν_m + m^n ν_p
        let mut nu = vec![BigInt::zero(); l_max as usize + 1];
        for l in 2..=l_max as u64 {
            let p = (2..=l).find(|d| l % d == 0).expect("l >= 2 has a prime factor");
            let m = l / p;
            nu[l as usize] = pow(p, n) * &nu[m as usize] + pow(m, n) * self.nu_prime(p);
        }
        Ok(nu.split_off(1))
    }

    pub fn hopf_invariant(&self) -> &BigInt {
        &self.h
    }

    /// The datum after replacing `β` by `β + Nα`.
    pub fn change_generator(&self, shift: &BigInt) -> SphereExtensionDatum {
        let mut out = self.clone();
        let diff = |p: u64| pow(p, self.n2) - pow(p, self.n);
        out.nu2 += shift * diff(2);
        for (p, v) in out.other_primes.iter_mut() {
            *v += shift * diff(*p);
        }
        out
    }

    /// `(h, z mod G)` with `ν_2 = z (2^{n'} - 2^n) / G`; `None` when `n = n'`.
    pub fn class(&self) -> Result<Option<(BigInt, BigInt)>, LambdaError> {
        self.check()?;
        let Some(g) = big_g(self.n, self.n2) else { return Ok(None) };
        let step = (pow(2, self.n2) - pow(2, self.n)) / &g;
        Ok(Some((self.h.clone(), (&self.nu2 / step).mod_floor(&g))))
    }

    /// `h ≡ ν_2 (mod 2)` and `ν_p ≡ 0 (mod p)` for odd primes `p <= bound`.
    pub fn is_special(&self, bound: u32) -> Result<bool, LambdaError> {
        let nu = self.nu_family(bound.max(2))?;
        let mut ok = (&self.h - &nu[1]).is_even();
        for p in (3..=bound as u64).filter(|&p| is_prime(p)) {
            ok &= nu[p as usize - 1].is_multiple_of(&BigInt::from(p));
        }
        Ok(ok)
    }

    /// Extension data over `K(S^{2n})` in the basis `[1, y]`: `f(y, y) = h`
    /// and `ε^k(y) = ν_k`; `MExt_Ψ` when `h = 0`.
    pub fn extension_data(&self, bound: u32) -> Result<ExtensionData, LambdaError> {
        let nu = self.nu_family(bound)?;
        let eps = nu.iter().map(|v| IntMatrix::from_columns(1, &[vec![BigInt::zero()], vec![v.clone()]])).collect();
        if self.h.is_zero() {
            return Ok(ExtensionData { kind: ExtensionKind::MExtPsi, f: None, eps });
        }
        let z: Element = vec![BigInt::zero()];
        let mut f = vec![vec![z.clone(); 2]; 2];
        f[1][1] = vec![self.h.clone()];
        Ok(ExtensionData { kind: ExtensionKind::AExtPsi, f: Some(f), eps })
    }
}

/// Checks that the Adams operations of the λ-structure are `Ψ^k y = k^n y`.
pub fn newton_compatible(r: &SphereKRing) -> Result<bool, LambdaError> {
    Ok(adams_from_lambda(&r.lambda)?.ops() == r.psi.ops())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{check_psi_extension, psi_extension_ring};
    use crate::lambda::{verify_lambda_ring, LambdaRing};
    use crate::psi::{verify_psi_ring, verify_special_psi};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn low_dimensional_operations() {
        let r = sphere_k_ring(1, 4).unwrap();
        let y = vec![big(0), big(1)];
        assert_eq!(r.lambda().lambda_series(&y).unwrap()[2], vec![big(0), big(-1)]);
        assert_eq!(r.psi().apply(2, &y).unwrap(), vec![big(0), big(2)]);
        let r = sphere_k_ring(2, 3).unwrap();
        assert_eq!(r.lambda().lambda_series(&y).unwrap()[3], vec![big(0), big(3)]);
        assert_eq!(r.psi().apply(3, &y).unwrap(), vec![big(0), big(9)]);
        assert_eq!(r.psi().apply(1, &y).unwrap(), y);
        assert!(newton_compatible(&r).unwrap());
        assert!(sphere_k_ring(0, 3).is_err());
    }

    #[test]
    fn sphere_rings_verify() {
        for n in 1..=4 {
            let r = sphere_k_ring(n, 6).unwrap();
            let report = verify_lambda_ring(r.lambda(), &r.lambda().default_test_set());
            assert!(report.is_ok(), "{n}: {:?}", report.violations);
            assert!(verify_special_psi(r.psi(), 6).is_ok());
            assert!(verify_psi_ring(r.psi()).is_ok());
        }
    }

    #[test]
    fn small_g_values() {
        assert_eq!(big_g(1, 2), Some(big(2)));
        assert_eq!(big_g(2, 4), Some(big(12)));
        assert_eq!(big_g(4, 6), Some(big(24)));
        assert_eq!(big_g(3, 3), None);
        assert_eq!(ext_psi(1, 2).to_string(), "Z ⊕ Z_2");
        assert_eq!(ext_psi(2, 2).to_string(), "Z ⊕ ∏_p Z");
    }

    #[test]
    fn lambda_classification() {
        let e = ext_lambda(1, 2);
        assert_eq!(e.constraint, Some(ParityConstraint::Linear { coefficient: big(-1) }));
        assert!(!e.hopf_even_forced());
        assert_eq!(e.abstract_group(), Some(FgAbGroup::free(1)));
        assert_eq!(ext_lambda(3, 3).constraint, Some(ParityConstraint::PrimeIndexed));
        assert_eq!(stable_ext(4).to_string(), "2Z ⊕ Z_240");
    }

    #[test]
    fn g_multiplicities() {
        assert_eq!(multiplicity_g(2, 2).unwrap(), 3);
        assert_eq!(multiplicity_g(2, 4).unwrap(), 4);
        assert_eq!(multiplicity_g(3, 2).unwrap(), 1);
        assert!(multiplicity_g(4, 2).is_err());
    }

    #[test]
    fn nu_values() {
        let d = SphereExtensionDatum::new(1, 2, big(1), big(-2));
        assert_eq!(d.nu_family(3).unwrap(), vec![big(0), big(-2), big(-6)]);
        assert!(SphereExtensionDatum::new(1, 2, big(0), big(0)).nu_family(6).unwrap().iter().all(Zero::is_zero));
        // (2^6 - 2^3) / G_{3,6} = 28
        assert!(SphereExtensionDatum::new(3, 6, big(0), big(1)).nu_family(4).is_err());
        assert!(SphereExtensionDatum::new(1, 3, big(1), big(0)).nu_family(4).is_err());
    }

    #[test]
    fn equal_dimensions_use_prime_values() {
        let mut d = SphereExtensionDatum::new(2, 2, big(0), big(3));
        d.other_primes.insert(3, big(6));
        let nu = d.nu_family(6).unwrap();
        // ν_4 = 4 ν_2 + 4 ν_2, ν_6 = 4 ν_3 + 9 ν_2
        assert_eq!(nu[3], big(24));
        assert_eq!(nu[5], big(24 + 27));
        let r = sphere_k_ring(2, 6).unwrap();
        let (_, m) = reduced_sphere_module(2, 6).unwrap();
        assert!(check_psi_extension(r.psi(), &m, &d.extension_data(6).unwrap()).is_ok());
    }

    #[test]
    fn data_give_psi_extensions() {
        let bound = 6;
        for (n, n2) in [(1, 2), (2, 4), (1, 3), (3, 4)] {
            let r = sphere_k_ring(n, bound).unwrap();
            let (_, m) = reduced_sphere_module(n2, bound).unwrap();
            let step = (pow(2, n2) - pow(2, n)) / big_g(n, n2).unwrap();
            let hs: &[i64] = if n2 == 2 * n { &[0, 1, 3] } else { &[0] };
            for (&h, z) in hs.iter().zip([1, 1, -2]) {
                let d = SphereExtensionDatum::new(n, n2, big(h), &step * big(z));
                let e = d.extension_data(bound).unwrap();
                let report = check_psi_extension(r.psi(), &m, &e);
                assert!(report.is_ok(), "({n}, {n2}) h={h} z={z}: {:?}", report.violations);
                let x = psi_extension_ring(r.psi(), &m, &e).unwrap();
                assert!(verify_psi_ring(&x).is_ok());
                assert_eq!(verify_special_psi(&x, bound).is_ok(), d.is_special(bound).unwrap());
            }
        }
    }

    #[test]
    fn generator_change_preserves_class() {
        let d = SphereExtensionDatum::new(2, 4, big(5), big(12 * 7));
        let e = d.change_generator(&big(3));
        assert_eq!(e.nu2, big(84 + 36));
        assert_eq!(d.class().unwrap(), e.class().unwrap());
    }

    #[test]
    fn multiple_pair_filter_misses_some_pairs() {
        let bad = multiple_pair_exceptions(5, 9);
        assert!(bad.contains(&(3, 3)));
        assert!(bad.contains(&(5, 9)));
        assert!(bad.iter().all(|&(n, _)| n == 3 || n >= 5));
    }
}
