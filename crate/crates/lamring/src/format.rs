//! JSON input files.
//!
//! Every file is an object whose `"format"` field names its schema. Integers
//! are JSON numbers or decimal strings, matrices are lists of rows, and
//! objects and morphisms are referred to by position.

use std::collections::BTreeMap;
use std::fmt;

use lamring_core::algebra::{Element, RingPresentation};
use lamring_core::cohomology::{AlgebraDiagram, Coefficients, FinAlgebra, FiniteCategory, Morphism, NaturalSystem};
use lamring_core::deformation::Deformation;
use lamring_core::extension::{ExtensionData, ExtensionKind};
use lamring_core::lambda::{GeneratedLambdaStructure, LambdaModule};
use lamring_core::linalg::IntMatrix;
use lamring_core::psi::{PsiModule, PsiStructure};
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Malformed or inconsistent input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError::new(msg))
}

fn core<T, E: fmt::Display>(what: &str, r: Result<T, E>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{what}: {e}")))
}

/// An integer read from a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Signed(v) => Ok(Int(v.into())),
            Repr::Unsigned(v) => Ok(Int(v.into())),
            Repr::Text(s) => s.trim().parse().map(Int).map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub type Vector = Vec<Int>;
pub type Matrix = Vec<Vec<Int>>;

pub fn to_ints(v: &[BigInt]) -> Vector {
    v.iter().cloned().map(Int).collect()
}

pub fn to_rows(m: &IntMatrix) -> Matrix {
    m.to_rows().iter().map(|r| to_ints(r)).collect()
}

fn vector(v: &[Int], len: usize, what: &str) -> Result<Element, InputError> {
    if v.len() != len {
        return err(format!("{what}: expected {len} entries, found {}", v.len()));
    }
    Ok(v.iter().map(|x| x.0.clone()).collect())
}

fn matrix(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<IntMatrix, InputError> {
    if m.len() != rows {
        return err(format!("{what}: expected {rows} rows, found {}", m.len()));
    }
    let mut out = IntMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in vector(row, cols, &format!("{what} row {i}"))?.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Ok(out)
}

fn matrices(ms: &[Matrix], rows: usize, cols: usize, what: &str) -> Result<Vec<IntMatrix>, InputError> {
    ms.iter().enumerate().map(|(k, m)| matrix(m, rows, cols, &format!("{what}[{k}]"))).collect()
}

/// A commutative ring free of finite rank over `Z`.
///
/// `structure[i][j]` holds the coordinates of `e_i e_j`. Without
/// `structure` the ring is `Z ⊕ Z^k` with unit `e_0` and all other products
/// zero; without `unit` the unit is `e_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Vec<Vec<Vector>>>,
}

impl RingSpec {
    pub fn build(&self) -> Result<RingPresentation, InputError> {
        let n = self.basis.len();
        if n == 0 {
            return err("ring: the basis is empty");
        }
        let Some(structure) = &self.structure else {
            let ring = RingPresentation::square_zero(self.basis.clone());
            if let Some(u) = &self.unit {
                if vector(u, n, "ring unit")? != ring.basis(0) {
                    return err("ring: a non-standard unit needs explicit structure constants");
                }
            }
            return Ok(ring);
        };
        let unit = match &self.unit {
            Some(u) => vector(u, n, "ring unit")?,
            None => (0..n).map(|i| BigInt::from((i == 0) as i64)).collect(),
        };
        if structure.len() != n {
            return err(format!("ring structure: expected {n} rows, found {}", structure.len()));
        }
        let mut table = Vec::with_capacity(n);
        for (i, row) in structure.iter().enumerate() {
            if row.len() != n {
                return err(format!("ring structure row {i}: expected {n} products, found {}", row.len()));
            }
            table.push(row.iter().enumerate().map(|(j, v)| vector(v, n, &format!("ring structure e{i}*e{j}"))).collect::<Result<Vec<_>, _>>()?);
        }
        core("ring", RingPresentation::new(self.basis.clone(), unit, table))
    }

    pub fn from_ring(r: &RingPresentation) -> Self {
        let n = r.rank();
        let structure = (0..n).map(|i| (0..n).map(|j| to_ints(r.basis_product(i, j))).collect()).collect();
        RingSpec { basis: r.names().to_vec(), unit: Some(to_ints(r.unit())), structure: Some(structure) }
    }
}

/// A module over a ring: `action[i]` is the matrix of multiplication by `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub names: Vec<String>,
    pub action: Vec<Matrix>,
}

impl ModuleSpec {
    fn build(&self, ring_rank: usize) -> Result<(Vec<String>, Vec<IntMatrix>), InputError> {
        let m = self.names.len();
        if self.action.len() != ring_rank {
            return err(format!("module action: expected one matrix per ring basis element ({ring_rank}), found {}", self.action.len()));
        }
        Ok((self.names.clone(), matrices(&self.action, m, m, "module action")?))
    }
}

/// A Ψ-module: the module together with `psi[k - 1] = ψ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiModuleSpec {
    pub names: Vec<String>,
    pub action: Vec<Matrix>,
    pub psi: Vec<Matrix>,
}

/// A λ-module: the module together with `lambda[k - 1] = Λ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaModuleSpec {
    pub names: Vec<String>,
    pub action: Vec<Matrix>,
    pub lambda: Vec<Matrix>,
}

/// A Ψ-ring with `psi[k - 1] = Ψ^k` for `k = 1..N`, optionally with a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiRingSpec {
    pub ring: RingSpec,
    pub psi: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<PsiModuleSpec>,
}

impl PsiRingSpec {
    pub fn build(&self) -> Result<PsiStructure, InputError> {
        let ring = self.ring.build()?;
        let n = ring.rank();
        if self.psi.is_empty() {
            return err("psi: at least Ψ^1 is needed");
        }
        core("psi-ring", PsiStructure::new(ring, matrices(&self.psi, n, n, "psi")?))
    }

    pub fn build_module(&self, r: &PsiStructure) -> Result<Option<PsiModule>, InputError> {
        let Some(m) = &self.module else { return Ok(None) };
        let spec = ModuleSpec { names: m.names.clone(), action: m.action.clone() };
        let (names, action) = spec.build(r.ring().rank())?;
        let k = names.len();
        core("psi module", PsiModule::new(names, action, matrices(&m.psi, k, k, "module psi")?)).map(Some)
    }

    pub fn from_structure(r: &PsiStructure, m: Option<&PsiModule>) -> Self {
        PsiRingSpec {
            ring: RingSpec::from_ring(r.ring()),
            psi: r.ops().iter().map(to_rows).collect(),
            module: m.map(|m| PsiModuleSpec {
                names: m.names().to_vec(),
                action: m.action().iter().map(to_rows).collect(),
                psi: m.ops().iter().map(to_rows).collect(),
            }),
        }
    }
}

/// A λ-ring generator with `lambda[i - 1] = λ^i(element)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub element: Vector,
    pub lambda: Vec<Vector>,
}

/// A λ-ring given on generators which, with `1`, form a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaRingSpec {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub generators: Vec<GeneratorSpec>,
    /// `λ^i(1)`; defaults to `λ_t(1) = 1 + t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_lambda: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<LambdaModuleSpec>,
}

impl LambdaRingSpec {
    /// The bound is the `bound` field, else the length of the generator
    /// tables, else `fallback`.
    pub fn build(&self, fallback: u32) -> Result<GeneratedLambdaStructure, InputError> {
        let ring = self.ring.build()?;
        let n = ring.rank();
        let bound = self.bound.or_else(|| self.generators.first().map(|g| g.lambda.len() as u32)).unwrap_or(fallback);
        if bound == 0 {
            return err("lambda-ring: the bound must be positive");
        }
        let mut gens = Vec::new();
        let mut tables = Vec::new();
        for g in &self.generators {
            if g.lambda.len() != bound as usize {
                return err(format!("generator {}: expected λ^1..λ^{bound}, found {} entries", g.name, g.lambda.len()));
            }
            gens.push((g.name.clone(), vector(&g.element, n, &format!("generator {}", g.name))?));
            tables.push(g.lambda.iter().enumerate().map(|(i, v)| vector(v, n, &format!("λ^{}({})", i + 1, g.name))).collect::<Result<Vec<_>, _>>()?);
        }
        let unit = match &self.unit_lambda {
            Some(u) => {
                if u.len() != bound as usize {
                    return err(format!("unit_lambda: expected {bound} entries, found {}", u.len()));
                }
                Some(u.iter().enumerate().map(|(i, v)| vector(v, n, &format!("λ^{}(1)", i + 1))).collect::<Result<Vec<_>, _>>()?)
            }
            None => None,
        };
        core("lambda-ring", GeneratedLambdaStructure::new(ring, bound, gens, tables, unit))
    }

    pub fn build_module(&self, r: &GeneratedLambdaStructure) -> Result<Option<LambdaModule>, InputError> {
        let Some(m) = &self.module else { return Ok(None) };
        let spec = ModuleSpec { names: m.names.clone(), action: m.action.clone() };
        let (names, action) = spec.build(r.presentation().rank())?;
        let k = names.len();
        core("lambda module", LambdaModule::new(names, action, matrices(&m.lambda, k, k, "module lambda")?)).map(Some)
    }
}

/// The ring part of derivation and extension files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "kebab-case")]
pub enum Structure {
    PsiRing(PsiRingSpec),
    LambdaRing(LambdaRingSpec),
}

/// A ring together with its module, whichever flavour the file provides.
pub enum Built {
    Psi(PsiStructure, PsiModule),
    Lambda(GeneratedLambdaStructure, LambdaModule),
}

impl Structure {
    pub fn build_with_module(&self, fallback: u32) -> Result<Built, InputError> {
        match self {
            Structure::PsiRing(s) => {
                let r = s.build()?;
                let m = s.build_module(&r)?.ok_or_else(|| InputError::new("structure: a module is required"))?;
                Ok(Built::Psi(r, m))
            }
            Structure::LambdaRing(s) => {
                let r = s.build(fallback)?;
                let m = s.build_module(&r)?.ok_or_else(|| InputError::new("structure: a module is required"))?;
                Ok(Built::Lambda(r, m))
            }
        }
    }
}

/// `d: R → M` as a matrix with one column per ring basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub structure: Structure,
    pub d: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindSpec {
    AExtPsi,
    MExtPsi,
    AExtLambda,
    MExtLambda,
}

impl From<KindSpec> for ExtensionKind {
    fn from(k: KindSpec) -> Self {
        match k {
            KindSpec::AExtPsi => ExtensionKind::AExtPsi,
            KindSpec::MExtPsi => ExtensionKind::MExtPsi,
            KindSpec::AExtLambda => ExtensionKind::AExtLambda,
            KindSpec::MExtLambda => ExtensionKind::MExtLambda,
        }
    }
}

/// Cocycle data `f` (additive variants) and `eps[k - 1] = ε^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub kind: KindSpec,
    pub structure: Structure,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<Vector>>>,
    pub eps: Vec<Matrix>,
}

impl ExtensionSpec {
    pub fn build(&self, fallback: u32) -> Result<(Built, ExtensionData), InputError> {
        let kind = ExtensionKind::from(self.kind);
        let built = self.structure.build_with_module(fallback)?;
        let (n, m) = match &built {
            Built::Psi(r, m) if !kind.is_lambda() => (r.ring().rank(), m.rank()),
            Built::Lambda(r, m) if kind.is_lambda() => (r.presentation().rank(), m.rank()),
            _ => return err(format!("extension: kind {:?} does not match the structure", self.kind)),
        };
        let f = match (&self.f, kind.is_additive()) {
            (Some(f), true) => {
                if f.len() != n || f.iter().any(|row| row.len() != n) {
                    return err(format!("extension f: expected a {n}×{n} table"));
                }
                Some(
                    f.iter()
                        .enumerate()
                        .map(|(a, row)| row.iter().enumerate().map(|(b, v)| vector(v, m, &format!("f(e{a}, e{b})"))).collect())
                        .collect::<Result<Vec<Vec<_>>, _>>()?,
                )
            }
            (None, true) => return err("extension: additive kinds need f"),
            (Some(_), false) => return err("extension: multiplicative kinds take no f"),
            (None, false) => None,
        };
        let eps = matrices(&self.eps, m, n, "eps")?;
        Ok((built, ExtensionData { kind, f, eps }))
    }
}

/// `alpha[k - 1][a][b] = α_k(e_a, e_b)` and `psi[k - 1][i - 1] = ψ^i_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub structure: PsiRingSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<Vec<Vec<Vector>>>,
    pub psi: Vec<Vec<Matrix>>,
}

impl DeformationSpec {
    pub fn build(&self) -> Result<(PsiStructure, Deformation), InputError> {
        let r = self.structure.build()?;
        let n = r.ring().rank();
        if !self.alpha.is_empty() && self.alpha.len() != self.psi.len() {
            return err("deformation: alpha and psi must have the same order");
        }
        let mut alpha = Vec::new();
        for (k, table) in self.alpha.iter().enumerate() {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return err(format!("deformation alpha[{k}]: expected a {n}×{n} table"));
            }
            alpha.push(
                table
                    .iter()
                    .enumerate()
                    .map(|(a, row)| row.iter().enumerate().map(|(b, v)| vector(v, n, &format!("α_{}(e{a}, e{b})", k + 1))).collect())
                    .collect::<Result<Vec<Vec<_>>, _>>()?,
            );
        }
        let mut psi = Vec::new();
        for (k, ops) in self.psi.iter().enumerate() {
            if ops.len() != r.bound() as usize {
                return err(format!("deformation psi[{k}]: expected {} operations, found {}", r.bound(), ops.len()));
            }
            psi.push(matrices(ops, n, n, &format!("psi[{k}]"))?);
        }
        Ok((r, Deformation { alpha, psi }))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientSpec {
    #[default]
    Z,
    Q,
}

impl From<CoefficientSpec> for Coefficients {
    fn from(c: CoefficientSpec) -> Self {
        match c {
            CoefficientSpec::Z => Coefficients::Integers,
            CoefficientSpec::Q => Coefficients::Rationals,
        }
    }
}

/// `C^0 → C^1 → …` with `differentials[n]` of size `ranks[n+1] × ranks[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub coefficients: CoefficientSpec,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Matrix>,
}

impl ComplexSpec {
    pub fn build(&self) -> Result<lamring_core::cohomology::CochainComplex, InputError> {
        if self.ranks.is_empty() || self.differentials.len() + 1 != self.ranks.len() {
            return err("complex: expected one differential fewer than ranks");
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(n, d)| matrix(d, self.ranks[n + 1], self.ranks[n], &format!("d^{n}")))
            .collect::<Result<Vec<_>, _>>()?;
        core("complex", lamring_core::cohomology::CochainComplex::new(self.coefficients.into(), self.ranks.clone(), diffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A poset (`relations` of pairs `i ≤ j`) or an explicit finite category
/// (`morphisms`, `identities`, and `composition` triples `(g, f, g∘f)`).
///
/// The morphisms of a poset are the pairs `i ≤ j` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<MorphismSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<(usize, usize, usize)>>,
}

impl CategorySpec {
    pub fn build(&self) -> Result<FiniteCategory, InputError> {
        match (&self.relations, &self.morphisms, &self.identities, &self.composition) {
            (Some(rel), None, None, None) => core("category", FiniteCategory::poset(self.objects.clone(), rel)),
            (None, Some(ms), Some(ids), Some(table)) => {
                let ms = ms.iter().map(|m| Morphism { name: m.name.clone(), source: m.source, target: m.target }).collect();
                core("category", FiniteCategory::new(self.objects.clone(), ms, ids.clone(), table))
            }
            _ => err("category: give either relations, or morphisms with identities and composition"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Functor,
    Constant,
    Natural,
}

/// A matrix attached to a pair of morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub pair: (usize, usize),
    pub matrix: Matrix,
}

/// Coefficients for Baues–Wirsching cohomology.
///
/// * `functor`: `ranks` per object and `maps` per morphism.
/// * `constant`: a single `rank`.
/// * `natural`: `ranks` per morphism, `push` entries for `(a, f)` giving
///   `D(f) → D(a∘f)` and `pull` entries for `(f, b)` giving `D(f) → D(f∘b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub kind: SystemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub push: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pull: Option<Vec<PairEntry>>,
}

impl SystemSpec {
    pub fn build(&self, cat: &FiniteCategory) -> Result<NaturalSystem, InputError> {
        let ms = cat.morphisms();
        match self.kind {
            SystemKind::Constant => match (self.rank, &self.ranks, &self.maps, &self.push, &self.pull) {
                (Some(r), None, None, None, None) => Ok(NaturalSystem::constant(cat, r)),
                _ => err("constant system: give only rank"),
            },
            SystemKind::Functor => match (self.rank, &self.ranks, &self.maps, &self.push, &self.pull) {
                (None, Some(ranks), Some(maps), None, None) => {
                    if ranks.len() != cat.objects().len() || maps.len() != ms.len() {
                        return err("functor system: one rank per object and one map per morphism");
                    }
                    let maps = maps
                        .iter()
                        .zip(ms)
                        .map(|(m, f)| matrix(m, ranks[f.target], ranks[f.source], &format!("F({})", f.name)))
                        .collect::<Result<Vec<_>, _>>()?;
                    core("functor system", NaturalSystem::from_functor(cat, ranks, &maps))
                }
                _ => err("functor system: give ranks and maps"),
            },
            SystemKind::Natural => match (self.rank, &self.ranks, &self.maps, &self.push, &self.pull) {
                (None, Some(ranks), None, Some(push), Some(pull)) => {
                    if ranks.len() != ms.len() {
                        return err("natural system: one rank per morphism");
                    }
                    let entries = |list: &[PairEntry], push: bool| -> Result<BTreeMap<(usize, usize), IntMatrix>, InputError> {
                        let mut out = BTreeMap::new();
                        for e in list {
                            let (a, b) = e.pair;
                            if a >= ms.len() || b >= ms.len() {
                                return err(format!("natural system: pair {:?} refers to an unknown morphism", e.pair));
                            }
                            let (f, composite) = if push { (b, cat.compose(a, b)) } else { (a, cat.compose(a, b)) };
                            let Some(c) = composite else {
                                return err(format!("natural system: pair {:?} is not composable", e.pair));
                            };
                            let m = matrix(&e.matrix, ranks[c], ranks[f], &format!("natural system entry {:?}", e.pair))?;
                            if out.insert(e.pair, m).is_some() {
                                return err(format!("natural system: pair {:?} given twice", e.pair));
                            }
                        }
                        Ok(out)
                    };
                    core("natural system", NaturalSystem::new(cat, ranks.clone(), entries(push, true)?, entries(pull, false)?))
                }
                _ => err("natural system: give ranks, push and pull"),
            },
        }
    }
}

/// One algebra with a module per object, and maps per morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub algebras: Vec<RingSpec>,
    pub algebra_maps: Vec<Matrix>,
    pub modules: Vec<ModuleSpec>,
    pub module_maps: Vec<Matrix>,
}

/// A finite algebra over `Q` with a module, the algebra itself by default.
/// `diagram` is used when a category is supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSpec>,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<FinAlgebra, InputError> {
        let ring = self.ring.build()?;
        match &self.module {
            None => core("algebra", FinAlgebra::regular(Coefficients::Rationals, ring)),
            Some(m) => {
                let (names, action) = m.build(ring.rank())?;
                core("algebra", FinAlgebra::new(Coefficients::Rationals, ring, names, action))
            }
        }
    }

    pub fn build_diagram(&self, cat: FiniteCategory) -> Result<AlgebraDiagram, InputError> {
        let Some(d) = &self.diagram else {
            return core("algebra diagram", AlgebraDiagram::constant(cat, &self.build()?));
        };
        let objs = cat.objects().len();
        let ms = cat.morphisms().to_vec();
        if d.algebras.len() != objs || d.modules.len() != objs {
            return err("algebra diagram: one algebra and one module per object");
        }
        if d.algebra_maps.len() != ms.len() || d.module_maps.len() != ms.len() {
            return err("algebra diagram: one algebra map and one module map per morphism");
        }
        let algebras = d.algebras.iter().map(RingSpec::build).collect::<Result<Vec<_>, _>>()?;
        let modules = d.modules.iter().zip(&algebras).map(|(m, a)| m.build(a.rank())).collect::<Result<Vec<_>, _>>()?;
        let mut algebra_maps = Vec::new();
        let mut module_maps = Vec::new();
        for (i, f) in ms.iter().enumerate() {
            algebra_maps.push(matrix(&d.algebra_maps[i], algebras[f.target].rank(), algebras[f.source].rank(), &format!("A({})", f.name))?);
            module_maps.push(matrix(&d.module_maps[i], modules[f.target].0.len(), modules[f.source].0.len(), &format!("M({})", f.name))?);
        }
        core("algebra diagram", AlgebraDiagram::new(cat, algebras, algebra_maps, modules, module_maps))
    }
}

/// Any input file, selected by its `"format"` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "kebab-case")]
pub enum InputFile {
    PsiRing(PsiRingSpec),
    LambdaRing(LambdaRingSpec),
    Derivation(DerivationSpec),
    Extension(ExtensionSpec),
    Deformation(DeformationSpec),
    Complex(ComplexSpec),
    Category(CategorySpec),
    System(SystemSpec),
    Algebra(AlgebraSpec),
}

impl InputFile {
    pub fn name(&self) -> &'static str {
        match self {
            InputFile::PsiRing(_) => "psi-ring",
            InputFile::LambdaRing(_) => "lambda-ring",
            InputFile::Derivation(_) => "derivation",
            InputFile::Extension(_) => "extension",
            InputFile::Deformation(_) => "deformation",
            InputFile::Complex(_) => "complex",
            InputFile::Category(_) => "category",
            InputFile::System(_) => "system",
            InputFile::Algebra(_) => "algebra",
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError(format!("invalid input file: {e}")))
    }
}

/// `d: R → M` read as a `module rank × ring rank` matrix.
pub fn derivation_matrix(m: &Matrix, module_rank: usize, ring_rank: usize) -> Result<IntMatrix, InputError> {
    matrix(m, module_rank, ring_rank, "d")
}
