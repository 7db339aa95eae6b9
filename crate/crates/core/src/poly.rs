//! Sparse multivariate polynomials with integer coefficients.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::PolyError;

/// Variable identifiers. The derived order is the variable order used by the
/// graded-lexicographic monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// `s_i`, the elementary symmetric functions of the first alphabet.
    S(u32),
    /// `σ_j`, the elementary symmetric functions of the second alphabet.
    Sigma(u32),
    /// `λ^i` applied to the generator with the given index.
    Lam(u32, u32),
    /// Free ring generator `a_{g,i}`.
    Gen(u32, u32),
    /// Free module generator `m_{g,k}`.
    Mod(u32, u32),
    /// Formal coefficient `k_i`.
    Coeff(u32),
    /// Alphabet variable `ξ_i`.
    Xi(u32),
    /// Alphabet variable `η_j`.
    Eta(u32),
}

const LAMBDA_ARG_NAMES: [&str; 6] = ["r", "s", "t", "u", "v", "w"];
const GEN_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const MOD_NAMES: [&str; 4] = ["m", "n", "p", "q"];

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::S(i) => write!(f, "s{i}"),
            VarId::Sigma(j) => write!(f, "sig{j}"),
            VarId::Lam(g, i) => match LAMBDA_ARG_NAMES.get(g as usize) {
                Some(name) => write!(f, "l{i}({name})"),
                None => write!(f, "l{i}(g{g})"),
            },
            VarId::Gen(g, i) => match GEN_NAMES.get(g as usize) {
                Some(name) => write!(f, "{name}{i}"),
                None => write!(f, "x{g}_{i}"),
            },
            VarId::Mod(g, k) => match MOD_NAMES.get(g as usize) {
                Some(name) => write!(f, "{name}{k}"),
                None => write!(f, "m{g}_{k}"),
            },
            VarId::Coeff(i) => write!(f, "k{i}"),
            VarId::Xi(i) => write!(f, "x{i}"),
            VarId::Eta(j) => write!(f, "y{j}"),
        }
    }
}

/// A monomial: variables with positive exponents, sorted by [`VarId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    pub fn power(v: VarId, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m = m.mul(&Self::power(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The monomial with one factor of `v` removed, with the old exponent.
    fn without_one(&self, v: VarId) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let mut factors = self.0.clone();
        let e = factors[pos].1;
        if e == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some((e, Monomial(factors)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest variable where the monomials differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        (self.0.len() - i).cmp(&(other.0.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with integer coefficients in the variables [`VarId`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        Self::from_terms(self.terms.iter().map(|(n, d)| (n.mul(m), d * c)))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides every coefficient by `k`; `None` if some coefficient is not divisible.
    pub fn exact_div(&self, k: &BigInt) -> Option<MultiPoly> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if !(c % k).is_zero() {
                return None;
            }
            out.terms.insert(m.clone(), c / k);
        }
        Some(out)
    }

    pub fn partial_derivative(&self, v: VarId) -> MultiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter_map(|(m, c)| m.without_one(v).map(|(e, rest)| (rest, c * BigInt::from(e)))),
        )
    }

    /// Substitutes every variable; variables missing from `assignment` are an error.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, MultiPoly>) -> Result<MultiPoly, PolyError> {
        for v in self.variables() {
            if !assignment.contains_key(&v) {
                return Err(PolyError::MissingAssignment(v));
            }
        }
        Ok(self.substitute_with(|v| assignment.get(v).cloned()))
    }

    /// Substitutes the variables for which `f` returns a value and keeps the rest.
    pub fn substitute_with<F: FnMut(&VarId) -> Option<MultiPoly>>(&self, mut f: F) -> MultiPoly {
        let mut cache: BTreeMap<VarId, Option<MultiPoly>> = BTreeMap::new();
        let mut powers: BTreeMap<(VarId, u32), MultiPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &(v, e) in &m.0 {
                let image = cache.entry(v).or_insert_with(|| f(&v)).clone();
                let factor = match image {
                    Some(p) => powers.entry((v, e)).or_insert_with(|| p.pow(e)).clone(),
                    None => Self::term(BigInt::one(), Monomial::power(v, e)),
                };
                acc = &acc * &factor;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Renames variables through an injective map.
    pub fn map_vars<F: Fn(VarId) -> VarId>(&self, f: F) -> MultiPoly {
        Self::from_terms(
            self.terms.iter().map(|(m, c)| (Monomial::from_pairs(&m.0.iter().map(|&(v, e)| (f(v), e)).collect::<Vec<_>>()), c.clone())),
        )
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Drops every term whose degree in the variables selected by `square_zero` exceeds one.
    pub fn reduce_square_zero<F: Fn(&VarId) -> bool>(&self, square_zero: F) -> MultiPoly {
        self.filter_terms(|m| m.0.iter().filter(|(v, _)| square_zero(v)).map(|&(_, e)| e).sum::<u32>() <= 1)
    }

    /// Evaluates at integer values of the variables.
    pub fn eval_int<F: Fn(&VarId) -> Option<BigInt>>(&self, f: F) -> Result<BigInt, PolyError> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = f(&v).ok_or(PolyError::MissingAssignment(v))?;
                t *= num_traits::pow(x, e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending monomial order, e.g. `l1(r)^2 - 2*l2(r)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl core::str::FromStr for VarId {
    type Err = PolyError;

    /// Inverse of the [`fmt::Display`] rendering.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.variable()?;
        if p.pos != s.len() {
            return Err(p.error("trailing characters after variable"));
        }
        Ok(v)
    }
}

impl core::str::FromStr for MultiPoly {
    type Err = PolyError;

    /// Parses sums of products of integers, variables, powers and
    /// parenthesized subexpressions, e.g. `l1(r)^2 - 2*l2(r)`.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse { position: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| core::str::from_utf8(&self.src[start..self.pos]).expect("ASCII digits"))
    }

    fn index(&mut self) -> Result<u32, PolyError> {
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an index"))?;
        d.parse().map_err(|_| PolyError::Parse { position: at, message: "index out of range".into() })
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = if self.eat(b'-') { -self.term()? } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.index()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("at least one digit");
                Ok(MultiPoly::constant(d.parse().expect("decimal digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(MultiPoly::var(self.variable()?)),
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }

    fn variable(&mut self) -> Result<VarId, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ASCII letters");
        let slot = |names: &[&str]| names.iter().position(|n| *n == name).map(|i| i as u32);
        match name {
            "s" => Ok(VarId::S(self.index()?)),
            "sig" => Ok(VarId::Sigma(self.index()?)),
            "k" => Ok(VarId::Coeff(self.index()?)),
            "y" => Ok(VarId::Eta(self.index()?)),
            "l" => {
                let i = self.index()?;
                if self.peek() != Some(b'(') {
                    return Err(self.error("expected '(' after λ index"));
                }
                self.pos += 1;
                let arg_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let arg = core::str::from_utf8(&self.src[arg_start..self.pos]).expect("ASCII");
                let g = match LAMBDA_ARG_NAMES.iter().position(|n| *n == arg) {
                    Some(g) => g as u32,
                    None => arg
                        .strip_prefix('g')
                        .and_then(|d| d.parse().ok())
                        .filter(|&g| g as usize >= LAMBDA_ARG_NAMES.len())
                        .ok_or_else(|| self.error("unknown λ argument"))?,
                };
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(VarId::Lam(g, i))
            }
            "x" | "m" => {
                let first = self.index()?;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                    let second = self.index()?;
                    let wide = if name == "x" { GEN_NAMES.len() } else { MOD_NAMES.len() };
                    if (first as usize) < wide {
                        return Err(self.error("generator has a short name"));
                    }
                    return Ok(if name == "x" { VarId::Gen(first, second) } else { VarId::Mod(first, second) });
                }
                Ok(if name == "x" { VarId::Xi(first) } else { VarId::Mod(0, first) })
            }
            _ => {
                if let Some(g) = slot(&GEN_NAMES) {
                    Ok(VarId::Gen(g, self.index()?))
                } else if let Some(g) = slot(&MOD_NAMES) {
                    Ok(VarId::Mod(g, self.index()?))
                } else {
                    self.pos = start;
                    Err(self.error("unknown variable"))
                }
            }
        }
    }
}
