//! A four-object piece of the Fukaya category of `CP¹ × CP¹`: the
//! anti-diagonal `A`, its shift `A[1]`, and the two Clifford-type tori
//! `T₊ = T_{1,−1}`, `T₋ = T_{−1,1}` with opposite flat bundles.
//!
//! Products are given by a structure-constant table rather than by counting
//! triangles. Entries the table does not specify raise an error instead of
//! returning zero.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ring::{int, rat, AlphaMode, Rational, RingError, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FukayaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("cannot compose {0} -> {1} with {2} -> {3}")]
    NotComposable(Object, Object, Object, Object),
    #[error("{0} is not a basis element of Hom({1}, {2})")]
    NotInBasis(Basis, Object, Object),
    #[error("unspecified-entry: m2({0}, {1}) through {2} landing in Hom({3}, {4})")]
    Unspecified(Basis, Basis, Object, Object, Object),
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    A,
    AShift,
    TPlus,
    TMinus,
}

impl Object {
    pub fn is_torus(self) -> bool {
        matches!(self, Object::TPlus | Object::TMinus)
    }

    /// Parity contributed by the shift.
    pub fn shift(self) -> u8 {
        u8::from(self == Object::AShift)
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Object::A => "A",
            Object::AShift => "A[1]",
            Object::TPlus => "T(1,-1)",
            Object::TMinus => "T(-1,1)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    P,
    Q,
    Unit,
    Pt,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::P => "p",
            Basis::Q => "q",
            Basis::Unit => "unit",
            Basis::Pt => "pt",
        })
    }
}

/// Basis of `Hom(source, target)`.
pub fn hom_basis(source: Object, target: Object) -> &'static [Basis] {
    match (source.is_torus(), target.is_torus()) {
        (true, false) | (false, true) => &[Basis::P, Basis::Q],
        (false, false) => &[Basis::Unit, Basis::Pt],
        (true, true) if source == target => &[Basis::Unit, Basis::Pt],
        (true, true) => &[],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    source: Object,
    target: Object,
    coeffs: BTreeMap<Basis, Scalar>,
}

impl HomElement {
    pub fn zero(source: Object, target: Object) -> Self {
        Self { source, target, coeffs: BTreeMap::new() }
    }

    pub fn basis(source: Object, target: Object, b: Basis) -> Result<Self, FukayaError> {
        Self::from_coeffs(source, target, [(b, Scalar::one(AlphaMode::Absent))])
    }

    pub fn from_coeffs(
        source: Object,
        target: Object,
        coeffs: impl IntoIterator<Item = (Basis, Scalar)>,
    ) -> Result<Self, FukayaError> {
        let mut out = Self::zero(source, target);
        for (b, c) in coeffs {
            if !hom_basis(source, target).contains(&b) {
                return Err(FukayaError::NotInBasis(b, source, target));
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, b: Basis, c: Scalar) {
        let sum = match self.coeffs.remove(&b) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(b, sum);
        }
    }

    pub fn source(&self) -> Object {
        self.source
    }

    pub fn target(&self) -> Object {
        self.target
    }

    /// Shift parity of the hom space; carried along but not used.
    pub fn degree_shift(&self) -> u8 {
        self.source.shift() ^ self.target.shift()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, b: Basis) -> Scalar {
        self.coeffs.get(&b).cloned().unwrap_or_else(|| Scalar::zero(AlphaMode::Absent))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Scalar)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (b, x) in &self.coeffs {
            out.add_term(*b, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.source, self.target), (other.source, other.target), "adding across hom spaces");
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl fmt::Display for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(b, c)| format!("({c})*{b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Structure constants of `m₂`, with `τ = T^(l/2)`:
///
/// * `m₂(p, p) = pt + ε·τ·unit`, `m₂(q, q) = pt − ε·τ·unit`
/// * `m₂(p, q) = m₂(q, p) = 0` when landing in a hom space between
///   `A`-objects
/// * the unit class acts as the identity
///
/// The sign `ε` may be chosen separately for products landing between
/// `A`-objects and between tori.
#[derive(Clone, Debug)]
pub struct M2Table {
    eps_a: i8,
    eps_t: i8,
    tau: Scalar,
}

/// Counts of table lookups made while composing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Lookups {
    pub table: usize,
    pub unspecified: usize,
}

fn check_sign(e: i8) -> Result<i8, FukayaError> {
    if e == 1 || e == -1 {
        Ok(e)
    } else {
        Err(FukayaError::BadSign(e))
    }
}

impl M2Table {
    pub fn new(eps: i8) -> Result<Self, FukayaError> {
        Self::with_signs(eps, eps)
    }

    /// Independent signs for the two kinds of target.
    pub fn with_signs(eps_a: i8, eps_t: i8) -> Result<Self, FukayaError> {
        Self::with_area(eps_a, eps_t, int(1))
    }

    /// `l` is the area parameter of the tori, `τ = T^(l/2)`.
    pub fn with_area(eps_a: i8, eps_t: i8, l: Rational) -> Result<Self, FukayaError> {
        Ok(Self { eps_a: check_sign(eps_a)?, eps_t: check_sign(eps_t)?, tau: Scalar::t_pow(l / int(2), AlphaMode::Absent) })
    }

    pub fn tau(&self) -> &Scalar {
        &self.tau
    }

    pub fn eps_a(&self) -> i8 {
        self.eps_a
    }

    pub fn eps_t(&self) -> i8 {
        self.eps_t
    }

    fn lookup(
        &self,
        (x, y, z): (Object, Object, Object),
        bf: Basis,
        bg: Basis,
        stats: &mut Lookups,
    ) -> Result<HomElement, FukayaError> {
        let one = Scalar::one(AlphaMode::Absent);
        if bf == Basis::Unit {
            return HomElement::from_coeffs(x, z, [(bg, one)]);
        }
        if bg == Basis::Unit {
            return HomElement::from_coeffs(x, z, [(bf, one)]);
        }
        stats.table += 1;
        let unspecified = |stats: &mut Lookups| {
            stats.unspecified += 1;
            Err(FukayaError::Unspecified(bf, bg, y, x, z))
        };
        // p and q only occur between a torus and an A-object
        let eps = match (x.is_torus(), y.is_torus(), z.is_torus()) {
            (false, true, false) => self.eps_a,
            (true, false, true) => self.eps_t,
            _ => return unspecified(stats),
        };
        let e = self.tau.scale(&int(eps as i64));
        match (bf, bg) {
            (Basis::P, Basis::P) => HomElement::from_coeffs(x, z, [(Basis::Pt, one), (Basis::Unit, e)]),
            (Basis::Q, Basis::Q) => HomElement::from_coeffs(x, z, [(Basis::Pt, one), (Basis::Unit, -e)]),
            (Basis::P, Basis::Q) | (Basis::Q, Basis::P) if !x.is_torus() => Ok(HomElement::zero(x, z)),
            _ => unspecified(stats),
        }
    }
}

/// `m₂(f, g)` for `f: X → Y`, `g: Y → Z`, landing in `Hom(X, Z)`.
pub fn m2(f: &HomElement, g: &HomElement, table: &M2Table) -> Result<HomElement, FukayaError> {
    m2_counted(f, g, table, &mut Lookups::default())
}

pub fn m2_counted(f: &HomElement, g: &HomElement, table: &M2Table, stats: &mut Lookups) -> Result<HomElement, FukayaError> {
    if f.target != g.source {
        return Err(FukayaError::NotComposable(f.source, f.target, g.source, g.target));
    }
    let (x, y, z) = (f.source, f.target, g.target);
    let mut out = HomElement::zero(x, z);
    if hom_basis(x, z).is_empty() {
        return Ok(out);
    }
    for (bf, cf) in f.terms() {
        for (bg, cg) in g.terms() {
            let prod = table.lookup((x, y, z), bf, bg, stats)?;
            out = out.add(&prod.scale(&(cf * cg)));
        }
    }
    Ok(out)
}

pub const LEFT: [Object; 2] = [Object::A, Object::AShift];
pub const RIGHT: [Object; 2] = [Object::TPlus, Object::TMinus];

pub type HomMatrix = Vec<Vec<HomElement>>;

/// `Φ₁ = (p q; q p)` with entry `(i, j)` in `Hom(LEFT[i], RIGHT[j])`.
pub fn phi1() -> HomMatrix {
    let b = |i: usize, j: usize| {
        let basis = if i == j { Basis::P } else { Basis::Q };
        HomElement::basis(LEFT[i], RIGHT[j], basis).expect("p, q span Hom(A, T)")
    };
    vec![vec![b(0, 0), b(0, 1)], vec![b(1, 0), b(1, 1)]]
}

/// `Φ₂ = 1/(2τ)·(p −q; −q p)` with entry `(j, k)` in `Hom(RIGHT[j], LEFT[k])`.
pub fn phi2(table: &M2Table) -> Result<HomMatrix, FukayaError> {
    let inv = table.tau.try_inverse()?.scale(&rat(1, 2));
    let b = |j: usize, k: usize| -> Result<HomElement, FukayaError> {
        let (basis, c) = if j == k { (Basis::P, inv.clone()) } else { (Basis::Q, -inv.clone()) };
        HomElement::from_coeffs(RIGHT[j], LEFT[k], [(basis, c)])
    };
    Ok(vec![vec![b(0, 0)?, b(0, 1)?], vec![b(1, 0)?, b(1, 1)?]])
}

/// `(ab)_ik = Σ_j m₂(a_ij, b_jk)`, with the table lookups made per entry.
pub fn compose(a: &HomMatrix, b: &HomMatrix, table: &M2Table) -> Result<(HomMatrix, Vec<Vec<Lookups>>), FukayaError> {
    let mut out = Vec::new();
    let mut stats = Vec::new();
    for row in a {
        let mut out_row = Vec::new();
        let mut stat_row = Vec::new();
        for k in 0..b[0].len() {
            let mut st = Lookups::default();
            let mut acc = HomElement::zero(row[0].source, b[0][k].target);
            for (j, x) in row.iter().enumerate() {
                acc = acc.add(&m2_counted(x, &b[j][k], table, &mut st)?);
            }
            out_row.push(acc);
            stat_row.push(st);
        }
        out.push(out_row);
        stats.push(stat_row);
    }
    Ok((out, stats))
}

#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub composition: &'static str,
    pub row: usize,
    pub col: usize,
    pub expected: HomElement,
    pub got: HomElement,
    pub lookups: Lookups,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.got
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub eps_a: i8,
    pub eps_t: i8,
    pub entries: Vec<EntryCheck>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(EntryCheck::ok)
    }

    pub fn unspecified_lookups(&self) -> usize {
        self.entries.iter().map(|e| e.lookups.unspecified).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryCheck> {
        self.entries.iter().filter(|e| !e.ok())
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{}[{}][{}] in Hom({}, {}) = {}  ({})",
                e.composition,
                e.row,
                e.col,
                e.got.source(),
                e.got.target(),
                e.got,
                if e.ok() { "ok" } else { "MISMATCH" }
            )?;
        }
        write!(f, "equivalence: {}", self.ok())
    }
}

fn epsilon_identity(objs: [Object; 2], eps: i8) -> Result<HomMatrix, FukayaError> {
    let e = Scalar::from_int(eps as i64, AlphaMode::Absent);
    let entry = |i: usize, k: usize| {
        if i == k {
            HomElement::from_coeffs(objs[i], objs[k], [(Basis::Unit, e.clone())])
        } else {
            Ok(HomElement::zero(objs[i], objs[k]))
        }
    };
    Ok(vec![vec![entry(0, 0)?, entry(0, 1)?], vec![entry(1, 0)?, entry(1, 1)?]])
}

/// Checks `Φ₁∘Φ₂ = ε·Id` on `A ⊕ A[1]` and `Φ₂∘Φ₁ = ε·Id` on `T₊ ⊕ T₋`.
pub fn verify_equivalence(eps: i8) -> Result<EquivalenceReport, FukayaError> {
    verify_equivalence_with(&M2Table::new(eps)?)
}

pub fn verify_equivalence_with(table: &M2Table) -> Result<EquivalenceReport, FukayaError> {
    let p1 = phi1();
    let p2 = phi2(table)?;
    let mut entries = Vec::new();
    for (name, a, b, objs, eps) in [
        ("Phi1.Phi2", &p1, &p2, LEFT, table.eps_a),
        ("Phi2.Phi1", &p2, &p1, RIGHT, table.eps_t),
    ] {
        let (prod, stats) = compose(a, b, table)?;
        let id = epsilon_identity(objs, eps)?;
        for i in 0..2 {
            for k in 0..2 {
                entries.push(EntryCheck {
                    composition: name,
                    row: i,
                    col: k,
                    expected: id[i][k].clone(),
                    got: prod[i][k].clone(),
                    lookups: stats[i][k],
                });
            }
        }
    }
    Ok(EquivalenceReport { eps_a: table.eps_a, eps_t: table.eps_t, entries })
}
