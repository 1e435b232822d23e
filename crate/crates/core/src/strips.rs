//! Index-one holomorphic strip classes between a deformed Lagrangian and a
//! generic torus fiber, and their Fourier assembly into factorization pairs.
//!
//! A strip class records its boundary winding `v`, its symplectic area as
//! an affine function of the generic fiber position `s`, a power of the
//! holonomy `α` and an orientation sign. The mirror coordinate of variable
//! `k` is `z_k = e^(x_k)·T^(base_k + s)`, so a class contributes
//!
//! ```text
//! sign · α^p · T^(area(s) − Σ_k v_k·(base_k + s)) · z^v
//! ```
//!
//! which is independent of `s` exactly when `d(area)/ds = Σ_k v_k`. That
//! slope condition is enforced when a class is built.
//!
//! Signs are the ones attached to each family by hand; no orientation
//! theory is implemented.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::mf::{MatrixFactorization, MfError, VerifyReport};
use crate::ring::{int, rat, AlphaMode, LaurentPoly, Rational, RingError, Scalar};
use crate::toric::{self, StackyLine, ToricError};

#[derive(Debug, Error)]
pub enum StripError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("area slope {slope} does not match winding {winding:?}")]
    SlopeMismatch { slope: Rational, winding: Vec<i64> },
    #[error("strip must join distinct endpoints")]
    DegenerateEndpoints,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("fiber position {s} outside admissible interval ({lo}, {hi})")]
    OutsideInterval { s: Rational, lo: Rational, hi: Rational },
    #[error("c not in Lambda-plus: bulk parameter u = {0} must lie in [0, 1/3)")]
    BulkOutOfRange(Rational),
    #[error("orbifold strip in a family without bulk parameter")]
    MissingBulk,
    #[error("factorization does not verify ({} nonzero residual entries)", .0.residuals.len())]
    Verification(VerifyReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    A,
    B,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::A => "a",
            Endpoint::B => "b",
        })
    }
}

/// Strips from `a` to `b` assemble into `F`, strips from `b` to `a` into `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    AToB,
    BToA,
}

impl Direction {
    pub fn endpoints(self) -> (Endpoint, Endpoint) {
        match self {
            Direction::AToB => (Endpoint::A, Endpoint::B),
            Direction::BToA => (Endpoint::B, Endpoint::A),
        }
    }
}

/// `constant + slope · s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArea {
    pub constant: Rational,
    pub slope: Rational,
}

impl AffineArea {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        Self { constant, slope }
    }

    pub fn at(&self, s: &Rational) -> Rational {
        &self.constant + &self.slope * s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripClass {
    from: Endpoint,
    to: Endpoint,
    winding: Vec<i64>,
    area: AffineArea,
    alpha_power: i64,
    sign: i8,
    orbifold_insertion: bool,
}

impl StripClass {
    /// Checks the slope–winding condition `d(area)/ds = Σ v_k`.
    pub fn new(
        from: Endpoint,
        to: Endpoint,
        winding: Vec<i64>,
        area: AffineArea,
        alpha_power: i64,
        sign: i8,
        orbifold_insertion: bool,
    ) -> Result<Self, StripError> {
        if from == to {
            return Err(StripError::DegenerateEndpoints);
        }
        if sign != 1 && sign != -1 {
            return Err(StripError::BadSign(sign));
        }
        let total: i64 = winding.iter().sum();
        if area.slope != int(total) {
            return Err(StripError::SlopeMismatch { slope: area.slope, winding });
        }
        Ok(Self { from, to, winding, area, alpha_power, sign, orbifold_insertion })
    }

    pub fn from(&self) -> Endpoint {
        self.from
    }

    pub fn to(&self) -> Endpoint {
        self.to
    }

    pub fn winding(&self) -> &[i64] {
        &self.winding
    }

    pub fn area(&self) -> &AffineArea {
        &self.area
    }

    pub fn alpha_power(&self) -> i64 {
        self.alpha_power
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn orbifold_insertion(&self) -> bool {
        self.orbifold_insertion
    }

    pub fn direction(&self) -> Direction {
        match self.from {
            Endpoint::A => Direction::AToB,
            Endpoint::B => Direction::BToA,
        }
    }

    /// Number of holomorphic representatives; one for every class here.
    pub fn count(&self) -> u32 {
        1
    }
}

/// How the critical monomial `A` of the bulk-deformed family is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BulkAnchor {
    /// `A = T^(u+1/3)`, the positive critical point; no `α`.
    Critical,
    /// `A = T^(1−u)·α` with `α` a free generator.
    Symbolic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Cp1,
    Weighted(StackyLine),
    WeightedBulk { u: Rational, anchor: BulkAnchor },
    Antidiagonal,
}

impl Geometry {
    pub fn tag(&self) -> &'static str {
        match self {
            Geometry::Cp1 => "cp1",
            Geometry::Weighted(_) => "weighted",
            Geometry::WeightedBulk { .. } => "weighted_bulk",
            Geometry::Antidiagonal => "antidiagonal",
        }
    }
}

/// All strip classes between one deformed Lagrangian and the generic fiber
/// `L_s`, for `s` in an open admissible interval.
#[derive(Clone, Debug, PartialEq)]
pub struct StripFamily {
    geometry: Geometry,
    vars: Vec<String>,
    coordinate_base: Vec<Rational>,
    interval: (Rational, Rational),
    alpha_mode: AlphaMode,
    bulk: Option<Scalar>,
    strips: Vec<StripClass>,
}

impl StripFamily {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        geometry: Geometry,
        vars: Vec<String>,
        coordinate_base: Vec<Rational>,
        interval: (Rational, Rational),
        alpha_mode: AlphaMode,
        bulk: Option<Scalar>,
        strips: Vec<StripClass>,
    ) -> Result<Self, StripError> {
        LaurentPoly::zero(&vars)?;
        for s in &strips {
            if s.winding.len() != vars.len() {
                return Err(RingError::ExponentArity { expected: vars.len(), got: s.winding.len() }.into());
            }
            if s.orbifold_insertion && bulk.is_none() {
                return Err(StripError::MissingBulk);
            }
        }
        if coordinate_base.len() != vars.len() {
            return Err(RingError::ExponentArity { expected: vars.len(), got: coordinate_base.len() }.into());
        }
        Ok(Self { geometry, vars, coordinate_base, interval, alpha_mode, bulk, strips })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coordinate_base(&self) -> &[Rational] {
        &self.coordinate_base
    }

    pub fn interval(&self) -> &(Rational, Rational) {
        &self.interval
    }

    pub fn alpha_mode(&self) -> AlphaMode {
        self.alpha_mode
    }

    pub fn bulk(&self) -> Option<&Scalar> {
        self.bulk.as_ref()
    }

    pub fn strips(&self) -> &[StripClass] {
        &self.strips
    }

    pub fn strips_in(&self, direction: Direction) -> impl Iterator<Item = &StripClass> + '_ {
        self.strips.iter().filter(move |s| s.direction() == direction)
    }

    /// The same classes read with a different `α` mode, e.g. `Free` to
    /// test identities before imposing the holonomy relation.
    pub fn with_alpha_mode(mut self, mode: AlphaMode) -> Self {
        self.alpha_mode = mode;
        self
    }

    /// Midpoint of the admissible interval.
    pub fn sample_position(&self) -> Rational {
        (&self.interval.0 + &self.interval.1) / int(2)
    }

    pub fn contains(&self, s: &Rational) -> bool {
        &self.interval.0 < s && s < &self.interval.1
    }

    /// Fourier transform of one direction at fiber position `s`.
    pub fn fourier_assemble(&self, direction: Direction, s: &Rational) -> Result<LaurentPoly, StripError> {
        if !self.contains(s) {
            return Err(StripError::OutsideInterval { s: s.clone(), lo: self.interval.0.clone(), hi: self.interval.1.clone() });
        }
        let mut terms = Vec::new();
        for strip in self.strips_in(direction) {
            let mut t_exp = strip.area.at(s);
            for (v, base) in strip.winding.iter().zip(&self.coordinate_base) {
                t_exp -= int(*v) * (base + s);
            }
            let mut coeff = Scalar::monomial(int(strip.sign as i64), t_exp, strip.alpha_power, self.alpha_mode)?;
            if strip.orbifold_insertion {
                coeff = coeff.checked_mul(self.bulk.as_ref().ok_or(StripError::MissingBulk)?)?;
            }
            terms.push((strip.winding.clone(), coeff));
        }
        Ok(LaurentPoly::from_terms(&self.vars, terms)?)
    }

    /// Both factors at the sample position.
    pub fn factors(&self) -> Result<(LaurentPoly, LaurentPoly), StripError> {
        let s = self.sample_position();
        Ok((self.fourier_assemble(Direction::AToB, &s)?, self.fourier_assemble(Direction::BToA, &s)?))
    }

    /// Potential `W` and value `λ` the family is expected to factor.
    pub fn target(&self) -> Result<(LaurentPoly, Scalar), StripError> {
        let mode = self.alpha_mode;
        match &self.geometry {
            Geometry::Cp1 => Ok((cp1_potential(), Scalar::t_pow(rat(1, 2), mode).scale(&int(2)))),
            Geometry::Antidiagonal => Ok((antidiagonal_potential(), Scalar::zero(mode))),
            Geometry::Weighted(line) => Ok((toric::hori_vafa_potential(*line), toric::critical_value(*line, mode)?)),
            Geometry::WeightedBulk { u, anchor } => {
                let c = self.bulk.clone().ok_or(StripError::MissingBulk)?;
                let a = bulk_anchor(u, *anchor, mode)?;
                Ok((toric::bulk_potential_with(&c), toric::bulk_value_at(&a, &c)?))
            }
        }
    }

    /// `F = assemble(a→b)`, `G = assemble(b→a)` with the family's `W`, `λ`.
    /// Not verified.
    pub fn factorization(&self) -> Result<MatrixFactorization, StripError> {
        let (f, g) = self.factors()?;
        let (w, lambda) = self.target()?;
        Ok(MatrixFactorization::from_pair(f, g, w, lambda)?)
    }
}

/// Builds the factorization of a family and verifies it exactly.
pub fn family_to_mf(family: &StripFamily) -> Result<MatrixFactorization, StripError> {
    let mf = family.factorization()?;
    let report = mf.verify()?;
    if !report.is_ok() {
        return Err(StripError::Verification(report));
    }
    Ok(mf)
}

fn one_var(v: &str) -> Vec<String> {
    vec![v.to_owned()]
}

/// `z + T/z`, the potential of the projective line with `q = T`.
pub fn cp1_potential() -> LaurentPoly {
    let v = ["z"];
    LaurentPoly::var(&v, 0).expect("one variable")
        + LaurentPoly::monomial(&v, vec![-1], Scalar::t_pow(int(1), AlphaMode::Absent)).expect("one variable")
}

/// `(x − T^(1/2), 1 − T^(1/2)/x)` for `x + T/x` in the variable `var`.
pub fn cp1_factorization(var: &str) -> Result<MatrixFactorization, StripError> {
    Ok(family_to_mf(&enumerate_cp1())?.rename("z", var)?)
}

/// The explicit `4 × 4` factorization of `z + T/z + w + T/w − 4T^(1/2)`:
///
/// ```text
/// F = [[z − √T, −1 + √T/w], [w − √T, 1 − √T/z]]
/// G = [[1 − √T/z, 1 − √T/w], [−w + √T, z − √T]]
/// ```
pub fn four_by_four_factorization() -> MatrixFactorization {
    let v = ["z", "w"];
    let sq = Scalar::t_pow(rat(1, 2), AlphaMode::Absent);
    let m = |e: Vec<i64>, c: Scalar| LaurentPoly::monomial(&v, e, c).expect("two variables");
    let one = Scalar::one(AlphaMode::Absent);
    let z = m(vec![1, 0], one.clone());
    let w = m(vec![0, 1], one.clone());
    let c = |x: &Scalar| m(vec![0, 0], x.clone());
    let sq_z = m(vec![-1, 0], sq.clone());
    let sq_w = m(vec![0, -1], sq.clone());
    let f = vec![&z - &c(&sq), &sq_w - &c(&one), &w - &c(&sq), &c(&one) - &sq_z];
    let g = vec![&c(&one) - &sq_z, &c(&one) - &sq_w, &c(&sq) - &w, &z - &c(&sq)];
    let t = Scalar::t_pow(int(1), AlphaMode::Absent);
    let pot = &z + &m(vec![-1, 0], t.clone()) + &w + &m(vec![0, -1], t);
    MatrixFactorization::from_blocks(2, f, g, pot, sq.scale(&int(4))).expect("square blocks")
}

/// `x + T/x + y + T/y`.
pub fn antidiagonal_potential() -> LaurentPoly {
    let v = ["x", "y"];
    let t = Scalar::t_pow(int(1), AlphaMode::Absent);
    let x = LaurentPoly::var(&v, 0).expect("two variables");
    let y = LaurentPoly::var(&v, 1).expect("two variables");
    let qx = LaurentPoly::monomial(&v, vec![-1, 0], t.clone()).expect("two variables");
    let qy = LaurentPoly::monomial(&v, vec![0, -1], t).expect("two variables");
    x + qx + y + qy
}

fn strip(from: Endpoint, w: Vec<i64>, constant: Rational, slope: i64, alpha: i64, sign: i8) -> StripClass {
    let to = if from == Endpoint::A { Endpoint::B } else { Endpoint::A };
    StripClass::new(from, to, w, AffineArea::new(constant, int(slope)), alpha, sign, false)
        .expect("closed-form strip classes satisfy the slope condition")
}

/// Projective line with polytope `[0, 1]` (`q = T`) and `z = e^x·T^s`.
/// The deformed equator meets `L_s` at `a` and `b`, `s ∈ (0, 1/2)`.
pub fn enumerate_cp1() -> StripFamily {
    use Endpoint::{A, B};
    let strips = vec![
        strip(A, vec![1], int(0), 1, 0, 1),
        strip(A, vec![0], rat(1, 2), 0, 0, -1),
        strip(B, vec![0], int(0), 0, 0, 1),
        strip(B, vec![-1], rat(1, 2), -1, 0, -1),
    ];
    StripFamily::new(Geometry::Cp1, one_var("z"), vec![int(0)], (int(0), rat(1, 2)), AlphaMode::Absent, None, strips)
        .expect("valid family")
}

/// Whether the first sum of the weighted family stops at `n − 1` (exact)
/// or runs through `n` (adds one constant class and fails to verify).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedBound {
    Exact,
    Inclusive,
}

/// Weighted projective line `(m, n)`: strips between the deformed balanced
/// fiber and `L_s`, `s ∈ (0, 1/n)`, with `z = e^x·T^(1/m+s)`, `q = T^(1/m)`.
///
/// * `a → b`: the constant class `1` and `−z/(αq)`.
/// * `b → a`: `n` classes wrapping the right end,
///   `(q^(mk/n)/α^k)·(q^((m+n)/n)/z)^(n−k)` for `k = 0, …, n−1`, and `m`
///   classes wrapping the left end, `−α^k q^k z^(m−k)` for `k = 1, …, m`.
///
/// The right-end sum stops at `n − 1`: with `k = n` included the product
/// picks up the extra residual `(1 − z/(αq))·q^m/α^n`.
pub fn enumerate_weighted(line: StackyLine) -> StripFamily {
    enumerate_weighted_with(line, WeightedBound::Exact)
}

pub fn enumerate_weighted_with(line: StackyLine, bound: WeightedBound) -> StripFamily {
    use Endpoint::{A, B};
    let (m, n) = (line.m() as i64, line.n() as i64);
    let mut strips = vec![strip(A, vec![0], int(0), 0, 0, 1), strip(A, vec![1], int(0), 1, -1, -1)];
    // right end, j = n − k times around: q^(m+j)·α^(j−n)·z^(−j), area 1 − j·s
    let first_j = if bound == WeightedBound::Inclusive { 0 } else { 1 };
    for j in first_j..=n {
        strips.push(strip(B, vec![-j], int(1), -j, j - n, 1));
    }
    // left end: −α^k·q^k·z^(m−k), area 1 + (m−k)·s
    for k in 1..=m {
        strips.push(strip(B, vec![m - k], int(1), m - k, k, -1));
    }
    StripFamily::new(
        Geometry::Weighted(line),
        one_var(toric::VAR),
        vec![rat(1, m)],
        (int(0), rat(1, n)),
        AlphaMode::Relation(line.relation()),
        None,
        strips,
    )
    .expect("valid family")
}

fn bulk_anchor(u: &Rational, anchor: BulkAnchor, mode: AlphaMode) -> Result<Scalar, RingError> {
    match anchor {
        BulkAnchor::Critical => Ok(Scalar::t_pow(u + rat(1, 3), mode)),
        BulkAnchor::Symbolic => Scalar::monomial(int(1), int(1) - u, 1, mode),
    }
}

/// Bulk-deformed teardrop at the nondisplaceable fiber `L_u`, `0 ≤ u < 1/3`,
/// with `T = q` and `z = e^x·T^(s+1/3)`, `s ∈ (u, 1)`.
///
/// The smooth classes are those of the `(3, 1)` family re-based at the
/// critical monomial `A = T^(u+1/3)`; one extra `b → a` orbifold class of
/// area `u + 1/3`, weighted by the bulk parameter `c`, contributes `−c·A`.
pub fn enumerate_weighted_bulk(u: &Rational) -> Result<StripFamily, StripError> {
    bulk_family(u, BulkAnchor::Critical, true)
}

/// As [`enumerate_weighted_bulk`] but with `A = T^(1−u)·α` for a free `α`.
/// The factorization identity holds for every invertible `α`.
pub fn enumerate_weighted_bulk_symbolic(u: &Rational) -> Result<StripFamily, StripError> {
    bulk_family(u, BulkAnchor::Symbolic, true)
}

/// The bulk family with or without its orbifold class.
pub fn bulk_family(u: &Rational, anchor: BulkAnchor, with_orbifold: bool) -> Result<StripFamily, StripError> {
    use Endpoint::{A, B};
    if u.is_negative_or_beyond_third() {
        return Err(StripError::BulkOutOfRange(u.clone()));
    }
    // weight of A as (T-exponent, α-power)
    let (a_t, a_alpha, mode) = match anchor {
        BulkAnchor::Critical => (u + rat(1, 3), 0, AlphaMode::Absent),
        BulkAnchor::Symbolic => (int(1) - u, 1, AlphaMode::Free),
    };
    let base = rat(1, 3);
    // area of the class contributing sign·A^p·z^v: p·a_t + v·(1/3 + s)
    let area = |p: i64, v: i64| int(p) * &a_t + int(v) * &base;
    let mut strips = vec![
        strip(A, vec![0], int(0), 0, 0, 1),
        strip(A, vec![1], area(-1, 1), 1, -a_alpha, -1),
        strip(B, vec![-1], rat(4, 3) - &base, -1, 0, 1),
        strip(B, vec![0], area(3, 0), 0, 3 * a_alpha, -1),
        strip(B, vec![1], area(2, 1), 1, 2 * a_alpha, -1),
        strip(B, vec![2], area(1, 2), 2, a_alpha, -1),
    ];
    if with_orbifold {
        strips.push(
            StripClass::new(B, A, vec![0], AffineArea::new(area(1, 0), int(0)), a_alpha, -1, true)
                .expect("slope zero for winding zero"),
        );
    }
    StripFamily::new(
        Geometry::WeightedBulk { u: u.clone(), anchor },
        one_var(toric::VAR),
        vec![base],
        (u.clone(), int(1)),
        mode,
        Some(toric::bulk_c(u)),
        strips,
    )
}

trait BulkRange {
    fn is_negative_or_beyond_third(&self) -> bool;
}

impl BulkRange for Rational {
    fn is_negative_or_beyond_third(&self) -> bool {
        self < &Rational::zero() || self >= &rat(1, 3)
    }
}

/// Anti-diagonal of `CP¹ × CP¹` (`q = T`) against the deformed fiber over
/// `(s, 1 − s)`, `s ∈ (0, 1/2)`, with `x = e^α·T^s`, `y = e^(−β)·T^s`.
///
/// Endpoint `a` is the intersection point `β` and `b` is `α`, so `a → b`
/// carries the strips of areas `x` and `y`, and `b → a` those of areas `1`
/// and `q/(xy)`. All four count with sign `+`.
pub fn enumerate_antidiagonal() -> StripFamily {
    use Endpoint::{A, B};
    let strips = vec![
        strip(A, vec![1, 0], int(0), 1, 0, 1),
        strip(A, vec![0, 1], int(0), 1, 0, 1),
        strip(B, vec![0, 0], int(0), 0, 0, 1),
        strip(B, vec![-1, -1], int(1), -2, 0, 1),
    ];
    StripFamily::new(
        Geometry::Antidiagonal,
        vec!["x".to_owned(), "y".to_owned()],
        vec![int(0), int(0)],
        (int(0), rat(1, 2)),
        AlphaMode::Absent,
        None,
        strips,
    )
    .expect("valid family")
}
