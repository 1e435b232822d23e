use std::fmt;

use num_traits::One;

use super::{int, Rational, RingError};

/// The relation `m·α^(m+n) = n` satisfied by the holonomy of the balanced
/// fiber of a weighted projective line with weights `(m, n)`.
///
/// Coprimality is not required here; the quotient ring is well defined for
/// any positive weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaRelation {
    m: u32,
    n: u32,
}

impl AlphaRelation {
    pub fn new(m: i64, n: i64) -> Result<Self, RingError> {
        if m < 1 || n < 1 || m > u32::MAX as i64 || n > u32::MAX as i64 {
            return Err(RingError::InvalidRelation { m, n });
        }
        Ok(Self { m: m as u32, n: n as u32 })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of basis powers `α^0, …, α^(m+n−1)` of the quotient.
    pub fn degree(&self) -> i64 {
        self.m as i64 + self.n as i64
    }

    /// Writes `α^e = c·α^r` with `0 ≤ r < m+n`.
    pub fn reduce(&self, e: i64) -> (Rational, i64) {
        let d = self.degree();
        let quot = e.div_euclid(d);
        let rem = e.rem_euclid(d);
        if quot == 0 {
            return (Rational::one(), rem);
        }
        let ratio = int(self.n as i64) / int(self.m as i64);
        (ratio.pow(quot as i32), rem)
    }
}

impl fmt::Display for AlphaRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·α^{} = {}", self.m, self.degree(), self.n)
    }
}

/// How the holonomy generator `α` behaves in a scalar.
///
/// Modes are ordered by refinement: an `Absent` scalar embeds into every
/// other mode, and a `Free` scalar maps onto any quotient by reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphaMode {
    /// No `α`; only `α^0` terms appear.
    Absent,
    /// `α` is an invertible indeterminate: `Q[α, α⁻¹]`.
    Free,
    /// `α` satisfies the given relation; exponents lie in `0..m+n`.
    Relation(AlphaRelation),
}

impl AlphaMode {
    pub fn relation(m: i64, n: i64) -> Result<Self, RingError> {
        AlphaRelation::new(m, n).map(AlphaMode::Relation)
    }

    /// Smallest mode both arguments embed into.
    pub fn join(self, other: AlphaMode) -> Result<AlphaMode, RingError> {
        use AlphaMode::*;
        match (self, other) {
            (Absent, x) | (x, Absent) => Ok(x),
            (Free, x) | (x, Free) => Ok(x),
            (Relation(a), Relation(b)) if a == b => Ok(Relation(a)),
            (Relation(a), Relation(b)) => Err(RingError::RelationMismatch(a, b)),
        }
    }

    /// Normalizes `c·α^e` in this mode.
    pub(crate) fn reduce(&self, e: i64) -> Result<(Rational, i64), RingError> {
        match self {
            AlphaMode::Absent if e != 0 => Err(RingError::AlphaAbsent(e)),
            AlphaMode::Absent | AlphaMode::Free => Ok((Rational::one(), e)),
            AlphaMode::Relation(r) => Ok(r.reduce(e)),
        }
    }
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaMode::Absent => f.write_str("absent"),
            AlphaMode::Free => f.write_str("free"),
            AlphaMode::Relation(r) => write!(f, "{r}"),
        }
    }
}
