use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlphaMode, Rational, Renderer, RingError};

/// An exact element `Σ c·α^e·T^r` of the coefficient ring.
///
/// Terms are keyed by `(r, e)`, so iteration runs by increasing
/// `T`-exponent and then increasing `α`-exponent. Coefficients are never
/// zero and `α`-exponents are always reduced for the scalar's mode.
///
/// Binary operators panic when the two operands carry different
/// [`AlphaRelation`](super::AlphaRelation)s; the `checked_*` methods return
/// the error instead.
#[derive(Clone, Debug)]
pub struct Scalar {
    mode: AlphaMode,
    terms: BTreeMap<(Rational, i64), Rational>,
}

impl Scalar {
    pub fn zero(mode: AlphaMode) -> Self {
        Self { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: AlphaMode) -> Self {
        Self::from_rational(Rational::one(), mode)
    }

    pub fn from_rational(c: Rational, mode: AlphaMode) -> Self {
        let mut s = Self::zero(mode);
        s.push(Rational::zero(), 0, c).expect("alpha^0 exists in every mode");
        s
    }

    pub fn from_int(c: i64, mode: AlphaMode) -> Self {
        Self::from_rational(super::int(c), mode)
    }

    /// `T^r`.
    pub fn t_pow(r: Rational, mode: AlphaMode) -> Self {
        let mut s = Self::zero(mode);
        s.push(r, 0, Rational::one()).expect("alpha^0 exists in every mode");
        s
    }

    /// `α^k`; fails in [`AlphaMode::Absent`] for `k ≠ 0`.
    pub fn alpha_pow(k: i64, mode: AlphaMode) -> Result<Self, RingError> {
        Self::monomial(Rational::one(), Rational::zero(), k, mode)
    }

    /// `c·T^r·α^e`, normalized.
    pub fn monomial(c: Rational, r: Rational, e: i64, mode: AlphaMode) -> Result<Self, RingError> {
        let mut s = Self::zero(mode);
        s.push(r, e, c)?;
        Ok(s)
    }

    /// Normal form of `Σ c·T^r·α^e` over arbitrary raw terms.
    pub fn from_terms<I>(mode: AlphaMode, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Rational, i64, Rational)>,
    {
        let mut s = Self::zero(mode);
        for (r, e, c) in terms {
            s.push(r, e, c)?;
        }
        Ok(s)
    }

    /// Re-normalizes the current terms. The stored form is already normal,
    /// so this is the identity on values; kept as an explicit operation for
    /// callers that round-trip raw term lists.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.mode, self.raw_terms()).expect("terms are valid for their own mode")
    }

    fn push(&mut self, r: Rational, e: i64, c: Rational) -> Result<(), RingError> {
        if c.is_zero() {
            // still reject α in Absent mode
            self.mode.reduce(e)?;
            return Ok(());
        }
        let (factor, e) = self.mode.reduce(e)?;
        let c = c * factor;
        let key = (r, e);
        let sum = match self.terms.remove(&key) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn mode(&self) -> AlphaMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|((r, e), c)| r.is_zero() && *e == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(T-exponent, α-exponent, coefficient)`, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i64, &Rational)> + '_ {
        self.terms.iter().map(|((r, e), c)| (r, *e, c))
    }

    fn raw_terms(&self) -> Vec<(Rational, i64, Rational)> {
        self.terms.iter().map(|((r, e), c)| (r.clone(), *e, c.clone())).collect()
    }

    /// The same value viewed in a finer mode (see [`AlphaMode::join`]).
    pub fn promote(&self, mode: AlphaMode) -> Result<Self, RingError> {
        let target = self.mode.join(mode)?;
        if target == self.mode {
            return Ok(self.clone());
        }
        Self::from_terms(target, self.raw_terms())
    }

    /// Minimal `T`-exponent.
    pub fn valuation(&self) -> Result<Rational, RingError> {
        self.terms.keys().map(|(r, _)| r).min().cloned().ok_or(RingError::ZeroScalar)
    }

    /// Membership in `Λ₊`: every `T`-exponent strictly positive. The empty
    /// sum counts as a member.
    pub fn in_lambda_plus(&self) -> bool {
        self.valuation().map_or(true, |v| v.is_positive())
    }

    /// Distinct `T`-exponents with their `α`-parts.
    pub fn t_exponents(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.terms.keys().map(|(r, _)| r.clone()).collect();
        out.dedup();
        out
    }

    /// Constant (`T^0 α^0`) coefficient.
    pub fn constant_coefficient(&self) -> Rational {
        self.terms.get(&(Rational::zero(), 0)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        let mode = self.mode.join(other.mode)?;
        let mut out = self.promote(mode)?;
        for ((r, e), c) in &other.terms {
            out.push(r.clone(), *e, c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        let mode = self.mode.join(other.mode)?;
        let mut out = Self::zero(mode);
        for ((r1, e1), c1) in &self.terms {
            for ((r2, e2), c2) in &other.terms {
                out.push(r1 + r2, e1 + e2, c1 * c2)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        Self {
            mode: self.mode,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `self · α^k`. In a quotient mode this is always defined because `α`
    /// is a unit there; `α^k·α^(−k) = 1`.
    pub fn mul_alpha_pow(&self, k: i64) -> Result<Self, RingError> {
        self.checked_mul(&Self::alpha_pow(k, self.mode)?)
    }

    /// `self · T^r`.
    pub fn mul_t_pow(&self, r: &Rational) -> Self {
        Self {
            mode: self.mode,
            terms: self.terms.iter().map(|((t, e), c)| ((t + r, *e), c.clone())).collect(),
        }
    }

    /// Inverse of a single term `c·T^r·α^e`. Sums of several terms are not
    /// inverted (finite Novikov sums have no finite inverse in general).
    pub fn try_inverse(&self) -> Result<Self, RingError> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some(((r, e), c)), None) => Self::monomial(c.recip(), -r, -e, self.mode),
            _ => Err(RingError::NotInvertible(self.to_string())),
        }
    }

    /// Integer power; negative exponents require [`Scalar::try_inverse`].
    pub fn pow(&self, k: i64) -> Result<Self, RingError> {
        let base = if k < 0 { self.try_inverse()? } else { self.clone() };
        let mut acc = Self::one(self.mode);
        let mut sq = base;
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Renderer::internal().scalar(self))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            mode: self.mode,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(Scalar, Add, add, checked_add);
forward_binop!(Scalar, Sub, sub, checked_sub);
forward_binop!(Scalar, Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn rel(m: i64, n: i64) -> AlphaMode {
        AlphaMode::relation(m, n).unwrap()
    }

    #[test]
    fn alpha_fourth_power_reduces_under_teardrop_relation() {
        let mode = rel(3, 1);
        let a4 = Scalar::alpha_pow(4, mode).unwrap();
        assert_eq!(a4, Scalar::from_rational(rat(1, 3), mode));
        let a = Scalar::alpha_pow(1, mode).unwrap();
        let a3 = Scalar::alpha_pow(3, mode).unwrap();
        assert_eq!(&a * &a3, Scalar::from_rational(rat(1, 3), mode));
    }

    #[test]
    fn inverse_alpha_under_quadratic_relation() {
        // candidate α⁻¹ = 2α², checked by multiplying back
        let mode = rel(2, 1);
        let inv = Scalar::alpha_pow(-1, mode).unwrap();
        let expected = Scalar::monomial(int(2), int(0), 2, mode).unwrap();
        assert_eq!(inv, expected);
        assert!((&inv * &Scalar::alpha_pow(1, mode).unwrap()).is_one());

        let inv2 = Scalar::alpha_pow(-2, mode).unwrap();
        assert_eq!(inv2, Scalar::monomial(int(2), int(0), 1, mode).unwrap());
        assert!((&inv2 * &Scalar::alpha_pow(2, mode).unwrap()).is_one());
    }

    #[test]
    fn one_normalizes_to_itself() {
        let one = Scalar::one(rel(3, 1));
        assert_eq!(one.normalize(), one);
        assert!(one.normalize().is_one());
    }

    #[test]
    fn half_powers_of_t_add() {
        let h = Scalar::t_pow(rat(1, 2), AlphaMode::Absent);
        assert_eq!(&h * &h, Scalar::t_pow(int(1), AlphaMode::Absent));
    }

    #[test]
    fn alpha_absent_is_an_error() {
        assert_eq!(
            Scalar::alpha_pow(-1, AlphaMode::Absent).unwrap_err(),
            RingError::AlphaAbsent(-1)
        );
        let one = Scalar::one(AlphaMode::Absent);
        assert!(one.mul_alpha_pow(2).is_err());
        assert!(one.mul_alpha_pow(0).is_ok());
    }

    #[test]
    fn valuation_of_bulk_parameter() {
        let c = |u: Rational| {
            let a = Scalar::t_pow(rat(2, 3) - int(2) * &u, AlphaMode::Absent);
            let b = Scalar::t_pow(int(2) * &u + rat(2, 3), AlphaMode::Absent).scale(&int(3));
            a - b
        };
        let c1 = c(rat(1, 6));
        assert_eq!(c1.valuation().unwrap(), rat(1, 3));
        assert!(c1.in_lambda_plus());
        let c2 = c(rat(1, 3));
        assert_eq!(c2.valuation().unwrap(), int(0));
        assert!(!c2.in_lambda_plus());
        assert_eq!(Scalar::one(AlphaMode::Absent).valuation().unwrap(), int(0));
        assert_eq!(Scalar::zero(AlphaMode::Absent).valuation().unwrap_err(), RingError::ZeroScalar);
    }

    #[test]
    fn cancellation_removes_terms() {
        let m = AlphaMode::Free;
        let a = Scalar::monomial(int(2), rat(1, 2), -3, m).unwrap();
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).num_terms(), 0);
    }

    #[test]
    fn free_promotes_into_relation() {
        let free = Scalar::monomial(int(3), int(1), 4, AlphaMode::Free).unwrap();
        let rel = Scalar::one(rel(3, 1));
        // 3·T·α⁴ = T in the quotient
        assert_eq!(&free * &rel, Scalar::t_pow(int(1), rel.mode()));
        assert_eq!(free, Scalar::t_pow(int(1), rel.mode()));
    }

    #[test]
    fn mismatched_relations_are_reported() {
        let a = Scalar::one(rel(3, 1));
        let b = Scalar::one(rel(2, 1));
        assert!(matches!(a.checked_add(&b), Err(RingError::RelationMismatch(_, _))));
        assert_ne!(a, b);
    }

    #[test]
    fn inverse_of_monomial_and_rejection_of_sums() {
        let m = rel(2, 3);
        let s = Scalar::monomial(rat(-2, 5), rat(1, 3), 2, m).unwrap();
        assert!((&s * &s.try_inverse().unwrap()).is_one());
        let sum = &s + &Scalar::one(m);
        assert!(sum.try_inverse().is_err());
        assert_eq!(s.pow(-3).unwrap() * s.pow(3).unwrap(), Scalar::one(m));
    }
}
