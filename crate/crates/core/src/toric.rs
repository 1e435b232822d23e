//! Potentials and critical data of one-dimensional toric orbifolds.
//!
//! Everything is written in the single Novikov parameter `T`. For the
//! weighted line with weights `(m, n)` the moment polytope is
//! `[−1/m, 1/n]`, the two smooth disc classes contribute `e^(mx)·T^(1+mu)`
//! and `e^(−nx)·T^(1−nu)`, and substituting `z = e^x·T^(1/m+u)` gives
//!
//! ```text
//! W = z^m + T^((m+n)/m) / z^n        (= z^m + q^(m+n)/z^n with q = T^(1/m))
//! ```
//!
//! The bulk-deformed teardrop `(m, n) = (3, 1)` uses the twisted-sector
//! parameter `c = T^(2/3−2u) − 3·T^(2u+2/3)` and the potential
//! `W^b = z³ + T^(4/3)/z + c·z`, where `T` plays the role of `q`.

use num_integer::Integer;
use thiserror::Error;

use crate::ring::{int, rat, AlphaMode, AlphaRelation, LaurentPoly, Rational, RingError, Scalar};

#[derive(Debug, Error)]
pub enum ToricError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("weights must be positive, got ({0}, {1})")]
    InvalidWeights(i64, i64),
    #[error("derivative check failed: dW at the critical point is {0}")]
    DerivativeCheck(String),
}

/// Weighted projective line with a `Z/m` point on the left and a `Z/n`
/// point on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StackyLine {
    m: u32,
    n: u32,
}

impl StackyLine {
    pub fn new(m: i64, n: i64) -> Result<Self, ToricError> {
        if m < 1 || n < 1 || m > u32::MAX as i64 || n > u32::MAX as i64 {
            return Err(ToricError::InvalidWeights(m, n));
        }
        Ok(Self { m: m as u32, n: n as u32 })
    }

    pub fn teardrop() -> Self {
        Self { m: 3, n: 1 }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_coprime(&self) -> bool {
        self.m.gcd(&self.n) == 1
    }

    /// Non-fatal diagnostic for non-coprime weights (still a valid labeled
    /// polytope, but outside the weighted-projective-line setting).
    pub fn warning(&self) -> Option<String> {
        (!self.is_coprime()).then(|| {
            format!("weights ({}, {}) are not coprime; treating the line as a labeled polytope", self.m, self.n)
        })
    }

    pub fn relation(&self) -> AlphaRelation {
        AlphaRelation::new(self.m as i64, self.n as i64).expect("weights are positive")
    }

    /// Moment polytope `[−1/m, 1/n]`.
    pub fn moment_polytope(&self) -> (Rational, Rational) {
        (rat(-1, self.m as i64), rat(1, self.n as i64))
    }

    /// `T`-exponent of `q^k` with `q = T^(1/m)`.
    pub fn q_exponent(&self, k: Rational) -> Rational {
        k / int(self.m as i64)
    }

    /// `q^k` with `q = T^(1/m)`.
    pub fn q_pow(&self, k: Rational, mode: AlphaMode) -> Scalar {
        Scalar::t_pow(self.q_exponent(k), mode)
    }
}

pub const VAR: &str = "z";

fn z_mono(e: i64, c: Scalar) -> LaurentPoly {
    LaurentPoly::monomial(&[VAR], vec![e], c).expect("single variable")
}

/// `z^m + T^((m+n)/m)·z^(−n)`.
pub fn hori_vafa_potential(s: StackyLine) -> LaurentPoly {
    let (m, n) = (s.m as i64, s.n as i64);
    z_mono(m, Scalar::one(AlphaMode::Absent)) + z_mono(-n, Scalar::t_pow(rat(m + n, m), AlphaMode::Absent))
}

/// `λ = q^m·(α^m + α^(−n)) = T·(α^m + α^(−n))` in the given mode.
pub fn critical_value(s: StackyLine, mode: AlphaMode) -> Result<Scalar, RingError> {
    let t = Scalar::t_pow(int(1), mode);
    let sum = Scalar::alpha_pow(s.m as i64, mode)?.checked_add(&Scalar::alpha_pow(-(s.n as i64), mode)?)?;
    t.checked_mul(&sum)
}

/// `z₀ = q·α = T^(1/m)·α`.
pub fn critical_point(s: StackyLine, mode: AlphaMode) -> Result<Scalar, RingError> {
    Scalar::monomial(int(1), rat(1, s.m as i64), 1, mode)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalData {
    pub relation: AlphaRelation,
    pub critical_point: Scalar,
    pub critical_value: Scalar,
}

/// Critical point `z₀ = qα` and value of the Hori–Vafa potential, with `α`
/// a root of `m·α^(m+n) = n`. The vanishing of `dW(z₀)` in the quotient is
/// checked before returning.
pub fn critical_data(s: StackyLine) -> Result<CriticalData, ToricError> {
    let mode = AlphaMode::Relation(s.relation());
    let w = hori_vafa_potential(s);
    let z0 = critical_point(s, mode)?;
    let dw = w.derivative(0)?.eval(std::slice::from_ref(&z0))?;
    if !dw.is_zero() {
        return Err(ToricError::DerivativeCheck(dw.to_string()));
    }
    let lambda = critical_value(s, mode)?;
    debug_assert_eq!(w.eval(std::slice::from_ref(&z0))?, lambda);
    Ok(CriticalData { relation: s.relation(), critical_point: z0, critical_value: lambda })
}

/// `c(u) = T^(2/3−2u) − 3·T^(2u+2/3)`.
pub fn bulk_c(u: &Rational) -> Scalar {
    let two = int(2);
    let a = Scalar::t_pow(rat(2, 3) - &two * u, AlphaMode::Absent);
    let b = Scalar::t_pow(&two * u + rat(2, 3), AlphaMode::Absent).scale(&int(3));
    a - b
}

#[derive(Clone, Debug, PartialEq)]
pub struct BulkPotential {
    pub u: Rational,
    pub potential: LaurentPoly,
    pub c: Scalar,
    /// Whether `c ∈ Λ₊`, i.e. whether the bulk class is admissible.
    pub c_in_lambda_plus: bool,
}

/// `W^b = z³ + T^(4/3)/z + c·z` for an arbitrary bulk scalar `c`.
pub fn bulk_potential_with(c: &Scalar) -> LaurentPoly {
    z_mono(3, Scalar::one(AlphaMode::Absent)) + z_mono(-1, Scalar::t_pow(rat(4, 3), AlphaMode::Absent)) + z_mono(1, c.clone())
}

/// The bulk-deformed teardrop potential with the canonical `c(u)`. Computed
/// for every `u`; membership of `c` in `Λ₊` is reported, not enforced.
pub fn bulk_potential(u: &Rational) -> BulkPotential {
    let c = bulk_c(u);
    BulkPotential { u: u.clone(), potential: bulk_potential_with(&c), c_in_lambda_plus: c.in_lambda_plus(), c }
}

/// `A³ + T^(4/3)/A + c·A`, the value of `W^b` at `z = A`.
pub fn bulk_value_at(anchor: &Scalar, c: &Scalar) -> Result<Scalar, RingError> {
    bulk_potential_with(c).eval(std::slice::from_ref(anchor))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BulkCritical {
    pub u: Rational,
    pub c: Scalar,
    /// Positive real branch `z₀ = T^(u+1/3)`.
    pub critical_point: Scalar,
    pub critical_value: Scalar,
}

/// Positive-branch critical point of `W^b` and its value. The derivative
/// `3z² − T^(4/3)/z² + c` is checked to vanish exactly at `z₀`.
pub fn bulk_critical(u: &Rational) -> Result<BulkCritical, ToricError> {
    let bp = bulk_potential(u);
    let z0 = Scalar::t_pow(u + rat(1, 3), AlphaMode::Absent);
    let dw = bp.potential.derivative(0)?.eval(std::slice::from_ref(&z0))?;
    if !dw.is_zero() {
        return Err(ToricError::DerivativeCheck(dw.to_string()));
    }
    let value = bp.potential.eval(std::slice::from_ref(&z0))?;
    Ok(BulkCritical { u: u.clone(), c: bp.c, critical_point: z0, critical_value: value })
}

/// The two roots `y = z²` of `3y² + c·y − T^(4/3) = 0`, which carry all four
/// critical points `z = ±√y` of `W^b`:
/// `y₁ = T^(2u+2/3)` (giving `±T^(u+1/3)`) and `y₂ = −(1/3)·T^(2/3−2u)`
/// (giving `±(i/√3)·T^(1/3−u)`, not rational). Each root is checked.
pub fn bulk_critical_squares(u: &Rational) -> Result<[Scalar; 2], ToricError> {
    let c = bulk_c(u);
    let roots = [
        Scalar::t_pow(int(2) * u + rat(2, 3), AlphaMode::Absent),
        Scalar::t_pow(rat(2, 3) - int(2) * u, AlphaMode::Absent).scale(&rat(-1, 3)),
    ];
    let t43 = Scalar::t_pow(rat(4, 3), AlphaMode::Absent);
    for y in &roots {
        let lhs = &(&(y * y).scale(&int(3)) + &(&c * y)) - &t43;
        if !lhs.is_zero() {
            return Err(ToricError::DerivativeCheck(lhs.to_string()));
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(r: Rational) -> Scalar {
        Scalar::t_pow(r, AlphaMode::Absent)
    }

    fn weighted(m: i64, n: i64) -> StackyLine {
        StackyLine::new(m, n).unwrap()
    }

    #[test]
    fn teardrop_potential_in_q() {
        // z³ + q⁴/z with q = T^(1/3)
        let s = StackyLine::teardrop();
        let expected = z_mono(3, Scalar::one(AlphaMode::Absent)) + z_mono(-1, s.q_pow(int(4), AlphaMode::Absent));
        assert_eq!(hori_vafa_potential(s), expected);
        assert_eq!(s.q_pow(int(4), AlphaMode::Absent), t(rat(4, 3)));
    }

    #[test]
    fn balanced_and_general_potentials() {
        let w11 = hori_vafa_potential(weighted(1, 1));
        assert_eq!(w11, z_mono(1, Scalar::one(AlphaMode::Absent)) + z_mono(-1, t(int(2))));
        let w23 = hori_vafa_potential(weighted(2, 3));
        assert_eq!(w23, z_mono(2, Scalar::one(AlphaMode::Absent)) + z_mono(-3, t(rat(5, 2))));
    }

    #[test]
    fn teardrop_critical_data() {
        let cd = critical_data(StackyLine::teardrop()).unwrap();
        let mode = AlphaMode::Relation(cd.relation);
        assert_eq!(cd.relation, AlphaRelation::new(3, 1).unwrap());
        // q³α³ + q³/α = T·α³ + T·α⁻¹
        let expected = Scalar::monomial(int(1), int(1), 3, mode).unwrap() + Scalar::monomial(int(1), int(1), -1, mode).unwrap();
        assert_eq!(cd.critical_value, expected);
        // in the quotient α⁻¹ = 3α³, so λ = 4·T·α³
        assert_eq!(cd.critical_value, Scalar::monomial(int(4), int(1), 3, mode).unwrap());
    }

    #[test]
    fn balanced_critical_value_is_plus_minus_two_q() {
        let cd = critical_data(weighted(1, 1)).unwrap();
        let mode = AlphaMode::Relation(cd.relation);
        // α² = 1 so α⁻¹ = α and λ = 2Tα
        assert_eq!(cd.critical_value, Scalar::monomial(int(2), int(1), 1, mode).unwrap());
        let alpha = Scalar::alpha_pow(1, mode).unwrap();
        assert!((&alpha * &alpha).is_one());
    }

    #[test]
    fn quadratic_holonomy_derivative_oracle() {
        // oracle: substitute z = qα into 2z − q³/z² by hand, with q = T^(1/2):
        // 2·T^(1/2)·α − T^(3/2)/(T·α²) = T^(1/2)·(2α − α⁻²), and α⁻² = 2α under 2α³ = 1
        let mode = AlphaMode::relation(2, 1).unwrap();
        let a = Scalar::alpha_pow(1, mode).unwrap();
        let a_inv2 = Scalar::alpha_pow(-2, mode).unwrap();
        assert_eq!(a_inv2, a.scale(&int(2)));
        assert!((&a.scale(&int(2)) - &a_inv2).is_zero());
        let cd = critical_data(weighted(2, 1)).unwrap();
        let expected = Scalar::monomial(int(1), int(1), 2, mode).unwrap() + Scalar::monomial(int(1), int(1), -1, mode).unwrap();
        assert_eq!(cd.critical_value, expected);
    }

    #[test]
    fn derivative_needs_the_relation() {
        let s = weighted(3, 1);
        let z0 = critical_point(s, AlphaMode::Free).unwrap();
        let dw = hori_vafa_potential(s).derivative(0).unwrap().eval(&[z0]).unwrap();
        assert!(!dw.is_zero());
    }

    #[test]
    fn coprimality_warning() {
        assert!(weighted(2, 4).warning().is_some());
        assert!(weighted(2, 3).warning().is_none());
        assert!(StackyLine::new(0, 2).is_err());
        assert!(critical_data(weighted(2, 4)).is_ok());
    }

    #[test]
    fn bulk_parameter_examples() {
        let bp = bulk_potential(&rat(1, 6));
        assert_eq!(bp.c, t(rat(1, 3)) - t(int(1)).scale(&int(3)));
        assert!(bp.c_in_lambda_plus);
        assert!(!bulk_potential(&rat(1, 3)).c_in_lambda_plus);
        assert_eq!(bulk_c(&int(0)), t(rat(2, 3)).scale(&int(-2)));
    }

    #[test]
    fn bulk_critical_examples() {
        let bc = bulk_critical(&rat(1, 6)).unwrap();
        assert_eq!(bc.critical_point, t(rat(1, 2)));
        assert_eq!(bc.critical_value, t(rat(5, 6)).scale(&int(2)) - t(rat(3, 2)).scale(&int(2)));
        let bc0 = bulk_critical(&int(0)).unwrap();
        assert_eq!(bc0.critical_point, t(rat(1, 3)));
        assert!(bc0.critical_value.is_zero());
        // value agrees with A³ + T^(4/3)/A + cA
        let a = &bc.critical_point;
        let direct = &(&a.pow(3).unwrap() + &(&t(rat(4, 3)) * &a.try_inverse().unwrap())) + &(&bc.c * a);
        assert_eq!(direct, bc.critical_value);
    }

    #[test]
    fn bulk_roots_of_the_quartic() {
        let [y1, y2] = bulk_critical_squares(&rat(1, 8)).unwrap();
        assert_eq!(y1, t(rat(11, 12)));
        assert_eq!(y2, t(rat(5, 12)).scale(&rat(-1, 3)));
    }
}
