use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::scalar::forward_binop;
use super::{int, AlphaMode, Renderer, RingError, Scalar};

/// Maximum number of formal variables of a [`LaurentPoly`].
pub const MAX_VARIABLES: usize = 2;

/// Sparse Laurent polynomial `Σ c_e · z^e` with [`Scalar`] coefficients in
/// one or two named variables.
///
/// Exponent vectors are kept in lexicographic order and zero coefficients
/// are never stored. Operators panic on variable-set mismatch; use the
/// `checked_*` methods to get a [`RingError`] instead.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

fn check_vars(vars: &[String]) -> Result<(), RingError> {
    if vars.is_empty() || vars.len() > MAX_VARIABLES {
        return Err(RingError::TooManyVariables(vars.len()));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(RingError::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

impl LaurentPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<Self, RingError> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_owned()).collect();
        check_vars(&vars)?;
        Ok(Self { vars, terms: BTreeMap::new() })
    }

    /// Zero polynomial sharing the variables of `self`.
    pub fn zero_like(&self) -> Self {
        Self { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Scalar) -> Result<Self, RingError> {
        let arity = vars.len();
        Self::monomial(vars, vec![0; arity], c)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<i64>, c: Scalar) -> Result<Self, RingError> {
        let mut p = Self::zero(vars)?;
        p.push(exps, c)?;
        Ok(p)
    }

    /// The `i`-th variable as a polynomial.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Result<Self, RingError> {
        let mut exps = vec![0; vars.len()];
        *exps.get_mut(i).ok_or_else(|| RingError::UnknownVariable(format!("#{i}")))? = 1;
        Self::monomial(vars, exps, Scalar::one(AlphaMode::Absent))
    }

    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self, RingError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<i64>, Scalar)>,
    {
        let mut p = Self::zero(vars)?;
        for (e, c) in terms {
            p.push(e, c)?;
        }
        Ok(p)
    }

    fn push(&mut self, exps: Vec<i64>, c: Scalar) -> Result<(), RingError> {
        if exps.len() != self.vars.len() {
            return Err(RingError::ExponentArity { expected: self.vars.len(), got: exps.len() });
        }
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.remove(&exps) {
            Some(prev) => prev.checked_add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Scalar)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| Scalar::zero(self.alpha_mode()))
    }

    /// Join of the coefficient modes; `Absent` for the zero polynomial.
    pub fn alpha_mode(&self) -> AlphaMode {
        self.terms
            .values()
            .try_fold(AlphaMode::Absent, |m, c| m.join(c.mode()))
            .expect("coefficients of one polynomial share a relation")
    }

    fn same_vars(&self, other: &Self) -> Result<(), RingError> {
        if self.vars != other.vars {
            return Err(RingError::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_vars(other)?;
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push(e, c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Self, RingError> {
        let mut out = self.zero_like();
        for (e, k) in &self.terms {
            out.push(e.clone(), k.checked_mul(c)?)?;
        }
        Ok(out)
    }

    /// `self · c`; panics on relation mismatch.
    pub fn scale(&self, c: &Scalar) -> Self {
        self.checked_scale(c).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `self − λ`.
    pub fn sub_scalar(&self, c: &Scalar) -> Result<Self, RingError> {
        self.checked_sub(&Self::constant(&self.vars, c.clone())?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.vars, Scalar::one(AlphaMode::Absent))
            .expect("variables already validated");
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Result<Self, RingError> {
        if i >= self.vars.len() {
            return Err(RingError::UnknownVariable(format!("#{i}")));
        }
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.push(e2, c.scale(&int(e[i])))?;
        }
        Ok(out)
    }

    /// Substitutes scalars for the variables. Points raised to negative
    /// powers must be invertible single-term scalars.
    pub fn eval(&self, points: &[Scalar]) -> Result<Scalar, RingError> {
        if points.len() != self.vars.len() {
            return Err(RingError::PointArity { expected: self.vars.len(), got: points.len() });
        }
        let mode = points.iter().try_fold(self.alpha_mode(), |m, p| m.join(p.mode()))?;
        let mut acc = Scalar::zero(mode);
        for (e, c) in &self.terms {
            let mut term = c.promote(mode)?;
            for (p, k) in points.iter().zip(e) {
                term = term.checked_mul(&p.pow(*k)?)?;
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self, RingError> {
        let target: Vec<String> = vars.iter().map(|s| s.as_ref().to_owned()).collect();
        check_vars(&target)?;
        let slots = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).ok_or_else(|| RingError::UnknownVariable(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = Self::zero(&target)?;
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (k, slot) in e.iter().zip(&slots) {
                e2[*slot] = *k;
            }
            out.push(e2, c.clone())?;
        }
        Ok(out)
    }

    pub fn rename(&self, from: &str, to: &str) -> Result<Self, RingError> {
        let mut vars = self.vars.clone();
        let slot = vars
            .iter()
            .position(|v| v == from)
            .ok_or_else(|| RingError::UnknownVariable(from.to_owned()))?;
        vars[slot] = to.to_owned();
        check_vars(&vars)?;
        Ok(Self { vars, terms: self.terms.clone() })
    }

    /// Coefficient-wise map, e.g. for changing the `α` mode.
    pub fn try_map_coefficients<F>(&self, mut f: F) -> Result<Self, RingError>
    where
        F: FnMut(&Scalar) -> Result<Scalar, RingError>,
    {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.push(e.clone(), f(c)?)?;
        }
        Ok(out)
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for LaurentPoly {}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Renderer::internal().poly(self))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

forward_binop!(LaurentPoly, Add, add, checked_add);
forward_binop!(LaurentPoly, Sub, sub, checked_sub);
forward_binop!(LaurentPoly, Mul, mul, checked_mul);

impl Mul<&Scalar> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &Scalar) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl Mul<&Scalar> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &Scalar) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl LaurentPoly {
    /// The scalar `c` if the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(AlphaMode::Absent)),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|k| k.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }
}
