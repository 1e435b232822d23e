//! Morse–Floer complex of `Tⁿ` twisted by two flat line bundles.
//!
//! The Morse function `Σ cos(2πx_i)` has critical points `a ∈ {0, 1/2}ⁿ`.
//! A generator is stored as a bitmask with bit `i` set iff `a_i = 0`, so
//! its index is the popcount. Flipping coordinate `i` from `0` to `1/2`
//! lowers the index by one and carries the coefficient
//! `(−1)^A·(1 − h⁰_i/h¹_i)`, where `A` counts the `j < i` with `a_j = 0`.

use thiserror::Error;

use crate::field::{matmul, rank, Field};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FloerError {
    #[error("dimension must be between 1 and {max}, got {0}", max = MAX_DIM)]
    BadDimension(usize),
    #[error("holonomy vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("zero holonomy at coordinate {0}")]
    ZeroHolonomy(usize),
    #[error("Psi not invertible: h0 = h1 at coordinate {0}")]
    PsiNotInvertible(usize),
    #[error("differential does not square to zero")]
    NotAComplex,
}

pub const MAX_DIM: usize = 16;

pub type Matrix<F> = Vec<Vec<F>>;

#[derive(Clone, Debug)]
pub struct TorusComplex<F: Field> {
    h0: Vec<F>,
    h1: Vec<F>,
    coefficients: Vec<F>,
    differentials: Vec<Matrix<F>>,
}

fn sign<F: Field>(mask: u32, i: usize) -> F {
    let below = (mask & ((1u32 << i) - 1)).count_ones();
    if below % 2 == 0 {
        F::one()
    } else {
        -F::one()
    }
}

/// Generators of index `k`, ascending as bitmasks.
pub fn basis(n: usize, k: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Generator as the tuple of coordinates, each `0` or `1/2`.
pub fn coordinates(n: usize, mask: u32) -> Vec<&'static str> {
    (0..n).map(|i| if mask >> i & 1 == 1 { "0" } else { "1/2" }).collect()
}

/// `∂_k : C_k → C_(k−1)` with the given per-coordinate coefficients.
fn boundary<F: Field>(n: usize, k: usize, coeff: &[F]) -> Matrix<F> {
    let rows = basis(n, k - 1);
    let cols = basis(n, k);
    let mut m = vec![vec![F::zero(); cols.len()]; rows.len()];
    for (c, &mask) in cols.iter().enumerate() {
        for (i, ci) in coeff.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let target = mask & !(1 << i);
            let r = rows.binary_search(&target).expect("index drops by one");
            m[r][c] = sign::<F>(mask, i) * ci.clone();
        }
    }
    m
}

fn all_boundaries<F: Field>(n: usize, coeff: &[F]) -> Vec<Matrix<F>> {
    (1..=n).map(|k| boundary(n, k, coeff)).collect()
}

fn is_zero_matrix<F: Field>(m: &Matrix<F>) -> bool {
    m.iter().all(|row| row.iter().all(F::is_zero))
}

fn squares_to_zero<F: Field>(n: usize, d: &[Matrix<F>]) -> bool {
    (1..n).all(|k| {
        // ∂_k ∘ ∂_(k+1)
        let inner = basis(n, k).len();
        let cols = basis(n, k + 1).len();
        is_zero_matrix(&matmul(&d[k - 1], &d[k], inner, cols))
    })
}

fn ranks_of<F: Field>(n: usize, d: &[Matrix<F>]) -> Vec<usize> {
    let rk: Vec<usize> = d.iter().map(|m| rank(m)).collect();
    (0..=n)
        .map(|k| {
            let dim = basis(n, k).len();
            let out = if k == 0 { 0 } else { rk[k - 1] };
            let inc = if k == n { 0 } else { rk[k] };
            dim - out - inc
        })
        .collect()
}

impl<F: Field> TorusComplex<F> {
    pub fn new(h0: Vec<F>, h1: Vec<F>) -> Result<Self, FloerError> {
        let n = h0.len();
        if h1.len() != n {
            return Err(FloerError::LengthMismatch(n, h1.len()));
        }
        if n == 0 || n > MAX_DIM {
            return Err(FloerError::BadDimension(n));
        }
        for (i, (a, b)) in h0.iter().zip(&h1).enumerate() {
            if a.is_zero() || b.is_zero() {
                return Err(FloerError::ZeroHolonomy(i));
            }
        }
        let coefficients: Vec<F> = h0.iter().zip(&h1).map(|(a, b)| F::one() - a.clone() / b.clone()).collect();
        let differentials = all_boundaries(n, &coefficients);
        if !squares_to_zero(n, &differentials) {
            return Err(FloerError::NotAComplex);
        }
        Ok(Self { h0, h1, coefficients, differentials })
    }

    pub fn n(&self) -> usize {
        self.h0.len()
    }

    pub fn h0(&self) -> &[F] {
        &self.h0
    }

    pub fn h1(&self) -> &[F] {
        &self.h1
    }

    /// `1 − h⁰_i/h¹_i` for each coordinate.
    pub fn coefficients(&self) -> &[F] {
        &self.coefficients
    }

    /// `∂_k` for `k = 1..=n`, rows indexed by `basis(n, k−1)` and columns by
    /// `basis(n, k)`.
    pub fn differential(&self, k: usize) -> Option<&Matrix<F>> {
        k.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    pub fn differentials(&self) -> &[Matrix<F>] {
        &self.differentials
    }

    pub fn squares_to_zero(&self) -> bool {
        squares_to_zero(self.n(), &self.differentials)
    }

    /// Ranks of homology in degrees `0..=n`.
    pub fn homology_ranks(&self) -> Vec<usize> {
        ranks_of(self.n(), &self.differentials)
    }

    pub fn total_rank(&self) -> usize {
        self.homology_ranks().iter().sum()
    }

    /// Checks `Ψ∂ = ∂̃Ψ` with `Ψ(a) = Π_{a_i = 0} (1 − h⁰_i/h¹_i)·a` and `∂̃`
    /// the same complex with unit coefficients.
    pub fn chain_isomorphism_check(&self) -> Result<bool, FloerError> {
        if let Some(i) = self.coefficients.iter().position(F::is_zero) {
            return Err(FloerError::PsiNotInvertible(i));
        }
        let n = self.n();
        let unit = unit_differentials::<F>(n);
        let psi = |k: usize| -> Vec<F> {
            basis(n, k)
                .into_iter()
                .map(|mask| {
                    (0..n).filter(|i| mask >> i & 1 == 1).fold(F::one(), |acc, i| acc * self.coefficients[i].clone())
                })
                .collect()
        };
        for k in 1..=n {
            let (lo, hi) = (psi(k - 1), psi(k));
            let d = &self.differentials[k - 1];
            let dt = &unit[k - 1];
            for (r, row) in d.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    if lo[r].clone() * entry.clone() != dt[r][c].clone() * hi[c].clone() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `∂̃`: the reduced simplicial chain complex of the `(n−1)`-simplex, where
/// the face of a generator contains vertex `i` iff `a_i = 0`.
pub fn unit_differentials<F: Field>(n: usize) -> Vec<Matrix<F>> {
    all_boundaries(n, &vec![F::one(); n])
}

pub fn simplex_homology_ranks<F: Field>(n: usize) -> Vec<usize> {
    ranks_of(n, &unit_differentials::<F>(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational;
    use crate::ring::{int, Rational};
    use num_complex::Complex;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn single_flip() {
        let c = TorusComplex::new(q(&[1]), q(&[-1])).unwrap();
        assert_eq!(c.differential(1).unwrap(), &vec![vec![int(2)]]);
        assert_eq!(c.homology_ranks(), vec![0, 0]);
    }

    #[test]
    fn sign_of_second_flip() {
        let c = TorusComplex::new(q(&[2, 2]), q(&[1, 1])).unwrap();
        let d2 = c.differential(2).unwrap();
        // column (0,0) = mask 0b11; flipping coordinate 2 gives mask 0b01
        let rows = basis(2, 1);
        let r1 = rows.binary_search(&0b01).unwrap();
        let r0 = rows.binary_search(&0b10).unwrap();
        assert_eq!(d2[r1][0], int(1));
        assert_eq!(d2[r0][0], int(-1));
    }

    #[test]
    fn equal_holonomy_has_zero_differential() {
        let c = TorusComplex::new(q(&[1, -1]), q(&[1, -1])).unwrap();
        assert!(c.differentials().iter().all(is_zero_matrix));
        assert_eq!(c.homology_ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn opposite_tori_are_acyclic() {
        let c = TorusComplex::new(q(&[1, -1]), q(&[-1, 1])).unwrap();
        assert_eq!(c.homology_ranks(), vec![0, 0, 0]);
        assert!(c.chain_isomorphism_check().unwrap());
    }

    #[test]
    fn one_differing_coordinate_kills_homology() {
        let c = TorusComplex::new(q(&[1, 1, -1]), q(&[1, 1, 1])).unwrap();
        assert_eq!(c.total_rank(), 0);
        assert_eq!(c.chain_isomorphism_check(), Err(FloerError::PsiNotInvertible(0)));
    }

    #[test]
    fn one_by_one_chain_isomorphism() {
        let c = TorusComplex::new(q(&[2]), q(&[3])).unwrap();
        assert!(c.chain_isomorphism_check().unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(TorusComplex::new(q(&[0]), q(&[1])).unwrap_err(), FloerError::ZeroHolonomy(0));
        assert_eq!(TorusComplex::new(q(&[1]), q(&[1, 1])).unwrap_err(), FloerError::LengthMismatch(1, 2));
        assert_eq!(TorusComplex::<Rational>::new(vec![], vec![]).unwrap_err(), FloerError::BadDimension(0));
    }

    #[test]
    fn gaussian_holonomies() {
        let i = Complex::new(int(0), int(1));
        let one = Complex::new(int(1), int(0));
        let c: TorusComplex<GaussianRational> = TorusComplex::new(vec![i.clone(), one.clone()], vec![-i, one]).unwrap();
        assert_eq!(c.coefficients()[0], Complex::new(int(2), int(0)));
        assert_eq!(c.total_rank(), 0);
    }

    #[test]
    fn simplex_complex_is_acyclic() {
        for n in 1..=6 {
            assert!(simplex_homology_ranks::<Rational>(n).iter().all(|&r| r == 0));
        }
    }
}
