//! Exact fields for linear algebra: rationals and Gaussian rationals.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Num, Zero};
use thiserror::Error;

use crate::ring::Rational;

/// A field with exact arithmetic.
pub trait Field: Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> {}

impl<T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T>> Field for T {}

pub type GaussianRational = Complex<Rational>;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as an exact number")]
pub struct ParseFieldError(pub String);

pub fn parse_rational(s: &str) -> Result<Rational, ParseFieldError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    Rational::from_str(t).map_err(|_| ParseFieldError(s.to_owned()))
}

/// Parses `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi` with rational `a`, `b`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational, ParseFieldError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ParseFieldError(s.to_owned());
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, Rational::zero()));
    };
    let split = body.rfind(['+', '-']).filter(|&p| p > 0);
    let (re, im) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        other => parse_rational(other).map_err(|_| err())?,
    };
    Ok(Complex::new(parse_rational(re).map_err(|_| err())?, im))
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let p = m[r][col].clone();
        for i in (r + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() / p.clone();
            for j in col..ncols {
                let sub = factor.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - sub;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dense product `a · b`.
pub fn matmul<F: Field>(a: &[Vec<F>], b: &[Vec<F>], inner: usize, cols: usize) -> Vec<Vec<F>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(F::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn parses_gaussian_literals() {
        let g = |a: Rational, b: Rational| Complex::new(a, b);
        assert_eq!(parse_gaussian("1").unwrap(), g(int(1), int(0)));
        assert_eq!(parse_gaussian("-1/2").unwrap(), g(rat(-1, 2), int(0)));
        assert_eq!(parse_gaussian("i").unwrap(), g(int(0), int(1)));
        assert_eq!(parse_gaussian("-i").unwrap(), g(int(0), int(-1)));
        assert_eq!(parse_gaussian("3/4-1/2i").unwrap(), g(rat(3, 4), rat(-1, 2)));
        assert_eq!(parse_gaussian("2 + 3i").unwrap(), g(int(2), int(3)));
        assert!(parse_gaussian("x").is_err());
        assert!(parse_gaussian("1+").is_err());
        assert!(parse_gaussian("").is_err());
    }

    #[test]
    fn rank_over_both_fields() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&m), 1);
        let i = Complex::new(int(0), int(1));
        let one = Complex::new(int(1), int(0));
        // [[1, i], [i, -1]] has rank one
        let g = vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]];
        assert_eq!(rank(&g), 1);
        assert_eq!(rank::<Rational>(&[]), 0);
    }
}
