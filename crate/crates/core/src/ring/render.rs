use num_traits::{One, Signed, Zero};

use super::{int, LaurentPoly, Rational, Scalar};

/// Which Novikov symbol text output is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QConvention {
    /// Plain `T^r`, the internal representation.
    Internal,
    /// `q = T`: exponents unchanged, symbol renamed.
    QUnit,
    /// `q = T^(1/m)` for the weight `m` of the geometry at hand.
    QRoot,
}

/// Canonical text rendering.
///
/// Terms are printed in storage order (exponent vectors lexicographic, then
/// `T`-exponent, then `α`-exponent ascending).
#[derive(Clone, Debug)]
pub struct Renderer {
    symbol: &'static str,
    scale: Rational,
}

impl Renderer {
    pub fn internal() -> Self {
        Self { symbol: "T", scale: Rational::one() }
    }

    /// `root` is the `m` of `q = T^(1/m)`; ignored unless `QRoot`.
    pub fn new(convention: QConvention, root: u32) -> Self {
        match convention {
            QConvention::Internal => Self::internal(),
            QConvention::QUnit => Self { symbol: "q", scale: Rational::one() },
            QConvention::QRoot => Self { symbol: "q", scale: int(root.max(1) as i64) },
        }
    }

    fn exponent(r: &Rational) -> String {
        if r.is_integer() {
            format!("^{}", r.numer())
        } else {
            format!("^({r})")
        }
    }

    /// Unsigned product `|c|·T^r·α^e`, or `None` pieces collapsed.
    fn factors(&self, r: &Rational, e: i64, c: &Rational) -> String {
        let mut parts = Vec::new();
        let c = c.abs();
        let r = r * &self.scale;
        let trivial = r.is_zero() && e == 0;
        if !c.is_one() || trivial {
            parts.push(c.to_string());
        }
        if !r.is_zero() {
            if r.is_one() {
                parts.push(self.symbol.to_owned());
            } else {
                parts.push(format!("{}{}", self.symbol, Self::exponent(&r)));
            }
        }
        if e == 1 {
            parts.push("α".to_owned());
        } else if e != 0 {
            parts.push(format!("α^{e}"));
        }
        parts.join("*")
    }

    pub fn scalar(&self, s: &Scalar) -> String {
        if s.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, (r, e, c)) in s.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&self.factors(r, e, c));
        }
        out
    }

    fn monomial(vars: &[String], exps: &[i64]) -> String {
        vars.iter()
            .zip(exps)
            .filter(|(_, k)| **k != 0)
            .map(|(v, k)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn poly(&self, p: &LaurentPoly) -> String {
        if p.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, (exps, c)) in p.terms().enumerate() {
            let mono = Self::monomial(p.vars(), exps);
            let (neg, coeff) = if c.num_terms() == 1 {
                let (r, e, k) = c.terms().next().expect("one term");
                (k.is_negative(), self.factors(r, e, k))
            } else {
                (false, format!("({})", self.scalar(c)))
            };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let body = match (coeff.as_str(), mono.is_empty()) {
                (_, true) => coeff,
                ("1", false) => mono,
                (_, false) => format!("{coeff}*{mono}"),
            };
            out.push_str(&body);
        }
        out
    }
}
