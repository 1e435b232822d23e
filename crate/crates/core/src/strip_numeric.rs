//! Floating-point checks of degree-two Blaschke strip maps and of the
//! quadratic whose roots locate the strips between the anti-diagonal and a
//! torus fiber.

use std::f64::consts::PI;
use std::io::Write;

pub use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Tolerance for identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for validating inputs.
pub const INPUT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("parameter {0} has modulus >= 1; the map has a pole in the closed disc")]
    PoleInDisc(Complex64),
    #[error("t1 = {0} outside (-1, 1)")]
    T1OutOfRange(f64),
    #[error("|t2| = {0}, expected 1")]
    NotUnimodular(f64),
    #[error("degenerate denominator: t2 = 1")]
    DegenerateDenominator,
    #[error("linear coefficient {0} is not real")]
    NonRealCoefficient(Complex64),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// `u(z) = (z−a)(z−b)/((1−az)(1−bz))` or `(z−α)(z−ᾱ)/((1−αz)(1−ᾱz))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlaschkeDeg2 {
    RealPair { a: f64, b: f64 },
    ConjugatePair { alpha: Complex64 },
}

impl BlaschkeDeg2 {
    pub fn real_pair(a: f64, b: f64) -> Result<Self, NumericError> {
        for x in [a, b] {
            if x.abs() >= 1.0 || !x.is_finite() {
                return Err(NumericError::PoleInDisc(Complex64::new(x, 0.0)));
            }
        }
        Ok(Self::RealPair { a, b })
    }

    pub fn conjugate_pair(alpha: Complex64) -> Result<Self, NumericError> {
        if alpha.norm() >= 1.0 || !alpha.is_finite() {
            return Err(NumericError::PoleInDisc(alpha));
        }
        Ok(Self::ConjugatePair { alpha })
    }

    fn zeros(&self) -> [Complex64; 2] {
        match *self {
            Self::RealPair { a, b } => [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            Self::ConjugatePair { alpha } => [alpha, alpha.conj()],
        }
    }

    /// The second zero is the conjugate of the first in both forms, so the
    /// denominator uses the zeros themselves rather than their conjugates.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let [a, b] = self.zeros();
        (z - a) * (z - b) / ((one - a * z) * (one - b * z))
    }
}

pub fn blaschke_eval(map: &BlaschkeDeg2, z: Complex64) -> Complex64 {
    map.eval(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    RealPair,
    ConjugatePair,
}

impl std::fmt::Display for RootKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RootKind::RealPair => "real-pair",
            RootKind::ConjugatePair => "conjugate-pair",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadraticReport {
    /// Linear coefficient `c` of `x² − c·x + t₁`, before discarding its
    /// imaginary part.
    pub coefficient: Complex64,
    pub discriminant: f64,
    pub roots: [Complex64; 2],
    pub classification: RootKind,
    pub roots_in_disc: bool,
    /// `|root₁·root₂ − t₁|`.
    pub vieta_error: f64,
}

pub fn unit_from_angle(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Roots of `x² − ((t₁−1)(t̄₂+1)/(i(1−t̄₂)))·x + t₁`.
pub fn strip_quadratic(t1: f64, t2: Complex64) -> Result<QuadraticReport, NumericError> {
    if !(t1 > -1.0 && t1 < 1.0) {
        return Err(NumericError::T1OutOfRange(t1));
    }
    if (t2.norm() - 1.0).abs() > INPUT_TOL {
        return Err(NumericError::NotUnimodular(t2.norm()));
    }
    let one = Complex64::new(1.0, 0.0);
    let denom = Complex64::i() * (one - t2.conj());
    if denom.norm() < INPUT_TOL {
        return Err(NumericError::DegenerateDenominator);
    }
    let coefficient = (t1 - 1.0) * (t2.conj() + one) / denom;
    if coefficient.im.abs() >= IDENTITY_TOL * coefficient.norm().max(1.0) {
        return Err(NumericError::NonRealCoefficient(coefficient));
    }
    let c = coefficient.re;
    let discriminant = c * c - 4.0 * t1;
    let (classification, roots) = if discriminant >= 0.0 {
        let s = discriminant.sqrt();
        (RootKind::RealPair, [Complex64::new((c + s) / 2.0, 0.0), Complex64::new((c - s) / 2.0, 0.0)])
    } else {
        let s = (-discriminant).sqrt();
        (RootKind::ConjugatePair, [Complex64::new(c / 2.0, s / 2.0), Complex64::new(c / 2.0, -s / 2.0)])
    };
    let vieta_error = (roots[0] * roots[1] - t1).norm();
    let roots_in_disc = roots.iter().all(|r| r.norm() < 1.0);
    Ok(QuadraticReport { coefficient, discriminant, roots, classification, roots_in_disc, vieta_error })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub t1: f64,
    pub theta: f64,
    pub classification: RootKind,
    pub in_disc: bool,
}

/// Interior grid of `t₁ ∈ (−1, 1)` and `θ ∈ (0, 2π)`; empirical only.
pub fn scan(t1_steps: usize, theta_steps: usize) -> Result<Vec<ScanRow>, NumericError> {
    let mut rows = Vec::with_capacity(t1_steps * theta_steps);
    for i in 0..t1_steps {
        let t1 = -1.0 + 2.0 * (i + 1) as f64 / (t1_steps + 1) as f64;
        for j in 0..theta_steps {
            let theta = 2.0 * PI * (j + 1) as f64 / (theta_steps + 1) as f64;
            let r = strip_quadratic(t1, unit_from_angle(theta))?;
            rows.push(ScanRow { t1, theta, classification: r.classification, in_disc: r.roots_in_disc });
        }
    }
    Ok(rows)
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<(), NumericError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
