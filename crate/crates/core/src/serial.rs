//! JSON forms of polynomials, factorizations, verification reports and
//! strip families.
//!
//! A polynomial term groups all coefficients sharing a monomial and a
//! `T`-exponent:
//!
//! ```json
//! { "z": [-1], "t": [4, 3], "alpha": [[1, 1], [0, 1], [-3, 1]], "alpha_low": 0 }
//! ```
//!
//! where `alpha` lists the coefficients of `α^alpha_low, α^(alpha_low+1), …`
//! as `[numerator, denominator]`. `alpha_low` is omitted when zero.
//! Integers outside the `i64` range are written as decimal strings.
//! Output is canonical, so parse followed by write reproduces the input
//! bytes of anything this module wrote.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mf::{MatrixFactorization, MfError, Product, Residual, VerifyReport};
use crate::ring::{AlphaMode, AlphaRelation, LaurentPoly, Rational, RingError, Scalar};
use crate::strips::{AffineArea, BulkAnchor, Endpoint, Geometry, StripClass, StripError, StripFamily};
use crate::toric::StackyLine;

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {source}")]
    Ring { path: String, source: RingError },
    #[error("{path}: {source}")]
    Mf { path: String, source: MfError },
    #[error("{path}: {source}")]
    Strip { path: String, source: StripError },
    #[error("{path}: zero denominator")]
    ZeroDenominator { path: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn ring_err(path: String, source: RingError) -> SerialError {
    SerialError::Ring { path, source }
}

fn ring_at(path: &str) -> impl FnOnce(RingError) -> SerialError + '_ {
    move |e| ring_err(path.to_owned(), e)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum IntJson {
    Small(i64),
    Big(String),
}

type RatJson = [IntJson; 2];

fn int_json(n: &BigInt) -> IntJson {
    match n.to_i64() {
        Some(v) => IntJson::Small(v),
        None => IntJson::Big(n.to_string()),
    }
}

fn rat_json(r: &Rational) -> RatJson {
    [int_json(r.numer()), int_json(r.denom())]
}

fn parse_int(j: &IntJson, path: &str) -> Result<BigInt, SerialError> {
    match j {
        IntJson::Small(v) => Ok(BigInt::from(*v)),
        IntJson::Big(s) => s.parse().map_err(|_| SerialError::Invalid {
            path: path.to_owned(),
            message: format!("{s:?} is not an integer"),
        }),
    }
}

fn parse_rat(j: &RatJson, path: &str) -> Result<Rational, SerialError> {
    let n = parse_int(&j[0], path)?;
    let d = parse_int(&j[1], path)?;
    if d.is_zero() {
        return Err(SerialError::ZeroDenominator { path: path.to_owned() });
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum AlphaJson {
    Absent,
    Free,
    Relation { m: i64, n: i64 },
}

fn alpha_json(mode: AlphaMode) -> AlphaJson {
    match mode {
        AlphaMode::Absent => AlphaJson::Absent,
        AlphaMode::Free => AlphaJson::Free,
        AlphaMode::Relation(r) => AlphaJson::Relation { m: r.m() as i64, n: r.n() as i64 },
    }
}

fn parse_alpha(j: &AlphaJson, path: &str) -> Result<AlphaMode, SerialError> {
    Ok(match j {
        AlphaJson::Absent => AlphaMode::Absent,
        AlphaJson::Free => AlphaMode::Free,
        AlphaJson::Relation { m, n } => AlphaMode::Relation(AlphaRelation::new(*m, *n).map_err(ring_at(path))?),
    })
}

fn is_zero_i64(x: &i64) -> bool {
    *x == 0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    z: Vec<i64>,
    t: RatJson,
    alpha: Vec<RatJson>,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    alpha_low: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarJson {
    alpha: AlphaJson,
    terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    vars: Vec<String>,
    alpha: AlphaJson,
    terms: Vec<TermJson>,
}

/// Groups the terms of a scalar by `T`-exponent into dense `α` runs.
fn scalar_terms(z: &[i64], s: &Scalar) -> Vec<TermJson> {
    let mut by_t: BTreeMap<&Rational, BTreeMap<i64, &Rational>> = BTreeMap::new();
    for (r, e, c) in s.terms() {
        by_t.entry(r).or_default().insert(e, c);
    }
    by_t.into_iter()
        .map(|(r, coeffs)| {
            let lo = *coeffs.keys().next().expect("nonempty");
            let hi = *coeffs.keys().last().expect("nonempty");
            let alpha = (lo..=hi)
                .map(|e| coeffs.get(&e).map_or_else(|| rat_json(&Rational::zero()), |c| rat_json(c)))
                .collect();
            TermJson { z: z.to_vec(), t: rat_json(r), alpha, alpha_low: lo }
        })
        .collect()
}

fn raw_terms(terms: &[TermJson], path: &str) -> Result<Vec<(Vec<i64>, Rational, i64, Rational)>, SerialError> {
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{path}.terms[{i}]");
        let r = parse_rat(&t.t, &format!("{p}.t"))?;
        if t.alpha.is_empty() {
            return Err(SerialError::Invalid { path: format!("{p}.alpha"), message: "empty coefficient list".into() });
        }
        for (k, c) in t.alpha.iter().enumerate() {
            let c = parse_rat(c, &format!("{p}.alpha[{k}]"))?;
            out.push((t.z.clone(), r.clone(), t.alpha_low + k as i64, c));
        }
    }
    Ok(out)
}

fn scalar_to_json(s: &Scalar) -> ScalarJson {
    ScalarJson { alpha: alpha_json(s.mode()), terms: scalar_terms(&[], s) }
}

fn scalar_from_json(j: &ScalarJson, path: &str) -> Result<Scalar, SerialError> {
    let mode = parse_alpha(&j.alpha, &format!("{path}.alpha"))?;
    let mut raw = Vec::new();
    for (z, r, e, c) in raw_terms(&j.terms, path)? {
        if !z.is_empty() {
            return Err(SerialError::Invalid { path: path.to_owned(), message: "scalar term has a monomial".into() });
        }
        raw.push((r, e, c));
    }
    Scalar::from_terms(mode, raw).map_err(ring_at(path))
}

fn poly_to_json(p: &LaurentPoly) -> PolyJson {
    let mode = p.alpha_mode();
    let terms = p
        .terms()
        .flat_map(|(z, c)| scalar_terms(z, &c.promote(mode).expect("joined mode dominates every coefficient")))
        .collect();
    PolyJson { vars: p.vars().to_vec(), alpha: alpha_json(mode), terms }
}

fn poly_from_json(j: &PolyJson, path: &str) -> Result<LaurentPoly, SerialError> {
    let mode = parse_alpha(&j.alpha, &format!("{path}.alpha"))?;
    let mut grouped: BTreeMap<Vec<i64>, Vec<(Rational, i64, Rational)>> = BTreeMap::new();
    for (i, t) in j.terms.iter().enumerate() {
        if t.z.len() != j.vars.len() {
            return Err(ring_err(
                format!("{path}.terms[{i}].z"),
                RingError::ExponentArity { expected: j.vars.len(), got: t.z.len() },
            ));
        }
    }
    for (z, r, e, c) in raw_terms(&j.terms, path)? {
        grouped.entry(z).or_default().push((r, e, c));
    }
    let mut terms = Vec::new();
    for (z, raw) in grouped {
        terms.push((z, Scalar::from_terms(mode, raw).map_err(ring_at(path))?));
    }
    LaurentPoly::from_terms(&j.vars, terms).map_err(|e| ring_err(format!("{path}.vars"), e))
}

fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, SerialError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        SerialError::Parse { path, message: e.into_inner().to_string() }
    })
}

pub fn poly_to_string(p: &LaurentPoly) -> String {
    to_string(&poly_to_json(p))
}

pub fn poly_from_str(text: &str) -> Result<LaurentPoly, SerialError> {
    poly_from_json(&parse_json(text)?, "$")
}

pub fn scalar_to_string(s: &Scalar) -> String {
    to_string(&scalar_to_json(s))
}

pub fn scalar_from_str(text: &str) -> Result<Scalar, SerialError> {
    scalar_from_json(&parse_json(text)?, "$")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MfJson {
    k: usize,
    f: Vec<PolyJson>,
    g: Vec<PolyJson>,
    w: PolyJson,
    lambda: ScalarJson,
}

fn mf_from_json(j: &MfJson) -> Result<MatrixFactorization, SerialError> {
    let block = |name: &str, b: &[PolyJson]| -> Result<Vec<LaurentPoly>, SerialError> {
        b.iter().enumerate().map(|(i, p)| poly_from_json(p, &format!("{name}[{i}]"))).collect()
    };
    let f = block("f", &j.f)?;
    let g = block("g", &j.g)?;
    let w = poly_from_json(&j.w, "w")?;
    let lambda = scalar_from_json(&j.lambda, "lambda")?;
    MatrixFactorization::from_blocks(j.k, f, g, w, lambda).map_err(|source| SerialError::Mf { path: "$".into(), source })
}

pub fn mf_to_string(mf: &MatrixFactorization) -> String {
    to_string(&MfJson {
        k: mf.k(),
        f: mf.f().iter().map(poly_to_json).collect(),
        g: mf.g().iter().map(poly_to_json).collect(),
        w: poly_to_json(mf.potential()),
        lambda: scalar_to_json(mf.lambda()),
    })
}

pub fn mf_from_str(text: &str) -> Result<MatrixFactorization, SerialError> {
    mf_from_json(&parse_json(text)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidualJson {
    product: String,
    row: usize,
    col: usize,
    residual: PolyJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportJson {
    verified: bool,
    residuals: Vec<ResidualJson>,
}

pub fn report_to_string(r: &VerifyReport) -> String {
    to_string(&ReportJson {
        verified: r.is_ok(),
        residuals: r
            .residuals
            .iter()
            .map(|x| ResidualJson {
                product: x.product.to_string(),
                row: x.row,
                col: x.col,
                residual: poly_to_json(&x.residual),
            })
            .collect(),
    })
}

pub fn report_from_str(text: &str) -> Result<VerifyReport, SerialError> {
    let j: ReportJson = parse_json(text)?;
    let mut residuals = Vec::new();
    for (i, x) in j.residuals.iter().enumerate() {
        let path = format!("residuals[{i}]");
        let product = match x.product.as_str() {
            "FG" => Product::FG,
            "GF" => Product::GF,
            other => {
                return Err(SerialError::Invalid { path: format!("{path}.product"), message: format!("unknown product {other:?}") })
            }
        };
        let residual = poly_from_json(&x.residual, &format!("{path}.residual"))?;
        residuals.push(Residual { product, row: x.row, col: x.col, residual });
    }
    let report = VerifyReport { residuals };
    if report.is_ok() != j.verified {
        return Err(SerialError::Invalid { path: "verified".into(), message: "disagrees with residual list".into() });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
enum GeometryJson {
    Cp1,
    Weighted { m: i64, n: i64 },
    WeightedBulk { u: RatJson, anchor: String },
    Antidiagonal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StripJson {
    from: String,
    to: String,
    winding: Vec<i64>,
    /// `[constant, slope]` of the area in the fiber position.
    area: [RatJson; 2],
    alpha: i64,
    sign: i8,
    orb: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    geometry: GeometryJson,
    vars: Vec<String>,
    base: Vec<RatJson>,
    interval: [RatJson; 2],
    alpha: AlphaJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bulk: Option<ScalarJson>,
    strips: Vec<StripJson>,
}

fn endpoint_from(s: &str, path: &str) -> Result<Endpoint, SerialError> {
    match s {
        "a" => Ok(Endpoint::A),
        "b" => Ok(Endpoint::B),
        other => Err(SerialError::Invalid { path: path.to_owned(), message: format!("unknown endpoint {other:?}") }),
    }
}

pub fn family_to_string(f: &StripFamily) -> String {
    let geometry = match f.geometry() {
        Geometry::Cp1 => GeometryJson::Cp1,
        Geometry::Antidiagonal => GeometryJson::Antidiagonal,
        Geometry::Weighted(l) => GeometryJson::Weighted { m: l.m() as i64, n: l.n() as i64 },
        Geometry::WeightedBulk { u, anchor } => GeometryJson::WeightedBulk {
            u: rat_json(u),
            anchor: match anchor {
                BulkAnchor::Critical => "critical".into(),
                BulkAnchor::Symbolic => "symbolic".into(),
            },
        },
    };
    let strips = f
        .strips()
        .iter()
        .map(|s| StripJson {
            from: s.from().to_string(),
            to: s.to().to_string(),
            winding: s.winding().to_vec(),
            area: [rat_json(&s.area().constant), rat_json(&s.area().slope)],
            alpha: s.alpha_power(),
            sign: s.sign(),
            orb: s.orbifold_insertion(),
        })
        .collect();
    to_string(&FamilyJson {
        geometry,
        vars: f.vars().to_vec(),
        base: f.coordinate_base().iter().map(rat_json).collect(),
        interval: [rat_json(&f.interval().0), rat_json(&f.interval().1)],
        alpha: alpha_json(f.alpha_mode()),
        bulk: f.bulk().map(scalar_to_json),
        strips,
    })
}

pub fn family_from_str(text: &str) -> Result<StripFamily, SerialError> {
    let j: FamilyJson = parse_json(text)?;
    let geometry = match &j.geometry {
        GeometryJson::Cp1 => Geometry::Cp1,
        GeometryJson::Antidiagonal => Geometry::Antidiagonal,
        GeometryJson::Weighted { m, n } => Geometry::Weighted(StackyLine::new(*m, *n).map_err(|e| {
            SerialError::Invalid { path: "geometry".into(), message: e.to_string() }
        })?),
        GeometryJson::WeightedBulk { u, anchor } => Geometry::WeightedBulk {
            u: parse_rat(u, "geometry.u")?,
            anchor: match anchor.as_str() {
                "critical" => BulkAnchor::Critical,
                "symbolic" => BulkAnchor::Symbolic,
                other => {
                    return Err(SerialError::Invalid {
                        path: "geometry.anchor".into(),
                        message: format!("unknown anchor {other:?}"),
                    })
                }
            },
        },
    };
    let base = j.base.iter().enumerate().map(|(i, r)| parse_rat(r, &format!("base[{i}]"))).collect::<Result<_, _>>()?;
    let interval = (parse_rat(&j.interval[0], "interval[0]")?, parse_rat(&j.interval[1], "interval[1]")?);
    let alpha = parse_alpha(&j.alpha, "alpha")?;
    let bulk = j.bulk.as_ref().map(|b| scalar_from_json(b, "bulk")).transpose()?;
    let mut strips = Vec::new();
    for (i, s) in j.strips.iter().enumerate() {
        let path = format!("strips[{i}]");
        let area = AffineArea::new(parse_rat(&s.area[0], &format!("{path}.area[0]"))?, parse_rat(&s.area[1], &format!("{path}.area[1]"))?);
        let class = StripClass::new(
            endpoint_from(&s.from, &format!("{path}.from"))?,
            endpoint_from(&s.to, &format!("{path}.to"))?,
            s.winding.clone(),
            area,
            s.alpha,
            s.sign,
            s.orb,
        )
        .map_err(|source| SerialError::Strip { path: path.clone(), source })?;
        strips.push(class);
    }
    StripFamily::new(geometry, j.vars, base, interval, alpha, bulk, strips)
        .map_err(|source| SerialError::Strip { path: "$".into(), source })
}
