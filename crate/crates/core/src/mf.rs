//! Matrix factorizations `M = [[0, F], [G, 0]]` with `M² = (W − λ)·Id`.

use std::fmt;

use thiserror::Error;

use crate::ring::{AlphaMode, LaurentPoly, RingError, Scalar};

#[derive(Debug, Error)]
pub enum MfError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("block {block} must be {k}x{k}, got {rows} rows with lengths {cols:?}")]
    BlockShape { block: &'static str, k: usize, rows: usize, cols: Vec<usize> },
    #[error("blocks must be nonempty")]
    Empty,
    #[error("tensor factors share variable {0:?}")]
    SharedVariable(String),
    #[error("signed-permutation search supports dimension at most {max}, got {got}")]
    SearchTooLarge { max: usize, got: usize },
}

/// Which block product a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    FG,
    GF,
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::FG => "FG",
            Product::GF => "GF",
        })
    }
}

/// Nonzero entry of `F·G − (W−λ)·Id` or `G·F − (W−λ)·Id`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub product: Product,
    pub row: usize,
    pub col: usize,
    pub residual: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub residuals: Vec<Residual>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// A `2k × 2k` matrix factorization stored as its two `k × k` blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization {
    k: usize,
    f: Vec<LaurentPoly>,
    g: Vec<LaurentPoly>,
    w: LaurentPoly,
    lambda: Scalar,
}

type Square = Vec<LaurentPoly>;

fn matmul(k: usize, a: &[LaurentPoly], b: &[LaurentPoly]) -> Result<Square, RingError> {
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = a[0].zero_like();
            for l in 0..k {
                acc = acc.checked_add(&a[i * k + l].checked_mul(&b[l * k + j])?)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// Kronecker product of a `ka × ka` block with a `kb × kb` block.
fn kron(ka: usize, a: &[LaurentPoly], kb: usize, b: &[LaurentPoly]) -> Result<Square, RingError> {
    let k = ka * kb;
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let x = &a[(i / kb) * ka + j / kb];
            let y = &b[(i % kb) * kb + j % kb];
            out.push(x.checked_mul(y)?);
        }
    }
    Ok(out)
}

fn identity(k: usize, like: &LaurentPoly) -> Result<Square, RingError> {
    let one = LaurentPoly::constant(like.vars(), Scalar::one(AlphaMode::Absent))?;
    Ok((0..k * k).map(|i| if i / k == i % k { one.clone() } else { like.zero_like() }).collect())
}

impl MatrixFactorization {
    /// `2 × 2` factorization with `1 × 1` blocks. Not verified; see
    /// [`MatrixFactorization::verify`].
    pub fn from_pair(f: LaurentPoly, g: LaurentPoly, w: LaurentPoly, lambda: Scalar) -> Result<Self, MfError> {
        Self::from_blocks(1, vec![f], vec![g], w, lambda)
    }

    /// Blocks are row-major `k × k`.
    pub fn from_blocks(
        k: usize,
        f: Vec<LaurentPoly>,
        g: Vec<LaurentPoly>,
        w: LaurentPoly,
        lambda: Scalar,
    ) -> Result<Self, MfError> {
        if k == 0 {
            return Err(MfError::Empty);
        }
        for (name, block) in [("F", &f), ("G", &g)] {
            if block.len() != k * k {
                return Err(MfError::BlockShape { block: name, k, rows: block.len() / k.max(1), cols: vec![block.len()] });
            }
            for p in block {
                if p.vars() != w.vars() {
                    return Err(RingError::VariableMismatch(p.vars().to_vec(), w.vars().to_vec()).into());
                }
            }
        }
        Ok(Self { k, f, g, w, lambda })
    }

    /// Builds from nested rows, checking squareness.
    pub fn from_rows(
        f: Vec<Vec<LaurentPoly>>,
        g: Vec<Vec<LaurentPoly>>,
        w: LaurentPoly,
        lambda: Scalar,
    ) -> Result<Self, MfError> {
        let k = f.len();
        for (name, block) in [("F", &f), ("G", &g)] {
            if block.len() != k || block.iter().any(|r| r.len() != k) {
                return Err(MfError::BlockShape {
                    block: name,
                    k,
                    rows: block.len(),
                    cols: block.iter().map(Vec::len).collect(),
                });
            }
        }
        Self::from_blocks(k, f.into_iter().flatten().collect(), g.into_iter().flatten().collect(), w, lambda)
    }

    /// Half the matrix dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn f(&self) -> &[LaurentPoly] {
        &self.f
    }

    pub fn g(&self) -> &[LaurentPoly] {
        &self.g
    }

    pub fn f_entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.f[i * self.k + j]
    }

    pub fn g_entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.g[i * self.k + j]
    }

    pub fn potential(&self) -> &LaurentPoly {
        &self.w
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn vars(&self) -> &[String] {
        self.w.vars()
    }

    /// Exact check of `F·G = (W−λ)·Id` and `G·F = (W−λ)·Id`.
    pub fn verify(&self) -> Result<VerifyReport, MfError> {
        let shifted = self.w.sub_scalar(&self.lambda)?;
        let ident = identity(self.k, &self.w)?;
        let target: Square = ident.iter().map(|e| e.checked_mul(&shifted)).collect::<Result<_, _>>()?;
        let mut residuals = Vec::new();
        for (product, lhs) in [(Product::FG, matmul(self.k, &self.f, &self.g)?), (Product::GF, matmul(self.k, &self.g, &self.f)?)] {
            for (idx, (a, b)) in lhs.iter().zip(&target).enumerate() {
                let r = a.checked_sub(b)?;
                if !r.is_zero() {
                    residuals.push(Residual { product, row: idx / self.k, col: idx % self.k, residual: r });
                }
            }
        }
        Ok(VerifyReport { residuals })
    }

    /// The shifted object `M[1]`: blocks swapped.
    /// Renames a variable in every entry, `W` included.
    pub fn rename(&self, from: &str, to: &str) -> Result<Self, MfError> {
        let ren = |ps: &[LaurentPoly]| ps.iter().map(|p| p.rename(from, to)).collect::<Result<Vec<_>, _>>();
        Ok(Self { k: self.k, f: ren(&self.f)?, g: ren(&self.g)?, w: self.w.rename(from, to)?, lambda: self.lambda.clone() })
    }

    pub fn shift(&self) -> Self {
        Self { k: self.k, f: self.g.clone(), g: self.f.clone(), w: self.w.clone(), lambda: self.lambda.clone() }
    }

    /// Graded tensor product over disjoint variables, a factorization of
    /// `W₁ + W₂` with `λ₁ + λ₂`:
    ///
    /// ```text
    /// F = [[F₁⊗1, −1⊗F₂], [1⊗G₂, G₁⊗1]]
    /// G = [[G₁⊗1,  1⊗F₂], [−1⊗G₂, F₁⊗1]]
    /// ```
    ///
    /// For `1 × 1` inputs the blocks read `[[f₁, −f₂], [g₂, g₁]]` and
    /// `[[g₁, f₂], [−g₂, f₁]]`.
    pub fn tensor(&self, other: &Self) -> Result<Self, MfError> {
        if let Some(v) = self.vars().iter().find(|v| other.vars().contains(v)) {
            return Err(MfError::SharedVariable(v.clone()));
        }
        let vars: Vec<String> = self.vars().iter().chain(other.vars()).cloned().collect();
        let embed = |ps: &[LaurentPoly]| ps.iter().map(|p| p.embed(&vars)).collect::<Result<Vec<_>, _>>();
        let (f1, g1) = (embed(&self.f)?, embed(&self.g)?);
        let (f2, g2) = (embed(&other.f)?, embed(&other.g)?);
        let w = self.w.embed(&vars)?.checked_add(&other.w.embed(&vars)?)?;
        let lambda = self.lambda.checked_add(&other.lambda)?;

        let (ka, kb) = (self.k, other.k);
        let ia = identity(ka, &w)?;
        let ib = identity(kb, &w)?;
        let neg = |m: Square| m.into_iter().map(|p| -p).collect::<Square>();

        let f11 = kron(ka, &f1, kb, &ib)?;
        let f12 = neg(kron(ka, &ia, kb, &f2)?);
        let f21 = kron(ka, &ia, kb, &g2)?;
        let f22 = kron(ka, &g1, kb, &ib)?;
        let g11 = kron(ka, &g1, kb, &ib)?;
        let g12 = kron(ka, &ia, kb, &f2)?;
        let g21 = neg(kron(ka, &ia, kb, &g2)?);
        let g22 = kron(ka, &f1, kb, &ib)?;

        let k = ka * kb;
        let assemble = |b11: &Square, b12: &Square, b21: &Square, b22: &Square| {
            let mut out = Vec::with_capacity(4 * k * k);
            for i in 0..2 * k {
                for j in 0..2 * k {
                    let block = match (i < k, j < k) {
                        (true, true) => b11,
                        (true, false) => b12,
                        (false, true) => b21,
                        (false, false) => b22,
                    };
                    out.push(block[(i % k) * k + j % k].clone());
                }
            }
            out
        };
        let f = assemble(&f11, &f12, &f21, &f22);
        let g = assemble(&g11, &g12, &g21, &g22);
        Self::from_blocks(2 * k, f, g, w, lambda)
    }

    /// The full `2k × 2k` matrix `[[0, F], [G, 0]]`, row-major.
    pub fn full_matrix(&self) -> Vec<LaurentPoly> {
        let d = self.dim();
        let k = self.k;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(match (i < k, j < k) {
                    (true, false) => self.f[i * k + (j - k)].clone(),
                    (false, true) => self.g[(i - k) * k + j].clone(),
                    _ => self.w.zero_like(),
                });
            }
        }
        out
    }
}

/// A signed permutation matrix `P` with `P[i][perm[i]] = signs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    /// Whether `P` maps the even summand (first `k` basis vectors) to itself.
    pub fn preserves_grading(&self, k: usize) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| (i < k) == (j < k))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .enumerate()
            .map(|(i, (j, s))| format!("e{i} -> {}e{j}", if *s < 0 { "-" } else { "+" }))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

const MAX_SEARCH_DIM: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Exhaustive search for a signed permutation `P` with `P·A·Pᵀ = B` on the
/// full matrices. Returns the first witness in lexicographic order of
/// `(perm, signs)`, restricted to grading-preserving `P` if requested.
pub fn find_signed_conjugacy(
    a: &MatrixFactorization,
    b: &MatrixFactorization,
    grading_preserving_only: bool,
) -> Result<Option<SignedPermutation>, MfError> {
    let d = a.dim();
    if d > MAX_SEARCH_DIM {
        return Err(MfError::SearchTooLarge { max: MAX_SEARCH_DIM, got: d });
    }
    if b.dim() != d || a.vars() != b.vars() {
        return Ok(None);
    }
    let ma = a.full_matrix();
    let mb = b.full_matrix();
    let neg_a: Vec<LaurentPoly> = ma.iter().map(|p| -p).collect();
    for perm in permutations(d) {
        let candidate = SignedPermutation { perm: perm.clone(), signs: vec![1; d] };
        if grading_preserving_only && !candidate.preserves_grading(a.k()) {
            continue;
        }
        for mask in 0u32..(1 << d) {
            let signs: Vec<i8> = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let ok = (0..d).all(|i| {
                (0..d).all(|j| {
                    let src = perm[i] * d + perm[j];
                    let entry = if signs[i] * signs[j] < 0 { &neg_a[src] } else { &ma[src] };
                    *entry == mb[i * d + j]
                })
            });
            if ok {
                return Ok(Some(SignedPermutation { perm, signs }));
            }
        }
    }
    Ok(None)
}
