//! Acceptance checks, one line each. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any check fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use lgmf_core::floer_torus::TorusComplex;
use lgmf_core::fukaya_mini;
use lgmf_core::mf::{find_signed_conjugacy, MatrixFactorization};
use lgmf_core::ring::{int, rat, AlphaMode, LaurentPoly, Rational, Scalar};
use lgmf_core::strip_numeric::{strip_quadratic, unit_from_angle, BlaschkeDeg2, Complex64, RootKind};
use lgmf_core::strips::{self, Direction, StripClass, StripFamily, WeightedBound};
use lgmf_core::toric::{self, StackyLine};
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn t(r: Rational) -> Scalar {
    Scalar::t_pow(r, AlphaMode::Absent)
}

fn one(mode: AlphaMode) -> Scalar {
    Scalar::one(mode)
}

fn mono(vars: &[&str], e: Vec<i64>, c: Scalar) -> LaurentPoly {
    LaurentPoly::monomial(vars, e, c).unwrap()
}

/// `c·T^r·α^e` in `mode`.
fn s(c: i64, r: Rational, e: i64, mode: AlphaMode) -> Scalar {
    Scalar::monomial(int(c), r, e, mode).unwrap()
}

fn criterion_1() -> Check {
    let v = ["z"];
    let sq = t(rat(1, 2));
    let f = mono(&v, vec![1], one(AlphaMode::Absent)) - mono(&v, vec![0], sq.clone());
    let g = mono(&v, vec![0], one(AlphaMode::Absent)) - mono(&v, vec![-1], sq.clone());
    let rhs = mono(&v, vec![1], one(AlphaMode::Absent)) + mono(&v, vec![-1], t(int(1))) - mono(&v, vec![0], sq.scale(&int(2)));
    ensure(&f * &g == rhs, "(z − √q)(1 − √q/z) differs from z + q/z − 2√q")?;
    let mf = strips::family_to_mf(&strips::enumerate_cp1()).map_err(|e| e.to_string())?;
    ensure(mf.f()[0] == f && mf.g()[0] == g, "strip assembly differs from the hand factors")?;
    Ok(format!("{} = {}", mf.potential(), mf.lambda()))
}

fn criterion_2() -> Check {
    let v = ["x", "y"];
    let u = one(AlphaMode::Absent);
    let x = mono(&v, vec![1, 0], u.clone());
    let y = mono(&v, vec![0, 1], u.clone());
    let q = t(int(1));
    let lhs = (&x + &y) * (mono(&v, vec![0, 0], u) + mono(&v, vec![-1, -1], q.clone()));
    let w = &x + &mono(&v, vec![-1, 0], q.clone()) + &y + &mono(&v, vec![0, -1], q);
    ensure(lhs == w, "(x + y)(1 + q/(xy)) differs from W")?;
    let mf = strips::family_to_mf(&strips::enumerate_antidiagonal()).map_err(|e| e.to_string())?;
    ensure(mf.lambda().is_zero(), "λ ≠ 0")?;
    ensure(mf.potential() == &w, "family potential differs")?;
    let sq = t(rat(1, 2));
    let at = w.eval(&[sq.clone(), -sq]).map_err(|e| e.to_string())?;
    ensure(at.is_zero(), format!("W(√q, −√q) = {at}"))?;
    Ok("λ = 0 = W(√q, −√q)".into())
}

/// Independent square of the full `2k × 2k` matrix.
fn full_square_is_scalar(mf: &MatrixFactorization) -> bool {
    let d = mf.dim();
    let m = mf.full_matrix();
    let target = mf.potential().sub_scalar(mf.lambda()).unwrap();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let mut acc = m[0].zero_like();
            for k in 0..d {
                acc = &acc + &(&m[i * d + k] * &m[k * d + j]);
            }
            if i == j {
                acc == target
            } else {
                acc.is_zero()
            }
        })
    })
}

fn criterion_3() -> Check {
    let r = strips::four_by_four_factorization();
    ensure(full_square_is_scalar(&r), "4×4 matrix does not square to (W − 4√q)·Id")?;
    ensure(*r.lambda() == t(rat(1, 2)).scale(&int(4)), "λ ≠ 4√q")?;
    let a = strips::cp1_factorization("z").map_err(|e| e.to_string())?;
    let b = strips::cp1_factorization("w").map_err(|e| e.to_string())?;
    let tensor = a.tensor(&b).map_err(|e| e.to_string())?;
    ensure(full_square_is_scalar(&tensor), "graded tensor does not square correctly")?;
    ensure(tensor.verify().map_err(|e| e.to_string())?.is_ok(), "graded tensor fails block verification")?;
    let witness = find_signed_conjugacy(&tensor, &r, false).map_err(|e| e.to_string())?;
    let p = witness.ok_or("no signed permutation relates the tensor and the 4×4 matrix")?;
    let kind = if p.preserves_grading(2) { "grading-preserving" } else { "parity-swapping" };
    Ok(format!("witness ({kind}): {p}"))
}

/// `(1 − z/(αq))`, `(q⁴/z − q³α³ − zq²α² − z²qα)` with `q = T^(1/3)`.
fn teardrop_by_hand(mode: AlphaMode) -> (LaurentPoly, LaurentPoly) {
    let v = ["z"];
    let q = |k: i64, a: i64| s(1, rat(k, 3), a, mode);
    let f = mono(&v, vec![0], one(mode)) - mono(&v, vec![1], q(-1, -1));
    let g = mono(&v, vec![-1], q(4, 0)) - mono(&v, vec![0], q(3, 3)) - mono(&v, vec![1], q(2, 2)) - mono(&v, vec![2], q(1, 1));
    (f, g)
}

fn criterion_4() -> Check {
    let line = StackyLine::teardrop();
    let mode = AlphaMode::Relation(line.relation());
    let (f, g) = teardrop_by_hand(mode);
    let v = ["z"];
    let w = mono(&v, vec![3], one(mode)) + mono(&v, vec![-1], s(1, rat(4, 3), 0, mode));
    let lambda = s(1, int(1), 3, mode) + s(1, int(1), -1, mode);
    ensure(&f * &g == w.sub_scalar(&lambda).unwrap(), "teardrop factorization fails in the relation ring")?;
    let fam = strips::enumerate_weighted(line);
    let mf = strips::family_to_mf(&fam).map_err(|e| e.to_string())?;
    ensure(*mf.lambda() == lambda, "critical value differs from q³α³ + q³/α")?;
    let z0 = s(1, rat(1, 3), 1, mode);
    let dw = toric::hori_vafa_potential(line).derivative(0).unwrap().eval(&[z0]).unwrap();
    ensure(dw.is_zero(), format!("dW(qα) = {dw}"))?;
    let top = s(3, int(0), 4, mode);
    ensure(top.is_one(), "3α⁴ ≠ 1")?;
    Ok(format!("λ = {}", mf.lambda()))
}

fn criterion_5() -> Check {
    let mut count = 0;
    for m in 1..12i64 {
        for n in 1..=(12 - m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            let line = StackyLine::new(m, n).unwrap();
            let free = AlphaMode::Free;
            let fam = strips::enumerate_weighted(line).with_alpha_mode(free);
            let (f, g) = fam.factors().map_err(|e| e.to_string())?;
            // oracle: z^m + q^(m+n)/z^n − (α^m q^m + q^m/α^n), q = T^(1/m)
            let v = ["z"];
            let q = |k: i64| rat(k, m);
            let target = mono(&v, vec![m], one(free)) + mono(&v, vec![-n], s(1, q(m + n), 0, free))
                - mono(&v, vec![0], s(1, q(m), m, free))
                - mono(&v, vec![0], s(1, q(m), -n, free));
            ensure(&f * &g == target, format!("F·G ≠ W − λ at ({m},{n})"))?;
            ensure(strips::family_to_mf(&fam).is_ok(), format!("verification failed at ({m},{n})"))?;

            let printed = strips::enumerate_weighted_with(line, WeightedBound::Inclusive).with_alpha_mode(free);
            let (pf, pg) = printed.factors().map_err(|e| e.to_string())?;
            let residual = target.checked_sub(&(&pf * &pg)).unwrap();
            let stated = (mono(&v, vec![1], s(1, q(-1), -1, free)) - mono(&v, vec![0], one(free)))
                .scale(&s(1, q(m), -n, free));
            ensure(residual == stated, format!("printed-bound residual differs at ({m},{n}): {residual}"))?;
            ensure(strips::family_to_mf(&printed).is_err(), format!("printed bound verified at ({m},{n})"))?;
            count += 1;
        }
    }
    let line = StackyLine::teardrop();
    for mode in [AlphaMode::Free, AlphaMode::Relation(line.relation())] {
        let (f, g) = strips::enumerate_weighted(line).with_alpha_mode(mode).factors().map_err(|e| e.to_string())?;
        let (hf, hg) = teardrop_by_hand(mode);
        ensure(f == hf && g == hg, "(3,1) family differs from the hand-written teardrop factors")?;
        ensure(f.num_terms() == hf.num_terms() && g.num_terms() == hg.num_terms(), "term counts differ")?;
    }
    Ok(format!("{count} coprime pairs verified; printed bound leaves (W − λ) − F·G = (z/(αq) − 1)·q^m/α^n"))
}

fn criterion_6() -> Check {
    let us = [rat(1, 12), rat(1, 8), rat(1, 6), rat(1, 4), rat(3, 10)];
    for u in &us {
        let c = toric::bulk_c(u);
        // bulk factorization by hand with A = q^(1−u)·α, α free
        let free = AlphaMode::Free;
        let v = ["z"];
        let a = |p: i64| s(1, (int(1) - u) * int(p), p, free);
        let cf = c.promote(free).unwrap();
        let f = mono(&v, vec![0], one(free)) - mono(&v, vec![1], a(-1));
        let g = mono(&v, vec![-1], s(1, rat(4, 3), 0, free))
            - mono(&v, vec![0], a(3))
            - mono(&v, vec![1], a(2))
            - mono(&v, vec![2], a(1))
            - mono(&v, vec![0], &cf * &a(1));
        let w = mono(&v, vec![3], one(free)) + mono(&v, vec![-1], s(1, rat(4, 3), 0, free)) + mono(&v, vec![1], cf.clone());
        let lambda = a(3) + s(1, rat(1, 3) + u, -1, free) + &cf * &a(1);
        ensure(&f * &g == w.sub_scalar(&lambda).unwrap(), format!("bulk factorization fails at u = {u}"))?;
        let sym = strips::family_to_mf(&strips::enumerate_weighted_bulk_symbolic(u).map_err(|e| e.to_string())?)
            .map_err(|e| format!("symbolic family at u = {u}: {e}"))?;
        ensure(sym.f()[0] == f && sym.g()[0] == g, format!("symbolic family differs from the hand factors at u = {u}"))?;

        let z0 = t(u + rat(1, 3));
        let lhs = z0.pow(2).unwrap().scale(&int(3)) - &t(rat(4, 3)) * &z0.pow(-2).unwrap() + c.clone();
        ensure(lhs.is_zero(), format!("critical equation fails at u = {u}"))?;
        let crit = strips::family_to_mf(&strips::enumerate_weighted_bulk(u).map_err(|e| e.to_string())?)
            .map_err(|e| format!("critical family at u = {u}: {e}"))?;
        let expected = t(int(1) - u).scale(&int(2)) - t(u * int(3) + int(1)).scale(&int(2));
        ensure(*crit.lambda() == expected, format!("λ^b = {} at u = {u}", crit.lambda()))?;
        ensure(c.in_lambda_plus(), format!("c ∉ Λ₊ at u = {u}"))?;
    }
    for u in [rat(1, 3), rat(2, 5), rat(1, 2), rat(9, 10)] {
        ensure(!toric::bulk_c(&u).in_lambda_plus(), format!("c ∈ Λ₊ at u = {u}"))?;
        ensure(strips::enumerate_weighted_bulk(&u).is_err(), format!("bulk family accepted u = {u}"))?;
    }
    ensure(toric::bulk_c(&int(0)).in_lambda_plus(), "c ∉ Λ₊ at u = 0")?;
    Ok(format!("{} values of u, both anchors", us.len()))
}

fn all_families() -> Vec<StripFamily> {
    let mut out = vec![strips::enumerate_cp1(), strips::enumerate_antidiagonal()];
    for m in 1..12i64 {
        for n in 1..=(12 - m) {
            if m.gcd(&n) == 1 {
                let line = StackyLine::new(m, n).unwrap();
                out.push(strips::enumerate_weighted(line));
                out.push(strips::enumerate_weighted_with(line, WeightedBound::Inclusive));
            }
        }
    }
    for u in [rat(0, 1), rat(1, 12), rat(1, 8), rat(1, 6), rat(1, 4), rat(3, 10)] {
        out.push(strips::enumerate_weighted_bulk(&u).unwrap());
        out.push(strips::enumerate_weighted_bulk_symbolic(&u).unwrap());
    }
    out
}

fn criterion_7() -> Check {
    let families = all_families();
    let mut classes = 0;
    for fam in &families {
        let (lo, hi) = fam.interval().clone();
        let s1 = &lo + (&hi - &lo) / int(3);
        let s2 = &lo + (&hi - &lo) * rat(5, 7);
        for d in [Direction::AToB, Direction::BToA] {
            let p1 = fam.fourier_assemble(d, &s1).map_err(|e| e.to_string())?;
            let p2 = fam.fourier_assemble(d, &s2).map_err(|e| e.to_string())?;
            ensure(p1 == p2, format!("{} depends on the fiber position", fam.geometry().tag()))?;
        }
        for c in fam.strips() {
            let rebuilt = StripClass::new(
                c.from(),
                c.to(),
                c.winding().to_vec(),
                c.area().clone(),
                c.alpha_power(),
                c.sign(),
                c.orbifold_insertion(),
            );
            ensure(rebuilt.is_ok(), "slope check failed")?;
            ensure(c.area().slope == int(c.winding().iter().sum()), "slope differs from winding")?;
            classes += 1;
        }
    }
    Ok(format!("{} families, {classes} strip classes", families.len()))
}

fn random_holonomy(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=5))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=5 {
        for _ in 0..20 {
            let h0: Vec<Rational> = (0..n).map(|_| random_holonomy(&mut rng)).collect();
            let h1: Vec<Rational> = (0..n).map(|_| random_holonomy(&mut rng)).collect();
            let c = TorusComplex::new(h0, h1).map_err(|e| e.to_string())?;
            ensure(c.squares_to_zero(), format!("∂² ≠ 0 for n = {n}"))?;
        }
    }
    for n in 1..=4 {
        for trial in 0..40 {
            let h0: Vec<Rational> = (0..n).map(|_| random_holonomy(&mut rng)).collect();
            // trial 0: full agreement; otherwise a random subset agrees
            let h1: Vec<Rational> = h0
                .iter()
                .map(|x| if trial == 0 || rng.gen_bool(0.5) { x.clone() } else { x * (int(1) + random_holonomy(&mut rng).abs()) })
                .collect();
            let c = TorusComplex::new(h0.clone(), h1.clone()).map_err(|e| e.to_string())?;
            let expected = if h0 == h1 { 1usize << n } else { 0 };
            ensure(c.total_rank() == expected, format!("n = {n}: total rank {} ≠ {expected}", c.total_rank()))?;
            if h0.iter().zip(&h1).all(|(a, b)| a != b) {
                ensure(c.chain_isomorphism_check().map_err(|e| e.to_string())?, "Ψ∂ ≠ ∂̃Ψ")?;
            }
        }
    }
    let lem = TorusComplex::new(vec![int(1), int(-1)], vec![int(-1), int(1)]).map_err(|e| e.to_string())?;
    ensure(lem.homology_ranks() == vec![0, 0, 0], "Hom(T(1,-1), T(-1,1)) is not zero")?;
    Ok("Hom(T(1,-1), T(-1,1)) ranks 0,0,0".into())
}

fn criterion_9() -> Check {
    for eps in [1i8, -1] {
        let r = fukaya_mini::verify_equivalence(eps).map_err(|e| e.to_string())?;
        ensure(r.ok(), format!("ε = {eps}: {r}"))?;
        ensure(r.unspecified_lookups() == 0, "unspecified entry consulted")?;
        for e in &r.entries {
            if e.row != e.col {
                ensure(e.got.is_zero(), format!("off-diagonal {}[{}][{}] = {}", e.composition, e.row, e.col, e.got))?;
            }
        }
    }
    Ok("Φ₁∘Φ₂ = Φ₂∘Φ₁ = ε·Id for ε = ±1".into())
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let t1 = rng.gen_range(-0.999..0.999);
        let theta = rng.gen_range(1e-3..(2.0 * PI - 1e-3));
        let r = strip_quadratic(t1, unit_from_angle(theta)).map_err(|e| e.to_string())?;
        ensure(r.coefficient.im.abs() < 1e-10, format!("Im c = {}", r.coefficient.im))?;
        ensure(r.vieta_error < 1e-10, "Vieta product differs from t1")?;
        ensure((r.classification == RootKind::RealPair) == (r.discriminant >= 0.0), "classification disagrees")?;
    }
    let w = strip_quadratic(0.99, unit_from_angle(PI - 0.05)).map_err(|e| e.to_string())?;
    ensure(w.classification == RootKind::ConjugatePair && w.roots_in_disc, "witness roots are not a conjugate pair in the disc")?;
    for _ in 0..50 {
        let maps = [
            BlaschkeDeg2::real_pair(rng.gen_range(-0.99..0.99), rng.gen_range(-0.99..0.99)).unwrap(),
            BlaschkeDeg2::conjugate_pair(Complex64::from_polar(rng.gen_range(0.0..0.99), rng.gen_range(0.0..2.0 * PI))).unwrap(),
        ];
        for u in maps {
            for k in 0..64 {
                let theta = PI * (k as f64 + 0.5) / 64.0;
                ensure((u.eval(unit_from_angle(theta)).norm() - 1.0).abs() < 1e-10, "not unimodular on the semicircle")?;
                let x = -1.0 + 2.0 * (k as f64 + 0.5) / 64.0;
                let val = u.eval(Complex64::new(x, 0.0));
                ensure(val.im.abs() < 1e-10 * val.norm().max(1.0), "not real on the segment")?;
            }
        }
    }
    Ok(format!("witness roots {:.6} ± {:.6}i", w.roots[0].re, w.roots[0].im.abs()))
}

fn main() -> ExitCode {
    let checks: [(u32, &str, fn() -> Check); 10] = [
        (1, "CP1 factorization", criterion_1),
        (2, "anti-diagonal factorization", criterion_2),
        (3, "4x4 matrix and graded tensor", criterion_3),
        (4, "teardrop factorization", criterion_4),
        (5, "weighted family", criterion_5),
        (6, "bulk-deformed teardrop", criterion_6),
        (7, "strip model coherence", criterion_7),
        (8, "torus Floer complex", criterion_8),
        (9, "equivalence", criterion_9),
        (10, "numeric strips", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, f) in checks {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
