//! `lgmf`: build and verify Landau–Ginzburg factorizations from the
//! command line.
//!
//! Exit codes: 0 when every check passes, 1 when an identity fails, 2 on
//! invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lgmf_core::field::{parse_gaussian, parse_rational, GaussianRational};
use lgmf_core::floer_torus::TorusComplex;
use lgmf_core::fukaya_mini;
use lgmf_core::mf::{find_signed_conjugacy, MatrixFactorization};
use lgmf_core::ring::{AlphaMode, QConvention, Rational, Renderer};
use lgmf_core::serial;
use lgmf_core::strip_numeric::{self, Complex64};
use lgmf_core::strips::{self, StripFamily, WeightedBound};
use lgmf_core::toric::{self, StackyLine};

#[derive(Parser)]
#[command(name = "lgmf", version, about = "Exact Landau-Ginzburg matrix factorization toolkit")]
struct Cli {
    /// Novikov symbol used in text output.
    #[arg(long, value_enum, default_value_t = QConv::Internal, global = true)]
    q_convention: QConv,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QConv {
    /// `T` with rational exponents.
    Internal,
    /// `q = T`.
    QUnit,
    /// `q = T^(1/m)` for the weight `m` of the geometry.
    QRoot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the potential and its critical data.
    Potential {
        #[command(subcommand)]
        geometry: GeometryArg,
    },
    /// Assemble a factorization from strip classes and verify it.
    Factorize {
        #[command(subcommand)]
        geometry: GeometryArg,
        /// Emit the factorization as JSON.
        #[arg(long, global = true)]
        json: bool,
        /// Emit the strip classes as JSON instead.
        #[arg(long, global = true, conflicts_with = "json")]
        strips: bool,
        /// Let the right-end sum of the weighted family run through `n`.
        #[arg(long, global = true)]
        inclusive_bound: bool,
        /// Read `α` as a free generator (no holonomy relation).
        #[arg(long, global = true)]
        free_alpha: bool,
        /// Bulk family only: use the symbolic anchor `T^(1−u)·α`.
        #[arg(long, global = true)]
        symbolic: bool,
    },
    /// Verify a serialized factorization (path, or `-` for stdin).
    Verify {
        #[arg(default_value = "-")]
        path: String,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Graded tensor product of two serialized factorizations.
    Tensor {
        a: String,
        b: String,
        /// Rename a variable of the second factor, `old=new`.
        #[arg(long)]
        rename: Vec<String>,
        /// Also search for a signed permutation onto a third factorization.
        #[arg(long)]
        compare: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Ranks of the twisted Morse–Floer complex of the n-torus.
    FloerTorus {
        n: usize,
        /// Comma-separated holonomies, e.g. `1,-1` or `i,1/2-3i`.
        #[arg(long, allow_hyphen_values = true)]
        h0: String,
        #[arg(long, allow_hyphen_values = true)]
        h1: String,
    },
    /// Check that the two cone maps compose to ±Id.
    Equivalence {
        #[arg(long, allow_hyphen_values = true, default_value = "+1")]
        sign: String,
        /// Separate sign for products landing between tori.
        #[arg(long, allow_hyphen_values = true)]
        torus_sign: Option<String>,
    },
    /// Roots of the strip quadratic, or a CSV scan of parameter space.
    StripQuadratic {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
        t1: Option<f64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
        t2_angle: Option<f64>,
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 20)]
        t1_steps: usize,
        #[arg(long, default_value_t = 36)]
        theta_steps: usize,
    },
}

#[derive(Subcommand, Clone)]
enum GeometryArg {
    Cp1,
    Weighted { m: i64, n: i64 },
    TeardropBulk { u: String },
    Antidiagonal,
}

enum Failure {
    Identity(String),
    Input(String),
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn renderer(conv: QConv, root: u32) -> Renderer {
    let c = match conv {
        QConv::Internal => QConvention::Internal,
        QConv::QUnit => QConvention::QUnit,
        QConv::QRoot => QConvention::QRoot,
    };
    Renderer::new(c, root)
}

fn geometry_root(g: &GeometryArg) -> u32 {
    match g {
        GeometryArg::Weighted { m, .. } => (*m).clamp(1, u32::MAX as i64) as u32,
        _ => 1,
    }
}

fn parse_u(u: &str) -> Result<Rational, Failure> {
    parse_rational(u).map_err(input("u"))
}

fn family(g: &GeometryArg, bound: WeightedBound, symbolic: bool) -> Result<StripFamily, Failure> {
    Ok(match g {
        GeometryArg::Cp1 => strips::enumerate_cp1(),
        GeometryArg::Antidiagonal => strips::enumerate_antidiagonal(),
        GeometryArg::Weighted { m, n } => {
            let line = StackyLine::new(*m, *n).map_err(input("weights"))?;
            strips::enumerate_weighted_with(line, bound)
        }
        GeometryArg::TeardropBulk { u } => {
            let u = parse_u(u)?;
            let anchor = if symbolic { strips::BulkAnchor::Symbolic } else { strips::BulkAnchor::Critical };
            strips::bulk_family(&u, anchor, true).map_err(input("u"))?
        }
    })
}

fn potential(g: &GeometryArg, r: &Renderer) -> Outcome {
    let mut out = String::new();
    match g {
        GeometryArg::Cp1 => out += &format!("W = {}\n", r.poly(&strips::cp1_potential())),
        GeometryArg::Antidiagonal => out += &format!("W = {}\n", r.poly(&strips::antidiagonal_potential())),
        GeometryArg::Weighted { m, n } => {
            let line = StackyLine::new(*m, *n).map_err(input("weights"))?;
            if let Some(w) = line.warning() {
                out += &format!("warning: {w}\n");
            }
            let data = toric::critical_data(line).map_err(|e| Failure::Identity(e.to_string()))?;
            out += &format!("W = {}\n", r.poly(&toric::hori_vafa_potential(line)));
            out += &format!("relation: {}\n", data.relation);
            out += &format!("critical point: z = {}\n", r.scalar(&data.critical_point));
            out += &format!("critical value: {}\n", r.scalar(&data.critical_value));
        }
        GeometryArg::TeardropBulk { u } => {
            let u = parse_u(u)?;
            let b = toric::bulk_potential(&u);
            out += &format!("W = {}\n", r.poly(&b.potential));
            out += &format!("c = {}\n", r.scalar(&b.c));
            out += &format!("c in Lambda-plus: {}\n", b.c_in_lambda_plus);
            if let Ok(crit) = toric::bulk_critical(&u) {
                out += &format!("critical point: z = {}\n", r.scalar(&crit.critical_point));
                out += &format!("critical value: {}\n", r.scalar(&crit.critical_value));
            }
        }
    }
    Ok(out)
}

fn describe(mf: &MatrixFactorization, r: &Renderer) -> String {
    let mut out = String::new();
    let k = mf.k();
    for (name, block) in [("F", mf.f()), ("G", mf.g())] {
        for i in 0..k {
            for j in 0..k {
                let label = if k == 1 { name.to_owned() } else { format!("{name}[{i}][{j}]") };
                out += &format!("{label} = {}\n", r.poly(&block[i * k + j]));
            }
        }
    }
    out += &format!("W = {}\n", r.poly(mf.potential()));
    out += &format!("lambda = {}\n", r.scalar(mf.lambda()));
    out
}

/// Verifies and renders; failure carries the residual report.
fn check(mf: &MatrixFactorization, r: &Renderer, json: bool, body: String) -> Outcome {
    let report = mf.verify().map_err(|e| Failure::Identity(e.to_string()))?;
    let text = if json {
        format!("{body}\n")
    } else {
        let mut s = body;
        for x in &report.residuals {
            s += &format!("residual {}[{}][{}] = {}\n", x.product, x.row, x.col, r.poly(&x.residual));
        }
        s + &format!("verified: {}\n", report.is_ok())
    };
    if report.is_ok() {
        Ok(text)
    } else if json {
        Err(Failure::Identity(serial::report_to_string(&report)))
    } else {
        Err(Failure::Identity(text))
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input("stdin"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(input(path))
    }
}

fn load_mf(path: &str) -> Result<MatrixFactorization, Failure> {
    serial::mf_from_str(&read_source(path)?).map_err(input(path))
}

fn parse_list(s: &str) -> Result<Vec<GaussianRational>, Failure> {
    s.split(',').map(|x| parse_gaussian(x).map_err(input("holonomy"))).collect()
}

fn floer(n: usize, h0: &str, h1: &str) -> Outcome {
    let (h0, h1) = (parse_list(h0)?, parse_list(h1)?);
    if h0.len() != n || h1.len() != n {
        return Err(Failure::Input(format!("expected {n} holonomies, got {} and {}", h0.len(), h1.len())));
    }
    let real = h0.iter().chain(&h1).all(|h| h.im == Rational::from_integer(0.into()));
    let (ranks, psi) = if real {
        let c = TorusComplex::new(h0.into_iter().map(|h| h.re).collect(), h1.into_iter().map(|h| h.re).collect())
            .map_err(input("holonomy"))?;
        (c.homology_ranks(), c.chain_isomorphism_check().ok())
    } else {
        let c = TorusComplex::new(h0, h1).map_err(input("holonomy"))?;
        (c.homology_ranks(), c.chain_isomorphism_check().ok())
    };
    let list: Vec<String> = ranks.iter().map(ToString::to_string).collect();
    let mut out = format!("ranks: {}\ntotal: {}\n", list.join(","), ranks.iter().sum::<usize>());
    match psi {
        Some(true) => out += "chain isomorphism to simplex complex: true\n",
        Some(false) => return Err(Failure::Identity(out + "chain isomorphism to simplex complex: false\n")),
        None => out += "chain isomorphism to simplex complex: not applicable\n",
    }
    Ok(out)
}

fn parse_sign(s: &str) -> Result<i8, Failure> {
    match s {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(Failure::Input(format!("sign: expected +1 or -1, got {other:?}"))),
    }
}

fn equivalence(sign: &str, torus_sign: Option<&str>) -> Outcome {
    let eps = parse_sign(sign)?;
    let eps_t = torus_sign.map(parse_sign).transpose()?.unwrap_or(eps);
    let table = fukaya_mini::M2Table::with_signs(eps, eps_t).map_err(input("sign"))?;
    let report = fukaya_mini::verify_equivalence_with(&table).map_err(|e| Failure::Identity(e.to_string()))?;
    let text = format!("{report}\n");
    if report.ok() {
        Ok(text)
    } else {
        Err(Failure::Identity(text))
    }
}

fn strip_quadratic(t1: f64, theta: f64) -> Outcome {
    let r = strip_numeric::strip_quadratic(t1, strip_numeric::unit_from_angle(theta)).map_err(input("parameters"))?;
    let c = |z: Complex64| {
        let im = if z.im == 0.0 { 0.0 } else { z.im };
        format!("{:.12}{}{:.12}i", z.re, if im < 0.0 { "-" } else { "+" }, im.abs())
    };
    Ok(format!(
        "coefficient: {}\nroots: {}, {}\nclassification: {}\nroots in disc: {}\nvieta error: {:e}\n",
        c(r.coefficient),
        c(r.roots[0]),
        c(r.roots[1]),
        r.classification,
        r.roots_in_disc,
        r.vieta_error
    ))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Potential { geometry } => potential(&geometry, &renderer(cli.q_convention, geometry_root(&geometry))),
        Command::Factorize { geometry, json, strips, inclusive_bound, free_alpha, symbolic } => {
            let r = renderer(cli.q_convention, geometry_root(&geometry));
            let bound = if inclusive_bound { WeightedBound::Inclusive } else { WeightedBound::Exact };
            let mut fam = family(&geometry, bound, symbolic)?;
            if free_alpha {
                fam = fam.with_alpha_mode(AlphaMode::Free);
            }
            let mf = fam.factorization().map_err(|e| Failure::Identity(e.to_string()))?;
            let body = if strips {
                serial::family_to_string(&fam)
            } else if json {
                serial::mf_to_string(&mf)
            } else {
                describe(&mf, &r)
            };
            check(&mf, &r, json || strips, body)
        }
        Command::Verify { path, json } => {
            let mf = load_mf(&path)?;
            let report = mf.verify().map_err(|e| Failure::Identity(e.to_string()))?;
            let r = renderer(cli.q_convention, 1);
            let text = if json {
                format!("{}\n", serial::report_to_string(&report))
            } else {
                let mut s = String::new();
                for x in &report.residuals {
                    s += &format!("residual {}[{}][{}] = {}\n", x.product, x.row, x.col, r.poly(&x.residual));
                }
                s + &format!("verified: {}\n", report.is_ok())
            };
            if report.is_ok() {
                Ok(text)
            } else {
                Err(Failure::Identity(text))
            }
        }
        Command::Tensor { a, b, rename, compare, json } => {
            let a = load_mf(&a)?;
            let mut b = load_mf(&b)?;
            for pair in &rename {
                let (from, to) =
                    pair.split_once('=').ok_or_else(|| Failure::Input(format!("rename: expected old=new, got {pair:?}")))?;
                b = b.rename(from, to).map_err(input("rename"))?;
            }
            let t = a.tensor(&b).map_err(input("tensor"))?;
            let r = renderer(cli.q_convention, 1);
            let mut body = if json { serial::mf_to_string(&t) } else { describe(&t, &r) };
            if let Some(path) = compare {
                let target = load_mf(&path)?;
                let graded = find_signed_conjugacy(&t, &target, true).map_err(input("compare"))?;
                let any = match &graded {
                    Some(p) => Some(p.clone()),
                    None => find_signed_conjugacy(&t, &target, false).map_err(input("compare"))?,
                };
                let line = match (&graded, &any) {
                    (Some(p), _) => format!("equivalent (grading-preserving): {p}"),
                    (None, Some(p)) => format!("equivalent (parity-swapping): {p}"),
                    (None, None) => "not signed-permutation equivalent".to_owned(),
                };
                if json {
                    eprintln!("{line}");
                } else {
                    body += &format!("{line}\n");
                }
                if any.is_none() {
                    return Err(Failure::Identity(body));
                }
            }
            check(&t, &r, json, body)
        }
        Command::FloerTorus { n, h0, h1 } => floer(n, &h0, &h1),
        Command::Equivalence { sign, torus_sign } => equivalence(&sign, torus_sign.as_deref()),
        Command::StripQuadratic { t1, t2_angle, scan, t1_steps, theta_steps } => {
            if scan {
                let rows = strip_numeric::scan(t1_steps, theta_steps).map_err(input("scan"))?;
                let mut buf = Vec::new();
                strip_numeric::write_scan_csv(&rows, &mut buf).map_err(input("scan"))?;
                String::from_utf8(buf).map_err(input("scan"))
            } else {
                strip_quadratic(t1.expect("required by clap"), t2_angle.expect("required by clap"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = io::stdout().lock();
    match run(cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Identity(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
