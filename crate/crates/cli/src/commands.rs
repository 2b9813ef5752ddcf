use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use s3_coulomb::eigensolver::{Grid1D, QuadratureRule, RadialSolver};
use s3_coulomb::expansion::{connection_matrix, default_m_tilde, table1, ExpansionRow, PoleMode};
use s3_coulomb::specfun::{
    convention, harmonic_norm, GegenbauerConvention, HyperHarmonic, QuantumNumbers,
};
use s3_coulomb::spectrum::{energy, spectrum_table, uniform_grid, SpectrumRow};
use s3_coulomb::verify::{CheckOutcome, CheckRegistry, Status, VerifyConfig};

use crate::args::{
    Cli, EigensolveArgs, Format, MatrixArgs, SampleArgs, SpectrumArgs, Table1Args, VerifyArgs,
};
use crate::output::{csv, document};

/// Rendered output plus the process exit status.
pub struct Rendered {
    pub bytes: Vec<u8>,
    pub status: i32,
}

impl Rendered {
    fn ok(bytes: Vec<u8>) -> Self {
        Rendered { bytes, status: 0 }
    }
}

fn conv(cli: &Cli) -> Result<std::sync::Arc<dyn GegenbauerConvention>> {
    Ok(convention(&cli.convention)?)
}

fn poles(cli: &Cli) -> PoleMode {
    if cli.regularize_poles {
        PoleMode::Regularize
    } else {
        PoleMode::Strict
    }
}

pub fn spectrum(cli: &Cli, args: &SpectrumArgs) -> Result<Rendered> {
    let grid = if args.b.is_empty() {
        if !(args.b_step > 0.0) || args.b_max < args.b_min {
            bail!("need b-step > 0 and b-max >= b-min");
        }
        uniform_grid(args.b_min, args.b_max, args.b_step)
    } else {
        args.b.clone()
    };
    let rows = spectrum_table(args.kmax, &grid);
    Ok(Rendered::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&rows)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                kmax: u32,
                rows: &'a [SpectrumRow],
            }
            document(
                "spectrum",
                Body {
                    kmax: args.kmax,
                    rows: &rows,
                },
            )?
        }
    }))
}

#[derive(Serialize)]
struct CoeffOut {
    l: u32,
    /// Rational coefficients by ascending power of b.
    poly: Vec<String>,
    expr: String,
}

#[derive(Serialize)]
struct RowOut {
    #[serde(rename = "K")]
    k: u32,
    l_tilde: u32,
    coeffs: Vec<CoeffOut>,
    convention: String,
}

impl From<&ExpansionRow> for RowOut {
    fn from(row: &ExpansionRow) -> Self {
        let coeffs = row
            .coeffs
            .iter()
            .map(|(&l, p)| {
                let mut poly: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                if poly.is_empty() {
                    poly.push("0".into());
                }
                CoeffOut {
                    l,
                    poly,
                    expr: p.to_string(),
                }
            })
            .collect();
        RowOut {
            k: row.k,
            l_tilde: row.l_tilde,
            coeffs,
            convention: row.convention.clone(),
        }
    }
}

#[derive(Serialize)]
struct CoeffCsv {
    #[serde(rename = "K")]
    k: u32,
    l_tilde: u32,
    l: u32,
    b_power: usize,
    coefficient: String,
}

pub fn table(cli: &Cli, args: &Table1Args) -> Result<Rendered> {
    let c = conv(cli)?;
    let rows = table1(args.kmax, c.as_ref())?;
    Ok(Rendered::ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                kmax: u32,
                convention: String,
                rows: Vec<RowOut>,
            }
            let body = Body {
                kmax: args.kmax,
                convention: c.label().into(),
                rows: rows.iter().map(RowOut::from).collect(),
            };
            document("table1", body)?
        }
        Format::Csv => {
            let flat: Vec<CoeffCsv> = rows
                .iter()
                .flat_map(|row| {
                    row.coeffs.iter().flat_map(move |(&l, p)| {
                        p.coeffs().iter().enumerate().map(move |(i, c)| CoeffCsv {
                            k: row.k,
                            l_tilde: row.l_tilde,
                            l,
                            b_power: i,
                            coefficient: c.to_string(),
                        })
                    })
                })
                .collect();
            csv(&flat)?
        }
    }))
}

#[derive(Serialize)]
struct CheckCsv<'a> {
    name: &'a str,
    hard: bool,
    status: Status,
    cases: usize,
    failures: usize,
    max_residual: Option<f64>,
}

pub fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Rendered> {
    let registry = CheckRegistry::with_defaults();
    if args.list_checks {
        let mut out = String::new();
        for name in registry.names() {
            let check = registry.get(name)?;
            out.push_str(&format!(
                "{name}\t{}\t{}\n",
                if check.hard() { "hard" } else { "soft" },
                check.description()
            ));
        }
        return Ok(Rendered::ok(out.into_bytes()));
    }
    let mut config = VerifyConfig::new(args.kmax, &cli.convention)?;
    config.seed = cli.seed;
    config.points = args.points;
    if !args.b.is_empty() {
        config.b_values = args.b.clone();
    }
    let report = if args.checks.is_empty() {
        registry.run_all(&config)?
    } else {
        registry.run_selected(&config, &args.checks)?
    };
    let status = if report.passed { 0 } else { 1 };
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => document("verify", &report)?,
        Format::Csv => {
            let rows: Vec<CheckCsv> = report
                .checks
                .iter()
                .map(|c: &CheckOutcome| CheckCsv {
                    name: &c.name,
                    hard: c.hard,
                    status: c.status,
                    cases: c.cases,
                    failures: c.failures.len(),
                    max_residual: c.max_residual,
                })
                .collect();
            csv(&rows)?
        }
    };
    Ok(Rendered { bytes, status })
}

#[derive(Serialize)]
struct SamplePoint {
    chi: f64,
    theta: f64,
    phi: f64,
    abs: f64,
    norm: f64,
}

pub fn sample(cli: &Cli, args: &SampleArgs) -> Result<Rendered> {
    if args.n_chi < 2 || args.n_phi < 1 {
        bail!("need n-chi >= 2 and n-phi >= 1");
    }
    let c = conv(cli)?;
    let q = QuantumNumbers::new(args.k, args.l, args.m)?;
    let harmonic = HyperHarmonic::new(q, c.as_ref())?;
    let rule = QuadratureRule::gauss_legendre(cli.quad_order)?;
    let norm = harmonic_norm(args.k, args.l, c.as_ref(), &rule)?;
    let mut points = Vec::with_capacity(args.n_chi * args.n_phi);
    for i in 0..args.n_chi {
        let chi = PI * i as f64 / (args.n_chi - 1) as f64;
        for j in 0..args.n_phi {
            let phi = 2.0 * PI * j as f64 / args.n_phi as f64;
            let abs = harmonic
                .eval(args.damped, chi, args.theta, phi, args.b)?
                .norm();
            points.push(SamplePoint {
                chi,
                theta: args.theta,
                phi,
                abs,
                norm,
            });
        }
    }
    Ok(Rendered::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&points)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                #[serde(rename = "K")]
                k: u32,
                l: u32,
                m: i32,
                damped: bool,
                b: f64,
                convention: &'a str,
                norm: f64,
                points: Vec<[f64; 3]>,
            }
            document(
                "sample",
                Body {
                    k: args.k,
                    l: args.l,
                    m: args.m,
                    damped: args.damped,
                    b: args.b,
                    convention: c.label(),
                    norm,
                    points: points.iter().map(|p| [p.chi, p.phi, p.abs]).collect(),
                },
            )?
        }
    }))
}

#[derive(Serialize)]
struct EigenRow {
    index: usize,
    #[serde(rename = "epsilonPlus1_numeric")]
    numeric: f64,
    #[serde(rename = "epsilonPlus1_closedForm")]
    closed_form: f64,
    #[serde(rename = "absError")]
    abs_error: f64,
}

pub fn eigensolve(cli: &Cli, args: &EigensolveArgs) -> Result<Rendered> {
    let result = RadialSolver::new(args.l, args.b)
        .grid(args.n)
        .count(args.count)
        .richardson(args.richardson)
        .solve()?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let rows: Vec<EigenRow> = result
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let closed_form = energy(args.l + i as u32, args.b) + 1.0;
            EigenRow {
                index: i,
                numeric: v,
                closed_form,
                abs_error: (v - closed_form).abs(),
            }
        })
        .collect();
    Ok(Rendered::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&rows)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                l: u32,
                b: f64,
                grid: Grid1D,
                richardson: bool,
                rows: &'a [EigenRow],
            }
            document(
                "eigensolve",
                Body {
                    l: args.l,
                    b: args.b,
                    grid: result.grid,
                    richardson: args.richardson,
                    rows: &rows,
                },
            )?
        }
    }))
}

#[derive(Serialize)]
struct Entry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

pub fn matrix(cli: &Cli, args: &MatrixArgs) -> Result<Rendered> {
    let c = conv(cli)?;
    let m_tilde = args
        .m_tilde
        .clone()
        .unwrap_or_else(|| default_m_tilde(args.k));
    let m = connection_matrix(args.k, &m_tilde, c.as_ref())?;
    let a = m
        .evaluate(args.theta, args.phi, args.b, poles(cli))
        .with_context(|| {
            "A_K is singular at the poles; pass --regularize-poles to use P_l^0(±1)"
        })?;
    let entries: Vec<Entry> = a
        .iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(col, z)| Entry {
                row: r,
                col,
                re: z.re,
                im: z.im,
            })
        })
        .collect();
    Ok(Rendered::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&entries)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                #[serde(rename = "K")]
                k: u32,
                theta: f64,
                phi: f64,
                b: f64,
                m_tilde: &'a [i32],
                entries: Vec<Vec<[f64; 2]>>,
            }
            document(
                "matrix",
                Body {
                    k: args.k,
                    theta: args.theta,
                    phi: args.phi,
                    b: args.b,
                    m_tilde: &m_tilde,
                    entries: a
                        .iter()
                        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                },
            )?
        }
    }))
}
