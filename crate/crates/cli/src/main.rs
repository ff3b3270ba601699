//! `qmagnus`: tables, solutions and law checks from the command line.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 for malformed arguments or input.

mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use emit::{grid_csv, series_csv, series_text, Emitter};
use qmagnus::algebra::{Carrier, Mat, MatPoly, Rat};
use qmagnus::finitediff::{fd_derivative_residual, fd_residual, solve_fd, GridFn};
use qmagnus::magnus::{magnus_tables, q_difference_check, q_magnus_solution, MagnusConfig};
use qmagnus::qbch::q_bch;
use qmagnus::qcalc::QContext;
use qmagnus::sample::Sampler;
use qmagnus::verify::{run_verify, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "qmagnus", version, about = "q-Magnus expansion, q-BCH and law checks in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Deformation parameter as "p/r" with 0 < p/r <= 1.
    #[arg(long, global = true, default_value = "1/2")]
    q: String,

    /// Truncation order (default depends on the command).
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Matrix dimension for sampled inputs.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    input: Option<String>,

    /// Write here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Omega', Omega_q and W of lambda a.
    Magnus {
        /// Series written by the CSV format.
        #[arg(long, value_enum, default_value_t = MagnusSeries::OmegaPrime)]
        series: MagnusSeries,
    },
    /// X, Y and their integrated forms, with residuals.
    Solve {
        #[arg(long, value_enum, default_value_t = SolveSeries::YHat)]
        series: SolveSeries,
    },
    /// Coefficients of BCH_q(x, y).
    Qbch,
    /// The full seeded law suite.
    Verify {
        /// Samples per algebraic law.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Solves D_h F = F U on the grid 0, h, .., K h.
    Fd {
        #[arg(long, default_value = "1/2")]
        h: String,
        /// Number of steps K.
        #[arg(long, default_value_t = 32)]
        steps: usize,
    },
    /// Truncated infinite product against the E_q series.
    Check {
        #[arg(long, default_value = "1/2")]
        t0: String,
        #[arg(long, default_value_t = 20)]
        factors: usize,
        /// Largest accepted residual.
        #[arg(long, default_value = "1/1048576")]
        bound: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MagnusSeries {
    OmegaPrime,
    OmegaQ,
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveSeries {
    X,
    Y,
    XHat,
    YHat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_rat(what: &str, s: &str) -> anyhow::Result<Rat> {
    s.parse().with_context(|| format!("--{what} expects a rational \"p/r\", got {s:?}"))
}

fn read_input(cli: &Cli) -> anyhow::Result<Option<Value>> {
    let Some(raw) = &cli.input else {
        return Ok(None);
    };
    let text = match raw.trim_start().chars().next() {
        Some('[') | Some('{') => raw.clone(),
        _ => std::fs::read_to_string(raw).with_context(|| format!("reading input file {raw}"))?,
    };
    Ok(Some(serde_json::from_str(&text).context("input is not valid JSON")?))
}

/// A matrix as nested arrays, or a polynomial `{"dim", "terms"}`.
fn input_poly(cli: &Cli, ctx: &QContext) -> anyhow::Result<MatPoly> {
    let p = match read_input(cli)? {
        None => MatPoly::constant(Sampler::new(cli.seed).mat(ctx.dim())),
        Some(v @ Value::Array(_)) => MatPoly::constant(serde_json::from_value::<Mat>(v).context("bad matrix")?),
        Some(v) => serde_json::from_value(v).context("bad matrix polynomial")?,
    };
    Ok(p)
}

fn order(cli: &Cli, default: usize) -> anyhow::Result<usize> {
    let n = cli.order.unwrap_or(default);
    if n == 0 {
        bail!("--order must be at least 1");
    }
    Ok(n)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let q = parse_rat("q", &cli.q)?;
    if cli.dim == 0 {
        bail!("--dim must be positive");
    }
    let out = Emitter::new(cli.output.clone(), cli.format);
    match &cli.command {
        Command::Magnus { series } => {
            let poly = input_poly(cli, &QContext::new(q.clone(), cli.dim)?)?;
            let ctx = QContext::new(q, poly.dim())?;
            let tables = magnus_tables(&MagnusConfig::new(ctx, order(cli, 6)?, poly)?)?;
            let picked = match series {
                MagnusSeries::OmegaPrime => &tables.omega_prime,
                MagnusSeries::OmegaQ => &tables.omega_q,
                MagnusSeries::W => &tables.w,
            };
            out.emit(&tables, || series_csv(picked), || {
                format!(
                    "q = {}, order = {}\nOmega':\n{}Omega_q:\n{}W:\n{}",
                    tables.q,
                    tables.order,
                    series_text(&tables.omega_prime),
                    series_text(&tables.omega_q),
                    series_text(&tables.w)
                )
            })?;
            Ok(true)
        }
        Command::Solve { series } => {
            let poly = input_poly(cli, &QContext::new(q.clone(), cli.dim)?)?;
            let ctx = QContext::new(q, poly.dim())?;
            let sol = q_magnus_solution(&MagnusConfig::new(ctx, order(cli, 6)?, poly)?)?;
            let picked = match series {
                SolveSeries::X => &sol.x,
                SolveSeries::Y => &sol.y,
                SolveSeries::XHat => &sol.x_hat,
                SolveSeries::YHat => &sol.y_hat,
            };
            let mut value = serde_json::to_value(&sol)?;
            value["passed"] = json!(sol.passed());
            out.emit(&value, || series_csv(picked), || {
                format!(
                    "q = {}, order = {}, residuals {}\nX:\n{}Y:\n{}Y^:\n{}",
                    sol.q,
                    sol.order,
                    if sol.passed() { "vanish" } else { "DO NOT vanish" },
                    series_text(&sol.x),
                    series_text(&sol.y),
                    series_text(&sol.y_hat)
                )
            })?;
            Ok(sol.passed())
        }
        Command::Qbch => {
            let ctx = QContext::new(q, cli.dim)?;
            let res = q_bch(&ctx, order(cli, 5)?)?;
            let rendered = res.rendered();
            let degrees: Vec<Value> = res
                .by_degree
                .iter()
                .zip(&rendered)
                .enumerate()
                .map(|(i, (c, r))| json!({ "degree": i + 1, "terms": c.terms().iter().map(|(w, v)| (w.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(), "rendered": r }))
                .collect();
            let value = json!({ "q": res.q, "order": res.order, "degrees": degrees });
            out.emit(
                &value,
                || {
                    let mut s = String::from("degree,word,value\n");
                    for (i, c) in res.by_degree.iter().enumerate() {
                        for (w, v) in c.terms() {
                            s.push_str(&format!("{},{w},{v}\n", i + 1));
                        }
                    }
                    s
                },
                || {
                    let mut s = format!("BCH_q(x, y), q = {}\n", res.q);
                    for (i, r) in rendered.iter().enumerate() {
                        s.push_str(&format!("degree {}: {r}\n", i + 1));
                    }
                    s
                },
            )?;
            Ok(true)
        }
        Command::Verify { samples } => {
            if *samples == 0 {
                bail!("--samples must be positive");
            }
            let mut cfg = VerifyConfig::new(QContext::new(q, cli.dim)?, order(cli, 6)?, cli.seed)?;
            cfg.samples = *samples;
            let rep = run_verify(&cfg)?;
            let mut value = serde_json::to_value(&rep)?;
            value["passed"] = json!(rep.passed());
            out.emit(
                &value,
                || {
                    let mut s = String::from("suite,law,samples,failures\n");
                    for suite in &rep.suites {
                        for l in &suite.laws {
                            s.push_str(&format!("\"{}\",\"{}\",{},{}\n", suite.name, l.axiom, l.samples, l.failures.len()));
                        }
                    }
                    s
                },
                || {
                    let mut s = format!("q = {}, dim = {}, order = {}, seed = {}\n", rep.q, rep.dim, rep.order, rep.seed);
                    for suite in &rep.suites {
                        for l in &suite.laws {
                            let tag = if l.passed() { "PASS" } else { "FAIL" };
                            s.push_str(&format!("{tag} [{}] {} ({} samples)\n", suite.name, l.axiom, l.samples));
                        }
                        for k in &suite.skipped {
                            s.push_str(&format!("SKIP [{}] {k}\n", suite.name));
                        }
                    }
                    let verdict = if rep.passed() { "all laws hold" } else { "FAILURES" };
                    s.push_str(&format!("{} laws, {verdict}\n", rep.law_count()));
                    s
                },
            )?;
            Ok(rep.passed())
        }
        Command::Fd { h, steps } => {
            let h = parse_rat("h", h)?;
            let u = match read_input(cli)? {
                None => {
                    let mut s = Sampler::new(cli.seed);
                    GridFn::from_fn(h, *steps, |_| s.mat(cli.dim))?
                }
                Some(v @ Value::Array(_)) => GridFn::constant(h, *steps, serde_json::from_value(v).context("bad matrix")?)?,
                Some(v) => serde_json::from_value::<GridFn>(v).context("bad grid function")?.validated()?,
            };
            let f = solve_fd(&u);
            let ok = fd_residual(&f, &u)?.is_zero() && (f.len() < 2 || fd_derivative_residual(&f, &u)?.is_zero());
            let value = json!({ "h": u.h(), "steps": u.steps(), "input": u, "solution": f, "residual_zero": ok });
            out.emit(&value, || grid_csv(&f), || {
                let mut s = format!("F on 0..{} with h = {}; residual {}\n", f.steps(), f.h(), if ok { "zero" } else { "NONZERO" });
                for (j, m) in f.values().iter().enumerate() {
                    s.push_str(&format!("F({}) = {m}\n", u.h() * &Rat::from_int(j as i64)));
                }
                s
            })?;
            Ok(ok)
        }
        Command::Check { t0, factors, bound } => {
            let t0 = parse_rat("t0", t0)?;
            let bound = parse_rat("bound", bound)?;
            let u = match read_input(cli)? {
                None => Mat::identity(1),
                Some(v) => serde_json::from_value(v).context("bad matrix")?,
            };
            let ctx = QContext::new(q, u.dim())?;
            let rep = q_difference_check(&ctx, &u, &t0, *factors, order(cli, 20)?)?;
            let passed = rep.within(&bound);
            let mut value = serde_json::to_value(&rep)?;
            value["bound"] = json!(bound);
            value["passed"] = json!(passed);
            out.emit(
                &value,
                || {
                    format!(
                        "q,t0,factors,order,residual,residual_approx,bound,passed\n{},{},{},{},{},{:e},{},{}\n",
                        rep.q, rep.t0, rep.factors, rep.order, rep.residual, rep.residual_approx, bound, passed
                    )
                },
                || {
                    format!(
                        "product of {} factors vs E_q to order {} at t0 = {}: residual {:e} ({}), bound {}\ne_q E_q = 1: {}\n",
                        rep.factors,
                        rep.order,
                        rep.t0,
                        rep.residual_approx,
                        if passed { "PASS" } else { "FAIL" },
                        bound,
                        rep.inverse_residual.is_zero()
                    )
                },
            )?;
            Ok(passed)
        }
    }
}
