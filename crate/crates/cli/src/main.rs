//! `stbc`: reproduce the density table, run certified searches, inspect and
//! encode codes, check norms, and simulate.
//!
//! Exit codes: 0 success or certified, 2 flagged or uncertified, 1 usage or
//! domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stbc_core::arith::{format_rational, parse_rational, QuadField, Rational, RingElem};
use stbc_core::norm_cert::{decide_norm, NormBudget, Verdict};
use stbc_core::quad_ext::QuadPoly;
use stbc_core::search::{optimal_search_with, reproduce_table, table_csv, PDisk};
use stbc_core::sim::{run, SimConfig, DEFAULT_CODEBOOK_CAP};
use stbc_core::stbc::{det2, CMatrix2, Codeword};
use stbc_core::{make_code, CodeSpec};

#[derive(Parser)]
#[command(
    name = "stbc",
    version,
    about = "Optimal 2x2 space-time block codes over imaginary quadratic integers"
)]
struct Cli {
    /// Worker threads for parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimFormat {
    Csv,
    Gnuplot,
    Json,
}

#[derive(Parser)]
struct CodeArgs {
    /// Field parameter: F = Q(√-d).
    #[arg(long)]
    d: i64,
    /// Coefficient p as integral-basis coordinates "a,b".
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Coefficient q as "a,b".
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// γ as "a,b".
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    /// Squared radius of the witness search disk.
    #[arg(long, default_value_t = 50)]
    effort: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild the per-field density table and flag rows that disagree with the printed values.
    Table {
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Certified search for codes beating a reduced c_det target.
    Search {
        #[arg(long)]
        d: i64,
        /// Reduced c_det target as "n" or "n/d".
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 50)]
        effort: u32,
        /// Restrict p to the open reduction disk (not exhaustive).
        #[arg(long)]
        open_disk: bool,
    },
    /// Construct and certify a code; prints its JSON spec.
    Code(CodeArgs),
    /// Decide whether γ is a relative norm of F(α1)/F.
    NormCheck(CodeArgs),
    /// Encode information symbols with a code read from a JSON spec.
    Encode {
        #[arg(long)]
        spec: PathBuf,
        /// Four integers, or eight integers as four "a,b" pairs.
        #[arg(long, allow_hyphen_values = true)]
        symbols: String,
        #[arg(long)]
        balanced: bool,
    },
    /// Monte Carlo codeword error rate over a 2x2 Rayleigh channel.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated SNR points in dB; "inf" runs noiseless.
        #[arg(long, allow_hyphen_values = true, default_value = "0,6,12,18")]
        snr: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinate bound of the symbol alphabet.
        #[arg(long = "box", default_value_t = 1)]
        symbol_box: u32,
        #[arg(long)]
        balanced: bool,
        /// Largest codebook decoded exhaustively.
        #[arg(long, default_value_t = DEFAULT_CODEBOOK_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: SimFormat,
    },
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("not an integer: {t:?}"))
        })
        .collect()
}

fn parse_ring(field: QuadField, s: &str) -> Result<RingElem> {
    match parse_ints(s)?.as_slice() {
        [a, b] => Ok(RingElem::new(field, *a, *b)),
        _ => bail!("expected \"a,b\", got {s:?}"),
    }
}

fn parse_symbols(field: QuadField, s: &str) -> Result<[RingElem; 4]> {
    let v = parse_ints(s)?;
    match v.len() {
        4 => Ok([0, 1, 2, 3].map(|i| RingElem::from_int(field, v[i]))),
        8 => Ok([0, 1, 2, 3].map(|i| RingElem::new(field, v[2 * i], v[2 * i + 1]))),
        n => bail!("expected 4 or 8 integers, got {n}"),
    }
}

fn budget(effort: u32) -> NormBudget {
    NormBudget::with_radius_sq(Rational::from_integer(effort.into()))
}

fn code_inputs(args: &CodeArgs) -> Result<(QuadField, QuadPoly, RingElem)> {
    let field = QuadField::new(args.d)?;
    let poly = QuadPoly::new(parse_ring(field, &args.p)?, parse_ring(field, &args.q)?)?;
    Ok((field, poly, parse_ring(field, &args.gamma)?))
}

fn read_spec(path: &PathBuf) -> Result<CodeSpec> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(CodeSpec::from_json(&text, &NormBudget::default())?)
}

fn matrix_json(m: &CMatrix2) -> serde_json::Value {
    json!(m
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn status_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        2
    }
}

fn parse_snr(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| match t.trim() {
            "inf" => Ok(f64::INFINITY),
            t => t
                .parse::<f64>()
                .with_context(|| format!("not a number: {t:?}")),
        })
        .collect()
}

fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Table { format } => {
            let rows = reproduce_table(&NormBudget::default());
            match format {
                TableFormat::Csv => print!("{}", table_csv(&rows)),
                TableFormat::Json => {
                    print_json(&json!(rows.iter().map(|r| r.to_json()).collect::<Vec<_>>()))
                }
            }
            Ok(status_code(rows.iter().all(|r| !r.flagged)))
        }
        Command::Search {
            d,
            target,
            effort,
            open_disk,
        } => {
            let field = QuadField::new(d)?;
            let target = parse_rational(&target)?;
            if target <= Rational::from_integer(0.into()) {
                bail!("target must be positive, got {}", format_rational(&target));
            }
            let disk = if open_disk {
                PDisk::Open
            } else {
                PDisk::Closed
            };
            let report = optimal_search_with(field, &target, &budget(effort), disk);
            print_json(&report.to_json());
            Ok(status_code(report.certified))
        }
        Command::Code(args) => {
            let (field, poly, gamma) = code_inputs(&args)?;
            let code = make_code(field, poly, gamma, &budget(args.effort))?;
            print_json(&code.to_json());
            Ok(status_code(code.verified()))
        }
        Command::NormCheck(args) => {
            let (_, poly, gamma) = code_inputs(&args)?;
            let status = decide_norm(&poly, &gamma.to_field(), &budget(args.effort))?;
            print_json(&json!({
                "polynomial": poly.to_string(),
                "gamma": gamma.coords(),
                "status": status,
            }));
            Ok(status_code(status.verdict() != Verdict::Unknown))
        }
        Command::Encode {
            spec,
            symbols,
            balanced,
        } => {
            let spec = read_spec(&spec)?;
            let word = Codeword::new(&spec, parse_symbols(spec.field(), &symbols)?)?;
            let m = if balanced {
                word.balanced_matrix()
            } else {
                word.matrix()
            };
            let det = det2(&m);
            print_json(&json!({
                "symbols": word.symbols().map(|s| s.coords()),
                "balanced": balanced,
                "matrix": matrix_json(&m),
                "det": [det.re, det.im],
                "det_exact": word.det_ring().coords(),
            }));
            Ok(0)
        }
        Command::Simulate {
            spec,
            snr,
            trials,
            seed,
            symbol_box,
            balanced,
            cap,
            format,
        } => {
            let spec = read_spec(&spec)?;
            let config = SimConfig {
                symbol_box,
                snr_grid_db: parse_snr(&snr)?,
                trials,
                seed,
                balanced,
                codebook_cap: cap,
                ..SimConfig::new(spec)
            };
            let result = run(&config)?;
            match format {
                SimFormat::Csv => print!("{}", result.to_csv()),
                SimFormat::Gnuplot => print!("{}", result.to_gnuplot()),
                SimFormat::Json => print_json(&serde_json::to_value(&result)?),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        stbc_core::exec::set_thread_count(n);
    }
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
