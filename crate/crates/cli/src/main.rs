use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use boolnl::majority::{VERIFY_MAX_K, VERIFY_MIN_K};
use boolnl::{
    majority, runlength, verify_k, walsh_transform, AnalysisReport, TruthTable, MAX_VARS,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Lowers the variable cap below the built-in maximum.
const CAP_ENV: &str = "BOOLNL_MAX_VARS";
/// Largest k printed in run-length notation.
const RUNLENGTH_MAX_K: u32 = 9;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "boolnl",
    version,
    about = "Walsh spectra, nonlinearity and majority functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight, nonlinearity, degree and ANF of a truth table.
    Analyze {
        /// Table as a 0/1 string or a 0x-prefixed hex string.
        #[arg(long = "tt", value_name = "TABLE")]
        table: String,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        /// Expected number of variables.
        #[arg(long = "vars", value_name = "N")]
        vars: Option<u32>,
        /// Include the full Walsh spectrum.
        #[arg(long)]
        spectrum: bool,
        /// Plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Truth table or verification report of the majority function M(k).
    Majority {
        k: u32,
        /// Per-identity verification report (4 <= k <= 24).
        #[arg(long, conflicts_with_all = ["table", "runlength"])]
        report: bool,
        /// Truth table as a 0/1 string (default).
        #[arg(long, conflicts_with = "runlength")]
        table: bool,
        /// Truth table in run-length notation (k <= 9).
        #[arg(long)]
        runlength: bool,
        /// Plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Check every majority-function identity for k = 4..=max-k.
    Verify {
        #[arg(long = "max-k", value_name = "K",
              value_parser = clap::value_parser!(u32).range(VERIFY_MIN_K as i64..=VERIFY_MAX_K as i64))]
        max_k: u32,
        /// One aggregate JSON document instead of a line per k.
        #[arg(long)]
        json: bool,
    },
    /// Median wall time of the Walsh transform on random tables.
    Bench {
        n: u32,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        text: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    Binary,
    Hex,
}

fn var_cap() -> Result<u32> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(MAX_VARS),
        Ok(v) => {
            let cap: u32 = v
                .trim()
                .parse()
                .with_context(|| format!("{CAP_ENV}={v:?} is not an integer"))?;
            if cap > MAX_VARS {
                bail!("{CAP_ENV}={cap} exceeds the hard limit of {MAX_VARS}");
            }
            Ok(cap)
        }
    }
}

fn check_cap(what: &str, n: u32) -> Result<()> {
    let cap = var_cap()?;
    if n > cap {
        bail!("{what} {n} exceeds the variable cap of {cap}");
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_table(text: &str, format: Format) -> Result<TruthTable> {
    let hex = match format {
        Format::Auto => text.starts_with("0x") || text.starts_with("0X"),
        Format::Binary => false,
        Format::Hex => true,
    };
    let parsed = if hex {
        TruthTable::from_hex(text)
    } else {
        TruthTable::from_bitstring(text)
    };
    parsed.map_err(|e| anyhow!("cannot parse table: {e}"))
}

fn cmd_analyze(
    out: &mut impl Write,
    text: &str,
    format: Format,
    vars: Option<u32>,
    spectrum: bool,
    plain: bool,
) -> Result<()> {
    let t = parse_table(text, format)?;
    if let Some(n) = vars {
        if n != t.n() {
            bail!("table has {} variables, expected {n}", t.n());
        }
    }
    check_cap("variable count", t.n())?;
    let report = AnalysisReport::new(&t, spectrum);
    if !plain {
        return emit_json(out, &report);
    }
    writeln!(out, "n            {}", report.n)?;
    writeln!(out, "weight       {}", report.weight)?;
    writeln!(out, "balanced     {}", report.balanced)?;
    match report.nonlinearity {
        Some(nl) => writeln!(out, "nonlinearity {nl}")?,
        None => writeln!(out, "nonlinearity undefined")?,
    }
    writeln!(out, "degree       {}", report.degree)?;
    writeln!(
        out,
        "max |W|      {} at w = {}",
        report.max_abs_walsh, report.max_abs_walsh_index
    )?;
    writeln!(out, "anf          {}", report.anf)?;
    writeln!(
        out,
        "wt = N check {}",
        serde_json::to_value(report.low_weight_check)?
            .as_str()
            .unwrap_or("")
    )?;
    if let Some(values) = &report.spectrum {
        let rendered: Vec<String> = values.iter().map(i32::to_string).collect();
        writeln!(out, "spectrum     {}", rendered.join(" "))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TableOutput<'a> {
    k: u32,
    table: &'a str,
}

fn cmd_majority(
    out: &mut impl Write,
    k: u32,
    report: bool,
    runlength: bool,
    plain: bool,
) -> Result<ExitCode> {
    if k == 0 {
        bail!("k must be at least 1");
    }
    check_cap("k", k)?;
    if report {
        let r = verify_k(k).map_err(|e| anyhow!("{e}"))?;
        if plain {
            write_report_line(out, &r)?;
        } else {
            emit_json(out, &r)?;
        }
        return Ok(if r.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_VERIFY_FAILED)
        });
    }
    let t = majority(k).map_err(|e| anyhow!("{e}"))?;
    let rendered = if runlength {
        if k > RUNLENGTH_MAX_K {
            bail!("run-length output is limited to k <= {RUNLENGTH_MAX_K}");
        }
        runlength::encode(&t)
    } else {
        t.to_bitstring()
    };
    if plain || runlength {
        writeln!(out, "{rendered}")?;
    } else {
        emit_json(
            out,
            &TableOutput {
                k,
                table: &rendered,
            },
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn write_report_line(out: &mut impl Write, r: &boolnl::MajorityReport) -> Result<()> {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let oracle = serde_json::to_value(r.oracle)?;
    writeln!(
        out,
        "k={:<2} weight={:<8} N={:<8} predicted={:<8} oracle={:<8} identities={:<2} {status}",
        r.k,
        r.weight,
        r.nonlinearity,
        r.predicted,
        oracle.as_str().unwrap_or(""),
        r.identities.len(),
    )?;
    for f in r.failures() {
        writeln!(out, "    failed: {}", f.name)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifySummary {
    max_k: u32,
    passed: bool,
    reports: Vec<boolnl::MajorityReport>,
}

fn cmd_verify(out: &mut impl Write, max_k: u32, json: bool) -> Result<ExitCode> {
    check_cap("max-k", max_k)?;
    let reports = boolnl::verify_majority(max_k).map_err(|e| anyhow!("{e}"))?;
    let passed = reports.iter().all(|r| r.passed());
    if json {
        emit_json(
            out,
            &VerifySummary {
                max_k,
                passed,
                reports,
            },
        )?;
    } else {
        for r in &reports {
            write_report_line(out, r)?;
        }
    }
    if !passed {
        eprintln!("verification failed");
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}

#[derive(Serialize)]
struct BenchSummary {
    n: u32,
    reps: u32,
    median_ms: f64,
    min_ms: f64,
    max_ms: f64,
}

fn cmd_bench(out: &mut impl Write, n: u32, reps: u32, seed: u64, plain: bool) -> Result<()> {
    check_cap("n", n)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let words = 1usize << n.saturating_sub(6);
    let mut times = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let t = TruthTable::from_words(n, (0..words).map(|_| rng.gen()).collect())
            .map_err(|e| anyhow!("{e}"))?;
        let start = Instant::now();
        let spectrum = walsh_transform(&t);
        times.push(start.elapsed().as_secs_f64() * 1e3);
        std::hint::black_box(spectrum);
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median_ms = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    let summary = BenchSummary {
        n,
        reps,
        median_ms,
        min_ms: times[0],
        max_ms: times[times.len() - 1],
    };
    if plain {
        writeln!(
            out,
            "walsh_transform n={n}: median {:.3} ms over {reps} runs (min {:.3}, max {:.3})",
            summary.median_ms, summary.min_ms, summary.max_ms
        )?;
    } else {
        emit_json(out, &summary)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analyze {
            table,
            format,
            vars,
            spectrum,
            text,
        } => cmd_analyze(&mut out, &table, format, vars, spectrum, text).map(|_| ExitCode::SUCCESS),
        Command::Majority {
            k,
            report,
            table: _,
            runlength,
            text,
        } => cmd_majority(&mut out, k, report, runlength, text),
        Command::Verify { max_k, json } => cmd_verify(&mut out, max_k, json),
        Command::Bench {
            n,
            reps,
            seed,
            text,
        } => cmd_bench(&mut out, n, reps, seed, text).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
