use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc::{self, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use tticad::check::verify;
use tticad::dump;
use tticad::engine::{run, CadResult, EngineError, Mode, Options, Stats};
use tticad::formula::{compositions, EcStrategy, FormulaList};
use tticad::problem::{conjuncts_of, Problem};

const EXIT_OK: u8 = 0;
const EXIT_CHECK: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

/// Truth-table invariant cylindrical algebraic decomposition.
///
/// Exit status: 0 success, 1 verification found a disagreement, 2 the input
/// is not well oriented for the chosen mode, 3 bad input, 4 time limit hit.
#[derive(Debug, Parser)]
#[command(name = "tticad", version)]
struct Cli {
    /// Problem file (JSON).
    input: PathBuf,
    /// full, ec-product, tticad or rescad. Defaults to the file's mode, then tticad.
    #[arg(long)]
    mode: Option<Mode>,
    /// Variable order, lowest first, comma separated (e.g. `x,y`).
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// How equational constraints are designated: manual or sotd.
    #[arg(long)]
    ec: Option<String>,
    /// Write the cells as JSON.
    #[arg(long, value_name = "PATH")]
    dump_cells: Option<PathBuf>,
    /// Write the projection sets of every level as JSON.
    #[arg(long, value_name = "PATH")]
    dump_projection: Option<PathBuf>,
    /// Write plot data for a problem in two variables.
    #[arg(long, value_name = "PATH")]
    plot2d: Option<PathBuf>,
    /// Verify the result at N random points.
    #[arg(long, value_name = "N")]
    check: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Time limit in seconds; 0 disables it.
    #[arg(long, value_name = "SECS")]
    timeout: Option<u64>,
    /// Write the statistics as JSON.
    #[arg(long, value_name = "PATH")]
    stats_json: Option<PathBuf>,
    /// List the ways to regroup the conjuncts into formulae with their
    /// heuristic scores, then exit.
    #[arg(long)]
    compositions: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<EngineError>() {
                Some(EngineError::Timeout) => ExitCode::from(EXIT_TIMEOUT),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn real_main(cli: &Cli) -> Result<u8> {
    let problem = Problem::load(&cli.input)?;
    let order = cli.order.as_deref();
    if cli.compositions {
        let cs = compositions(&conjuncts_of(&problem, order)?);
        // a closed pipe (as with `| head`) is not an error
        let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&cs)?);
        return Ok(EXIT_OK);
    }
    let mode = match cli.mode {
        Some(m) => m,
        None => problem.mode()?.unwrap_or(Mode::Tticad),
    };
    let strategy = match cli.ec.as_deref() {
        None => problem.ec_strategy()?,
        Some("manual") => problem.manual(),
        Some("sotd") => EcStrategy::Sotd,
        Some(s) => bail!("unknown designation strategy `{s}`"),
    };
    let mut phi = problem.formulas(order)?;
    if mode.needs_designation() {
        phi.designate(&strategy)?;
    }
    if cli.plot2d.is_some() && phi.order.len() != 2 {
        bail!("plot data needs 2 variables, the problem has {}", phi.order.len());
    }
    let timeout = cli.timeout.or(problem.options.timeout).unwrap_or(300);
    let start = Instant::now();
    let opts = Options {
        deadline: (timeout > 0).then(|| start + Duration::from_secs(timeout)),
    };
    let result = run_limited(phi, mode, opts, timeout)?;
    let elapsed = start.elapsed();

    let stats = result.stats();
    print_stats(&stats, &result);
    eprintln!("time: {:.3}s", elapsed.as_secs_f64());
    if let Some(p) = &cli.stats_json {
        write_json(p, &stats)?;
    }
    if let Some(p) = &cli.dump_cells {
        write_json(p, &dump::cells(&result))?;
    }
    if let Some(p) = &cli.dump_projection {
        write_json(p, &dump::projection(&result))?;
    }
    if !result.ok() {
        return Ok(EXIT_FAIL);
    }
    if let Some(p) = &cli.plot2d {
        write_json(p, &dump::plot2d(&result, 400).map_err(anyhow::Error::msg)?)?;
    }
    if let Some(n) = cli.check.or(problem.options.check) {
        let seed = cli.seed.or(problem.options.seed).unwrap_or(0);
        let report = verify(&result, n, seed);
        println!(
            "check: {} points + {} on sections, seed {}, {} failures, {}/{} cells hit",
            report.trials,
            report.variety_trials,
            seed,
            report.failures.len(),
            report.cells_hit,
            report.total_cells
        );
        if !report.passed() {
            for f in report.failures.iter().take(5) {
                eprintln!(
                    "check failed at ({}) in cell {:?}: {}",
                    f.point.join(", "),
                    f.cell,
                    f.what
                );
            }
            return Ok(EXIT_CHECK);
        }
    }
    Ok(EXIT_OK)
}

/// Runs the engine on a worker thread. The engine checks its deadline between
/// cells, and a single lift over a large extension can overrun it, so the
/// caller stops waiting once the limit has passed.
fn run_limited(phi: FormulaList, mode: Mode, opts: Options, timeout: u64) -> Result<CadResult> {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(run(&phi, mode, &opts));
    });
    let r = if timeout == 0 {
        rx.recv().context("engine thread panicked")?
    } else {
        match rx.recv_timeout(Duration::from_secs(timeout)) {
            Ok(r) => r,
            Err(RecvTimeoutError::Timeout) => Err(EngineError::Timeout),
            Err(RecvTimeoutError::Disconnected) => bail!("engine thread panicked"),
        }
    };
    Ok(r?)
}

fn print_stats(s: &Stats, r: &CadResult) {
    println!("mode: {}", s.mode);
    println!("status: {}", s.status);
    println!("vars: {}", s.vars.join(" < "));
    for (k, l) in s.levels.iter().enumerate() {
        println!(
            "level {} ({}): projection {}, basis {}, sections {}, cells {}",
            k + 1,
            l.var,
            l.projection_polys,
            l.basis,
            l.sections,
            l.cells
        );
    }
    if let Some(f) = &r.failure {
        println!("failure: {} on cell {:?}: {}", f.poly, f.cell, f.reason);
        return;
    }
    println!("base: roots: {} / cells: {}", s.base_roots, s.base_cells);
    println!("cells: {}", s.total_cells);
    if !s.true_cells.is_empty() {
        let t: Vec<String> = s.true_cells.iter().map(|c| c.to_string()).collect();
        println!("true cells: {}", t.join(" "));
    }
}
