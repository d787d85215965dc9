//! Command-line front door: solve, enumerate, verify, scan, stats, figure2.
//!
//! Exit codes are a stable contract: 0 success, 1 a paper-invariant check
//! failed during verify, 2 usage/input error, 3 no solution found (a
//! conjecture event).

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esc_core::oracle::DEFAULT_ORACLE_CAP;
use esc_core::survey::{self, Strategy, SurveyRecord};
use esc_core::{reduction, structure, Error, Prime, Solution, SEARCH_LIMIT};

const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "esc",
    version,
    about = "Search, verify and survey solutions of 4/p = 1/x + 1/y + 1/z for primes p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human-oriented, not byte-stable across versions
    Table,
    Csv,
    Json,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Find solutions for a single prime
    Solve(SolveArgs),
    /// Find all solutions for a single prime (alias for solve --all)
    Enumerate(EnumerateArgs),
    /// Validate a triple and run every structural check against it
    Verify {
        p: u64,
        x: u64,
        y: u64,
        z: u128,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Scan a prime range, writing one JSONL record per prime
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value = "hybrid")]
        strategy: String,
        /// Record every solution per prime instead of the first
        #[arg(long)]
        all: bool,
        /// Worker threads for the scan (defaults to all cores)
        #[arg(long, env = "ESC_JOBS")]
        jobs: Option<usize>,
        /// Write records to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest prime allowed with the oracle strategy
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
        /// Primes per parallel chunk (tuning only, never changes output)
        #[arg(long, default_value_t = survey::DEFAULT_CHUNK_SIZE)]
        chunk_size: usize,
    },
    /// Aggregate statistics from a JSONL scan file
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Emit the Type I (p, y, p mod 4) dataset as CSV for plotting
    Figure2 {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// The prime p of 4/p
    p: u64,
    #[arg(long, default_value = "hybrid")]
    strategy: String,
    /// Emit every solution instead of the first
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Largest prime allowed with the oracle strategy
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    /// The prime p of 4/p
    p: u64,
    #[arg(long, default_value = "hybrid")]
    strategy: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // a downstream pipe closing early (e.g. `esc scan ... | head`) is
            // not an error
            if let Some(io_err) = e.downcast_ref::<io::Error>() {
                if io_err.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::from(EXIT_OK);
                }
            }
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::NoSolutionFound { .. }) => ExitCode::from(EXIT_NO_SOLUTION),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Enumerate(args) => cmd_solve(SolveArgs {
            p: args.p,
            strategy: args.strategy,
            all: true,
            format: args.format,
            oracle_cap: args.oracle_cap,
        }),
        Command::Verify { p, x, y, z, format } => cmd_verify(p, x, y, z, format),
        Command::Scan {
            from,
            to,
            strategy,
            all,
            jobs,
            out,
            oracle_cap,
            chunk_size,
        } => cmd_scan(from, to, &strategy, all, jobs, out, oracle_cap, chunk_size),
        Command::Stats { input, format } => cmd_stats(&input, format),
        Command::Figure2 { from, to, out } => cmd_figure2(from, to, out),
    }
}

fn parse_prime(p: u64) -> anyhow::Result<Prime> {
    if p >= SEARCH_LIMIT {
        return Err(Error::MagnitudeExceeded {
            value: p,
            limit: SEARCH_LIMIT,
        }
        .into());
    }
    Ok(Prime::new(p)?)
}

fn check_oracle_cap(strategy: Strategy, largest: u64, cap: u64) -> anyhow::Result<()> {
    if strategy == Strategy::Oracle && largest > cap {
        return Err(Error::MagnitudeExceeded {
            value: largest,
            limit: cap,
        }
        .into());
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<u8> {
    let strategy = Strategy::from_str(&args.strategy)?;
    let p = parse_prime(args.p)?;
    check_oracle_cap(strategy, p.get(), args.oracle_cap)?;

    let solutions: Vec<Solution> = if args.all {
        match strategy {
            Strategy::Oracle => esc_core::oracle::enumerate_all(p)?,
            Strategy::TwoVar | Strategy::Hybrid => reduction::search_two_var(p)?,
            Strategy::OneVar => reduction::search_one_var(p, false)?,
        }
    } else {
        let first = match strategy {
            Strategy::Oracle => esc_core::oracle::enumerate_all(p)?.into_iter().next(),
            Strategy::TwoVar => reduction::search_two_var_first(p)?,
            Strategy::OneVar => reduction::search_one_var(p, true)?.into_iter().next(),
            Strategy::Hybrid => Some(reduction::hybrid_search(p)?),
        };
        first.into_iter().collect()
    };

    if solutions.is_empty() {
        if strategy == Strategy::OneVar {
            eprintln!(
                "the one-variable search found no solution for prime {p} \
                 (not a conjecture event; try --strategy hybrid)"
            );
        } else {
            eprintln!("no solution found for prime {p} - this would contradict the conjecture");
        }
        return Ok(EXIT_NO_SOLUTION);
    }

    let rows = solutions
        .iter()
        .map(survey::solution_row)
        .collect::<esc_core::Result<Vec<_>>>()?;
    let mut stdout = io::stdout().lock();
    match args.format {
        OutputFormat::Table => {
            for s in &solutions {
                writeln!(stdout, "{s}")?;
            }
        }
        OutputFormat::Csv => {
            writeln!(stdout, "{}", esc_core::model::SolutionRow::CSV_HEADER)?;
            for row in &rows {
                writeln!(stdout, "{}", row.csv_row())?;
            }
        }
        OutputFormat::Json => {
            // serialized directly (not via serde_json::Value) because z can
            // exceed 64 bits
            #[derive(serde::Serialize)]
            struct SolveDoc<'a> {
                version: &'a str,
                p: u64,
                strategy: &'a str,
                solutions: &'a [esc_core::model::SolutionRow],
            }
            let doc = SolveDoc {
                version: VERSION,
                p: p.get(),
                strategy: strategy.name(),
                solutions: &rows,
            };
            writeln!(stdout, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Jsonl => {
            for row in &rows {
                writeln!(stdout, "{}", serde_json::to_string(row)?)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(p: u64, x: u64, y: u64, z: u128, format: OutputFormat) -> anyhow::Result<u8> {
    if p >= SEARCH_LIMIT {
        return Err(Error::MagnitudeExceeded {
            value: p,
            limit: SEARCH_LIMIT,
        }
        .into());
    }
    let solution = Solution::new(p, x, y, z)?;
    let report = structure::verify_all(&solution);
    let mut stdout = io::stdout().lock();
    match format {
        OutputFormat::Json => {
            #[derive(serde::Serialize)]
            struct VerifyDoc<'a> {
                version: &'a str,
                p: u64,
                x: u64,
                y: u64,
                z: u128,
                all_pass: bool,
                report: &'a structure::VerificationReport,
            }
            let doc = VerifyDoc {
                version: VERSION,
                p,
                x,
                y,
                z,
                all_pass: report.all_pass(),
                report: &report,
            };
            writeln!(stdout, "{}", serde_json::to_string(&doc)?)?;
        }
        _ => {
            writeln!(stdout, "{solution}")?;
            for c in &report.checks {
                writeln!(
                    stdout,
                    "{:<18} {}  {}",
                    c.check,
                    if c.pass { "pass" } else { "FAIL" },
                    c.witness
                )?;
            }
        }
    }
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    from: u64,
    to: u64,
    strategy: &str,
    all: bool,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    oracle_cap: u64,
    chunk_size: usize,
) -> anyhow::Result<u8> {
    let strategy = Strategy::from_str(strategy)?;
    check_oracle_cap(strategy, to, oracle_cap)?;
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow::anyhow!("failed to configure {n} worker threads: {e}"))?;
    }

    let records = survey::scan_chunked(from, to, strategy, all, chunk_size)?;
    let summary = survey::aggregate(&records);

    // Records go to the file when --out is given (summary on stdout),
    // otherwise records go to stdout and the summary to stderr.
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(&path)?);
            write_jsonl(&mut w, &records)?;
            w.flush()?;
            let mut stdout = io::stdout().lock();
            print_aggregate(&mut stdout, &summary, all)?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            write_jsonl(&mut stdout, &records)?;
            let mut stderr = io::stderr().lock();
            print_aggregate(&mut stderr, &summary, all)?;
        }
    }
    Ok(if summary.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_NO_SOLUTION
    })
}

fn write_jsonl(w: &mut impl Write, records: &[SurveyRecord]) -> anyhow::Result<()> {
    for r in records {
        writeln!(w, "{}", serde_json::to_string(r)?)?;
    }
    Ok(())
}

fn print_aggregate(w: &mut impl Write, agg: &survey::Aggregate, all: bool) -> anyhow::Result<()> {
    writeln!(w, "primes scanned:  {}", agg.primes_scanned)?;
    writeln!(w, "solutions total: {}", agg.solutions_total)?;
    writeln!(w, "type I:          {}", agg.type1)?;
    writeln!(w, "type II:         {}", agg.type2)?;
    writeln!(w, "eq5 satisfied:   {}", agg.eq5_satisfied)?;
    let decimal = agg.eq5_rate.decimal4().unwrap_or_else(|| "n/a".to_string());
    writeln!(w, "eq5 rate:        {} = {}", agg.eq5_rate, decimal)?;
    if !all {
        writeln!(
            w,
            "note: first solutions only; rates do not describe full solution sets"
        )?;
    }
    if agg.failures.is_empty() {
        writeln!(w, "failures:        0")?;
    } else {
        writeln!(
            w,
            "failures:        {} -> {:?}",
            agg.failures.len(),
            agg.failures
        )?;
    }
    Ok(())
}

fn cmd_stats(input: &PathBuf, format: OutputFormat) -> anyhow::Result<u8> {
    let file =
        File::open(input).map_err(|e| anyhow::anyhow!("cannot open {}: {e}", input.display()))?;
    let mut records = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SurveyRecord = serde_json::from_str(&line)
            .map_err(|e| anyhow::anyhow!("malformed record at line {}: {e}", idx + 1))?;
        records.push(record);
    }
    let agg = survey::aggregate(&records);
    let mut stdout = io::stdout().lock();
    match format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "version": VERSION,
                "aggregate": agg,
                "eq5_decimal": agg.eq5_rate.decimal4(),
            });
            writeln!(stdout, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            writeln!(
                stdout,
                "primes_scanned,solutions_total,type1,type2,eq5_satisfied,eq5_num,eq5_den,eq5_decimal,failures"
            )?;
            writeln!(
                stdout,
                "{},{},{},{},{},{},{},{},{}",
                agg.primes_scanned,
                agg.solutions_total,
                agg.type1,
                agg.type2,
                agg.eq5_satisfied,
                agg.eq5_rate.num,
                agg.eq5_rate.den,
                agg.eq5_rate.decimal4().unwrap_or_else(|| "n/a".to_string()),
                agg.failures.len()
            )?;
        }
        _ => print_aggregate(&mut stdout, &agg, true)?,
    }
    Ok(EXIT_OK)
}

fn cmd_figure2(from: u64, to: u64, out: Option<PathBuf>) -> anyhow::Result<u8> {
    let rows = survey::figure2_dataset(from, to)?;
    let mut w: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(&path)?)),
        None => Box::new(io::stdout().lock()),
    };
    writeln!(w, "{}", survey::Figure2Row::CSV_HEADER)?;
    for row in &rows {
        writeln!(w, "{}", row.csv_row())?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}
