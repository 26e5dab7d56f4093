use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use asg_core::code::weight;
use asg_core::combinatorics::catalan;
use asg_core::dual::dual_low_weight_scan;
use asg_core::io::{format_generator, parse_generator};
use asg_core::lemmas::{distance_witness, theorem_distance};
use asg_core::weights::{min_distance_exhaustive, weight_enumerator, SearchOptions, WeightReport};
use asg_core::{GaloisField, LinearCode, Variant, DEFAULT_BUDGET};
use asg_verifier::tables::printed_row;
use asg_verifier::{
    emit, run_lemma_checks, run_verify_tables, table_csv, Format, Result, SuiteParams, VerificationReport,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "asg", version, about = "Affine symplectic Grassmann codes: construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value = "symplectic")]
    variant: Variant,
    /// Read the generator matrix from a file instead of building it.
    #[arg(long, conflicts_with_all = ["ell", "q"])]
    generator: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct RunArgs {
    /// Operation budget; exhaustive work above it is skipped with an error.
    #[arg(long, env = "ASG_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension and minimum distance for (ℓ, q).
    Params {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a generator matrix file.
    Gen {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Minimum distance as a JSON weight report.
    Mindist {
        #[command(flatten)]
        code: CodeArgs,
        /// Search every projective line instead of reporting the witness weight.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Full weight distribution as a JSON weight report.
    Wenum {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Smallest dual weight up to `wmax` (at most 4).
    Dualmin {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute the parameter tables; `--format csv` prints the table rows.
    VerifyTables {
        #[arg(long)]
        ell: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7,8,9")]
        q_list: Vec<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named check suite, or `all`.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, value_delimiter = ',')]
        ell: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        q_list: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-emit a saved JSON report in another format.
    Report {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn field(q: u64) -> Result<Arc<GaloisField>> {
    Ok(Arc::new(GaloisField::from_order(q)?))
}

fn load_code(args: &CodeArgs, budget: u128) -> Result<LinearCode> {
    if let Some(path) = &args.generator {
        return Ok(parse_generator(&fs::read_to_string(path)?)?);
    }
    let (Some(ell), Some(q)) = (args.ell, args.q) else {
        return Err(asg_core::Error::ShapeMismatch("give --ell and --q, or --generator".into()).into());
    };
    Ok(LinearCode::build(ell, field(q)?, args.variant, budget)?)
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn emit_report(report: &VerificationReport, output: &OutputArgs) -> Result<bool> {
    let format: Format = output.format.parse()?;
    write_out(&emit(report, format)?, output.out.as_ref())?;
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Params { ell, q, run } => {
            let code = LinearCode::build(ell, field(q)?, Variant::Symplectic, run.budget)?;
            let printed = printed_row(ell, code.field().order());
            print_json(&json!({
                "ell": ell,
                "q": q,
                "n": code.len(),
                "k": code.dimension(),
                "catalan": catalan(ell as u64 + 1),
                "d_theorem": theorem_distance(ell as u64, q),
                "printed_table": printed.map(|p| json!({"n": p.n, "k": p.k, "d": p.d})),
            }))?;
            Ok(true)
        }
        Command::Gen { code, out, run } => {
            let c = load_code(&code, run.budget)?;
            write_out(&format_generator(&c), out.as_ref())?;
            Ok(true)
        }
        Command::Mindist { code, exhaustive, run } => {
            let c = load_code(&code, run.budget)?;
            let report = if exhaustive {
                min_distance_exhaustive(&c, SearchOptions { workers: run.workers, budget: run.budget })?
            } else {
                witness_report(&c)?
            };
            print_json(&report)?;
            Ok(true)
        }
        Command::Wenum { code, run } => {
            let c = load_code(&code, run.budget)?;
            print_json(&weight_enumerator(&c, SearchOptions { workers: run.workers, budget: run.budget })?)?;
            Ok(true)
        }
        Command::Dualmin { code, wmax, run } => {
            let c = load_code(&code, run.budget)?;
            let scan = dual_low_weight_scan(&c, wmax, run.budget)?;
            print_json(&json!({
                "ell": c.ell(),
                "q": c.field().order(),
                "n": c.len(),
                "wmax": scan.wmax,
                "min_weight": scan.min_weight,
                "witness": scan.witness.map(|w| json!({"positions": w.positions, "coefficients": w.coefficients})),
            }))?;
            Ok(true)
        }
        Command::VerifyTables { ell, q_list, run, output } => {
            let result = run_verify_tables(ell, &q_list, run.budget, run.workers)?;
            if output.format == "csv" {
                write_out(&table_csv(&result.rows)?, output.out.as_ref())?;
                Ok(result.report.passed())
            } else {
                emit_report(&result.report, &output)
            }
        }
        Command::Check { suite, ell, q_list, seed, samples, run, output } => {
            let params = SuiteParams { ell, q_list, budget: run.budget, workers: run.workers, seed, samples };
            emit_report(&run_lemma_checks(&suite, &params)?, &output)
        }
        Command::Report { input, output } => {
            let text = match input {
                Some(path) => fs::read_to_string(path)?,
                None => std::io::read_to_string(std::io::stdin())?,
            };
            let report: VerificationReport = serde_json::from_str(&text)?;
            emit_report(&report, &output)
        }
    }
}

/// Non-exhaustive report: the weight of `det_{12,12} + det_{1,2}` (or `X_{1,1}` for ℓ = 1).
fn witness_report(code: &LinearCode) -> Result<WeightReport> {
    let started = std::time::Instant::now();
    let f = code.field().clone();
    let g = if code.ell() >= 2 {
        distance_witness(f.clone(), code.ell())?
    } else {
        asg_core::MinorCombination::minor(f.clone(), 1, &[1], &[1], 1)?
    };
    let msg = code.message(&g)?;
    let d = weight(&code.encode_message(&msg)) as u64;
    Ok(WeightReport {
        ell: code.ell(),
        q: f.order(),
        n: code.len(),
        k: code.dimension(),
        d,
        witness: msg,
        histogram: Default::default(),
        exhaustive: false,
        enumerated: 1,
        workers: 1,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
