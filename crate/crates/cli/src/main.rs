use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sandwich_cli::{load_config, run, Overrides, Suite, SuiteVerdict};

/// Exhaustive verification of the sandwich classification on finite
/// Chevalley groups over Z/m.
#[derive(Parser)]
#[command(name = "sandwich", version)]
struct Cli {
    #[command(subcommand)]
    suite: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Root system axioms for every type up to rank 8.
    Roots,
    /// Relative root system lemmas and foldings.
    Relroots,
    /// Group tables, root-element calculus and centralizer lemmas.
    Group,
    /// Sandwich classification, levels and structure theorems.
    Sandwich,
    /// Every suite in order.
    All,
}

#[derive(Args)]
struct Opts {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// SL2, SL3, SL4 or Sp4.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Modulus m of the base ring Z/m.
    #[arg(long = "mod", global = true)]
    modulus: Option<u32>,
    /// Block composition such as 1,2 for SL_n, or borel, line, siegel for Sp4.
    #[arg(long, global = true)]
    blocks: Option<String>,
    /// Largest group order to tabulate.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Where to write the JSON report; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Mark the model as a negative control.
    #[arg(long, global = true)]
    expect_violation: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let suite = match cli.suite {
        Command::Roots => Suite::Roots,
        Command::Relroots => Suite::Relroots,
        Command::Group => Suite::Group,
        Command::Sandwich => Suite::Sandwich,
        Command::All => Suite::All,
    };
    let bytes = match cli.opts.config.as_ref().map(std::fs::read).transpose() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read config: {e}");
            return ExitCode::from(2);
        }
    };
    let overrides = Overrides {
        suite: Some(suite),
        model: cli.opts.model,
        modulus: cli.opts.modulus,
        blocks: cli.opts.blocks,
        cap: cli.opts.cap,
        jobs: cli.opts.jobs,
        out: cli.opts.out,
        expect_violation: cli.opts.expect_violation,
    };
    let config = match load_config(bytes.as_deref(), overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if config.jobs > 0 {
        sandwich_core::par::configure_threads(config.jobs);
    }
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let json = report.to_json();
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} checks, {} passed, {} failed, {} expected exceptions, {} informational",
        if report.verdict == SuiteVerdict::Pass { "pass" } else { "fail" },
        s.checks,
        s.passed,
        s.failed,
        s.expected_exceptions,
        s.informational
    );
    if report.verdict == SuiteVerdict::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
