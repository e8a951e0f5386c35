use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use varcoalg::commands::{self, Format};
use varcoalg::coalg::Verdict;
use varcoalg::Error;

#[derive(Parser)]
#[command(name = "varcoalg", version, about = "Solve and compare non-well-founded set equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a system and print the depth-N approximation of one variable.
    Solve {
        /// Equation file.
        file: PathBuf,
        /// Variable to expand.
        #[arg(long)]
        var: String,
        /// Expansion depth n of π_n.
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Set)]
        format: OutputFormat,
    },
    /// Decide whether two variables of a system denote the same set.
    Eq {
        /// Equation file.
        file: PathBuf,
        v1: String,
        v2: String,
    },
    /// Run a brute-force check: prop3 or lemma31.
    Check { name: String },
    /// Print a worked example.
    Demo {
        #[command(subcommand)]
        kind: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// The stream x = <1; x> beside its tuple characterization.
    Stream {
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Set,
    Json,
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_resource_guard() { 3 } else { 2 })
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            var,
            depth,
            format,
        } => {
            let src = read(&file)?;
            let format = match format {
                OutputFormat::Set => Format::Set,
                OutputFormat::Json => Format::Json,
            };
            let out = commands::cmd_solve(&src, &var, depth, format).map_err(|e| fail(&e))?;
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq { file, v1, v2 } => {
            let src = read(&file)?;
            let verdict = commands::cmd_eq(&src, &v1, &v2).map_err(|e| fail(&e))?;
            println!("{}", commands::render_verdict(verdict));
            Ok(match verdict {
                Verdict::Bisimilar => ExitCode::SUCCESS,
                Verdict::Distinct { .. } => ExitCode::from(1),
            })
        }
        Command::Check { name } => report(commands::cmd_check(&name)),
        Command::Demo {
            kind: Demo::Stream { depth },
        } => report(commands::cmd_demo_stream(depth)),
    }
}

fn report(r: varcoalg::Result<commands::Report>) -> Result<ExitCode, ExitCode> {
    let r = r.map_err(|e| fail(&e))?;
    println!("{}", r.text);
    Ok(if r.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) | Err(code) => code,
    }
}
