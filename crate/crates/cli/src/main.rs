//! `grcat`: command-line front end for computations with finite categorical groups.
//!
//! Exit codes: 0 for an answer, 1 for invalid input, 2 for a mathematical
//! negative (non-zero obstruction, no extensions, failed realization).

mod commands;
mod files;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grcat::Caps;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}{}: {message}", line.map(|l| format!(" line {l}")).unwrap_or_default())]
    Input { file: String, line: Option<usize>, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn input(path: &Path, line: Option<usize>, message: impl std::fmt::Display) -> Self {
        CliError::Input { file: path.display().to_string(), line, message: message.to_string() }
    }

    /// Prefixes the message with the field holding an inline object.
    pub fn context(self, field: &str) -> Self {
        match self {
            CliError::Input { file, line, message } => CliError::Input { file, line, message: format!("{field}.{message}") },
            other => other,
        }
    }
}

/// A report and whether it is a negative answer.
pub struct Outcome {
    report: Value,
    negative: bool,
}

impl Outcome {
    pub fn answer(report: Value) -> Self {
        Outcome { report, negative: false }
    }

    pub fn negative(report: Value) -> Self {
        Outcome { report, negative: true }
    }
}

#[derive(Parser)]
#[command(name = "grcat", version, about = "Finite categorical groups: obstructions, classification, extensions")]
struct Cli {
    /// Cap on group orders for automorphism searches and cochain complexes.
    #[arg(long, global = true, default_value_t = Caps::default().group_order)]
    cap: usize,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group files.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Invariant factors and representatives of H^n(Π, A).
    Cohomology {
        module: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Gr-functors of a given type (φ, f).
    Functor {
        #[command(subcommand)]
        command: FunctorCommand,
    },
    /// Abstract kernels (Π, G, ψ).
    Kernel {
        #[command(subcommand)]
        command: KernelCommand,
    },
    /// Group extensions.
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Braided types and abelian cohomology.
    Braided {
        #[command(subcommand)]
        command: BraidedCommand,
    },
    /// Skeletal and braided type files.
    Grtype {
        #[command(subcommand)]
        command: GrtypeCommand,
    },
    /// Strict model of a type from a realization (G, ψ).
    Strictify {
        grtype: PathBuf,
        #[arg(long)]
        realization: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Validate a group table.
    Check { file: PathBuf },
    /// Automorphisms, inner and outer automorphisms, center.
    Aut { file: PathBuf },
}

#[derive(Subcommand)]
enum FunctorCommand {
    /// The obstruction cocycle φ*h′ − f_*h and its class.
    Obstruction { file: PathBuf },
    /// Homotopy classes of functors of the given type.
    Classify { file: PathBuf },
}

#[derive(Subcommand)]
enum KernelCommand {
    /// The obstruction class in H³(Π, ZG).
    Obstruction { file: PathBuf },
}

#[derive(Subcommand)]
enum ExtCommand {
    /// All extensions inducing ψ, one per congruence class.
    Enumerate { file: PathBuf },
}

#[derive(Subcommand)]
enum BraidedCommand {
    /// Compare H³_ab(M, N) with quadratic maps M → N through the trace.
    Emcheck {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum GrtypeCommand {
    /// Check the pentagon, and the hexagons when a braiding is given.
    Check { file: PathBuf },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let caps = Caps { group_order: cli.cap, ..Caps::default() };
    match &cli.command {
        Command::Group { command: GroupCommand::Check { file } } => commands::group_check(file),
        Command::Group { command: GroupCommand::Aut { file } } => commands::group_aut(file, &caps),
        Command::Cohomology { module, degree } => commands::cohomology(module, *degree, &caps),
        Command::Functor { command: FunctorCommand::Obstruction { file } } => commands::functor_obstruction(file, &caps),
        Command::Functor { command: FunctorCommand::Classify { file } } => commands::functor_classify(file, &caps),
        Command::Kernel { command: KernelCommand::Obstruction { file } } => commands::kernel_obstruction(file, &caps),
        Command::Ext { command: ExtCommand::Enumerate { file } } => commands::ext_enumerate(file, &caps),
        Command::Braided { command: BraidedCommand::Emcheck { m, n } } => commands::braided_emcheck(m, n, &caps),
        Command::Grtype { command: GrtypeCommand::Check { file } } => commands::grtype_check(file),
        Command::Strictify { grtype, realization } => commands::strictify_cmd(grtype, realization, &caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports are valid JSON"));
            } else {
                print!("{}", report::render_text(&outcome.report));
            }
            ExitCode::from(if outcome.negative { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
