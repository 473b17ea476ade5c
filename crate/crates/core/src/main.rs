use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polymin::pipeline::{self, PipelineConfig};
use polymin::Error;

#[derive(Parser)]
#[command(
    name = "polymin",
    version,
    about = "Spatial model checking and minimisation of polyhedral models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimise a model; writes the classes and minimal-model files.
    Minimize {
        model: PathBuf,
        #[arg(short, long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write the concrete LTS and its quotient as .aut files.
        #[arg(long)]
        emit_aut: bool,
        #[arg(long)]
        no_classes: bool,
        #[arg(long)]
        no_minmodel: bool,
        /// Drop tau self-loops from the quotient LTS.
        #[arg(long)]
        trim_self_tau: bool,
        /// Cross-check the minimisation before writing anything.
        #[arg(long)]
        self_check: bool,
    },
    /// Evaluate the save directives of a script on a model.
    Check {
        script: PathBuf,
        /// Model file; defaults to the script's `load model` line.
        #[arg(short, long)]
        model: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Evaluate on the minimal model and map the answers back.
        #[arg(long)]
        on_minimal: bool,
        #[arg(long)]
        self_check: bool,
        /// Treat atoms missing from the model as an error.
        #[arg(long)]
        strict_atoms: bool,
    },
    /// Write a random model file.
    GenRandom {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the concrete LTS of a model in .aut format.
    ExportAut {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dump the cell poset of a model as JSON.
    Poset {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> polymin::Result<()> {
    match cli.command {
        Command::Minimize {
            model,
            out_dir,
            emit_aut,
            no_classes,
            no_minmodel,
            trim_self_tau,
            self_check,
        } => {
            let cfg = PipelineConfig {
                input: Some(model),
                out_dir,
                emit_aut,
                emit_classes: !no_classes,
                emit_minmodel: !no_minmodel,
                trim_self_tau,
                self_check,
                ..PipelineConfig::default()
            };
            for path in pipeline::cmd_minimize(&cfg)? {
                println!("{}", path.display());
            }
        }
        Command::Check {
            script,
            model,
            output,
            out_dir,
            on_minimal,
            self_check,
            strict_atoms,
        } => {
            let cfg = PipelineConfig {
                input: model,
                script: Some(script),
                output,
                out_dir,
                on_minimal,
                self_check,
                strict_atoms,
                ..PipelineConfig::default()
            };
            let (path, _) = pipeline::cmd_check(&cfg)?;
            println!("{}", path.display());
        }
        Command::GenRandom {
            seed,
            vertices,
            max_dim,
            atoms,
            output,
        } => pipeline::cmd_gen_random(seed, vertices, max_dim, atoms, &output)?,
        Command::ExportAut { model, output } => {
            let cfg = PipelineConfig {
                input: Some(model),
                output,
                ..PipelineConfig::default()
            };
            println!("{}", pipeline::cmd_export_aut(&cfg)?.display());
        }
        Command::Poset { model, output } => {
            let cfg = PipelineConfig {
                input: Some(model),
                output,
                ..PipelineConfig::default()
            };
            println!("{}", pipeline::cmd_poset(&cfg)?.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::SelfCheck(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
