use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dimrep_cli::{
    parse_model_with_dependent, render, run_analysis, AnalysisOptions, Format, RenderOptions,
};

#[derive(Parser)]
#[command(
    name = "dimrep",
    version,
    about = "Exact dimensional analysis: enumerate every representation of a relationship \
             as a product of powers and dimensionless groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a model file and print the equation system.
    Analyze {
        /// Model file (see the README for the format).
        file: PathBuf,

        /// Use this variable as the dependent one, overriding the file's
        /// `[dependent]` section.
        #[arg(long, value_name = "NAME")]
        dependent: Option<String>,

        /// Raise every equation to the least common left-hand exponent.
        #[arg(long)]
        normalize: bool,

        /// Apply the symmetry reduction declared in the model's
        /// `[symmetry]` section.
        #[arg(long)]
        reduce: bool,

        /// Output format.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,

        /// Write the report to this path (atomically) instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,

        /// Render function symbols in scalar (measure-level) form.
        #[arg(long)]
        scalar: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Structured => Format::Structured,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            dependent,
            normalize,
            reduce,
            format,
            out,
            scalar,
        } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::FAILURE;
                }
            };
            let model = match parse_model_with_dependent(&text, dependent.as_deref()) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    return ExitCode::FAILURE;
                }
            };
            let report = match run_analysis(&model, &AnalysisOptions { normalize, reduce }) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            let document = match render(
                &report,
                &RenderOptions {
                    format: format.into(),
                    scalar,
                },
            ) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            match out {
                None => {
                    print!("{document}");
                    ExitCode::SUCCESS
                }
                Some(path) => match write_atomic(&path, document.as_bytes()) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        ExitCode::FAILURE
                    }
                },
            }
        }
    }
}

/// Write-then-rename so readers never observe a half-written report.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
