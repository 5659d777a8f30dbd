use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symunion::invariant::JonesOptions;
use symunion_cli::commands::{self, Failure, Format, InvariantFlags, Outcome, VerifyFlags};
use symunion_cli::corpus;

#[derive(Parser)]
#[command(name = "symunion", version, about = "Symmetric unions with several tangle regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Doc,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Doc => Format::Doc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the knot of a spec file and write its PD code.
    Build {
        /// Spec file, or `corpus:NAME`.
        spec: String,
        /// Output file (stdout when omitted).
        out: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Alexander, Conway and Jones polynomials of a PD file.
    Invariants {
        /// PD text or PD document, or `corpus:NAME`.
        pd: String,
        #[arg(long)]
        alexander: bool,
        #[arg(long)]
        conway: bool,
        #[arg(long)]
        jones: bool,
        /// Largest boundary width the Jones evaluator may reach.
        #[arg(long, default_value_t = 16)]
        max_width: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Check both claims of the construction, the lemma and the fraction
    /// formula for a spec.
    Verify {
        spec: String,
        #[arg(long)]
        theorem1: bool,
        #[arg(long)]
        theorem2: bool,
        #[arg(long)]
        lemma: bool,
        #[arg(long)]
        fraction: bool,
        /// Include wall times in the reports.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// List the bundled fixtures, or print one.
    Corpus { name: Option<String> },
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Build { spec, out, format } => {
            let text = commands::build(&commands::load(&spec)?, format.into())?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure {
                        code: commands::EXIT_INPUT,
                        message: format!("{path}: {e}"),
                    })?;
                    Ok(Outcome {
                        stdout: String::new(),
                        code: commands::EXIT_OK,
                    })
                }
                None => Ok(Outcome {
                    stdout: text,
                    code: commands::EXIT_OK,
                }),
            }
        }
        Command::Invariants {
            pd,
            alexander,
            conway,
            jones,
            max_width,
            format,
        } => {
            let flags = InvariantFlags {
                alexander,
                conway,
                jones,
            };
            let opts = JonesOptions {
                max_width,
                ..JonesOptions::default()
            };
            commands::invariants(&commands::load(&pd)?, flags, &opts, format.into())
        }
        Command::Verify {
            spec,
            theorem1,
            theorem2,
            lemma,
            fraction,
            timing,
            format,
        } => {
            let flags = VerifyFlags {
                theorem1,
                theorem2,
                lemma,
                fraction,
                timing,
            };
            commands::verify(&commands::load(&spec)?, flags, format.into())
        }
        Command::Corpus { name } => {
            let stdout = match name {
                Some(n) => commands::load(&format!("corpus:{n}"))?,
                None => corpus::FIXTURES
                    .iter()
                    .map(|f| format!("{}\t{:?}\n", f.name, f.kind))
                    .collect(),
            };
            Ok(Outcome {
                stdout,
                code: commands::EXIT_OK,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
