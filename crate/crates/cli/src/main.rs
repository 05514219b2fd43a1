use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use admgrad::exactlin::{parse_rational, Rational};
use admgrad::{Error, Result};
use admgrad_cli::commands::{self, error_code, error_message, status_code, Outcome};
use admgrad_cli::problem::{self, parse_partition};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "admgrad", version, about = "Admissible gradings and pairs for nilpotent elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem description file.
    #[arg(long)]
    spec: PathBuf,
    /// Print nothing; report through the exit code only.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check admissibility of the grading and of the pair in the problem file.
    Check {
        #[command(flatten)]
        common: Common,
        /// Also require the grading to be b-optimal.
        #[arg(long)]
        b: Option<String>,
    },
    /// Construct an admissible pair.
    Construct {
        #[command(flatten)]
        common: Common,
        /// Search for an optimal pair (g_<=-a, n) instead.
        #[arg(long)]
        optimal: bool,
    },
    /// Certify a path of gradings to the Dynkin grading.
    Connect {
        #[command(flatten)]
        common: Common,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an equivalence chain from the pair to a fixed endpoint.
    Chain {
        #[command(flatten)]
        common: Common,
        /// Chain through the b-optimal endpoint, or the two-level one at b.
        #[arg(long)]
        b: Option<String>,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the centraliser of an sl2-triple, from the partition.
    Classify {
        /// For example "so 12".
        #[arg(long)]
        algebra: String,
        /// For example "5,3,3,1".
        #[arg(long)]
        partition: String,
        #[arg(long)]
        quiet: bool,
    },
    /// Re-verify a certificate file.
    Verify {
        #[arg(long)]
        verify: PathBuf,
        #[arg(long)]
        quiet: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn rational(s: &Option<String>) -> Result<Option<Rational>> {
    s.as_deref().map(parse_rational).transpose()
}

fn run(command: Command) -> Result<(Outcome, bool, Option<PathBuf>)> {
    Ok(match command {
        Command::Check { common, b } => {
            let p = problem::load(&read(&common.spec)?)?;
            (commands::cmd_check(&p, rational(&b)?.as_ref())?, common.quiet, None)
        }
        Command::Construct { common, optimal } => {
            let p = problem::load(&read(&common.spec)?)?;
            (commands::cmd_construct(&p, optimal)?, common.quiet, None)
        }
        Command::Connect { common, out } => {
            let p = problem::load(&read(&common.spec)?)?;
            (commands::cmd_connect(&p)?, common.quiet, out)
        }
        Command::Chain { common, b, out } => {
            let p = problem::load(&read(&common.spec)?)?;
            (commands::cmd_chain(&p, rational(&b)?.as_ref())?, common.quiet, out)
        }
        Command::Classify { algebra, partition, quiet } => {
            (commands::cmd_classify(algebra.parse()?, &parse_partition(&partition)?)?, quiet, None)
        }
        Command::Verify { verify, quiet } => (commands::cmd_verify(&read(&verify)?)?, quiet, None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, quiet, out)) => {
            if let (Some(path), Some(cert)) = (out, &outcome.certificate) {
                if let Err(e) = fs::write(&path, cert) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if !quiet {
                print!("{}", outcome.report.render());
            }
            ExitCode::from(status_code(outcome.report.status) as u8)
        }
        Err(e) => {
            eprintln!("{}", error_message(&e));
            ExitCode::from(error_code(&e) as u8)
        }
    }
}
