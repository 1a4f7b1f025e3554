mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::{RunReport, EXIT_USAGE};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "brachy", version, about = "Brachymorphism workbench")]
pub struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Worker threads for parallel subcommands.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulaName {
    #[value(name = "S_perp")]
    SPerp,
    #[value(name = "S_comm")]
    SComm,
    #[value(name = "S_div")]
    SDiv,
}

impl FormulaName {
    fn as_str(self) -> &'static str {
        match self {
            FormulaName::SPerp => "S_perp",
            FormulaName::SComm => "S_comm",
            FormulaName::SDiv => "S_div",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Semiring,
    Nearring,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureArg {
    Table1,
    Table2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify polynomial identities.
    Identities {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
    /// Normal form of x^m y - y x^m in the Weyl algebra.
    Weyl {
        #[arg(long)]
        m: u32,
    },
    /// Validate a structure file and profile its elements.
    Check { path: PathBuf },
    /// Build a structure from a zoo expression.
    Build {
        #[arg(long)]
        spec: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Enumerate brachymorphisms and audit additivity.
    Morphisms {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Certify addable elements, or summable pairs with --pairs.
    Certify {
        path: PathBuf,
        #[arg(long)]
        pairs: bool,
    },
    /// Check a summability formula at a pair.
    Formula {
        #[arg(long)]
        name: FormulaName,
        #[arg(long = "struct", value_name = "PATH")]
        structure: PathBuf,
        #[arg(long, value_name = "i,j")]
        tuple: String,
        #[arg(long, value_name = "DIR")]
        battery: Option<PathBuf>,
    },
    /// Search for a structure with a non-additive brachy-automorphism.
    Search {
        #[arg(long)]
        class: ClassArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Verify a pinned fixture.
    Fixture { name: FixtureArg },
    /// Verify the symbolic matrix identities.
    Matrix {
        #[arg(long)]
        nmax: usize,
    },
    /// Audit det(1 + a) = 1 + det(a) over generated matrix rings.
    Detaudit {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// Decide whether a polynomial is a brachynomial.
    Brachynomial {
        #[arg(long)]
        poly: String,
    },
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let echo: Vec<String> =
        args[1..].iter().map(|a| if a.contains(char::is_whitespace) { format!("{a:?}") } else { a.clone() }).collect();
    let mut report = RunReport::new(echo.join(" "));
    if let Some(n) = cli.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            report.item("error", "--jobs needs a positive worker count");
            report.fail(EXIT_USAGE);
        }
    }
    if report.exit_code == 0 {
        commands::dispatch(&cli.command, &mut report);
    }
    report.set_wall_time(start.elapsed());
    if let Some(path) = &cli.report {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, json + "\n") {
            report.item("error", format!("cannot write report {}: {e}", path.display()));
            report.fail(EXIT_USAGE);
        }
    }
    print!("{}", report.render());
    ExitCode::from(report.exit_code as u8)
}
