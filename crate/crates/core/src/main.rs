use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use fiberjoin::admissible::{csc_solve, data_from_spec, extremal_polynomial, AdmissibleError};
use fiberjoin::classify::document::{DocumentError, SpecDocument};
use fiberjoin::classify::emit::{self, Format};
use fiberjoin::classify::survey::DEFAULT_CAP;
use fiberjoin::classify::{classify, survey, ClassifyError, SurveyBounds, SurveyError};
use fiberjoin::einstein::se_check;
use fiberjoin::model::FiberJoinSpec;
use fiberjoin::topology::InvariantReport;

/// Exact invariants and existence verdicts for Sasaki fiber joins.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Topological invariants: c1, colinearity, Euler class, p1, spin, cohomology.
    Invariants(Input),
    /// Run every classification rule and report the verdicts.
    Classify(Input),
    /// Solve the two-factor CSC equations on the admissible data.
    Csc(Input),
    /// Compute the extremal polynomial and test its positivity.
    Extremal(Input),
    /// Sasaki-Einstein obstructions and counts.
    Se(Input),
    /// Classify every two-block K over the document's base and split.
    Survey {
        #[command(flatten)]
        input: Input,
        /// Smallest matrix entry.
        #[arg(long, default_value_t = 1)]
        min_entry: i64,
        /// Largest matrix entry.
        #[arg(long)]
        max_entry: i64,
        /// Refuse surveys enumerating more block pairs than this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

#[derive(clap::Args)]
struct Input {
    /// Spec document path; standard input when omitted or `-`.
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

enum Failure {
    InvalidSpec(String),
    Degenerate(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::InvalidSpec(e.to_string())
    }
}

impl From<AdmissibleError> for Failure {
    fn from(e: AdmissibleError) -> Self {
        match e {
            AdmissibleError::NotAdmissible(_) | AdmissibleError::WrongShape(_) | AdmissibleError::DegenerateFactor(_) => {
                Failure::InvalidSpec(e.to_string())
            }
            _ => Failure::Degenerate(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Admissible(a) => Failure::Degenerate(a.to_string()),
        }
    }
}

impl From<SurveyError> for Failure {
    fn from(e: SurveyError) -> Self {
        match e {
            SurveyError::Classify(c) => c.into(),
            other => Failure::InvalidSpec(other.to_string()),
        }
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    let mut text = String::new();
    match &input.path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::InvalidSpec(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::InvalidSpec(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_document(input: &Input) -> Result<SpecDocument, Failure> {
    Ok(SpecDocument::parse(&read_input(input)?)?)
}

fn read_spec(input: &Input) -> Result<FiberJoinSpec, Failure> {
    read_document(input)?.to_spec().map_err(|e| Failure::InvalidSpec(e.to_string()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Invariants(input) => {
            let spec = read_spec(&input)?;
            pretty(&serde_json::to_value(InvariantReport::of(&spec)).expect("report serializes"))
        }
        Command::Classify(input) => {
            let spec = read_spec(&input)?;
            let verdicts = classify(&spec)?;
            pretty(&emit::classification(&InvariantReport::of(&spec), &verdicts))
        }
        Command::Csc(input) => {
            let spec = read_spec(&input)?;
            let data = data_from_spec(&spec)?;
            pretty(&emit::csc_result(&data, &csc_solve(&data)?))
        }
        Command::Extremal(input) => {
            let spec = read_spec(&input)?;
            let data = data_from_spec(&spec)?;
            pretty(&emit::extremal_result(&data, &extremal_polynomial(&data)?))
        }
        Command::Se(input) => {
            let spec = read_spec(&input)?;
            pretty(&serde_json::to_value(se_check(&spec)).expect("verdict serializes"))
        }
        Command::Survey { input, min_entry, max_entry, cap, format } => {
            let doc = read_document(&input)?;
            let split = doc.split.map_or((0, 0), |[a, b]| (a, b));
            let bounds = SurveyBounds { min: min_entry, max: max_entry };
            let report = survey(&doc.base, split, bounds, cap)?;
            let format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Csv => Format::Csv,
            };
            emit::survey(&report, format)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::InvalidSpec(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
