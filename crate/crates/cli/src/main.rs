use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use compfid::measurement::{parse_tables, DEFAULT_ROW_TOLERANCE, STRICT_ROW_TOLERANCE};
use compfid::oracle::{generate_tables, parse_chi, sample_tables};
use compfid::report::{analyze, bounds_line, AnalysisOptions, ModelSelection, Provenance};
use compfid::target::parse_targets;
use compfid::{process_fidelity_bounds, summarize, Error, ErrorTableSet, FullProcessMatrix, GateSpec};

#[derive(Parser)]
#[command(name = "compfid", version, about = "Characterize a noisy gate from complementary Z/X error tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    WorstCase,
    Statistical,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Error-table JSON file, or `-` for stdin
    #[arg(long)]
    input: PathBuf,
    /// Require rows to sum to 1 within 1e-9 instead of 2e-3
    #[arg(long)]
    strict: bool,
    /// Round the summary to 3 decimals before building models
    #[arg(long)]
    rounded_summaries: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: summary, bounds, noise models and target fidelities
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Extra stabilizer targets
        #[arg(long)]
        targets: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        model: Model,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the complementary experiments for a process matrix
    Simulate {
        #[arg(long)]
        chi: PathBuf,
        /// identity, cnot or custom:<file>
        #[arg(long, default_value = "cnot")]
        gate: String,
        /// Replace exact probabilities by frequencies from this many shots per input
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Process-fidelity bounds only
    Bounds {
        #[command(flatten)]
        input: InputArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Infeasible(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &std::path::Path, e: io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| io_failure(&PathBuf::from("<stdout>"), e))
        }
    }
}

fn load_tables(args: &InputArgs) -> Result<ErrorTableSet, Failure> {
    let tol = if args.strict { STRICT_ROW_TOLERANCE } else { DEFAULT_ROW_TOLERANCE };
    Ok(parse_tables(&read_input(&args.input)?, tol)?)
}

fn parse_gate(spec: &str) -> Result<GateSpec, Failure> {
    match spec {
        "identity" => Ok(GateSpec::Identity),
        "cnot" => Ok(GateSpec::Cnot),
        other => match other.strip_prefix("custom:") {
            Some(path) => {
                let path = PathBuf::from(path);
                Ok(GateSpec::parse_custom(&read_input(&path)?)?)
            }
            None => {
                Err(Failure { code: 1, message: format!("unknown gate {other:?} (identity, cnot, custom:<file>)") })
            }
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { input, targets, model, format, out } => {
            let tables = load_tables(&input)?;
            let custom_targets = match &targets {
                Some(p) => parse_targets(&read_input(p)?)?,
                None => Vec::new(),
            };
            let models = match model {
                Model::WorstCase => ModelSelection::WorstCase,
                Model::Statistical => ModelSelection::Statistical,
                Model::Both => ModelSelection::Both,
            };
            let mut flags = Vec::new();
            if input.strict {
                flags.push("--strict".to_string());
            }
            if input.rounded_summaries {
                flags.push("--rounded-summaries".to_string());
            }
            if let Some(p) = &targets {
                flags.push(format!("--targets {}", p.display()));
            }
            let options = AnalysisOptions { rounded_summaries: input.rounded_summaries, models, custom_targets };
            let report = analyze(&tables, &options, Provenance::new(input.input.display().to_string(), flags))?;
            for m in &report.diagnostics {
                eprintln!("warning: {m}");
            }
            let text = match format {
                Format::Md => report.to_markdown(),
                Format::Json => report.to_json() + "\n",
            };
            write_output(out.as_ref(), &text)
        }
        Command::Simulate { chi, gate, shots, seed, out } => {
            let chi: FullProcessMatrix = parse_chi(&read_input(&chi)?)?;
            let gate = parse_gate(&gate)?;
            let mut tables = generate_tables(&chi, &gate)?;
            if let Some(shots) = shots {
                tables = sample_tables(&tables, shots, seed)?;
            }
            let text = serde_json::to_string_pretty(&tables.to_file())
                .map_err(|e| Failure { code: 1, message: e.to_string() })?;
            write_output(out.as_ref(), &(text + "\n"))
        }
        Command::Bounds { input } => {
            let tables = load_tables(&input)?;
            let mut summary = summarize(&tables);
            if input.rounded_summaries {
                summary = summary.rounded(3);
            }
            let b = process_fidelity_bounds(&summary);
            write_output(None, &format!("{}\nvacuous_lower: {}\n", bounds_line(&b), b.vacuous_lower))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
