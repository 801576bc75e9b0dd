//! Command-line front end: `bass solve` and `bass convert`.
//!
//! Output goes to the given writers so the whole front end can be driven from tests.
//! Exit status: 0 on success, 1 on input or usage errors, 2 when a resource limit aborts the
//! run (rewrite budget, oracle size cap), 3 when `--oracle` finds a disagreement.

use crate::encoding::Interpretation;
use crate::formula::{self, Adf, FormulaError, DEFAULT_NODE_BUDGET};
use crate::oracle::{self, OracleError};
use crate::semantics::{Semantics, SymbolicAdf};
use crate::solutions::{self, SampleSeed};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable overriding the AST budget of the bnet connective rewrite.
pub const NODE_BUDGET_ENV: &str = "BASS_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "bass", version, about = "Symbolic solver for abstract dialectical frameworks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the solutions of one semantics.
    Solve(SolveArgs),
    /// Translate between the ADF and bnet formats.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Adf,
    Bnet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Adm,
    Com,
    Grd,
    Prf,
    #[value(name = "2v")]
    TwoValued,
    Stb,
}

impl From<SemanticsArg> for Semantics {
    fn from(value: SemanticsArg) -> Self {
        match value {
            SemanticsArg::Adm => Semantics::Admissible,
            SemanticsArg::Com => Semantics::Complete,
            SemanticsArg::Grd => Semantics::Grounded,
            SemanticsArg::Prf => Semantics::Preferred,
            SemanticsArg::TwoValued => Semantics::TwoValued,
            SemanticsArg::Stb => Semantics::Stable,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("action").required(true).args(["count", "enumerate", "sample"])))]
pub struct SolveArgs {
    /// Input file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub sem: SemanticsArg,
    /// Print the number of solutions.
    #[arg(long)]
    pub count: bool,
    /// Print the solutions, one per line.
    #[arg(long)]
    pub enumerate: bool,
    /// Stop enumerating after this many solutions.
    #[arg(long, requires = "enumerate", value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: Option<u64>,
    /// Draw this many uniformly distributed solutions.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub sample: Option<u64>,
    #[arg(long, requires = "sample", default_value_t = 0)]
    pub seed: u64,
    /// Input format; guessed from the file extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long)]
    pub json: bool,
    /// Disable the free-input shortcut for preferred and stable semantics.
    #[arg(long)]
    pub no_input_restriction: bool,
    /// Cross-check the result against the brute-force oracle.
    #[arg(long, hide = true)]
    pub oracle: bool,
    /// Report the elapsed time on standard error.
    #[arg(long)]
    pub time: bool,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    pub input: Option<PathBuf>,
    /// Input format; guessed from the file extension when absent.
    #[arg(long, visible_alias = "from", value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long, value_enum)]
    pub to: InputFormat,
}

/// What to do with the solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Count,
    Enumerate { limit: Option<usize> },
    Sample { n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// One `solve` invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub format: Option<InputFormat>,
    pub semantics: Semantics,
    pub action: Action,
    pub restrict_inputs: bool,
    pub oracle: bool,
    pub timing: bool,
    pub output: OutputFormat,
}

impl From<&SolveArgs> for RunConfig {
    fn from(args: &SolveArgs) -> Self {
        let action = if let Some(n) = args.sample {
            Action::Sample {
                n: n as usize,
                seed: args.seed,
            }
        } else if args.enumerate {
            Action::Enumerate {
                limit: args.limit.map(|l| l as usize),
            }
        } else {
            Action::Count
        };
        RunConfig {
            input: args.input.clone(),
            format: args.format,
            semantics: args.sem.into(),
            action,
            restrict_inputs: !args.no_input_restriction,
            oracle: args.oracle,
            timing: args.time,
            output: if args.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(FormulaError),
    #[error("{0}")]
    ResourceLimit(String),
    #[error("invalid {NODE_BUDGET_ENV} value `{0}`")]
    Budget(String),
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ResourceLimit(_) => 2,
            CliError::OracleMismatch(_) => 3,
            _ => 1,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(error: FormulaError) -> Self {
        match error {
            FormulaError::SizeLimit { .. } => CliError::ResourceLimit(error.to_string()),
            other => CliError::Input(other),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(error: OracleError) -> Self {
        match error {
            OracleError::CapExceeded { .. } => CliError::ResourceLimit(error.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io {
                path: "standard input".into(),
                source,
            })?;
        }
    }
    Ok(text)
}

fn detect_format(path: Option<&Path>, text: &str) -> InputFormat {
    let extension = path.and_then(|p| p.extension()).and_then(|e| e.to_str());
    match extension {
        Some(e) if e.eq_ignore_ascii_case("bnet") => InputFormat::Bnet,
        Some(e) if e.eq_ignore_ascii_case("adf") => InputFormat::Adf,
        _ => {
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'));
            match first {
                Some(line) if line.to_ascii_lowercase().starts_with("targets") => InputFormat::Bnet,
                _ => InputFormat::Adf,
            }
        }
    }
}

fn load(path: Option<&Path>, format: Option<InputFormat>, stdin: &mut dyn Read) -> Result<Adf, CliError> {
    let text = read_input(path, stdin)?;
    let format = format.unwrap_or_else(|| detect_format(path, &text));
    Ok(match format {
        InputFormat::Adf => formula::parse_adf(&text)?,
        InputFormat::Bnet => formula::parse_bnet(&text)?,
    })
}

fn node_budget() -> Result<usize, CliError> {
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(value) => value.trim().parse().map_err(|_| CliError::Budget(value)),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn interpretation_json(adf: &Adf, interpretation: &Interpretation) -> Json {
    let map: Map<String, Json> = adf
        .arguments()
        .iter()
        .zip(interpretation.values())
        .map(|(name, value)| (name.clone(), Json::String(value.to_string())))
        .collect();
    Json::Object(map)
}

fn write_out(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    out.write_fmt(text).map_err(|source| CliError::Io {
        path: "standard output".into(),
        source,
    })
}

/// Runs one `solve` invocation.
pub fn run(
    config: &RunConfig,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let adf = load(config.input.as_deref(), config.format, stdin)?;
    let start = Instant::now();
    let mut solver = SymbolicAdf::new(adf.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
    let set = solver.solve(config.semantics, config.restrict_inputs).set;
    let count = solutions::count(&solver, &set);
    let listed: Option<Vec<Interpretation>> = match config.action {
        Action::Count => None,
        Action::Enumerate { limit } => Some(solutions::enumerate(&solver, &set, limit).collect()),
        Action::Sample { n, seed } => Some(
            solutions::sample_uniform(&solver, &set, n, SampleSeed(seed))
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;

    if config.oracle {
        let expected = oracle::brute_semantics(&adf, config.semantics)?;
        let found: BTreeSet<Interpretation> = solutions::enumerate(&solver, &set, None).collect();
        if found != expected {
            return Err(CliError::OracleMismatch(format!(
                "symbolic {} set has {} members, oracle has {}",
                config.semantics,
                found.len(),
                expected.len()
            )));
        }
        write_out(stderr, format_args!("oracle: agreement on {} solutions\n", expected.len()))?;
    }

    match config.output {
        OutputFormat::Text => match &listed {
            None => write_out(stdout, format_args!("{count}\n"))?,
            Some(items) => {
                for item in items {
                    write_out(stdout, format_args!("{}\n", item.display_with(adf.arguments())))?;
                }
            }
        },
        OutputFormat::Json => {
            let count_json: Json =
                serde_json::from_str(&count.to_string()).expect("decimal integers are valid JSON numbers");
            let mut object = Map::new();
            object.insert("semantics".into(), json!(config.semantics.short_name()));
            object.insert("count".into(), count_json);
            if let Some(items) = &listed {
                let items: Vec<Json> = items.iter().map(|i| interpretation_json(&adf, i)).collect();
                object.insert("solutions".into(), Json::Array(items));
            }
            object.insert("elapsed_ms".into(), json!(elapsed_ms));
            write_out(stdout, format_args!("{}\n", Json::Object(object)))?;
        }
    }
    if config.timing {
        write_out(stderr, format_args!("elapsed: {elapsed_ms:.3} ms\n"))?;
    }
    Ok(())
}

/// Runs one `convert` invocation.
pub fn convert(args: &ConvertArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let adf = load(args.input.as_deref(), args.format, stdin)?;
    let text = match args.to {
        InputFormat::Adf => formula::write_adf(&adf),
        InputFormat::Bnet => formula::write_bnet(&adf, node_budget()?)?,
    };
    write_out(stdout, format_args!("{text}"))
}

/// Parses `args` (program name first) and runs the selected subcommand, returning the exit
/// status.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(error) => {
            let _ = write!(stderr, "{error}");
            return if error.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => run(&RunConfig::from(args), stdin, stdout, stderr),
        Command::Convert(args) => convert(args, stdin, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(error) => {
            let _ = writeln!(stderr, "error: {error}");
            error.exit_code()
        }
    }
}
