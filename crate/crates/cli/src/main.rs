//! `germlab`: invariants of corank-one map germs from the command line.
//!
//! Every command reads a germ file (JSON), prints one JSON document and exits
//! with 0 on success, 1 on input or usage errors and 2 when a mathematical
//! identity fails.

mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::OnceLock;

use clap::{Parser, Subcommand};
use germlab_core::equising::slice_chain_to;
use germlab_core::multipoint::verify_multiple_point_structure;
use germlab_core::{
    invariant_report, whitney_verdict, Consistency, GenericOptions, GermFile, Loaded, LocalOptions, DEFAULT_SEED,
};
use serde::Serialize;
use serde_json::{json, Value};

use error::{CliError, EXIT_INCONSISTENT, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "germlab", version, about = "Singularity invariants of corank-one map germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree cap for standard basis computations.
    #[arg(long, global = true, default_value_t = LocalOptions::default().degree_cap)]
    max_degree: u32,
    /// Write the JSON document to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Disable the standard basis cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiple point structure of a germ.
    Check { file: PathBuf },
    /// Full invariant report of a germ.
    Invariants { file: PathBuf },
    /// Generic transverse slices down to the given level.
    Slice {
        file: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Whitney equisingularity verdict for a one-parameter family.
    Equising {
        file: PathBuf,
        /// Number of random parameter values compared with t = 0.
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Invariants { .. } => "invariants",
            Command::Slice { .. } => "slice",
            Command::Equising { .. } => "equising",
        }
    }
}

/// The shipped germ file schema, compiled once.
fn germ_file_schema() -> &'static jsonschema::Validator {
    static SCHEMA: OnceLock<jsonschema::Validator> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let schema: Value = serde_json::from_str(include_str!("../../../schemas/germ-file.schema.json"))
            .expect("the germ file schema is valid JSON");
        jsonschema::validator_for(&schema).expect("the germ file schema compiles")
    })
}

fn read_germ_file(path: &Path) -> Result<Loaded, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input("IO_ERROR", format!("{}: {e}", path.display())))?;
    let violation = |msg: String| CliError::input("SCHEMA_VIOLATION", format!("{}: {msg}", path.display()));
    let value: Value = serde_json::from_str(&text).map_err(|e| violation(e.to_string()))?;
    if let Some(e) = germ_file_schema().iter_errors(&value).next() {
        return Err(violation(format!("{e} at `{}`", e.instance_path())));
    }
    let file: GermFile = serde_json::from_value(value).map_err(|e| violation(e.to_string()))?;
    Ok(file.load()?)
}

fn expect_germ(loaded: Loaded) -> Result<germlab_core::GermSpec, CliError> {
    match loaded {
        Loaded::Germ(g) => Ok(g),
        Loaded::Family(f) => Err(CliError::input(
            "EXPECTED_GERM",
            format!("`{}` is a family with parameter `{}`; this command needs a single germ", f.name, f.param),
        )),
    }
}

fn json_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise to JSON")
}

/// Runs a command and returns its JSON result with the exit code.
fn execute(command: &Command, opts: GenericOptions) -> Result<(Value, i32), CliError> {
    match command {
        Command::Check { file } => {
            let germ = expect_germ(read_germ_file(file)?)?;
            let report = verify_multiple_point_structure(&germ, opts)?;
            let exit = if report.violations.is_empty() { 0 } else { EXIT_INPUT };
            Ok((json_value(&report), exit))
        }
        Command::Invariants { file } => {
            let germ = expect_germ(read_germ_file(file)?)?;
            let report = invariant_report(&germ, opts)?;
            let exit = if report.consistency == Consistency::Consistent { 0 } else { EXIT_INCONSISTENT };
            Ok((json_value(&report), exit))
        }
        Command::Slice { file, level } => {
            let germ = expect_germ(read_germ_file(file)?)?;
            Ok((json_value(&slice_chain_to(&germ, *level, opts)?), 0))
        }
        Command::Equising { file, samples } => match read_germ_file(file)? {
            Loaded::Family(fam) => Ok((json_value(&whitney_verdict(&fam, *samples, opts)?), 0)),
            Loaded::Germ(g) => Err(CliError::input(
                "EXPECTED_FAMILY",
                format!("`{}` has no parameter; equisingularity needs a one-parameter family", g.name),
            )),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let opts = GenericOptions {
        local: LocalOptions { degree_cap: cli.max_degree, use_cache: !cli.no_cache },
        seed: cli.seed,
        ..GenericOptions::default()
    };
    let (body, exit) = match execute(&cli.command, opts) {
        Ok((Value::Object(mut map), exit)) => {
            map.insert("command".into(), json!(cli.command.name()));
            map.insert("germlab_version".into(), json!(env!("CARGO_PKG_VERSION")));
            map.insert("seed".into(), json!(cli.seed));
            map.insert("max_degree".into(), json!(cli.max_degree));
            (Value::Object(map), exit)
        }
        Ok((other, exit)) => (other, exit),
        Err(e) => (
            json!({
                "command": cli.command.name(),
                "error": e.to_json(),
                "germlab_version": env!("CARGO_PKG_VERSION"),
                "max_degree": cli.max_degree,
                "seed": cli.seed,
            }),
            e.exit,
        ),
    };
    let text = serde_json::to_string_pretty(&body).expect("JSON values serialise") + "\n";
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("germlab: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(exit as u8)
}
