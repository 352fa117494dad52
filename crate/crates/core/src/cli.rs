//! `mixmetric` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or model error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::g17;
use crate::matrix::{pairwise_matrix, write_binary, write_text, Parallelism};
use crate::metric::{record_distance, FittedMetric};
use crate::predictor::{loo_accuracy, TrainedPredictor};
use crate::schema_io::{
    load_model, parse_csv, parse_query_csv, parse_record, parse_schema, save_model, Dataset,
};

/// Environment variable consulted when `--threads` is not given.
pub const THREADS_ENV: &str = "MIXMETRIC_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mixmetric",
    version,
    about = "Probabilistic and Gower distances for mixed data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit per-attribute models and write a model document.
    Fit {
        /// Schema document (JSON).
        #[arg(long)]
        schema: PathBuf,
        /// Training or input dataset (CSV with header).
        #[arg(long)]
        data: PathBuf,
        /// Output path, written atomically.
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance between two single-row CSV fragments in schema order.
    Dist {
        /// Model document written by `fit`.
        #[arg(long)]
        model: PathBuf,
        /// First record as one CSV line, features in schema order.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second record as one CSV line, features in schema order.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Condensed pairwise distance matrix of a dataset.
    Matrix {
        /// Model document written by `fit`.
        #[arg(long)]
        model: PathBuf,
        /// Training or input dataset (CSV with header).
        #[arg(long)]
        data: PathBuf,
        /// Output path, written atomically.
        #[arg(long)]
        out: PathBuf,
        /// Matrix encoding.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Worker threads: a positive integer or `auto`.
        #[arg(long)]
        threads: Option<String>,
    },
    /// Predict the target of every row in a query CSV.
    Predict {
        /// Model document written by `fit`.
        #[arg(long)]
        model: PathBuf,
        /// Training or input dataset (CSV with header).
        #[arg(long)]
        data: PathBuf,
        /// Query rows (CSV with header; target column optional).
        #[arg(long)]
        query: PathBuf,
        /// Number of neighbours.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Leave-one-out accuracy of the predictor.
    Eval {
        /// Schema document (JSON).
        #[arg(long)]
        schema: PathBuf,
        /// Training or input dataset (CSV with header).
        #[arg(long)]
        data: PathBuf,
        /// Number of neighbours.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Worker threads: a positive integer or `auto`.
        #[arg(long)]
        threads: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Binary,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match command {
        Command::Fit { schema, data, out } => {
            let schema = parse_schema(&read(&schema)?)?;
            let data = parse_csv(&read(&data)?, &schema)?;
            let fm = FittedMetric::fit(&data)?;
            write_atomic(&out, save_model(&fm).as_bytes())?;
        }
        Command::Dist { model, a, b } => {
            let fm = load_model(&read(&model)?)?;
            let ra = parse_record(&a, fm.schema())?;
            let rb = parse_record(&b, fm.schema())?;
            let d = record_distance(&fm, &ra, &rb)?;
            emit(stdout, &g17(d))?;
        }
        Command::Matrix {
            model,
            data,
            out,
            format,
            threads,
        } => {
            let parallelism = resolve_threads(threads)?;
            let fm = load_model(&read(&model)?)?;
            let data = parse_csv(&read(&data)?, fm.schema())?;
            let m = pairwise_matrix(&fm, &data, parallelism)?;
            let mut buf = Vec::new();
            match format {
                OutputFormat::Text => write_text(&m, &mut buf)?,
                OutputFormat::Binary => write_binary(&m, &mut buf)?,
            }
            write_atomic(&out, &buf)?;
        }
        Command::Predict {
            model,
            data,
            query,
            k,
        } => {
            let fm = load_model(&read(&model)?)?;
            let train = parse_csv(&read(&data)?, fm.schema())?;
            let queries = parse_query_csv(&read(&query)?, fm.schema())?;
            let predictor = TrainedPredictor::with_metric(fm, &train)?;
            let mut text = String::new();
            for (i, q) in queries.rows().enumerate() {
                let result = predictor.predict(&q, k as usize).map_err(|e| Error::Row {
                    row: i + 1,
                    source: Box::new(e),
                })?;
                text.push_str("label=");
                text.push_str(&result.label);
                for (class, score) in &result.class_scores {
                    text.push('\t');
                    text.push_str(class);
                    text.push('=');
                    text.push_str(&g17(*score));
                }
                text.push('\n');
            }
            stdout.write_all(text.as_bytes()).map_err(Error::from)?;
        }
        Command::Eval {
            schema,
            data,
            k,
            threads,
        } => {
            let parallelism = resolve_threads(threads)?;
            let schema = parse_schema(&read(&schema)?)?;
            let data: Dataset = parse_csv(&read(&data)?, &schema)?;
            let acc = loo_accuracy(&data, k as usize, parallelism)?;
            emit(
                stdout,
                &format!("accuracy={}", with_decimal_point(&g17(acc))),
            )?;
        }
    }
    Ok(())
}

fn with_decimal_point(s: &str) -> String {
    if s.contains(['.', 'e', 'n']) {
        s.to_string()
    } else {
        format!("{s}.0")
    }
}

fn emit(stdout: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(stdout, "{line}")?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes to a temporary file beside `path`, then renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    // temp files are created 0600; outputs should look like ordinary files
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(0o644))
            .map_err(io)?;
    }
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn resolve_threads(flag: Option<String>) -> std::result::Result<Parallelism, Failure> {
    let (value, source) = match flag {
        Some(v) => (v, "--threads"),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.is_empty() => (v, THREADS_ENV),
            _ => return Ok(Parallelism::Auto),
        },
    };
    if value == "auto" {
        return Ok(Parallelism::Auto);
    }
    match value.parse::<usize>() {
        Ok(t) if t >= 1 => Ok(Parallelism::Threads(t)),
        _ => Err(Failure::Usage(format!(
            "{source}: expected `auto` or a positive count, got `{value}`"
        ))),
    }
}
