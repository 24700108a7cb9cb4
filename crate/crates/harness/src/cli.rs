use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use poset_endo::{CountOptions, FamilySpec};

use crate::analyze::{analyze, render_text, CountSummary};
use crate::dot::to_dot;
use crate::error::{HarnessError, EXIT_BUDGET, EXIT_CHECK, EXIT_OK, EXIT_USAGE};
use crate::io::{poset_to_string, read_poset, PosetFile};
use crate::sweep::{run_sweep, to_csv, SweepEntry};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "poset-endo",
    version,
    about = "Automorphism/endomorphism ratios of graded posets of small whidth"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Search-node budget for counting.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    pub budget: u64,
    /// Default seed for random families and suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Sweep CSV destination.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Output file (a directory for multi-poset `generate`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sweep: fail on budget rows or failed bounds.
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grading, Whitney numbers, detected structures and repeating windows.
    Analyze {
        path: PathBuf,
        /// Also count automorphisms and endomorphisms.
        #[arg(long)]
        count: bool,
    },
    /// Exact |Aut|, |End| and their ratio.
    Count { path: PathBuf },
    /// Write the poset(s) of a family spec (file path or inline JSON).
    Generate { spec: String },
    /// Ratio table over a JSON list of families.
    Sweep { spec: String },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Graphviz rendering of the Hasse diagram.
    ExportDot { path: PathBuf },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| execute(&cli, &mut buf));
                let _ = stdout.write_all(&buf);
                r
            }
            Err(e) => Err(HarnessError::Usage(format!("thread pool: {e}"))),
        }
    } else {
        execute(&cli, stdout)
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), HarnessError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| HarnessError::io(&path.display().to_string(), e))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| HarnessError::io("<stdout>", e)),
    }
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a path.
fn spec_text(arg: &str) -> Result<(String, String), HarnessError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok((arg.to_string(), "<inline>".to_string()))
    } else {
        let text = fs::read_to_string(arg).map_err(|e| HarnessError::io(arg, e))?;
        Ok((text, arg.to_string()))
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, HarnessError> {
    let opts = CountOptions {
        budget: cli.budget,
        memo: true,
        ..Default::default()
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Analyze { path, count } => {
            let l = read_poset(path)?;
            let report = analyze(&l.poset, *count, &opts)?;
            let text = match cli.format.unwrap_or(Format::Text) {
                Format::Text => render_text(&report),
                Format::Json => pretty(&report),
            };
            emit(&text, out, stdout)?;
        }
        Command::Count { path } => {
            let l = read_poset(path)?;
            let summary = CountSummary::from(&poset_endo::count_poset(&l.poset, &opts)?);
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => format!("{}\n", summary.to_json()),
                Format::Text => format!(
                    "aut: {}\nend: {}\nratio: {} ({})\n",
                    summary.aut, summary.end, summary.ratio, summary.ratio_dec
                ),
            };
            emit(&text, out, stdout)?;
        }
        Command::Generate { spec } => {
            let (text, origin) = spec_text(spec)?;
            let fam: FamilySpec =
                serde_json::from_str(&text).map_err(|e| HarnessError::json(&origin, &e))?;
            let posets = fam.generate(cli.seed)?;
            if posets.len() == 1 {
                emit(&poset_to_string(&posets[0], None), out, stdout)?;
            } else if let Some(dir) = out {
                let shown = dir.display().to_string();
                fs::create_dir_all(dir).map_err(|e| HarnessError::io(&shown, e))?;
                for (i, p) in posets.iter().enumerate() {
                    crate::io::write_poset(p, None, &dir.join(format!("{i:04}.json")))?;
                }
                writeln!(stdout, "wrote {} posets to {shown}", posets.len())
                    .map_err(|e| HarnessError::io("<stdout>", e))?;
            } else {
                let files: Vec<PosetFile> =
                    posets.iter().map(|p| PosetFile::from_poset(p, None)).collect();
                emit(&pretty(&files), None, stdout)?;
            }
        }
        Command::Sweep { spec } => {
            let (text, origin) = spec_text(spec)?;
            let entries: Vec<SweepEntry> =
                serde_json::from_str(&text).map_err(|e| HarnessError::json(&origin, &e))?;
            let records = run_sweep(&entries, cli.seed, cli.jobs, &opts)?;
            emit(&to_csv(&records), cli.csv.as_deref().or(out), stdout)?;
            if cli.strict {
                if records.iter().any(|r| r.status == "budget" || r.status == "size_limit") {
                    return Ok(EXIT_BUDGET);
                }
                if records.iter().any(|r| r.failed_bounds() > 0) {
                    return Ok(EXIT_CHECK);
                }
            }
        }
        Command::Verify { suite } => {
            let report = run_suite(*suite, cli.seed);
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&report),
                Format::Text => report.render_text(),
            };
            emit(&text, out, stdout)?;
            if !report.passed {
                return Ok(EXIT_CHECK);
            }
        }
        Command::ExportDot { path } => {
            let l = read_poset(path)?;
            emit(&to_dot(&l), out, stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
