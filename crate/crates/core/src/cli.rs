//! The `fls` command line.
//!
//! Exit codes: 0 success or every checked clause holds, 1 a violation or
//! counterexample was found, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify::summarize;
use crate::closure::{closure, ClosureMode};
use crate::counting::{count_k_fuzzy_line_labelings, count_k_fuzzy_point_configs, infer_line_count, Count};
use crate::enumerate::{census, census_json, CensusOptions, ClauseSelector, DEFAULT_CAP};
use crate::error::FlsError;
use crate::io::parse_space;
use crate::lattice::ChainLattice;
use crate::space::{AxiomSet, FuzzyLinearSpace};
use crate::theorems::{check_classical_dbe, check_generalized_dbe, VerdictFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fls", version, about = "Fuzzy linear space workbench")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a space against an axiom set.
    Check {
        file: PathBuf,
        /// a1a2a3 or a1a2a3a4
        #[arg(long, default_value = "a1a2a3")]
        axioms: String,
    },
    /// Closure of a point set.
    Closure {
        file: PathBuf,
        /// Comma-separated point names.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// exists or forall
        #[arg(long, default_value = "exists")]
        mode: String,
    },
    /// k-fuzzy degrees of every point and line.
    Classify { file: PathBuf },
    /// Exact labeling counts.
    Count {
        #[command(subcommand)]
        what: CountCommand,
    },
    /// Recover a line count from a cardinality.
    InferLines {
        #[arg(long)]
        m: String,
        /// Uniform support size.
        #[arg(long)]
        v: usize,
        #[arg(long)]
        n: u32,
    },
    /// Check a theorem on a space.
    Verify {
        #[command(subcommand)]
        theorem: VerifyCommand,
    },
    /// Census of small spaces up to isomorphism.
    Enumerate {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Exclude the single-line space.
        #[arg(long)]
        nontrivial: bool,
        /// Maximum labelings per skeleton before sampling.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep only classes failing this clause: c1, c2, c3, c4 or all.
        #[arg(long)]
        clause: Option<String>,
        #[arg(long, default_value = "a1a2a3")]
        axioms: String,
        /// Write the census JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum CountCommand {
    /// Nonzero labelings of one k-point support.
    Lines {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
    },
    /// Nonzero labelings of a family of supports.
    Points {
        /// Comma-separated support sizes.
        #[arg(long, default_value = "")]
        supports: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Classical theorem on a crisp space.
    Dbe { file: PathBuf },
    /// Generalized theorem, clause by clause.
    Gdbe {
        file: PathBuf,
        #[arg(long, default_value = "a1a2a3")]
        axioms: String,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<FlsError> for Failure {
    fn from(e: FlsError) -> Self {
        match e {
            FlsError::NoExactSolution(_) => Failure::Violation(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<FuzzyLinearSpace, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_space(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn verdict_format(f: Format) -> VerdictFormat {
    match f {
        Format::Text => VerdictFormat::Text,
        Format::Json => VerdictFormat::Json,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_VIOLATION
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Check { file, axioms } => {
            let axioms = AxiomSet::parse(&axioms)?;
            let report = load(&file)?.validate(axioms);
            match format {
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Json => writeln!(out, "{}", to_json(&report))?,
            }
            Ok(if report.is_valid() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Closure { file, set, mode } => {
            let space = load(&file)?;
            let mode: ClosureMode = mode.parse()?;
            let names: Vec<&str> = set
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let x = space.set_from_names(&names)?;
            let result = space.names_of(closure(&space, x, mode)?);
            match format {
                Format::Text => writeln!(out, "{}", result.join(" "))?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&result).unwrap())?,
            }
            Ok(EXIT_OK)
        }
        Command::Classify { file } => {
            let summary = summarize(&load(&file)?);
            match format {
                Format::Text => write!(out, "{}", summary.to_text())?,
                Format::Json => writeln!(out, "{}", to_json(&summary))?,
            }
            Ok(EXIT_OK)
        }
        Command::Count { what } => {
            let count = match what {
                CountCommand::Lines { k, n } => count_k_fuzzy_line_labelings(k, ChainLattice::new(n)?),
                CountCommand::Points { supports, n } => {
                    let sizes = supports
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| Failure::Input(format!("bad support size {s:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    count_k_fuzzy_point_configs(&sizes, ChainLattice::new(n)?)
                }
            };
            writeln!(out, "{count}")?;
            Ok(EXIT_OK)
        }
        Command::InferLines { m, v, n } => {
            let m: Count = m.parse()?;
            let b = infer_line_count(&m, v, ChainLattice::new(n)?)?;
            writeln!(out, "{b}")?;
            Ok(EXIT_OK)
        }
        Command::Verify { theorem } => {
            let verdict = match theorem {
                VerifyCommand::Dbe { file } => check_classical_dbe(&load(&file)?)?,
                VerifyCommand::Gdbe { file, axioms } => {
                    let axioms = AxiomSet::parse(&axioms)?;
                    check_generalized_dbe(&load(&file)?, axioms)?
                }
            };
            let mut text = verdict.render(verdict_format(format));
            if !text.ends_with('\n') {
                text.push('\n');
            }
            write!(out, "{text}")?;
            Ok(if verdict.holds() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Enumerate {
            points,
            n,
            nontrivial,
            cap,
            seed,
            clause,
            axioms,
            out: out_path,
            workers,
        } => {
            let opts = CensusOptions {
                points,
                lattice: ChainLattice::new(n)?,
                nontrivial_only: nontrivial,
                cap,
                seed,
                clause: clause.as_deref().map(ClauseSelector::parse).transpose()?,
                axioms: AxiomSet::parse(&axioms)?,
            };
            let entries = match workers {
                Some(0) => return Err(Failure::Input("--workers must be positive".into())),
                Some(w) => rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Failure::Input(e.to_string()))?
                    .install(|| census(&opts))?,
                None => census(&opts)?,
            };
            let json = census_json(&entries);
            match out_path {
                Some(path) => {
                    std::fs::write(&path, &json)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    let sampled = entries.iter().filter(|e| e.sampled).count();
                    writeln!(
                        out,
                        "{} classes written to {} ({})",
                        entries.len(),
                        path.display(),
                        if sampled == 0 {
                            "exhaustive".to_string()
                        } else {
                            format!("{sampled} from sampled labelings")
                        }
                    )?;
                }
                None => write!(out, "{json}")?,
            }
            let found = opts.clause.is_some() && !entries.is_empty();
            Ok(if found { EXIT_VIOLATION } else { EXIT_OK })
        }
    }
}
