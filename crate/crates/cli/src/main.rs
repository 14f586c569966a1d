use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tangent_toric::classify::{self, ClassificationReport, Options, Outcome, SweepSummary};
use tangent_toric::fixtures::{run_worked_examples, ExampleReport};
use tangent_toric::simplicial::{build_sv_complex, LabeledComplex};
use tangent_toric::toric_ideal::{enumerate_binomials, BinomialRelation};
use tangent_toric::SVParams;

mod render;

/// Exit statuses, kept disjoint so scripts can tell them apart.
mod exit {
    pub const AGREE: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const DISAGREE: u8 = 2;
    pub const UNDETERMINED: u8 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "tangent-toric", version, about = "Singularities of tangential varieties of Segre-Veronese varieties")]
struct Cli {
    /// Also write every report into this directory.
    #[arg(long, global = true, env = "SVTANGENT_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one parameter triple and compare with the expected verdicts.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify every normalized triple up to the given bounds.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_a: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_b: u64,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Replay the worked examples check by check.
    Examples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List binomial relations of the toric variety of a complex.
    Ideal {
        #[command(flatten)]
        params: OptionalParamArgs,
        /// Complex file: one simplex per line, comma-separated labels, `#` comments.
        #[arg(long, conflicts_with_all = ["k", "a", "b"])]
        complex: Option<PathBuf>,
        /// Largest number of factors on either side of a relation.
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<usize>,
}

#[derive(Args, Debug)]
struct OptionalParamArgs {
    #[arg(long, requires_all = ["a", "b"])]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',', requires = "k")]
    a: Vec<usize>,
    #[arg(long, value_delimiter = ',', requires = "k")]
    b: Vec<usize>,
}

#[derive(Args, Debug, Clone, Copy)]
struct LimitArgs {
    /// Radius of the coordinate box scanned for witnesses (default 2(a_k + 2)).
    #[arg(long)]
    window: Option<i64>,
    /// Search bound recorded for face-membership tests (default 6 a_k M).
    #[arg(long)]
    bound: Option<u64>,
}

impl From<LimitArgs> for Options {
    fn from(l: LimitArgs) -> Self {
        Options { window: l.window, bound: l.bound }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::AGREE });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let out = cli.output_dir.as_deref();
    match cli.command {
        Command::Classify { params, limits, format } => {
            let p = SVParams::with_k(params.k, params.a, params.b)?;
            let report = classify::classify(&p, limits.into())?;
            let text = match format {
                Format::Text => render::report_text(&report),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => render::reports_csv(std::slice::from_ref(&report))?,
            };
            emit(out, &format!("classify-{}", render::slug(&p)), format, &text)?;
            Ok(outcome_code(std::iter::once(report.outcome)))
        }
        Command::Sweep { max_k, max_a, max_b, limits, format } => {
            let (reports, summary) = classify::sweep(max_k as usize, max_a as usize, max_b as usize, limits.into())?;
            let text = match format {
                Format::Text => render::sweep_text(&reports, &summary),
                Format::Json => serde_json::to_string_pretty(&SweepOutput { summary: &summary, reports: &reports })? + "\n",
                Format::Csv => render::reports_csv(&reports)?,
            };
            emit(out, &format!("sweep-{max_k}-{max_a}-{max_b}"), format, &text)?;
            if format != Format::Text {
                eprintln!("{}", render::summary_line(&summary));
            }
            Ok(outcome_code(reports.iter().map(|r| r.outcome)))
        }
        Command::Examples { format } => {
            let report: ExampleReport = run_worked_examples()?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => render::examples_text(&report),
                Format::Csv => bail!("the examples report has no CSV form; use text or json"),
            };
            emit(out, "examples", format, &text)?;
            Ok(if report.passed() { exit::AGREE } else { exit::DISAGREE })
        }
        Command::Ideal { params, complex, max_degree, format } => {
            let (c, name) = match (complex, params.k) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let c = LabeledComplex::parse(&text).with_context(|| format!("in {}", path.display()))?;
                    let stem = path.file_stem().map_or("complex".into(), |s| s.to_string_lossy().into_owned());
                    (c, format!("ideal-{stem}"))
                }
                (None, Some(k)) => {
                    let p = SVParams::with_k(k, params.a, params.b)?;
                    (build_sv_complex(&p), format!("ideal-{}", render::slug(&p)))
                }
                (None, None) => bail!("ideal needs either --complex FILE or --k/--a/--b"),
            };
            if max_degree < 2 {
                bail!("--max-degree must be at least 2");
            }
            let relations = enumerate_binomials(&c, max_degree)?;
            let text = match format {
                Format::Text => render::relations_text(&c, &relations),
                Format::Json => {
                    let rows: Vec<RelationOutput> =
                        relations.iter().map(|r| RelationOutput { text: r.format(&c), relation: r }).collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
                Format::Csv => bail!("relations have no CSV form; use text or json"),
            };
            emit(out, &name, format, &text)?;
            Ok(exit::AGREE)
        }
    }
}

#[derive(serde::Serialize)]
struct SweepOutput<'a> {
    summary: &'a SweepSummary,
    reports: &'a [ClassificationReport],
}

#[derive(serde::Serialize)]
struct RelationOutput<'a> {
    text: String,
    #[serde(flatten)]
    relation: &'a BinomialRelation,
}

/// Disagreement dominates undetermined, which dominates agreement.
fn outcome_code(outcomes: impl Iterator<Item = Outcome>) -> u8 {
    let mut code = exit::AGREE;
    for o in outcomes {
        match o {
            Outcome::Disagree => return exit::DISAGREE,
            Outcome::Undetermined => code = exit::UNDETERMINED,
            Outcome::Agree => {}
        }
    }
    code
}

fn emit(dir: Option<&Path>, name: &str, format: Format, text: &str) -> anyhow::Result<()> {
    print!("{text}");
    if let Some(dir) = dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(format!("{name}.{}", format.extension()));
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
