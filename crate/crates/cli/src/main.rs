use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use intprop::bench::{builtin, builtin_models, StatsReport, StatsRow};
use intprop::engine::ScheduleMode;
use intprop::expr::CspModel;
use intprop::rewrite::{compile, Approach};
use intprop::search::{solve_compiled, SearchConfig, SearchError, SearchMode};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNBOUNDED: u8 = 3;

/// Constraint propagation and branch-and-infer search over integer intervals.
#[derive(Debug, Parser)]
#[command(name = "intprop", version)]
#[command(group(ArgGroup::new("input").required(true).args(["bench", "model", "list"])))]
#[command(group(ArgGroup::new("goal").args(["all", "maximize"])))]
struct Cli {
    /// Built-in benchmark: cubes, opt, fractions1, fractions2 or kyoto.
    #[arg(long, value_name = "NAME")]
    bench: Option<String>,

    /// Model file.
    #[arg(long, value_name = "PATH")]
    model: Option<PathBuf>,

    /// List the built-in benchmarks and exit.
    #[arg(long)]
    list: bool,

    /// Comma-separated approaches (1a 1b 2a 2b 3a 3b 3c), or `all`.
    #[arg(long, default_value = "1a", value_name = "LIST")]
    approach: String,

    /// Enumerate all solutions (default for models without an objective).
    #[arg(long)]
    all: bool,

    /// Maximize the model's objective.
    #[arg(long)]
    maximize: bool,

    /// Write the statistics as JSON, one record per run.
    #[arg(long, value_name = "PATH")]
    stats_json: Option<PathBuf>,

    /// Stop each search after this many nodes.
    #[arg(long, value_name = "N")]
    node_limit: Option<u64>,

    #[arg(
        long,
        default_value = "hierarchical",
        value_name = "cycling|hierarchical"
    )]
    schedule: ScheduleMode,

    /// Print the statistics only.
    #[arg(long)]
    quiet: bool,
}

fn parse_approaches(s: &str) -> Result<Vec<Approach>, String> {
    if s == "all" {
        return Ok(Approach::ALL.to_vec());
    }
    s.split(',')
        .map(|a| a.trim().parse::<Approach>().map_err(|e| e.to_string()))
        .collect()
}

fn format_point<T: fmt::Display>(model: &CspModel, point: &[T]) -> String {
    model
        .vars
        .iter()
        .zip(point)
        .map(|(d, v)| format!("{}={}", d.name, v))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let usage = |m: String| (EXIT_USAGE, m);
    if cli.list {
        for b in builtin_models() {
            println!("{}", b.name);
        }
        return Ok(());
    }
    let approaches = parse_approaches(&cli.approach).map_err(usage)?;

    let (name, model, default_mode) = match (&cli.bench, &cli.model) {
        (Some(b), _) => {
            let def = builtin(b).ok_or_else(|| usage(format!("unknown benchmark `{b}`")))?;
            (def.name.to_string(), def.model(), def.mode)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let model = intprop::expr::parse_model(&text)
                .map_err(|e| (EXIT_PARSE, format!("{}:{e}", path.display())))?;
            let name = path
                .file_stem()
                .map_or_else(|| "model".to_string(), |s| s.to_string_lossy().into_owned());
            (name, model, SearchMode::AllSolutions)
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let mode = if cli.maximize {
        SearchMode::Maximize
    } else if cli.all {
        SearchMode::AllSolutions
    } else {
        default_mode
    };
    if mode == SearchMode::Maximize && model.objective.is_none() {
        return Err(usage(
            "--maximize needs a model with a `maximize` statement".into(),
        ));
    }

    let config = SearchConfig {
        mode,
        schedule: cli.schedule,
        node_limit: cli.node_limit,
    };
    let mut report = StatsReport::default();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for a in approaches {
        let compiled = compile(&model, a);
        let outcome = match solve_compiled(&model, &compiled, &config) {
            Ok(o) => o,
            Err(e @ SearchError::Unbounded(..)) => {
                return Err((EXIT_UNBOUNDED, format!("{name} ({a}): {e}")))
            }
            Err(e) => return Err((EXIT_USAGE, format!("{name} ({a}): {e}"))),
        };
        if !cli.quiet {
            let _ = writeln!(out, "== {name} {a} ({})", cli.schedule);
            match mode {
                SearchMode::AllSolutions => {
                    let _ = writeln!(out, "solutions: {}", outcome.solutions.len());
                    for s in &outcome.solutions {
                        let _ = writeln!(out, "  {}", format_point(&model, s));
                    }
                }
                SearchMode::Maximize => match (&outcome.best, outcome.best_solution()) {
                    (Some(best), Some(s)) => {
                        let _ = writeln!(out, "maximum: {best} at {}", format_point(&model, s));
                    }
                    _ => {
                        let _ = writeln!(out, "no solution");
                    }
                },
            }
            if !outcome.complete {
                let _ = writeln!(out, "node limit reached; search incomplete");
            }
        }
        report.push(StatsRow::new(&name, &compiled, cli.schedule, &outcome));
    }
    let _ = write!(out, "{report}");

    if let Some(path) = &cli.stats_json {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("intprop: {msg}");
            ExitCode::from(code)
        }
    }
}
