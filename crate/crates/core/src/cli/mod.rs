//! File-driven front end: parse an instance, run its tasks, report.
//!
//! Exit codes: 0 every verdict passes, 1 some verdict fails, 2 input error,
//! 3 budget exceeded. Input errors take precedence over budget errors, which
//! take precedence over failed verdicts.

mod instance;
mod resolve;
mod tasks;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

pub use instance::*;
pub use resolve::*;
pub use tasks::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::quantale::AnyQuantale;

#[derive(Debug, Parser)]
#[command(name = "quantcat", version, about = "Quantale-enriched and quantale-normed categories, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub action: Action,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on enumerated candidates and search nodes per search.
    #[arg(long, global = true, env = "QUANTCAT_BUDGET")]
    pub budget: Option<u64>,
    /// Largest probe object for colimit universality checks.
    #[arg(long, global = true)]
    pub probe: Option<usize>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Single {
    /// Instance file.
    pub file: PathBuf,
    /// Object to act on; omit for `validate` to check the quantale.
    pub target: Option<String>,
    /// Second operand of `compose` and `adjoint`.
    #[arg(long)]
    pub with: Option<String>,
    /// Candidate point for `forward-limit`.
    #[arg(long)]
    pub candidate: Option<String>,
    /// `lipnorm` mode: odot, multiplicative or log.
    #[arg(long)]
    pub mode: Option<String>,
    /// `lipnorm` log base.
    #[arg(long)]
    pub base: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Action {
    /// Run every task listed in the file.
    Run { file: PathBuf },
    /// Check the laws of an object, or of the quantale.
    Validate(Single),
    /// Compose two V-distributors.
    Compose(Single),
    /// Decide an adjunction of distributors or weights, or check a certificate.
    Adjoint(Single),
    /// Isbell conjugates of weights or of a normed distributor.
    Isbell(Single),
    /// Find a representing object.
    Representable(Single),
    /// Decide Lawvere completeness.
    Lawvere(Single),
    /// Check that the idempotents of the strict part split.
    Split(Single),
    /// Decide whether a sequence is Cauchy.
    Cauchy(Single),
    /// Construct and verify a normed colimit.
    Colimit(Single),
    /// Forward limits of a point sequence.
    ForwardLimit(Single),
    /// Norm of a map between V-categories.
    Lipnorm(Single),
}

impl Action {
    fn split(self) -> (PathBuf, Option<Task>) {
        let (command, s) = match self {
            Action::Run { file } => return (file, None),
            Action::Validate(s) => (Command::Validate, s),
            Action::Compose(s) => (Command::Compose, s),
            Action::Adjoint(s) => (Command::Adjoint, s),
            Action::Isbell(s) => (Command::Isbell, s),
            Action::Representable(s) => (Command::Representable, s),
            Action::Lawvere(s) => (Command::Lawvere, s),
            Action::Split(s) => (Command::Split, s),
            Action::Cauchy(s) => (Command::Cauchy, s),
            Action::Colimit(s) => (Command::Colimit, s),
            Action::ForwardLimit(s) => (Command::ForwardLimit, s),
            Action::Lipnorm(s) => (Command::Lipnorm, s),
        };
        let task = Task { command, target: s.target, with: s.with, candidate: s.candidate, mode: s.mode, base: s.base };
        (s.file, Some(task))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetInfo {
    pub enumeration: u64,
    pub subset_carrier: usize,
    pub probe: usize,
}

/// The machine report; identical across runs and thread counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub quantale: String,
    pub odot: Option<String>,
    pub budget: BudgetInfo,
    pub tasks: Vec<TaskReport>,
    pub exit_code: i32,
}

pub fn exit_code(tasks: &[TaskReport]) -> i32 {
    let has = |s: Status| tasks.iter().any(|t| t.status == s);
    if has(Status::InputError) {
        2
    } else if has(Status::BudgetExceeded) {
        3
    } else if has(Status::Fail) {
        1
    } else {
        0
    }
}

fn run_model<Q: CliQuantale>(
    q: Q,
    odot: Option<Q>,
    inst: &Instance,
    tasks: &[Task],
    budget: &Budget,
) -> Result<(Report, Vec<Duration>)> {
    let model = Model::build(q, odot, inst)?;
    let runs: Vec<(TaskReport, Duration)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let start = Instant::now();
            let r = run_task(&model, i, t, budget);
            (r, start.elapsed())
        })
        .collect();
    let (reports, times): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let report = Report {
        quantale: model.q.name(),
        odot: model.odot.as_ref().map(|o| o.name()),
        budget: BudgetInfo { enumeration: budget.enumeration, subset_carrier: budget.subset_carrier, probe: budget.probe },
        exit_code: exit_code(&reports),
        tasks: reports,
    };
    Ok((report, times))
}

/// Resolves and runs `tasks` (the file's own tasks when `None`). Errors are
/// input errors: unresolved references, foreign elements, bad shapes.
pub fn run_instance(inst: &Instance, tasks: Option<&[Task]>, budget: &Budget) -> Result<(Report, Vec<Duration>)> {
    let tasks = tasks.unwrap_or(&inst.tasks);
    let q = resolve_quantale(&inst.quantale)?;
    let odot = inst.odot.as_ref().map(resolve_quantale).transpose()?;
    match (q, odot) {
        (AnyQuantale::Finite(q), None) => run_model(q, None, inst, tasks, budget),
        (AnyQuantale::Finite(q), Some(AnyQuantale::Finite(o))) => run_model(q, Some(o), inst, tasks, budget),
        (AnyQuantale::Lawvere(q), None) => run_model(q, None, inst, tasks, budget),
        (AnyQuantale::Lawvere(q), Some(AnyQuantale::Lawvere(o))) => run_model(q, Some(o), inst, tasks, budget),
        _ => Err(Error::Invalid("quantale and odot must both be finite or both be Lawvere carriers".into())),
    }
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Done => "DONE",
        Status::InputError => "INPUT ERROR",
        Status::BudgetExceeded => "BUDGET",
    }
}

pub fn render_human(report: &Report, times: &[Duration]) -> String {
    let mut out = format!("quantale {}", report.quantale);
    if let Some(o) = &report.odot {
        out += &format!(" with odot {}", o);
    }
    out += "\n";
    for (t, d) in report.tasks.iter().zip(times) {
        out += &format!(
            "[{}] {} {}: {} ({:.1} ms)\n",
            status_tag(t.status),
            t.command,
            t.target.as_deref().unwrap_or("<quantale>"),
            t.summary,
            d.as_secs_f64() * 1e3
        );
        if t.status == Status::Fail && t.details.as_object().is_some_and(|o| !o.is_empty()) {
            out += &format!("    {}\n", t.details);
        }
    }
    out += &format!("exit code {}\n", report.exit_code);
    out
}

fn input_error(json: bool, message: String) -> i32 {
    if json {
        println!("{}", serde_json::json!({ "error": message, "exit_code": 2 }));
    } else {
        eprintln!("error: {}", message);
    }
    2
}

/// Runs the parsed command line and returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        if b == 0 {
            return input_error(cli.json, "--budget must be positive".into());
        }
        budget = budget.with_enumeration(b);
    }
    if let Some(p) = cli.probe {
        budget = budget.with_probe(p);
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            return input_error(cli.json, "--threads must be positive".into());
        }
        // a second initialization only fails when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let json = cli.json;
    let (file, task) = cli.action.split();
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return input_error(json, format!("{}: {}", file.display(), e)),
    };
    let inst = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => return input_error(json, format!("{}:{}:{}: {}", file.display(), e.line, e.column, e.message)),
    };
    let single = task.map(|t| vec![t]);
    match run_instance(&inst, single.as_deref(), &budget) {
        Ok((report, times)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", render_human(&report, &times));
            }
            report.exit_code
        }
        Err(e) => input_error(json, format!("{}: {}", file.display(), e)),
    }
}
