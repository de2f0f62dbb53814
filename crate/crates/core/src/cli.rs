//! Argument parsing and command implementations for the `rvlogic` binary.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::corpus::{gen_ksat, CorpusError};
use crate::decide::{check_query, check_sat, DecideError};
use crate::finite::{canonical_derivation, model_entails, FiniteDomain, FiniteError, FiniteSentence, Outcome};
use crate::report::{millis, witness_of, ComponentVerdict, Report, Stats, Verdict};
use crate::semantics::Logic;
use crate::solver::SolverConfig;
use crate::suites::{boolean_suite, hajek_suite, ksat_suite, stress_suite, SuiteError, SuiteSummary};
use crate::theory::{parse_theory, Theory, TheoryError, TheoryFile};

#[derive(Debug, Parser)]
#[command(name = "rvlogic", version, about = "Decide satisfiability and entailment in real-valued logics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GlobalOpts {
    /// Logic to use, overriding the file's `logic` line.
    #[arg(long, global = true)]
    pub logic: Option<Logic>,
    /// Print a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Give up after this many branch-and-bound nodes.
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    /// Give up after this many seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Print one line per branch-and-bound node to stderr.
    #[arg(long, global = true)]
    pub trace: bool,
}

impl GlobalOpts {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            node_limit: self.node_limit,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            trace: self.trace,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a model of the theory in a file.
    Sat { file: PathBuf },
    /// Decide whether the theory entails the file's query.
    Entails { file: PathBuf },
    /// Prove or refute the query over the grid {0, 1/d, ..., 1}.
    Prove {
        file: PathBuf,
        #[arg(long)]
        domain: u16,
    },
    /// Print a generated theory file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a benchmark suite against its expected verdicts.
    Suite {
        name: SuiteName,
        /// Largest k for the k-SAT suite.
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        /// Intervals per sentence for the stress suite.
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Classically unsatisfiable k-SAT clauses, each required to be 1.
    Ksat {
        #[arg(long)]
        k: usize,
        /// Index of a clause to leave out.
        #[arg(long)]
        drop: Option<usize>,
        /// Keep each atom near 0 or near 1.
        #[arg(long)]
        constrain: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Hajek,
    Ksat,
    Boolean,
    Stress,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error("{0}")]
    Usage(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}

/// What a command prints, and its exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

pub fn load(path: &Path, logic: Option<Logic>) -> Result<TheoryFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut file = parse_theory(&text)?;
    if let Some(l) = logic {
        file.theory = file.theory.with_logic(l)?;
    }
    Ok(file)
}

pub fn cmd_sat(theory: &Theory, config: &SolverConfig) -> Result<Report, CliError> {
    let d = check_sat(theory, config)?;
    let verdict = if d.found_model() { Verdict::Sat } else { Verdict::Unsat };
    Ok(Report {
        verdict,
        logic: theory.logic(),
        witness: d.model.as_ref().map(witness_of),
        proof: None,
        components: Vec::new(),
        stats: Stats::from_solve(&d.stats),
    })
}

fn require_query(file: &TheoryFile) -> Result<&crate::theory::Query, CliError> {
    file.query
        .as_ref()
        .ok_or_else(|| CliError::Usage("the file has no 'query:' line".into()))
}

/// Entailed iff every query component is; the first failing component's
/// countermodel becomes the report's witness.
pub fn cmd_entails(file: &TheoryFile, config: &SolverConfig) -> Result<Report, CliError> {
    let query = require_query(file)?;
    let decisions = check_query(&file.theory, query, config)?;
    let mut stats = Stats::default();
    let mut components = Vec::new();
    for (sentence, d) in query.components.iter().zip(&decisions) {
        stats.absorb(&Stats::from_solve(&d.stats));
        components.push(ComponentVerdict {
            sentence: sentence.to_string(),
            verdict: if d.found_model() { Verdict::NotEntailed } else { Verdict::Entailed },
            witness: d.model.as_ref().map(witness_of),
        });
    }
    let witness = components.iter().find_map(|c| c.witness.clone());
    Ok(Report {
        verdict: if witness.is_some() { Verdict::NotEntailed } else { Verdict::Entailed },
        logic: file.theory.logic(),
        witness,
        proof: None,
        components,
        stats,
    })
}

/// Runs the canonical derivation on the grid and checks the verdict against
/// brute-force model enumeration.
pub fn cmd_prove(file: &TheoryFile, denominator: u16) -> Result<Report, CliError> {
    let start = Instant::now();
    let query = require_query(file)?;
    let domain = FiniteDomain::new(denominator)?;
    let logic = file.theory.logic();
    let premises: Vec<FiniteSentence> = file
        .theory
        .sentences()
        .iter()
        .map(|s| FiniteSentence::from_simple(domain, s))
        .collect();
    let goal = FiniteSentence::from_product(domain, &query.components)?;
    let outcome = canonical_derivation(logic, domain, &premises, &goal)?;
    let brute = model_entails(logic, domain, &premises, &goal)?;
    let (verdict, witness, proof) = match outcome {
        Outcome::Proved(derivation) => {
            derivation.verify(logic, &premises)?;
            let log: Vec<String> = derivation.log().lines().map(str::to_string).collect();
            (Verdict::Proved, None, Some(log))
        }
        Outcome::Refuted { model, .. } => {
            for p in &premises {
                if !p.satisfied_by(logic, domain, &model)? {
                    return Err(CliError::Internal(format!("countermodel {model} violates a premise")));
                }
            }
            if goal.satisfied_by(logic, domain, &model)? {
                return Err(CliError::Internal(format!("countermodel {model} satisfies the query")));
            }
            (Verdict::Refuted, Some(witness_of(&model)), None)
        }
    };
    if brute != (verdict == Verdict::Proved) {
        return Err(CliError::Internal("derivation and model enumeration disagree".into()));
    }
    Ok(Report {
        verdict,
        logic,
        witness,
        proof,
        components: Vec::new(),
        stats: Stats {
            elapsed_ms: millis(start.elapsed()),
            ..Stats::default()
        },
    })
}

pub fn cmd_suite(
    name: SuiteName,
    max_k: usize,
    count: usize,
    only: Option<Logic>,
    config: &SolverConfig,
) -> Result<SuiteSummary, CliError> {
    Ok(match name {
        SuiteName::Hajek => hajek_suite(only, config)?,
        SuiteName::Ksat => ksat_suite(max_k, only, config)?,
        SuiteName::Boolean => boolean_suite(only, config)?,
        SuiteName::Stress => stress_suite(count, only, config)?,
    })
}

fn render(report: &Report, json: bool) -> Output {
    Output {
        text: if json { report.to_json() + "\n" } else { report.to_text() },
        code: report.verdict.exit_code(),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let config = g.solver_config();
    match &cli.command {
        Command::Sat { file } => Ok(render(&cmd_sat(&load(file, g.logic)?.theory, &config)?, g.json)),
        Command::Entails { file } => Ok(render(&cmd_entails(&load(file, g.logic)?, &config)?, g.json)),
        Command::Prove { file, domain } => Ok(render(&cmd_prove(&load(file, g.logic)?, *domain)?, g.json)),
        Command::Gen(GenCommand::Ksat { k, drop, constrain }) => {
            let theory = gen_ksat(g.logic.unwrap_or(Logic::Lukasiewicz), *k, *drop, *constrain)?;
            Ok(Output {
                text: theory.to_string(),
                code: 0,
            })
        }
        Command::Suite { name, max_k, count } => {
            let summary = cmd_suite(*name, *max_k, *count, g.logic, &config)?;
            Ok(Output {
                text: if g.json {
                    serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
                } else {
                    summary.to_text()
                },
                code: if summary.all_passed() { 0 } else { 1 },
            })
        }
    }
}
