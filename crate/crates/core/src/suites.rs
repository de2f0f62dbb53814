//! The benchmark suites: tautologies, k-SAT, the Boolean-logic example and
//! the interval stress test, each with its expected verdicts.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::corpus::{boolean_example, gen_ksat, hajek_corpus, stress_sentences, CorpusError};
use crate::decide::{check_entails, check_sat, DecideError};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{one, rat, zero, Rational};
use crate::report::{millis, Verdict};
use crate::semantics::Logic;
use crate::solver::SolverConfig;
use crate::theory::{SimpleSentence, Theory};

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Setup(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub logic: Logic,
    pub expected: Verdict,
    pub actual: Verdict,
    pub nodes: u64,
    pub elapsed_ms: f64,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<28} {:<11} expected={:<12} got={:<12} nodes={:<6} {:.1}ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.logic.name(),
            self.expected.as_str(),
            self.actual.as_str(),
            self.nodes,
            self.elapsed_ms
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: f64,
}

impl SuiteSummary {
    fn new(suite: &str, cases: Vec<CaseResult>, elapsed: Duration) -> Self {
        let passed = cases.iter().filter(|c| c.passed()).count();
        Self {
            suite: suite.to_string(),
            failed: cases.len() - passed,
            passed,
            cases,
            elapsed_ms: millis(elapsed),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Elapsed time summed per logic.
    pub fn elapsed_for(&self, logic: Logic) -> f64 {
        self.cases.iter().filter(|c| c.logic == logic).map(|c| c.elapsed_ms).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.cases.iter().map(|c| c.line() + "\n").collect();
        out.push_str(&format!(
            "suite {}: {} passed, {} failed, {:.1}ms\n",
            self.suite, self.passed, self.failed, self.elapsed_ms
        ));
        out
    }
}

fn entail_case(
    name: String,
    theory: &Theory,
    query: &SimpleSentence,
    expected: Verdict,
    config: &SolverConfig,
) -> Result<CaseResult, SuiteError> {
    let start = Instant::now();
    let d = check_entails(theory, query, config)?;
    Ok(CaseResult {
        name,
        logic: theory.logic(),
        expected,
        actual: if d.found_model() { Verdict::NotEntailed } else { Verdict::Entailed },
        nodes: d.stats.nodes,
        elapsed_ms: millis(start.elapsed()),
    })
}

fn selected(only: Option<Logic>) -> Vec<Logic> {
    Logic::ALL.into_iter().filter(|l| only.is_none_or(|o| o == *l)).collect()
}

/// Every tautology queried at value 1 against the empty theory.
pub fn hajek_suite(only: Option<Logic>, config: &SolverConfig) -> Result<SuiteSummary, SuiteError> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for case in hajek_corpus() {
        let query = SimpleSentence::new(case.formula.clone(), IntervalSet::single(Interval::point(one()).expect("point")));
        for logic in selected(only) {
            let expected = if case.validity.holds_in(logic) {
                Verdict::Entailed
            } else {
                Verdict::NotEntailed
            };
            cases.push(entail_case(case.name(), &Theory::new(logic), &query, expected, config)?);
        }
    }
    Ok(SuiteSummary::new("hajek", cases, start.elapsed()))
}

/// The five k-SAT configurations for `k = 3..=max_k`.
pub fn ksat_suite(max_k: usize, only: Option<Logic>, config: &SolverConfig) -> Result<SuiteSummary, SuiteError> {
    let start = Instant::now();
    let configurations = [
        ("goedel", Logic::Goedel, None, false, Verdict::Unsat),
        ("goedel-drop", Logic::Goedel, Some(0), false, Verdict::Sat),
        ("lukasiewicz", Logic::Lukasiewicz, None, false, Verdict::Sat),
        ("lukasiewicz-constrained", Logic::Lukasiewicz, None, true, Verdict::Unsat),
        ("lukasiewicz-constrained-drop", Logic::Lukasiewicz, Some(0), true, Verdict::Sat),
    ];
    let mut cases = Vec::new();
    for k in 3..=max_k {
        for (name, logic, drop, constrained, expected) in configurations {
            if only.is_some_and(|o| o != logic) {
                continue;
            }
            let theory = gen_ksat(logic, k, drop, constrained)?;
            let t = Instant::now();
            let d = check_sat(&theory, config)?;
            cases.push(CaseResult {
                name: format!("k{k}-{name}"),
                logic,
                expected,
                actual: if d.found_model() { Verdict::Sat } else { Verdict::Unsat },
                nodes: d.stats.nodes,
                elapsed_ms: millis(t.elapsed()),
            });
        }
    }
    Ok(SuiteSummary::new("ksat", cases, start.elapsed()))
}

fn atom_sentence(atom: &str, values: IntervalSet) -> SimpleSentence {
    SimpleSentence::new(crate::formula::Formula::atom(atom), values)
}

fn zero_or_from(t: Rational) -> IntervalSet {
    IntervalSet::normalize([
        Interval::point(zero()).expect("point"),
        Interval::closed(t, one()).expect("interval"),
    ])
}

fn at_least(t: Rational) -> IntervalSet {
    IntervalSet::single(Interval::closed(t, one()).expect("interval"))
}

/// The classical tautology `(φ⇒ψ)⇒((¬φ⇒ψ)⇒ψ)` under various restrictions of
/// its atoms.
pub fn boolean_suite(only: Option<Logic>, config: &SolverConfig) -> Result<SuiteSummary, SuiteError> {
    let start = Instant::now();
    let sigma = boolean_example();
    let at = |set: IntervalSet| SimpleSentence::new(sigma.clone(), set);
    let theory = |logic: Logic, sentences: Vec<SimpleSentence>| {
        Theory::with_sentences(logic, sentences).map_err(|e| SuiteError::Setup(e.to_string()))
    };
    let mut cases = Vec::new();
    for logic in selected(only) {
        let crisp = zero_or_from(one());
        let mut run = |name: &str, sentences: Vec<SimpleSentence>, query: SimpleSentence, expected: Verdict| {
            let t = theory(logic, sentences)?;
            cases.push(entail_case(name.to_string(), &t, &query, expected, config)?);
            Ok::<(), SuiteError>(())
        };
        run("empty-at-1", vec![], at(at_least(one())), Verdict::NotEntailed)?;
        run(
            "both-crisp-at-1",
            vec![atom_sentence("phi", crisp.clone()), atom_sentence("psi", crisp.clone())],
            at(at_least(one())),
            Verdict::Entailed,
        )?;
        run("phi-crisp-at-1", vec![atom_sentence("phi", crisp.clone())], at(at_least(one())), Verdict::Entailed)?;
        run("psi-crisp-at-1", vec![atom_sentence("psi", crisp.clone())], at(at_least(one())), Verdict::Entailed)?;
        let half = if logic == Logic::Lukasiewicz {
            Verdict::Entailed
        } else {
            Verdict::NotEntailed
        };
        run("empty-at-1/2", vec![], at(at_least(rat(1, 2))), half)?;
        if logic == Logic::Goedel {
            for (n, d) in [(1, 4), (1, 2), (3, 4)] {
                let t = rat(n, d);
                let tag = format!("{n}/{d}");
                run(&format!("empty-at-{tag}"), vec![], at(at_least(t.clone())), Verdict::NotEntailed)?;
                for atom in ["phi", "psi"] {
                    run(
                        &format!("{atom}-gapped-at-{tag}"),
                        vec![atom_sentence(atom, zero_or_from(t.clone()))],
                        at(at_least(t.clone())),
                        Verdict::Entailed,
                    )?;
                }
            }
        }
    }
    Ok(SuiteSummary::new("boolean", cases, start.elapsed()))
}

/// The interval stress instance with `count` open intervals per sentence.
pub fn stress_suite(count: usize, only: Option<Logic>, config: &SolverConfig) -> Result<SuiteSummary, SuiteError> {
    if count == 0 {
        return Err(SuiteError::Setup("stress count must be positive".into()));
    }
    let start = Instant::now();
    let (query, sentences) = stress_sentences(count);
    let mut cases = Vec::new();
    for logic in selected(only) {
        let theory = Theory::with_sentences(logic, sentences.clone()).map_err(|e| SuiteError::Setup(e.to_string()))?;
        cases.push(entail_case(format!("stress-{count}"), &theory, &query, Verdict::Entailed, config)?);
    }
    Ok(SuiteSummary::new("stress", cases, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let cfg = SolverConfig::default();
        let b = boolean_suite(None, &cfg).unwrap();
        assert!(b.all_passed(), "{}", b.to_text());
        let k = ksat_suite(3, Some(Logic::Goedel), &cfg).unwrap();
        assert_eq!(k.cases.len(), 2);
        assert!(k.all_passed(), "{}", k.to_text());
        let s = stress_suite(5, None, &cfg).unwrap();
        assert!(s.all_passed(), "{}", s.to_text());
    }
}
