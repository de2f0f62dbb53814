//! Satisfiability and entailment verdicts with validated witnesses.

use thiserror::Error;

use crate::milp::{encode_entailment, encode_satisfiability, MilpError, MilpProblem};
use crate::semantics::{evaluate, Model};
use crate::solver::{solve_milp, SolveResult, SolveStats, SolverConfig, SolverError};
use crate::theory::{negate_sentence, Query, SimpleSentence, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Encode(#[from] MilpError),
    #[error(transparent)]
    Solve(#[from] SolverError),
    #[error("witness failed validation: {0}")]
    BadWitness(String),
}

/// Outcome of one MILP run: a validated model if one exists.
#[derive(Clone, Debug)]
pub struct Decision {
    pub model: Option<Model>,
    pub stats: SolveStats,
}

fn run(problem: &MilpProblem, config: &SolverConfig) -> Result<(Option<Model>, SolveStats), DecideError> {
    let (result, stats) = solve_milp(problem, config)?;
    match result {
        SolveResult::Infeasible => Ok((None, stats)),
        SolveResult::Feasible { assignment, .. } => {
            let model = problem.check_semantics(&assignment).map_err(DecideError::BadWitness)?;
            Ok((Some(model), stats))
        }
    }
}

fn validate(theory: &Theory, extra: Option<&SimpleSentence>, model: &Model) -> Result<(), DecideError> {
    for s in theory.sentences().iter().chain(extra) {
        let ok = s
            .satisfied_by(theory.logic(), model)
            .map_err(|e| DecideError::BadWitness(e.to_string()))?;
        if !ok {
            let value = evaluate(theory.logic(), &s.formula, model).map_err(|e| DecideError::BadWitness(e.to_string()))?;
            return Err(DecideError::BadWitness(format!("{model} gives {} the value {value}, outside {}", s.formula, s.values)));
        }
    }
    Ok(())
}

/// Finds a model of the theory, if any.
pub fn check_sat(theory: &Theory, config: &SolverConfig) -> Result<Decision, DecideError> {
    let problem = encode_satisfiability(theory)?;
    let (model, stats) = run(&problem, config)?;
    if let Some(m) = &model {
        validate(theory, None, m)?;
    }
    Ok(Decision { model, stats })
}

/// Decides `theory ⊨ query`; a returned model is a countermodel.
pub fn check_entails(theory: &Theory, query: &SimpleSentence, config: &SolverConfig) -> Result<Decision, DecideError> {
    let problem = encode_entailment(theory, query)?;
    let (model, stats) = run(&problem, config)?;
    if let Some(m) = &model {
        validate(theory, Some(&negate_sentence(query)), m)?;
    }
    Ok(Decision { model, stats })
}

impl Decision {
    pub fn found_model(&self) -> bool {
        self.model.is_some()
    }
}

/// Per-component decisions for a multi-component query.
pub fn check_query(theory: &Theory, query: &Query, config: &SolverConfig) -> Result<Vec<Decision>, DecideError> {
    query
        .components
        .iter()
        .map(|c| check_entails(theory, c, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::intervals::parse_interval_set;
    use crate::rational::{int, rat};
    use crate::semantics::Logic;

    fn sentence(f: &str, s: &str) -> SimpleSentence {
        SimpleSentence::new(parse_formula(f).unwrap(), parse_interval_set(s).unwrap())
    }

    fn theory(logic: Logic, sentences: &[(&str, &str)]) -> Theory {
        Theory::with_sentences(logic, sentences.iter().map(|(f, s)| sentence(f, s))).unwrap()
    }

    #[test]
    fn point_and_open_bounds() {
        let cfg = SolverConfig::default();
        let d = check_sat(&theory(Logic::Lukasiewicz, &[("x", "[1,1]")]), &cfg).unwrap();
        assert_eq!(d.model.unwrap().get("x"), Some(&int(1)));
        let d = check_sat(&theory(Logic::Lukasiewicz, &[("x", "(0,1)")]), &cfg).unwrap();
        let x = d.model.unwrap().get("x").unwrap().clone();
        assert!(x > int(0) && x < int(1));
        let d = check_sat(&theory(Logic::Goedel, &[("x", "[0,0.2)"), ("x", "(0.8,1]")]), &cfg).unwrap();
        assert!(d.model.is_none());
    }

    #[test]
    fn entailment_basics() {
        let cfg = SolverConfig::default();
        let empty = Theory::new(Logic::Lukasiewicz);
        assert!(!check_entails(&empty, &sentence("x", "[0,1]"), &cfg).unwrap().found_model());
        let d = check_entails(&empty, &sentence("x", "[1,1]"), &cfg).unwrap();
        assert!(d.model.unwrap().get("x").unwrap() < &int(1));
        let sigma = "(p -> q) -> ((!p -> q) -> q)";
        assert!(!check_entails(&empty, &sentence(sigma, "[0.5,1]"), &cfg).unwrap().found_model());
        let g = Theory::new(Logic::Goedel);
        assert!(check_entails(&g, &sentence(sigma, "[0.5,1]"), &cfg).unwrap().found_model());
    }

    #[test]
    fn disjunctive_sentences() {
        let cfg = SolverConfig::default();
        let t = theory(Logic::Goedel, &[("x || y", "[0.5,0.5]")]);
        assert!(!check_entails(&t, &sentence("x", "[0,0.5]"), &cfg).unwrap().found_model());
        let d = check_entails(&t, &sentence("x", "[0.5,0.5]"), &cfg).unwrap();
        assert!(d.model.unwrap().get("x").unwrap() < &rat(1, 2));
        let t = theory(Logic::Lukasiewicz, &[("x", "[0,0.1], (0.3,0.4), [0.9,1]"), ("x & x", "[0.5,1]")]);
        let d = check_sat(&t, &cfg).unwrap();
        assert!(d.model.unwrap().get("x").unwrap() >= &rat(9, 10));
    }
}
