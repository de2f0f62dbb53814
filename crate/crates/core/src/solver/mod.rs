//! Exact LP and branch-and-bound feasibility.

mod bb;
mod num;
mod simplex;

use std::time::Duration;

use thiserror::Error;

use crate::milp::{LinearExpr, Relation, VarId};
use crate::rational::Rational;

pub use bb::solve_milp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("node limit of {0} branch-and-bound nodes exceeded")]
    NodeLimit(u64),
    #[error("time limit of {0:?} exceeded")]
    TimeLimit(Duration),
    #[error("internal solver error: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Feasible {
        assignment: Vec<Rational>,
        objective: Rational,
    },
    Infeasible,
}

impl SolveResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveResult::Feasible { .. })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolverConfig {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Print one line per branch-and-bound node to stderr.
    pub trace: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub booleans: usize,
    pub nodes: u64,
    pub pivots: u64,
    pub elapsed: Duration,
}

/// A plain linear program: maximize one variable subject to rows `expr (≤|=) 0`.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    pub bounds: Vec<(Rational, Rational)>,
    pub constraints: Vec<(LinearExpr, Relation)>,
    pub objective: VarId,
}

impl LpProblem {
    pub fn add_var(&mut self, lower: Rational, upper: Rational) -> VarId {
        self.bounds.push((lower, upper));
        VarId(self.bounds.len() - 1)
    }

    pub fn add_constraint(&mut self, expr: LinearExpr, relation: Relation) {
        self.constraints.push((expr, relation));
    }
}

/// Solves an LP exactly. A zero optimum is reported as feasible.
pub fn solve_lp(problem: &LpProblem) -> Result<SolveResult, SolverError> {
    let mut s = simplex::Simplex::new();
    for (l, u) in &problem.bounds {
        if l > u {
            return Ok(SolveResult::Infeasible);
        }
        s.add_var(Some(l.clone()), Some(u.clone()));
    }
    for (expr, relation) in &problem.constraints {
        if !bb::add_linear_row(&mut s, expr, *relation) {
            return Ok(SolveResult::Infeasible);
        }
    }
    if !s.check()? {
        return Ok(SolveResult::Infeasible);
    }
    s.maximize(problem.objective.0)?;
    let assignment: Vec<Rational> = (0..problem.bounds.len()).map(|v| s.value(v)).collect();
    Ok(SolveResult::Feasible {
        objective: assignment[problem.objective.0].clone(),
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, zero};

    fn lp() -> (LpProblem, VarId, VarId) {
        let mut p = LpProblem::default();
        let d = p.add_var(zero(), int(1));
        let x = p.add_var(zero(), int(1));
        p.objective = d;
        (p, d, x)
    }

    #[test]
    fn slack_example() {
        let (mut p, d, x) = lp();
        // x ≥ 0.3 + δ, x ≤ 0.7
        p.add_constraint(LinearExpr::var(d).minus(x).offset(rat(3, 10)), Relation::Le);
        p.add_constraint(LinearExpr::var(x).offset(rat(-7, 10)), Relation::Le);
        match solve_lp(&p).unwrap() {
            SolveResult::Feasible { objective, .. } => assert_eq!(objective, rat(2, 5)),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn forced_equality_gives_zero_gap() {
        let (mut p, d, x) = lp();
        let y = p.add_var(zero(), int(1));
        // x ≥ y + δ, x ≤ y
        p.add_constraint(LinearExpr::var(y).minus(x).plus(d, int(1)), Relation::Le);
        p.add_constraint(LinearExpr::var(x).minus(y), Relation::Le);
        match solve_lp(&p).unwrap() {
            SolveResult::Feasible { objective, .. } => assert_eq!(objective, zero()),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn contradictory_bounds() {
        let (mut p, _, x) = lp();
        p.add_constraint(LinearExpr::var(x).offset(rat(-1, 5)), Relation::Le);
        p.add_constraint(LinearExpr::constant(rat(3, 10)).minus(x), Relation::Le);
        assert_eq!(solve_lp(&p).unwrap(), SolveResult::Infeasible);
    }
}
