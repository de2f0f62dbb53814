//! Solve small linear programs exactly, maximizing a gap variable.

use rvlogic::milp::{LinearExpr, Relation};
use rvlogic::rational::{format_rational, int, rat, zero};
use rvlogic::solver::{solve_lp, LpProblem, SolveResult};

fn report(label: &str, p: &LpProblem) {
    match solve_lp(p).expect("bounded problem") {
        SolveResult::Feasible { objective, assignment } => {
            let values: Vec<String> = assignment.iter().map(format_rational).collect();
            println!("{label}: optimum {} at [{}]", format_rational(&objective), values.join(", "));
        }
        SolveResult::Infeasible => println!("{label}: infeasible"),
    }
}

fn main() {
    // maximize d subject to x >= 3/10 + d and x <= 7/10
    let mut p = LpProblem::default();
    let d = p.add_var(zero(), int(1));
    let x = p.add_var(zero(), int(1));
    p.objective = d;
    p.add_constraint(LinearExpr::var(d).minus(x).offset(rat(3, 10)), Relation::Le);
    p.add_constraint(LinearExpr::var(x).offset(rat(-7, 10)), Relation::Le);
    report("strict lower bound", &p);

    // adding x <= 1/5 empties the region
    p.add_constraint(LinearExpr::var(x).offset(rat(-1, 5)), Relation::Le);
    report("with x <= 1/5", &p);
}
