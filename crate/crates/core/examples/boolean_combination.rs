//! Conjunction, disjunction and negation of sentences over a finite grid.

use rvlogic::finite::{boolean_combine, BoolOp, FiniteDomain, FiniteSentence};
use rvlogic::formula::parse_formula;
use rvlogic::semantics::Logic;
use rvlogic::theory::SimpleSentence;

fn main() {
    let d = FiniteDomain::new(2).expect("positive denominator");
    let s1 = FiniteSentence::from_simple(
        d,
        &SimpleSentence::new(parse_formula("x & y").unwrap(), "[0.5,1]".parse().unwrap()),
    );
    let s2 = FiniteSentence::from_simple(
        d,
        &SimpleSentence::new(parse_formula("x").unwrap(), "[0,0.5]".parse().unwrap()),
    );
    let logic = Logic::Lukasiewicz;
    for (label, op, args) in [
        ("and", BoolOp::And, vec![s1.clone(), s2.clone()]),
        ("or", BoolOp::Or, vec![s1.clone(), s2.clone()]),
        ("not", BoolOp::Not, vec![s1.clone()]),
    ] {
        let out = boolean_combine(logic, d, op, &args).expect("small instance");
        println!("{label:<4} {}", out.display(d));
    }
}
