//! Show the mixed-integer encoding of an entailment question in LP format.

use rvlogic::formula::parse_formula;
use rvlogic::intervals::parse_interval_set;
use rvlogic::milp::encode_entailment;
use rvlogic::semantics::Logic;
use rvlogic::theory::{SimpleSentence, Theory};

fn main() {
    let theory = Theory::with_sentences(
        Logic::Goedel,
        [SimpleSentence::new(
            parse_formula("x && y").expect("valid formula"),
            parse_interval_set("[0.5,1]").expect("valid set"),
        )],
    )
    .expect("valid theory");
    let query = SimpleSentence::new(
        parse_formula("x").expect("valid formula"),
        parse_interval_set("[0.2,0.3], (0.5,1]").expect("valid set"),
    );
    let problem = encode_entailment(&theory, &query).expect("encodable");
    println!(
        "{} variables, {} booleans, {} constraints",
        problem.variables.len(),
        problem.num_booleans(),
        problem.constraints.len()
    );
    print!("{}", problem.to_lp_format());
}
