//! Decide entailment with the exact mixed-integer procedure.

use rvlogic::decide::check_entails;
use rvlogic::formula::Formula;
use rvlogic::intervals::parse_interval_set;
use rvlogic::corpus::boolean_example;
use rvlogic::semantics::Logic;
use rvlogic::solver::SolverConfig;
use rvlogic::theory::{SimpleSentence, Theory};

fn main() {
    let cfg = SolverConfig::default();
    let sigma = boolean_example();
    let crisp = parse_interval_set("[0,0], [1,1]").expect("valid set");
    for logic in Logic::ALL {
        for (label, sentences) in [
            ("no premises", vec![]),
            ("phi crisp", vec![SimpleSentence::new(Formula::atom("phi"), crisp.clone())]),
        ] {
            let theory = Theory::with_sentences(logic, sentences).expect("valid theory");
            for set in ["[1,1]", "[0.5,1]"] {
                let query = SimpleSentence::new(sigma.clone(), parse_interval_set(set).expect("valid set"));
                let d = check_entails(&theory, &query, &cfg).expect("decided");
                match &d.model {
                    None => println!("{logic:<11} {label:<12} sigma in {set:<8} entailed"),
                    Some(m) => println!("{logic:<11} {label:<12} sigma in {set:<8} countermodel {m}"),
                }
            }
        }
    }
}
