//! Build a derivation over a finite grid, print its log and replay it.

use rvlogic::finite::{canonical_derivation, replay_proof_log, FiniteDomain, FiniteSentence, Outcome};
use rvlogic::semantics::Logic;
use rvlogic::theory::parse_theory;

fn main() {
    let domain = FiniteDomain::new(2).expect("positive denominator");
    for query in ["A1 in [0,0.5]", "A1 in [0.5,0.5]"] {
        let file = parse_theory(&format!("logic goedel\nsentence: A1 | A2 in [0.5,0.5]\nquery: {query}\n"))
            .expect("valid theory");
        let premises: Vec<FiniteSentence> = file
            .theory
            .sentences()
            .iter()
            .map(|s| FiniteSentence::from_simple(domain, s))
            .collect();
        let goal = FiniteSentence::from_product(domain, &file.query.expect("query").components).expect("small");
        println!("query {query}:");
        match canonical_derivation(Logic::Goedel, domain, &premises, &goal).expect("within size guard") {
            Outcome::Proved(proof) => {
                print!("{}", proof.log());
                let replayed = replay_proof_log(Logic::Goedel, domain, &premises, &proof.log()).expect("replays");
                println!("replayed conclusion: {}\n", replayed.display(domain));
            }
            Outcome::Refuted { tuple, model } => {
                println!("refuted by {} from model {model}\n", domain.format_tuple(&tuple));
            }
        }
    }
}
