//! Parse a theory file, split product sentences and negate a query.

use rvlogic::theory::{negate_sentence, parse_theory};

const TEXT: &str = "\
# two-component sentence, split into simple sentences
logic goedel
sentence: x in [0,0.5]; y in (0.5,1]
sentence: x -> y in [1,1]
query: x || y in (0.5,1]
";

fn main() {
    let file = parse_theory(TEXT).expect("valid theory");
    print!("{}", file.theory);
    if let Some(query) = &file.query {
        for c in &query.components {
            println!("query component: {c}");
            println!("its negation:    {}", negate_sentence(c));
        }
    }
}
