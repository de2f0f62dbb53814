//! Parse formulas and evaluate them under both logics.

use rvlogic::formula::{parse_formula, subformula_closure};
use rvlogic::rational::{format_rational, rat};
use rvlogic::semantics::{evaluate, Logic, Model};

fn main() {
    let model = Model::new().with("x", rat(7, 10)).with("y", rat(3, 5));
    for text in ["x & y", "x && y", "x | y", "x -> y", "y -> x", "!x", "~x", "^x", "x <-> y", "wor[2,1](x, y)", "wand[1/2,1](x, y)"] {
        let f = parse_formula(text).expect("valid formula");
        let values: Vec<String> = Logic::ALL
            .into_iter()
            .map(|logic| match evaluate(logic, &f, &model) {
                Ok(v) => format!("{logic}={}", format_rational(&v)),
                Err(e) => format!("{logic}: {e}"),
            })
            .collect();
        println!("{:<20} {}", f.to_string(), values.join("  "));
    }

    let sigma = parse_formula("(phi -> psi) -> ((!phi -> psi) -> psi)").expect("valid formula");
    println!("\nclosure of {sigma}:");
    for (i, g) in subformula_closure([&sigma]).iter().enumerate() {
        println!("  {i}: {g}");
    }
}
