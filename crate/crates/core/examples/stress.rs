//! Entailment with many open intervals per sentence.

use rvlogic::solver::SolverConfig;
use rvlogic::suites::stress_suite;

fn main() {
    let count = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1000);
    let summary = stress_suite(count, None, &SolverConfig::default()).expect("suite runs");
    print!("{}", summary.to_text());
}
