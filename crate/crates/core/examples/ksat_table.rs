//! The k-SAT verdict grid, k = 3..=5 by default (pass a larger k to extend).

use rvlogic::solver::SolverConfig;
use rvlogic::suites::ksat_suite;

fn main() {
    let max_k = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let summary = ksat_suite(max_k, None, &SolverConfig::default()).expect("suite runs");
    print!("{}", summary.to_text());
}
