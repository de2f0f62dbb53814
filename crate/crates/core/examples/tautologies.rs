//! Run the tautology corpus under both logics.

use rvlogic::solver::SolverConfig;
use rvlogic::suites::hajek_suite;

fn main() {
    let summary = hajek_suite(None, &SolverConfig::default()).expect("suite runs");
    for case in summary.cases.iter().filter(|c| !c.passed()) {
        println!("{}", case.line());
    }
    println!("{} passed, {} failed in {:.0}ms", summary.passed, summary.failed, summary.elapsed_ms);
}
