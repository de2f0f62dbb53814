//! Satisfiability and entailment for interval sentences over Lukasiewicz and
//! Goedel logic, decided exactly through a mixed-integer encoding, with a
//! finite-domain proof engine as an independent oracle.

pub mod cli;
pub mod corpus;
pub mod decide;
pub mod finite;
pub mod formula;
pub mod intervals;
pub mod milp;
pub mod rational;
pub mod report;
pub mod semantics;
pub mod solver;
pub mod suites;
pub mod theory;
