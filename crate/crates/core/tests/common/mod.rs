//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rvlogic::finite::{FiniteDomain, FiniteSentence, Tuple};
use rvlogic::formula::{subformula_closure, BinaryOp, Formula, UnaryOp, WeightedOp};
use rvlogic::intervals::{Interval, IntervalSet};
use rvlogic::rational::{int, rat, Rational};
use rvlogic::semantics::Logic;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const BINARY: [BinaryOp; 6] = [
    BinaryOp::StrongAnd,
    BinaryOp::WeakAnd,
    BinaryOp::StrongOr,
    BinaryOp::WeakOr,
    BinaryOp::Implies,
    BinaryOp::Equiv,
];
pub const UNARY: [UnaryOp; 3] = [UnaryOp::Not, UnaryOp::Inv, UnaryOp::Delta];

pub fn random_logic(r: &mut TestRng) -> Logic {
    *Logic::ALL.choose(r).unwrap()
}

/// A formula of height at most `depth` over `atoms`. Weighted connectives
/// (integer weights, so grid values stay on the grid) only under Lukasiewicz;
/// constants are grid points of `denominator`.
pub fn random_formula(r: &mut TestRng, atoms: &[&str], depth: u32, logic: Logic, denominator: i64) -> Formula {
    let leaf = depth == 0 || r.gen_bool(0.3);
    if leaf {
        if r.gen_bool(0.1) {
            return Formula::constant(rat(r.gen_range(0..=denominator), denominator));
        }
        return Formula::atom(*atoms.choose(r).unwrap());
    }
    let roll = r.gen_range(0..10);
    if roll < 2 {
        Formula::unary(*UNARY.choose(r).unwrap(), random_formula(r, atoms, depth - 1, logic, denominator))
    } else if roll < 4 && logic == Logic::Lukasiewicz {
        let op = if r.gen_bool(0.5) { WeightedOp::StrongAnd } else { WeightedOp::StrongOr };
        Formula::weighted(
            op,
            int(r.gen_range(0..=3)),
            int(r.gen_range(0..=3)),
            random_formula(r, atoms, depth - 1, logic, denominator),
            random_formula(r, atoms, depth - 1, logic, denominator),
        )
    } else {
        Formula::binary(
            *BINARY.choose(r).unwrap(),
            random_formula(r, atoms, depth - 1, logic, denominator),
            random_formula(r, atoms, depth - 1, logic, denominator),
        )
    }
}

/// `k` pairwise distinct random formulas.
pub fn distinct_formulas(r: &mut TestRng, atoms: &[&str], k: usize, depth: u32, logic: Logic, d: i64) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    while out.len() < k {
        let f = random_formula(r, atoms, depth, logic, d);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Keeps each tuple of the grid product with probability `p`.
pub fn random_tuples(r: &mut TestRng, domain: FiniteDomain, arity: usize, p: f64) -> BTreeSet<Tuple> {
    let full = FiniteSentence::full(domain, (0..arity).map(|i| Formula::atom(format!("_{i}"))).collect()).unwrap();
    full.tuples().iter().filter(|_| r.gen_bool(p)).cloned().collect()
}

pub fn random_finite_sentence(
    r: &mut TestRng,
    domain: FiniteDomain,
    atoms: &[&str],
    logic: Logic,
    max_arity: usize,
    depth: u32,
) -> FiniteSentence {
    let k = r.gen_range(1..=max_arity);
    let comps = distinct_formulas(r, atoms, k, depth, logic, domain.denominator().into());
    let p = r.gen_range(0.2..0.9);
    let tuples = random_tuples(r, domain, k, p);
    FiniteSentence::new(domain, comps, tuples).unwrap()
}

/// Size of the full grid product over the joint closure of the sentences.
pub fn closure_product(domain: FiniteDomain, sentences: &[&FiniteSentence]) -> usize {
    let closure = subformula_closure(sentences.iter().flat_map(|s| s.components().iter()));
    domain.size().saturating_pow(closure.len() as u32)
}

pub fn random_atoms(r: &mut TestRng) -> Vec<&'static str> {
    let n = r.gen_range(1..=3);
    ["a", "b", "c"][..n].to_vec()
}

/// A random interval with endpoints on the grid of denominator `den`.
pub fn random_interval(r: &mut TestRng, den: i64) -> Interval {
    loop {
        let mut a = r.gen_range(0..=den);
        let mut b = r.gen_range(0..=den);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (lo, hi) = if a == b { (false, false) } else { (r.gen_bool(0.5), r.gen_bool(0.5)) };
        if let Ok(i) = Interval::new(rat(a, den), rat(b, den), lo, hi) {
            return i;
        }
    }
}

pub fn random_interval_set(r: &mut TestRng, den: i64, max_intervals: usize) -> IntervalSet {
    let n = r.gen_range(0..=max_intervals);
    IntervalSet::normalize((0..n).map(|_| random_interval(r, den)))
}

/// Probe points for membership checks: every multiple of `1/(2·den)`.
pub fn probe_points(den: i64) -> Vec<Rational> {
    (0..=2 * den).map(|i| rat(i, 2 * den)).collect()
}
