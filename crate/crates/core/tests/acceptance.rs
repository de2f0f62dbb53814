//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use rvlogic::corpus::{hajek_corpus, Validity};
use rvlogic::decide::check_sat;
use rvlogic::finite::{
    apply_rule, canonical_derivation, grid_models, model_entails, replay_proof_log,
    satisfying_model, FiniteDomain, FiniteSentence, Outcome, Rule, Tuple,
};
use rvlogic::formula::{atoms_of, subformula_closure, Formula};
use rvlogic::intervals::{Interval, IntervalSet};
use rvlogic::semantics::Logic;
use rvlogic::solver::SolverConfig;
use rvlogic::suites::{boolean_suite, hajek_suite, ksat_suite, stress_suite};
use rvlogic::theory::{SimpleSentence, Theory};

type Checked = Result<String, String>;
type Criterion = (&'static str, fn() -> Checked);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn tautology_suite() -> Checked {
    let summary = hajek_suite(None, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let corpus = hajek_corpus();
    let count = |v: Validity| corpus.iter().filter(|c| c.validity == v).count();
    ensure(corpus.len() == 82, || format!("corpus has {} cases", corpus.len()))?;
    ensure(count(Validity::Only(Logic::Lukasiewicz)) == 12 && count(Validity::Only(Logic::Goedel)) == 5, || {
        "logic-specific batch sizes differ".into()
    })?;
    ensure(summary.cases.len() == 164, || format!("{} runs instead of 164", summary.cases.len()))?;
    let failed: Vec<String> = summary.cases.iter().filter(|c| !c.passed()).map(|c| c.line()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    ensure(summary.elapsed_ms < 60_000.0, || format!("took {:.0}ms", summary.elapsed_ms))?;
    Ok(format!("164/164 verdicts match in {:.0}ms", summary.elapsed_ms))
}

fn ksat_grid() -> Checked {
    let summary = ksat_suite(6, None, &SolverConfig::default()).map_err(|e| e.to_string())?;
    ensure(summary.cases.len() == 20, || format!("{} cases", summary.cases.len()))?;
    let failed: Vec<String> = summary.cases.iter().filter(|c| !c.passed()).map(|c| c.line()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    ensure(summary.elapsed_ms < 300_000.0, || format!("took {:.0}ms", summary.elapsed_ms))?;
    Ok(format!("20/20 verdicts for k=3..6 in {:.0}ms", summary.elapsed_ms))
}

fn boolean_example() -> Checked {
    let summary = boolean_suite(None, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = summary.cases.iter().filter(|c| !c.passed()).map(|c| c.line()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    let gapped = summary.cases.iter().filter(|c| c.name.contains("gapped")).count();
    ensure(gapped == 6, || format!("{gapped} gapped-threshold cases"))?;
    Ok(format!("{} cases match", summary.cases.len()))
}

fn stress() -> Checked {
    let summary = stress_suite(1000, None, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = summary.cases.iter().filter(|c| !c.passed()).map(|c| c.line()).collect();
    ensure(failed.is_empty() && summary.cases.len() == 2, || failed.join("; "))?;
    for logic in Logic::ALL {
        let ms = summary.elapsed_for(logic);
        ensure(ms < 120_000.0, || format!("{logic} took {ms:.0}ms"))?;
    }
    Ok(format!(
        "1000 intervals: lukasiewicz {:.0}ms, goedel {:.0}ms",
        summary.elapsed_for(Logic::Lukasiewicz),
        summary.elapsed_for(Logic::Goedel)
    ))
}

/// Value tuples of the query components over all grid models of the theory.
fn realized(logic: Logic, domain: FiniteDomain, theory: &[FiniteSentence], comps: &[Formula]) -> BTreeSet<Tuple> {
    let probe = FiniteSentence::new(domain, comps.to_vec(), BTreeSet::new()).unwrap();
    let atoms = atoms_of(theory.iter().flat_map(|s| s.components().iter()).chain(comps));
    let mut out = BTreeSet::new();
    for m in grid_models(domain, atoms).unwrap() {
        if theory.iter().all(|s| s.satisfied_by(logic, domain, &m).unwrap()) {
            if let Some(t) = probe.tuple_of(logic, domain, &m).unwrap() {
                out.insert(t);
            }
        }
    }
    out
}

fn has_weights(sentences: &[&FiniteSentence]) -> bool {
    sentences.iter().any(|s| s.components().iter().any(Formula::has_weights))
}

fn soundness_completeness() -> Checked {
    let mut r = rng(5);
    let (mut runs, mut proved, mut weighted) = (0, 0, 0);
    let mut by_logic = [0usize; 2];
    while runs < 600 {
        let logic = random_logic(&mut r);
        let domain = FiniteDomain::new(r.gen_range(1..=4)).unwrap();
        let atoms = random_atoms(&mut r);
        let n = r.gen_range(0..=3);
        let theory: Vec<FiniteSentence> = (0..n)
            .map(|_| random_finite_sentence(&mut r, domain, &atoms, logic, 2, 2))
            .collect();
        let mut query = random_finite_sentence(&mut r, domain, &atoms, logic, 2, 2);
        let refs: Vec<&FiniteSentence> = theory.iter().chain([&query]).collect();
        if closure_product(domain, &refs) > 40_000 {
            continue;
        }
        let weights = has_weights(&refs);
        if r.gen_bool(0.5) {
            // widen the query to everything the theory allows, plus noise
            let mut tuples = realized(logic, domain, &theory, query.components());
            tuples.extend(query.tuples().iter().cloned());
            query = FiniteSentence::new(domain, query.components().to_vec(), tuples).unwrap();
        }
        runs += 1;
        by_logic[(logic == Logic::Goedel) as usize] += 1;
        if weights {
            weighted += 1;
        }
        let entailed = model_entails(logic, domain, &theory, &query).map_err(|e| e.to_string())?;
        match canonical_derivation(logic, domain, &theory, &query).map_err(|e| e.to_string())? {
            Outcome::Proved(proof) => {
                proved += 1;
                ensure(entailed, || format!("proof found for a non-entailment (run {runs})"))?;
                proof.verify(logic, &theory).map_err(|e| e.to_string())?;
                ensure(proof.conclusion() == Some(&query), || format!("run {runs}: conclusion is not the query"))?;
                let replayed = replay_proof_log(logic, domain, &theory, &proof.log()).map_err(|e| e.to_string())?;
                ensure(replayed == query, || format!("run {runs}: log replay differs"))?;
            }
            Outcome::Refuted { model, .. } => {
                ensure(!entailed, || format!("run {runs}: refuted an entailment"))?;
                let violates = theory.iter().all(|s| s.satisfied_by(logic, domain, &model).unwrap())
                    && !query.satisfied_by(logic, domain, &model).unwrap();
                ensure(violates, || format!("run {runs}: countermodel {model} is not one"))?;
            }
        }
    }
    ensure(weighted >= 50 && by_logic.iter().all(|&c| c >= 100), || {
        format!("thin coverage: {weighted} weighted, {by_logic:?} per logic")
    })?;
    Ok(format!(
        "{runs} instances ({proved} proved, {} refuted, {weighted} weighted), zero mismatches",
        runs - proved
    ))
}

fn grid_restricted_theory(r: &mut TestRng) -> (Theory, Vec<SimpleSentence>, FiniteDomain) {
    let logic = random_logic(r);
    let d = r.gen_range(1..=4u16);
    let domain = FiniteDomain::new(d).unwrap();
    let atoms = random_atoms(r);
    let mut sentences = Vec::new();
    for a in &atoms {
        let mut points: Vec<u16> = (0..=d).filter(|_| r.gen_bool(0.6)).collect();
        if points.is_empty() {
            points.push(r.gen_range(0..=d));
        }
        let set = IntervalSet::normalize(points.iter().map(|&i| Interval::point(domain.value(i)).unwrap()));
        sentences.push(SimpleSentence::new(Formula::atom(*a), set));
    }
    for _ in 0..r.gen_range(1..=3) {
        let f = random_formula(r, &atoms, 2, logic, d.into());
        sentences.push(SimpleSentence::new(f, random_interval_set(r, 2 * i64::from(d), 2)));
    }
    sentences.shuffle(r);
    let theory = Theory::with_sentences(logic, sentences.clone()).unwrap();
    (theory, sentences, domain)
}

fn oracle_equivalence() -> Checked {
    let mut r = rng(6);
    let cfg = SolverConfig::default();
    let (mut sat, mut unsat) = (0, 0);
    for run in 0..300 {
        let (theory, sentences, domain) = grid_restricted_theory(&mut r);
        let finite: Vec<FiniteSentence> = sentences.iter().map(|s| FiniteSentence::from_simple(domain, s)).collect();
        let expected = satisfying_model(theory.logic(), domain, &finite).map_err(|e| e.to_string())?.is_some();
        let got = check_sat(&theory, &cfg).map_err(|e| format!("run {run}: {e}"))?.found_model();
        ensure(got == expected, || format!("run {run}: solver {got}, enumeration {expected}\n{theory}"))?;
        if got {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    ensure(sat >= 30 && unsat >= 30, || format!("unbalanced: {sat} SAT, {unsat} UNSAT"))?;
    Ok(format!("300 theories ({sat} SAT, {unsat} UNSAT), zero mismatches"))
}

/// Checks `premises ⇒ conclusion` (and the converse when `equivalent`) on
/// every grid model; returns the number of violations.
fn model_check(
    logic: Logic,
    domain: FiniteDomain,
    premises: &[&FiniteSentence],
    conclusion: &FiniteSentence,
    equivalent: bool,
) -> usize {
    let atoms = atoms_of(premises.iter().flat_map(|s| s.components().iter()).chain(conclusion.components()));
    let mut bad = 0;
    for m in grid_models(domain, atoms).unwrap() {
        let p = premises.iter().all(|s| s.satisfied_by(logic, domain, &m).unwrap());
        let c = conclusion.satisfied_by(logic, domain, &m).unwrap();
        if (p && !c) || (equivalent && c && !p) {
            bad += 1;
        }
    }
    bad
}

fn rules_and_minimization() -> Checked {
    let mut r = rng(7);
    let (mut instances, mut applications, mut minimized_checks) = (0, 0, 0);
    let mut violations = Vec::new();
    while instances < 150 {
        let logic = random_logic(&mut r);
        let domain = FiniteDomain::new(r.gen_range(1..=3)).unwrap();
        let atoms = random_atoms(&mut r);
        let s = random_finite_sentence(&mut r, domain, &atoms, logic, 3, 2);
        if closure_product(domain, &[&s]) > 20_000 {
            continue;
        }
        instances += 1;
        let k = s.arity();
        let t = FiniteSentence::new(domain, s.components().to_vec(), random_tuples(&mut r, domain, k, 0.5)).unwrap();

        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut r);
        let extra = loop {
            let f = random_formula(&mut r, &atoms, 1, logic, domain.denominator().into());
            if !s.components().contains(&f) {
                break f;
            }
        };
        let mut superset: BTreeSet<Tuple> = s.tuples().clone();
        superset.extend(random_tuples(&mut r, domain, k, 0.3));

        let mut cases: Vec<(Rule, Vec<&FiniteSentence>, bool)> = vec![
            (Rule::Axiom { components: s.components().to_vec() }, vec![], true),
            (Rule::Perm { perm }, vec![&s], true),
            (Rule::Add { components: vec![extra] }, vec![&s], true),
            (Rule::Intersect, vec![&s, &t], true),
            (Rule::Superset { tuples: superset }, vec![&s], false),
            (Rule::Operators, vec![&s], true),
        ];
        if k > 1 {
            cases.push((Rule::Proj { r: r.gen_range(1..k) }, vec![&s], false));
        }
        for (rule, inputs, equivalent) in cases {
            let out = apply_rule(logic, domain, &rule, &inputs).map_err(|e| format!("{}: {e}", rule.tag()))?;
            applications += 1;
            let bad = model_check(logic, domain, &inputs, &out, equivalent);
            if bad > 0 {
                violations.push(format!("{} on {} ({bad} models)", rule.tag(), s.display(domain)));
            }
        }

        // the truth-function filter over a closure-complete list leaves only realizable tuples
        let closure = subformula_closure(s.components());
        let base = FiniteSentence::new(domain, closure.clone(), random_tuples(&mut r, domain, closure.len(), 0.7)).unwrap();
        let filtered = apply_rule(logic, domain, &Rule::Operators, &[&base]).map_err(|e| e.to_string())?;
        minimized_checks += 1;
        if !filtered.is_minimized(logic, domain).map_err(|e| e.to_string())? {
            violations.push(format!("unrealized tuple after Operators on {}", filtered.display(domain)));
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!(
        "{instances} instances, {applications} rule applications, {minimized_checks} minimization checks, zero violations"
    ))
}

fn interval_algebra() -> Checked {
    let mut r = rng(8);
    let mut violations: Vec<String> = Vec::new();
    let unit = IntervalSet::unit();
    let empty = IntervalSet::empty();
    for _ in 0..1500 {
        let den = r.gen_range(1..=12);
        let raw: Vec<_> = (0..r.gen_range(0..=4)).map(|_| random_interval(&mut r, den)).collect();
        let a = IntervalSet::normalize(raw.clone());
        let b = random_interval_set(&mut r, den, 3);
        let c = random_interval_set(&mut r, den, 3);
        let ca = a.complement();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                violations.push(format!("{what} for a={a}, b={b}, c={c}"));
            }
        };
        check(ca.complement() == a, "complement involution");
        check(IntervalSet::normalize(a.intervals().to_vec()) == a, "normalize idempotent");
        check(a.intersect(&b) == b.intersect(&a), "intersect commutative");
        check(a.intersect(&b).intersect(&c) == a.intersect(&b.intersect(&c)), "intersect associative");
        check(a.intersect(&a) == a, "intersect idempotent");
        check(a.intersect(&unit) == a, "unit identity");
        check(a.intersect(&ca) == empty && a.union(&ca) == unit, "complement partition");
        for v in probe_points(den) {
            check(a.contains(&v) != ca.contains(&v), "membership xor");
            check(a.contains(&v) == raw.iter().any(|i| i.contains(&v)), "normalize membership");
            check(a.intersect(&b).contains(&v) == (a.contains(&v) && b.contains(&v)), "intersect membership");
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    Ok("1500 random sets, zero violations".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("tautology corpus verdicts", tautology_suite),
        ("k-SAT verdict grid, k = 3..6", ksat_grid),
        ("Boolean-logic example", boolean_example),
        ("stress test, 1000 intervals", stress),
        ("finite soundness and completeness", soundness_completeness),
        ("solver agrees with grid enumeration", oracle_equivalence),
        ("rule soundness and minimization", rules_and_minimization),
        ("interval algebra laws", interval_algebra),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} [PRIMARY] {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} [PRIMARY] {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
