mod common;

use std::collections::BTreeSet;

use rand::Rng;

use common::*;
use rvlogic::finite::{
    apply_rule, boolean_combine, canonical_derivation, find_countermodel, grid_models, minimize, parse_proof_log,
    replay_proof_log, BoolOp, FiniteDomain, FiniteError, FiniteSentence, Outcome, Rule,
};
use rvlogic::formula::{atoms_of, parse_formula, Formula};
use rvlogic::semantics::{Logic, Model};
use rvlogic::theory::SimpleSentence;

fn simple(d: FiniteDomain, f: &str, s: &str) -> FiniteSentence {
    FiniteSentence::from_simple(d, &SimpleSentence::new(parse_formula(f).unwrap(), s.parse().unwrap()))
}

fn models_of<'a>(d: FiniteDomain, sentences: impl IntoIterator<Item = &'a FiniteSentence>) -> Vec<Model> {
    let atoms = atoms_of(sentences.into_iter().flat_map(|s| s.components().iter()));
    grid_models(d, atoms).unwrap().collect()
}

#[test]
fn boolean_combinations_follow_model_semantics() {
    let mut r = rng(21);
    let mut runs = 0;
    while runs < 120 {
        let logic = random_logic(&mut r);
        let d = FiniteDomain::new(r.gen_range(1..=3)).unwrap();
        let atoms = random_atoms(&mut r);
        let s = random_finite_sentence(&mut r, d, &atoms, logic, 2, 2);
        let t = random_finite_sentence(&mut r, d, &atoms, logic, 2, 2);
        if closure_product(d, &[&s, &t]) > 20_000 {
            continue;
        }
        runs += 1;
        let and = boolean_combine(logic, d, BoolOp::And, &[s.clone(), t.clone()]).unwrap();
        let or = boolean_combine(logic, d, BoolOp::Or, &[s.clone(), t.clone()]).unwrap();
        let not = boolean_combine(logic, d, BoolOp::Not, std::slice::from_ref(&s)).unwrap();
        assert!(not.is_minimized(logic, d).unwrap());
        for m in models_of(d, [&s, &t]) {
            let a = s.satisfied_by(logic, d, &m).unwrap();
            let b = t.satisfied_by(logic, d, &m).unwrap();
            assert_eq!(and.satisfied_by(logic, d, &m).unwrap(), a && b);
            assert_eq!(or.satisfied_by(logic, d, &m).unwrap(), a || b);
            assert_eq!(not.satisfied_by(logic, d, &m).unwrap(), !a);
        }
    }
}

#[test]
fn minimize_is_equivalent_and_idempotent() {
    let mut r = rng(22);
    let mut runs = 0;
    while runs < 120 {
        let logic = random_logic(&mut r);
        let d = FiniteDomain::new(r.gen_range(1..=3)).unwrap();
        let atoms = random_atoms(&mut r);
        let s = random_finite_sentence(&mut r, d, &atoms, logic, 3, 2);
        if closure_product(d, &[&s]) > 20_000 {
            continue;
        }
        runs += 1;
        let m1 = minimize(logic, d, &s).unwrap();
        assert!(m1.is_minimized(logic, d).unwrap());
        assert_eq!(minimize(logic, d, &m1).unwrap(), m1);
        for m in models_of(d, [&s]) {
            assert_eq!(s.satisfied_by(logic, d, &m).unwrap(), m1.satisfied_by(logic, d, &m).unwrap());
        }
    }
}

#[test]
fn proof_logs_parse_and_replay() {
    let mut r = rng(23);
    let mut proofs = 0;
    while proofs < 60 {
        let logic = random_logic(&mut r);
        let d = FiniteDomain::new(r.gen_range(1..=3)).unwrap();
        let atoms = random_atoms(&mut r);
        let theory = vec![random_finite_sentence(&mut r, d, &atoms, logic, 2, 2)];
        let query = FiniteSentence::full(d, vec![random_formula(&mut r, &atoms, 1, logic, d.denominator().into())]).unwrap();
        if closure_product(d, &[&theory[0], &query]) > 20_000 {
            continue;
        }
        let Outcome::Proved(proof) = canonical_derivation(logic, d, &theory, &query).unwrap() else {
            panic!("a full query is always entailed");
        };
        proofs += 1;
        let log = proof.log();
        let steps = parse_proof_log(d, &log).unwrap();
        assert_eq!(steps.len(), log.lines().count());
        assert_eq!(replay_proof_log(logic, d, &theory, &log).unwrap(), query);
    }
}

#[test]
fn refutation_comes_with_a_countermodel() {
    let d = FiniteDomain::new(4).unwrap();
    let g = Logic::Goedel;
    let theory = vec![simple(d, "x -> y", "[1,1]")];
    let query = simple(d, "y -> x", "[1,1]");
    let Outcome::Refuted { model, .. } = canonical_derivation(g, d, &theory, &query).unwrap() else {
        panic!("converse implication is not entailed");
    };
    assert!(theory[0].satisfied_by(g, d, &model).unwrap());
    assert!(!query.satisfied_by(g, d, &model).unwrap());
    assert!(find_countermodel(g, d, &theory, &query).unwrap().is_some());
}

#[test]
fn invalid_inputs_are_rejected() {
    assert_eq!(FiniteDomain::new(0), Err(FiniteError::ZeroDenominator));
    let d2 = FiniteDomain::new(2).unwrap();
    let third = FiniteSentence::full(d2, vec![parse_formula("1/3").unwrap()]).unwrap();
    assert!(matches!(
        apply_rule(Logic::Lukasiewicz, d2, &Rule::Operators, &[&third]),
        Err(FiniteError::GridClosure(_))
    ));
    let d1 = FiniteDomain::new(1).unwrap();
    let half = FiniteSentence::full(d1, ["x", "y", "wor[1/2,1](x, y)"].map(|f| parse_formula(f).unwrap()).to_vec()).unwrap();
    assert!(matches!(
        apply_rule(Logic::Lukasiewicz, d1, &Rule::Operators, &[&half]),
        Err(FiniteError::GridClosure(_))
    ));
    let many: Vec<Formula> = (0..8).map(|i| Formula::atom(format!("p{i}"))).collect();
    assert!(matches!(
        FiniteSentence::full(FiniteDomain::new(9).unwrap(), many),
        Err(FiniteError::SizeGuard { .. })
    ));
    let x = Formula::atom("x");
    assert!(matches!(
        FiniteSentence::new(d2, vec![x.clone(), x.clone()], BTreeSet::new()),
        Err(FiniteError::DuplicateComponent(_))
    ));
    let s = simple(d2, "x", "[0,1]");
    let t = simple(d2, "y", "[0,1]");
    assert!(matches!(
        apply_rule(Logic::Goedel, d2, &Rule::Intersect, &[&s, &t]),
        Err(FiniteError::Precondition { .. })
    ));
    assert!(matches!(
        apply_rule(Logic::Goedel, d2, &Rule::Perm { perm: vec![0, 0] }, &[&s]),
        Err(FiniteError::Precondition { .. })
    ));
    assert!(matches!(
        parse_proof_log(d2, "rule=Nonsense in=- out-size=1"),
        Err(FiniteError::Log { line: 1, .. })
    ));
}
