//! Model enumeration over the grid and Boolean combinations of sentences.

use std::collections::BTreeSet;

use crate::formula::{atoms_of, subformula_closure, Formula};
use crate::semantics::{Logic, Model};

use super::rules::{apply_rule, Rule};
use super::{advance, FiniteDomain, FiniteError, FiniteSentence};

/// Every assignment of grid values to `atoms`, in lexicographic order.
pub fn grid_models(
    domain: FiniteDomain,
    atoms: BTreeSet<String>,
) -> Result<impl Iterator<Item = Model>, FiniteError> {
    domain.product_size(atoms.len())?;
    let atoms: Vec<String> = atoms.into_iter().collect();
    let mut idx: Option<Vec<u16>> = Some(vec![0; atoms.len()]);
    Ok(std::iter::from_fn(move || {
        let current = idx.take()?;
        let model = atoms
            .iter()
            .zip(&current)
            .map(|(a, &i)| (a.clone(), domain.value(i)))
            .collect();
        let mut next = current;
        if advance(&mut next, domain.denominator()) {
            idx = Some(next);
        }
        Some(model)
    }))
}

fn atoms_in<'a>(sentences: impl IntoIterator<Item = &'a FiniteSentence>) -> BTreeSet<String> {
    atoms_of(sentences.into_iter().flat_map(|s| s.components.iter()))
}

/// A grid model of every sentence, if one exists.
pub fn satisfying_model(
    logic: Logic,
    domain: FiniteDomain,
    theory: &[FiniteSentence],
) -> Result<Option<Model>, FiniteError> {
    for model in grid_models(domain, atoms_in(theory))? {
        if all_hold(logic, domain, theory, &model)? {
            return Ok(Some(model));
        }
    }
    Ok(None)
}

fn all_hold(logic: Logic, domain: FiniteDomain, theory: &[FiniteSentence], model: &Model) -> Result<bool, FiniteError> {
    for s in theory {
        if !s.satisfied_by(logic, domain, model)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A grid model of the theory that violates the query.
pub fn find_countermodel(
    logic: Logic,
    domain: FiniteDomain,
    theory: &[FiniteSentence],
    query: &FiniteSentence,
) -> Result<Option<Model>, FiniteError> {
    let atoms = atoms_in(theory.iter().chain([query]));
    for model in grid_models(domain, atoms)? {
        if all_hold(logic, domain, theory, &model)? && !query.satisfied_by(logic, domain, &model)? {
            return Ok(Some(model));
        }
    }
    Ok(None)
}

/// Entailment by brute force over grid models.
pub fn model_entails(
    logic: Logic,
    domain: FiniteDomain,
    theory: &[FiniteSentence],
    query: &FiniteSentence,
) -> Result<bool, FiniteError> {
    Ok(find_countermodel(logic, domain, theory, query)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Not,
}

/// Rewrites a sentence over `target` (which must contain its components):
/// adds the missing components, filters by the truth functions and reorders.
pub(crate) fn lift(
    logic: Logic,
    domain: FiniteDomain,
    s: &FiniteSentence,
    target: &[Formula],
) -> Result<FiniteSentence, FiniteError> {
    let missing: Vec<Formula> = target.iter().filter(|f| !s.components.contains(f)).cloned().collect();
    let mut cur = if missing.is_empty() {
        s.clone()
    } else {
        apply_rule(logic, domain, &Rule::Add { components: missing }, &[s])?
    };
    cur = apply_rule(logic, domain, &Rule::Operators, &[&cur])?;
    let perm: Vec<usize> = target
        .iter()
        .map(|f| cur.components.iter().position(|c| c == f))
        .collect::<Option<_>>()
        .ok_or_else(|| FiniteError::Precondition {
            rule: "Perm",
            message: "lift target misses a component".into(),
        })?;
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        cur = apply_rule(logic, domain, &Rule::Perm { perm }, &[&cur])?;
    }
    Ok(cur)
}

/// Conjunction, disjunction or negation of sentences, as one sentence over
/// the subformula closure of all their components.
pub fn boolean_combine(
    logic: Logic,
    domain: FiniteDomain,
    op: BoolOp,
    sentences: &[FiniteSentence],
) -> Result<FiniteSentence, FiniteError> {
    let arity_ok = match op {
        BoolOp::Not => sentences.len() == 1,
        BoolOp::And | BoolOp::Or => !sentences.is_empty(),
    };
    if !arity_ok {
        return Err(FiniteError::Precondition {
            rule: "combine",
            message: format!("{op:?} given {} sentences", sentences.len()),
        });
    }
    let closure = subformula_closure(sentences.iter().flat_map(|s| s.components.iter()));
    let lifted: Vec<FiniteSentence> = sentences
        .iter()
        .map(|s| lift(logic, domain, s, &closure))
        .collect::<Result<_, _>>()?;
    let tuples = match op {
        BoolOp::And => lifted
            .iter()
            .skip(1)
            .fold(lifted[0].tuples.clone(), |acc, s| acc.intersection(&s.tuples).cloned().collect()),
        BoolOp::Or => lifted.iter().flat_map(|s| s.tuples.iter().cloned()).collect(),
        BoolOp::Not => {
            // complement within the realizable tuples, so the result stays minimized
            let everything = FiniteSentence::full(domain, closure.clone())?;
            let realizable = apply_rule(logic, domain, &Rule::Operators, &[&everything])?;
            realizable.tuples.difference(&lifted[0].tuples).cloned().collect()
        }
    };
    Ok(FiniteSentence {
        components: closure,
        tuples,
    })
}
