//! The inference rules as set operations on tuple sets.

use std::collections::{BTreeSet, HashSet};

use crate::formula::Formula;
use crate::semantics::Logic;

use super::{check_distinct, operator_checks, FiniteDomain, FiniteError, FiniteSentence, Tuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `(σ₁,…,σ_k, [0,1]^k)` restricted to the grid; takes no premise.
    Axiom { components: Vec<Formula> },
    /// Output coordinate `i` is input coordinate `perm[i]`.
    Perm { perm: Vec<usize> },
    /// Appends new components with no information about them.
    Add { components: Vec<Formula> },
    Intersect,
    /// Drops the last `r` coordinates.
    Proj { r: usize },
    /// Replaces the set by a given superset.
    Superset { tuples: BTreeSet<Tuple> },
    /// Keeps tuples consistent with the truth functions of the logic.
    Operators,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "Axiom",
            Rule::Perm { .. } => "Perm",
            Rule::Add { .. } => "Add",
            Rule::Intersect => "Intersect",
            Rule::Proj { .. } => "Proj",
            Rule::Superset { .. } => "Superset",
            Rule::Operators => "Operators",
        }
    }

    pub fn premises(&self) -> usize {
        match self {
            Rule::Axiom { .. } => 0,
            Rule::Intersect => 2,
            _ => 1,
        }
    }
}

fn precondition(rule: &Rule, message: impl Into<String>) -> FiniteError {
    FiniteError::Precondition {
        rule: rule.tag(),
        message: message.into(),
    }
}

pub fn apply_rule(
    logic: Logic,
    domain: FiniteDomain,
    rule: &Rule,
    inputs: &[&FiniteSentence],
) -> Result<FiniteSentence, FiniteError> {
    if inputs.len() != rule.premises() {
        return Err(precondition(
            rule,
            format!("expects {} premises, got {}", rule.premises(), inputs.len()),
        ));
    }
    match rule {
        Rule::Axiom { components } => FiniteSentence::full(domain, components.clone()),
        Rule::Perm { perm } => {
            let s = inputs[0];
            let mut seen = vec![false; s.arity()];
            if perm.len() != s.arity() || perm.iter().any(|&p| p >= s.arity() || std::mem::replace(&mut seen[p], true)) {
                return Err(precondition(rule, "not a permutation of the components"));
            }
            Ok(FiniteSentence {
                components: perm.iter().map(|&p| s.components[p].clone()).collect(),
                tuples: s.tuples.iter().map(|t| perm.iter().map(|&p| t[p]).collect()).collect(),
            })
        }
        Rule::Add { components } => {
            let s = inputs[0];
            let existing: HashSet<&Formula> = s.components.iter().collect();
            if let Some(c) = components.iter().find(|c| existing.contains(c)) {
                return Err(precondition(rule, format!("component {c} is already present")));
            }
            check_distinct(components)?;
            domain.product_size(s.arity() + components.len())?;
            let extra = domain.product(components.len())?;
            let tuples = s
                .tuples
                .iter()
                .flat_map(|t| {
                    extra.iter().map(move |e| {
                        let mut out = t.clone();
                        out.extend_from_slice(e);
                        out
                    })
                })
                .collect();
            let mut all = s.components.clone();
            all.extend(components.iter().cloned());
            Ok(FiniteSentence { components: all, tuples })
        }
        Rule::Intersect => {
            let (a, b) = (inputs[0], inputs[1]);
            if a.components != b.components {
                return Err(precondition(rule, "premises list different components"));
            }
            Ok(FiniteSentence {
                components: a.components.clone(),
                tuples: a.tuples.intersection(&b.tuples).cloned().collect(),
            })
        }
        Rule::Proj { r } => {
            let s = inputs[0];
            if *r == 0 || *r >= s.arity() {
                return Err(precondition(rule, format!("needs 0 < r < {}, got {r}", s.arity())));
            }
            let keep = s.arity() - r;
            Ok(FiniteSentence {
                components: s.components[..keep].to_vec(),
                tuples: s.tuples.iter().map(|t| t[..keep].to_vec()).collect(),
            })
        }
        Rule::Superset { tuples } => {
            let s = inputs[0];
            let widened = FiniteSentence::new(domain, s.components.clone(), tuples.clone())?;
            if !s.tuples.is_subset(&widened.tuples) {
                return Err(precondition(rule, "given set does not contain the premise set"));
            }
            Ok(widened)
        }
        Rule::Operators => {
            let s = inputs[0];
            let checks = operator_checks(logic, domain, &s.components)?;
            let size = domain.size();
            Ok(FiniteSentence {
                components: s.components.clone(),
                tuples: s
                    .tuples
                    .iter()
                    .filter(|t| checks.iter().all(|c| c.holds(t, size)))
                    .cloned()
                    .collect(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn comps(list: &[&str]) -> Vec<Formula> {
        list.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    #[test]
    fn goedel_max_filter() {
        let d = FiniteDomain::new(2).unwrap();
        let full = FiniteSentence::full(d, comps(&["A1", "A2", "A1 | A2"])).unwrap();
        assert_eq!(full.len(), 27);
        let out = apply_rule(Logic::Goedel, d, &Rule::Operators, &[&full]).unwrap();
        assert_eq!(out.len(), 9);
        assert!(out.tuples().contains(&vec![0, 1, 1]));
        assert!(!out.tuples().contains(&vec![0, 1, 2]));
        assert!(out.tuples().iter().all(|t| t[2] == t[0].max(t[1])));
    }

    #[test]
    fn weighted_or_filter() {
        let d = FiniteDomain::new(2).unwrap();
        let full = FiniteSentence::full(d, comps(&["A1", "A2", "wor[2,1](A1, A2)"])).unwrap();
        let out = apply_rule(Logic::Lukasiewicz, d, &Rule::Operators, &[&full]).unwrap();
        assert!(out.tuples().contains(&vec![1, 1, 2]));
        assert_eq!(out.len(), 9);
    }

    #[test]
    fn structural_rules() {
        let d = FiniteDomain::new(1).unwrap();
        let s = FiniteSentence::new(d, comps(&["x", "y"]), [vec![0, 1], vec![1, 1]].into()).unwrap();
        let id = apply_rule(Logic::Goedel, d, &Rule::Perm { perm: vec![0, 1] }, &[&s]).unwrap();
        assert_eq!(id, s);
        let swapped = apply_rule(Logic::Goedel, d, &Rule::Perm { perm: vec![1, 0] }, &[&s]).unwrap();
        assert_eq!(swapped.components(), &comps(&["y", "x"])[..]);
        assert!(swapped.tuples().contains(&vec![1, 0]));
        assert_eq!(apply_rule(Logic::Goedel, d, &Rule::Intersect, &[&s, &s]).unwrap(), s);
        let added = apply_rule(Logic::Goedel, d, &Rule::Add { components: comps(&["z"]) }, &[&s]).unwrap();
        assert_eq!(added.len(), 4);
        let back = apply_rule(Logic::Goedel, d, &Rule::Proj { r: 1 }, &[&added]).unwrap();
        assert_eq!(back, s);
        assert!(apply_rule(Logic::Goedel, d, &Rule::Add { components: comps(&["x"]) }, &[&s]).is_err());
        assert!(apply_rule(Logic::Goedel, d, &Rule::Proj { r: 2 }, &[&s]).is_err());
        assert!(apply_rule(Logic::Goedel, d, &Rule::Perm { perm: vec![0, 0] }, &[&s]).is_err());
        let narrow: BTreeSet<Tuple> = [vec![1, 1]].into();
        assert!(apply_rule(Logic::Goedel, d, &Rule::Superset { tuples: narrow }, &[&s]).is_err());
    }
}
