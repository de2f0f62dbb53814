//! Canonical derivations, their text log, and replay.
//!
//! Indices in a derivation address premises first (`0..n`) and then earlier
//! steps (`n + i` for step `i`).

use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{parse_formula, subformula_closure, Formula};
use crate::rational::{format_rational, parse_rational};
use crate::semantics::{Logic, Model};

use super::models::{grid_models, lift};
use super::rules::{apply_rule, Rule};
use super::{FiniteDomain, FiniteError, FiniteSentence, Tuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub inputs: Vec<usize>,
    pub output: FiniteSentence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub domain: FiniteDomain,
    pub premises: usize,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Proved(Derivation),
    /// A tuple of query-component values forced possible by the theory but
    /// outside the query set, with a grid model realizing it.
    Refuted { tuple: Tuple, model: Model },
}

struct Builder<'a> {
    logic: Logic,
    domain: FiniteDomain,
    premises: &'a [FiniteSentence],
    steps: Vec<Step>,
}

impl Builder<'_> {
    fn sentence(&self, index: usize) -> &FiniteSentence {
        match index.checked_sub(self.premises.len()) {
            None => &self.premises[index],
            Some(i) => &self.steps[i].output,
        }
    }

    fn apply(&mut self, rule: Rule, inputs: Vec<usize>) -> Result<usize, FiniteError> {
        let args: Vec<&FiniteSentence> = inputs.iter().map(|&i| self.sentence(i)).collect();
        let output = apply_rule(self.logic, self.domain, &rule, &args)?;
        self.steps.push(Step { rule, inputs, output });
        Ok(self.premises.len() + self.steps.len() - 1)
    }

    /// Add, Operators, Perm: the premise restated over `closure`.
    fn complete(&mut self, index: usize, closure: &[Formula]) -> Result<usize, FiniteError> {
        let present = self.sentence(index).components.clone();
        let missing: Vec<Formula> = closure.iter().filter(|f| !present.contains(f)).cloned().collect();
        let mut cur = index;
        if !missing.is_empty() {
            cur = self.apply(Rule::Add { components: missing }, vec![cur])?;
        }
        cur = self.apply(Rule::Operators, vec![cur])?;
        let perm = permutation_to(&self.sentence(cur).components, closure);
        if !is_identity(&perm) {
            cur = self.apply(Rule::Perm { perm }, vec![cur])?;
        }
        Ok(cur)
    }
}

fn permutation_to(from: &[Formula], to: &[Formula]) -> Vec<usize> {
    to.iter()
        .map(|f| from.iter().position(|c| c == f).expect("target component present"))
        .collect()
}

fn is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| i == p)
}

/// Builds the completeness derivation of `query` from `theory`, or finds a
/// value tuple showing none exists.
///
/// Every premise is extended to the joint subformula closure and filtered by
/// the truth functions, the results are intersected, and the intersection is
/// projected onto the query components. Because the filtered sentences are
/// minimized, any projected tuple outside the query set comes from a real
/// grid model.
pub fn canonical_derivation(
    logic: Logic,
    domain: FiniteDomain,
    theory: &[FiniteSentence],
    query: &FiniteSentence,
) -> Result<Outcome, FiniteError> {
    let closure = subformula_closure(theory.iter().chain([query]).flat_map(|s| s.components.iter()));
    let mut b = Builder {
        logic,
        domain,
        premises: theory,
        steps: Vec::new(),
    };
    let completed: Vec<usize> = if theory.is_empty() {
        let axiom = b.apply(
            Rule::Axiom {
                components: closure.clone(),
            },
            Vec::new(),
        )?;
        vec![b.apply(Rule::Operators, vec![axiom])?]
    } else {
        (0..theory.len()).map(|i| b.complete(i, &closure)).collect::<Result<_, _>>()?
    };
    let mut acc = completed[0];
    for &next in &completed[1..] {
        acc = b.apply(Rule::Intersect, vec![acc, next])?;
    }

    let mut order: Vec<Formula> = query.components.clone();
    order.extend(closure.iter().filter(|f| !query.components.contains(f)).cloned());
    let perm = permutation_to(&b.sentence(acc).components, &order);
    if !is_identity(&perm) {
        acc = b.apply(Rule::Perm { perm }, vec![acc])?;
    }
    let r = closure.len() - query.arity();
    if r > 0 {
        acc = b.apply(Rule::Proj { r }, vec![acc])?;
    }

    let projected = &b.sentence(acc).tuples;
    if let Some(t) = projected.difference(&query.tuples).next() {
        let t = t.clone();
        let model = realizing_model(logic, domain, theory, query, &t)?;
        return Ok(Outcome::Refuted { tuple: t, model });
    }
    if projected != &query.tuples {
        b.apply(
            Rule::Superset {
                tuples: query.tuples.clone(),
            },
            vec![acc],
        )?;
    }
    Ok(Outcome::Proved(Derivation {
        domain,
        premises: theory.len(),
        steps: b.steps,
    }))
}

/// A grid model of the theory whose query-component values are `t`.
fn realizing_model(
    logic: Logic,
    domain: FiniteDomain,
    theory: &[FiniteSentence],
    query: &FiniteSentence,
    t: &Tuple,
) -> Result<Model, FiniteError> {
    let atoms = crate::formula::atoms_of(theory.iter().chain([query]).flat_map(|s| s.components.iter()));
    'models: for m in grid_models(domain, atoms)? {
        for s in theory {
            if !s.satisfied_by(logic, domain, &m)? {
                continue 'models;
            }
        }
        if query.tuple_of(logic, domain, &m)?.as_ref() == Some(t) {
            return Ok(m);
        }
    }
    Err(FiniteError::Replay {
        step: 0,
        message: format!("tuple {} is not realized by any model of the theory", domain.format_tuple(t)),
    })
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&FiniteSentence> {
        self.steps.last().map(|s| &s.output)
    }

    /// Re-applies every step and checks it reproduces the recorded output.
    pub fn verify(&self, logic: Logic, premises: &[FiniteSentence]) -> Result<(), FiniteError> {
        if premises.len() != self.premises {
            return Err(FiniteError::Replay {
                step: 0,
                message: format!("expected {} premises, got {}", self.premises, premises.len()),
            });
        }
        for (i, step) in self.steps.iter().enumerate() {
            let args = gather(premises, &self.steps[..i], &step.inputs, i)?;
            let out = apply_rule(logic, self.domain, &step.rule, &args)?;
            if out != step.output {
                return Err(FiniteError::Replay {
                    step: i,
                    message: "recomputed output differs".into(),
                });
            }
        }
        Ok(())
    }

    /// The line-oriented proof log.
    pub fn log(&self) -> String {
        self.to_string()
    }
}

fn gather<'a>(
    premises: &'a [FiniteSentence],
    done: &'a [impl AsRef<FiniteSentence>],
    inputs: &[usize],
    step: usize,
) -> Result<Vec<&'a FiniteSentence>, FiniteError> {
    inputs
        .iter()
        .map(|&j| match j.checked_sub(premises.len()) {
            None => Ok(&premises[j]),
            Some(k) if k < done.len() => Ok(done[k].as_ref()),
            Some(_) => Err(FiniteError::Replay {
                step,
                message: format!("input {j} refers forward"),
            }),
        })
        .collect()
}

impl AsRef<FiniteSentence> for Step {
    fn as_ref(&self) -> &FiniteSentence {
        &self.output
    }
}

fn format_rule_params(rule: &Rule, domain: FiniteDomain) -> Option<String> {
    let join_formulas = |fs: &[Formula]| fs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    match rule {
        Rule::Axiom { components } | Rule::Add { components } => Some(format!("components={}", join_formulas(components))),
        Rule::Perm { perm } => Some(format!(
            "perm={}",
            perm.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        )),
        Rule::Proj { r } => Some(format!("r={r}")),
        Rule::Superset { tuples } => Some(format!(
            "set={}",
            tuples
                .iter()
                .map(|t| t.iter().map(|&i| format_rational(&domain.value(i))).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        )),
        Rule::Intersect | Rule::Operators => None,
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            let inputs = if step.inputs.is_empty() {
                "-".to_string()
            } else {
                step.inputs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            };
            write!(f, "rule={} in={inputs} out-size={}", step.rule.tag(), step.output.len())?;
            if let Some(p) = format_rule_params(&step.rule, self.domain) {
                write!(f, " {p}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One parsed proof log line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoggedStep {
    pub rule: Rule,
    pub inputs: Vec<usize>,
    pub out_size: usize,
}

pub fn parse_proof_log(domain: FiniteDomain, text: &str) -> Result<Vec<LoggedStep>, FiniteError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| FiniteError::Log { line: n + 1, message };
        let mut parts = line.splitn(4, ' ');
        let mut field = |key: &str| -> Result<&str, FiniteError> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(key))
                .ok_or_else(|| err(format!("expected '{key}'")))
        };
        let tag = field("rule=")?;
        let inputs_text = field("in=")?;
        let out_size = field("out-size=")?.parse::<usize>().map_err(|e| err(e.to_string()))?;
        let params = parts.next().unwrap_or("");
        let inputs = if inputs_text == "-" {
            Vec::new()
        } else {
            inputs_text
                .split(',')
                .map(|s| s.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| err(e.to_string()))?
        };
        let param = |key: &str| params.strip_prefix(key).ok_or_else(|| err(format!("{tag} needs '{key}'")));
        let formulas = |text: &str| -> Result<Vec<Formula>, FiniteError> {
            text.split(';').map(|s| parse_formula(s).map_err(|e| err(e.to_string()))).collect()
        };
        let rule = match tag {
            "Axiom" => Rule::Axiom {
                components: formulas(param("components=")?)?,
            },
            "Add" => Rule::Add {
                components: formulas(param("components=")?)?,
            },
            "Perm" => Rule::Perm {
                perm: param("perm=")?
                    .split(',')
                    .map(|s| s.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(e.to_string()))?,
            },
            "Proj" => Rule::Proj {
                r: param("r=")?.parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?,
            },
            "Superset" => {
                let body = param("set=")?;
                let mut tuples = BTreeSet::new();
                for t in body.split(';').filter(|t| !t.is_empty()) {
                    let tuple: Tuple = t
                        .split(',')
                        .map(|v| parse_rational(v).and_then(|r| domain.index_of(&r)))
                        .collect::<Option<_>>()
                        .ok_or_else(|| err(format!("bad grid tuple '{t}'")))?;
                    tuples.insert(tuple);
                }
                Rule::Superset { tuples }
            }
            "Intersect" => Rule::Intersect,
            "Operators" => Rule::Operators,
            other => return Err(err(format!("unknown rule '{other}'"))),
        };
        out.push(LoggedStep { rule, inputs, out_size });
    }
    Ok(out)
}

/// Replays a proof log from the premises, checking every recorded size, and
/// returns the final sentence.
pub fn replay_proof_log(
    logic: Logic,
    domain: FiniteDomain,
    premises: &[FiniteSentence],
    text: &str,
) -> Result<FiniteSentence, FiniteError> {
    let steps = parse_proof_log(domain, text)?;
    let mut outputs: Vec<FiniteSentence> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let args = gather(premises, &outputs, &step.inputs, i)?;
        let out = apply_rule(logic, domain, &step.rule, &args)?;
        if out.len() != step.out_size {
            return Err(FiniteError::Replay {
                step: i,
                message: format!("log records {} tuples, replay gives {}", step.out_size, out.len()),
            });
        }
        outputs.push(out);
    }
    match (outputs.pop(), premises.last()) {
        (Some(last), _) => Ok(last),
        (None, Some(p)) => Ok(p.clone()),
        (None, None) => Err(FiniteError::Replay {
            step: 0,
            message: "empty proof without premises".into(),
        }),
    }
}

impl AsRef<FiniteSentence> for FiniteSentence {
    fn as_ref(&self) -> &FiniteSentence {
        self
    }
}

/// Restates `s` over the joint closure of its components, as the canonical
/// derivation does for each premise.
pub fn minimize(logic: Logic, domain: FiniteDomain, s: &FiniteSentence) -> Result<FiniteSentence, FiniteError> {
    let closure = subformula_closure(&s.components);
    lift(logic, domain, s, &closure)
}
