//! The axiom system run exactly over a finite grid of truth values.
//!
//! Sentences carry explicit tuple sets over `{0, 1/d, …, 1}`, so every rule is
//! a plain set operation and every semantic claim can be checked by
//! enumerating grid models. This is an oracle for the MILP procedure and is
//! only meant for desk-sized instances; a size guard rejects anything larger.

mod models;
mod proof;
mod rules;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::formula::Formula;
use crate::rational::{format_rational, Rational};
use crate::semantics::{connective_value, Connective, Logic, Model, SemanticsError};
use crate::theory::SimpleSentence;

pub use models::{boolean_combine, find_countermodel, grid_models, model_entails, satisfying_model, BoolOp};
pub use proof::{canonical_derivation, minimize, parse_proof_log, replay_proof_log, Derivation, LoggedStep, Outcome, Step};
pub use rules::{apply_rule, Rule};

/// Largest tuple set or model enumeration the engine will materialize.
pub const MAX_TUPLES: usize = 1 << 22;

/// A value tuple, stored as grid indices.
pub type Tuple = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("grid denominator must be at least 1")]
    ZeroDenominator,
    #[error("{needed} tuples exceed the limit of {limit}")]
    SizeGuard { needed: String, limit: usize },
    #[error("{0} is not a grid value")]
    OffGrid(String),
    #[error("connective of '{0}' leaves the grid")]
    GridClosure(String),
    #[error("component {0} is listed twice")]
    DuplicateComponent(String),
    #[error("tuple arity {found} does not match {expected} components")]
    Arity { expected: usize, found: usize },
    #[error("rule {rule}: {message}")]
    Precondition { rule: &'static str, message: String },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("proof log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("replay of step {step} diverged: {message}")]
    Replay { step: usize, message: String },
}

/// The grid `{0, 1/d, …, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDomain {
    denominator: u16,
}

impl FiniteDomain {
    pub fn new(denominator: u16) -> Result<Self, FiniteError> {
        if denominator == 0 {
            return Err(FiniteError::ZeroDenominator);
        }
        Ok(Self { denominator })
    }

    pub fn denominator(self) -> u16 {
        self.denominator
    }

    /// Number of grid values.
    pub fn size(self) -> usize {
        self.denominator as usize + 1
    }

    pub fn value(self, index: u16) -> Rational {
        Rational::new(index.into(), self.denominator.into())
    }

    pub fn index_of(self, v: &Rational) -> Option<u16> {
        if v.is_negative() || v > &Rational::one() {
            return None;
        }
        let scaled = v * Rational::from_integer(self.denominator.into());
        if scaled.is_integer() {
            scaled.to_integer().to_u16()
        } else {
            None
        }
    }

    pub fn values(self) -> impl Iterator<Item = Rational> {
        (0..=self.denominator).map(move |i| self.value(i))
    }

    /// Number of tuples of the given arity, checked against [`MAX_TUPLES`].
    pub(crate) fn product_size(self, arity: usize) -> Result<usize, FiniteError> {
        let guard = || FiniteError::SizeGuard {
            needed: format!("{}^{arity}", self.size()),
            limit: MAX_TUPLES,
        };
        let n = u32::try_from(arity).map_err(|_| guard())?;
        match self.size().checked_pow(n) {
            Some(total) if total <= MAX_TUPLES => Ok(total),
            _ => Err(guard()),
        }
    }

    /// Every tuple of the given arity, in lexicographic order.
    pub(crate) fn product(self, arity: usize) -> Result<BTreeSet<Tuple>, FiniteError> {
        self.product_size(arity)?;
        let mut out = BTreeSet::new();
        let mut t: Tuple = vec![0; arity];
        loop {
            out.insert(t.clone());
            if !advance(&mut t, self.denominator) {
                return Ok(out);
            }
        }
    }

    pub fn format_tuple(self, t: &[u16]) -> String {
        let parts: Vec<String> = t.iter().map(|&i| format_rational(&self.value(i))).collect();
        format!("({})", parts.join(", "))
    }
}

/// Odometer step over `{0..=max}^n`; false once it wraps around.
pub(crate) fn advance(t: &mut [u16], max: u16) -> bool {
    for slot in t.iter_mut().rev() {
        if *slot < max {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// A sentence `(σ₁,…,σ_k, S)` with `S` given tuple by tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSentence {
    components: Vec<Formula>,
    tuples: BTreeSet<Tuple>,
}

impl FiniteSentence {
    pub fn new(
        domain: FiniteDomain,
        components: Vec<Formula>,
        tuples: BTreeSet<Tuple>,
    ) -> Result<Self, FiniteError> {
        check_distinct(&components)?;
        for t in &tuples {
            if t.len() != components.len() {
                return Err(FiniteError::Arity {
                    expected: components.len(),
                    found: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&i| i > domain.denominator) {
                return Err(FiniteError::OffGrid(format!("{bad}/{}", domain.denominator)));
            }
        }
        Ok(Self { components, tuples })
    }

    /// The sentence allowing every grid tuple.
    pub fn full(domain: FiniteDomain, components: Vec<Formula>) -> Result<Self, FiniteError> {
        check_distinct(&components)?;
        let tuples = domain.product(components.len())?;
        Ok(Self { components, tuples })
    }

    /// Restricts a simple sentence to the grid points inside its value set.
    pub fn from_simple(domain: FiniteDomain, sentence: &SimpleSentence) -> Self {
        let tuples = (0..=domain.denominator)
            .filter(|&i| sentence.values.contains(&domain.value(i)))
            .map(|i| vec![i])
            .collect();
        Self {
            components: vec![sentence.formula.clone()],
            tuples,
        }
    }

    /// Product sentence `(σ₁,…,σ_k, S₁×⋯×S_k)` from simple sentences.
    pub fn from_product(domain: FiniteDomain, parts: &[SimpleSentence]) -> Result<Self, FiniteError> {
        let components: Vec<Formula> = parts.iter().map(|s| s.formula.clone()).collect();
        check_distinct(&components)?;
        let axes: Vec<Vec<u16>> = parts
            .iter()
            .map(|s| Self::from_simple(domain, s).tuples.into_iter().map(|t| t[0]).collect())
            .collect();
        let total = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len().max(1)));
        if total.is_none_or(|t| t > MAX_TUPLES) {
            return Err(FiniteError::SizeGuard {
                needed: "product of component sets".into(),
                limit: MAX_TUPLES,
            });
        }
        let mut tuples: BTreeSet<Tuple> = BTreeSet::from([Vec::new()]);
        for axis in &axes {
            tuples = tuples
                .iter()
                .flat_map(|t| {
                    axis.iter().map(move |&v| {
                        let mut next = t.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        Ok(Self { components, tuples })
    }

    pub fn components(&self) -> &[Formula] {
        &self.components
    }

    pub fn tuples(&self) -> &BTreeSet<Tuple> {
        &self.tuples
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// The value tuple of the components under `model`, if it lies on the grid.
    pub fn tuple_of(&self, logic: Logic, domain: FiniteDomain, model: &Model) -> Result<Option<Tuple>, FiniteError> {
        let mut t = Vec::with_capacity(self.components.len());
        for c in &self.components {
            match domain.index_of(&crate::semantics::evaluate(logic, c, model)?) {
                Some(i) => t.push(i),
                None => return Ok(None),
            }
        }
        Ok(Some(t))
    }

    pub fn satisfied_by(&self, logic: Logic, domain: FiniteDomain, model: &Model) -> Result<bool, FiniteError> {
        Ok(self
            .tuple_of(logic, domain, model)?
            .is_some_and(|t| self.tuples.contains(&t)))
    }

    /// True when every tuple is the value tuple of some grid model.
    pub fn is_minimized(&self, logic: Logic, domain: FiniteDomain) -> Result<bool, FiniteError> {
        let mut realized: HashSet<Tuple> = HashSet::new();
        for model in grid_models(domain, crate::formula::atoms_of(&self.components))? {
            if let Some(t) = self.tuple_of(logic, domain, &model)? {
                realized.insert(t);
            }
        }
        Ok(self.tuples.iter().all(|t| realized.contains(t)))
    }

    pub fn display(&self, domain: FiniteDomain) -> String {
        let comps: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        let tuples: Vec<String> = self.tuples.iter().map(|t| domain.format_tuple(t)).collect();
        format!("({}; {{{}}})", comps.join(", "), tuples.join(", "))
    }
}

impl fmt::Display for FiniteSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "({}; {} tuples)", comps.join(", "), self.tuples.len())
    }
}

fn check_distinct(components: &[Formula]) -> Result<(), FiniteError> {
    let mut seen = HashSet::new();
    for c in components {
        if !seen.insert(c) {
            return Err(FiniteError::DuplicateComponent(c.to_string()));
        }
    }
    Ok(())
}

/// A component whose value is determined by other listed components.
#[derive(Clone, Debug)]
pub(crate) struct OperatorCheck {
    target: usize,
    args: Vec<usize>,
    /// Result index for each argument combination, row-major.
    table: Vec<u16>,
}

impl OperatorCheck {
    pub(crate) fn holds(&self, t: &[u16], size: usize) -> bool {
        let key = self.args.iter().fold(0usize, |acc, &a| acc * size + t[a] as usize);
        self.table[key] == t[self.target]
    }
}

/// Truth-function checks for every component that is a connective applied to
/// listed components, or a constant. Fails if some connective maps grid values
/// off the grid.
pub(crate) fn operator_checks(
    logic: Logic,
    domain: FiniteDomain,
    components: &[Formula],
) -> Result<Vec<OperatorCheck>, FiniteError> {
    let position: BTreeMap<&Formula, usize> = components.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut cache: BTreeMap<String, Vec<u16>> = BTreeMap::new();
    let mut out = Vec::new();
    for (target, f) in components.iter().enumerate() {
        let (connective, key, children): (Option<Connective<'_>>, String, Vec<&Formula>) = match f {
            Formula::Atom(_) => continue,
            Formula::Constant(v) => {
                let i = domain.index_of(v).ok_or_else(|| FiniteError::GridClosure(f.to_string()))?;
                out.push(OperatorCheck {
                    target,
                    args: Vec::new(),
                    table: vec![i],
                });
                continue;
            }
            Formula::Unary(op, c) => (Some(Connective::Unary(*op)), format!("u{op:?}"), vec![c.as_ref()]),
            Formula::Binary(op, l, r) => (Some(Connective::Binary(*op)), format!("b{op:?}"), vec![l.as_ref(), r.as_ref()]),
            Formula::Weighted {
                op,
                left_weight,
                right_weight,
                left,
                right,
            } => (
                Some(Connective::Weighted(*op, left_weight, right_weight)),
                format!("w{op:?}{left_weight}/{right_weight}"),
                vec![left.as_ref(), right.as_ref()],
            ),
        };
        let Some(args) = children.iter().map(|c| position.get(c).copied()).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        let connective = connective.expect("connective for compound formula");
        let table = match cache.get(&key) {
            Some(t) => t.clone(),
            None => {
                let t = connective_table(logic, domain, connective, args.len())
                    .ok_or_else(|| FiniteError::GridClosure(f.to_string()))??;
                cache.insert(key, t.clone());
                t
            }
        };
        out.push(OperatorCheck { target, args, table });
    }
    Ok(out)
}

/// `None` if some grid input produces an off-grid value.
fn connective_table(
    logic: Logic,
    domain: FiniteDomain,
    connective: Connective<'_>,
    arity: usize,
) -> Option<Result<Vec<u16>, FiniteError>> {
    let mut table = Vec::new();
    let mut idx: Vec<u16> = vec![0; arity];
    loop {
        let args: Vec<Rational> = idx.iter().map(|&i| domain.value(i)).collect();
        match connective_value(logic, connective, &args) {
            Ok(v) => table.push(domain.index_of(&v)?),
            Err(e) => return Some(Err(e.into())),
        }
        if !advance(&mut idx, domain.denominator) {
            return Some(Ok(table));
        }
    }
}

/// Least common multiple of the denominators of a formula's constants and
/// weights: a grid with this denominator (or a multiple) is a natural choice.
pub fn suggested_denominator<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> u64 {
    fn walk(f: &Formula, acc: &mut num_bigint::BigInt) {
        match f {
            Formula::Constant(v) => *acc = acc.lcm(v.denom()),
            Formula::Weighted {
                left_weight, right_weight, ..
            } => {
                *acc = acc.lcm(left_weight.denom());
                *acc = acc.lcm(right_weight.denom());
            }
            _ => {}
        }
        for c in f.children() {
            walk(c, acc);
        }
    }
    let mut acc = num_bigint::BigInt::one();
    for f in formulas {
        walk(f, &mut acc);
    }
    acc.to_u64().unwrap_or(u64::MAX)
}
