//! Mixed-integer linear encodings of satisfiability and entailment.
//!
//! Every formula in the (rewritten) subformula closure gets a truth variable in
//! `[0,1]`. Piecewise-linear connectives get one case-split boolean each, and
//! strict inequalities are expressed through a single gap variable `delta`
//! that the solver maximizes. A problem is satisfiable exactly when it has an
//! integral solution with `delta > 0`.
//!
//! Interval sentences with more than one interval are disjunctions. They are
//! encoded with selector booleans and guarded bound rows, and additionally
//! recorded as [`IntervalGroup`]s so the solver can branch on them directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::formula::{subformula_closure, BinaryOp, Formula, UnaryOp, WeightedOp};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{format_decimal, one, zero, Rational};
use crate::semantics::{evaluate, Logic, Model};
use crate::theory::{SimpleSentence, Theory};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// `Σ coeff·var + constant`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearExpr {
    pub terms: BTreeMap<VarId, Rational>,
    pub constant: Rational,
}

impl LinearExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::new().plus(v, one())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    /// Adds `coeff·v`, dropping the term if it cancels.
    pub fn plus(mut self, v: VarId, coeff: Rational) -> Self {
        self.add_term(v, coeff);
        self
    }

    pub fn minus(self, v: VarId) -> Self {
        self.plus(v, -one())
    }

    pub fn offset(mut self, c: Rational) -> Self {
        self.constant += c;
        self
    }

    pub fn add_term(&mut self, v: VarId, coeff: Rational) {
        let entry = self.terms.entry(v).or_insert_with(zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (v, c) in &self.terms {
            acc += c * &values[v.0];
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `expr ≤ 0`
    Le,
    /// `expr = 0`
    Eq,
}

/// Which boolean value switches a guarded row on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub var: VarId,
    pub active_when: bool,
    pub big_m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Fully materialized row; any big-M term is already folded in.
    pub expr: LinearExpr,
    pub relation: Relation,
    pub guard: Option<Guard>,
    /// Set when the row belongs to an interval group and is implied by it.
    pub group: Option<usize>,
}

impl Constraint {
    pub fn holds(&self, values: &[Rational]) -> bool {
        let v = self.expr.eval(values);
        match self.relation {
            Relation::Le => !v.is_positive(),
            Relation::Eq => v.is_zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Boolean,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: Rational,
    pub upper: Rational,
    pub kind: VarKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Exactly-one selection among the intervals of a sentence.
    Select,
    /// Query complement: one side boolean per query interval.
    Avoid,
}

/// A disjunctive bound `var ∈ allowed` together with the booleans that encode it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalGroup {
    pub kind: GroupKind,
    pub var: VarId,
    /// The set the variable must lie in (the complement of the query set for `Avoid`).
    pub allowed: IntervalSet,
    /// For `Select`, one selector per interval of `allowed`. For `Avoid`, one
    /// side boolean per interval of the query set (1 means "left of it").
    pub booleans: Vec<VarId>,
    /// The intervals the booleans refer to.
    pub source: Vec<Interval>,
}

impl IntervalGroup {
    /// Boolean values consistent with a truth value `s` lying in `allowed`.
    pub fn boolean_values(&self, s: &Rational) -> Vec<Rational> {
        match self.kind {
            GroupKind::Select => {
                let hit = self.source.iter().position(|i| i.contains(s));
                (0..self.source.len())
                    .map(|k| if Some(k) == hit { one() } else { zero() })
                    .collect()
            }
            GroupKind::Avoid => self
                .source
                .iter()
                .map(|i| {
                    let left = s < i.lower() || (s == i.lower() && i.lower_open());
                    if left {
                        one()
                    } else {
                        zero()
                    }
                })
                .collect(),
        }
    }
}

/// Something the branch-and-bound may split on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchItem {
    Boolean(VarId),
    Group(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilpError {
    #[error("weighted connective in '{0}' is only supported under lukasiewicz logic")]
    WeightedUnderGoedel(String),
}

#[derive(Clone, Debug)]
pub struct MilpProblem {
    pub logic: Logic,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub groups: Vec<IntervalGroup>,
    pub delta: VarId,
    /// Rewritten closure formulas, children first, with their truth variables.
    pub formula_vars: Vec<(Formula, VarId)>,
    /// Branching order over connective booleans and interval groups.
    pub branch_order: Vec<BranchItem>,
    /// Truth variable of the query formula, for entailment problems.
    pub query_var: Option<VarId>,
}

impl MilpProblem {
    pub fn num_booleans(&self) -> usize {
        self.variables
            .iter()
            .filter(|v| v.kind == VarKind::Boolean)
            .count()
    }

    pub fn atom_var(&self, name: &str) -> Option<VarId> {
        self.formula_vars
            .iter()
            .find(|(f, _)| matches!(f, Formula::Atom(a) if a == name))
            .map(|(_, v)| *v)
    }

    pub fn var_of(&self, formula: &Formula) -> Option<VarId> {
        let rewritten = rewrite(self.logic, formula);
        self.formula_vars
            .iter()
            .find(|(f, _)| *f == rewritten)
            .map(|(_, v)| *v)
    }

    /// Projects an assignment to the atom truth variables.
    pub fn decode_model(&self, values: &[Rational]) -> Model {
        self.formula_vars
            .iter()
            .filter_map(|(f, v)| match f {
                Formula::Atom(name) => Some((name.clone(), values[v.0].clone())),
                _ => None,
            })
            .collect()
    }

    /// Checks bounds, integrality and every row of an assignment exactly.
    pub fn check_assignment(&self, values: &[Rational]) -> Result<(), String> {
        if values.len() != self.variables.len() {
            return Err(format!(
                "assignment has {} values for {} variables",
                values.len(),
                self.variables.len()
            ));
        }
        for (var, value) in self.variables.iter().zip(values) {
            if value < &var.lower || value > &var.upper {
                return Err(format!("{} = {} violates its bounds", var.name, value));
            }
            if var.kind == VarKind::Boolean && !value.is_integer() {
                return Err(format!("{} = {} is not integral", var.name, value));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.holds(values) {
                return Err(format!("row {i} ({}) is violated", self.format_row(c)));
            }
        }
        Ok(())
    }

    /// Checks that a decoded model reproduces every encoded truth value.
    pub fn check_semantics(&self, values: &[Rational]) -> Result<Model, String> {
        let model = self.decode_model(values);
        for (f, v) in &self.formula_vars {
            let expected = evaluate(self.logic, f, &model).map_err(|e| e.to_string())?;
            if expected != values[v.0] {
                return Err(format!(
                    "{f} evaluates to {expected} but the solution has {}",
                    values[v.0]
                ));
            }
        }
        Ok(model)
    }

    fn format_row(&self, c: &Constraint) -> String {
        let mut out = String::new();
        for (k, (v, coeff)) in c.expr.terms.iter().enumerate() {
            let sign = if coeff.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let mag = coeff.abs();
            let mag = if mag.is_one() {
                String::new()
            } else {
                format!("{} ", format_decimal(&mag, 17))
            };
            let _ = write!(out, "{}{sign} {mag}{}", if k > 0 { " " } else { "" }, self.variables[v.0].name);
        }
        if out.is_empty() {
            out.push('0');
        }
        let rhs = -c.expr.constant.clone();
        let op = match c.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
        };
        format!("{} {op} {}", out.trim_start(), format_decimal(&rhs, 17))
    }

    /// Renders the problem in CPLEX LP text format. Rationals are printed as
    /// decimals (rounded when non-terminating), so this is for inspection only.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        out.push_str("\\ exact problem; decimals below may be rounded\n");
        let _ = writeln!(out, "Maximize\n obj: {}", self.variables[self.delta.0].name);
        out.push_str("Subject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let _ = writeln!(out, " c{i}: {}", self.format_row(c));
        }
        out.push_str("Bounds\n");
        for v in &self.variables {
            if v.kind == VarKind::Continuous {
                let _ = writeln!(
                    out,
                    " {} <= {} <= {}",
                    format_decimal(&v.lower, 17),
                    v.name,
                    format_decimal(&v.upper, 17)
                );
            }
        }
        let bins: Vec<&str> = self
            .variables
            .iter()
            .filter(|v| v.kind == VarKind::Boolean)
            .map(|v| v.name.as_str())
            .collect();
        if !bins.is_empty() {
            out.push_str("Binaries\n");
            for chunk in bins.chunks(8) {
                let _ = writeln!(out, " {}", chunk.join(" "));
            }
        }
        out.push_str("End\n");
        out
    }
}

/// Replaces connectives without their own constraint pattern by their
/// definitions: equivalence by the strong conjunction of both implications,
/// and Lukasiewicz negation by involutive negation.
pub fn rewrite(logic: Logic, formula: &Formula) -> Formula {
    match formula {
        Formula::Atom(_) | Formula::Constant(_) => formula.clone(),
        Formula::Unary(op, child) => {
            let child = rewrite(logic, child);
            match (logic, op) {
                (Logic::Lukasiewicz, UnaryOp::Not) => Formula::unary(UnaryOp::Inv, child),
                _ => Formula::unary(*op, child),
            }
        }
        Formula::Binary(BinaryOp::Equiv, l, r) => {
            let l = rewrite(logic, l);
            let r = rewrite(logic, r);
            Formula::binary(
                BinaryOp::StrongAnd,
                l.clone().implies(r.clone()),
                r.implies(l),
            )
        }
        Formula::Binary(op, l, r) => Formula::binary(*op, rewrite(logic, l), rewrite(logic, r)),
        Formula::Weighted {
            op,
            left_weight,
            right_weight,
            left,
            right,
        } => Formula::weighted(
            *op,
            left_weight.clone(),
            right_weight.clone(),
            rewrite(logic, left),
            rewrite(logic, right),
        ),
    }
}

/// Incrementally builds a [`MilpProblem`].
struct Builder {
    logic: Logic,
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    groups: Vec<IntervalGroup>,
    delta: VarId,
    formula_vars: Vec<(Formula, VarId)>,
    index: HashMap<Formula, VarId>,
    connective_booleans: Vec<VarId>,
    group_items: Vec<usize>,
    query_var: Option<VarId>,
}

impl Builder {
    fn new(logic: Logic) -> Self {
        let mut b = Self {
            logic,
            variables: Vec::new(),
            constraints: Vec::new(),
            groups: Vec::new(),
            delta: VarId(0),
            formula_vars: Vec::new(),
            index: HashMap::new(),
            connective_booleans: Vec::new(),
            group_items: Vec::new(),
            query_var: None,
        };
        b.delta = b.continuous("delta".into(), zero(), one());
        b
    }

    fn continuous(&mut self, name: String, lower: Rational, upper: Rational) -> VarId {
        self.variables.push(Variable {
            name,
            lower,
            upper,
            kind: VarKind::Continuous,
        });
        VarId(self.variables.len() - 1)
    }

    fn boolean(&mut self, name: String) -> VarId {
        self.variables.push(Variable {
            name,
            lower: zero(),
            upper: one(),
            kind: VarKind::Boolean,
        });
        VarId(self.variables.len() - 1)
    }

    fn row(&mut self, expr: LinearExpr, relation: Relation) {
        self.constraints.push(Constraint {
            expr,
            relation,
            guard: None,
            group: None,
        });
    }

    /// Largest value `expr` can take over the variable box.
    fn box_max(&self, expr: &LinearExpr) -> Rational {
        let mut acc = expr.constant.clone();
        for (v, c) in &expr.terms {
            let var = &self.variables[v.0];
            acc += if c.is_positive() {
                c * &var.upper
            } else {
                c * &var.lower
            };
        }
        acc
    }

    /// Adds `expr ≤ 0`, enforced only when `b == active_when`. The big-M is
    /// the smallest integer that makes the row vacuous in the other case.
    fn guarded(&mut self, expr: LinearExpr, b: VarId, active_when: bool, group: Option<usize>) {
        let bound = self.box_max(&expr);
        let m = if bound.is_positive() {
            bound.ceil().to_integer()
        } else {
            num_bigint::BigInt::zero()
        };
        let big_m: i64 = i64::try_from(&m).expect("big-M fits in i64");
        let m = Rational::from_integer(m);
        let expr = if active_when {
            // expr ≤ M(1-b)
            expr.plus(b, m.clone()).offset(-m)
        } else {
            // expr ≤ M·b
            expr.plus(b, -m)
        };
        self.constraints.push(Constraint {
            expr,
            relation: Relation::Le,
            guard: Some(Guard {
                var: b,
                active_when,
                big_m,
            }),
            group,
        });
    }

    fn var_for(&mut self, formula: &Formula) -> VarId {
        if let Some(v) = self.index.get(formula) {
            return *v;
        }
        let name = format!("s{}", self.formula_vars.len());
        let v = match formula {
            Formula::Constant(c) => self.continuous(name, c.clone(), c.clone()),
            _ => self.continuous(name, zero(), one()),
        };
        self.index.insert(formula.clone(), v);
        self.formula_vars.push((formula.clone(), v));
        v
    }

    /// Adds the closure of the given (already rewritten) formulas.
    fn add_formulas<'a>(&mut self, formulas: impl IntoIterator<Item = &'a Formula>) -> Result<(), MilpError> {
        for f in subformula_closure(formulas) {
            if self.index.contains_key(&f) {
                continue;
            }
            if self.logic == Logic::Goedel && matches!(f, Formula::Weighted { .. }) {
                return Err(MilpError::WeightedUnderGoedel(f.to_string()));
            }
            let z = self.var_for(&f);
            self.encode_node(&f, z);
        }
        Ok(())
    }

    fn encode_node(&mut self, f: &Formula, z: VarId) {
        let d = self.delta;
        match f {
            Formula::Atom(_) | Formula::Constant(_) => {}
            Formula::Unary(op, child) => {
                let x = self.index[child.as_ref()];
                match (op, self.logic) {
                    (UnaryOp::Inv, _) | (UnaryOp::Not, Logic::Lukasiewicz) => {
                        self.row(LinearExpr::var(z).plus(x, one()).offset(-one()), Relation::Eq);
                    }
                    (UnaryOp::Not, Logic::Goedel) => {
                        let b = self.case_boolean(z);
                        self.row(LinearExpr::var(z).minus(b), Relation::Eq);
                        // b = 1: x ≤ 0
                        self.guarded(LinearExpr::var(x), b, true, None);
                        // b = 0: x ≥ δ
                        self.guarded(LinearExpr::var(d).minus(x), b, false, None);
                    }
                    (UnaryOp::Delta, _) => {
                        let b = self.case_boolean(z);
                        self.row(LinearExpr::var(z).minus(b), Relation::Eq);
                        // b = 1: x ≥ 1
                        self.guarded(LinearExpr::constant(one()).minus(x), b, true, None);
                        // b = 0: x ≤ 1 - δ
                        self.guarded(LinearExpr::var(x).plus(d, one()).offset(-one()), b, false, None);
                    }
                }
            }
            Formula::Binary(op, l, r) => {
                let x = self.index[l.as_ref()];
                let y = self.index[r.as_ref()];
                match (self.logic, op) {
                    (_, BinaryOp::WeakAnd) | (Logic::Goedel, BinaryOp::StrongAnd) => self.min_pattern(z, x, y),
                    (_, BinaryOp::WeakOr) | (Logic::Goedel, BinaryOp::StrongOr) => self.max_pattern(z, x, y),
                    (Logic::Lukasiewicz, BinaryOp::StrongAnd) => {
                        self.clamped_and(z, LinearExpr::var(x).plus(y, one()).offset(-one()))
                    }
                    (Logic::Lukasiewicz, BinaryOp::StrongOr) => {
                        self.clamped_or(z, LinearExpr::var(x).plus(y, one()))
                    }
                    (Logic::Lukasiewicz, BinaryOp::Implies) => {
                        self.clamped_or(z, LinearExpr::constant(one()).minus(x).plus(y, one()))
                    }
                    (Logic::Goedel, BinaryOp::Implies) => {
                        let b = self.case_boolean(z);
                        // unguarded: z ≥ y
                        self.row(LinearExpr::var(y).minus(z), Relation::Le);
                        // b = 1: x ≤ y, z ≥ 1
                        self.guarded(LinearExpr::var(x).minus(y), b, true, None);
                        self.guarded(LinearExpr::constant(one()).minus(z), b, true, None);
                        // b = 0: y ≤ x - δ, z ≤ y
                        self.guarded(LinearExpr::var(y).minus(x).plus(d, one()), b, false, None);
                        self.guarded(LinearExpr::var(z).minus(y), b, false, None);
                    }
                    (_, BinaryOp::Equiv) => unreachable!("equivalence is rewritten before encoding"),
                }
            }
            Formula::Weighted {
                op,
                left_weight,
                right_weight,
                left,
                right,
            } => {
                let x = self.index[left.as_ref()];
                let y = self.index[right.as_ref()];
                match op {
                    WeightedOp::StrongOr => self.clamped_or(
                        z,
                        LinearExpr::new().plus(x, left_weight.clone()).plus(y, right_weight.clone()),
                    ),
                    WeightedOp::StrongAnd => self.clamped_and(
                        z,
                        LinearExpr::new()
                            .plus(x, left_weight.clone())
                            .plus(y, right_weight.clone())
                            .offset(one() - left_weight - right_weight),
                    ),
                }
            }
        }
    }

    fn case_boolean(&mut self, z: VarId) -> VarId {
        let b = self.boolean(format!("b_{}", self.variables[z.0].name));
        self.connective_booleans.push(b);
        b
    }

    /// z = min(x, y); b = 1 selects x.
    fn min_pattern(&mut self, z: VarId, x: VarId, y: VarId) {
        let b = self.case_boolean(z);
        self.row(LinearExpr::var(z).minus(x), Relation::Le);
        self.row(LinearExpr::var(z).minus(y), Relation::Le);
        self.guarded(LinearExpr::var(x).minus(z), b, true, None);
        self.guarded(LinearExpr::var(x).minus(y), b, true, None);
        self.guarded(LinearExpr::var(y).minus(z), b, false, None);
        self.guarded(LinearExpr::var(y).minus(x), b, false, None);
    }

    /// z = max(x, y); b = 1 selects x.
    fn max_pattern(&mut self, z: VarId, x: VarId, y: VarId) {
        let b = self.case_boolean(z);
        self.row(LinearExpr::var(x).minus(z), Relation::Le);
        self.row(LinearExpr::var(y).minus(z), Relation::Le);
        self.guarded(LinearExpr::var(z).minus(x), b, true, None);
        self.guarded(LinearExpr::var(y).minus(x), b, true, None);
        self.guarded(LinearExpr::var(z).minus(y), b, false, None);
        self.guarded(LinearExpr::var(x).minus(y), b, false, None);
    }

    /// z = max(0, e); b = 1 selects e.
    fn clamped_and(&mut self, z: VarId, e: LinearExpr) {
        let b = self.case_boolean(z);
        let mut z_minus_e = LinearExpr::var(z);
        for (v, c) in &e.terms {
            z_minus_e.add_term(*v, -c.clone());
        }
        z_minus_e.constant = -e.constant.clone();
        // unguarded: e ≤ z
        let mut e_minus_z = e;
        e_minus_z.add_term(z, -one());
        self.row(e_minus_z, Relation::Le);
        self.guarded(z_minus_e, b, true, None);
        self.guarded(LinearExpr::var(z), b, false, None);
    }

    /// z = min(1, e); b = 1 selects 1.
    fn clamped_or(&mut self, z: VarId, e: LinearExpr) {
        let b = self.case_boolean(z);
        let mut e_minus_z = e.clone();
        e_minus_z.add_term(z, -one());
        // unguarded: z ≤ e
        let mut z_minus_e = LinearExpr::var(z);
        for (v, c) in &e.terms {
            z_minus_e.add_term(*v, -c.clone());
        }
        z_minus_e.constant = -e.constant;
        self.row(z_minus_e, Relation::Le);
        self.guarded(LinearExpr::constant(one()).minus(z), b, true, None);
        self.guarded(e_minus_z, b, false, None);
    }

    /// `lower(s) ≥ a` (plus δ when open) as `expr ≤ 0`.
    fn lower_row(&self, s: VarId, interval: &Interval) -> LinearExpr {
        let e = LinearExpr::constant(interval.lower().clone()).minus(s);
        if interval.lower_open() {
            e.plus(self.delta, one())
        } else {
            e
        }
    }

    fn upper_row(&self, s: VarId, interval: &Interval) -> LinearExpr {
        let e = LinearExpr::var(s).offset(-interval.upper().clone());
        if interval.upper_open() {
            e.plus(self.delta, one())
        } else {
            e
        }
    }

    fn is_trivial_lower(interval: &Interval) -> bool {
        interval.lower().is_zero() && !interval.lower_open()
    }

    fn is_trivial_upper(interval: &Interval) -> bool {
        interval.upper().is_one() && !interval.upper_open()
    }

    /// Requires `s ∈ set`.
    fn require_in(&mut self, s: VarId, set: &IntervalSet) {
        match set.intervals() {
            [] => self.row(LinearExpr::constant(one()), Relation::Le),
            [only] => {
                if !Self::is_trivial_lower(only) {
                    let e = self.lower_row(s, only);
                    self.row(e, Relation::Le);
                }
                if !Self::is_trivial_upper(only) {
                    let e = self.upper_row(s, only);
                    self.row(e, Relation::Le);
                }
            }
            intervals => {
                let g = self.groups.len();
                let name = self.variables[s.0].name.clone();
                let mut selectors = Vec::new();
                let mut sum = LinearExpr::constant(-one());
                for k in 0..intervals.len() {
                    let b = self.boolean(format!("sel{g}_{name}_{k}"));
                    sum.add_term(b, one());
                    selectors.push(b);
                }
                self.constraints.push(Constraint {
                    expr: sum,
                    relation: Relation::Eq,
                    guard: None,
                    group: Some(g),
                });
                for (interval, &b) in intervals.iter().zip(&selectors) {
                    if !Self::is_trivial_lower(interval) {
                        let e = self.lower_row(s, interval);
                        self.guarded(e, b, true, Some(g));
                    }
                    if !Self::is_trivial_upper(interval) {
                        let e = self.upper_row(s, interval);
                        self.guarded(e, b, true, Some(g));
                    }
                }
                self.groups.push(IntervalGroup {
                    kind: GroupKind::Select,
                    var: s,
                    allowed: set.clone(),
                    booleans: selectors,
                    source: intervals.to_vec(),
                });
                self.group_items.push(g);
            }
        }
    }

    /// Requires `s ∉ set` with one side boolean per interval of `set`.
    fn require_outside(&mut self, s: VarId, set: &IntervalSet) {
        let allowed = set.complement();
        if set.len() <= 1 && allowed.len() <= 1 {
            // a single interval in, a single interval out: plain rows suffice
            self.require_in(s, &allowed);
            return;
        }
        let g = self.groups.len();
        let name = self.variables[s.0].name.clone();
        let mut sides = Vec::new();
        for (k, interval) in set.intervals().iter().enumerate() {
            let b = self.boolean(format!("side{g}_{name}_{k}"));
            sides.push(b);
            // b = 1: s left of the interval
            let mut left = LinearExpr::var(s).offset(-interval.lower().clone());
            if !interval.lower_open() {
                left.add_term(self.delta, one());
            }
            self.guarded(left, b, true, Some(g));
            // b = 0: s right of the interval
            let mut right = LinearExpr::constant(interval.upper().clone()).minus(s);
            if !interval.upper_open() {
                right.add_term(self.delta, one());
            }
            self.guarded(right, b, false, Some(g));
        }
        self.groups.push(IntervalGroup {
            kind: GroupKind::Avoid,
            var: s,
            allowed,
            booleans: sides,
            source: set.intervals().to_vec(),
        });
        self.group_items.push(g);
    }

    fn finish(self) -> MilpProblem {
        // Fewest alternatives first; ties keep sentence groups ahead of
        // connective case splits.
        let mut branch_order: Vec<BranchItem> = self.group_items.iter().map(|&g| BranchItem::Group(g)).collect();
        branch_order.extend(self.connective_booleans.iter().map(|&b| BranchItem::Boolean(b)));
        let groups = &self.groups;
        branch_order.sort_by_key(|item| match item {
            BranchItem::Boolean(_) => 2,
            BranchItem::Group(g) => groups[*g].allowed.len(),
        });
        MilpProblem {
            logic: self.logic,
            variables: self.variables,
            constraints: self.constraints,
            groups: self.groups,
            delta: self.delta,
            formula_vars: self.formula_vars,
            branch_order,
            query_var: self.query_var,
        }
    }
}

/// Encodes the truth-function constraints for the closure of `formulas`.
pub fn encode_connective_constraints(logic: Logic, formulas: &[Formula]) -> Result<MilpProblem, MilpError> {
    let mut b = Builder::new(logic);
    let rewritten: Vec<Formula> = formulas.iter().map(|f| rewrite(logic, f)).collect();
    b.add_formulas(&rewritten)?;
    Ok(b.finish())
}

fn encode_theory(builder: &mut Builder, theory: &Theory, extra: Option<&Formula>) -> Result<Vec<VarId>, MilpError> {
    let logic = theory.logic();
    let mut rewritten: Vec<Formula> = theory.sentences().iter().map(|s| rewrite(logic, &s.formula)).collect();
    if let Some(q) = extra {
        rewritten.push(rewrite(logic, q));
    }
    builder.add_formulas(&rewritten)?;
    let vars: Vec<VarId> = rewritten.iter().map(|f| builder.index[f]).collect();
    for (sentence, &v) in theory.sentences().iter().zip(&vars) {
        builder.require_in(v, &sentence.values);
    }
    Ok(vars)
}

/// The problem is feasible with `delta > 0` iff the theory has a model.
pub fn encode_satisfiability(theory: &Theory) -> Result<MilpProblem, MilpError> {
    let mut b = Builder::new(theory.logic());
    encode_theory(&mut b, theory, None)?;
    Ok(b.finish())
}

/// The problem is feasible with `delta > 0` iff some model of the theory
/// falsifies the query, i.e. iff the theory does not entail it.
pub fn encode_entailment(theory: &Theory, query: &SimpleSentence) -> Result<MilpProblem, MilpError> {
    let mut b = Builder::new(theory.logic());
    let vars = encode_theory(&mut b, theory, Some(&query.formula))?;
    let q = *vars.last().expect("query formula was encoded");
    b.query_var = Some(q);
    b.require_outside(q, &query.values);
    Ok(b.finish())
}
