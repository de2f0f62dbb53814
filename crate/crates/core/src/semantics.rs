//! Truth functions of the supported logics and model evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{BinaryOp, Formula, UnaryOp, WeightedOp};
use crate::rational::{format_rational, in_unit_interval, one, zero, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    Lukasiewicz,
    Goedel,
}

impl Logic {
    pub const ALL: [Logic; 2] = [Logic::Lukasiewicz, Logic::Goedel];

    pub fn name(self) -> &'static str {
        match self {
            Logic::Lukasiewicz => "lukasiewicz",
            Logic::Goedel => "goedel",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lukasiewicz" | "łukasiewicz" | "luk" => Ok(Logic::Lukasiewicz),
            "goedel" | "godel" | "gödel" => Ok(Logic::Goedel),
            other => Err(format!("unknown logic '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("weighted connectives are only defined for Lukasiewicz logic")]
    WeightedUnderGoedel,
    #[error("atom '{0}' has no value in the model")]
    UnboundAtom(String),
    #[error("truth value {0} is outside [0,1]")]
    OutOfRange(String),
}

/// A connective together with any weights it carries.
#[derive(Clone, Copy, Debug)]
pub enum Connective<'a> {
    Unary(UnaryOp),
    Binary(BinaryOp),
    Weighted(WeightedOp, &'a Rational, &'a Rational),
}

pub fn unary_value(logic: Logic, op: UnaryOp, a: &Rational) -> Rational {
    match op {
        UnaryOp::Not => match logic {
            Logic::Lukasiewicz => one() - a,
            Logic::Goedel => {
                if a.is_zero() {
                    one()
                } else {
                    zero()
                }
            }
        },
        UnaryOp::Inv => one() - a,
        UnaryOp::Delta => {
            if a.is_one() {
                one()
            } else {
                zero()
            }
        }
    }
}

pub fn binary_value(logic: Logic, op: BinaryOp, a: &Rational, b: &Rational) -> Rational {
    match (logic, op) {
        (_, BinaryOp::WeakAnd) | (Logic::Goedel, BinaryOp::StrongAnd) => a.min(b).clone(),
        (_, BinaryOp::WeakOr) | (Logic::Goedel, BinaryOp::StrongOr) => a.max(b).clone(),
        (Logic::Lukasiewicz, BinaryOp::StrongAnd) => (a + b - one()).max(zero()),
        (Logic::Lukasiewicz, BinaryOp::StrongOr) => (a + b).min(one()),
        (Logic::Lukasiewicz, BinaryOp::Implies) => (one() - a + b).min(one()),
        (Logic::Goedel, BinaryOp::Implies) => {
            if a <= b {
                one()
            } else {
                b.clone()
            }
        }
        (_, BinaryOp::Equiv) => {
            let forward = binary_value(logic, BinaryOp::Implies, a, b);
            let backward = binary_value(logic, BinaryOp::Implies, b, a);
            binary_value(logic, BinaryOp::StrongAnd, &forward, &backward)
        }
    }
}

pub fn weighted_value(
    logic: Logic,
    op: WeightedOp,
    left_weight: &Rational,
    right_weight: &Rational,
    a: &Rational,
    b: &Rational,
) -> Result<Rational, SemanticsError> {
    if logic != Logic::Lukasiewicz {
        return Err(SemanticsError::WeightedUnderGoedel);
    }
    Ok(match op {
        WeightedOp::StrongOr => (left_weight * a + right_weight * b).min(one()),
        WeightedOp::StrongAnd => {
            (one() - left_weight * (one() - a) - right_weight * (one() - b)).max(zero())
        }
    })
}

/// Value of a connective applied to one or two truth values.
pub fn connective_value(
    logic: Logic,
    connective: Connective<'_>,
    args: &[Rational],
) -> Result<Rational, SemanticsError> {
    for a in args {
        if !in_unit_interval(a) {
            return Err(SemanticsError::OutOfRange(format_rational(a)));
        }
    }
    match connective {
        Connective::Unary(op) => Ok(unary_value(logic, op, &args[0])),
        Connective::Binary(op) => Ok(binary_value(logic, op, &args[0], &args[1])),
        Connective::Weighted(op, w1, w2) => weighted_value(logic, op, w1, w2, &args[0], &args[1]),
    }
}

/// Assignment of rational truth values to atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    values: BTreeMap<String, Rational>,
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: Rational) -> Result<(), SemanticsError> {
        if !in_unit_interval(&value) {
            return Err(SemanticsError::OutOfRange(format_rational(&value)));
        }
        self.values.insert(atom.into(), value);
        Ok(())
    }

    pub fn with(mut self, atom: impl Into<String>, value: Rational) -> Self {
        self.set(atom, value).expect("model value outside [0,1]");
        self
    }

    pub fn get(&self, atom: &str) -> Option<&Rational> {
        self.values.get(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<(String, Rational)> for Model {
    fn from_iter<T: IntoIterator<Item = (String, Rational)>>(iter: T) -> Self {
        let mut model = Model::new();
        for (k, v) in iter {
            model.set(k, v).expect("model value outside [0,1]");
        }
        model
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn evaluate(logic: Logic, formula: &Formula, model: &Model) -> Result<Rational, SemanticsError> {
    match formula {
        Formula::Atom(name) => model
            .get(name)
            .cloned()
            .ok_or_else(|| SemanticsError::UnboundAtom(name.clone())),
        Formula::Constant(value) => Ok(value.clone()),
        Formula::Unary(op, child) => Ok(unary_value(logic, *op, &evaluate(logic, child, model)?)),
        Formula::Binary(op, l, r) => {
            let a = evaluate(logic, l, model)?;
            let b = evaluate(logic, r, model)?;
            Ok(binary_value(logic, *op, &a, &b))
        }
        Formula::Weighted {
            op,
            left_weight,
            right_weight,
            left,
            right,
        } => {
            let a = evaluate(logic, left, model)?;
            let b = evaluate(logic, right, model)?;
            weighted_value(logic, *op, left_weight, right_weight, &a, &b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::rational::{int, rat};

    fn grid(d: i64) -> Vec<Rational> {
        (0..=d).map(|i| rat(i, d)).collect()
    }

    #[test]
    fn connective_examples() {
        let l = Logic::Lukasiewicz;
        let g = Logic::Goedel;
        assert_eq!(
            connective_value(l, Connective::Binary(BinaryOp::StrongAnd), &[rat(7, 10), rat(6, 10)]).unwrap(),
            rat(3, 10)
        );
        assert_eq!(
            connective_value(g, Connective::Binary(BinaryOp::Implies), &[rat(1, 2), rat(3, 10)]).unwrap(),
            rat(3, 10)
        );
        let (w1, w2) = (int(2), int(1));
        assert_eq!(
            connective_value(l, Connective::Weighted(WeightedOp::StrongOr, &w1, &w2), &[rat(1, 5), rat(1, 5)])
                .unwrap(),
            rat(3, 5)
        );
        for logic in Logic::ALL {
            assert_eq!(unary_value(logic, UnaryOp::Delta, &int(1)), int(1));
            assert_eq!(unary_value(logic, UnaryOp::Delta, &rat(999, 1000)), int(0));
        }
    }

    #[test]
    fn weighted_rejected_under_goedel() {
        let (w1, w2) = (int(1), int(1));
        assert_eq!(
            connective_value(
                Logic::Goedel,
                Connective::Weighted(WeightedOp::StrongAnd, &w1, &w2),
                &[int(1), int(1)]
            ),
            Err(SemanticsError::WeightedUnderGoedel)
        );
    }

    #[test]
    fn evaluate_examples() {
        let f = parse_formula("x | y").unwrap();
        let m = Model::new().with("x", rat(1, 4)).with("y", rat(1, 4));
        assert_eq!(evaluate(Logic::Lukasiewicz, &f, &m).unwrap(), rat(1, 2));

        let sigma = parse_formula("(x -> y) -> ((!x -> y) -> y)").unwrap();
        let m = Model::new().with("x", int(0)).with("y", int(0));
        assert_eq!(evaluate(Logic::Goedel, &sigma, &m).unwrap(), int(1));

        let m = Model::new().with("x", rat(2, 7));
        assert_eq!(evaluate(Logic::Goedel, &Formula::atom("x"), &m).unwrap(), rat(2, 7));
        assert_eq!(
            evaluate(Logic::Goedel, &Formula::atom("q"), &m),
            Err(SemanticsError::UnboundAtom("q".into()))
        );
    }

    #[test]
    fn grid_laws() {
        let g = grid(6);
        let one_one = (int(1), int(1));
        for a in &g {
            // involution and idempotence
            let nn = unary_value(Logic::Lukasiewicz, UnaryOp::Not, &unary_value(Logic::Lukasiewicz, UnaryOp::Not, a));
            assert_eq!(&nn, a);
            assert_eq!(&binary_value(Logic::Goedel, BinaryOp::StrongAnd, a, a), a);
            for b in &g {
                for logic in Logic::ALL {
                    let imp = binary_value(logic, BinaryOp::Implies, a, b);
                    assert_eq!(imp == int(1), a <= b);
                    for op in [BinaryOp::StrongAnd, BinaryOp::WeakAnd, BinaryOp::StrongOr, BinaryOp::WeakOr, BinaryOp::Implies, BinaryOp::Equiv] {
                        assert!(in_unit_interval(&binary_value(logic, op, a, b)));
                    }
                }
                assert_eq!(
                    weighted_value(Logic::Lukasiewicz, WeightedOp::StrongOr, &one_one.0, &one_one.1, a, b).unwrap(),
                    binary_value(Logic::Lukasiewicz, BinaryOp::StrongOr, a, b)
                );
                assert_eq!(
                    weighted_value(Logic::Lukasiewicz, WeightedOp::StrongAnd, &one_one.0, &one_one.1, a, b).unwrap(),
                    binary_value(Logic::Lukasiewicz, BinaryOp::StrongAnd, a, b)
                );
            }
        }
    }

    #[test]
    fn logic_names_parse() {
        assert_eq!("goedel".parse::<Logic>(), Ok(Logic::Goedel));
        assert_eq!("Lukasiewicz".parse::<Logic>(), Ok(Logic::Lukasiewicz));
        assert!("product".parse::<Logic>().is_err());
    }
}
