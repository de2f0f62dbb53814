//! Simple sentences, theories and the theory file format.
//!
//! ```text
//! # comment
//! logic goedel
//! sentence: (x & y) -> z in [1,1]
//! sentence: x in [0,0.5]; y in (0.5,1]      # product sentence, split per component
//! query: z in (0.5,1]
//! ```

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::formula::{parse_formula, Formula, FormulaError};
use crate::intervals::{parse_interval_set, IntervalError, IntervalSet};
use crate::semantics::{evaluate, Logic, Model, SemanticsError};

/// A formula together with the set its truth value must lie in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSentence {
    pub formula: Formula,
    pub values: IntervalSet,
}

impl SimpleSentence {
    pub fn new(formula: Formula, values: IntervalSet) -> Self {
        Self { formula, values }
    }

    pub fn satisfied_by(&self, logic: Logic, model: &Model) -> Result<bool, SemanticsError> {
        Ok(self.values.contains(&evaluate(logic, &self.formula, model)?))
    }
}

impl fmt::Display for SimpleSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.formula, self.values)
    }
}

/// The sentence asserting the value lies outside `s.values`.
pub fn negate_sentence(s: &SimpleSentence) -> SimpleSentence {
    SimpleSentence::new(s.formula.clone(), s.values.complement())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("component {0} appears twice in one sentence")]
    DuplicateComponent(String),
    #[error("{components} components but {sets} value sets")]
    LengthMismatch { components: usize, sets: usize },
    #[error("weighted formula '{0}' is not allowed under goedel logic")]
    WeightedUnderGoedel(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Splits a product sentence `(σ₁,…,σ_k, S₁×⋯×S_k)` into its simple sentences.
pub fn decompose_interval_sentence(
    components: &[Formula],
    product: &[IntervalSet],
) -> Result<Vec<SimpleSentence>, TheoryError> {
    if components.len() != product.len() {
        return Err(TheoryError::LengthMismatch {
            components: components.len(),
            sets: product.len(),
        });
    }
    let mut seen = HashSet::new();
    for c in components {
        if !seen.insert(c) {
            return Err(TheoryError::DuplicateComponent(c.to_string()));
        }
    }
    Ok(components
        .iter()
        .zip(product)
        .map(|(f, s)| SimpleSentence::new(f.clone(), s.clone()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    logic: Logic,
    sentences: Vec<SimpleSentence>,
}

impl Theory {
    pub fn new(logic: Logic) -> Self {
        Self {
            logic,
            sentences: Vec::new(),
        }
    }

    pub fn with_sentences(
        logic: Logic,
        sentences: impl IntoIterator<Item = SimpleSentence>,
    ) -> Result<Self, TheoryError> {
        let mut theory = Self::new(logic);
        for s in sentences {
            theory.add(s)?;
        }
        Ok(theory)
    }

    pub fn add(&mut self, sentence: SimpleSentence) -> Result<(), TheoryError> {
        check_logic(self.logic, &sentence.formula)?;
        self.sentences.push(sentence);
        Ok(())
    }

    pub fn logic(&self) -> Logic {
        self.logic
    }

    /// Reinterprets the same sentences under another logic.
    pub fn with_logic(&self, logic: Logic) -> Result<Self, TheoryError> {
        Self::with_sentences(logic, self.sentences.iter().cloned())
    }

    pub fn sentences(&self) -> &[SimpleSentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn satisfied_by(&self, model: &Model) -> Result<bool, SemanticsError> {
        for s in &self.sentences {
            if !s.satisfied_by(self.logic, model)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn check_logic(logic: Logic, formula: &Formula) -> Result<(), TheoryError> {
    if logic == Logic::Goedel && formula.has_weights() {
        return Err(TheoryError::WeightedUnderGoedel(formula.to_string()));
    }
    Ok(())
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic {}", self.logic)?;
        for s in &self.sentences {
            writeln!(f, "sentence: {s}")?;
        }
        Ok(())
    }
}

/// A possibly multi-component query; entailed iff every component is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub components: Vec<SimpleSentence>,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryFile {
    pub theory: Theory,
    pub query: Option<Query>,
}

/// Parses the line-oriented theory format. A missing `logic` line defaults to
/// Lukasiewicz.
pub fn parse_theory(text: &str) -> Result<TheoryFile, TheoryError> {
    let mut logic: Option<Logic> = None;
    let mut sentences: Vec<(usize, SimpleSentence)> = Vec::new();
    let mut query: Option<Query> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| TheoryError::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("logic") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(err(format!("unrecognized declaration '{line}'")));
            }
            if logic.is_some() {
                return Err(err("duplicate logic declaration".into()));
            }
            logic = Some(rest.trim().parse::<Logic>().map_err(err)?);
        } else if let Some(rest) = line.strip_prefix("sentence:") {
            for s in parse_components(rest).map_err(err)? {
                sentences.push((line_no, s));
            }
        } else if let Some(rest) = line.strip_prefix("query:") {
            if query.is_some() {
                return Err(err("more than one query".into()));
            }
            query = Some(Query {
                components: parse_components(rest).map_err(err)?,
            });
        } else {
            return Err(err(format!("unrecognized declaration '{line}'")));
        }
    }
    let logic = logic.unwrap_or(Logic::Lukasiewicz);
    let mut theory = Theory::new(logic);
    for (line, s) in sentences {
        theory.add(s).map_err(|e| TheoryError::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    if let Some(q) = &query {
        for c in &q.components {
            check_logic(logic, &c.formula).map_err(|e| TheoryError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        }
    }
    Ok(TheoryFile { theory, query })
}

fn parse_components(text: &str) -> Result<Vec<SimpleSentence>, String> {
    let mut formulas = Vec::new();
    let mut sets = Vec::new();
    for part in text.split(';') {
        let (formula, set) = split_sentence(part.trim())?;
        formulas.push(formula);
        sets.push(set);
    }
    decompose_interval_sentence(&formulas, &sets).map_err(|e| e.to_string())
}

fn split_sentence(text: &str) -> Result<(Formula, IntervalSet), String> {
    // interval syntax never contains "in", so the last occurrence separates
    let at = text
        .rmatch_indices(" in ")
        .next()
        .map(|(i, _)| i)
        .ok_or_else(|| format!("expected '<formula> in <intervals>' in '{text}'"))?;
    let formula = parse_formula(&text[..at]).map_err(|e: FormulaError| e.to_string())?;
    let set = parse_interval_set(&text[at + 4..]).map_err(|e: IntervalError| e.to_string())?;
    Ok((formula, set))
}
