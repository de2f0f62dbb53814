//! Formula syntax trees, the text parser and printer, and structural
//! utilities (atoms, subformula closure).
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! equiv   := implies ( "<->" implies )*            left-assoc
//! implies := disj ( "->" implies )?                right-assoc
//! disj    := conj ( ("|" | "||") conj )*           left-assoc
//! conj    := unary ( ("&" | "&&") unary )*         left-assoc
//! unary   := ("!" | "~" | "^") unary | primary
//! primary := atom | constant | "(" equiv ")"
//!          | ("wand" | "wor") "[" weight "," weight "]" "(" equiv "," equiv ")"
//! ```
//!
//! Constants are decimals (`0.5`, `.5`) or fractions (`1/2`) and must lie in
//! `[0,1]`; they are stored as exact rationals.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

use crate::rational::{format_rational, in_unit_interval, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    /// Residual negation, `x -> 0`.
    Not,
    /// Involutive negation, `1 - x`.
    Inv,
    /// Delta: 1 at 1, else 0.
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    StrongAnd,
    WeakAnd,
    StrongOr,
    WeakOr,
    Implies,
    Equiv,
}

/// Connectives that accept per-operand weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightedOp {
    StrongAnd,
    StrongOr,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Inv => "~",
            UnaryOp::Delta => "^",
        }
    }
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::StrongAnd => "&",
            BinaryOp::WeakAnd => "&&",
            BinaryOp::StrongOr => "|",
            BinaryOp::WeakOr => "||",
            BinaryOp::Implies => "->",
            BinaryOp::Equiv => "<->",
        }
    }
}

impl WeightedOp {
    pub fn keyword(self) -> &'static str {
        match self {
            WeightedOp::StrongAnd => "wand",
            WeightedOp::StrongOr => "wor",
        }
    }
}

/// A propositional formula. Children are reference counted so closures and
/// encodings can clone formulas cheaply.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Constant(Rational),
    Unary(UnaryOp, Arc<Formula>),
    Binary(BinaryOp, Arc<Formula>, Arc<Formula>),
    Weighted {
        op: WeightedOp,
        left_weight: Rational,
        right_weight: Rational,
        left: Arc<Formula>,
        right: Arc<Formula>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("constant {value} at position {position} is outside [0,1]")]
    ConstantOutOfRange { position: usize, value: String },
    #[error("weight {value} at position {position} is not a nonnegative rational")]
    InvalidWeight { position: usize, value: String },
    #[error("weighted unary connectives are not supported (position {position})")]
    WeightedUnary { position: usize },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn constant(value: Rational) -> Self {
        assert!(in_unit_interval(&value), "constant outside [0,1]");
        Formula::Constant(value)
    }

    pub fn unary(op: UnaryOp, child: Formula) -> Self {
        Formula::Unary(op, Arc::new(child))
    }

    pub fn binary(op: BinaryOp, left: Formula, right: Formula) -> Self {
        Formula::Binary(op, Arc::new(left), Arc::new(right))
    }

    pub fn weighted(
        op: WeightedOp,
        left_weight: Rational,
        right_weight: Rational,
        left: Formula,
        right: Formula,
    ) -> Self {
        assert!(
            !left_weight.is_negative() && !right_weight.is_negative(),
            "weights must be nonnegative"
        );
        Formula::Weighted {
            op,
            left_weight,
            right_weight,
            left: Arc::new(left),
            right: Arc::new(right),
        }
    }

    pub fn negate(self) -> Self {
        Formula::unary(UnaryOp::Not, self)
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::binary(BinaryOp::Implies, self, other)
    }

    /// Immediate subformulas; weights are not subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Constant(_) => Vec::new(),
            Formula::Unary(_, child) => vec![child.as_ref()],
            Formula::Binary(_, l, r) => vec![l.as_ref(), r.as_ref()],
            Formula::Weighted { left, right, .. } => vec![left.as_ref(), right.as_ref()],
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn has_weights(&self) -> bool {
        match self {
            Formula::Weighted { .. } => true,
            _ => self.children().into_iter().any(Formula::has_weights),
        }
    }

    pub fn height(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            _ => {
                for child in self.children() {
                    child.collect_atoms(out);
                }
            }
        }
    }
}

pub fn atoms(formula: &Formula) -> BTreeSet<String> {
    formula.atoms()
}

/// Atoms of several formulas, sorted.
pub fn atoms_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut out);
    }
    out
}

/// Deduplicated closure under subformulas, children before parents.
///
/// Formulas are ordered by height, ties broken by printed form, which makes
/// the order deterministic and topological.
pub fn subformula_closure<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<Formula> {
    let mut seen: HashSet<&Formula> = HashSet::new();
    let mut stack: Vec<&Formula> = formulas.into_iter().collect();
    while let Some(f) = stack.pop() {
        if seen.insert(f) {
            stack.extend(f.children());
        }
    }
    let mut heights: HashMap<&Formula, usize> = HashMap::new();
    let mut keyed: Vec<(usize, String, &Formula)> = seen
        .into_iter()
        .map(|f| (height_memo(f, &mut heights), f.to_string(), f))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, _, f)| f.clone()).collect()
}

fn height_memo<'a>(f: &'a Formula, memo: &mut HashMap<&'a Formula, usize>) -> usize {
    if let Some(&h) = memo.get(f) {
        return h;
    }
    let h = f
        .children()
        .into_iter()
        .map(|c| height_memo(c, memo) + 1)
        .max()
        .unwrap_or(0);
    memo.insert(f, h);
    h
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Constant(value) => write!(f, "{}", format_rational(value)),
            Formula::Unary(op, child) => {
                write!(f, "{}", op.symbol())?;
                write_operand(f, child)
            }
            Formula::Binary(op, l, r) => {
                write_operand(f, l)?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, r)
            }
            Formula::Weighted {
                op,
                left_weight,
                right_weight,
                left,
                right,
            } => write!(
                f,
                "{}[{},{}]({}, {})",
                op.keyword(),
                format_rational(left_weight),
                format_rational(right_weight),
                left,
                right
            ),
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, child: &Formula) -> fmt::Result {
    if matches!(child, Formula::Binary(..)) {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bang,
    Tilde,
    Caret,
    Amp,
    AmpAmp,
    Bar,
    BarBar,
    Arrow,
    DoubleArrow,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let syntax = |position: usize, message: &str| FormulaError::Syntax {
        position,
        message: message.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let next = chars.get(i + 1).copied();
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Token::LParen,
            ')' => Token::RParen,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            ',' => Token::Comma,
            '!' => Token::Bang,
            '~' => Token::Tilde,
            '^' => Token::Caret,
            '&' if next == Some('&') => {
                i += 1;
                Token::AmpAmp
            }
            '&' => Token::Amp,
            '|' if next == Some('|') => {
                i += 1;
                Token::BarBar
            }
            '|' => Token::Bar,
            '-' if next == Some('>') => {
                i += 1;
                Token::Arrow
            }
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Token::DoubleArrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let ident: String = chars[i..j].iter().collect();
                i = j;
                out.push((start, Token::Ident(ident)));
                continue;
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.' || chars[j] == '/')
                {
                    j += 1;
                }
                let number: String = chars[i..j].iter().collect();
                i = j;
                out.push((start, Token::Number(number)));
                continue;
            }
            other => return Err(syntax(start, &format!("unexpected character '{other}'"))),
        };
        i += 1;
        out.push((start, token));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), FormulaError> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn equiv(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.implies()?;
        while self.peek() == Some(&Token::DoubleArrow) {
            self.pos += 1;
            let right = self.implies()?;
            left = Formula::binary(BinaryOp::Equiv, left, right);
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula, FormulaError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let right = self.implies()?;
            return Ok(Formula::binary(BinaryOp::Implies, left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.conjunction()?;
        loop {
            let op = match self.peek() {
                Some(Token::Bar) => BinaryOp::StrongOr,
                Some(Token::BarBar) => BinaryOp::WeakOr,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.conjunction()?;
            left = Formula::binary(op, left, right);
        }
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Amp) => BinaryOp::StrongAnd,
                Some(Token::AmpAmp) => BinaryOp::WeakAnd,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::binary(op, left, right);
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        let op = match self.peek() {
            Some(Token::Bang) => UnaryOp::Not,
            Some(Token::Tilde) => UnaryOp::Inv,
            Some(Token::Caret) => UnaryOp::Delta,
            _ => return self.primary(),
        };
        self.pos += 1;
        Ok(Formula::unary(op, self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        let position = self.offset();
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.equiv()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(Token::Number(text)) => {
                self.pos += 1;
                let value = parse_rational(&text).ok_or_else(|| FormulaError::Syntax {
                    position,
                    message: format!("malformed number '{text}'"),
                })?;
                if !in_unit_interval(&value) {
                    return Err(FormulaError::ConstantOutOfRange {
                        position,
                        value: text,
                    });
                }
                Ok(Formula::Constant(value))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let weighted = match name.as_str() {
                    "wand" => Some(WeightedOp::StrongAnd),
                    "wor" => Some(WeightedOp::StrongOr),
                    _ => None,
                };
                match weighted {
                    Some(op) if self.peek() == Some(&Token::LBracket) => self.weighted(op, position),
                    _ => Ok(Formula::Atom(name)),
                }
            }
            Some(_) => Err(self.error("expected a formula")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn weight(&mut self) -> Result<Rational, FormulaError> {
        let position = self.offset();
        match self.peek().cloned() {
            Some(Token::Number(text)) => {
                self.pos += 1;
                match parse_rational(&text) {
                    Some(w) if !w.is_negative() => Ok(w),
                    _ => Err(FormulaError::InvalidWeight {
                        position,
                        value: text,
                    }),
                }
            }
            _ => Err(self.error("expected a weight")),
        }
    }

    fn weighted(&mut self, op: WeightedOp, position: usize) -> Result<Formula, FormulaError> {
        self.expect(Token::LBracket, "'['")?;
        let left_weight = self.weight()?;
        if self.peek() == Some(&Token::RBracket) {
            return Err(FormulaError::WeightedUnary { position });
        }
        self.expect(Token::Comma, "','")?;
        let right_weight = self.weight()?;
        self.expect(Token::RBracket, "']'")?;
        self.expect(Token::LParen, "'('")?;
        let left = self.equiv()?;
        if self.peek() == Some(&Token::RParen) {
            return Err(FormulaError::WeightedUnary { position });
        }
        self.expect(Token::Comma, "','")?;
        let right = self.equiv()?;
        self.expect(Token::RParen, "')'")?;
        Ok(Formula::weighted(op, left_weight, right_weight, left, right))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
    };
    let formula = parser.equiv()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(formula)
}
