//! Finite unions of rational intervals inside `[0,1]`.
//!
//! An [`IntervalSet`] is always kept normalized: intervals are sorted,
//! pairwise disjoint and no two of them could be merged into one interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

use crate::rational::{format_rational, one, parse_rational, zero, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoints must satisfy 0 <= lower <= upper <= 1")]
    OutOfOrder,
    #[error("degenerate interval with an open endpoint is empty")]
    DegenerateOpen,
    #[error("malformed interval syntax: {0}")]
    Syntax(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Rational,
    upper: Rational,
    lower_open: bool,
    upper_open: bool,
}

impl Interval {
    pub fn new(
        lower: Rational,
        upper: Rational,
        lower_open: bool,
        upper_open: bool,
    ) -> Result<Self, IntervalError> {
        if lower.is_negative() || upper > one() || lower > upper {
            return Err(IntervalError::OutOfOrder);
        }
        if lower == upper && (lower_open || upper_open) {
            return Err(IntervalError::DegenerateOpen);
        }
        Ok(Self {
            lower,
            upper,
            lower_open,
            upper_open,
        })
    }

    pub fn closed(lower: Rational, upper: Rational) -> Result<Self, IntervalError> {
        Self::new(lower, upper, false, false)
    }

    pub fn open(lower: Rational, upper: Rational) -> Result<Self, IntervalError> {
        Self::new(lower, upper, true, true)
    }

    pub fn point(value: Rational) -> Result<Self, IntervalError> {
        Self::new(value.clone(), value, false, false)
    }

    pub fn unit() -> Self {
        Self::closed(zero(), one()).unwrap()
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn lower_open(&self) -> bool {
        self.lower_open
    }

    pub fn upper_open(&self) -> bool {
        self.upper_open
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let above = if self.lower_open { v > &self.lower } else { v >= &self.lower };
        let below = if self.upper_open { v < &self.upper } else { v <= &self.upper };
        above && below
    }

    /// Intersection of two intervals, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lower, lower_open) = match self.lower.cmp(&other.lower) {
            Ordering::Greater => (self.lower.clone(), self.lower_open),
            Ordering::Less => (other.lower.clone(), other.lower_open),
            Ordering::Equal => (self.lower.clone(), self.lower_open || other.lower_open),
        };
        let (upper, upper_open) = match self.upper.cmp(&other.upper) {
            Ordering::Less => (self.upper.clone(), self.upper_open),
            Ordering::Greater => (other.upper.clone(), other.upper_open),
            Ordering::Equal => (self.upper.clone(), self.upper_open || other.upper_open),
        };
        match lower.cmp(&upper) {
            Ordering::Less => Some(Interval {
                lower,
                upper,
                lower_open,
                upper_open,
            }),
            Ordering::Equal if !lower_open && !upper_open => Some(Interval {
                lower,
                upper,
                lower_open,
                upper_open,
            }),
            _ => None,
        }
    }

    fn lower_key_cmp(&self, other: &Interval) -> Ordering {
        // a closed lower endpoint starts before an open one at the same value
        self.lower
            .cmp(&other.lower)
            .then(self.lower_open.cmp(&other.lower_open))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lower_open { '(' } else { '[' },
            format_rational(&self.lower),
            format_rational(&self.upper),
            if self.upper_open { ')' } else { ']' }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self {
            intervals: vec![Interval::unit()],
        }
    }

    pub fn single(interval: Interval) -> Self {
        Self {
            intervals: vec![interval],
        }
    }

    pub fn point(value: Rational) -> Result<Self, IntervalError> {
        Ok(Self::single(Interval::point(value)?))
    }

    /// Builds the canonical form of a union of intervals.
    pub fn normalize(raw: impl IntoIterator<Item = Interval>) -> Self {
        let mut sorted: Vec<Interval> = raw.into_iter().collect();
        sorted.sort_by(Interval::lower_key_cmp);
        let mut out: Vec<Interval> = Vec::with_capacity(sorted.len());
        for next in sorted {
            if let Some(current) = out.last_mut() {
                let touches = match next.lower.cmp(&current.upper) {
                    Ordering::Less => true,
                    Ordering::Equal => !(current.upper_open && next.lower_open),
                    Ordering::Greater => false,
                };
                if touches {
                    match next.upper.cmp(&current.upper) {
                        Ordering::Greater => {
                            current.upper = next.upper;
                            current.upper_open = next.upper_open;
                        }
                        Ordering::Equal => current.upper_open &= next.upper_open,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(next);
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::unit()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        // first interval whose upper end is not below v
        let idx = self.intervals.partition_point(|i| &i.upper < v);
        self.intervals.get(idx).is_some_and(|i| i.contains(v))
    }

    /// Set complement within `[0,1]`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = zero();
        let mut cursor_open = false;
        let mut covered_to_end = false;
        for iv in &self.intervals {
            push_gap(&mut out, &cursor, cursor_open, &iv.lower, !iv.lower_open);
            cursor = iv.upper.clone();
            cursor_open = !iv.upper_open;
            covered_to_end = cursor == one() && !iv.upper_open;
        }
        if !covered_to_end {
            push_gap(&mut out, &cursor, cursor_open, &one(), false);
        }
        Self { intervals: out }
    }

    pub fn intersect(&self, other: &IntervalSet) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            // advance whichever interval ends first
            let a_ends_first = match a[i].upper.cmp(&b[j].upper) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => a[i].upper_open,
            };
            if a_ends_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::normalize(out)
    }

    pub fn union(&self, other: &IntervalSet) -> Self {
        Self::normalize(self.intervals.iter().chain(other.intervals.iter()).cloned())
    }

    /// Every endpoint appearing in the set, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .intervals
            .iter()
            .flat_map(|i| [i.lower.clone(), i.upper.clone()])
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn push_gap(
    out: &mut Vec<Interval>,
    from: &Rational,
    from_open: bool,
    to: &Rational,
    to_open: bool,
) {
    match from.cmp(to) {
        Ordering::Less => out.push(Interval {
            lower: from.clone(),
            upper: to.clone(),
            lower_open: from_open,
            upper_open: to_open,
        }),
        Ordering::Equal if !from_open && !to_open => out.push(Interval {
            lower: from.clone(),
            upper: to.clone(),
            lower_open: false,
            upper_open: false,
        }),
        _ => {}
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Parses a union such as `[0,0.2), (0.5,1]`. Intervals may be separated by
/// commas, `U` or `∪`; `{}` or `∅` denotes the empty set.
pub fn parse_interval_set(text: &str) -> Result<IntervalSet, IntervalError> {
    let trimmed = text.trim();
    if trimmed == "{}" || trimmed == "∅" {
        return Ok(IntervalSet::empty());
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut raw = Vec::new();
    let mut i = 0;
    let mut expect_interval = true;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !expect_interval {
            if matches!(c, ',' | 'U' | '∪') {
                expect_interval = true;
                i += 1;
                continue;
            }
            return Err(IntervalError::Syntax(format!("unexpected '{c}' between intervals")));
        }
        let lower_open = match c {
            '[' => false,
            '(' => true,
            other => return Err(IntervalError::Syntax(format!("expected '[' or '(', found '{other}'"))),
        };
        let close = chars[i..]
            .iter()
            .position(|&ch| ch == ']' || ch == ')')
            .map(|p| p + i)
            .ok_or_else(|| IntervalError::Syntax("unterminated interval".into()))?;
        let body: String = chars[i + 1..close].iter().collect();
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| IntervalError::Syntax(format!("expected 'lower,upper' in '{body}'")))?;
        let lower = parse_rational(lo)
            .ok_or_else(|| IntervalError::Syntax(format!("bad endpoint '{}'", lo.trim())))?;
        let upper = parse_rational(hi)
            .ok_or_else(|| IntervalError::Syntax(format!("bad endpoint '{}'", hi.trim())))?;
        raw.push(Interval::new(lower, upper, lower_open, chars[close] == ')')?);
        i = close + 1;
        expect_interval = false;
    }
    if expect_interval && !raw.is_empty() {
        return Err(IntervalError::Syntax("trailing separator".into()));
    }
    if raw.is_empty() {
        return Err(IntervalError::Syntax("no intervals".into()));
    }
    Ok(IntervalSet::normalize(raw))
}

impl FromStr for IntervalSet {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_interval_set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s(text: &str) -> IntervalSet {
        parse_interval_set(text).unwrap()
    }

    #[test]
    fn construction_rejects_degenerate_open() {
        assert_eq!(Interval::open(rat(1, 2), rat(1, 2)), Err(IntervalError::DegenerateOpen));
        assert_eq!(
            Interval::new(rat(1, 2), rat(1, 2), true, false),
            Err(IntervalError::DegenerateOpen)
        );
        assert_eq!(Interval::closed(rat(1, 2), rat(1, 4)), Err(IntervalError::OutOfOrder));
        assert_eq!(Interval::closed(rat(1, 2), rat(3, 2)), Err(IntervalError::OutOfOrder));
        assert!(Interval::point(rat(1, 2)).is_ok());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(s("[0,0.5], [0.5,1]"), s("[0,1]"));
        assert_eq!(
            s("(0.3,0.4), [0.1,0.2]").intervals().to_vec(),
            vec![
                Interval::closed(rat(1, 10), rat(1, 5)).unwrap(),
                Interval::open(rat(3, 10), rat(2, 5)).unwrap()
            ]
        );
        assert_eq!(s("[0.2,0.6], [0.4,0.8]"), s("[0.2,0.8]"));
        assert_eq!(s("[0,0.5], (0.5,1]"), s("[0,1]"));
        assert_eq!(s("[0,0.5), (0.5,1]").len(), 2);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(s("[0.2,0.3], (0.5,1]").complement(), s("[0,0.2), (0.3,0.5]"));
        assert_eq!(s("[0,1]").complement(), IntervalSet::empty());
        assert_eq!(IntervalSet::empty().complement(), s("[0,1]"));
        assert_eq!(s("[1,1]").complement(), s("[0,1)"));
        assert_eq!(s("[0,0], [1,1]").complement(), s("(0,1)"));
        assert_eq!(s("(0,1)").complement(), s("[0,0], [1,1]"));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(s("[0,0.5]").intersect(&s("(0.25,1]")), s("(0.25,0.5]"));
        let x = s("[0.1,0.2], (0.4,0.9)");
        assert_eq!(x.intersect(&IntervalSet::unit()), x);
        assert!(s("[0,0.2)").intersect(&s("[0.2,1]")).is_empty());
        assert_eq!(s("[0,0.5]").intersect(&s("[0.5,1]")), s("[0.5,0.5]"));
    }

    #[test]
    fn contains_examples() {
        assert!(!s("(0.5,1]").contains(&rat(1, 2)));
        assert!(s("[0.5,1]").contains(&rat(1, 2)));
        assert!(s("[0,0], (0.5,0.7)").contains(&rat(0, 1)));
        assert!(!s("[0,0], (0.5,0.7)").contains(&rat(7, 10)));
    }

    #[test]
    fn parse_accepts_union_symbols_and_empty() {
        assert_eq!(s("[0,0] ∪ [1,1]"), s("[0,0], [1,1]"));
        assert_eq!(s("[0,0] U [1,1]"), s("[0,0], [1,1]"));
        assert_eq!(s("{}"), IntervalSet::empty());
        assert_eq!(s("[1/3, 1/2)"), IntervalSet::single(Interval::new(rat(1, 3), rat(1, 2), false, true).unwrap()));
        assert!(parse_interval_set("[0,1").is_err());
        assert!(parse_interval_set("[0,1],").is_err());
        assert!(parse_interval_set("(0.5,0.5)").is_err());
        assert!(parse_interval_set("").is_err());
    }

    #[test]
    fn display_round_trips() {
        let x = s("[0,1/3), (1/2,2/3], [1,1]");
        assert_eq!(s(&x.to_string()), x);
        assert_eq!(IntervalSet::empty().to_string(), "{}");
    }
}
