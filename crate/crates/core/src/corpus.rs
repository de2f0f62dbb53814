//! Benchmark families: k-SAT encodings, a tautology corpus of basic fuzzy
//! logic and its Lukasiewicz/Goedel extensions, the excluded-middle style
//! example and the many-interval stress sentences.

use std::fmt;

use crate::formula::{parse_formula, BinaryOp, Formula};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{one, rat, zero};
use crate::semantics::Logic;
use crate::theory::{SimpleSentence, Theory, TheoryError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("clause index {index} out of range for {count} clauses")]
    DropOutOfRange { index: usize, count: usize },
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// The 2^k clauses over `x1..xk` that together say no assignment exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSatInstance {
    pub k: usize,
    /// Each literal is `(atom index, negated)`.
    pub clauses: Vec<Vec<(usize, bool)>>,
    pub dropped: Option<usize>,
}

impl KSatInstance {
    pub fn new(k: usize, dropped: Option<usize>) -> Result<Self, CorpusError> {
        if k < 2 {
            return Err(CorpusError::KTooSmall(k));
        }
        let mut clauses = Vec::with_capacity(1 << k);
        // by number of negations, then lexicographically by negated positions
        for negations in 0..=k {
            for_each_subset(k, negations, &mut |neg: &[usize]| {
                clauses.push((0..k).map(|i| (i, neg.contains(&i))).collect());
            });
        }
        if let Some(index) = dropped {
            if index >= clauses.len() {
                return Err(CorpusError::DropOutOfRange {
                    index,
                    count: clauses.len(),
                });
            }
            clauses.remove(index);
        }
        Ok(Self { k, clauses, dropped })
    }

    pub fn atom(i: usize) -> String {
        format!("x{}", i + 1)
    }

    pub fn clause_formula(clause: &[(usize, bool)]) -> Formula {
        let literal = |&(i, neg): &(usize, bool)| {
            let a = Formula::atom(Self::atom(i));
            if neg {
                a.negate()
            } else {
                a
            }
        };
        let mut it = clause.iter();
        let first = literal(it.next().expect("clauses are nonempty"));
        it.fold(first, |acc, lit| Formula::binary(BinaryOp::StrongOr, acc, literal(lit)))
    }

    /// Each clause must take value 1. The constrained variant also keeps every
    /// atom within `1/k` of 0 or 1.
    pub fn to_theory(&self, logic: Logic, constrained: bool) -> Result<Theory, CorpusError> {
        let one_point = IntervalSet::point(one()).expect("valid point");
        let mut sentences: Vec<SimpleSentence> = self
            .clauses
            .iter()
            .map(|c| SimpleSentence::new(Self::clause_formula(c), one_point.clone()))
            .collect();
        if constrained {
            let k = self.k as i64;
            let range = IntervalSet::normalize([
                Interval::new(zero(), rat(1, k), false, true).expect("valid interval"),
                Interval::new(rat(k - 1, k), one(), true, false).expect("valid interval"),
            ]);
            for i in 0..self.k {
                sentences.push(SimpleSentence::new(Formula::atom(Self::atom(i)), range.clone()));
            }
        }
        Ok(Theory::with_sentences(logic, sentences)?)
    }
}

fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, size: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        for i in start..n {
            acc.push(i);
            go(i + 1, n, size, acc, f);
            acc.pop();
        }
    }
    go(0, n, size, &mut Vec::new(), f);
}

/// k-SAT theory; see [`KSatInstance`].
pub fn gen_ksat(logic: Logic, k: usize, dropped: Option<usize>, constrained: bool) -> Result<Theory, CorpusError> {
    KSatInstance::new(k, dropped)?.to_theory(logic, constrained)
}

/// Which logics a tautology is valid in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    Both,
    Only(Logic),
}

impl Validity {
    pub fn holds_in(self, logic: Logic) -> bool {
        match self {
            Validity::Both => true,
            Validity::Only(l) => l == logic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautologyCase {
    pub batch: &'static str,
    /// 1-based position within the batch.
    pub index: usize,
    pub formula: Formula,
    pub validity: Validity,
}

impl TautologyCase {
    pub fn name(&self) -> String {
        format!("{}_{}", self.batch, self.index)
    }

    /// The fixture file text for this case.
    pub fn to_file(&self) -> String {
        let (logic, note) = match self.validity {
            Validity::Both => (Logic::Lukasiewicz, "both logics".to_string()),
            Validity::Only(l) => (l, format!("{l} only")),
        };
        format!(
            "# {}: valid in {note}\nlogic {logic}\nquery: {} in [1,1]\n",
            self.name(),
            self.formula
        )
    }
}

impl fmt::Display for TautologyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name(), self.formula)
    }
}

const BASIC: &[(&str, &[&str])] = &[
    (
        "axioms",
        &[
            "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))",
            "(phi & psi) -> phi",
            "(phi & psi) -> (psi & phi)",
            "(phi & (phi -> psi)) -> (psi & (psi -> phi))",
            "(phi -> (psi -> chi)) -> ((phi & psi) -> chi)",
            "((phi & psi) -> chi) -> (phi -> (psi -> chi))",
            "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)",
            "0 -> phi",
        ],
    ),
    (
        "implication",
        &[
            "phi -> (psi -> phi)",
            "(phi -> (psi -> chi)) -> (psi -> (phi -> chi))",
            "phi -> phi",
        ],
    ),
    (
        "conjunction",
        &[
            "(phi & (phi -> psi)) -> psi",
            "phi -> (psi -> (phi & psi))",
            "(phi -> psi) -> ((phi & chi) -> (psi & chi))",
            "((phi -> psi) & (psi -> chi)) -> (phi -> chi)",
            "(phi & psi) -> psi",
            "(phi -> (psi -> chi)) -> ((psi & phi) -> chi)",
        ],
    ),
    (
        "weak_conjunction",
        &[
            "(phi && psi) -> phi",
            "(phi && psi) -> psi",
            "(phi && psi) -> (psi && phi)",
            "(phi & psi) -> (phi && psi)",
            "phi -> (phi && phi)",
            "(phi -> psi) -> ((phi && chi) -> (psi && chi))",
            "((chi -> phi) && (chi -> psi)) -> (chi -> (phi && psi))",
        ],
    ),
    (
        "weak_disjunction",
        &[
            "phi -> (phi || psi)",
            "psi -> (phi || psi)",
            "(phi || psi) -> (psi || phi)",
            "((phi -> chi) && (psi -> chi)) -> ((phi || psi) -> chi)",
            "(phi || phi) -> phi",
            "(phi -> psi) || (psi -> phi)",
            "(phi -> psi) -> ((phi || chi) -> (psi || chi))",
        ],
    ),
    (
        "negation",
        &[
            "phi -> (!phi -> psi)",
            "!phi -> (phi -> psi)",
            "phi -> !!phi",
            "!(phi & !phi)",
            "(phi -> psi) -> (!psi -> !phi)",
            "!!!phi -> !phi",
            "!phi -> !!!phi",
            "(phi -> !psi) -> (psi -> !phi)",
        ],
    ),
    (
        "associativity",
        &[
            "((phi && psi) && chi) -> (phi && (psi && chi))",
            "(phi && (psi && chi)) -> ((phi && psi) && chi)",
            "((phi & psi) & chi) -> (phi & (psi & chi))",
            "(phi & (psi & chi)) -> ((phi & psi) & chi)",
            "((phi || psi) || chi) -> (phi || (psi || chi))",
            "(phi || (psi || chi)) -> ((phi || psi) || chi)",
        ],
    ),
    (
        "equivalence",
        &[
            "phi <-> phi",
            "(phi <-> psi) -> (psi <-> phi)",
            "((phi <-> psi) & (psi <-> chi)) -> (phi <-> chi)",
            "(phi <-> psi) -> (phi -> psi)",
            "(phi <-> psi) -> (psi -> phi)",
            "(phi <-> psi) -> ((phi & chi) <-> (psi & chi))",
            "(phi <-> psi) -> ((phi -> chi) <-> (psi -> chi))",
            "(phi <-> psi) -> ((chi -> phi) <-> (chi -> psi))",
            "(phi <-> psi) -> ((phi && chi) <-> (psi && chi))",
        ],
    ),
    (
        "distributivity",
        &[
            "(phi & (psi || chi)) <-> ((phi & psi) || (phi & chi))",
            "(phi & (psi && chi)) <-> ((phi & psi) && (phi & chi))",
            "(phi && (psi || chi)) <-> ((phi && psi) || (phi && chi))",
            "(phi || (psi && chi)) <-> ((phi || psi) && (phi || chi))",
            "((phi || psi) -> chi) <-> ((phi -> chi) && (psi -> chi))",
            "(phi -> (psi && chi)) <-> ((phi -> psi) && (phi -> chi))",
            "((phi && psi) -> chi) <-> ((phi -> chi) || (psi -> chi))",
            "(phi -> (psi || chi)) <-> ((phi -> psi) || (phi -> chi))",
        ],
    ),
    (
        "delta",
        &[
            "^phi <-> ^(phi & phi)",
            "^phi -> phi",
            "^(phi -> psi) -> (^phi -> ^psi)",
        ],
    ),
];

const LUKASIEWICZ: &[&str] = &[
    "!!phi <-> phi",
    "((phi -> psi) -> psi) -> ((psi -> phi) -> phi)",
    "(phi || psi) <-> ((phi -> psi) -> psi)",
    "(!psi -> !phi) -> (phi -> psi)",
    "!!phi -> phi",
    "phi | !phi",
    "(phi -> psi) <-> (!phi | psi)",
    "(phi & psi) <-> !(!phi | !psi)",
    "((phi -> psi) -> psi) <-> ((psi -> phi) -> phi)",
    "!(phi -> psi) -> phi",
    "(phi & psi) <-> !(phi -> !psi)",
    "!phi <-> ~phi",
];

const GOEDEL: &[&str] = &[
    "phi -> (phi & phi)",
    "(phi & psi) <-> (phi && psi)",
    "(phi -> (phi -> psi)) -> (phi -> psi)",
    "(phi || psi) <-> (phi | psi)",
    "!phi || !!phi",
];

/// The 82 tautology cases, batch by batch.
pub fn hajek_corpus() -> Vec<TautologyCase> {
    let mut out = Vec::new();
    let mut push = |batch: &'static str, formulas: &[&str], validity: Validity| {
        for (i, text) in formulas.iter().enumerate() {
            out.push(TautologyCase {
                batch,
                index: i + 1,
                formula: parse_formula(text).expect("corpus formulas parse"),
                validity,
            });
        }
    };
    for (batch, formulas) in BASIC {
        push(batch, formulas, Validity::Both);
    }
    push("lukasiewicz", LUKASIEWICZ, Validity::Only(Logic::Lukasiewicz));
    push("godel", GOEDEL, Validity::Only(Logic::Goedel));
    out
}

/// `(phi -> psi) -> ((!phi -> psi) -> psi)`, classically a tautology.
pub fn boolean_example() -> Formula {
    parse_formula("(phi -> psi) -> ((!phi -> psi) -> psi)").expect("valid formula")
}

/// The stress instance with `count` open intervals per sentence: a query on
/// the boolean example and interval restrictions on both atoms.
pub fn stress_sentences(count: usize) -> (SimpleSentence, Vec<SimpleSentence>) {
    assert!(count >= 1, "count must be positive");
    let n = count as i64;
    let mut query = vec![Interval::closed(rat(1, 2), one()).expect("valid interval")];
    let mut atoms = vec![Interval::point(zero()).expect("valid interval")];
    for k in 2..=n + 1 {
        query.push(Interval::open(rat(1, k + 1), rat(1, k)).expect("valid interval"));
        atoms.push(Interval::open(one() - rat(1, k), one() - rat(1, k + 1)).expect("valid interval"));
    }
    let atoms = IntervalSet::normalize(atoms);
    let theory = vec![
        SimpleSentence::new(Formula::atom("phi"), atoms.clone()),
        SimpleSentence::new(Formula::atom("psi"), atoms),
    ];
    (SimpleSentence::new(boolean_example(), IntervalSet::normalize(query)), theory)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ksat_counts_and_order() {
        let t = gen_ksat(Logic::Goedel, 3, None, false).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.sentences()[0].formula, parse_formula("(x1 | x2) | x3").unwrap());
        assert_eq!(t.sentences()[1].formula, parse_formula("(!x1 | x2) | x3").unwrap());
        assert_eq!(gen_ksat(Logic::Goedel, 3, Some(0), false).unwrap().len(), 7);
        assert_eq!(gen_ksat(Logic::Goedel, 4, None, false).unwrap().len(), 16);
        assert_eq!(gen_ksat(Logic::Lukasiewicz, 4, None, true).unwrap().len(), 20);
        assert!(matches!(
            gen_ksat(Logic::Goedel, 3, Some(8), false),
            Err(CorpusError::DropOutOfRange { .. })
        ));
    }

    #[test]
    fn corpus_sizes() {
        let c = hajek_corpus();
        assert_eq!(c.len(), 82);
        let count = |b: &str| c.iter().filter(|t| t.batch == b).count();
        let expected = [8, 3, 6, 7, 7, 8, 6, 9, 8, 3];
        for ((batch, _), n) in BASIC.iter().zip(expected) {
            assert_eq!(count(batch), n, "{batch}");
        }
        assert_eq!(count("lukasiewicz"), 12);
        assert_eq!(count("godel"), 5);
    }

    #[test]
    fn stress_shape() {
        let (q, t) = stress_sentences(3);
        let expected: IntervalSet = "(1/5,1/4), (1/4,1/3), (1/3,1/2), [1/2,1]".parse().unwrap();
        assert_eq!(q.values, expected);
        // (1/3,1/2) and [1/2,1] touch and merge
        assert_eq!(q.values.len(), 3);
        assert_eq!(t[0].values.len(), 4);
    }
}
