//! Verdicts and the report printed by the command-line tool.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::rational::format_rational;
use crate::semantics::{Logic, Model};
use crate::solver::SolveStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Sat,
    Unsat,
    Entailed,
    NotEntailed,
    Proved,
    Refuted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Entailed => "ENTAILED",
            Verdict::NotEntailed => "NOT_ENTAILED",
            Verdict::Proved => "PROVED",
            Verdict::Refuted => "REFUTED",
        }
    }

    pub fn is_affirmative(self) -> bool {
        matches!(self, Verdict::Sat | Verdict::Entailed | Verdict::Proved)
    }

    /// Whether this verdict comes with a model.
    pub fn has_witness(self) -> bool {
        matches!(self, Verdict::Sat | Verdict::NotEntailed | Verdict::Refuted)
    }

    pub fn exit_code(self) -> i32 {
        if self.is_affirmative() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Atom values as exact `p/q` strings.
pub type Witness = BTreeMap<String, String>;

pub fn witness_of(model: &Model) -> Witness {
    model.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Stats {
    pub booleans: usize,
    pub nodes: u64,
    pub pivots: u64,
    pub elapsed_ms: f64,
}

impl Stats {
    pub fn from_solve(s: &SolveStats) -> Self {
        Self {
            booleans: s.booleans,
            nodes: s.nodes,
            pivots: s.pivots,
            elapsed_ms: millis(s.elapsed),
        }
    }

    pub fn absorb(&mut self, other: &Stats) {
        self.booleans = self.booleans.max(other.booleans);
        self.nodes += other.nodes;
        self.pivots += other.pivots;
        self.elapsed_ms += other.elapsed_ms;
    }
}

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentVerdict {
    pub sentence: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub logic: Logic,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentVerdict>,
    pub stats: Stats,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {}\nlogic: {}\n", self.verdict, self.logic);
        if self.components.len() > 1 {
            for (i, c) in self.components.iter().enumerate() {
                out.push_str(&format!("component {}: {} : {}\n", i + 1, c.sentence, c.verdict));
            }
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {}\n", format_witness(w)));
        }
        let s = &self.stats;
        out.push_str(&format!(
            "stats: booleans={} nodes={} pivots={} elapsed={:.3}ms\n",
            s.booleans, s.nodes, s.pivots, s.elapsed_ms
        ));
        if let Some(proof) = &self.proof {
            out.push_str("proof:\n");
            for line in proof {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }
}

pub fn format_witness(w: &Witness) -> String {
    let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn json_shape() {
        let report = Report {
            verdict: Verdict::NotEntailed,
            logic: Logic::Goedel,
            witness: Some(witness_of(&Model::new().with("x", rat(1, 3)))),
            proof: None,
            components: Vec::new(),
            stats: Stats::default(),
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["verdict"], "NOT_ENTAILED");
        assert_eq!(v["logic"], "goedel");
        assert_eq!(v["witness"]["x"], "1/3");
        assert!(v.get("proof").is_none());
        assert!(report.to_text().contains("witness: {x=1/3}"));
        assert_eq!(Verdict::Refuted.exit_code(), 1);
        assert_eq!(Verdict::Proved.exit_code(), 0);
    }
}
