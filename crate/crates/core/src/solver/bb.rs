//! Depth-first branch-and-bound on top of the incremental simplex.
//!
//! Connective booleans are relaxed to `[0,1]` and split 0-branch first.
//! Interval groups are relaxed to the convex hull of their remaining
//! intervals and split at the gap holding the relaxed value, so each child
//! excludes the current point. Rows owned by a group are left out of the LP
//! and checked on the final assignment instead.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::{Signed, Zero};

use crate::intervals::Interval;
use crate::milp::{BranchItem, LinearExpr, MilpProblem, Relation, VarId, VarKind};
use crate::rational::{format_rational, one, zero, Rational};

use super::simplex::Simplex;
use super::{SolveResult, SolveStats, SolverConfig, SolverError};

/// Adds `expr (≤|=) 0` to the tableau. Single-variable rows become bounds.
/// Returns false if the row is trivially violated.
pub(super) fn add_linear_row(s: &mut Simplex, expr: &LinearExpr, relation: Relation) -> bool {
    let rhs = -expr.constant.clone();
    match expr.terms.len() {
        0 => match relation {
            Relation::Le => !expr.constant.is_positive(),
            Relation::Eq => expr.constant.is_zero(),
        },
        1 => {
            let (v, a) = expr.terms.iter().next().expect("one term");
            let bound = &rhs / a;
            let upper_ok = |s: &mut Simplex| s.tighten_upper(v.0, bound.clone());
            let lower_ok = |s: &mut Simplex| s.tighten_lower(v.0, bound.clone());
            match relation {
                Relation::Eq => upper_ok(s) && lower_ok(s),
                Relation::Le if a.is_positive() => upper_ok(s),
                Relation::Le => lower_ok(s),
            }
        }
        _ => {
            let terms = expr.terms.iter().map(|(v, c)| (v.0, c.clone()));
            match relation {
                Relation::Le => s.add_row(terms, None, Some(rhs)),
                Relation::Eq => s.add_row(terms, Some(rhs.clone()), Some(rhs)),
            };
            true
        }
    }
}

#[derive(Clone, Debug)]
enum Change {
    Lower(usize, Rational),
    Upper(usize, Rational),
}

struct Node {
    mark: usize,
    changes: Vec<Change>,
    ranges: Vec<(usize, usize)>,
    depth: usize,
    label: String,
}

struct GroupVars {
    var: usize,
    /// `var - delta`, present when some interval has an open lower end.
    minus_delta: Option<usize>,
    /// `var + delta`, present when some interval has an open upper end.
    plus_delta: Option<usize>,
}

impl GroupVars {
    fn hull(&self, intervals: &[Interval], lo: usize, hi: usize) -> Vec<Change> {
        let first = &intervals[lo];
        let last = &intervals[hi];
        let lower_var = if first.lower_open() {
            self.minus_delta.expect("shifted variable exists")
        } else {
            self.var
        };
        let upper_var = if last.upper_open() {
            self.plus_delta.expect("shifted variable exists")
        } else {
            self.var
        };
        vec![
            Change::Lower(lower_var, first.lower().clone()),
            Change::Upper(upper_var, last.upper().clone()),
        ]
    }
}

fn violates_upper(i: &Interval, s: &Rational, d: &Rational) -> bool {
    if i.upper_open() {
        s + d > *i.upper()
    } else {
        s > i.upper()
    }
}

fn meets_lower(i: &Interval, s: &Rational, d: &Rational) -> bool {
    if i.lower_open() {
        s - d >= *i.lower()
    } else {
        s >= i.lower()
    }
}

fn describe_range(intervals: &[Interval], lo: usize, hi: usize) -> String {
    if lo == hi {
        intervals[lo].to_string()
    } else {
        format!(
            "{}{},{}{} ({} intervals)",
            if intervals[lo].lower_open() { "(" } else { "[" },
            format_rational(intervals[lo].lower()),
            format_rational(intervals[hi].upper()),
            if intervals[hi].upper_open() { ")" } else { "]" },
            hi - lo + 1
        )
    }
}

/// Decides whether the problem has an integral solution with `delta > 0`.
///
/// The returned assignment covers every problem variable (group booleans
/// included) and has been checked against every row exactly.
pub fn solve_milp(problem: &MilpProblem, config: &SolverConfig) -> Result<(SolveResult, SolveStats), SolverError> {
    let start = Instant::now();
    let mut stats = SolveStats {
        booleans: problem.num_booleans(),
        ..SolveStats::default()
    };
    let mut s = Simplex::new();
    for v in &problem.variables {
        s.add_var(Some(v.lower.clone()), Some(v.upper.clone()));
    }
    let mut root_ok = true;
    for c in problem.constraints.iter().filter(|c| c.group.is_none()) {
        root_ok &= add_linear_row(&mut s, &c.expr, c.relation);
    }

    let delta = problem.delta.0;
    let mut shifted: HashMap<usize, (Option<usize>, Option<usize>)> = HashMap::new();
    let mut group_vars = Vec::new();
    for g in &problem.groups {
        let entry = shifted.entry(g.var.0).or_insert((None, None));
        if entry.0.is_none() && g.allowed.intervals().iter().any(Interval::lower_open) {
            entry.0 = Some(s.add_row([(g.var.0, one()), (delta, -one())], None, None));
        }
        if entry.1.is_none() && g.allowed.intervals().iter().any(Interval::upper_open) {
            entry.1 = Some(s.add_row([(g.var.0, one()), (delta, one())], None, None));
        }
        group_vars.push(g.var.0);
    }
    let group_vars: Vec<GroupVars> = group_vars
        .into_iter()
        .map(|var| GroupVars {
            var,
            minus_delta: shifted[&var].0,
            plus_delta: shifted[&var].1,
        })
        .collect();

    let finish = |stats: &mut SolveStats, s: &Simplex| {
        stats.pivots = s.pivots;
        stats.elapsed = start.elapsed();
    };
    if !root_ok {
        stats.nodes = 1;
        finish(&mut stats, &s);
        return Ok((SolveResult::Infeasible, stats));
    }

    let mut root_changes = Vec::new();
    let mut ranges = Vec::new();
    for (g, gv) in problem.groups.iter().zip(&group_vars) {
        let n = g.allowed.len();
        root_changes.extend(gv.hull(g.allowed.intervals(), 0, n - 1));
        ranges.push((0, n - 1));
    }
    let mut stack = vec![Node {
        mark: s.mark(),
        changes: root_changes,
        ranges,
        depth: 0,
        label: "root".into(),
    }];

    while let Some(node) = stack.pop() {
        stats.nodes += 1;
        if let Some(limit) = config.node_limit {
            if stats.nodes > limit {
                return Err(SolverError::NodeLimit(limit));
            }
        }
        if let Some(limit) = config.time_limit {
            if start.elapsed() > limit {
                return Err(SolverError::TimeLimit(limit));
            }
        }
        s.undo(node.mark);
        let trace = |status: &str| {
            if config.trace {
                eprintln!(
                    "node={} depth={} branch={} status={}",
                    stats.nodes, node.depth, node.label, status
                );
            }
        };
        let applied = node.changes.iter().all(|c| match c {
            Change::Lower(v, b) => s.tighten_lower(*v, b.clone()),
            Change::Upper(v, b) => s.tighten_upper(*v, b.clone()),
        });
        if !applied || !s.check()? {
            trace("infeasible");
            continue;
        }
        s.maximize(delta)?;
        let gap = s.value(delta);
        if !gap.is_positive() {
            trace("gapless");
            continue;
        }

        let mut children: Vec<Node> = Vec::new();
        let mark = s.mark();
        for item in &problem.branch_order {
            match *item {
                BranchItem::Boolean(VarId(b)) => {
                    if s.value(b).is_integer() {
                        continue;
                    }
                    let name = &problem.variables[b].name;
                    for (bit, change) in [(0, Change::Upper(b, zero())), (1, Change::Lower(b, one()))] {
                        children.push(Node {
                            mark,
                            changes: vec![change],
                            ranges: node.ranges.clone(),
                            depth: node.depth + 1,
                            label: format!("{name}={bit}"),
                        });
                    }
                }
                BranchItem::Group(g) => {
                    let (lo, hi) = node.ranges[g];
                    let intervals = problem.groups[g].allowed.intervals();
                    let gv = &group_vars[g];
                    let sv = &s.value(gv.var);
                    let p = lo + intervals[lo..=hi].partition_point(|i| violates_upper(i, sv, &gap));
                    if p > hi || p == lo && !meets_lower(&intervals[p], sv, &gap) {
                        return Err(SolverError::Internal(format!(
                            "relaxed value {} escapes the hull of group {g}",
                            format_rational(sv)
                        )));
                    }
                    if meets_lower(&intervals[p], sv, &gap) {
                        continue;
                    }
                    let name = &problem.variables[gv.var].name;
                    for (a, b) in [(lo, p - 1), (p, hi)] {
                        let mut ranges = node.ranges.clone();
                        ranges[g] = (a, b);
                        children.push(Node {
                            mark,
                            changes: gv.hull(intervals, a, b),
                            ranges,
                            depth: node.depth + 1,
                            label: format!("{name}∈{}", describe_range(intervals, a, b)),
                        });
                    }
                }
            }
            break;
        }

        if children.is_empty() {
            trace(&format!("feasible delta={}", format_rational(&gap)));
            let mut values: Vec<Rational> = (0..problem.variables.len()).map(|v| s.value(v)).collect();
            for g in &problem.groups {
                let bits = g.boolean_values(&values[g.var.0]);
                for (b, bit) in g.booleans.iter().zip(bits) {
                    values[b.0] = bit;
                }
            }
            for (v, var) in problem.variables.iter().enumerate() {
                if var.kind == VarKind::Boolean && !values[v].is_integer() {
                    return Err(SolverError::Internal(format!("{} left fractional", var.name)));
                }
            }
            problem.check_assignment(&values).map_err(SolverError::Internal)?;
            finish(&mut stats, &s);
            return Ok((
                SolveResult::Feasible {
                    assignment: values,
                    objective: gap,
                },
                stats,
            ));
        }
        trace(&format!("branch delta={}", format_rational(&gap)));
        while let Some(child) = children.pop() {
            stack.push(child);
        }
    }
    finish(&mut stats, &s);
    Ok((SolveResult::Infeasible, stats))
}
