//! Bounded-variable simplex over exact rationals.
//!
//! The tableau follows the general-simplex layout used in SMT solvers: every
//! row introduces a slack variable, all bounds live on variables, and a bound
//! change is a local edit followed by a feasibility repair. This makes the
//! tableau cheap to reuse across branch-and-bound nodes, with a trail for
//! undoing bound changes on backtrack.

use std::collections::{BTreeMap, BTreeSet};

use crate::rational::Rational;

use super::num::Q;
use super::SolverError;

#[derive(Clone, Debug)]
struct TrailEntry {
    var: usize,
    upper: bool,
    old: Option<Q>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Simplex {
    lower: Vec<Option<Q>>,
    upper: Vec<Option<Q>>,
    value: Vec<Q>,
    basic_row: Vec<Option<usize>>,
    row_basic: Vec<usize>,
    /// `row_basic[r] = Σ rows[r][j]·x_j` over nonbasic `j`.
    rows: Vec<BTreeMap<usize, Q>>,
    /// Rows mentioning each nonbasic variable.
    cols: Vec<BTreeSet<usize>>,
    trail: Vec<TrailEntry>,
    pub pivots: u64,
    iteration_cap: u64,
}

impl Simplex {
    pub fn new() -> Self {
        Self {
            iteration_cap: 5_000_000,
            ..Self::default()
        }
    }

    pub fn add_var(&mut self, lower: Option<Rational>, upper: Option<Rational>) -> usize {
        let lower = lower.as_ref().map(Q::from);
        let upper = upper.as_ref().map(Q::from);
        let start = match (&lower, &upper) {
            (Some(l), _) if l.is_positive() => l.clone(),
            (_, Some(u)) if u < &Q::zero() => u.clone(),
            _ => Q::zero(),
        };
        self.lower.push(lower);
        self.upper.push(upper);
        self.value.push(start);
        self.basic_row.push(None);
        self.cols.push(BTreeSet::new());
        self.value.len() - 1
    }

    /// Adds a slack variable `s = Σ coeff·x` with the given bounds.
    pub fn add_row(
        &mut self,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> usize {
        let mut row: BTreeMap<usize, Q> = BTreeMap::new();
        for (var, coeff) in terms {
            let coeff = Q::from(&coeff);
            match self.basic_row[var] {
                None => accumulate(&mut row, var, coeff),
                Some(r) => {
                    for (k, c) in &self.rows[r] {
                        accumulate(&mut row, *k, &coeff * c);
                    }
                }
            }
        }
        let slack = self.add_var(lower, upper);
        let mut value = Q::zero();
        for (k, c) in &row {
            value = &value + &(c * &self.value[*k]);
        }
        self.value[slack] = value;
        let r = self.rows.len();
        for k in row.keys() {
            self.cols[*k].insert(r);
        }
        self.rows.push(row);
        self.row_basic.push(slack);
        self.basic_row[slack] = Some(r);
        slack
    }

    pub fn value(&self, var: usize) -> Rational {
        self.value[var].to_rational()
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail entry");
            if e.upper {
                self.upper[e.var] = e.old;
            } else {
                self.lower[e.var] = e.old;
            }
        }
    }

    /// Tightens `var ≥ bound`. Returns false if the bounds of `var` cross.
    pub fn tighten_lower(&mut self, var: usize, bound: Rational) -> bool {
        let bound = Q::from(&bound);
        if matches!(&self.upper[var], Some(u) if &bound > u) {
            return false;
        }
        if matches!(&self.lower[var], Some(l) if l >= &bound) {
            return true;
        }
        let old = self.lower[var].replace(bound.clone());
        self.trail.push(TrailEntry { var, upper: false, old });
        if self.basic_row[var].is_none() && self.value[var] < bound {
            self.update(var, bound);
        }
        true
    }

    pub fn tighten_upper(&mut self, var: usize, bound: Rational) -> bool {
        let bound = Q::from(&bound);
        if matches!(&self.lower[var], Some(l) if &bound < l) {
            return false;
        }
        if matches!(&self.upper[var], Some(u) if u <= &bound) {
            return true;
        }
        let old = self.upper[var].replace(bound.clone());
        self.trail.push(TrailEntry { var, upper: true, old });
        if self.basic_row[var].is_none() && self.value[var] > bound {
            self.update(var, bound);
        }
        true
    }

    fn below_lower(&self, var: usize) -> bool {
        matches!(&self.lower[var], Some(l) if &self.value[var] < l)
    }

    fn above_upper(&self, var: usize) -> bool {
        matches!(&self.upper[var], Some(u) if &self.value[var] > u)
    }

    fn can_increase(&self, var: usize) -> bool {
        !matches!(&self.upper[var], Some(u) if &self.value[var] >= u)
    }

    fn can_decrease(&self, var: usize) -> bool {
        !matches!(&self.lower[var], Some(l) if &self.value[var] <= l)
    }

    /// Moves a nonbasic variable and propagates to the basic ones.
    fn update(&mut self, var: usize, new_value: Q) {
        let theta = &new_value - &self.value[var];
        if theta.is_zero() {
            return;
        }
        for &r in &self.cols[var] {
            let b = self.row_basic[r];
            self.value[b] = &self.value[b] + &(&self.rows[r][&var] * &theta);
        }
        self.value[var] = new_value;
    }

    /// Moves the basic variable of row `r` to `target` by moving nonbasic
    /// `entering`, then swaps them.
    fn pivot_and_update(&mut self, r: usize, entering: usize, target: Q) {
        let leaving = self.row_basic[r];
        let theta = &(&target - &self.value[leaving]) / &self.rows[r][&entering];
        self.value[leaving] = target;
        if !theta.is_zero() {
            for &i in &self.cols[entering] {
                if i != r {
                    let b = self.row_basic[i];
                    self.value[b] = &self.value[b] + &(&self.rows[i][&entering] * &theta);
                }
            }
            self.value[entering] = &self.value[entering] + &theta;
        }
        self.pivot(r, entering);
    }

    fn pivot(&mut self, r: usize, entering: usize) {
        self.pivots += 1;
        let leaving = self.row_basic[r];
        let row = std::mem::take(&mut self.rows[r]);
        let inv = row[&entering].recip();
        // entering = leaving/a - Σ (a_k/a)·x_k
        let mut new_row: BTreeMap<usize, Q> = BTreeMap::new();
        for (k, c) in row {
            if k != entering {
                new_row.insert(k, -&(&c * &inv));
            }
        }
        new_row.insert(leaving, inv);
        self.cols[entering].remove(&r);
        self.cols[leaving].insert(r);

        let others = std::mem::take(&mut self.cols[entering]);
        for i in others {
            let c = self.rows[i].remove(&entering).expect("column index is consistent");
            for (k, coeff) in &new_row {
                let product = &c * coeff;
                match self.rows[i].get_mut(k) {
                    Some(entry) => {
                        let sum = &*entry + &product;
                        if sum.is_zero() {
                            self.rows[i].remove(k);
                            self.cols[*k].remove(&i);
                        } else {
                            *entry = sum;
                        }
                    }
                    None => {
                        self.rows[i].insert(*k, product);
                        self.cols[*k].insert(i);
                    }
                }
            }
        }
        self.rows[r] = new_row;
        self.row_basic[r] = entering;
        self.basic_row[entering] = Some(r);
        self.basic_row[leaving] = None;
    }

    /// Restores all bounds, or reports that none can be satisfied at once.
    /// Bland's rule (smallest index first) on both choices guarantees termination.
    pub fn check(&mut self) -> Result<bool, SolverError> {
        let mut iterations = 0u64;
        loop {
            iterations += 1;
            if iterations > self.iteration_cap {
                return Err(SolverError::Internal("simplex iteration cap reached".into()));
            }
            let mut pick: Option<(usize, usize)> = None;
            for (r, &b) in self.row_basic.iter().enumerate() {
                if pick.is_none_or(|(pb, _)| b < pb) && (self.below_lower(b) || self.above_upper(b)) {
                    pick = Some((b, r));
                }
            }
            let Some((b, r)) = pick else {
                return Ok(true);
            };
            let increase = self.below_lower(b);
            let entering = self.rows[r].iter().find_map(|(&j, a)| {
                let up = a.is_positive() == increase;
                let ok = if up { self.can_increase(j) } else { self.can_decrease(j) };
                ok.then_some(j)
            });
            let Some(j) = entering else {
                return Ok(false);
            };
            let target = if increase {
                self.lower[b].clone()
            } else {
                self.upper[b].clone()
            }
            .expect("violated bound exists");
            self.pivot_and_update(r, j, target);
        }
    }

    /// Maximizes `objective` from a feasible state.
    pub fn maximize(&mut self, objective: usize) -> Result<(), SolverError> {
        let mut iterations = 0u64;
        loop {
            iterations += 1;
            if iterations > self.iteration_cap {
                return Err(SolverError::Internal("simplex iteration cap reached".into()));
            }
            let entering = match self.basic_row[objective] {
                None => self.can_increase(objective).then_some((objective, true)),
                Some(r) => self.rows[r].iter().find_map(|(&j, c)| {
                    let up = c.is_positive();
                    let ok = if up { self.can_increase(j) } else { self.can_decrease(j) };
                    ok.then_some((j, up))
                }),
            };
            let Some((j, up)) = entering else {
                return Ok(());
            };
            let own = if up {
                self.upper[j].as_ref().map(|u| u - &self.value[j])
            } else {
                self.lower[j].as_ref().map(|l| &self.value[j] - l)
            };
            // smallest step at which some basic variable hits a bound
            let mut best: Option<(Q, usize, usize, bool)> = None;
            for &i in &self.cols[j] {
                let b = self.row_basic[i];
                let a = &self.rows[i][&j];
                let rising = a.is_positive() == up;
                let limit = if rising {
                    self.upper[b].as_ref().map(|u| &(u - &self.value[b]) / a)
                } else {
                    self.lower[b].as_ref().map(|l| &(&self.value[b] - l) / a)
                };
                if let Some(t) = limit {
                    let t = if t.is_positive() || t.is_zero() { t } else { -&t };
                    let better = match &best {
                        None => true,
                        Some((bt, bb, _, _)) => t < *bt || (t == *bt && b < *bb),
                    };
                    if better {
                        best = Some((t, b, i, rising));
                    }
                }
            }
            match (own, best) {
                (None, None) => {
                    return Err(SolverError::Internal("objective is unbounded".into()));
                }
                (Some(t), best) if best.as_ref().is_none_or(|(bt, _, _, _)| t <= *bt) => {
                    let v = if up { &self.value[j] + &t } else { &self.value[j] - &t };
                    self.update(j, v);
                }
                (_, Some((_, b, i, rising))) => {
                    let target = if rising { &self.upper[b] } else { &self.lower[b] };
                    let target = target.clone().expect("limiting bound");
                    self.pivot_and_update(i, j, target);
                }
                (Some(_), None) => unreachable!(),
            }
        }
    }
}

fn accumulate(row: &mut BTreeMap<usize, Q>, var: usize, coeff: Q) {
    let sum = match row.get(&var) {
        Some(c) => c + &coeff,
        None => coeff,
    };
    if sum.is_zero() {
        row.remove(&var);
    } else {
        row.insert(var, sum);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, zero};

    #[test]
    fn one_dimensional_gap() {
        // maximize d s.t. x - d >= 3/10, x <= 7/10
        let mut s = Simplex::new();
        let x = s.add_var(Some(zero()), Some(int(1)));
        let d = s.add_var(Some(zero()), Some(int(1)));
        s.add_row([(x, int(1)), (d, int(-1))], Some(rat(3, 10)), None);
        s.add_row([(x, int(1))], None, Some(rat(7, 10)));
        assert!(s.check().unwrap());
        s.maximize(d).unwrap();
        assert_eq!(s.value(d), rat(2, 5));
    }

    #[test]
    fn contradictory_rows() {
        let mut s = Simplex::new();
        let x = s.add_var(Some(zero()), Some(int(1)));
        s.add_row([(x, int(1))], None, Some(rat(1, 5)));
        s.add_row([(x, int(1))], Some(rat(3, 10)), None);
        assert!(!s.check().unwrap());
    }

    #[test]
    fn bounds_undo() {
        let mut s = Simplex::new();
        let x = s.add_var(Some(zero()), Some(int(1)));
        let y = s.add_var(Some(zero()), Some(int(1)));
        s.add_row([(x, int(1)), (y, int(1))], Some(int(1)), None);
        assert!(s.check().unwrap());
        let m = s.mark();
        assert!(s.tighten_upper(x, zero()));
        assert!(s.tighten_upper(y, rat(1, 2)));
        assert!(!s.check().unwrap());
        s.undo(m);
        assert!(s.check().unwrap());
        assert_eq!(s.value(x) + s.value(y), int(1));
    }
}
