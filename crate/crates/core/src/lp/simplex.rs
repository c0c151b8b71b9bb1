use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{LpProblem, LpSolution, LpStatus, Relation};
use crate::{Error, Rational, Result};

/// A structural tableau column stands for `sign * column` in one original
/// variable.
struct ColumnMap {
    orig: usize,
    negated: bool,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry holds minus the current objective.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// Index of the right-hand-side column.
    width: usize,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let rhs = self.rhs();
        let nz: Vec<usize> = (0..=rhs).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &nz {
            self.rows[r][j] /= &p;
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Sets reduced costs for the cost vector `cost` over all columns.
    fn price(&mut self, cost: &[Rational]) {
        let rhs = self.rhs();
        let mut obj: Vec<Rational> = cost.iter().cloned().chain([Rational::zero()]).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs {
                if !row[j].is_zero() {
                    obj[j] -= cb * &row[j];
                }
            }
        }
        self.obj = obj;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the row with the lowest-index basic variable leaves.
    fn run(&mut self, allowed: usize) -> Outcome {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(r, c);
        }
    }
}

fn check_dims(p: &LpProblem) -> Result<()> {
    let n = p.objective.len();
    let m = p.rows.len();
    if p.relations.len() != m || p.rhs.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{m} constraint rows, {} relations, {} right-hand sides",
            p.relations.len(),
            p.rhs.len()
        )));
    }
    if p.bounds.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} objective coefficients but {} bounds",
            p.bounds.len()
        )));
    }
    if let Some((i, row)) = p.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "row {i} has {} coefficients, expected {n}",
            row.len()
        )));
    }
    Ok(())
}

fn infeasible(pivots: usize) -> LpSolution {
    LpSolution {
        status: LpStatus::Infeasible,
        x: Vec::new(),
        objective: Rational::zero(),
        pivots,
    }
}

/// Exact two-phase simplex with Bland's rule.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    check_dims(p)?;
    let n = p.objective.len();

    // Shift/split variables so every structural column is >= 0.
    let mut offset = vec![Rational::zero(); n];
    let mut columns: Vec<ColumnMap> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = p.rows.clone();
    let mut relations = p.relations.clone();
    let mut rhs = p.rhs.clone();
    let mut upper_rows: Vec<(usize, Rational)> = Vec::new();
    for (i, bound) in p.bounds.iter().enumerate() {
        match (&bound.lower, &bound.upper) {
            (Some(l), u) => {
                offset[i] = l.clone();
                columns.push(ColumnMap {
                    orig: i,
                    negated: false,
                });
                if let Some(u) = u {
                    if u < l {
                        return Ok(infeasible(0));
                    }
                    upper_rows.push((columns.len() - 1, u - l));
                }
            }
            (None, Some(u)) => {
                offset[i] = u.clone();
                columns.push(ColumnMap {
                    orig: i,
                    negated: true,
                });
            }
            (None, None) => {
                columns.push(ColumnMap {
                    orig: i,
                    negated: false,
                });
                columns.push(ColumnMap {
                    orig: i,
                    negated: true,
                });
            }
        }
    }
    let ns = columns.len();
    let mut structural: Vec<Vec<Rational>> = rows
        .iter_mut()
        .zip(rhs.iter_mut())
        .map(|(row, b)| {
            for (a, off) in row.iter().zip(&offset) {
                if !off.is_zero() {
                    *b -= a * off;
                }
            }
            columns
                .iter()
                .map(|c| {
                    if c.negated {
                        -&row[c.orig]
                    } else {
                        row[c.orig].clone()
                    }
                })
                .collect()
        })
        .collect();
    for (col, cap) in upper_rows {
        let mut row = vec![Rational::zero(); ns];
        row[col] = Rational::from_integer(1.into());
        structural.push(row);
        relations.push(Relation::Le);
        rhs.push(cap);
    }
    let m = structural.len();
    for i in 0..m {
        if rhs[i].is_negative() {
            for a in structural[i].iter_mut() {
                *a = -&*a;
            }
            rhs[i] = -&rhs[i];
            relations[i] = match relations[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // Column layout: structural | slack/surplus | artificial | rhs
    let n_slack = relations.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = relations.iter().filter(|r| **r != Relation::Le).count();
    let first_art = ns + n_slack;
    let width = first_art + n_art;
    let one = Rational::from_integer(1.into());
    let mut tab_rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut s, mut a) = (ns, first_art);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        row[..ns].clone_from_slice(&structural[i]);
        row[width] = rhs[i].clone();
        match relations[i] {
            Relation::Le => {
                row[s] = one.clone();
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -&one;
                s += 1;
                row[a] = one.clone();
                basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                row[a] = one.clone();
                basis.push(a);
                a += 1;
            }
        }
        tab_rows.push(row);
    }
    let mut t = Tableau {
        rows: tab_rows,
        obj: Vec::new(),
        basis,
        width,
        pivots: 0,
    };

    if n_art > 0 {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(first_art) {
            *c = -&one;
        }
        t.price(&cost);
        t.run(width);
        // obj[rhs] = -(phase-1 objective) = sum of artificials
        if t.obj[width].is_positive() {
            return Ok(infeasible(t.pivots));
        }
        // drive zero-valued artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= first_art {
                match (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for (c, map) in cost.iter_mut().zip(&columns) {
        let v = &p.objective[map.orig];
        *c = if map.negated { -v } else { v.clone() };
    }
    t.price(&cost);
    if let Outcome::Unbounded = t.run(first_art) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective: Rational::zero(),
            pivots: t.pivots,
        });
    }

    let mut x = offset;
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < ns {
            let map = &columns[b];
            if map.negated {
                x[map.orig] -= &row[width];
            } else {
                x[map.orig] += &row[width];
            }
        }
    }
    let objective = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        pivots: t.pivots,
    })
}
