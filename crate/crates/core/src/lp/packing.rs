//! Exact simplex for the packing LP `max 1·y s.t. A y <= denom, y >= 0`
//! with integer `A > 0`. The slack basis is feasible, so there is no first
//! phase. Entries are kept fraction-free: every tableau entry is its true
//! value times the current basis determinant, and each pivot divides exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Optimal primal objective and duals of the packing LP, as
/// `(duals numerators, objective numerator, common denominator)` with a
/// positive denominator.
pub(crate) struct PackingOptimum {
    pub duals: Vec<BigInt>,
    pub objective: BigInt,
    pub denom: BigInt,
}

struct Tableau {
    rows: Vec<Vec<BigInt>>,
    obj: Vec<BigInt>,
    basis: Vec<usize>,
    det: BigInt,
    width: usize,
    /// The true objective row while a modified one drives the dual simplex.
    saved: Option<Vec<BigInt>>,
}

impl Tableau {
    fn new(a: &[Vec<BigInt>], rhs: &BigInt) -> Self {
        let n = a.len();
        let k = a[0].len();
        let width = k + n;
        let rows = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = vec![BigInt::zero(); width + 1];
                r[..k].clone_from_slice(row);
                r[k + i] = BigInt::one();
                r[width] = rhs.clone();
                r
            })
            .collect();
        let mut obj = vec![BigInt::zero(); width + 1];
        obj[..k].fill(BigInt::one());
        Self {
            rows,
            obj,
            basis: (k..width).collect(),
            det: BigInt::one(),
            width,
            saved: None,
        }
    }

    /// Pivot on `(r, c)`; any nonzero pivot keeps every entry integral. The
    /// determinant is kept positive so signs read directly.
    fn pivot(&mut self, r: usize, c: usize) {
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let p = pivot_row[c].clone();
        let rows = self.rows.iter_mut().filter(|row| !row.is_empty());
        for row in rows.chain([&mut self.obj]).chain(self.saved.as_mut()) {
            let f = core::mem::take(&mut row[c]);
            for (j, v) in row.iter_mut().enumerate() {
                if j != c {
                    *v = (&*v * &p - &f * &pivot_row[j]) / &self.det;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.det = p;
        self.basis[r] = c;
        if self.det.is_negative() {
            let rows = self.rows.iter_mut().flatten();
            for v in rows
                .chain(self.obj.iter_mut())
                .chain(self.saved.iter_mut().flatten())
            {
                *v = -&*v;
            }
            self.det = -&self.det;
        }
    }

    /// Row minimizing `rhs / row[c]` over `row[c] > 0`, ties to the lowest
    /// basic index.
    fn ratio_test(&self, c: usize) -> Option<usize> {
        let w = self.width;
        let mut best: Option<usize> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let lhs = &row[w] * &self.rows[b][c];
                    let rhs = &self.rows[b][w] * &row[c];
                    if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    /// Loads the given basis by pivoting on any nonzero entries; `false`
    /// when it is singular.
    fn load(&mut self, target: &[usize]) -> bool {
        for (hint, &c) in target.iter().enumerate() {
            if self.basis.contains(&c) {
                continue;
            }
            let free = |r: usize| !target.contains(&self.basis[r]) && !self.rows[r][c].is_zero();
            let Some(r) = free(hint)
                .then_some(hint)
                .or_else(|| (0..self.rows.len()).find(|&r| free(r)))
            else {
                return false;
            };
            self.pivot(r, c);
        }
        true
    }

    fn primal_feasible(&self) -> bool {
        self.rows.iter().all(|row| !row[self.width].is_negative())
    }

    /// Dantzig's rule for the first pivots, then Bland's rule, which cannot
    /// cycle. The region is bounded because every entry of `A` is positive.
    fn primal(&mut self) {
        let w = self.width;
        let dantzig_cap = 2 * w;
        let mut pivots = 0;
        loop {
            let entering = if pivots < dantzig_cap {
                (0..w)
                    .filter(|&j| self.obj[j].is_positive())
                    .max_by(|&x, &y| self.obj[x].cmp(&self.obj[y]).then(y.cmp(&x)))
            } else {
                (0..w).find(|&j| self.obj[j].is_positive())
            };
            let Some(c) = entering else {
                return;
            };
            let r = self
                .ratio_test(c)
                .expect("positive matrix keeps the packing LP bounded");
            self.pivot(r, c);
            pivots += 1;
        }
    }

    /// Dual simplex from a dual-feasible basis, lowest-index rule on both
    /// choices. Returns `false` if the primal turns out infeasible, which
    /// cannot happen for a packing LP but is checked rather than assumed.
    fn dual(&mut self) -> bool {
        let w = self.width;
        loop {
            let leaving = (0..self.rows.len())
                .filter(|&r| self.rows[r][w].is_negative())
                .min_by_key(|&r| self.basis[r]);
            let Some(r) = leaving else {
                return true;
            };
            // min obj[j] / row[j] over row[j] < 0; both sides nonpositive
            let mut best: Option<usize> = None;
            for j in (0..w).filter(|&j| self.rows[r][j].is_negative()) {
                best = match best {
                    None => Some(j),
                    Some(b) => {
                        let lhs = &self.obj[j] * &self.rows[r][b];
                        let rhs = &self.obj[b] * &self.rows[r][j];
                        if lhs < rhs {
                            Some(j)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(c) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Solves the packing LP exactly, starting from a basis guess when one is
/// given and nonsingular, else from the slack basis.
pub(crate) fn solve(a: &[Vec<BigInt>], rhs: &BigInt, warm: Option<&[usize]>) -> PackingOptimum {
    let mut t = Tableau::new(a, rhs);
    let loaded = warm.is_some_and(|target| t.load(target));
    if !loaded {
        t = Tableau::new(a, rhs);
    } else if !t.primal_feasible() {
        // Zeroing the positive reduced costs changes only nonbasic costs, so
        // the basis becomes dual feasible for the modified objective; the
        // dual simplex then restores primal feasibility.
        let saved = t.obj.clone();
        for v in t.obj[..t.width].iter_mut().filter(|v| v.is_positive()) {
            *v = BigInt::zero();
        }
        t.saved = Some(saved);
        let ok = t.dual();
        let saved = t.saved.take().expect("saved objective");
        t.obj = saved;
        if !ok {
            t = Tableau::new(a, rhs);
        }
    }
    t.primal();
    let w = t.width;
    let k = a[0].len();
    PackingOptimum {
        duals: t.obj[k..w].iter().map(|v| -v).collect(),
        objective: -&t.obj[w],
        denom: t.det,
    }
}
