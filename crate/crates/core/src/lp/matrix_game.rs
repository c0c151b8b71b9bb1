use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::float;
use super::packing::{self, PackingOptimum};
use crate::rational;
use crate::{Error, Rational, Result};

/// How the optimum was obtained. Both paths are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamePath {
    /// A floating-point basis, recomputed and certified in exact arithmetic.
    CertifiedBasis,
    /// The exact fraction-free simplex on the packing form.
    ExactSimplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGameSolution {
    /// `max_q min_col q·payoff[., col]`
    pub value: Rational,
    /// An optimal mixed strategy of the row (maximizing) player.
    pub row_strategy: Vec<Rational>,
    pub path: GamePath,
}

/// Exact value and an optimal row strategy of the zero-sum game where the
/// row player receives `payoff[row][col]`.
pub fn solve_matrix_game(payoff: &[Vec<Rational>]) -> Result<MatrixGameSolution> {
    check_shape(payoff)?;
    let denom = payoff
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<Vec<BigInt>> = payoff
        .iter()
        .map(|r| r.iter().map(|v| v.numer() * (&denom / v.denom())).collect())
        .collect();
    Ok(solve_scaled(&scaled, &denom))
}

/// [`solve_matrix_game`] for the payoff matrix `scaled / denom`.
pub fn solve_matrix_game_scaled(
    scaled: &[Vec<BigInt>],
    denom: &BigInt,
) -> Result<MatrixGameSolution> {
    check_shape(scaled)?;
    if !denom.is_positive() {
        return Err(Error::DimensionMismatch(
            "denominator must be positive".into(),
        ));
    }
    Ok(solve_scaled(scaled, denom))
}

fn check_shape<T>(m: &[Vec<T>]) -> Result<()> {
    let k = m.first().map_or(0, Vec::len);
    if m.is_empty() || k == 0 {
        return Err(Error::DimensionMismatch(
            "payoff matrix must be nonempty".into(),
        ));
    }
    if m.iter().any(|r| r.len() != k) {
        return Err(Error::DimensionMismatch("ragged payoff matrix".into()));
    }
    Ok(())
}

/// Shifting the payoffs to `A >= 1` turns the column player's problem into
/// the packing LP `max 1·y s.t. A y <= 1, y >= 0`, whose optimum is `1/v_A`;
/// the row player's optimal strategy is the normalized dual. Works on
/// `A_int = denom · A`: with `A_int z <= 1`, `y = denom · z`.
///
/// A floating-point basis is tried first and certified exactly; otherwise
/// the exact simplex runs, warm-started from that basis when possible.
fn solve_scaled(scaled: &[Vec<BigInt>], denom: &BigInt) -> MatrixGameSolution {
    let min = scaled.iter().flatten().min().expect("nonempty matrix");
    let shift = denom - min;
    let a: Vec<Vec<BigInt>> = scaled
        .iter()
        .map(|r| r.iter().map(|x| x + &shift).collect())
        .collect();
    let df = int_to_f64(denom);
    let af: Vec<Vec<f64>> = a
        .iter()
        .map(|r| r.iter().map(|x| int_to_f64(x) / df).collect())
        .collect();
    let basis = float::packing_basis(&af);
    if let Some(sol) = basis.as_deref().and_then(|b| certify(&a, b)) {
        return finish(sol, denom, &shift, GamePath::CertifiedBasis);
    }
    let opt = packing::solve(&a, &BigInt::one(), basis.as_deref());
    finish(opt, denom, &shift, GamePath::ExactSimplex)
}

fn int_to_f64(x: &BigInt) -> f64 {
    rational::to_f64(&Rational::from_integer(x.clone()))
}

/// `v_A = 1 / (denom · sum(z))`, so the game value is
/// `(det - shift · sum) / (denom · sum)` with `sum(z) = objective / det`.
fn finish(
    opt: PackingOptimum,
    denom: &BigInt,
    shift: &BigInt,
    path: GamePath,
) -> MatrixGameSolution {
    let value = Rational::new(&opt.denom - shift * &opt.objective, denom * &opt.objective);
    let total: BigInt = opt.duals.iter().sum();
    let row_strategy = opt
        .duals
        .into_iter()
        .map(|u| Rational::new(u, total.clone()))
        .collect();
    MatrixGameSolution {
        value,
        row_strategy,
        path,
    }
}

/// For a basis with structural columns `J` and tight rows `I`, the primal
/// point solves `A[I,J] z = 1` and the dual point solves `w A[I,J] = 1`.
/// Primal and dual feasibility with equal objectives prove optimality by
/// weak duality, whatever produced the basis.
fn certify(a: &[Vec<BigInt>], basis: &[usize]) -> Option<PackingOptimum> {
    let n = a.len();
    let k = a[0].len();
    let cols: Vec<usize> = basis.iter().copied().filter(|&c| c < k).collect();
    let mut tight = vec![true; n];
    for &c in basis {
        if c >= k {
            tight[c - k] = false;
        }
    }
    let rows: Vec<usize> = (0..n).filter(|&i| tight[i]).collect();
    if rows.len() != cols.len() || cols.is_empty() {
        return None;
    }

    let sub: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
        .collect();
    let (z, dz) = solve_square_int(sub.clone())?;
    let (w, dw) = solve_square_int(transpose(&sub))?;
    if z.iter().chain(&w).any(Signed::is_negative) {
        return None;
    }
    for row in a {
        let lhs: BigInt = cols.iter().zip(&z).map(|(&j, zj)| &row[j] * zj).sum();
        if lhs > dz {
            return None;
        }
    }
    let column_short = |j: usize| {
        let lhs: BigInt = rows.iter().zip(&w).map(|(&i, wi)| &a[i][j] * wi).sum();
        lhs < dw
    };
    if (0..k).any(column_short) {
        return None;
    }
    let sz: BigInt = z.iter().sum();
    let sw: BigInt = w.iter().sum();
    if &sz * &dw != &sw * &dz || sw.is_zero() {
        return None;
    }
    let mut duals = vec![BigInt::zero(); n];
    for (&i, wi) in rows.iter().zip(w) {
        duals[i] = wi;
    }
    // scale the duals to the primal's denominator; only their ratios matter
    Some(PackingOptimum {
        duals,
        objective: sz,
        denom: dz,
    })
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Solves `m x = 1` by fraction-free Gauss-Jordan elimination. Returns the
/// numerators and a positive common denominator, or `None` when singular.
fn solve_square_int(mut m: Vec<Vec<BigInt>>) -> Option<(Vec<BigInt>, BigInt)> {
    let n = m.len();
    for row in &mut m {
        row.push(BigInt::one());
    }
    let mut prev = BigInt::one();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let (head, rest) = m.split_at_mut(c + 1);
        let (above, pivot) = head.split_at_mut(c);
        let pivot = &pivot[0];
        for row in above.iter_mut().chain(rest.iter_mut()) {
            let f = core::mem::take(&mut row[c]);
            for j in (0..=n).filter(|&j| j != c) {
                row[j] = (&pivot[c] * &row[j] - &f * &pivot[j]) / &prev;
            }
        }
        prev = m[c][c].clone();
    }
    let mut x: Vec<BigInt> = m.iter().map(|r| r[n].clone()).collect();
    let mut d = prev;
    if d.is_negative() {
        d = -d;
        x.iter_mut().for_each(|v| *v = -&*v);
    }
    Some((x, d))
}
