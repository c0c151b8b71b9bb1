//! Floating-point simplex used only to guess an optimal basis; nothing it
//! returns is trusted without exact recomputation.

use alloc::vec;
use alloc::vec::Vec;

const EPS: f64 = 1e-9;

/// Solves `max 1·y s.t. a·y <= 1, y >= 0` for a matrix with positive entries
/// and returns the final basis: entry `i` is the basic column of row `i`,
/// with columns `0..k` structural and `k..k+n` the row slacks.
pub(crate) fn packing_basis(a: &[Vec<f64>]) -> Option<Vec<usize>> {
    let n = a.len();
    let k = a.first()?.len();
    let width = k + n;
    let mut t: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = vec![0.0; width + 1];
            r[..k].copy_from_slice(row);
            r[k + i] = 1.0;
            r[width] = 1.0;
            r
        })
        .collect();
    let mut obj = vec![0.0; width + 1];
    obj[..k].fill(1.0);
    let mut basis: Vec<usize> = (k..width).collect();

    // Dantzig's rule first; Bland's rule after the cap to rule out cycling.
    let dantzig_cap = 20 * (n + k);
    let hard_cap = 200 * (n + k) + 1000;
    for iter in 0..hard_cap {
        let entering = if iter < dantzig_cap {
            let (j, best) =
                obj[..width]
                    .iter()
                    .enumerate()
                    .fold(
                        (usize::MAX, EPS),
                        |acc, (j, &v)| if v > acc.1 { (j, v) } else { acc },
                    );
            (best > EPS).then_some(j)
        } else {
            obj[..width].iter().position(|&v| v > EPS)
        };
        let Some(c) = entering else {
            return Some(basis);
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[c] > EPS {
                let ratio = row[width] / row[c];
                let better = match leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < best - EPS || (ratio <= best + EPS && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // positive rows keep the feasible region bounded
        let (r, _) = leave?;
        let p = t[r][c];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = core::mem::take(&mut t[r]);
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && row[c] != 0.0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        let f = obj[c];
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        t[r] = pivot_row;
        basis[r] = c;
    }
    None
}
