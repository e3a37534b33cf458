//! Floating-point phase-1 simplex. Only used to guess a final basis; the
//! guess is always re-derived and checked in exact arithmetic.

use num_traits::ToPrimitive;

use super::LinearSystem;

const EPS: f64 = 1e-9;

/// Column indices of a phase-1 optimal basis (`j >= num_vars` is the
/// artificial of row `j - num_vars`), or `None` if the search gave up.
pub(super) fn guess_basis(system: &LinearSystem) -> Option<Vec<usize>> {
    let n = system.num_vars;
    let m = system.rows.len();
    let width = n + m + 1;
    let rhs = width - 1;
    let mut rows = vec![vec![0.0f64; width]; m];
    let mut cost = vec![0.0f64; width];
    for (i, row) in system.rows.iter().enumerate() {
        let sign = if row.rhs < num_traits::Zero::zero() {
            -1.0
        } else {
            1.0
        };
        for (j, c) in row.coeffs.iter().enumerate() {
            rows[i][j] = sign * c.to_f64()?;
        }
        rows[i][n + i] = 1.0;
        rows[i][rhs] = sign * row.rhs.to_f64()?;
        for j in 0..n {
            cost[j] -= rows[i][j];
        }
        cost[rhs] -= rows[i][rhs];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let limit = 50 * (n + m) + 1000;
    for iter in 0..limit {
        // Dantzig pricing, switching to Bland late on to escape cycling.
        let bland = iter > limit / 2;
        let mut enter = None;
        let mut best = -EPS;
        for (j, &c) in cost.iter().enumerate().take(n) {
            if c < best {
                enter = Some(j);
                if bland {
                    break;
                }
                best = c;
            }
        }
        let Some(col) = enter else {
            return Some(basis);
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[col] > EPS {
                let ratio = row[rhs] / row[col];
                let better = match leave {
                    None => true,
                    Some((b, r)) => ratio < r - EPS || (ratio <= r + EPS && basis[i] < basis[b]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let inv = 1.0 / rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let support: Vec<usize> = (0..width).filter(|&j| pivot_row[j] != 0.0).collect();
        let eliminate = |target: &mut Vec<f64>| {
            let factor = target[col];
            if factor == 0.0 {
                return;
            }
            for &j in &support {
                target[j] -= factor * pivot_row[j];
                if target[j].abs() < 1e-14 {
                    target[j] = 0.0;
                }
            }
            target[col] = 0.0;
        };
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut cost);
        rows[r] = pivot_row;
        basis[r] = col;
    }
    None
}
