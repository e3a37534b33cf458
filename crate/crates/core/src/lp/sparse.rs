//! Exact solution of a square sparse system by Gaussian elimination with a
//! greedy fill-reducing pivot choice.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::rational::Rational;

/// Solves `M z = rhs` where `M` is `size x size`, given row-wise as sparse
/// `(column, value)` lists. `None` if `M` is singular.
pub(super) fn solve_square(
    size: usize,
    rows: Vec<Vec<(usize, Rational)>>,
    mut rhs: Vec<Rational>,
) -> Option<Vec<Rational>> {
    let mut mat: Vec<BTreeMap<usize, Rational>> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let mut in_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); size];
    for (i, row) in mat.iter().enumerate() {
        for &j in row.keys() {
            in_col[j].insert(i);
        }
    }
    let mut active: BTreeSet<usize> = (0..size).collect();
    let mut order = Vec::with_capacity(size);

    while let Some(&r) = active.iter().min_by_key(|&&i| mat[i].len()) {
        let c = *mat[r].keys().min_by_key(|&&j| in_col[j].len())?;
        active.remove(&r);
        for &j in mat[r].keys() {
            in_col[j].remove(&r);
        }
        let pivot = mat[r][&c].clone();
        let targets: Vec<usize> = in_col[c].iter().copied().collect();
        for i in targets {
            let factor = &mat[i][&c] / &pivot;
            let mut row = std::mem::take(&mut mat[i]);
            let pivot_row = &mat[r];
            for (&j, v) in pivot_row {
                let entry = row.entry(j).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&j);
                    in_col[j].remove(&i);
                } else {
                    in_col[j].insert(i);
                }
            }
            let delta = &factor * &rhs[r];
            rhs[i] -= delta;
            mat[i] = row;
        }
        order.push((r, c));
    }

    let mut z = vec![Rational::zero(); size];
    for &(r, c) in order.iter().rev() {
        let mut acc = rhs[r].clone();
        for (&j, v) in &mat[r] {
            if j != c {
                acc -= v * &z[j];
            }
        }
        z[c] = acc / &mat[r][&c];
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let rows = vec![
            vec![(0, int(1)), (1, int(1))],
            vec![(0, int(1)), (1, int(-1))],
        ];
        assert_eq!(
            solve_square(2, rows, vec![int(3), int(1)]),
            Some(vec![int(2), int(1)])
        );
        let rows = vec![vec![(1, int(2))], vec![(0, int(3)), (1, int(1))]];
        assert_eq!(
            solve_square(2, rows, vec![int(1), int(1)]),
            Some(vec![rat(1, 6), rat(1, 2)])
        );
    }

    #[test]
    fn singular_is_none() {
        let rows = vec![
            vec![(0, int(1)), (1, int(1))],
            vec![(0, int(2)), (1, int(2))],
        ];
        assert_eq!(solve_square(2, rows, vec![int(1), int(2)]), None);
    }
}
