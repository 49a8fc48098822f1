//! Exact dense linear algebra over any `CoeffField`.
//!
//! Small systems only: minimal polynomial computations, relation searches
//! and coordinate conversions. Pivoting is deterministic (first nonzero),
//! so identical inputs give identical reduced forms on every run.

use crate::unipoly::CoeffField;

/// Reduced row echelon form in place; returns the pivot column of each row.
pub fn rref<C: CoeffField>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // First row at or below r with a nonzero entry in this column.
        let Some(pivot_row) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            rows[r][c] = rows[r][c].mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..ncols {
                    let delta = factor.mul(&rows[r][c]);
                    rows[i][c] = rows[i][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of the null space of the matrix (rows are equations over the
/// unknowns). Basis vectors are normalized with their first nonzero
/// coordinate equal to one, ordered by free column.
pub fn kernel_basis<C: CoeffField>(mut rows: Vec<Vec<C>>, ncols: usize, proto: &C) -> Vec<Vec<C>> {
    for row in &rows {
        assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut rows);
    let pivot_set: Vec<usize> = pivots.clone();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![proto.zero_like(); ncols];
        v[free] = proto.one_like();
        for (ri, &pc) in pivot_set.iter().enumerate() {
            // Row ri: x_pc + sum over non-pivot cols = 0.
            v[pc] = rows[ri][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b`; returns one solution or None when inconsistent.
/// Underdetermined systems get free variables set to zero.
pub fn solve<C: CoeffField>(a: &[Vec<C>], b: &[C], proto: &C) -> Option<Vec<C>> {
    let nrows = a.len();
    assert_eq!(b.len(), nrows);
    if nrows == 0 {
        return Some(Vec::new());
    }
    let ncols = a[0].len();
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent if some pivot lands in the augmented column.
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![proto.zero_like(); ncols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn solve_square_system() {
        // x + y = 3, x - y = 1 => x = 2, y = 1.
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(3), q(1)];
        let x = solve(&a, &b, &Rational::zero()).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let b = vec![q(1), q(3)];
        assert!(solve(&a, &b, &Rational::zero()).is_none());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // x + 2y + 3z = 0 has a 2-dimensional kernel.
        let rows = vec![vec![q(1), q(2), q(3)]];
        let basis = kernel_basis(rows, 3, &Rational::zero());
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot = v[0].add(&v[1].mul(&q(2))).add(&v[2].mul(&q(3)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn kernel_trivial_for_invertible() {
        let rows = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(kernel_basis(rows, 2, &Rational::zero()).is_empty());
    }
}
