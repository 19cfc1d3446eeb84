//! Dense exact linear algebra over the rationals.

use crate::arith::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form, pivoting on the leftmost available column.
/// Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], width: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], width: usize) -> usize {
    rref(rows, width).1.len()
}

/// Solves `a · x = b`; returns one solution (free variables set to zero) or `None`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let width = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let (red, pivots) = rref(&aug, width + 1);
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x = vec![Rational::zero(); width];
    for (row, &c) in red.iter().zip(&pivots) {
        x[c] = row[width].clone();
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        let x = solve(&a, &[q(3, 1), q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 1), q(1, 1)]);
        assert!(solve(&[vec![q(1, 1)], vec![q(1, 1)]], &[q(1, 1), q(2, 1)]).is_none());
        assert_eq!(rank(&a, 2), 2);
        assert_eq!(rank(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]], 2), 1);
    }
}
