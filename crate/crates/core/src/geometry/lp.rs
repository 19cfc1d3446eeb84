//! Exact phase-one simplex for `A ξ = b, ξ ≥ 0`, with Bland's rule.

use crate::arith::Rational;

/// A feasible `ξ`, or `None` when the system has no nonnegative solution.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    // Columns: k structural, m artificial, then the right-hand side.
    let width = k + m + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v } else { v.clone() };
        }
        t[k + i] = Rational::one();
        t[rhs] = if flip { -bi } else { bi.clone() };
        tab.push(t);
    }
    // Reduced costs of the phase-one objective Σ artificials.
    let mut obj = vec![Rational::zero(); width];
    for t in &tab {
        for j in 0..k {
            obj[j] -= &t[j];
        }
        obj[rhs] -= &t[rhs];
    }
    tab.push(obj);
    let mut basis: Vec<usize> = (k..k + m).collect();

    while let Some(enter) = (0..k + m).find(|&j| tab[m][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][rhs] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The phase-one objective is bounded below by zero.
        let (row, _) = leave.expect("phase-one problem is bounded");
        pivot(&mut tab, row, enter);
        basis[row] = enter;
    }

    if !tab[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &v) in basis.iter().enumerate() {
        if v < k {
            x[v] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for v in tab[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[row].clone();
    for (i, t) in tab.iter_mut().enumerate() {
        if i != row && !t[col].is_zero() {
            let f = t[col].clone();
            for (v, pv) in t.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
    }
}
