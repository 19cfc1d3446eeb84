use crate::arith::Rational;
use crate::linalg;

use super::lp::feasible_point;
use super::Point;

/// Decides `x ∈ conv(S)`. On success returns simplex coefficients `ξ` with
/// `Σ ξᵢ = 1`, `ξ ≥ 0` and `Σ ξᵢ sᵢ = x`, re-verified by substitution.
///
/// # Panics
/// If the dimensions of `x` and the points of `S` disagree.
pub fn in_hull(x: &[Rational], s: &[Point]) -> Option<Vec<Rational>> {
    assert!(s.iter().all(|p| p.len() == x.len()), "dimension mismatch in hull test");
    if s.is_empty() {
        return None;
    }
    if let Some(i) = s.iter().position(|p| p.as_slice() == x) {
        let mut xi = vec![Rational::zero(); s.len()];
        xi[i] = Rational::one();
        return Some(xi);
    }
    let dim = x.len();
    let mut a = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        a.push(s.iter().map(|p| p[d].clone()).collect::<Vec<_>>());
    }
    a.push(vec![Rational::one(); s.len()]);
    let mut b: Vec<Rational> = x.to_vec();
    b.push(Rational::one());
    let xi = feasible_point(&a, &b)?;
    verify(x, s, &xi);
    Some(xi)
}

fn verify(x: &[Rational], s: &[Point], xi: &[Rational]) {
    assert!(xi.iter().all(|v| !v.is_negative()), "negative hull coefficient");
    assert!(xi.iter().sum::<Rational>() == Rational::one(), "hull coefficients do not sum to one");
    for (d, xd) in x.iter().enumerate() {
        let combo: Rational = s.iter().zip(xi).map(|(p, c)| &p[d] * c).sum();
        assert!(&combo == xd, "hull witness fails substitution");
    }
}

/// Points of `S` that are not in the hull of the others, in input order.
pub fn extreme_points(s: &[Point]) -> Vec<Point> {
    (0..s.len())
        .filter(|&i| {
            let rest: Vec<Point> =
                s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            in_hull(&s[i], &rest).is_none()
        })
        .map(|i| s[i].clone())
        .collect()
}

/// Dimension of the affine hull; `None` for the empty set.
pub fn affine_rank(s: &[Point]) -> Option<usize> {
    let first = s.first()?;
    let diffs: Vec<Vec<Rational>> =
        s[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    Some(linalg::rank(&diffs, first.len()))
}

pub fn is_affinely_independent(s: &[Point]) -> bool {
    affine_rank(s).is_none_or(|r| r + 1 == s.len())
}

/// Affine coordinates of a point set relative to a basis of its affine hull.
pub(crate) struct Chart {
    origin: Point,
    basis: Vec<Point>,
    pub coords: Vec<Point>,
}

impl Chart {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Maps chart coordinates back to the ambient space.
    pub fn lift(&self, c: &[Rational]) -> Point {
        let mut p = self.origin.clone();
        for (v, ci) in self.basis.iter().zip(c) {
            for (pd, vd) in p.iter_mut().zip(v) {
                *pd += &(vd * ci);
            }
        }
        p
    }
}

/// Chart for a nonempty point set; convexity relations are preserved.
pub(crate) fn affine_chart(s: &[Point]) -> Chart {
    let origin = s[0].clone();
    let dim = origin.len();
    let diffs: Vec<Vec<Rational>> =
        s.iter().map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect()).collect();
    let (_, pivots) = linalg::rref(&transpose(&diffs, dim), s.len());
    // The pivot columns pick a linearly independent subset of the differences.
    let basis: Vec<Point> = pivots.iter().map(|&j| diffs[j].clone()).collect();
    let cols: Vec<Vec<Rational>> =
        (0..dim).map(|d| basis.iter().map(|v| v[d].clone()).collect()).collect();
    let coords = diffs
        .iter()
        .map(|v| linalg::solve(&cols, v).expect("difference lies in the span of the basis"))
        .collect();
    Chart { origin, basis, coords }
}

fn transpose(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    (0..width).map(|d| rows.iter().map(|r| r[d].clone()).collect()).collect()
}
