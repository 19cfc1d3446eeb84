//! Convex polygons in `Q²`, including the degenerate point and segment cases.

use serde::{Deserialize, Serialize};

use crate::arith::Rational;

pub type Point2 = [Rational; 2];

/// A convex polygon given by its vertices, counterclockwise from the
/// lexicographically least one, with no three consecutive vertices collinear.
/// Zero, one and two vertices encode the empty set, a point and a segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon2D {
    vertices: Vec<Point2>,
}

fn cross(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn on_segment(a: &Point2, b: &Point2, x: &Point2) -> bool {
    cross(a, b, x).is_zero()
        && x[0] >= a[0].clone().min(b[0].clone())
        && x[0] <= a[0].clone().max(b[0].clone())
        && x[1] >= a[1].clone().min(b[1].clone())
        && x[1] <= a[1].clone().max(b[1].clone())
}

/// Exact convex hull by the monotone chain.
pub fn polygon_hull(points: &[Point2]) -> Polygon2D {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 1 {
        return Polygon2D { vertices: pts };
    }
    let mut lower: Vec<Point2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Polygon2D { vertices: lower }
}

/// Point where `ab` and `cd` cross at interior points of both. Touching
/// configurations put an endpoint on the other segment and are picked up by
/// the containment tests instead.
fn segment_crossing(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> Option<Point2> {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    if !(d1.is_positive() && d2.is_negative() || d1.is_negative() && d2.is_positive()) {
        return None;
    }
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if !(d3.is_positive() && d4.is_negative() || d3.is_negative() && d4.is_positive()) {
        return None;
    }
    let t = &d1 / &(&d1 - &d2);
    Some([&a[0] + &(&t * &(&b[0] - &a[0])), &a[1] + &(&t * &(&b[1] - &a[1]))])
}

/// `P ∩ Q`.
pub fn polygon_intersect(p: &Polygon2D, q: &Polygon2D) -> Polygon2D {
    if p.is_empty() || q.is_empty() {
        return Polygon2D::empty();
    }
    let mut cand: Vec<Point2> = Vec::new();
    cand.extend(p.vertices.iter().filter(|v| q.contains(v)).cloned());
    cand.extend(q.vertices.iter().filter(|v| p.contains(v)).cloned());
    for (a, b) in p.edges() {
        for (c, d) in q.edges() {
            if let Some(x) = segment_crossing(a, b, c, d) {
                cand.push(x);
            }
        }
    }
    polygon_hull(&cand)
}

/// `conv(P ∪ Q)`, the join in the lattice of polytopes.
pub fn polygon_join(p: &Polygon2D, q: &Polygon2D) -> Polygon2D {
    let all: Vec<Point2> = p.vertices.iter().chain(&q.vertices).cloned().collect();
    polygon_hull(&all)
}

impl Polygon2D {
    pub fn empty() -> Self {
        Polygon2D { vertices: Vec::new() }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Closed-set membership, boundary included.
    pub fn contains(&self, x: &Point2) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => v[0] == *x,
            2 => on_segment(&v[0], &v[1], x),
            n => (0..n).all(|i| !cross(&v[i], &v[(i + 1) % n], x).is_negative()),
        }
    }

    pub fn contains_polygon(&self, other: &Polygon2D) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    fn edges(&self) -> Vec<(&Point2, &Point2)> {
        let v = &self.vertices;
        match v.len() {
            0 | 1 => Vec::new(),
            2 => vec![(&v[0], &v[1])],
            n => (0..n).map(|i| (&v[i], &v[(i + 1) % n])).collect(),
        }
    }
}
