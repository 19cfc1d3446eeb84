//! Convex hulls over the rationals and the closure lattice `Co(Qⁿ, Ω)`.

mod closure;
mod hull;
mod lp;
mod plenary;
mod polygon;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;

pub use closure::{
    closed_sets, closure, closure_lattice, d_relation_geometry, is_lower_bounded_geometry, join,
    d_relation_geometry_lp, join_irreducibles_geometry, meet, ClosedSet, GeometricLowerBoundedness,
    EXHAUSTIVE_LIMIT,
};
pub use hull::{affine_rank, extreme_points, in_hull, is_affinely_independent};
pub use lp::feasible_point;
pub use plenary::{is_plenary, PlenaryVerdict};
pub use polygon::{polygon_hull, polygon_intersect, polygon_join, Point2, Polygon2D};

pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("point {index} has {found} coordinates, expected {expected}")]
    Dimension { index: usize, expected: usize, found: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("configuration has {size} points; exhaustive mode allows at most {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("index {0} is not a point of the configuration")]
    UnknownIndex(usize),
    #[error("operation needs dimension {expected}, configuration has {found}")]
    WrongDimension { expected: usize, found: usize },
}

/// A finite list of pairwise distinct points in `Qⁿ`, addressed by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct RawConfig {
    dim: usize,
    points: Vec<Point>,
}

impl<'de> Deserialize<'de> for PointConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawConfig::deserialize(d)?;
        PointConfig::new(raw.dim, raw.points).map_err(serde::de::Error::custom)
    }
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self, GeometryError> {
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::Dimension { index, expected: dim, found: p.len() });
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeometryError::DuplicatePoint(a, b));
            }
        }
        Ok(PointConfig { dim, points })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(dim: usize, points: &[&[i64]]) -> Result<Self, GeometryError> {
        let pts = points.iter().map(|p| p.iter().map(|&v| Rational::from(v)).collect()).collect();
        PointConfig::new(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &[Rational]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }

    pub fn subset(&self, members: &[usize]) -> Vec<Point> {
        members.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: &Rational) -> PointConfig {
        assert!(factor.is_positive(), "scale factor must be positive");
        let points = self.points.iter().map(|p| p.iter().map(|v| v * factor).collect()).collect();
        PointConfig { dim: self.dim, points }
    }

    pub fn check_indices(&self, xs: &[usize]) -> Result<(), GeometryError> {
        match xs.iter().find(|&&i| i >= self.points.len()) {
            Some(&i) => Err(GeometryError::UnknownIndex(i)),
            None => Ok(()),
        }
    }
}
