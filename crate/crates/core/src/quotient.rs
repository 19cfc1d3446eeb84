//! The quotient `V_T` of the free space on a tree by the span of the
//! contraction relations, with explicit rational coordinates.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{denominator_lcm, Rational};
use crate::geometry::{GeometryError, Point, PointConfig};
use crate::linalg::{self, dot};
use crate::rewrite::PosVector;
use crate::tree::{ColoredTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("no linear functional takes the value 1 on every node image")]
    NoTrace,
    #[error("nodes {0:?} and {1:?} have the same image")]
    Collision(String, String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Coordinates for `V_T`. Rows of the reduced relation matrix pivot on the
/// earliest node ids; the remaining nodes index the coordinate axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    dimension: usize,
    free: Vec<NodeId>,
    coords: Vec<Point>,
    generators: Vec<Vec<Rational>>,
    trace: Vec<Rational>,
}

/// Generators `ṗ − (1/|I|) Σ_{q ∈ I} q̇`, one per pair of M_T, as dense rows.
pub fn generators(t: &ColoredTree) -> Vec<Vec<Rational>> {
    t.mt_pairs()
        .iter()
        .map(|pair| {
            let mut row = vec![Rational::zero(); t.len()];
            row[pair.parent] = Rational::one();
            let share = Rational::new(1, pair.members.len() as i64);
            for &q in &pair.members {
                row[q] -= &share;
            }
            row
        })
        .collect()
}

pub fn build_quotient(t: &ColoredTree) -> Result<QuotientBasis, QuotientError> {
    let n_nodes = t.len();
    let gens = generators(t);
    let (reduced, pivots) = linalg::rref(&gens, n_nodes);
    let free: Vec<NodeId> = (0..n_nodes).filter(|c| !pivots.contains(c)).collect();
    let dimension = free.len();
    let mut coords = vec![Vec::new(); n_nodes];
    for (k, &p) in free.iter().enumerate() {
        let mut e = vec![Rational::zero(); dimension];
        e[k] = Rational::one();
        coords[p] = e;
    }
    // A pivot node is congruent to minus the free part of its reduced row.
    for (row, &c) in reduced.iter().zip(&pivots) {
        coords[c] = free.iter().map(|&f| -&row[f]).collect();
    }
    let ones = vec![Rational::one(); n_nodes];
    let trace = linalg::solve(&coords, &ones).ok_or(QuotientError::NoTrace)?;
    if coords.iter().any(|c| dot(c, &trace) != Rational::one()) {
        return Err(QuotientError::NoTrace);
    }
    Ok(QuotientBasis { dimension, free, coords, generators: gens, trace })
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Nodes whose images form the coordinate axes.
    pub fn free_nodes(&self) -> &[NodeId] {
        &self.free
    }

    pub fn node_point(&self, p: NodeId) -> &Point {
        &self.coords[p]
    }

    pub fn node_points(&self) -> &[Point] {
        &self.coords
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn coords(&self, x: &PosVector) -> Point {
        let mut out = vec![Rational::zero(); self.dimension];
        for (p, v) in x.entries() {
            for (o, c) in out.iter_mut().zip(&self.coords[p]) {
                *o += &(c * v);
            }
        }
        out
    }

    /// The trace functional on a point of `V_T`.
    pub fn trace_point(&self, v: &[Rational]) -> Rational {
        dot(v, &self.trace)
    }

    pub fn trace(&self, x: &PosVector) -> Rational {
        self.trace_point(&self.coords(x))
    }

    pub fn trace_functional(&self) -> &[Rational] {
        &self.trace
    }

    /// `Ω_T`: the node images as a point configuration indexed like the tree.
    pub fn omega(&self, t: &ColoredTree) -> Result<PointConfig, QuotientError> {
        match PointConfig::new(self.dimension, self.coords.clone()) {
            Ok(cfg) => Ok(cfg),
            Err(GeometryError::DuplicatePoint(a, b)) => {
                Err(QuotientError::Collision(t.id(a).to_string(), t.id(b).to_string()))
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Scales a configuration by the least common multiple of its denominators.
pub fn integer_scale(cfg: &PointConfig) -> (BigInt, PointConfig) {
    let m = denominator_lcm(cfg.points().iter().flatten());
    let scaled = cfg.scaled(&Rational::from(m.clone()));
    (m, scaled)
}

/// Table of node images, as stored in certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub dimension: usize,
    pub free_nodes: Vec<String>,
    pub trace: Vec<Rational>,
}

impl QuotientBasis {
    pub fn summary(&self, t: &ColoredTree) -> QuotientSummary {
        QuotientSummary {
            dimension: self.dimension,
            free_nodes: self.free.iter().map(|&p| t.id(p).to_string()).collect(),
            trace: self.trace.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::lattice::corpus;
    use crate::tree::{build_tree_lb, NodeSpec};

    fn fork() -> ColoredTree {
        let spec = |id: &str, parent: Option<&str>, class: &str| NodeSpec {
            id: id.into(),
            parent: parent.map(Into::into),
            class: class.into(),
        };
        ColoredTree::new(vec![spec("r", None, "root"), spec("q0", Some("r"), "i"), spec("q1", Some("r"), "i")], true)
            .unwrap()
    }

    #[test]
    fn boolean_square_is_free() {
        let (t, _) = build_tree_lb(&corpus::boolean(2)).unwrap();
        let b = build_quotient(&t).unwrap();
        assert_eq!(b.dimension(), 2);
        assert_eq!(b.node_points(), &[vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        assert_eq!(b.omega(&t).unwrap().len(), 2);
    }

    #[test]
    fn fork_parent_is_midpoint() {
        let t = fork();
        let b = build_quotient(&t).unwrap();
        assert_eq!(b.dimension(), 2);
        let r = t.lookup("r").unwrap();
        let (q0, q1) = (t.lookup("q0").unwrap(), t.lookup("q1").unwrap());
        let mid: Point = b.node_point(q0).iter().zip(b.node_point(q1)).map(|(a, c)| (a + c) * q(1, 2)).collect();
        assert_eq!(b.node_point(r), &mid);
        let half = PosVector::from_entries([(q0, q(1, 2)), (q1, q(1, 2))]).unwrap();
        assert_eq!(b.coords(&half), b.coords(&PosVector::basis(r)));
        assert_eq!(b.coords(&PosVector::zero()), vec![q(0, 1), q(0, 1)]);
        assert_eq!(b.trace(&half), q(1, 1));
        assert_eq!(b.trace(&PosVector::zero()), q(0, 1));
        assert_eq!(b.omega(&t).unwrap().len(), 3);
    }

    #[test]
    fn n5_has_dimension_four() {
        let (t, _) = build_tree_lb(&corpus::n5()).unwrap();
        let b = build_quotient(&t).unwrap();
        assert_eq!(b.generators().len(), 1);
        assert_eq!(b.dimension(), 4);
        let omega = b.omega(&t).unwrap();
        assert_eq!((omega.len(), omega.dim()), (5, 4));
        for p in 0..t.len() {
            assert_eq!(b.trace(&PosVector::basis(p)), q(1, 1));
        }
    }

    #[test]
    fn scaling_examples() {
        let cfg = PointConfig::new(2, vec![vec![q(1, 2), q(1, 2)]]).unwrap();
        let (m, s) = integer_scale(&cfg);
        assert_eq!(m, BigInt::from(2));
        assert_eq!(s.point(0), &vec![q(1, 1), q(1, 1)]);
        let ints = PointConfig::from_integers(1, &[&[3], &[-4]]).unwrap();
        assert_eq!(integer_scale(&ints), (BigInt::from(1), ints.clone()));
        let cfg = PointConfig::new(2, vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(1, 3)]]).unwrap();
        let (m, s) = integer_scale(&cfg);
        assert_eq!(m, BigInt::from(6));
        assert_eq!(s.points(), &[vec![q(3, 1), q(0, 1)], vec![q(0, 1), q(2, 1)]]);
    }
}
