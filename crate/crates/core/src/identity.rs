//! Lattice terms, their evaluation in concrete lattices, and the planar
//! identity `x′ = ⋁_{i,j,k<2} (x′ ∧ a_{ijk}) ∨ (x′ ∧ b_{ijk})`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{self, polygon_intersect, polygon_join, ClosedSet, PointConfig, Polygon2D};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticeTerm {
    Var(String),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
}

impl LatticeTerm {
    pub fn var(name: impl Into<String>) -> Self {
        LatticeTerm::Var(name.into())
    }

    pub fn join(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Meet(Box::new(a), Box::new(b))
    }

    /// Left-nested join of a nonempty list.
    pub fn join_all(terms: impl IntoIterator<Item = LatticeTerm>) -> Self {
        terms.into_iter().reduce(LatticeTerm::join).expect("nonempty join")
    }

    pub fn meet_all(terms: impl IntoIterator<Item = LatticeTerm>) -> Self {
        terms.into_iter().reduce(LatticeTerm::meet).expect("nonempty meet")
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            LatticeTerm::Var(v) => {
                out.insert(v.clone());
            }
            LatticeTerm::Join(a, b) | LatticeTerm::Meet(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Top-level joinands, flattening nested joins.
    pub fn joinands(&self) -> Vec<&LatticeTerm> {
        match self {
            LatticeTerm::Join(a, b) => {
                let mut v = a.joinands();
                v.extend(b.joinands());
                v
            }
            t => vec![t],
        }
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeTerm::Var(v) => write!(f, "{v}"),
            LatticeTerm::Join(a, b) => write!(f, "({a} ∨ {b})"),
            LatticeTerm::Meet(a, b) => write!(f, "({a} ∧ {b})"),
        }
    }
}

/// Join and meet of some lattice.
pub trait LatticeOps {
    type Value: Clone + PartialEq;
    fn join(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn meet(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

impl LatticeOps for FiniteLattice {
    type Value = Elem;
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteLattice::join(self, *a, *b)
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteLattice::meet(self, *a, *b)
    }
}

/// The closure lattice `Co(Qⁿ, Ω)` of a configuration.
pub struct ClosureOps<'a>(pub &'a PointConfig);

impl LatticeOps for ClosureOps<'_> {
    type Value = ClosedSet;
    fn join(&self, a: &ClosedSet, b: &ClosedSet) -> ClosedSet {
        geometry::join(self.0, a, b)
    }
    fn meet(&self, a: &ClosedSet, b: &ClosedSet) -> ClosedSet {
        geometry::meet(a, b)
    }
}

/// Convex polygons of `Q²` under hull-of-union and intersection.
pub struct PolygonOps;

impl LatticeOps for PolygonOps {
    type Value = Polygon2D;
    fn join(&self, a: &Polygon2D, b: &Polygon2D) -> Polygon2D {
        polygon_join(a, b)
    }
    fn meet(&self, a: &Polygon2D, b: &Polygon2D) -> Polygon2D {
        polygon_intersect(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("variable {0:?} has no value")]
    Unbound(String),
}

pub fn eval_term<O: LatticeOps>(
    t: &LatticeTerm,
    assignment: &BTreeMap<String, O::Value>,
    ops: &O,
) -> Result<O::Value, IdentityError> {
    Ok(match t {
        LatticeTerm::Var(v) => assignment.get(v).cloned().ok_or_else(|| IdentityError::Unbound(v.clone()))?,
        LatticeTerm::Join(a, b) => ops.join(&eval_term(a, assignment, ops)?, &eval_term(b, assignment, ops)?),
        LatticeTerm::Meet(a, b) => ops.meet(&eval_term(a, assignment, ops)?, &eval_term(b, assignment, ops)?),
    })
}

pub const STAR_VARIABLES: [&str; 7] = ["x", "a0", "a1", "b0", "b1", "c0", "c1"];

fn v(name: &str) -> LatticeTerm {
    LatticeTerm::var(name)
}

fn indexed(letter: char, i: usize) -> LatticeTerm {
    v(&format!("{letter}{i}"))
}

/// `x′ = x ∧ (a0 ∨ a1) ∧ (b0 ∨ b1) ∧ (c0 ∨ c1)`.
pub fn x_prime() -> LatticeTerm {
    LatticeTerm::meet_all([
        v("x"),
        LatticeTerm::join(v("a0"), v("a1")),
        LatticeTerm::join(v("b0"), v("b1")),
        LatticeTerm::join(v("c0"), v("c1")),
    ])
}

/// `a_{ijk} = a_{1−i} ∨ ((a_i ∨ x′) ∧ (b_j ∨ c_k))`.
pub fn a_term(i: usize, j: usize, k: usize) -> LatticeTerm {
    LatticeTerm::join(
        indexed('a', 1 - i),
        LatticeTerm::meet(
            LatticeTerm::join(indexed('a', i), x_prime()),
            LatticeTerm::join(indexed('b', j), indexed('c', k)),
        ),
    )
}

/// `b_{ijk} = b_{1−j} ∨ ((b_j ∨ x′) ∧ (a_i ∨ c_k))`.
pub fn b_term(i: usize, j: usize, k: usize) -> LatticeTerm {
    LatticeTerm::join(
        indexed('b', 1 - j),
        LatticeTerm::meet(
            LatticeTerm::join(indexed('b', j), x_prime()),
            LatticeTerm::join(indexed('a', i), indexed('c', k)),
        ),
    )
}

/// Left and right sides of the identity; the right side is a join of 16 meets.
pub fn star_identity_sides() -> (LatticeTerm, LatticeTerm) {
    let mut joinands = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                joinands.push(LatticeTerm::meet(x_prime(), a_term(i, j, k)));
                joinands.push(LatticeTerm::meet(x_prime(), b_term(i, j, k)));
            }
        }
    }
    (x_prime(), LatticeTerm::join_all(joinands))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarOutcome<V> {
    pub holds: bool,
    pub lhs: V,
    pub rhs: V,
}

/// Evaluates both sides. Common subterms are shared by evaluating `x′`,
/// `a_{ijk}` and `b_{ijk}` once each, which agrees with [`eval_term`] on
/// the terms of [`star_identity_sides`].
pub fn check_star_identity<O: LatticeOps>(
    ops: &O,
    assignment: &BTreeMap<String, O::Value>,
) -> Result<StarOutcome<O::Value>, IdentityError> {
    let get = |name: &str| assignment.get(name).cloned().ok_or_else(|| IdentityError::Unbound(name.into()));
    let a = [get("a0")?, get("a1")?];
    let b = [get("b0")?, get("b1")?];
    let c = [get("c0")?, get("c1")?];
    let x = get("x")?;
    let xp = ops.meet(&ops.meet(&ops.meet(&x, &ops.join(&a[0], &a[1])), &ops.join(&b[0], &b[1])), &ops.join(&c[0], &c[1]));
    let mut rhs: Option<O::Value> = None;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let aijk = ops.join(&a[1 - i], &ops.meet(&ops.join(&a[i], &xp), &ops.join(&b[j], &c[k])));
                let bijk = ops.join(&b[1 - j], &ops.meet(&ops.join(&b[j], &xp), &ops.join(&a[i], &c[k])));
                for part in [ops.meet(&xp, &aijk), ops.meet(&xp, &bijk)] {
                    rhs = Some(match rhs {
                        None => part,
                        Some(acc) => ops.join(&acc, &part),
                    });
                }
            }
        }
    }
    let rhs = rhs.expect("sixteen joinands");
    Ok(StarOutcome { holds: xp == rhs, lhs: xp, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::corpus;

    #[test]
    fn structure_of_the_sides() {
        let (lhs, rhs) = star_identity_sides();
        assert_eq!(lhs, x_prime());
        assert_eq!(rhs.joinands().len(), 16);
        let expected: BTreeSet<String> = STAR_VARIABLES.iter().map(|s| s.to_string()).collect();
        assert_eq!(lhs.variables(), expected);
        assert_eq!(rhs.variables(), expected);
    }

    #[test]
    fn evaluation_basics() {
        let l = corpus::n5();
        let mut asg = BTreeMap::new();
        asg.insert("x".to_string(), l.elem("a").unwrap());
        asg.insert("y".to_string(), l.elem("b").unwrap());
        let xy = LatticeTerm::join(v("x"), v("y"));
        assert_eq!(eval_term(&xy, &asg, &l).unwrap(), l.top());
        let xx = LatticeTerm::join(v("x"), v("x"));
        assert_eq!(eval_term(&xx, &asg, &l).unwrap(), l.elem("a").unwrap());
        assert_eq!(eval_term(&v("z"), &asg, &l), Err(IdentityError::Unbound("z".into())));
    }

    #[test]
    fn constant_assignment_satisfies_the_identity() {
        let l = corpus::n5();
        for val in l.elements() {
            let asg: BTreeMap<String, Elem> = STAR_VARIABLES.iter().map(|s| (s.to_string(), val)).collect();
            let out = check_star_identity(&l, &asg).unwrap();
            assert!(out.holds && out.lhs == val && out.rhs == val);
            let (lhs, rhs) = star_identity_sides();
            assert_eq!(eval_term(&lhs, &asg, &l).unwrap(), val);
            assert_eq!(eval_term(&rhs, &asg, &l).unwrap(), val);
        }
    }

    #[test]
    fn shared_evaluation_matches_terms() {
        let l = corpus::boolean(3);
        let (lhs, rhs) = star_identity_sides();
        let elems: Vec<Elem> = l.elements().collect();
        for seed in 0..40usize {
            let asg: BTreeMap<String, Elem> = STAR_VARIABLES
                .iter()
                .enumerate()
                .map(|(i, s)| (s.to_string(), elems[(seed * 7 + i * i * 3 + seed / 3 * i) % elems.len()]))
                .collect();
            let out = check_star_identity(&l, &asg).unwrap();
            assert_eq!(out.lhs, eval_term(&lhs, &asg, &l).unwrap());
            assert_eq!(out.rhs, eval_term(&rhs, &asg, &l).unwrap());
        }
    }
}
