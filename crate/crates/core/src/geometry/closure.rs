//! Closed sets of `Co(Qⁿ, Ω)`: traces `conv(X) ∩ Ω`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::lattice::covers::find_cycle;
use crate::lattice::FiniteLattice;

use super::hull::in_hull;
use super::lp::feasible_point;
use super::polygon::{polygon_hull, Point2};
use super::{GeometryError, PointConfig};

/// Largest configuration for which closed sets are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// A closed subset of a configuration, as sorted point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClosedSet {
    members: Vec<usize>,
}

impl ClosedSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &ClosedSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    /// Wraps an index set without closing it; use [`closure`] when closedness
    /// is not already known.
    pub fn from_indices(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        ClosedSet { members }
    }

    fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    fn from_mask(mask: u64) -> Self {
        ClosedSet { members: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
    }
}

fn planar(cfg: &PointConfig, i: usize) -> Point2 {
    let p = cfg.point(i);
    match cfg.dim() {
        1 => [p[0].clone(), Rational::zero()],
        _ => [p[0].clone(), p[1].clone()],
    }
}

/// `{i : pᵢ ∈ conv(X)}`.
///
/// # Panics
/// If `xs` contains an index outside the configuration.
pub fn closure(cfg: &PointConfig, xs: &[usize]) -> ClosedSet {
    cfg.check_indices(xs).expect("closure of foreign indices");
    let mut base: Vec<usize> = xs.to_vec();
    base.sort_unstable();
    base.dedup();
    if base.len() <= 1 || cfg.dim() == 0 {
        return ClosedSet { members: base };
    }
    if cfg.dim() <= 2 {
        let poly = polygon_hull(&base.iter().map(|&i| planar(cfg, i)).collect::<Vec<_>>());
        let members = (0..cfg.len()).filter(|&i| poly.contains(&planar(cfg, i))).collect();
        return ClosedSet { members };
    }
    closure_lp(cfg, &base)
}

/// Closure by one hull test per point, in any dimension.
pub(crate) fn closure_lp(cfg: &PointConfig, base: &[usize]) -> ClosedSet {
    let s = cfg.subset(base);
    let members = (0..cfg.len())
        .filter(|&i| base.binary_search(&i).is_ok() || in_hull(cfg.point(i), &s).is_some())
        .collect();
    ClosedSet { members }
}

pub fn join(cfg: &PointConfig, x: &ClosedSet, y: &ClosedSet) -> ClosedSet {
    let union: Vec<usize> = x.members.iter().chain(&y.members).copied().collect();
    closure(cfg, &union)
}

pub fn meet(x: &ClosedSet, y: &ClosedSet) -> ClosedSet {
    ClosedSet { members: x.members.iter().copied().filter(|&i| y.contains(i)).collect() }
}

fn check_size(cfg: &PointConfig) -> Result<(), GeometryError> {
    if cfg.len() > EXHAUSTIVE_LIMIT {
        return Err(GeometryError::TooLarge { size: cfg.len(), limit: EXHAUSTIVE_LIMIT });
    }
    Ok(())
}

/// Every closed set, ordered by size and then lexicographically.
pub fn closed_sets(cfg: &PointConfig) -> Result<Vec<ClosedSet>, GeometryError> {
    check_size(cfg)?;
    let start = closure(cfg, &[]).mask();
    let mut seen: HashSet<u64> = HashSet::from([start]);
    let mut frontier = vec![start];
    while let Some(m) = frontier.pop() {
        for i in 0..cfg.len() {
            if m >> i & 1 == 0 {
                let mut xs = ClosedSet::from_mask(m).members;
                xs.push(i);
                let c = closure(cfg, &xs).mask();
                if seen.insert(c) {
                    frontier.push(c);
                }
            }
        }
    }
    let mut sets: Vec<ClosedSet> = seen.into_iter().map(ClosedSet::from_mask).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(sets)
}

fn set_name(s: &ClosedSet) -> String {
    if s.is_empty() {
        "e".to_string()
    } else {
        let parts: Vec<String> = s.members.iter().map(|i| i.to_string()).collect();
        format!("p{}", parts.join("."))
    }
}

/// The closure lattice as a [`FiniteLattice`], with `sets[x]` the closed set
/// behind element `x`.
pub fn closure_lattice(cfg: &PointConfig) -> Result<(FiniteLattice, Vec<ClosedSet>), GeometryError> {
    let sets = closed_sets(cfg)?;
    let masks: Vec<u64> = sets.iter().map(ClosedSet::mask).collect();
    let leq = masks.iter().map(|&a| masks.iter().map(|&b| a & !b == 0).collect()).collect();
    let names = sets.iter().map(set_name).collect();
    let l = FiniteLattice::from_order(names, leq).expect("closed sets form a lattice");
    let by_elem = l
        .elements()
        .map(|x| {
            let i = sets.iter().position(|s| set_name(s) == l.name(x)).expect("named set");
            sets[i].clone()
        })
        .collect();
    Ok((l, by_elem))
}

/// Join-irreducible closed sets, found by brute force: `X` qualifies when the
/// join of all strictly smaller closed sets is not `X`.
///
/// # Panics
/// If the result differs from the set of singletons, which would contradict
/// the theory of convex geometries.
pub fn join_irreducibles_geometry(cfg: &PointConfig) -> Result<Vec<ClosedSet>, GeometryError> {
    let sets = closed_sets(cfg)?;
    let masks: Vec<u64> = sets.iter().map(ClosedSet::mask).collect();
    let mut out = Vec::new();
    for (s, &m) in sets.iter().zip(&masks) {
        if m == 0 {
            continue;
        }
        let below = masks.iter().filter(|&&o| o != m && o & !m == 0).fold(0u64, |acc, &o| acc | o);
        if closure(cfg, &ClosedSet::from_mask(below).members).mask() != m {
            out.push(s.clone());
        }
    }
    let singletons: Vec<ClosedSet> = (0..cfg.len()).map(|i| ClosedSet { members: vec![i] }).collect();
    let mut sorted = out.clone();
    sorted.sort();
    assert_eq!(sorted, singletons, "join-irreducibles of a closure lattice must be the singletons");
    Ok(out)
}

/// D-relation on points: `(p, q)` whenever `q` lies in an inclusion-minimal
/// `Y ⊆ Ω ∖ {p}` with `p ∈ conv(Y)`. Exhaustive over subsets.
pub fn d_relation_geometry(cfg: &PointConfig) -> Result<Vec<(usize, usize)>, GeometryError> {
    check_size(cfg)?;
    let n = cfg.len();
    let mut pairs = BTreeSet::new();
    for p in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        // A minimal carrier is affinely independent, so its size is at most dim + 1.
        let max_size = others.len().min(cfg.dim() + 1);
        let mut minimal: Vec<u64> = Vec::new();
        for size in 2..=max_size {
            for combo in combinations(&others, size) {
                let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
                if minimal.iter().any(|&f| f & !mask == 0) {
                    continue;
                }
                if in_hull(cfg.point(p), &cfg.subset(&combo)).is_some() {
                    minimal.push(mask);
                    pairs.extend(combo.iter().map(|&q| (p, q)));
                }
            }
        }
    }
    Ok(pairs.into_iter().collect())
}

/// The same relation decided by one feasibility problem per pair: `p D q`
/// iff some convex representation of `p` by `Ω ∖ {p}` gives `q` positive
/// weight, since such a representation can be taken at a vertex of the
/// representation polytope, whose support is a minimal carrier.
pub fn d_relation_geometry_lp(cfg: &PointConfig) -> Vec<(usize, usize)> {
    let n = cfg.len();
    let dim = cfg.dim();
    let mut pairs = Vec::new();
    for p in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        if in_hull(cfg.point(p), &cfg.subset(&others)).is_none() {
            continue;
        }
        for (k, &qi) in others.iter().enumerate() {
            // Unknowns μ (one per other point) and t; Σ μᵢ sᵢ = t p, Σ μᵢ = t, μ_q = 1.
            let width = others.len() + 1;
            let mut a = Vec::with_capacity(dim + 2);
            let mut b = Vec::with_capacity(dim + 2);
            for d in 0..dim {
                let mut row: Vec<Rational> = others.iter().map(|&i| cfg.point(i)[d].clone()).collect();
                row.push(-&cfg.point(p)[d]);
                a.push(row);
                b.push(Rational::zero());
            }
            let mut sum = vec![Rational::one(); width];
            sum[width - 1] = -Rational::one();
            a.push(sum);
            b.push(Rational::zero());
            let mut fix = vec![Rational::zero(); width];
            fix[k] = Rational::one();
            a.push(fix);
            b.push(Rational::one());
            if feasible_point(&a, &b).is_some() {
                pairs.push((p, qi));
            }
        }
    }
    pairs
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricLowerBoundedness {
    pub lower_bounded: bool,
    pub d_relation: Vec<(usize, usize)>,
    pub cycle: Option<Vec<usize>>,
}

/// Lower boundedness of `Co(Qⁿ, Ω)` via acyclicity of the point D-relation.
pub fn is_lower_bounded_geometry(cfg: &PointConfig) -> Result<GeometricLowerBoundedness, GeometryError> {
    let d = d_relation_geometry(cfg)?;
    let cycle = find_cycle(cfg.len(), &d);
    Ok(GeometricLowerBoundedness { lower_bounded: cycle.is_none(), d_relation: d, cycle })
}
