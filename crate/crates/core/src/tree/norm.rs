//! Lattice-valued norms `e : T → L⁻` and their checker.

use serde::{Deserialize, Serialize};

use super::ColoredTree;
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norm(Vec<Elem>);

impl Norm {
    pub fn new(values: Vec<Elem>) -> Self {
        Norm(values)
    }

    pub fn value(&self, p: usize) -> Elem {
        self.0[p]
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn set(&mut self, p: usize, v: Elem) {
        self.0[p] = v;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormViolation {
    /// `e(p)` is the zero of L.
    ZeroValue { node: String },
    /// Condition (i): `e[I]` is not a nontrivial join-cover of `e(p)`.
    NotNontrivialCover { parent: String, members: Vec<String>, image: Vec<String> },
    /// Condition (ii): no class `I ∈ M_T(p)` has `e[I] ≪ cover`.
    NoRefiningClass { node: String, cover: Vec<String> },
    /// Fullness: `element` is not the join of the norm values below it.
    NotFull { element: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormReport {
    pub condition_i: bool,
    pub condition_ii: bool,
    pub full: bool,
    pub violations: Vec<NormViolation>,
}

impl NormReport {
    pub fn is_norm(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

/// Checks both norm conditions and fullness exhaustively.
///
/// Condition (ii) is checked against every antichain nontrivial join-cover of
/// each `e(p)`; any other cover contains one of those, so this is the full check.
pub fn norm_check(t: &ColoredTree, e: &Norm, l: &FiniteLattice) -> NormReport {
    let mut violations = Vec::new();
    let names = |xs: &[Elem]| l.names_of(xs);

    let mut zero_ok = true;
    for p in 0..t.len() {
        if e.value(p) == l.bottom() {
            zero_ok = false;
            violations.push(NormViolation::ZeroValue { node: t.id(p).to_string() });
        }
    }

    let mut condition_i = zero_ok;
    for pair in t.mt_pairs() {
        let mut image: Vec<Elem> = pair.members.iter().map(|&q| e.value(q)).collect();
        image.sort();
        image.dedup();
        if !l.is_nontrivial_join_cover(e.value(pair.parent), &image) {
            condition_i = false;
            violations.push(NormViolation::NotNontrivialCover {
                parent: t.id(pair.parent).to_string(),
                members: pair.members.iter().map(|&q| t.id(q).to_string()).collect(),
                image: names(&image),
            });
        }
    }

    let mut condition_ii = zero_ok;
    for p in 0..t.len() {
        let images: Vec<Vec<Elem>> = t
            .mt_of(p)
            .map(|m| m.members.iter().map(|&q| e.value(q)).collect())
            .collect();
        for cover in l.nontrivial_join_covers(e.value(p)) {
            if !images.iter().any(|img| l.refines(img, &cover.cover)) {
                condition_ii = false;
                violations.push(NormViolation::NoRefiningClass {
                    node: t.id(p).to_string(),
                    cover: names(&cover.cover),
                });
            }
        }
    }

    let mut full = true;
    for x in l.elements() {
        let below = (0..t.len()).map(|p| e.value(p)).filter(|&v| l.leq(v, x));
        if l.join_all(below) != x {
            full = false;
            violations.push(NormViolation::NotFull { element: l.name(x).to_string() });
        }
    }

    NormReport { condition_i, condition_ii, full, violations }
}
