//! Elements of the positive cone of the free space on a tree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RewriteError;
use crate::arith::Rational;
use crate::tree::{ColoredTree, NodeId};

/// Finitely supported map node → positive rational; absent nodes are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosVector {
    entries: BTreeMap<NodeId, Rational>,
}

/// JSON form: node id → rational string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PosVectorJson(pub BTreeMap<String, Rational>);

impl PosVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector ṗ.
    pub fn basis(p: NodeId) -> Self {
        Self::scaled_basis(p, Rational::one())
    }

    /// λṗ.
    pub fn scaled_basis(p: NodeId, lambda: Rational) -> Self {
        let mut v = Self::zero();
        v.add_at(p, &lambda);
        v
    }

    /// Rejects negative coefficients; zeros are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (NodeId, Rational)>) -> Result<Self, RewriteError> {
        let mut v = Self::zero();
        for (p, c) in entries {
            if c.is_negative() {
                return Err(RewriteError::Negative(p));
            }
            v.add_at(p, &c);
        }
        Ok(v)
    }

    pub fn get(&self, p: NodeId) -> Rational {
        self.entries.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (NodeId, &Rational)> + '_ {
        self.entries.iter().map(|(&p, c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of coefficients.
    pub fn mass(&self) -> Rational {
        self.entries.values().sum()
    }

    /// Adds `delta` (possibly negative) at `p`. The caller keeps the result nonnegative.
    pub(crate) fn add_at(&mut self, p: NodeId, delta: &Rational) {
        let c = self.entries.entry(p).or_insert_with(Rational::zero);
        *c += delta;
        if c.is_zero() {
            self.entries.remove(&p);
        }
    }

    pub fn add(&self, other: &PosVector) -> PosVector {
        let mut out = self.clone();
        for (p, c) in other.entries() {
            out.add_at(p, c);
        }
        out
    }

    /// `self - other` when it stays in the positive cone.
    pub fn checked_sub(&self, other: &PosVector) -> Option<PosVector> {
        let mut out = self.clone();
        for (p, c) in other.entries() {
            if out.get(p) < *c {
                return None;
            }
            out.add_at(p, &-c);
        }
        Some(out)
    }

    pub fn scale(&self, lambda: &Rational) -> PosVector {
        assert!(!lambda.is_negative(), "scaling leaves the positive cone");
        if lambda.is_zero() {
            return Self::zero();
        }
        PosVector { entries: self.entries.iter().map(|(&p, c)| (p, c * lambda)).collect() }
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &PosVector) -> bool {
        self.entries().all(|(p, c)| *c <= other.get(p))
    }

    pub fn to_json(&self, t: &ColoredTree) -> PosVectorJson {
        PosVectorJson(self.entries().map(|(p, c)| (t.id(p).to_string(), c.clone())).collect())
    }

    pub fn from_json(t: &ColoredTree, json: &PosVectorJson) -> Result<Self, RewriteError> {
        let mut entries = Vec::new();
        for (id, c) in &json.0 {
            let p = t.lookup(id).ok_or_else(|| RewriteError::UnknownNode(id.clone()))?;
            entries.push((p, c.clone()));
        }
        Self::from_entries(entries)
    }

    /// Dense coefficient list indexed by node.
    pub fn dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (p, c) in self.entries() {
            out[p] = c.clone();
        }
        out
    }
}
