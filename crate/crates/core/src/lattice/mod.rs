//! Finite lattices given by generating order pairs.
//!
//! Elements are addressed by dense indices (`Elem`). Indices follow the
//! lexicographic order of element names, so every enumeration over elements
//! is in canonical order.

pub(crate) mod covers;
pub mod corpus;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use covers::{JoinCover, LatticeReport, LowerBoundedness};

pub type Elem = usize;

/// Characters reserved by the canonical tree-node encoding.
const RESERVED: [char; 4] = ['|', '{', '}', ','];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("element name {0:?} is empty or contains one of | {{ }} ,")]
    InvalidName(String),
    #[error("cover pair mentions unknown element {0:?}")]
    UnknownElement(String),
    #[error("cycle in cover pairs through {0:?} and {1:?}: not a poset")]
    Cycle(String, String),
    #[error("missing join of {0:?} and {1:?}: not a lattice")]
    MissingJoin(String, String),
    #[error("missing meet of {0:?} and {1:?}: not a lattice")]
    MissingMeet(String, String),
    #[error("order matrix has wrong shape")]
    Shape,
}

/// The JSON input form: element ids plus `[lower, upper]` pairs whose
/// reflexive-transitive closure is the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<Elem>>,
    meet: Vec<Vec<Elem>>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    pub fn from_spec(spec: &LatticeSpec) -> Result<Self, LatticeError> {
        let mut names = spec.elements.clone();
        names.sort();
        let index = Self::index_names(&names)?;
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for pair in &spec.covers {
            let lo = *index
                .get(&pair[0])
                .ok_or_else(|| LatticeError::UnknownElement(pair[0].clone()))?;
            let hi = *index
                .get(&pair[1])
                .ok_or_else(|| LatticeError::UnknownElement(pair[1].clone()))?;
            if lo == hi {
                return Err(LatticeError::Cycle(pair[0].clone(), pair[1].clone()));
            }
            leq[lo][hi] = true;
        }
        Self::from_relation(names, index, leq)
    }

    /// Builds a lattice from an explicit order relation (closed transitively here).
    /// Names are re-sorted; `leq[i][j]` refers to the caller's `names[i]`, `names[j]`.
    pub fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Shape);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let sorted: Vec<String> = perm.iter().map(|&i| names[i].clone()).collect();
        let index = Self::index_names(&sorted)?;
        let mut rel = vec![vec![false; n]; n];
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                rel[i][j] = leq[pi][pj];
            }
        }
        Self::from_relation(sorted, index, rel)
    }

    fn index_names(names: &[String]) -> Result<HashMap<String, Elem>, LatticeError> {
        if names.is_empty() {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(RESERVED) {
                return Err(LatticeError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        Ok(index)
    }

    fn from_relation(
        names: Vec<String>,
        index: HashMap<String, Elem>,
        mut leq: Vec<Vec<bool>>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(LatticeError::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        let least = |cands: &[Elem]| cands.iter().copied().find(|&c| cands.iter().all(|&d| leq[c][d]));
        let greatest = |cands: &[Elem]| cands.iter().copied().find(|&c| cands.iter().all(|&d| leq[d][c]));
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let upper: Vec<Elem> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
                let j = least(&upper)
                    .ok_or_else(|| LatticeError::MissingJoin(names[a].clone(), names[b].clone()))?;
                let lower: Vec<Elem> = (0..n).filter(|&l| leq[l][a] && leq[l][b]).collect();
                let m = greatest(&lower)
                    .ok_or_else(|| LatticeError::MissingMeet(names[a].clone(), names[b].clone()))?;
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        let all: Vec<Elem> = (0..n).collect();
        // Pairwise joins and meets exist, so a finite lattice has both extremes.
        let bottom = least(&all).expect("finite lattice has a least element");
        let top = greatest(&all).expect("finite lattice has a greatest element");
        Ok(FiniteLattice { names, index, leq, join, meet, bottom, top })
    }

    /// Inverse of [`FiniteLattice::from_spec`]: elements plus the Hasse diagram.
    pub fn to_spec(&self) -> LatticeSpec {
        let mut covers = Vec::new();
        for a in self.elements() {
            for b in self.upper_covers(a) {
                covers.push([self.names[a].clone(), self.names[b].clone()]);
            }
        }
        LatticeSpec { elements: self.names.clone(), covers }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    /// The elements of L⁻ (everything except the zero).
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| x != self.bottom)
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a][b]
    }

    /// Join of a finite set; the empty join is the zero.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&y| self.lt(y, x) && !self.elements().any(|z| self.lt(y, z) && self.lt(z, x)))
            .collect()
    }

    pub fn upper_covers(&self, x: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&y| self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    /// J(L): elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.lower_covers(x).len() == 1).collect()
    }

    pub fn is_join_irreducible(&self, x: Elem) -> bool {
        self.lower_covers(x).len() == 1
    }

    /// `X ≪ Y`: every element of `X` lies below some element of `Y`.
    pub fn refines(&self, xs: &[Elem], ys: &[Elem]) -> bool {
        xs.iter().all(|&x| ys.iter().any(|&y| self.leq(x, y)))
    }

    /// Exhaustive check of x∨y = x∨z ⇒ x∨y = x∨(y∧z); returns the first failing triple.
    pub fn join_semidistributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let xy = self.join(x, y);
                    if xy == self.join(x, z) && xy != self.join(x, self.meet(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_join_semidistributive(&self) -> bool {
        self.join_semidistributivity_witness().is_none()
    }

    pub(crate) fn names_of(&self, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|&x| self.names[x].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::corpus;
    use super::*;

    fn spec(elements: &[&str], covers: &[(&str, &str)]) -> LatticeSpec {
        LatticeSpec {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
    }

    #[test]
    fn loads_n5() {
        let l = corpus::n5();
        assert_eq!(l.len(), 5);
        let (a, b, c) = (l.elem("a").unwrap(), l.elem("b").unwrap(), l.elem("c").unwrap());
        assert_eq!(l.name(l.bottom()), "0");
        assert_eq!(l.name(l.top()), "1");
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(c, b), l.bottom());
        assert_eq!(l.join(a, c), c);
    }

    #[test]
    fn exhaustive_table_check_n5() {
        // Independent check: joins are least upper bounds read off the order.
        let l = corpus::n5();
        for x in l.elements() {
            for y in l.elements() {
                let ubs: Vec<_> = l.elements().filter(|&u| l.leq(x, u) && l.leq(y, u)).collect();
                let j = l.join(x, y);
                assert!(ubs.contains(&j));
                assert!(ubs.iter().all(|&u| l.leq(j, u)));
            }
        }
    }

    #[test]
    fn one_element_lattice() {
        let l = FiniteLattice::from_spec(&spec(&["z"], &[])).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.join_irreducibles().is_empty());
    }

    #[test]
    fn rejects_missing_join() {
        // 0 < a, b < c, d: two maximal elements and no top.
        let s = spec(
            &["0", "a", "b", "c", "d", "e"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("0", "e"), ("e", "c")],
        );
        let err = FiniteLattice::from_spec(&s).unwrap_err();
        assert!(matches!(err, LatticeError::MissingJoin(..)), "{err}");
        assert!(err.to_string().contains("missing join"));
    }

    #[test]
    fn rejects_cycles_and_bad_input() {
        let s = spec(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(FiniteLattice::from_spec(&s), Err(LatticeError::Cycle(..))));
        let s = spec(&["a", "a"], &[]);
        assert!(matches!(FiniteLattice::from_spec(&s), Err(LatticeError::DuplicateName(_))));
        let s = spec(&["a"], &[("a", "q")]);
        assert!(matches!(FiniteLattice::from_spec(&s), Err(LatticeError::UnknownElement(_))));
        let s = spec(&["a|b"], &[]);
        assert!(matches!(FiniteLattice::from_spec(&s), Err(LatticeError::InvalidName(_))));
        assert!(matches!(FiniteLattice::from_spec(&spec(&[], &[])), Err(LatticeError::Empty)));
    }

    #[test]
    fn join_irreducible_examples() {
        let l = corpus::n5();
        assert_eq!(l.names_of(&l.join_irreducibles()), ["a", "b", "c"]);
        let l = corpus::chain(2);
        assert_eq!(l.names_of(&l.join_irreducibles()), ["1"]);
        let l = corpus::boolean(2);
        assert_eq!(l.join_irreducibles().len(), 2);
        assert!(!l.is_join_irreducible(l.top()));
    }

    #[test]
    fn refinement_examples() {
        let l = corpus::n5();
        let (a, b, c) = (l.elem("a").unwrap(), l.elem("b").unwrap(), l.elem("c").unwrap());
        assert!(l.refines(&[], &[a]));
        assert!(l.refines(&[a], &[c]));
        assert!(!l.refines(&[a, b], &[a]));
    }

    #[test]
    fn semidistributivity() {
        assert!(corpus::n5().is_join_semidistributive());
        assert!(corpus::boolean(2).is_join_semidistributive());
        let m3 = corpus::m3();
        let (x, y, z) = m3.join_semidistributivity_witness().unwrap();
        let atoms: Vec<_> = ["p", "q", "r"].iter().map(|n| m3.elem(n).unwrap()).collect();
        assert!(atoms.contains(&x) && atoms.contains(&y) && atoms.contains(&z));
        assert_eq!(m3.join(x, y), m3.join(x, z));
        assert_ne!(m3.join(x, y), m3.join(x, m3.meet(y, z)));
    }

    #[test]
    fn lattice_axioms_on_corpus() {
        for (name, l) in corpus::classifier_corpus() {
            for x in l.elements() {
                for y in l.elements() {
                    assert_eq!(l.join(x, y), l.join(y, x), "{name}");
                    assert_eq!(l.meet(x, y), l.meet(y, x), "{name}");
                    assert_eq!(l.join(x, l.meet(x, y)), x, "{name}");
                    assert_eq!(l.meet(x, l.join(x, y)), x, "{name}");
                    for z in l.elements() {
                        assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)), "{name}");
                        assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        for (_, l) in corpus::classifier_corpus() {
            let back = FiniteLattice::from_spec(&l.to_spec()).unwrap();
            assert_eq!(back, l);
        }
    }
}
