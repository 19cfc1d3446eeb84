//! Join-cover analysis: nontrivial and minimal join-covers, the D relation,
//! and the D-cycle test for lower boundedness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteLattice};

/// A nontrivial join-cover `cover` of `base`, stored as a sorted antichain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JoinCover {
    pub base: Elem,
    pub cover: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundedness {
    pub lower_bounded: bool,
    /// `a_0 D a_1 D … D a_{k-1} D a_0` when a cycle exists.
    pub cycle: Option<Vec<Elem>>,
}

impl FiniteLattice {
    /// Is `xs` a nontrivial join-cover of `a` (literal definition, no reduction)?
    pub fn is_nontrivial_join_cover(&self, a: Elem, xs: &[Elem]) -> bool {
        a != self.bottom
            && xs.iter().all(|&x| x != self.bottom && !self.leq(a, x))
            && self.leq(a, self.join_all(xs.iter().copied()))
    }

    /// All nontrivial join-covers of `a` that are antichains, in lexicographic order.
    ///
    /// Every nontrivial join-cover contains one of these with the same join, so
    /// nothing is lost for refinement questions.
    pub fn nontrivial_join_covers(&self, a: Elem) -> Vec<JoinCover> {
        if a == self.bottom {
            return Vec::new();
        }
        let candidates: Vec<Elem> = self.nonzero().filter(|&x| !self.leq(a, x)).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.antichain_covers(a, &candidates, 0, &mut chosen, self.bottom, &mut out);
        out.sort();
        out
    }

    fn antichain_covers(
        &self,
        a: Elem,
        candidates: &[Elem],
        start: usize,
        chosen: &mut Vec<Elem>,
        joined: Elem,
        out: &mut Vec<JoinCover>,
    ) {
        if !chosen.is_empty() && self.leq(a, joined) {
            out.push(JoinCover { base: a, cover: chosen.clone() });
        }
        for i in start..candidates.len() {
            let c = candidates[i];
            if chosen.iter().any(|&x| self.leq(x, c) || self.leq(c, x)) {
                continue;
            }
            chosen.push(c);
            self.antichain_covers(a, candidates, i + 1, chosen, self.join(joined, c), out);
            chosen.pop();
        }
    }

    /// Nontrivial join-covers `X` of `a` such that `Y ≪ X` forces `X ⊆ Y`
    /// for every nontrivial join-cover `Y` of `a`.
    pub fn minimal_nontrivial_join_covers(&self, a: Elem) -> Vec<JoinCover> {
        let all = self.nontrivial_join_covers(a);
        all.iter()
            .filter(|x| {
                all.iter().all(|y| {
                    !self.refines(&y.cover, &x.cover) || x.cover.iter().all(|e| y.cover.contains(e))
                })
            })
            .cloned()
            .collect()
    }

    /// `(a, b)` with `b` in some minimal nontrivial join-cover of `a`, for `a, b ∈ J(L)`.
    pub fn d_relation(&self) -> Vec<(Elem, Elem)> {
        let mut pairs = Vec::new();
        for a in self.join_irreducibles() {
            let mut targets: Vec<Elem> = self
                .minimal_nontrivial_join_covers(a)
                .into_iter()
                .flat_map(|c| c.cover)
                .collect();
            targets.sort();
            targets.dedup();
            pairs.extend(targets.into_iter().map(|b| (a, b)));
        }
        pairs
    }

    pub fn lower_boundedness(&self) -> LowerBoundedness {
        let cycle = find_cycle(self.len(), &self.d_relation());
        LowerBoundedness { lower_bounded: cycle.is_none(), cycle }
    }

    pub fn is_lower_bounded(&self) -> bool {
        self.lower_boundedness().lower_bounded
    }

    pub fn report(&self) -> LatticeReport {
        let lb = self.lower_boundedness();
        let mut minimal_covers = BTreeMap::new();
        for a in self.nonzero() {
            let covers: Vec<Vec<String>> = self
                .minimal_nontrivial_join_covers(a)
                .iter()
                .map(|c| self.names_of(&c.cover))
                .collect();
            minimal_covers.insert(self.name(a).to_string(), covers);
        }
        LatticeReport {
            elements: self.names().to_vec(),
            bottom: self.name(self.bottom()).to_string(),
            top: self.name(self.top()).to_string(),
            join_irreducibles: self.names_of(&self.join_irreducibles()),
            minimal_covers,
            d_relation: self
                .d_relation()
                .into_iter()
                .map(|(a, b)| [self.name(a).to_string(), self.name(b).to_string()])
                .collect(),
            lower_bounded: lb.lower_bounded,
            d_cycle: lb.cycle.map(|c| self.names_of(&c)),
            join_semidistributive: self.is_join_semidistributive(),
            jsd_witness: self
                .join_semidistributivity_witness()
                .map(|(x, y, z)| self.names_of(&[x, y, z])),
        }
    }
}

/// Summary emitted by `lattice-info`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub elements: Vec<String>,
    pub bottom: String,
    pub top: String,
    pub join_irreducibles: Vec<String>,
    pub minimal_covers: BTreeMap<String, Vec<Vec<String>>>,
    pub d_relation: Vec<[String; 2]>,
    pub lower_bounded: bool,
    pub d_cycle: Option<Vec<String>>,
    pub join_semidistributive: bool,
    pub jsd_witness: Option<Vec<String>>,
}

/// First directed cycle (by DFS from the smallest vertex) in a graph on `0..n`.
pub(crate) fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &w in &adj[v] {
            if state[w] == 1 {
                let start = stack.iter().position(|&s| s == w).expect("on stack");
                return Some(stack[start..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, adj, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, &adj, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}
