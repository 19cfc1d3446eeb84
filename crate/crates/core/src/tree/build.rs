//! Trees of join-cover sequences `⟨a_0, I_0, a_1, …, a_m⟩`.

use std::collections::HashMap;

use super::{ColoredTree, NodeSpec, Norm, TreeError};
use crate::lattice::{Elem, FiniteLattice};

pub const DEFAULT_MAX_HEIGHT: usize = 4;

const NODE_LIMIT: usize = 200_000;

/// `elems = [a_0, …, a_m]`, `covers = [I_0, …, I_{m-1}]` with `a_{k+1} ∈ I_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence {
    pub elems: Vec<Elem>,
    pub covers: Vec<Vec<Elem>>,
}

impl Sequence {
    pub fn root(a: Elem) -> Self {
        Sequence { elems: vec![a], covers: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.covers.len()
    }

    pub fn last(&self) -> Elem {
        *self.elems.last().expect("sequences are nonempty")
    }

    pub fn extend(&self, cover: &[Elem], x: Elem) -> Self {
        let mut next = self.clone();
        next.covers.push(cover.to_vec());
        next.elems.push(x);
        next
    }
}

/// Canonical id `a_0|{x,y}|a_1|…` with cover members in name order.
pub fn encode_id(l: &FiniteLattice, seq: &Sequence) -> String {
    let mut out = l.name(seq.elems[0]).to_string();
    for (cover, &a) in seq.covers.iter().zip(&seq.elems[1..]) {
        let mut names: Vec<&str> = cover.iter().map(|&x| l.name(x)).collect();
        names.sort();
        out.push_str("|{");
        out.push_str(&names.join(","));
        out.push_str("}|");
        out.push_str(l.name(a));
    }
    out
}

pub fn decode_id(l: &FiniteLattice, id: &str) -> Result<Sequence, TreeError> {
    let bad = |why: &str| TreeError::BadId(id.to_string(), why.to_string());
    let elem = |name: &str| l.elem(name).ok_or_else(|| bad(&format!("unknown element {name:?}")));
    let parts: Vec<&str> = id.split('|').collect();
    if parts.len().is_multiple_of(2) {
        return Err(bad("expected an odd number of |-separated parts"));
    }
    let mut seq = Sequence::root(elem(parts[0])?);
    for pair in parts[1..].chunks(2) {
        let inner = pair[0]
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| bad("cover must be braced"))?;
        let mut cover = inner.split(',').map(elem).collect::<Result<Vec<_>, _>>()?;
        cover.sort();
        let x = elem(pair[1])?;
        if !cover.contains(&x) {
            return Err(bad("element is not a member of the preceding cover"));
        }
        seq = seq.extend(&cover, x);
    }
    Ok(seq)
}

/// Expands sequences breadth-first. `covers_of` lists the covers used at an element;
/// expansion stops at `max_height` (when given). Returns the tree, its norm and
/// whether some node at the height limit could still be extended.
fn expand(
    l: &FiniteLattice,
    roots: Vec<Elem>,
    covers_of: impl Fn(Elem) -> Vec<Vec<Elem>>,
    max_height: Option<usize>,
) -> Result<(ColoredTree, Norm), TreeError> {
    let mut cache: HashMap<Elem, Vec<Vec<Elem>>> = HashMap::new();
    let mut covers = |a: Elem| cache.entry(a).or_insert_with(|| covers_of(a)).clone();
    let mut specs = Vec::new();
    let mut values = Vec::new();
    let mut frontier: Vec<(Sequence, String)> = Vec::new();
    for a in roots {
        let seq = Sequence::root(a);
        let id = encode_id(l, &seq);
        specs.push(NodeSpec { id: id.clone(), parent: None, class: String::new() });
        values.push((id.clone(), a));
        frontier.push((seq, id));
    }
    let mut truncated = false;
    while let Some((seq, id)) = frontier.pop() {
        let here = covers(seq.last());
        if max_height.is_some_and(|h| seq.height() >= h) {
            truncated |= !here.is_empty();
            continue;
        }
        for cover in here {
            let class = format!("{id}|{}", encode_cover(l, &cover));
            for &x in &cover {
                let child = seq.extend(&cover, x);
                let child_id = encode_id(l, &child);
                specs.push(NodeSpec { id: child_id.clone(), parent: Some(id.clone()), class: class.clone() });
                values.push((child_id.clone(), x));
                frontier.push((child, child_id));
            }
            if specs.len() > NODE_LIMIT {
                return Err(TreeError::TooLarge(NODE_LIMIT));
            }
        }
    }
    let tree = ColoredTree::new(specs, !truncated)?;
    let mut e = vec![0; tree.len()];
    for (id, v) in values {
        e[tree.lookup(&id).expect("built node")] = v;
    }
    Ok((tree, Norm::new(e)))
}

fn encode_cover(l: &FiniteLattice, cover: &[Elem]) -> String {
    let mut names: Vec<&str> = cover.iter().map(|&x| l.name(x)).collect();
    names.sort();
    format!("{{{}}}", names.join(","))
}

/// The finite tree of a lower bounded lattice: minimal nodes `⟨j⟩` for
/// `j ∈ J(L)`, children along every minimal nontrivial join-cover.
pub fn build_tree_lb(l: &FiniteLattice) -> Result<(ColoredTree, Norm), TreeError> {
    let lb = l.lower_boundedness();
    if let Some(cycle) = lb.cycle {
        return Err(TreeError::NotLowerBounded(l.names_of(&cycle)));
    }
    expand(
        l,
        l.join_irreducibles(),
        |a| l.minimal_nontrivial_join_covers(a).into_iter().map(|c| c.cover).collect(),
        None,
    )
}

/// All sequences over L⁻ with arbitrary (antichain) nontrivial join-covers,
/// truncated at `max_height`.
pub fn build_tree_general(l: &FiniteLattice, max_height: usize) -> Result<(ColoredTree, Norm), TreeError> {
    expand(
        l,
        l.nonzero().collect(),
        |a| l.nontrivial_join_covers(a).into_iter().map(|c| c.cover).collect(),
        Some(max_height),
    )
}
