//! Colored trees and the trees of join-cover sequences built from a lattice.
//!
//! A [`ColoredTree`] is stored with its nodes sorted by canonical id, so node
//! indices double as the canonical enumeration order. Every non-minimal color
//! class is a set of at least two siblings; all minimal nodes of a built tree
//! share one class.

mod build;
mod norm;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice};

pub use build::{build_tree_general, build_tree_lb, decode_id, encode_id, Sequence, DEFAULT_MAX_HEIGHT};
pub use norm::{norm_check, Norm, NormReport, NormViolation};

pub type NodeId = usize;
pub type ClassId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("lattice is not lower bounded (D-cycle {0:?}); its tree would be infinite")]
    NotLowerBounded(Vec<String>),
    #[error("tree exceeds {0} nodes")]
    TooLarge(usize),
    #[error("duplicate node id {0:?}")]
    DuplicateId(String),
    #[error("unknown parent {parent:?} of node {node:?}")]
    UnknownParent { node: String, parent: String },
    #[error("parent links of {0:?} do not reach a minimal node")]
    NotATree(String),
    #[error("color class {0} mixes minimal and non-minimal nodes or nodes with different parents")]
    BadClass(ClassId),
    #[error("color class {0} of non-minimal nodes has fewer than two members")]
    SmallClass(ClassId),
    #[error("cannot decode node id {0:?}: {1}")]
    BadId(String, String),
    #[error("norm value {value:?} of node {node:?} is not an element of the lattice")]
    UnknownValue { node: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub id: String,
    pub parent: Option<NodeId>,
    pub height: usize,
    pub class: ClassId,
}

/// A pair `(p, I)` of M_T: a node and one color class of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtPair {
    pub parent: NodeId,
    pub class: ClassId,
    pub members: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTree {
    nodes: Vec<TreeNode>,
    classes: Vec<Vec<NodeId>>,
    mt: Vec<MtPair>,
    mt_by_parent: Vec<Vec<usize>>,
    index: HashMap<String, NodeId>,
    complete: bool,
}

/// One node of a tree given by ids, used to assemble arbitrary colored trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: String,
    pub parent: Option<String>,
    /// Color label; nodes with equal labels are equivalent.
    pub class: String,
}

impl ColoredTree {
    /// Assembles and validates a colored tree.
    pub fn new(specs: Vec<NodeSpec>, complete: bool) -> Result<Self, TreeError> {
        let mut specs = specs;
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::new();
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(TreeError::DuplicateId(s.id.clone()));
            }
        }
        let mut parents = Vec::with_capacity(specs.len());
        for s in &specs {
            let parent = match &s.parent {
                None => None,
                Some(p) => Some(*index.get(p).ok_or_else(|| TreeError::UnknownParent {
                    node: s.id.clone(),
                    parent: p.clone(),
                })?),
            };
            parents.push(parent);
        }
        let n = specs.len();
        let mut heights = vec![usize::MAX; n];
        for start in 0..n {
            let mut chain = vec![start];
            let mut cur = start;
            while heights[cur] == usize::MAX {
                match parents[cur] {
                    None => {
                        heights[cur] = 0;
                        break;
                    }
                    Some(p) => {
                        if chain.len() > n {
                            return Err(TreeError::NotATree(specs[start].id.clone()));
                        }
                        chain.push(p);
                        cur = p;
                    }
                }
            }
            let mut h = heights[cur];
            for &v in chain.iter().rev().skip(1) {
                h += 1;
                heights[v] = h;
            }
        }

        let mut label_to_class: BTreeMap<&str, ClassId> = BTreeMap::new();
        let mut node_class = Vec::with_capacity(n);
        let mut classes: Vec<Vec<NodeId>> = Vec::new();
        for (i, s) in specs.iter().enumerate() {
            let next = classes.len();
            let c = *label_to_class.entry(s.class.as_str()).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(i);
            node_class.push(c);
        }
        let mut mt = Vec::new();
        for (c, members) in classes.iter().enumerate() {
            let parent = parents[members[0]];
            if members.iter().any(|&m| parents[m] != parent) {
                return Err(TreeError::BadClass(c));
            }
            if let Some(p) = parent {
                if members.len() < 2 {
                    return Err(TreeError::SmallClass(c));
                }
                mt.push(MtPair { parent: p, class: c, members: members.clone() });
            }
        }
        mt.sort_by_key(|m| (m.parent, m.class));
        let mut mt_by_parent = vec![Vec::new(); n];
        for (k, pair) in mt.iter().enumerate() {
            mt_by_parent[pair.parent].push(k);
        }
        let nodes = specs
            .into_iter()
            .enumerate()
            .map(|(i, s)| TreeNode { id: s.id, parent: parents[i], height: heights[i], class: node_class[i] })
            .collect();
        Ok(ColoredTree { nodes, classes, mt, mt_by_parent, index, complete })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, p: NodeId) -> &TreeNode {
        &self.nodes[p]
    }

    pub fn id(&self, p: NodeId) -> &str {
        &self.nodes[p].id
    }

    pub fn lookup(&self, id: &str) -> Option<NodeId> {
        self.index.get(id).copied()
    }

    pub fn height(&self, p: NodeId) -> usize {
        self.nodes[p].height
    }

    pub fn parent(&self, p: NodeId) -> Option<NodeId> {
        self.nodes[p].parent
    }

    pub fn max_height(&self) -> usize {
        self.nodes.iter().map(|n| n.height).max().unwrap_or(0)
    }

    /// False when the tree was truncated before every branch was exhausted.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn classes(&self) -> &[Vec<NodeId>] {
        &self.classes
    }

    pub fn class_of(&self, p: NodeId) -> ClassId {
        self.nodes[p].class
    }

    pub fn mt_pairs(&self) -> &[MtPair] {
        &self.mt
    }

    /// M_T(p): the classes of children of `p`.
    pub fn mt_of(&self, p: NodeId) -> impl Iterator<Item = &MtPair> + '_ {
        self.mt_by_parent[p].iter().map(move |&k| &self.mt[k])
    }

    pub fn children(&self, p: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.mt_of(p).flat_map(|m| m.members.iter().copied())
    }

    /// Strict tree order `p ◁ q`: `p` is a proper ancestor of `q`.
    pub fn is_strict_ancestor(&self, p: NodeId, q: NodeId) -> bool {
        let mut cur = self.nodes[q].parent;
        while let Some(c) = cur {
            if c == p {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    /// Root-to-node chain `↓p`, starting at the minimal node.
    pub fn chain_to(&self, p: NodeId) -> Vec<NodeId> {
        let mut chain = vec![p];
        let mut cur = self.nodes[p].parent;
        while let Some(c) = cur {
            chain.push(c);
            cur = self.nodes[c].parent;
        }
        chain.reverse();
        chain
    }

    pub fn to_specs(&self) -> Vec<NodeSpec> {
        self.nodes
            .iter()
            .map(|n| NodeSpec {
                id: n.id.clone(),
                parent: n.parent.map(|p| self.nodes[p].id.clone()),
                class: n.class.to_string(),
            })
            .collect()
    }

    /// JSON export; `norm` values are rendered with `lattice` names when given.
    pub fn export(&self, norm: Option<(&Norm, &FiniteLattice)>) -> TreeExport {
        TreeExport {
            complete: self.complete,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| NodeExport {
                    id: n.id.clone(),
                    parent: n.parent.map(|p| self.nodes[p].id.clone()),
                    class: n.class,
                    height: n.height,
                    e: norm.map(|(e, l)| l.name(e.value(i)).to_string()),
                })
                .collect(),
            mt_pairs: self
                .mt
                .iter()
                .map(|m| MtExport {
                    parent: self.nodes[m.parent].id.clone(),
                    class: m.class,
                    members: m.members.iter().map(|&q| self.nodes[q].id.clone()).collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a tree (and its norm, when `lattice` is given and e-values are present).
    pub fn import(
        export: &TreeExport,
        lattice: Option<&FiniteLattice>,
    ) -> Result<(ColoredTree, Option<Norm>), TreeError> {
        let specs = export
            .nodes
            .iter()
            .map(|n| NodeSpec { id: n.id.clone(), parent: n.parent.clone(), class: n.class.to_string() })
            .collect();
        let tree = ColoredTree::new(specs, export.complete)?;
        let norm = match lattice {
            Some(l) if export.nodes.iter().all(|n| n.e.is_some()) => {
                let mut values = vec![0; tree.len()];
                for n in &export.nodes {
                    let name = n.e.as_deref().expect("checked");
                    let v: Elem = l
                        .elem(name)
                        .ok_or_else(|| TreeError::UnknownValue { node: n.id.clone(), value: name.into() })?;
                    values[tree.lookup(&n.id).expect("imported node")] = v;
                }
                Some(Norm::new(values))
            }
            _ => None,
        };
        Ok((tree, norm))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub complete: bool,
    pub nodes: Vec<NodeExport>,
    pub mt_pairs: Vec<MtExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeExport {
    pub id: String,
    pub parent: Option<String>,
    pub class: ClassId,
    pub height: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtExport {
    pub parent: String,
    pub class: ClassId,
    pub members: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str, parent: Option<&str>, class: &str) -> NodeSpec {
        NodeSpec { id: id.into(), parent: parent.map(Into::into), class: class.into() }
    }

    /// Minimal `r` with one class of children {q0, q1}.
    pub(crate) fn three_node() -> ColoredTree {
        ColoredTree::new(
            vec![spec("r", None, "root"), spec("q0", Some("r"), "c"), spec("q1", Some("r"), "c")],
            true,
        )
        .unwrap()
    }

    #[test]
    fn three_node_structure() {
        let t = three_node();
        assert_eq!(t.len(), 3);
        let r = t.lookup("r").unwrap();
        let q0 = t.lookup("q0").unwrap();
        assert_eq!(t.height(q0), 1);
        assert_eq!(t.mt_pairs().len(), 1);
        assert_eq!(t.mt_pairs()[0].parent, r);
        assert!(t.is_strict_ancestor(r, q0));
        assert!(!t.is_strict_ancestor(q0, r));
        assert!(!t.is_strict_ancestor(r, r));
        assert_eq!(t.chain_to(q0), vec![r, q0]);
    }

    #[test]
    fn coloring_is_validated() {
        let bad = ColoredTree::new(vec![spec("r", None, "x"), spec("q", Some("r"), "c")], true);
        assert!(matches!(bad, Err(TreeError::SmallClass(_))));
        let bad = ColoredTree::new(
            vec![spec("r", None, "x"), spec("q0", Some("r"), "x"), spec("q1", Some("r"), "x")],
            true,
        );
        assert!(matches!(bad, Err(TreeError::BadClass(_))));
        let bad = ColoredTree::new(vec![spec("a", Some("b"), "x"), spec("b", Some("a"), "x")], true);
        assert!(matches!(bad, Err(TreeError::NotATree(_))));
        let bad = ColoredTree::new(vec![spec("a", Some("zz"), "x")], true);
        assert!(matches!(bad, Err(TreeError::UnknownParent { .. })));
    }

    #[test]
    fn export_round_trip() {
        let t = three_node();
        let json = serde_json::to_string(&t.export(None)).unwrap();
        let back: TreeExport = serde_json::from_str(&json).unwrap();
        let (t2, norm) = ColoredTree::import(&back, None).unwrap();
        assert_eq!(t2, t);
        assert!(norm.is_none());
    }
}
