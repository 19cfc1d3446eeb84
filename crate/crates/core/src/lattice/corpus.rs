//! Small named lattices used by tests, examples and the classifier corpus.

use super::{FiniteLattice, LatticeSpec};

fn build(elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    let spec = LatticeSpec {
        elements: elements.iter().map(|s| s.to_string()).collect(),
        covers: covers.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
    };
    FiniteLattice::from_spec(&spec).expect("corpus lattice")
}

/// The chain `0 < 1 < … < n-1` (elements named by their rank).
pub fn chain(n: usize) -> FiniteLattice {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("chain")
}

/// The Boolean lattice on `k` atoms. For k = 2 the elements are 0, a, b, 1;
/// otherwise subsets are named by their member letters ("0" for the empty set).
pub fn boolean(k: usize) -> FiniteLattice {
    if k == 2 {
        return build(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]);
    }
    let letters: Vec<char> = ('a'..='z').take(k).collect();
    let name = |mask: usize| -> String {
        if mask == 0 {
            return "0".into();
        }
        letters.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect()
    };
    let n = 1 << k;
    let names = (0..n).map(name).collect();
    let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("boolean")
}

/// N5: 0 < a < c < 1 and 0 < b < 1.
pub fn n5() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

/// M3: three atoms p, q, r between 0 and 1.
pub fn m3() -> FiniteLattice {
    build(
        &["0", "p", "q", "r", "1"],
        &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )
}

/// The hexagon: two 2-element chains 0 < a < b < 1 and 0 < c < d < 1.
pub fn hexagon() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "d", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "d"), ("d", "1")],
    )
}

/// The lattice of order-convex subsets of a poset on `1..=n`, where
/// `below(i, j)` gives the strict order. Subsets are named by their members.
pub fn order_convex(n: usize, below: impl Fn(usize, usize) -> bool) -> FiniteLattice {
    let leq_p = |i: usize, j: usize| i == j || below(i, j);
    let convex = |mask: usize| {
        (0..n).all(|x| {
            (0..n).all(|z| {
                mask >> x & 1 == 0
                    || mask >> z & 1 == 0
                    || (0..n).all(|y| !(leq_p(x + 1, y + 1) && leq_p(y + 1, z + 1)) || mask >> y & 1 == 1)
            })
        })
    };
    let sets: Vec<usize> = (0..1usize << n).filter(|&m| convex(m)).collect();
    let names = sets
        .iter()
        .map(|&m| {
            if m == 0 {
                "0".to_string()
            } else {
                (0..n).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect()
            }
        })
        .collect();
    let leq = sets.iter().map(|&a| sets.iter().map(|&b| a & !b == 0).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("order-convex subsets form a lattice")
}

/// The ten-lattice corpus used for the classifier sanity checks.
pub fn classifier_corpus() -> Vec<(&'static str, FiniteLattice)> {
    vec![
        ("chain2", chain(2)),
        ("chain3", chain(3)),
        ("B2", boolean(2)),
        ("B3", boolean(3)),
        ("N5", n5()),
        ("M3", m3()),
        ("hexagon", hexagon()),
        ("Co(2-chain)", order_convex(2, |i, j| i < j)),
        ("Co(3-chain)", order_convex(3, |i, j| i < j)),
        ("Co(V)", order_convex(3, |i, j| i == 1 && j > 1)),
    ]
}
