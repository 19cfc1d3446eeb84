//! Seeded generators for trees, vectors, configurations and polygons.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::geometry::{polygon_hull, Point2, PointConfig, Polygon2D};
use crate::identity::STAR_VARIABLES;
use crate::rewrite::PosVector;
use crate::tree::{ColoredTree, NodeSpec};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `1 ≤ n ≤ max_num`, `1 ≤ d ≤ max_den`.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// A value in `[-bound, bound]` with denominator at most `max_den`.
pub fn bounded_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(-bound * d..=bound * d), d)
}

/// A colored tree with at most `max_nodes` nodes: one to three minimal nodes,
/// then sibling classes of size two or three hung under random nodes.
pub fn random_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> ColoredTree {
    assert!(max_nodes >= 1);
    let roots = rng.gen_range(1..=3.min(max_nodes));
    let target = rng.gen_range(roots..=max_nodes);
    let mut specs: Vec<NodeSpec> =
        (0..roots).map(|i| NodeSpec { id: format!("n{i:02}"), parent: None, class: "root".into() }).collect();
    let mut classes = 0;
    while specs.len() + 2 <= target {
        let size = rng.gen_range(2..=3).min(target - specs.len());
        let parent = specs[rng.gen_range(0..specs.len())].id.clone();
        let label = format!("k{classes}");
        classes += 1;
        for _ in 0..size {
            let id = format!("n{:02}", specs.len());
            specs.push(NodeSpec { id, parent: Some(parent.clone()), class: label.clone() });
        }
    }
    ColoredTree::new(specs, true).expect("generated trees are valid")
}

/// Support of at most `max_support` nodes, coefficients `n/d` with `n, d ≤ 12`.
pub fn random_vector<R: Rng>(rng: &mut R, t: &ColoredTree, max_support: usize) -> PosVector {
    let k = rng.gen_range(0..=max_support.min(t.len()));
    let mut nodes: Vec<usize> = (0..t.len()).collect();
    nodes.shuffle(rng);
    PosVector::from_entries(nodes[..k].iter().map(|&p| (p, positive_rational(rng, 12, 12))))
        .expect("positive coefficients")
}

/// Between one and `max_points` distinct points of the grid `{-6..6}²`, half-integral.
pub fn random_config_2d<R: Rng>(rng: &mut R, max_points: usize) -> PointConfig {
    let n = rng.gen_range(1..=max_points);
    let mut pts: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = vec![bounded_rational(rng, 6, 2), bounded_rational(rng, 6, 2)];
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointConfig::new(2, pts).expect("distinct points")
}

/// Hull of one to six points in `[-8, 8]²` with denominators at most 4.
pub fn random_polygon<R: Rng>(rng: &mut R) -> Polygon2D {
    let k = rng.gen_range(1..=6);
    let pts: Vec<Point2> = (0..k).map(|_| [bounded_rational(rng, 8, 4), bounded_rational(rng, 8, 4)]).collect();
    polygon_hull(&pts)
}

/// Independent random polygons for the seven variables of the planar identity.
pub fn random_star_assignment<R: Rng>(rng: &mut R) -> BTreeMap<String, Polygon2D> {
    STAR_VARIABLES.iter().map(|v| (v.to_string(), random_polygon(rng))).collect()
}
