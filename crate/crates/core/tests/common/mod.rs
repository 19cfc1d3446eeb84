#![allow(dead_code)]

use convex_embed::arith::Rational;
use convex_embed::rewrite::{contract, expand, max_weight, ContractionStep, PosVector};
use convex_embed::tree::ColoredTree;
use rand::Rng;

/// `k/12` of the admissible weight for a random pair; `None` when `M_T` is empty.
pub fn random_contraction<R: Rng>(rng: &mut R, t: &ColoredTree, x: &PosVector) -> Option<ContractionStep> {
    let pairs = t.mt_pairs().len();
    if pairs == 0 {
        return None;
    }
    let pair = rng.gen_range(0..pairs);
    let frac = Rational::new(rng.gen_range(0..=12), 12);
    Some(ContractionStep { pair, lambda: max_weight(t, x, pair) * frac })
}

/// A random walk of contractions and expansions; the result is equivalent to `x`.
pub fn random_equivalent<R: Rng>(rng: &mut R, t: &ColoredTree, x: &PosVector, steps: usize) -> PosVector {
    let mut cur = x.clone();
    let pairs = t.mt_pairs().len();
    if pairs == 0 {
        return cur;
    }
    for _ in 0..steps {
        let pair = rng.gen_range(0..pairs);
        let frac = Rational::new(rng.gen_range(1..=12), 12);
        if rng.gen_bool(0.5) {
            let lambda = max_weight(t, &cur, pair) * frac;
            cur = contract(t, &cur, &ContractionStep { pair, lambda }).expect("admissible weight");
        } else {
            let parent = t.mt_pairs()[pair].parent;
            let lambda = cur.get(parent) * frac;
            cur = expand(t, &cur, &ContractionStep { pair, lambda }).expect("admissible weight");
        }
    }
    cur
}
