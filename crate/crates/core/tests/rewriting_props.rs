mod common;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convex_embed::arith::Rational;
use convex_embed::geometry::in_hull;
use convex_embed::quotient::build_quotient;
use convex_embed::random::{random_tree, random_vector};
use convex_embed::rewrite::{contract, full_contract, is_normal, normal_form, ContractionStep, PosVector};
use convex_embed::tree::ColoredTree;

use common::random_contraction;

/// `Σ x(p)·ht(p)`; every nontrivial contraction lowers it by exactly `λ`.
fn potential(t: &ColoredTree, x: &PosVector) -> Rational {
    x.entries().map(|(p, c)| c * Rational::from(t.height(p) as i64)).sum()
}

#[test]
fn rewriting_never_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let t = random_tree(&mut rng, 30);
        let mut x = random_vector(&mut rng, &t, 6);
        for _ in 0..20 {
            let Some(step) = random_contraction(&mut rng, &t, &x) else { break };
            let y = contract(&t, &x, &step).unwrap();
            assert_eq!(potential(&t, &x) - potential(&t, &y), step.lambda);
            x = y;
        }
    }
}

#[test]
fn normal_forms_stay_inside_the_hull_of_the_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..60 {
        let t = random_tree(&mut rng, 20);
        let b = build_quotient(&t).unwrap();
        let x = random_vector(&mut rng, &t, 6);
        let support: Vec<_> = x.support().map(|p| b.node_point(p).clone()).collect();
        for p in normal_form(&t, &x).support() {
            assert!(in_hull(b.node_point(p), &support).is_some(), "node {} escapes", t.id(p));
        }
    }
}

/// Full-contraction descendants of `x` within `depth` steps.
fn full_reach(t: &ColoredTree, x: &PosVector, depth: usize) -> HashSet<PosVector> {
    let mut seen = HashSet::from([x.clone()]);
    let mut layer = vec![x.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for y in &layer {
            for k in 0..t.mt_pairs().len() {
                let z = full_contract(t, y, k).unwrap();
                if seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        layer = next;
    }
    seen
}

#[test]
fn arbitrary_chains_to_the_normal_form_can_be_shortened_to_full_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    for _ in 0..300 {
        let t = random_tree(&mut rng, 12);
        let x = random_vector(&mut rng, &t, 4);
        let nf = normal_form(&t, &x);
        let mut cur = x.clone();
        let mut n = 0;
        while n < 30 && !is_normal(&t, &cur) {
            let Some(step) = random_contraction(&mut rng, &t, &cur) else { break };
            let frac = [Rational::new(1, 2), Rational::one(), Rational::one()][rng.gen_range(0..3)].clone();
            let step = ContractionStep { lambda: step.lambda * frac, ..step };
            cur = contract(&t, &cur, &step).unwrap();
            n += 1;
        }
        if cur != nf {
            continue;
        }
        checked += 1;
        assert!(full_reach(&t, &x, n).contains(&nf), "no full chain of length ≤ {n}");
    }
    assert!(checked > 50, "only {checked} chains reached the normal form");
}
