//! The contraction rewriting system on the positive cone of the free space
//! over a colored tree.
//!
//! A contraction at `(p, I) ∈ M_T` with weight `λ` replaces
//! `(λ/|I|)·Σ_{q∈I} q̇` by `λṗ`. A full contraction uses the largest admissible
//! `λ = |I|·min_{q∈I} x(q)`. Normal forms are reached by full contractions and
//! are independent of the order in which classes are contracted.

mod vector;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{OrdinalPoly, Rational};
use crate::tree::{ColoredTree, MtPair, NodeId};

pub use vector::{PosVector, PosVectorJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("coefficient at node {0} is negative")]
    Negative(NodeId),
    #[error("unknown node id {0:?}")]
    UnknownNode(String),
    #[error("M_T pair index {0} out of range")]
    UnknownPair(usize),
    #[error("negative contraction weight")]
    NegativeWeight,
    #[error("coefficient at node {node} is {have}, the step needs {need}")]
    Insufficient { node: NodeId, have: Rational, need: Rational },
}

/// A contraction at the `pair`-th element of M_T with weight `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionStep {
    pub pair: usize,
    pub lambda: Rational,
}

fn pair(t: &ColoredTree, k: usize) -> Result<&MtPair, RewriteError> {
    t.mt_pairs().get(k).ok_or(RewriteError::UnknownPair(k))
}

/// `x = (λ/|I|)Σ_{q∈I} q̇ + z  ↦  λṗ + z`.
pub fn contract(t: &ColoredTree, x: &PosVector, step: &ContractionStep) -> Result<PosVector, RewriteError> {
    let m = pair(t, step.pair)?;
    if step.lambda.is_negative() {
        return Err(RewriteError::NegativeWeight);
    }
    let share = &step.lambda / Rational::integer(m.members.len() as i64);
    let mut y = x.clone();
    for &q in &m.members {
        let have = x.get(q);
        if have < share {
            return Err(RewriteError::Insufficient { node: q, have, need: share });
        }
        y.add_at(q, &-&share);
    }
    y.add_at(m.parent, &step.lambda);
    Ok(y)
}

/// The inverse move `λṗ + z ↦ (λ/|I|)Σ_{q∈I} q̇ + z`.
pub fn expand(t: &ColoredTree, x: &PosVector, step: &ContractionStep) -> Result<PosVector, RewriteError> {
    let m = pair(t, step.pair)?;
    if step.lambda.is_negative() {
        return Err(RewriteError::NegativeWeight);
    }
    let have = x.get(m.parent);
    if have < step.lambda {
        return Err(RewriteError::Insufficient { node: m.parent, have, need: step.lambda.clone() });
    }
    let share = &step.lambda / Rational::integer(m.members.len() as i64);
    let mut y = x.clone();
    y.add_at(m.parent, &-&step.lambda);
    for &q in &m.members {
        y.add_at(q, &share);
    }
    Ok(y)
}

/// `|I|·min_{q∈I} x(q)`, the largest weight a contraction at `pair` admits.
pub fn max_weight(t: &ColoredTree, x: &PosVector, pair_index: usize) -> Rational {
    let m = &t.mt_pairs()[pair_index];
    let min = m.members.iter().map(|&q| x.get(q)).min().expect("classes are nonempty");
    min * Rational::integer(m.members.len() as i64)
}

/// Contraction with maximal weight; afterwards some member of the class is zero.
pub fn full_contract(t: &ColoredTree, x: &PosVector, pair_index: usize) -> Result<PosVector, RewriteError> {
    pair(t, pair_index)?;
    let lambda = max_weight(t, x, pair_index);
    contract(t, x, &ContractionStep { pair: pair_index, lambda })
}

/// Normal iff every class of M_T has a zero coefficient somewhere.
pub fn is_normal(t: &ColoredTree, x: &PosVector) -> bool {
    (0..t.mt_pairs().len()).all(|k| max_weight(t, x, k).is_zero())
}

/// Pairs admitting a nontrivial full contraction, in the canonical strategy order:
/// deepest parent first, then parent id, then class.
pub fn contractible_pairs(t: &ColoredTree, x: &PosVector) -> Vec<usize> {
    let mut ks: Vec<usize> = (0..t.mt_pairs().len()).filter(|&k| max_weight(t, x, k).is_positive()).collect();
    ks.sort_by_key(|&k| {
        let m = &t.mt_pairs()[k];
        (std::cmp::Reverse(t.height(m.parent)), m.parent, m.class)
    });
    ks
}

/// The normal form together with the chain of full contractions used.
pub fn normal_form_with_trace(t: &ColoredTree, x: &PosVector) -> (PosVector, Vec<ContractionStep>) {
    let mut cur = x.clone();
    let mut steps = Vec::new();
    while let Some(&k) = contractible_pairs(t, &cur).first() {
        let lambda = max_weight(t, &cur, k);
        let step = ContractionStep { pair: k, lambda };
        cur = contract(t, &cur, &step).expect("full contraction is admissible");
        steps.push(step);
    }
    (cur, steps)
}

pub fn normal_form(t: &ColoredTree, x: &PosVector) -> PosVector {
    normal_form_with_trace(t, x).0
}

/// `ν(x) = Σ_{p ∈ supp(x)} ω^{ht(p)}` (natural sum).
pub fn nu(t: &ColoredTree, x: &PosVector) -> OrdinalPoly {
    x.support()
        .fold(OrdinalPoly::zero(), |acc, p| acc.nat_sum(&OrdinalPoly::omega_pow(t.height(p) as u32)))
}

/// `x ≡ y` iff the two normal forms coincide.
pub fn equivalent(t: &ColoredTree, x: &PosVector, y: &PosVector) -> bool {
    normal_form(t, x) == normal_form(t, y)
}

/// Searches every one-step contraction of `u` and `v` (all pairs, all
/// weights) for a common result `w`; returns the two steps.
pub fn common_successor(t: &ColoredTree, u: &PosVector, v: &PosVector) -> Option<(ContractionStep, ContractionStep)> {
    if u == v {
        return Some((ContractionStep { pair: 0, lambda: Rational::zero() }, ContractionStep { pair: 0, lambda: Rational::zero() }));
    }
    let n = t.len();
    let gen = |k: usize| {
        let m = &t.mt_pairs()[k];
        let mut g = vec![Rational::zero(); n];
        g[m.parent] = Rational::one();
        let share = Rational::new(1, m.members.len() as i64);
        for &q in &m.members {
            g[q] -= &share;
        }
        g
    };
    let (du, dv) = (u.dense(n), v.dense(n));
    let diff: Vec<Rational> = dv.iter().zip(&du).map(|(a, b)| a - b).collect();
    let pairs = t.mt_pairs().len();
    for k1 in 0..pairs {
        let g1 = gen(k1);
        for k2 in 0..pairs {
            // u + λ1·g1 = v + λ2·g2
            let lambdas = if k1 == k2 {
                let Some(c) = parallel_factor(&diff, &g1) else { continue };
                // λ1 − λ2 = c; take the smallest nonnegative pair.
                let l2 = (-c.clone()).max(Rational::zero());
                (&l2 + &c, l2)
            } else {
                let g2 = gen(k2);
                let a: Vec<Vec<Rational>> = g1.iter().zip(&g2).map(|(x, y)| vec![x.clone(), -y]).collect();
                match crate::linalg::solve(&a, &diff) {
                    Some(sol) if (0..n).all(|i| &g1[i] * &sol[0] - &g2[i] * &sol[1] == diff[i]) => {
                        (sol[0].clone(), sol[1].clone())
                    }
                    _ => continue,
                }
            };
            let (l1, l2) = lambdas;
            if l1.is_negative() || l2.is_negative() || l1 > max_weight(t, u, k1) || l2 > max_weight(t, v, k2) {
                continue;
            }
            return Some((ContractionStep { pair: k1, lambda: l1 }, ContractionStep { pair: k2, lambda: l2 }));
        }
    }
    None
}

/// `c` with `d = c·g`, if any.
fn parallel_factor(d: &[Rational], g: &[Rational]) -> Option<Rational> {
    let i = g.iter().position(|v| !v.is_zero())?;
    let c = &d[i] / &g[i];
    d.iter().zip(g).all(|(x, y)| *x == &c * y).then_some(c)
}

/// JSON rendering of one step of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub parent: String,
    pub class: Vec<String>,
    pub lambda: Rational,
    pub result: PosVectorJson,
}

/// Replays `steps` from `x`, rendering each intermediate vector.
pub fn trace_json(t: &ColoredTree, x: &PosVector, steps: &[ContractionStep]) -> Vec<StepJson> {
    let mut cur = x.clone();
    steps
        .iter()
        .map(|s| {
            cur = contract(t, &cur, s).expect("trace replays");
            let m = &t.mt_pairs()[s.pair];
            StepJson {
                parent: t.id(m.parent).to_string(),
                class: m.members.iter().map(|&q| t.id(q).to_string()).collect(),
                lambda: s.lambda.clone(),
                result: cur.to_json(t),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::tree::NodeSpec;

    fn three_node() -> (ColoredTree, NodeId, NodeId, NodeId) {
        let spec = |id: &str, parent: Option<&str>, class: &str| NodeSpec {
            id: id.into(),
            parent: parent.map(Into::into),
            class: class.into(),
        };
        let t = ColoredTree::new(
            vec![spec("r", None, "root"), spec("q0", Some("r"), "c"), spec("q1", Some("r"), "c")],
            true,
        )
        .unwrap();
        let (r, q0, q1) = (t.lookup("r").unwrap(), t.lookup("q0").unwrap(), t.lookup("q1").unwrap());
        (t, r, q0, q1)
    }

    fn v(entries: &[(NodeId, Rational)]) -> PosVector {
        PosVector::from_entries(entries.iter().cloned()).unwrap()
    }

    /// Every vector reachable by contractions whose weights are multiples of
    /// `grain`, found by exhaustive search; for this tree all reachable vectors
    /// with the given mass are of that form.
    fn exhaustive_fixed_points(t: &ColoredTree, x: &PosVector, grain: &Rational) -> Vec<PosVector> {
        let mut seen = vec![x.clone()];
        let mut todo = vec![x.clone()];
        while let Some(cur) = todo.pop() {
            let mut lambda = grain.clone();
            while let Ok(next) = contract(t, &cur, &ContractionStep { pair: 0, lambda: lambda.clone() }) {
                if !seen.contains(&next) {
                    seen.push(next.clone());
                    todo.push(next);
                }
                lambda += grain;
            }
        }
        seen.into_iter()
            .filter(|y| {
                (1..=8).all(|k| {
                    let lambda = grain * &Rational::integer(k);
                    contract(t, y, &ContractionStep { pair: 0, lambda }).is_err()
                })
            })
            .collect()
    }

    #[test]
    fn contract_examples() {
        let (t, r, q0, q1) = three_node();
        let x = v(&[(q0, q(1, 2)), (q1, q(1, 2))]);
        let step = ContractionStep { pair: 0, lambda: q(1, 1) };
        assert_eq!(contract(&t, &x, &step).unwrap(), PosVector::basis(r));
        let zero_step = ContractionStep { pair: 0, lambda: Rational::zero() };
        assert_eq!(contract(&t, &x, &zero_step).unwrap(), x);
        let err = contract(&t, &PosVector::basis(q0), &step).unwrap_err();
        assert!(matches!(err, RewriteError::Insufficient { node, .. } if node == q1));
        assert_eq!(contract(&t, &x, &step).unwrap().mass(), x.mass());
    }

    #[test]
    fn full_contract_examples() {
        let (t, r, q0, q1) = three_node();
        let x = v(&[(q0, q(1, 1)), (q1, q(1, 2))]);
        let want = v(&[(r, q(1, 1)), (q0, q(1, 2))]);
        assert_eq!(full_contract(&t, &x, 0).unwrap(), want);
        assert_eq!(exhaustive_fixed_points(&t, &x, &q(1, 2)), vec![want.clone()]);
        assert_eq!(full_contract(&t, &PosVector::basis(q0), 0).unwrap(), PosVector::basis(q0));
        let half = v(&[(q0, q(1, 2)), (q1, q(1, 2))]);
        assert_eq!(full_contract(&t, &half, 0).unwrap(), PosVector::basis(r));
    }

    #[test]
    fn normality_examples() {
        let (t, r, q0, q1) = three_node();
        for p in [r, q0, q1] {
            assert!(is_normal(&t, &PosVector::scaled_basis(p, q(7, 3))));
        }
        assert!(!is_normal(&t, &v(&[(q0, q(1, 2)), (q1, q(1, 2))])));
        assert!(is_normal(&t, &PosVector::zero()));
    }

    #[test]
    fn normal_form_examples() {
        let (t, r, q0, q1) = three_node();
        assert_eq!(normal_form(&t, &PosVector::basis(q0)), PosVector::basis(q0));
        assert_eq!(normal_form(&t, &v(&[(q0, q(1, 2)), (q1, q(1, 2))])), PosVector::basis(r));
        let x = v(&[(q0, q(1, 1)), (q1, q(1, 2))]);
        let (nf, steps) = normal_form_with_trace(&t, &x);
        assert_eq!(nf, v(&[(r, q(1, 1)), (q0, q(1, 2))]));
        assert_eq!(steps.len(), 1);
        let trace = trace_json(&t, &x, &steps);
        assert_eq!(trace[0].parent, "r");
        assert_eq!(trace[0].lambda, q(1, 1));
    }

    #[test]
    fn nu_examples() {
        let (t, r, q0, q1) = three_node();
        assert_eq!(nu(&t, &PosVector::zero()), OrdinalPoly::zero());
        assert_eq!(nu(&t, &v(&[(q0, q(1, 1)), (q1, q(1, 1))])), OrdinalPoly::term(1, 2));
        assert_eq!(
            nu(&t, &v(&[(r, q(1, 1)), (q0, q(1, 2))])),
            OrdinalPoly::from_terms([(1, 1), (0, 1)])
        );
    }

    #[test]
    fn equivalence_examples() {
        let (t, r, q0, q1) = three_node();
        let half = v(&[(q0, q(1, 2)), (q1, q(1, 2))]);
        assert!(equivalent(&t, &half, &PosVector::basis(r)));
        assert!(equivalent(&t, &half, &half));
        assert!(!equivalent(&t, &PosVector::basis(q0), &PosVector::basis(q1)));
    }

    #[test]
    fn expansion_inverts_contraction() {
        let (t, r, q0, q1) = three_node();
        let x = v(&[(r, q(2, 1)), (q0, q(1, 3))]);
        let step = ContractionStep { pair: 0, lambda: q(3, 2) };
        let y = expand(&t, &x, &step).unwrap();
        assert_eq!(y.get(q1), q(3, 4));
        assert_eq!(contract(&t, &y, &step).unwrap(), x);
        assert!(expand(&t, &x, &ContractionStep { pair: 0, lambda: q(3, 1) }).is_err());
    }

    #[test]
    fn json_round_trip() {
        let (t, r, q0, _) = three_node();
        let x = v(&[(r, q(2, 1)), (q0, q(1, 3))]);
        let text = serde_json::to_string(&x.to_json(&t)).unwrap();
        assert_eq!(text, r#"{"q0":"1/3","r":"2"}"#);
        let back: PosVectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(PosVector::from_json(&t, &back).unwrap(), x);
        let bad: PosVectorJson = serde_json::from_str(r#"{"q0":"-1"}"#).unwrap();
        assert!(PosVector::from_json(&t, &bad).is_err());
    }
}
