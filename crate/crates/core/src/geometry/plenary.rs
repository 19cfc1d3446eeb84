//! Plenarity: every point of `conv(Ω)` has a least closed carrier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;

use super::closure::{closed_sets, meet, ClosedSet};
use super::hull::{affine_chart, in_hull, is_affinely_independent};
use super::polygon::{polygon_hull, polygon_intersect, Point2};
use super::{GeometryError, Point, PointConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PlenaryVerdict {
    Plenary,
    /// `point` lies in `conv(x) ∩ conv(y)` but not in `conv(x ∩ y)`.
    NotPlenary { x: ClosedSet, y: ClosedSet, point: Point },
    /// Sampling found no counterexample; no exact decision was available.
    Inconclusive { samples: usize },
}

/// Exact when the affine hull has dimension at most two (pairwise comparison
/// of polygon intersections) or when `Ω` is affinely independent; otherwise a
/// seeded least-carrier check on `samples` random points.
pub fn is_plenary(cfg: &PointConfig, samples: usize, seed: u64) -> Result<PlenaryVerdict, GeometryError> {
    if is_affinely_independent(cfg.points()) {
        return Ok(PlenaryVerdict::Plenary);
    }
    let chart = affine_chart(cfg.points());
    if chart.rank() <= 2 {
        let planar: Vec<Point2> = chart
            .coords
            .iter()
            .map(|c| {
                let mut it = c.iter().cloned().chain(std::iter::repeat(Rational::zero()));
                [it.next().unwrap(), it.next().unwrap()]
            })
            .collect();
        return Ok(match planar_witness(cfg, &planar)? {
            None => PlenaryVerdict::Plenary,
            Some((x, y, p)) => {
                let local: Vec<Rational> = p.into_iter().take(chart.rank()).collect();
                PlenaryVerdict::NotPlenary { x, y, point: chart.lift(&local) }
            }
        });
    }
    sampled(cfg, samples, seed)
}

fn planar_witness(
    cfg: &PointConfig,
    planar: &[Point2],
) -> Result<Option<(ClosedSet, ClosedSet, Point2)>, GeometryError> {
    let mut sets = closed_sets(cfg)?;
    // Larger sets first, so the reported pair is as large as possible.
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members().cmp(b.members())));
    let hull_of = |s: &ClosedSet| polygon_hull(&s.members().iter().map(|&i| planar[i].clone()).collect::<Vec<_>>());
    let hulls: Vec<_> = sets.iter().map(hull_of).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].is_subset(&sets[j]) || sets[j].is_subset(&sets[i]) {
                continue;
            }
            let both = polygon_intersect(&hulls[i], &hulls[j]);
            let lower = hull_of(&meet(&sets[i], &sets[j]));
            if both != lower {
                let v = both.vertices().iter().find(|v| !lower.contains(v)).expect("a vertex escapes");
                return Ok(Some((sets[i].clone(), sets[j].clone(), v.clone())));
            }
        }
    }
    Ok(None)
}

fn sampled(cfg: &PointConfig, samples: usize, seed: u64) -> Result<PlenaryVerdict, GeometryError> {
    let sets = closed_sets(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.len();
    for _ in 0..samples {
        let mut chosen: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if chosen.is_empty() {
            chosen.push(rng.gen_range(0..n));
        }
        let weights: Vec<Rational> = chosen.iter().map(|_| Rational::from(rng.gen_range(1..=12i64))).collect();
        let total: Rational = weights.iter().sum();
        let mut x = vec![Rational::zero(); cfg.dim()];
        for (&i, w) in chosen.iter().zip(&weights) {
            for (xd, pd) in x.iter_mut().zip(cfg.point(i)) {
                *xd += &(pd * w);
            }
        }
        let x: Point = x.into_iter().map(|v| v / &total).collect();
        let carriers: Vec<&ClosedSet> =
            sets.iter().filter(|s| in_hull(&x, &cfg.subset(s.members())).is_some()).collect();
        let mut least = carriers[0].clone();
        for &c in &carriers[1..] {
            let next = meet(&least, c);
            if in_hull(&x, &cfg.subset(next.members())).is_none() {
                return Ok(PlenaryVerdict::NotPlenary { x: least, y: c.clone(), point: x });
            }
            least = next;
        }
    }
    Ok(PlenaryVerdict::Inconclusive { samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dim: usize, pts: &[&[i64]]) -> PointConfig {
        PointConfig::from_integers(dim, pts).unwrap()
    }

    #[test]
    fn square_is_not_plenary() {
        let c = cfg(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        match is_plenary(&c, 0, 0).unwrap() {
            PlenaryVerdict::NotPlenary { x, y, point } => {
                // C ∖ {(1,1)} and C ∖ {(1,0)}.
                assert_eq!(x.members(), &[0, 1, 2]);
                assert_eq!(y.members(), &[0, 1, 3]);
                assert!(in_hull(&point, &c.subset(x.members())).is_some());
                assert!(in_hull(&point, &c.subset(y.members())).is_some());
                assert!(in_hull(&point, &c.subset(meet(&x, &y).members())).is_none());
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn plenary_examples() {
        let c_prime = cfg(2, &[&[0, 0], &[0, 2], &[2, 0], &[2, 2], &[1, 1]]);
        assert_eq!(is_plenary(&c_prime, 0, 0).unwrap(), PlenaryVerdict::Plenary);
        let simplex = cfg(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(is_plenary(&simplex, 0, 0).unwrap(), PlenaryVerdict::Plenary);
        let line = cfg(1, &[&[0], &[1], &[2], &[5]]);
        assert_eq!(is_plenary(&line, 0, 0).unwrap(), PlenaryVerdict::Plenary);
        assert_eq!(is_plenary(&PointConfig::new(2, vec![]).unwrap(), 0, 0).unwrap(), PlenaryVerdict::Plenary);
    }

    #[test]
    fn square_lifted_into_space_is_still_caught() {
        // The unit square placed in the plane z = x + y of Q³.
        let c = cfg(3, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 2]]);
        match is_plenary(&c, 0, 0).unwrap() {
            PlenaryVerdict::NotPlenary { x, y, point } => {
                assert!(in_hull(&point, &c.subset(x.members())).is_some());
                assert!(in_hull(&point, &c.subset(y.members())).is_some());
                assert!(in_hull(&point, &c.subset(meet(&x, &y).members())).is_none());
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn sampling_finds_cube_counterexample() {
        let mut pts = Vec::new();
        for m in 0..8i64 {
            pts.push(vec![m & 1, m >> 1 & 1, m >> 2 & 1]);
        }
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let cube = cfg(3, &refs);
        match is_plenary(&cube, 200, 7).unwrap() {
            PlenaryVerdict::NotPlenary { x, y, point } => {
                assert!(in_hull(&point, &cube.subset(x.members())).is_some());
                assert!(in_hull(&point, &cube.subset(y.members())).is_some());
                assert!(in_hull(&point, &cube.subset(meet(&x, &y).members())).is_none());
            }
            v => panic!("unexpected verdict {v:?}"),
        }
        // A bipyramid over a triangle: sampling can only corroborate.
        let bip = cfg(3, &[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[1, 1, 3], &[1, 1, -3]]);
        assert!(matches!(is_plenary(&bip, 20, 1).unwrap(), PlenaryVerdict::Inconclusive { samples: 20 } | PlenaryVerdict::NotPlenary { .. }));
    }
}
