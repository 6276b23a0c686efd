//! Helpers shared by the integration tests. The brute-force cover search
//! here is deliberately independent of the branch-and-bound solver.

#![allow(dead_code)]

use almostcover::{FieldSpec, Point, PointSet};
use itertools::Itertools;
use rand::Rng;

/// Smallest number of `sets` whose union contains `universe`, by trying
/// every subset in order of increasing size.
pub fn brute_force_min_cover(universe: u128, sets: &[u128]) -> Option<usize> {
    if universe == 0 {
        return Some(0);
    }
    (1..=sets.len()).find(|&size| {
        sets.iter().combinations(size).any(|c| c.iter().fold(0u128, |acc, s| acc | **s) & universe == universe)
    })
}

/// All 0-1 vectors of length `n`.
pub fn cube_vectors(n: usize) -> Vec<Vec<i64>> {
    (0..1u32 << n).map(|b| (0..n).map(|i| ((b >> i) & 1) as i64).collect()).collect()
}

/// A random duplicate-free point set with at most `max_points` points and
/// coordinates drawn from `-2..=2`.
pub fn random_point_set(rng: &mut impl Rng, field: FieldSpec, max_points: usize) -> PointSet {
    let n = rng.gen_range(1..=3);
    let target = rng.gen_range(1..=max_points);
    let mut pts: Vec<Point> = Vec::new();
    for _ in 0..4 * max_points {
        if pts.len() == target {
            break;
        }
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let p = Point::from_i64(field, &c);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(field, n, pts).unwrap()
}
