//! Tours through finite point sets: exact Held–Karp for small inputs and a
//! nearest-neighbor + 2-opt heuristic for everything else.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{Point, Tour};
use crate::scalar::Scalar;

/// Largest input accepted by [`exact_point_tour`].
pub const EXACT_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointTspError {
    #[error("empty instance")]
    Empty,
    #[error("exact solver capped at {EXACT_LIMIT} points, got {0}")]
    Capped(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointTspResult<T> {
    pub tour: Tour<T>,
    /// Visiting order as indices into the input, starting at index 0.
    pub order: Vec<usize>,
    pub exact: bool,
}

impl<T: Scalar> PointTspResult<T> {
    fn from_order(pts: &[Point<T>], order: Vec<usize>, exact: bool) -> Self {
        let poly: Vec<_> = order.iter().map(|&i| pts[i]).collect();
        PointTspResult { tour: Tour::closed_polyline(&poly), order, exact }
    }

    pub fn len(&self) -> T {
        self.tour.len()
    }
}

/// Length of the closed polygon visiting `pts` in `order`.
pub fn cycle_length<T: Scalar>(pts: &[Point<T>], order: &[usize]) -> T {
    let n = order.len();
    if n < 2 {
        return T::zero();
    }
    (0..n).map(|i| pts[order[i]].dist(pts[order[(i + 1) % n]])).sum()
}

/// Optimal tour by dynamic programming over subsets.
pub fn exact_point_tour<T: Scalar>(pts: &[Point<T>]) -> Result<PointTspResult<T>, PointTspError> {
    let n = pts.len();
    if n == 0 {
        return Err(PointTspError::Empty);
    }
    if n > EXACT_LIMIT {
        return Err(PointTspError::Capped(n));
    }
    if n <= 3 {
        return Ok(PointTspResult::from_order(pts, (0..n).collect(), true));
    }
    // Subsets of {1..n-1}; point 0 is the fixed start.
    let m = n - 1;
    let full = 1usize << m;
    let dist = |i: usize, j: usize| pts[i].dist(pts[j]);
    let mut cost = vec![T::infinity(); full * m];
    let mut parent = vec![usize::MAX; full * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = dist(0, j + 1);
    }
    for mask in 1..full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = cost[mask * m + j];
            if !cur.is_finite() {
                continue;
            }
            for k in 0..m {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = mask | (1 << k);
                let c = cur + dist(j + 1, k + 1);
                if c < cost[next * m + k] {
                    cost[next * m + k] = c;
                    parent[next * m + k] = j;
                }
            }
        }
    }
    let last = full - 1;
    let mut best = (T::infinity(), 0);
    for j in 0..m {
        let c = cost[last * m + j] + dist(j + 1, 0);
        if c < best.0 {
            best = (c, j);
        }
    }
    let mut order = Vec::with_capacity(n);
    let (mut mask, mut j) = (last, best.1);
    loop {
        order.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        if p == usize::MAX {
            break;
        }
        j = p;
    }
    order.push(0);
    order.reverse();
    Ok(PointTspResult::from_order(pts, order, true))
}

/// Nearest neighbor from point 0, then 2-opt until no exchange gains more
/// than `1e-9`. The seed only decides ties between equidistant candidates.
pub fn heuristic_point_tour<T: Scalar>(pts: &[Point<T>], seed: u64) -> Result<PointTspResult<T>, PointTspError> {
    let n = pts.len();
    if n == 0 {
        return Err(PointTspError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let priority: Vec<u64> = (0..n).map(|_| rng.gen()).collect();

    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    used[0] = true;
    order.push(0);
    for _ in 1..n {
        let mut best: Option<(T, u64, usize)> = None;
        for k in (0..n).filter(|&k| !used[k]) {
            let d = pts[cur].dist(pts[k]);
            let better = match best {
                None => true,
                Some((bd, bp, _)) => d < bd || (d == bd && priority[k] < bp),
            };
            if better {
                best = Some((d, priority[k], k));
            }
        }
        let (_, _, k) = best.expect("unvisited point remains");
        used[k] = true;
        order.push(k);
        cur = k;
    }
    two_opt(pts, &mut order, T::lit(1e-9));
    Ok(PointTspResult::from_order(pts, order, false))
}

/// Improves `order` in place by segment reversals until none gains more
/// than `tol`. The first entry stays fixed.
pub fn two_opt<T: Scalar>(pts: &[Point<T>], order: &mut [usize], tol: T) {
    let n = order.len();
    if n < 4 {
        return;
    }
    let d = |a: usize, b: usize| pts[a].dist(pts[b]);
    loop {
        let mut improved = false;
        for i in 0..n - 1 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, e) = (order[j], order[(j + 1) % n]);
                let delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
                if delta < -tol {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Best available tour: exact up to [`EXACT_LIMIT`] points, heuristic beyond.
pub fn point_tour<T: Scalar>(pts: &[Point<T>], seed: u64) -> Result<PointTspResult<T>, PointTspError> {
    if pts.len() <= EXACT_LIMIT {
        exact_point_tour(pts)
    } else {
        heuristic_point_tour(pts, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest};
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    /// Independent oracle: enumerate all permutations of 1..n.
    fn brute_force(pts: &[Point<f64>]) -> f64 {
        fn rec(pts: &[Point<f64>], order: &mut Vec<usize>, used: &mut [bool], best: &mut f64) {
            if order.len() == pts.len() {
                *best = best.min(cycle_length(pts, order));
                return;
            }
            for k in 1..pts.len() {
                if !used[k] {
                    used[k] = true;
                    order.push(k);
                    rec(pts, order, used, best);
                    order.pop();
                    used[k] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        let mut used = vec![false; pts.len()];
        rec(pts, &mut vec![0], &mut used, &mut best);
        best
    }

    #[test]
    fn small_examples() {
        assert_eq!(exact_point_tour(&[p(0.0, 0.0)]).unwrap().len(), 0.0);
        assert_eq!(exact_point_tour(&[p(0.0, 0.0), p(3.0, 0.0)]).unwrap().len(), 6.0);
        let tri = exact_point_tour(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(tri.len(), 2.0 + 2f64.sqrt(), epsilon = 1e-12);
        assert!(tri.exact);
    }

    #[test]
    fn errors() {
        assert_eq!(exact_point_tour::<f64>(&[]).unwrap_err(), PointTspError::Empty);
        assert_eq!(heuristic_point_tour::<f64>(&[], 1).unwrap_err(), PointTspError::Empty);
        let many: Vec<_> = (0..15).map(|i| p(i as f64, 0.0)).collect();
        assert_eq!(exact_point_tour(&many).unwrap_err(), PointTspError::Capped(15));
        assert!(!point_tour(&many, 0).unwrap().exact);
    }

    #[test]
    fn octagon() {
        // shuffled so nearest neighbor has something to fix
        let idx = [0, 3, 6, 1, 4, 7, 2, 5];
        let pts: Vec<_> = idx.iter().map(|&k| Point::polar(k as f64 * PI / 4.0)).collect();
        let perimeter = 16.0 * (PI / 8.0).sin();
        let h = heuristic_point_tour(&pts, 7).unwrap();
        let e = exact_point_tour(&pts).unwrap();
        assert_abs_diff_eq!(h.len(), perimeter, epsilon = 1e-9);
        assert_abs_diff_eq!(e.len(), perimeter, epsilon = 1e-9);
    }

    #[test]
    fn heuristic_band_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let n = rng.gen_range(3..=10);
            let pts: Vec<_> = (0..n).map(|_| p(rng.gen(), rng.gen())).collect();
            let e = exact_point_tour(&pts).unwrap().len();
            let h = heuristic_point_tour(&pts, 1).unwrap().len();
            assert!(h >= e - 1e-9 && h <= 1.2 * e + 1e-9, "heuristic {h} vs exact {e}");
        }
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(v in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..8)) {
            let pts: Vec<_> = v.into_iter().map(|(x, y)| p(x, y)).collect();
            let r = exact_point_tour(&pts).unwrap();
            prop_assert!((r.len() - brute_force(&pts)).abs() < 1e-9);
            prop_assert!((r.len() - cycle_length(&pts, &r.order)).abs() < 1e-9);
        }

        #[test]
        fn heuristic_is_a_two_opt_local_optimum(v in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..30), seed in any::<u64>()) {
            let pts: Vec<_> = v.into_iter().map(|(x, y)| p(x, y)).collect();
            let r = heuristic_point_tour(&pts, seed).unwrap();
            let mut seen = r.order.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..pts.len()).collect::<Vec<_>>());
            prop_assert!(r.tour.is_closed(1e-12));
            let o = &r.order;
            let n = o.len();
            for i in 0..n {
                for j in i + 2..n {
                    if i == 0 && j == n - 1 { continue; }
                    let d = |a: usize, b: usize| pts[o[a]].dist(pts[o[b]]);
                    let delta = d(i, j) + d(i + 1, (j + 1) % n) - d(i, i + 1) - d(j, (j + 1) % n);
                    prop_assert!(delta >= -1e-9);
                }
            }
            if pts.len() <= 8 {
                prop_assert!(r.len() >= exact_point_tour(&pts).unwrap().len() - 1e-9);
            }
            prop_assert_eq!(heuristic_point_tour(&pts, seed).unwrap().order, r.order.clone());
        }
    }
}
