//! Tours for equal-radius disks: the center tour for disjoint disks and the
//! independent-set tour with boundary detours for overlapping ones.

use serde::{Deserialize, Serialize};

use crate::geom::{signed_area, Arc, Disk, Point, Segment, Tour, TourElement};
use crate::point_tsp::{point_tour, PointTspError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiskError {
    #[error("empty instance")]
    Empty,
    #[error("disks must share one positive radius (found {0} and {1})")]
    UnequalRadii(f64, f64),
    #[error("requires disjoint disks")]
    RequiresDisjoint,
    #[error(transparent)]
    PointTsp(#[from] PointTspError),
}

/// Equal-radius disks, with disjointness checked at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskInstance<T> {
    pub disks: Vec<Disk<T>>,
    pub radius: T,
    pub disjoint: bool,
}

impl<T: Scalar> DiskInstance<T> {
    pub fn new(disks: Vec<Disk<T>>) -> Result<Self, DiskError> {
        let first = disks.first().ok_or(DiskError::Empty)?;
        let radius = first.radius;
        for d in &disks {
            let tol = T::lit(1e-9) * (T::one() + radius);
            if !(radius > T::zero()) || (d.radius - radius).abs() > tol {
                return Err(DiskError::UnequalRadii(radius.to_f64_lossy(), d.radius.to_f64_lossy()));
            }
        }
        let tol = T::lit(1e-9);
        let disjoint = disks
            .iter()
            .enumerate()
            .all(|(i, a)| disks[i + 1..].iter().all(|b| a.center.dist(b.center) >= a.radius + b.radius - tol));
        Ok(DiskInstance { disks, radius, disjoint })
    }

    pub fn centers(&self) -> Vec<Point<T>> {
        self.disks.iter().map(|d| d.center).collect()
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn scale(&self, k: T) -> Self {
        let disks = self.disks.iter().map(|d| Disk { center: d.center * k, radius: d.radius * k }).collect();
        DiskInstance { disks, radius: self.radius * k, disjoint: self.disjoint }
    }
}

/// Tour through the disk centers.
pub fn disjoint_center_tour<T: Scalar>(inst: &DiskInstance<T>, seed: u64) -> Result<Tour<T>, DiskError> {
    if !inst.disjoint {
        return Err(DiskError::RequiresDisjoint);
    }
    Ok(point_tour(&inst.centers(), seed)?.tour)
}

/// Packing lower bound on the optimal tour of `n` pairwise-disjoint disks of
/// radius `delta`: the tour's `delta`-neighborhood has area at most
/// `4 delta L + 4 pi delta^2` and must contain all `n` disks.
pub fn area_lower_bound<T: Scalar>(n: usize, delta: T) -> T {
    let n = T::from_usize_lossy(n);
    (T::PI() * delta * (n - T::lit(4.0)) / T::lit(4.0)).maxf(T::zero())
}

/// Greedy maximal independent set in input order.
pub fn maximal_independent_set<T: Scalar>(disks: &[Disk<T>]) -> Vec<usize> {
    let tol = T::lit(1e-9);
    let mut kept: Vec<usize> = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        if kept.iter().all(|&k| disks[k].disjoint(d, tol)) {
            kept.push(i);
        }
    }
    kept
}

/// Everything the detour construction produced, for inspection and tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetourTrace<T> {
    pub independent_set: Vec<usize>,
    /// Tour through the centers of the independent disks, clockwise.
    pub base_tour: Tour<T>,
    pub final_tour: Tour<T>,
    pub start_disk: usize,
    pub start_point: Point<T>,
}

impl<T: Scalar> DetourTrace<T> {
    /// Total |sweep| of the final tour's arcs lying on the boundary of `d`.
    pub fn boundary_coverage(&self, d: &Disk<T>) -> T {
        boundary_coverage(&self.final_tour, d)
    }
}

pub fn boundary_coverage<T: Scalar>(t: &Tour<T>, d: &Disk<T>) -> T {
    let tol = T::lit(1e-9);
    t.elements
        .iter()
        .filter_map(|e| match e {
            TourElement::Arc(a) if a.center.dist(d.center) <= tol && (a.radius - d.radius).abs() <= tol => {
                Some(a.sweep.abs())
            }
            _ => None,
        })
        .sum()
}

/// Clockwise sweep (negative) carrying `from` onto `to` around `c`; a full
/// turn when the two directions coincide.
fn cw_sweep<T: Scalar>(c: Point<T>, from: Point<T>, to: Point<T>) -> (T, T) {
    let a0 = (from - c).angle();
    let a1 = (to - c).angle();
    let mut d = a0 - a1;
    while d <= T::zero() {
        d = d + T::tau();
    }
    while d > T::tau() {
        d = d - T::tau();
    }
    if d < T::lit(1e-12) {
        d = T::tau();
    }
    (a0, -d)
}

/// Follows the center tour of a maximal independent set twice, once in each
/// direction, detouring clockwise around each independent disk so that its
/// whole boundary is covered exactly once.
pub fn overlapping_disks_tour<T: Scalar>(inst: &DiskInstance<T>, seed: u64) -> Result<DetourTrace<T>, DiskError> {
    if inst.is_empty() {
        return Err(DiskError::Empty);
    }
    let r = inst.radius;
    let ind = maximal_independent_set(&inst.disks);
    let centers: Vec<_> = ind.iter().map(|&i| inst.disks[i].center).collect();
    let start_disk = ind[0];

    if ind.len() == 1 {
        let c = centers[0];
        let s = c + Point::new(r, T::zero());
        let full = Arc::new(c, r, T::zero(), -T::tau());
        return Ok(DetourTrace {
            independent_set: ind,
            base_tour: Tour::point(c),
            final_tour: Tour::from_elements(vec![TourElement::Arc(full)]),
            start_disk,
            start_point: s,
        });
    }

    let mut order = point_tour(&centers, seed)?.order;
    let poly: Vec<_> = order.iter().map(|&i| centers[i]).collect();
    if signed_area(&poly) > T::zero() {
        order[1..].reverse();
    }
    let seq: Vec<Point<T>> = order.iter().map(|&i| centers[i]).collect();
    let k = seq.len();
    let base_tour = Tour::closed_polyline(&seq);

    // entry/exit points of every disk along the forward traversal
    let dir = |a: Point<T>, b: Point<T>| {
        let v = b - a;
        let l = v.norm();
        if l > T::zero() {
            v * (T::one() / l)
        } else {
            Point::new(T::one(), T::zero())
        }
    };
    let p_in: Vec<_> = (0..k).map(|i| seq[i] - dir(seq[(i + k - 1) % k], seq[i]) * r).collect();
    let p_out: Vec<_> = (0..k).map(|i| seq[i] + dir(seq[i], seq[(i + 1) % k]) * r).collect();
    let first_pass: Vec<(T, T)> = (0..k).map(|i| cw_sweep(seq[i], p_in[i], p_out[i])).collect();

    let mut el = Vec::with_capacity(4 * k);
    let seg = |a: Point<T>, b: Point<T>| TourElement::Seg(Segment::new(a, b));
    let arc = |i: usize, start: T, sweep: T| TourElement::Arc(Arc::new(seq[i], r, start, sweep));

    // forward pass from s = exit point of the start disk
    for i in 1..=k {
        let j = i % k;
        el.push(seg(p_out[i - 1], p_in[j]));
        let (a0, sw) = first_pass[j];
        el.push(arc(j, a0, sw));
    }
    // back at s: finish the start disk clockwise, then run backwards
    let rest = |i: usize| {
        let (a0, sw) = first_pass[i];
        (a0 + sw, -(T::tau() + sw))
    };
    let (a0, sw) = rest(0);
    el.push(arc(0, a0, sw));
    for i in (0..k).rev() {
        let from = (i + 1) % k;
        el.push(seg(p_in[from], p_out[i]));
        if i != 0 {
            let (a0, sw) = rest(i);
            el.push(arc(i, a0, sw));
        }
    }
    let mut final_tour = Tour::from_elements(el);
    final_tour.elements.retain(|e| e.len() > T::zero());

    Ok(DetourTrace { independent_set: ind, base_tour, final_tour, start_disk, start_point: p_out[0] })
}
