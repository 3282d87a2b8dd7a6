//! Regions sharing one diameter: Algorithm A on almost-horizontal regions,
//! the quarter-turn trick for the rest, and the merge of the two tours.

use serde::{Deserialize, Serialize};

use crate::geom::{GeomError, Point, Rectangle, Region, Segment, Tour, TourElement};
use crate::point_tsp::{point_tour, PointTspError};
use crate::scalar::{cmp_f, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SameDiameterError {
    #[error("not same-diameter: region {index} has diameter {found}, expected {expected}")]
    NotSameDiameter { index: usize, found: f64, expected: f64 },
    #[error("region {0} has zero diameter")]
    ZeroDiameter(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    PointTsp(#[from] PointTspError),
}

/// Closed-form worst-case ratios used by the analysis.
pub mod bounds {
    /// One covering line: `2w + 6h` against `2 diag(Q)`.
    pub fn case1() -> f64 {
        10f64.sqrt()
    }
    pub const CASE2_1A: f64 = 5.0;
    pub fn case2_1b() -> f64 {
        5.0 * 2f64.sqrt()
    }
    /// `2w + 16h` against `2 diag(Q)`; `sqrt(65)` rounded up.
    pub const CASE2_2: f64 = 8.1;
    pub const CASE3_TWO_LINES: f64 = 9.95;
    pub const CASE3_THREE_LINES: f64 = 15.45;
    /// Case 3 with a (1 + 0.05)-approximate point tour.
    pub const CASE3: f64 = 15.5;
    /// Both types plus the merge penalty.
    pub const OVERALL: f64 = 33.0;
    pub fn parallel_segments() -> f64 {
        3.0 * 2f64.sqrt()
    }
    pub fn convex_translates() -> f64 {
        58f64.sqrt()
    }
    pub fn connected_translates() -> f64 {
        130f64.sqrt()
    }

    /// Right side of `a w + b h <= sqrt(a^2 + b^2) sqrt(w^2 + h^2)`.
    pub fn cauchy_schwarz_rhs(a: f64, b: f64, w: f64, h: f64) -> f64 {
        (a * a + b * b).sqrt() * (w * w + h * h).sqrt()
    }
}

/// Partition of the input by the slope of each region's diameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedInstance<T> {
    /// Indices of regions whose diameter slope lies within ±45°.
    pub type1: Vec<usize>,
    pub type2: Vec<usize>,
    pub delta: T,
}

pub fn classify<T: Scalar>(regions: &[Region<T>]) -> Result<ClassifiedInstance<T>, SameDiameterError> {
    let mut type1 = Vec::new();
    let mut type2 = Vec::new();
    let mut delta = T::zero();
    for (i, r) in regions.iter().enumerate() {
        let (d, seg) = r.diameter()?;
        if i == 0 {
            if !(d > T::zero()) {
                return Err(SameDiameterError::ZeroDiameter(0));
            }
            delta = d;
        } else if (d - delta).abs() > T::lit(1e-6) * delta {
            return Err(SameDiameterError::NotSameDiameter {
                index: i,
                found: d.to_f64_lossy(),
                expected: delta.to_f64_lossy(),
            });
        }
        let v = seg.dir();
        if v.y.abs() <= v.x.abs() * (T::one() + T::lit(1e-12)) {
            type1.push(i);
        } else {
            type2.push(i);
        }
    }
    Ok(ClassifiedInstance { type1, type2, delta })
}

/// Vertical stabbing lines and one representative point per region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyCover<T> {
    pub line_xs: Vec<T>,
    /// `(region index, point)` with the point on the region's covering line.
    pub reps: Vec<(usize, Point<T>)>,
    /// Covering line of each region.
    pub line_of: Vec<usize>,
}

fn stabs<T: Scalar>(lo: T, hi: T, x: T) -> bool {
    let tol = T::lit(1e-12) * (T::one() + x.abs());
    lo <= x + tol && x <= hi + tol
}

/// Topmost point of `r` on the vertical line `x` (clamped into the projection).
pub fn representative<T: Scalar>(r: &Region<T>, x: T) -> Point<T> {
    let proj = r.x_projection().expect("bounded region");
    let x = x.clampf(proj.lo, proj.hi);
    match r {
        Region::Point(p) => *p,
        Region::Segment(s) => top_on_segment(s, x),
        Region::Disk(d) => {
            let dx = x - d.center.x;
            let dy = (d.radius * d.radius - dx * dx).maxf(T::zero()).sqrt();
            Point::new(x, d.center.y + dy)
        }
        Region::Polygon(poly) => poly
            .edges()
            .filter(|e| e.a.x.minf(e.b.x) <= x && x <= e.a.x.maxf(e.b.x))
            .map(|e| top_on_segment(&e, x))
            .max_by(|a, b| cmp_f(&a.y, &b.y))
            .expect("line crosses the polygon"),
        Region::Line(_) => unreachable!("bounded region"),
    }
}

fn top_on_segment<T: Scalar>(s: &Segment<T>, x: T) -> Point<T> {
    let dx = s.b.x - s.a.x;
    if dx.abs() <= T::lit(1e-15) {
        if s.a.y >= s.b.y {
            Point::new(x, s.a.y)
        } else {
            Point::new(x, s.b.y)
        }
    } else {
        let t = ((x - s.a.x) / dx).clampf(T::zero(), T::one());
        Point::new(x, s.a.y + (s.b.y - s.a.y) * t)
    }
}

/// Greedy minimum stabbing of the x-projections: each new line goes at the
/// smallest right endpoint among intervals not yet stabbed.
pub fn greedy_cover<T: Scalar>(regions: &[Region<T>]) -> GreedyCover<T> {
    let proj: Vec<_> = regions.iter().map(|r| r.x_projection().expect("bounded region")).collect();
    let mut order: Vec<usize> = (0..regions.len()).collect();
    order.sort_by(|&a, &b| cmp_f(&proj[a].hi, &proj[b].hi));
    let mut line_of = vec![usize::MAX; regions.len()];
    let mut line_xs: Vec<T> = Vec::new();
    for &i in &order {
        if line_of[i] != usize::MAX {
            continue;
        }
        let x = proj[i].hi;
        let li = line_xs.len();
        line_xs.push(x);
        for j in 0..regions.len() {
            if line_of[j] == usize::MAX && stabs(proj[j].lo, proj[j].hi, x) {
                line_of[j] = li;
            }
        }
    }
    let reps = (0..regions.len()).map(|i| (i, representative(&regions[i], line_xs[line_of[i]]))).collect();
    GreedyCover { line_xs, reps, line_of }
}

/// `[lo, hi]` of the y-coordinates of `r` within the strip `x1 <= x <= x2`.
fn strip_y_range<T: Scalar>(r: &Region<T>, x1: T, x2: T) -> (T, T) {
    let clip_seg = |s: &Segment<T>, lo: &mut T, hi: &mut T| {
        let (a, b) = (s.a, s.b);
        let mut push = |p: Point<T>| {
            *lo = lo.minf(p.y);
            *hi = hi.maxf(p.y);
        };
        for p in [a, b] {
            if p.x >= x1 && p.x <= x2 {
                push(p);
            }
        }
        let dx = b.x - a.x;
        if dx.abs() > T::zero() {
            for xv in [x1, x2] {
                let t = (xv - a.x) / dx;
                if t >= T::zero() && t <= T::one() {
                    push(Point::new(xv, a.y + (b.y - a.y) * t));
                }
            }
        }
    };
    let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
    match r {
        Region::Point(p) => return (p.y, p.y),
        Region::Segment(s) => clip_seg(s, &mut lo, &mut hi),
        Region::Disk(d) => {
            let xs = d.center.x.clampf(x1, x2);
            let dx = xs - d.center.x;
            let dy = (d.radius * d.radius - dx * dx).maxf(T::zero()).sqrt();
            return (d.center.y - dy, d.center.y + dy);
        }
        Region::Polygon(poly) => {
            for e in poly.edges() {
                clip_seg(&e, &mut lo, &mut hi);
            }
        }
        Region::Line(_) => unreachable!("bounded region"),
    }
    if lo > hi {
        // strip thinner than rounding: fall back to the closest point
        let p = representative(r, (x1 + x2) * T::half());
        return (p.y, p.y);
    }
    (lo, hi)
}

fn ternary<T: Scalar>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> (T, T) {
    let third = T::lit(1.0 / 3.0);
    for _ in 0..100 {
        if hi - lo <= T::lit(1e-15) * (T::one() + lo.abs() + hi.abs()) {
            break;
        }
        let m1 = lo + (hi - lo) * third;
        let m2 = hi - (hi - lo) * third;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let x = (lo + hi) * T::half();
    (x, f(x))
}

/// Whether `r` meets the closed rectangle `q`.
pub fn rectangle_touches<T: Scalar>(q: &Rectangle<T>, r: &Region<T>, tol: T) -> bool {
    if q.contains(r.anchor(), tol) {
        return true;
    }
    let c = q.corners();
    (0..4).any(|i| r.dist_element(&TourElement::Seg(Segment::new(c[i], c[(i + 1) % 4]))) <= tol)
}

/// Axis-aligned rectangle of least perimeter meeting every region.
///
/// For fixed `x1 <= x2` the best height is `max(0, max lo_i - min hi_i)`
/// over the regions' y-ranges inside the strip; for convex regions that
/// objective is jointly convex, so nested ternary search finds the optimum.
/// Non-convex polygons are handled through the same y-ranges and the
/// result is then grown until it touches each of them.
pub fn min_touching_rectangle<T: Scalar>(regions: &[Region<T>]) -> Option<Rectangle<T>> {
    if regions.is_empty() {
        return None;
    }
    let proj: Vec<_> = regions.iter().map(|r| r.x_projection().expect("bounded region")).collect();
    let left = proj.iter().map(|p| p.lo).fold(T::infinity(), |a, b| a.minf(b));
    let right = proj.iter().map(|p| p.hi).fold(T::neg_infinity(), |a, b| a.maxf(b));
    let min_hi = proj.iter().map(|p| p.hi).fold(T::infinity(), |a, b| a.minf(b));
    let max_lo = proj.iter().map(|p| p.lo).fold(T::neg_infinity(), |a, b| a.maxf(b));

    let height = |x1: T, x2: T| {
        let mut lo = T::neg_infinity();
        let mut hi = T::infinity();
        for r in regions {
            let (a, b) = strip_y_range(r, x1, x2);
            lo = lo.maxf(a);
            hi = hi.minf(b);
        }
        (lo, hi)
    };
    let cost = |x1: T, x2: T| {
        let (lo, hi) = height(x1, x2);
        (x2 - x1) + (lo - hi).maxf(T::zero())
    };
    let best_x2 = |x1: T| ternary(x1.maxf(max_lo), right.maxf(x1.maxf(max_lo)), |x2| cost(x1, x2));
    let (x1, _) = ternary(left, min_hi, |x1| best_x2(x1).1);
    let (x2, _) = best_x2(x1);
    let (lo, hi) = height(x1, x2);
    let mut q = if lo > hi { Rectangle::new(x1, x2, hi, lo) } else { Rectangle::new(x1, x2, lo, lo) };

    let tol = T::lit(1e-9);
    for r in regions {
        if !rectangle_touches(&q, r, tol) {
            q = q.expand_to(r.closest_point(q.center()));
        }
    }
    Some(q)
}

/// Which branch of Algorithm A produced a tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    Empty,
    C1,
    C2_1,
    C2_2,
    C3,
    /// Parallel segments on one covering line: doubled vertical segment.
    ParallelOneLine,
    /// Parallel segments on two covering lines: perimeter of the touching rectangle.
    ParallelTwoLines,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseTrace<T> {
    pub case: CaseTag,
    pub rectangle: Option<Rectangle<T>>,
    /// Distance between the two covering lines in Case 2.
    pub gap: Option<T>,
    pub cover: GreedyCover<T>,
    pub tour: Tour<T>,
    /// False when the Case 3 point tour came from the heuristic.
    pub exact_point_tour: bool,
}

/// Rectangle boundary plus doubled verticals cutting it into `parts`
/// equal-width slabs, as one closed walk of length `2w + 2 parts h`.
pub fn rectangle_euler_tour<T: Scalar>(q: &Rectangle<T>, parts: usize) -> Tour<T> {
    let (w, h) = (q.width(), q.height());
    if w <= T::zero() && h <= T::zero() {
        return Tour::point(Point::new(q.x1, q.y1));
    }
    let mut pts = vec![Point::new(q.x1, q.y1)];
    for i in 1..parts {
        let x = q.x1 + w * T::from_usize_lossy(i) / T::from_usize_lossy(parts);
        pts.push(Point::new(x, q.y1));
        pts.push(Point::new(x, q.y2));
        pts.push(Point::new(x, q.y1));
    }
    pts.extend([Point::new(q.x2, q.y1), Point::new(q.x2, q.y2), Point::new(q.x1, q.y2)]);
    Tour::closed_polyline_compact(&pts)
}

fn perimeter_tour<T: Scalar>(q: &Rectangle<T>) -> Tour<T> {
    rectangle_euler_tour(q, 1)
}

fn reps_tour<T: Scalar>(cover: &GreedyCover<T>, seed: u64) -> Result<(Tour<T>, bool), PointTspError> {
    let pts: Vec<_> = cover.reps.iter().map(|r| r.1).collect();
    let r = point_tour(&pts, seed)?;
    Ok((r.tour, r.exact))
}

/// Algorithm A on unit-diameter regions whose diameters are almost horizontal.
pub fn algorithm_a<T: Scalar>(regions: &[Region<T>], seed: u64) -> Result<CaseTrace<T>, SameDiameterError> {
    if regions.is_empty() {
        return Ok(CaseTrace {
            case: CaseTag::Empty,
            rectangle: None,
            gap: None,
            cover: GreedyCover { line_xs: vec![], reps: vec![], line_of: vec![] },
            tour: Tour::empty(),
            exact_point_tour: true,
        });
    }
    let mut cover = greedy_cover(regions);
    let trace = |case, rectangle, gap, cover, tour| CaseTrace { case, rectangle, gap, cover, tour, exact_point_tour: true };
    match cover.line_xs.len() {
        1 => {
            let q = min_touching_rectangle(regions).expect("nonempty");
            let tour = rectangle_euler_tour(&q, 3);
            Ok(trace(CaseTag::C1, Some(q), None, cover, tour))
        }
        2 => {
            reslide_second_line(regions, &mut cover);
            let d = cover.line_xs[1] - cover.line_xs[0];
            if d >= T::lit(3.0) {
                let ys = cover.reps.iter().map(|r| r.1.y);
                let y1 = ys.clone().fold(T::infinity(), |a, b| a.minf(b));
                let y2 = ys.fold(T::neg_infinity(), |a, b| a.maxf(b));
                let q = Rectangle::new(cover.line_xs[0], cover.line_xs[1], y1, y2);
                let tour = perimeter_tour(&q);
                Ok(trace(CaseTag::C2_1, Some(q), Some(d), cover, tour))
            } else {
                let q = min_touching_rectangle(regions).expect("nonempty");
                let tour = rectangle_euler_tour(&q, 8);
                Ok(trace(CaseTag::C2_2, Some(q), Some(d), cover, tour))
            }
        }
        _ => {
            let (tour, exact) = reps_tour(&cover, seed)?;
            Ok(CaseTrace { case: CaseTag::C3, rectangle: None, gap: None, cover, tour, exact_point_tour: exact })
        }
    }
}

/// Moves the second of two covering lines as far left as the cover allows:
/// to the largest left endpoint among regions the first line misses.
fn reslide_second_line<T: Scalar>(regions: &[Region<T>], cover: &mut GreedyCover<T>) {
    let x1 = cover.line_xs[0];
    let mut x2 = T::neg_infinity();
    for (i, r) in regions.iter().enumerate() {
        if cover.line_of[i] == 1 {
            x2 = x2.maxf(r.x_projection().expect("bounded region").lo);
        }
    }
    if x2 > x1 {
        cover.line_xs[1] = x2;
    }
    for (i, r) in regions.iter().enumerate() {
        cover.reps[i].1 = representative(r, cover.line_xs[cover.line_of[i]]);
    }
}

/// Joins two closed tours through their closest pair of points with a
/// doubled connector: `|t1| + |t2| + 2 dist(t1, t2)`.
pub fn combine_tours<T: Scalar>(t1: &Tour<T>, t2: &Tour<T>) -> Tour<T> {
    if t1.is_empty() {
        return t2.clone();
    }
    if t2.is_empty() {
        return t1.clone();
    }
    let (i, p, j, q) = t1.closest_points(t2).expect("both tours nonempty");
    let a = t1.rotate_to(i, p);
    let b = t2.rotate_to(j, q);
    let mut el = a.elements;
    el.push(TourElement::Seg(Segment::new(p, q)));
    el.extend(b.elements);
    el.push(TourElement::Seg(Segment::new(q, p)));
    let mut t = Tour::from_elements(el);
    t.compact();
    t
}

/// Output of the full same-diameter pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SameDiameterResult<T> {
    pub classified: ClassifiedInstance<T>,
    /// Traces in unit-diameter coordinates; the type-2 trace is in the
    /// rotated frame.
    pub type1: CaseTrace<T>,
    pub type2: CaseTrace<T>,
    /// Whether the parallel-segment pipeline replaced Algorithm A.
    pub parallel_segments: bool,
    pub tour: Tour<T>,
}

/// Quarter turn undoing [`Region::rotate270`], exact in floating point.
fn rotate_tour90<T: Scalar>(t: &Tour<T>) -> Tour<T> {
    t.map_points(|p| p.perp(), |s, w| (s + T::FRAC_PI_2(), w), T::one())
}

/// Common direction angle in `(-pi/2, pi/2]` when every region is a segment
/// parallel to the first.
fn common_segment_angle<T: Scalar>(regions: &[Region<T>]) -> Option<T> {
    let first = match regions.first()? {
        Region::Segment(s) => s.dir(),
        _ => return None,
    };
    let u = first * (T::one() / first.norm());
    for r in regions {
        let Region::Segment(s) = r else { return None };
        let v = s.dir();
        if u.cross(v).abs() > T::lit(1e-9) * v.norm() {
            return None;
        }
    }
    let mut a = u.angle();
    if a > T::FRAC_PI_2() {
        a = a - T::PI();
    } else if a <= -T::FRAC_PI_2() {
        a = a + T::PI();
    }
    Some(a)
}

/// Constant-factor tour for regions that all share one diameter.
pub fn tspn_same_diameter<T: Scalar>(regions: &[Region<T>], seed: u64) -> Result<SameDiameterResult<T>, SameDiameterError> {
    let classified = classify(regions)?;
    if regions.is_empty() {
        let empty = algorithm_a::<T>(&[], seed)?;
        return Ok(SameDiameterResult {
            classified,
            type1: empty.clone(),
            type2: empty,
            parallel_segments: false,
            tour: Tour::empty(),
        });
    }
    let k = T::one() / classified.delta;
    let unit: Vec<Region<T>> = regions.iter().map(|r| r.scale(k)).collect();

    if let Some(theta) = common_segment_angle(&unit) {
        let flat: Vec<_> = unit.iter().map(|r| r.rotate(-theta)).collect();
        let trace = parallel_segments_tour(&flat, seed)?;
        let tour = trace.tour.rotate(theta).scale(classified.delta);
        let empty = algorithm_a::<T>(&[], seed)?;
        return Ok(SameDiameterResult { classified, type1: trace, type2: empty, parallel_segments: true, tour });
    }

    let t1: Vec<_> = classified.type1.iter().map(|&i| unit[i].clone()).collect();
    let t2: Vec<_> = classified.type2.iter().map(|&i| unit[i].rotate270()).collect();
    let a1 = algorithm_a(&t1, seed)?;
    let a2 = algorithm_a(&t2, seed)?;
    let merged = combine_tours(&a1.tour, &rotate_tour90(&a2.tour));
    let tour = merged.scale(classified.delta);
    Ok(SameDiameterResult { classified, type1: a1, type2: a2, parallel_segments: false, tour })
}

/// Horizontal unit segments: optimal doubled segment for one covering line,
/// the touching rectangle's perimeter for two, representatives otherwise.
pub fn parallel_segments_tour<T: Scalar>(regions: &[Region<T>], seed: u64) -> Result<CaseTrace<T>, SameDiameterError> {
    if regions.is_empty() {
        return algorithm_a(regions, seed);
    }
    let cover = greedy_cover(regions);
    let base = |case, rectangle, cover, tour| CaseTrace { case, rectangle, gap: None, cover, tour, exact_point_tour: true };
    match cover.line_xs.len() {
        1 => {
            let x = cover.line_xs[0];
            let ys = cover.reps.iter().map(|r| r.1.y);
            let y1 = ys.clone().fold(T::infinity(), |a, b| a.minf(b));
            let y2 = ys.fold(T::neg_infinity(), |a, b| a.maxf(b));
            let mut tour = Tour::closed_polyline(&[Point::new(x, y1), Point::new(x, y2)]);
            tour.compact();
            Ok(base(CaseTag::ParallelOneLine, None, cover, tour))
        }
        2 => {
            let q = min_touching_rectangle(regions).expect("nonempty");
            let mut tour = perimeter_tour(&q);
            let tol = T::lit(1e-9);
            if regions.iter().any(|r| r.dist_tour(&tour) > tol) {
                // a segment sits strictly inside: walk both covering lines too
                let mut pts = vec![Point::new(q.x1, q.y1)];
                for &x in &cover.line_xs {
                    let x = x.clampf(q.x1, q.x2);
                    pts.extend([Point::new(x, q.y1), Point::new(x, q.y2), Point::new(x, q.y1)]);
                }
                pts.extend([Point::new(q.x2, q.y1), Point::new(q.x2, q.y2), Point::new(q.x1, q.y2)]);
                tour = Tour::closed_polyline_compact(&pts);
            }
            Ok(base(CaseTag::ParallelTwoLines, Some(q), cover, tour))
        }
        _ => {
            let (tour, exact) = reps_tour(&cover, seed)?;
            Ok(CaseTrace { case: CaseTag::C3, rectangle: None, gap: None, cover, tour, exact_point_tour: exact })
        }
    }
}

#[cfg(test)]
mod tests;
