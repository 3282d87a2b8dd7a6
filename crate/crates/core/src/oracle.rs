//! Ground truth for tiny instances and lower bounds for any instance.
//!
//! [`discretized_opt`] samples each region's boundary, solves the choice of
//! one sample per region exactly for every visiting order, refines the
//! sampling, and finally polishes the touch points continuously. Lines are
//! replaced by long clipped segments.

use serde::{Deserialize, Serialize};

use crate::disks::area_lower_bound;
use crate::geom::{Line, Point, Polygon, Rectangle, Region, Segment, Tour, TourElement};
use crate::lines::three_line_opt;
use crate::scalar::{cmp_f, Scalar};

/// Largest instance [`discretized_opt`] accepts.
pub const MAX_REGIONS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("empty instance")]
    Empty,
    #[error("oracle capped at {MAX_REGIONS} regions, got {0}")]
    Capped(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleParams {
    /// Boundary samples per region in the first round.
    pub k_start: usize,
    /// Refinement stops once a round improves by less than this.
    pub tol_stop: f64,
    /// Finest effective sampling.
    pub k_max: usize,
    /// Largest sampling at which every region is resampled in full; finer
    /// rounds only resample a window around the current touch points.
    pub k_global: usize,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams { k_start: 16, tol_stop: 1e-4, k_max: 512, k_global: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    ExactDiscretized,
    ClosedForm,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<T> {
    pub length: T,
    pub tour: Tour<T>,
    pub kind: OracleKind,
    /// Finest effective samples per region.
    pub k: usize,
    pub rounds: usize,
    /// `(k, length)` after each round; the last entry is the polished length.
    pub history: Vec<(usize, T)>,
    /// Touch point of each input region.
    pub touch_points: Vec<Point<T>>,
    /// Visiting order of the regions.
    pub order: Vec<usize>,
    /// Box the lines were clipped to, if any.
    pub clip_box: Option<Rectangle<T>>,
}

/// Bounded stand-in for a region: what gets sampled and polished.
#[derive(Debug, Clone)]
enum Shape<T> {
    Point(Point<T>),
    Seg(Segment<T>),
    Circle(Point<T>, T),
    Poly { poly: Polygon<T>, cum: Vec<T>, per: T },
}

impl<T: Scalar> Shape<T> {
    fn new(r: &Region<T>, clip: Option<&Rectangle<T>>) -> Self {
        match r {
            Region::Point(p) => Shape::Point(*p),
            Region::Segment(s) => Shape::Seg(*s),
            Region::Disk(d) => Shape::Circle(d.center, d.radius),
            Region::Polygon(poly) => {
                let mut cum = vec![T::zero()];
                for e in poly.edges() {
                    let last = *cum.last().unwrap();
                    cum.push(last + e.len());
                }
                let per = *cum.last().unwrap();
                Shape::Poly { poly: poly.clone(), cum, per }
            }
            Region::Line(l) => {
                let b = clip.expect("lines need a clip box");
                Shape::Seg(l.clip(b).unwrap_or_else(|| {
                    let p = l.project(b.center());
                    Segment::new(p, p)
                }))
            }
        }
    }

    fn periodic(&self) -> bool {
        matches!(self, Shape::Circle(..) | Shape::Poly { .. })
    }

    fn perimeter(&self) -> T {
        match self {
            Shape::Point(_) => T::zero(),
            Shape::Seg(s) => s.len(),
            Shape::Circle(_, r) => T::tau() * *r,
            Shape::Poly { per, .. } => *per,
        }
    }

    /// Boundary point at parameter `t`; periodic shapes wrap, segments clamp.
    fn at(&self, t: T) -> Point<T> {
        match self {
            Shape::Point(p) => *p,
            Shape::Seg(s) => s.at(t.clampf(T::zero(), T::one())),
            Shape::Circle(c, r) => *c + Point::polar(wrap01(t) * T::tau()) * *r,
            Shape::Poly { poly, cum, per } => {
                let target = wrap01(t) * *per;
                let v = poly.vertices();
                let i = cum.partition_point(|&c| c <= target).saturating_sub(1).min(v.len() - 1);
                let len = cum[i + 1] - cum[i];
                let f = if len > T::zero() { (target - cum[i]) / len } else { T::zero() };
                v[i].lerp(v[(i + 1) % v.len()], f)
            }
        }
    }

    /// Parameter of the boundary point closest to `p`.
    fn param_of(&self, p: Point<T>) -> T {
        match self {
            Shape::Point(_) => T::zero(),
            Shape::Seg(s) => s.project_param(p),
            Shape::Circle(c, _) => wrap01((p - *c).angle() / T::tau()),
            Shape::Poly { poly, cum, per } => {
                let mut best = (T::infinity(), T::zero());
                for (i, e) in poly.edges().enumerate() {
                    let t = e.project_param(p);
                    let d = e.at(t).dist(p);
                    if d < best.0 {
                        best = (d, (cum[i] + t * e.len()) / *per);
                    }
                }
                best.1
            }
        }
    }

    fn contains(&self, p: Point<T>, tol: T) -> bool {
        match self {
            Shape::Point(q) => q.dist(p) <= tol,
            Shape::Seg(s) => s.dist_point(p) <= tol,
            Shape::Circle(c, r) => c.dist(p) <= *r + tol,
            Shape::Poly { poly, .. } => poly.contains(p, tol),
        }
    }

    /// A point of the shape on segment `s`, if they meet.
    fn meets(&self, s: &Segment<T>) -> Option<Point<T>> {
        let tol = T::lit(1e-12);
        match self {
            Shape::Point(p) => (s.dist_point(*p) <= tol).then_some(*p),
            Shape::Seg(e) => {
                let (p, q) = s.closest_points(e);
                (p.dist(q) <= tol).then_some(q)
            }
            Shape::Circle(c, r) => {
                let q = s.closest_point(*c);
                (q.dist(*c) <= *r).then_some(q)
            }
            Shape::Poly { poly, .. } => {
                if poly.contains(s.a, T::zero()) {
                    return Some(s.a);
                }
                poly.edges().find_map(|e| {
                    let (p, q) = s.closest_points(&e);
                    (p.dist(q) <= tol).then_some(p)
                })
            }
        }
    }

    /// Boundary parameters for `k` samples; segments include both ends.
    fn uniform(&self, k: usize) -> Vec<T> {
        match self {
            Shape::Point(_) => vec![T::zero()],
            Shape::Seg(s) if s.len() <= T::zero() => vec![T::zero()],
            Shape::Seg(_) => (0..=k).map(|j| T::from_usize_lossy(j) / T::from_usize_lossy(k)).collect(),
            _ => (0..k).map(|j| T::from_usize_lossy(j) / T::from_usize_lossy(k)).collect(),
        }
    }

    /// Interior grid for non-convex polygons, where a boundary-only sample
    /// could miss the best touch point.
    fn interior(&self, k: usize) -> Vec<Point<T>> {
        let Shape::Poly { poly, per, .. } = self else { return vec![] };
        if poly.is_convex() {
            return vec![];
        }
        let b = Rectangle::from_points(poly.vertices().iter().copied()).unwrap();
        let mut step = *per / T::from_usize_lossy(k);
        while (b.width() / step + T::one()) * (b.height() / step + T::one()) > T::lit(400.0) {
            step = step * T::two();
        }
        let mut out = Vec::new();
        let mut x = b.x1 + step * T::half();
        while x < b.x2 {
            let mut y = b.y1 + step * T::half();
            while y < b.y2 {
                let p = Point::new(x, y);
                if poly.contains(p, T::zero()) {
                    out.push(p);
                }
                y = y + step;
            }
            x = x + step;
        }
        out
    }
}

fn wrap01<T: Scalar>(t: T) -> T {
    let w = t - t.floor();
    if w >= T::one() {
        T::zero()
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample<T> {
    p: Point<T>,
    /// Boundary parameter, when the sample lies on the sampled boundary.
    t: Option<T>,
}

/// Box that clipped lines span: three times the instance's extent.
fn clip_box<T: Scalar>(regions: &[Region<T>]) -> Option<Rectangle<T>> {
    let lines: Vec<&Line<T>> = regions.iter().filter_map(|r| r.as_line()).collect();
    if lines.is_empty() {
        return None;
    }
    let mut pts: Vec<Point<T>> = Vec::new();
    for r in regions.iter().filter(|r| r.is_bounded()) {
        let b = r.bbox().unwrap();
        pts.extend(b.corners());
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = lines[i].intersection(lines[j]) {
                pts.push(p);
            }
        }
    }
    // every line must cross the box: add its point nearest the rest
    let c = Rectangle::from_points(pts.iter().copied()).map_or(Point::origin(), |b| b.center());
    pts.extend(lines.iter().map(|l| l.project(c)));
    let b = Rectangle::from_points(pts).unwrap();
    let side = b.width().maxf(b.height()).maxf(T::one()) * T::lit(3.0);
    let c = b.center();
    let h = side * T::half();
    Some(Rectangle::new(c.x - h, c.x + h, c.y - h, c.y + h))
}

/// Closest points between two regions: `(distance, on a, on b)`.
pub fn region_closest<T: Scalar>(a: &Region<T>, b: &Region<T>) -> (T, Point<T>, Point<T>) {
    match (a, b) {
        (Region::Line(l), Region::Line(m)) => match l.intersection(m) {
            Some(x) => (T::zero(), x, x),
            None => {
                let p = l.anchor();
                let q = m.project(p);
                (p.dist(q), p, q)
            }
        },
        (Region::Line(l), _) => {
            let bb = b.bbox().unwrap().inflate(l.dist(b.anchor()) + T::one());
            let s = l.clip(&bb).expect("box reaches the line");
            region_closest(&Region::Segment(s), b)
        }
        (_, Region::Line(_)) => {
            let (d, p, q) = region_closest(b, a);
            (d, q, p)
        }
        _ => {
            if a.contains(b.anchor(), T::zero()) {
                return (T::zero(), b.anchor(), b.anchor());
            }
            if b.contains(a.anchor(), T::zero()) {
                return (T::zero(), a.anchor(), a.anchor());
            }
            let (ea, eb) = (boundary_elements(a), boundary_elements(b));
            let mut best = (T::infinity(), a.anchor(), b.anchor());
            for x in &ea {
                for y in &eb {
                    let (p, q) = x.closest_points(y);
                    let d = p.dist(q);
                    if d < best.0 {
                        best = (d, p, q);
                    }
                }
            }
            best
        }
    }
}

fn boundary_elements<T: Scalar>(r: &Region<T>) -> Vec<TourElement<T>> {
    match r {
        Region::Point(p) => vec![TourElement::Seg(Segment::new(*p, *p))],
        Region::Segment(s) => vec![TourElement::Seg(*s)],
        Region::Disk(d) => Tour::circle(d.center, d.radius).elements,
        Region::Polygon(poly) => poly.edges().map(TourElement::Seg).collect(),
        Region::Line(_) => unreachable!("lines are clipped first"),
    }
}

fn closed_form<T: Scalar>(regions: &[Region<T>]) -> OracleResult<T> {
    let (length, touch, tour) = if regions.len() == 1 {
        let p = regions[0].anchor();
        (T::zero(), vec![p], Tour::point(p))
    } else {
        let (d, p, q) = region_closest(&regions[0], &regions[1]);
        (T::two() * d, vec![p, q], Tour::closed_polyline_compact(&[p, q]))
    };
    OracleResult {
        length,
        tour,
        kind: OracleKind::ClosedForm,
        k: 0,
        rounds: 0,
        history: vec![(0, length)],
        touch_points: touch,
        order: (0..regions.len()).collect(),
        clip_box: None,
    }
}

/// Pairwise sample distances, indexed `[i][j][a * len_j + b]`.
struct DistTable<T> {
    d: Vec<Vec<Vec<T>>>,
    len: Vec<usize>,
}

impl<T: Scalar> DistTable<T> {
    fn new(samples: &[Vec<Sample<T>>]) -> Self {
        let n = samples.len();
        let mut d = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d[i][j] = samples[i].iter().flat_map(|a| samples[j].iter().map(move |b| a.p.dist(b.p))).collect();
                }
            }
        }
        DistTable { d, len: samples.iter().map(|s| s.len()).collect() }
    }

    #[inline]
    fn get(&self, i: usize, a: usize, j: usize, b: usize) -> T {
        self.d[i][j][a * self.len[j] + b]
    }
}

/// Shortest cycle picking one sample per region in the given order
/// (`order[0]` is the start region). Returns the length and the chosen
/// sample of every region along `order`.
fn best_cycle<T: Scalar>(dt: &DistTable<T>, order: &[usize], bound: T, want_path: bool) -> Option<(T, Vec<usize>)> {
    let n = order.len();
    let s0 = order[0];
    let mut best: Option<(T, Vec<usize>)> = None;
    for s in 0..dt.len[s0] {
        let mut cur: Vec<T> = (0..dt.len[order[1]]).map(|b| dt.get(s0, s, order[1], b)).collect();
        let mut parents: Vec<Vec<usize>> = Vec::new();
        for w in 1..n - 1 {
            let (i, j) = (order[w], order[w + 1]);
            let mut next = vec![T::infinity(); dt.len[j]];
            let mut par = vec![0; dt.len[j]];
            for (a, &ca) in cur.iter().enumerate() {
                if ca >= bound {
                    continue;
                }
                for (b, nb) in next.iter_mut().enumerate() {
                    let c = ca + dt.get(i, a, j, b);
                    if c < *nb {
                        *nb = c;
                        par[b] = a;
                    }
                }
            }
            cur = next;
            if want_path {
                parents.push(par);
            }
        }
        let last = order[n - 1];
        let (mut bv, mut ba) = (T::infinity(), 0);
        for (a, &ca) in cur.iter().enumerate() {
            let c = ca + dt.get(last, a, s0, s);
            if c < bv {
                bv = c;
                ba = a;
            }
        }
        if best.as_ref().map_or(bv < bound, |b| bv < b.0) {
            let mut path = Vec::new();
            if want_path {
                path = vec![0; n];
                path[0] = s;
                path[n - 1] = ba;
                for w in (1..n - 1).rev() {
                    path[w] = parents[w - 1][path[w + 1]];
                }
            }
            best = Some((bv, path));
        }
    }
    best
}

/// Visiting orders with `start` first, one per reversal pair.
fn orders(n: usize, start: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            let m = cur.len();
            if m < 3 || cur[1] < cur[m - 1] {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != start).collect();
    let mut out = Vec::new();
    rec(&mut rest, &mut vec![start], &mut out);
    out
}

/// Best cycle over all orders: `(length, order, chosen sample per region)`.
/// Orders whose discretized length exceeds the best by more than `margin`
/// are dropped from `alive`.
fn solve_round<T: Scalar>(samples: &[Vec<Sample<T>>], alive: &mut Vec<Vec<usize>>, margin: T) -> (T, Vec<usize>, Vec<usize>) {
    let dt = DistTable::new(samples);
    let mut vals: Vec<T> = Vec::with_capacity(alive.len());
    let mut best = (T::infinity(), 0usize);
    for (idx, o) in alive.iter().enumerate() {
        let v = best_cycle(&dt, o, T::infinity(), false).map_or(T::infinity(), |r| r.0);
        if v < best.0 {
            best = (v, idx);
        }
        vals.push(v);
    }
    let order = alive[best.1].clone();
    let (len, path) = best_cycle(&dt, &order, T::infinity(), true).expect("nonempty samples");
    let mut choice = vec![0; samples.len()];
    for (w, &r) in order.iter().enumerate() {
        choice[r] = path[w];
    }
    let keep = best.0 + margin;
    let mut i = 0;
    alive.retain(|_| {
        let ok = vals[i] <= keep;
        i += 1;
        ok
    });
    (len, order, choice)
}

fn cycle_len<T: Scalar>(pts: &[Point<T>], order: &[usize]) -> T {
    let n = order.len();
    (0..n).map(|w| pts[order[w]].dist(pts[order[(w + 1) % n]])).sum()
}

/// Adds to every region the samples of other regions lying inside it.
fn with_shared<T: Scalar>(shapes: &[Shape<T>], regions: &[Region<T>], own: Vec<Vec<Sample<T>>>) -> Vec<Vec<Sample<T>>> {
    let mut out = own.clone();
    for (i, r) in regions.iter().enumerate() {
        for (j, sj) in own.iter().enumerate() {
            if i == j {
                continue;
            }
            for s in sj {
                if shapes[i].contains(s.p, T::zero()) && r.contains(s.p, T::zero()) {
                    out[i].push(Sample { p: s.p, t: None });
                }
            }
        }
    }
    out
}

/// Near-exact optimum of a tiny instance.
pub fn discretized_opt<T: Scalar>(regions: &[Region<T>], params: &OracleParams) -> Result<OracleResult<T>, OracleError> {
    let n = regions.len();
    if n == 0 {
        return Err(OracleError::Empty);
    }
    if n > MAX_REGIONS {
        return Err(OracleError::Capped(n));
    }
    if n <= 2 {
        return Ok(closed_form(regions));
    }
    let clip = clip_box(regions);
    let shapes: Vec<Shape<T>> = regions.iter().map(|r| Shape::new(r, clip.as_ref())).collect();
    let tol_stop = T::lit(params.tol_stop);

    let global_samples = |k: usize| -> Vec<Vec<Sample<T>>> {
        let own = shapes
            .iter()
            .map(|s| {
                let mut v: Vec<Sample<T>> = s.uniform(k).into_iter().map(|t| Sample { p: s.at(t), t: Some(t) }).collect();
                v.extend(s.interior(k).into_iter().map(|p| Sample { p, t: None }));
                v
            })
            .collect();
        with_shared(&shapes, regions, own)
    };

    let first = global_samples(params.k_start);
    let start = (0..n).min_by_key(|&i| first[i].len()).unwrap();
    let mut alive = orders(n, start);
    let mut history = Vec::new();
    let mut k = params.k_start;
    let mut samples = first;
    let (mut best, mut order, mut choice);
    let mut rounds = 0;
    loop {
        // moving each touch point to its nearest sample costs at most
        // twice the sample gap
        let margin: T = shapes.iter().map(|s| s.perimeter() / T::from_usize_lossy(k)).sum::<T>() * T::lit(2.5) + T::lit(1e-9);
        let (l, o, c) = solve_round(&samples, &mut alive, margin);
        let improvement = history.last().map_or(T::infinity(), |&(_, prev): &(usize, T)| prev - l);
        best = l;
        order = o;
        choice = c;
        rounds += 1;
        history.push((k, l));
        if k * 2 > params.k_global || k * 2 > params.k_max || (rounds > 1 && improvement < tol_stop) {
            break;
        }
        k *= 2;
        samples = global_samples(k);
    }
    let mut touch: Vec<Sample<T>> = (0..n).map(|i| samples[i][choice[i]]).collect();

    // local rounds: a window of the next finer grid around each touch point
    let mut all_orders = orders(n, start);
    while k * 2 <= params.k_max {
        k *= 2;
        let h = T::one() / T::from_usize_lossy(k);
        let own: Vec<Vec<Sample<T>>> = (0..n)
            .map(|i| {
                let s = &shapes[i];
                let mut v = vec![touch[i]];
                if let (Some(t0), false) = (touch[i].t, matches!(s, Shape::Point(_))) {
                    for j in -8i32..=8 {
                        if j == 0 {
                            continue;
                        }
                        let t = t0 + h * T::lit(j as f64);
                        let t = if s.periodic() { wrap01(t) } else { t.clampf(T::zero(), T::one()) };
                        v.push(Sample { p: s.at(t), t: Some(t) });
                    }
                }
                v
            })
            .collect();
        let local = with_shared(&shapes, regions, own);
        let (l, o, c) = solve_round(&local, &mut all_orders, T::infinity());
        let prev = best;
        // the previous touch points remain available, so this never grows
        if l <= best {
            best = l;
            order = o;
            touch = (0..n).map(|i| local[i][c[i]]).collect();
        }
        rounds += 1;
        history.push((k, best));
        if prev - best < tol_stop {
            break;
        }
    }

    let mut pts: Vec<Point<T>> = touch.iter().map(|s| s.p).collect();
    let polished = polish(&shapes, &mut pts, &order);
    if polished <= best {
        best = polished;
    } else {
        pts = touch.iter().map(|s| s.p).collect();
    }
    history.push((k, best));

    let cyc: Vec<_> = order.iter().map(|&i| pts[i]).collect();
    Ok(OracleResult {
        length: best,
        tour: Tour::closed_polyline_compact(&cyc),
        kind: OracleKind::ExactDiscretized,
        k,
        rounds,
        history,
        touch_points: pts,
        order,
        clip_box: clip,
    })
}

/// Coordinate descent on the touch points for a fixed order: each point in
/// turn moves to the best place in its region given its two neighbors.
fn polish<T: Scalar>(shapes: &[Shape<T>], pts: &mut [Point<T>], order: &[usize]) -> T {
    let n = order.len();
    let mut len = cycle_len(pts, order);
    for _ in 0..2000 {
        let before = len;
        for w in 0..n {
            let i = order[w];
            let a = pts[order[(w + n - 1) % n]];
            let b = pts[order[(w + 1) % n]];
            pts[i] = best_between(&shapes[i], a, b, pts[i]);
        }
        len = cycle_len(pts, order);
        if before - len <= T::lit(1e-13) * (T::one() + len) {
            break;
        }
    }
    len
}

/// Point of `s` minimizing `|a p| + |p b|`, no worse than `cur`.
fn best_between<T: Scalar>(s: &Shape<T>, a: Point<T>, b: Point<T>, cur: Point<T>) -> Point<T> {
    let g = |p: Point<T>| a.dist(p) + p.dist(b);
    let g_cur = g(cur);
    if let Some(q) = s.meets(&Segment::new(a, b)) {
        return if g(q) <= g_cur { q } else { cur };
    }
    if matches!(s, Shape::Point(_)) {
        return cur;
    }
    let f = |t: T| g(s.at(t));
    let m = 64;
    let mut t0 = s.param_of(cur);
    let mut f0 = f(t0);
    for j in 0..=m {
        let t = T::from_usize_lossy(j) / T::from_usize_lossy(m);
        let v = f(t);
        if v < f0 {
            f0 = v;
            t0 = t;
        }
    }
    let w = T::one() / T::from_usize_lossy(m);
    let (mut lo, mut hi) = (t0 - w, t0 + w);
    if !s.periodic() {
        lo = lo.maxf(T::zero());
        hi = hi.minf(T::one());
    }
    let phi = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - (hi - lo) * phi;
    let mut x2 = lo + (hi - lo) * phi;
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * phi;
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * phi;
            f2 = f(x2);
        }
    }
    let cands = [(f1, x1), (f2, x2), (f0, t0)];
    let (fb, tb) = cands.into_iter().min_by(|p, q| cmp_f(&p.0, &q.0)).unwrap();
    if fb < g_cur {
        s.at(tb)
    } else {
        cur
    }
}

/// Lower bound on the optimal tour length, valid for any instance: the best
/// of a packing bound for equal disjoint disks, a width bound over many
/// directions, exact optima of line triples and doubled pairwise distances.
pub fn lower_bound<T: Scalar>(regions: &[Region<T>]) -> T {
    let n = regions.len();
    if n <= 1 {
        return T::zero();
    }
    let mut best = T::zero();

    if let Some(r) = equal_disjoint_disk_radius(regions) {
        best = best.maxf(area_lower_bound(n, r));
    }

    // extent forced in directions u and u-perp; a closed curve touching all
    // four sides of a w-by-h box is at least 2 sqrt(w^2 + h^2) long
    let steps = 180;
    for s in 0..steps {
        let th = T::PI() * T::from_usize_lossy(s) / T::from_usize_lossy(2 * steps);
        let u = Point::polar(th);
        let (wu, wv) = (forced_width(regions, u), forced_width(regions, u.perp()));
        best = best.maxf(T::two() * wu.maxf(T::zero()).hypot(wv.maxf(T::zero())));
    }

    let lines: Vec<Line<T>> = regions.iter().filter_map(|r| r.as_line().copied()).collect();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            for k in j + 1..lines.len() {
                best = best.maxf(three_line_opt(&[lines[i], lines[j], lines[k]]).0);
            }
        }
    }

    if n <= 400 {
        for i in 0..n {
            for j in i + 1..n {
                best = best.maxf(T::two() * region_closest(&regions[i], &regions[j]).0);
            }
        }
    }
    best
}

fn equal_disjoint_disk_radius<T: Scalar>(regions: &[Region<T>]) -> Option<T> {
    let disks: Vec<_> = regions.iter().map(|r| r.as_disk().copied()).collect::<Option<Vec<_>>>()?;
    let r = disks[0].radius;
    if disks.iter().any(|d| (d.radius - r).abs() > T::lit(1e-12) * r) {
        return None;
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if !disks[i].disjoint(&disks[j], T::zero()) {
                return None;
            }
        }
    }
    Some(r)
}

/// `max_i min_{R_i} u.p - min_i max_{R_i} u.p`: how far apart in direction
/// `u` any tour must reach.
fn forced_width<T: Scalar>(regions: &[Region<T>], u: Point<T>) -> T {
    let mut hi_of_lo = T::neg_infinity();
    let mut lo_of_hi = T::infinity();
    for r in regions {
        let (lo, hi) = support(r, u);
        hi_of_lo = hi_of_lo.maxf(lo);
        lo_of_hi = lo_of_hi.minf(hi);
    }
    hi_of_lo - lo_of_hi
}

fn support<T: Scalar>(r: &Region<T>, u: Point<T>) -> (T, T) {
    let span = |pts: &mut dyn Iterator<Item = Point<T>>| {
        pts.map(|p| u.dot(p)).fold((T::infinity(), T::neg_infinity()), |(a, b), v| (a.minf(v), b.maxf(v)))
    };
    match r {
        Region::Point(p) => (u.dot(*p), u.dot(*p)),
        Region::Segment(s) => span(&mut [s.a, s.b].into_iter()),
        Region::Disk(d) => (u.dot(d.center) - d.radius, u.dot(d.center) + d.radius),
        Region::Polygon(poly) => span(&mut poly.vertices().iter().copied()),
        Region::Line(l) => {
            if l.direction().dot(u).abs() <= T::lit(1e-12) {
                let v = u.dot(l.anchor());
                (v, v)
            } else {
                (T::neg_infinity(), T::infinity())
            }
        }
    }
}
