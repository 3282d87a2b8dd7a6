//! Closed tours made of straight segments and circular arcs.

use serde::{Deserialize, Serialize};

use super::primitives::{Point, Rectangle, Segment};
use crate::scalar::Scalar;

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle<T: Scalar>(a: T) -> T {
    let tau = T::tau();
    let mut r = a % tau;
    if r < T::zero() {
        r = r + tau;
    }
    if r >= tau {
        r = r - tau;
    }
    r
}

/// Circular arc `center + radius·(cos θ, sin θ)` for θ from `start` to
/// `start + sweep`; negative sweep runs clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc<T> {
    pub center: Point<T>,
    pub radius: T,
    pub start: T,
    pub sweep: T,
}

impl<T: Scalar> Arc<T> {
    pub fn new(center: Point<T>, radius: T, start: T, sweep: T) -> Self {
        Arc { center, radius, start, sweep }
    }

    pub fn len(&self) -> T {
        self.sweep.abs() * self.radius
    }

    pub fn point_at(&self, t: T) -> Point<T> {
        self.center + Point::polar(self.start + self.sweep * t) * self.radius
    }

    pub fn start_point(&self) -> Point<T> {
        self.point_at(T::zero())
    }

    pub fn end_point(&self) -> Point<T> {
        self.point_at(T::one())
    }

    pub fn is_full(&self) -> bool {
        self.sweep.abs() >= T::tau() - T::EPS
    }

    /// Fraction in `[0, 1]` along the arc at which angle `theta` is reached, if swept.
    pub fn param_of_angle(&self, theta: T) -> Option<T> {
        if self.sweep == T::zero() {
            return None;
        }
        let delta = if self.sweep > T::zero() {
            wrap_angle(theta - self.start)
        } else {
            wrap_angle(self.start - theta)
        };
        let s = self.sweep.abs();
        if delta <= s + T::EPS {
            Some((delta / s).minf(T::one()))
        } else if self.is_full() {
            Some(T::zero())
        } else {
            None
        }
    }

    pub fn contains_angle(&self, theta: T) -> bool {
        self.param_of_angle(theta).is_some()
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        let v = p - self.center;
        if v.norm() > T::zero() && self.contains_angle(v.angle()) {
            return self.center + v * (self.radius / v.norm());
        }
        let (s, e) = (self.start_point(), self.end_point());
        if s.dist(p) <= e.dist(p) {
            s
        } else {
            e
        }
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        self.closest_point(p).dist(p)
    }

    /// Extreme points along ±x and ±y that the arc actually passes.
    fn axis_extremes(&self) -> impl Iterator<Item = Point<T>> + '_ {
        let quarter = T::FRAC_PI_2();
        (0..4).filter_map(move |k| {
            let a = quarter * T::from_usize_lossy(k);
            self.contains_angle(a).then(|| self.center + Point::polar(a) * self.radius)
        })
    }

    /// Points of the arc where the circle meets the segment.
    pub fn segment_hits(&self, s: &Segment<T>) -> Vec<Point<T>> {
        let d = s.dir();
        let f = s.a - self.center;
        let a = d.norm2();
        let mut out = Vec::new();
        if a <= T::zero() {
            if (f.norm() - self.radius).abs() <= T::EPS && self.contains_angle(f.angle()) {
                out.push(s.a);
            }
            return out;
        }
        let b = T::two() * f.dot(d);
        let c = f.norm2() - self.radius * self.radius;
        let disc = b * b - T::lit(4.0) * a * c;
        let tol = T::EPS * (T::one() + self.radius);
        if disc < -tol {
            return out;
        }
        let sq = disc.maxf(T::zero()).sqrt();
        for t in [(-b - sq) / (T::two() * a), (-b + sq) / (T::two() * a)] {
            if t >= -T::EPS && t <= T::one() + T::EPS {
                let p = s.at(t.clampf(T::zero(), T::one()));
                if self.contains_angle((p - self.center).angle()) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn closest_to_segment(&self, s: &Segment<T>) -> (Point<T>, Point<T>) {
        if let Some(p) = self.segment_hits(s).first() {
            return (*p, *p);
        }
        let mut cands = vec![
            (self.closest_point(s.a), s.a),
            (self.closest_point(s.b), s.b),
            (self.start_point(), s.closest_point(self.start_point())),
            (self.end_point(), s.closest_point(self.end_point())),
        ];
        let foot = s.closest_point(self.center);
        cands.push((self.closest_point(foot), foot));
        best_pair(cands)
    }

    pub fn closest_to_arc(&self, o: &Arc<T>) -> (Point<T>, Point<T>) {
        let dc = o.center - self.center;
        let dd = dc.norm();
        // circle-circle intersections
        if dd > T::zero() {
            let (r1, r2) = (self.radius, o.radius);
            let a = (dd * dd + r1 * r1 - r2 * r2) / (T::two() * dd);
            let h2 = r1 * r1 - a * a;
            if h2 >= -T::EPS {
                let h = h2.maxf(T::zero()).sqrt();
                let u = dc * (T::one() / dd);
                let base = self.center + u * a;
                for sgn in [T::one(), -T::one()] {
                    let p = base + u.perp() * (h * sgn);
                    if self.contains_angle((p - self.center).angle()) && o.contains_angle((p - o.center).angle()) {
                        return (p, p);
                    }
                }
            }
        }
        let mut cands = vec![
            (self.start_point(), o.closest_point(self.start_point())),
            (self.end_point(), o.closest_point(self.end_point())),
            (self.closest_point(o.start_point()), o.start_point()),
            (self.closest_point(o.end_point()), o.end_point()),
        ];
        if dd > T::zero() {
            let u = dc * (T::one() / dd);
            for s1 in [T::one(), -T::one()] {
                for s2 in [T::one(), -T::one()] {
                    let p = self.center + u * (self.radius * s1);
                    let q = o.center + u * (o.radius * s2);
                    if self.contains_angle((u * s1).angle()) && o.contains_angle((u * s2).angle()) {
                        cands.push((p, q));
                    }
                }
            }
        }
        best_pair(cands)
    }
}

fn best_pair<T: Scalar>(cands: Vec<(Point<T>, Point<T>)>) -> (Point<T>, Point<T>) {
    let mut best = cands[0];
    let mut bd = best.0.dist(best.1);
    for c in cands.into_iter().skip(1) {
        let d = c.0.dist(c.1);
        if d < bd {
            bd = d;
            best = c;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TourElement<T> {
    Seg(Segment<T>),
    Arc(Arc<T>),
}

impl<T: Scalar> TourElement<T> {
    pub fn len(&self) -> T {
        match self {
            TourElement::Seg(s) => s.len(),
            TourElement::Arc(a) => a.len(),
        }
    }

    pub fn start(&self) -> Point<T> {
        match self {
            TourElement::Seg(s) => s.a,
            TourElement::Arc(a) => a.start_point(),
        }
    }

    pub fn end(&self) -> Point<T> {
        match self {
            TourElement::Seg(s) => s.b,
            TourElement::Arc(a) => a.end_point(),
        }
    }

    pub fn point_at(&self, t: T) -> Point<T> {
        match self {
            TourElement::Seg(s) => s.at(t),
            TourElement::Arc(a) => a.point_at(t),
        }
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        match self {
            TourElement::Seg(s) => s.closest_point(p),
            TourElement::Arc(a) => a.closest_point(p),
        }
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        self.closest_point(p).dist(p)
    }

    /// Parameter of a point assumed to lie on the element.
    pub fn param_of(&self, p: Point<T>) -> T {
        match self {
            TourElement::Seg(s) => s.project_param(p),
            TourElement::Arc(a) => a.param_of_angle((p - a.center).angle()).unwrap_or(T::zero()),
        }
    }

    /// Splits at parameter `t` into the part before and after.
    pub fn split(&self, t: T) -> (TourElement<T>, TourElement<T>) {
        match self {
            TourElement::Seg(s) => {
                let m = s.at(t);
                (TourElement::Seg(Segment::new(s.a, m)), TourElement::Seg(Segment::new(m, s.b)))
            }
            TourElement::Arc(a) => {
                let s1 = a.sweep * t;
                (
                    TourElement::Arc(Arc::new(a.center, a.radius, a.start, s1)),
                    TourElement::Arc(Arc::new(a.center, a.radius, a.start + s1, a.sweep - s1)),
                )
            }
        }
    }

    /// Closest points `(on self, on other)`.
    pub fn closest_points(&self, o: &TourElement<T>) -> (Point<T>, Point<T>) {
        match (self, o) {
            (TourElement::Seg(s), TourElement::Seg(t)) => s.closest_points(t),
            (TourElement::Arc(a), TourElement::Seg(t)) => a.closest_to_segment(t),
            (TourElement::Seg(s), TourElement::Arc(b)) => {
                let (q, p) = b.closest_to_segment(s);
                (p, q)
            }
            (TourElement::Arc(a), TourElement::Arc(b)) => a.closest_to_arc(b),
        }
    }

    pub fn map(&self, f: &impl Fn(Point<T>) -> Point<T>, angle_map: &impl Fn(T, T) -> (T, T), scale: T) -> Self {
        match self {
            TourElement::Seg(s) => TourElement::Seg(Segment::new(f(s.a), f(s.b))),
            TourElement::Arc(a) => {
                let (start, sweep) = angle_map(a.start, a.sweep);
                TourElement::Arc(Arc::new(f(a.center), a.radius * scale, start, sweep))
            }
        }
    }

    fn bbox(&self) -> Rectangle<T> {
        match self {
            TourElement::Seg(s) => Rectangle::from_points([s.a, s.b]).unwrap(),
            TourElement::Arc(a) => {
                Rectangle::from_points([a.start_point(), a.end_point()].into_iter().chain(a.axis_extremes())).unwrap()
            }
        }
    }
}

/// A closed curve. The empty tour has no elements; a single point is one
/// zero-length segment.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Tour<T> {
    pub elements: Vec<TourElement<T>>,
}

impl<T: Scalar> Tour<T> {
    pub fn empty() -> Self {
        Tour { elements: Vec::new() }
    }

    pub fn point(p: Point<T>) -> Self {
        Tour { elements: vec![TourElement::Seg(Segment::new(p, p))] }
    }

    pub fn from_elements(elements: Vec<TourElement<T>>) -> Self {
        Tour { elements }
    }

    /// Closed polygon through `pts` in order; two points give a doubled segment.
    pub fn closed_polyline(pts: &[Point<T>]) -> Self {
        match pts.len() {
            0 => Tour::empty(),
            1 => Tour::point(pts[0]),
            n => Tour {
                elements: (0..n).map(|i| TourElement::Seg(Segment::new(pts[i], pts[(i + 1) % n]))).collect(),
            },
        }
    }

    /// Like [`Tour::closed_polyline`] but drops zero-length pieces.
    pub fn closed_polyline_compact(pts: &[Point<T>]) -> Self {
        let mut t = Tour::closed_polyline(pts);
        t.compact();
        t
    }

    pub fn circle(center: Point<T>, radius: T) -> Self {
        if radius <= T::zero() {
            Tour::point(center)
        } else {
            Tour { elements: vec![TourElement::Arc(Arc::new(center, radius, T::zero(), T::tau()))] }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> T {
        self.elements.iter().map(|e| e.len()).sum()
    }

    pub fn start_point(&self) -> Option<Point<T>> {
        self.elements.first().map(|e| e.start())
    }

    /// Removes zero-length elements, keeping a point tour if nothing remains.
    pub fn compact(&mut self) {
        if self.elements.is_empty() {
            return;
        }
        let anchor = self.elements[0].start();
        self.elements.retain(|e| e.len() > T::zero());
        if self.elements.is_empty() {
            self.elements.push(TourElement::Seg(Segment::new(anchor, anchor)));
        }
    }

    /// Consecutive elements share endpoints and the curve closes.
    pub fn is_closed(&self, tol: T) -> bool {
        let n = self.elements.len();
        if n == 0 {
            return true;
        }
        (0..n).all(|i| self.elements[i].end().dist(self.elements[(i + 1) % n].start()) <= tol)
    }

    pub fn bbox(&self) -> Option<Rectangle<T>> {
        self.elements.iter().map(|e| e.bbox()).reduce(|a, b| a.union(b))
    }

    pub fn vertices(&self) -> Vec<Point<T>> {
        self.elements.iter().map(|e| e.start()).collect()
    }

    pub fn map_points(&self, f: impl Fn(Point<T>) -> Point<T>, angle_map: impl Fn(T, T) -> (T, T), scale: T) -> Self {
        Tour { elements: self.elements.iter().map(|e| e.map(&f, &angle_map, scale)).collect() }
    }

    pub fn translate(&self, v: Point<T>) -> Self {
        self.map_points(|p| p + v, |s, w| (s, w), T::one())
    }

    /// Rotation about the origin.
    pub fn rotate(&self, theta: T) -> Self {
        self.map_points(|p| p.rotate(theta), |s, w| (s + theta, w), T::one())
    }

    /// Uniform scaling about the origin, `k > 0`.
    pub fn scale(&self, k: T) -> Self {
        self.map_points(|p| p * k, |s, w| (s, w), k)
    }

    /// Reflection across the diagonal `y = x`.
    pub fn swap_xy(&self) -> Self {
        self.map_points(|p| p.swap_xy(), |s, w| (T::FRAC_PI_2() - s, -w), T::one())
    }

    /// Same curve, traversed starting from point `p` on element `idx`.
    pub fn rotate_to(&self, idx: usize, p: Point<T>) -> Self {
        let e = self.elements[idx];
        let t = e.param_of(p);
        let (before, after) = e.split(t);
        let mut elements = Vec::with_capacity(self.elements.len() + 1);
        elements.push(after);
        elements.extend_from_slice(&self.elements[idx + 1..]);
        elements.extend_from_slice(&self.elements[..idx]);
        elements.push(before);
        // snap the split point exactly
        if let Some(TourElement::Seg(s)) = elements.first_mut() {
            s.a = p;
        }
        if let Some(TourElement::Seg(s)) = elements.last_mut() {
            s.b = p;
        }
        Tour { elements }
    }

    /// Closest points between two nonempty tours:
    /// `(element of self, point on self, element of other, point on other)`.
    pub fn closest_points(&self, o: &Tour<T>) -> Option<(usize, Point<T>, usize, Point<T>)> {
        let mut best: Option<(usize, Point<T>, usize, Point<T>, T)> = None;
        for (i, e) in self.elements.iter().enumerate() {
            for (j, f) in o.elements.iter().enumerate() {
                let (p, q) = e.closest_points(f);
                let d = p.dist(q);
                if best.as_ref().map_or(true, |b| d < b.4) {
                    best = Some((i, p, j, q, d));
                }
            }
        }
        best.map(|(i, p, j, q, _)| (i, p, j, q))
    }
}

/// Euclidean length of a tour.
pub fn tour_length<T: Scalar>(t: &Tour<T>) -> T {
    t.len()
}
