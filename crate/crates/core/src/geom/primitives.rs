use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GeomError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite point");
        Point { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: T, y: T) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeomError::NonFinite)
        }
    }

    #[inline]
    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `theta`.
    #[inline]
    pub fn polar(theta: T) -> Self {
        Point::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm2(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    #[inline]
    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn rotate(self, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    #[inline]
    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    #[inline]
    pub fn midpoint(self, o: Self) -> Self {
        self.lerp(o, T::half())
    }

    #[inline]
    pub fn swap_xy(self) -> Self {
        Point::new(self.y, self.x)
    }

    pub fn approx_eq(self, o: Self, tol: T) -> bool {
        self.dist(o) <= tol
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Point<T>;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Point<T>;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Point<T>;
    #[inline]
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Point<T>;
    #[inline]
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, v: T, tol: T) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment<T> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> Segment<T> {
    #[inline]
    pub fn new(a: Point<T>, b: Point<T>) -> Self {
        Segment { a, b }
    }

    #[inline]
    pub fn len(&self) -> T {
        self.a.dist(self.b)
    }

    #[inline]
    pub fn dir(&self) -> Point<T> {
        self.b - self.a
    }

    #[inline]
    pub fn at(&self, t: T) -> Point<T> {
        self.a.lerp(self.b, t)
    }

    pub fn reversed(&self) -> Self {
        Segment::new(self.b, self.a)
    }

    /// Parameter in `[0, 1]` of the point of the segment closest to `p`.
    pub fn project_param(&self, p: Point<T>) -> T {
        let d = self.dir();
        let l2 = d.norm2();
        if l2 <= T::zero() {
            return T::zero();
        }
        ((p - self.a).dot(d) / l2).clampf(T::zero(), T::one())
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        self.at(self.project_param(p))
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        self.closest_point(p).dist(p)
    }

    /// Proper or touching intersection point, if any (first one for overlaps).
    pub fn intersection(&self, o: &Segment<T>) -> Option<Point<T>> {
        let r = self.dir();
        let s = o.dir();
        let denom = r.cross(s);
        let qp = o.a - self.a;
        let scale = T::one() + r.norm() + s.norm();
        let eps = T::EPS * scale * scale;
        if denom.abs() <= eps {
            // parallel: check collinear overlap
            if qp.cross(r).abs() > eps * scale {
                return None;
            }
            for cand in [o.a, o.b, self.a, self.b] {
                if self.dist_point(cand) <= T::EPS * scale && o.dist_point(cand) <= T::EPS * scale {
                    return Some(cand);
                }
            }
            return None;
        }
        let t = qp.cross(s) / denom;
        let u = qp.cross(r) / denom;
        let tol = T::EPS;
        if t >= -tol && t <= T::one() + tol && u >= -tol && u <= T::one() + tol {
            Some(self.at(t.clampf(T::zero(), T::one())))
        } else {
            None
        }
    }

    /// Closest pair of points `(on self, on other)`.
    pub fn closest_points(&self, o: &Segment<T>) -> (Point<T>, Point<T>) {
        if let Some(p) = self.intersection(o) {
            return (p, p);
        }
        let mut best = (self.a, o.closest_point(self.a));
        let mut bd = best.0.dist(best.1);
        let cands = [
            (self.b, o.closest_point(self.b)),
            (self.closest_point(o.a), o.a),
            (self.closest_point(o.b), o.b),
        ];
        for c in cands {
            let d = c.0.dist(c.1);
            if d < bd {
                bd = d;
                best = c;
            }
        }
        best
    }

    pub fn dist_segment(&self, o: &Segment<T>) -> T {
        let (p, q) = self.closest_points(o);
        p.dist(q)
    }
}

/// Infinite line `a x + b y + c = 0`, stored normalized (`a² + b² = 1`,
/// first nonzero of `(a, b)` positive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> Line<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self, GeomError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let n = a.hypot(b);
        if n <= T::zero() {
            return Err(GeomError::DegenerateLine);
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        let flip = a < T::zero() || (a == T::zero() && b < T::zero());
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        // canonical zero
        if a == T::zero() {
            a = T::zero();
        }
        if b == T::zero() {
            b = T::zero();
        }
        Ok(Line { a, b, c })
    }

    pub fn through(p: Point<T>, q: Point<T>) -> Result<Self, GeomError> {
        let d = q - p;
        Line::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    #[inline]
    pub fn normal(&self) -> Point<T> {
        Point::new(self.a, self.b)
    }

    #[inline]
    pub fn direction(&self) -> Point<T> {
        Point::new(-self.b, self.a)
    }

    #[inline]
    pub fn signed_dist(&self, p: Point<T>) -> T {
        self.a * p.x + self.b * p.y + self.c
    }

    #[inline]
    pub fn dist(&self, p: Point<T>) -> T {
        self.signed_dist(p).abs()
    }

    pub fn project(&self, p: Point<T>) -> Point<T> {
        p - self.normal() * self.signed_dist(p)
    }

    /// Foot of the perpendicular from the origin.
    pub fn anchor(&self) -> Point<T> {
        self.normal() * (-self.c)
    }

    pub fn is_parallel(&self, o: &Line<T>) -> bool {
        self.normal().cross(o.normal()).abs() <= T::EPS
    }

    pub fn intersection(&self, o: &Line<T>) -> Option<Point<T>> {
        let det = self.a * o.b - self.b * o.a;
        if det.abs() <= T::EPS {
            return None;
        }
        let x = (self.b * o.c - o.b * self.c) / det;
        let y = (o.a * self.c - self.a * o.c) / det;
        Some(Point::new(x, y))
    }

    pub fn approx_eq(&self, o: &Line<T>, tol: T) -> bool {
        (self.a - o.a).abs() <= tol && (self.b - o.b).abs() <= tol && (self.c - o.c).abs() <= tol
    }

    /// Clips the line to an axis-aligned rectangle.
    pub fn clip(&self, r: &Rectangle<T>) -> Option<Segment<T>> {
        let p0 = self.anchor();
        let d = self.direction();
        let mut t0 = T::neg_infinity();
        let mut t1 = T::infinity();
        for (pc, dc, lo, hi) in [(p0.x, d.x, r.x1, r.x2), (p0.y, d.y, r.y1, r.y2)] {
            if dc.abs() <= T::EPS * T::EPS {
                if pc < lo || pc > hi {
                    return None;
                }
            } else {
                let a = (lo - pc) / dc;
                let b = (hi - pc) / dc;
                t0 = t0.maxf(a.minf(b));
                t1 = t1.minf(a.maxf(b));
            }
        }
        if t0 > t1 {
            return None;
        }
        Some(Segment::new(p0 + d * t0, p0 + d * t1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Disk<T> {
    pub fn new(center: Point<T>, radius: T) -> Result<Self, GeomError> {
        if !radius.is_finite() || !center.x.is_finite() || !center.y.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if radius < T::zero() {
            return Err(GeomError::NegativeRadius);
        }
        Ok(Disk { center, radius })
    }

    pub fn unit(center: Point<T>) -> Self {
        Disk { center, radius: T::one() }
    }

    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        p.dist(self.center) <= self.radius + tol
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        (p.dist(self.center) - self.radius).maxf(T::zero())
    }

    /// Disjoint closed disks, with `tol` slack on touching.
    pub fn disjoint(&self, o: &Disk<T>, tol: T) -> bool {
        self.center.dist(o.center) >= self.radius + o.radius - tol
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        let v = p - self.center;
        let d = v.norm();
        if d <= self.radius {
            p
        } else {
            self.center + v * (self.radius / d)
        }
    }

    pub fn point_at(&self, theta: T) -> Point<T> {
        self.center + Point::polar(theta) * self.radius
    }
}

/// Simple polygon, counterclockwise, at least three vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    /// Validates simplicity and orients counterclockwise.
    pub fn new(mut vertices: Vec<Point<T>>) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let area = signed_area(&vertices);
        if area.abs() <= T::EPS * T::EPS {
            return Err(GeomError::ZeroArea);
        }
        let n = vertices.len();
        for i in 0..n {
            let e = Segment::new(vertices[i], vertices[(i + 1) % n]);
            if e.len() <= T::zero() {
                return Err(GeomError::SelfIntersecting);
            }
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let f = Segment::new(vertices[j], vertices[(j + 1) % n]);
                if e.intersection(&f).is_some() {
                    return Err(GeomError::SelfIntersecting);
                }
            }
        }
        if area < T::zero() {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> T {
        self.edges().map(|e| e.len()).sum()
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            (b - a).cross(c - b) >= -T::EPS
        })
    }

    /// Point-in-polygon (boundary counts as inside within `tol`).
    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        if self.edges().any(|e| e.dist_point(p) <= tol) {
            return true;
        }
        let mut inside = false;
        let n = self.vertices.len();
        let mut j = n - 1;
        for i in 0..n {
            let (vi, vj) = (self.vertices[i], self.vertices[j]);
            if (vi.y > p.y) != (vj.y > p.y) {
                let x = vj.x + (p.y - vj.y) * (vi.x - vj.x) / (vi.y - vj.y);
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        if self.contains(p, T::zero()) {
            return T::zero();
        }
        self.edges()
            .map(|e| e.dist_point(p))
            .fold(T::infinity(), |a, b| a.minf(b))
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        if self.contains(p, T::zero()) {
            return p;
        }
        let mut best = self.vertices[0];
        let mut bd = T::infinity();
        for e in self.edges() {
            let q = e.closest_point(p);
            let d = q.dist(p);
            if d < bd {
                bd = d;
                best = q;
            }
        }
        best
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Result<Self, GeomError> {
        Polygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }
}

pub fn signed_area<T: Scalar>(pts: &[Point<T>]) -> T {
    let n = pts.len();
    let mut s = T::zero();
    for i in 0..n {
        s = s + pts[i].cross(pts[(i + 1) % n]);
    }
    s * T::half()
}

/// Axis-aligned rectangle `[x1, x2] × [y1, y2]`; may be degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle<T> {
    pub x1: T,
    pub x2: T,
    pub y1: T,
    pub y2: T,
}

impl<T: Scalar> Rectangle<T> {
    pub fn new(x1: T, x2: T, y1: T, y2: T) -> Self {
        debug_assert!(x1 <= x2 && y1 <= y2, "inverted rectangle");
        Rectangle { x1, x2, y1, y2 }
    }

    pub fn unit() -> Self {
        Rectangle::new(T::zero(), T::one(), T::zero(), T::one())
    }

    pub fn from_points(pts: impl IntoIterator<Item = Point<T>>) -> Option<Self> {
        let mut it = pts.into_iter();
        let p = it.next()?;
        let mut r = Rectangle::new(p.x, p.x, p.y, p.y);
        for q in it {
            r = r.expand_to(q);
        }
        Some(r)
    }

    pub fn expand_to(self, p: Point<T>) -> Self {
        Rectangle::new(self.x1.minf(p.x), self.x2.maxf(p.x), self.y1.minf(p.y), self.y2.maxf(p.y))
    }

    pub fn union(self, o: Self) -> Self {
        Rectangle::new(self.x1.minf(o.x1), self.x2.maxf(o.x2), self.y1.minf(o.y1), self.y2.maxf(o.y2))
    }

    pub fn width(&self) -> T {
        self.x2 - self.x1
    }

    pub fn height(&self) -> T {
        self.y2 - self.y1
    }

    pub fn perimeter(&self) -> T {
        T::two() * (self.width() + self.height())
    }

    pub fn diag(&self) -> T {
        self.width().hypot(self.height())
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point<T> {
        Point::new((self.x1 + self.x2) * T::half(), (self.y1 + self.y2) * T::half())
    }

    pub fn corners(&self) -> [Point<T>; 4] {
        [
            Point::new(self.x1, self.y1),
            Point::new(self.x2, self.y1),
            Point::new(self.x2, self.y2),
            Point::new(self.x1, self.y2),
        ]
    }

    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        p.x >= self.x1 - tol && p.x <= self.x2 + tol && p.y >= self.y1 - tol && p.y <= self.y2 + tol
    }

    pub fn contains_disk(&self, d: &Disk<T>, tol: T) -> bool {
        d.center.x - d.radius >= self.x1 - tol
            && d.center.x + d.radius <= self.x2 + tol
            && d.center.y - d.radius >= self.y1 - tol
            && d.center.y + d.radius <= self.y2 + tol
    }

    /// Closest point of the (solid) rectangle to `p`.
    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        Point::new(p.x.clampf(self.x1, self.x2), p.y.clampf(self.y1, self.y2))
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        self.closest_point(p).dist(p)
    }

    /// Rectangle grown by `m` on every side.
    pub fn inflate(&self, m: T) -> Self {
        Rectangle::new(self.x1 - m, self.x2 + m, self.y1 - m, self.y2 + m)
    }

    pub fn swap_xy(&self) -> Self {
        Rectangle::new(self.y1, self.y2, self.x1, self.x2)
    }
}
