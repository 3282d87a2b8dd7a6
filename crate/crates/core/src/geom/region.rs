use serde::{Deserialize, Serialize};

use super::primitives::{Disk, Interval, Line, Point, Polygon, Rectangle, Segment};
use super::tour::{Arc, Tour, TourElement};
use super::GeomError;
use crate::scalar::Scalar;

/// A neighborhood of the TSPN instance.
///
/// Segments are carried as their own variant; they are the degenerate
/// two-vertex polygons used by the equal-segment families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region<T> {
    Point(Point<T>),
    Segment(Segment<T>),
    Disk(Disk<T>),
    Polygon(Polygon<T>),
    Line(Line<T>),
}

impl<T: Scalar> Region<T> {
    pub fn is_bounded(&self) -> bool {
        !matches!(self, Region::Line(_))
    }

    pub fn as_disk(&self) -> Option<&Disk<T>> {
        match self {
            Region::Disk(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_line(&self) -> Option<&Line<T>> {
        match self {
            Region::Line(l) => Some(l),
            _ => None,
        }
    }

    /// Convex regions (lines count as convex).
    pub fn is_convex(&self) -> bool {
        match self {
            Region::Polygon(p) => p.is_convex(),
            _ => true,
        }
    }

    pub fn bbox(&self) -> Result<Rectangle<T>, GeomError> {
        Ok(match self {
            Region::Point(p) => Rectangle::new(p.x, p.x, p.y, p.y),
            Region::Segment(s) => Rectangle::from_points([s.a, s.b]).unwrap(),
            Region::Disk(d) => Rectangle::new(
                d.center.x - d.radius,
                d.center.x + d.radius,
                d.center.y - d.radius,
                d.center.y + d.radius,
            ),
            Region::Polygon(p) => Rectangle::from_points(p.vertices().iter().copied()).unwrap(),
            Region::Line(_) => return Err(GeomError::Unbounded),
        })
    }

    pub fn x_projection(&self) -> Result<Interval<T>, GeomError> {
        let b = self.bbox()?;
        Ok(Interval::new(b.x1, b.x2))
    }

    pub fn y_projection(&self) -> Result<Interval<T>, GeomError> {
        let b = self.bbox()?;
        Ok(Interval::new(b.y1, b.y2))
    }

    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        self.dist_point(p) <= tol
    }

    pub fn dist_point(&self, p: Point<T>) -> T {
        match self {
            Region::Point(q) => q.dist(p),
            Region::Segment(s) => s.dist_point(p),
            Region::Disk(d) => d.dist_point(p),
            Region::Polygon(poly) => poly.dist_point(p),
            Region::Line(l) => l.dist(p),
        }
    }

    pub fn closest_point(&self, p: Point<T>) -> Point<T> {
        match self {
            Region::Point(q) => *q,
            Region::Segment(s) => s.closest_point(p),
            Region::Disk(d) => d.closest_point(p),
            Region::Polygon(poly) => poly.closest_point(p),
            Region::Line(l) => l.project(p),
        }
    }

    /// Some point of the region.
    pub fn anchor(&self) -> Point<T> {
        match self {
            Region::Point(q) => *q,
            Region::Segment(s) => s.a,
            Region::Disk(d) => d.center,
            Region::Polygon(poly) => poly.vertices()[0],
            Region::Line(l) => l.anchor(),
        }
    }

    /// Distance between a tour element and the closed region.
    pub fn dist_element(&self, e: &TourElement<T>) -> T {
        match self {
            Region::Point(p) => e.dist_point(*p),
            Region::Disk(d) => (e.dist_point(d.center) - d.radius).maxf(T::zero()),
            Region::Segment(s) => {
                let (p, q) = e.closest_points(&TourElement::Seg(*s));
                p.dist(q)
            }
            Region::Polygon(poly) => {
                if poly.contains(e.start(), T::zero()) {
                    return T::zero();
                }
                poly.edges()
                    .map(|s| {
                        let (p, q) = e.closest_points(&TourElement::Seg(s));
                        p.dist(q)
                    })
                    .fold(T::infinity(), |a, b| a.minf(b))
            }
            Region::Line(l) => match e {
                TourElement::Seg(s) => {
                    let (da, db) = (l.signed_dist(s.a), l.signed_dist(s.b));
                    if (da <= T::zero() && db >= T::zero()) || (da >= T::zero() && db <= T::zero()) {
                        T::zero()
                    } else {
                        da.abs().minf(db.abs())
                    }
                }
                TourElement::Arc(a) => arc_line_dist(a, l),
            },
        }
    }

    /// Distance between a whole tour and the region (infinity for an empty tour).
    pub fn dist_tour(&self, t: &Tour<T>) -> T {
        t.elements.iter().map(|e| self.dist_element(e)).fold(T::infinity(), |a, b| a.minf(b))
    }

    /// Largest pairwise distance and a segment realizing it.
    ///
    /// Polygons use the vertex-pair scan; disks report the horizontal diameter.
    pub fn diameter(&self) -> Result<(T, Segment<T>), GeomError> {
        match self {
            Region::Point(p) => Ok((T::zero(), Segment::new(*p, *p))),
            Region::Segment(s) => Ok((s.len(), *s)),
            Region::Disk(d) => {
                let off = Point::new(d.radius, T::zero());
                Ok((T::two() * d.radius, Segment::new(d.center - off, d.center + off)))
            }
            Region::Polygon(poly) => {
                let v = poly.vertices();
                let mut best = (T::zero(), Segment::new(v[0], v[0]));
                for i in 0..v.len() {
                    for j in (i + 1)..v.len() {
                        let d = v[i].dist(v[j]);
                        if d > best.0 {
                            best = (d, Segment::new(v[i], v[j]));
                        }
                    }
                }
                Ok(best)
            }
            Region::Line(_) => Err(GeomError::Unbounded),
        }
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>, scale: T) -> Result<Self, GeomError> {
        Ok(match self {
            Region::Point(p) => Region::Point(f(*p)),
            Region::Segment(s) => Region::Segment(Segment::new(f(s.a), f(s.b))),
            Region::Disk(d) => Region::Disk(Disk::new(f(d.center), d.radius * scale)?),
            Region::Polygon(p) => Region::Polygon(p.map(f)?),
            Region::Line(l) => {
                // map two points of the line
                let p = l.anchor();
                let q = p + l.direction();
                Region::Line(Line::through(f(p), f(q))?)
            }
        })
    }

    pub fn translate(&self, v: Point<T>) -> Self {
        self.map(|p| p + v, T::one()).expect("translation preserves validity")
    }

    /// Rotation about the origin.
    pub fn rotate(&self, theta: T) -> Self {
        self.map(|p| p.rotate(theta), T::one()).expect("rotation preserves validity")
    }

    /// Counterclockwise quarter turn about the origin, exact in floating point.
    pub fn rotate90(&self) -> Self {
        self.map(|p| p.perp(), T::one()).expect("rotation preserves validity")
    }

    /// Clockwise quarter turn about the origin.
    pub fn rotate270(&self) -> Self {
        self.map(|p| -p.perp(), T::one()).expect("rotation preserves validity")
    }

    pub fn scale(&self, k: T) -> Self {
        self.map(|p| p * k, k).expect("positive scaling preserves validity")
    }

    pub fn swap_xy(&self) -> Self {
        self.map(|p| p.swap_xy(), T::one()).expect("reflection preserves validity")
    }
}

fn arc_line_dist<T: Scalar>(a: &Arc<T>, l: &Line<T>) -> T {
    let n = l.normal();
    let mut vals = vec![l.signed_dist(a.start_point()), l.signed_dist(a.end_point())];
    for dir in [n, -n] {
        if a.contains_angle(dir.angle()) {
            vals.push(l.signed_dist(a.center + dir * a.radius));
        }
    }
    let lo = vals.iter().copied().fold(T::infinity(), |x, y| x.minf(y));
    let hi = vals.iter().copied().fold(T::neg_infinity(), |x, y| x.maxf(y));
    if lo <= T::zero() && hi >= T::zero() {
        T::zero()
    } else {
        lo.abs().minf(hi.abs())
    }
}

/// Whether some element of the tour comes within `tol` of the region.
pub fn tour_visits<T: Scalar>(t: &Tour<T>, r: &Region<T>, tol: T) -> bool {
    r.dist_tour(t) <= tol
}

pub fn region_diameter<T: Scalar>(r: &Region<T>) -> Result<(T, Segment<T>), GeomError> {
    r.diameter()
}

pub fn x_projection<T: Scalar>(r: &Region<T>) -> Result<Interval<T>, GeomError> {
    r.x_projection()
}
