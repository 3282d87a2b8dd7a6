use super::primitives::{Point, Polygon, Segment};
use crate::scalar::{cmp_f, Scalar};

/// Convex hull of a point set; collinear and smaller inputs come back as
/// degenerate markers.
#[derive(Debug, Clone, PartialEq)]
pub enum Hull<T> {
    Empty,
    Point(Point<T>),
    Segment(Segment<T>),
    Polygon(Polygon<T>),
}

impl<T: Scalar> Hull<T> {
    pub fn perimeter(&self) -> T {
        match self {
            Hull::Empty | Hull::Point(_) => T::zero(),
            Hull::Segment(s) => T::two() * s.len(),
            Hull::Polygon(p) => p.perimeter(),
        }
    }

    pub fn vertices(&self) -> Vec<Point<T>> {
        match self {
            Hull::Empty => vec![],
            Hull::Point(p) => vec![*p],
            Hull::Segment(s) => vec![s.a, s.b],
            Hull::Polygon(p) => p.vertices().to_vec(),
        }
    }
}

/// Andrew's monotone chain; drops collinear hull vertices.
pub fn convex_hull<T: Scalar>(pts: &[Point<T>]) -> Hull<T> {
    let mut p: Vec<Point<T>> = pts.to_vec();
    p.sort_by(|a, b| cmp_f(&a.x, &b.x).then(cmp_f(&a.y, &b.y)));
    p.dedup_by(|a, b| a.dist(*b) <= T::EPS);
    match p.len() {
        0 => return Hull::Empty,
        1 => return Hull::Point(p[0]),
        _ => {}
    }
    let turn = |o: Point<T>, a: Point<T>, b: Point<T>| (a - o).cross(b - o);
    let scale = p.iter().map(|q| q.norm()).fold(T::one(), |a, b| a.maxf(b));
    let eps = T::EPS * scale * scale;
    let mut lower: Vec<Point<T>> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], q) <= eps {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point<T>> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], q) <= eps {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    match lower.len() {
        0 | 1 => Hull::Point(p[0]),
        2 => Hull::Segment(Segment::new(lower[0], lower[1])),
        _ => match Polygon::new(lower.clone()) {
            Ok(poly) => Hull::Polygon(poly),
            Err(_) => Hull::Segment(Segment::new(p[0], p[p.len() - 1])),
        },
    }
}
