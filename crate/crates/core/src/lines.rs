//! Tours visiting infinite lines: the minimum touching circle (a π/2
//! approximation), exact optima for three lines, and triangle statistics.

use serde::{Deserialize, Serialize};

use crate::geom::{Line, Point, Segment, Tour};
use crate::lp::{minimize, HalfSpace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinesError {
    #[error("empty instance")]
    Empty,
    #[error("lines do not form a triangle ({0})")]
    Degenerate(&'static str),
    #[error("linear program failed to converge")]
    LpFailed,
}

/// Smallest circle meeting every line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TouchingCircle<T> {
    pub center: Point<T>,
    pub radius: T,
    /// Indices of at most three lines that alone force this radius.
    pub determiners: Vec<usize>,
}

/// Removes exact duplicates, keeping the first index of each.
fn dedup<T: Scalar>(lines: &[Line<T>]) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        if !keep.iter().any(|&k| lines[k] == *l) {
            keep.push(i);
        }
    }
    keep
}

/// Offset of `l` along the unit normal `n`: points `p` of `l` satisfy `n . p = offset`.
fn offset_along<T: Scalar>(l: &Line<T>, n: Point<T>) -> T {
    let sign = if l.normal().dot(n) >= T::zero() { T::one() } else { -T::one() };
    -l.c * sign
}

fn all_parallel<T: Scalar>(lines: &[Line<T>], idx: &[usize]) -> bool {
    idx.iter().all(|&i| lines[i].is_parallel(&lines[idx[0]]))
}

fn max_dist<T: Scalar>(lines: &[Line<T>], p: Point<T>) -> T {
    lines.iter().map(|l| l.dist(p)).fold(T::zero(), |a, b| a.maxf(b))
}

/// Minimum touching circle via the linear program
/// `min z  s.t.  -z <= a_i x + b_i y + c_i <= z`.
pub fn min_touching_circle<T: Scalar>(lines: &[Line<T>], seed: u64) -> Result<TouchingCircle<T>, LinesError> {
    if lines.is_empty() {
        return Err(LinesError::Empty);
    }
    let idx = dedup(lines);
    if idx.len() == 1 {
        return Ok(TouchingCircle { center: lines[0].anchor(), radius: T::zero(), determiners: vec![0] });
    }
    if all_parallel(lines, &idx) {
        let n = lines[idx[0]].normal();
        let offs: Vec<(T, usize)> = idx.iter().map(|&i| (offset_along(&lines[i], n), i)).collect();
        let lo = offs.iter().copied().min_by(|a, b| crate::scalar::cmp_f(&a.0, &b.0)).unwrap();
        let hi = offs.iter().copied().max_by(|a, b| crate::scalar::cmp_f(&a.0, &b.0)).unwrap();
        let mid = (lo.0 + hi.0) * T::half();
        let center = n * mid;
        return Ok(TouchingCircle { center, radius: (hi.0 - lo.0) * T::half(), determiners: vec![lo.1, hi.1] });
    }

    let uniq: Vec<Line<T>> = idx.iter().map(|&i| lines[i]).collect();
    let mut cons = Vec::with_capacity(2 * uniq.len());
    for l in &uniq {
        cons.push(HalfSpace::new(vec![l.a, l.b, -T::one()], -l.c));
        cons.push(HalfSpace::new(vec![-l.a, -l.b, -T::one()], l.c));
    }
    let mut m = box_size(&uniq);
    for _ in 0..8 {
        let cmax = uniq.iter().map(|l| l.c.abs()).fold(T::zero(), |a, b| a.maxf(b));
        let zmax = T::lit(2.0) * m + cmax + T::one();
        let x = minimize(&[T::zero(), T::zero(), T::one()], &cons, &[-m, -m, T::zero()], &[m, m, zmax], seed)
            .ok_or(LinesError::LpFailed)?;
        let center = Point::new(x[0], x[1]);
        let on_box = x[0].abs() >= m * T::lit(0.999) || x[1].abs() >= m * T::lit(0.999);
        if on_box {
            m = m * T::lit(16.0);
            continue;
        }
        let radius = max_dist(&uniq, center);
        let determiners = determiners(lines, &idx, center, radius, seed);
        return Ok(TouchingCircle { center, radius, determiners });
    }
    Err(LinesError::LpFailed)
}

/// Half-width of a box that holds every pairwise crossing, with margin.
fn box_size<T: Scalar>(lines: &[Line<T>]) -> T {
    let mut m = T::one();
    for l in lines {
        m = m.maxf(l.c.abs());
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = lines[i].intersection(&lines[j]) {
                m = m.maxf(p.x.abs()).maxf(p.y.abs());
            }
        }
    }
    m * T::lit(4.0)
}

fn determiners<T: Scalar>(lines: &[Line<T>], idx: &[usize], center: Point<T>, radius: T, seed: u64) -> Vec<usize> {
    let tol = T::lit(1e-9) * (T::one() + radius);
    let tight: Vec<usize> = idx.iter().copied().filter(|&i| (lines[i].dist(center) - radius).abs() <= tol).collect();
    if tight.len() <= 3 {
        return tight;
    }
    let cand = &tight[..tight.len().min(12)];
    let reproduces = |sub: &[usize]| {
        let ls: Vec<_> = sub.iter().map(|&i| lines[i]).collect();
        min_touching_circle(&ls, seed).map(|c| (c.radius - radius).abs() <= tol).unwrap_or(false)
    };
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            if reproduces(&[cand[i], cand[j]]) {
                return vec![cand[i], cand[j]];
            }
        }
    }
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            for k in j + 1..cand.len() {
                if reproduces(&[cand[i], cand[j], cand[k]]) {
                    return vec![cand[i], cand[j], cand[k]];
                }
            }
        }
    }
    cand[..3].to_vec()
}

/// The touching circle as a closed tour.
pub fn lines_tour<T: Scalar>(lines: &[Line<T>], seed: u64) -> Result<Tour<T>, LinesError> {
    let c = min_touching_circle(lines, seed)?;
    Ok(Tour::circle(c.center, c.radius))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    Acute,
    Right,
    Obtuse,
    /// Two parallel lines crossed by a third.
    Generalized,
}

/// How three lines sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThreeLines<T> {
    Concurrent(Point<T>),
    /// Extreme pair of offsets along the common normal.
    Parallel { normal: Point<T>, lo: T, hi: T },
    /// `pair` are parallel at distance `gap`; `transversal` crosses them.
    Generalized { pair: (usize, usize), transversal: usize, gap: T },
    Triangle([Point<T>; 3]),
}

pub fn classify_three<T: Scalar>(lines: &[Line<T>; 3]) -> ThreeLines<T> {
    let par = |i: usize, j: usize| lines[i].is_parallel(&lines[j]);
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let npar = pairs.iter().filter(|&&(i, j)| par(i, j)).count();
    if npar == 3 {
        let n = lines[0].normal();
        let offs = lines.map(|l| offset_along(&l, n));
        let lo = offs.iter().copied().fold(T::infinity(), |a, b| a.minf(b));
        let hi = offs.iter().copied().fold(T::neg_infinity(), |a, b| a.maxf(b));
        return ThreeLines::Parallel { normal: n, lo, hi };
    }
    if npar == 1 {
        let &(i, j) = pairs.iter().find(|&&(i, j)| par(i, j)).unwrap();
        let k = 3 - i - j;
        let n = lines[i].normal();
        let gap = (offset_along(&lines[i], n) - offset_along(&lines[j], n)).abs();
        if gap <= T::lit(1e-12) {
            return ThreeLines::Concurrent(lines[i].intersection(&lines[k]).unwrap());
        }
        return ThreeLines::Generalized { pair: (i, j), transversal: k, gap };
    }
    let v0 = lines[1].intersection(&lines[2]).unwrap();
    let v1 = lines[0].intersection(&lines[2]).unwrap();
    let v2 = lines[0].intersection(&lines[1]).unwrap();
    let scale = T::one() + v0.norm().maxf(v1.norm()).maxf(v2.norm());
    let tol = T::lit(1e-9) * scale;
    if v0.dist(v1) <= tol && v1.dist(v2) <= tol && v0.dist(v2) <= tol {
        return ThreeLines::Concurrent(v0);
    }
    ThreeLines::Triangle([v0, v1, v2])
}

fn angle_at<T: Scalar>(v: &[Point<T>; 3], i: usize) -> T {
    let a = v[(i + 1) % 3] - v[i];
    let b = v[(i + 2) % 3] - v[i];
    let c = (a.dot(b) / (a.norm() * b.norm())).clampf(-T::one(), T::one());
    c.acos()
}

fn foot<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> Point<T> {
    let d = b - a;
    a + d * ((p - a).dot(d) / d.norm2())
}

fn kind_of<T: Scalar>(v: &[Point<T>; 3]) -> (TriangleKind, usize) {
    let angles = [angle_at(v, 0), angle_at(v, 1), angle_at(v, 2)];
    let (imax, &amax) = angles.iter().enumerate().max_by(|a, b| crate::scalar::cmp_f(a.1, b.1)).unwrap();
    let right = T::FRAC_PI_2();
    let kind = if (amax - right).abs() <= T::lit(1e-9) {
        TriangleKind::Right
    } else if amax > right {
        TriangleKind::Obtuse
    } else {
        TriangleKind::Acute
    };
    (kind, imax)
}

/// Optimal tour length for exactly three lines, with a tour achieving it.
pub fn three_line_opt<T: Scalar>(lines: &[Line<T>; 3]) -> (T, Tour<T>) {
    match classify_three(lines) {
        ThreeLines::Concurrent(p) => (T::zero(), Tour::point(p)),
        ThreeLines::Parallel { normal, lo, hi } => {
            let t = Tour::closed_polyline(&[normal * lo, normal * hi]);
            (T::two() * (hi - lo), t)
        }
        ThreeLines::Generalized { pair: (i, j), transversal, gap } => {
            let n = lines[i].normal();
            let mid = (offset_along(&lines[i], n) + offset_along(&lines[j], n)) * T::half();
            let midline = Line::new(n.x, n.y, -mid).expect("unit normal");
            let x = midline.intersection(&lines[transversal]).expect("transversal crosses the strip");
            let half = n * (gap * T::half());
            (T::two() * gap, Tour::closed_polyline(&[x - half, x + half]))
        }
        ThreeLines::Triangle(v) => {
            let (kind, imax) = kind_of(&v);
            if kind == TriangleKind::Acute {
                let feet: Vec<_> = (0..3).map(|i| foot(v[i], v[(i + 1) % 3], v[(i + 2) % 3])).collect();
                let t = Tour::closed_polyline(&feet);
                (t.len(), t)
            } else {
                let f = foot(v[imax], v[(imax + 1) % 3], v[(imax + 2) % 3]);
                (T::two() * v[imax].dist(f), Tour::closed_polyline(&[v[imax], f]))
            }
        }
    }
}

/// Classical quantities of the triangle cut out by three lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleStats<T> {
    pub kind: TriangleKind,
    /// Inradius (half the gap for the generalized triangle).
    pub r: T,
    pub circumradius: Option<T>,
    pub semi_perimeter: Option<T>,
    /// Perimeter of the pedal triangle, acute triangles only.
    pub pedal: Option<T>,
    /// Altitude from the right or obtuse vertex; the strip width when generalized.
    pub h: Option<T>,
}

pub fn triangle_stats<T: Scalar>(lines: &[Line<T>; 3]) -> Result<TriangleStats<T>, LinesError> {
    match classify_three(lines) {
        ThreeLines::Concurrent(_) => Err(LinesError::Degenerate("concurrent")),
        ThreeLines::Parallel { .. } => Err(LinesError::Degenerate("all parallel")),
        ThreeLines::Generalized { gap, .. } => Ok(TriangleStats {
            kind: TriangleKind::Generalized,
            r: gap * T::half(),
            circumradius: None,
            semi_perimeter: None,
            pedal: None,
            h: Some(gap),
        }),
        ThreeLines::Triangle(v) => {
            let a = v[1].dist(v[2]);
            let b = v[0].dist(v[2]);
            let c = v[0].dist(v[1]);
            let s = (a + b + c) * T::half();
            let area = ((v[1] - v[0]).cross(v[2] - v[0])).abs() * T::half();
            let (kind, imax) = kind_of(&v);
            let (pedal, h) = if kind == TriangleKind::Acute {
                (Some(three_line_opt(lines).0), None)
            } else {
                let opp = Segment::new(v[(imax + 1) % 3], v[(imax + 2) % 3]);
                (None, Some(T::two() * area / opp.len()))
            };
            Ok(TriangleStats {
                kind,
                r: area / s,
                circumradius: Some(a * b * c / (T::lit(4.0) * area)),
                semi_perimeter: Some(s),
                pedal,
                h,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{tour_visits, Region};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::{prop, prop_assert, proptest, Strategy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn through(ax: f64, ay: f64, bx: f64, by: f64) -> Line<f64> {
        Line::through(Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    fn triangle(v: [(f64, f64); 3]) -> [Line<f64>; 3] {
        [
            through(v[1].0, v[1].1, v[2].0, v[2].1),
            through(v[0].0, v[0].1, v[2].0, v[2].1),
            through(v[0].0, v[0].1, v[1].0, v[1].1),
        ]
    }

    fn equilateral() -> [Line<f64>; 3] {
        triangle([(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)])
    }

    /// Independent oracle: every vertex of the LP is a circle tangent to
    /// three lines (any sign pattern) or a crossing point of two lines.
    fn brute_radius(lines: &[Line<f64>]) -> f64 {
        let n = lines.len();
        let feasible = |p: Point<f64>, z: f64| lines.iter().all(|l| l.dist(p) <= z + 1e-9);
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                if let Some(p) = lines[i].intersection(&lines[j]) {
                    if feasible(p, 0.0) {
                        best = 0.0;
                    }
                }
                for k in j + 1..n {
                    // flipping all three signs only negates z
                    for signs in 0..4 {
                        let s = [1.0, if signs & 1 == 0 { 1.0 } else { -1.0 }, if signs & 2 == 0 { 1.0 } else { -1.0 }];
                        let l = [lines[i], lines[j], lines[k]];
                        // a x + b y - s z = -c
                        let m = [[l[0].a, l[0].b, -s[0]], [l[1].a, l[1].b, -s[1]], [l[2].a, l[2].b, -s[2]]];
                        let r = [-l[0].c, -l[1].c, -l[2].c];
                        let det = |m: [[f64; 3]; 3]| {
                            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                        };
                        let d = det(m);
                        if d.abs() < 1e-12 {
                            continue;
                        }
                        let col = |c: usize| {
                            let mut mm = m;
                            for row in 0..3 {
                                mm[row][c] = r[row];
                            }
                            det(mm) / d
                        };
                        // a negative z is the mirrored sign pattern
                        let (x, y, z) = (col(0), col(1), col(2).abs());
                        if feasible(Point::new(x, y), z) {
                            best = best.min(z);
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn touching_circle_examples() {
        let one = min_touching_circle::<f64>(&[Line::new(0.0, 1.0, 0.0).unwrap()], 0).unwrap();
        assert_eq!(one.radius, 0.0);
        assert!(one.center.y.abs() < 1e-15);
        let par = [Line::new(0.0, 1.0, 0.0).unwrap(), Line::new(0.0, 1.0, -2.0).unwrap()];
        let c = min_touching_circle(&par, 0).unwrap();
        assert_abs_diff_eq!(c.radius, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.center.y, 1.0, epsilon = 1e-12);
        let eq = min_touching_circle(&equilateral(), 0).unwrap();
        assert_abs_diff_eq!(eq.radius, 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-12);
        assert!(eq.center.approx_eq(Point::new(0.5, 3f64.sqrt() / 6.0), 1e-9));
        assert_eq!(eq.determiners.len(), 3);
        assert!(min_touching_circle::<f64>(&[], 0).is_err());
    }

    #[test]
    fn lines_tour_examples() {
        let par = [Line::new(0.0, 1.0, 0.0).unwrap(), Line::new(0.0, 1.0, -2.0).unwrap()];
        let t = lines_tour(&par, 0).unwrap();
        assert_abs_diff_eq!(t.len(), 2.0 * PI, epsilon = 1e-12);
        let eq = lines_tour(&equilateral(), 0).unwrap();
        assert_abs_diff_eq!(eq.len(), PI / 3f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(eq.len() / 1.5, 2.0 * PI / (3.0 * 3f64.sqrt()), epsilon = 1e-9);
        assert_eq!(lines_tour(&[Line::new(1.0, 1.0, 1.0).unwrap()], 0).unwrap().len(), 0.0);
    }

    #[test]
    fn three_line_examples() {
        let (y, t) = three_line_opt(&equilateral());
        assert_abs_diff_eq!(y, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(t.len(), 1.5, epsilon = 1e-12);
        let (h2, t) = three_line_opt(&triangle([(0.0, 0.0), (4.0, 0.0), (1.0, 1.0)]));
        assert_abs_diff_eq!(h2, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.len(), 2.0, epsilon = 1e-12);
        let conc = [through(0.0, 0.0, 1.0, 0.0), through(0.0, 0.0, 0.0, 1.0), through(0.0, 0.0, 1.0, 1.0)];
        assert_eq!(three_line_opt(&conc).0, 0.0);
        let gen = [Line::new(0.0, 1.0, 0.0).unwrap(), Line::new(0.0, 1.0, -3.0).unwrap(), through(0.0, 0.0, 1.0, 5.0)];
        assert_abs_diff_eq!(three_line_opt(&gen).0, 6.0, epsilon = 1e-12);
        let allpar = [Line::new(0.0, 1.0, 0.0).unwrap(), Line::new(0.0, 1.0, -3.0).unwrap(), Line::new(0.0, 1.0, 1.0).unwrap()];
        assert_abs_diff_eq!(three_line_opt(&allpar).0, 8.0, epsilon = 1e-12);
        for ls in [equilateral(), gen, allpar, conc] {
            let (_, t) = three_line_opt(&ls);
            for l in &ls {
                assert!(tour_visits(&t, &Region::Line(*l), 1e-9));
            }
        }
    }

    #[test]
    fn stats_examples() {
        let st = triangle_stats(&equilateral()).unwrap();
        let r3 = 3f64.sqrt();
        assert_eq!(st.kind, TriangleKind::Acute);
        assert_abs_diff_eq!(st.r, 1.0 / (2.0 * r3), epsilon = 1e-12);
        assert_abs_diff_eq!(st.circumradius.unwrap(), 1.0 / r3, epsilon = 1e-12);
        assert_abs_diff_eq!(st.semi_perimeter.unwrap(), 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(st.pedal.unwrap(), 1.5, epsilon = 1e-12);
        let rt = triangle_stats(&triangle([(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)])).unwrap();
        assert_eq!(rt.kind, TriangleKind::Right);
        assert_abs_diff_eq!(rt.r, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rt.h.unwrap(), 2.4, epsilon = 1e-12);
        // 6-7-8 triangle: place c = 8 on the x axis
        let x = (36.0 - 49.0 + 64.0) / 16.0;
        let tri = triangle([(0.0, 0.0), (8.0, 0.0), (x, (36.0f64 - x * x).sqrt())]);
        let st = triangle_stats(&tri).unwrap();
        let s: f64 = 10.5;
        let heron = (s * (s - 6.0) * (s - 7.0) * (s - 8.0)).sqrt();
        assert_abs_diff_eq!(st.semi_perimeter.unwrap(), s, epsilon = 1e-12);
        assert_abs_diff_eq!(st.circumradius.unwrap(), 336.0 / (4.0 * heron), epsilon = 1e-12);
        assert!(s > 2.0 * st.circumradius.unwrap());
        let conc = [through(0.0, 0.0, 1.0, 0.0), through(0.0, 0.0, 0.0, 1.0), through(0.0, 0.0, 1.0, 1.0)];
        assert!(triangle_stats(&conc).is_err());
    }

    #[test]
    fn triangle_facts_on_random_triangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut acute = 0;
        for _ in 0..10_000 {
            let v: [(f64, f64); 3] = [(); 3].map(|_| (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)));
            let area = ((v[1].0 - v[0].0) * (v[2].1 - v[0].1) - (v[2].0 - v[0].0) * (v[1].1 - v[0].1)).abs();
            if area < 1e-3 {
                continue;
            }
            let st = triangle_stats(&triangle(v)).unwrap();
            let (s, big_r) = (st.semi_perimeter.unwrap(), st.circumradius.unwrap());
            match st.kind {
                TriangleKind::Acute => {
                    acute += 1;
                    let y = st.pedal.unwrap();
                    assert!(s > 2.0 * big_r);
                    assert!((y - 2.0 * st.r * s / big_r).abs() <= 1e-9 * y.max(1.0));
                    assert!(st.r < y / 4.0);
                }
                _ => assert!(st.h.unwrap() > 2.0 * st.r),
            }
        }
        assert!(acute > 1000);
    }

    #[test]
    fn generalized_stats() {
        let gen = [Line::new(0.0, 1.0, 0.0).unwrap(), Line::new(0.0, 1.0, -3.0).unwrap(), through(0.0, 0.0, 1.0, 5.0)];
        let st = triangle_stats(&gen).unwrap();
        assert_eq!(st.kind, TriangleKind::Generalized);
        assert_abs_diff_eq!(st.r, 1.5, epsilon = 1e-12);
        let c = min_touching_circle(&gen, 0).unwrap();
        assert_abs_diff_eq!(c.radius, 1.5, epsilon = 1e-9);
    }

    fn arb_lines(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Line<f64>>> {
        prop::collection::vec((0.0..PI, -5.0..5.0f64), n).prop_map(|v| {
            v.into_iter().map(|(th, c)| Line::new(th.cos(), th.sin(), c).unwrap()).collect()
        })
    }

    proptest! {
        #[test]
        fn lp_matches_vertex_enumeration(lines in arb_lines(1..12), seed in 0u64..100) {
            let c = min_touching_circle(&lines, seed).unwrap();
            for l in &lines {
                prop_assert!(l.dist(c.center) <= c.radius + 1e-9);
            }
            if lines.len() >= 3 && !all_parallel(&lines, &dedup(&lines)) {
                let b = brute_radius(&lines);
                prop_assert!((b - c.radius).abs() <= 1e-7 * (1.0 + b), "lp {} brute {}", c.radius, b);
            }
        }

        #[test]
        fn determiners_reproduce_radius(lines in arb_lines(1..50), seed in 0u64..100) {
            let c = min_touching_circle(&lines, seed).unwrap();
            prop_assert!(c.determiners.len() <= 3 && !c.determiners.is_empty());
            let sub: Vec<_> = c.determiners.iter().map(|&i| lines[i]).collect();
            let d = min_touching_circle(&sub, seed).unwrap();
            prop_assert!((d.radius - c.radius).abs() <= 1e-9 * (1.0 + c.radius));
            let t = lines_tour(&lines, seed).unwrap();
            for l in &lines {
                prop_assert!(tour_visits(&t, &Region::Line(*l), 1e-9));
            }
        }

        #[test]
        fn circle_within_half_pi_of_three_line_optimum(lines in arb_lines(3..4)) {
            let ls = [lines[0], lines[1], lines[2]];
            let (opt, _) = three_line_opt(&ls);
            let r = min_touching_circle(&lines, 1).unwrap().radius;
            prop_assert!(2.0 * PI * r <= (PI / 2.0) * opt + 1e-6);
        }
    }
}
