//! The m-guillotine transformation for a connected edge set visiting
//! pairwise-disjoint equal disks: spans, dark lengths, favorable cuts, the
//! recursive construction with its charge accounting, and a checker.
//!
//! Everything is computed for horizontal cuts; vertical cuts run the same
//! code on the mirrored instance (`x` and `y` swapped).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geom::{Disk, Point, Rectangle, Segment, Tour, TourElement};
use crate::scalar::{cmp_f, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GuillotineError {
    #[error("edge set contains an arc; only straight edges are supported")]
    ArcEdge,
    #[error("disks must share one radius")]
    UnequalRadii,
    #[error("disks {0} and {1} overlap")]
    Overlapping(usize, usize),
    #[error("disk {0} does not meet the edge set")]
    DiskMissesEdges(usize),
    #[error("edge set is not connected")]
    Disconnected,
    #[error("favorable cut search failed in window {window:?}: best slack {best_slack}")]
    SearchFailed { window: [f64; 4], best_slack: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Axis-parallel cut line: `y = coordinate` or `x = coordinate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cut<T> {
    pub orientation: Orientation,
    pub coordinate: T,
}

impl<T> Cut<T> {
    pub fn horizontal(y: T) -> Self {
        Cut { orientation: Orientation::Horizontal, coordinate: y }
    }

    pub fn vertical(x: T) -> Self {
        Cut { orientation: Orientation::Vertical, coordinate: x }
    }
}

/// Straight edges of an embedded planar graph.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EdgeSet<T> {
    pub edges: Vec<Segment<T>>,
}

impl<T: Scalar> EdgeSet<T> {
    pub fn new(edges: Vec<Segment<T>>) -> Self {
        EdgeSet { edges }
    }

    /// Segments of a polygonal tour; zero-length pieces are dropped.
    pub fn from_tour(t: &Tour<T>) -> Result<Self, GuillotineError> {
        let mut edges = Vec::new();
        for e in &t.elements {
            match e {
                TourElement::Seg(s) if s.len() > T::zero() => edges.push(*s),
                TourElement::Seg(_) => {}
                TourElement::Arc(_) => return Err(GuillotineError::ArcEdge),
            }
        }
        if edges.is_empty() {
            if let Some(p) = t.start_point() {
                edges.push(Segment::new(p, p));
            }
        }
        Ok(EdgeSet { edges })
    }

    pub fn total_length(&self) -> T {
        self.edges.iter().map(|e| e.len()).sum()
    }

    pub fn is_connected(&self, tol: T) -> bool {
        let n = self.edges.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.edges[i].dist_segment(&self.edges[j]) <= tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let roots = (0..n).filter(|&i| find(&mut parent, i) == i).count();
        roots <= 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutCertificate<T> {
    pub orientation: Orientation,
    pub coordinate: T,
    pub m_span: Option<Segment<T>>,
    pub m_disk_span: Option<Segment<T>>,
    pub dark_length: T,
    pub disk_dark_length: T,
    pub chargeable: T,
    pub cost: T,
}

impl<T: Scalar> CutCertificate<T> {
    pub fn favorable(&self) -> bool {
        self.chargeable >= self.cost - T::lit(1e-9)
    }

    pub fn cut(&self) -> Cut<T> {
        Cut { orientation: self.orientation, coordinate: self.coordinate }
    }
}

fn swap_seg<T: Scalar>(s: &Segment<T>) -> Segment<T> {
    Segment::new(s.a.swap_xy(), s.b.swap_xy())
}

fn swap_disk<T: Scalar>(d: &Disk<T>) -> Disk<T> {
    Disk { center: d.center.swap_xy(), radius: d.radius }
}

/// Runs a horizontal-cut computation in the frame where `cut` is horizontal.
fn in_frame<T: Scalar, R>(
    edges: &[Segment<T>],
    disks: &[Disk<T>],
    w: &Rectangle<T>,
    cut: Cut<T>,
    f: impl FnOnce(&[Segment<T>], &[Disk<T>], &Rectangle<T>, T) -> R,
) -> R {
    match cut.orientation {
        Orientation::Horizontal => f(edges, disks, w, cut.coordinate),
        Orientation::Vertical => {
            let e: Vec<_> = edges.iter().map(swap_seg).collect();
            let d: Vec<_> = disks.iter().map(swap_disk).collect();
            f(&e, &d, &w.swap_xy(), cut.coordinate)
        }
    }
}

fn unswap<T: Scalar>(o: Orientation, s: Option<Segment<T>>) -> Option<Segment<T>> {
    match o {
        Orientation::Horizontal => s,
        Orientation::Vertical => s.map(|s| swap_seg(&s)),
    }
}

/// Part of `s` inside the closed rectangle (Liang–Barsky).
fn clip<T: Scalar>(s: &Segment<T>, r: &Rectangle<T>) -> Option<Segment<T>> {
    let d = s.b - s.a;
    let (mut t0, mut t1) = (T::zero(), T::one());
    for (p, q) in [(-d.x, s.a.x - r.x1), (d.x, r.x2 - s.a.x), (-d.y, s.a.y - r.y1), (d.y, r.y2 - s.a.y)] {
        if p == T::zero() {
            if q < T::zero() {
                return None;
            }
        } else {
            let t = q / p;
            if p < T::zero() {
                t0 = t0.maxf(t);
            } else {
                t1 = t1.minf(t);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let a = if t0 == T::zero() { s.a } else { s.a + d * t0 };
    let b = if t1 == T::one() { s.b } else { s.a + d * t1 };
    Some(Segment::new(a, b))
}

/// Part of `s` in the interior of `w`; pieces lying along the boundary of
/// `w` (earlier cuts) are excluded.
fn interior_part<T: Scalar>(s: &Segment<T>, w: &Rectangle<T>) -> Option<Segment<T>> {
    let c = clip(s, w)?;
    let tol = T::lit(1e-12);
    let on = |u: T, v: T, b: T| (u - b).abs() <= tol && (v - b).abs() <= tol;
    if on(c.a.y, c.b.y, w.y1) || on(c.a.y, c.b.y, w.y2) || on(c.a.x, c.b.x, w.x1) || on(c.a.x, c.b.x, w.x2) {
        return None;
    }
    Some(c)
}

/// Sorted endpoints of `y = c` intersected with the edges inside `w`.
fn span_points<T: Scalar>(edges: &[Segment<T>], w: &Rectangle<T>, c: T) -> Vec<T> {
    let tol = T::lit(1e-12);
    let mut iv: Vec<(T, T)> = Vec::new();
    for e in edges.iter().filter_map(|e| interior_part(e, w)) {
        let (da, db) = (e.a.y - c, e.b.y - c);
        if da.abs() <= tol && db.abs() <= tol {
            iv.push((e.a.x.minf(e.b.x), e.a.x.maxf(e.b.x)));
        } else if (da <= T::zero() && db >= T::zero()) || (da >= T::zero() && db <= T::zero()) {
            let x = e.a.x + (e.b.x - e.a.x) * (c - e.a.y) / (e.b.y - e.a.y);
            iv.push((x, x));
        }
    }
    iv.sort_by(|a, b| cmp_f(&a.0, &b.0));
    let mut merged: Vec<(T, T)> = Vec::new();
    for (lo, hi) in iv {
        match merged.last_mut() {
            Some(last) if lo <= last.1 + tol => last.1 = last.1.maxf(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let mut pts = Vec::new();
    for (lo, hi) in merged {
        pts.push(lo);
        if hi - lo > tol {
            pts.push(hi);
        }
    }
    pts
}

fn h_m_span<T: Scalar>(edges: &[Segment<T>], w: &Rectangle<T>, c: T, m: usize) -> Option<Segment<T>> {
    let p = span_points(edges, w, c);
    let xi = p.len();
    if xi <= 2 * (m - 1) {
        return None;
    }
    Some(Segment::new(Point::new(p[m - 1], c), Point::new(p[xi - m], c)))
}

/// Chords `(lo, hi, disk index)` of `y = c` through disks, clipped to `w`,
/// in order along the cut.
fn chords<T: Scalar>(disks: &[Disk<T>], w: &Rectangle<T>, c: T) -> Vec<(T, T, usize)> {
    let mut out: Vec<(T, T, usize)> = disks
        .iter()
        .enumerate()
        .filter_map(|(i, d)| {
            let dy = (d.center.y - c).abs();
            if dy > d.radius {
                return None;
            }
            let h = (d.radius * d.radius - dy * dy).maxf(T::zero()).sqrt();
            let (lo, hi) = ((d.center.x - h).maxf(w.x1), (d.center.x + h).minf(w.x2));
            (lo <= hi).then_some((lo, hi, i))
        })
        .collect();
    out.sort_by(|a, b| cmp_f(&a.0, &b.0));
    out
}

/// Disk span and the indices of the disks it stabs.
fn h_m_disk_span<T: Scalar>(disks: &[Disk<T>], w: &Rectangle<T>, c: T, m: usize) -> Option<(Segment<T>, Vec<usize>)> {
    let ch = chords(disks, w, c);
    let xi = ch.len();
    if xi <= 2 * m {
        return None;
    }
    let (first, last) = (ch[m - 1], ch[xi - m]);
    let seg = Segment::new(Point::new(first.1, c), Point::new(last.0, c));
    Some((seg, ch[m - 1..=xi - m].iter().map(|x| x.2).collect()))
}

/// Measure of `[lo, hi]` covered by at least `m` of `above` and at least
/// `m` of `below`.
fn doubly_covered<T: Scalar>(above: &[(T, T)], below: &[(T, T)], m: usize, lo: T, hi: T) -> T {
    if above.len() < m || below.len() < m {
        return T::zero();
    }
    let mut ev: Vec<(T, i32, i32)> = Vec::new();
    for &(a, b) in above {
        ev.push((a, 1, 0));
        ev.push((b, -1, 0));
    }
    for &(a, b) in below {
        ev.push((a, 0, 1));
        ev.push((b, 0, -1));
    }
    ev.sort_by(|a, b| cmp_f(&a.0, &b.0));
    let (mut ca, mut cb) = (0i32, 0i32);
    let mut total = T::zero();
    let mut prev = lo;
    let m = m as i32;
    for (x, da, db) in ev {
        let x = x.clampf(lo, hi);
        if ca >= m && cb >= m {
            total = total + (x - prev).maxf(T::zero());
        }
        prev = x;
        ca += da;
        cb += db;
    }
    total
}

/// x-ranges where the vertical chord of `d` within `w` is nonempty and lies
/// entirely above `y = c`.
fn disk_above<T: Scalar>(d: &Disk<T>, w: &Rectangle<T>, c: T) -> Vec<(T, T)> {
    let r = d.radius;
    let dc = d.center.y - c;
    if dc < T::zero() {
        return Vec::new();
    }
    let a = (r * r - dc * dc).maxf(T::zero()).sqrt();
    let over = d.center.y - w.y2;
    let b = if over <= T::zero() {
        r
    } else if over > r {
        return Vec::new();
    } else {
        (r * r - over * over).sqrt()
    };
    if a > b {
        return Vec::new();
    }
    let cx = d.center.x;
    let raw = if a == T::zero() { vec![(cx - b, cx + b)] } else { vec![(cx - b, cx - a), (cx + a, cx + b)] };
    raw.into_iter().map(|(lo, hi)| (lo.maxf(w.x1), hi.minf(w.x2))).filter(|(lo, hi)| lo <= hi).collect()
}

fn h_chargeable<T: Scalar>(edges: &[Segment<T>], disks: &[Disk<T>], w: &Rectangle<T>, c: T, m: usize) -> (T, T) {
    let up = Rectangle::new(w.x1, w.x2, c, w.y2);
    let down = Rectangle::new(w.x1, w.x2, w.y1, c);
    let tol = T::lit(1e-12);
    let side = |r: &Rectangle<T>| -> Vec<(T, T)> {
        edges
            .iter()
            .filter_map(|e| interior_part(e, w))
            .filter_map(|e| clip(&e, r))
            // pieces lying on the cut itself are not on either side
            .filter(|e| !((e.a.y - c).abs() <= tol && (e.b.y - c).abs() <= tol))
            .map(|e| (e.a.x.minf(e.b.x), e.a.x.maxf(e.b.x)))
            .collect()
    };
    let dark = doubly_covered(&side(&up), &side(&down), m, w.x1, w.x2);
    let above: Vec<(T, T)> = disks.iter().flat_map(|d| disk_above(d, w, c)).collect();
    // mirror in y for the lower side
    let wm = Rectangle::new(w.x1, w.x2, -w.y2, -w.y1);
    let below: Vec<(T, T)> =
        disks.iter().flat_map(|d| disk_above(&Disk { center: Point::new(d.center.x, -d.center.y), radius: d.radius }, &wm, -c)).collect();
    let disk_dark = doubly_covered(&above, &below, m, w.x1, w.x2);
    (dark, disk_dark)
}

/// `sigma_m`: from the m-th to the m-th-from-last endpoint of the cut's
/// intersection with the edges inside `w`.
pub fn m_span<T: Scalar>(edges: &[Segment<T>], w: &Rectangle<T>, cut: Cut<T>, m: usize) -> Option<Segment<T>> {
    assert!(m >= 1, "m must be positive");
    let s = in_frame(edges, &[], w, cut, |e, _, w, c| h_m_span(e, w, c, m));
    unswap(cut.orientation, s)
}

/// `sigma_{m,D}`: from the inner end of the m-th disk chord to the inner
/// end of the m-th-from-last.
pub fn m_disk_span<T: Scalar>(disks: &[Disk<T>], w: &Rectangle<T>, cut: Cut<T>, m: usize) -> Option<Segment<T>> {
    assert!(m >= 1, "m must be positive");
    let s = in_frame(&[], disks, w, cut, |_, d, w, c| h_m_disk_span(d, w, c, m).map(|x| x.0));
    unswap(cut.orientation, s)
}

/// `(m-dark length, m-disk-dark length)` of the cut within `w`.
pub fn chargeable_length<T: Scalar>(edges: &[Segment<T>], disks: &[Disk<T>], w: &Rectangle<T>, cut: Cut<T>, m: usize) -> (T, T) {
    in_frame(edges, disks, w, cut, |e, d, w, c| h_chargeable(e, d, w, c, m))
}

pub fn certificate<T: Scalar>(edges: &[Segment<T>], disks: &[Disk<T>], w: &Rectangle<T>, cut: Cut<T>, m: usize) -> CutCertificate<T> {
    let span = m_span(edges, w, cut, m);
    let dspan = m_disk_span(disks, w, cut, m);
    let (dark, disk_dark) = chargeable_length(edges, disks, w, cut, m);
    let cost = span.map_or(T::zero(), |s| s.len()) + dspan.map_or(T::zero(), |s| s.len());
    CutCertificate {
        orientation: cut.orientation,
        coordinate: cut.coordinate,
        m_span: span,
        m_disk_span: dspan,
        dark_length: dark,
        disk_dark_length: disk_dark,
        chargeable: dark + disk_dark,
        cost,
    }
}

/// Candidate coordinates for cuts of one orientation: edge endpoints, edge
/// crossings, disk tangents, and `refine - 1` evenly spaced points inside
/// every gap between consecutive breakpoints (the midpoint for `refine = 2`).
pub fn cut_candidates<T: Scalar>(edges: &[Segment<T>], disks: &[Disk<T>], o: Orientation, refine: usize) -> Vec<T> {
    let coord = |p: Point<T>| match o {
        Orientation::Horizontal => p.y,
        Orientation::Vertical => p.x,
    };
    let mut b: Vec<T> = Vec::new();
    for e in edges {
        b.push(coord(e.a));
        b.push(coord(e.b));
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if let Some(p) = edges[i].intersection(&edges[j]) {
                b.push(coord(p));
            }
        }
    }
    for d in disks {
        let c = coord(d.center);
        b.extend([c - d.radius, c + d.radius]);
    }
    b.sort_by(cmp_f);
    b.dedup();
    let mut out = b.clone();
    for w in b.windows(2) {
        for k in 1..refine {
            out.push(w[0] + (w[1] - w[0]) * T::from_usize_lossy(k) / T::from_usize_lossy(refine));
        }
    }
    out.sort_by(cmp_f);
    out.dedup();
    out
}

fn whole_disks<T: Scalar>(disks: &[Disk<T>], w: &Rectangle<T>) -> usize {
    disks.iter().filter(|d| w.contains_disk(d, T::lit(1e-12))).count()
}

fn split<T: Scalar>(w: &Rectangle<T>, cut: Cut<T>) -> (Rectangle<T>, Rectangle<T>) {
    let c = cut.coordinate;
    match cut.orientation {
        Orientation::Horizontal => (Rectangle::new(w.x1, w.x2, w.y1, c), Rectangle::new(w.x1, w.x2, c, w.y2)),
        Orientation::Vertical => (Rectangle::new(w.x1, c, w.y1, w.y2), Rectangle::new(c, w.x2, w.y1, w.y2)),
    }
}

/// Cuts strictly inside `w`, best first: cuts that reduce the number of
/// whole disks on both sides, then the most even split, then the most
/// central; horizontal before vertical on ties.
fn ranked_cuts<T: Scalar>(w: &Rectangle<T>, disks: &[Disk<T>], hs: &[T], vs: &[T]) -> Vec<Cut<T>> {
    let total = whole_disks(disks, w);
    let mut scored: Vec<((bool, usize, T), usize, Cut<T>)> = Vec::new();
    for (o, list, lo, hi) in [(Orientation::Horizontal, hs, w.y1, w.y2), (Orientation::Vertical, vs, w.x1, w.x2)] {
        for &c in list.iter().filter(|&&c| c > lo && c < hi) {
            let cut = Cut { orientation: o, coordinate: c };
            let (a, b) = split(w, cut);
            let (na, nb) = (whole_disks(disks, &a), whole_disks(disks, &b));
            let progress = na < total && nb < total;
            let centrality = -((c - (lo + hi) * T::half()).abs() / (hi - lo));
            scored.push(((progress, na.min(nb), centrality), scored.len(), cut));
        }
    }
    // stable sort keeps horizontal first among equal keys
    scored.sort_by(|a, b| {
        let (ka, kb) = (a.0, b.0);
        kb.0.cmp(&ka.0).then(kb.1.cmp(&ka.1)).then(cmp_f(&kb.2, &ka.2)).then(a.1.cmp(&b.1))
    });
    scored.into_iter().map(|s| s.2).collect()
}

/// A favorable cut of `w`, searched on the breakpoint grid and refined
/// once before giving up.
pub fn find_favorable_cut<T: Scalar>(
    edges: &[Segment<T>],
    disks: &[Disk<T>],
    w: &Rectangle<T>,
    m: usize,
) -> Result<CutCertificate<T>, GuillotineError> {
    let mut best_slack = T::neg_infinity();
    for refine in [2, 16] {
        let hs = cut_candidates(edges, disks, Orientation::Horizontal, refine);
        let vs = cut_candidates(edges, disks, Orientation::Vertical, refine);
        for cut in ranked_cuts(w, disks, &hs, &vs) {
            let cert = certificate(edges, disks, w, cut, m);
            if cert.favorable() {
                return Ok(cert);
            }
            best_slack = best_slack.maxf(cert.chargeable - cert.cost);
        }
    }
    Err(GuillotineError::SearchFailed {
        window: [w.x1.to_f64_lossy(), w.x2.to_f64_lossy(), w.y1.to_f64_lossy(), w.y2.to_f64_lossy()],
        best_slack: best_slack.to_f64_lossy(),
    })
}

/// One applied cut of the transformation, in normalized coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutRecord<T> {
    pub window: Rectangle<T>,
    pub certificate: CutCertificate<T>,
    /// Segments appended to the edge set (non-degenerate spans).
    pub added: Vec<Segment<T>>,
    /// Charge placed on edge sides (the m-dark length).
    pub red_charge: T,
    /// Charge placed on disk boundaries (the m-disk-dark length).
    pub blue_charge: T,
    /// Disks stabbed by the disk span.
    pub disk_span_disks: Vec<usize>,
    /// Connections from the disk span's ends to the nearest point of the
    /// original edges in the end disks. Logged, not added.
    pub connections: Vec<Segment<T>>,
    /// Disks whose span was skipped because it stabbed at most two.
    pub skipped_disks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofLog<T> {
    pub m: usize,
    /// Normalized coordinates are `(p - offset) * scale`.
    pub scale: T,
    pub offset: Point<T>,
    /// The unit square of the normalized frame, in input coordinates.
    pub window: Rectangle<T>,
    pub cuts: Vec<CutRecord<T>>,
    /// Totals in input units.
    pub input_length: T,
    pub added_length: T,
    pub red_total: T,
    pub blue_total: T,
    pub delta: T,
    pub disks: usize,
    /// `((sqrt 2 + 16/pi)/m) L + 16 delta/m`.
    pub bound: T,
    /// `(sqrt 2/m) L`.
    pub red_ceiling: T,
    /// `(4 delta/m) n`.
    pub blue_ceiling: T,
}

impl<T: Scalar> ProofLog<T> {
    pub fn within_bound(&self, slack: T) -> bool {
        self.added_length <= self.bound + slack
    }
}

/// Adds spans along favorable cuts until every window is free of whole
/// disks. The input is first scaled into `[0.05, 0.95]^2`.
pub fn guillotine_transform<T: Scalar>(
    e: &EdgeSet<T>,
    disks: &[Disk<T>],
    m: usize,
) -> Result<(EdgeSet<T>, ProofLog<T>), GuillotineError> {
    assert!(m >= 1, "m must be positive");
    let delta = disks.first().map_or(T::zero(), |d| d.radius);
    for (i, d) in disks.iter().enumerate() {
        if (d.radius - delta).abs() > T::lit(1e-12) * delta.maxf(T::one()) {
            return Err(GuillotineError::UnequalRadii);
        }
        for (j, o) in disks.iter().enumerate().skip(i + 1) {
            if !d.disjoint(o, T::zero()) {
                return Err(GuillotineError::Overlapping(i, j));
            }
        }
        if e.edges.iter().all(|s| s.dist_point(d.center) > d.radius + T::lit(1e-9)) {
            return Err(GuillotineError::DiskMissesEdges(i));
        }
    }
    if !e.is_connected(T::lit(1e-9)) {
        return Err(GuillotineError::Disconnected);
    }

    let pts = e.edges.iter().flat_map(|s| [s.a, s.b]);
    let bb = disks
        .iter()
        .map(|d| Rectangle::new(d.center.x - d.radius, d.center.x + d.radius, d.center.y - d.radius, d.center.y + d.radius))
        .fold(Rectangle::from_points(pts).unwrap_or(Rectangle::new(T::zero(), T::zero(), T::zero(), T::zero())), |a, b| a.union(b));
    let side = bb.width().maxf(bb.height());
    let scale = if side > T::zero() { T::lit(0.9) / side } else { T::one() };
    // center the content in the unit square
    let half = T::half() / scale;
    let offset = bb.center() - Point::new(half, half);
    let fwd = |p: Point<T>| (p - offset) * scale;
    let back = |p: Point<T>| p * (T::one() / scale) + offset;

    let orig: Vec<Segment<T>> = e.edges.iter().map(|s| Segment::new(fwd(s.a), fwd(s.b))).collect();
    let nd: Vec<Disk<T>> = disks.iter().map(|d| Disk { center: fwd(d.center), radius: d.radius * scale }).collect();
    let mut edges = orig.clone();
    let mut cuts = Vec::new();
    let mut stack = vec![Rectangle::unit()];
    while let Some(w) = stack.pop() {
        if whole_disks(&nd, &w) == 0 {
            continue;
        }
        let cert = find_favorable_cut(&edges, &nd, &w, m)?;
        let mut rec = CutRecord {
            window: w,
            certificate: cert,
            added: Vec::new(),
            red_charge: cert.dark_length,
            blue_charge: cert.disk_dark_length,
            disk_span_disks: Vec::new(),
            connections: Vec::new(),
            skipped_disks: Vec::new(),
        };
        if let Some(s) = cert.m_span {
            if s.len() > T::zero() {
                rec.added.push(s);
            }
        }
        if let Some(s) = cert.m_disk_span {
            let stabbed = in_frame(&[], &nd, &w, cert.cut(), |_, d, w, c| h_m_disk_span(d, w, c, m).map(|x| x.1)).unwrap_or_default();
            if stabbed.len() <= 2 {
                rec.skipped_disks = stabbed;
            } else {
                let (first, last) = (stabbed[0], stabbed[stabbed.len() - 1]);
                for (end, di) in [(s.a, first), (s.b, last)] {
                    if let Some(q) = nearest_edge_point_in_disk(&orig, &nd[di], end) {
                        rec.connections.push(Segment::new(end, q));
                    }
                }
                rec.disk_span_disks = stabbed;
                if s.len() > T::zero() {
                    rec.added.push(s);
                }
            }
        }
        edges.extend(rec.added.iter().copied());
        let (a, b) = split(&w, cert.cut());
        cuts.push(rec);
        // push the second half first so the first is processed first
        stack.push(b);
        stack.push(a);
    }

    let inv = T::one() / scale;
    let out = EdgeSet::new(edges.iter().map(|s| Segment::new(back(s.a), back(s.b))).collect());
    let input_length = e.total_length();
    let added_length = cuts.iter().flat_map(|c| c.added.iter()).map(|s| s.len()).sum::<T>() * inv;
    let red_total = cuts.iter().map(|c| c.red_charge).sum::<T>() * inv;
    let blue_total = cuts.iter().map(|c| c.blue_charge).sum::<T>() * inv;
    let mf = T::from_usize_lossy(m);
    let sqrt2 = T::SQRT_2();
    let bound = (sqrt2 + T::lit(16.0) / T::PI()) / mf * input_length + T::lit(16.0) * delta / mf;
    let log = ProofLog {
        m,
        scale,
        offset,
        window: Rectangle::new(offset.x, offset.x + inv, offset.y, offset.y + inv),
        cuts,
        input_length,
        added_length,
        red_total,
        blue_total,
        delta,
        disks: disks.len(),
        bound,
        red_ceiling: sqrt2 / mf * input_length,
        blue_ceiling: T::lit(4.0) * delta / mf * T::from_usize_lossy(disks.len()),
    };
    Ok((out, log))
}

fn nearest_edge_point_in_disk<T: Scalar>(edges: &[Segment<T>], d: &Disk<T>, p: Point<T>) -> Option<Point<T>> {
    let mut best: Option<(T, Point<T>)> = None;
    for e in edges {
        // chord of the edge inside the disk
        let dir = e.b - e.a;
        let len2 = dir.norm2();
        let (t0, t1) = if len2 <= T::zero() {
            if e.a.dist(d.center) > d.radius {
                continue;
            }
            (T::zero(), T::zero())
        } else {
            let f = e.a - d.center;
            let b = f.dot(dir) / len2;
            let c = (f.norm2() - d.radius * d.radius) / len2;
            let disc = b * b - c;
            if disc < T::zero() {
                continue;
            }
            let r = disc.sqrt();
            let (t0, t1) = ((-b - r).maxf(T::zero()), (-b + r).minf(T::one()));
            if t0 > t1 {
                continue;
            }
            (t0, t1)
        };
        let chord = Segment::new(e.at(t0), e.at(t1));
        let q = chord.closest_point(p);
        let dq = q.dist(p);
        if best.map_or(true, |b| dq < b.0) {
            best = Some((dq, q));
        }
    }
    best.map(|b| b.1)
}

/// Whether segment `s` is covered by the union of the edges (to `tol`).
pub fn segment_covered<T: Scalar>(s: &Segment<T>, edges: &[Segment<T>], tol: T) -> bool {
    let len = s.len();
    if len <= tol {
        return edges.iter().any(|e| e.dist_point(s.a) <= tol);
    }
    let u = s.dir() * (T::one() / len);
    let mut iv: Vec<(T, T)> = edges
        .iter()
        .filter(|e| s.dist_point(e.a).maxf(s.dist_point(e.b)) <= tol || (line_dist(s, e.a) <= tol && line_dist(s, e.b) <= tol))
        .map(|e| {
            let (a, b) = (u.dot(e.a - s.a), u.dot(e.b - s.a));
            (a.minf(b), a.maxf(b))
        })
        .collect();
    iv.sort_by(|a, b| cmp_f(&a.0, &b.0));
    let mut reach = T::zero();
    for (lo, hi) in iv {
        if lo > reach + tol {
            break;
        }
        reach = reach.maxf(hi);
    }
    reach >= len - tol
}

fn line_dist<T: Scalar>(s: &Segment<T>, p: Point<T>) -> T {
    let d = s.dir();
    (d.cross(p - s.a)).abs() / d.norm()
}

/// Recursive m-guillotine check over the breakpoint grid of `edges`.
pub fn check_m_guillotine<T: Scalar>(edges: &[Segment<T>], disks: &[Disk<T>], w: &Rectangle<T>, m: usize) -> bool {
    let hs = cut_candidates(edges, disks, Orientation::Horizontal, 2);
    let vs = cut_candidates(edges, disks, Orientation::Vertical, 2);
    let mut memo: HashMap<[u64; 4], bool> = HashMap::new();
    check_rec(edges, disks, *w, m, &hs, &vs, &mut memo)
}

fn check_rec<T: Scalar>(
    edges: &[Segment<T>],
    disks: &[Disk<T>],
    w: Rectangle<T>,
    m: usize,
    hs: &[T],
    vs: &[T],
    memo: &mut HashMap<[u64; 4], bool>,
) -> bool {
    if whole_disks(disks, &w) == 0 {
        return true;
    }
    let key = [w.x1, w.x2, w.y1, w.y2].map(|v| v.to_f64_lossy().to_bits());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let tol = T::lit(1e-9);
    let mut ok = false;
    for cut in ranked_cuts(&w, disks, hs, vs) {
        let good = m_span(edges, &w, cut, m).map_or(true, |s| segment_covered(&s, edges, tol))
            && m_disk_span(disks, &w, cut, m).map_or(true, |s| segment_covered(&s, edges, tol));
        if !good {
            continue;
        }
        let (a, b) = split(&w, cut);
        if check_rec(edges, disks, a, m, hs, vs, memo) && check_rec(edges, disks, b, m, hs, vs, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(key, ok);
    ok
}
