use super::*;
use crate::geom::{tour_visits, Disk, Polygon};
use approx::assert_abs_diff_eq;
use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn seg(x: f64, y: f64, theta: f64) -> Region<f64> {
    let d = Point::polar(theta) * 0.5;
    let c = p(x, y);
    Region::Segment(Segment::new(c - d, c + d))
}

fn hseg(x: f64, y: f64) -> Region<f64> {
    Region::Segment(Segment::new(p(x, y), p(x + 1.0, y)))
}

fn disk(x: f64, y: f64) -> Region<f64> {
    Region::Disk(Disk::new(p(x, y), 0.5).unwrap())
}

/// Equilateral triangle with unit sides (diameter 1), rotated by `theta`.
fn triangle(x: f64, y: f64, theta: f64) -> Region<f64> {
    let r = 1.0 / 3f64.sqrt();
    let v = (0..3).map(|k| p(x, y) + Point::polar(theta + k as f64 * 2.0 * PI / 3.0) * r).collect();
    Region::Polygon(Polygon::new(v).unwrap())
}

/// Unit-diameter regions of every bounded kind, any orientation.
fn arb_region(span: f64) -> impl Strategy<Value = Region<f64>> {
    (0..3usize, 0.0..span, 0.0..span, 0.0..PI).prop_map(|(k, x, y, t)| match k {
        0 => seg(x, y, t),
        1 => disk(x, y),
        _ => triangle(x, y, t),
    })
}

/// Same, restricted to regions the classifier calls type 1.
fn arb_type1(span: f64) -> impl Strategy<Value = Region<f64>> {
    arb_region(span).prop_filter("type 1", |r| classify(std::slice::from_ref(r)).unwrap().type1.len() == 1)
}

fn visits_all(t: &Tour<f64>, regions: &[Region<f64>]) -> bool {
    regions.iter().all(|r| tour_visits(t, r, 1e-7))
}

/// Minimum number of vertical lines stabbing all intervals, by subset search
/// over right endpoints.
fn brute_force_stabbing(iv: &[(f64, f64)]) -> usize {
    let cand: Vec<f64> = iv.iter().map(|i| i.1).collect();
    let n = cand.len();
    (1..=n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
                iv.iter().all(|&(lo, hi)| (0..n).any(|j| m & (1 << j) != 0 && lo <= cand[j] + 1e-12 && cand[j] <= hi + 1e-12))
            })
        })
        .unwrap_or(0)
}

/// Grid oracle for the touching rectangle, using dense samples of each region.
fn grid_touching_perimeter(regions: &[Region<f64>], step: f64) -> f64 {
    let samples: Vec<Vec<Point<f64>>> = regions
        .iter()
        .map(|r| {
            let b = r.bbox().unwrap();
            let mut v = Vec::new();
            let m = 40;
            for i in 0..=m {
                for j in 0..=m {
                    let q = p(b.x1 + b.width() * i as f64 / m as f64, b.y1 + b.height() * j as f64 / m as f64);
                    if r.contains(q, 1e-12) {
                        v.push(q);
                    }
                }
            }
            if let Region::Segment(s) = r {
                v.extend((0..=200).map(|i| s.at(i as f64 / 200.0)));
            }
            v.push(r.anchor());
            v
        })
        .collect();
    let all = Rectangle::from_points(samples.iter().flatten().copied()).unwrap();
    let xs: Vec<f64> = (0..=((all.width() / step).ceil() as usize)).map(|i| all.x1 + i as f64 * step).collect();
    let mut best = f64::INFINITY;
    for (a, &x1) in xs.iter().enumerate() {
        for &x2 in &xs[a..] {
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let mut ok = true;
            for s in &samples {
                let ys: Vec<f64> = s.iter().filter(|q| q.x >= x1 - 1e-12 && q.x <= x2 + 1e-12).map(|q| q.y).collect();
                if ys.is_empty() {
                    ok = false;
                    break;
                }
                lo = lo.max(ys.iter().cloned().fold(f64::INFINITY, f64::min));
                hi = hi.min(ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
            }
            if ok {
                best = best.min(2.0 * ((x2 - x1) + (lo - hi).max(0.0)));
            }
        }
    }
    best
}

#[test]
fn classify_by_slope() {
    let regions = vec![hseg(0.0, 0.0), seg(3.0, 0.0, PI / 2.0), disk(5.0, 5.0), seg(0.0, 4.0, PI / 3.0), triangle(8.0, 0.0, 0.0)];
    let c = classify(&regions).unwrap();
    assert_abs_diff_eq!(c.delta, 1.0, epsilon = 1e-12);
    assert_eq!(c.type2, vec![1, 3]);
    assert_eq!(c.type1.len(), 3);
    // exactly 45 degrees counts as type 1
    let diag = Region::Segment(Segment::new(p(0.0, 0.0), p(1.0, 1.0)));
    assert_eq!(classify(&[diag]).unwrap().type1, vec![0]);
}

#[test]
fn classify_errors() {
    let bad = vec![hseg(0.0, 0.0), Region::Segment(Segment::new(p(0.0, 0.0), p(1.1, 0.0)))];
    assert!(matches!(classify(&bad), Err(SameDiameterError::NotSameDiameter { index: 1, .. })));
    let line = Region::Line(crate::geom::Line::new(1.0, 0.0, 0.0).unwrap());
    assert!(matches!(classify(&[hseg(0.0, 0.0), line]), Err(SameDiameterError::Geom(GeomError::Unbounded))));
    assert!(matches!(classify(&[Region::Point(p(0.0, 0.0))]), Err(SameDiameterError::ZeroDiameter(0))));
    // within the relative tolerance
    let close = Region::Segment(Segment::new(p(0.0, 0.0), p(1.0 + 1e-8, 0.0)));
    assert!(classify(&[hseg(0.0, 0.0), close]).is_ok());
}

#[test]
fn representatives_are_topmost() {
    assert_eq!(representative(&disk(0.0, 0.0), 0.0), p(0.0, 0.5));
    assert_eq!(representative(&disk(0.0, 0.0), 0.3), p(0.3, 0.4));
    assert_eq!(representative(&disk(0.0, 0.0), 9.0), p(0.5, 0.0));
    let up = Region::Segment(Segment::new(p(2.0, 0.0), p(2.0, 1.0)));
    assert_eq!(representative(&up, 2.0), p(2.0, 1.0));
    let sq = Region::Polygon(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap());
    assert_eq!(representative(&sq, 0.25), p(0.25, 1.0));
    assert_eq!(representative(&sq, 1.0), p(1.0, 1.0));
}

#[test]
fn greedy_cover_on_chain() {
    // projections [0,1], [0.5,1.5], [2,3], [2.9,3.9], [5,6]
    let regions = vec![hseg(0.0, 0.0), hseg(0.5, 1.0), hseg(2.0, 0.0), hseg(2.9, 2.0), hseg(5.0, 0.0)];
    let c = greedy_cover(&regions);
    assert_eq!(c.line_xs, vec![1.0, 3.0, 6.0]);
    assert_eq!(c.line_of, vec![0, 0, 1, 1, 2]);
    assert_eq!(c.reps[3].1, p(3.0, 2.0));
}

#[test]
fn touching_rectangle_examples() {
    // two horizontal segments stacked: a zero-width rectangle of height 2
    let q = min_touching_rectangle(&[hseg(0.0, 0.0), hseg(0.0, 2.0)]).unwrap();
    assert_abs_diff_eq!(q.width(), 0.0, epsilon = 1e-9);
    assert_abs_diff_eq!(q.height(), 2.0, epsilon = 1e-9);
    // side by side on one row: width 1, height 0
    let q = min_touching_rectangle(&[hseg(0.0, 0.0), hseg(2.0, 0.0)]).unwrap();
    assert_abs_diff_eq!(q.perimeter(), 2.0, epsilon = 1e-9);
    // overlapping regions: a point
    let q = min_touching_rectangle(&[disk(0.0, 0.0), disk(0.5, 0.0)]).unwrap();
    assert_abs_diff_eq!(q.perimeter(), 0.0, epsilon = 1e-9);
    // diagonal pair of segments: the rectangle joins the closest corners
    let q = min_touching_rectangle(&[hseg(0.0, 0.0), hseg(3.0, 4.0)]).unwrap();
    assert_abs_diff_eq!(q.width() + q.height(), 2.0 + 4.0, epsilon = 1e-9);
    assert!(min_touching_rectangle::<f64>(&[]).is_none());
}

#[test]
fn touching_rectangle_repairs_nonconvex() {
    // a U-shape whose notch hides the other region's nearby part
    let u = Region::Polygon(
        Polygon::new(vec![p(0.0, 0.0), p(0.6, 0.0), p(0.6, 0.6), p(0.4, 0.6), p(0.4, 0.2), p(0.2, 0.2), p(0.2, 0.6), p(0.0, 0.6)])
            .unwrap(),
    );
    let regions = vec![u, Region::Point(p(0.3, 0.5)), hseg(-0.2, 2.0)];
    let q = min_touching_rectangle(&regions).unwrap();
    for r in &regions {
        assert!(rectangle_touches(&q, r, 1e-9));
    }
}

#[test]
fn euler_tour_length() {
    let q = Rectangle::new(0.0, 2.0, 0.0, 1.0);
    for k in [1, 3, 8] {
        let t = rectangle_euler_tour(&q, k);
        assert!(t.is_closed(1e-12));
        assert_abs_diff_eq!(t.len(), 4.0 + 2.0 * k as f64, epsilon = 1e-12);
    }
    let pt = rectangle_euler_tour(&Rectangle::new(1.0, 1.0, 2.0, 2.0), 3);
    assert_eq!(pt.len(), 0.0);
}

#[test]
fn case1_stack() {
    let regions: Vec<_> = (0..5).map(|i| hseg(0.1 * i as f64, 1.5 * i as f64)).collect();
    let t = algorithm_a(&regions, 0).unwrap();
    assert_eq!(t.case, CaseTag::C1);
    let q = t.rectangle.unwrap();
    assert_abs_diff_eq!(q.height(), 6.0, epsilon = 1e-9);
    assert_abs_diff_eq!(t.tour.len(), 2.0 * q.width() + 6.0 * q.height(), epsilon = 1e-9);
    assert!(visits_all(&t.tour, &regions));
}

#[test]
fn case2_wide_and_narrow() {
    // two rows far apart horizontally: gap 4 >= 3
    let wide = vec![hseg(0.0, 0.0), hseg(0.0, 1.0), hseg(4.5, 0.5), hseg(4.2, 2.0)];
    let t = algorithm_a(&wide, 0).unwrap();
    assert_eq!(t.case, CaseTag::C2_1);
    let d = t.gap.unwrap();
    assert!(d >= 3.0);
    // second line slid left to the largest left endpoint
    assert_abs_diff_eq!(t.cover.line_xs[1], 4.5, epsilon = 1e-12);
    let q = t.rectangle.unwrap();
    assert_abs_diff_eq!(q.width(), d, epsilon = 1e-12);
    assert_abs_diff_eq!(t.tour.len(), 2.0 * q.width() + 2.0 * q.height(), epsilon = 1e-9);
    assert!(visits_all(&t.tour, &wide));

    let narrow = vec![hseg(0.0, 0.0), hseg(0.0, 1.0), hseg(2.5, 0.5), hseg(2.2, 2.0)];
    let t = algorithm_a(&narrow, 0).unwrap();
    assert_eq!(t.case, CaseTag::C2_2);
    assert!(t.gap.unwrap() < 3.0);
    let q = t.rectangle.unwrap();
    assert_abs_diff_eq!(t.tour.len(), 2.0 * q.width() + 16.0 * q.height(), epsilon = 1e-9);
    assert!(visits_all(&t.tour, &narrow));
}

#[test]
fn case3_uses_representatives() {
    let regions = vec![hseg(0.0, 0.0), hseg(3.0, 0.0), hseg(6.0, 0.0), hseg(6.0, 2.0)];
    let t = algorithm_a(&regions, 0).unwrap();
    assert_eq!(t.case, CaseTag::C3);
    assert!(t.exact_point_tour);
    // reps (1,0), (4,0), (7,0), (7,2)
    assert_abs_diff_eq!(t.tour.len(), 6.0 + 2.0 + 40f64.sqrt(), epsilon = 1e-9);
    assert!(visits_all(&t.tour, &regions));
}

#[test]
fn empty_input_gives_empty_trace() {
    let t = algorithm_a::<f64>(&[], 0).unwrap();
    assert_eq!(t.case, CaseTag::Empty);
    assert!(t.tour.is_empty());
    let r = tspn_same_diameter::<f64>(&[], 0).unwrap();
    assert!(r.tour.is_empty());
}

#[test]
fn combine_adds_doubled_connector() {
    let a = Tour::circle(p(0.0, 0.0), 1.0);
    let b = Tour::closed_polyline(&[p(3.0, -1.0), p(5.0, -1.0), p(5.0, 1.0), p(3.0, 1.0)]);
    let c = combine_tours(&a, &b);
    assert!(c.is_closed(1e-12));
    assert_abs_diff_eq!(c.len(), a.len() + b.len() + 4.0, epsilon = 1e-9);
    assert_eq!(combine_tours(&Tour::empty(), &b), b);
    assert_eq!(combine_tours(&a, &Tour::empty()), a);
}

#[test]
fn mixed_pipeline_visits_everything() {
    let regions = vec![hseg(0.0, 0.0), seg(2.0, 2.0, 1.3), disk(4.0, 0.0), seg(8.0, 3.0, 1.5), triangle(1.0, 6.0, 0.2)];
    let r = tspn_same_diameter(&regions, 3).unwrap();
    assert!(!r.parallel_segments);
    assert!(!r.classified.type2.is_empty());
    assert!(r.tour.is_closed(1e-9));
    assert!(visits_all(&r.tour, &regions));
}

#[test]
fn scaling_is_undone() {
    let regions: Vec<_> = vec![hseg(0.0, 0.0), hseg(0.2, 1.0), seg(5.0, 5.0, 1.4)];
    let big: Vec<_> = regions.iter().map(|r| r.scale(7.0)).collect();
    let a = tspn_same_diameter(&regions, 1).unwrap();
    let b = tspn_same_diameter(&big, 1).unwrap();
    assert_abs_diff_eq!(b.classified.delta, 7.0, epsilon = 1e-12);
    assert_abs_diff_eq!(b.tour.len(), 7.0 * a.tour.len(), epsilon = 1e-9);
    assert!(visits_all(&b.tour, &big));
}

#[test]
fn parallel_segments_one_line_is_optimal() {
    // tilted parallel segments all crossing one line: the doubled segment
    // between the extreme ones
    let theta = 0.4;
    let dir = Point::polar(theta);
    let nrm = dir.perp();
    let regions: Vec<_> = (0..4).map(|i| {
        let c = nrm * (i as f64) + dir * (0.1 * i as f64);
        Region::Segment(Segment::new(c - dir * 0.5, c + dir * 0.5))
    }).collect();
    let r = tspn_same_diameter(&regions, 0).unwrap();
    assert!(r.parallel_segments);
    assert_eq!(r.type1.case, CaseTag::ParallelOneLine);
    assert_abs_diff_eq!(r.tour.len(), 6.0, epsilon = 1e-9);
    assert!(visits_all(&r.tour, &regions));
}

#[test]
fn parallel_segments_two_lines() {
    let regions = vec![hseg(0.0, 0.0), hseg(0.0, 3.0), hseg(1.5, 1.5), hseg(2.5, 0.5)];
    let r = tspn_same_diameter(&regions, 0).unwrap();
    assert!(r.parallel_segments);
    assert_eq!(r.type1.case, CaseTag::ParallelTwoLines);
    assert!(visits_all(&r.tour, &regions));
}

#[test]
fn cauchy_schwarz_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let (a, b, w, h): (f64, f64, f64, f64) = (rng.gen_range(0.0..20.0), rng.gen_range(0.0..20.0), rng.gen_range(0.0..50.0), rng.gen_range(0.0..50.0));
        assert!(a * w + b * h <= bounds::cauchy_schwarz_rhs(a, b, w, h) * (1.0 + 1e-12) + 1e-12);
    }
    assert_abs_diff_eq!(bounds::case1(), 10f64.sqrt());
    assert!(bounds::CASE2_2 >= 65f64.sqrt());
}

proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_cover_is_minimum(v in prop::collection::vec(arb_region(6.0), 1..9)) {
        let c = greedy_cover(&v);
        let iv: Vec<_> = v.iter().map(|r| { let i = r.x_projection().unwrap(); (i.lo, i.hi) }).collect();
        prop_assert_eq!(c.line_xs.len(), brute_force_stabbing(&iv));
        for (i, r) in v.iter().enumerate() {
            let (idx, q) = c.reps[i];
            prop_assert_eq!(idx, i);
            prop_assert!((q.x - c.line_xs[c.line_of[i]]).abs() < 1e-12);
            prop_assert!(r.dist_point(q) < 1e-9);
            // topmost: nothing of the region lies just above
            prop_assert!(!r.contains(q + p(0.0, 1e-6), 0.0));
        }
    }

    #[test]
    fn touching_rectangle_matches_grid(v in prop::collection::vec(arb_region(3.0), 1..5)) {
        let q = min_touching_rectangle(&v).unwrap();
        for r in &v {
            prop_assert!(rectangle_touches(&q, r, 1e-7));
        }
        let step = 0.02;
        let grid = grid_touching_perimeter(&v, step);
        prop_assert!(q.perimeter() <= grid + 1e-7, "ours {} grid {}", q.perimeter(), grid);
        prop_assert!(q.perimeter() >= grid - 0.2, "ours {} grid {}", q.perimeter(), grid);
    }

    #[test]
    fn algorithm_a_visits_and_meets_formulas(v in prop::collection::vec(arb_type1(8.0), 1..12), seed in any::<u64>()) {
        let t = algorithm_a(&v, seed).unwrap();
        prop_assert!(t.tour.is_closed(1e-9));
        prop_assert!(visits_all(&t.tour, &v), "case {:?}", t.case);
        match t.case {
            CaseTag::C1 => {
                let q = t.rectangle.unwrap();
                prop_assert!((t.tour.len() - (2.0 * q.width() + 6.0 * q.height())).abs() < 1e-9);
            }
            CaseTag::C2_1 => {
                let q = t.rectangle.unwrap();
                prop_assert!(t.gap.unwrap() >= 3.0);
                prop_assert!((t.tour.len() - (2.0 * q.width() + 2.0 * q.height())).abs() < 1e-9);
            }
            CaseTag::C2_2 => {
                let q = t.rectangle.unwrap();
                prop_assert!(t.gap.unwrap() < 3.0);
                prop_assert!((t.tour.len() - (2.0 * q.width() + 16.0 * q.height())).abs() < 1e-9);
            }
            CaseTag::C3 => prop_assert!(t.cover.line_xs.len() >= 3),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn pipeline_visits_all(v in prop::collection::vec(arb_region(10.0), 1..12), seed in any::<u64>()) {
        let r = tspn_same_diameter(&v, seed).unwrap();
        prop_assert!(r.tour.is_closed(1e-9));
        prop_assert!(visits_all(&r.tour, &v));
        prop_assert_eq!(r.classified.type1.len() + r.classified.type2.len(), v.len());
    }

    #[test]
    fn combine_length(a in prop::collection::vec((0.0..5.0f64, 0.0..5.0f64), 1..5),
                      b in prop::collection::vec((6.0..9.0f64, 0.0..5.0f64), 1..5)) {
        let ta = Tour::closed_polyline(&a.iter().map(|&(x, y)| p(x, y)).collect::<Vec<_>>());
        let tb = Tour::closed_polyline(&b.iter().map(|&(x, y)| p(x, y)).collect::<Vec<_>>());
        let (_, pa, _, pb) = ta.closest_points(&tb).unwrap();
        let c = combine_tours(&ta, &tb);
        prop_assert!(c.is_closed(1e-9));
        prop_assert!((c.len() - (ta.len() + tb.len() + 2.0 * pa.dist(pb))).abs() < 1e-9);
    }
}
