use std::f64::consts::{PI, SQRT_2};

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use super::*;

fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn unit_square_tour() -> Tour<f64> {
    Tour::closed_polyline(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)])
}

#[test]
fn tour_length_examples() {
    assert_eq!(tour_length(&Tour::point(p(3.0, 4.0))), 0.0);
    assert_abs_diff_eq!(tour_length(&unit_square_tour()), 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(tour_length(&Tour::circle(p(1.0, 1.0), 2.0)), 4.0 * PI, epsilon = 1e-12);
    assert!(unit_square_tour().is_closed(1e-12));
    assert!(Tour::circle(p(1.0, 1.0), 2.0).is_closed(1e-12));
}

#[test]
fn diameter_examples() {
    let (d, s) = region_diameter(&Region::Disk(Disk::unit(p(0.0, 0.0)))).unwrap();
    assert_eq!(d, 2.0);
    assert_abs_diff_eq!(s.midpoint_dist(), 0.0, epsilon = 1e-12);
    let seg = Segment::new(p(0.0, 0.0), p(1.0, 0.0));
    let (d, s) = region_diameter(&Region::Segment(seg)).unwrap();
    assert_eq!((d, s), (1.0, seg));
    let rect = Polygon::new(vec![p(0.0, 0.0), p(3.0, 0.0), p(3.0, 1.0), p(0.0, 1.0)]).unwrap();
    let (d, s) = region_diameter(&Region::Polygon(rect)).unwrap();
    assert_abs_diff_eq!(d, 10f64.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(s.len(), 10f64.sqrt(), epsilon = 1e-12);
    let line = Region::Line(Line::new(0.0, 1.0, 0.0).unwrap());
    assert_eq!(region_diameter(&line).unwrap_err(), GeomError::Unbounded);
}

trait MidDist {
    fn midpoint_dist(&self) -> f64;
}
impl MidDist for Segment<f64> {
    fn midpoint_dist(&self) -> f64 {
        self.a.midpoint(self.b).norm()
    }
}

#[test]
fn projection_examples() {
    let disk = Region::Disk(Disk::new(p(2.0, 5.0), 1.0).unwrap());
    assert_eq!(x_projection(&disk).unwrap(), Interval::new(1.0, 3.0));
    let tri = Region::Polygon(Polygon::new(vec![p(0.0, 0.0), p(3.0, 0.0), p(1.0, 4.0)]).unwrap());
    assert_eq!(x_projection(&tri).unwrap(), Interval::new(0.0, 3.0));
    assert_eq!(x_projection(&Region::Point(p(7.0, -2.0))).unwrap(), Interval::new(7.0, 7.0));
    assert!(x_projection(&Region::Line(Line::new(1.0, 0.0, 0.0).unwrap())).is_err());
}

#[test]
fn visits_examples() {
    let circle = Tour::circle(p(0.0, 0.0), 1.0);
    let inner = Region::Disk(Disk::new(p(0.0, 0.0), 0.5).unwrap());
    assert!(!tour_visits(&circle, &inner, 1e-9));
    assert_abs_diff_eq!(inner.dist_tour(&circle), 0.5, epsilon = 1e-12);
    let tangent = Region::Disk(Disk::new(p(1.5, 0.0), 0.5).unwrap());
    assert!(tour_visits(&circle, &tangent, 1e-9));
    let crossing = Region::Line(Line::new(1.0, 1.0, -0.5).unwrap());
    assert!(tour_visits(&circle, &crossing, 1e-9));
    assert!(tour_visits(&unit_square_tour(), &crossing, 1e-9));
    let far = Region::Line(Line::new(0.0, 1.0, -3.0).unwrap());
    assert_abs_diff_eq!(far.dist_tour(&circle), 2.0, epsilon = 1e-12);
    assert_abs_diff_eq!(far.dist_tour(&unit_square_tour()), 2.0, epsilon = 1e-12);
}

#[test]
fn visits_partial_arcs_and_polygons() {
    // upper half circle, clockwise from angle pi to 0
    let arc = Arc::new(p(0.0, 0.0), 1.0, PI, -PI);
    let t = Tour::from_elements(vec![TourElement::Arc(arc), TourElement::Seg(Segment::new(p(1.0, 0.0), p(-1.0, 0.0)))]);
    assert!(t.is_closed(1e-12));
    let below = Region::Point(p(0.0, -1.0));
    assert_abs_diff_eq!(below.dist_tour(&t), 1.0, epsilon = 1e-12);
    let above = Region::Point(p(0.0, 2.0));
    assert_abs_diff_eq!(above.dist_tour(&t), 1.0, epsilon = 1e-12);
    let sq = Polygon::new(vec![p(-0.2, 1.5), p(0.2, 1.5), p(0.2, 1.9), p(-0.2, 1.9)]).unwrap();
    assert_abs_diff_eq!(Region::Polygon(sq).dist_tour(&t), 0.5, epsilon = 1e-12);
    let big = Polygon::new(vec![p(-5.0, -5.0), p(5.0, -5.0), p(5.0, 5.0), p(-5.0, 5.0)]).unwrap();
    assert!(tour_visits(&t, &Region::Polygon(big), 0.0));
    let horiz = Region::Line(Line::new(0.0, 1.0, -0.5).unwrap());
    assert!(tour_visits(&Tour::from_elements(vec![TourElement::Arc(arc)]), &horiz, 1e-12));
    let low = Region::Line(Line::new(0.0, 1.0, 0.5).unwrap());
    assert_abs_diff_eq!(low.dist_element(&TourElement::Arc(arc)), 0.5, epsilon = 1e-12);
}

#[test]
fn hull_examples() {
    let pts = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(0.5, 0.5)];
    match convex_hull(&pts) {
        Hull::Polygon(poly) => {
            assert_eq!(poly.vertices().len(), 4);
            assert_abs_diff_eq!(poly.area(), 1.0, epsilon = 1e-12);
        }
        h => panic!("unexpected hull {h:?}"),
    }
    let tri = [p(0.0, 0.0), p(2.0, 0.0), p(0.0, 1.0)];
    assert!(matches!(convex_hull(&tri), Hull::Polygon(ref q) if q.vertices().len() == 3));
    let col = [p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0), p(3.0, 3.0)];
    assert_eq!(convex_hull(&col), Hull::Segment(Segment::new(p(0.0, 0.0), p(3.0, 3.0))));
    assert_eq!(convex_hull(&[p(1.0, 1.0)]), Hull::Point(p(1.0, 1.0)));
    // collinear vertices on a hull edge are dropped
    let sq = [p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)];
    assert!(matches!(convex_hull(&sq), Hull::Polygon(ref q) if q.vertices().len() == 4));
}

#[test]
fn polygon_validation() {
    assert_eq!(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0)]).unwrap_err(), GeomError::TooFewVertices(2));
    let bowtie = vec![p(0.0, 0.0), p(2.0, 1.0), p(2.0, 0.0), p(0.0, 3.0)];
    assert_eq!(Polygon::new(bowtie).unwrap_err(), GeomError::SelfIntersecting);
    let cw = Polygon::new(vec![p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)]).unwrap();
    assert!(cw.area() > 0.0);
    assert!(Point::try_new(f64::NAN, 0.0).is_err());
    assert_eq!(Line::new(0.0, 0.0, 1.0).unwrap_err(), GeomError::DegenerateLine);
}

#[test]
fn line_normalization() {
    let l = Line::new(0.0, -2.0, 4.0).unwrap();
    assert_eq!((l.a, l.b, l.c), (0.0, 1.0, -2.0));
    let m = Line::new(-3.0, 4.0, 5.0).unwrap();
    assert_abs_diff_eq!(m.a, 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(m.b, -0.8, epsilon = 1e-15);
    assert_abs_diff_eq!(m.c, -1.0, epsilon = 1e-15);
    let through = Line::through(p(0.0, 2.0), p(5.0, 2.0)).unwrap();
    assert!(through.approx_eq(&l, 1e-12));
}

#[test]
fn rotate_to_preserves_length() {
    let t = Tour::circle(p(0.0, 0.0), 1.0);
    let r = t.rotate_to(0, p(0.0, 1.0));
    assert!(r.is_closed(1e-12));
    assert_abs_diff_eq!(r.len(), 2.0 * PI, epsilon = 1e-12);
    assert!(r.start_point().unwrap().approx_eq(p(0.0, 1.0), 1e-12));
    let s = unit_square_tour().rotate_to(2, p(0.5, 1.0));
    assert!(s.is_closed(1e-12));
    assert_abs_diff_eq!(s.len(), 4.0, epsilon = 1e-12);
}

#[test]
fn element_closest_points() {
    let a = TourElement::Arc(Arc::new(p(0.0, 0.0), 1.0, 0.0, PI));
    let b = TourElement::Arc(Arc::new(p(3.0, 0.0), 1.0, 0.0, 2.0 * PI));
    let (x, y) = a.closest_points(&b);
    assert_abs_diff_eq!(x.dist(y), 1.0, epsilon = 1e-12);
    let s = TourElement::Seg(Segment::new(p(-2.0, 3.0), p(2.0, 3.0)));
    let (x, y) = a.closest_points(&s);
    assert_abs_diff_eq!(x.dist(y), 2.0, epsilon = 1e-12);
    let s2 = TourElement::Seg(Segment::new(p(-2.0, 0.5), p(2.0, 0.5)));
    let (x, y) = s2.closest_points(&a);
    assert_abs_diff_eq!(x.dist(y), 0.0, epsilon = 1e-12);
    // the lower half is not part of the arc
    let s3 = TourElement::Seg(Segment::new(p(-2.0, -1.5), p(2.0, -1.5)));
    let (x, y) = s3.closest_points(&a);
    assert_abs_diff_eq!(x.dist(y), 1.5, epsilon = 1e-12);
    let _ = SQRT_2;
}

fn arb_tour() -> impl Strategy<Value = Tour<f64>> {
    prop_oneof![
        prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 1..8)
            .prop_map(|v| Tour::closed_polyline(&v.into_iter().map(|(x, y)| p(x, y)).collect::<Vec<_>>())),
        ((-50.0..50.0f64), (-50.0..50.0f64), (0.1..20.0f64)).prop_map(|(x, y, r)| Tour::circle(p(x, y), r)),
    ]
}

fn arb_polygon() -> impl Strategy<Value = Polygon<f64>> {
    // star-shaped polygons around the origin are always simple
    prop::collection::vec((0.5..5.0f64, 0.0..1.0f64), 3..9).prop_map(|v| {
        let n = v.len();
        let pts = v
            .into_iter()
            .enumerate()
            .map(|(i, (r, jitter))| {
                let a = (i as f64 + 0.8 * jitter) * 2.0 * PI / n as f64;
                p(r * a.cos(), r * a.sin())
            })
            .collect();
        Polygon::new(pts).unwrap()
    })
}

proptest! {
    #[test]
    fn length_invariant_under_rigid_motion(t in arb_tour(), dx in -100.0..100.0f64, dy in -100.0..100.0f64, th in -PI..PI) {
        let moved = t.rotate(th).translate(p(dx, dy));
        let l0 = t.len();
        prop_assert!((moved.len() - l0).abs() <= 1e-9 * (1.0 + l0));
        prop_assert!(moved.is_closed(1e-9 * (1.0 + l0)));
    }

    #[test]
    fn polygon_diameter_matches_boundary_sample(poly in arb_polygon()) {
        let (d, _) = Region::Polygon(poly.clone()).diameter().unwrap();
        let mut sample = Vec::new();
        for e in poly.edges() {
            for k in 0..=200 {
                sample.push(e.at(k as f64 / 200.0));
            }
        }
        let mut brute: f64 = 0.0;
        for a in &sample {
            for b in &sample {
                brute = brute.max(a.dist(*b));
            }
        }
        prop_assert!((brute - d).abs() <= 1e-6);
    }

    #[test]
    fn projection_of_quarter_turn(poly in arb_polygon(), cx in -10.0..10.0f64, cy in -10.0..10.0f64, r in 0.1..3.0f64) {
        for reg in [Region::Polygon(poly.clone()), Region::Disk(Disk::new(p(cx, cy), r).unwrap())] {
            let rotated = reg.rotate270();
            let xp = rotated.x_projection().unwrap();
            let yp = reg.y_projection().unwrap();
            prop_assert!((xp.lo - yp.lo).abs() <= 1e-12 && (xp.hi - yp.hi).abs() <= 1e-12);
        }
    }

    #[test]
    fn visits_monotone_in_tolerance(t in arb_tour(), cx in -60.0..60.0f64, cy in -60.0..60.0f64, r in 0.0..5.0f64, t1 in 0.0..10.0f64, dt in 0.0..10.0f64) {
        let reg = Region::Disk(Disk::new(p(cx, cy), r).unwrap());
        if tour_visits(&t, &reg, t1) {
            prop_assert!(tour_visits(&t, &reg, t1 + dt));
        }
    }
}

#[test]
fn f32_smoke() {
    let t: Tour<f32> = Tour::closed_polyline(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]);
    assert!((t.len() - (2.0 + std::f32::consts::SQRT_2)).abs() < 1e-5);
}
