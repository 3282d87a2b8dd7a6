use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use tspn_cli::generate::{generate, GenParams, GenerateError, Generator};
use tspn_cli::instance::{parse_instance, serialize_instance, Family, Instance, InstanceError, TourFile};
use tspn_core::geom::{Point, Region, Tour};

#[test]
fn disk_record_parses() {
    let s = r#"{"name":"one","family":"disjoint-unit-disks","regions":[{"type":"disk","cx":0,"cy":0,"r":1}]}"#;
    let inst = Instance::from_json(s).unwrap();
    assert_eq!(inst.family, Family::DisjointUnitDisks);
    let d = inst.disks()[0];
    assert_eq!(d.center, Point::new(0.0, 0.0));
    assert_eq!(d.radius, 1.0);
    assert_eq!(inst.seed, None);
}

#[test]
fn line_is_normalized() {
    let s = r#"{"name":"l","family":"lines","regions":[{"type":"line","a":0,"b":2,"c":-4}]}"#;
    let l = Instance::from_json(s).unwrap().lines()[0];
    assert_abs_diff_eq!(l.b, 1.0);
    assert_abs_diff_eq!(l.c, -2.0);
}

#[test]
fn short_polygon_names_the_field() {
    let s = r#"{"name":"p","family":"mixed","regions":[{"type":"point","x":0,"y":0},{"type":"polygon","vertices":[[0,0],[1,0]]}]}"#;
    match Instance::from_json(s) {
        Err(e @ InstanceError::Field { index: 1, field: "vertices", .. }) => {
            assert!(e.to_string().starts_with("regions[1].vertices"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_json_reports_position() {
    let s = "{\n  \"name\": \"x\",\n  \"family\": \n}";
    match Instance::from_json(s) {
        Err(InstanceError::Json { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_fields_and_types_are_rejected() {
    let extra = r#"{"name":"p","family":"mixed","regions":[{"type":"point","x":0,"y":0,"z":1}]}"#;
    assert!(matches!(Instance::from_json(extra), Err(InstanceError::Json { .. })));
    let kind = r#"{"name":"p","family":"mixed","regions":[{"type":"ellipse","x":0}]}"#;
    assert!(matches!(Instance::from_json(kind), Err(InstanceError::Json { .. })));
}

#[test]
fn family_constraints() {
    let overlap = r#"{"name":"o","family":"disjoint-unit-disks","regions":[
        {"type":"disk","cx":0,"cy":0,"r":1},{"type":"disk","cx":1.5,"cy":0,"r":1}]}"#;
    assert!(matches!(Instance::from_json(overlap), Err(InstanceError::Family { index: 1, .. })));
    let radius = r#"{"name":"r","family":"unit-disks","regions":[{"type":"disk","cx":0,"cy":0,"r":2}]}"#;
    assert!(matches!(Instance::from_json(radius), Err(InstanceError::Family { index: 0, .. })));
    let diam = r#"{"name":"d","family":"same-diameter","regions":[
        {"type":"segment","ax":0,"ay":0,"bx":1,"by":0},{"type":"segment","ax":0,"ay":1,"bx":2,"by":1}]}"#;
    assert!(matches!(Instance::from_json(diam), Err(InstanceError::Family { index: 1, .. })));
    let notline = r#"{"name":"n","family":"lines","regions":[{"type":"point","x":0,"y":0}]}"#;
    assert!(matches!(Instance::from_json(notline), Err(InstanceError::Family { .. })));
    let zero = r#"{"name":"z","family":"mixed","regions":[{"type":"disk","cx":0,"cy":0,"r":-1}]}"#;
    assert!(matches!(Instance::from_json(zero), Err(InstanceError::Field { field: "r", .. })));
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(Generator::Mixed, 9, &GenParams::for_generator(Generator::Mixed), 3).unwrap();
    let p = dir.path().join("i.json");
    serialize_instance(&inst, &p).unwrap();
    assert_eq!(parse_instance(&p).unwrap(), inst);
    assert!(matches!(parse_instance(&dir.path().join("missing.json")), Err(InstanceError::Io { .. })));
}

#[test]
fn tour_file_round_trip() {
    let mut el = Tour::circle(Point::new(1.0, 2.0), 0.5).elements;
    el.extend(Tour::closed_polyline(&[Point::new(0.0, 0.0), Point::new(3.0, 0.0)]).elements);
    let t = Tour::from_elements(el);
    let f = TourFile::new("x", "oracle", &t);
    let back = TourFile::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
    assert_eq!(back.tour().unwrap(), t);
}

#[test]
fn generators_are_deterministic_and_valid() {
    for g in Generator::ALL {
        let p = GenParams::for_generator(g);
        let a = generate(g, 7, &p, 99).unwrap();
        assert_eq!(a.to_json(), generate(g, 7, &p, 99).unwrap().to_json());
        assert_ne!(a.regions, generate(g, 7, &p, 100).unwrap().regions);
        assert_eq!(a.family, g.family());
        assert_eq!(a.name, format!("{g}-n7-s99"));
        assert_eq!(a.regions.len(), 7);
        a.validate().unwrap();
    }
}

#[test]
fn parallel_segments_are_horizontal_units() {
    let inst = generate(Generator::ParallelSegments, 20, &GenParams::for_generator(Generator::ParallelSegments), 1).unwrap();
    for r in &inst.regions {
        let Region::Segment(s) = r else { panic!("{r:?}") };
        assert_eq!(s.a.y, s.b.y);
        assert_abs_diff_eq!(s.len(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn generator_errors() {
    let g = Generator::DisjointUnitDisks;
    assert_eq!(generate(g, 0, &GenParams::for_generator(g), 0).unwrap_err(), GenerateError::Empty);
    let tight = GenParams { side: 4.0, max_tries: 50 };
    assert!(matches!(generate(g, 10, &tight, 0), Err(GenerateError::Infeasible { n: 10, .. })));
}

#[test]
fn names_parse() {
    for g in Generator::ALL {
        assert_eq!(g.as_str().parse::<Generator>().unwrap(), g);
    }
    for f in Family::ALL {
        assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
    }
    assert!("circles".parse::<Generator>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_is_idempotent(g in 0..6usize, n in 1..12usize, seed: u64) {
        let g = Generator::ALL[g];
        let inst = generate(g, n, &GenParams::for_generator(g), seed).unwrap();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_json(), text);
    }
}
