//! SVG 1.1 rendering of instances and tours. The y axis is flipped so the
//! picture has the usual mathematical orientation.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

use tspn_core::geom::{Point, Rectangle, Region, Tour, TourElement};

use crate::instance::{write, Instance, InstanceError};

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn bounds(inst: &Instance, tours: &[(Tour<f64>, String)]) -> Rectangle<f64> {
    let mut pts: Vec<Point<f64>> = Vec::new();
    for r in &inst.regions {
        if let Ok(b) = r.bbox() {
            pts.extend(b.corners());
        }
    }
    for (t, _) in tours {
        if let Some(b) = t.bbox() {
            pts.extend(b.corners());
        }
    }
    let lines = inst.lines();
    if pts.is_empty() {
        // lines only: frame their pairwise crossings and anchors
        for (i, a) in lines.iter().enumerate() {
            pts.push(a.anchor());
            pts.extend(lines[i + 1..].iter().filter_map(|b| a.intersection(b)));
        }
    }
    let b = Rectangle::from_points(pts).unwrap_or(Rectangle::new(-1.0, 1.0, -1.0, 1.0));
    // keep a minimum extent so degenerate pictures stay visible
    let side = b.width().max(b.height()).max(1.0);
    let b = Rectangle::new(b.x1, b.x1 + b.width().max(side * 0.05), b.y1, b.y1 + b.height().max(side * 0.05));
    b.inflate(0.1 * side)
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn pt(p: Point<f64>) -> String {
    format!("{} {}", num(p.x), num(-p.y))
}

/// Path data for a tour: one closed path with `L` and native `A` commands.
/// Full circles are split into two half arcs.
pub fn tour_path(t: &Tour<f64>) -> String {
    let mut d = String::new();
    let Some(start) = t.start_point() else {
        return d;
    };
    write!(d, "M {}", pt(start)).unwrap();
    for e in &t.elements {
        match e {
            TourElement::Seg(s) => write!(d, " L {}", pt(s.b)).unwrap(),
            TourElement::Arc(a) => {
                let pieces = if a.sweep.abs() >= TAU - 1e-12 { 2 } else { 1 };
                let step = a.sweep / pieces as f64;
                for k in 1..=pieces {
                    let end = a.center + Point::polar(a.start + step * k as f64) * a.radius;
                    let large = (step.abs() > PI) as u8;
                    // counterclockwise in the plane is clockwise on the flipped screen
                    let sweep = (step > 0.0) as u8;
                    write!(d, " A {r} {r} 0 {large} {sweep} {}", pt(end), r = num(a.radius)).unwrap();
                }
            }
        }
    }
    d.push_str(" Z");
    d
}

pub fn render_svg(inst: &Instance, tours: &[(Tour<f64>, String)]) -> String {
    let b = bounds(inst, tours);
    let stroke = (b.width().max(b.height()) / 400.0).max(1e-6);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        num(b.x1),
        num(-b.y2),
        num(b.width()),
        num(b.height()),
        (800.0 * b.height() / b.width()).round() as i64
    )
    .unwrap();
    writeln!(s, "  <title>{}</title>", escape(&inst.name)).unwrap();
    writeln!(s, r##"  <g fill="#cccccc" fill-opacity="0.6" stroke="#888888" stroke-width="{}">"##, num(stroke)).unwrap();
    for r in &inst.regions {
        match r {
            Region::Point(p) => {
                writeln!(s, r#"    <circle cx="{}" cy="{}" r="{}"/>"#, num(p.x), num(-p.y), num(3.0 * stroke)).unwrap();
            }
            Region::Segment(g) => {
                writeln!(s, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#, num(g.a.x), num(-g.a.y), num(g.b.x), num(-g.b.y), num(3.0 * stroke))
                    .unwrap();
            }
            Region::Disk(d) => {
                writeln!(s, r#"    <circle cx="{}" cy="{}" r="{}"/>"#, num(d.center.x), num(-d.center.y), num(d.radius)).unwrap();
            }
            Region::Polygon(p) => {
                let v: Vec<String> = p.vertices().iter().map(|q| format!("{},{}", num(q.x), num(-q.y))).collect();
                writeln!(s, r#"    <polygon points="{}"/>"#, v.join(" ")).unwrap();
            }
            Region::Line(l) => {
                if let Some(g) = l.clip(&b) {
                    writeln!(s, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(g.a.x), num(-g.a.y), num(g.b.x), num(-g.b.y)).unwrap();
                }
            }
        }
    }
    writeln!(s, "  </g>").unwrap();
    for (i, (t, label)) in tours.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let d = tour_path(t);
        if !d.is_empty() {
            writeln!(s, r#"  <path d="{d}" fill="none" stroke="{color}" stroke-width="{}"><title>{}</title></path>"#, num(2.0 * stroke), escape(label))
                .unwrap();
        }
    }
    let font = b.height() / 30.0;
    for (i, (t, label)) in tours.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = -b.y2 + font * (1.5 + 1.2 * i as f64);
        writeln!(s, r#"  <text x="{}" y="{}" font-size="{}" fill="{color}">{} ({})</text>"#, num(b.x1 + font), num(y), num(font), escape(label), num(t.len()))
            .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn write_svg(inst: &Instance, tours: &[(Tour<f64>, String)], path: &Path) -> Result<(), InstanceError> {
    write(path, &render_svg(inst, tours))
}
