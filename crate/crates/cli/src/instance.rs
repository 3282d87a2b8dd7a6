//! Instance and tour files: JSON records, family validation and round-trip.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tspn_core::geom::{Arc, Disk, Line, Point, Polygon, Region, Segment, Tour, TourElement};

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("regions[{index}].{field}: {msg}")]
    Field { index: usize, field: &'static str, msg: String },
    #[error("family {family} does not admit regions[{index}]: {msg}")]
    Family { family: Family, index: usize, msg: String },
    #[error("tour element {index}: {msg}")]
    TourElement { index: usize, msg: String },
}

impl InstanceError {
    fn json(e: serde_json::Error) -> Self {
        InstanceError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    DisjointUnitDisks,
    UnitDisks,
    SameDiameter,
    Lines,
    Mixed,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::DisjointUnitDisks, Family::UnitDisks, Family::SameDiameter, Family::Lines, Family::Mixed];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::DisjointUnitDisks => "disjoint-unit-disks",
            Family::UnitDisks => "unit-disks",
            Family::SameDiameter => "same-diameter",
            Family::Lines => "lines",
            Family::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// A validated TSPN instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub family: Family,
    pub seed: Option<u64>,
    pub regions: Vec<Region<f64>>,
}

/// On-disk region record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RegionRecord {
    Point { x: f64, y: f64 },
    Segment { ax: f64, ay: f64, bx: f64, by: f64 },
    Disk { cx: f64, cy: f64, r: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    Line { a: f64, b: f64, c: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    regions: Vec<RegionRecord>,
}

fn finite(index: usize, field: &'static str, v: f64) -> Result<f64, InstanceError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(InstanceError::Field { index, field, msg: "not a finite number".into() })
    }
}

impl RegionRecord {
    pub fn to_region(&self, index: usize) -> Result<Region<f64>, InstanceError> {
        let f = |field, v| finite(index, field, v);
        Ok(match *self {
            RegionRecord::Point { x, y } => Region::Point(Point::new(f("x", x)?, f("y", y)?)),
            RegionRecord::Segment { ax, ay, bx, by } => {
                Region::Segment(Segment::new(Point::new(f("ax", ax)?, f("ay", ay)?), Point::new(f("bx", bx)?, f("by", by)?)))
            }
            RegionRecord::Disk { cx, cy, r } => {
                let center = Point::new(f("cx", cx)?, f("cy", cy)?);
                let d = Disk::new(center, f("r", r)?).map_err(|e| InstanceError::Field { index, field: "r", msg: e.to_string() })?;
                Region::Disk(d)
            }
            RegionRecord::Polygon { ref vertices } => {
                let pts = vertices.iter().map(|v| Point::new(v[0], v[1])).collect();
                let p = Polygon::new(pts).map_err(|e| InstanceError::Field { index, field: "vertices", msg: e.to_string() })?;
                Region::Polygon(p)
            }
            RegionRecord::Line { a, b, c } => {
                let l = Line::new(a, b, c).map_err(|e| InstanceError::Field { index, field: "a", msg: e.to_string() })?;
                Region::Line(l)
            }
        })
    }

    pub fn from_region(r: &Region<f64>) -> Self {
        match r {
            Region::Point(p) => RegionRecord::Point { x: p.x, y: p.y },
            Region::Segment(s) => RegionRecord::Segment { ax: s.a.x, ay: s.a.y, bx: s.b.x, by: s.b.y },
            Region::Disk(d) => RegionRecord::Disk { cx: d.center.x, cy: d.center.y, r: d.radius },
            Region::Polygon(p) => RegionRecord::Polygon { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() },
            Region::Line(l) => RegionRecord::Line { a: l.a, b: l.b, c: l.c },
        }
    }
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(name: impl Into<String>, family: Family, seed: Option<u64>, regions: Vec<Region<f64>>) -> Result<Self, InstanceError> {
        let inst = Instance { name: name.into(), family, seed, regions };
        inst.validate()?;
        Ok(inst)
    }

    /// Checks that the regions belong to the declared family.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let bad = |index, msg: String| Err(InstanceError::Family { family: self.family, index, msg });
        let unit = |i: usize, r: &Region<f64>| -> Result<Disk<f64>, InstanceError> {
            match r {
                Region::Disk(d) if (d.radius - 1.0).abs() <= 1e-9 => Ok(*d),
                Region::Disk(d) => Err(InstanceError::Family { family: self.family, index: i, msg: format!("radius {} is not 1", d.radius) }),
                _ => Err(InstanceError::Family { family: self.family, index: i, msg: "not a disk".into() }),
            }
        };
        match self.family {
            Family::DisjointUnitDisks => {
                let disks = self.regions.iter().enumerate().map(|(i, r)| unit(i, r)).collect::<Result<Vec<_>, _>>()?;
                for (i, a) in disks.iter().enumerate() {
                    if let Some(j) = disks[i + 1..].iter().position(|b| !a.disjoint(b, 1e-9)) {
                        return bad(i + 1 + j, format!("overlaps regions[{i}]"));
                    }
                }
            }
            Family::UnitDisks => {
                for (i, r) in self.regions.iter().enumerate() {
                    unit(i, r)?;
                }
            }
            Family::SameDiameter => {
                let mut first: Option<f64> = None;
                for (i, r) in self.regions.iter().enumerate() {
                    let Ok((d, _)) = r.diameter() else {
                        return bad(i, "unbounded region".into());
                    };
                    match first {
                        None if d <= 0.0 => return bad(i, "zero diameter".into()),
                        None => first = Some(d),
                        Some(d0) if (d - d0).abs() > 1e-6 * d0 => return bad(i, format!("diameter {d} differs from {d0}")),
                        Some(_) => {}
                    }
                }
            }
            Family::Lines => {
                if let Some(i) = self.regions.iter().position(|r| !matches!(r, Region::Line(_))) {
                    return bad(i, "not a line".into());
                }
            }
            Family::Mixed => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            name: self.name.clone(),
            family: self.family,
            seed: self.seed,
            regions: self.regions.iter().map(RegionRecord::from_region).collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(s).map_err(InstanceError::json)?;
        let regions = file.regions.iter().enumerate().map(|(i, r)| r.to_region(i)).collect::<Result<Vec<_>, _>>()?;
        Instance::new(file.name, file.family, file.seed, regions)
    }

    pub fn lines(&self) -> Vec<Line<f64>> {
        self.regions.iter().filter_map(|r| r.as_line().copied()).collect()
    }

    pub fn disks(&self) -> Vec<Disk<f64>> {
        self.regions.iter().filter_map(|r| r.as_disk().copied()).collect()
    }
}

pub fn parse_instance(path: &Path) -> Result<Instance, InstanceError> {
    Instance::from_json(&read(path)?)
}

pub fn serialize_instance(inst: &Instance, path: &Path) -> Result<(), InstanceError> {
    write(path, &inst.to_json())
}

pub(crate) fn read(path: &Path) -> Result<String, InstanceError> {
    std::fs::read_to_string(path).map_err(|source| InstanceError::Io { path: path.display().to_string(), source })
}

pub(crate) fn write(path: &Path, s: &str) -> Result<(), InstanceError> {
    std::fs::write(path, s).map_err(|source| InstanceError::Io { path: path.display().to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ElementRecord {
    Seg { ax: f64, ay: f64, bx: f64, by: f64 },
    Arc { cx: f64, cy: f64, r: f64, start: f64, sweep: f64 },
}

/// A tour file: the elements plus what produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TourFile {
    pub instance: String,
    pub algorithm: String,
    pub length: f64,
    pub elements: Vec<ElementRecord>,
}

impl TourFile {
    pub fn new(instance: &str, algorithm: &str, t: &Tour<f64>) -> Self {
        let elements = t
            .elements
            .iter()
            .map(|e| match e {
                TourElement::Seg(s) => ElementRecord::Seg { ax: s.a.x, ay: s.a.y, bx: s.b.x, by: s.b.y },
                TourElement::Arc(a) => ElementRecord::Arc { cx: a.center.x, cy: a.center.y, r: a.radius, start: a.start, sweep: a.sweep },
            })
            .collect();
        TourFile { instance: instance.into(), algorithm: algorithm.into(), length: t.len(), elements }
    }

    pub fn tour(&self) -> Result<Tour<f64>, InstanceError> {
        let mut out = Vec::with_capacity(self.elements.len());
        for (index, e) in self.elements.iter().enumerate() {
            out.push(match *e {
                ElementRecord::Seg { ax, ay, bx, by } => TourElement::Seg(Segment::new(Point::new(ax, ay), Point::new(bx, by))),
                ElementRecord::Arc { cx, cy, r, start, sweep } => {
                    if !(r >= 0.0) {
                        return Err(InstanceError::TourElement { index, msg: "negative radius".into() });
                    }
                    TourElement::Arc(Arc::new(Point::new(cx, cy), r, start, sweep))
                }
            });
        }
        Ok(Tour::from_elements(out))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tour serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(s).map_err(InstanceError::json)
    }
}
