//! Seeded instance generators.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tspn_core::geom::{Disk, Line, Point, Polygon, Region, Segment};

use crate::instance::{Family, Instance};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerateError {
    #[error("n must be at least 1")]
    Empty,
    #[error("could not place {n} disjoint disks in a box of side {side} after {tries} attempts")]
    Infeasible { n: usize, side: f64, tries: usize },
}

/// Generator names; several map onto the same instance family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    DisjointUnitDisks,
    UnitDisks,
    /// Mixed shapes (segments, disks, triangles, squares) of diameter 1.
    SameDiameter,
    /// Horizontal unit segments.
    ParallelSegments,
    Lines,
    /// Points, disks, segments and triangles of assorted sizes.
    Mixed,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::DisjointUnitDisks,
        Generator::UnitDisks,
        Generator::SameDiameter,
        Generator::ParallelSegments,
        Generator::Lines,
        Generator::Mixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Generator::DisjointUnitDisks => "disjoint-unit-disks",
            Generator::UnitDisks => "unit-disks",
            Generator::SameDiameter => "same-diameter",
            Generator::ParallelSegments => "parallel-segments",
            Generator::Lines => "lines",
            Generator::Mixed => "mixed",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Generator::DisjointUnitDisks => Family::DisjointUnitDisks,
            Generator::UnitDisks => Family::UnitDisks,
            Generator::SameDiameter | Generator::ParallelSegments => Family::SameDiameter,
            Generator::Lines => Family::Lines,
            Generator::Mixed => Family::Mixed,
        }
    }

    /// Default side of the placement box.
    pub fn default_box(self) -> f64 {
        match self {
            Generator::UnitDisks => 8.0,
            Generator::SameDiameter | Generator::ParallelSegments => 6.0,
            Generator::Lines => 10.0,
            _ => 20.0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL.into_iter().find(|g| g.as_str() == s).ok_or_else(|| format!("unknown generator {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    /// Side of the square `[0, side]^2` that receives the regions.
    pub side: f64,
    /// Attempts per disk before the disjoint generator gives up.
    pub max_tries: usize,
}

impl GenParams {
    pub fn for_generator(g: Generator) -> Self {
        GenParams { side: g.default_box(), max_tries: 10_000 }
    }
}

fn regular(center: Point<f64>, circumradius: f64, k: usize, rot: f64) -> Polygon<f64> {
    let v = (0..k).map(|i| center + Point::polar(rot + 2.0 * PI * i as f64 / k as f64) * circumradius).collect();
    Polygon::new(v).expect("regular polygon is simple")
}

/// Deterministic for a fixed `(generator, n, params, seed)`.
pub fn generate(g: Generator, n: usize, params: &GenParams, seed: u64) -> Result<Instance, GenerateError> {
    if n == 0 {
        return Err(GenerateError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = params.side;
    let at = |rng: &mut ChaCha8Rng| Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
    let regions: Vec<Region<f64>> = match g {
        Generator::DisjointUnitDisks => {
            let mut placed: Vec<Disk<f64>> = Vec::with_capacity(n);
            let mut tries = 0;
            while placed.len() < n {
                tries += 1;
                if tries > params.max_tries * n {
                    return Err(GenerateError::Infeasible { n, side, tries: tries - 1 });
                }
                let d = Disk::unit(Point::new(rng.gen_range(1.0..side - 1.0), rng.gen_range(1.0..side - 1.0)));
                if placed.iter().all(|o| o.center.dist(d.center) > 2.0) {
                    placed.push(d);
                }
            }
            placed.into_iter().map(Region::Disk).collect()
        }
        Generator::UnitDisks => (0..n).map(|_| Region::Disk(Disk::unit(at(&mut rng)))).collect(),
        Generator::SameDiameter => (0..n)
            .map(|_| {
                let c = at(&mut rng);
                let t = rng.gen_range(0.0..2.0 * PI);
                match rng.gen_range(0..4) {
                    0 => Region::Segment(Segment::new(c, c + Point::polar(t))),
                    1 => Region::Disk(Disk::new(c, 0.5).expect("positive radius")),
                    // equilateral triangle of side 1
                    2 => Region::Polygon(regular(c, 1.0 / 3f64.sqrt(), 3, t)),
                    // square with diagonal 1
                    _ => Region::Polygon(regular(c, 0.5, 4, t)),
                }
            })
            .collect(),
        Generator::ParallelSegments => (0..n)
            .map(|_| {
                let c = at(&mut rng);
                Region::Segment(Segment::new(c, c + Point::new(1.0, 0.0)))
            })
            .collect(),
        Generator::Lines => (0..n)
            .map(|_| {
                let t = rng.gen_range(0.0..PI);
                let offset = rng.gen_range(-side / 2.0..side / 2.0);
                Region::Line(Line::new(-t.sin(), t.cos(), -offset).expect("unit normal"))
            })
            .collect(),
        Generator::Mixed => (0..n)
            .map(|_| {
                let c = at(&mut rng);
                let t = rng.gen_range(0.0..2.0 * PI);
                let s = rng.gen_range(0.3..2.0);
                match rng.gen_range(0..4) {
                    0 => Region::Point(c),
                    1 => Region::Disk(Disk::new(c, s / 2.0).expect("positive radius")),
                    2 => Region::Segment(Segment::new(c, c + Point::polar(t) * s)),
                    _ => Region::Polygon(regular(c, s / 2.0, 3, t)),
                }
            })
            .collect(),
    };
    let name = format!("{}-n{}-s{}", g.as_str(), n, seed);
    Ok(Instance::new(name, g.family(), Some(seed), regions).expect("generated instance is valid for its family"))
}
