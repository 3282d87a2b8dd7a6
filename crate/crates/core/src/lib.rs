//! Approximation algorithms for the Euclidean traveling salesman problem
//! with neighborhoods (TSPN): disks, same-diameter regions and lines, plus
//! the guillotine structural transformation and a brute-force oracle.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`, which is what the CLI uses.

pub mod disks;
pub mod geom;
pub mod guillotine;
pub mod lines;
mod lp;
pub mod oracle;
pub mod point_tsp;
pub mod same_diameter;
pub mod scalar;

pub use scalar::Scalar;

pub type Point = geom::Point<f64>;
pub type Segment = geom::Segment<f64>;
pub type Line = geom::Line<f64>;
pub type Disk = geom::Disk<f64>;
pub type Polygon = geom::Polygon<f64>;
pub type Rectangle = geom::Rectangle<f64>;
pub type Region = geom::Region<f64>;
pub type Tour = geom::Tour<f64>;
