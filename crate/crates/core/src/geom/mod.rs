//! Planar primitives, regions, tours and the predicates the solvers share.

mod hull;
mod primitives;
mod region;
mod tour;

pub use hull::{convex_hull, Hull};
pub use primitives::{signed_area, Disk, Interval, Line, Point, Polygon, Rectangle, Segment};
pub use region::{region_diameter, tour_visits, x_projection, Region};
pub use tour::{tour_length, wrap_angle, Arc, Tour, TourElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("negative radius")]
    NegativeRadius,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is not simple")]
    SelfIntersecting,
    #[error("diameter undefined for an unbounded region")]
    Unbounded,
}

#[cfg(test)]
mod tests;
