//! File formats, generators, rendering and the benchmark harness behind the
//! `tspn` binary.

pub mod app;
pub mod bench;
pub mod generate;
pub mod instance;
pub mod svg;

pub use bench::{Algorithm, RatioReport};
pub use generate::{generate, GenParams, Generator};
pub use instance::{Family, Instance};
