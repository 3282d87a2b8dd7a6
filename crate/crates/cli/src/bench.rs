//! Solver dispatch and the ratio-certification harness.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tspn_core::disks::{disjoint_center_tour, overlapping_disks_tour, DiskInstance};
use tspn_core::geom::{tour_visits, Tour};
use tspn_core::lines::lines_tour;
use tspn_core::oracle::{discretized_opt, lower_bound, OracleParams, MAX_REGIONS};
use tspn_core::same_diameter::{bounds, tspn_same_diameter};

use crate::generate::{generate, GenParams, Generator};
use crate::instance::{Family, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Tour through the centers of disjoint unit disks.
    DisjointCenter,
    /// Independent-set tour with boundary detours for unit disks.
    OverlappingDisks,
    SameDiameter,
    Lines,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::DisjointCenter, Algorithm::OverlappingDisks, Algorithm::SameDiameter, Algorithm::Lines, Algorithm::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::DisjointCenter => "disjoint-center",
            Algorithm::OverlappingDisks => "overlapping-disks",
            Algorithm::SameDiameter => "same-diameter",
            Algorithm::Lines => "lines",
            Algorithm::Oracle => "oracle",
        }
    }

    pub fn applies_to(self, f: Family) -> bool {
        match self {
            Algorithm::DisjointCenter => f == Family::DisjointUnitDisks,
            Algorithm::OverlappingDisks => matches!(f, Family::DisjointUnitDisks | Family::UnitDisks),
            Algorithm::SameDiameter => matches!(f, Family::SameDiameter | Family::DisjointUnitDisks | Family::UnitDisks),
            Algorithm::Lines => f == Family::Lines,
            Algorithm::Oracle => true,
        }
    }

    /// The natural solver for a family.
    pub fn default_for(f: Family) -> Algorithm {
        match f {
            Family::DisjointUnitDisks => Algorithm::DisjointCenter,
            Family::UnitDisks => Algorithm::OverlappingDisks,
            Family::SameDiameter => Algorithm::SameDiameter,
            Family::Lines => Algorithm::Lines,
            Family::Mixed => Algorithm::Oracle,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("algorithm {0} does not apply to family {1}")]
    Inapplicable(Algorithm, Family),
    #[error("{0}")]
    Solver(String),
    #[error("tour from {algorithm} misses region {index} of {instance}")]
    Misses { algorithm: Algorithm, instance: String, index: usize },
    #[error(transparent)]
    Generate(#[from] crate::generate::GenerateError),
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub tour: Tour<f64>,
    /// Worst-case ratio guaranteed for this instance, given `opt`.
    bound: BoundKind,
}

#[derive(Debug, Clone, Copy)]
enum BoundKind {
    Ratio(f64),
    /// `(1 + 8/pi) OPT + 8`.
    DisjointDisks,
    /// `(pi + 8) OPT + 8 pi + 2 pi`.
    UnitDisks,
}

impl Solution {
    /// The applicable ceiling on `|T| / opt`.
    pub fn paper_bound(&self, opt: f64) -> f64 {
        match self.bound {
            BoundKind::Ratio(r) => r,
            BoundKind::DisjointDisks => 1.0 + 8.0 / PI + 8.0 / opt,
            BoundKind::UnitDisks => PI + 8.0 + 10.0 * PI / opt,
        }
    }
}

fn err(e: impl fmt::Display) -> SolveError {
    SolveError::Solver(e.to_string())
}

/// Runs `algo` on `inst` and checks that the tour visits every region.
pub fn solve(inst: &Instance, algo: Algorithm, seed: u64) -> Result<Solution, SolveError> {
    if !algo.applies_to(inst.family) {
        return Err(SolveError::Inapplicable(algo, inst.family));
    }
    let sol = match algo {
        Algorithm::DisjointCenter => {
            let di = DiskInstance::new(inst.disks()).map_err(err)?;
            Solution { tour: disjoint_center_tour(&di, seed).map_err(err)?, bound: BoundKind::DisjointDisks }
        }
        Algorithm::OverlappingDisks => {
            let di = DiskInstance::new(inst.disks()).map_err(err)?;
            Solution { tour: overlapping_disks_tour(&di, seed).map_err(err)?.final_tour, bound: BoundKind::UnitDisks }
        }
        Algorithm::SameDiameter => {
            let r = tspn_same_diameter(&inst.regions, seed).map_err(err)?;
            let bound = if r.parallel_segments { bounds::parallel_segments() } else { bounds::OVERALL };
            Solution { tour: r.tour, bound: BoundKind::Ratio(bound) }
        }
        Algorithm::Lines => Solution { tour: lines_tour(&inst.lines(), seed).map_err(err)?, bound: BoundKind::Ratio(PI / 2.0) },
        Algorithm::Oracle => {
            let r = discretized_opt(&inst.regions, &OracleParams::default()).map_err(err)?;
            Solution { tour: r.tour, bound: BoundKind::Ratio(1.0) }
        }
    };
    let tol = 1e-7 * (1.0 + sol.tour.len());
    if let Some(index) = inst.regions.iter().position(|r| !tour_visits(&sol.tour, r, tol)) {
        return Err(SolveError::Misses { algorithm: algo, instance: inst.name.clone(), index });
    }
    Ok(sol)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub instance: String,
    pub algorithm: String,
    pub tour_length: f64,
    pub lower_bound: f64,
    pub oracle_opt: Option<f64>,
    /// Against the oracle when present, else against the lower bound.
    pub ratio: f64,
    pub paper_bound: f64,
    /// `ratio <= paper_bound + 1e-6`. Only binding when `oracle_opt` is present.
    pub within_bound: bool,
}

impl RatioReport {
    /// Whether the row violates an asserted bound.
    pub fn violation(&self) -> bool {
        self.oracle_opt.is_some() && !self.within_bound
    }
}

fn ratio(len: f64, base: f64) -> f64 {
    if base > 1e-12 {
        len / base
    } else if len <= 1e-9 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Solves `inst`, computes the lower bound and (for small instances) the
/// oracle optimum, and reports the ratio.
pub fn report(inst: &Instance, algo: Algorithm, seed: u64) -> Result<RatioReport, SolveError> {
    let sol = solve(inst, algo, seed)?;
    let len = sol.tour.len();
    let lb = lower_bound(&inst.regions);
    let opt = if inst.regions.len() <= MAX_REGIONS {
        Some(if algo == Algorithm::Oracle { len } else { discretized_opt(&inst.regions, &OracleParams::default()).map_err(err)?.length })
    } else {
        None
    };
    let base = opt.unwrap_or(lb);
    let r = ratio(len, base);
    let paper_bound = sol.paper_bound(base);
    Ok(RatioReport {
        instance: inst.name.clone(),
        algorithm: algo.as_str().into(),
        tour_length: len,
        lower_bound: lb,
        oracle_opt: opt,
        ratio: r,
        paper_bound,
        within_bound: r <= paper_bound + 1e-6,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchSpec {
    pub generator: Generator,
    /// Instance sizes are drawn uniformly from `n_min..=n_max`.
    pub n_min: usize,
    pub n_max: usize,
    pub params: GenParams,
    pub count: usize,
    pub seed: u64,
}

impl BenchSpec {
    pub fn new(generator: Generator, n: usize, count: usize, seed: u64) -> Self {
        BenchSpec { generator, n_min: n, n_max: n, params: GenParams::for_generator(generator), count, seed }
    }

    /// Size and seed of instance `i`; mixes the base seed with the index.
    pub fn instance_seed(&self, i: usize) -> (usize, u64) {
        let s = self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64);
        let span = (self.n_max - self.n_min + 1) as u64;
        (self.n_min + (s % span) as usize, s)
    }

    pub fn instances(&self) -> Result<Vec<Instance>, SolveError> {
        (0..self.count)
            .map(|i| {
                let (n, s) = self.instance_seed(i);
                Ok(generate(self.generator, n, &self.params, s)?)
            })
            .collect()
    }
}

/// Runs the harness; rows come back in instance order.
pub fn bench(spec: &BenchSpec, algo: Algorithm) -> Result<Vec<RatioReport>, SolveError> {
    if !algo.applies_to(spec.generator.family()) {
        return Err(SolveError::Inapplicable(algo, spec.generator.family()));
    }
    let insts = spec.instances()?;
    insts.par_iter().map(|inst| report(inst, algo, inst.seed.unwrap_or(spec.seed))).collect()
}

pub fn write_csv<W: Write>(rows: &[RatioReport], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    // header even with no rows
    if rows.is_empty() {
        w.write_record(["instance", "algorithm", "tour_length", "lower_bound", "oracle_opt", "ratio", "paper_bound", "within_bound"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
