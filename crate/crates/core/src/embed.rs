//! The embedding `Φ(x) = ⊕_n (φⁿ_x − φⁿ_{x₀})` of a finite metric space into
//! the ℓ²-sum of ℓ^{p_n} blocks, truncated to `depth` blocks, together with
//! exhaustive certification of its distortion bounds.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::exponent::ExponentSchedule;
use crate::metric::FiniteMetricSpace;
use crate::mixed_norm::{block_norm, MixedNormVector};
use crate::sparse::SparseFunction;
use crate::tent::tent;

/// Slack on floating-point inequalities in the certificates.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// `(Σ_{n=1}^{depth} 1/n²)^{1/2}`, the truncated upper-distortion constant.
pub fn upper_constant(depth: usize) -> f64 {
    (1..=depth).map(|n| 1.0 / (n * n) as f64).sum::<f64>().sqrt()
}

/// `π/√6 = (Σ_{n>=1} 1/n²)^{1/2}`.
pub fn full_upper_constant() -> f64 {
    PI / 6f64.sqrt()
}

/// Default truncation depth: the diameter, rounded up, at least 1.
pub fn default_depth(space: &FiniteMetricSpace) -> usize {
    (space.diameter().ceil() as usize).max(1)
}

fn check_depth(schedule: &ExponentSchedule, depth: usize) {
    assert!(
        schedule.len() >= depth,
        "schedule has {} exponents, depth {depth} requested",
        schedule.len()
    );
}

/// `Φ(x)` with base point `basepoint`: block `n` is `φⁿ_x − φⁿ_{basepoint}`.
pub fn embed_point(
    space: &FiniteMetricSpace,
    schedule: &Arc<ExponentSchedule>,
    basepoint: usize,
    depth: usize,
    x: usize,
) -> MixedNormVector {
    check_depth(schedule, depth);
    let blocks = (1..=depth)
        .map(|n| tent(space, x, n).sub(&tent(space, basepoint, n)))
        .collect();
    MixedNormVector::new(blocks, Arc::clone(schedule))
}

/// `‖Φ(x) − Φ(y)‖ = (Σ_n ‖φⁿ_x − φⁿ_y‖²_{p_n})^{1/2}`, without the base point.
pub fn pair_distance(
    space: &FiniteMetricSpace,
    schedule: &ExponentSchedule,
    depth: usize,
    x: usize,
    y: usize,
) -> f64 {
    check_depth(schedule, depth);
    (1..=depth)
        .map(|n| {
            let b = block_norm(&tent(space, x, n).sub(&tent(space, y, n)), schedule.p(n));
            b * b
        })
        .sum::<f64>()
        .sqrt()
}

/// Every tent `φⁿ_x` for `n <= depth`, built once and shared by pair scans.
#[derive(Debug, Clone)]
pub struct TentTable<'a> {
    space: &'a FiniteMetricSpace,
    schedule: &'a ExponentSchedule,
    depth: usize,
    tents: Vec<Vec<SparseFunction>>,
}

impl<'a> TentTable<'a> {
    pub fn new(space: &'a FiniteMetricSpace, schedule: &'a ExponentSchedule, depth: usize) -> Self {
        check_depth(schedule, depth);
        let tents = (1..=depth)
            .into_par_iter()
            .map(|n| (0..space.len()).map(|x| tent(space, x, n)).collect())
            .collect();
        Self {
            space,
            schedule,
            depth,
            tents,
        }
    }

    pub fn tent(&self, x: usize, n: usize) -> &SparseFunction {
        &self.tents[n - 1][x]
    }

    /// `(‖Δ_n‖_{p_n}, ‖Δ_n‖_∞)` for `Δ_n = φⁿ_x − φⁿ_y`, `n = 1..=depth`.
    pub fn block_norms(&self, x: usize, y: usize) -> Vec<(f64, f64)> {
        (1..=self.depth)
            .map(|n| {
                let diff = self.tent(x, n).sub(self.tent(y, n));
                (block_norm(&diff, self.schedule.p(n)), diff.sup_norm())
            })
            .collect()
    }

    pub fn pair_distance(&self, x: usize, y: usize) -> f64 {
        self.block_norms(x, y)
            .iter()
            .map(|(b, _)| b * b)
            .sum::<f64>()
            .sqrt()
    }

    /// Unordered pairs `x < y`, in lexicographic order.
    fn pairs(&self) -> impl IndexedParallelIterator<Item = (usize, usize)> {
        let v = self.space.len();
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
            .collect();
        pairs.into_par_iter().with_min_len(64)
    }
}

/// One row of the distortion profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortionSample {
    pub r: f64,
    /// `inf { ‖Φ(x) − Φ(y)‖ : d(x, y) >= r }`.
    pub rho_minus: f64,
    /// `max { ‖Φ(x) − Φ(y)‖ : d(x, y) = r }`.
    pub rho_plus: f64,
    /// Number of unordered pairs at distance exactly `r`.
    pub pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionProfile {
    pub depth: usize,
    pub upper_constant: f64,
    pub full_upper_constant: f64,
    pub samples: Vec<DistortionSample>,
}

impl DistortionProfile {
    /// `ρ₋` at the smallest sampled distance strictly above `threshold`.
    pub fn rho_minus_above(&self, threshold: f64) -> Option<f64> {
        self.samples
            .iter()
            .find(|s| s.r > threshold)
            .map(|s| s.rho_minus)
    }

    /// CSV with header `r,rho_minus,rho_plus,pairs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,rho_minus,rho_plus,pairs\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{}\n",
                crate::report::fmt_f64(s.r),
                crate::report::fmt_f64(s.rho_minus),
                crate::report::fmt_f64(s.rho_plus),
                s.pairs
            ));
        }
        out
    }
}

/// Exhaustive over unordered pairs. `ρ₋` is the running infimum taken from
/// the largest distance downward, `ρ₊` the per-distance maximum.
pub fn distortion_profile(
    space: &FiniteMetricSpace,
    schedule: &ExponentSchedule,
    depth: usize,
) -> DistortionProfile {
    let table = TentTable::new(space, schedule, depth);
    profile_from_table(&table)
}

pub fn profile_from_table(table: &TentTable<'_>) -> DistortionProfile {
    profile_from_scan(table, &table.scan())
}

/// Per-pair results of one exhaustive pass.
struct PairRecord {
    bucket: usize,
    distance: f64,
    /// `max_n (‖Δ_n‖_{p_n} − ‖Δ_n‖_∞ − 1/n)`.
    schedule_excess: f64,
}

impl TentTable<'_> {
    fn scan(&self) -> Vec<PairRecord> {
        let radii = self.space.distinct_distances();
        self.pairs()
            .map(|(x, y)| {
                let d = self.space.distance(x, y);
                let norms = self.block_norms(x, y);
                PairRecord {
                    bucket: radii.partition_point(|&r| r < d),
                    distance: norms.iter().map(|(b, _)| b * b).sum::<f64>().sqrt(),
                    schedule_excess: norms
                        .iter()
                        .enumerate()
                        .map(|(i, (bp, binf))| bp - binf - 1.0 / (i + 1) as f64)
                        .fold(f64::NEG_INFINITY, f64::max),
                }
            })
            .collect()
    }

    /// Embedded distance using only the first `depth` blocks.
    pub fn truncated_distance(&self, depth: usize) -> impl Fn(usize, usize) -> f64 + '_ {
        let depth = depth.min(self.depth);
        move |x, y| {
            (1..=depth)
                .map(|n| {
                    let b = block_norm(&self.tent(x, n).sub(self.tent(y, n)), self.schedule.p(n));
                    b * b
                })
                .sum::<f64>()
                .sqrt()
        }
    }
}

fn profile_from_scan(table: &TentTable<'_>, records: &[PairRecord]) -> DistortionProfile {
    let radii = table.space.distinct_distances();
    let mut lo = vec![f64::INFINITY; radii.len()];
    let mut hi = vec![0.0f64; radii.len()];
    let mut count = vec![0u64; radii.len()];
    for rec in records {
        let b = rec.bucket;
        lo[b] = lo[b].min(rec.distance);
        hi[b] = hi[b].max(rec.distance);
        count[b] += 1;
    }
    let mut running = f64::INFINITY;
    let mut samples: Vec<DistortionSample> = radii
        .iter()
        .enumerate()
        .rev()
        .map(|(i, &r)| {
            running = running.min(lo[i]);
            DistortionSample {
                r,
                rho_minus: running,
                rho_plus: hi[i],
                pairs: count[i],
            }
        })
        .collect();
    samples.reverse();
    DistortionProfile {
        depth: table.depth,
        upper_constant: upper_constant(table.depth),
        full_upper_constant: full_upper_constant(),
        samples,
    }
}

/// Profile and certificate from a single exhaustive pass over pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub profile: DistortionProfile,
    pub certificate: Certificate,
}

pub fn analyze(space: &FiniteMetricSpace, schedule: &ExponentSchedule, depth: usize) -> Analysis {
    let table = TentTable::new(space, schedule, depth);
    let records = table.scan();
    let profile = profile_from_scan(&table, &records);
    let max_excess = records
        .iter()
        .map(|r| r.schedule_excess)
        .fold(f64::NEG_INFINITY, f64::max);
    let certificate = certificate_from(&profile, depth, max_excess);
    Analysis {
        profile,
        certificate,
    }
}

/// One step of the certified lower bound: pairs with `d > threshold` sit at
/// embedded distance `>= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerStep {
    #[serde(rename = "R")]
    pub bound: usize,
    pub threshold: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// `‖Δ_n‖_{p_n} <= ‖Δ_n‖_∞ + 1/n` for every pair and block.
    pub schedule: bool,
    /// `ρ₊(r) <= (Σ_{n<=depth} 1/n²)^{1/2} (r + 1)`.
    pub upper: bool,
    /// Same, with the constant `π/√6`.
    pub upper_full: bool,
    pub lower: Vec<LowerStep>,
    pub injective: bool,
    /// Largest `‖Δ_n‖_{p_n} − ‖Δ_n‖_∞ − 1/n` observed.
    pub max_schedule_excess: f64,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.schedule && self.upper && self.upper_full && self.injective && self.lower.iter().all(|s| s.ok)
    }
}

/// Checks the per-block schedule inequality on every pair, then reads the
/// upper, lower and injectivity bounds off `profile`.
pub fn certify(
    profile: &DistortionProfile,
    space: &FiniteMetricSpace,
    schedule: &ExponentSchedule,
    depth: usize,
) -> Certificate {
    let table = TentTable::new(space, schedule, depth);
    certify_with_table(profile, &table)
}

pub fn certify_with_table(profile: &DistortionProfile, table: &TentTable<'_>) -> Certificate {
    let max_excess = table
        .scan()
        .iter()
        .map(|r| r.schedule_excess)
        .fold(f64::NEG_INFINITY, f64::max);
    certificate_from(profile, table.depth, max_excess)
}

fn certificate_from(profile: &DistortionProfile, depth: usize, max_schedule_excess: f64) -> Certificate {
    certificate_with_tolerance(profile, depth, max_schedule_excess, CERTIFICATE_TOLERANCE)
}

/// Re-reads the bounds off `profile` with slack `tolerance` instead of
/// [`CERTIFICATE_TOLERANCE`].
pub fn certificate_with_tolerance(
    profile: &DistortionProfile,
    depth: usize,
    max_schedule_excess: f64,
    tolerance: f64,
) -> Certificate {
    let c_trunc = upper_constant(depth);
    let c_full = full_upper_constant();
    let upper = profile
        .samples
        .iter()
        .all(|s| s.rho_plus <= c_trunc * (s.r + 1.0) + tolerance);
    let upper_full = profile
        .samples
        .iter()
        .all(|s| s.rho_plus <= c_full * (s.r + 1.0) + tolerance);
    let injective = profile.samples.first().map_or(true, |s| s.rho_minus > 0.0);
    Certificate {
        // no pairs (one point) means nothing to violate
        schedule: max_schedule_excess <= tolerance,
        upper,
        upper_full,
        lower: lower_steps(profile, depth),
        injective,
        max_schedule_excess,
    }
}

/// Steps `R = 1..=⌊√depth⌋` with threshold `2R²`; vacuous when no pair is
/// that far apart.
pub fn lower_steps(profile: &DistortionProfile, depth: usize) -> Vec<LowerStep> {
    (1..)
        .take_while(|r| r * r <= depth)
        .map(|r: usize| {
            let threshold = (2 * r * r) as f64;
            let ok = profile
                .rho_minus_above(threshold)
                .map_or(true, |m| m >= r as f64);
            LowerStep {
                bound: r,
                threshold,
                ok,
            }
        })
        .collect()
}
