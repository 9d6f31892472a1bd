//! Random regular graphs, their adjacency spectrum, and a Poincaré-ratio
//! diagnostic for embeddings of expanders.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::{analyze, default_depth, LowerStep, TentTable};
use crate::error::{Error, Result};
use crate::exponent::{schedule_for_space, Exponent};
use crate::metric::{FiniteMetricSpace, Graph};
use crate::mixed_norm::MixedNormVector;

/// Pairing-model attempts before giving up.
pub const MAX_PAIRING_ATTEMPTS: usize = 100_000;
/// Power-iteration cap per eigenvalue.
pub const MAX_POWER_ITERATIONS: usize = 500_000;

/// A simple `degree`-regular graph drawn from the pairing model.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularGraphSample {
    pub vertex_count: usize,
    pub degree: usize,
    pub seed: u64,
    pub graph: Graph,
    /// Filled in by [`RegularGraphSample::analyze`].
    pub lambda2: Option<f64>,
}

impl RegularGraphSample {
    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn analyze(&mut self, tol: f64) -> Result<Spectrum> {
        let spectrum = spectrum(&self.graph, tol)?;
        self.lambda2 = Some(spectrum.lambda2);
        Ok(spectrum)
    }
}

/// Pairs `n·d` half-edges uniformly at random (ChaCha8 seeded by `seed`) and
/// rejects the pairing unless it is simple.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<RegularGraphSample> {
    if (n * d) % 2 == 1 || d >= n.max(1) {
        return Err(Error::InfeasibleDegree {
            vertex_count: n,
            degree: d,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let mut seen = HashSet::with_capacity(n * d / 2);
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        seen.clear();
        let simple = stubs.chunks_exact(2).all(|pair| {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            u != v && seen.insert((u, v))
        });
        if simple {
            let edges: Vec<(usize, usize)> = seen.iter().copied().collect();
            return Ok(RegularGraphSample {
                vertex_count: n,
                degree: d,
                seed,
                graph: Graph::new(n, &edges)?,
                lambda2: None,
            });
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_PAIRING_ATTEMPTS,
    })
}

/// Adjacency eigenvalues of interest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambda1: f64,
    /// Second-largest eigenvalue by value.
    pub lambda2: f64,
    pub lambda_min: f64,
    /// `max(|λ₂|, |λ_min|)`.
    pub nontrivial_magnitude: f64,
    pub iterations: usize,
}

/// `(λ₁, λ₂)` by power iteration; see [`spectrum`].
pub fn top_two_eigenvalues(graph: &Graph, tol: f64) -> Result<(f64, f64)> {
    let s = spectrum(graph, tol)?;
    Ok((s.lambda1, s.lambda2))
}

/// Power iteration on the shifted adjacency `A + cI` (`c` = max degree, so the
/// shifted spectrum is non-negative). `λ₂` comes from iterating orthogonally
/// to the top eigenvector, `λ_min` from `cI − A`. Each run stops once the
/// eigen-residual `‖Bv − μv‖` drops below `tol`.
pub fn spectrum(graph: &Graph, tol: f64) -> Result<Spectrum> {
    let n = graph.vertex_count();
    let c = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0) as f64;
    if n == 0 {
        return Ok(Spectrum {
            lambda1: 0.0,
            lambda2: 0.0,
            lambda_min: 0.0,
            nontrivial_magnitude: 0.0,
            iterations: 0,
        });
    }
    let shifted = |sign: f64| {
        move |x: &[f64], y: &mut [f64]| {
            for v in 0..n {
                let s: f64 = graph.neighbors(v).iter().map(|&w| x[w]).sum();
                y[v] = c * x[v] + sign * s;
            }
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut start = || -> Vec<f64> { (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() };

    let top_start: Vec<f64> = start().iter().map(|x| 2.0 + x).collect();
    let (mu1, v1, it1) = power_iterate(shifted(1.0), top_start, &[], tol)?;
    let (lambda2, it2) = if n > 1 {
        let (mu2, _, it) = power_iterate(shifted(1.0), start(), &[v1], tol)?;
        (mu2 - c, it)
    } else {
        (f64::NAN, 0)
    };
    let (mu_min, _, it3) = power_iterate(shifted(-1.0), start(), &[], tol)?;
    let lambda1 = mu1 - c;
    let lambda_min = c - mu_min;
    let nontrivial_magnitude = if n > 1 { lambda2.abs().max(lambda_min.abs()) } else { 0.0 };
    Ok(Spectrum {
        lambda1,
        lambda2: if n > 1 { lambda2 } else { lambda1 },
        lambda_min,
        nontrivial_magnitude,
        iterations: it1 + it2 + it3,
    })
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
    }
}

fn power_iterate<F: Fn(&[f64], &mut [f64])>(
    apply: F,
    mut v: Vec<f64>,
    deflate: &[Vec<f64>],
    tol: f64,
) -> Result<(f64, Vec<f64>, usize)> {
    let mut w = vec![0.0; v.len()];
    project_out(&mut v, deflate);
    normalize(&mut v);
    for it in 1..=MAX_POWER_ITERATIONS {
        apply(&v, &mut w);
        project_out(&mut w, deflate);
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if normalize(&mut w) == 0.0 {
            // v lies in the kernel: eigenvalue 0
            return Ok((0.0, v, it));
        }
        std::mem::swap(&mut v, &mut w);
        if residual <= tol {
            return Ok((mu, v, it));
        }
    }
    Err(Error::NotConverged {
        iterations: MAX_POWER_ITERATIONS,
    })
}

/// Mean squared displacement over all unordered pairs divided by the mean
/// over edges. `dist(x, y)` is the embedded distance.
pub fn poincare_ratio<F: Fn(usize, usize) -> f64>(graph: &Graph, dist: F) -> Result<f64> {
    let n = graph.vertex_count();
    let edges = graph.edges();
    if edges.is_empty() {
        return Err(Error::DegenerateEmbedding);
    }
    let edge_mean = edges.iter().map(|&(u, v)| dist(u, v).powi(2)).sum::<f64>() / edges.len() as f64;
    if edge_mean == 0.0 {
        return Err(Error::DegenerateEmbedding);
    }
    let mut total = 0.0;
    for x in 0..n {
        for y in x + 1..n {
            total += dist(x, y).powi(2);
        }
    }
    let pair_mean = total / (n * (n - 1) / 2) as f64;
    Ok(pair_mean / edge_mean)
}

/// [`poincare_ratio`] for a point map into the mixed-norm space.
pub fn poincare_ratio_vectors(graph: &Graph, points: &[MixedNormVector]) -> Result<f64> {
    poincare_ratio(graph, |x, y| {
        points[x]
            .subtract(&points[y])
            .expect("points share a schedule")
            .norm()
    })
}

/// One size in the expander-family experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub degree: usize,
    pub seed: u64,
    pub connected: bool,
    pub spectrum: Spectrum,
    pub diameter: f64,
    pub depth: usize,
    pub exponents: Vec<Exponent>,
    pub certified: bool,
    pub lower: Vec<LowerStep>,
    /// Poincaré ratio of the first block alone (`δ_x − δ_{x₀}`).
    pub poincare_first_block: f64,
    /// Poincaré ratio of the full truncated embedding.
    pub poincare_full: f64,
}

/// Runs the embedding pipeline on one seeded sample per size.
pub fn family_experiment(sizes: &[usize], degree: usize, seed: u64, tol: f64) -> Result<Vec<FamilyRow>> {
    sizes
        .iter()
        .map(|&n| {
            let mut sample = random_regular(n, degree, seed)?;
            let spectrum = sample.analyze(tol)?;
            let connected = sample.graph.is_connected();
            let space = FiniteMetricSpace::from_graph(&sample.graph)?;
            let depth = default_depth(&space);
            let schedule = Arc::new(schedule_for_space(&space, depth));
            let analysis = analyze(&space, &schedule, depth);
            let table = TentTable::new(&space, &schedule, depth);
            let first = table.truncated_distance(1);
            let poincare_first_block = poincare_ratio(&sample.graph, &first)?;
            let poincare_full = poincare_ratio(&sample.graph, |x, y| table.pair_distance(x, y))?;
            Ok(FamilyRow {
                n,
                degree,
                seed,
                connected,
                spectrum,
                diameter: space.diameter(),
                depth,
                exponents: schedule.exponents().to_vec(),
                certified: analysis.certificate.passed(),
                lower: analysis.certificate.lower.clone(),
                poincare_first_block,
                poincare_full,
            })
        })
        .collect()
}
