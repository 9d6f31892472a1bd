use std::fs;
use std::path::Path;
use std::sync::Arc;

use coarse_embed::embed::{analyze, certificate_with_tolerance, default_depth, embed_point, Certificate, DistortionSample};
use coarse_embed::expander::{family_experiment, random_regular, spectrum, FamilyRow, Spectrum};
use coarse_embed::exponent::{schedule_for_space, Exponent};
use coarse_embed::group::{BuiltinGroup, Cocycle, GroupModel, ProperStep, SphereMin};
use coarse_embed::report::to_json_pretty;
use coarse_embed::{Error, FiniteMetricSpace, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{EmbedArgs, ExpanderArgs, Format, GenArgs, GraphKind, GroupArgs, SpaceArgs};
use crate::error::{CliError, CliResult};

/// What a command hands back to `main`: text for stdout (possibly empty when
/// it went to a file) and whether every certificate passed.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Loads the space, plus the graph when the input was an edge list.
pub fn load_space(args: &SpaceArgs) -> CliResult<(FiniteMetricSpace, Option<Graph>)> {
    match (&args.input, &args.matrix) {
        (Some(p), _) => {
            let g = Graph::parse_edge_list(&read_text(p)?)?;
            Ok((FiniteMetricSpace::from_graph(&g)?, Some(g)))
        }
        (None, Some(p)) => Ok((FiniteMetricSpace::parse_distance_csv(&read_text(p)?)?, None)),
        (None, None) => Err(CliError::Config("one of --input or --matrix is required".into())),
    }
}

fn require(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::Config(format!("--{flag} is required for this graph kind")))
}

pub fn gen(args: &GenArgs) -> CliResult<Outcome> {
    let g = match args.kind {
        GraphKind::Path => Graph::path(require(args.n, "n")?),
        GraphKind::Cycle => Graph::cycle(require(args.n, "n")?),
        GraphKind::Complete => Graph::complete(require(args.n, "n")?),
        GraphKind::Grid => Graph::grid(require(args.rows, "rows")?, require(args.cols, "cols")?),
        GraphKind::Regular => random_regular(require(args.n, "n")?, args.d, args.seed)?.graph,
    };
    emit(g.to_edge_list(), args.output.as_deref(), true)
}

fn emit(text: String, output: Option<&Path>, passed: bool) -> CliResult<Outcome> {
    match output {
        Some(p) => {
            write_text(p, &text)?;
            Ok(Outcome {
                stdout: String::new(),
                passed,
            })
        }
        None => Ok(Outcome { stdout: text, passed }),
    }
}

#[derive(Debug, Serialize)]
pub struct EmbedReport {
    pub depth: usize,
    pub upper_constant: f64,
    pub full_upper_constant: f64,
    pub points: usize,
    pub basepoint: usize,
    pub exponents: Vec<Exponent>,
    /// `‖Φ(x)‖` for every point, relative to the base point.
    pub image_norms: Vec<f64>,
    pub samples: Vec<DistortionSample>,
    pub certificates: Certificate,
}

pub fn embed_report(space: &FiniteMetricSpace, depth: Option<usize>, basepoint: usize, tolerance: f64) -> CliResult<EmbedReport> {
    if basepoint >= space.len() {
        return Err(Error::InvalidVertexId {
            id: basepoint,
            vertex_count: space.len(),
        }
        .into());
    }
    let depth = depth.unwrap_or_else(|| default_depth(space));
    if depth == 0 {
        return Err(CliError::Config("--depth must be at least 1".into()));
    }
    let schedule = Arc::new(schedule_for_space(space, depth));
    let analysis = analyze(space, &schedule, depth);
    let certificates = certificate_with_tolerance(
        &analysis.profile,
        depth,
        analysis.certificate.max_schedule_excess,
        tolerance,
    );
    let image_norms = (0..space.len())
        .map(|x| embed_point(space, &schedule, basepoint, depth, x).norm())
        .collect();
    Ok(EmbedReport {
        depth,
        upper_constant: analysis.profile.upper_constant,
        full_upper_constant: analysis.profile.full_upper_constant,
        points: space.len(),
        basepoint,
        exponents: schedule.exponents().to_vec(),
        image_norms,
        samples: analysis.profile.samples.clone(),
        certificates,
    })
}

pub fn embed(args: &EmbedArgs) -> CliResult<Outcome> {
    let (space, _) = load_space(&args.space)?;
    let report = embed_report(&space, args.depth, args.basepoint, args.tolerance)?;
    let passed = report.certificates.passed();
    let text = match args.format {
        Format::Json => to_json_pretty(&report) + "\n",
        Format::Csv => {
            let profile = coarse_embed::embed::DistortionProfile {
                depth: report.depth,
                upper_constant: report.upper_constant,
                full_upper_constant: report.full_upper_constant,
                samples: report.samples,
            };
            profile.to_csv()
        }
    };
    emit(text, args.output.as_deref(), passed)
}

#[derive(Debug, Serialize)]
pub struct GroupCertificates {
    /// `Φ(st) = λ_s Φ(t) + Φ(s)` in integer arithmetic on every sample.
    pub cocycle_exact: bool,
    pub cocycle: bool,
    pub equivariance: bool,
    pub properness: Vec<ProperStep>,
}

impl GroupCertificates {
    pub fn passed(&self) -> bool {
        self.cocycle_exact && self.cocycle && self.equivariance && self.properness.iter().all(|s| s.ok)
    }
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub depth: usize,
    pub scales: Vec<u32>,
    pub exponents: Vec<Exponent>,
    pub samples: usize,
    pub seed: u64,
    pub lmax: u32,
    pub cocycle_residual_max: f64,
    /// `max |‖Φ(s) − Φ(t)‖ − ‖Φ(t⁻¹s)‖|`.
    pub equivariance_max: f64,
    pub properness: Vec<SphereMin>,
    pub certificates: GroupCertificates,
}

pub struct GroupRun {
    pub depth: usize,
    pub samples: usize,
    pub seed: u64,
    pub lmax: Option<u32>,
    pub cap: usize,
    pub tolerance: f64,
}

pub fn group_report(group: &BuiltinGroup, run: &GroupRun) -> CliResult<GroupReport> {
    if run.depth == 0 {
        return Err(CliError::Config("--depth must be at least 1".into()));
    }
    let co = Cocycle::new(group, run.depth, run.cap)?;
    let lmax = run.lmax.unwrap_or(2 * (run.depth * run.depth) as u32 + 1);
    let elements = co.ball().elements();
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let (mut residual, mut equi, mut exact) = (0.0f64, 0.0f64, true);
    for _ in 0..run.samples {
        let s = &elements[rng.gen_range(0..elements.len())].0;
        let t = &elements[rng.gen_range(0..elements.len())].0;
        residual = residual.max(co.cocycle_residual(s, t));
        exact &= co.cocycle_exact(s, t);
        let lhs = co.phi(s).subtract(&co.phi(t))?.norm();
        let rhs = co.phi(&group.multiply(&group.inverse(t), s)).norm();
        equi = equi.max((lhs - rhs).abs());
    }
    let properness = co.properness(lmax, run.cap)?;
    Ok(GroupReport {
        group: group.name(),
        depth: run.depth,
        scales: co.scales().to_vec(),
        exponents: co.schedule().exponents().to_vec(),
        samples: run.samples,
        seed: run.seed,
        lmax,
        cocycle_residual_max: residual,
        equivariance_max: equi,
        certificates: GroupCertificates {
            cocycle_exact: exact,
            cocycle: residual <= run.tolerance,
            equivariance: equi <= run.tolerance,
            properness: properness.certificates,
        },
        properness: properness.curve,
    })
}

pub fn parse_group(spec: &str) -> CliResult<BuiltinGroup> {
    spec.parse().map_err(CliError::Config)
}

pub fn group(args: &GroupArgs) -> CliResult<Outcome> {
    let g = parse_group(&args.group)?;
    let report = group_report(
        &g,
        &GroupRun {
            depth: args.depth,
            samples: args.samples,
            seed: args.seed,
            lmax: args.lmax,
            cap: args.cap,
            tolerance: args.tolerance,
        },
    )?;
    Ok(Outcome {
        passed: report.certificates.passed(),
        stdout: to_json_pretty(&report) + "\n",
    })
}

#[derive(Debug, Serialize)]
pub struct ExpanderReport {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub edge_count: usize,
    pub connected: bool,
    pub spectrum: Spectrum,
    /// Embedding pipeline on the sample; absent when it is disconnected.
    pub pipeline: Option<FamilyRow>,
    pub family: Vec<FamilyRow>,
    pub passed: bool,
}

pub fn expander(args: &ExpanderArgs) -> CliResult<Outcome> {
    let sample = random_regular(args.n, args.d, args.seed)?;
    let connected = sample.graph.is_connected();
    let spec = spectrum(&sample.graph, args.tol)?;
    let pipeline = if connected {
        family_experiment(&[args.n], args.d, args.seed, args.tol)?.pop()
    } else {
        None
    };
    let family = family_experiment(&args.family_sizes, args.d, args.seed, args.tol)?;
    let row_ok = |r: &FamilyRow| r.connected && r.certified;
    let passed = connected
        && spec.lambda2 < args.d as f64
        && pipeline.as_ref().is_some_and(row_ok)
        && family.iter().all(row_ok);
    let report = ExpanderReport {
        n: args.n,
        d: args.d,
        seed: args.seed,
        edge_count: sample.edges().len(),
        connected,
        spectrum: spec,
        pipeline,
        family,
        passed,
    };
    let json = to_json_pretty(&report) + "\n";
    if let Some(dir) = &args.output_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let name = format!("regular_n{}_d{}_s{}.edges", args.n, args.d, args.seed);
        write_text(&dir.join(name), &sample.graph.to_edge_list())?;
        write_text(&dir.join("spectral_report.json"), &json)?;
    }
    Ok(Outcome { stdout: json, passed })
}
