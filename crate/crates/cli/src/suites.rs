//! Property suites behind `verify`. Each suite reports a pass flag and the
//! numbers it was decided on; `all` runs every suite and fails if any does.

use std::path::Path;

use coarse_embed::embed::{analyze, default_depth, Certificate};
use coarse_embed::exact::{exact_values, ln_lp_norm};
use coarse_embed::expander::random_regular;
use coarse_embed::exponent::{lemma1_bound, schedule_for_space, select_exponent, Exponent};
use coarse_embed::group::{BuiltinGroup, TranslateCheck, DEFAULT_BALL_CAP};
use coarse_embed::mixed_norm::block_norm;
use coarse_embed::report::to_json_pretty;
use coarse_embed::tent::{verify_partition, PartitionCheck};
use coarse_embed::{FiniteMetricSpace, Graph, SparseFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Suite, VerifyArgs};
use crate::commands::{group_report, load_space, GroupReport, GroupRun, Outcome};
use crate::error::CliResult;

/// A named space under test, with its graph when it has one.
pub struct Subject {
    pub name: String,
    pub space: FiniteMetricSpace,
    pub graph: Option<Graph>,
    /// Depth to use when none is given on the command line.
    pub depth: Option<usize>,
}

impl Subject {
    fn from_graph(name: &str, g: Graph, depth: Option<usize>) -> Self {
        Subject {
            name: name.to_string(),
            space: FiniteMetricSpace::from_graph(&g).expect("corpus graphs are connected"),
            graph: Some(g),
            depth,
        }
    }
}

/// P_64, C_64, the 8×8 grid, the seeded (100, 3) regular graph, and P_200 at depth 25.
pub fn corpus() -> Vec<Subject> {
    vec![
        Subject::from_graph("path_64", Graph::path(64), None),
        Subject::from_graph("cycle_64", Graph::cycle(64), None),
        Subject::from_graph("grid_8x8", Graph::grid(8, 8), None),
        Subject::from_graph(
            "regular_100_3_seed42",
            random_regular(100, 3, 42).expect("feasible").graph,
            None,
        ),
        Subject::from_graph("path_200", Graph::path(200), Some(25)),
    ]
}

#[derive(Debug, Serialize)]
pub struct TentEntry {
    pub space: String,
    pub points: usize,
    pub check: PartitionCheck,
}

#[derive(Debug, Serialize)]
pub struct ExponentSuite {
    pub triples: usize,
    pub feasible: bool,
    pub minimal: bool,
    pub functions: usize,
    pub sandwich: bool,
    pub max_exponent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceEntry {
    pub space: String,
    pub points: usize,
    pub depth: usize,
    pub exponents: Vec<Exponent>,
    pub certificate: Certificate,
}

#[derive(Debug, Serialize)]
pub struct TranslateEntry {
    pub group: String,
    pub method: &'static str,
    pub check: TranslateCheck,
}

#[derive(Debug, Serialize)]
pub struct OracleSuite {
    pub graphs: usize,
    pub graph_mismatches: usize,
    pub norms: usize,
    pub max_relative_error: f64,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Details {
    Tents(Vec<TentEntry>),
    Exponents(ExponentSuite),
    Spaces(Vec<SpaceEntry>),
    Groups(Vec<GroupReport>),
    Translates(Vec<TranslateEntry>),
    Oracle(OracleSuite),
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: Details,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub passed: bool,
    pub results: Vec<SuiteResult>,
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Lemma1 => "lemma1",
        Suite::Lemma2 => "lemma2",
        Suite::Schedule => "schedule",
        Suite::Upper => "upper",
        Suite::Lower => "lower",
        Suite::Group => "group",
        Suite::Lemma3 => "lemma3",
        Suite::Oracle => "oracle",
        Suite::All => "all",
    }
}

pub fn tent_suite(subjects: &[&Subject], n_max: Option<usize>, fallback: usize) -> SuiteResult {
    let entries: Vec<TentEntry> = subjects
        .iter()
        .map(|s| TentEntry {
            space: s.name.clone(),
            points: s.space.len(),
            check: verify_partition(&s.space, n_max.unwrap_or(fallback)),
        })
        .collect();
    SuiteResult {
        name: "lemma2",
        passed: entries.iter().all(|e| e.check.passed()),
        details: Details::Tents(entries),
    }
}

/// Random `(α, β, ε)` with `β <= 10⁴`: feasibility and minimality of the
/// selected exponent, then the sandwich `‖f‖_∞ <= ‖f‖_p <= ‖f‖_∞ β^{1/p}` on
/// random sparse functions with `#supp f <= β`.
pub fn exponent_suite(samples: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut feasible, mut minimal, mut max_p) = (true, true, 0);
    for _ in 0..samples {
        let alpha = 10f64.powf(rng.gen_range(-3.0..3.0));
        let beta = 10f64.powf(rng.gen_range(0.0..4.0));
        let eps = 10f64.powf(rng.gen_range(-3.0..1.0));
        let p = select_exponent(alpha, beta, eps);
        max_p = max_p.max(p);
        feasible &= lemma1_bound(alpha, beta, p as f64) - alpha <= eps;
        minimal &= p == 1 || lemma1_bound(alpha, beta, (p - 1) as f64) - alpha > eps;
    }
    let mut sandwich = true;
    for _ in 0..samples {
        let beta = rng.gen_range(1..=200usize);
        let len = rng.gen_range(1..=beta);
        let scale = 10f64.powi(rng.gen_range(-8..=8));
        let f = SparseFunction::from_entries((0..len).map(|_| (rng.gen_range(0..10_000usize), rng.gen_range(-1.0..1.0) * scale)));
        let p = rng.gen_range(1..=64u32);
        let sup = f.sup_norm();
        let norm = block_norm(&f, Exponent::integer(p));
        let slack = 1e-12 * sup;
        sandwich &= sup <= norm + slack && norm <= lemma1_bound(sup, beta as f64, f64::from(p)) + slack;
    }
    SuiteResult {
        name: "lemma1",
        passed: feasible && minimal && sandwich,
        details: Details::Exponents(ExponentSuite {
            triples: samples,
            feasible,
            minimal,
            functions: samples,
            sandwich,
            max_exponent: max_p,
        }),
    }
}

pub fn space_entries(subjects: &[Subject], depth: Option<usize>) -> Vec<SpaceEntry> {
    subjects
        .iter()
        .map(|s| {
            let depth = depth.or(s.depth).unwrap_or_else(|| default_depth(&s.space));
            let schedule = schedule_for_space(&s.space, depth);
            let analysis = analyze(&s.space, &schedule, depth);
            SpaceEntry {
                space: s.name.clone(),
                points: s.space.len(),
                depth,
                exponents: schedule.exponents().to_vec(),
                certificate: analysis.certificate,
            }
        })
        .collect()
}

fn space_suite(name: &'static str, entries: Vec<SpaceEntry>, pass: fn(&Certificate) -> bool) -> SuiteResult {
    SuiteResult {
        name,
        passed: entries.iter().all(|e| pass(&e.certificate)),
        details: Details::Spaces(entries),
    }
}

/// ℤ at depth 4, F_2 and S_4 at depth 2.
pub fn standard_groups() -> Vec<(BuiltinGroup, usize)> {
    vec![
        ("z:1".parse().expect("valid"), 4),
        ("free:2".parse().expect("valid"), 2),
        ("sym:4".parse().expect("valid"), 2),
    ]
}

pub fn group_suite(seed: u64) -> CliResult<SuiteResult> {
    let reports = standard_groups()
        .iter()
        .map(|(g, depth)| {
            group_report(
                g,
                &GroupRun {
                    depth: *depth,
                    samples: 200,
                    seed,
                    lmax: None,
                    cap: DEFAULT_BALL_CAP,
                    tolerance: 1e-12,
                },
            )
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SuiteResult {
        name: "group",
        passed: reports.iter().all(|r| r.certificates.passed()),
        details: Details::Groups(reports),
    })
}

/// `f_n` for `n <= 4` on each standard group. The free-group ball at
/// `n = 4` (radius 15) is too large to store, so it is walked instead.
pub fn translate_suite() -> CliResult<SuiteResult> {
    let mut entries = Vec::new();
    for (g, _) in standard_groups() {
        for n in 1..=4 {
            let (method, check) = match g {
                BuiltinGroup::Free(f) if n == 4 => ("streaming", TranslateCheck::free_group_streaming(&f, n)),
                _ => ("enumeration", TranslateCheck::by_enumeration(&g, n, DEFAULT_BALL_CAP)?),
            };
            entries.push(TranslateEntry {
                group: coarse_embed::group::GroupModel::name(&g),
                method,
                check,
            });
        }
    }
    Ok(SuiteResult {
        name: "lemma3",
        passed: entries.iter().all(|e| e.check.passed()),
        details: Details::Translates(entries),
    })
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Graph metrics against Floyd-Warshall on every graph with `V <= 64`, and
/// ℓ^p norms against exact rational power sums on 500 random inputs.
pub fn oracle_suite(subjects: &[Subject], seed: u64) -> SuiteResult {
    let mut graphs = 0;
    let mut mismatches = 0;
    for s in subjects {
        let Some(g) = &s.graph else { continue };
        if g.vertex_count() > 64 {
            continue;
        }
        graphs += 1;
        let fw = floyd_warshall(g);
        let bad = (0..g.vertex_count())
            .any(|x| (0..g.vertex_count()).any(|y| s.space.distance(x, y) != fw[x][y] as f64));
        mismatches += usize::from(bad);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel = 0.0f64;
    let norms = 500;
    for _ in 0..norms {
        let len = rng.gen_range(1..=32);
        let scale = 10f64.powi(rng.gen_range(-6..=6));
        let f = SparseFunction::from_entries((0..len).map(|i| (i, rng.gen_range(0.001..1.0) * scale)));
        let p = rng.gen_range(1..=64u32);
        let exact = ln_lp_norm(&exact_values(&f), p);
        max_rel = max_rel.max((block_norm(&f, Exponent::integer(p)).ln() - exact).abs());
    }
    SuiteResult {
        name: "oracle",
        passed: mismatches == 0 && max_rel <= 1e-12,
        details: Details::Oracle(OracleSuite {
            graphs,
            graph_mismatches: mismatches,
            norms,
            max_relative_error: max_rel,
        }),
    }
}

fn input_subject(args: &VerifyArgs) -> CliResult<Option<Vec<Subject>>> {
    if !args.space.is_given() {
        return Ok(None);
    }
    let (space, graph) = load_space(&args.space)?;
    let path = args.space.input.as_ref().or(args.space.matrix.as_ref()).expect("given");
    let name = Path::new(path)
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok(Some(vec![Subject {
        name,
        space,
        graph,
        depth: None,
    }]))
}

pub fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let input = input_subject(args)?;
    let custom = input.is_some();
    let subjects = input.unwrap_or_else(corpus);
    let want = |s: Suite| args.suite == s || args.suite == Suite::All;

    let mut results = Vec::new();
    if want(Suite::Lemma1) {
        results.push(exponent_suite(args.samples, args.seed));
    }
    if want(Suite::Lemma2) {
        // corpus: n <= 10 on the four test graphs; a user space: its diameter
        let fallback = if custom { default_depth(&subjects[0].space) } else { 10 };
        let tents: Vec<&Subject> = subjects.iter().filter(|s| custom || s.depth.is_none()).collect();
        results.push(tent_suite(&tents, args.depth, fallback));
    }
    if want(Suite::Schedule) || want(Suite::Upper) || want(Suite::Lower) {
        let entries = space_entries(&subjects, args.depth);
        let checks: [(Suite, &'static str, fn(&Certificate) -> bool); 3] = [
            (Suite::Schedule, "schedule", |c| c.schedule),
            (Suite::Upper, "upper", |c| c.upper && c.upper_full),
            (Suite::Lower, "lower", |c| c.injective && c.lower.iter().all(|s| s.ok)),
        ];
        for (suite, name, pass) in checks {
            if want(suite) {
                results.push(space_suite(name, entries.clone(), pass));
            }
        }
    }
    if want(Suite::Group) {
        results.push(group_suite(args.seed)?);
    }
    if want(Suite::Lemma3) {
        results.push(translate_suite()?);
    }
    if want(Suite::Oracle) {
        results.push(oracle_suite(&subjects, args.seed));
    }
    let report = VerifyReport {
        suite: suite_name(args.suite),
        passed: results.iter().all(|r| r.passed),
        results,
    };
    Ok(Outcome {
        passed: report.passed,
        stdout: to_json_pretty(&report) + "\n",
    })
}
