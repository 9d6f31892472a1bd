//! Python bindings. Structured results (schedules, profiles, certificates)
//! cross the boundary as the same fixed-order JSON the CLI prints, decoded
//! with `json.loads`, so both front ends agree to the last digit.

use std::sync::Arc;

use embed_core::embed::{self, analyze, default_depth, embed_point};
use embed_core::expander;
use embed_core::exponent::{lemma1_bound, schedule_for_space, select_exponent, Exponent, ExponentSchedule};
use embed_core::group::{word_ball, BuiltinGroup, Cocycle, GroupElement, GroupModel, DEFAULT_BALL_CAP};
use embed_core::mixed_norm::block_norm;
use embed_core::report::to_json;
use embed_core::tent::{tent, verify_partition};
use embed_core::{FiniteMetricSpace, Graph, SparseFunction};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (to_json(value),))
}

fn exponent(p: f64) -> PyResult<Exponent> {
    Exponent::new(p).ok_or_else(|| value_error(format!("exponent must be >= 1, got {p}")))
}

/// A finite metric space, from a graph or an explicit distance matrix.
#[pyclass(name = "MetricSpace", module = "coarse_embed", frozen)]
struct PyMetricSpace {
    space: FiniteMetricSpace,
    graph: Option<Graph>,
}

impl PyMetricSpace {
    fn from_graph(graph: Graph) -> PyResult<Self> {
        let space = FiniteMetricSpace::from_graph(&graph).map_err(value_error)?;
        Ok(Self {
            space,
            graph: Some(graph),
        })
    }

    fn point(&self, x: usize) -> PyResult<usize> {
        if x < self.space.len() {
            Ok(x)
        } else {
            Err(value_error(format!("point {x} out of range for {} points", self.space.len())))
        }
    }

    fn depth(&self, depth: Option<usize>) -> PyResult<usize> {
        match depth.unwrap_or_else(|| default_depth(&self.space)) {
            0 => Err(value_error("depth must be at least 1")),
            d => Ok(d),
        }
    }

    fn schedule(&self, depth: usize) -> ExponentSchedule {
        schedule_for_space(&self.space, depth)
    }
}

#[pymethods]
impl PyMetricSpace {
    /// Shortest-path metric of a connected graph on `0..n`.
    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Self::from_graph(Graph::new(n, &edges).map_err(value_error)?)
    }

    #[staticmethod]
    fn from_matrix(matrix: Vec<Vec<f64>>) -> PyResult<Self> {
        let space = FiniteMetricSpace::from_distance_matrix(&matrix).map_err(value_error)?;
        Ok(Self { space, graph: None })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Self::from_graph(Graph::path(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Self::from_graph(Graph::cycle(n))
    }

    #[staticmethod]
    fn grid(rows: usize, cols: usize) -> PyResult<Self> {
        Self::from_graph(Graph::grid(rows, cols))
    }

    /// Seeded random `d`-regular graph; fails if the sample is disconnected.
    #[staticmethod]
    #[pyo3(signature = (n, d, seed = 0))]
    fn random_regular(n: usize, d: usize, seed: u64) -> PyResult<Self> {
        Self::from_graph(expander::random_regular(n, d, seed).map_err(value_error)?.graph)
    }

    fn __len__(&self) -> usize {
        self.space.len()
    }

    fn __repr__(&self) -> String {
        format!("MetricSpace(points={}, diameter={})", self.space.len(), self.space.diameter())
    }

    fn distance(&self, x: usize, y: usize) -> PyResult<f64> {
        Ok(self.space.distance(self.point(x)?, self.point(y)?))
    }

    fn diameter(&self) -> f64 {
        self.space.diameter()
    }

    fn ball(&self, x: usize, r: f64) -> PyResult<Vec<usize>> {
        Ok(self.space.ball(self.point(x)?, r))
    }

    /// `C(R)` for `R = 0..=r_max`.
    fn growth(&self, r_max: usize) -> Vec<usize> {
        self.space.growth_profile(r_max).table().to_vec()
    }

    /// Edge list, or `None` for a matrix-backed space.
    fn edges(&self) -> Option<Vec<(usize, usize)>> {
        self.graph.as_ref().map(|g| g.edges().to_vec())
    }

    /// `φⁿ_x` as `(point, value)` pairs over its support.
    fn tent(&self, x: usize, n: usize) -> PyResult<Vec<(usize, f64)>> {
        if n == 0 {
            return Err(value_error("scale must be at least 1"));
        }
        Ok(tent(&self.space, self.point(x)?, n).into_entries())
    }

    fn verify_partition<'py>(&self, py: Python<'py>, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
        json(py, &verify_partition(&self.space, n_max))
    }

    /// `{"exponents": [...], "provenance": [...]}` for depths `1..=depth`.
    #[pyo3(signature = (depth = None))]
    fn schedule_json<'py>(&self, py: Python<'py>, depth: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let depth = self.depth(depth)?;
        py.import("json")?.call_method1("loads", (self.schedule(depth).to_json(),))
    }

    #[pyo3(signature = (depth = None))]
    fn exponents(&self, depth: Option<usize>) -> PyResult<Vec<f64>> {
        let depth = self.depth(depth)?;
        Ok(self.schedule(depth).exponents().iter().map(|p| p.value()).collect())
    }

    /// `‖Φ(x) − Φ(y)‖` of the depth-truncated embedding.
    #[pyo3(signature = (x, y, depth = None))]
    fn pair_distance(&self, x: usize, y: usize, depth: Option<usize>) -> PyResult<f64> {
        let depth = self.depth(depth)?;
        let schedule = self.schedule(depth);
        Ok(embed::pair_distance(&self.space, &schedule, depth, self.point(x)?, self.point(y)?))
    }

    /// Blocks of `Φ(x)` relative to `basepoint`, each as `(point, value)` pairs.
    #[pyo3(signature = (x, depth = None, basepoint = 0))]
    fn embed(&self, x: usize, depth: Option<usize>, basepoint: usize) -> PyResult<Vec<Vec<(usize, f64)>>> {
        let depth = self.depth(depth)?;
        let schedule = Arc::new(self.schedule(depth));
        let v = embed_point(&self.space, &schedule, self.point(basepoint)?, depth, self.point(x)?);
        Ok(v.blocks().iter().map(|b| b.entries().to_vec()).collect())
    }

    /// Distortion profile and certificate: `{"profile": .., "certificate": ..}`.
    #[pyo3(signature = (depth = None))]
    fn analyze<'py>(&self, py: Python<'py>, depth: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let depth = self.depth(depth)?;
        json(py, &analyze(&self.space, &self.schedule(depth), depth))
    }

    /// Adjacency spectrum by power iteration (graph-backed spaces only).
    #[pyo3(signature = (tol = 1e-10))]
    fn spectrum<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let g = self
            .graph
            .as_ref()
            .ok_or_else(|| value_error("spectrum needs a graph-backed space"))?;
        json(py, &expander::spectrum(g, tol).map_err(value_error)?)
    }
}

/// One of the built-in groups: `z:d`, `free:k`, `sym:k`, `dihedral:k`.
/// Elements are lists of ints in the group's normal form.
#[pyclass(name = "Group", module = "coarse_embed", frozen)]
struct PyGroup {
    group: BuiltinGroup,
}

impl PyGroup {
    fn cocycle(&self, depth: usize) -> PyResult<Cocycle<'_, BuiltinGroup>> {
        if depth == 0 {
            return Err(value_error("depth must be at least 1"));
        }
        Cocycle::new(&self.group, depth, DEFAULT_BALL_CAP).map_err(value_error)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self {
            group: spec.parse().map_err(value_error)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.group.name())
    }

    #[getter]
    fn name(&self) -> String {
        self.group.name()
    }

    fn identity(&self) -> Vec<i32> {
        self.group.identity().0
    }

    fn generators(&self) -> Vec<Vec<i32>> {
        self.group.generators().into_iter().map(|g| g.0).collect()
    }

    fn multiply(&self, a: Vec<i32>, b: Vec<i32>) -> Vec<i32> {
        self.group.multiply(&GroupElement(a), &GroupElement(b)).0
    }

    fn inverse(&self, a: Vec<i32>) -> Vec<i32> {
        self.group.inverse(&GroupElement(a)).0
    }

    /// Elements of word length `<= radius` with their lengths, in BFS order.
    fn ball(&self, radius: u32) -> PyResult<Vec<(Vec<i32>, u32)>> {
        let ball = word_ball(&self.group, radius, DEFAULT_BALL_CAP).map_err(value_error)?;
        Ok(ball.elements().iter().map(|(e, l)| (e.0.clone(), *l)).collect())
    }

    #[pyo3(signature = (depth = 2))]
    fn exponents(&self, depth: usize) -> PyResult<Vec<f64>> {
        Ok(self.cocycle(depth)?.schedule().exponents().iter().map(|p| p.value()).collect())
    }

    /// `‖Φ(s)‖` for the depth-truncated cocycle.
    #[pyo3(signature = (s, depth = 2))]
    fn phi_norm(&self, s: Vec<i32>, depth: usize) -> PyResult<f64> {
        Ok(self.cocycle(depth)?.phi(&GroupElement(s)).norm())
    }

    /// `‖Φ(st) − λ_s Φ(t) − Φ(s)‖`.
    #[pyo3(signature = (s, t, depth = 2))]
    fn cocycle_residual(&self, s: Vec<i32>, t: Vec<i32>, depth: usize) -> PyResult<f64> {
        Ok(self.cocycle(depth)?.cocycle_residual(&GroupElement(s), &GroupElement(t)))
    }

    /// Minimum `‖Φ(s)‖` per word-length sphere up to `lmax`, with certificates.
    #[pyo3(signature = (depth = 2, lmax = None))]
    fn properness<'py>(&self, py: Python<'py>, depth: usize, lmax: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let lmax = lmax.unwrap_or(2 * (depth * depth) as u32 + 1);
        let p = self.cocycle(depth)?.properness(lmax, DEFAULT_BALL_CAP).map_err(value_error)?;
        json(py, &p)
    }
}

/// Smallest integer `p` with `α(β^{1/p} − 1) <= ε`.
#[pyfunction(name = "select_exponent")]
fn py_select_exponent(alpha: f64, beta: f64, eps: f64) -> PyResult<u64> {
    if !(alpha >= 0.0 && beta >= 1.0 && eps > 0.0) {
        return Err(value_error("need alpha >= 0, beta >= 1, eps > 0"));
    }
    Ok(select_exponent(alpha, beta, eps))
}

/// `α · β^{1/p}`: the largest `‖f‖_p` with `‖f‖_∞ <= α` and `#supp f <= β`.
#[pyfunction(name = "lemma1_bound")]
fn py_lemma1_bound(alpha: f64, beta: f64, p: f64) -> PyResult<f64> {
    Ok(lemma1_bound(alpha, beta, exponent(p)?.value()))
}

/// Rescaled `ℓ^p` norm of a dense vector; `p = inf` gives the sup norm.
#[pyfunction(name = "block_norm")]
fn py_block_norm(values: Vec<f64>, p: f64) -> PyResult<f64> {
    let f = SparseFunction::from_entries(values.into_iter().enumerate());
    Ok(block_norm(&f, exponent(p)?))
}

#[pyfunction]
fn upper_constant(depth: usize) -> f64 {
    embed::upper_constant(depth)
}

#[pymodule]
fn coarse_embed(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMetricSpace>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(py_select_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(py_lemma1_bound, m)?)?;
    m.add_function(wrap_pyfunction!(py_block_norm, m)?)?;
    m.add_function(wrap_pyfunction!(upper_constant, m)?)?;
    m.add("CERTIFICATE_TOLERANCE", embed::CERTIFICATE_TOLERANCE)?;
    Ok(())
}
