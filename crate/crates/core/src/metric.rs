//! Finite metric spaces: unweighted graphs under the shortest-path metric and
//! validated distance matrices.
//!
//! Graph metrics are integers stored in `f64` (exact below 2^53), so every
//! downstream certificate on a graph can be re-checked in integer arithmetic.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, MetricAxiom, Result};

/// Absolute tolerance used when validating real-valued distance matrices.
pub const MATRIX_TOLERANCE: f64 = 1e-9;

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, normalising each edge to `(min, max)`. Self-loops are
    /// dropped and repeated edges collapse; neither changes the metric.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(Error::InvalidVertexId { id, vertex_count });
                }
            }
            if u != v {
                normalized.push((u.min(v), u.max(v)));
            }
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self {
            vertex_count,
            edges: normalized,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Serialises to the edge-list text format (`V E` header, one `u v` per line).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `V E` header".into(),
        })?;
        let [v, e] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(e);
        for (line, l) in lines.by_ref() {
            if edges.len() == e {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {e} edges"),
                });
            }
            let [a, b] = parse_pair(line, l)?;
            edges.push((a, b));
        }
        if edges.len() != e {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares {e} edges, found {}", edges.len()),
            });
        }
        Graph::new(v, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, &edges).expect("cycle edges are in range")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges).expect("complete-graph edges are in range")
    }

    /// `rows × cols` grid; vertex `(r, c)` has id `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, &edges).expect("grid edges are in range")
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace().map(|t| {
        t.parse::<usize>().map_err(|e| Error::Parse {
            line,
            message: format!("`{t}`: {e}"),
        })
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(Error::Parse {
            line,
            message: format!("expected two integers, got `{text}`"),
        }),
    }
}

/// A finite metric space on points `0..len()`, stored as a dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    len: usize,
    dist: Vec<f64>,
    integral: bool,
}

impl FiniteMetricSpace {
    /// Shortest-path metric of an unweighted graph given as an edge list.
    pub fn from_edge_list(edges: &[(usize, usize)], vertex_count: usize) -> Result<Self> {
        Self::from_graph(&Graph::new(vertex_count, edges)?)
    }

    /// Shortest-path metric of `graph`, one breadth-first traversal per source.
    pub fn from_graph(graph: &Graph) -> Result<Self> {
        let n = graph.vertex_count();
        let mut dist = vec![0.0; n * n];
        for x in 0..n {
            let row = graph.bfs(x);
            for (y, d) in row.into_iter().enumerate() {
                match d {
                    Some(d) => dist[x * n + y] = f64::from(d),
                    None => return Err(Error::DisconnectedGraph { unreachable: y }),
                }
            }
        }
        Ok(Self {
            len: n,
            dist,
            integral: true,
        })
    }

    /// Validates a square matrix against the metric axioms (absolute
    /// tolerance [`MATRIX_TOLERANCE`]), reporting the first violation found.
    pub fn from_distance_matrix(matrix: &[Vec<f64>]) -> Result<Self> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        let tol = MATRIX_TOLERANCE;
        let violation = |axiom, witness: &[usize]| Error::MetricViolation {
            axiom,
            witness: witness.to_vec(),
        };
        for x in 0..n {
            for y in 0..n {
                let d = matrix[x][y];
                if !d.is_finite() || d < 0.0 {
                    return Err(violation(MetricAxiom::NonNegativeFinite, &[x, y]));
                }
            }
        }
        for x in 0..n {
            if matrix[x][x].abs() > tol {
                return Err(violation(MetricAxiom::ZeroDiagonal, &[x]));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if (matrix[x][y] - matrix[y][x]).abs() > tol {
                    return Err(violation(MetricAxiom::Symmetry, &[x, y]));
                }
                if matrix[x][y] <= tol {
                    return Err(violation(MetricAxiom::Separation, &[x, y]));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if matrix[x][z] > matrix[x][y] + matrix[y][z] + tol {
                        return Err(violation(MetricAxiom::Triangle, &[x, y, z]));
                    }
                }
            }
        }
        let integral = matrix.iter().flatten().all(|d| d.fract() == 0.0);
        Ok(Self {
            len: n,
            dist: matrix.iter().flatten().copied().collect(),
            integral,
        })
    }

    /// Parses a CSV distance matrix (V rows of V comma-separated reals).
    pub fn parse_distance_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|e| Error::Parse {
                        line: i + 1,
                        message: format!("`{}`: {e}", t.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_distance_matrix(&rows)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True when every distance is an integer (always the case for graphs).
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    #[inline]
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.dist[x * self.len + y]
    }

    /// Distances from `x` to every point, indexed by point id.
    #[inline]
    pub fn row(&self, x: usize) -> &[f64] {
        &self.dist[x * self.len..(x + 1) * self.len]
    }

    /// Closed ball `{y : d(x, y) <= r}` in increasing id order.
    pub fn ball(&self, x: usize, r: f64) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= r)
            .map(|(y, _)| y)
            .collect()
    }

    /// Maximal closed-ball cardinality for every integer radius `0..=r_max`.
    pub fn growth_profile(&self, r_max: usize) -> GrowthProfile {
        let mut table = vec![0usize; r_max + 1];
        let mut sorted = Vec::with_capacity(self.len);
        for x in 0..self.len {
            sorted.clear();
            sorted.extend_from_slice(self.row(x));
            sorted.sort_by(f64::total_cmp);
            for (r, c) in table.iter_mut().enumerate() {
                let count = sorted.partition_point(|&d| d <= r as f64);
                *c = (*c).max(count);
            }
        }
        if self.len == 0 {
            table.iter_mut().for_each(|c| *c = 0);
        }
        GrowthProfile { table }
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Distinct pairwise distances, ascending (zero excluded).
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut ds: Vec<f64> = self.dist.iter().copied().filter(|&d| d > 0.0).collect();
        ds.sort_by(f64::total_cmp);
        ds.dedup();
        ds
    }
}

/// `C(R)`: the largest closed `R`-ball, for integer radii `0..=r_max`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GrowthProfile {
    table: Vec<usize>,
}

impl GrowthProfile {
    pub fn get(&self, r: usize) -> Option<usize> {
        self.table.get(r).copied()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn r_max(&self) -> usize {
        self.table.len() - 1
    }
}
