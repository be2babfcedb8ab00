//! Simple undirected graphs over dense 0-based vertex ids, hop distances,
//! the exact-distance-r graph, and deterministic generators.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

/// A simple undirected graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Pairs may come in either
    /// orientation; they are canonicalized to `(min, max)` and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonically sorted `(min, max)` edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let oracle = all_pairs_distances(self);
        (1..self.n).all(|v| oracle.dist(0, v) != oracle.unreachable())
    }
}

/// All-pairs hop-distance table. `unreachable()` is the sentinel `n`,
/// strictly larger than any path length in an `n`-vertex graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    n: usize,
    dist: Vec<Vec<usize>>,
}

impl DistanceOracle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unreachable(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u][v]
    }

    /// N_r(v): vertices at hop distance exactly `r` from `v`.
    pub fn exact_r_neighborhood(&self, v: usize, r: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.dist[v][u] == r).collect()
    }
}

/// BFS from every source.
pub fn all_pairs_distances(g: &Graph) -> DistanceOracle {
    let n = g.n();
    let mut dist = vec![vec![n; n]; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s][s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[s][w] == n {
                    dist[s][w] = dist[s][u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceOracle { n, dist }
}

/// D_r(g): same vertices, an edge {u, v} iff dist_g(u, v) = r exactly.
pub fn exact_distance_graph(g: &Graph, r: usize) -> Graph {
    assert!(r >= 1, "r must be positive");
    let oracle = all_pairs_distances(g);
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if oracle.dist(u, v) == r {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.n(), edges).expect("exact-distance edges are simple by construction")
}

/// splitmix64 step; the PRNG behind all seeded generation in this crate.
/// Pinned so identical specs reproduce identical graphs everywhere.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum GraphFamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
}

impl GraphFamilySpec {
    pub fn label(&self) -> String {
        match self {
            GraphFamilySpec::Path { n } => format!("path-{n}"),
            GraphFamilySpec::Cycle { n } => format!("cycle-{n}"),
            GraphFamilySpec::Complete { n } => format!("complete-{n}"),
            GraphFamilySpec::Star { n } => format!("star-{n}"),
            GraphFamilySpec::Gnp { n, p, seed } => format!("gnp-{n}-{p}-{seed}"),
        }
    }
}

/// Deterministic generation: the same spec always yields the same edge set.
pub fn generate(spec: &GraphFamilySpec) -> Result<Graph, GraphError> {
    match *spec {
        GraphFamilySpec::Path { n } => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        GraphFamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(GraphError::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphFamilySpec::Complete { n } => {
            Graph::new(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
        }
        GraphFamilySpec::Star { n } => {
            if n < 1 {
                return Err(GraphError::InvalidFamily("star needs n >= 1".into()));
            }
            Graph::new(n, (1..n).map(|i| (0, i)))
        }
        GraphFamilySpec::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GraphError::InvalidFamily(format!("gnp needs p in [0,1], got {p}")));
            }
            let mut state = seed;
            let mut edges = Vec::new();
            // Pair order (0,1),(0,2),...,(n-2,n-1); one draw per pair.
            for i in 0..n {
                for j in (i + 1)..n {
                    let draw = splitmix64(&mut state);
                    if (draw as f64) / (u64::MAX as f64 + 1.0) < p {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(n, edges)
        }
    }
}
