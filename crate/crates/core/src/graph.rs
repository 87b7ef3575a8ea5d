//! Simple undirected graphs with vertices ordered so that every edge is oriented from the
//! smaller to the bigger endpoint.
//!
//! Vertices are 0-based in this API and 1-based in text files and basis labels. The
//! lexicographic order of the edge list fixes the order of the central basis everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GraphError, GraphErrorKind};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-based vertex pairs in any orientation.
    ///
    /// Rejects loops, duplicate edges, out-of-range endpoints and isolated vertices.
    pub fn new(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut b = Builder::new(vertex_count)?;
        for (i, j) in pairs {
            b.push(i + 1, j + 1, None)?;
        }
        b.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of the edge joining `i` and `j` in the edge order.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::new(GraphErrorKind::VertexOutOfRange {
                vertex: v + 1,
                count: self.vertex_count,
            }));
        }
        Ok(self
            .edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    pub fn min_degree_at_least_two(&self) -> bool {
        self.degrees().iter().all(|&d| d >= 2)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertex pairs `(i, j)`, `i < j`, for which an antisymmetric TST solution must vanish:
    /// the pair is joined by an edge, or some edge at `i` and some edge at `j` are disjoint.
    pub fn predicted_s_zero_pattern(&self) -> BTreeSet<(usize, usize)> {
        let n = self.vertex_count;
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.edge_index(i, j).is_some() {
                    out.insert((i, j));
                    continue;
                }
                let at_i: Vec<_> = self.neighbors(i).collect();
                let at_j: Vec<_> = self.neighbors(j).collect();
                let disjoint = at_i
                    .iter()
                    .any(|&ip| at_j.iter().any(|&jp| ip != j && ip != jp && jp != i));
                if disjoint {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    pub fn vertex_label(v: usize) -> String {
        format!("v{}", v + 1)
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (i, j) = self.edges[e];
        format!("a{}_{}", i + 1, j + 1)
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, pairs).expect("complete graph on >= 2 vertices")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on >= 3 vertices")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).expect("path on >= 2 vertices")
    }

    pub fn single_edge() -> Self {
        Graph::path(2)
    }

    /// Canonical text form: vertex count, then one `i j` line per edge (1-based, `i < j`).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.vertex_count);
        for &(i, j) in &self.edges {
            s.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        s
    }

    /// Isomorphism-invariant code: the smallest edge bitmask over all relabelings that
    /// list vertices by nondecreasing degree. Valid for up to 11 vertices.
    pub fn canonical_code(&self) -> u64 {
        let adj = self.adjacency();
        canonical(&adj).0
    }

    fn adjacency(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.vertex_count];
        for &(i, j) in &self.edges {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }
}

/// Parses the graph text format: `#` comment lines and blank lines are skipped, the first
/// remaining line is the vertex count, each following line is an edge `i j` (1-based).
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut builder: Option<Builder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &mut builder {
            None => {
                let [count] = fields.as_slice() else {
                    return Err(GraphError::at(
                        line_no,
                        GraphErrorKind::Malformed(format!("expected vertex count, got {line:?}")),
                    ));
                };
                let n: usize = count.parse().map_err(|_| {
                    GraphError::at(
                        line_no,
                        GraphErrorKind::Malformed(format!("bad vertex count {count:?}")),
                    )
                })?;
                builder = Some(Builder::new(n).map_err(|mut e| {
                    e.line = Some(line_no);
                    e
                })?);
            }
            Some(b) => {
                let [i, j] = fields.as_slice() else {
                    return Err(GraphError::at(
                        line_no,
                        GraphErrorKind::Malformed(format!("expected edge \"i j\", got {line:?}")),
                    ));
                };
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| {
                        GraphError::at(
                            line_no,
                            GraphErrorKind::Malformed(format!("bad vertex index {s:?}")),
                        )
                    })
                };
                b.push(parse(i)?, parse(j)?, Some(line_no))?;
            }
        }
    }
    builder
        .ok_or_else(|| GraphError::new(GraphErrorKind::Empty))?
        .finish()
}

/// Accumulates 1-based edges with validation.
struct Builder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::new(GraphErrorKind::Malformed(
                "vertex count must be positive".into(),
            )));
        }
        Ok(Builder {
            n,
            edges: BTreeSet::new(),
        })
    }

    fn push(&mut self, i: usize, j: usize, line: Option<usize>) -> Result<(), GraphError> {
        let err = |kind| GraphError { line, kind };
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(err(GraphErrorKind::VertexOutOfRange {
                    vertex: v,
                    count: self.n,
                }));
            }
        }
        if i == j {
            return Err(err(GraphErrorKind::Loop(i)));
        }
        let key = (i.min(j) - 1, i.max(j) - 1);
        if !self.edges.insert(key) {
            return Err(err(GraphErrorKind::DuplicateEdge(i, j)));
        }
        Ok(())
    }

    fn finish(self) -> Result<Graph, GraphError> {
        let mut touched = vec![false; self.n];
        for &(i, j) in &self.edges {
            touched[i] = true;
            touched[j] = true;
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(GraphError::new(GraphErrorKind::IsolatedVertex(v + 1)));
        }
        Ok(Graph {
            vertex_count: self.n,
            edges: self.edges.into_iter().collect(),
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
            .collect();
        write!(f, "Graph({}; {})", self.vertex_count, edges.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let mut b = Builder::new(repr.vertices).map_err(serde::de::Error::custom)?;
        for [i, j] in repr.edges {
            b.push(i, j, None).map_err(serde::de::Error::custom)?;
        }
        b.finish().map_err(serde::de::Error::custom)
    }
}

fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    // lexicographic rank of (i, j), i < j, among pairs of 0..n
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Smallest edge code over degree-respecting relabelings, with the relabeled adjacency.
fn canonical(adj: &[u16]) -> (u64, Vec<u16>) {
    let n = adj.len();
    assert!(n <= 11, "canonical codes support at most 11 vertices");
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    // slot k must be filled by a vertex of degree slot_deg[k]
    let slot_deg: Vec<u32> = order.iter().map(|&v| deg[v]).collect();

    let mut best = u64::MAX;
    let mut best_perm = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn search(
        adj: &[u16],
        deg: &[u32],
        slot_deg: &[u32],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut u64,
        best_perm: &mut Vec<usize>,
    ) {
        let n = adj.len();
        if perm.len() == n {
            let mut pos = vec![0; n];
            for (k, &v) in perm.iter().enumerate() {
                pos[v] = k;
            }
            let mut code = 0u64;
            for v in 0..n {
                for w in v + 1..n {
                    if adj[v] & (1 << w) != 0 {
                        let (a, b) = (pos[v].min(pos[w]), pos[v].max(pos[w]));
                        code |= 1 << pair_rank(n, a, b);
                    }
                }
            }
            if code < *best {
                *best = code;
                *best_perm = perm.clone();
            }
            return;
        }
        let want = slot_deg[perm.len()];
        for v in 0..n {
            if !used[v] && deg[v] == want {
                used[v] = true;
                perm.push(v);
                search(adj, deg, slot_deg, perm, used, best, best_perm);
                perm.pop();
                used[v] = false;
            }
        }
    }

    search(
        adj,
        &deg,
        &slot_deg,
        &mut perm,
        &mut used,
        &mut best,
        &mut best_perm,
    );
    let mut pos = vec![0; n];
    for (k, &v) in best_perm.iter().enumerate() {
        pos[v] = k;
    }
    let mut relabeled = vec![0u16; n];
    for v in 0..n {
        for w in 0..n {
            if adj[v] & (1 << w) != 0 {
                relabeled[pos[v]] |= 1 << pos[w];
            }
        }
    }
    (best, relabeled)
}

/// All graphs without isolated vertices on `2..=max_vertices` vertices, one per isomorphism
/// class, ordered by vertex count and then canonical code.
///
/// Generated by vertex augmentation: every class on `n` vertices is some class on `n - 1`
/// vertices plus one vertex with a chosen neighbourhood.
pub fn enumerate_graphs(max_vertices: usize) -> Vec<Graph> {
    assert!(
        max_vertices <= 11,
        "enumeration supports at most 11 vertices"
    );
    let mut level: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
    level.insert(0, vec![0]);
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let mut next: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for adj in level.values() {
            for mask in 0u16..(1 << (n - 1)) {
                let mut g = adj.clone();
                g.push(mask);
                for (v, row) in g.iter_mut().enumerate().take(n - 1) {
                    if mask & (1 << v) != 0 {
                        *row |= 1 << (n - 1);
                    }
                }
                let (code, canon) = canonical(&g);
                next.entry(code).or_insert(canon);
            }
        }
        for adj in next.values() {
            if adj.iter().all(|&a| a != 0) {
                let pairs = (0..n).flat_map(|i| {
                    (i + 1..n)
                        .filter(move |&j| adj[i] & (1 << j) != 0)
                        .map(move |j| (i, j))
                });
                out.push(Graph::new(n, pairs).expect("no isolated vertices"));
            }
        }
        level = next;
    }
    out
}
