//! Simple undirected graphs with a stable edge numbering.
//!
//! Vertices and edges are 0-based inside the library. Everything that crosses
//! an I/O boundary (DIMACS, JSON, reports) is 1-based, so edge `i` here is the
//! variable `x_{i+1}` in the printed polynomial systems.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed problem line `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("missing `p edge n m` problem line")]
    MissingHeader,
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed edge line `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: edge before problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: unknown line type `{text}`")]
    UnknownLine { line: usize, text: String },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("{kind} graph needs at least {min} vertices, got {n}")]
    TooSmall {
        kind: GraphKind,
        min: usize,
        n: usize,
    },
}

/// An undirected simple graph. Edge `i` keeps the orientation it was given in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from 0-based edges.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_lookup = HashMap::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u + 1 });
            }
            if edge_lookup.insert(key(u, v), idx).is_some() {
                return Err(GraphError::DuplicateEdge { u: u + 1, v: v + 1 });
            }
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
            edge_lookup,
        })
    }

    /// Builds a graph from 1-based edges, as they appear in files.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            zero.push((u - 1, v - 1));
        }
        Graph::new(n, zero)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize) {
        self.edges[idx]
    }

    /// Neighbours of `v` with the connecting edge index, sorted by neighbour.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&key(u, v)).copied()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &(w, _) in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest shortest-path distance, or `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Unordered non-adjacent pairs `(i, j)` with `i < j`, lexicographic.
    pub fn non_adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.is_adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every simple path from `u` to `v` with at most `max_len` edges, in
    /// lexicographic order of the vertex sequences.
    pub fn simple_paths(&self, u: usize, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        if u == v || max_len == 0 {
            return out;
        }
        let mut on_path = vec![false; self.n];
        let mut vertices = vec![u];
        let mut edge_indices = Vec::new();
        on_path[u] = true;
        self.extend_paths(
            v,
            max_len,
            &mut on_path,
            &mut vertices,
            &mut edge_indices,
            &mut out,
        );
        out
    }

    fn extend_paths(
        &self,
        target: usize,
        max_len: usize,
        on_path: &mut [bool],
        vertices: &mut Vec<usize>,
        edge_indices: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) {
        let last = *vertices.last().expect("path starts non-empty");
        for &(w, e) in &self.adjacency[last] {
            if on_path[w] {
                continue;
            }
            vertices.push(w);
            edge_indices.push(e);
            if w == target {
                out.push(Path {
                    vertices: vertices.clone(),
                    edge_indices: edge_indices.clone(),
                });
            } else if edge_indices.len() < max_len {
                on_path[w] = true;
                self.extend_paths(target, max_len, on_path, vertices, edge_indices, out);
                on_path[w] = false;
            }
            vertices.pop();
            edge_indices.pop();
        }
    }

    /// Parses the DIMACS edge format (`c` comments, `p edge n m`, `e u v`).
    pub fn parse_dimacs(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            let mut fields = trimmed.split_whitespace();
            match fields.next() {
                None => continue,
                Some(tok) if tok.starts_with('c') => continue,
                Some("p") => {
                    if header.is_some() {
                        return Err(GraphError::DuplicateHeader { line });
                    }
                    let rest: Vec<&str> = fields.collect();
                    let parsed = match rest.as_slice() {
                        [fmt, n, m] if *fmt == "edge" || *fmt == "col" => {
                            n.parse::<usize>().ok().zip(m.parse::<usize>().ok())
                        }
                        _ => None,
                    };
                    header = Some(parsed.ok_or_else(|| GraphError::MalformedHeader {
                        line,
                        text: trimmed.to_string(),
                    })?);
                }
                Some("e") => {
                    let (n, _) = header.ok_or(GraphError::EdgeBeforeHeader { line })?;
                    let rest: Vec<&str> = fields.collect();
                    let (u, v) = match rest.as_slice() {
                        [u, v] => u
                            .parse::<usize>()
                            .ok()
                            .zip(v.parse::<usize>().ok())
                            .ok_or_else(|| GraphError::MalformedEdge {
                                line,
                                text: trimmed.to_string(),
                            })?,
                        _ => {
                            return Err(GraphError::MalformedEdge {
                                line,
                                text: trimmed.to_string(),
                            })
                        }
                    };
                    for w in [u, v] {
                        if w == 0 || w > n {
                            return Err(GraphError::VertexOutOfRange { vertex: w, n });
                        }
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop { vertex: u });
                    }
                    edges.push((u, v));
                }
                Some(_) => {
                    return Err(GraphError::UnknownLine {
                        line,
                        text: trimmed.to_string(),
                    })
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::MissingHeader)?;
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                declared: m,
                found: edges.len(),
            });
        }
        Graph::from_one_based(n, &edges)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_one_based(json.n, &edges)
    }

    /// Named families with a fixed edge order.
    ///
    /// * star: vertex 0 is the centre, edge `i` joins it to leaf `i + 1`.
    /// * cycle: edge `i` is `(v_i, v_{i+1 mod n})`.
    /// * path: edge `i` is `(v_i, v_{i+1})`.
    /// * complete: edges in lexicographic order.
    /// * wheel: hub 0, spokes first, then the rim cycle on `1..=n`.
    ///
    /// For stars and wheels `n` counts the leaves / rim vertices.
    pub fn generate(kind: GraphKind, n: usize) -> Result<Self, GraphError> {
        let min = match kind {
            GraphKind::Cycle | GraphKind::Wheel => 3,
            _ => 1,
        };
        if n < min {
            return Err(GraphError::TooSmall { kind, min, n });
        }
        let (vertices, edges): (usize, Vec<(usize, usize)>) = match kind {
            GraphKind::Star => (n + 1, (1..=n).map(|leaf| (0, leaf)).collect()),
            GraphKind::Cycle => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
            GraphKind::Path => (n, (0..n - 1).map(|i| (i, i + 1)).collect()),
            GraphKind::Complete => (
                n,
                (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect(),
            ),
            GraphKind::Wheel => {
                let mut edges: Vec<(usize, usize)> = (1..=n).map(|v| (0, v)).collect();
                edges.extend((0..n).map(|i| (i + 1, (i + 1) % n + 1)));
                (n + 1, edges)
            }
        };
        Graph::new(vertices, edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Star,
    Cycle,
    Path,
    Complete,
    Wheel,
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GraphKind::Star => "star",
            GraphKind::Cycle => "cycle",
            GraphKind::Path => "path",
            GraphKind::Complete => "complete",
            GraphKind::Wheel => "wheel",
        };
        f.write_str(s)
    }
}

/// Machine-readable mirror of a graph, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A simple path, stored both as vertices and as the traversed edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    /// Checks simplicity and that every step is the claimed edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.vertices.len() != self.edge_indices.len() + 1 {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.vertices
            .windows(2)
            .zip(&self.edge_indices)
            .all(|(w, &e)| g.edge_between(w[0], w[1]) == Some(e))
    }
}
