use std::collections::HashSet;
use std::path::Path;

use super::{LexFitness, Problem};
use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Simple undirected graph; the edge list order defines the bit order of
/// matching candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, w) in &edges {
            if u >= vertex_count || w >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {w}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if u == w {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(w), u.max(w))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {w})")));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    /// Parses the text format: a header line `v e`, then `e` lines `u w`
    /// with 0-based vertex indices. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::InvalidGraph("empty input".into()))?;
        let (v, e) = parse_pair(header)?;
        let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != e {
            return Err(Error::InvalidGraph(format!("header announces {e} edges, found {}", edges.len())));
        }
        Self::new(v, edges)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidGraph(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serializes to the text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for (u, w) in &self.edges {
            out.push_str(&format!("{u} {w}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangle() -> Self {
        Self::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("valid graph")
    }

    pub fn path(edges: usize) -> Self {
        Self::new(edges + 1, (0..edges).map(|i| (i, i + 1)).collect()).expect("valid graph")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            edges.push((i, i + 5));
        }
        for i in 0..5 {
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).expect("valid graph")
    }

    /// `(p(s), ‖s‖₁)`: total excess degree `Σ_v max(0, d_s(v) - 1)` and
    /// number of selected edges.
    pub fn penalty_and_size(&self, s: &BitString) -> (usize, usize) {
        let mut degree = vec![0usize; self.vertex_count];
        let mut size = 0;
        for (i, &(u, w)) in self.edges.iter().enumerate() {
            if s.get(i) {
                degree[u] += 1;
                degree[w] += 1;
                size += 1;
            }
        }
        let penalty = degree.iter().map(|&d| d.saturating_sub(1)).sum();
        (penalty, size)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::InvalidGraph(format!("expected two non-negative integers, got {line:?}"))),
    }
}

/// Lexicographic fitness `(-p(s), ‖s‖₁)` for a graph.
pub fn matching_fitness(g: &Graph, s: &BitString) -> LexFitness {
    let (penalty, size) = g.penalty_and_size(s);
    LexFitness::new(-(penalty as i64), size as i64)
}

/// Maximum matching via the penalty fitness. A run succeeds once it
/// evaluates a matching of at least `target` edges.
#[derive(Debug, Clone)]
pub struct Matching {
    graph: Graph,
    target: usize,
}

impl Matching {
    pub fn new(graph: Graph, target: usize) -> Self {
        Self { graph, target }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn target(&self) -> usize {
        self.target
    }
}

impl Problem for Matching {
    type Fitness = LexFitness;

    fn dimension(&self) -> usize {
        self.graph.edge_count()
    }

    fn fitness(&self, s: &BitString) -> LexFitness {
        matching_fitness(&self.graph, s)
    }

    fn is_optimum(&self, s: &BitString) -> bool {
        let (penalty, size) = self.graph.penalty_and_size(s);
        penalty == 0 && size >= self.target
    }
}
