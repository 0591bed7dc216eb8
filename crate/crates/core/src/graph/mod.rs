//! Simple graphs, coset graphs, and the transitive cases built from them.

mod case;
mod coset_graph;
mod local;

pub use case::{extract_connection_set, verify_sabidussi, SabidussiOutcome, TransitiveCase};
pub use coset_graph::{build_coset_graph, Connection, CosetGraph, CosetGraphSpec, Subgroup};
pub use local::{local_action, LocalActionReport};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permgroup::PermutationGroup;

/// Undirected loop-free graph on `0..n` with sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    neighbors: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { neighbors: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {{{u}, {v}}} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for (u, list) in neighbors.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {}}}", w[0])));
            }
        }
        Ok(SimpleGraph { neighbors })
    }

    /// Parses the edge-list text format: one `u v` pair per line, 0-based.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_edge_list(text: &str, n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: `{s}`: {e}", lineno + 1)))
            };
            match fields.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex indices, found `{line}`",
                        lineno + 1
                    )))
                }
            }
        }
        SimpleGraph::from_edges(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Common degree, if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors.iter().all(|l| l.len() == k).then_some(k)
    }
}

/// Checks that every generator maps edges to edges.
pub fn check_action(group: &PermutationGroup, graph: &SimpleGraph) -> Result<()> {
    if group.degree() != graph.vertex_count() {
        return Err(Error::DegreeMismatch { expected: graph.vertex_count(), found: group.degree() });
    }
    for (i, g) in group.generators().iter().enumerate() {
        for (u, v) in graph.edges() {
            if !graph.has_edge(g.apply(u), g.apply(v)) {
                return Err(Error::NotAnAutomorphism { generator: i, u, v });
            }
        }
    }
    Ok(())
}

/// True iff every generator of `group` is an automorphism of `graph`.
/// Finite, so edges-to-edges suffices. Transitivity is a separate question.
pub fn verify_action(group: &PermutationGroup, graph: &SimpleGraph) -> bool {
    check_action(group, graph).is_ok()
}
