//! Multigraphs, MAP instances, and the connectivity primitives everything
//! else is checked against.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected multigraph on vertices `0..n`. Edge ids are list positions, so
/// parallel edges stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { edge: id, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: id, vertex: u });
            }
        }
        Ok(Self { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, edge: EdgeId) -> (VertexId, VertexId) {
        self.edges[edge]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// The endpoint of `edge` that is not `from`.
    pub fn opposite(&self, edge: EdgeId, from: VertexId) -> VertexId {
        let (u, v) = self.edges[edge];
        if u == from {
            v
        } else {
            u
        }
    }

    /// Incidence lists `(neighbor, edge)`, each sorted by edge id.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        adj
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Weight {
    Light,
    Heavy,
}

impl Weight {
    pub fn cost(self) -> u32 {
        match self {
            Weight::Light => 0,
            Weight::Heavy => 1,
        }
    }

    pub fn from_cost(w: u32) -> Option<Self> {
        match w {
            0 => Some(Weight::Light),
            1 => Some(Weight::Heavy),
            _ => None,
        }
    }
}

/// A multigraph with 0/1 edge weights. Construction only checks shapes; the
/// matching and 2-edge-connectivity requirements are reported by
/// [`validate_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapInstance {
    graph: MultiGraph,
    weights: Vec<Weight>,
}

impl MapInstance {
    pub fn new(graph: MultiGraph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::LengthMismatch { expected: graph.edge_count(), actual: weights.len() });
        }
        Ok(Self { graph, weights })
    }

    /// Builds an instance from `(u, v, cost)` triples with cost 0 or 1.
    pub fn from_triples(n: usize, triples: &[(VertexId, VertexId, u32)]) -> Result<Self> {
        let graph = MultiGraph::new(n, triples.iter().map(|&(u, v, _)| (u, v)).collect())?;
        let weights = triples
            .iter()
            .map(|&(_, _, w)| Weight::from_cost(w).ok_or_else(|| Error::Parse(format!("edge weight {w} is not 0 or 1"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, weights)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn weight(&self, edge: EdgeId) -> Weight {
        self.weights[edge]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn is_light(&self, edge: EdgeId) -> bool {
        self.weights[edge] == Weight::Light
    }

    /// Ids of the light edges, i.e. the matching `M`.
    pub fn light_edges(&self) -> Vec<EdgeId> {
        (0..self.edge_count()).filter(|&e| self.is_light(e)).collect()
    }

    pub fn heavy_edges(&self) -> Vec<EdgeId> {
        (0..self.edge_count()).filter(|&e| !self.is_light(e)).collect()
    }

    pub fn matching_size(&self) -> usize {
        self.weights.iter().filter(|w| **w == Weight::Light).count()
    }

    /// Number of heavy edges in `edges`.
    pub fn heavy_cost(&self, edges: &[EdgeId]) -> usize {
        edges.iter().filter(|&&e| !self.is_light(e)).count()
    }

    /// `Σ_{e heavy} x_e`.
    pub fn fractional_cost(&self, x: &EdgeVector) -> Rational {
        self.heavy_edges().into_iter().map(|e| x.get(e).clone()).sum()
    }
}

/// One exact value in `[0, 1]` per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeVector(Vec<Rational>);

impl EdgeVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        for (edge, value) in values.iter().enumerate() {
            if !rational::in_unit_interval(value) {
                return Err(Error::ValueOutOfRange { edge, value: rational::to_pq(value) });
            }
        }
        Ok(Self(values))
    }

    pub fn constant(len: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![rational::one(); len])
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![rational::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, edge: EdgeId) -> &Rational {
        &self.0[edge]
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.0.len()).filter(|&e| !self.0[e].is_zero()).collect()
    }

    fn check_len(&self, g: &MultiGraph) -> Result<()> {
        if self.0.len() != g.edge_count() {
            return Err(Error::LengthMismatch { expected: g.edge_count(), actual: self.0.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange { edge: EdgeId, vertex: VertexId },
    SelfLoop { edge: EdgeId, vertex: VertexId },
    LightEdgesShareVertex { vertex: VertexId, first: EdgeId, second: EdgeId },
    Disconnected { components: usize },
    Bridge { edge: EdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { edge, vertex } => write!(f, "edge {edge} uses unknown vertex {vertex}"),
            Violation::SelfLoop { edge, vertex } => write!(f, "edge {edge} is a self-loop at {vertex}"),
            Violation::LightEdgesShareVertex { vertex, first, second } => {
                write!(f, "light edges {first} and {second} share vertex {vertex}")
            }
            Violation::Disconnected { components } => write!(f, "graph has {components} components"),
            Violation::Bridge { edge } => write!(f, "edge {edge} is a bridge"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn bridges(&self) -> Vec<EdgeId> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                Violation::Bridge { edge } => Some(*edge),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks raw `(u, v, weight)` triples, so malformed input (self-loops,
/// unknown vertices) is reported instead of rejected at construction.
pub fn validate_parts(n: usize, edges: &[(VertexId, VertexId, Weight)]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut clean = Vec::new();
    for (id, &(u, v, _)) in edges.iter().enumerate() {
        if let Some(&bad) = [u, v].iter().find(|&&w| w >= n) {
            violations.push(Violation::VertexOutOfRange { edge: id, vertex: bad });
        } else if u == v {
            violations.push(Violation::SelfLoop { edge: id, vertex: u });
        } else {
            clean.push(id);
        }
    }

    let mut light_at: Vec<Option<EdgeId>> = vec![None; n];
    for &id in &clean {
        let (u, v, w) = edges[id];
        if w != Weight::Light {
            continue;
        }
        for x in [u, v] {
            match light_at[x] {
                Some(first) => violations.push(Violation::LightEdgesShareVertex { vertex: x, first, second: id }),
                None => light_at[x] = Some(id),
            }
        }
    }

    // Connectivity is judged on the well-formed edges only; edge ids are kept.
    let mut mask = vec![false; edges.len()];
    let pairs: Vec<(VertexId, VertexId)> = edges
        .iter()
        .map(|&(u, v, _)| if u < n && v < n && u != v { (u, v) } else { (0, 0) })
        .collect();
    for &id in &clean {
        mask[id] = true;
    }
    let g = MultiGraph { n, edges: pairs };
    let components = component_count(&g, Some(&mask));
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    for edge in bridges(&g, Some(&mask)) {
        violations.push(Violation::Bridge { edge });
    }
    ValidationReport { violations }
}

pub fn validate_instance(inst: &MapInstance) -> ValidationReport {
    let triples: Vec<_> = inst.graph.edges.iter().zip(&inst.weights).map(|(&(u, v), &w)| (u, v, w)).collect();
    validate_parts(inst.vertex_count(), &triples)
}

fn enabled(mask: Option<&[bool]>, edge: EdgeId) -> bool {
    mask.is_none_or(|m| m[edge])
}

/// Connected components of the subgraph formed by the edges enabled in
/// `mask` (all edges when `None`). Every vertex is counted.
pub fn component_count(g: &MultiGraph, mask: Option<&[bool]>) -> usize {
    let adj = g.adjacency();
    let mut seen = vec![false; g.n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &(w, e) in &adj[u] {
                if enabled(mask, e) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Bridges of the masked subgraph, found with one iterative low-link DFS per
/// component. Parallel edges are handled by skipping only the parent edge id.
pub fn bridges(g: &MultiGraph, mask: Option<&[bool]>) -> Vec<EdgeId> {
    let adj = g.adjacency();
    let n = g.n;
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut found = Vec::new();
    let mut clock = 0;
    // (vertex, parent edge, next adjacency position)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, None, 0));
        while let Some(top) = stack.last_mut() {
            let (u, parent_edge, pos) = *top;
            if pos < adj[u].len() {
                top.2 += 1;
                let (w, e) = adj[u][pos];
                if !enabled(mask, e) || Some(e) == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        found.push(e);
                    }
                }
            }
        }
    }
    found.sort_unstable();
    found
}

/// Connected and bridgeless. Graphs on fewer than two vertices count as
/// 2-edge-connected only when they have exactly one vertex.
pub fn is_two_edge_connected(g: &MultiGraph) -> bool {
    is_two_edge_connected_on(g, None)
}

pub fn is_two_edge_connected_on(g: &MultiGraph, mask: Option<&[bool]>) -> bool {
    g.n >= 1 && component_count(g, mask) == 1 && bridges(g, mask).is_empty()
}

/// `Σ_{e ∈ δ(S)} x_e` for a proper nonempty side `S`.
pub fn cut_weight(g: &MultiGraph, side: &[VertexId], x: &EdgeVector) -> Result<Rational> {
    x.check_len(g)?;
    let mut inside = vec![false; g.n];
    for &v in side {
        if v >= g.n {
            return Err(Error::UnknownVertex(v));
        }
        inside[v] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == g.n {
        return Err(Error::ImproperCut);
    }
    Ok(crossing_sum(g, &inside, x))
}

pub(crate) fn crossing_sum(g: &MultiGraph, inside: &[bool], x: &EdgeVector) -> Rational {
    g.edges
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| inside[u] != inside[v])
        .map(|(e, _)| x.get(e).clone())
        .sum()
}
