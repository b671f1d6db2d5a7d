//! Graphs, bicliques and biclique systems over a shared dense vertex universe.
//!
//! Vertices are the ids `1..=n`. A [`BicliqueSystem`] is an ordered list of
//! bicliques; positions in that list are 0-based in the API and printed
//! 1-based ("biclique 3") in messages, matching line order in system files.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::VertexSet;

/// Unordered edge stored as `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

#[inline]
pub fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BicliqueDefect {
    #[error("left side is empty")]
    EmptyLeft,
    #[error("right side is empty")]
    EmptyRight,
    #[error("vertex {0} lies on both sides")]
    Overlap(usize),
    #[error("vertex {vertex} outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("biclique {}: {defect}", .index + 1)]
    InvalidBiclique { index: usize, defect: BicliqueDefect },
    #[error("universe mismatch: system has {system} vertices, graph has {graph}")]
    UniverseMismatch { system: usize, graph: usize },
}

/// Simple undirected graph on `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![VertexSet::new(n); n],
            edge_count: 0,
        }
    }

    /// Rejects self-loops, out-of-range endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !g.insert_edge(u, v) {
                let (a, b) = ordered(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(g)
    }

    /// Returns false if the edge was already present.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        if self.adj[u - 1].insert(v) {
            self.adj[v - 1].insert(u);
            self.edge_count += 1;
            true
        } else {
            false
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Edges in lexicographic order of `(u, v)`, `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (1..=self.n).flat_map(move |u| self.adj[u - 1].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Induced subgraph on `s`, kept on the same universe (vertices outside `s` become isolated).
    pub fn induced(&self, s: &VertexSet) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in s {
            g.adj[u - 1] = self.adj[u - 1].intersection(s);
        }
        g.edge_count = g.adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        g
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v - 1].intersects(s))
    }

    /// First edge (lexicographically) with both endpoints in `s`.
    pub fn edge_within(&self, s: &VertexSet) -> Option<Edge> {
        s.iter()
            .find_map(|u| self.adj[u - 1].intersection(s).iter().find(|&v| v > u).map(|v| (u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "LEFT",
            Side::Right => "RIGHT",
        })
    }
}

/// Complete bipartite graph between two disjoint nonempty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biclique {
    left: VertexSet,
    right: VertexSet,
}

impl Biclique {
    pub fn new(left: VertexSet, right: VertexSet) -> Result<Self, BicliqueDefect> {
        assert_eq!(
            left.capacity(),
            right.capacity(),
            "biclique sides over different universes"
        );
        if left.is_empty() {
            return Err(BicliqueDefect::EmptyLeft);
        }
        if right.is_empty() {
            return Err(BicliqueDefect::EmptyRight);
        }
        if let Some(v) = left.intersection(&right).first() {
            return Err(BicliqueDefect::Overlap(v));
        }
        Ok(Self { left, right })
    }

    /// Builds a biclique over `1..=n` from explicit vertex lists.
    pub fn from_sides<L, R>(n: usize, left: L, right: R) -> Result<Self, BicliqueDefect>
    where
        L: IntoIterator<Item = usize>,
        R: IntoIterator<Item = usize>,
    {
        let mut l = VertexSet::new(n);
        for v in left {
            if v == 0 || v > n {
                return Err(BicliqueDefect::OutOfRange { vertex: v, n });
            }
            l.insert(v);
        }
        let mut r = VertexSet::new(n);
        for v in right {
            if v == 0 || v > n {
                return Err(BicliqueDefect::OutOfRange { vertex: v, n });
            }
            r.insert(v);
        }
        Self::new(l, r)
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn side_of(&self, v: usize) -> Option<Side> {
        if self.left.contains(v) {
            Some(Side::Left)
        } else if self.right.contains(v) {
            Some(Side::Right)
        } else {
            None
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side_of(v).is_some()
    }

    /// `|left| + |right|`.
    pub fn order(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn universe(&self) -> usize {
        self.left.capacity()
    }

    pub fn cuts(&self, s: &VertexSet) -> bool {
        cuts(self, s)
    }

    /// Generated edges, ordered `(min, max)`; not sorted globally.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.left
            .iter()
            .flat_map(move |u| self.right.iter().map(move |v| ordered(u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.left.contains(u) && self.right.contains(v)) || (self.left.contains(v) && self.right.contains(u))
    }

    /// `(left ∩ s, right ∩ s)`, or `None` when either side vanishes.
    pub fn restrict(&self, s: &VertexSet) -> Option<Biclique> {
        let left = self.left.intersection(s);
        let right = self.right.intersection(s);
        if left.is_empty() || right.is_empty() {
            None
        } else {
            Some(Biclique { left, right })
        }
    }
}

/// True iff `s` meets both sides of `b`.
pub fn cuts(b: &Biclique, s: &VertexSet) -> bool {
    b.left.intersects(s) && b.right.intersects(s)
}

/// An edge generated by two different bicliques (0-based positions, `first < second`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlapWitness {
    pub edge: Edge,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub is_partition: bool,
    /// Lexicographically first edge produced more than once.
    pub witness: Option<OverlapWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtraneousEdge {
    pub edge: Edge,
    pub biclique: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub is_cover: bool,
    /// First generated edge that is not an edge of the graph.
    pub extraneous: Option<ExtraneousEdge>,
    /// First graph edge that no biclique generates.
    pub uncovered: Option<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStats {
    /// Sum of biclique orders.
    pub weight: usize,
    /// `degrees[v - 1]` counts the bicliques containing `v`.
    pub degrees: Vec<usize>,
}

impl CoverStats {
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v - 1]
    }
}

/// Ordered list of bicliques over `1..=universe_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicliqueSystem {
    universe_n: usize,
    bicliques: Vec<Biclique>,
}

impl BicliqueSystem {
    pub fn new(universe_n: usize, bicliques: Vec<Biclique>) -> Result<Self, GraphError> {
        for (index, b) in bicliques.iter().enumerate() {
            if b.universe() != universe_n {
                let vertex = b.left.iter().chain(b.right.iter()).max().unwrap_or(0);
                return Err(GraphError::InvalidBiclique {
                    index,
                    defect: BicliqueDefect::OutOfRange { vertex, n: universe_n },
                });
            }
        }
        Ok(Self { universe_n, bicliques })
    }

    pub fn empty(universe_n: usize) -> Self {
        Self {
            universe_n,
            bicliques: Vec::new(),
        }
    }

    /// Builds and validates a system from explicit `(left, right)` vertex lists.
    pub fn from_sides<I, L, R>(universe_n: usize, sides: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (L, R)>,
        L: IntoIterator<Item = usize>,
        R: IntoIterator<Item = usize>,
    {
        let bicliques = sides
            .into_iter()
            .enumerate()
            .map(|(index, (l, r))| {
                Biclique::from_sides(universe_n, l, r).map_err(|defect| GraphError::InvalidBiclique { index, defect })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { universe_n, bicliques })
    }

    pub fn universe_n(&self) -> usize {
        self.universe_n
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    pub fn get(&self, index: usize) -> &Biclique {
        &self.bicliques[index]
    }

    /// Number of bicliques, `m`.
    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    pub fn union_graph(&self) -> Graph {
        let mut g = Graph::empty(self.universe_n);
        for b in &self.bicliques {
            for (u, v) in b.edges() {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Checks that every generated edge is produced by exactly one biclique.
    pub fn validate_partition(&self) -> PartitionReport {
        let mut producers: HashMap<Edge, (usize, Option<usize>)> = HashMap::new();
        for (index, b) in self.bicliques.iter().enumerate() {
            for e in b.edges() {
                producers
                    .entry(e)
                    .and_modify(|slot| {
                        if slot.1.is_none() {
                            slot.1 = Some(index);
                        }
                    })
                    .or_insert((index, None));
            }
        }
        let witness = producers
            .into_iter()
            .filter_map(|(edge, (first, second))| second.map(|second| OverlapWitness { edge, first, second }))
            .min_by_key(|w| w.edge);
        PartitionReport {
            is_partition: witness.is_none(),
            witness,
        }
    }

    pub fn validate_cover(&self, g: &Graph) -> Result<CoverReport, GraphError> {
        if g.n() != self.universe_n {
            return Err(GraphError::UniverseMismatch {
                system: self.universe_n,
                graph: g.n(),
            });
        }
        let generated = self.union_graph();
        let extraneous = generated.edges().find(|&(u, v)| !g.has_edge(u, v)).map(|edge| {
            let biclique = self
                .bicliques
                .iter()
                .position(|b| b.has_edge(edge.0, edge.1))
                .expect("generated edge has a producer");
            ExtraneousEdge { edge, biclique }
        });
        let uncovered = g.edges().find(|&(u, v)| !generated.has_edge(u, v));
        Ok(CoverReport {
            is_cover: extraneous.is_none() && uncovered.is_none(),
            extraneous,
            uncovered,
        })
    }

    /// Intersects every biclique with `s`, dropping those left with an empty side.
    pub fn restrict(&self, s: &VertexSet) -> BicliqueSystem {
        BicliqueSystem {
            universe_n: self.universe_n,
            bicliques: self.bicliques.iter().filter_map(|b| b.restrict(s)).collect(),
        }
    }

    pub fn cover_stats(&self) -> CoverStats {
        let mut degrees = vec![0; self.universe_n];
        for b in &self.bicliques {
            for v in b.left.iter().chain(b.right.iter()) {
                degrees[v - 1] += 1;
            }
        }
        CoverStats {
            weight: self.bicliques.iter().map(Biclique::order).sum(),
            degrees,
        }
    }

    /// Positions of the bicliques that cut `s`, ascending.
    pub fn cutting(&self, s: &VertexSet) -> Vec<usize> {
        (0..self.bicliques.len())
            .filter(|&i| cuts(&self.bicliques[i], s))
            .collect()
    }
}
