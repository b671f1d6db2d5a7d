//! Exact solvers for desk-scale instances: chromatic number, independence
//! number, minimum biclique partition size and minimum biclique cover weight.
//!
//! All searches are deterministic depth-first branch-and-bound over `u64`
//! vertex masks. Size guards are checked before searching; the time budget
//! is polled during the search and reported as
//! [`OracleError::BudgetExceeded`], never as a wrong answer.
//!
//! Partition and cover searches branch on the lexicographically first edge
//! not yet handled. Some biclique of any optimal solution contains that edge,
//! so enumerating every biclique through it (within unused edges for
//! partitions, within all edges for covers) loses nothing.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Biclique, BicliqueSystem, Graph};

const MASK_VERTICES: usize = 64;
const POLL_EVERY: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices_coloring: usize,
    pub max_edges_partition: usize,
    pub max_edges_cover_weight: usize,
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices_coloring: 32,
            max_edges_partition: 15,
            max_edges_cover_weight: 10,
            time_budget: Duration::from_secs(300),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{quantity} = {actual} exceeds the guard of {limit}")]
    OverGuard {
        quantity: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(Duration),
}

struct Budget {
    start: Instant,
    limit: Duration,
    nodes: u64,
}

impl Budget {
    fn new(limit: Duration) -> Self {
        Budget {
            start: Instant::now(),
            limit,
            nodes: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes % POLL_EVERY == 1 && self.start.elapsed() > self.limit {
            return Err(OracleError::BudgetExceeded(self.limit));
        }
        Ok(())
    }
}

fn guard(quantity: &'static str, actual: usize, limit: usize) -> Result<(), OracleError> {
    if actual > limit {
        Err(OracleError::OverGuard {
            quantity,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}

/// Adjacency masks indexed 0-based.
fn masks(g: &Graph) -> Vec<u64> {
    (1..=g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << (w - 1)))
        .collect()
}

#[inline]
fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn max_clique(adj: &[u64], budget: &mut Budget) -> Result<usize, OracleError> {
    fn expand(adj: &[u64], size: usize, cand: u64, best: &mut usize, budget: &mut Budget) -> Result<(), OracleError> {
        budget.tick()?;
        if cand == 0 {
            *best = (*best).max(size);
            return Ok(());
        }
        if size + cand.count_ones() as usize <= *best {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        expand(adj, size + 1, cand & adj[v], best, budget)?;
        expand(adj, size, cand & !(1 << v), best, budget)
    }
    let full = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    let mut best = 0;
    expand(adj, 0, full, &mut best, budget)?;
    Ok(best)
}

/// Uncolored vertex with the most distinct neighbor colors, then highest
/// degree, then smallest index.
fn dsatur_pick(adj: &[u64], colors: &[Option<usize>]) -> Option<(usize, u64)> {
    let mut best: Option<(usize, u64, u32, u32)> = None;
    for v in 0..adj.len() {
        if colors[v].is_some() {
            continue;
        }
        let used = bits(adj[v]).filter_map(|w| colors[w]).fold(0u64, |m, c| m | 1 << c);
        let sat = used.count_ones();
        let deg = adj[v].count_ones();
        if best.is_none_or(|(_, _, bs, bd)| (sat, deg) > (bs, bd)) {
            best = Some((v, used, sat, deg));
        }
    }
    best.map(|(v, used, _, _)| (v, used))
}

fn greedy_colors(adj: &[u64]) -> usize {
    let mut colors = vec![None; adj.len()];
    let mut count = 0;
    while let Some((v, used)) = dsatur_pick(adj, &colors) {
        let c = (!used).trailing_zeros() as usize;
        colors[v] = Some(c);
        count = count.max(c + 1);
    }
    count
}

fn colorable(adj: &[u64], k: usize, budget: &mut Budget) -> Result<bool, OracleError> {
    fn rec(
        adj: &[u64],
        k: usize,
        colors: &mut [Option<usize>],
        used: usize,
        budget: &mut Budget,
    ) -> Result<bool, OracleError> {
        budget.tick()?;
        let Some((v, taken)) = dsatur_pick(adj, colors) else {
            return Ok(true);
        };
        // A fresh color is interchangeable with any other fresh one.
        for c in 0..k.min(used + 1) {
            if taken >> c & 1 == 1 {
                continue;
            }
            colors[v] = Some(c);
            if rec(adj, k, colors, used.max(c + 1), budget)? {
                return Ok(true);
            }
        }
        colors[v] = None;
        Ok(false)
    }
    let mut colors = vec![None; adj.len()];
    rec(adj, k, &mut colors, 0, budget)
}

fn coloring_guard(g: &Graph, limits: &OracleLimits) -> Result<(), OracleError> {
    guard("vertices", g.n(), limits.max_vertices_coloring.min(MASK_VERTICES))
}

/// Exact chromatic number; `0` for the empty graph.
pub fn chromatic_number(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    coloring_guard(g, limits)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let adj = masks(g);
    let mut budget = Budget::new(limits.time_budget);
    let lower = max_clique(&adj, &mut budget)?;
    let upper = greedy_colors(&adj);
    for k in lower..upper {
        if colorable(&adj, k, &mut budget)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Exact independence number.
pub fn independence_number(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    coloring_guard(g, limits)?;
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let complement: Vec<u64> = masks(g)
        .iter()
        .enumerate()
        .map(|(v, &m)| full & !m & !(1 << v))
        .collect();
    let mut budget = Budget::new(limits.time_budget);
    max_clique(&complement, &mut budget)
}

/// Graph restricted to non-isolated vertices, relabelled densely.
struct Compact {
    /// `original[i]` is the vertex id of compact index `i`.
    original: Vec<usize>,
    adj: Vec<u64>,
    /// Edges `(a, b)`, `a < b`, in lexicographic order of compact indices.
    edges: Vec<(usize, usize)>,
}

impl Compact {
    fn new(g: &Graph) -> Self {
        let original: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) > 0).collect();
        let mut index = vec![usize::MAX; g.n() + 1];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << index[w]))
            .collect();
        let edges = g.edges().map(|(u, v)| (index[u], index[v])).collect();
        Compact { original, adj, edges }
    }

    fn edge_bit(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// Bitmask over `edges` generated by the biclique `(left, right)`.
    fn edge_mask(&self, left: u64, right: u64) -> u64 {
        let mut m = 0u64;
        for a in bits(left) {
            for b in bits(right) {
                m |= 1 << self.edge_bit(a, b).expect("biclique edges are graph edges");
            }
        }
        m
    }

    fn biclique(&self, n: usize, left: u64, right: u64) -> Biclique {
        let side = |m: u64| VertexSet::from_iter(n, bits(m).map(|i| self.original[i]));
        let (l, r) = (side(left), side(right));
        // Left holds the smallest vertex.
        let (l, r) = if l.first() < r.first() { (l, r) } else { (r, l) };
        Biclique::new(l, r).expect("search only builds proper bicliques")
    }
}

/// All `(left, right)` with `u ∈ left`, `v ∈ right` and every left-right pair
/// adjacent in `adj`. Sides as compact-index masks.
fn bicliques_through(adj: &[u64], u: usize, v: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let right_pool = adj[u] & !(1 << v);
    let pool: Vec<usize> = bits(right_pool).collect();
    for sub in 0u64..(1u64 << pool.len()) {
        let right = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .fold(1u64 << v, |m, (_, &w)| m | 1 << w);
        let common = bits(right).fold(u64::MAX, |m, w| m & adj[w]);
        debug_assert!(common >> u & 1 == 1);
        let left_pool: Vec<usize> = bits(common & !(1 << u)).collect();
        for lsub in 0u64..(1u64 << left_pool.len()) {
            let left = left_pool
                .iter()
                .enumerate()
                .filter(|(i, _)| lsub >> i & 1 == 1)
                .fold(1u64 << u, |m, (_, &w)| m | 1 << w);
            out.push((left, right));
        }
    }
    // Bigger bicliques first so good incumbents appear early.
    out.sort_by_key(|&(l, r)| (std::cmp::Reverse(l.count_ones() * r.count_ones()), l, r));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub value: usize,
    pub witness: BicliqueSystem,
}

/// Minimum number of bicliques partitioning the edge set, with a witness.
pub fn min_biclique_partition(g: &Graph, limits: &OracleLimits) -> Result<OracleSolution, OracleError> {
    guard("edges", g.edge_count(), limits.max_edges_partition.min(MASK_VERTICES))?;
    let c = Compact::new(g);
    let all_edges = if c.edges.len() == 64 {
        u64::MAX
    } else {
        (1u64 << c.edges.len()) - 1
    };

    struct Search<'a> {
        c: &'a Compact,
        budget: Budget,
        best: Vec<(u64, u64)>,
        chosen: Vec<(u64, u64)>,
    }

    impl Search<'_> {
        fn rec(&mut self, unused: u64) -> Result<(), OracleError> {
            self.budget.tick()?;
            if unused == 0 {
                if self.chosen.len() < self.best.len() {
                    self.best = self.chosen.clone();
                }
                return Ok(());
            }
            // Each further biclique covers at most ⌊r²/4⌋ edges on r touched vertices.
            let touched = bits(unused).fold(0u64, |m, e| {
                let (a, b) = self.c.edges[e];
                m | 1 << a | 1 << b
            });
            let r = touched.count_ones() as usize;
            let per = (r * r / 4).max(1);
            let need = (unused.count_ones() as usize).div_ceil(per);
            if self.chosen.len() + need >= self.best.len() {
                return Ok(());
            }
            let (u, v) = self.c.edges[unused.trailing_zeros() as usize];
            let adj_unused: Vec<u64> = (0..self.c.adj.len())
                .map(|a| {
                    bits(self.c.adj[a])
                        .filter(|&b| unused >> self.c.edge_bit(a, b).unwrap() & 1 == 1)
                        .fold(0u64, |m, b| m | 1 << b)
                })
                .collect();
            for (left, right) in bicliques_through(&adj_unused, u, v) {
                let covered = self.c.edge_mask(left, right);
                self.chosen.push((left, right));
                self.rec(unused & !covered)?;
                self.chosen.pop();
            }
            Ok(())
        }
    }

    let singles: Vec<(u64, u64)> = c.edges.iter().map(|&(a, b)| (1u64 << a, 1u64 << b)).collect();
    let mut search = Search {
        c: &c,
        budget: Budget::new(limits.time_budget),
        // One more than the single-edge partition so the search always records a witness.
        best: singles.iter().copied().chain(std::iter::once((0, 0))).collect(),
        chosen: Vec::new(),
    };
    search.rec(all_edges)?;
    let best = search.best;
    let witness = BicliqueSystem::new(g.n(), best.iter().map(|&(l, r)| c.biclique(g.n(), l, r)).collect())
        .expect("witness over the graph's universe");
    Ok(OracleSolution {
        value: best.len(),
        witness,
    })
}

/// Minimum total order of a biclique cover of the edge set, with a witness.
pub fn min_cover_weight(g: &Graph, limits: &OracleLimits) -> Result<OracleSolution, OracleError> {
    guard(
        "edges",
        g.edge_count(),
        limits.max_edges_cover_weight.min(MASK_VERTICES),
    )?;
    let c = Compact::new(g);
    let all_edges = if c.edges.len() == 64 {
        u64::MAX
    } else {
        (1u64 << c.edges.len()) - 1
    };

    struct Search {
        budget: Budget,
        best_weight: usize,
        best: Vec<(u64, u64)>,
        chosen: Vec<(u64, u64)>,
        /// Candidates through each edge, computed once.
        through: Vec<Vec<(u64, u64, u64, usize)>>,
    }

    impl Search {
        fn rec(&mut self, uncovered: u64, weight: usize) -> Result<(), OracleError> {
            self.budget.tick()?;
            if uncovered == 0 {
                if weight < self.best_weight {
                    self.best_weight = weight;
                    self.best = self.chosen.clone();
                }
                return Ok(());
            }
            let e = uncovered.trailing_zeros() as usize;
            for i in 0..self.through[e].len() {
                let (left, right, covered, order) = self.through[e][i];
                let rest = uncovered & !covered;
                let floor = weight + order + if rest == 0 { 0 } else { 2 };
                if floor >= self.best_weight {
                    continue;
                }
                self.chosen.push((left, right));
                self.rec(rest, weight + order)?;
                self.chosen.pop();
            }
            Ok(())
        }
    }

    let through = c
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut cands: Vec<_> = bicliques_through(&c.adj, u, v)
                .into_iter()
                .map(|(l, r)| (l, r, c.edge_mask(l, r), (l.count_ones() + r.count_ones()) as usize))
                .collect();
            // Cheapest per covered edge first.
            cands.sort_by(|a, b| {
                let lhs = a.3 * b.2.count_ones() as usize;
                let rhs = b.3 * a.2.count_ones() as usize;
                lhs.cmp(&rhs).then((a.0, a.1).cmp(&(b.0, b.1)))
            });
            cands
        })
        .collect();
    let singles: Vec<(u64, u64)> = c.edges.iter().map(|&(a, b)| (1u64 << a, 1u64 << b)).collect();
    let mut search = Search {
        budget: Budget::new(limits.time_budget),
        best_weight: 2 * singles.len() + 1,
        best: singles,
        chosen: Vec::new(),
        through,
    };
    search.rec(all_edges, 0)?;
    let best = search.best;
    let value = best
        .iter()
        .map(|&(l, r)| (l.count_ones() + r.count_ones()) as usize)
        .sum();
    let witness = BicliqueSystem::new(g.n(), best.iter().map(|&(l, r)| c.biclique(g.n(), l, r)).collect())
        .expect("witness over the graph's universe");
    Ok(OracleSolution { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize) -> Graph {
        Graph::from_edges(k, (1..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..=n).map(|v| (v, v % n + 1))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i + 1, (i + 1) % 5 + 1));
            e.push((i + 1, i + 6));
            e.push((i + 6, (i + 2) % 5 + 6));
        }
        Graph::from_edges(10, e).unwrap()
    }

    /// Smallest k admitting a proper coloring, by trying all k^n assignments.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let color = |v: usize| code / k.pow(v as u32 - 1) % k;
                if g.edges().all(|(u, v)| color(u) != color(v)) {
                    return k;
                }
            }
        }
        0
    }

    fn brute_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&s| g.edges().all(|(u, v)| s >> (u - 1) & 1 == 0 || s >> (v - 1) & 1 == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn chromatic_examples() {
        let lim = OracleLimits::default();
        assert_eq!(chromatic_number(&complete(4), &lim).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(5), &lim).unwrap(), 3);
        assert_eq!(brute_chromatic(&petersen()), 3);
        assert_eq!(chromatic_number(&petersen(), &lim).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(3), &lim).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0), &lim).unwrap(), 0);
    }

    #[test]
    fn independence_examples() {
        let lim = OracleLimits::default();
        assert_eq!(independence_number(&complete(6), &lim).unwrap(), 1);
        assert_eq!(independence_number(&cycle(5), &lim).unwrap(), 2);
        assert_eq!(brute_alpha(&petersen()), 4);
        assert_eq!(independence_number(&petersen(), &lim).unwrap(), 4);
    }

    #[test]
    fn guards_and_budget() {
        let lim = OracleLimits::default();
        assert_eq!(
            chromatic_number(&Graph::empty(33), &lim),
            Err(OracleError::OverGuard {
                quantity: "vertices",
                limit: 32,
                actual: 33
            })
        );
        assert_eq!(
            min_biclique_partition(&complete(7), &lim),
            Err(OracleError::OverGuard {
                quantity: "edges",
                limit: 15,
                actual: 21
            })
        );
        assert_eq!(
            min_cover_weight(&complete(6), &lim),
            Err(OracleError::OverGuard {
                quantity: "edges",
                limit: 10,
                actual: 15
            })
        );
        let tight = OracleLimits {
            time_budget: Duration::ZERO,
            max_vertices_coloring: 40,
            ..OracleLimits::default()
        };
        assert_eq!(
            independence_number(&Graph::empty(30), &tight),
            Err(OracleError::BudgetExceeded(Duration::ZERO))
        );
    }

    #[test]
    fn partition_examples() {
        let lim = OracleLimits::default();
        let s = min_biclique_partition(&complete(3), &lim).unwrap();
        assert_eq!(s.value, 2);
        assert!(s.witness.validate_partition().is_partition);
        assert_eq!(min_biclique_partition(&complete(4), &lim).unwrap().value, 3);

        let path = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let s = min_biclique_partition(&path, &lim).unwrap();
        assert_eq!(s.value, 1);
        assert_eq!(
            s.witness,
            BicliqueSystem::from_sides(3, [(vec![1, 3], vec![2])]).unwrap()
        );
        assert_eq!(min_biclique_partition(&Graph::empty(4), &lim).unwrap().value, 0);
    }

    #[test]
    fn cover_weight_examples() {
        let lim = OracleLimits::default();
        assert_eq!(min_cover_weight(&complete(2), &lim).unwrap().value, 2);
        let s = min_cover_weight(&complete(3), &lim).unwrap();
        assert_eq!(s.value, 5);
        assert!(s.witness.validate_cover(&complete(3)).unwrap().is_cover);
        let s = min_cover_weight(&complete(4), &lim).unwrap();
        assert_eq!(s.value, 8);
        assert_eq!(s.witness.cover_stats().weight, 8);
    }
}
