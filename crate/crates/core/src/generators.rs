//! Graph and biclique-system constructors.
//!
//! Random constructions draw from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! seeded through `SeedableRng::seed_from_u64`, so outputs are a pure
//! function of the arguments. Integers in `0..k` are taken as
//! `next_u64() % k`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Biclique, BicliqueSystem, Graph};

/// Attempts per biclique before [`random_biclique_union`] gives up.
pub const RETRY_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("part sizes must be a nonempty list of positive integers")]
    BadSizes,
    #[error("{what} requires {requirement}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
    },
    #[error("placed only {placed} of {requested} edge-disjoint bicliques on {n} vertices; try a larger n")]
    Capacity { placed: usize, requested: usize, n: usize },
}

pub fn complete_graph(k: usize) -> Graph {
    let mut g = Graph::empty(k);
    for u in 1..=k {
        for v in u + 1..=k {
            g.insert_edge(u, v);
        }
    }
    g
}

/// Part `i` occupies the next `sizes[i]` consecutive ids.
fn parts(sizes: &[usize]) -> Result<(usize, Vec<VertexSet>), GeneratorError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(GeneratorError::BadSizes);
    }
    let n: usize = sizes.iter().sum();
    let mut next = 1;
    let parts = sizes
        .iter()
        .map(|&s| {
            let part = VertexSet::from_iter(n, next..next + s);
            next += s;
            part
        })
        .collect();
    Ok((n, parts))
}

pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GeneratorError> {
    let (n, parts) = parts(sizes)?;
    let mut g = Graph::empty(n);
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for u in a {
                for v in b {
                    g.insert_edge(u, v);
                }
            }
        }
    }
    Ok(g)
}

/// Bicliques `(V_i, V_{i+1} ∪ … ∪ V_k)` for `i < k`: a partition of the
/// complete multipartite graph on the given parts into `k - 1` bicliques.
pub fn gp_star_partition(sizes: &[usize]) -> Result<BicliqueSystem, GeneratorError> {
    let (n, parts) = parts(sizes)?;
    let mut rest = VertexSet::full(n);
    let mut bicliques = Vec::with_capacity(parts.len().saturating_sub(1));
    for part in &parts[..parts.len() - 1] {
        rest.difference_with(part);
        bicliques.push(Biclique::new(part.clone(), rest.clone()).expect("parts are disjoint and nonempty"));
    }
    Ok(BicliqueSystem::new(n, bicliques).expect("same universe"))
}

/// Binary-code cover of `K_k`: vertex `v` gets the `⌈log2 k⌉`-bit code of
/// `v - 1`, and bit position `b` contributes the biclique
/// (code bit 0, code bit 1), skipped if one side is empty.
pub fn ks_code_cover(k: usize) -> Result<BicliqueSystem, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::Domain {
            what: "code cover",
            requirement: "k >= 2",
        });
    }
    let width = usize::BITS - (k - 1).leading_zeros();
    let mut bicliques = Vec::new();
    for bit in 0..width {
        let zeros = VertexSet::from_iter(k, (1..=k).filter(|v| (v - 1) >> bit & 1 == 0));
        let ones = VertexSet::from_iter(k, (1..=k).filter(|v| (v - 1) >> bit & 1 == 1));
        if let Ok(b) = Biclique::new(zeros, ones) {
            bicliques.push(b);
        }
    }
    Ok(BicliqueSystem::new(k, bicliques).expect("same universe"))
}

fn below(rng: &mut ChaCha8Rng, k: usize) -> usize {
    (rng.next_u64() % k as u64) as usize
}

/// Exactly `m` pairwise edge-disjoint bicliques on `1..=n`.
///
/// Each attempt draws side sizes in `1..=max(1, n/4)`, fills them from a
/// random permutation, then repeatedly drops the vertex with the most
/// already-used edges to the other side (smallest id first on ties) until no
/// conflict remains. An attempt fails if a side empties.
pub fn random_biclique_union(n: usize, m: usize, seed: u64) -> Result<BicliqueSystem, GeneratorError> {
    if n < 2 || m < 1 {
        return Err(GeneratorError::Domain {
            what: "random biclique union",
            requirement: "n >= 2 and m >= 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = Graph::empty(n);
    let mut bicliques = Vec::with_capacity(m);
    let max_side = (n / 4).max(1);

    for placed in 0..m {
        let mut found = None;
        for _ in 0..RETRY_BUDGET {
            let a = 1 + below(&mut rng, max_side);
            let c = 1 + below(&mut rng, max_side);
            let mut perm: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                let j = below(&mut rng, i + 1);
                perm.swap(i, j);
            }
            let mut left = VertexSet::from_iter(n, perm[..a].iter().copied());
            let mut right = VertexSet::from_iter(n, perm[a..a + c].iter().copied());
            if shrink(&used, &mut left, &mut right) {
                found = Some(Biclique::new(left, right).expect("nonempty disjoint sides"));
                break;
            }
        }
        let Some(b) = found else {
            return Err(GeneratorError::Capacity {
                placed,
                requested: m,
                n,
            });
        };
        for (u, v) in b.edges() {
            used.insert_edge(u, v);
        }
        bicliques.push(b);
    }
    Ok(BicliqueSystem::new(n, bicliques).expect("same universe"))
}

/// Removes conflicting vertices; false if a side becomes empty.
fn shrink(used: &Graph, left: &mut VertexSet, right: &mut VertexSet) -> bool {
    loop {
        if left.is_empty() || right.is_empty() {
            return false;
        }
        let worst = left
            .iter()
            .map(|v| (used.neighbors(v).intersection(right).len(), v, true))
            .chain(
                right
                    .iter()
                    .map(|v| (used.neighbors(v).intersection(left).len(), v, false)),
            )
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        match worst {
            Some((0, _, _)) | None => return true,
            Some((_, v, true)) => {
                left.remove(v);
            }
            Some((_, v, false)) => {
                right.remove(v);
            }
        }
    }
}

/// Uniform graph with exactly `edges` edges (partial Fisher-Yates over all pairs).
pub fn gnm_graph(n: usize, edges: usize, seed: u64) -> Result<Graph, GeneratorError> {
    let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    if edges > pairs.len() {
        return Err(GeneratorError::Domain {
            what: "random graph",
            requirement: "edges <= n(n-1)/2",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..edges {
        let j = i + below(&mut rng, pairs.len() - i);
        pairs.swap(i, j);
    }
    Ok(Graph::from_edges(n, pairs[..edges].iter().copied()).expect("distinct pairs"))
}
