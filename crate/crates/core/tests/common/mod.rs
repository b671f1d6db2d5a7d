//! Brute-force reference oracles for tiny graphs. They share no code with the
//! library's solvers: plain subset enumeration and DP over edge masks.

#![allow(dead_code)]

use biclique_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<u32> {
    let n = g.n();
    assert!(n <= 24, "brute force is for tiny graphs");
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u - 1] |= 1 << (v - 1);
        adj[v - 1] |= 1 << (u - 1);
    }
    adj
}

pub fn brute_alpha(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s & (1 << v) == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_chi(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = adjacency(g);
    fn fill(v: usize, k: usize, colors: &mut Vec<usize>, adj: &[u32]) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| adj[v] & (1 << u) == 0 || colors[u] != c) {
                colors[v] = c;
                if fill(v + 1, k, colors, adj) {
                    return true;
                }
            }
        }
        false
    }
    (1..=n).find(|&k| fill(0, k, &mut vec![0; n], &adj)).unwrap()
}

/// Every biclique subgraph of `g`, as (left mask, right mask) with the
/// lowest vertex on the left so each appears once.
pub fn all_bicliques(g: &Graph) -> Vec<(u32, u32)> {
    let n = g.n();
    let adj = adjacency(g);
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let (mut l, mut r, mut c) = (0u32, 0u32, code);
        for v in 0..n {
            match c % 3 {
                1 => l |= 1 << v,
                2 => r |= 1 << v,
                _ => {}
            }
            c /= 3;
        }
        if l == 0 || r == 0 || l.trailing_zeros() > r.trailing_zeros() {
            continue;
        }
        if (0..n).all(|v| l & (1 << v) == 0 || adj[v] & r == r) {
            out.push((l, r));
        }
    }
    out
}

fn edge_masks(g: &Graph) -> Vec<(u32, u32, usize)> {
    let edges: Vec<_> = g.edges().collect();
    all_bicliques(g)
        .into_iter()
        .map(|(l, r)| {
            let mut m = 0u32;
            for (i, &(u, v)) in edges.iter().enumerate() {
                let (bu, bv) = (1 << (u - 1), 1 << (v - 1));
                if (l & bu != 0 && r & bv != 0) || (l & bv != 0 && r & bu != 0) {
                    m |= 1 << i;
                }
            }
            (m, l, (l.count_ones() + r.count_ones()) as usize)
        })
        .collect()
}

pub fn brute_min_partition(g: &Graph) -> usize {
    let e = g.edge_count();
    assert!(e <= 16);
    let bicliques = edge_masks(g);
    let full = (1u32 << e) - 1;
    let mut dp = vec![usize::MAX; 1 << e];
    dp[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        dp[mask as usize] = bicliques
            .iter()
            .filter(|&&(b, _, _)| b & low != 0 && b & !mask == 0)
            .map(|&(b, _, _)| dp[(mask & !b) as usize].saturating_add(1))
            .min()
            .unwrap_or(usize::MAX);
    }
    dp[full as usize]
}

pub fn brute_min_cover_weight(g: &Graph) -> usize {
    let e = g.edge_count();
    assert!(e <= 16);
    let bicliques = edge_masks(g);
    let full = (1u32 << e) - 1;
    let mut dp = vec![usize::MAX; 1 << e];
    dp[0] = 0;
    for mask in 0..=full {
        let here = dp[mask as usize];
        if here == usize::MAX {
            continue;
        }
        for &(b, _, w) in &bicliques {
            let next = (mask | b) as usize;
            dp[next] = dp[next].min(here + w);
        }
    }
    dp[full as usize]
}

/// `⌈log2 x⌉` for `x >= 1`.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}
