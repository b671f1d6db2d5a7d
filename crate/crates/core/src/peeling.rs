//! Repeated removal of Hansel independent sets from a covered graph.
//!
//! Starting from `G_0 = g`, while the current graph has at least `k`
//! vertices, the input cover is restricted to it and a derandomized
//! extraction removes an independent set of size at least
//! `n_i·2^(-w_i/n_i)`, where `w_i` is the restricted cover's weight. The
//! trace records every round together with `β = max_i 2^(w_i/n_i)`, the
//! round `p` attaining it, and `t`, the index of the last graph with at
//! least `k` vertices.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::dyadic::Dyadic;
use crate::graph::{BicliqueSystem, CoverReport, Graph, GraphError};
use crate::hansel::{derandomized_extract_within, HanselError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeelError {
    #[error("the system does not cover the graph: {0:?}")]
    NotCover(CoverReport),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hansel(#[from] HanselError),
    #[error("threshold k must be at least 1")]
    ZeroThreshold,
    #[error("trace has no rounds although n = {n} >= k = {k}")]
    Inconsistent { n: usize, k: usize },
    #[error("bound requires k >= 5, got {0}")]
    BoundDomain(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelRound {
    /// Vertex count of `G_i`.
    pub n: usize,
    /// Weight of the input cover restricted to `G_i`.
    pub weight: usize,
    #[serde(serialize_with = "ser_set")]
    pub extracted: VertexSet,
    /// `Σ_{v ∈ G_i} 2^-d_i(v)`, which the extraction meets or beats.
    pub guarantee: Dyadic,
}

impl PeelRound {
    /// `2^(w_i/n_i)`.
    pub fn growth(&self) -> f64 {
        (self.weight as f64 / self.n as f64).exp2()
    }
}

fn ser_set<S: serde::Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelTrace {
    pub k: usize,
    pub rounds: Vec<PeelRound>,
    /// `max_i 2^(w_i/n_i)`; `None` without rounds.
    pub beta: Option<f64>,
    /// First round attaining `beta`.
    pub p: Option<usize>,
    /// Index of the last graph with at least `k` vertices.
    pub t: Option<usize>,
    #[serde(serialize_with = "ser_set")]
    pub final_vertices: VertexSet,
}

impl PeelTrace {
    /// Vertex count after round `i`.
    pub fn n_after(&self, i: usize) -> usize {
        self.rounds.get(i + 1).map_or(self.final_vertices.len(), |r| r.n)
    }
}

/// Peels `g` using the cover `system` until fewer than `k` vertices remain.
pub fn peel(g: &Graph, system: &BicliqueSystem, k: usize) -> Result<PeelTrace, PeelError> {
    let report = system.validate_cover(g)?;
    if !report.is_cover {
        return Err(PeelError::NotCover(report));
    }
    if k == 0 {
        return Err(PeelError::ZeroThreshold);
    }
    let mut alive = g.vertices();
    let mut rounds = Vec::new();
    while alive.len() >= k {
        let restricted = system.restrict(&alive);
        let weight = restricted.cover_stats().weight;
        let run = derandomized_extract_within(&restricted, &alive)?;
        let extracted = run.result.survivors;
        debug_assert!(!extracted.is_empty(), "a positive expectation leaves a survivor");
        rounds.push(PeelRound {
            n: alive.len(),
            weight,
            guarantee: run.result.guarantee,
            extracted: extracted.clone(),
        });
        alive.difference_with(&extracted);
    }

    let mut beta: Option<f64> = None;
    let mut p = None;
    for (i, r) in rounds.iter().enumerate() {
        let growth = r.growth();
        if beta.is_none_or(|b| growth > b) {
            beta = Some(growth);
            p = Some(i);
        }
    }
    Ok(PeelTrace {
        k,
        t: rounds.len().checked_sub(1),
        rounds,
        beta,
        p,
        final_vertices: alive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofCase {
    /// `t >= k / log2 k`: some round had a heavy cover.
    ManyRounds,
    /// `t < k / log2 k`: the leftover graph carries the weight.
    FewRounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundCheck {
    pub round: usize,
    pub n_before: usize,
    pub n_after: usize,
    /// `n_i·(1 - 2^(-w_i/n_i))`.
    pub shrink_bound: f64,
    pub holds: bool,
    /// `n_{i+1} <= n_i - ⌈guarantee_i⌉`, checked exactly.
    pub exact_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceAnalysis {
    pub k: usize,
    pub n: usize,
    pub beta: f64,
    pub p: usize,
    pub t: usize,
    /// `log2(n/k)`.
    pub log_ratio: f64,
    /// `β·log2(n/k)`.
    pub t_bound: f64,
    pub t_bound_holds: bool,
    pub case: ProofCase,
    /// `k / log2 k` (infinite for `k = 1`).
    pub case_threshold: f64,
    /// `2^(w_p/n_p)·log2(n/k)`.
    pub case_quantity: f64,
    pub theorem3_bound: Option<f64>,
    /// Weight of the full input cover.
    pub total_weight: usize,
    pub final_size: usize,
    pub rounds: Vec<RoundCheck>,
}

const SLACK: f64 = 1e-9;

pub fn analyze_trace(trace: &PeelTrace, k: usize, n: usize) -> Result<TraceAnalysis, PeelError> {
    let (Some(beta), Some(p), Some(t)) = (trace.beta, trace.p, trace.t) else {
        if n >= k {
            return Err(PeelError::Inconsistent { n, k });
        }
        return Ok(TraceAnalysis {
            k,
            n,
            beta: 1.0,
            p: 0,
            t: 0,
            log_ratio: 0.0,
            t_bound: 0.0,
            t_bound_holds: true,
            case: ProofCase::FewRounds,
            case_threshold: case_threshold(k),
            case_quantity: 0.0,
            theorem3_bound: theorem3_bound(k as u64).ok(),
            total_weight: 0,
            final_size: trace.final_vertices.len(),
            rounds: Vec::new(),
        });
    };
    let log_ratio = (n as f64 / k as f64).log2();
    let t_bound = beta * log_ratio;
    let threshold = case_threshold(k);
    let rounds = trace
        .rounds
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let n_after = trace.n_after(i);
            let shrink_bound = r.n as f64 * (1.0 - (-(r.weight as f64) / r.n as f64).exp2());
            let needed = r.guarantee.ceil();
            RoundCheck {
                round: i,
                n_before: r.n,
                n_after,
                shrink_bound,
                holds: n_after as f64 <= shrink_bound + SLACK,
                exact_holds: num_bigint::BigUint::from(r.n) >= &needed + n_after,
            }
        })
        .collect();
    Ok(TraceAnalysis {
        k,
        n,
        beta,
        p,
        t,
        log_ratio,
        t_bound,
        t_bound_holds: t as f64 <= t_bound + SLACK,
        case: if (t as f64) >= threshold {
            ProofCase::ManyRounds
        } else {
            ProofCase::FewRounds
        },
        case_threshold: threshold,
        case_quantity: trace.rounds[p].growth() * log_ratio,
        theorem3_bound: theorem3_bound(k as u64).ok(),
        total_weight: trace.rounds[0].weight,
        final_size: trace.final_vertices.len(),
        rounds,
    })
}

fn case_threshold(k: usize) -> f64 {
    if k <= 1 {
        f64::INFINITY
    } else {
        k as f64 / (k as f64).log2()
    }
}

/// `k·log2 k − k·log2 log2 k − k·log2 log2 log2 k`, defined for `k >= 5`.
pub fn theorem3_bound(k: u64) -> Result<f64, PeelError> {
    if k < 5 {
        return Err(PeelError::BoundDomain(k));
    }
    let kf = k as f64;
    let l1 = kf.log2();
    let l2 = l1.log2();
    let l3 = l2.log2();
    Ok(kf * l1 - kf * l2 - kf * l3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn k4_code() -> BicliqueSystem {
        BicliqueSystem::from_sides(4, [(vec![1, 2], vec![3, 4]), (vec![1, 3], vec![2, 4])]).unwrap()
    }

    #[test]
    fn k4_single_round() {
        let tr = peel(&k4(), &k4_code(), 4).unwrap();
        assert_eq!(tr.rounds.len(), 1);
        assert_eq!(tr.rounds[0].n, 4);
        assert_eq!(tr.rounds[0].weight, 8);
        assert_eq!(tr.rounds[0].extracted.len(), 1);
        assert_eq!(tr.rounds[0].guarantee, Dyadic::from_integer(1u32));
        assert_eq!(tr.t, Some(0));
        assert_eq!(tr.final_vertices.len(), 3);

        let a = analyze_trace(&tr, 4, 4).unwrap();
        assert_eq!(a.t, 0);
        assert_eq!(a.log_ratio, 0.0);
        assert_eq!(a.t_bound, 0.0);
        assert!(a.t_bound_holds);
        assert_eq!(a.case, ProofCase::FewRounds);
        assert_eq!(a.case_threshold, 2.0);
        assert_eq!(a.total_weight, 8);
        assert!(a.rounds.iter().all(|r| r.holds && r.exact_holds));
    }

    #[test]
    fn edgeless_graph_empties_in_one_round() {
        let tr = peel(&Graph::empty(5), &BicliqueSystem::empty(5), 3).unwrap();
        assert_eq!(tr.rounds.len(), 1);
        assert_eq!(tr.rounds[0].extracted.len(), 5);
        assert!(tr.final_vertices.is_empty());
        assert_eq!(tr.t, Some(0));
        assert_eq!(tr.beta, Some(1.0));
    }

    #[test]
    fn k3_star_cover() {
        let s = BicliqueSystem::from_sides(3, [(vec![1], vec![2, 3]), (vec![2], vec![3])]).unwrap();
        let tr = peel(&s.union_graph(), &s, 3).unwrap();
        assert_eq!(tr.rounds[0].n, 3);
        assert_eq!(tr.rounds[0].weight, 5);
        assert_eq!(tr.rounds[0].guarantee, Dyadic::from_integer(1u32));
        assert!(!tr.rounds[0].extracted.is_empty());
        assert!(tr.final_vertices.len() < 3);
    }

    #[test]
    fn threshold_above_n_gives_no_rounds() {
        let tr = peel(&k4(), &k4_code(), 9).unwrap();
        assert!(tr.rounds.is_empty());
        assert_eq!(tr.final_vertices.len(), 4);
        assert_eq!(tr.t, None);
        assert!(analyze_trace(&tr, 9, 4).is_ok());
        assert_eq!(analyze_trace(&tr, 4, 4), Err(PeelError::Inconsistent { n: 4, k: 4 }));
    }

    #[test]
    fn rejects_bad_inputs() {
        let partial = BicliqueSystem::from_sides(4, [(vec![1, 2], vec![3, 4])]).unwrap();
        assert!(matches!(peel(&k4(), &partial, 2), Err(PeelError::NotCover(_))));
        assert_eq!(peel(&k4(), &k4_code(), 0), Err(PeelError::ZeroThreshold));
        assert!(matches!(
            peel(&Graph::empty(3), &k4_code(), 1),
            Err(PeelError::Graph(_))
        ));
    }

    #[test]
    fn theorem3_values() {
        assert!((theorem3_bound(16).unwrap() - 16.0).abs() < 1e-9);
        // Hand evaluation with log2 5 = 2.321928, log2 of that = 1.215323, again 0.281321.
        assert!((theorem3_bound(5).unwrap() - 4.126_42).abs() < 1e-3);
        assert!(theorem3_bound(4).is_err());
    }
}
