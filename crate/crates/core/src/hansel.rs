//! Independent sets from biclique covers by side deletion.
//!
//! Deleting one whole side of every biclique removes an endpoint of every
//! covered edge, so the untouched vertices are independent in the union
//! graph. A vertex in `d` bicliques survives a uniformly random choice with
//! probability `2^-d`, giving `Σ_v 2^-d(v) >= n·2^(-w/n)` expected survivors
//! for a cover of weight `w`. [`derandomized_extract`] fixes the choices one
//! biclique at a time so the conditional expectation never drops, using
//! exact dyadic arithmetic throughout.

use num_bigint::BigUint;
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::dyadic::Dyadic;
use crate::graph::{BicliqueSystem, Side};

/// Largest power-of-two denominator used for expectations.
pub const MAX_SCALE_BITS: usize = 10_000;

/// Largest `m` accepted by [`enumerate_mean_survivors`].
pub const ENUMERATION_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HanselError {
    #[error("vertex degree {degree} exceeds the exact-arithmetic budget of {limit} bits")]
    DegreeBudget { degree: usize, limit: usize },
    #[error("enumeration over 2^{m} side choices exceeds the guard m <= {limit}")]
    EnumerationGuard { m: usize, limit: usize },
    #[error("independence number {alpha} outside 1..={n}")]
    Domain { n: usize, alpha: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionResult {
    #[serde(serialize_with = "ser_set")]
    pub survivors: VertexSet,
    /// Expected survivor count of a uniformly random side choice.
    pub guarantee: Dyadic,
}

fn ser_set<S: serde::Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

/// Degrees of the vertices in `within`, checked against the scale budget.
fn degrees_within(system: &BicliqueSystem, within: &VertexSet) -> Result<(Vec<usize>, usize), HanselError> {
    let degrees = system.cover_stats().degrees;
    let max = within.iter().map(|v| degrees[v - 1]).max().unwrap_or(0);
    if max > MAX_SCALE_BITS {
        return Err(HanselError::DegreeBudget {
            degree: max,
            limit: MAX_SCALE_BITS,
        });
    }
    Ok((degrees, max))
}

/// `Σ_v 2^-d(v)` over every vertex of the universe.
pub fn expected_survivors(system: &BicliqueSystem) -> Result<Dyadic, HanselError> {
    expected_survivors_within(system, &VertexSet::full(system.universe_n()))
}

/// `Σ_{v ∈ within} 2^-d(v)`.
pub fn expected_survivors_within(system: &BicliqueSystem, within: &VertexSet) -> Result<Dyadic, HanselError> {
    let (degrees, scale) = degrees_within(system, within)?;
    let mut numerator = BigUint::zero();
    for v in within {
        numerator += BigUint::from(1u8) << (scale - degrees[v - 1]);
    }
    Ok(Dyadic::new(numerator, scale as u32))
}

/// Deletes a uniformly random side of each biclique, driven by ChaCha8 seeded
/// with `seed`. Bit 0 of each 64-bit draw picks the side: 0 deletes LEFT.
pub fn randomized_extract(system: &BicliqueSystem, seed: u64) -> Result<ExtractionResult, HanselError> {
    let guarantee = expected_survivors(system)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survivors = VertexSet::full(system.universe_n());
    for b in system.bicliques() {
        let side = if rng.next_u64() & 1 == 0 {
            Side::Left
        } else {
            Side::Right
        };
        survivors.difference_with(b.side(side));
    }
    Ok(ExtractionResult { survivors, guarantee })
}

/// One greedy decision of the derandomized extractor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerandStep {
    pub biclique: usize,
    pub before: Dyadic,
    pub if_delete_left: Dyadic,
    pub if_delete_right: Dyadic,
    pub deleted: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerandRun {
    pub result: ExtractionResult,
    pub steps: Vec<DerandStep>,
}

pub fn derandomized_extract(system: &BicliqueSystem) -> Result<ExtractionResult, HanselError> {
    Ok(derandomized_extract_within(system, &VertexSet::full(system.universe_n()))?.result)
}

/// Derandomized extraction restricted to the vertices of `within`; vertices
/// outside it are ignored entirely and never returned.
///
/// Bicliques are decided in list order. Each vertex carries the weight
/// `2^(scale - r(v))`, `r(v)` being its number of undecided bicliques, so the
/// running sum is the conditional expectation scaled by `2^scale`. Deleting a
/// side kills its vertices and doubles the weight of the opposite side, so the
/// better choice deletes the side of smaller total weight (LEFT on a tie).
pub fn derandomized_extract_within(system: &BicliqueSystem, within: &VertexSet) -> Result<DerandRun, HanselError> {
    let (degrees, scale) = degrees_within(system, within)?;
    let exp = scale as u32;
    let mut weight: Vec<BigUint> = vec![BigUint::zero(); system.universe_n()];
    for v in within {
        weight[v - 1] = BigUint::from(1u8) << (scale - degrees[v - 1]);
    }
    let mut alive = within.clone();
    let mut total: BigUint = within.iter().map(|v| weight[v - 1].clone()).sum();
    let guarantee = Dyadic::new(total.clone(), exp);
    let mut steps = Vec::with_capacity(system.len());

    for (index, b) in system.bicliques().iter().enumerate() {
        let left = b.left().intersection(&alive);
        let right = b.right().intersection(&alive);
        let left_weight: BigUint = left.iter().map(|v| &weight[v - 1]).sum();
        let right_weight: BigUint = right.iter().map(|v| &weight[v - 1]).sum();
        let if_delete_left = &total - &left_weight + &right_weight;
        let if_delete_right = &total - &right_weight + &left_weight;
        let (deleted, killed, kept, next) = if right_weight >= left_weight {
            (Side::Left, left, right, if_delete_left.clone())
        } else {
            (Side::Right, right, left, if_delete_right.clone())
        };
        steps.push(DerandStep {
            biclique: index,
            before: Dyadic::new(total.clone(), exp),
            if_delete_left: Dyadic::new(if_delete_left, exp),
            if_delete_right: Dyadic::new(if_delete_right, exp),
            deleted,
        });
        alive.difference_with(&killed);
        for v in &kept {
            weight[v - 1] <<= 1u32;
        }
        total = next;
    }

    debug_assert_eq!(BigUint::from(alive.len()) << scale, total);
    Ok(DerandRun {
        result: ExtractionResult {
            survivors: alive,
            guarantee,
        },
        steps,
    })
}

/// Mean survivor count over all `2^m` side choices, computed by enumeration.
pub fn enumerate_mean_survivors(system: &BicliqueSystem) -> Result<Dyadic, HanselError> {
    let m = system.len();
    if m > ENUMERATION_GUARD {
        return Err(HanselError::EnumerationGuard {
            m,
            limit: ENUMERATION_GUARD,
        });
    }
    let n = system.universe_n();
    let mut total: u64 = 0;
    let mut deleted = VertexSet::new(n);
    for mask in 0u64..(1u64 << m) {
        deleted.clear();
        for (i, b) in system.bicliques().iter().enumerate() {
            let side = if mask >> i & 1 == 0 { Side::Left } else { Side::Right };
            deleted.union_with(b.side(side));
        }
        total += (n - deleted.len()) as u64;
    }
    Ok(Dyadic::new(BigUint::from(total), m as u32))
}

/// Weight lower bound `n·log2(n/α)` for any cover of a graph with independence number α.
pub fn hansel_lower_bound(n: usize, alpha: usize) -> Result<f64, HanselError> {
    if alpha == 0 || alpha > n {
        return Err(HanselError::Domain { n, alpha });
    }
    Ok(n as f64 * (n as f64 / alpha as f64).log2())
}

/// `n·2^(-w/n)`, the survivor guarantee from total weight alone.
pub fn weight_guarantee(n: usize, weight: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    n as f64 * (-(weight as f64) / n as f64).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_code() -> BicliqueSystem {
        BicliqueSystem::from_sides(4, [(vec![1, 2], vec![3, 4]), (vec![1, 3], vec![2, 4])]).unwrap()
    }

    fn two_edges() -> BicliqueSystem {
        BicliqueSystem::from_sides(4, [(vec![1], vec![2]), (vec![3], vec![4])]).unwrap()
    }

    fn int(k: u32) -> Dyadic {
        Dyadic::from_integer(k)
    }

    #[test]
    fn expected_examples() {
        assert_eq!(expected_survivors(&k4_code()).unwrap(), int(1));
        assert_eq!(expected_survivors(&two_edges()).unwrap(), int(2));
        assert_eq!(expected_survivors(&BicliqueSystem::empty(3)).unwrap(), int(3));
        let k3 = BicliqueSystem::from_sides(3, [(vec![1], vec![2, 3]), (vec![2], vec![3])]).unwrap();
        // 1/2 + 1/4 + 1/4
        assert_eq!(expected_survivors(&k3).unwrap(), int(1));
    }

    #[test]
    fn k4_code_cover_side_choices_by_hand() {
        // (L1,L2) deletes {1,2,3} -> {4}; (L1,R2) -> {3}; (R1,L2) -> {2}; (R1,R2) -> {1}.
        let s = k4_code();
        let mut counts = Vec::new();
        for mask in 0..4u32 {
            let mut alive = VertexSet::full(4);
            for (i, b) in s.bicliques().iter().enumerate() {
                let side = if mask >> i & 1 == 0 { Side::Left } else { Side::Right };
                alive.difference_with(b.side(side));
            }
            counts.push(alive.len());
        }
        assert_eq!(counts, vec![1, 1, 1, 1]);
        assert_eq!(enumerate_mean_survivors(&s).unwrap(), int(1));
    }

    #[test]
    fn randomized_examples() {
        let r = randomized_extract(&BicliqueSystem::empty(5), 7).unwrap();
        assert_eq!(r.survivors.len(), 5);

        let s = BicliqueSystem::from_sides(2, [(vec![1], vec![2])]).unwrap();
        let mut seen_left = false;
        let mut seen_right = false;
        for seed in 0..64 {
            let r = randomized_extract(&s, seed).unwrap();
            match r.survivors.to_vec().as_slice() {
                [2] => seen_left = true,
                [1] => seen_right = true,
                other => panic!("unexpected survivors {other:?}"),
            }
        }
        assert!(seen_left && seen_right);

        let g = k4_code().union_graph();
        for seed in 0..32 {
            let r = randomized_extract(&k4_code(), seed).unwrap();
            assert!(g.is_independent(&r.survivors));
            assert_eq!(r, randomized_extract(&k4_code(), seed).unwrap());
        }
    }

    #[test]
    fn derandomized_examples() {
        let s = BicliqueSystem::from_sides(2, [(vec![1], vec![2])]).unwrap();
        let r = derandomized_extract(&s).unwrap();
        assert_eq!(r.survivors.to_vec(), vec![2]);
        assert_eq!(r.guarantee, int(1));

        let r = derandomized_extract(&k4_code()).unwrap();
        assert_eq!(r.survivors.len(), 1);

        let r = derandomized_extract(&two_edges()).unwrap();
        assert!(r.survivors.len() >= 2);
        assert!(two_edges().union_graph().is_independent(&r.survivors));
    }

    #[test]
    fn derandomized_steps_never_lose() {
        let run = derandomized_extract_within(&k4_code(), &VertexSet::full(4)).unwrap();
        for st in &run.steps {
            assert!(st.if_delete_left.clone().max(st.if_delete_right.clone()) >= st.before);
        }
    }

    #[test]
    fn within_ignores_outside_vertices() {
        let s = k4_code().restrict(&VertexSet::from_iter(4, [1, 4]));
        let within = VertexSet::from_iter(4, [1, 4]);
        assert_eq!(expected_survivors_within(&s, &within).unwrap(), Dyadic::pow2_neg(1));
        let run = derandomized_extract_within(&s, &within).unwrap();
        assert_eq!(run.result.survivors.to_vec(), vec![4]);
    }

    #[test]
    fn enumeration_guard() {
        let sides: Vec<_> = (0..21).map(|_| (vec![1], vec![2])).collect();
        let s = BicliqueSystem::from_sides(2, sides).unwrap();
        assert_eq!(
            enumerate_mean_survivors(&s),
            Err(HanselError::EnumerationGuard { m: 21, limit: 20 })
        );
        let empty = BicliqueSystem::empty(3);
        assert_eq!(enumerate_mean_survivors(&empty).unwrap(), int(3));
        let single = BicliqueSystem::from_sides(2, [(vec![1], vec![2])]).unwrap();
        assert_eq!(enumerate_mean_survivors(&single).unwrap(), int(1));
    }

    #[test]
    fn lower_bound_values() {
        assert!((hansel_lower_bound(4, 1).unwrap() - 8.0).abs() < 1e-12);
        assert!((hansel_lower_bound(8, 2).unwrap() - 16.0).abs() < 1e-12);
        assert_eq!(hansel_lower_bound(5, 5).unwrap(), 0.0);
        assert_eq!(hansel_lower_bound(5, 0), Err(HanselError::Domain { n: 5, alpha: 0 }));
        assert_eq!(hansel_lower_bound(5, 6), Err(HanselError::Domain { n: 5, alpha: 6 }));
    }
}
