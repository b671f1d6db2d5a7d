//! Staged coloring of a graph given as an edge-disjoint union of bicliques.
//!
//! Every vertex starts in one refinement group whose `s_set` is the whole
//! universe. At each stage a group looks at the bicliques that cut its
//! `s_set` (its *cutting list*). For each such biclique one side is declared
//! canonical: the side whose intersection with `s_set` is cut by strictly
//! fewer bicliques of the list, LEFT on a tie. A member extends its color
//! sequence with the list rank of the smallest biclique whose canonical side
//! contains it, and its `s_set` shrinks to that side. Members with no such
//! biclique stop. Because the bicliques are edge-disjoint, no biclique other
//! than `j` can cut both sides of `j` inside `s_set`, so the canonical side is
//! cut by at most half of the list and the list halves every stage.
//!
//! For an edge `uv` of biclique `p` with `u`, `v` in one group, exactly one of
//! them lies on `p`'s canonical side, so the two can never stop with the same
//! sequence. Vertices that never extend share the empty sequence `⊥`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{cuts, BicliqueSystem, Edge, Graph, OverlapWitness, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(
        "not an edge-disjoint system: edge {{{}, {}}} lies in bicliques {} and {}",
        .0.edge.0, .0.edge.1, .0.first + 1, .0.second + 1
    )]
    NotPartition(OverlapWitness),
    #[error("biclique {} does not cut the group's vertex set", .0 + 1)]
    NotCutting(usize),
    #[error("coloring covers {colored} vertices but the graph has {graph}")]
    IncompleteColoring { colored: usize, graph: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("bound requires k >= {min}, got {k}")]
pub struct BoundDomainError {
    pub k: f64,
    pub min: f64,
}

/// Color of one vertex: 1-based labels, one per completed stage. Empty is `⊥`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ColorSequence(Vec<u32>);

impl ColorSequence {
    pub fn bottom() -> Self {
        ColorSequence(Vec::new())
    }

    pub fn from_labels(labels: Vec<u32>) -> Self {
        ColorSequence(labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    fn extended(&self, label: u32) -> Self {
        let mut labels = self.0.clone();
        labels.push(label);
        ColorSequence(labels)
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊥");
        }
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<ColorSequence>,
    distinct_colors: usize,
}

impl Coloring {
    /// `assignment[v - 1]` is the color of vertex `v`.
    pub fn from_assignment(assignment: Vec<ColorSequence>) -> Self {
        let distinct_colors = assignment.iter().collect::<BTreeSet<_>>().len();
        Coloring {
            assignment,
            distinct_colors,
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn color(&self, v: usize) -> &ColorSequence {
        &self.assignment[v - 1]
    }

    pub fn assignment(&self) -> &[ColorSequence] {
        &self.assignment
    }

    pub fn distinct_colors(&self) -> usize {
        self.distinct_colors
    }

    /// Vertices colored `⊥`.
    pub fn bottom_class(&self) -> VertexSet {
        VertexSet::from_iter(self.n(), (1..=self.n()).filter(|&v| self.assignment[v - 1].is_bottom()))
    }
}

/// Vertices sharing a color prefix, with their common vertex set and cutting list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementGroup {
    pub prefix: ColorSequence,
    pub members: VertexSet,
    pub s_set: VertexSet,
    /// Positions of the bicliques cutting `s_set`, ascending.
    pub cutting: Vec<usize>,
}

impl RefinementGroup {
    fn new(
        system: &BicliqueSystem,
        prefix: ColorSequence,
        members: VertexSet,
        s_set: VertexSet,
        candidates: &[usize],
    ) -> Self {
        let cutting = candidates
            .iter()
            .copied()
            .filter(|&l| cuts(system.get(l), &s_set))
            .collect();
        RefinementGroup {
            prefix,
            members,
            s_set,
            cutting,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideChoice {
    pub side: Side,
    /// Bicliques of the cutting list that cut `left ∩ s_set`.
    pub count_left: usize,
    /// Bicliques of the cutting list that cut `right ∩ s_set`.
    pub count_right: usize,
}

/// Picks the side of biclique `j` that is cut by fewer bicliques of the group's
/// cutting list (restricted to `s_set`); LEFT on a tie.
pub fn canonical_side(system: &BicliqueSystem, j: usize, group: &RefinementGroup) -> Result<SideChoice, ColoringError> {
    let b = system.get(j);
    if !cuts(b, &group.s_set) {
        return Err(ColoringError::NotCutting(j));
    }
    Ok(side_choice(system, j, &group.s_set, &group.cutting))
}

fn side_choice(system: &BicliqueSystem, j: usize, s_set: &VertexSet, cutting: &[usize]) -> SideChoice {
    let b = system.get(j);
    let left = b.left().intersection(s_set);
    let right = b.right().intersection(s_set);
    let count = |part: &VertexSet| cutting.iter().filter(|&&l| cuts(system.get(l), part)).count();
    let count_left = count(&left);
    let count_right = count(&right);
    let side = if count_right < count_left {
        Side::Right
    } else {
        Side::Left
    };
    SideChoice {
        side,
        count_left,
        count_right,
    }
}

/// Groups alive after a given number of completed stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub completed: usize,
    pub groups: Vec<RefinementGroup>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GroupRecord {
    pub prefix: ColorSequence,
    pub members: usize,
    pub s_set: usize,
    pub cutting: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub groups: Vec<GroupRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvRun {
    pub m: usize,
    pub coloring: Coloring,
    /// `stages[i]` holds the groups after `i` completed stages.
    pub stages: Vec<Stage>,
}

impl MvRun {
    pub fn trace(&self) -> Vec<StageRecord> {
        self.stages
            .iter()
            .map(|st| StageRecord {
                stage: st.completed,
                groups: st
                    .groups
                    .iter()
                    .map(|g| GroupRecord {
                        prefix: g.prefix.clone(),
                        members: g.members.len(),
                        s_set: g.s_set.len(),
                        cutting: g.cutting.len(),
                    })
                    .collect(),
            })
            .collect()
    }
}

/// Colors the union graph of an edge-disjoint biclique system.
pub fn mv_color(system: &BicliqueSystem) -> Result<MvRun, ColoringError> {
    let report = system.validate_partition();
    if let Some(w) = report.witness {
        return Err(ColoringError::NotPartition(w));
    }
    Ok(color_validated(system))
}

fn color_validated(system: &BicliqueSystem) -> MvRun {
    let n = system.universe_n();
    let everyone = VertexSet::full(n);
    let all: Vec<usize> = (0..system.len()).collect();
    let root = RefinementGroup::new(system, ColorSequence::bottom(), everyone.clone(), everyone, &all);

    let mut assignment: Vec<Option<ColorSequence>> = vec![None; n];
    let mut stages = vec![Stage {
        completed: 0,
        groups: vec![root],
    }];

    loop {
        let current = stages.last().expect("at least the initial stage");
        if current.groups.iter().all(|g| g.cutting.is_empty()) {
            for g in &current.groups {
                for v in &g.members {
                    assignment[v - 1] = Some(g.prefix.clone());
                }
            }
            break;
        }
        let mut next = Vec::new();
        for group in &current.groups {
            let children = refine(system, group, &mut assignment);
            next.extend(children);
        }
        let completed = current.completed + 1;
        stages.push(Stage {
            completed,
            groups: next,
        });
    }

    let assignment = assignment
        .into_iter()
        .map(|c| c.expect("every vertex receives a final color"))
        .collect();
    MvRun {
        m: system.len(),
        coloring: Coloring::from_assignment(assignment),
        stages,
    }
}

/// One stage for one group: finalizes members that stop, returns child groups.
fn refine(
    system: &BicliqueSystem,
    group: &RefinementGroup,
    assignment: &mut [Option<ColorSequence>],
) -> Vec<RefinementGroup> {
    if group.cutting.is_empty() {
        for v in &group.members {
            assignment[v - 1] = Some(group.prefix.clone());
        }
        return Vec::new();
    }
    let canonical: Vec<VertexSet> = group
        .cutting
        .iter()
        .map(|&j| {
            let choice = side_choice(system, j, &group.s_set, &group.cutting);
            system.get(j).side(choice.side).intersection(&group.s_set)
        })
        .collect();

    // rank (0-based) -> members taking that label
    let mut by_rank: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in &group.members {
        match canonical.iter().position(|side| side.contains(v)) {
            Some(rank) => {
                by_rank
                    .entry(rank)
                    .or_insert_with(|| VertexSet::new(group.members.capacity()))
                    .insert(v);
            }
            None => assignment[v - 1] = Some(group.prefix.clone()),
        }
    }
    by_rank
        .into_iter()
        .map(|(rank, members)| {
            let label = u32::try_from(rank + 1).expect("label fits in u32");
            RefinementGroup::new(
                system,
                group.prefix.extended(label),
                members,
                canonical[rank].clone(),
                &group.cutting,
            )
        })
        .collect()
}

/// Recomputes the `s_set` a color sequence determines, from scratch.
///
/// `None` if some label exceeds the cutting list it indexes.
pub fn s_set_for_sequence(system: &BicliqueSystem, seq: &ColorSequence) -> Option<VertexSet> {
    let mut s = VertexSet::full(system.universe_n());
    for &label in seq.labels() {
        let cutting = system.cutting(&s);
        let j = *cutting.get((label as usize).checked_sub(1)?)?;
        let choice = side_choice(system, j, &s, &cutting);
        s = system.get(j).side(choice.side).intersection(&s);
    }
    Some(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub proper: bool,
    pub witness: Option<Edge>,
}

/// Checks that no edge joins two vertices of equal color.
pub fn verify_proper(g: &Graph, coloring: &Coloring) -> Result<ProperReport, ColoringError> {
    if coloring.n() < g.n() {
        return Err(ColoringError::IncompleteColoring {
            colored: coloring.n(),
            graph: g.n(),
        });
    }
    let witness = g.edges().find(|&(u, v)| coloring.color(u) == coloring.color(v));
    Ok(ProperReport {
        proper: witness.is_none(),
        witness,
    })
}

/// Upper bound on the number of colors a run over `m` bicliques can use:
/// `1 + Σ_{i=1..L} Π_{j<i} ⌊m/2^j⌋` with `L = ⌊log2 m⌋ + 1`; the leading 1 is `⊥`.
pub fn colors_bound(m: u64) -> BigUint {
    let mut total = BigUint::one();
    let mut product = BigUint::one();
    let mut width = m;
    while width > 0 {
        product *= width;
        total += &product;
        width /= 2;
    }
    total
}

/// Smallest `m >= 1` with `colors_bound(m) >= k`.
pub fn invert_bound(k: u64) -> u64 {
    let target = BigUint::from(k);
    let enough = |m: u64| colors_bound(m) >= target;
    let mut hi = 1u64;
    while !enough(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2; // colors_bound(lo) < k, or lo == 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if enough(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.max(1)
}

/// Main term `2^√(2·log2 k)` of the partition-size lower bound.
pub fn theorem1_bound(k: f64) -> Result<f64, BoundDomainError> {
    if k.is_nan() || k < 2.0 {
        return Err(BoundDomainError { k, min: 2.0 });
    }
    Ok((2.0 * k.log2()).sqrt().exp2())
}
