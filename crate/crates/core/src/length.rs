//! Cycles, cycle partitions and reflection length.
//!
//! The reflection length of `g` is `n + cyc(g) - v(Π)` maximized over cycle
//! partitions `Π`, where a cycle partition groups the cycles of `g` into blocks of
//! weight `0 mod p`, and `v(Π)` counts blocks plus blocks of weight `0 mod m`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::{enumerate_reflections, Element, GroupParams};
use crate::limits::{Limits, MAX_CYCLES};

/// One cycle of the underlying permutation, listed from its smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    /// Points in cycle order `s, u(s), u(u(s)), ...` with `s` minimal (0-based).
    pub points: Vec<usize>,
    /// Sum of the weights on the points, mod `m`.
    pub weight: u32,
}

impl Cycle {
    pub fn min(&self) -> usize {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All cycles of an element, fixed points included, sorted by smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleData {
    pub cycles: Vec<Cycle>,
}

impl CycleData {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.cycles.iter().map(|c| c.weight)
    }

    /// Index of the cycle containing point `v`.
    pub fn cycle_of(&self, v: usize) -> usize {
        self.cycles
            .iter()
            .position(|c| c.points.contains(&v))
            .expect("cycles cover every point")
    }
}

pub fn cycle_data(g: &Element) -> CycleData {
    let n = g.n();
    let m = g.params().m() as u64;
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut points = Vec::new();
        let mut weight = 0u64;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            points.push(v);
            weight += g.weights()[v] as u64;
            v = g.image(v);
        }
        cycles.push(Cycle {
            points,
            weight: (weight % m) as u32,
        });
    }
    CycleData { cycles }
}

/// A set partition of cycle indices whose blocks all have weight `0 mod p`.
///
/// Blocks are sorted internally and ordered by their smallest cycle index, so
/// the derived ordering is lexicographic on that encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePartition {
    blocks: Vec<Vec<usize>>,
    block_weights: Vec<u32>,
}

impl CyclePartition {
    /// Validates and canonicalizes a partition of the cycles of `g`.
    pub fn new(g: &Element, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let data = cycle_data(g);
        Self::from_cycles(&data, g.params(), blocks)
    }

    pub(crate) fn from_cycles(
        data: &CycleData,
        params: GroupParams,
        mut blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let c = data.len();
        let mut seen = vec![false; c];
        for block in blocks.iter_mut() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &k in block.iter() {
                if k >= c {
                    return Err(Error::InvalidPartition(format!(
                        "cycle index {} out of range (element has {c} cycles)",
                        k + 1
                    )));
                }
                if std::mem::replace(&mut seen[k], true) {
                    return Err(Error::InvalidPartition(format!(
                        "cycle {} appears twice",
                        k + 1
                    )));
                }
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "cycle {} is not covered",
                k + 1
            )));
        }
        blocks.sort_unstable();
        let m = params.m() as u64;
        let mut block_weights = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let w = (block.iter().map(|&k| data.cycles[k].weight as u64).sum::<u64>() % m) as u32;
            if !w.is_multiple_of(params.p()) {
                return Err(Error::InvalidPartition(format!(
                    "block {:?} has weight {w}, not a multiple of p = {}",
                    block.iter().map(|k| k + 1).collect::<Vec<_>>(),
                    params.p()
                )));
            }
            block_weights.push(w);
        }
        Ok(CyclePartition {
            blocks,
            block_weights,
        })
    }

    /// Blocks of 0-based cycle indices.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Weight of each block, mod `m`.
    pub fn block_weights(&self) -> &[u32] {
        &self.block_weights
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of blocks plus the number of blocks of weight `0 mod m`.
    pub fn value(&self) -> usize {
        self.blocks.len() + self.block_weights.iter().filter(|&&w| w == 0).count()
    }
}

/// `v(Π)` of a partition.
pub fn partition_value(partition: &CyclePartition) -> usize {
    partition.value()
}

fn check_cycle_count(c: usize) -> Result<()> {
    if c > MAX_CYCLES {
        Err(Error::TooManyCycles {
            cycles: c,
            max: MAX_CYCLES,
        })
    } else {
        Ok(())
    }
}

/// Subset-indexed weights: `weight[mask]` is the total weight of the cycles in `mask`, mod `m`.
fn subset_weights(data: &CycleData, m: u32) -> Vec<u32> {
    let c = data.len();
    let mut weight = vec![0u32; 1 << c];
    for mask in 1usize..1 << c {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        weight[mask] =
            ((weight[rest] as u64 + data.cycles[low].weight as u64) % m as u64) as u32;
    }
    weight
}

/// Iterates over the submasks of `mask` that contain its lowest set bit.
fn blocks_with_lowest(mask: usize) -> impl Iterator<Item = usize> {
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    // all submasks of `rest`, each extended by `low`
    let mut sub = rest;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub | low;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & rest;
        }
        Some(out)
    })
}

/// Best achievable score over all partitions of every subset of cycles,
/// where each admissible block contributes `score(block_weight)`.
/// `None` marks subsets that cannot be partitioned.
fn best_scores(weight: &[u32], c: usize, p: u32, score: impl Fn(u32) -> usize) -> Vec<Option<usize>> {
    let full = (1usize << c) - 1;
    let mut best: Vec<Option<usize>> = vec![None; full + 1];
    best[0] = Some(0);
    for mask in 1..=full {
        let mut top: Option<usize> = None;
        for block in blocks_with_lowest(mask) {
            let w = weight[block];
            if !w.is_multiple_of(p) {
                continue;
            }
            if let Some(rest) = best[mask ^ block] {
                let v = rest + score(w);
                if top.is_none_or(|t| v > t) {
                    top = Some(v);
                }
            }
        }
        best[mask] = top;
    }
    best
}

fn block_value(w: u32) -> usize {
    if w == 0 {
        2
    } else {
        1
    }
}

/// Every cycle partition of `g`, canonically ordered.
pub fn enumerate_cycle_partitions(g: &Element) -> Result<Vec<CyclePartition>> {
    let data = cycle_data(g);
    let c = data.len();
    check_cycle_count(c)?;
    let p = g.params().p();
    let weight = subset_weights(&data, g.params().m());
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    collect_partitions(
        (1usize << c) - 1,
        &mut blocks,
        &mut |mask| weight[mask].is_multiple_of(p),
        &mut |blocks| out.push(blocks.to_vec()),
    );
    finish_partitions(&data, g.params(), out)
}

/// Recursively peels off a block containing the lowest remaining cycle.
fn collect_partitions(
    remaining: usize,
    blocks: &mut Vec<usize>,
    admissible: &mut impl FnMut(usize) -> bool,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(blocks);
        return;
    }
    for block in blocks_with_lowest(remaining) {
        if admissible(block) {
            blocks.push(block);
            collect_partitions(remaining ^ block, blocks, admissible, emit);
            blocks.pop();
        }
    }
}

fn finish_partitions(
    data: &CycleData,
    params: GroupParams,
    masks: Vec<Vec<usize>>,
) -> Result<Vec<CyclePartition>> {
    let mut out = masks
        .into_iter()
        .map(|blocks| {
            let blocks = blocks
                .into_iter()
                .map(|mask| (0..data.len()).filter(|k| mask >> k & 1 == 1).collect())
                .collect();
            CyclePartition::from_cycles(data, params, blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The partitions of maximum value, canonically ordered.
pub fn max_cycle_partitions(g: &Element) -> Result<Vec<CyclePartition>> {
    let data = cycle_data(g);
    let c = data.len();
    check_cycle_count(c)?;
    let params = g.params();
    let p = params.p();
    let weight = subset_weights(&data, params.m());
    let best = best_scores(&weight, c, p, block_value);
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    // a block is kept only if the rest can still reach the optimum
    fn walk(
        remaining: usize,
        weight: &[u32],
        best: &[Option<usize>],
        p: u32,
        blocks: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(blocks.clone());
            return;
        }
        let target = best[remaining].expect("reachable subsets are partitionable");
        for block in blocks_with_lowest(remaining) {
            let w = weight[block];
            if !w.is_multiple_of(p) {
                continue;
            }
            if best[remaining ^ block].map(|r| r + block_value(w)) == Some(target) {
                blocks.push(block);
                walk(remaining ^ block, weight, best, p, blocks, out);
                blocks.pop();
            }
        }
    }
    walk((1 << c) - 1, &weight, &best, p, &mut blocks, &mut out);
    finish_partitions(&data, params, out)
}

/// `max v(Π)` over cycle partitions, without listing them.
pub fn max_partition_value(g: &Element) -> Result<usize> {
    let data = cycle_data(g);
    let c = data.len();
    check_cycle_count(c)?;
    let weight = subset_weights(&data, g.params().m());
    let best = best_scores(&weight, c, g.params().p(), block_value);
    Ok(best[(1 << c) - 1].expect("the one-block partition is always admissible"))
}

/// Reflection length `n + cyc(g) - max v(Π)`.
pub fn reflection_length(g: &Element) -> Result<usize> {
    let c = cycle_data(g).len();
    Ok(g.n() + c - max_partition_value(g)?)
}

/// Closed forms for `p = 1` (`n` minus the number of weight-0 cycles) and
/// `p = m` (`n + cyc(g) - 2 max|Π|`).
pub fn reflection_length_special(g: &Element) -> Result<usize> {
    let params = g.params();
    let data = cycle_data(g);
    let n = g.n();
    if params.p() == 1 {
        return Ok(n - data.weights().filter(|&w| w == 0).count());
    }
    if params.p() == params.m() {
        let c = data.len();
        check_cycle_count(c)?;
        let weight = subset_weights(&data, params.m());
        let most_blocks = best_scores(&weight, c, params.m(), |_| 1)[(1 << c) - 1]
            .expect("the one-block partition is always admissible");
        return Ok(n + c - 2 * most_blocks);
    }
    Err(Error::SpecialCaseNotApplicable {
        m: params.m(),
        p: params.p(),
    })
}

/// Distance from the identity to every element in the Cayley graph on the reflections.
pub fn cayley_distances(params: GroupParams, limits: &Limits) -> Result<HashMap<Element, usize>> {
    let order = params.order().filter(|&o| o <= limits.max_states as u128);
    if order.is_none() {
        return Err(Error::LimitExceeded {
            what: "group order for breadth-first search",
            limit: limits.max_states,
        });
    }
    let gens: Vec<Element> = enumerate_reflections(params)
        .iter()
        .map(|r| r.to_element(params))
        .collect();
    let id = Element::identity(params);
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for t in &gens {
            let y = x.compose(t);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// Reflection length by breadth-first search from the identity, stopping at `g`.
pub fn reflection_length_bruteforce(g: &Element, limits: &Limits) -> Result<usize> {
    let params = g.params();
    let order = params.order().filter(|&o| o <= limits.max_states as u128);
    if order.is_none() {
        return Err(Error::LimitExceeded {
            what: "group order for breadth-first search",
            limit: limits.max_states,
        });
    }
    let gens: Vec<Element> = enumerate_reflections(params)
        .iter()
        .map(|r| r.to_element(params))
        .collect();
    let id = Element::identity(params);
    if *g == id {
        return Ok(0);
    }
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0usize);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for t in &gens {
            let y = x.compose(t);
            if y == *g {
                return Ok(d + 1);
            }
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    unreachable!("the reflections generate the group")
}
