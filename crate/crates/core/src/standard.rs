//! Factorization graphs, standard forms and explicit braids between them.
//!
//! A shortest factorization is in standard form when, block by block, it starts
//! with a doubled path `(v_1 v_2), (v_1 v_2), (v_2 v_3), (v_2 v_3), ...` on the
//! smallest points `v_1 < ... < v_c` of the block's cycles, followed by the loop
//! at `v_c` if the block has nonzero weight, followed by a forest.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::arith::{bezout, ext_gcd, gcd, residue};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams, Reflection};
use crate::hurwitz::{block_gcd, BraidWord, Factorization};
use crate::length::{cycle_data, Cycle, CycleData, CyclePartition};

/// Graph on the points `0..n` with one edge per factor; diagonal factors are loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl FactorizationGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge `k` belongs to factor `k`; a loop is `(i, i)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(|(a, b)| a == b).map(|&(a, _)| a)
    }

    /// Component index of every point, components numbered by smallest point.
    pub fn component_labels(&self) -> Vec<usize> {
        component_labels(self.n, self.edges.iter().copied())
    }

    /// Vertex sets of the connected components, ordered by smallest point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |&l| l + 1);
        let mut out = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn component_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        let root = find(&mut parent, v);
        if label[root] == usize::MAX {
            label[root] = next;
            next += 1;
        }
        label[v] = label[root];
    }
    label
}

pub fn factorization_graph(f: &Factorization) -> FactorizationGraph {
    FactorizationGraph {
        n: f.params().n(),
        edges: f.factors().iter().map(|r| r.vertices()).collect(),
    }
}

/// Groups the cycles of the product by the graph component that contains them.
pub fn induced_partition(f: &Factorization) -> CyclePartition {
    let g = f.product();
    let data = cycle_data(&g);
    partition_from_labels(&data, g.params(), &factorization_graph(f).component_labels())
}

fn partition_from_labels(data: &CycleData, params: GroupParams, labels: &[usize]) -> CyclePartition {
    let count = labels.iter().max().map_or(0, |&l| l + 1);
    let mut blocks = vec![Vec::new(); count];
    for (k, c) in data.cycles.iter().enumerate() {
        blocks[labels[c.min()]].push(k);
    }
    blocks.retain(|b| !b.is_empty());
    CyclePartition::from_cycles(data, params, blocks)
        .expect("components of a factorization graph give a cycle partition")
}

/// One block of a factorization whose blocks occupy contiguous segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Segment {
    /// Cycle indices in the block, ascending.
    cycles: Vec<usize>,
    /// Smallest point of each cycle, ascending.
    vertices: Vec<usize>,
    /// Cycle weights in the same order.
    cycle_weights: Vec<u32>,
    weight: u32,
    start: usize,
    len: usize,
}

impl Segment {
    fn c(&self) -> usize {
        self.vertices.len()
    }

    fn has_loop(&self) -> bool {
        self.weight != 0
    }

    /// Number of factors in the doubled path and loop.
    fn prefix_len(&self) -> usize {
        2 * self.c() - 2 + usize::from(self.has_loop())
    }

    /// `d_1, ..., d_{c-1}` followed by the block weight.
    fn differences(&self, params: GroupParams) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.c());
        let mut acc = 0;
        for &k in &self.cycle_weights[..self.c() - 1] {
            acc = params.add(acc, k);
            d.push(acc);
        }
        d.push(self.weight);
        d
    }
}

/// Blocks in the order of their smallest point, with segment positions assigned
/// from the sorted component labels of the factors.
fn segments(f: &Factorization, data: &CycleData) -> Vec<Segment> {
    let graph = factorization_graph(f);
    let labels = graph.component_labels();
    let partition = partition_from_labels(data, f.params(), &labels);
    let mut start = 0;
    partition
        .blocks()
        .iter()
        .zip(partition.block_weights())
        .map(|(block, &weight)| {
            let label = labels[data.cycles[block[0]].min()];
            let len = graph
                .edges()
                .iter()
                .filter(|(a, _)| labels[*a] == label)
                .count();
            let seg = Segment {
                cycles: block.clone(),
                vertices: block.iter().map(|&k| data.cycles[k].min()).collect(),
                cycle_weights: block.iter().map(|&k| data.cycles[k].weight).collect(),
                weight,
                start,
                len,
            };
            start += len;
            seg
        })
        .collect()
}

/// The blocks of a standard-form factorization, or `None` if it is not standard.
fn standard_segments(f: &Factorization, data: &CycleData) -> Option<Vec<Segment>> {
    let segs = segments(f, data);
    let labels = factorization_graph(f).component_labels();
    let factors = f.factors();
    for seg in &segs {
        let label = labels[seg.vertices[0]];
        let slice = &factors[seg.start..seg.start + seg.len];
        // (a) contiguous and in block order
        if slice.iter().any(|r| labels[r.vertices().0] != label) {
            return None;
        }
        let c = seg.c();
        if seg.len < seg.prefix_len() {
            return None;
        }
        // (b) doubled path on consecutive smallest points
        for j in 0..c - 1 {
            let pair = Some((seg.vertices[j], seg.vertices[j + 1]));
            if slice[2 * j].support() != pair || slice[2 * j + 1].support() != pair {
                return None;
            }
        }
        // (c) loop placement
        for (k, r) in slice.iter().enumerate() {
            if let Reflection::Diagonal { i, .. } = *r {
                if k != 2 * c - 2 || i as usize != seg.vertices[c - 1] {
                    return None;
                }
            }
        }
    }
    Some(segs)
}

/// Whether a shortest factorization is in standard form.
pub fn is_standard_form(f: &Factorization) -> Result<bool> {
    let g = f.require_shortest()?;
    Ok(standard_segments(f, &cycle_data(&g)).is_some())
}

fn require_standard(f: &Factorization) -> Result<(Element, CycleData, Vec<Segment>)> {
    let g = f.require_shortest()?;
    let data = cycle_data(&g);
    let segs = standard_segments(f, &data).ok_or(Error::NotStandardForm)?;
    Ok((g, data, segs))
}

/// Pair weights `a_1, ..., a_{|B|-1}` of each block, in block order.
pub fn pair_weights(f: &Factorization) -> Result<Vec<Vec<u32>>> {
    let (_, _, segs) = require_standard(f)?;
    Ok(segs.iter().map(|seg| segment_pair_weights(f, seg)).collect())
}

fn segment_pair_weights(f: &Factorization, seg: &Segment) -> Vec<u32> {
    (0..seg.c() - 1)
        .map(|j| match f.factors()[seg.start + 2 * j] {
            Reflection::Transposition { a, .. } => a,
            Reflection::Diagonal { .. } => unreachable!("doubled paths have no loops"),
        })
        .collect()
}

/// A standard-form factorization of `g` inducing `partition`, with the given pair weights.
///
/// Per block: the doubled path, then the loop if the block weight is nonzero,
/// then for each cycle `(c_0 c_1 ... c_{L-1})` the path `(c_0 c_1), (c_1 c_2), ...`
/// with the weights forced by the product.
pub fn build_standard_factorization(
    g: &Element,
    partition: &CyclePartition,
    pair_weights: &[Vec<u32>],
) -> Result<Factorization> {
    let params = g.params();
    let data = cycle_data(g);
    let checked = CyclePartition::from_cycles(&data, params, partition.blocks().to_vec())?;
    if checked != *partition {
        return Err(Error::InvalidPartition(
            "block weights do not match the element".into(),
        ));
    }
    if pair_weights.len() != partition.len() {
        return Err(Error::Arity {
            expected: partition.len(),
            found: pair_weights.len(),
        });
    }
    let mut factors = Vec::new();
    for ((block, &weight), a) in partition
        .blocks()
        .iter()
        .zip(partition.block_weights())
        .zip(pair_weights)
    {
        if a.len() + 1 != block.len() {
            return Err(Error::Arity {
                expected: block.len() - 1,
                found: a.len(),
            });
        }
        let vertices: Vec<usize> = block.iter().map(|&k| data.cycles[k].min()).collect();
        let mut d = 0;
        for j in 0..a.len() {
            d = params.add(d, data.cycles[block[j]].weight);
            let aj = params.reduce(a[j] as i128);
            factors.push(Reflection::Transposition {
                i: vertices[j] as u8,
                j: vertices[j + 1] as u8,
                a: aj,
            });
            factors.push(Reflection::Transposition {
                i: vertices[j] as u8,
                j: vertices[j + 1] as u8,
                a: params.add(aj, d),
            });
        }
        if weight != 0 {
            factors.push(Reflection::Diagonal {
                i: *vertices.last().expect("blocks are nonempty") as u8,
                b: weight,
            });
        }
        // what remains is D⁻¹g on the block, D = diag(k_i at v_i)
        for &k in block {
            let cycle = &data.cycles[k];
            let pts = &cycle.points;
            for t in 0..pts.len().saturating_sub(1) {
                let x = pts[t];
                let mut w = g.weights()[x];
                if g.image(x) == cycle.min() {
                    w = params.sub(w, cycle.weight);
                }
                factors.push(Reflection::transposition(params, x, pts[t + 1], w as i64)?);
            }
        }
    }
    let f = Factorization::from_trusted(params, factors);
    debug_assert_eq!(f.product(), *g);
    Ok(f)
}

/// The three families of braids acting on doubled paths (indices 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryBraid {
    /// Adds `d_i` to the `i`-th pair weight.
    SigmaPair(usize),
    /// Adds `d_j` to the `i`-th and `d_i` to the `j`-th pair weight, `i < j`.
    Tau(usize, usize),
    /// Adds the loop weight to the `i`-th pair weight.
    Gamma(usize),
}

/// The braid word of an elementary operation on a doubled path with `c` vertices.
pub fn elementary_braid(kind: ElementaryBraid, c: usize, has_loop: bool) -> Result<BraidWord> {
    let pairs = c.saturating_sub(1);
    let bad = |what: String| Err(Error::InvalidBraid(what));
    let mut w = BraidWord::empty();
    match kind {
        ElementaryBraid::SigmaPair(i) => {
            if i == 0 || i > pairs {
                return bad(format!("pair {i} does not exist on a path with {c} vertices"));
            }
            w.push(2 * i - 1, false);
        }
        ElementaryBraid::Tau(i, j) => {
            if i == 0 || i >= j || j > pairs {
                return bad(format!("need 1 <= i < j <= {pairs}, got i={i}, j={j}"));
            }
            let mut s = 2 * j - 2;
            while s > 2 * i {
                w.push(s, true);
                w.push(s + 1, true);
                w.push(s - 1, false);
                w.push(s, false);
                s -= 2;
            }
            for (g, inv) in [
                (2 * i, true),
                (2 * i - 1, true),
                (2 * i + 1, true),
                (2 * i, true),
                (2 * i, true),
                (2 * i - 1, true),
                (2 * i + 1, true),
                (2 * i, true),
            ] {
                w.push(g, inv);
            }
            let mut s = 2 * i + 2;
            while s < 2 * j {
                w.push(s, true);
                w.push(s - 1, true);
                w.push(s + 1, false);
                w.push(s, false);
                s += 2;
            }
        }
        ElementaryBraid::Gamma(i) => {
            if !has_loop {
                return bad("the path has no loop".into());
            }
            if i == 0 || i > pairs {
                return bad(format!("pair {i} does not exist on a path with {c} vertices"));
            }
            for s in (2 * i + 1..=2 * c - 2).rev() {
                w.push(s, s % 2 == 0);
            }
            // inverse core letters: with these weight conventions the positive
            // letters would subtract the loop weight
            for g in [2 * i, 2 * i - 1, 2 * i - 1, 2 * i] {
                w.push(g, true);
            }
            for s in 2 * i + 1..=2 * c - 2 {
                w.push(s, s % 2 == 1);
            }
        }
    }
    Ok(w)
}

/// A doubled path: pairs `[(v_i v_{i+1}); a_i], [(v_i v_{i+1}); a_i + d_i]`
/// and an optional loop at the last vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubledPath {
    pub pair_weights: Vec<u32>,
    pub pair_differences: Vec<u32>,
    pub loop_weight: Option<u32>,
}

impl DoubledPath {
    pub fn vertices(&self) -> usize {
        self.pair_weights.len() + 1
    }

    /// The factors on the given increasing vertex list.
    pub fn to_factorization(&self, params: GroupParams, vertices: &[usize]) -> Result<Factorization> {
        if self.pair_differences.len() != self.pair_weights.len() {
            return Err(Error::Arity {
                expected: self.pair_weights.len(),
                found: self.pair_differences.len(),
            });
        }
        if vertices.len() != self.vertices() {
            return Err(Error::Arity {
                expected: self.vertices(),
                found: vertices.len(),
            });
        }
        let mut factors = Vec::new();
        for (k, (&a, &d)) in self.pair_weights.iter().zip(&self.pair_differences).enumerate() {
            let (x, y) = (vertices[k], vertices[k + 1]);
            factors.push(Reflection::transposition(params, x, y, a as i64)?);
            factors.push(Reflection::transposition(params, x, y, a as i64 + d as i64)?);
        }
        if let Some(b) = self.loop_weight {
            factors.push(Reflection::diagonal(params, vertices[vertices.len() - 1], b as i64)?);
        }
        Factorization::new(params, factors)
    }

    /// Reads a doubled path with `c` vertices off the front of `factors`.
    pub fn read(params: GroupParams, factors: &[Reflection], c: usize) -> Result<DoubledPath> {
        let shape = || Error::InvalidBraid("factors do not form a doubled path".into());
        let pairs = c.checked_sub(1).ok_or_else(shape)?;
        if factors.len() < 2 * pairs {
            return Err(shape());
        }
        let mut pair_weights = Vec::new();
        let mut pair_differences = Vec::new();
        for k in 0..pairs {
            match (factors[2 * k], factors[2 * k + 1]) {
                (
                    Reflection::Transposition { i, j, a },
                    Reflection::Transposition { i: i2, j: j2, a: b },
                ) if (i, j) == (i2, j2) => {
                    pair_weights.push(a);
                    pair_differences.push(params.sub(b, a));
                }
                _ => return Err(shape()),
            }
        }
        let loop_weight = match factors.get(2 * pairs) {
            Some(Reflection::Diagonal { b, .. }) => Some(*b),
            _ => None,
        };
        Ok(DoubledPath {
            pair_weights,
            pair_differences,
            loop_weight,
        })
    }
}

/// Integer matrix `M` (`c` rows, `c-1` columns) with `a + d·M ≡ a' (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    entries: Vec<Vec<i128>>,
}

impl TransferMatrix {
    /// `entries[i][j]` is the coefficient of `d_{i+1}` in the change of `a_{j+1}`.
    pub fn entries(&self) -> &[Vec<i128>] {
        &self.entries
    }

    /// `a + d·M` reduced mod `m`.
    pub fn apply(&self, d: &[u32], a: &[u32], m: u32) -> Vec<u32> {
        (0..a.len())
            .map(|j| {
                let shift: i128 = (0..d.len()).map(|i| d[i] as i128 * self.entries[i][j]).sum();
                residue(a[j] as i128 + shift, m)
            })
            .collect()
    }

    /// Braid word realizing `M` on a doubled path: `σ_{2i-1}^{M_ii}`, then
    /// `τ_{i,j}^{M_ij}`, then `γ_j^{M_cj}`, exponents reduced mod `m`.
    pub fn braid_word(&self, m: u32, has_loop: bool) -> BraidWord {
        let c = self.entries.len();
        let pairs = c - 1;
        let times = |x: i128| residue(x, m) as usize;
        let mut w = BraidWord::empty();
        for i in 1..=pairs {
            let e = elementary_braid(ElementaryBraid::SigmaPair(i), c, has_loop).expect("in range");
            w.extend(&e.repeated(times(self.entries[i - 1][i - 1])));
        }
        for i in 1..=pairs {
            for j in i + 1..=pairs {
                let e = elementary_braid(ElementaryBraid::Tau(i, j), c, has_loop).expect("in range");
                w.extend(&e.repeated(times(self.entries[i - 1][j - 1])));
            }
        }
        if has_loop {
            for j in 1..=pairs {
                let e = elementary_braid(ElementaryBraid::Gamma(j), c, has_loop).expect("in range");
                w.extend(&e.repeated(times(self.entries[c - 1][j - 1])));
            }
        }
        w
    }
}

/// Solves `a + d·M ≡ a' (mod m)` with `M` symmetric on its first `c-1` rows.
///
/// `d` holds `d_1, ..., d_{c-1}` and the loop weight (0 without a loop). A
/// solution exists exactly when `a ≡ a' (mod gcd(m, d_1, ..., d_c))`.
pub fn solve_transfer(d: &[u32], a: &[u32], target: &[u32], m: u32) -> Result<Option<TransferMatrix>> {
    let c = d.len();
    if c == 0 {
        return Err(Error::Arity {
            expected: 1,
            found: 0,
        });
    }
    for v in [a, target] {
        if v.len() != c - 1 {
            return Err(Error::Arity {
                expected: c - 1,
                found: v.len(),
            });
        }
    }
    let mm = m as i128;
    // positive representatives, 0 standing for m
    let dp: Vec<i128> = d
        .iter()
        .map(|&x| match residue(x as i128, m) {
            0 => mm,
            r => r as i128,
        })
        .collect();
    let mut values = vec![mm];
    values.extend(&dp);
    let (r, coeffs) = bezout(&values);
    let x = &coeffs[1..];
    let mut u = vec![0i128; c];
    for j in 0..c - 1 {
        let diff = residue(target[j] as i128 - a[j] as i128, m) as i128;
        if diff % r != 0 {
            return Ok(None);
        }
        u[j] = diff / r;
    }
    let mut y = vec![vec![0i128; c]; c];
    let mut g = vec![vec![1i128; c]; c];
    for i in 0..c {
        for j in i + 1..c {
            let gij = gcd(dp[i] as u64, dp[j] as u64) as i128;
            g[i][j] = gij;
            g[j][i] = gij;
            let rr = u[j] * x[i] - u[i] * x[j];
            let (_, s, t) = ext_gcd(dp[i] / gij, dp[j] / gij);
            y[j][i] = s * rr;
            y[i][j] = -t * rr;
        }
    }
    let mut entries = vec![vec![0i128; c - 1]; c];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = if i == j {
                let correction: i128 = (0..c)
                    .filter(|&k| k != j)
                    .map(|k| dp[k] / g[k][j] * y[k][j])
                    .sum();
                u[j] * x[j] - correction
            } else {
                u[j] * x[i] + dp[j] / g[i][j] * y[i][j]
            };
        }
    }
    if residue(d[c - 1] as i128, m) == 0 {
        entries[c - 1].iter_mut().for_each(|e| *e = 0);
    }
    let out = TransferMatrix { entries };
    debug_assert_eq!(out.apply(d, a, m), target.iter().map(|&t| t % m).collect::<Vec<_>>());
    Ok(Some(out))
}

/// Applies a word shifted by `offset` and appends it to `log`.
fn run(f: &mut Factorization, w: &BraidWord, offset: usize, log: &mut BraidWord) {
    for &l in w.letters() {
        let k = l.unsigned_abs() as usize - 1 + offset;
        f.move_at(k, l < 0);
    }
    log.extend(&w.shifted(offset));
}

fn step_at(f: &mut Factorization, k: usize, inverse: bool, log: &mut BraidWord) {
    f.move_at(k, inverse);
    log.push(k + 1, inverse);
}

/// Stable bubble sort of `range` by `key` using swaps of commuting neighbours.
fn sort_commuting(
    f: &mut Factorization,
    range: std::ops::Range<usize>,
    key: impl Fn(&Reflection) -> usize,
    log: &mut BraidWord,
) {
    let (lo, hi) = (range.start, range.end);
    if hi <= lo + 1 {
        return;
    }
    loop {
        let mut swapped = false;
        for k in lo..hi - 1 {
            if key(&f.factors()[k]) > key(&f.factors()[k + 1]) {
                // different keys here always mean disjoint supports
                step_at(f, k, false, log);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// A braid word `w` with `f2.apply_braid(w) == f`, or `None` when the two
/// standard forms lie in different Hurwitz orbits.
pub fn connect_standard(f: &Factorization, f2: &Factorization) -> Result<Option<BraidWord>> {
    if f.params() != f2.params() {
        return Err(Error::ParamsMismatch);
    }
    if f.product() != f2.product() {
        return Err(Error::ProductMismatch);
    }
    let params = f.params();
    let (_, data, segs) = require_standard(f)?;
    let (_, _, segs2) = require_standard(f2)?;
    if segs.iter().map(|s| &s.cycles).ne(segs2.iter().map(|s| &s.cycles)) {
        return Ok(None);
    }
    for seg in &segs {
        let r = block_gcd(params, seg.cycle_weights.iter().copied());
        let a = segment_pair_weights(f, seg);
        let a2 = segment_pair_weights(f2, seg);
        if a.iter().zip(&a2).any(|(x, y)| x % r != y % r) {
            return Ok(None);
        }
    }

    let mut cur = f2.clone();
    let mut word = BraidWord::empty();
    let m = params.m();
    for seg in &segs {
        // doubled path
        let a = segment_pair_weights(f, seg);
        let a2 = segment_pair_weights(&cur, seg);
        let d = seg.differences(params);
        let matrix = solve_transfer(&d, &a2, &a, m)?.expect("congruence was checked");
        run(&mut cur, &matrix.braid_word(m, seg.has_loop()), seg.start, &mut word);
        debug_assert_eq!(
            &cur.factors()[seg.start..seg.start + seg.prefix_len()],
            &f.factors()[seg.start..seg.start + seg.prefix_len()]
        );

        // forests, grouped by cycle on both sides, then peeled into a canonical shape
        let lo = seg.start + seg.prefix_len();
        let hi = seg.start + seg.len;
        let cycle_key = |r: &Reflection| data.cycle_of(r.vertices().0);
        let mut target = f.clone();
        let mut target_sort = BraidWord::empty();
        sort_commuting(&mut target, lo..hi, cycle_key, &mut target_sort);
        sort_commuting(&mut cur, lo..hi, cycle_key, &mut word);
        let mut target_peel = BraidWord::empty();
        let mut k = lo;
        while k < hi {
            let key = cycle_key(&cur.factors()[k]);
            let mut end = k;
            while end < hi && cycle_key(&cur.factors()[end]) == key {
                end += 1;
            }
            let cycle = &data.cycles[key];
            peel_forest(&mut cur, k, end, cycle, &mut word)?;
            peel_forest(&mut target, k, end, cycle, &mut target_peel)?;
            k = end;
        }
        if cur.factors()[lo..hi] != target.factors()[lo..hi] {
            return Err(Error::InvalidBraid(
                "forest factorizations with equal products differ after peeling".into(),
            ));
        }
        run(&mut cur, &target_peel.inverse(), 0, &mut word);
        run(&mut cur, &target_sort.inverse(), 0, &mut word);
    }
    debug_assert_eq!(&cur, f);
    Ok(Some(word))
}

/// A standard form in the Hurwitz orbit of a shortest factorization, with the
/// braid word `w` such that `f.apply_braid(w)` is that standard form.
pub fn normalize(f: &Factorization) -> Result<(Factorization, BraidWord)> {
    let g = f.require_shortest()?;
    let data = cycle_data(&g);
    if standard_segments(f, &data).is_some() {
        return Ok((f.clone(), BraidWord::empty()));
    }
    let labels = factorization_graph(f).component_labels();
    let mut cur = f.clone();
    let mut word = BraidWord::empty();

    sort_commuting(&mut cur, 0..f.len(), |r| labels[r.vertices().0], &mut word);

    for seg in segments(&cur, &data) {
        let seg_end = seg.start + seg.len;
        // park the loop at the end of the segment without changing it
        if let Some(q) = (seg.start..seg_end).find(|&k| cur.factors()[k].is_diagonal()) {
            for k in q..seg_end - 1 {
                step_at(&mut cur, k, true, &mut word);
            }
        }
        let trans_end = seg_end - usize::from(seg.has_loop());
        let mut hi = trans_end;
        let mut others: Vec<usize> = seg
            .cycles
            .iter()
            .flat_map(|&k| data.cycles[k].points[1..].iter().copied())
            .collect();
        others.sort_unstable_by(|x, y| y.cmp(x));
        for z in others {
            reduce_degree(&mut cur, seg.start, hi, z, 1, &mut word)?;
            hi -= 1;
        }
        build_core(&mut cur, seg.start, hi, &seg.vertices, &mut word)?;

        if seg.has_loop() {
            route_loop(&mut cur, &seg, &mut word);
        }
    }
    debug_assert!(standard_segments(&cur, &data).is_some());
    Ok((cur, word))
}

fn touches(r: &Reflection, z: usize) -> bool {
    let (a, b) = r.vertices();
    a == z || b == z
}

fn other_end(r: &Reflection, z: usize) -> usize {
    let (a, b) = r.vertices();
    if a == z {
        b
    } else {
        a
    }
}

/// Moves every factor of `lo..hi` touching `z` to the end of the range, keeping
/// their order. Each one only passes factors avoiding `z`, so it keeps touching
/// `z` and the passed factors are unchanged. Returns how many there are.
fn gather(f: &mut Factorization, lo: usize, hi: usize, z: usize, log: &mut BraidWord) -> usize {
    let mut end = hi;
    for k in (lo..hi).rev() {
        if touches(&f.factors()[k], z) {
            for j in k..end - 1 {
                step_at(f, j, false, log);
            }
            end -= 1;
        }
    }
    hi - end
}

/// Lowers the number of factors at `z` to `keep`, gathered at the end of
/// `lo..hi`. Two neighbours `(z a), (z b)` with `a != b` become `(z b), (a b)`.
///
/// The range must hold transposition-like factors whose graph is connected and
/// whose count is minimal for that; then a distinct neighbouring pair exists
/// until the degree reaches 1 (z moved by the product) or 2 (z fixed).
fn reduce_degree(
    f: &mut Factorization,
    lo: usize,
    hi: usize,
    z: usize,
    keep: usize,
    log: &mut BraidWord,
) -> Result<()> {
    loop {
        let d = gather(f, lo, hi, z, log);
        if d <= keep {
            return Ok(());
        }
        let q = (hi - d..hi - 1)
            .find(|&q| other_end(&f.factors()[q], z) != other_end(&f.factors()[q + 1], z))
            .ok_or(Error::InvalidBraid(format!(
                "factors at point {} cannot be merged",
                z + 1
            )))?;
        step_at(f, q, false, log);
    }
}

/// Peels a minimal factorization of one cycle, occupying `lo..hi`, into the
/// canonical shape: points other than the smallest become leaves from the
/// largest down, each leaf edge moved to the back.
fn peel_forest(
    f: &mut Factorization,
    lo: usize,
    hi: usize,
    cycle: &Cycle,
    log: &mut BraidWord,
) -> Result<()> {
    let mut points = cycle.points[1..].to_vec();
    points.sort_unstable_by(|x, y| y.cmp(x));
    let mut end = hi;
    for z in points {
        reduce_degree(f, lo, end, z, 1, log)?;
        end -= 1;
    }
    Ok(())
}

/// Turns `lo..hi`, a connected factorization of the identity on the points
/// `core` with `2|core| - 2` factors, into the doubled path along `core`.
fn build_core(f: &mut Factorization, lo: usize, hi: usize, core: &[usize], log: &mut BraidWord) -> Result<()> {
    let mut hi = hi;
    for s in (1..core.len()).rev() {
        let (z, target) = (core[s], core[s - 1]);
        reduce_degree(f, lo, hi, z, 2, log)?;
        let mut p = hi - 2;
        let mut a = other_end(&f.factors()[p], z);
        if other_end(&f.factors()[p + 1], z) != a {
            return Err(Error::InvalidBraid("the last core point is not a doubled leaf".into()));
        }
        // walk the pair (z a), (z a) along a path from a to target in the rest
        let rest: Vec<(usize, usize)> = (lo..hi - 2).map(|k| f.factors()[k].vertices()).collect();
        for w in graph_path(&rest, a, target) {
            let j = (lo..hi)
                .filter(|&k| k != p && k != p + 1)
                .find(|&k| {
                    let (x, y) = f.factors()[k].vertices();
                    (x, y) == (a.min(w), a.max(w))
                })
                .expect("path edges stay in place");
            // the pair passes any factor without changing it
            while p > j + 1 {
                step_at(f, p - 1, false, log);
                step_at(f, p, false, log);
                p -= 1;
            }
            while p + 2 < j {
                step_at(f, p + 1, true, log);
                step_at(f, p, true, log);
                p += 1;
            }
            if j < p {
                // (a w), (z a), (z a) -> (z w), (z w), (a w)
                step_at(f, j, true, log);
                step_at(f, j + 1, true, log);
                p = j;
            } else {
                // (z a), (z a), (a w) -> (a w), (z w), (z w)
                step_at(f, p + 1, false, log);
                step_at(f, p, false, log);
                p += 1;
            }
            a = w;
        }
        while p + 2 < hi {
            step_at(f, p + 1, true, log);
            step_at(f, p, true, log);
            p += 1;
        }
        hi -= 2;
    }
    Ok(())
}

/// Vertices after `from` on a shortest path to `to` through `edges`.
fn graph_path(edges: &[(usize, usize)], from: usize, to: usize) -> Vec<usize> {
    let mut prev: HashMap<usize, usize> = HashMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(x, y) in edges {
            let w = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        path.push(v);
        v = prev[&v];
    }
    path.reverse();
    path
}

/// Moves the loop (parked at the segment end) to the last smallest point of
/// the block and then to just after the doubled path. Sliding past an edge
/// either conjugates the edge (loop unchanged) or conjugates the loop (its
/// point moves along the edge); projections of the edges never change.
fn route_loop(f: &mut Factorization, seg: &Segment, log: &mut BraidWord) {
    let base = seg.start;
    let end = seg.start + seg.len;
    let mut q = end - 1;
    let edges: Vec<(usize, usize)> = f.factors()[base..q].iter().map(|r| r.vertices()).collect();
    let x = f.factors()[q].vertices().0;
    let target = seg.vertices[seg.c() - 1];

    // path x -> target through the edge list
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue = VecDeque::from([x]);
    let mut seen = vec![false; f.params().n()];
    seen[x] = true;
    while let Some(v) = queue.pop_front() {
        for (e, &(a, b)) in edges.iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                prev.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = target;
    while v != x {
        let (u, e) = prev[&v];
        path.push(e);
        v = u;
    }
    path.reverse();

    // edge e sits at base + e while the loop is to its right, base + e + 1 otherwise
    let slide_to = |f: &mut Factorization, q: &mut usize, to: usize, log: &mut BraidWord| {
        while *q > to {
            step_at(f, *q - 1, false, log);
            *q -= 1;
        }
        while *q < to {
            step_at(f, *q, true, log);
            *q += 1;
        }
    };
    for e in path {
        let pos = base + e;
        if q > pos {
            slide_to(f, &mut q, pos + 1, log);
            step_at(f, q - 1, true, log);
            q -= 1;
        } else {
            slide_to(f, &mut q, pos, log);
            step_at(f, q, false, log);
            q += 1;
        }
    }
    slide_to(f, &mut q, base + 2 * seg.c() - 2, log);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_element;

    fn pr(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    const WORKED: &str = "[(1 3); 1]; [(1 3); 23]; [(3 6); 0]; [(3 6); 29]; [id; (0,0,0,0,0,5)]; [(1 2); 1]; [(3 4); 2]; [(4 5); 3]";

    #[test]
    fn worked_graph_and_standard_form() {
        let params = pr(30, 5, 6);
        let f = Factorization::parse(WORKED, params).unwrap();
        let graph = factorization_graph(&f);
        assert_eq!(
            graph.edges(),
            &[(0, 2), (0, 2), (2, 5), (2, 5), (5, 5), (0, 1), (2, 3), (3, 4)]
        );
        assert_eq!(graph.components(), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(induced_partition(&f).blocks(), &[vec![0, 1, 2]]);
        assert!(is_standard_form(&f).unwrap());
        assert_eq!(pair_weights(&f).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn worked_construction() {
        let params = pr(30, 5, 6);
        let g = parse_element("[(1 2)(3 4 5); (1,21,2,3,2,6)]", params).unwrap();
        let partition = CyclePartition::new(&g, vec![vec![0, 1, 2]]).unwrap();
        let f = build_standard_factorization(&g, &partition, &[vec![1, 0]]).unwrap();
        assert_eq!(f.to_string(), WORKED);
    }

    #[test]
    fn doubled_pair_construction() {
        let params = pr(4, 4, 2);
        let g = parse_element("[id;(2,2)]", params).unwrap();
        let partition = CyclePartition::new(&g, vec![vec![0, 1]]).unwrap();
        let f = build_standard_factorization(&g, &partition, &[vec![0]]).unwrap();
        assert_eq!(f.to_string(), "[(1 2); 0]; [(1 2); 2]");
        assert_eq!(pair_weights(&f).unwrap(), vec![vec![0]]);
        assert!(matches!(
            build_standard_factorization(&g, &partition, &[vec![0, 1]]),
            Err(Error::Arity { .. })
        ));

        let moved = f
            .apply_braid(&elementary_braid(ElementaryBraid::SigmaPair(1), 2, false).unwrap())
            .unwrap();
        assert_eq!(moved.to_string(), "[(1 2); 2]; [(1 2); 0]");
    }

    #[test]
    fn tau_word_text() {
        let w = elementary_braid(ElementaryBraid::Tau(1, 2), 3, false).unwrap();
        assert_eq!(w.to_string(), "-2 -1 -3 -2 -2 -1 -3 -2");
        assert!(elementary_braid(ElementaryBraid::Gamma(1), 3, false).is_err());
        assert!(elementary_braid(ElementaryBraid::Tau(2, 2), 4, false).is_err());
    }

    #[test]
    fn transfer_examples() {
        let t = solve_transfer(&[2, 0], &[0], &[2], 4).unwrap().unwrap();
        assert_eq!(t.entries()[0][0], 1);
        assert_eq!(t.entries()[1][0], 0);
        assert!(solve_transfer(&[2, 0], &[0], &[1], 4).unwrap().is_none());
        let same = solve_transfer(&[3, 5, 1], &[2, 7], &[2, 7], 12).unwrap().unwrap();
        assert_eq!(same.apply(&[3, 5, 1], &[2, 7], 12), vec![2, 7]);
        assert!(matches!(
            solve_transfer(&[2, 0], &[0, 1], &[2], 4),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn connect_in_dihedral_case() {
        let params = pr(4, 4, 2);
        let f = Factorization::parse("[(1 2);0]; [(1 2);2]", params).unwrap();
        let f2 = Factorization::parse("[(1 2);1]; [(1 2);3]", params).unwrap();
        let f3 = Factorization::parse("[(1 2);2]; [(1 2);0]", params).unwrap();
        assert_eq!(connect_standard(&f, &f).unwrap(), Some(BraidWord::empty()));
        assert_eq!(connect_standard(&f, &f2).unwrap(), None);
        let w = connect_standard(&f3, &f).unwrap().unwrap();
        assert_eq!(f.apply_braid(&w).unwrap(), f3);
    }

    #[test]
    fn normalize_worked_factorization() {
        let params = pr(30, 5, 6);
        let f = Factorization::parse(WORKED, params).unwrap();
        let (same, w) = normalize(&f).unwrap();
        assert_eq!(same, f);
        assert!(w.is_empty());

        let shaken = f.hurwitz_move(4, true).unwrap();
        assert!(!is_standard_form(&shaken).unwrap());
        let (std, w) = normalize(&shaken).unwrap();
        assert!(is_standard_form(&std).unwrap());
        assert_eq!(shaken.apply_braid(&w).unwrap(), std);
        assert_eq!(induced_partition(&std), induced_partition(&f));
    }

    #[test]
    fn normalize_rejects_long_factorizations() {
        let params = pr(2, 1, 2);
        let f = Factorization::parse("[(1 2);0]; [(1 2);0]", params).unwrap();
        assert!(matches!(
            normalize(&f),
            Err(Error::NotShortest { len: 2, length: 0 })
        ));
    }
}
