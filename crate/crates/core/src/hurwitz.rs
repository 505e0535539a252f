//! Reflection factorizations and the Hurwitz action of the braid group on them.
//!
//! `σ_i` replaces `(t_i, t_{i+1})` by `(t_{i+1}, t_{i+1}⁻¹ t_i t_{i+1})` and
//! `σ_i⁻¹` replaces it by `(t_i t_{i+1} t_i⁻¹, t_i)`. Both preserve the product.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::gcd_mod;
use crate::error::{Error, Result};
use crate::group::{enumerate_reflections, Element, GroupParams, Reflection};
use crate::length::{cycle_data, max_cycle_partitions, reflection_length, CyclePartition};
use crate::limits::Limits;
use crate::notation::{format_reflections, parse_reflections};
use crate::subgroup::{identify_generated_subgroup, SubgroupFingerprint};

/// An ordered tuple of reflections of one group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    params: GroupParams,
    factors: Vec<Reflection>,
}

impl Factorization {
    pub fn new(params: GroupParams, factors: Vec<Reflection>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|r| !params.contains_reflection(r)) {
            return Err(Error::NotReflection(format!("{bad:?} is not a reflection of {params}")));
        }
        Ok(Factorization { params, factors })
    }

    pub fn empty(params: GroupParams) -> Self {
        Factorization {
            params,
            factors: Vec::new(),
        }
    }

    pub(crate) fn from_trusted(params: GroupParams, factors: Vec<Reflection>) -> Self {
        debug_assert!(factors.iter().all(|r| params.contains_reflection(r)));
        Factorization { params, factors }
    }

    /// Parses `;`-separated reflection literals.
    pub fn parse(text: &str, params: GroupParams) -> Result<Self> {
        Ok(Factorization {
            params,
            factors: parse_reflections(text, params)?,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn factors(&self) -> &[Reflection] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `t_1 t_2 ... t_ℓ`.
    pub fn product(&self) -> Element {
        self.factors
            .iter()
            .fold(Element::identity(self.params), |acc, r| {
                acc.compose(&r.to_element(self.params))
            })
    }

    /// Whether the number of factors equals the reflection length of the product.
    pub fn is_shortest(&self) -> Result<bool> {
        Ok(reflection_length(&self.product())? == self.len())
    }

    pub(crate) fn require_shortest(&self) -> Result<Element> {
        let g = self.product();
        let length = reflection_length(&g)?;
        if length != self.len() {
            return Err(Error::NotShortest {
                len: self.len(),
                length,
            });
        }
        Ok(g)
    }

    /// Applies `σ_i` (or `σ_i⁻¹` when `inverse`) with `i` 1-based.
    pub fn hurwitz_move(&self, i: usize, inverse: bool) -> Result<Self> {
        let mut out = self.clone();
        out.apply_letter(if inverse { -(i as i64) } else { i as i64 })?;
        Ok(out)
    }

    fn apply_letter(&mut self, letter: i64) -> Result<()> {
        let index = letter.unsigned_abs() as usize;
        if index == 0 || index >= self.len() {
            return Err(Error::BraidIndex {
                index,
                len: self.len(),
            });
        }
        self.move_at(index - 1, letter < 0);
        Ok(())
    }

    /// Move on the 0-based pair `(k, k+1)`.
    pub(crate) fn move_at(&mut self, k: usize, inverse: bool) {
        let pr = self.params;
        let (s, t) = (self.factors[k], self.factors[k + 1]);
        if inverse {
            self.factors[k] = t.conjugate_inverse_by(&s, pr);
            self.factors[k + 1] = s;
        } else {
            self.factors[k] = t;
            self.factors[k + 1] = s.conjugate_by(&t, pr);
        }
    }

    /// Applies the letters of `w` from left to right.
    pub fn apply_braid(&self, w: &BraidWord) -> Result<Self> {
        if let Some(index) = w.max_index().filter(|&k| k >= self.len()) {
            return Err(Error::BraidIndex {
                index,
                len: self.len(),
            });
        }
        let mut out = self.clone();
        for &letter in w.letters() {
            out.move_at(letter.unsigned_abs() as usize - 1, letter < 0);
        }
        Ok(out)
    }

    /// All factorizations one move away, in generator order `σ_1, σ_1⁻¹, σ_2, ...`.
    pub fn neighbors(&self) -> impl Iterator<Item = Factorization> + '_ {
        (0..self.len().saturating_sub(1)).flat_map(move |k| {
            [false, true].into_iter().map(move |inverse| {
                let mut next = self.clone();
                next.move_at(k, inverse);
                next
            })
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_reflections(&self.factors, self.params))
    }
}

/// A sequence of signed 1-based generator indices, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidBraid("generator index 0 does not exist".into()));
        }
        Ok(BraidWord { letters })
    }

    pub fn empty() -> Self {
        BraidWord::default()
    }

    /// `σ_i` or `σ_i⁻¹`, `i` 1-based.
    pub fn generator(i: usize, inverse: bool) -> Self {
        let mut w = BraidWord::empty();
        w.push(i, inverse);
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, i: usize, inverse: bool) {
        assert!(i >= 1, "generators are 1-based");
        let i = i as i32;
        self.letters.push(if inverse { -i } else { i });
    }

    pub fn extend(&mut self, other: &BraidWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    /// The word undoing this one.
    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Every generator index shifted up by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        let offset = offset as i32;
        BraidWord {
            letters: self
                .letters
                .iter()
                .map(|&l| if l > 0 { l + offset } else { l - offset })
                .collect(),
        }
    }

    /// The word repeated `times` times.
    pub fn repeated(&self, times: usize) -> Self {
        BraidWord {
            letters: self.letters.repeat(times),
        }
    }

    /// Largest generator index used.
    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Whitespace-separated nonzero integers, e.g. `2 -3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::InvalidBraid(format!("`{tok}` is not a generator index")))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(letters)
    }
}

/// Every factorization of `g` of length `ℓ_R(g)`, sorted.
///
/// Descends by peeling off a first factor `r` whenever `r⁻¹g` is one step shorter.
pub fn enumerate_shortest_factorizations(g: &Element, limits: &Limits) -> Result<Vec<Factorization>> {
    let params = g.params();
    let reflections: Vec<(Reflection, Element)> = enumerate_reflections(params)
        .into_iter()
        .map(|r| {
            let inv = r.to_element(params).inverse();
            (r, inv)
        })
        .collect();
    let mut memo: HashMap<Element, usize> = HashMap::new();
    let length = reflection_length(g)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(length);

    struct Search<'a> {
        params: GroupParams,
        reflections: &'a [(Reflection, Element)],
        memo: &'a mut HashMap<Element, usize>,
        out: &'a mut Vec<Factorization>,
        limit: usize,
    }

    impl Search<'_> {
        fn length(&mut self, h: &Element) -> Result<usize> {
            if let Some(&l) = self.memo.get(h) {
                return Ok(l);
            }
            let l = reflection_length(h)?;
            self.memo.insert(h.clone(), l);
            Ok(l)
        }

        fn descend(&mut self, g: &Element, remaining: usize, prefix: &mut Vec<Reflection>) -> Result<()> {
            if remaining == 0 {
                if self.out.len() == self.limit {
                    return Err(Error::LimitExceeded {
                        what: "number of factorizations",
                        limit: self.limit,
                    });
                }
                self.out.push(Factorization::from_trusted(self.params, prefix.clone()));
                return Ok(());
            }
            for k in 0..self.reflections.len() {
                let (r, inv) = &self.reflections[k];
                let rest = inv.compose(g);
                if self.length(&rest)? + 1 == remaining {
                    prefix.push(*r);
                    self.descend(&rest, remaining - 1, prefix)?;
                    prefix.pop();
                }
            }
            Ok(())
        }
    }

    Search {
        params,
        reflections: &reflections,
        memo: &mut memo,
        out: &mut out,
        limit: limits.max_factorizations,
    }
    .descend(g, length, &mut prefix)?;
    Ok(out)
}

/// The full Hurwitz orbit of `f`, by breadth-first search.
pub fn hurwitz_orbit(f: &Factorization, limits: &Limits) -> Result<HashSet<Factorization>> {
    let mut seen: HashSet<Factorization> = HashSet::from([f.clone()]);
    let mut frontier = vec![f.clone()];
    while !frontier.is_empty() {
        let next: Vec<Factorization> = if frontier.len() >= 512 {
            frontier
                .par_iter()
                .flat_map_iter(|x| x.neighbors().collect::<Vec<_>>())
                .collect()
        } else {
            frontier.iter().flat_map(|x| x.neighbors()).collect()
        };
        frontier.clear();
        for x in next {
            if !seen.contains(&x) {
                if seen.len() >= limits.max_states {
                    return Err(Error::LimitExceeded {
                        what: "Hurwitz orbit size",
                        limit: limits.max_states,
                    });
                }
                seen.insert(x.clone());
                frontier.push(x);
            }
        }
    }
    Ok(seen)
}

/// One Hurwitz orbit met by [`hurwitz_orbits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Size of the full orbit.
    pub size: usize,
    /// Least member in the structural order.
    pub representative: Factorization,
    /// How many of the input factorizations fall in this orbit.
    pub input_members: usize,
    /// Structure of the generated subgroup; present for shortest factorizations.
    pub fingerprint: Option<SubgroupFingerprint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    /// Orbits sorted by representative.
    pub orbits: Vec<OrbitRecord>,
    /// For each input factorization, the index of its orbit.
    pub assignment: Vec<usize>,
}

impl OrbitCensus {
    pub fn total_size(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

/// Splits `fs` into Hurwitz orbits. Orbits are explored in full, so members
/// outside `fs` are counted in `size` as well.
pub fn hurwitz_orbits(fs: &[Factorization], limits: &Limits) -> Result<OrbitCensus> {
    if let Some(first) = fs.first() {
        let g = first.product();
        if fs.iter().any(|f| f.params() != first.params() || f.product() != g) {
            return Err(Error::ProductMismatch);
        }
    }
    let mut found: Vec<(HashSet<Factorization>, Factorization)> = Vec::new();
    let mut assignment = vec![usize::MAX; fs.len()];
    for (k, f) in fs.iter().enumerate() {
        if let Some(idx) = found.iter().position(|(orbit, _)| orbit.contains(f)) {
            assignment[k] = idx;
            continue;
        }
        let orbit = hurwitz_orbit(f, limits)?;
        let rep = orbit.iter().min().expect("orbits are nonempty").clone();
        assignment[k] = found.len();
        found.push((orbit, rep));
    }
    // renumber by representative
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].1.cmp(&found[b].1));
    let mut rank = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut input_members = vec![0; found.len()];
    for a in assignment.iter_mut() {
        *a = rank[*a];
        input_members[*a] += 1;
    }
    let orbits = order
        .into_iter()
        .enumerate()
        .map(|(new, old)| {
            let (orbit, rep) = &found[old];
            OrbitRecord {
                size: orbit.len(),
                representative: rep.clone(),
                input_members: input_members[new],
                fingerprint: identify_generated_subgroup(rep).ok(),
            }
        })
        .collect();
    Ok(OrbitCensus { orbits, assignment })
}

/// `gcd(m, weights of the cycles in the block)`.
pub fn block_gcd(params: GroupParams, cycle_weights: impl IntoIterator<Item = u32>) -> u32 {
    gcd_mod(params.m(), cycle_weights)
}

/// One block's contribution `r(B)^(|B|-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTerm {
    pub cycles: usize,
    pub r: u32,
}

/// One maximum partition and its product of block terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    pub partition: CyclePartition,
    pub blocks: Vec<BlockTerm>,
    pub count: u128,
}

/// The orbit-count formula, term by term.
pub fn orbit_count_breakdown(g: &Element) -> Result<Vec<PartitionTerm>> {
    let params = g.params();
    let data = cycle_data(g);
    max_cycle_partitions(g)?
        .into_iter()
        .map(|partition| {
            let blocks: Vec<BlockTerm> = partition
                .blocks()
                .iter()
                .map(|b| BlockTerm {
                    cycles: b.len(),
                    r: block_gcd(params, b.iter().map(|&k| data.cycles[k].weight)),
                })
                .collect();
            let mut count: u128 = 1;
            for b in &blocks {
                let term = (b.r as u128)
                    .checked_pow(b.cycles as u32 - 1)
                    .ok_or(Error::Overflow("orbit count"))?;
                count = count.checked_mul(term).ok_or(Error::Overflow("orbit count"))?;
            }
            Ok(PartitionTerm {
                partition,
                blocks,
                count,
            })
        })
        .collect()
}

/// Number of Hurwitz orbits on the shortest factorizations of `g`:
/// the sum over maximum partitions of the product over blocks of `r(B)^(|B|-1)`.
pub fn count_orbits_formula(g: &Element) -> Result<u128> {
    orbit_count_breakdown(g)?
        .iter()
        .try_fold(0u128, |acc, t| acc.checked_add(t.count))
        .ok_or(Error::Overflow("orbit count"))
}

/// One maximum partition, and each of its blocks is a single cycle or has `r(B) = 1`.
pub fn is_hurwitz_transitive(g: &Element) -> Result<bool> {
    let terms = orbit_count_breakdown(g)?;
    Ok(terms.len() == 1 && terms[0].blocks.iter().all(|b| b.cycles == 1 || b.r == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_element;

    fn pr(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    #[test]
    fn worked_factorization_product() {
        let params = pr(30, 5, 6);
        let f = Factorization::parse(
            "[(1 3); 1]; [(1 3); 23]; [(3 6); 0]; [(3 6); 29]; [id; (0,0,0,0,0,5)]; [(1 2); 1]; [(3 4); 2]; [(4 5); 3]",
            params,
        )
        .unwrap();
        let g = parse_element("[(1 2)(3 4 5); (1,21,2,3,2,6)]", params).unwrap();
        assert_eq!(f.product(), g);
        assert!(f.is_shortest().unwrap());
    }

    #[test]
    fn moves_on_a_pair() {
        let params = pr(2, 1, 2);
        let f = Factorization::parse("[(1 2);0]; [(1 2);1]", params).unwrap();
        let moved = f.hurwitz_move(1, false).unwrap();
        assert_eq!(moved.to_string(), "[(1 2); 1]; [(1 2); 0]");
        assert_eq!(moved.hurwitz_move(1, true).unwrap(), f);
        assert!(matches!(f.hurwitz_move(2, false), Err(Error::BraidIndex { index: 2, len: 2 })));

        let d = Factorization::parse("[id;(1,0)]; [id;(0,1)]", params).unwrap();
        assert_eq!(
            d.hurwitz_move(1, false).unwrap().to_string(),
            "[id; (0,1)]; [id; (1,0)]"
        );
    }

    #[test]
    fn braid_text() {
        let w: BraidWord = "2 -3  1".parse().unwrap();
        assert_eq!(w.letters(), &[2, -3, 1]);
        assert_eq!(w.to_string(), "2 -3 1");
        assert_eq!(w.inverse().to_string(), "-1 3 -2");
        assert!("1 0".parse::<BraidWord>().is_err());
        assert!("x".parse::<BraidWord>().is_err());
    }

    #[test]
    fn census_of_diagonal_pair() {
        let params = pr(2, 1, 2);
        let g = parse_element("[id;(1,1)]", params).unwrap();
        let fs = enumerate_shortest_factorizations(&g, &Limits::default()).unwrap();
        let text: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "[(1 2); 0]; [(1 2); 1]",
                "[(1 2); 1]; [(1 2); 0]",
                "[id; (1,0)]; [id; (0,1)]",
                "[id; (0,1)]; [id; (1,0)]",
            ]
        );
        let census = hurwitz_orbits(&fs, &Limits::default()).unwrap();
        assert_eq!(census.orbits.len(), 2);
        assert!(census.orbits.iter().all(|o| o.size == 2));
        assert_eq!(census.assignment, vec![0, 0, 1, 1]);
        assert_eq!(count_orbits_formula(&g).unwrap(), 2);
        assert!(!is_hurwitz_transitive(&g).unwrap());
    }

    #[test]
    fn formula_examples() {
        let g = parse_element("[id;(2,2,2,2)]", pr(4, 4, 4)).unwrap();
        assert_eq!(count_orbits_formula(&g).unwrap(), 12);
        let g = parse_element("[id;(2,2)]", pr(4, 4, 2)).unwrap();
        assert_eq!(count_orbits_formula(&g).unwrap(), 2);
        let g = parse_element("[id;(1,2)]", pr(3, 3, 2)).unwrap();
        assert_eq!(count_orbits_formula(&g).unwrap(), 1);
        assert!(is_hurwitz_transitive(&g).unwrap());
        let fs = enumerate_shortest_factorizations(&g, &Limits::default()).unwrap();
        assert_eq!(hurwitz_orbits(&fs, &Limits::default()).unwrap().orbits.len(), 1);
    }

    #[test]
    fn trivial_enumerations() {
        let params = pr(3, 1, 2);
        let id = Element::identity(params);
        let fs = enumerate_shortest_factorizations(&id, &Limits::default()).unwrap();
        assert_eq!(fs, vec![Factorization::empty(params)]);
        let r = Reflection::transposition(params, 0, 1, 2).unwrap();
        let fs = enumerate_shortest_factorizations(&r.to_element(params), &Limits::default()).unwrap();
        assert_eq!(fs, vec![Factorization::new(params, vec![r]).unwrap()]);
    }

    #[test]
    fn factorization_guard() {
        let g = parse_element("[id;(2,2,2,2)]", pr(4, 4, 4)).unwrap();
        let limits = Limits {
            max_factorizations: 10,
            ..Limits::default()
        };
        assert!(enumerate_shortest_factorizations(&g, &limits)
            .unwrap_err()
            .is_limit());
    }
}
