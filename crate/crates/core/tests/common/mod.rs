//! Helpers shared by the integration tests: small groups, an independent
//! monomial-matrix model and a few brute-force searches.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use gmpn::{enumerate_elements, enumerate_reflections, Element, Factorization, GroupParams, Limits};

pub fn group(m: u32, p: u32, n: usize) -> GroupParams {
    GroupParams::new(m, p, n).unwrap()
}

/// The groups checked exhaustively.
pub fn small_groups() -> Vec<GroupParams> {
    [(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 3, 2), (4, 4, 2), (2, 1, 3), (2, 2, 3), (3, 3, 3)]
        .into_iter()
        .map(|(m, p, n)| group(m, p, n))
        .collect()
}

pub fn elements(params: GroupParams) -> Vec<Element> {
    enumerate_elements(params, 1_000_000).unwrap()
}

/// Monomial matrix with entries `None` (zero) or `Some(k)` for `ζ^k`, `ζ = e^{2πi/m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub m: u32,
    pub rows: Vec<Vec<Option<u32>>>,
}

impl Monomial {
    /// Column `j` has `ζ^{a_j}` in row `u(j)`.
    pub fn of(g: &Element) -> Monomial {
        let n = g.n();
        let mut rows = vec![vec![None; n]; n];
        for j in 0..n {
            rows[g.image(j)][j] = Some(g.weights()[j]);
        }
        Monomial { m: g.params().m(), rows }
    }

    /// Ordinary matrix product; every sum has at most one nonzero term.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.rows.len();
        let mut rows = vec![vec![None; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut terms = (0..n).filter_map(|k| Some((self.rows[i][k]? + other.rows[k][j]?) % self.m));
                *cell = terms.next();
                assert!(terms.next().is_none(), "product of monomial matrices is monomial");
            }
        }
        Monomial { m: self.m, rows }
    }

    /// Dimension of the fixed space: one per cycle whose entries multiply to 1.
    pub fn fixed_dim(&self) -> usize {
        let n = self.rows.len();
        let target: Vec<(usize, u32)> = (0..n)
            .map(|j| {
                let i = (0..n).find(|&i| self.rows[i][j].is_some()).unwrap();
                (i, self.rows[i][j].unwrap())
            })
            .collect();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut total = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                total += target[j].1;
                j = target[j].0;
            }
            if total % self.m == 0 {
                count += 1;
            }
        }
        count
    }

    /// Exponent of the product of the nonzero entries.
    pub fn entry_exponent(&self) -> u32 {
        self.rows.iter().flatten().flatten().sum::<u32>() % self.m
    }
}

/// `|G(m,p,n)| = m^n n! / p`.
pub fn order(m: u32, p: u32, n: usize) -> u128 {
    (m as u128).pow(n as u32) * (1..=n as u128).product::<u128>() / p as u128
}

/// Reflection length by breadth-first search from the identity.
pub fn bfs_lengths(params: GroupParams) -> HashMap<Element, usize> {
    let gens: Vec<Element> = enumerate_reflections(params).iter().map(|r| r.to_element(params)).collect();
    let id = Element::identity(params);
    let mut dist = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for t in &gens {
            let y = x.multiply(t).unwrap();
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Hurwitz orbits by plain breadth-first search, as a partition of `fs` (indices).
pub fn bfs_orbit_labels(fs: &[Factorization]) -> Vec<usize> {
    let index: HashMap<&Factorization, usize> = fs.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let mut label = vec![usize::MAX; fs.len()];
    let mut next = 0;
    for s in 0..fs.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let mut seen = HashSet::from([fs[s].clone()]);
        let mut queue = VecDeque::from([fs[s].clone()]);
        while let Some(f) = queue.pop_front() {
            if let Some(&k) = index.get(&f) {
                label[k] = next;
            }
            for i in 1..f.len() {
                for inverse in [false, true] {
                    let g = f.hurwitz_move(i, inverse).unwrap();
                    if seen.insert(g.clone()) {
                        queue.push_back(g);
                    }
                }
            }
        }
        next += 1;
    }
    label
}

pub fn limits() -> Limits {
    Limits::default()
}
