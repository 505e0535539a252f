//! Subgroups generated by factorizations and the Hurwitz-orbit criterion.
//!
//! For a shortest factorization, each component of the factorization graph
//! generates a conjugate (by a diagonal element) of `G(m/r, gcd(m,d)/r, n_B)`,
//! where `r` is the gcd of `m` and the block's cycle weights, `d` is the block
//! weight and `n_B` the number of points in the component.

use std::collections::{BTreeSet, VecDeque};

use crate::arith::{gcd, gcd_mod};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams, Reflection};
use crate::hurwitz::Factorization;
use crate::length::{cycle_data, CyclePartition};
use crate::limits::Limits;
use crate::standard::{factorization_graph, induced_partition, normalize, pair_weights};

/// Structure of the subgroup generated by one graph component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentFingerprint {
    /// Points of the component, ascending (0-based).
    pub support: Vec<usize>,
    /// `gcd(m, cycle weights)`.
    pub r: u32,
    /// Block weight mod `m`.
    pub weight: u32,
    /// `(m/r, gcd(m, d)/r, n_B)`.
    pub isomorphism_type: GroupParams,
    /// Diagonal conjugator on `support`, anchored at 0 on the smallest point and
    /// reduced mod `r`: conjugating by it turns every factor's weights into multiples of `r`.
    pub conjugator: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupFingerprint {
    /// One entry per component, ordered by smallest point.
    pub components: Vec<ComponentFingerprint>,
}

impl SubgroupFingerprint {
    /// `∏ |G(m/r, gcd(m,d)/r, n_B)|` over components.
    pub fn order(&self) -> Option<u128> {
        self.components
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.isomorphism_type.order()?))
    }
}

/// Identifies the generated subgroup of a shortest factorization from its
/// cycle weights and a spanning tree of each component.
pub fn identify_generated_subgroup(f: &Factorization) -> Result<SubgroupFingerprint> {
    let g = f.require_shortest()?;
    let params = f.params();
    let m = params.m();
    let data = cycle_data(&g);
    let graph = factorization_graph(f);
    let labels = graph.component_labels();
    let mut components = Vec::new();
    for support in graph.components() {
        let label = labels[support[0]];
        let weights: Vec<u32> = data
            .cycles
            .iter()
            .filter(|c| labels[c.min()] == label)
            .map(|c| c.weight)
            .collect();
        let r = gcd_mod(m, weights.iter().copied());
        let weight = (weights.iter().map(|&w| w as u64).sum::<u64>() % m as u64) as u32;
        let isomorphism_type = GroupParams::new(
            m / r,
            gcd(m as u64, weight as u64) as u32 / r,
            support.len(),
        )?;

        // δ_j = δ_i - (weight of the edge at i) along a spanning tree
        let mut delta = vec![None; params.n()];
        delta[support[0]] = Some(0u32);
        let mut queue = VecDeque::from([support[0]]);
        while let Some(v) = queue.pop_front() {
            let dv = delta[v].expect("queued points are assigned");
            for t in f.factors() {
                let Reflection::Transposition { i, j, a } = *t else {
                    continue;
                };
                let (i, j) = (i as usize, j as usize);
                let (next, step) = if i == v {
                    (j, params.neg(a))
                } else if j == v {
                    (i, a)
                } else {
                    continue;
                };
                if delta[next].is_none() {
                    delta[next] = Some(params.add(dv, step));
                    queue.push_back(next);
                }
            }
        }
        let conjugator = support
            .iter()
            .map(|&v| delta[v].expect("components are connected") % r)
            .collect();
        components.push(ComponentFingerprint {
            support,
            r,
            weight,
            isomorphism_type,
            conjugator,
        });
    }
    Ok(SubgroupFingerprint { components })
}

/// The subgroup generated by the factors, by closing under right multiplication.
pub fn generated_subgroup(f: &Factorization, limits: &Limits) -> Result<BTreeSet<Element>> {
    let params = f.params();
    let gens: BTreeSet<Element> = f.factors().iter().map(|r| r.to_element(params)).collect();
    let id = Element::identity(params);
    let mut set = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for t in &gens {
            let y = x.compose(t);
            if !set.contains(&y) {
                if set.len() >= limits.max_closure {
                    return Err(Error::LimitExceeded {
                        what: "generated subgroup size",
                        limit: limits.max_closure,
                    });
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(set)
}

/// Diagonal elements of the model group of one component: weights that are
/// multiples of `r` on the support, zero elsewhere, summing to `0 mod gcd(m, d)`.
pub fn expected_diagonal_subgroup(params: GroupParams, component: &ComponentFingerprint) -> BTreeSet<Element> {
    let m = params.m();
    let r = component.r;
    let modulus = gcd(m as u64, component.weight as u64);
    let steps = (m / r) as usize;
    let k = component.support.len();
    let mut out = BTreeSet::new();
    let mut digits = vec![0usize; k];
    loop {
        let sum: u64 = digits.iter().map(|&x| (x as u64) * r as u64).sum();
        if sum.is_multiple_of(modulus) {
            let mut weights = vec![0i64; params.n()];
            for (&v, &x) in component.support.iter().zip(&digits) {
                weights[v] = (x as i64) * r as i64;
            }
            out.insert(Element::diagonal(params, weights).expect("multiples of gcd(m, d) are members"));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < steps {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Complete Hurwitz-orbit invariant of a shortest factorization: the induced
/// partition and each block's pair weights mod `r(B)` after normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitInvariant {
    pub partition: CyclePartition,
    pub residues: Vec<Vec<u32>>,
}

pub fn orbit_invariant(f: &Factorization) -> Result<OrbitInvariant> {
    let (std, _) = normalize(f)?;
    let partition = induced_partition(&std);
    let data = cycle_data(&std.product());
    let weights = pair_weights(&std)?;
    let m = std.params().m();
    let residues = partition
        .blocks()
        .iter()
        .zip(weights)
        .map(|(block, a)| {
            let r = gcd_mod(m, block.iter().map(|&k| data.cycles[k].weight));
            a.into_iter().map(|x| x % r).collect()
        })
        .collect();
    Ok(OrbitInvariant { partition, residues })
}

/// Whether two shortest factorizations of one element are Hurwitz-equivalent.
pub fn same_orbit(f: &Factorization, f2: &Factorization) -> Result<bool> {
    if f.params() != f2.params() {
        return Err(Error::ParamsMismatch);
    }
    if f.product() != f2.product() {
        return Err(Error::ProductMismatch);
    }
    Ok(orbit_invariant(f)? == orbit_invariant(f2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    #[test]
    fn closures_in_rank_two() {
        let params = pr(2, 1, 2);
        let limits = Limits::default();
        let t = Factorization::parse("[(1 2);0]; [(1 2);1]", params).unwrap();
        let closure = generated_subgroup(&t, &limits).unwrap();
        let names: Vec<String> = closure.iter().map(|g| g.to_string()).collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&"[id; (1,1)]".to_string()));
        let fp = identify_generated_subgroup(&t).unwrap();
        assert_eq!(fp.components.len(), 1);
        assert_eq!(fp.components[0].isomorphism_type, pr(2, 2, 2));
        assert_eq!(fp.order(), Some(4));

        let d = Factorization::parse("[id;(1,0)]; [id;(0,1)]", params).unwrap();
        let closure = generated_subgroup(&d, &limits).unwrap();
        assert_eq!(closure.len(), 4);
        assert!(closure.iter().all(|g| g.is_diagonal()));
        let fp = identify_generated_subgroup(&d).unwrap();
        let types: Vec<GroupParams> = fp.components.iter().map(|c| c.isomorphism_type).collect();
        assert_eq!(types, vec![pr(2, 1, 1), pr(2, 1, 1)]);

        let empty = Factorization::empty(params);
        assert_eq!(generated_subgroup(&empty, &limits).unwrap().len(), 1);
    }

    #[test]
    fn orbit_verdicts() {
        let params = pr(2, 1, 2);
        let t01 = Factorization::parse("[(1 2);0]; [(1 2);1]", params).unwrap();
        let t10 = Factorization::parse("[(1 2);1]; [(1 2);0]", params).unwrap();
        let dd = Factorization::parse("[id;(1,0)]; [id;(0,1)]", params).unwrap();
        assert!(same_orbit(&t01, &t10).unwrap());
        assert!(!same_orbit(&t01, &dd).unwrap());
        assert!(same_orbit(&dd, &dd).unwrap());
    }

    #[test]
    fn closure_guard() {
        let params = pr(4, 1, 4);
        let f = Factorization::parse("[(1 2);1]; [(2 3);0]; [(3 4);0]; [id;(1,0,0,0)]", params).unwrap();
        let limits = Limits {
            max_closure: 50,
            ..Limits::default()
        };
        assert!(generated_subgroup(&f, &limits).unwrap_err().is_limit());
    }
}
