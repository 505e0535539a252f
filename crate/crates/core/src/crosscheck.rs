//! Closed formulas against brute force over every element of a small group.

use rayon::prelude::*;

use crate::error::Result;
use crate::group::{enumerate_elements, Element, GroupParams};
use crate::hurwitz::{count_orbits_formula, enumerate_shortest_factorizations, hurwitz_orbits, is_hurwitz_transitive};
use crate::length::{cayley_distances, reflection_length, reflection_length_special};
use crate::limits::Limits;

/// Pass/fail tally of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Up to a handful of failing elements, printed.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, g: &Element) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(g.to_string());
            }
        }
    }

    fn merge(mut self, other: SuiteResult) -> Self {
        self.passed += other.passed;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < 5 {
                self.failures.push(f);
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub params: GroupParams,
    pub elements: usize,
    pub suites: Vec<SuiteResult>,
}

impl CrossCheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

const LENGTH: &str = "length formula vs breadth-first search";
const SPECIAL: &str = "simplified length formula vs general formula";
const ORBITS: &str = "orbit-count formula vs orbit census";
const TRANSITIVE: &str = "transitivity test vs orbit count 1";

/// Runs every suite over all elements of `params`; elements are checked in parallel.
pub fn cross_check(params: GroupParams, limits: &Limits) -> Result<CrossCheckReport> {
    let elements = enumerate_elements(params, limits.max_states)?;
    let distances = cayley_distances(params, limits)?;
    let special = params.p() == 1 || params.p() == params.m();
    let per_element: Vec<Vec<SuiteResult>> = elements
        .par_iter()
        .map(|g| -> Result<Vec<SuiteResult>> {
            let mut out = vec![SuiteResult::new(LENGTH), SuiteResult::new(ORBITS), SuiteResult::new(TRANSITIVE)];
            let length = reflection_length(g)?;
            out[0].record(length == distances[g], g);
            let fs = enumerate_shortest_factorizations(g, limits)?;
            let census = hurwitz_orbits(&fs, limits)?;
            let formula = count_orbits_formula(g)?;
            out[1].record(formula == census.orbits.len() as u128, g);
            out[2].record(is_hurwitz_transitive(g)? == (formula == 1), g);
            if special {
                let mut s = SuiteResult::new(SPECIAL);
                s.record(reflection_length_special(g)? == length, g);
                out.push(s);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut suites: Vec<SuiteResult> = Vec::new();
    for row in per_element {
        for (k, s) in row.into_iter().enumerate() {
            if k < suites.len() {
                let merged = std::mem::replace(&mut suites[k], SuiteResult::new(s.name)).merge(s);
                suites[k] = merged;
            } else {
                suites.push(s);
            }
        }
    }
    Ok(CrossCheckReport {
        params,
        elements: elements.len(),
        suites,
    })
}
