//! Exact computations in the complex reflection groups G(m,p,n): reflection
//! length, shortest reflection factorizations, the Hurwitz braid action on
//! them, generated subgroups and quasi-Coxeter elements.
//!
//! Elements are `[u; (a_1, ..., a_n)]` with exponents of a primitive `m`-th
//! root of unity; nothing is ever evaluated numerically.

pub mod arith;
pub mod crosscheck;
mod error;
pub mod group;
pub mod hurwitz;
pub mod length;
mod limits;
pub mod notation;
pub mod qc;
pub mod standard;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::{enumerate_elements, enumerate_reflections, reflection_count, Element, GroupParams, Reflection};
pub use hurwitz::{
    count_orbits_formula, enumerate_shortest_factorizations, hurwitz_orbit, hurwitz_orbits, is_hurwitz_transitive,
    orbit_count_breakdown, BraidWord, Factorization, OrbitCensus, OrbitRecord,
};
pub use length::{
    cycle_data, enumerate_cycle_partitions, max_cycle_partitions, partition_value, reflection_length,
    reflection_length_bruteforce, reflection_length_special, Cycle, CycleData, CyclePartition,
};
pub use limits::{Limits, MAX_CYCLES};
pub use notation::{format_reflections, parse_element, parse_reflection, parse_reflections};
pub use qc::{classify_rank_length, qc_report, QcReport, RankLengthClassification, RankLengthRule};
pub use standard::{
    build_standard_factorization, connect_standard, elementary_braid, factorization_graph, induced_partition,
    is_standard_form, normalize, pair_weights, solve_transfer, DoubledPath, ElementaryBraid, FactorizationGraph,
    TransferMatrix,
};
pub use subgroup::{
    generated_subgroup, identify_generated_subgroup, orbit_invariant, same_orbit, OrbitInvariant, SubgroupFingerprint,
};
