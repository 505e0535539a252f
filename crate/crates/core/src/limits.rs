/// Caps on the brute-force searches. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Group order / BFS frontier size for Cayley-graph and orbit searches.
    pub max_states: usize,
    /// Total factorizations produced by enumeration.
    pub max_factorizations: usize,
    /// Size of an explicitly generated subgroup.
    pub max_closure: usize,
}

/// Set partitions and subset scans are exponential in the number of cycles.
pub const MAX_CYCLES: usize = 14;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1_000_000,
            max_factorizations: 1_000_000,
            max_closure: 100_000,
        }
    }
}
