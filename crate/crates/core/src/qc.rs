//! Quasi-Coxeter elements: those with a shortest factorization generating the
//! whole group (weak) or with every shortest factorization doing so (strong).

use crate::arith::{gcd, gcd_mod};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::length::{cycle_data, reflection_length};
use crate::limits::MAX_CYCLES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QcReport {
    /// The cycle weights generate `Z/mZ`.
    pub cycle_weights_generate: bool,
    /// The element weight generates `pZ/mZ` (automatic when `p = m`).
    pub weight_generates: bool,
    /// No nonempty proper subset of cycles has weight `0 mod p`.
    pub no_zero_subset: bool,
    pub weak: bool,
    pub strong: bool,
}

/// Evaluates the three conditions. In rank one the group is cyclic and the
/// verdict is read off directly: `[id; (b)]` generates it iff `gcd(m, b) = p`.
pub fn qc_report(g: &Element) -> Result<QcReport> {
    let params = g.params();
    let (m, p) = (params.m(), params.p());
    let data = cycle_data(g);
    let c = data.len();
    if c > MAX_CYCLES {
        return Err(Error::TooManyCycles {
            cycles: c,
            max: MAX_CYCLES,
        });
    }
    let weights: Vec<u32> = data.weights().collect();
    let cycle_weights_generate = gcd_mod(m, weights.iter().copied()) == 1;
    let weight_generates = p == m || gcd(m as u64, g.weight() as u64) == p as u64;
    let full = (1usize << c) - 1;
    let no_zero_subset = (1..full).all(|mask| {
        let sum: u64 = (0..c)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| weights[k] as u64)
            .sum();
        !sum.is_multiple_of(p as u64)
    });
    let qc = if params.n() == 1 {
        gcd(m as u64, g.weight() as u64) == p as u64
    } else {
        cycle_weights_generate && weight_generates && no_zero_subset
    };
    Ok(QcReport {
        cycle_weights_generate,
        weight_generates,
        no_zero_subset,
        weak: qc,
        strong: qc,
    })
}

/// Which closed-form rule decided [`classify_rank_length`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankLengthRule {
    /// `p = 1`: a single cycle of weight prime to `m`.
    SingleCycle,
    /// `p = m`: exactly two cycles, each of weight prime to `m`.
    TwoCycles,
    /// `1 < p < m`, `n ≥ 2`: never.
    None,
    /// Degenerate parameters (`m = 1` or `n = 1`): the conditions plus `ℓ_R = n`.
    Conditions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankLengthClassification {
    pub rule: RankLengthRule,
    /// Whether `g` is quasi-Coxeter with reflection length `n`.
    pub qc_of_rank_length: bool,
    pub length: usize,
}

/// Decides whether `g` is a quasi-Coxeter element of reflection length `n`.
pub fn classify_rank_length(params: GroupParams, g: &Element) -> Result<RankLengthClassification> {
    if g.params() != params {
        return Err(Error::ParamsMismatch);
    }
    let (m, p, n) = (params.m(), params.p(), params.n());
    let data = cycle_data(g);
    let length = reflection_length(g)?;
    let primitive = |w: u32| gcd(m as u64, w as u64) == 1;
    let (rule, verdict) = if m == 1 || n == 1 {
        let report = qc_report(g)?;
        (RankLengthRule::Conditions, report.weak && length == n)
    } else if p == 1 {
        (
            RankLengthRule::SingleCycle,
            data.len() == 1 && primitive(data.cycles[0].weight),
        )
    } else if p == m {
        (
            RankLengthRule::TwoCycles,
            data.len() == 2 && data.weights().all(primitive),
        )
    } else {
        (RankLengthRule::None, false)
    };
    Ok(RankLengthClassification {
        rule,
        qc_of_rank_length: verdict,
        length,
    })
}
