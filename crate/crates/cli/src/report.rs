//! Report types. Each serializes to the JSON schema described in the README
//! and renders to plain text.

use std::fmt::Write as _;

use gmpn::crosscheck::CrossCheckReport;
use gmpn::subgroup::ComponentFingerprint;
use gmpn::{CycleData, CyclePartition, Factorization, GroupParams, OrbitInvariant, SubgroupFingerprint};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Group {
    pub m: u32,
    pub p: u32,
    pub n: usize,
}

impl From<GroupParams> for Group {
    fn from(g: GroupParams) -> Self {
        Group {
            m: g.m(),
            p: g.p(),
            n: g.n(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleOut {
    /// 1-based points in cycle order.
    pub points: Vec<usize>,
    pub weight: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockOut {
    pub cycles: Vec<CycleOut>,
    pub weight: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionOut {
    pub blocks: Vec<BlockOut>,
    pub value: usize,
}

impl PartitionOut {
    pub fn new(partition: &CyclePartition, data: &CycleData) -> Self {
        let blocks = partition
            .blocks()
            .iter()
            .zip(partition.block_weights())
            .map(|(block, &weight)| BlockOut {
                cycles: block
                    .iter()
                    .map(|&k| CycleOut {
                        points: data.cycles[k].points.iter().map(|v| v + 1).collect(),
                        weight: data.cycles[k].weight,
                    })
                    .collect(),
                weight,
            })
            .collect();
        PartitionOut {
            blocks,
            value: partition.value(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push('{');
            for (j, c) in b.cycles.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let points: Vec<String> = c.points.iter().map(usize::to_string).collect();
                let _ = write!(out, "({})^{}", points.join(" "), c.weight);
            }
            let _ = write!(out, " : {}}}", b.weight);
        }
        out
    }
}

pub fn factors(f: &Factorization) -> Vec<String> {
    f.factors().iter().map(|r| r.display(f.params()).to_string()).collect()
}

fn factors_text(fs: &[String]) -> String {
    if fs.is_empty() {
        "(empty)".into()
    } else {
        fs.join("; ")
    }
}

fn word_text(w: &[i32]) -> String {
    if w.is_empty() {
        "(empty word)".into()
    } else {
        w.iter().map(i32::to_string).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentOut {
    pub support: Vec<usize>,
    pub r: u32,
    pub weight: u32,
    pub isomorphism_type: Group,
    pub conjugator: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FingerprintOut {
    pub order: Option<u128>,
    pub components: Vec<ComponentOut>,
}

impl From<&SubgroupFingerprint> for FingerprintOut {
    fn from(fp: &SubgroupFingerprint) -> Self {
        let component = |c: &ComponentFingerprint| ComponentOut {
            support: c.support.iter().map(|v| v + 1).collect(),
            r: c.r,
            weight: c.weight,
            isomorphism_type: c.isomorphism_type.into(),
            conjugator: c.conjugator.clone(),
        };
        FingerprintOut {
            order: fp.order(),
            components: fp.components.iter().map(component).collect(),
        }
    }
}

impl FingerprintOut {
    fn text(&self, indent: &str) -> String {
        let mut out = String::new();
        for c in &self.components {
            let t = c.isomorphism_type;
            let support: Vec<String> = c.support.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "{indent}points {{{}}}: G({},{},{}), r = {}, weight {}, conjugator ({})",
                support.join(" "),
                t.m,
                t.p,
                t.n,
                c.r,
                c.weight,
                c.conjugator.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            );
        }
        match self.order {
            Some(order) => {
                let _ = writeln!(out, "{indent}order {order}");
            }
            None => {
                let _ = writeln!(out, "{indent}order exceeds u128");
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermBlockOut {
    pub cycles: usize,
    pub r: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermOut {
    pub partition: PartitionOut,
    pub blocks: Vec<TermBlockOut>,
    pub count: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitOut {
    pub size: usize,
    pub representative: Vec<String>,
    pub fingerprint: Option<FingerprintOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantOut {
    pub partition: PartitionOut,
    pub residues: Vec<Vec<u32>>,
}

impl InvariantOut {
    pub fn new(inv: &OrbitInvariant, data: &CycleData) -> Self {
        InvariantOut {
            partition: PartitionOut::new(&inv.partition, data),
            residues: inv.residues.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceReason {
    SameInvariants,
    PartitionMismatch,
    ResidueMismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankLengthOut {
    pub rule: String,
    pub qc_of_rank_length: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOut {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteOut {
    pub fn all(r: &CrossCheckReport) -> Vec<SuiteOut> {
        r.suites
            .iter()
            .map(|s| SuiteOut {
                name: s.name.to_string(),
                passed: s.passed,
                failed: s.failed,
                failures: s.failures.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Reflen {
        group: Group,
        element: String,
        length: usize,
        max_partitions: Vec<PartitionOut>,
    },
    Reflections {
        group: Group,
        count: usize,
        reflections: Vec<String>,
    },
    Factorize {
        group: Group,
        element: String,
        length: usize,
        count: usize,
        factorizations: Vec<Vec<String>>,
    },
    OrbitCount {
        group: Group,
        element: String,
        count: u128,
        transitive: bool,
        terms: Vec<TermOut>,
    },
    OrbitEnumerate {
        group: Group,
        element: String,
        length: usize,
        factorizations: usize,
        orbits: Vec<OrbitOut>,
    },
    Equivalent {
        group: Group,
        equivalent: bool,
        reason: EquivalenceReason,
        invariants: [InvariantOut; 2],
    },
    Connect {
        group: Group,
        connected: bool,
        word: Option<Vec<i32>>,
    },
    Normalize {
        group: Group,
        standard_form: Vec<String>,
        word: Vec<i32>,
    },
    Subgroup {
        group: Group,
        fingerprint: FingerprintOut,
        closure_size: Option<usize>,
    },
    Qc {
        group: Group,
        element: String,
        length: usize,
        weak: bool,
        strong: bool,
        cycle_weights_generate: bool,
        weight_generates: bool,
        no_zero_subset: bool,
        rank_length: RankLengthOut,
    },
    CrossCheck {
        group: Group,
        elements: usize,
        passed: bool,
        suites: Vec<SuiteOut>,
    },
}

impl Report {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let o = &mut out;
        match self {
            Report::Reflen {
                length, max_partitions, ..
            } => {
                let _ = writeln!(o, "{length}");
                let _ = writeln!(o, "maximum partitions ({}):", max_partitions.len());
                for p in max_partitions {
                    let _ = writeln!(o, "  {}", p.text());
                }
            }
            Report::Reflections { count, reflections, .. } => {
                let _ = writeln!(o, "{count}");
                for r in reflections {
                    let _ = writeln!(o, "{r}");
                }
            }
            Report::Factorize {
                length,
                count,
                factorizations,
                ..
            } => {
                let _ = writeln!(o, "{count} factorizations of length {length}");
                for f in factorizations {
                    let _ = writeln!(o, "{}", factors_text(f));
                }
            }
            Report::OrbitCount {
                count,
                transitive,
                terms,
                ..
            } => {
                let _ = writeln!(o, "{count}");
                let _ = writeln!(o, "transitive: {transitive}");
                for t in terms {
                    let factors: Vec<String> = t.blocks.iter().map(|b| format!("{}^{}", b.r, b.cycles - 1)).collect();
                    let _ = writeln!(o, "  {}  ->  {} = {}", t.partition.text(), factors.join(" * "), t.count);
                }
            }
            Report::OrbitEnumerate {
                length,
                factorizations,
                orbits,
                ..
            } => {
                let _ = writeln!(
                    o,
                    "{} orbits on {factorizations} factorizations of length {length}",
                    orbits.len()
                );
                for (k, orbit) in orbits.iter().enumerate() {
                    let _ = writeln!(o, "orbit {}: size {}", k + 1, orbit.size);
                    let _ = writeln!(o, "  representative: {}", factors_text(&orbit.representative));
                    if let Some(fp) = &orbit.fingerprint {
                        o.push_str(&fp.text("  "));
                    }
                }
            }
            Report::Equivalent {
                equivalent, reason, ..
            } => {
                let why = match reason {
                    EquivalenceReason::SameInvariants => "partitions and pair-weight residues agree",
                    EquivalenceReason::PartitionMismatch => "induced partitions differ",
                    EquivalenceReason::ResidueMismatch => "pair-weight residues differ",
                };
                let _ = writeln!(o, "{equivalent}");
                let _ = writeln!(o, "{why}");
            }
            Report::Connect { word, .. } => match word {
                Some(w) => {
                    let _ = writeln!(o, "{}", word_text(w));
                }
                None => {
                    let _ = writeln!(o, "inequivalent");
                }
            },
            Report::Normalize { standard_form, word, .. } => {
                let _ = writeln!(o, "{}", factors_text(standard_form));
                let _ = writeln!(o, "word: {}", word_text(word));
            }
            Report::Subgroup {
                fingerprint,
                closure_size,
                ..
            } => {
                o.push_str(&fingerprint.text(""));
                match closure_size {
                    Some(size) => {
                        let _ = writeln!(o, "closure size {size}");
                    }
                    None => {
                        let _ = writeln!(o, "closure size not computed (over --max-states)");
                    }
                }
            }
            Report::Qc {
                length,
                weak,
                strong,
                cycle_weights_generate,
                weight_generates,
                no_zero_subset,
                rank_length,
                ..
            } => {
                let _ = writeln!(o, "weak: {weak}");
                let _ = writeln!(o, "strong: {strong}");
                let _ = writeln!(o, "cycle weights generate Z/m: {cycle_weights_generate}");
                let _ = writeln!(o, "element weight generates pZ/m: {weight_generates}");
                let _ = writeln!(o, "no proper cycle subset of weight 0 mod p: {no_zero_subset}");
                let _ = writeln!(o, "reflection length: {length}");
                let _ = writeln!(
                    o,
                    "quasi-Coxeter of length n: {} (rule {})",
                    rank_length.qc_of_rank_length, rank_length.rule
                );
            }
            Report::CrossCheck {
                group,
                elements,
                passed,
                suites,
            } => {
                let _ = writeln!(o, "G({},{},{}): {elements} elements", group.m, group.p, group.n);
                for s in suites {
                    let status = if s.failed == 0 { "PASS" } else { "FAIL" };
                    let _ = writeln!(o, "{status} {}: {} passed, {} failed", s.name, s.passed, s.failed);
                    for f in &s.failures {
                        let _ = writeln!(o, "  {f}");
                    }
                }
                let _ = writeln!(o, "{}", if *passed { "all suites passed" } else { "some suites failed" });
            }
        }
        out
    }
}
