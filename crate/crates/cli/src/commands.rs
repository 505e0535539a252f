use gmpn::crosscheck::cross_check;
use gmpn::{
    classify_rank_length, connect_standard, count_orbits_formula, cycle_data, enumerate_reflections,
    enumerate_shortest_factorizations, generated_subgroup, hurwitz_orbits, identify_generated_subgroup,
    is_hurwitz_transitive, max_cycle_partitions, normalize, orbit_count_breakdown, orbit_invariant, parse_element,
    qc_report, reflection_length, Error, Factorization, GroupParams, Limits, RankLengthRule, Result,
};

use crate::report::{
    factors, EquivalenceReason, FingerprintOut, InvariantOut, OrbitOut, PartitionOut, RankLengthOut, Report, SuiteOut,
    TermBlockOut, TermOut,
};
use crate::Command;

/// Computes the report and the exit status for a successful run.
pub fn run(command: &Command, params: GroupParams, limits: &Limits) -> Result<(Report, u8)> {
    let group = params.into();
    let report = match command {
        Command::Reflen { element } => {
            let g = parse_element(element, params)?;
            let data = cycle_data(&g);
            Report::Reflen {
                group,
                element: g.to_string(),
                length: reflection_length(&g)?,
                max_partitions: max_cycle_partitions(&g)?
                    .iter()
                    .map(|p| PartitionOut::new(p, &data))
                    .collect(),
            }
        }
        Command::Reflections => {
            let rs = enumerate_reflections(params);
            Report::Reflections {
                group,
                count: rs.len(),
                reflections: rs.iter().map(|r| r.display(params).to_string()).collect(),
            }
        }
        Command::Factorize { element } => {
            let g = parse_element(element, params)?;
            let fs = enumerate_shortest_factorizations(&g, limits)?;
            Report::Factorize {
                group,
                element: g.to_string(),
                length: reflection_length(&g)?,
                count: fs.len(),
                factorizations: fs.iter().map(factors).collect(),
            }
        }
        Command::OrbitCount { element } => {
            let g = parse_element(element, params)?;
            let data = cycle_data(&g);
            let terms = orbit_count_breakdown(&g)?
                .iter()
                .map(|t| TermOut {
                    partition: PartitionOut::new(&t.partition, &data),
                    blocks: t
                        .blocks
                        .iter()
                        .map(|b| TermBlockOut {
                            cycles: b.cycles,
                            r: b.r,
                        })
                        .collect(),
                    count: t.count,
                })
                .collect();
            Report::OrbitCount {
                group,
                element: g.to_string(),
                count: count_orbits_formula(&g)?,
                transitive: is_hurwitz_transitive(&g)?,
                terms,
            }
        }
        Command::OrbitEnumerate { element } => {
            let g = parse_element(element, params)?;
            let fs = enumerate_shortest_factorizations(&g, limits)?;
            let census = hurwitz_orbits(&fs, limits)?;
            Report::OrbitEnumerate {
                group,
                element: g.to_string(),
                length: reflection_length(&g)?,
                factorizations: fs.len(),
                orbits: census
                    .orbits
                    .iter()
                    .map(|o| OrbitOut {
                        size: o.size,
                        representative: factors(&o.representative),
                        fingerprint: o.fingerprint.as_ref().map(FingerprintOut::from),
                    })
                    .collect(),
            }
        }
        Command::Equivalent { first, second } => {
            let (f, f2) = pair(first, second, params)?;
            let data = cycle_data(&f.product());
            let (inv, inv2) = (orbit_invariant(&f)?, orbit_invariant(&f2)?);
            let reason = if inv.partition != inv2.partition {
                EquivalenceReason::PartitionMismatch
            } else if inv.residues != inv2.residues {
                EquivalenceReason::ResidueMismatch
            } else {
                EquivalenceReason::SameInvariants
            };
            Report::Equivalent {
                group,
                equivalent: inv == inv2,
                reason,
                invariants: [InvariantOut::new(&inv, &data), InvariantOut::new(&inv2, &data)],
            }
        }
        Command::Connect { first, second } => {
            let (f, f2) = pair(first, second, params)?;
            // second -> its standard form -> first's standard form -> first
            let (std, to_std) = normalize(&f)?;
            let (std2, to_std2) = normalize(&f2)?;
            let word = connect_standard(&std, &std2)?.map(|middle| {
                let mut w = to_std2;
                w.extend(&middle);
                w.extend(&to_std.inverse());
                w
            });
            if let Some(w) = &word {
                debug_assert_eq!(f2.apply_braid(w)?, f);
            }
            Report::Connect {
                group,
                connected: word.is_some(),
                word: word.map(|w| w.letters().to_vec()),
            }
        }
        Command::Normalize { factorization } => {
            let f = Factorization::parse(factorization, params)?;
            let (std, word) = normalize(&f)?;
            Report::Normalize {
                group,
                standard_form: factors(&std),
                word: word.letters().to_vec(),
            }
        }
        Command::Subgroup { factorization } => {
            let f = Factorization::parse(factorization, params)?;
            let fingerprint = identify_generated_subgroup(&f)?;
            let closure_size = match generated_subgroup(&f, limits) {
                Ok(set) => Some(set.len()),
                Err(e) if e.is_limit() => None,
                Err(e) => return Err(e),
            };
            Report::Subgroup {
                group,
                fingerprint: (&fingerprint).into(),
                closure_size,
            }
        }
        Command::Qc { element } => {
            let g = parse_element(element, params)?;
            let r = qc_report(&g)?;
            let c = classify_rank_length(params, &g)?;
            let rule = match c.rule {
                RankLengthRule::SingleCycle => "single-cycle",
                RankLengthRule::TwoCycles => "two-cycles",
                RankLengthRule::None => "none",
                RankLengthRule::Conditions => "conditions",
            };
            Report::Qc {
                group,
                element: g.to_string(),
                length: c.length,
                weak: r.weak,
                strong: r.strong,
                cycle_weights_generate: r.cycle_weights_generate,
                weight_generates: r.weight_generates,
                no_zero_subset: r.no_zero_subset,
                rank_length: RankLengthOut {
                    rule: rule.into(),
                    qc_of_rank_length: c.qc_of_rank_length,
                },
            }
        }
        Command::CrossCheck => {
            let r = cross_check(params, limits)?;
            let passed = r.all_passed();
            let report = Report::CrossCheck {
                group,
                elements: r.elements,
                passed,
                suites: SuiteOut::all(&r),
            };
            return Ok((report, if passed { 0 } else { 1 }));
        }
    };
    Ok((report, 0))
}

fn pair(first: &str, second: &str, params: GroupParams) -> Result<(Factorization, Factorization)> {
    let f = Factorization::parse(first, params)?;
    let f2 = Factorization::parse(second, params)?;
    if f.product() != f2.product() {
        return Err(Error::ProductMismatch);
    }
    Ok((f, f2))
}
