use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::characters::{
    build_effective_character, isotropy_from_fixed, search_block_character, sphere_dims_from_fixed, Construction,
    FixedDimTable,
};
use crate::dimfun::{
    align, verify_alignment, AlignConstraints, AlignmentPlan, ChainReading, ClassValue, SuperClassFunction,
};
use crate::error::{Error, Result};
use crate::isotropy::{
    check_necessary, check_theorem_a, is_p_subgroup_class, rank_one_family, weyl_rank_conditions, ConditionEntry,
    ConditionReport, Family, TheoremAReport,
};
use crate::permgroup::{Group, Lattice};

/// Largest number of blocks tried when no elementary abelian construction applies.
const MAX_BLOCKS: usize = 3;

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Restrict the rank-two primes considered to this one.
    pub prime: Option<u64>,
    /// Raw JSON texts of user-supplied fixed-dimension tables.
    pub character_tables: Vec<String>,
    /// Continue past a failed all-primes condition table, checking the chosen isotropy directly.
    pub direct: bool,
    pub chain_reading: ChainReading,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GroupInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupInfo {
    pub fn of(group: &Group, name: Option<&str>) -> Self {
        GroupInfo {
            name: name.map(str::to_string),
            order: group.order(),
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterSource {
    File,
    Constructed,
    BlockSearch,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct CharacterReport {
    pub prime: u64,
    pub source: CharacterSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    pub fixed_dims: Vec<ClassValue>,
    pub isotropy: Vec<String>,
    pub sphere_dims: Vec<ClassValue>,
    pub conditions: ConditionReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct AlignmentReport {
    pub constraints: AlignConstraints,
    pub plan: AlignmentPlan,
    pub nbar: Vec<ClassValue>,
    pub verification: ConditionReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    RankAtMostOne,
    AllPrimes,
    SinglePrime,
    Direct,
    Stopped,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub version: String,
    pub group: GroupInfo,
    pub primes: Vec<u64>,
    pub theorem_a: TheoremAReport,
    pub route: Route,
    pub characters: Vec<CharacterReport>,
    pub isotropy: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alignment: Option<AlignmentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub necessary: Option<ConditionReport>,
    pub failures: Vec<ConditionEntry>,
    pub passed: bool,
}

fn class_values(lattice: &Lattice, values: &[i64], keep: impl Fn(usize) -> bool) -> Vec<ClassValue> {
    (0..lattice.len())
        .filter(|&c| keep(c))
        .map(|c| ClassValue {
            class_label: lattice.label(c).to_string(),
            order: lattice.order_of(c),
            value: values[c],
        })
        .collect()
}

fn labels(family: &Family) -> Vec<String> {
    family.labels()
}

struct Chosen {
    source: CharacterSource,
    construction: Option<Construction>,
    fixed: Vec<i64>,
    conditions: ConditionReport,
}

fn choose_character(lattice: &Arc<Lattice>, p: u64, tables: &[FixedDimTable]) -> Result<Option<Chosen>> {
    if let Some(t) = tables.iter().find(|t| t.prime == p) {
        let mut conditions = ConditionReport::new();
        conditions.push(ConditionEntry::new("table-consistent", "G", t.is_consistent(lattice)).prime(p));
        return Ok(Some(Chosen {
            source: CharacterSource::File,
            construction: None,
            fixed: t.fixed_dims(lattice),
            conditions,
        }));
    }
    let (rep, source) = match build_effective_character(lattice, p)? {
        Some(rep) => (Some(rep), CharacterSource::Constructed),
        None => (
            search_block_character(lattice, p, MAX_BLOCKS)?,
            CharacterSource::BlockSearch,
        ),
    };
    let Some(rep) = rep else { return Ok(None) };
    let mut conditions = ConditionReport::new();
    conditions.push(ConditionEntry::new("respects-fusion", "G", true).prime(p));
    conditions.push(ConditionEntry::new("p-effective", "G", true).prime(p));
    Ok(Some(Chosen {
        source,
        construction: Some(rep.construction.clone()),
        fixed: rep.fixed_dims(lattice)?,
        conditions,
    }))
}

/// Ranks, `Qd(p)` involvement, the normalizer-quotient table, characters and
/// their isotropy, alignment to one dimension function, and the necessary
/// conditions on the result.
pub fn run_check(lattice: &Arc<Lattice>, name: Option<&str>, options: &CheckOptions) -> Result<CheckReport> {
    let g = lattice.group();
    let theorem_a = check_theorem_a(lattice)?;
    let mut primes = theorem_a.profile.prime_set_sg.clone();
    if let Some(p) = options.prime {
        primes.retain(|&q| q == p);
    }
    let mut report = CheckReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        group: GroupInfo::of(g, name),
        primes: primes.clone(),
        theorem_a: theorem_a.clone(),
        route: Route::Stopped,
        characters: Vec::new(),
        isotropy: Vec::new(),
        alignment: None,
        necessary: None,
        failures: Vec::new(),
        passed: false,
    };
    let relevant = |e: &ConditionEntry| e.prime.is_none_or(|p| primes.contains(&p));
    let table_failures: Vec<ConditionEntry> = theorem_a
        .conditions
        .failures()
        .filter(|e| relevant(e))
        .cloned()
        .collect();

    if theorem_a.profile.rank <= 1 {
        report.route = Route::RankAtMostOne;
        report.passed = true;
        return Ok(report);
    }
    let structural: Vec<ConditionEntry> = table_failures
        .iter()
        .filter(|e| e.condition == "rank-at-most-two" || e.condition == "qd-not-involved")
        .cloned()
        .collect();
    if !structural.is_empty() {
        report.failures = structural;
        return Ok(report);
    }
    let tables = options
        .character_tables
        .iter()
        .map(|t| FixedDimTable::from_json(lattice, t))
        .collect::<Result<Vec<_>>>()?;
    let direct = options.direct || !tables.is_empty();
    report.route = if !table_failures.is_empty() {
        if !direct {
            report.failures = table_failures;
            return Ok(report);
        }
        Route::Direct
    } else if theorem_a.single_prime_route {
        Route::SinglePrime
    } else {
        Route::AllPrimes
    };

    let mut failures = Vec::new();
    let mut dims: BTreeMap<u64, SuperClassFunction> = BTreeMap::new();
    let mut union: Option<Family> = None;
    for &p in &primes {
        let Some(chosen) = choose_character(lattice, p, &tables)? else {
            failures.push(ConditionEntry::new("character-found", "G", false).prime(p));
            continue;
        };
        let iso = isotropy_from_fixed(lattice, &chosen.fixed)?;
        let sphere = sphere_dims_from_fixed(lattice, &chosen.fixed)?;
        let mut conditions = chosen.conditions;
        let rank_one = rank_one_family(lattice, p);
        for h in iso.members() {
            conditions.push(ConditionEntry::new("rank-one-isotropy", lattice.label(h), rank_one.contains(h)).prime(p));
        }
        conditions.extend(weyl_rank_conditions(lattice, &iso, p));
        failures.extend(conditions.failures().cloned());
        report.characters.push(CharacterReport {
            prime: p,
            source: chosen.source,
            construction: chosen.construction,
            fixed_dims: class_values(lattice, &chosen.fixed, |c| is_p_subgroup_class(lattice, c, p)),
            isotropy: labels(&iso),
            sphere_dims: sphere.to_class_values(),
            conditions,
        });
        union = Some(match union {
            Some(u) => u.union(&iso),
            None => iso,
        });
        dims.insert(p, sphere);
    }
    if let Some(u) = &union {
        report.isotropy = labels(u);
    }
    if !dims.is_empty() && failures.is_empty() {
        let constraints = AlignConstraints::for_dims(lattice, &dims, options.chain_reading)?;
        match align(lattice, &dims, &constraints) {
            Ok((plan, nbar)) => {
                let verification = verify_alignment(lattice, &nbar, &dims, &constraints);
                failures.extend(verification.failures().cloned());
                let iso: Vec<usize> = nbar.support().into_iter().collect();
                let necessary = check_necessary(lattice, &iso, &nbar)?;
                failures.extend(necessary.failures().cloned());
                report.necessary = Some(necessary);
                report.alignment = Some(AlignmentReport {
                    constraints,
                    plan,
                    nbar: nbar.to_class_values(),
                    verification,
                });
            }
            Err(Error::Infeasible(msg)) => {
                failures.push(ConditionEntry::new("alignment", "G", false).note(msg));
            }
            Err(e) => return Err(e),
        }
    }
    if dims.is_empty() && failures.is_empty() {
        failures.push(ConditionEntry::new("character-found", "G", false).note("no rank-two prime selected"));
    }
    report.passed = failures.is_empty();
    report.failures = failures;
    Ok(report)
}
