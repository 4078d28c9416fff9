use std::sync::Arc;

use serde::Serialize;

use super::family::Family;
use super::qd::{involves_qd, QdWitness};
use super::rank::{is_p_subgroup_class, rank_one_family, rank_profile, weyl_order, weyl_rank, RankProfile};
use crate::dimfun::SuperClassFunction;
use crate::error::{Error, Result};
use crate::permgroup::{prime_divisors, Lattice};

/// One checked condition. `subject` is a subgroup class label or `G`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ConditionEntry {
    pub condition: String,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionEntry {
    pub fn new(condition: &str, subject: &str, passed: bool) -> Self {
        ConditionEntry {
            condition: condition.to_string(),
            subject: subject.to_string(),
            prime: None,
            other_prime: None,
            value: None,
            passed,
            note: None,
        }
    }

    pub fn prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn other_prime(mut self, q: u64) -> Self {
        self.other_prime = Some(q);
        self
    }

    pub fn value(mut self, v: i64) -> Self {
        self.value = Some(v);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub passed: bool,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn new() -> Self {
        ConditionReport {
            passed: true,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: ConditionEntry) {
        self.passed &= entry.passed;
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: ConditionReport) {
        for e in other.entries {
            self.push(e);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn find(&self, condition: &str, subject: &str) -> Option<&ConditionEntry> {
        self.entries
            .iter()
            .find(|e| e.condition == condition && e.subject == subject)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct QdVerdict {
    pub prime: u64,
    pub involved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<QdWitness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct TheoremAReport {
    pub profile: RankProfile,
    pub qd: Vec<QdVerdict>,
    pub conditions: ConditionReport,
    /// Exactly one prime of rank two and every other prime of rank at most one.
    pub single_prime_route: bool,
    pub passed: bool,
}

/// The rank, `Qd(p)` and normalizer-quotient conditions, with witnesses.
pub fn check_theorem_a(lattice: &Arc<Lattice>) -> Result<TheoremAReport> {
    let g = lattice.group();
    let profile = rank_profile(g);
    let mut conditions = ConditionReport::new();

    let mut rank_entry = ConditionEntry::new("rank-at-most-two", "G", profile.rank <= 2).value(profile.rank as i64);
    if profile.rank <= 1 {
        rank_entry =
            rank_entry.note("rank at most one: free actions on spheres exist, remaining conditions are vacuous");
    }
    conditions.push(rank_entry);

    let mut qd = Vec::new();
    if profile.rank <= 2 {
        for &p in profile.prime_set_sg.iter().filter(|&&p| p > 2) {
            let witness = involves_qd(lattice, p)?;
            let involved = witness.is_some();
            let mut entry = ConditionEntry::new("qd-not-involved", "G", !involved).prime(p);
            if let Some(w) = &witness {
                entry = entry.note(format!("Qd({p}) inside N(K)/K for K of class {}", w.kernel));
                entry.subject = w.kernel.clone();
            }
            conditions.push(entry);
            qd.push(QdVerdict {
                prime: p,
                involved,
                witness,
            });
        }
        for &p in &profile.prime_set_sg {
            conditions.extend(weyl_rank_conditions(lattice, &rank_one_family(lattice, p), p));
        }
    }

    let single_prime_route =
        profile.prime_set_sg.len() == 1 && profile.per_prime.values().filter(|&&r| r >= 2).count() == 1;
    let passed = conditions.passed;
    Ok(TheoremAReport {
        profile,
        qd,
        conditions,
        single_prime_route,
        passed,
    })
}

/// `rk_q(N_G(H)/H) <= 1` for every nontrivial `H` in a family of `p`-subgroups
/// and every prime `q != p` dividing `|G|`.
pub fn weyl_rank_conditions(lattice: &Lattice, family: &Family, p: u64) -> ConditionReport {
    let mut report = ConditionReport::new();
    for h in family.members() {
        if lattice.rep(h).is_trivial() {
            continue;
        }
        for q in prime_divisors(lattice.group().order() as u64)
            .into_iter()
            .filter(|&q| q != p)
        {
            let r = weyl_rank(lattice, h, q);
            report.push(
                ConditionEntry::new("weyl-rank", lattice.label(h), r <= 1)
                    .prime(p)
                    .other_prime(q)
                    .value(r as i64),
            );
        }
    }
    report
}

/// Smith-theory necessary conditions for a candidate isotropy family and
/// dimension function of a finite complex homotopy equivalent to a sphere.
pub fn check_necessary(lattice: &Arc<Lattice>, iso: &[usize], dims: &SuperClassFunction) -> Result<ConditionReport> {
    let family = Family::new(lattice.clone(), iso.iter().copied())?;
    let order = lattice.group().order() as u64;
    let primes = prime_divisors(order);
    for h in family.members() {
        let o = lattice.order_of(h) as u64;
        if o > 1 && prime_divisors(o).len() != 1 {
            return Err(Error::FamilyNotClosed(format!(
                "{} does not have prime power order",
                lattice.label(h)
            )));
        }
    }
    let mut report = ConditionReport::new();
    for &p in &primes {
        let p_members: Vec<usize> = family
            .members()
            .filter(|&h| is_p_subgroup_class(lattice, h, p))
            .collect();
        for &h in &p_members {
            let maximal = !p_members.iter().any(|&k| k != h && lattice.is_subconjugate(h, k));
            if !maximal {
                continue;
            }
            let r = weyl_rank(lattice, h, p);
            report.push(
                ConditionEntry::new("maximal-p-subgroup-weyl-rank", lattice.label(h), r <= 1)
                    .prime(p)
                    .value(r as i64),
            );
        }
    }
    for &p in &primes {
        for h in family.members() {
            if lattice.rep(h).is_trivial() || !is_p_subgroup_class(lattice, h, p) || dims.value(h) < 0 {
                continue;
            }
            for q in prime_divisors(weyl_order(lattice, h) as u64)
                .into_iter()
                .filter(|&q| q != p)
            {
                let r = weyl_rank(lattice, h, q);
                report.push(
                    ConditionEntry::new("sphere-fixed-set-weyl-rank", lattice.label(h), r <= 1)
                        .prime(p)
                        .other_prime(q)
                        .value(r as i64),
                );
            }
        }
    }
    Ok(report)
}
