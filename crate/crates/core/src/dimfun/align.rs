use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::lcm;
use serde::Serialize;

use super::period::q_period_multiple;
use super::superclass::SuperClassFunction;
use crate::error::{Error, Result};
use crate::isotropy::{p_rank, weyl_order, ConditionEntry, ConditionReport};
use crate::permgroup::{prime_divisors, Lattice};

/// Largest multiplier tried before giving up.
const MAX_STEPS: i64 = 1_000_000;

/// How chain length in the orbit category is counted for the gap bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainReading {
    /// Number of strict steps `(H_0) < .. < (H_m)`, that is `m`.
    #[default]
    Steps,
    /// Number of objects in the chain, `m + 1`.
    Objects,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct PeriodConstraint {
    pub class: String,
    pub prime: u64,
    pub q: u64,
    pub multiple: u64,
    #[serde(skip)]
    pub class_index: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct AlignConstraints {
    pub m_g: u64,
    pub min_dim: i64,
    pub gap: usize,
    pub chain_reading: ChainReading,
    pub periods: Vec<PeriodConstraint>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct AlignmentPlan {
    pub multipliers: BTreeMap<u64, i64>,
    pub top: i64,
    pub m_g: u64,
    pub gap: usize,
}

/// Least common multiple of the period multiples of `G` over the primes of rank one.
pub fn m_g(lattice: &Lattice) -> Result<u64> {
    let g = lattice.group();
    let whole = g.whole();
    let mut m = 1;
    for q in prime_divisors(g.order() as u64) {
        if p_rank(g, &whole, q) == 1 {
            m = lcm(m, q_period_multiple(g, q)?);
        }
    }
    Ok(m)
}

impl AlignConstraints {
    pub fn for_dims(
        lattice: &Arc<Lattice>,
        dims: &BTreeMap<u64, SuperClassFunction>,
        reading: ChainReading,
    ) -> Result<AlignConstraints> {
        let mut periods = Vec::new();
        let mut union: BTreeSet<usize> = BTreeSet::new();
        for (&p, n) in dims {
            for h in n.support() {
                union.insert(h);
                if lattice.rep(h).is_trivial() {
                    continue;
                }
                let w_order = weyl_order(lattice, h) as u64;
                for q in prime_divisors(w_order).into_iter().filter(|&q| q != p) {
                    let w = lattice.weyl_group(h);
                    periods.push(PeriodConstraint {
                        class: lattice.label(h).to_string(),
                        prime: p,
                        q,
                        multiple: q_period_multiple(&w, q)?,
                        class_index: h,
                    });
                }
            }
        }
        let steps = lattice.longest_chain(&union.into_iter().collect::<Vec<_>>());
        let gap = match reading {
            ChainReading::Steps => steps,
            ChainReading::Objects => steps + 1,
        };
        Ok(AlignConstraints {
            m_g: m_g(lattice)?,
            min_dim: 3,
            gap,
            chain_reading: reading,
            periods,
        })
    }
}

/// Scales each per-prime function by the join law so that all agree at the
/// trivial subgroup and every constraint holds, using the least multipliers.
pub fn align(
    lattice: &Arc<Lattice>,
    dims: &BTreeMap<u64, SuperClassFunction>,
    constraints: &AlignConstraints,
) -> Result<(AlignmentPlan, SuperClassFunction)> {
    if dims.is_empty() {
        return Err(Error::Infeasible("no per-prime dimension functions given".into()));
    }
    let trivial = 0;
    let mut base = constraints.m_g.max(1) as i64;
    for (&p, n) in dims {
        let top = n.value(trivial);
        if top < 0 {
            return Err(Error::Infeasible(format!(
                "function for p = {p} is empty at the trivial subgroup"
            )));
        }
        base = lcm(base, top + 1);
    }
    for t in 1..=MAX_STEPS {
        let total = t * base;
        let multipliers: BTreeMap<u64, i64> = dims.iter().map(|(&p, n)| (p, total / (n.value(trivial) + 1))).collect();
        let Some(nbar) = union_of_scaled(lattice, dims, &multipliers) else {
            continue;
        };
        if satisfies(&nbar, constraints) {
            let plan = AlignmentPlan {
                multipliers,
                top: total - 1,
                m_g: constraints.m_g,
                gap: constraints.gap,
            };
            return Ok((plan, nbar));
        }
    }
    Err(Error::Infeasible(format!(
        "no multiplier up to {MAX_STEPS} satisfies the constraints"
    )))
}

fn union_of_scaled(
    lattice: &Arc<Lattice>,
    dims: &BTreeMap<u64, SuperClassFunction>,
    multipliers: &BTreeMap<u64, i64>,
) -> Option<SuperClassFunction> {
    let mut values = vec![-1i64; lattice.len()];
    for (p, n) in dims {
        let scaled = n.scaled(multipliers[p]);
        for h in scaled.support() {
            let v = scaled.value(h);
            if values[h] >= 0 && values[h] != v {
                return None;
            }
            values[h] = v;
        }
    }
    SuperClassFunction::new(lattice.clone(), values).ok()
}

fn satisfies(nbar: &SuperClassFunction, c: &AlignConstraints) -> bool {
    let support: Vec<usize> = nbar.support().into_iter().collect();
    if (nbar.value(0) + 1) % c.m_g as i64 != 0 {
        return false;
    }
    if support.iter().any(|&h| nbar.value(h) < c.min_dim) {
        return false;
    }
    if c.periods
        .iter()
        .any(|pc| (nbar.value(pc.class_index) + 1) % pc.multiple as i64 != 0)
    {
        return false;
    }
    let levels = nbar.levels();
    levels.windows(2).all(|w| w[0] - w[1] >= c.gap as i64)
}

/// Re-checks an aligned dimension function from scratch against the
/// per-prime inputs and the constraints, one entry per condition.
pub fn verify_alignment(
    lattice: &Arc<Lattice>,
    nbar: &SuperClassFunction,
    dims: &BTreeMap<u64, SuperClassFunction>,
    constraints: &AlignConstraints,
) -> ConditionReport {
    let mut report = ConditionReport::new();
    let top = nbar.value(0);
    report.push(
        ConditionEntry::new(
            "top-divisible-by-m_G",
            lattice.label(0),
            top >= 0 && (top + 1) % constraints.m_g as i64 == 0,
        )
        .value(top),
    );
    for (&p, n) in dims {
        let base = n.value(0) + 1;
        let ok = base > 0
            && (top + 1) % base == 0
            && (0..lattice.len()).all(|h| {
                let v = n.value(h);
                if v < 0 {
                    true
                } else {
                    nbar.value(h) + 1 == (top + 1) / base * (v + 1)
                }
            });
        report.push(
            ConditionEntry::new("join-of-copies", "G", ok)
                .prime(p)
                .value((top + 1) / base.max(1)),
        );
    }
    for h in 0..lattice.len() {
        let v = nbar.value(h);
        let in_some = dims.values().any(|n| n.value(h) >= 0);
        if in_some != (v >= 0) {
            report.push(ConditionEntry::new("support-matches-isotropy", lattice.label(h), false).value(v));
        }
        if v >= 0 && v < constraints.min_dim {
            report.push(ConditionEntry::new("dimension-at-least", lattice.label(h), false).value(v));
        }
    }
    for pc in &constraints.periods {
        let v = nbar.value(pc.class_index);
        report.push(
            ConditionEntry::new("period-divides", &pc.class, (v + 1) % pc.multiple as i64 == 0)
                .prime(pc.prime)
                .other_prime(pc.q)
                .value(v)
                .note(format!("multiple {}", pc.multiple)),
        );
    }
    let values: BTreeSet<i64> = nbar.values().iter().copied().filter(|&v| v >= 0).collect();
    let values: Vec<i64> = values.into_iter().collect();
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            let d = values[b] - values[a];
            if d < constraints.gap as i64 {
                report.push(
                    ConditionEntry::new("gap", "G", false)
                        .value(d)
                        .note(format!("{} vs {}, bound {}", values[b], values[a], constraints.gap)),
                );
            }
        }
    }
    report.push(ConditionEntry::new("monotone", "G", nbar.is_monotone()));
    let violations = nbar.closure_violations();
    if violations.is_empty() {
        report.push(ConditionEntry::new("closure", "G", true));
    }
    for v in violations {
        report.push(
            ConditionEntry::new("closure", &v.h, false)
                .value(v.level)
                .note(format!("<{}, {}> is {} with value {}", v.k, v.l, v.join, v.join_value)),
        );
    }
    report
}
