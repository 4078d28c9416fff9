use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::family::Family;
use crate::permgroup::{is_power_of, prime_divisors, Group, Lattice, Subgroup};

/// Largest `k` with `(Z/p)^k <= h`, searched inside a Sylow `p`-subgroup.
pub fn p_rank(group: &Group, h: &Subgroup, p: u64) -> usize {
    if !(h.order() as u64).is_multiple_of(p) {
        return 0;
    }
    let sylow = group.sylow(h, p);
    let mut bound = 0;
    let mut m = sylow.order() as u64;
    while m > 1 {
        m /= p;
        bound += 1;
    }
    let candidates: Vec<u32> = sylow
        .elements()
        .iter()
        .copied()
        .filter(|&x| group.element_order(x) == p)
        .collect();
    let mut best = 0;
    let mut span = FixedBitSet::with_capacity(group.order());
    span.insert(0);
    extend_elementary(group, &candidates, 0, &mut Vec::new(), &span, bound, &mut best);
    best
}

/// Depth-first search over bases chosen in increasing candidate order.
fn extend_elementary(
    group: &Group,
    candidates: &[u32],
    start: usize,
    chosen: &mut Vec<u32>,
    span: &FixedBitSet,
    bound: usize,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    if *best >= bound {
        return;
    }
    for i in start..candidates.len() {
        let x = candidates[i];
        if span.contains(x as usize) || !chosen.iter().all(|&c| group.commute(c, x)) {
            continue;
        }
        let mut next = span.clone();
        let mut power = 0u32;
        let members: Vec<usize> = span.ones().collect();
        loop {
            power = group.mul(power, x);
            if power == 0 {
                break;
            }
            for &m in &members {
                next.insert(group.mul(m as u32, power) as usize);
            }
        }
        chosen.push(x);
        extend_elementary(group, candidates, i + 1, chosen, &next, bound, best);
        chosen.pop();
        if *best >= bound {
            return;
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct RankProfile {
    pub per_prime: BTreeMap<u64, usize>,
    /// Primes of rank exactly two.
    pub prime_set_sg: Vec<u64>,
    pub rank: usize,
}

pub fn rank_profile(group: &Group) -> RankProfile {
    let whole = group.whole();
    let per_prime: BTreeMap<u64, usize> = prime_divisors(group.order() as u64)
        .into_iter()
        .map(|p| (p, p_rank(group, &whole, p)))
        .collect();
    let prime_set_sg = per_prime.iter().filter(|(_, &r)| r == 2).map(|(&p, _)| p).collect();
    let rank = per_prime.values().copied().max().unwrap_or(0);
    RankProfile {
        per_prime,
        prime_set_sg,
        rank,
    }
}

pub fn is_p_subgroup_class(lattice: &Lattice, class: usize, p: u64) -> bool {
    is_power_of(lattice.order_of(class) as u64, p)
}

/// All classes of `p`-subgroups of `p`-rank at most one, the trivial class included.
pub fn rank_one_family(lattice: &Arc<Lattice>, p: u64) -> Family {
    let g = lattice.group();
    let members: Vec<usize> = (0..lattice.len())
        .filter(|&i| is_p_subgroup_class(lattice, i, p) && p_rank(g, lattice.rep(i), p) <= 1)
        .collect();
    Family::new(lattice.clone(), members).expect("rank one p-subgroups form a family")
}

/// `rk_q(N_G(H)/H)` for the class representative `H`.
pub fn weyl_rank(lattice: &Lattice, class: usize, q: u64) -> usize {
    let w = lattice.weyl_group(class);
    p_rank(&w, &w.whole(), q)
}

pub fn weyl_order(lattice: &Lattice, class: usize) -> usize {
    lattice.class(class).normalizer.order() / lattice.order_of(class)
}
