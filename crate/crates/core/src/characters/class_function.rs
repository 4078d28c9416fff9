use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::isotropy::p_rank;
use crate::permgroup::{Group, Subgroup};

/// An integer-valued class function on a subgroup `Q` of an ambient group,
/// keyed by ambient element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    domain: Subgroup,
    values: Vec<i64>,
}

impl ClassFunction {
    pub fn new(domain: &Subgroup, f: impl Fn(u32) -> i64) -> Self {
        let values = domain.elements().iter().map(|&x| f(x)).collect();
        ClassFunction {
            domain: domain.clone(),
            values,
        }
    }

    pub fn zero(domain: &Subgroup) -> Self {
        ClassFunction::new(domain, |_| 0)
    }

    pub fn trivial(domain: &Subgroup) -> Self {
        ClassFunction::new(domain, |_| 1)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn value(&self, x: u32) -> i64 {
        let pos = self.domain.elements().binary_search(&x).expect("element of the domain");
        self.values[pos]
    }

    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    /// `(element, value)` pairs in element order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.domain.elements().iter().copied().zip(self.values.iter().copied())
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.domain, other.domain, "class functions on different subgroups");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFunction {
            domain: self.domain.clone(),
            values,
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        ClassFunction {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| k * v).collect(),
        }
    }

    /// Whether the values are constant under conjugation within the domain.
    pub fn is_class_function(&self, group: &Group) -> bool {
        self.iter().all(|(x, v)| {
            self.domain
                .generators()
                .iter()
                .all(|&g| self.value(group.conjugate_element(x, g)) == v)
        })
    }
}

fn left_coset_reps(group: &Group, q: &Subgroup, k: &Subgroup) -> Vec<u32> {
    let mut covered = FixedBitSet::with_capacity(group.order());
    let mut reps = Vec::new();
    for &x in q.elements() {
        if covered.contains(x as usize) {
            continue;
        }
        reps.push(x);
        for &y in k.elements() {
            covered.insert(group.mul(x, y) as usize);
        }
    }
    reps
}

/// The permutation character of `Q` on `Q/K`: fixed cosets of each element.
pub fn perm_character(group: &Group, q: &Subgroup, k: &Subgroup) -> Result<ClassFunction> {
    if !k.is_subgroup_of(q) {
        return Err(Error::NotASubgroup("K is not contained in Q".into()));
    }
    let reps = left_coset_reps(group, q, k);
    Ok(ClassFunction::new(q, |x| {
        reps.iter()
            .filter(|&&r| k.contains(group.conjugate_element(x, r)))
            .count() as i64
    }))
}

/// The augmented permutation character `I(Q/K)`, the permutation character minus the trivial one.
pub fn augmented_character(group: &Group, q: &Subgroup, k: &Subgroup) -> Result<ClassFunction> {
    Ok(perm_character(group, q, k)?.sub(&ClassFunction::trivial(q)))
}

/// `(1/|H|) sum_{h in H} chi(h)`, the dimension of the `H`-fixed subspace.
pub fn fixed_dim(chi: &ClassFunction, h: &Subgroup) -> Result<i64> {
    if !h.is_subgroup_of(chi.domain()) {
        return Err(Error::NotASubgroup(
            "H is not contained in the domain of the character".into(),
        ));
    }
    let total: i64 = h.elements().iter().map(|&x| chi.value(x)).sum();
    let order = h.order() as i64;
    if total % order != 0 || total < 0 {
        return Err(Error::NonIntegralInnerProduct(format!(
            "sum {total} over a subgroup of order {order}"
        )));
    }
    Ok(total / order)
}

/// Whether `chi` takes equal values on elements of `P` conjugate in `G`.
pub fn respects_fusion(group: &Group, chi: &ClassFunction) -> bool {
    let mut by_class: HashMap<usize, i64> = HashMap::new();
    chi.iter()
        .all(|(x, v)| *by_class.entry(group.class_of(x)).or_insert(v) == v)
}

/// All subgroups `(Z/p)^2` of `q`.
pub fn rank_two_elementary(group: &Group, q: &Subgroup, p: u64) -> Vec<Subgroup> {
    let order_p: Vec<u32> = q
        .elements()
        .iter()
        .copied()
        .filter(|&x| group.element_order(x) == p)
        .collect();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for (i, &x) in order_p.iter().enumerate() {
        let cx = group.generate(&[x]);
        for &y in &order_p[i + 1..] {
            if cx.contains(y) || !group.commute(x, y) {
                continue;
            }
            let e = group.join(&cx, &[y]);
            if !seen.contains_key(e.members()) {
                seen.insert(e.members().clone(), ());
                out.push(e);
            }
        }
    }
    out
}

/// No trivial summand on any `(Z/p)^2` inside the domain.
pub fn p_effective(group: &Group, chi: &ClassFunction, p: u64) -> Result<bool> {
    let r = p_rank(group, &group.whole(), p);
    if r != 2 {
        return Err(Error::RankMismatch(format!("{p}-rank of the group is {r}, not 2")));
    }
    for e in rank_two_elementary(group, chi.domain(), p) {
        if fixed_dim(chi, &e)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of double cosets `E x K` in `Q`.
pub fn double_coset_count(group: &Group, q: &Subgroup, e: &Subgroup, k: &Subgroup) -> usize {
    let mut seen = FixedBitSet::with_capacity(group.order());
    let mut count = 0;
    for &x in q.elements() {
        if seen.contains(x as usize) {
            continue;
        }
        count += 1;
        for &a in e.elements() {
            let ax = group.mul(a, x);
            for &b in k.elements() {
                seen.insert(group.mul(ax, b) as usize);
            }
        }
    }
    count
}

/// Every `(Z/p)^2` in `Q` has a single double coset in `E\Q/K_i` for each `i`.
pub fn double_coset_criterion(group: &Group, q: &Subgroup, ks: &[Subgroup], p: u64) -> bool {
    rank_two_elementary(group, q, p)
        .iter()
        .all(|e| ks.iter().all(|k| double_coset_count(group, q, e, k) == 1))
}
