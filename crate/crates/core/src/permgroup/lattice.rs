use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::group::Group;
use super::subgroup::Subgroup;

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// `order.k`, with `k` counting classes of that order from 1.
    pub label: String,
    /// The conjugate whose sorted element list is lexicographically least.
    pub representative: Subgroup,
    pub class_size: usize,
    pub normalizer: Subgroup,
    conjugates: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn conjugates(&self) -> &[Subgroup] {
        &self.conjugates
    }
}

/// The subgroups of a group up to conjugacy, ordered by order and then by
/// canonical representative.
#[derive(Debug)]
pub struct Lattice {
    group: Arc<Group>,
    classes: Vec<SubgroupClass>,
    lookup: HashMap<FixedBitSet, usize>,
    below: Vec<FixedBitSet>,
    weyl: Vec<OnceLock<Arc<Group>>>,
}

pub fn subgroup_lattice(group: &Group) -> Vec<SubgroupClass> {
    build_classes(group).0
}

fn conjugacy_orbit(group: &Group, h: &Subgroup) -> Vec<Subgroup> {
    let mut orbit = vec![h.clone()];
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    seen.insert(h.members().clone(), ());
    let mut head = 0;
    while head < orbit.len() {
        for &g in group.generator_indices() {
            let c = group.conjugate_subgroup(&orbit[head], g);
            if !seen.contains_key(c.members()) {
                seen.insert(c.members().clone(), ());
                orbit.push(c);
            }
        }
        head += 1;
    }
    orbit
}

fn build_classes(group: &Group) -> (Vec<SubgroupClass>, HashMap<FixedBitSet, usize>) {
    let n = group.order() as u32;
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut cyclic_seen: HashMap<FixedBitSet, ()> = HashMap::new();
    for x in 1..n {
        let o = group.element_order(x);
        if !is_prime_power(o) {
            continue;
        }
        let c = group.generate(&[x]);
        if !cyclic_seen.contains_key(c.members()) {
            cyclic_seen.insert(c.members().clone(), ());
            cyclic.push(c);
        }
    }

    let mut reps: Vec<Subgroup> = Vec::new();
    let mut orbits: Vec<Vec<Subgroup>> = Vec::new();
    let mut lookup: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut register = |h: Subgroup, reps: &mut Vec<Subgroup>, orbits: &mut Vec<Vec<Subgroup>>| {
        if lookup.contains_key(h.members()) {
            return;
        }
        let orbit = conjugacy_orbit(group, &h);
        let id = reps.len();
        for c in &orbit {
            lookup.insert(c.members().clone(), id);
        }
        let canonical = orbit
            .iter()
            .min_by(|a, b| a.elements().cmp(b.elements()))
            .expect("orbit is non-empty")
            .clone();
        reps.push(canonical);
        orbits.push(orbit);
    };

    register(group.trivial_subgroup(), &mut reps, &mut orbits);
    for c in &cyclic {
        register(c.clone(), &mut reps, &mut orbits);
    }
    let mut i = 0;
    while i < reps.len() {
        let h = reps[i].clone();
        for c in &cyclic {
            let g = c.generators()[0];
            if h.contains(g) {
                continue;
            }
            let j = group.join(&h, &[g]);
            register(j, &mut reps, &mut orbits);
        }
        i += 1;
    }

    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| {
        reps[a]
            .order()
            .cmp(&reps[b].order())
            .then_with(|| reps[a].elements().cmp(reps[b].elements()))
    });
    let mut new_of_old = vec![0usize; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    for v in lookup.values_mut() {
        *v = new_of_old[*v];
    }
    let mut classes = Vec::with_capacity(reps.len());
    let mut last_order = 0;
    let mut k = 0;
    for &old in &order {
        let rep = reps[old].clone();
        if rep.order() != last_order {
            last_order = rep.order();
            k = 0;
        }
        k += 1;
        let normalizer = group.normalizer(&rep);
        let conjugates = std::mem::take(&mut orbits[old]);
        classes.push(SubgroupClass {
            label: format!("{}.{}", rep.order(), k),
            class_size: conjugates.len(),
            representative: rep,
            normalizer,
            conjugates,
        });
    }
    (classes, lookup)
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Whether `n` is a power of `p`, including `p^0 = 1`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    let mut m = n;
    while m.is_multiple_of(p) && m > 1 {
        m /= p;
    }
    m == 1
}

impl Lattice {
    pub fn new(group: Arc<Group>) -> Lattice {
        let (classes, lookup) = build_classes(&group);
        let count = classes.len();
        let mut below = vec![FixedBitSet::with_capacity(count); count];
        for j in 0..count {
            let big = &classes[j].representative;
            for (i, class) in classes.iter().enumerate() {
                if class.order() > big.order() || big.order() % class.order() != 0 {
                    continue;
                }
                if class.conjugates.iter().any(|c| c.is_subgroup_of(big)) {
                    below[j].insert(i);
                }
            }
        }
        let weyl = (0..count).map(|_| OnceLock::new()).collect();
        Lattice {
            group,
            classes,
            lookup,
            below,
            weyl,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn rep(&self, i: usize) -> &Subgroup {
        &self.classes[i].representative
    }

    pub fn label(&self, i: usize) -> &str {
        &self.classes[i].label
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.classes[i].order()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.lookup[h.members()]
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Whether some conjugate of class `i` lies in class `j`'s representative.
    pub fn is_subconjugate(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// Conjugates of class `i` contained in `k`.
    pub fn conjugates_within<'a>(&'a self, i: usize, k: &'a Subgroup) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.classes[i].conjugates.iter().filter(move |c| c.is_subgroup_of(k))
    }

    /// Conjugates of class `k` containing `h`.
    pub fn conjugates_containing<'a>(&'a self, h: &'a Subgroup, k: usize) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.classes[k].conjugates.iter().filter(move |c| h.is_subgroup_of(c))
    }

    /// `W_G(H) = N_G(H)/H` for the representative of class `i`, computed once.
    pub fn weyl_group(&self, i: usize) -> Arc<Group> {
        self.weyl[i]
            .get_or_init(|| {
                let rep = &self.classes[i].representative;
                if rep.is_trivial() {
                    return self.group.clone();
                }
                let w = self
                    .group
                    .quotient(&self.classes[i].normalizer, rep)
                    .expect("a subgroup is normal in its normalizer");
                Arc::new(w)
            })
            .clone()
    }

    /// Length, counted in strict steps, of the longest chain of classes drawn from `members`.
    pub fn longest_chain(&self, members: &[usize]) -> usize {
        let mut sorted = members.to_vec();
        sorted.sort_by_key(|&i| self.order_of(i));
        let mut best = vec![0usize; sorted.len()];
        for a in 0..sorted.len() {
            for b in 0..a {
                let (i, j) = (sorted[b], sorted[a]);
                if i != j && self.order_of(i) < self.order_of(j) && self.is_subconjugate(i, j) {
                    best[a] = best[a].max(best[b] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}
