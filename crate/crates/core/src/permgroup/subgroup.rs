use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::group::Group;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A subgroup of a [`Group`], stored as a membership bitset over element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: FixedBitSet,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.is_subset(&other.members)
    }
}

/// Left cosets `xK` of a subgroup, numbered by their least element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn coset_of(&self, x: u32) -> u32 {
        self.coset_of[x as usize]
    }

    pub fn rep(&self, c: u32) -> u32 {
        self.reps[c as usize]
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }
}

/// `N/K` as a permutation group on the left cosets of `K` in `N`.
pub struct QuotientMap {
    pub group: Group,
    projection: HashMap<u32, u32>,
    section: Vec<u32>,
}

impl QuotientMap {
    pub fn project(&self, n: u32) -> Option<u32> {
        self.projection.get(&n).copied()
    }

    /// Least preimage of a quotient element.
    pub fn lift(&self, w: u32) -> u32 {
        self.section[w as usize]
    }
}

impl Group {
    fn subgroup_from_parts(&self, mut elements: Vec<u32>, generators: Vec<u32>) -> Subgroup {
        elements.sort_unstable();
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in &elements {
            members.insert(x as usize);
        }
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_parts(vec![0], Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        self.whole_cached(|| {
            let gens = self.small_generating_set(&(0..self.order() as u32).collect::<Vec<_>>());
            self.generate(&gens)
        })
    }

    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        self.join(&self.trivial_subgroup(), gens)
    }

    /// `<H, extra>` by coset enumeration.
    pub fn join(&self, h: &Subgroup, extra: &[u32]) -> Subgroup {
        let mut members = h.members.clone();
        let mut elements = h.elements.clone();
        let mut gens = h.generators.clone();
        for &g in extra {
            if members.contains(g as usize) {
                continue;
            }
            gens.push(g);
            let base = elements.clone();
            let mut reps = vec![0u32];
            let mut i = 0;
            while i < reps.len() {
                let r = reps[i];
                for &s in &gens {
                    let e = self.mul(r, s);
                    if !members.contains(e as usize) {
                        for &b in &base {
                            let y = self.mul(b, e);
                            members.insert(y as usize);
                            elements.push(y);
                        }
                        reps.push(e);
                    }
                }
                i += 1;
            }
        }
        elements.sort_unstable();
        Subgroup {
            members,
            elements,
            generators: gens,
        }
    }

    /// Greedy generating set for the subgroup formed by `elements`.
    pub fn small_generating_set(&self, elements: &[u32]) -> Vec<u32> {
        let mut order: Vec<u32> = elements.to_vec();
        order.sort_by(|&a, &b| self.element_order(b).cmp(&self.element_order(a)).then(a.cmp(&b)));
        let mut current = self.trivial_subgroup();
        let mut gens = Vec::new();
        for x in order {
            if current.order() == elements.len() {
                break;
            }
            if !current.contains(x) {
                current = self.join(&current, &[x]);
                gens.push(x);
            }
        }
        gens
    }

    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<Subgroup> {
        let mut els: Vec<u32> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&x| x as usize >= self.order()) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        let gens = self.small_generating_set(&els);
        let s = self.generate(&gens);
        if s.elements != els {
            return Err(Error::NotASubgroup(format!(
                "set of {} elements is not closed under multiplication",
                els.len()
            )));
        }
        Ok(s)
    }

    pub fn subgroup_from_perms(&self, gens: &[Perm]) -> Result<Subgroup> {
        let mut idx = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    found: g.degree(),
                });
            }
            idx.push(
                self.index_of(g)
                    .ok_or_else(|| Error::NotASubgroup(format!("{g} is not an element of the group")))?,
            );
        }
        Ok(self.generate(&idx))
    }

    /// `g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let elements = h.elements.iter().map(|&x| self.conjugate_element(x, g)).collect();
        let gens = h.generators.iter().map(|&x| self.conjugate_element(x, g)).collect();
        self.subgroup_from_parts(elements, gens)
    }

    fn subgroup_from_closed_set(&self, elements: Vec<u32>) -> Subgroup {
        let gens = self.small_generating_set(&elements);
        self.subgroup_from_parts(elements, gens)
    }

    pub fn normalizer_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        let els = ambient
            .elements
            .iter()
            .copied()
            .filter(|&a| h.generators.iter().all(|&x| h.contains(self.conjugate_element(x, a))))
            .collect();
        self.subgroup_from_closed_set(els)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), h)
    }

    pub fn centralizer_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        let els = ambient
            .elements
            .iter()
            .copied()
            .filter(|&a| h.generators.iter().all(|&x| self.commute(x, a)))
            .collect();
        self.subgroup_from_closed_set(els)
    }

    pub fn is_normal_in(&self, n: &Subgroup, k: &Subgroup) -> bool {
        k.is_subgroup_of(n)
            && n.generators
                .iter()
                .all(|&g| k.generators.iter().all(|&x| k.contains(self.conjugate_element(x, g))))
    }

    pub fn coset_table(&self, k: &Subgroup) -> CosetTable {
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / k.order());
        for x in 0..n as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &y in &k.elements {
                coset_of[self.mul(x, y) as usize] = c;
            }
        }
        CosetTable { coset_of, reps }
    }

    pub fn quotient(&self, n: &Subgroup, k: &Subgroup) -> Result<Group> {
        Ok(self.quotient_map(n, k)?.group)
    }

    pub fn quotient_map(&self, n: &Subgroup, k: &Subgroup) -> Result<QuotientMap> {
        if !k.is_subgroup_of(n) {
            return Err(Error::NotASubgroup("K is not contained in N".into()));
        }
        if !self.is_normal_in(n, k) {
            return Err(Error::NotNormal("K is not normal in N".into()));
        }
        let mut coset_of: HashMap<u32, u32> = HashMap::with_capacity(n.order());
        let mut reps = Vec::new();
        for &x in &n.elements {
            if coset_of.contains_key(&x) {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &y in &k.elements {
                coset_of.insert(self.mul(x, y), c);
            }
        }
        let degree = reps.len();
        let action = |g: u32| -> Perm {
            let gi = self.inv(g);
            let images = reps.iter().map(|&r| coset_of[&self.mul(gi, r)]).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = n.generators.iter().map(|&g| action(g)).collect();
        let group = Group::closure(degree, &gens)?;
        let mut projection = HashMap::with_capacity(n.order());
        let mut section = vec![u32::MAX; group.order()];
        for &x in &n.elements {
            let w = group.index_of(&action(x)).expect("image lies in quotient");
            projection.insert(x, w);
            if section[w as usize] == u32::MAX {
                section[w as usize] = x;
            }
        }
        Ok(QuotientMap {
            group,
            projection,
            section,
        })
    }

    /// A Sylow `p`-subgroup of `ambient`, grown through normalizers.
    pub fn sylow(&self, ambient: &Subgroup, p: u64) -> Subgroup {
        let mut target = 1usize;
        let mut m = ambient.order();
        while m.is_multiple_of(p as usize) {
            m /= p as usize;
            target *= p as usize;
        }
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let n = self.normalizer_in(ambient, &s);
            let x = n
                .elements
                .iter()
                .copied()
                .find(|&x| !s.contains(x) && s.contains(self.pow(x, p)))
                .expect("normalizer of a non-Sylow p-subgroup contains a larger p-subgroup");
            s = self.join(&s, &[x]);
        }
        s
    }

    /// The subgroup as a permutation group in its own right.
    pub fn subgroup_group(&self, h: &Subgroup) -> Group {
        let gens: Vec<Perm> = h.generators.iter().map(|&g| self.element(g).clone()).collect();
        Group::closure(self.degree(), &gens).expect("subgroup of an enumerated group")
    }

    /// Indices in `self` of the elements of `sub`, a group on the same points.
    pub fn embed(&self, sub: &Group) -> Result<Vec<u32>> {
        sub.elements()
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not an element of the group")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        let a = Perm::parse_cycles("(1,2,3,4)", 4).unwrap();
        let b = Perm::parse_cycles("(1,2)", 4).unwrap();
        Group::closure(4, &[a, b]).unwrap()
    }

    #[test]
    fn join_and_generate() {
        let g = s4();
        let a = g.index_of(&Perm::parse_cycles("(1,2,3)", 4).unwrap()).unwrap();
        let b = g.index_of(&Perm::parse_cycles("(1,2)(3,4)", 4).unwrap()).unwrap();
        assert_eq!(g.generate(&[a]).order(), 3);
        assert_eq!(g.generate(&[a, b]).order(), 12);
        assert_eq!(g.whole().order(), 24);
    }

    #[test]
    fn subgroup_from_elements_checks_closure() {
        let g = s4();
        let t = g.index_of(&Perm::parse_cycles("(1,2)", 4).unwrap()).unwrap();
        let u = g.index_of(&Perm::parse_cycles("(2,3)", 4).unwrap()).unwrap();
        assert!(g.subgroup_from_elements(&[0, t]).is_ok());
        assert!(matches!(
            g.subgroup_from_elements(&[0, t, u]),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn normalizer_and_quotient() {
        let g = s4();
        let v4 = g
            .subgroup_from_perms(&[
                Perm::parse_cycles("(1,2)(3,4)", 4).unwrap(),
                Perm::parse_cycles("(1,3)(2,4)", 4).unwrap(),
            ])
            .unwrap();
        assert_eq!(g.normalizer(&v4).order(), 24);
        let q = g.quotient(&g.whole(), &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        let t = g.generate(&[g.index_of(&Perm::parse_cycles("(1,2)", 4).unwrap()).unwrap()]);
        assert!(matches!(g.quotient(&g.whole(), &t), Err(Error::NotNormal(_))));
        assert_eq!(g.normalizer(&t).order(), 4);
        assert_eq!(g.centralizer_in(&g.whole(), &v4).order(), 4);
    }

    #[test]
    fn quotient_map_sections() {
        let g = s4();
        let a4 = g.generate(&[
            g.index_of(&Perm::parse_cycles("(1,2,3)", 4).unwrap()).unwrap(),
            g.index_of(&Perm::parse_cycles("(2,3,4)", 4).unwrap()).unwrap(),
        ]);
        let q = g.quotient_map(&g.whole(), &a4).unwrap();
        assert_eq!(q.group.order(), 2);
        for w in 0..2 {
            assert_eq!(q.project(q.lift(w)), Some(w));
        }
        let odd = g.index_of(&Perm::parse_cycles("(1,2)", 4).unwrap()).unwrap();
        assert_eq!(q.project(odd), Some(1));
        for &x in g.whole().elements() {
            for &y in g.whole().elements() {
                let lhs = q.project(g.mul(x, y)).unwrap();
                let rhs = q.group.mul(q.project(x).unwrap(), q.project(y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sylow_orders() {
        let g = s4();
        assert_eq!(g.sylow(&g.whole(), 2).order(), 8);
        assert_eq!(g.sylow(&g.whole(), 3).order(), 3);
        assert_eq!(g.sylow(&g.whole(), 5).order(), 1);
    }

    #[test]
    fn coset_table_fixed_points() {
        let g = s4();
        let t = g.generate(&[g.index_of(&Perm::parse_cycles("(1,2)", 4).unwrap()).unwrap()]);
        let table = g.coset_table(&t);
        assert_eq!(table.len(), 12);
        for c in 0..table.len() as u32 {
            let r = table.rep(c);
            assert_eq!(table.coset_of(r), c);
            assert_eq!(table.coset_of(g.mul(r, t.generators()[0])), c);
        }
    }
}
