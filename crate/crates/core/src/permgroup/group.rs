use std::collections::HashMap;
use std::fmt;

use super::perm::Perm;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ORDER_BOUND: usize = 10_000_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 3000;

/// A finite permutation group with its elements fully enumerated.
///
/// Elements are indexed by the lexicographic order of their image vectors, so
/// index 0 is the identity and indices do not depend on the generating set.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    gen_index: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    whole: std::sync::OnceLock<Subgroup>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field(
                "generators",
                &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Group {
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<Group> {
        Group::closure_with_bound(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn closure_with_bound(degree: usize, generators: &[Perm], bound: usize) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = generators.to_vec();

        // Breadth-first enumeration, remembering one spanning tree edge per element.
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut parent = vec![u32::MAX];
        let mut via = vec![u32::MAX];
        let mut rmul: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = elements[head].compose(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= bound {
                            return Err(Error::OrderBoundExceeded { bound });
                        }
                        let j = elements.len() as u32;
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push(head as u32);
                        via.push(s as u32);
                        j
                    }
                };
                rmul[s].push(j);
            }
            head += 1;
        }

        let n = elements.len();
        let mut perm_order: Vec<u32> = (0..n as u32).collect();
        perm_order.sort_by(|&a, &b| elements[a as usize].cmp(&elements[b as usize]));
        let mut new_of_old = vec![0u32; n];
        for (new, &old) in perm_order.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let sorted: Vec<Perm> = perm_order.iter().map(|&old| elements[old as usize].clone()).collect();
        for (i, p) in sorted.iter().enumerate() {
            *index.get_mut(p).expect("element indexed") = i as u32;
        }
        let mut rmul_new = vec![vec![0u32; n]; gens.len()];
        for s in 0..gens.len() {
            for old in 0..n {
                rmul_new[s][new_of_old[old] as usize] = new_of_old[rmul[s][old] as usize];
            }
        }
        let bfs_order: Vec<u32> = (0..n).map(|old| new_of_old[old]).collect();
        let mut parent_new = vec![u32::MAX; n];
        let mut via_new = vec![u32::MAX; n];
        for old in 1..n {
            parent_new[new_of_old[old] as usize] = new_of_old[parent[old] as usize];
            via_new[new_of_old[old] as usize] = via[old];
        }

        let table = if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                t[i * n] = i as u32;
            }
            for &j in bfs_order.iter().skip(1) {
                let j = j as usize;
                let p = parent_new[j] as usize;
                let r = &rmul_new[via_new[j] as usize];
                for i in 0..n {
                    t[i * n + j] = r[t[i * n + p] as usize];
                }
            }
            Some(t)
        } else {
            None
        };

        let gen_index = gens.iter().map(|g| index[g]).collect();
        let inverse = sorted.iter().map(|p| index[&p.inverse()]).collect();
        let orders = sorted.iter().map(|p| p.order() as u32).collect();

        let mut group = Group {
            degree,
            generators: gens,
            elements: sorted,
            index,
            gen_index,
            inverse,
            orders,
            table,
            class_of: Vec::new(),
            classes: Vec::new(),
            whole: std::sync::OnceLock::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = c;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                for &g in &self.gen_index {
                    let y = self.conjugate_element(x, g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = c;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn whole_cached(&self, build: impl FnOnce() -> Subgroup) -> Subgroup {
        self.whole.get_or_init(build).clone()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_index
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate_element(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let mut result = 0u32;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders[x as usize] as u64
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.gen_index
            .iter()
            .all(|&a| self.gen_index.iter().all(|&b| self.commute(a, b)))
    }

    /// Sorted multiset of (element order, class size) pairs, an isomorphism invariant.
    pub fn class_signature(&self) -> Vec<(u64, usize)> {
        let mut sig: Vec<(u64, usize)> = self
            .classes
            .iter()
            .map(|c| (self.element_order(c[0]), c.len()))
            .collect();
        sig.sort_unstable();
        sig
    }
}
