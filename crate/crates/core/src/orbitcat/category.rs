use std::sync::Arc;

use crate::error::{Error, Result};
use crate::isotropy::Family;
use crate::permgroup::{CosetTable, Group, Lattice, Subgroup};

/// Whether `a^-1 H a <= K`, so that `xH -> xaK` is a well defined `G`-map.
pub fn is_morphism(group: &Group, h: &Subgroup, k: &Subgroup, a: u32) -> bool {
    h.generators()
        .iter()
        .all(|&x| k.contains(group.conjugate_element(x, a)))
}

/// The orbit category restricted to a family, with objects the class
/// representatives `G/H` and morphisms `G/H -> G/K` the cosets `aK` with
/// `a^-1 H a <= K`.
pub struct OrbitCategory {
    lattice: Arc<Lattice>,
    objects: Vec<usize>,
    tables: Vec<CosetTable>,
    /// `morphisms[i][j]` lists coset indices `aK_j` of the maps `G/K_i -> G/K_j`.
    morphisms: Vec<Vec<Vec<u32>>>,
}

impl OrbitCategory {
    pub fn new(family: &Family) -> Result<OrbitCategory> {
        let lattice = family.lattice().clone();
        let closed = family
            .members()
            .all(|k| (0..lattice.len()).all(|h| !lattice.is_subconjugate(h, k) || family.contains(h)));
        if !closed {
            return Err(Error::FamilyNotClosed("family is not closed under subconjugacy".into()));
        }
        let g = lattice.group();
        let objects = family.member_vec();
        let tables: Vec<CosetTable> = objects.iter().map(|&k| g.coset_table(lattice.rep(k))).collect();
        let morphisms = objects
            .iter()
            .map(|&h| {
                objects
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| {
                        let (hr, kr) = (lattice.rep(h), lattice.rep(k));
                        (0..tables[j].len() as u32)
                            .filter(|&c| is_morphism(g, hr, kr, tables[j].rep(c)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(OrbitCategory {
            lattice,
            objects,
            tables,
            morphisms,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Subgroup classes of the objects, in order.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn object_of_class(&self, class: usize) -> Option<usize> {
        self.objects.iter().position(|&c| c == class)
    }

    /// Coset representatives `a` of the morphisms between objects `i` and `j`.
    pub fn morphisms(&self, i: usize, j: usize) -> Vec<u32> {
        self.morphisms[i][j].iter().map(|&c| self.tables[j].rep(c)).collect()
    }

    pub fn morphism_count(&self, i: usize, j: usize) -> usize {
        self.morphisms[i][j].len()
    }

    /// Index in `Mor(i, l)` of `g o f` for `f` the `a`-th map `i -> j` and `g` the
    /// `b`-th map `j -> l`. The composite is `xK_i -> x a b K_l`.
    pub fn compose(&self, i: usize, j: usize, l: usize, a: usize, b: usize) -> usize {
        let g = self.lattice.group();
        let ra = self.tables[j].rep(self.morphisms[i][j][a]);
        let rb = self.tables[l].rep(self.morphisms[j][l][b]);
        let c = self.tables[l].coset_of(g.mul(ra, rb));
        self.morphisms[i][l].binary_search(&c).expect("composite is a morphism")
    }

    /// The full composition table for one triple of objects.
    pub fn composition_table(&self, i: usize, j: usize, l: usize) -> Vec<Vec<usize>> {
        (0..self.morphism_count(i, j))
            .map(|a| {
                (0..self.morphism_count(j, l))
                    .map(|b| self.compose(i, j, l, a, b))
                    .collect()
            })
            .collect()
    }
}

/// Representatives of the double cosets `K \ G / L`.
pub fn double_coset_reps(group: &Group, k: &Subgroup, l: &Subgroup) -> Vec<u32> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for x in 0..group.order() as u32 {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        for &a in k.elements() {
            let ax = group.mul(a, x);
            for &b in l.elements() {
                seen[group.mul(ax, b) as usize] = true;
            }
        }
    }
    reps
}

/// Writes `x = k e l` with `e` among `reps`; returns `(k, index of e)`.
pub fn locate_double_coset(group: &Group, k: &Subgroup, l: &Subgroup, reps: &[u32], x: u32) -> (u32, usize) {
    for &a in k.elements() {
        let y = group.mul(group.inv(a), x);
        for (idx, &e) in reps.iter().enumerate() {
            if l.contains(group.mul(group.inv(e), y)) {
                return (a, idx);
            }
        }
    }
    unreachable!("double cosets cover the group")
}
