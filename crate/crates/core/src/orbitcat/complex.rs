use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::category::is_morphism;
use super::zcomplex::{induced_on_free, is_identity, to_i64_rows, Coefficients, ZComplex};
use crate::dimfun::SuperClassFunction;
use crate::error::{Error, Result};
use crate::isotropy::{ConditionEntry, ConditionReport};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::permgroup::{CosetTable, Group, Lattice, Subgroup};

/// `coefficient` times the translate `rep . target` of a cell one degree down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub target: usize,
    pub coefficient: i64,
    pub rep: u32,
}

/// A cell orbit `G/K` with its boundary, `K` the stabilizer of the representative cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub stabilizer: Subgroup,
    pub boundary: Vec<BoundaryTerm>,
}

impl Cell {
    pub fn new(stabilizer: Subgroup, boundary: Vec<BoundaryTerm>) -> Self {
        Cell { stabilizer, boundary }
    }
}

/// A finite free chain complex over the orbit category, `C_d = sum R[G/K_i]`
/// over the cells of degree `d`, optionally augmented by `R` in degree `-1`.
#[derive(Clone, Debug)]
pub struct OCChainComplex {
    lattice: Arc<Lattice>,
    cells: Vec<Vec<Cell>>,
    augmented: bool,
    tables: Vec<Vec<CosetTable>>,
}

/// A complex evaluated at a subgroup `H`: the cells of `X^H`, indexed as
/// (cell orbit, coset of the stabilizer) per degree.
pub struct Evaluation {
    pub subgroup: Subgroup,
    pub reduced: bool,
    pub basis: Vec<Vec<(usize, u32)>>,
    index: Vec<HashMap<(usize, u32), usize>>,
    pub complex: ZComplex,
}

impl Evaluation {
    pub fn position(&self, degree: usize, cell: usize, coset: u32) -> Option<usize> {
        self.index.get(degree)?.get(&(cell, coset)).copied()
    }

    fn offset(&self) -> i64 {
        if self.reduced {
            -1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct DegreeEntry {
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ActionEntry {
    pub generator: String,
    pub degree: i64,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ClassHomology {
    pub class_label: String,
    pub order: usize,
    pub degrees: Vec<DegreeEntry>,
    pub actions: Vec<ActionEntry>,
    pub oriented: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct HomologyTable {
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub classes: Vec<ClassHomology>,
}

impl HomologyTable {
    pub fn class(&self, label: &str) -> Option<&ClassHomology> {
        self.classes.iter().find(|c| c.class_label == label)
    }
}

/// Per-class verdicts of one predicate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ClassVerdicts {
    pub passed: bool,
    pub classes: Vec<(String, bool)>,
}

impl ClassVerdicts {
    fn from_pairs(classes: Vec<(String, bool)>) -> Self {
        ClassVerdicts {
            passed: classes.iter().all(|c| c.1),
            classes,
        }
    }

    pub fn get(&self, label: &str) -> Option<bool> {
        self.classes.iter().find(|c| c.0 == label).map(|c| c.1)
    }
}

impl OCChainComplex {
    /// Validates morphisms, boundary targets, `d^2 = 0` at every subgroup
    /// class and `e d_1 = 0` when augmented.
    pub fn new(lattice: Arc<Lattice>, cells: Vec<Vec<Cell>>, augmented: bool) -> Result<OCChainComplex> {
        let g = lattice.group();
        for (d, layer) in cells.iter().enumerate() {
            for (i, cell) in layer.iter().enumerate() {
                for t in &cell.boundary {
                    if d == 0 {
                        return Err(Error::InvalidComplex(format!("0-cell {i} has a boundary term")));
                    }
                    let target = cells[d - 1].get(t.target).ok_or_else(|| {
                        Error::InvalidComplex(format!("cell {i} in degree {d} names missing target {}", t.target))
                    })?;
                    if t.rep as usize >= g.order() || !is_morphism(g, &cell.stabilizer, &target.stabilizer, t.rep) {
                        return Err(Error::InvalidMorphism(format!(
                            "cell {i} in degree {d}: representative {} does not give a map G/K -> G/L",
                            g.element(t.rep)
                        )));
                    }
                }
            }
        }
        let tables = cells
            .iter()
            .map(|layer| layer.iter().map(|c| g.coset_table(&c.stabilizer)).collect())
            .collect();
        let complex = OCChainComplex {
            lattice,
            cells,
            augmented,
            tables,
        };
        for class in 0..complex.lattice.len() {
            let e = complex.evaluate(complex.lattice.rep(class), complex.augmented);
            if !e.complex.is_square_zero() {
                return Err(Error::BoundaryNotSquareZero(format!(
                    "at subgroup class {}",
                    complex.lattice.label(class)
                )));
            }
        }
        Ok(complex)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn group(&self) -> &Group {
        self.lattice.group()
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn top_degree(&self) -> i64 {
        self.cells.len() as i64 - 1
    }

    pub fn evaluate(&self, h: &Subgroup, reduced: bool) -> Evaluation {
        let g = self.group();
        let reduced = reduced && self.augmented;
        let mut basis: Vec<Vec<(usize, u32)>> = Vec::new();
        let mut index = Vec::new();
        for (d, layer) in self.cells.iter().enumerate() {
            let mut b = Vec::new();
            for (i, cell) in layer.iter().enumerate() {
                let table = &self.tables[d][i];
                for c in 0..table.len() as u32 {
                    if is_morphism(g, h, &cell.stabilizer, table.rep(c)) {
                        b.push((i, c));
                    }
                }
            }
            index.push(b.iter().enumerate().map(|(k, &v)| (v, k)).collect::<HashMap<_, _>>());
            basis.push(b);
        }
        let mut ranks: Vec<usize> = Vec::new();
        if reduced {
            ranks.push(1);
        }
        ranks.extend(basis.iter().map(Vec::len));
        if ranks.is_empty() {
            ranks.push(0);
        }
        let mut diffs = Vec::new();
        if reduced && !basis.is_empty() {
            let mut m = IntMatrix::zeros(1, basis[0].len());
            for j in 0..basis[0].len() {
                m.set(0, j, BigInt::one());
            }
            diffs.push(m);
        }
        for d in 1..basis.len() {
            let mut m = IntMatrix::zeros(basis[d - 1].len(), basis[d].len());
            for (col, &(i, c)) in basis[d].iter().enumerate() {
                let x = self.tables[d][i].rep(c);
                for t in &self.cells[d][i].boundary {
                    let target = self.tables[d - 1][t.target].coset_of(g.mul(x, t.rep));
                    let row = index[d - 1][&(t.target, target)];
                    m.add_to(row, col, &BigInt::from(t.coefficient));
                }
            }
            diffs.push(m);
        }
        let lo = if reduced { -1 } else { 0 };
        Evaluation {
            subgroup: h.clone(),
            reduced,
            basis,
            index,
            complex: ZComplex::new(lo, ranks, diffs),
        }
    }

    /// The matrices of `n` acting on `C(H)` by `x sigma -> n x sigma`, for `n` normalizing `H`.
    pub fn action(&self, e: &Evaluation, n: u32) -> impl Fn(i64) -> IntMatrix + '_ {
        let g = self.group();
        let offset = e.offset();
        let basis = e.basis.clone();
        let index = e.index.clone();
        move |d: i64| {
            if d < 0 {
                return IntMatrix::identity(if offset < 0 { 1 } else { 0 });
            }
            let du = d as usize;
            let Some(b) = basis.get(du) else {
                return IntMatrix::zeros(0, 0);
            };
            let mut m = IntMatrix::zeros(b.len(), b.len());
            for (col, &(i, c)) in b.iter().enumerate() {
                let target = self.tables[du][i].coset_of(g.mul(n, self.tables[du][i].rep(c)));
                m.set(index[du][&(i, target)], col, BigInt::one());
            }
            m
        }
    }

    /// The map `C(K) -> C(H)` induced by the `G`-map `G/H -> G/K`, `xH -> xaK`:
    /// a cell `y` of `X^K` goes to `a y` in `X^H`.
    pub fn induced_map(&self, from_k: &Evaluation, to_h: &Evaluation, a: u32) -> impl Fn(i64) -> IntMatrix + '_ {
        let g = self.group();
        let reduced = from_k.reduced;
        let src = from_k.basis.clone();
        let dst = to_h.basis.clone();
        let index = to_h.index.clone();
        move |d: i64| {
            if d < 0 {
                return IntMatrix::identity(if reduced { 1 } else { 0 });
            }
            let du = d as usize;
            let (s, t) = (src.get(du).map_or(0, Vec::len), dst.get(du).map_or(0, Vec::len));
            let mut m = IntMatrix::zeros(t, s);
            for (col, &(i, c)) in src.get(du).into_iter().flatten().enumerate() {
                let target = self.tables[du][i].coset_of(g.mul(a, self.tables[du][i].rep(c)));
                m.set(index[du][&(i, target)], col, BigInt::one());
            }
            m
        }
    }

    /// Generators of `N_G(H)` outside `H`; their images generate `W_G(H)`.
    pub fn weyl_generators(&self, h: &Subgroup) -> Vec<u32> {
        let g = self.group();
        let n = g.normalizer(h);
        n.generators().iter().copied().filter(|&x| !h.contains(x)).collect()
    }

    fn class_homology(&self, class: usize, coeffs: Coefficients) -> ClassHomology {
        let g = self.group();
        let h = self.lattice.rep(class);
        let e = self.evaluate(h, true);
        let gens = self.weyl_generators(h);
        let mut degrees = Vec::new();
        let mut actions = Vec::new();
        let mut oriented = true;
        for hd in e.complex.homology(coeffs) {
            if hd.is_zero() {
                continue;
            }
            degrees.push(DegreeEntry {
                degree: hd.degree,
                rank: hd.free_rank,
                torsion: hd.torsion.iter().map(|t| t.to_string()).collect(),
            });
            if hd.free_rank == 0 {
                continue;
            }
            for &n in &gens {
                let m = induced_on_free(&hd, &self.action(&e, n)(hd.degree));
                oriented &= is_identity(&m);
                actions.push(ActionEntry {
                    generator: g.element(n).to_string(),
                    degree: hd.degree,
                    matrix: to_i64_rows(&m),
                });
            }
        }
        ClassHomology {
            class_label: self.lattice.label(class).to_string(),
            order: self.lattice.order_of(class),
            degrees,
            actions,
            oriented,
        }
    }

    /// Reduced homology (when augmented) at every subgroup class, with the
    /// Weyl group generators acting on the free parts.
    pub fn homology(&self, coeffs: Coefficients) -> HomologyTable {
        HomologyTable {
            coefficients: coeffs,
            reduced: self.augmented,
            classes: (0..self.lattice.len())
                .map(|c| self.class_homology(c, coeffs))
                .collect(),
        }
    }

    /// `(Dim, HomDim)`: top degree of a nonzero chain module, and of nonzero
    /// unreduced homology, `-1` when there is none.
    pub fn dim_functions(&self, coeffs: Coefficients) -> Result<(SuperClassFunction, SuperClassFunction)> {
        let mut dim = Vec::new();
        let mut hom = Vec::new();
        for class in 0..self.lattice.len() {
            let e = self.evaluate(self.lattice.rep(class), false);
            dim.push(e.complex.top());
            hom.push(e.complex.homology_top(coeffs));
        }
        Ok((
            SuperClassFunction::new(self.lattice.clone(), dim)?,
            SuperClassFunction::new(self.lattice.clone(), hom)?,
        ))
    }

    pub fn tightness(&self, coeffs: Coefficients) -> Result<ClassVerdicts> {
        let (dim, hom) = self.dim_functions(coeffs)?;
        Ok(ClassVerdicts::from_pairs(
            (0..self.lattice.len())
                .map(|c| (self.lattice.label(c).to_string(), dim.value(c) == hom.value(c)))
                .collect(),
        ))
    }

    /// Whether every evaluation has the reduced homology of an `n(H)`-sphere.
    pub fn is_homology_sphere(&self, n: &SuperClassFunction, coeffs: Coefficients) -> ClassVerdicts {
        ClassVerdicts::from_pairs(
            (0..self.lattice.len())
                .map(|class| {
                    let e = self.evaluate(self.lattice.rep(class), true);
                    let target = n.value(class);
                    let ok = self.augmented
                        && target <= e.complex.hi()
                        && e.complex.degrees().all(|d| {
                            let hd = e.complex.homology_at(d, coeffs);
                            hd.torsion.is_empty() && hd.free_rank == usize::from(d == target)
                        });
                    (self.lattice.label(class).to_string(), ok)
                })
                .collect(),
        )
    }

    /// Whether each Weyl group acts trivially on homology.
    pub fn is_oriented(&self, coeffs: Coefficients) -> ClassVerdicts {
        ClassVerdicts::from_pairs(
            (0..self.lattice.len())
                .map(|c| {
                    (
                        self.lattice.label(c).to_string(),
                        self.class_homology(c, coeffs).oriented,
                    )
                })
                .collect(),
        )
    }

    /// The three algebraic homotopy representation conditions: monotone,
    /// every map between equal-dimensional evaluations induced by a `G`-map
    /// is a homology isomorphism, and joins of equal-level subgroups stay at that level.
    pub fn check_algrep(&self, n: &SuperClassFunction, coeffs: Coefficients) -> ConditionReport {
        let lattice = &self.lattice;
        let g = self.group();
        let mut report = ConditionReport::new();
        report.push(ConditionEntry::new("monotone", "G", n.is_monotone()));
        let evals: Vec<Evaluation> = (0..lattice.len())
            .map(|c| self.evaluate(lattice.rep(c), false))
            .collect();
        for h in 0..lattice.len() {
            for k in 0..lattice.len() {
                if h == k || n.value(h) < 0 || n.value(h) != n.value(k) || !lattice.is_subconjugate(h, k) {
                    continue;
                }
                let (hr, kr) = (lattice.rep(h), lattice.rep(k));
                let table = g.coset_table(kr);
                let mut checked = 0;
                let mut failure = None;
                for &a in table.reps() {
                    if !is_morphism(g, hr, kr, a) {
                        continue;
                    }
                    checked += 1;
                    let f = self.induced_map(&evals[k], &evals[h], a);
                    if !evals[k].complex.mapping_cone(&evals[h].complex, f).is_acyclic(coeffs) {
                        failure = Some(a);
                        break;
                    }
                }
                let subject = format!("{}->{}", lattice.label(h), lattice.label(k));
                let mut entry =
                    ConditionEntry::new("restriction-homology-isomorphism", &subject, failure.is_none()).value(checked);
                if let Some(a) = failure {
                    entry = entry.note(format!("map G/H -> G/K given by {}", g.element(a)));
                }
                report.push(entry);
            }
        }
        let violations = n.closure_violations();
        if violations.is_empty() {
            report.push(ConditionEntry::new("closure", "G", true));
        }
        for v in violations {
            report.push(ConditionEntry::new("closure", &v.h, false).value(v.level).note(format!(
                "<{}, {}> lies in {} with value {}",
                v.k, v.l, v.join, v.join_value
            )));
        }
        report
    }

    /// Cells of `X^H` fixed by `K`, degree by degree, as indices into the
    /// evaluation basis at `H`.
    fn fixed_by(&self, e: &Evaluation, k: &Subgroup) -> Vec<Vec<usize>> {
        let g = self.group();
        e.basis
            .iter()
            .enumerate()
            .map(|(d, b)| {
                b.iter()
                    .enumerate()
                    .filter(|&(_, &(i, c))| is_morphism(g, k, &self.cells[d][i].stabilizer, self.tables[d][i].rep(c)))
                    .map(|(pos, _)| pos)
                    .collect()
            })
            .collect()
    }

    /// The image of `r^K_H: C(K) -> C(H)` for `H <= K`, as spanning columns per degree.
    pub fn restriction_image(&self, h: &Subgroup, k: &Subgroup) -> Result<Vec<IntMatrix>> {
        if !h.is_subgroup_of(k) {
            return Err(Error::NotSubconjugate("H is not contained in K".into()));
        }
        let e = self.evaluate(h, false);
        Ok(columns_of(&e, &self.fixed_by(&e, k)))
    }

    /// The matrix of `r^K_H` in degree `d`.
    pub fn restriction_matrix(&self, h: &Subgroup, k: &Subgroup, d: i64) -> Result<IntMatrix> {
        if !h.is_subgroup_of(k) {
            return Err(Error::NotSubconjugate("H is not contained in K".into()));
        }
        let eh = self.evaluate(h, false);
        let ek = self.evaluate(k, false);
        Ok(self.induced_map(&ek, &eh, self.group().identity())(d))
    }

    /// `sum_i C^{K_i}_H` over every conjugate of each listed class that contains `H`.
    pub fn image_sum(&self, h: &Subgroup, classes: &[usize]) -> Vec<IntMatrix> {
        let e = self.evaluate(h, false);
        let mut keep: Vec<Vec<bool>> = e.basis.iter().map(|b| vec![false; b.len()]).collect();
        for &k in classes {
            for kk in self.lattice.conjugates_containing(h, k) {
                for (d, idx) in self.fixed_by(&e, kk).into_iter().enumerate() {
                    for i in idx {
                        keep[d][i] = true;
                    }
                }
            }
        }
        let idx: Vec<Vec<usize>> = keep
            .iter()
            .map(|k| k.iter().enumerate().filter(|p| *p.1).map(|p| p.0).collect())
            .collect();
        columns_of(&e, &idx)
    }

    pub fn image_sum_homology(
        &self,
        h: &Subgroup,
        classes: &[usize],
        coeffs: Coefficients,
    ) -> Vec<(i64, usize, Vec<String>)> {
        let e = self.evaluate(h, false);
        let cols = self.image_sum(h, classes);
        let sub = e.complex.lattice_subcomplex(&|d| {
            if d < 0 || d as usize >= cols.len() {
                IntMatrix::zeros(e.complex.rank(d), 0)
            } else {
                cols[d as usize].clone()
            }
        });
        sub.homology(coeffs)
            .into_iter()
            .filter(|hd| !hd.is_zero())
            .map(|hd| {
                (
                    hd.degree,
                    hd.free_rank,
                    hd.torsion.iter().map(|t| t.to_string()).collect(),
                )
            })
            .collect()
    }

    /// `0 -> C^{>H}(H) -> C(H) -> S_H C -> 0`: the subcomplex of cells with
    /// stabilizer strictly larger than `H`, and the quotient.
    pub fn splitting(&self, h: &Subgroup) -> (ZComplex, ZComplex) {
        let e = self.evaluate(h, false);
        let order = h.order();
        let larger = |d: i64, pos: usize| {
            let (i, _) = e.basis[d as usize][pos];
            self.cells[d as usize][i].stabilizer.order() > order
        };
        let (sub, _) = e.complex.coordinate_subcomplex(&larger);
        let quotient = e.complex.coordinate_quotient(&larger);
        (sub, quotient)
    }

    /// `H_{n(H)+1}(S_H C) = 0` at every class in the support of `n`.
    pub fn vanishing_hypothesis(&self, n: &SuperClassFunction, coeffs: Coefficients) -> ClassVerdicts {
        ClassVerdicts::from_pairs(
            n.support()
                .into_iter()
                .map(|class| {
                    let (_, s) = self.splitting(self.lattice.rep(class));
                    let ok = s.homology_at(n.value(class) + 1, coeffs).is_zero();
                    (self.lattice.label(class).to_string(), ok)
                })
                .collect(),
        )
    }

    /// Injectivity with torsion-free cokernel of `r^K_H` in every degree.
    pub fn restriction_is_split_injective(&self, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        for d in 0..self.cells.len() as i64 {
            let m = self.restriction_matrix(h, k, d)?;
            let s = smith_normal_form(&m);
            if s.rank() != m.cols() || s.diagonal.iter().any(|x| !x.is_one()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn columns_of(e: &Evaluation, idx: &[Vec<usize>]) -> Vec<IntMatrix> {
    idx.iter()
        .enumerate()
        .map(|(d, cols)| {
            let n = e.basis[d].len();
            let mut m = IntMatrix::zeros(n, cols.len());
            for (j, &i) in cols.iter().enumerate() {
                m.set(i, j, BigInt::one());
            }
            m
        })
        .collect()
}
