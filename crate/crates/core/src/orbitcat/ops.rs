use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::category::{double_coset_reps, is_morphism, locate_double_coset};
use super::complex::{BoundaryTerm, Cell, OCChainComplex};
use super::zcomplex::ZComplex;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::permgroup::{Group, Lattice, Subgroup};

fn intersection(group: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let els: Vec<u32> = a.elements().iter().copied().filter(|&x| b.contains(x)).collect();
    group.subgroup_from_elements(&els).expect("intersection of subgroups")
}

/// The join `X * Y` of two augmented complexes with the diagonal action.
/// Cells are those of `X`, those of `Y`, and one orbit `sigma * e tau` for
/// each double coset `K_sigma e K_tau`, in degree `|sigma| + |tau| + 1`.
pub fn join(x: &OCChainComplex, y: &OCChainComplex) -> Result<OCChainComplex> {
    if !Arc::ptr_eq(x.lattice(), y.lattice()) {
        return Err(Error::InvalidComplex(
            "joined complexes live over different groups".into(),
        ));
    }
    if !x.is_augmented() || !y.is_augmented() {
        return Err(Error::InvalidComplex("the join needs augmented complexes".into()));
    }
    let g = x.group();
    let (xc, yc) = (x.cells(), y.cells());
    let top = (xc.len() + yc.len()).max(xc.len()).max(yc.len());
    let mut layers: Vec<Vec<Cell>> = vec![Vec::new(); top];
    for (d, layer) in xc.iter().enumerate() {
        layers[d].extend(layer.iter().cloned());
    }
    let y_offset: Vec<usize> = (0..top).map(|d| layers[d].len()).collect();
    for (d, layer) in yc.iter().enumerate() {
        for cell in layer {
            let boundary = cell
                .boundary
                .iter()
                .map(|t| BoundaryTerm {
                    target: t.target + y_offset[d - 1],
                    ..t.clone()
                })
                .collect();
            layers[d].push(Cell::new(cell.stabilizer.clone(), boundary));
        }
    }
    let mut reps: HashMap<(usize, usize, usize, usize), Vec<u32>> = HashMap::new();
    let mut index: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
    let mut pending = Vec::new();
    for (dx, xl) in xc.iter().enumerate() {
        for (i, sigma) in xl.iter().enumerate() {
            for (dy, yl) in yc.iter().enumerate() {
                for (j, tau) in yl.iter().enumerate() {
                    let r = double_coset_reps(g, &sigma.stabilizer, &tau.stabilizer);
                    for (f, &e) in r.iter().enumerate() {
                        let d = dx + dy + 1;
                        let moved = g.conjugate_subgroup(&tau.stabilizer, g.inv(e));
                        let stab = intersection(g, &sigma.stabilizer, &moved);
                        index.insert((dx, i, dy, j, f), layers[d].len());
                        layers[d].push(Cell::new(stab, Vec::new()));
                        pending.push((dx, i, dy, j, f, e));
                    }
                    reps.insert((dx, i, dy, j), r);
                }
            }
        }
    }
    for (dx, i, dy, j, f, e) in pending {
        let d = dx + dy + 1;
        let pos = index[&(dx, i, dy, j, f)];
        let sigma = &xc[dx][i];
        let tau = &yc[dy][j];
        let mut boundary = Vec::new();
        if dx == 0 {
            boundary.push(BoundaryTerm {
                target: y_offset[d - 1] + j,
                coefficient: 1,
                rep: e,
            });
        } else {
            for t in &sigma.boundary {
                let rho = &xc[dx - 1][t.target];
                let r = &reps[&(dx - 1, t.target, dy, j)];
                let (k, ff) = locate_double_coset(g, &rho.stabilizer, &tau.stabilizer, r, g.mul(g.inv(t.rep), e));
                boundary.push(BoundaryTerm {
                    target: index[&(dx - 1, t.target, dy, j, ff)],
                    coefficient: t.coefficient,
                    rep: g.mul(t.rep, k),
                });
            }
        }
        let sign = if dx % 2 == 0 { -1 } else { 1 };
        if dy == 0 {
            boundary.push(BoundaryTerm {
                target: i,
                coefficient: sign,
                rep: g.identity(),
            });
        } else {
            for t in &tau.boundary {
                let upsilon = &yc[dy - 1][t.target];
                let r = &reps[&(dx, i, dy - 1, t.target)];
                let (k, ff) = locate_double_coset(g, &sigma.stabilizer, &upsilon.stabilizer, r, g.mul(e, t.rep));
                boundary.push(BoundaryTerm {
                    target: index[&(dx, i, dy - 1, t.target, ff)],
                    coefficient: sign * t.coefficient,
                    rep: k,
                });
            }
        }
        layers[d][pos].boundary = boundary;
    }
    while layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }
    OCChainComplex::new(x.lattice().clone(), layers, true)
}

/// Per row, per column, a group-ring entry as terms `(n, c)`.
pub type GroupRingMatrix = Vec<Vec<Vec<(u32, i64)>>>;

/// A bounded complex of free right `R[W]` modules, `W = N_G(K)/K`. Entry
/// `diffs[d-1][j][i]` is the coefficient of basis vector `j` of `P_{d-1}` in
/// the image of basis vector `i` of `P_d`, a list of `(n, c)` with `n` in `N_G(K)`.
#[derive(Clone, Debug)]
pub struct GroupRingComplex {
    pub kernel: Subgroup,
    pub ranks: Vec<usize>,
    pub diffs: Vec<GroupRingMatrix>,
}

impl GroupRingComplex {
    /// `RW <- RW <- ... <- RW` in degrees `0..=top`, alternating `t - 1` and
    /// the norm element, for a cyclic Weyl group generated by the image of `t`.
    pub fn periodic_resolution(group: &Group, kernel: &Subgroup, top: usize) -> Result<GroupRingComplex> {
        let n = group.normalizer(kernel);
        let w = n.order() / kernel.order();
        let image_order = |x: u32| {
            let mut y = x;
            let mut k = 1;
            while !kernel.contains(y) {
                y = group.mul(y, x);
                k += 1;
            }
            k
        };
        let t = n
            .elements()
            .iter()
            .copied()
            .find(|&x| image_order(x) == w)
            .ok_or_else(|| Error::InvalidComplex("Weyl group is not cyclic".into()))?;
        let powers: Vec<u32> = (0..w)
            .scan(group.identity(), |acc, _| {
                let cur = *acc;
                *acc = group.mul(*acc, t);
                Some(cur)
            })
            .collect();
        let diffs = (1..=top)
            .map(|d| {
                let entry = if d % 2 == 1 {
                    vec![(t, 1), (group.identity(), -1)]
                } else {
                    powers.iter().map(|&p| (p, 1)).collect()
                };
                vec![vec![entry]]
            })
            .collect();
        Ok(GroupRingComplex {
            kernel: kernel.clone(),
            ranks: vec![1; top + 1],
            diffs,
        })
    }
}

/// `E_K(P)(H) = P (x)_{RW} R[(G/K)^H]`, as a free complex over the orbit
/// category with every cell of type `G/K`. A group ring element `n` acts on
/// `G/K` by `xK -> x n^-1 K`.
pub fn extension_functor(lattice: Arc<Lattice>, p: &GroupRingComplex) -> Result<OCChainComplex> {
    let g = lattice.group();
    let normalizer = g.normalizer(&p.kernel);
    let mut cells = Vec::new();
    for (d, &r) in p.ranks.iter().enumerate() {
        let mut layer = Vec::new();
        for i in 0..r {
            let mut boundary = Vec::new();
            if d > 0 {
                for (j, row) in p.diffs[d - 1].iter().enumerate() {
                    for &(n, c) in &row[i] {
                        if !normalizer.contains(n) {
                            return Err(Error::InvalidMorphism(format!("{} does not normalize K", g.element(n))));
                        }
                        boundary.push(BoundaryTerm {
                            target: j,
                            coefficient: c,
                            rep: g.inv(n),
                        });
                    }
                }
            }
            layer.push(Cell::new(p.kernel.clone(), boundary));
        }
        cells.push(layer);
    }
    OCChainComplex::new(lattice, cells, false)
}

/// Per degree, the images of the cells of a subcomplex `A` under a chain map
/// `A -> C`, as boundary-style terms pointing at cells of `C` of the same degree.
pub type CellMap = Vec<Vec<Vec<BoundaryTerm>>>;

/// The pushout `C cup_A B` of a chain map `f: A -> C` along the inclusion of
/// a subcomplex `A` of `B` spanned by the cells `a_cells`. Its cells are
/// those of `C` followed by those of `B` outside `A`.
pub fn pushout(c: &OCChainComplex, b: &OCChainComplex, a_cells: &[Vec<usize>], f: &CellMap) -> Result<OCChainComplex> {
    let g = c.group();
    let depth = c.cells().len().max(b.cells().len());
    let mut in_a: Vec<HashMap<usize, usize>> = vec![HashMap::new(); depth];
    for (d, list) in a_cells.iter().enumerate() {
        for (pos, &cell) in list.iter().enumerate() {
            if cell >= b.cells().get(d).map_or(0, Vec::len) || in_a[d].insert(cell, pos).is_some() {
                return Err(Error::NotInjective(format!(
                    "A lists cell {cell} of degree {d} twice or out of range"
                )));
            }
        }
    }
    for (d, list) in a_cells.iter().enumerate() {
        for &cell in list {
            if b.cells()[d][cell]
                .boundary
                .iter()
                .any(|t| !in_a[d - 1].contains_key(&t.target))
            {
                return Err(Error::NotInjective(format!(
                    "cell {cell} of degree {d} has boundary outside A"
                )));
            }
            let stab = &b.cells()[d][cell].stabilizer;
            for t in &f[d][in_a[d][&cell]] {
                let target = c.cells().get(d).and_then(|l| l.get(t.target)).ok_or_else(|| {
                    Error::InvalidComplex(format!("chain map names missing cell {} of degree {d}", t.target))
                })?;
                if !is_morphism(g, stab, &target.stabilizer, t.rep) {
                    return Err(Error::InvalidMorphism(format!(
                        "chain map term on cell {cell} of degree {d}"
                    )));
                }
            }
        }
    }
    let mut rest_index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); depth];
    let mut layers: Vec<Vec<Cell>> = (0..depth)
        .map(|d| c.cells().get(d).cloned().unwrap_or_default())
        .collect();
    for d in 0..b.cells().len() {
        for cell in 0..b.cells()[d].len() {
            if !in_a[d].contains_key(&cell) {
                rest_index[d].insert(cell, layers[d].len());
                layers[d].push(Cell::new(b.cells()[d][cell].stabilizer.clone(), Vec::new()));
            }
        }
    }
    for d in 1..b.cells().len() {
        for cell in 0..b.cells()[d].len() {
            let Some(&pos) = rest_index[d].get(&cell) else { continue };
            let mut boundary = Vec::new();
            for t in &b.cells()[d][cell].boundary {
                match in_a[d - 1].get(&t.target) {
                    Some(&apos) => {
                        for ft in &f[d - 1][apos] {
                            boundary.push(BoundaryTerm {
                                target: ft.target,
                                coefficient: t.coefficient * ft.coefficient,
                                rep: g.mul(t.rep, ft.rep),
                            });
                        }
                    }
                    None => boundary.push(BoundaryTerm {
                        target: rest_index[d - 1][&t.target],
                        ..t.clone()
                    }),
                }
            }
            layers[d][pos].boundary = boundary;
        }
    }
    while layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }
    let augmented = c.is_augmented() && b.is_augmented();
    let result = OCChainComplex::new(c.lattice().clone(), layers, augmented)?;
    let lattice = c.lattice();
    let a = sub_complex(b, a_cells)?;
    for class in 0..lattice.len() {
        let h = lattice.rep(class);
        let (ea, ec) = (a.evaluate(h, false), c.evaluate(h, false));
        for d in 0..depth as i64 {
            let fd = cell_map_matrix(&a, c, f, &ea, &ec, d);
            let fd_prev = cell_map_matrix(&a, c, f, &ea, &ec, d - 1);
            let lhs = &ec.complex.boundary(d) * &fd;
            let rhs = &fd_prev * &ea.complex.boundary(d);
            if lhs != rhs {
                return Err(Error::InvalidComplex(format!(
                    "map A -> C is not a chain map at {} in degree {d}",
                    lattice.label(class)
                )));
            }
        }
    }
    Ok(result)
}

/// The subcomplex of `b` on the listed cells, reindexed.
pub fn sub_complex(b: &OCChainComplex, cells: &[Vec<usize>]) -> Result<OCChainComplex> {
    let mut layers = Vec::new();
    for (d, list) in cells.iter().enumerate() {
        let prev: HashMap<usize, usize> = if d == 0 {
            HashMap::new()
        } else {
            cells[d - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect()
        };
        let mut layer = Vec::new();
        for &cell in list {
            let src = &b.cells()[d][cell];
            let boundary = src
                .boundary
                .iter()
                .map(|t| {
                    prev.get(&t.target)
                        .map(|&target| BoundaryTerm { target, ..t.clone() })
                        .ok_or_else(|| Error::NotInjective(format!("cell {cell} of degree {d} has boundary outside A")))
                })
                .collect::<Result<Vec<_>>>()?;
            layer.push(Cell::new(src.stabilizer.clone(), boundary));
        }
        layers.push(layer);
    }
    OCChainComplex::new(b.lattice().clone(), layers, b.is_augmented())
}

fn cell_map_matrix(
    a: &OCChainComplex,
    c: &OCChainComplex,
    f: &CellMap,
    ea: &super::complex::Evaluation,
    ec: &super::complex::Evaluation,
    d: i64,
) -> IntMatrix {
    let rows = ec.complex.rank(d);
    let cols = ea.complex.rank(d);
    let mut m = IntMatrix::zeros(rows, cols);
    if d < 0 {
        return m;
    }
    let g = a.group();
    let du = d as usize;
    for (col, &(i, coset)) in ea.basis.get(du).into_iter().flatten().enumerate() {
        let x = g.coset_table(&a.cells()[du][i].stabilizer).rep(coset);
        for t in &f[du][i] {
            let target_stab = &c.cells()[du][t.target].stabilizer;
            let tc = g.coset_table(target_stab).coset_of(g.mul(x, t.rep));
            let row = ec.position(du, t.target, tc).expect("image cell is fixed");
            m.add_to(row, col, &BigInt::from(t.coefficient));
        }
    }
    m
}

/// The pushout of one evaluation: `(C + B) / {(f a, -i a)}` for a degreewise
/// split injection `i: A -> B` and a chain map `f: A -> C`.
pub fn pushout_evaluation(
    c: &ZComplex,
    a: &ZComplex,
    b: &ZComplex,
    f: &dyn Fn(i64) -> IntMatrix,
    i: &dyn Fn(i64) -> IntMatrix,
) -> Result<ZComplex> {
    let lo = c.lo().min(a.lo()).min(b.lo());
    let hi = c.hi().max(a.hi()).max(b.hi());
    for d in lo..=hi {
        if a.rank(d) == 0 {
            continue;
        }
        let s = smith_normal_form(&i(d));
        if s.rank() != a.rank(d) || s.diagonal.iter().any(|x| !x.is_one()) {
            return Err(Error::NotInjective(format!(
                "A -> B is not split injective in degree {d}"
            )));
        }
    }
    let ranks: Vec<usize> = (lo..=hi).map(|d| c.rank(d) + b.rank(d)).collect();
    let diffs = (lo + 1..=hi)
        .map(|d| {
            let (c1, b1, c0, b0) = (c.rank(d), b.rank(d), c.rank(d - 1), b.rank(d - 1));
            let mut m = IntMatrix::zeros(c0 + b0, c1 + b1);
            let (dc, db) = (c.boundary(d), b.boundary(d));
            for r in 0..c0 {
                for s in 0..c1 {
                    m.set(r, s, dc.get(r, s).clone());
                }
            }
            for r in 0..b0 {
                for s in 0..b1 {
                    m.set(c0 + r, c1 + s, db.get(r, s).clone());
                }
            }
            m
        })
        .collect();
    let sum = ZComplex::new(lo, ranks, diffs);
    let span = |d: i64| {
        let (cd, bd, ad) = (c.rank(d), b.rank(d), a.rank(d));
        let mut m = IntMatrix::zeros(cd + bd, ad);
        if ad > 0 {
            let (fd, id) = (f(d), i(d));
            for col in 0..ad {
                for r in 0..cd {
                    m.set(r, col, fd.get(r, col).clone());
                }
                for r in 0..bd {
                    m.set(cd + r, col, -id.get(r, col));
                }
            }
        }
        m
    };
    if !sum.is_subcomplex(&span) {
        return Err(Error::InvalidComplex("f or i is not a chain map".into()));
    }
    sum.lattice_quotient(&span)
        .ok_or_else(|| Error::NotInjective("A does not embed as a direct summand".into()))
}
