#![allow(dead_code, clippy::needless_range_loop)]

pub mod alignment;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankone::linalg::{intersect_lattices, same_lattice, smith_normal_form, IntMatrix};
use rankone::orbitcat::{join, BoundaryTerm, Cell, Coefficients, OCChainComplex, ZComplex};
use rankone::permgroup::{builtin, Group, Lattice, Perm};

pub fn lattice(name: &str) -> Arc<Lattice> {
    Arc::new(Lattice::new(Arc::new(builtin(name).unwrap())))
}

pub fn lattice_of(group: Group) -> Arc<Lattice> {
    Arc::new(Lattice::new(Arc::new(group)))
}

/// `(C3 x C3) ⋊ C2` with the C2 inverting both factors.
pub fn generalized_dihedral_18() -> Group {
    let a = Perm::parse_cycles("(1 2 3)", 6).unwrap();
    let b = Perm::parse_cycles("(4 5 6)", 6).unwrap();
    let s = Perm::parse_cycles("(2 3)(5 6)", 6).unwrap();
    Group::closure(6, &[a, b, s]).unwrap()
}

pub fn term(target: usize, coefficient: i64, rep: u32) -> BoundaryTerm {
    BoundaryTerm {
        target,
        coefficient,
        rep,
    }
}

/// C2 reflecting a circle: two fixed vertices, one free edge orbit.
pub fn reflection_circle(l: &Arc<Lattice>) -> OCChainComplex {
    let g = l.group();
    let whole = g.whole();
    let one = g.trivial_subgroup();
    let e = g.identity();
    OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(whole.clone(), vec![]), Cell::new(whole, vec![])],
            vec![Cell::new(one, vec![term(1, 1, e), term(0, -1, e)])],
        ],
        true,
    )
    .unwrap()
}

/// A cyclic group rotating a circle freely, `d e = g v - v`.
pub fn rotation_circle(l: &Arc<Lattice>) -> OCChainComplex {
    let g = l.group();
    let one = g.trivial_subgroup();
    let gen = g.generator_indices()[0];
    OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(one.clone(), vec![])],
            vec![Cell::new(one, vec![term(0, 1, gen), term(0, -1, g.identity())])],
        ],
        true,
    )
    .unwrap()
}

/// S3 acting on the boundary of a triangle on the points {0, 1, 2}.
pub fn triangle(l: &Arc<Lattice>) -> OCChainComplex {
    let g = l.group();
    let s = g.index_of(&Perm::parse_cycles("(2 3)", 3).unwrap()).unwrap();
    let stab = g.generate(&[s]);
    let to_one = (0..g.order() as u32).find(|&x| g.element(x).apply(0) == 1).unwrap();
    let half = Cell::new(
        g.trivial_subgroup(),
        vec![term(1, 1, g.identity()), term(0, -1, to_one)],
    );
    OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(stab.clone(), vec![]), Cell::new(stab, vec![])],
            vec![half],
        ],
        true,
    )
    .unwrap()
}

pub fn point(l: &Arc<Lattice>) -> OCChainComplex {
    OCChainComplex::new(l.clone(), vec![vec![Cell::new(l.group().whole(), vec![])]], true).unwrap()
}

/// The reflection circle with a contractible free pair added in degrees 1 and 2.
pub fn padded_reflection(l: &Arc<Lattice>) -> OCChainComplex {
    let base = reflection_circle(l);
    let g = l.group();
    let one = g.trivial_subgroup();
    let mut cells = base.cells().to_vec();
    cells[1].push(Cell::new(one.clone(), vec![]));
    cells.push(vec![Cell::new(one, vec![term(1, 1, g.identity())])]);
    OCChainComplex::new(l.clone(), cells, true).unwrap()
}

type GroupRingElement = Vec<i64>;

fn ring_mul(g: &Group, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    let mut out = vec![0; g.order()];
    for (x, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (y, &cb) in b.iter().enumerate() {
            if cb != 0 {
                out[g.mul(x as u32, y as u32) as usize] += ca * cb;
            }
        }
    }
    out
}

fn ring_add(a: &mut GroupRingElement, b: &GroupRingElement, sign: i64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += sign * y;
    }
}

fn basis_element(g: &Group, x: u32, c: i64) -> GroupRingElement {
    let mut v = vec![0; g.order()];
    v[x as usize] = c;
    v
}

fn random_element(g: &Group, rng: &mut ChaCha8Rng, terms: usize) -> GroupRingElement {
    let mut v = vec![0; g.order()];
    for _ in 0..terms {
        v[rng.gen_range(0..g.order())] += rng.gen_range(-2..=2);
    }
    v
}

/// A free complex with a valid differential: a direct sum of two- and
/// three-term pieces, `v N_g` followed by `(g - 1) u`, scrambled by random
/// elementary basis changes over the group ring.
pub fn random_free_complex(l: &Arc<Lattice>, seed: u64) -> OCChainComplex {
    let g = l.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let depth = 4;
    let mut ranks = vec![0usize; depth];
    // rows[d][i][j]: coefficient of cell j of degree d-1 in the boundary of cell i of degree d.
    let mut rows: Vec<Vec<Vec<GroupRingElement>>> = vec![Vec::new(); depth];
    let mut blocks: Vec<(usize, Vec<GroupRingElement>)> = Vec::new();
    for _ in 0..rng.gen_range(2..=4) {
        if rng.gen_bool(0.5) {
            let d = rng.gen_range(0..depth - 1);
            let mut x = random_element(g, &mut rng, 2);
            x[0] += rng.gen_range(1..=3);
            blocks.push((d, vec![x]));
        } else {
            let gen = g.generator_indices()[rng.gen_range(0..g.generator_indices().len())];
            let order = g.element_order(gen);
            let mut norm = vec![0; g.order()];
            let mut p = g.identity();
            for _ in 0..order {
                norm[p as usize] += 1;
                p = g.mul(p, gen);
            }
            let mut t_minus_one = basis_element(g, gen, 1);
            t_minus_one[g.identity() as usize] -= 1;
            let v = basis_element(g, rng.gen_range(0..g.order() as u32), 1);
            let u = basis_element(g, rng.gen_range(0..g.order() as u32), 1);
            let d = rng.gen_range(0..depth - 2);
            blocks.push((d, vec![ring_mul(g, &t_minus_one, &u), ring_mul(g, &v, &norm)]));
        }
    }
    let mut placed = Vec::new();
    for (d, maps) in blocks {
        let idx: Vec<usize> = (d..=d + maps.len()).map(|k| ranks[k]).collect();
        for k in d..=d + maps.len() {
            ranks[k] += 1;
        }
        placed.push((d, idx, maps));
    }
    let zero = vec![0i64; g.order()];
    for d in 1..depth {
        rows[d] = vec![vec![zero.clone(); ranks[d - 1]]; ranks[d]];
    }
    for (d, idx, maps) in placed {
        for (step, m) in maps.into_iter().enumerate() {
            rows[d + step + 1][idx[step + 1]][idx[step]] = m;
        }
    }
    for _ in 0..rng.gen_range(3..=6) {
        let d = rng.gen_range(0..depth);
        if ranks[d] < 2 {
            continue;
        }
        let i = rng.gen_range(0..ranks[d]);
        let j = (i + rng.gen_range(1..ranks[d])) % ranks[d];
        let r = basis_element(
            g,
            rng.gen_range(0..g.order() as u32),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        if d > 0 {
            let src = rows[d][j].clone();
            for (k, entry) in src.iter().enumerate() {
                let add = ring_mul(g, &r, entry);
                ring_add(&mut rows[d][i][k], &add, 1);
            }
        }
        if d + 1 < depth {
            for row in rows[d + 1].iter_mut() {
                let sub = ring_mul(g, &row[i], &r);
                ring_add(&mut row[j], &sub, -1);
            }
        }
    }
    let one = g.trivial_subgroup();
    let mut cells = Vec::new();
    for d in 0..depth {
        let mut layer = Vec::new();
        for i in 0..ranks[d] {
            let mut boundary = Vec::new();
            if d > 0 {
                for (j, entry) in rows[d][i].iter().enumerate() {
                    for (x, &c) in entry.iter().enumerate() {
                        if c != 0 {
                            boundary.push(term(j, c, x as u32));
                        }
                    }
                }
            }
            layer.push(Cell::new(one.clone(), boundary));
        }
        cells.push(layer);
    }
    while cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    OCChainComplex::new(l.clone(), cells, false).unwrap()
}

/// At least ten complexes: circles, joins, a padded circle and random free complexes.
pub fn corpus() -> Vec<(String, OCChainComplex)> {
    let c2 = lattice("C2");
    let c3 = lattice("C3");
    let c5 = lattice("C5");
    let s3 = lattice("S3");
    let c4 = lattice("C4");
    let refl = reflection_circle(&c2);
    let rot3 = rotation_circle(&c3);
    let tri = triangle(&s3);
    let mut out = vec![
        ("reflection circle".to_string(), refl.clone()),
        ("rotation circle C3".to_string(), rot3.clone()),
        ("rotation circle C5".to_string(), rotation_circle(&c5)),
        ("triangle S3".to_string(), tri.clone()),
        ("point S3".to_string(), point(&s3)),
        ("padded reflection circle".to_string(), padded_reflection(&c2)),
        ("reflection * reflection".to_string(), join(&refl, &refl).unwrap()),
        ("rotation * rotation".to_string(), join(&rot3, &rot3).unwrap()),
        ("triangle * triangle".to_string(), join(&tri, &tri).unwrap()),
        ("triangle * point".to_string(), join(&tri, &point(&s3)).unwrap()),
    ];
    for (i, l) in [&c3, &s3, &c4, &s3, &c2].into_iter().enumerate() {
        let seed = 17 + i as u64;
        out.push((format!("random free {seed}"), random_free_complex(l, seed)));
    }
    out
}

fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..m.cols() {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_rank(m: &IntMatrix, q: u64) -> usize {
    let qb = BigInt::from(q);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).mod_floor(&qb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let inv = |x: u64| (1..q).find(|y| x * y % q == 1).unwrap();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let s = inv(a[rank][col]);
        for c in 0..m.cols() {
            a[rank][c] = a[rank][c] * s % q;
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..m.cols() {
                    a[r][c] = (a[r][c] + q * q - f * a[rank][c] % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

const ORACLE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Compares Smith normal form homology with Betti numbers from rational
/// ranks and with mod-q Betti numbers through universal coefficients.
pub fn check_homology_oracle(c: &ZComplex) -> Result<(), String> {
    let hom: Vec<_> = c.degrees().map(|d| c.homology_at(d, Coefficients::Integers)).collect();
    let count = |d: i64, q: u64| -> usize {
        if d < c.lo() || d > c.hi() {
            return 0;
        }
        hom[(d - c.lo()) as usize]
            .torsion
            .iter()
            .filter(|t| (*t % q).is_zero())
            .count()
    };
    for d in c.degrees() {
        let h = &hom[(d - c.lo()) as usize];
        let (lower, upper) = (c.boundary(d), c.boundary(d + 1));
        let betti = c.rank(d) - rational_rank(&lower) - rational_rank(&upper);
        if betti != h.free_rank {
            return Err(format!("degree {d}: rank {} vs rational {betti}", h.free_rank));
        }
        for t in &h.torsion {
            if t.abs() <= BigInt::one() {
                return Err(format!("degree {d}: trivial torsion coefficient {t}"));
            }
        }
        for q in ORACLE_PRIMES {
            let mod_betti = c.rank(d) - mod_rank(&lower, q) - mod_rank(&upper, q);
            if mod_betti != betti + count(d, q) + count(d - 1, q) {
                return Err(format!("degree {d}: mod {q} Betti number {mod_betti} disagrees"));
            }
        }
    }
    Ok(())
}

/// Every morphism-induced map between evaluations is injective with a
/// torsion-free cokernel.
pub fn check_restriction_split(c: &OCChainComplex) -> Result<(), String> {
    let l = c.lattice();
    let g = l.group();
    let evals: Vec<_> = (0..l.len()).map(|k| c.evaluate(l.rep(k), false)).collect();
    for h in 0..l.len() {
        for k in 0..l.len() {
            if !l.is_subconjugate(h, k) {
                continue;
            }
            let table = g.coset_table(l.rep(k));
            for &a in table.reps() {
                if !rankone::orbitcat::is_morphism(g, l.rep(h), l.rep(k), a) {
                    continue;
                }
                let f = c.induced_map(&evals[k], &evals[h], a);
                for d in 0..=c.top_degree() {
                    let m = f(d);
                    let s = smith_normal_form(&m);
                    if s.rank() != m.cols() || s.diagonal.iter().any(|x| !x.is_one()) {
                        return Err(format!("{} -> {} degree {d}", l.label(h), l.label(k)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `C^K_H ∩ C^L_H = C^<K,L>_H` for all `K, L` containing `H`.
pub fn check_intersection_identity(c: &OCChainComplex) -> Result<(), String> {
    let l = c.lattice();
    let g = l.group();
    for h in 0..l.len() {
        let hr = l.rep(h);
        let supers: Vec<_> = (0..l.len())
            .flat_map(|k| l.conjugates_containing(hr, k).cloned().collect::<Vec<_>>())
            .collect();
        for (i, k) in supers.iter().enumerate() {
            for m in &supers[i..] {
                let joined = g.join(k, m.generators());
                let (a, b, j) = (
                    c.restriction_image(hr, k).unwrap(),
                    c.restriction_image(hr, m).unwrap(),
                    c.restriction_image(hr, &joined).unwrap(),
                );
                for d in 0..a.len() {
                    let meet = intersect_lattices(&a[d], &b[d]);
                    if !same_lattice(&meet, &j[d]) {
                        return Err(format!("at {} in degree {d}", l.label(h)));
                    }
                }
            }
        }
    }
    Ok(())
}
