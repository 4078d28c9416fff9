//! Named groups with fixed permutation models.
//!
//! | name | group | degree |
//! |------|-------|--------|
//! | `Sn`, `An` | symmetric and alternating groups | n |
//! | `Cn` | cyclic group | n |
//! | `D2n` | dihedral group of order 2n | n |
//! | `Q8` | quaternion group, regular | 8 |
//! | `V4` | Klein four group | 4 |
//! | `Qdp` or `Qd(p)` | (Z/p)^2 ⋊ SL(2,p), affine | p^2 |
//! | `Heisp` | upper unitriangular 3x3 over F_p, affine | p^2 |
//! | `Wrp` | C_p wr C_2 | 2p |
//! | `XxY` | direct product of two names above | sum |

use super::group::Group;
use super::lattice::is_prime;
use super::perm::Perm;
use crate::error::{Error, Result};

pub fn builtin(name: &str) -> Result<Group> {
    let (gens, degree, order) = builtin_generators(name.trim())?;
    let g = Group::closure(degree, &gens)?;
    assert_eq!(g.order() as u64, order, "builtin {name} has unexpected order");
    Ok(g)
}

/// Generators, degree and expected order of a builtin.
pub fn builtin_generators(name: &str) -> Result<(Vec<Perm>, usize, u64)> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    if let Some((left, right)) = name.split_once('x') {
        let (a, da, oa) = builtin_generators(left)?;
        let (b, db, ob) = builtin_generators(right)?;
        let degree = da + db;
        let mut gens: Vec<Perm> = a.iter().map(|p| shift(p, 0, degree)).collect();
        gens.extend(b.iter().map(|p| shift(p, da, degree)));
        return Ok((gens, degree, oa * ob));
    }
    let number = |prefix: &str| -> Option<u64> {
        let rest = name.strip_prefix(prefix)?;
        let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        rest.parse().ok()
    };
    let cycles = |degree: usize, cs: &[Vec<usize>]| Perm::from_cycles(degree, cs).expect("valid cycles");

    if name == "Q8" {
        return Ok((quaternion_generators(), 8, 8));
    }
    if name == "V4" {
        let a = cycles(4, &[vec![0, 1], vec![2, 3]]);
        let b = cycles(4, &[vec![0, 2], vec![1, 3]]);
        return Ok((vec![a, b], 4, 4));
    }
    if let Some(p) = number("Qd") {
        if !is_prime(p) {
            return Err(unknown());
        }
        return Ok((
            affine_special_generators(p as usize),
            (p * p) as usize,
            p * p * p * (p * p - 1),
        ));
    }
    if let Some(p) = number("Heis") {
        if !is_prime(p) {
            return Err(unknown());
        }
        return Ok((heisenberg_generators(p as usize), (p * p) as usize, p * p * p));
    }
    if let Some(p) = number("Wr") {
        if p < 2 {
            return Err(unknown());
        }
        let n = p as usize;
        let c = cycles(2 * n, &[(0..n).collect()]);
        let swap: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i + n]).collect();
        let s = cycles(2 * n, &swap);
        return Ok((vec![c, s], 2 * n, 2 * p * p));
    }
    if let Some(n) = number("S") {
        let d = n.max(1) as usize;
        let mut gens = Vec::new();
        if d >= 2 {
            gens.push(cycles(d, &[vec![0, 1]]));
            gens.push(cycles(d, &[(0..d).collect()]));
        }
        return Ok((gens, d, (1..=n.max(1)).product()));
    }
    if let Some(n) = number("A") {
        let d = n.max(1) as usize;
        let gens: Vec<Perm> = (2..d).map(|k| cycles(d, &[vec![0, 1, k]])).collect();
        let order = if n < 2 { 1 } else { (1..=n).product::<u64>() / 2 };
        return Ok((gens, d, order));
    }
    if let Some(n) = number("C") {
        let d = n.max(1) as usize;
        let gens = if d >= 2 {
            vec![cycles(d, &[(0..d).collect()])]
        } else {
            vec![]
        };
        return Ok((gens, d, n.max(1)));
    }
    if let Some(m) = number("D") {
        if m < 6 || m % 2 == 1 {
            return Err(unknown());
        }
        let n = (m / 2) as usize;
        let r = cycles(n, &[(0..n).collect()]);
        let images: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
        let s = Perm::from_images(images).expect("reflection");
        return Ok((vec![r, s], n, m));
    }
    Err(unknown())
}

fn shift(p: &Perm, offset: usize, degree: usize) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in 0..p.degree() {
        images[i + offset] = (p.apply(i) + offset) as u32;
    }
    Perm::from_images(images).expect("shifted permutation")
}

/// Left multiplication by `i` and `j` on the units `±1, ±i, ±j, ±k`.
fn quaternion_generators() -> Vec<Perm> {
    // Unit u in {1, i, j, k} with sign s, encoded as 4 * s + u.
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let left = |u: usize| -> Perm {
        let images = (0..8)
            .map(|x: usize| {
                let (neg, v) = unit_mul(u, x % 4);
                let sign = (x / 4 == 1) ^ neg;
                (4 * sign as usize + v) as u32
            })
            .collect();
        Perm::from_images(images).expect("regular action")
    };
    vec![left(1), left(2)]
}

fn affine(p: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Perm {
    let images = (0..p * p)
        .map(|i| {
            let (x, y) = f(i % p, i / p);
            (x % p + p * (y % p)) as u32
        })
        .collect();
    Perm::from_images(images).expect("affine map is a bijection")
}

fn affine_special_generators(p: usize) -> Vec<Perm> {
    vec![
        affine(p, |x, y| (x + 1, y)),
        affine(p, |x, y| (x, y + 1)),
        affine(p, |x, y| (x + y, y)),
        affine(p, |x, y| (p - y, x)),
    ]
}

fn heisenberg_generators(p: usize) -> Vec<Perm> {
    vec![
        affine(p, |x, y| (x + 1, y)),
        affine(p, |x, y| (x, y + 1)),
        affine(p, |x, y| (x + y, y)),
    ]
}
