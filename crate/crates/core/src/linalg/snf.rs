use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `P A Q = D` with `P`, `Q` unimodular and `D` diagonal, the nonzero
/// diagonal entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    /// Nonzero diagonal entries of `D`.
    pub diagonal: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    d: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        self.p.add_row_multiple(dst, src, c);
        self.p_inv.add_col_multiple(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        self.q.add_col_multiple(dst, src, c);
        self.q_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }

    /// Position of a smallest nonzero entry in the lower right block from `t`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = self.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                    let one = a.is_one();
                    best = Some((i, j, a));
                    if one {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        p: IntMatrix::identity(m),
        p_inv: IntMatrix::identity(m),
        q: IntMatrix::identity(n),
        q_inv: IntMatrix::identity(n),
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let Some((i, j)) = w.min_entry(t) else { break };
        w.swap_rows(t, i);
        w.swap_cols(t, j);
        loop {
            let mut done = true;
            for i in t + 1..m {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = w.d.get(i, t).div_floor(w.d.get(t, t));
                w.add_row(i, t, &-q);
                if !w.d.get(i, t).is_zero() {
                    w.swap_rows(t, i);
                    done = false;
                }
            }
            for j in t + 1..n {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = w.d.get(t, j).div_floor(w.d.get(t, t));
                w.add_col(j, t, &-q);
                if !w.d.get(t, j).is_zero() {
                    w.swap_cols(t, j);
                    done = false;
                }
            }
            if !done {
                continue;
            }
            let pivot = w.d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.d.get(t, t).clone());
    }
    Snf {
        p: w.p,
        p_inv: w.p_inv,
        q: w.q,
        q_inv: w.q_inv,
        diagonal,
    }
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// A basis of the integer kernel of `a`, as columns. The kernel is saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    s.q.select_columns(s.rank()..a.cols())
}

/// A basis of the column lattice of `a`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let mut b = s.p_inv.select_columns(0..s.rank());
    for (j, d) in s.diagonal.iter().enumerate() {
        for i in 0..b.rows() {
            let v = b.get(i, j) * d;
            b.set(i, j, v);
        }
    }
    b
}

/// Integer solution `x` of `a x = v`, if any.
pub fn solve(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_normal_form(a);
    let pv = s.p.apply(v);
    let r = s.rank();
    if pv[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = pv[i].div_rem(&s.diagonal[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(s.q.apply(&y))
}

/// Whether every column of `b` lies in the column lattice of `a`.
pub fn contains_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let s = smith_normal_form(a);
    let r = s.rank();
    (0..b.cols()).all(|j| {
        let pv = s.p.apply(&b.column(j));
        pv[r..].iter().all(Zero::is_zero) && (0..r).all(|i| pv[i].is_multiple_of(&s.diagonal[i]))
    })
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    contains_lattice(a, b) && contains_lattice(b, a)
}

/// A basis of the intersection of the column lattices of `a` and `b`.
pub fn intersect_lattices(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = kernel_basis(&a.hstack(&b.neg()));
    let top = k.select_rows(0..a.cols());
    image_basis(&(a * &top))
}
