use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::{image_basis, smith_normal_form, IntMatrix};

/// Integral coefficients, or the integers localized at a prime, where
/// torsion prime to `p` is discarded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "ring", content = "prime")]
pub enum Coefficients {
    #[default]
    Integers,
    Local(u64),
}

impl Coefficients {
    /// The part of a torsion coefficient that survives, or `None` if it becomes a unit.
    pub fn filter_torsion(&self, t: &BigInt) -> Option<BigInt> {
        match *self {
            Coefficients::Integers => (!t.is_one()).then(|| t.clone()),
            Coefficients::Local(p) => {
                let p = BigInt::from(p);
                let mut rest = t.clone();
                let mut part = BigInt::one();
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    part *= &p;
                }
                (!part.is_one()).then_some(part)
            }
        }
    }
}

/// A bounded chain complex of finitely generated free abelian groups.
/// `boundary(d)` maps degree `d` to degree `d - 1`, as a matrix acting on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is the boundary out of degree `lo + k + 1`.
    diffs: Vec<IntMatrix>,
}

/// Homology in one degree with a basis of free generators.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Columns are cycles representing the free generators.
    pub generators: IntMatrix,
    /// Sends a cycle to its coordinates in the free part.
    pub coordinates: IntMatrix,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl ZComplex {
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Self {
        assert_eq!(diffs.len() + 1, ranks.len().max(1), "one boundary per adjacent pair");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (ranks[k], ranks[k + 1]), "boundary shape");
        }
        ZComplex { lo, ranks, diffs }
    }

    pub fn zero() -> Self {
        ZComplex {
            lo: 0,
            ranks: vec![0],
            diffs: vec![],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, d: i64) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.ranks[(d - self.lo) as usize]
        }
    }

    /// The boundary `C_d -> C_{d-1}`.
    pub fn boundary(&self, d: i64) -> IntMatrix {
        if d <= self.lo || d > self.hi() {
            IntMatrix::zeros(self.rank(d - 1), self.rank(d))
        } else {
            self.diffs[(d - self.lo - 1) as usize].clone()
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// Largest degree with a nonzero module, or `-1`.
    pub fn top(&self) -> i64 {
        self.degrees().rev().find(|&d| d >= 0 && self.rank(d) > 0).unwrap_or(-1)
    }

    pub fn is_square_zero(&self) -> bool {
        self.degrees()
            .all(|d| (&self.boundary(d - 1) * &self.boundary(d)).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(d) as i64)
            .sum()
    }

    pub fn homology_at(&self, d: i64, coeffs: Coefficients) -> DegreeHomology {
        let n = self.rank(d);
        let s1 = smith_normal_form(&self.boundary(d));
        let r = s1.rank();
        let z = s1.q.select_columns(r..n);
        let z_inv = s1.q_inv.select_rows(r..n);
        let x = &z_inv * &self.boundary(d + 1);
        let s2 = smith_normal_form(&x);
        let r2 = s2.rank();
        let torsion = s2.diagonal.iter().filter_map(|t| coeffs.filter_torsion(t)).collect();
        let basis = &z * &s2.p_inv;
        DegreeHomology {
            degree: d,
            free_rank: n - r - r2,
            torsion,
            generators: basis.select_columns(r2..basis.cols()),
            coordinates: &s2.p.select_rows(r2..z.cols()) * &z_inv,
        }
    }

    pub fn homology(&self, coeffs: Coefficients) -> Vec<DegreeHomology> {
        self.degrees().map(|d| self.homology_at(d, coeffs)).collect()
    }

    pub fn is_acyclic(&self, coeffs: Coefficients) -> bool {
        self.degrees().all(|d| self.homology_at(d, coeffs).is_zero())
    }

    /// Largest degree with nonzero homology, or `-1`.
    pub fn homology_top(&self, coeffs: Coefficients) -> i64 {
        self.degrees()
            .rev()
            .filter(|&d| d >= 0)
            .find(|&d| !self.homology_at(d, coeffs).is_zero())
            .unwrap_or(-1)
    }

    /// The mapping cone of a chain map `f: self -> target`, given by one
    /// matrix per degree of `self`.
    pub fn mapping_cone(&self, target: &ZComplex, f: impl Fn(i64) -> IntMatrix) -> ZComplex {
        let lo = self.lo.min(target.lo);
        let hi = (self.hi() + 1).max(target.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|d| self.rank(d - 1) + target.rank(d)).collect();
        let mut diffs = Vec::new();
        for d in lo + 1..=hi {
            let (a1, b1) = (self.rank(d - 1), target.rank(d));
            let (a0, b0) = (self.rank(d - 2), target.rank(d - 1));
            let mut m = IntMatrix::zeros(a0 + b0, a1 + b1);
            let da = self.boundary(d - 1);
            let db = target.boundary(d);
            let fd = if a1 > 0 && b0 > 0 {
                f(d - 1)
            } else {
                IntMatrix::zeros(b0, a1)
            };
            for i in 0..a0 {
                for j in 0..a1 {
                    m.set(i, j, -da.get(i, j));
                }
            }
            for i in 0..b0 {
                for j in 0..a1 {
                    m.set(a0 + i, j, fd.get(i, j).clone());
                }
                for j in 0..b1 {
                    m.set(a0 + i, a1 + j, db.get(i, j).clone());
                }
            }
            diffs.push(m);
        }
        ZComplex { lo, ranks, diffs }
    }

    /// Restriction to the subcomplex spanned by the given basis vectors in
    /// each degree. The caller guarantees the span is closed under the boundary.
    pub fn coordinate_subcomplex(&self, keep: &dyn Fn(i64, usize) -> bool) -> (ZComplex, Vec<Vec<usize>>) {
        let idx: Vec<Vec<usize>> = self
            .degrees()
            .map(|d| (0..self.rank(d)).filter(|&i| keep(d, i)).collect())
            .collect();
        let ranks = idx.iter().map(Vec::len).collect();
        let diffs = self
            .degrees()
            .skip(1)
            .map(|d| {
                let k = (d - self.lo) as usize;
                self.boundary(d)
                    .select_rows(idx[k - 1].iter().copied())
                    .select_columns(idx[k].iter().copied())
            })
            .collect();
        (
            ZComplex {
                lo: self.lo,
                ranks,
                diffs,
            },
            idx,
        )
    }

    /// Quotient by the coordinate subcomplex of kept basis vectors.
    pub fn coordinate_quotient(&self, keep: &dyn Fn(i64, usize) -> bool) -> ZComplex {
        self.coordinate_subcomplex(&|d, i| !keep(d, i)).0
    }

    /// Whether the column span of `basis(d)` is closed under the boundary.
    pub fn is_subcomplex(&self, basis: &dyn Fn(i64) -> IntMatrix) -> bool {
        self.degrees()
            .all(|d| crate::linalg::contains_lattice(&basis(d - 1), &(&self.boundary(d) * &basis(d))))
    }

    /// Quotient by a degreewise saturated sublattice closed under the boundary,
    /// given by spanning columns in each degree. Returns `None` if some
    /// sublattice is not saturated.
    pub fn lattice_quotient(&self, basis: &dyn Fn(i64) -> IntMatrix) -> Option<ZComplex> {
        let mut projections = Vec::new();
        let mut sections = Vec::new();
        for d in self.degrees() {
            let b = basis(d);
            let s = smith_normal_form(&b);
            if s.diagonal.iter().any(|x| !x.is_one()) {
                return None;
            }
            let r = s.rank();
            let n = self.rank(d);
            projections.push(s.p.select_rows(r..n));
            sections.push(s.p_inv.select_columns(r..n));
        }
        let ranks = projections.iter().map(IntMatrix::rows).collect();
        let diffs = self
            .degrees()
            .skip(1)
            .map(|d| {
                let k = (d - self.lo) as usize;
                &(&projections[k - 1] * &self.boundary(d)) * &sections[k]
            })
            .collect();
        Some(ZComplex {
            lo: self.lo,
            ranks,
            diffs,
        })
    }

    /// Subcomplex given by spanning columns in each degree, in a basis of
    /// the span; requires closure under the boundary.
    pub fn lattice_subcomplex(&self, basis: &dyn Fn(i64) -> IntMatrix) -> ZComplex {
        let bases: Vec<IntMatrix> = self.degrees().map(|d| image_basis(&basis(d))).collect();
        let ranks = bases.iter().map(IntMatrix::cols).collect();
        let diffs = self
            .degrees()
            .skip(1)
            .map(|d| {
                let k = (d - self.lo) as usize;
                let image = &self.boundary(d) * &bases[k];
                let cols: Vec<Vec<BigInt>> = (0..image.cols())
                    .map(|j| {
                        crate::linalg::solve(&bases[k - 1], &image.column(j)).expect("span closed under the boundary")
                    })
                    .collect();
                IntMatrix::from_columns(bases[k - 1].cols(), &cols)
            })
            .collect();
        ZComplex {
            lo: self.lo,
            ranks,
            diffs,
        }
    }
}

/// The matrix of a chain self-map on the free part of homology in one degree.
pub fn induced_on_free(h: &DegreeHomology, map: &IntMatrix) -> IntMatrix {
    &(&h.coordinates * map) * &h.generators
}

/// Entries as machine integers, for reports.
pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| v.to_i64().expect("entry fits in i64"))
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && *m == IntMatrix::identity(m.rows())
}

pub fn is_unimodular_scalar(m: &IntMatrix) -> bool {
    m.rows() == 1 && m.cols() == 1 && m.get(0, 0).abs().is_one()
}
