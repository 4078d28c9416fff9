use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isotropy::Family;
use crate::permgroup::Lattice;

/// An integer function on subgroup classes, `-1` meaning "empty".
#[derive(Clone, Debug)]
pub struct SuperClassFunction {
    lattice: Arc<Lattice>,
    values: Vec<i64>,
}

/// Serialized form of one value.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ClassValue {
    pub class_label: String,
    pub order: usize,
    pub value: i64,
}

/// A triple `H <= K, L` at one level whose join breaks the closure condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureViolation {
    pub h: String,
    pub k: String,
    pub l: String,
    pub join: String,
    pub level: i64,
    pub join_value: i64,
}

impl PartialEq for SuperClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.values == other.values
    }
}

impl SuperClassFunction {
    pub fn new(lattice: Arc<Lattice>, values: Vec<i64>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::Parse(format!(
                "expected {} class values, found {}",
                lattice.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v < -1) {
            return Err(Error::Parse(format!("value {v} below -1")));
        }
        Ok(SuperClassFunction { lattice, values })
    }

    /// `f` on the family, `-1` elsewhere.
    pub fn on_family(family: &Family, f: impl Fn(usize) -> i64) -> Result<Self> {
        let lattice = family.lattice().clone();
        let values = (0..lattice.len())
            .map(|i| if family.contains(i) { f(i) } else { -1 })
            .collect();
        SuperClassFunction::new(lattice, values)
    }

    pub fn constant(lattice: Arc<Lattice>, value: i64) -> Self {
        let values = vec![value; lattice.len()];
        SuperClassFunction { lattice, values }
    }

    pub fn from_class_values(lattice: Arc<Lattice>, entries: &[ClassValue]) -> Result<Self> {
        let mut values = vec![-1; lattice.len()];
        for e in entries {
            let i = lattice
                .find_label(&e.class_label)
                .ok_or_else(|| Error::Parse(format!("unknown subgroup class label `{}`", e.class_label)))?;
            if lattice.order_of(i) != e.order {
                return Err(Error::Parse(format!(
                    "class {} has order {}, file says {}",
                    e.class_label,
                    lattice.order_of(i),
                    e.order
                )));
            }
            values[i] = e.value;
        }
        SuperClassFunction::new(lattice, values)
    }

    pub fn to_class_values(&self) -> Vec<ClassValue> {
        (0..self.values.len())
            .map(|i| ClassValue {
                class_label: self.lattice.label(i).to_string(),
                order: self.lattice.order_of(i),
                value: self.values[i],
            })
            .collect()
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn value(&self, class: usize) -> i64 {
        self.values[class]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Classes with a non-negative value.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] >= 0).collect()
    }

    pub fn is_defined_on(&self, family: &Family) -> bool {
        (0..self.values.len()).all(|i| (self.values[i] >= 0) == family.contains(i))
    }

    /// The join law `n -> k(n+1) - 1`, fixing `-1`.
    pub fn scaled(&self, k: i64) -> Self {
        let values = self
            .values
            .iter()
            .map(|&v| if v < 0 { -1 } else { k * (v + 1) - 1 })
            .collect();
        SuperClassFunction {
            lattice: self.lattice.clone(),
            values,
        }
    }

    /// Pointwise join of two functions: `n(H) + m(H) + 1`.
    pub fn join(&self, other: &SuperClassFunction) -> Self {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a + b + 1)
            .collect();
        SuperClassFunction {
            lattice: self.lattice.clone(),
            values,
        }
    }

    fn comparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.values.len();
        (0..n)
            .flat_map(move |h| (0..n).map(move |k| (h, k)))
            .filter(move |&(h, k)| h != k && self.lattice.is_subconjugate(h, k))
    }

    /// `n(K) <= n(H)` whenever `(H) <= (K)`.
    pub fn is_monotone(&self) -> bool {
        self.comparable_pairs().all(|(h, k)| self.values[k] <= self.values[h])
    }

    /// Monotone, and `n(K) < n(H)` whenever `(H) < (K)` with `K` in the support.
    pub fn is_strictly_monotone(&self) -> bool {
        self.is_monotone()
            && self
                .comparable_pairs()
                .all(|(h, k)| self.values[k] < 0 || self.values[k] < self.values[h])
    }

    pub fn closure_condition(&self) -> bool {
        self.closure_violations().is_empty()
    }

    /// Triples `H <= K, L` with equal non-negative values whose join `<K, L>`
    /// is outside the support or has a different value.
    pub fn closure_violations(&self) -> Vec<ClosureViolation> {
        let lattice = &self.lattice;
        let g = lattice.group();
        let mut out = Vec::new();
        let n = self.values.len();
        for h in 0..n {
            let level = self.values[h];
            if level < 0 {
                continue;
            }
            let same: Vec<usize> = (0..n)
                .filter(|&k| self.values[k] == level && lattice.is_subconjugate(h, k))
                .collect();
            let rep = lattice.rep(h);
            for (a, &k) in same.iter().enumerate() {
                for &l in &same[a..] {
                    let ks: Vec<_> = lattice.conjugates_containing(rep, k).collect();
                    let ls: Vec<_> = lattice.conjugates_containing(rep, l).collect();
                    let mut seen = BTreeSet::new();
                    for kk in &ks {
                        for ll in &ls {
                            let m = g.join(kk, ll.generators());
                            let mc = lattice.class_of(&m);
                            if self.values[mc] != level && seen.insert(mc) {
                                out.push(ClosureViolation {
                                    h: lattice.label(h).to_string(),
                                    k: lattice.label(k).to_string(),
                                    l: lattice.label(l).to_string(),
                                    join: lattice.label(mc).to_string(),
                                    level,
                                    join_value: self.values[mc],
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Distinct non-negative values, largest first.
    pub fn levels(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.values.iter().copied().filter(|&v| v >= 0).collect();
        set.into_iter().rev().collect()
    }
}

/// One poset component of a level set, with its unique maximal class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelComponent {
    pub members: Vec<usize>,
    pub maximal: usize,
}

/// Splits the classes of the `level`-th largest value (1-based) into
/// components of the subconjugacy relation.
pub fn level_components(n: &SuperClassFunction, level: usize) -> Result<Vec<LevelComponent>> {
    let levels = n.levels();
    let value = *levels
        .get(level.wrapping_sub(1))
        .ok_or_else(|| Error::Parse(format!("level {level} out of range 1..={}", levels.len())))?;
    components_at_value(n, value)
}

pub fn components_at_value(n: &SuperClassFunction, value: i64) -> Result<Vec<LevelComponent>> {
    let lattice = n.lattice();
    let set: Vec<usize> = (0..n.values().len()).filter(|&i| n.value(i) == value).collect();
    let mut component = vec![usize::MAX; set.len()];
    let mut out = Vec::new();
    for start in 0..set.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        component[start] = id;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(a) = stack.pop() {
            members.push(set[a]);
            for b in 0..set.len() {
                if component[b] == usize::MAX
                    && (lattice.is_subconjugate(set[a], set[b]) || lattice.is_subconjugate(set[b], set[a]))
                {
                    component[b] = id;
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        let maximal: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| members.iter().all(|&x| lattice.is_subconjugate(x, m)))
            .collect();
        if maximal.len() != 1 {
            let labels: Vec<&str> = members.iter().map(|&m| lattice.label(m)).collect();
            return Err(Error::MaximalNotUnique(format!(
                "component {labels:?} at value {value} has no unique maximal class"
            )));
        }
        out.push(LevelComponent {
            members,
            maximal: maximal[0],
        });
    }
    Ok(out)
}
