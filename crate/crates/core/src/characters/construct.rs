use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::class_function::{
    augmented_character, fixed_dim, p_effective, perm_character, respects_fusion, ClassFunction,
};
use crate::dimfun::SuperClassFunction;
use crate::error::{Error, Result};
use crate::isotropy::{is_p_subgroup_class, p_rank, weyl_rank_conditions, Family};
use crate::permgroup::{is_power_of, prime_divisors, Group, Lattice, Subgroup};

/// How a Sylow character was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Construction {
    /// `sum_i I(Q/K_i)` over the listed subgroup classes of `Q` (labels in `G`).
    Augmented { kernels: Vec<String> },
    /// `sum_i (pi(P/K_i) - pi(P/L_i))` over pairs of subgroup classes of `P`.
    Blocks { pairs: Vec<(String, String)> },
}

/// A character of a Sylow `p`-subgroup together with a multiplicity.
#[derive(Clone, Debug)]
pub struct SylowRepresentation {
    pub prime: u64,
    pub sylow: Subgroup,
    pub character: ClassFunction,
    pub multiplicity: i64,
    pub construction: Construction,
}

impl SylowRepresentation {
    /// Complex fixed dimension of `V^{+k}` at every subgroup class; zero for
    /// classes that are not `p`-subgroups.
    pub fn fixed_dims(&self, lattice: &Lattice) -> Result<Vec<i64>> {
        let g = lattice.group();
        if !respects_fusion(g, &self.character) {
            return Err(Error::FusionViolation(format!(
                "character of the Sylow {}-subgroup is not constant on G-classes",
                self.prime
            )));
        }
        (0..lattice.len())
            .map(|c| {
                if !is_p_subgroup_class(lattice, c, self.prime) {
                    return Ok(0);
                }
                let inside = lattice.conjugates_within(c, &self.sylow).next().ok_or_else(|| {
                    Error::NotASubgroup(format!(
                        "no conjugate of {} inside the Sylow subgroup",
                        lattice.label(c)
                    ))
                })?;
                Ok(self.multiplicity * fixed_dim(&self.character, inside)?)
            })
            .collect()
    }

    pub fn isotropy(&self, lattice: &Arc<Lattice>) -> Result<Family> {
        isotropy_from_fixed(lattice, &self.fixed_dims(lattice)?)
    }

    pub fn sphere_dims(&self, lattice: &Arc<Lattice>) -> Result<SuperClassFunction> {
        sphere_dims_from_fixed(lattice, &self.fixed_dims(lattice)?)
    }
}

/// The family of `p`-subgroup classes with a nonzero fixed subspace.
pub fn isotropy_of(lattice: &Arc<Lattice>, rep: &SylowRepresentation) -> Result<Family> {
    rep.isotropy(lattice)
}

pub fn isotropy_from_fixed(lattice: &Arc<Lattice>, fixed: &[i64]) -> Result<Family> {
    Family::new(lattice.clone(), (0..lattice.len()).filter(|&c| fixed[c] > 0))
}

/// `2 f - 1` where the fixed dimension `f` is positive, `-1` elsewhere.
pub fn sphere_dims_from_fixed(lattice: &Arc<Lattice>, fixed: &[i64]) -> Result<SuperClassFunction> {
    let values = fixed.iter().map(|&f| if f > 0 { 2 * f - 1 } else { -1 }).collect();
    SuperClassFunction::new(lattice.clone(), values)
}

fn is_elementary_abelian(group: &Group, q: &Subgroup, p: u64) -> bool {
    q.elements()
        .iter()
        .all(|&x| x == group.identity() || group.element_order(x) == p)
        && q.elements()
            .iter()
            .all(|&x| q.generators().iter().all(|&y| group.commute(x, y)))
}

fn isotropy_is_admissible(lattice: &Arc<Lattice>, fixed: &[i64], p: u64) -> bool {
    isotropy_from_fixed(lattice, fixed).is_ok_and(|f| weyl_rank_conditions(lattice, &f, p).passed)
}

/// Picks the first candidate in order whose isotropy satisfies the Weyl rank
/// condition, else the first candidate at all.
fn first_preferring_admissible(
    lattice: &Arc<Lattice>,
    p: u64,
    candidates: impl Iterator<Item = SylowRepresentation>,
) -> Option<SylowRepresentation> {
    let g = lattice.group();
    let mut fallback = None;
    for rep in candidates {
        if !respects_fusion(g, &rep.character) || !p_effective(g, &rep.character, p).unwrap_or(false) {
            continue;
        }
        let Ok(fixed) = rep.fixed_dims(lattice) else { continue };
        if isotropy_is_admissible(lattice, &fixed, p) {
            return Some(rep);
        }
        fallback.get_or_insert(rep);
    }
    fallback
}

fn subsets_by_size<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for size in 1..=max.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i].clone()).collect());
            let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + items.len() - size) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// For an elementary abelian Sylow `Q` of rank two, searches sums of
/// `I(Q/K_i)` over `G`-conjugacy-closed sets of order `p` subgroups, ordered
/// by number of summands and then by class index. Returns `None` when the
/// Sylow subgroup is not elementary abelian.
pub fn build_effective_character(lattice: &Arc<Lattice>, p: u64) -> Result<Option<SylowRepresentation>> {
    let g = lattice.group();
    let r = p_rank(g, &g.whole(), p);
    if r != 2 {
        return Err(Error::RankMismatch(format!("{p}-rank of the group is {r}, not 2")));
    }
    let q = g.sylow(&g.whole(), p);
    if !is_elementary_abelian(g, &q, p) {
        return Ok(None);
    }
    let mut by_class: BTreeMap<usize, Vec<Subgroup>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &x in q.elements() {
        if x == g.identity() {
            continue;
        }
        let k = g.generate(&[x]);
        if seen.insert(k.elements().to_vec()) {
            by_class.entry(lattice.class_of(&k)).or_default().push(k);
        }
    }
    let classes: Vec<usize> = by_class.keys().copied().collect();
    let mut families = subsets_by_size(&classes, classes.len());
    families.sort_by_key(|f| (f.iter().map(|c| by_class[c].len()).sum::<usize>(), f.clone()));
    let candidates = families.into_iter().map(|family| {
        let kernels: Vec<&Subgroup> = family.iter().flat_map(|c| &by_class[c]).collect();
        let mut chi = ClassFunction::zero(&q);
        for k in &kernels {
            chi = chi.add(&augmented_character(g, &q, k).expect("order p subgroup of Q"));
        }
        SylowRepresentation {
            prime: p,
            sylow: q.clone(),
            character: chi,
            multiplicity: 1,
            construction: Construction::Augmented {
                kernels: kernels
                    .iter()
                    .map(|k| lattice.label(lattice.class_of(k)).to_string())
                    .collect(),
            },
        }
    });
    Ok(first_preferring_admissible(lattice, p, candidates))
}

/// Searches sums of at most `max_blocks` differences `pi(P/K) - pi(P/L)` of
/// permutation characters of the Sylow subgroup `P`, over pairs of subgroup
/// classes `K < L` of `P` with `K` of `p`-rank at most one. Each summand is a
/// genuine character.
pub fn search_block_character(
    lattice: &Arc<Lattice>,
    p: u64,
    max_blocks: usize,
) -> Result<Option<SylowRepresentation>> {
    let g = lattice.group();
    let r = p_rank(g, &g.whole(), p);
    if r != 2 {
        return Err(Error::RankMismatch(format!("{p}-rank of the group is {r}, not 2")));
    }
    let sylow = g.sylow(&g.whole(), p);
    let pg = Arc::new(g.subgroup_group(&sylow));
    let embed = g.embed(&pg)?;
    let pl = Lattice::new(pg.clone());
    let to_g = |c: usize| -> Result<Subgroup> {
        let elems: Vec<u32> = pl.rep(c).elements().iter().map(|&x| embed[x as usize]).collect();
        g.subgroup_from_elements(&elems)
    };
    let mut blocks = Vec::new();
    for k in 0..pl.len() {
        if p_rank(&pg, pl.rep(k), p) > 1 {
            continue;
        }
        let kg = to_g(k)?;
        let pk = perm_character(g, &sylow, &kg)?;
        for l in 0..pl.len() {
            if l == k || !pl.is_subconjugate(k, l) {
                continue;
            }
            let pi_l = perm_character(g, &sylow, &to_g(l)?)?;
            let label = |c: usize, s: &Subgroup| format!("{}<{}", lattice.label(lattice.class_of(s)), pl.label(c));
            blocks.push((pk.sub(&pi_l), (label(k, &kg), label(l, &to_g(l)?))));
        }
    }
    let candidates = subsets_by_size(&blocks, max_blocks).into_iter().map(|subset| {
        let mut chi = ClassFunction::zero(&sylow);
        for (b, _) in &subset {
            chi = chi.add(b);
        }
        SylowRepresentation {
            prime: p,
            sylow: sylow.clone(),
            character: chi,
            multiplicity: 1,
            construction: Construction::Blocks {
                pairs: subset.into_iter().map(|(_, names)| names).collect(),
            },
        }
    });
    Ok(first_preferring_admissible(lattice, p, candidates))
}

/// An externally supplied table of complex fixed dimensions, keyed by
/// subgroup class label. Unlisted `p`-subgroup classes have dimension zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedDimTable {
    pub prime: u64,
    pub values: BTreeMap<usize, i64>,
}

impl FixedDimTable {
    /// Parses a JSON object `{label: dimension}`; the prime is read off the
    /// orders of the nontrivial classes named.
    pub fn from_json(lattice: &Lattice, text: &str) -> Result<FixedDimTable> {
        let raw: BTreeMap<String, i64> = serde_json::from_str(text)?;
        let mut values = BTreeMap::new();
        let mut primes = BTreeSet::new();
        for (label, dim) in raw {
            let c = lattice
                .find_label(&label)
                .ok_or_else(|| Error::Parse(format!("unknown subgroup class label `{label}`")))?;
            if dim < 0 {
                return Err(Error::Parse(format!("negative fixed dimension {dim} at {label}")));
            }
            let order = lattice.order_of(c) as u64;
            if order > 1 {
                let ps = prime_divisors(order);
                if ps.len() != 1 {
                    return Err(Error::Parse(format!("{label} does not have prime power order")));
                }
                primes.insert(ps[0]);
            }
            values.insert(c, dim);
        }
        let prime = match primes.len() {
            1 => primes.into_iter().next().unwrap(),
            0 => {
                return Err(Error::Parse(
                    "table names no nontrivial p-subgroup, prime is ambiguous".into(),
                ))
            }
            _ => return Err(Error::Parse(format!("table mixes primes {primes:?}"))),
        };
        if !values.contains_key(&0) {
            return Err(Error::Parse("table has no value at the trivial subgroup".into()));
        }
        Ok(FixedDimTable { prime, values })
    }

    pub fn fixed_dims(&self, lattice: &Lattice) -> Vec<i64> {
        (0..lattice.len())
            .map(|c| {
                if is_power_of(lattice.order_of(c) as u64, self.prime) {
                    *self.values.get(&c).unwrap_or(&0)
                } else {
                    0
                }
            })
            .collect()
    }

    /// Zero on every class of `p`-rank two and monotone along subconjugacy.
    pub fn is_consistent(&self, lattice: &Lattice) -> bool {
        let f = self.fixed_dims(lattice);
        let g = lattice.group();
        let effective = (0..lattice.len())
            .filter(|&c| is_p_subgroup_class(lattice, c, self.prime))
            .all(|c| f[c] == 0 || p_rank(g, lattice.rep(c), self.prime) < 2);
        let monotone =
            (0..lattice.len()).all(|h| (0..lattice.len()).all(|k| !lattice.is_subconjugate(h, k) || f[k] <= f[h]));
        effective && monotone
    }
}
