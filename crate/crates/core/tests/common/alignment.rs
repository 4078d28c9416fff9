use std::collections::{BTreeSet, HashMap};

use rankone::permgroup::{Group, Lattice};

type Set = BTreeSet<u32>;

fn set_of(elements: &[u32]) -> Set {
    elements.iter().copied().collect()
}

fn generated(g: &Group, a: &Set, b: &Set) -> Set {
    let gens: Vec<u32> = a.union(b).copied().collect();
    let mut out: Set = [g.identity()].into_iter().collect();
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if out.insert(y) {
                frontier.push(y);
            }
        }
    }
    out
}

fn conjugates(l: &Lattice, c: usize) -> Vec<Set> {
    l.class(c).conjugates().iter().map(|h| set_of(h.elements())).collect()
}

fn class_of_set(l: &Lattice, s: &Set) -> usize {
    (0..l.len())
        .find(|&c| l.order_of(c) == s.len() && conjugates(l, c).contains(s))
        .expect("every subgroup lies in some class")
}

fn subconjugate(l: &Lattice, h: usize, k: usize) -> bool {
    let k = set_of(l.rep(k).elements());
    conjugates(l, h).iter().any(|c| c.is_subset(&k))
}

/// `N_G(H)/H` as coset representatives with products looked up by coset minimum.
struct Quotient<'a> {
    g: &'a Group,
    h: Vec<u32>,
    reps: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl<'a> Quotient<'a> {
    fn weyl(g: &'a Group, h: &Set) -> Self {
        let hv: Vec<u32> = h.iter().copied().collect();
        let mut q = Quotient {
            g,
            h: hv,
            reps: Vec::new(),
            index: HashMap::new(),
        };
        for x in 0..g.order() as u32 {
            let image: Set = h.iter().map(|&y| g.mul(g.mul(g.inv(x), y), x)).collect();
            if &image != h {
                continue;
            }
            let key = q.key(x);
            if !q.index.contains_key(&key) {
                q.index.insert(key, q.reps.len());
                q.reps.push(x);
            }
        }
        q
    }

    fn key(&self, x: u32) -> u32 {
        self.h.iter().map(|&y| self.g.mul(x, y)).min().unwrap()
    }

    fn order(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.key(self.g.mul(self.reps[a], self.reps[b]))]
    }

    fn identity(&self) -> usize {
        self.index[&self.key(self.g.identity())]
    }

    fn element_order(&self, a: usize) -> u64 {
        let e = self.identity();
        let (mut x, mut n) = (a, 1);
        while x != e {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn powers(&self, a: usize) -> BTreeSet<usize> {
        let e = self.identity();
        let mut out: BTreeSet<usize> = [e].into_iter().collect();
        let mut x = a;
        while x != e {
            out.insert(x);
            x = self.mul(x, a);
        }
        out
    }

    fn rank_at_least_two(&self, q: u64) -> bool {
        let of_order: Vec<usize> = (0..self.order()).filter(|&a| self.element_order(a) == q).collect();
        of_order.iter().any(|&a| {
            let pa = self.powers(a);
            of_order
                .iter()
                .any(|&b| !pa.contains(&b) && self.mul(a, b) == self.mul(b, a))
        })
    }

    /// `2 |N_W(Q) : C_W(Q)|` for a cyclic Sylow `q`-subgroup `Q`, or `None`
    /// if `q` does not divide `|W|`, the `q`-rank exceeds one, or `Q` is not cyclic.
    fn cyclic_period_multiple(&self, q: u64) -> Option<u64> {
        let mut sylow = 1u64;
        let mut n = self.order() as u64;
        while n.is_multiple_of(q) {
            n /= q;
            sylow *= q;
        }
        if sylow == 1 || self.rank_at_least_two(q) {
            return None;
        }
        let x = (0..self.order()).find(|&a| self.element_order(a) == sylow)?;
        let px = self.powers(x);
        let mut normalizing = 0u64;
        let mut centralizing = 0u64;
        for w in 0..self.order() {
            let wx = self.mul(w, x);
            if self.mul(x, w) == wx {
                centralizing += 1;
            }
            if px.iter().any(|&y| self.mul(y, w) == wx) {
                normalizing += 1;
            }
        }
        Some(2 * normalizing / centralizing)
    }

    fn has_noncyclic_rank_one_sylow(&self, q: u64) -> bool {
        (self.order() as u64).is_multiple_of(q)
            && !self.rank_at_least_two(q)
            && self.cyclic_period_multiple(q).is_none()
    }
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug)]
pub struct AlignmentFacts {
    pub m_g: u64,
    pub chain_steps: usize,
}

/// Post-hoc check of an aligned dimension function given by class values,
/// recomputing every bound from element-level data.
pub fn check_alignment(l: &Lattice, values: &[i64]) -> Result<AlignmentFacts, String> {
    let g = l.group();
    let n = l.len();
    let support: Vec<usize> = (0..n).filter(|&c| values[c] >= 0).collect();
    if values[0] < 0 {
        return Err("empty at the trivial subgroup".into());
    }

    let below: Vec<Vec<bool>> = (0..n)
        .map(|h| (0..n).map(|k| subconjugate(l, h, k)).collect())
        .collect();
    for h in 0..n {
        for k in 0..n {
            if below[h][k] && values[k] > values[h] {
                return Err(format!("not monotone: {} below {}", l.label(h), l.label(k)));
            }
        }
    }

    for &h in &support {
        let v = values[h];
        let same: Vec<usize> = support.iter().copied().filter(|&k| values[k] == v).collect();
        for hs in conjugates(l, h) {
            let over: Vec<Set> = same
                .iter()
                .flat_map(|&k| conjugates(l, k))
                .filter(|k| hs.is_subset(k))
                .collect();
            for a in &over {
                for b in &over {
                    let j = class_of_set(l, &generated(g, a, b));
                    if values[j] != v {
                        return Err(format!(
                            "closure fails over {}: join {} has {}",
                            l.label(h),
                            l.label(j),
                            values[j]
                        ));
                    }
                }
            }
        }
    }

    if let Some(&h) = support.iter().find(|&&h| values[h] < 3) {
        return Err(format!("value {} at {} is below 3", values[h], l.label(h)));
    }

    let whole = Quotient::weyl(g, &[g.identity()].into_iter().collect());
    let mut m_g = 1u64;
    for q in primes_dividing(g.order() as u64) {
        if let Some(m) = whole.cyclic_period_multiple(q) {
            m_g = num_integer::lcm(m_g, m);
        } else if whole.has_noncyclic_rank_one_sylow(q) {
            return Err(format!("oracle handles cyclic Sylow subgroups only, q = {q}"));
        }
    }
    if (values[0] + 1) % m_g as i64 != 0 {
        return Err(format!("{} + 1 is not a multiple of {m_g}", values[0]));
    }

    for &h in &support {
        let w = Quotient::weyl(g, &set_of(l.rep(h).elements()));
        for q in primes_dividing(w.order() as u64) {
            if w.has_noncyclic_rank_one_sylow(q) {
                return Err(format!("oracle handles cyclic Sylow subgroups only, q = {q}"));
            }
            if let Some(m) = w.cyclic_period_multiple(q) {
                if (values[h] + 1) % m as i64 != 0 {
                    return Err(format!(
                        "{} + 1 at {} is not a multiple of {m} for q = {q}",
                        values[h],
                        l.label(h)
                    ));
                }
            }
        }
    }

    let mut by_order = support.clone();
    by_order.sort_by_key(|&c| l.order_of(c));
    let mut longest = vec![0usize; n];
    for (i, &k) in by_order.iter().enumerate() {
        for &h in &by_order[..i] {
            if h != k && below[h][k] && l.order_of(h) < l.order_of(k) {
                longest[k] = longest[k].max(longest[h] + 1);
            }
        }
    }
    let chain_steps = support.iter().map(|&c| longest[c]).max().unwrap_or(0);
    let levels: BTreeSet<i64> = support.iter().map(|&c| values[c]).collect();
    let levels: Vec<i64> = levels.into_iter().collect();
    for pair in levels.windows(2) {
        if ((pair[1] - pair[0]) as usize) < chain_steps {
            return Err(format!(
                "gap {} between {} and {} is below {chain_steps}",
                pair[1] - pair[0],
                pair[1],
                pair[0]
            ));
        }
    }
    Ok(AlignmentFacts { m_g, chain_steps })
}
