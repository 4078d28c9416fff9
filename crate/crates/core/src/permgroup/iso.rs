use fixedbitset::FixedBitSet;

use super::group::Group;

/// An isomorphism `a -> b` as a table of element indices, if one exists.
pub fn isomorphism(a: &Group, b: &Group) -> Option<Vec<u32>> {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return None;
    }
    if a.class_signature() != b.class_signature() {
        return None;
    }
    let all: Vec<u32> = (0..a.order() as u32).collect();
    let gens = a.small_generating_set(&all);
    if gens.is_empty() {
        return Some(vec![0]);
    }

    let profile = |g: &Group, x: u32| (g.element_order(x), g.conjugacy_classes()[g.class_of(x)].len());
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for (k, &x) in gens.iter().enumerate() {
        let want = profile(a, x);
        let cands: Vec<u32> = if k == 0 {
            // Up to inner automorphisms of `b` the first image is a class representative.
            b.conjugacy_classes()
                .iter()
                .map(|c| c[0])
                .filter(|&y| profile(b, y) == want)
                .collect()
        } else {
            (0..b.order() as u32).filter(|&y| profile(b, y) == want).collect()
        };
        if cands.is_empty() {
            return None;
        }
        candidates.push(cands);
    }

    let mut images = vec![0u32; gens.len()];
    search(a, b, &gens, &candidates, &mut images, 0)
}

pub fn isomorphic(a: &Group, b: &Group) -> bool {
    isomorphism(a, b).is_some()
}

fn search(
    a: &Group,
    b: &Group,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
    depth: usize,
) -> Option<Vec<u32>> {
    if depth == gens.len() {
        return extend(a, b, gens, images).filter(|map| map.iter().all(|&y| y != u32::MAX));
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if extend(a, b, &gens[..=depth], &images[..=depth]).is_some() {
            if let Some(map) = search(a, b, gens, candidates, images, depth + 1) {
                return Some(map);
            }
        }
    }
    None
}

/// Extends generator images to the subgroup they generate, failing on any
/// inconsistency or collision.
fn extend(a: &Group, b: &Group, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; a.order()];
    let mut used = FixedBitSet::with_capacity(b.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        let fx = map[x as usize];
        for (s, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            let fy = b.mul(fx, images[s]);
            match map[y as usize] {
                u32::MAX => {
                    if used.contains(fy as usize) {
                        return None;
                    }
                    used.insert(fy as usize);
                    map[y as usize] = fy;
                    queue.push(y);
                }
                existing if existing != fy => return None,
                _ => {}
            }
        }
        head += 1;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::perm::Perm;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| Perm::parse_cycles(g, degree).unwrap()).collect();
        Group::closure(degree, &gens).unwrap()
    }

    #[test]
    fn s3_models_agree() {
        let a = group(3, &["(1,2,3)", "(1,2)"]);
        let b = group(6, &["(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)"]);
        let map = isomorphism(&a, &b).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(map[a.mul(x, y) as usize], b.mul(map[x as usize], map[y as usize]));
            }
        }
    }

    #[test]
    fn distinguishes_same_order_groups() {
        let c6 = group(6, &["(1,2,3,4,5,6)"]);
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        assert!(!isomorphic(&c6, &s3));
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let q8 = crate::permgroup::builtin::builtin("Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!isomorphic(&d8, &q8));
        let c4c2 = group(6, &["(1,2,3,4)", "(5,6)"]);
        assert!(!isomorphic(&d8, &c4c2));
    }

    #[test]
    fn trivial_groups() {
        let a = group(1, &[]);
        let b = group(3, &[]);
        assert!(isomorphic(&a, &b));
    }
}
