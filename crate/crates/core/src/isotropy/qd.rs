use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::permgroup::{builtin, isomorphic, Lattice};

/// A subgroup `K` of order prime to `p` with `Qd(p)` inside `N_G(K)/K`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct QdWitness {
    pub prime: u64,
    pub kernel: String,
    pub kernel_order: usize,
    pub weyl_order: usize,
    /// Generators of the copy of `Qd(p)`, as permutations of the cosets of `K` in `N_G(K)`.
    pub image_generators: Vec<String>,
}

pub fn qd_order(p: u64) -> u64 {
    p * p * p * (p * p - 1)
}

pub fn involves_qd(lattice: &Lattice, p: u64) -> Result<Option<QdWitness>> {
    let target = qd_order(p);
    if !(lattice.group().order() as u64).is_multiple_of(target) {
        return Ok(None);
    }
    let qd = builtin(&format!("Qd{p}"))?;
    for k in 0..lattice.len() {
        let order = lattice.order_of(k) as u64;
        if order.is_multiple_of(p) {
            continue;
        }
        let w_order = (lattice.class(k).normalizer.order() as u64) / order;
        if !w_order.is_multiple_of(target) {
            continue;
        }
        let w = lattice.weyl_group(k);
        let found = if w.order() as u64 == target {
            isomorphic(&w, &qd).then(|| w.generators().iter().map(|g| g.to_string()).collect())
        } else {
            let wl = Lattice::new(Arc::clone(&w));
            wl.classes()
                .iter()
                .filter(|c| c.order() as u64 == target)
                .find_map(|c| {
                    let sub = w.subgroup_group(&c.representative);
                    isomorphic(&sub, &qd).then(|| sub.generators().iter().map(|g| g.to_string()).collect())
                })
        };
        if let Some(image_generators) = found {
            return Ok(Some(QdWitness {
                prime: p,
                kernel: lattice.label(k).to_string(),
                kernel_order: order as usize,
                weyl_order: w.order(),
                image_generators,
            }));
        }
    }
    Ok(None)
}
