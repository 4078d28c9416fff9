use num_integer::lcm;

use crate::error::{Error, Result};
use crate::isotropy::p_rank;
use crate::permgroup::Group;

/// An even multiple of the `q`-period of `w`.
///
/// Trivial Sylow subgroup gives 2, cyclic gives `2|N_W(Q)/C_W(Q)|`, and
/// generalized quaternion gives `lcm(4, 2|N_W(Q)/C_W(Q)|)`.
pub fn q_period_multiple(w: &Group, q: u64) -> Result<u64> {
    let whole = w.whole();
    let r = p_rank(w, &whole, q);
    if r >= 2 {
        return Err(Error::RankTooLarge(format!(
            "{q}-rank {r} of a group of order {}",
            w.order()
        )));
    }
    let sylow = w.sylow(&whole, q);
    if sylow.is_trivial() {
        return Ok(2);
    }
    let n = w.normalizer_in(&whole, &sylow).order();
    let c = w.centralizer_in(&whole, &sylow).order();
    let twice_ratio = 2 * (n / c) as u64;
    let cyclic = sylow
        .elements()
        .iter()
        .any(|&x| w.element_order(x) == sylow.order() as u64);
    Ok(if cyclic { twice_ratio } else { lcm(4, twice_ratio) })
}
