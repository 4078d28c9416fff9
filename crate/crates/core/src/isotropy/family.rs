use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgroup::Lattice;

/// A set of subgroup classes closed under passing to subgroups.
#[derive(Clone, Debug)]
pub struct Family {
    lattice: Arc<Lattice>,
    members: BTreeSet<usize>,
}

impl Family {
    pub fn new(lattice: Arc<Lattice>, members: impl IntoIterator<Item = usize>) -> Result<Family> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        for &m in &members {
            if m >= lattice.len() {
                return Err(Error::FamilyNotClosed(format!("class index {m} out of range")));
            }
            for i in 0..lattice.len() {
                if lattice.is_subconjugate(i, m) && !members.contains(&i) {
                    return Err(Error::FamilyNotClosed(format!(
                        "{} is subconjugate to member {} but missing",
                        lattice.label(i),
                        lattice.label(m)
                    )));
                }
            }
        }
        Ok(Family { lattice, members })
    }

    /// The smallest family containing the given classes.
    pub fn generated_by(lattice: Arc<Lattice>, generators: impl IntoIterator<Item = usize>) -> Family {
        let gens: Vec<usize> = generators.into_iter().collect();
        let members = (0..lattice.len())
            .filter(|&i| gens.iter().any(|&g| lattice.is_subconjugate(i, g)))
            .collect();
        Family { lattice, members }
    }

    pub fn from_labels(lattice: Arc<Lattice>, labels: &[&str]) -> Result<Family> {
        let mut ids = Vec::new();
        for l in labels {
            ids.push(
                lattice
                    .find_label(l)
                    .ok_or_else(|| Error::Parse(format!("unknown subgroup class label `{l}`")))?,
            );
        }
        Family::new(lattice, ids)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn contains(&self, class: usize) -> bool {
        self.members.contains(&class)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn member_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&i| self.lattice.label(i).to_string())
            .collect()
    }

    pub fn union(&self, other: &Family) -> Family {
        Family {
            lattice: self.lattice.clone(),
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    /// Members not properly subconjugate to another member.
    pub fn maximal(&self) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| {
                !self
                    .members
                    .iter()
                    .any(|&j| j != i && self.lattice.is_subconjugate(i, j))
            })
            .collect()
    }

    /// Length of the longest strict chain of members, in steps.
    pub fn chain_length(&self) -> usize {
        self.lattice.longest_chain(&self.member_vec())
    }
}
