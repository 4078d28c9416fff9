use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::{BoundaryTerm, Cell, OCChainComplex};
use crate::error::{Error, Result};
use crate::permgroup::{builtin, Group, Lattice, Perm};

/// Where the acting group comes from.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match (&self.builtin, self.degree) {
            (Some(name), _) => builtin(name),
            (None, Some(degree)) => {
                let gens = self
                    .generators
                    .iter()
                    .map(|s| Perm::parse_cycles(s, degree))
                    .collect::<Result<Vec<_>>>()?;
                Group::closure(degree, &gens)
            }
            (None, None) => Err(Error::Parse(
                "group needs a builtin name or a degree with generators".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct TermSpec {
    pub target_cell_index: usize,
    pub coefficient: i64,
    /// Cycle notation; the identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism_coset_rep: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct CellSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer_class_label: Option<String>,
    /// Generators of the stabilizer in cycle notation, used when no class label is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Vec<String>>,
    #[serde(default)]
    pub boundary: Vec<TermSpec>,
}

/// A `G`-CW complex: per degree, a list of cell orbits with their boundaries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GcwFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default = "default_augmented")]
    pub augmented: bool,
    pub cells: Vec<Vec<CellSpec>>,
}

fn default_augmented() -> bool {
    true
}

pub fn parse_gcw(text: &str) -> Result<GcwFile> {
    Ok(serde_json::from_str(text)?)
}

fn element_of(group: &Group, text: &str) -> Result<u32> {
    let p = Perm::parse_cycles(text, group.degree())?;
    group
        .index_of(&p)
        .ok_or_else(|| Error::Parse(format!("{text} is not an element of the group")))
}

/// Builds the complex, checking morphisms and `d^2 = 0`.
pub fn from_gcw(lattice: Arc<Lattice>, file: &GcwFile) -> Result<OCChainComplex> {
    let g = lattice.group();
    let mut cells = Vec::new();
    for (d, layer) in file.cells.iter().enumerate() {
        let mut out = Vec::new();
        for (i, spec) in layer.iter().enumerate() {
            let stabilizer = match (&spec.stabilizer_class_label, &spec.stabilizer) {
                (Some(label), _) => {
                    let c = lattice
                        .find_label(label)
                        .ok_or_else(|| Error::Parse(format!("unknown subgroup class label `{label}`")))?;
                    lattice.rep(c).clone()
                }
                (None, Some(gens)) => {
                    let idx = gens.iter().map(|s| element_of(g, s)).collect::<Result<Vec<_>>>()?;
                    g.generate(&idx)
                }
                (None, None) => {
                    return Err(Error::Parse(format!("cell {i} in degree {d} has no stabilizer")));
                }
            };
            let boundary = spec
                .boundary
                .iter()
                .map(|t| {
                    let rep = match &t.morphism_coset_rep {
                        Some(s) => element_of(g, s)?,
                        None => g.identity(),
                    };
                    Ok(BoundaryTerm {
                        target: t.target_cell_index,
                        coefficient: t.coefficient,
                        rep,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(Cell::new(stabilizer, boundary));
        }
        cells.push(out);
    }
    OCChainComplex::new(lattice, cells, file.augmented)
}

/// Serializes a complex with explicit stabilizer generators.
pub fn to_gcw(complex: &OCChainComplex, group: Option<GroupSpec>) -> GcwFile {
    let g = complex.group();
    let cells = complex
        .cells()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|cell| CellSpec {
                    stabilizer_class_label: None,
                    stabilizer: Some(
                        cell.stabilizer
                            .generators()
                            .iter()
                            .map(|&x| g.element(x).to_string())
                            .collect(),
                    ),
                    boundary: cell
                        .boundary
                        .iter()
                        .map(|t| TermSpec {
                            target_cell_index: t.target,
                            coefficient: t.coefficient,
                            morphism_coset_rep: (t.rep != g.identity()).then(|| g.element(t.rep).to_string()),
                        })
                        .collect(),
                })
                .collect()
        })
        .collect();
    GcwFile {
        group,
        augmented: complex.is_augmented(),
        cells,
    }
}
