use serde::Serialize;

use crate::dimfun::{ClassValue, SuperClassFunction};
use crate::error::Result;
use crate::isotropy::ConditionReport;
use crate::orbitcat::{ClassVerdicts, Coefficients, HomologyTable, OCChainComplex};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum NbarSource {
    Supplied,
    Inferred,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ComplexReport {
    pub coefficients: Coefficients,
    pub homology: HomologyTable,
    pub dim: Vec<ClassValue>,
    pub hom_dim: Vec<ClassValue>,
    pub nbar: Vec<ClassValue>,
    pub nbar_source: NbarSource,
    pub sphere: ClassVerdicts,
    pub oriented: ClassVerdicts,
    pub tight: ClassVerdicts,
    pub algrep: ConditionReport,
    pub vanishing: ClassVerdicts,
    /// Sphere, tight and all three algebraic homotopy representation conditions.
    pub passed: bool,
}

/// Homology, dimension functions and the sphere, orientation, tightness and
/// algebraic homotopy representation checks. Without a supplied `n`, the
/// homological dimension is used.
pub fn run_complex(
    c: &OCChainComplex,
    nbar: Option<SuperClassFunction>,
    coeffs: Coefficients,
) -> Result<ComplexReport> {
    let (dim, hom) = c.dim_functions(coeffs)?;
    let (n, source) = match nbar {
        Some(n) => (n, NbarSource::Supplied),
        None => (hom.clone(), NbarSource::Inferred),
    };
    let sphere = c.is_homology_sphere(&n, coeffs);
    let oriented = c.is_oriented(coeffs);
    let tight = c.tightness(coeffs)?;
    let algrep = c.check_algrep(&n, coeffs);
    let vanishing = c.vanishing_hypothesis(&n, coeffs);
    let passed = sphere.passed && tight.passed && algrep.passed;
    Ok(ComplexReport {
        coefficients: coeffs,
        homology: c.homology(coeffs),
        dim: dim.to_class_values(),
        hom_dim: hom.to_class_values(),
        nbar: n.to_class_values(),
        nbar_source: source,
        sphere,
        oriented,
        tight,
        algrep,
        vanishing,
        passed,
    })
}
