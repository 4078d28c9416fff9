use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::check::{run_check, CheckOptions};
use crate::characters::{build_effective_character, p_effective, respects_fusion};
use crate::error::{Error, Result};
use crate::isotropy::{check_theorem_a, p_rank, rank_one_family, weyl_order, weyl_rank};
use crate::permgroup::{builtin, isomorphic, Group, Lattice, Subgroup};

/// The embedded table of expected facts.
pub const EMBEDDED: &str = include_str!("../../data/goldens.json");

/// Small groups a computed subgroup is identified against, by name.
const NAMED: [&str; 9] = ["C2", "C3", "C4", "C2xC2", "C8", "C4xC2", "D8", "Q8", "C3xC3"];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GoldenFact {
    pub group: String,
    pub fact: String,
    pub expected: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GoldenFile {
    pub facts: Vec<GoldenFact>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GoldenResult {
    pub group: String,
    pub fact: String,
    pub expected: Value,
    pub actual: Value,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GoldensReport {
    pub version: String,
    pub results: Vec<GoldenResult>,
    pub passed: bool,
}

pub fn parse_goldens(text: &str) -> Result<GoldenFile> {
    Ok(serde_json::from_str(text)?)
}

/// Sorted nontrivial cycle lengths of a permutation, e.g. `3,3`.
fn cycle_type(group: &Group, x: u32) -> String {
    let mut lens: Vec<usize> = group.element(x).cycles().iter().map(Vec::len).collect();
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

fn is_cyclic(group: &Group, h: &Subgroup) -> bool {
    h.elements()
        .iter()
        .any(|&x| group.element_order(x) as usize == h.order())
}

/// `1` for the trivial class, `C<n>:<cycle type of a generator>` for cyclic
/// classes and the plain label otherwise.
fn class_name(lattice: &Lattice, class: usize) -> String {
    let g = lattice.group();
    let h = lattice.rep(class);
    if h.is_trivial() {
        return "1".into();
    }
    let generator = h
        .elements()
        .iter()
        .copied()
        .find(|&x| g.element_order(x) as usize == h.order());
    match generator {
        Some(x) => format!("C{}:{}", h.order(), cycle_type(g, x)),
        None => lattice.label(class).to_string(),
    }
}

fn class_named(lattice: &Lattice, name: &str) -> Result<usize> {
    (0..lattice.len())
        .find(|&c| class_name(lattice, c) == name)
        .ok_or_else(|| Error::Parse(format!("no subgroup class named {name}")))
}

fn identify(group: &Group, h: &Subgroup) -> Result<String> {
    let sub = group.subgroup_group(h);
    for name in NAMED {
        let candidate = builtin(name)?;
        if candidate.order() == sub.order() && isomorphic(&candidate, &sub) {
            return Ok(name.to_string());
        }
    }
    Ok(format!("order {}", sub.order()))
}

struct Context {
    lattice: Arc<Lattice>,
}

impl Context {
    fn group(&self) -> &Group {
        self.lattice.group()
    }

    fn sylow(&self, p: u64) -> Result<Value> {
        let g = self.group();
        Ok(json!(identify(g, &g.sylow(&g.whole(), p))?))
    }

    fn rank_one_family(&self, p: u64) -> Value {
        let mut names: Vec<(usize, String)> = rank_one_family(&self.lattice, p)
            .members()
            .map(|c| (self.lattice.order_of(c), class_name(&self.lattice, c)))
            .collect();
        names.sort();
        json!(names.into_iter().map(|n| n.1).collect::<Vec<_>>())
    }

    fn normalizer(&self, name: &str, primes: &[u64]) -> Result<Value> {
        let l = &self.lattice;
        let g = self.group();
        let c = class_named(l, name)?;
        let n = &l.class(c).normalizer;
        let mut out = BTreeMap::new();
        out.insert("normalizerOrder".to_string(), json!(n.order()));
        out.insert("weylOrder".to_string(), json!(weyl_order(l, c)));
        out.insert("normalizer".to_string(), json!(identify(g, n)?));
        let sylow2 = g.sylow(n, 2);
        out.insert("normalizerSylow2".to_string(), json!(identify(g, &sylow2)?));
        out.insert(
            "normalizerIsSylow2".to_string(),
            json!(n.order() == g.sylow(&g.whole(), 2).order()),
        );
        for &q in primes {
            out.insert(format!("weylRank{q}"), json!(weyl_rank(l, c, q)));
        }
        Ok(json!(out))
    }

    fn cyclic_classes_of_order(&self, order: usize, q: u64) -> Value {
        let l = &self.lattice;
        let mut rows: Vec<Value> = (0..l.len())
            .filter(|&c| l.order_of(c) == order && is_cyclic(self.group(), l.rep(c)))
            .map(|c| {
                json!({
                    "class": class_name(l, c),
                    "weylOrder": weyl_order(l, c),
                    format!("weylRank{q}"): weyl_rank(l, c, q),
                })
            })
            .collect();
        rows.sort_by_key(|v| v["class"].as_str().unwrap_or_default().to_string());
        json!(rows)
    }

    fn theorem_a_failures(&self) -> Result<Value> {
        let report = check_theorem_a(&self.lattice)?;
        let mut subjects: Vec<String> = report
            .conditions
            .failures()
            .map(|e| match self.lattice.find_label(&e.subject) {
                Some(c) => class_name(&self.lattice, c),
                None => e.subject.clone(),
            })
            .collect();
        subjects.sort();
        subjects.dedup();
        Ok(json!({ "passed": report.passed, "failingClasses": subjects }))
    }

    fn check_verdict(&self) -> Result<Value> {
        let report = run_check(&self.lattice, None, &CheckOptions::default())?;
        Ok(json!(if report.passed { "PASS" } else { "FAIL" }))
    }

    fn constructed_character(&self, p: u64) -> Result<Value> {
        let g = self.group();
        let Some(rep) = build_effective_character(&self.lattice, p)? else {
            return Ok(Value::Null);
        };
        let iso = rep.isotropy(&self.lattice)?;
        let mut names: Vec<String> = iso.members().map(|c| class_name(&self.lattice, c)).collect();
        names.sort();
        Ok(json!({
            "respectsFusion": respects_fusion(g, &rep.character),
            "effective": p_effective(g, &rep.character, p)?,
            "isotropy": names,
        }))
    }

    fn rank(&self, p: u64) -> Value {
        let g = self.group();
        json!(p_rank(g, &g.whole(), p))
    }
}

/// Recomputes one named fact about a builtin group.
pub fn compute_fact(group: &str, fact: &str) -> Result<Value> {
    let lattice = Arc::new(Lattice::new(Arc::new(builtin(group)?)));
    compute_fact_on(lattice, fact)
}

/// Like [`compute_fact`] on an already built subgroup lattice.
pub fn compute_fact_on(lattice: Arc<Lattice>, fact: &str) -> Result<Value> {
    let cx = Context { lattice };
    let unknown = || Error::Parse(format!("unknown golden fact `{fact}`"));
    let (kind, arg) = fact.split_once(' ').unwrap_or((fact, ""));
    let prime = || arg.parse::<u64>().map_err(|_| unknown());
    match kind {
        "sylow" => cx.sylow(prime()?),
        "rank" => Ok(cx.rank(prime()?)),
        "rank-one-family" => Ok(cx.rank_one_family(prime()?)),
        "normalizer" => cx.normalizer(arg, &[2, 3]),
        "cyclic-classes-of-order-3" => Ok(cx.cyclic_classes_of_order(3, 2)),
        "all-primes-conditions" => cx.theorem_a_failures(),
        "check" => cx.check_verdict(),
        "constructed-character" => cx.constructed_character(prime()?),
        _ => Err(unknown()),
    }
}

/// Compares every fact of the table with a fresh computation, building
/// each group's subgroup lattice once.
pub fn run_goldens(file: &GoldenFile) -> Result<GoldensReport> {
    let mut lattices: BTreeMap<String, Arc<Lattice>> = BTreeMap::new();
    let mut results = Vec::new();
    for f in &file.facts {
        let lattice = match lattices.get(&f.group) {
            Some(l) => l.clone(),
            None => {
                let l = Arc::new(Lattice::new(Arc::new(builtin(&f.group)?)));
                lattices.insert(f.group.clone(), l.clone());
                l
            }
        };
        let actual = compute_fact_on(lattice, &f.fact)?;
        let matches = subset_match(&f.expected, &actual);
        results.push(GoldenResult {
            group: f.group.clone(),
            fact: f.fact.clone(),
            expected: f.expected.clone(),
            actual,
            matches,
        });
    }
    let passed = results.iter().all(|r| r.matches);
    Ok(GoldensReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        results,
        passed,
    })
}

/// Objects match when every expected key matches; everything else by equality.
fn subset_match(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|x| subset_match(v, x))),
        _ => expected == actual,
    }
}
