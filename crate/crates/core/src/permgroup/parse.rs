use super::group::{Group, DEFAULT_ORDER_BOUND};
use super::perm::Perm;
use crate::error::{Error, Result};

/// Parses a group file: the first non-comment line is the degree, every
/// following line one generator in 1-based cycle notation.
///
/// ```text
/// # A6
/// 6
/// (1,2,3)
/// (2,3,4,5,6)
/// ```
pub fn parse_group_text(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("expected degree on first line, found `{first}`")))?;
    if degree == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    let gens = lines
        .map(|l| Perm::parse_cycles(l, degree))
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, gens))
}

pub fn group_from_text(text: &str, bound: Option<usize>) -> Result<Group> {
    let (degree, gens) = parse_group_text(text)?;
    Group::closure_with_bound(degree, &gens, bound.unwrap_or(DEFAULT_ORDER_BOUND))
}

pub fn group_to_text(group: &Group) -> String {
    let mut out = format!("{}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
