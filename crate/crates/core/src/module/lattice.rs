//! The submodule lattice of a finite module: enumeration, socle, radical,
//! and the essential / superfluous predicates.

use super::{FiniteModule, Submodule};
use crate::config::Guards;
use crate::error::{Error, Result};

/// All submodules of M, canonically ordered by (size, element list).
/// Computed as the closure of cyclic submodules under pairwise sum.
pub fn all_submodules(m: &FiniteModule, guards: &Guards) -> Result<Vec<Submodule>> {
    let guard = guards.max_solutions;
    let mut seen: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<u64>> = Vec::new();
    for x in 0..m.order() {
        let s = Submodule::generated(m, &[m.element(x)]);
        if seen.insert(s.elements.clone()) {
            frontier.push(s.elements);
        }
        if seen.len() > guard {
            return Err(Error::guard("submodule enumeration", seen.len(), guard));
        }
    }
    let base: Vec<Vec<u64>> = seen.iter().cloned().collect();
    while let Some(cur) = frontier.pop() {
        for b in &base {
            // sum of two submodules is the set of pairwise sums
            let mut sum: Vec<u64> = Vec::new();
            for &x in &cur {
                for &y in b {
                    sum.push(m.index_of(&m.add(&m.element(x), &m.element(y))));
                }
            }
            sum.sort_unstable();
            sum.dedup();
            if seen.insert(sum.clone()) {
                if seen.len() > guard {
                    return Err(Error::guard("submodule enumeration", seen.len(), guard));
                }
                frontier.push(sum);
            }
        }
    }
    let mut out: Vec<Submodule> = seen
        .into_iter()
        .map(|e| Submodule::from_elements(m, e))
        .collect();
    out.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    Ok(out)
}

/// Minimal nonzero submodules (the atoms of the lattice).
pub fn minimal_submodules(m: &FiniteModule, guards: &Guards) -> Result<Vec<Submodule>> {
    let all = all_submodules(m, guards)?;
    Ok(all
        .iter()
        .filter(|s| {
            !s.is_zero()
                && all
                    .iter()
                    .all(|t| t.is_zero() || t.elements == s.elements || !is_subset(t, s))
        })
        .cloned()
        .collect())
}

/// Maximal proper submodules.
pub fn maximal_submodules(m: &FiniteModule, guards: &Guards) -> Result<Vec<Submodule>> {
    let all = all_submodules(m, guards)?;
    Ok(all
        .iter()
        .filter(|s| {
            !s.is_whole(m)
                && all
                    .iter()
                    .all(|t| t.is_whole(m) || t.elements == s.elements || !is_subset(s, t))
        })
        .cloned()
        .collect())
}

fn is_subset(a: &Submodule, b: &Submodule) -> bool {
    a.elements.iter().all(|&x| b.contains(x))
}

/// The socle: sum of all minimal submodules.
pub fn socle(m: &FiniteModule, guards: &Guards) -> Result<Submodule> {
    let minimals = minimal_submodules(m, guards)?;
    let mut acc = Submodule::from_elements(m, vec![0]);
    for s in &minimals {
        acc = acc.sum(s, m);
    }
    Ok(acc)
}

/// The radical of the module: M * J(R), which for these finite (artinian)
/// rings equals the intersection of the maximal submodules.
pub fn module_radical(m: &FiniteModule) -> Submodule {
    let j = m.ring.jacobson_radical();
    let mut gens = Vec::new();
    for x in m.elements() {
        for &ji in &j.elements {
            gens.push(m.act(&x, &m.ring.element(ji)));
        }
    }
    Submodule::generated(m, &gens)
}

/// A submodule N is essential in M iff it meets every nonzero submodule;
/// it suffices to test the cyclic submodules.
pub fn is_essential(sub: &Submodule, m: &FiniteModule) -> bool {
    for x in 1..m.order() {
        let cyc = Submodule::generated(m, &[m.element(x)]);
        if cyc.intersect(sub, m).is_zero() && !cyc.is_zero() {
            return false;
        }
    }
    true
}

/// A submodule N is superfluous in M iff N + K = M forces K = M; it suffices
/// to check the maximal submodules.
pub fn is_superfluous(sub: &Submodule, m: &FiniteModule, guards: &Guards) -> Result<bool> {
    for k in maximal_submodules(m, guards)? {
        if sub.sum(&k, m).is_whole(m) {
            return Ok(false);
        }
    }
    Ok(true)
}
