//! Enumeration of subrings stable under left multiplication by the units of
//! the ambient ring, under either identity convention: the subring may be
//! required to contain the ambient identity, or merely to possess its own
//! (idempotent) identity.

use super::{subring_from_elements, Elt, FiniteRing, Subring};
use crate::config::Guards;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Which elements count as the identity of an enumerated subring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityConvention {
    /// The subring must contain the ambient 1.
    SharedIdentity,
    /// The subring must contain some idempotent acting as its own two-sided
    /// identity (the default).
    OwnIdentity,
}

/// Closure of a set under addition and left multiplication by all units.
fn unit_stable_closure(ring: &FiniteRing, seed: &BTreeSet<u64>) -> BTreeSet<u64> {
    let mut seen = seed.clone();
    seen.insert(0);
    let mut frontier: Vec<u64> = seen.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &(u, _) in ring.units() {
            let y = ring.mul_idx(u, x);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
        let cur: Vec<u64> = seen.iter().copied().collect();
        for &y in &cur {
            let s = ring.add_idx(x, y);
            if seen.insert(s) {
                frontier.push(s);
            }
        }
    }
    seen
}

/// All additive subgroups of the ring closed under left multiplication by
/// units, enumerated as joins of cyclic unit-stable subgroups.
fn unit_stable_subgroups(ring: &FiniteRing, guard: usize) -> Result<Vec<BTreeSet<u64>>> {
    let mut seeds: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    for x in 0..ring.order() {
        let mut s = BTreeSet::new();
        s.insert(x);
        seeds.insert(unit_stable_closure(ring, &s));
        if seeds.len() > guard {
            return Err(Error::guard("unit-stable subgroup seeds", seeds.len(), guard));
        }
    }
    let seed_list: Vec<BTreeSet<u64>> = seeds.iter().cloned().collect();
    let mut all: BTreeSet<BTreeSet<u64>> = seeds;
    let mut frontier: Vec<BTreeSet<u64>> = all.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for s in &seed_list {
            if s.is_subset(&h) {
                continue;
            }
            let mut joined = h.clone();
            joined.extend(s.iter().copied());
            let closed = unit_stable_closure(ring, &joined);
            if all.insert(closed.clone()) {
                if all.len() > guard {
                    return Err(Error::guard("unit-stable subgroup lattice", all.len(), guard));
                }
                frontier.push(closed);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// Enumerates all subrings of S stable under left multiplication by units of
/// S, under the given identity convention. Each returned subring is verified
/// unit-stable and multiplicatively closed; results are in canonical order
/// (size, then element list).
pub fn enumerate_unit_stable_subrings(
    ring: &FiniteRing,
    convention: IdentityConvention,
    guards: &Guards,
) -> Result<Vec<Subring>> {
    if ring.order() as usize > guards.max_ring.min(256) {
        return Err(Error::guard(
            "unit-stable subring enumeration",
            ring.order() as usize,
            guards.max_ring.min(256),
        ));
    }
    let subgroups = unit_stable_subgroups(ring, guards.max_solutions)?;
    let mut accepted: Vec<(Vec<u64>, Elt)> = Vec::new();
    for h in &subgroups {
        // multiplicative closure
        let mult_closed = h
            .iter()
            .all(|&a| h.iter().all(|&b| h.contains(&ring.mul_idx(a, b))));
        if !mult_closed {
            continue;
        }
        let identity: Option<Elt> = match convention {
            IdentityConvention::SharedIdentity => {
                if h.contains(&ring.one_idx()) {
                    Some(ring.one())
                } else {
                    None
                }
            }
            IdentityConvention::OwnIdentity => h
                .iter()
                .find(|&&e| {
                    ring.mul_idx(e, e) == e
                        && e != 0
                        && h.iter()
                            .all(|&x| ring.mul_idx(e, x) == x && ring.mul_idx(x, e) == x)
                })
                .map(|&e| ring.element(e)),
        };
        if let Some(one) = identity {
            accepted.push((h.iter().copied().collect(), one));
        }
    }
    accepted.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let mut out = Vec::with_capacity(accepted.len());
    for (i, (elems, one)) in accepted.iter().enumerate() {
        // re-verify unit stability explicitly
        for &x in elems {
            for &(u, _) in ring.units() {
                if elems.binary_search(&ring.mul_idx(u, x)).is_err() {
                    return Err(Error::InternalAssertion(
                        "enumerated subring not unit-stable".into(),
                    ));
                }
            }
        }
        out.push(subring_from_elements(
            ring,
            format!("US{i}<{}>", ring.name),
            elems.clone(),
            one,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog::*;

    #[test]
    fn f2xf2_subrings() {
        let s = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let subs = enumerate_unit_stable_subrings(&s, IdentityConvention::SharedIdentity, &Guards::default())
            .unwrap();
        let sizes: Vec<u64> = subs.iter().map(|r| r.ring.order()).collect();
        // the diagonal {(0,0),(1,1)} and S itself both contain 1 = (1,1)
        assert!(sizes.contains(&2));
        assert!(sizes.contains(&4));
        // exhaustive oracle: every additive subgroup of the 4-element group,
        // filtered by unit stability, closure and identity
        let brute = brute_force(&s, true);
        assert_eq!(
            subs.iter().map(|r| r.elements.clone()).collect::<Vec<_>>(),
            brute
        );
    }

    #[test]
    fn own_identity_mode_finds_corner_subrings() {
        let s = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let subs = enumerate_unit_stable_subrings(&s, IdentityConvention::OwnIdentity, &Guards::default())
            .unwrap();
        let brute = brute_force(&s, false);
        assert_eq!(
            subs.iter().map(|r| r.elements.clone()).collect::<Vec<_>>(),
            brute
        );
        // in own-identity mode the coordinate factors qualify: (a, 0) is
        // stable under the only unit (1,1)
        assert!(subs.iter().any(|r| r.ring.order() == 2 && r.identity != s.one()));
    }

    #[test]
    fn f4_excludes_prime_subfield() {
        // F_2 inside F_4 is not unit-stable: a generator u has u*1 = u
        // outside F_2
        let f4 = field(4).unwrap();
        let subs = enumerate_unit_stable_subrings(&f4, IdentityConvention::SharedIdentity, &Guards::default())
            .unwrap();
        let sizes: Vec<u64> = subs.iter().map(|r| r.ring.order()).collect();
        assert_eq!(sizes, vec![4]);
    }

    #[test]
    fn m2f2_contains_itself() {
        let m = matrix_ring(&field(2).unwrap(), 2).unwrap();
        let subs = enumerate_unit_stable_subrings(&m, IdentityConvention::OwnIdentity, &Guards::default())
            .unwrap();
        assert!(subs.iter().any(|r| r.ring.order() == 16));
        let brute = brute_force(&m, false);
        assert_eq!(
            subs.iter().map(|r| r.elements.clone()).collect::<Vec<_>>(),
            brute
        );
    }

    /// Oracle: enumerate ALL additive subgroups by BFS over generated
    /// subgroups, then filter. Only viable for tiny rings.
    fn brute_force(ring: &FiniteRing, shared: bool) -> Vec<Vec<u64>> {
        let mut all: BTreeSet<Vec<u64>> = BTreeSet::new();
        let zero: Vec<u64> = vec![0];
        all.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(h) = frontier.pop() {
            for x in 0..ring.order() {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                // additive closure of h + x
                let mut set: BTreeSet<u64> = h.iter().copied().collect();
                set.insert(x);
                loop {
                    let cur: Vec<u64> = set.iter().copied().collect();
                    let before = set.len();
                    for &a in &cur {
                        for &b in &cur {
                            set.insert(ring.add_idx(a, b));
                        }
                    }
                    if set.len() == before {
                        break;
                    }
                }
                let v: Vec<u64> = set.into_iter().collect();
                if all.insert(v.clone()) {
                    frontier.push(v);
                }
            }
        }
        let mut out: Vec<Vec<u64>> = all
            .into_iter()
            .filter(|h| {
                let contains = |y: u64| h.binary_search(&y).is_ok();
                let stable = h.iter().all(|&x| {
                    ring.units().iter().all(|&(u, _)| contains(ring.mul_idx(u, x)))
                });
                let closed = h
                    .iter()
                    .all(|&a| h.iter().all(|&b| contains(ring.mul_idx(a, b))));
                let ident = if shared {
                    contains(ring.one_idx())
                } else {
                    h.iter().any(|&e| {
                        ring.mul_idx(e, e) == e
                            && e != 0
                            && h.iter()
                                .all(|&x| ring.mul_idx(e, x) == x && ring.mul_idx(x, e) == x)
                    })
                };
                stable && closed && ident
            })
            .collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}
