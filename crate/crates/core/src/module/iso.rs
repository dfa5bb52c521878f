//! Isomorphism testing between finite modules and square-freeness of a
//! module (no two isomorphic nonzero direct summands).

use super::homs::{end_ring, hom_set};
use super::{submodule_module, FiniteModule, ModuleHom, Submodule};
use crate::config::Guards;
use crate::error::Result;

/// Finds an isomorphism M -> N if one exists (canonically least), else None.
pub fn find_isomorphism(
    m: &FiniteModule,
    n: &FiniteModule,
    guards: &Guards,
) -> Result<Option<ModuleHom>> {
    if m.order() != n.order() {
        return Ok(None);
    }
    // quick additive invariant
    let mut a = m.orders.clone();
    let mut b = n.orders.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        // generator orders are canonical (invariant factors), so additive
        // groups differ
        return Ok(None);
    }
    for h in hom_set(m, n, guards)? {
        if h.is_injective_map(m, n) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &FiniteModule, n: &FiniteModule, guards: &Guards) -> Result<bool> {
    Ok(find_isomorphism(m, n, guards)?.is_some())
}

/// A module is square free when it has no direct sum decomposition with two
/// isomorphic nonzero summands; equivalently, End(M) has no pair of nonzero
/// orthogonal idempotents e, f with eM isomorphic to fM.
pub fn is_square_free(m: &FiniteModule, guards: &Guards) -> Result<bool> {
    let e = end_ring(m, guards)?;
    let idems: Vec<u64> = e.ring.idempotents().to_vec();
    for (pos, &i) in idems.iter().enumerate() {
        if i == 0 {
            continue;
        }
        for &j in &idems[pos + 1..] {
            if j == 0 {
                continue;
            }
            // orthogonality
            if e.ring.mul_idx(i, j) != 0 || e.ring.mul_idx(j, i) != 0 {
                continue;
            }
            let hi = e.hom(i);
            let hj = e.hom(j);
            let im_i = hi.image(m, m);
            let im_j = hj.image(m, m);
            if im_i.is_zero() || im_j.is_zero() {
                continue;
            }
            let (mi, _) = submodule_module(m, &im_i, "eM")?;
            let (mj, _) = submodule_module(m, &im_j, "fM")?;
            if is_isomorphic(&mi, &mj, guards)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Direct summand test: N is an image of an idempotent endomorphism of M.
pub fn is_direct_summand(sub: &Submodule, m: &FiniteModule, guards: &Guards) -> Result<bool> {
    let e = end_ring(m, guards)?;
    for &i in e.ring.idempotents() {
        if e.hom(i).image(m, m).elements == sub.elements {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{direct_sum, quotient_module, regular_module, Submodule};
    use crate::ring::catalog::cyclic_ring;
    use std::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn regular_z4_not_isomorphic_to_z2_sum() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let zz = direct_sum(&z2, &z2).unwrap();
        assert!(!is_isomorphic(&m, &zz, &g()).unwrap());
        assert!(is_isomorphic(&m, &m, &g()).unwrap());
    }

    #[test]
    fn square_free_detection() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        assert!(is_square_free(&m, &g()).unwrap());
        let mm = direct_sum(&m, &m).unwrap();
        assert!(!is_square_free(&mm, &g()).unwrap());
        // Z_4 (+) Z_2 over Z_4 is square free
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let mixed = direct_sum(&m, &z2).unwrap();
        assert!(is_square_free(&mixed, &g()).unwrap());
    }

    #[test]
    fn summand_detection() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let s = direct_sum(&m, &z2).unwrap();
        // first factor is a summand; the diagonal-ish submodule {(2,0)} is not
        let first = Submodule::generated(&s, &[vec![1, 0]]);
        assert!(is_direct_summand(&first, &s, &g()).unwrap());
        let inner = Submodule::generated(&s, &[vec![2, 0]]);
        assert!(!is_direct_summand(&inner, &s, &g()).unwrap());
    }
}
