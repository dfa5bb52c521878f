//! The induced map phi: End(M) -> End(X)/J(End(X)) for an endomorphism-
//! invariant envelope u: M -> X (dually, for an endomorphism-coinvariant
//! cover p: X -> M). Every endomorphism f of M extends to an endomorphism g
//! of X (g o u = u o f, resp. f o p = p o g); coherence means all extensions
//! of a given f fall in one coset of the radical, so taking the coset is a
//! well-defined ring homomorphism.

use super::{CoverRecord, EnvelopeRecord};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::module::homs::{end_ring, EndRing};
use crate::module::{FiniteModule, ModuleHom};
use crate::ring::catalog::{quotient_ring_map, RingQuotient};
use crate::ring::Ideal;
use std::collections::HashMap;

/// The verified induced ring homomorphism phi: End(M) -> End(X)/J(End(X)).
pub struct InducedRingMap {
    pub end_m: EndRing,
    pub end_x: EndRing,
    /// End(X)/J(End(X)) with projection and lift.
    pub quotient: RingQuotient,
    /// phi by End(M) element index: phi[f] is an element index of the
    /// quotient ring.
    pub phi: Vec<u64>,
    /// K = Ker(phi), a two-sided ideal of End(M).
    pub kernel: Ideal,
    /// For each f, one chosen extension g in End(X) (by End(X) index).
    pub extension: Vec<u64>,
}

impl InducedRingMap {
    /// phi of an End(M) element index.
    pub fn apply(&self, f: u64) -> u64 {
        self.phi[f as usize]
    }

    /// Psi: End(M)/K -> End(X)/J is injective iff the image size equals
    /// |End(M)| / |K|; given additivity of phi this is automatic, but it is
    /// checked directly.
    pub fn psi_injective(&self) -> bool {
        let mut image: Vec<u64> = self.phi.clone();
        image.sort_unstable();
        image.dedup();
        image.len() * self.kernel.len() == self.phi.len()
    }
}

/// Builds and verifies the induced map for an envelope. Fails with
/// `ExtensionNotFound` if some f does not extend (M not endomorphism-
/// invariant) and with `CoherenceFailure` if two extensions of the same f
/// disagree modulo the radical.
pub fn induced_map(m: &FiniteModule, env: &EnvelopeRecord, guards: &Guards) -> Result<InducedRingMap> {
    let x = &env.x;
    let u = &env.u;
    build_induced(
        m,
        x,
        guards,
        |g| g.compose(u, m, x, x),
        |f| u.compose(f, m, m, x),
    )
}

/// Builds and verifies the induced map for a cover: g extends f when
/// f o p = p o g.
pub fn induced_map_cover(
    m: &FiniteModule,
    cov: &CoverRecord,
    guards: &Guards,
) -> Result<InducedRingMap> {
    let x = &cov.x;
    let p = &cov.p;
    build_induced(
        m,
        x,
        guards,
        |g| p.compose(g, x, x, m),
        |f| f.compose(p, x, m, m),
    )
}

fn build_induced(
    m: &FiniteModule,
    x: &FiniteModule,
    guards: &Guards,
    key_of_g: impl Fn(&ModuleHom) -> ModuleHom,
    key_of_f: impl Fn(&ModuleHom) -> ModuleHom,
) -> Result<InducedRingMap> {
    let end_m = end_ring(m, guards)?;
    let end_x = end_ring(x, guards)?;
    let quotient = quotient_ring_map(&end_x.ring, end_x.ring.jacobson_radical())?;

    // one pass over End(X), bucketed by the shared composite with u (or p)
    let mut buckets: HashMap<ModuleHom, Vec<u64>> = HashMap::new();
    for g_idx in 0..end_x.order() {
        let g = end_x.hom(g_idx);
        buckets.entry(key_of_g(g)).or_default().push(g_idx);
    }

    let mut phi = Vec::with_capacity(end_m.order() as usize);
    let mut extension = Vec::with_capacity(end_m.order() as usize);
    for f_idx in 0..end_m.order() {
        let f = end_m.hom(f_idx);
        let bucket = buckets.get(&key_of_f(f)).ok_or_else(|| {
            Error::ExtensionNotFound(format!(
                "endomorphism {} of {} has no extension to {}",
                f_idx, m.name, x.name
            ))
        })?;
        let mut coset: Option<u64> = None;
        for &g_idx in bucket {
            let q = quotient.ring.index_of(&quotient.project(&end_x.ring.element(g_idx)));
            match coset {
                None => coset = Some(q),
                Some(c) if c == q => {}
                Some(c) => {
                    return Err(Error::CoherenceFailure(format!(
                        "extensions of endomorphism {} of {} land in distinct radical cosets {} and {}",
                        f_idx, m.name, c, q
                    )))
                }
            }
        }
        phi.push(coset.expect("non-empty bucket"));
        extension.push(bucket[0]);
    }

    verify_ring_hom(&end_m, &quotient, &phi)?;

    let kernel_elems: Vec<u64> = (0..end_m.order())
        .filter(|&f| phi[f as usize] == quotient.ring.index_of(&quotient.ring.zero()))
        .collect();
    let kernel = Ideal::from_elements(&end_m.ring, kernel_elems);
    if !kernel.is_two_sided_ideal(&end_m.ring) {
        return Err(Error::InternalAssertion(
            "kernel of the induced map is not a two-sided ideal".into(),
        ));
    }

    Ok(InducedRingMap {
        end_m,
        end_x,
        quotient,
        phi,
        kernel,
        extension,
    })
}

fn verify_ring_hom(end_m: &EndRing, quotient: &RingQuotient, phi: &[u64]) -> Result<()> {
    let q = &quotient.ring;
    let n = end_m.order();
    if phi[end_m.ring.one_idx() as usize] != q.one_idx() {
        return Err(Error::InternalAssertion("induced map does not preserve 1".into()));
    }
    // full pairwise check when affordable, otherwise additive-basis pairs
    // against everything (additivity then extends bilinearly)
    let pairs: Vec<(u64, u64)> = if n <= 256 {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        let mut basis_idx = Vec::new();
        for b in 0..end_m.ring.rank() {
            basis_idx.push(end_m.ring.index_of(&end_m.ring.basis_element(b)));
        }
        basis_idx
            .iter()
            .flat_map(|&i| (0..n).map(move |j| (i, j)))
            .chain(basis_idx.iter().flat_map(|&j| (0..n).map(move |i| (i, j))))
            .collect()
    };
    for (i, j) in pairs {
        let add = phi[end_m.ring.add_idx(i, j) as usize];
        if add != q.add_idx(phi[i as usize], phi[j as usize]) {
            return Err(Error::InternalAssertion("induced map not additive".into()));
        }
        let mul = phi[end_m.ring.mul_idx(i, j) as usize];
        if mul != q.mul_idx(phi[i as usize], phi[j as usize]) {
            return Err(Error::InternalAssertion(
                "induced map not multiplicative".into(),
            ));
        }
    }
    Ok(())
}

/// Checks that the kernel K covers the radical of End(X) through the
/// envelope: for every j in J(End(X)) there is k in K with u o k = j o u.
pub fn kernel_covers_radical(
    m: &FiniteModule,
    env: &EnvelopeRecord,
    map: &InducedRingMap,
) -> bool {
    let x = &env.x;
    let u = &env.u;
    map.end_x.ring.jacobson_radical().elements.iter().all(|&j_idx| {
        let j = map.end_x.hom(j_idx);
        let target = j.compose(u, m, x, x);
        map.kernel
            .elements
            .iter()
            .any(|&k_idx| u.compose(map.end_m.hom(k_idx), m, m, x) == target)
    })
}

/// Dual of `kernel_covers_radical` for covers: for every j in J(End(X))
/// there is k in K with k o p = p o j.
pub fn kernel_covers_radical_cover(
    m: &FiniteModule,
    cov: &CoverRecord,
    map: &InducedRingMap,
) -> bool {
    let x = &cov.x;
    let p = &cov.p;
    map.end_x.ring.jacobson_radical().elements.iter().all(|&j_idx| {
        let j = map.end_x.hom(j_idx);
        let target = p.compose(j, x, x, m);
        map.kernel
            .elements
            .iter()
            .any(|&k_idx| map.end_m.hom(k_idx).compose(p, x, m, m) == target)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariance::{cover_record, envelope_record};
    use crate::module::envelope::SearchOrder;
    use crate::module::{quotient_module, regular_module, Submodule};
    use crate::ring::catalog::{cyclic_ring, upper_triangular_ring, field};
    use std::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    fn z2_over_z4() -> FiniteModule {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        quotient_module(&m, &sub, "Z2").unwrap().0
    }

    #[test]
    fn induced_map_for_z2_in_z4() {
        let m = z2_over_z4();
        let env = envelope_record(&m, &g(), SearchOrder::Lex).unwrap();
        let map = induced_map(&m, &env, &g()).unwrap();
        // End(M) = F_2, End(X) = Z_4, J = 2Z_4, quotient = F_2
        assert_eq!(map.end_m.order(), 2);
        assert_eq!(map.end_x.order(), 4);
        assert_eq!(map.quotient.ring.order(), 2);
        assert_eq!(map.kernel.len(), 1);
        assert!(map.psi_injective());
        assert!(kernel_covers_radical(&m, &env, &map));
    }

    #[test]
    fn induced_map_for_cover_of_z2() {
        let m = z2_over_z4();
        let cov = cover_record(&m, &g()).unwrap();
        let map = induced_map_cover(&m, &cov, &g()).unwrap();
        assert_eq!(map.end_x.order(), 4);
        assert_eq!(map.kernel.len(), 1);
        assert!(map.psi_injective());
        assert!(kernel_covers_radical_cover(&m, &cov, &map));
    }

    #[test]
    fn induced_map_identity_envelope() {
        // M = X = Z_4: phi is just the projection End(M) -> End(M)/J
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let env = envelope_record(&m, &g(), SearchOrder::Lex).unwrap();
        let map = induced_map(&m, &env, &g()).unwrap();
        assert_eq!(map.end_m.order(), 4);
        assert_eq!(map.quotient.ring.order(), 2);
        assert_eq!(map.kernel.len(), 2);
        assert!(map.psi_injective());
        assert!(kernel_covers_radical(&m, &env, &map));
    }

    #[test]
    fn non_invariant_module_reports_missing_extension_or_coherence() {
        // the simple right module over UT(F_2, 2) killed by the radical has a
        // projective cover with larger endomorphism ring; the induced map for
        // its cover still exists because the kernel of the cover is fully
        // invariant for this ring
        let f2 = field(2).unwrap();
        let r = Arc::new(upper_triangular_ring(&f2, 2).unwrap());
        let reg = regular_module(r.clone());
        let radical_elems: Vec<Vec<u64>> = r
            .jacobson_radical()
            .elements
            .iter()
            .map(|&i| r.element(i))
            .collect();
        let sub = Submodule::generated(&reg, &radical_elems);
        let (top, _) = quotient_module(&reg, &sub, "top").unwrap();
        let cov = cover_record(&top, &g()).unwrap();
        let map = induced_map_cover(&top, &cov, &g()).unwrap();
        assert!(map.psi_injective());
        assert!(kernel_covers_radical_cover(&top, &cov, &map));
    }
}
