//! Invariance analysis of finite modules with respect to their injective
//! envelopes and projective covers: Galois and co-Galois groups, the induced
//! endomorphism-ring map, verification suites for the structural theorems,
//! and a counterexample searcher.

pub mod galois;
pub mod induced;
pub mod search;
pub mod theorems;

use crate::config::Guards;
use crate::error::Result;
use crate::module::cover::{projective_cover, verify_cover, Cover};
use crate::module::envelope::{injective_envelope, verify_envelope, Envelope, SearchOrder};
use crate::module::{FiniteModule, ModuleHom, Submodule};

/// The module class an envelope or cover is taken in. Only the injective
/// (envelope) and projective (cover) instantiations ship; the tag keeps the
/// interface open for other classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    Injective,
    Projective,
}

/// A verified monomorphic envelope u: M -> X with its class tag.
pub struct EnvelopeRecord {
    pub class: ClassTag,
    pub x: FiniteModule,
    pub u: ModuleHom,
}

/// A verified epimorphic cover p: X -> M with its class tag.
pub struct CoverRecord {
    pub class: ClassTag,
    pub x: FiniteModule,
    pub p: ModuleHom,
    /// Multiplicity of each block's projective indecomposable.
    pub multiplicities: Vec<usize>,
}

/// Builds the injective envelope record for M, fully verified.
pub fn envelope_record(
    m: &FiniteModule,
    guards: &Guards,
    order: SearchOrder,
) -> Result<EnvelopeRecord> {
    let Envelope { module, embedding } = injective_envelope(m, guards, order)?;
    Ok(EnvelopeRecord {
        class: ClassTag::Injective,
        x: module,
        u: embedding,
    })
}

/// Builds the projective cover record for M, fully verified.
pub fn cover_record(m: &FiniteModule, guards: &Guards) -> Result<CoverRecord> {
    let Cover {
        module,
        map,
        multiplicities,
    } = projective_cover(m, guards)?;
    Ok(CoverRecord {
        class: ClassTag::Projective,
        x: module,
        p: map,
        multiplicities,
    })
}

/// Re-verifies an envelope record from scratch.
pub fn recheck_envelope(m: &FiniteModule, env: &EnvelopeRecord, guards: &Guards) -> Result<bool> {
    verify_envelope(
        m,
        &Envelope {
            module: clone_module(&env.x)?,
            embedding: env.u.clone(),
        },
        guards,
    )
}

/// Re-verifies a cover record from scratch.
pub fn recheck_cover(m: &FiniteModule, cov: &CoverRecord, guards: &Guards) -> Result<bool> {
    verify_cover(
        m,
        &Cover {
            module: clone_module(&cov.x)?,
            map: cov.p.clone(),
            multiplicities: cov.multiplicities.clone(),
        },
        guards,
    )
}

pub(crate) fn clone_module(m: &FiniteModule) -> Result<FiniteModule> {
    let action = (0..m.rank())
        .map(|g| {
            (0..m.ring.rank())
                .map(|b| m.generator_action(g, b).clone())
                .collect()
        })
        .collect();
    crate::module::build_module(m.ring.clone(), m.name.clone(), m.orders.clone(), action)
}

/// Outcome of an invariance predicate, with a violating map when false.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub holds: bool,
    /// A violating automorphism/endomorphism of X, when the predicate fails.
    pub witness: Option<ModuleHom>,
}

fn image_preserved(x: &FiniteModule, g: &ModuleHom, image: &Submodule) -> bool {
    image
        .elements
        .iter()
        .all(|&i| image.contains(x.index_of(&g.apply(x, x, &x.element(i)))))
}

fn kernel_preserved(x: &FiniteModule, g: &ModuleHom, kernel: &Submodule) -> bool {
    kernel
        .elements
        .iter()
        .all(|&i| kernel.contains(x.index_of(&g.apply(x, x, &x.element(i)))))
}

/// M is automorphism-invariant iff every automorphism of its envelope X maps
/// Im u into itself.
pub fn is_automorphism_invariant(
    m: &FiniteModule,
    env: &EnvelopeRecord,
    guards: &Guards,
) -> Result<InvarianceReport> {
    let image = env.u.image(m, &env.x);
    for g in crate::module::homs::aut_group(&env.x, guards)? {
        if !image_preserved(&env.x, &g, &image) {
            return Ok(InvarianceReport {
                holds: false,
                witness: Some(g),
            });
        }
    }
    Ok(InvarianceReport {
        holds: true,
        witness: None,
    })
}

/// M is endomorphism-invariant iff every endomorphism of its envelope X maps
/// Im u into itself.
pub fn is_endomorphism_invariant(
    m: &FiniteModule,
    env: &EnvelopeRecord,
    guards: &Guards,
) -> Result<InvarianceReport> {
    let image = env.u.image(m, &env.x);
    for g in crate::module::homs::hom_set(&env.x, &env.x, guards)? {
        if !image_preserved(&env.x, &g, &image) {
            return Ok(InvarianceReport {
                holds: false,
                witness: Some(g),
            });
        }
    }
    Ok(InvarianceReport {
        holds: true,
        witness: None,
    })
}

/// M is automorphism-coinvariant iff every automorphism of its cover X maps
/// Ker p into itself.
pub fn is_automorphism_coinvariant(
    m: &FiniteModule,
    cov: &CoverRecord,
    guards: &Guards,
) -> Result<InvarianceReport> {
    let kernel = cov.p.kernel(&cov.x, m);
    for g in crate::module::homs::aut_group(&cov.x, guards)? {
        if !kernel_preserved(&cov.x, &g, &kernel) {
            return Ok(InvarianceReport {
                holds: false,
                witness: Some(g),
            });
        }
    }
    Ok(InvarianceReport {
        holds: true,
        witness: None,
    })
}

/// M is endomorphism-coinvariant iff every endomorphism of its cover X maps
/// Ker p into itself.
pub fn is_endomorphism_coinvariant(
    m: &FiniteModule,
    cov: &CoverRecord,
    guards: &Guards,
) -> Result<InvarianceReport> {
    let kernel = cov.p.kernel(&cov.x, m);
    for g in crate::module::homs::hom_set(&cov.x, &cov.x, guards)? {
        if !kernel_preserved(&cov.x, &g, &kernel) {
            return Ok(InvarianceReport {
                holds: false,
                witness: Some(g),
            });
        }
    }
    Ok(InvarianceReport {
        holds: true,
        witness: None,
    })
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
    fn z2_over_z4_is_invariant_both_ways() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();

        let env = envelope_record(&z2, &g(), SearchOrder::Lex).unwrap();
        assert!(is_automorphism_invariant(&z2, &env, &g()).unwrap().holds);
        assert!(is_endomorphism_invariant(&z2, &env, &g()).unwrap().holds);

        let cov = cover_record(&z2, &g()).unwrap();
        assert!(is_automorphism_coinvariant(&z2, &cov, &g()).unwrap().holds);
        assert!(is_endomorphism_coinvariant(&z2, &cov, &g()).unwrap().holds);
    }

    #[test]
    fn mixed_sum_over_z4_is_not_automorphism_invariant() {
        // M = Z_4 (+) Z_2 inside X = Z_4 (+) Z_4: the shear automorphism
        // (a, b) -> (a, a + b) moves the image of M
        let r = Arc::new(cyclic_ring(4).unwrap());
        let reg = regular_module(r);
        let sub = Submodule::generated(&reg, &[vec![2]]);
        let (z2, _) = quotient_module(&reg, &sub, "Z2").unwrap();
        let m = direct_sum(&reg, &z2).unwrap();
        let env = envelope_record(&m, &g(), SearchOrder::Lex).unwrap();
        assert_eq!(env.x.order(), 16);
        let rep = is_automorphism_invariant(&m, &env, &g()).unwrap();
        assert!(!rep.holds);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn injective_module_trivially_invariant() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let env = envelope_record(&m, &g(), SearchOrder::Lex).unwrap();
        assert_eq!(env.x.order(), m.order());
        assert!(is_endomorphism_invariant(&m, &env, &g()).unwrap().holds);
    }

    #[test]
    fn recheck_roundtrip() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let env = envelope_record(&z2, &g(), SearchOrder::Lex).unwrap();
        assert!(recheck_envelope(&z2, &env, &g()).unwrap());
        let cov = cover_record(&z2, &g()).unwrap();
        assert!(recheck_cover(&z2, &cov, &g()).unwrap());
    }
}
