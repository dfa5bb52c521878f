//! Projectivity testing and projective covers. Primitive idempotents of the
//! ring are obtained by lifting the diagonal idempotents of the semisimple
//! quotient R/J; the cover of M is the matching direct sum of the projective
//! indecomposables e_i R with a surjection onto M whose kernel is
//! superfluous.

use super::homs::hom_set;
use super::lattice::{is_superfluous, module_radical};
use super::{
    quotient_module, regular_module, submodule_module, FiniteModule, ModuleHom, Submodule,
};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::ring::analysis::lift_idempotent;
use crate::ring::catalog::quotient_ring_map;
use crate::ring::wedderburn::artin_wedderburn;
use crate::ring::{Elt, FiniteRing};
use std::sync::Arc;

/// A complete orthogonal set of primitive idempotents of R, tagged by the
/// Wedderburn block of R/J each one reduces into.
pub struct PrimitiveIdempotents {
    /// The idempotents, orthogonal, summing to 1.
    pub idempotents: Vec<Elt>,
    /// Index of the R/J block each idempotent belongs to.
    pub block_of: Vec<usize>,
    /// Per-block (n, q) of R/J = prod M_n(F_q).
    pub blocks: Vec<(usize, u64)>,
}

/// Computes a complete orthogonal set of primitive idempotents by lifting
/// the diagonal idempotents of each Wedderburn block of R/J through the
/// radical, staying inside shrinking corners to preserve orthogonality.
pub fn primitive_idempotents(ring: &FiniteRing) -> Result<PrimitiveIdempotents> {
    let j = ring.jacobson_radical();
    let rq = quotient_ring_map(ring, j)?;
    let wd = artin_wedderburn(&rq.ring)?;
    // collect the reduced primitive idempotents with their block index
    let mut reduced: Vec<(Elt, usize)> = Vec::new();
    for (bi, block) in wd.blocks.iter().enumerate() {
        for f in &block.diagonal_idempotents {
            reduced.push((block.block.embed(&rq.ring, f), bi));
        }
    }
    // lift sequentially inside the corner of what remains
    let mut c = ring.one();
    let mut idempotents = Vec::with_capacity(reduced.len());
    let mut block_of = Vec::with_capacity(reduced.len());
    for (pos, (ebar, bi)) in reduced.iter().enumerate() {
        let e = if pos + 1 == reduced.len() {
            // the last lift is forced: the remaining corner identity
            c.clone()
        } else {
            let x = rq.lift(ring, ebar);
            let x = ring.mul(&ring.mul(&c, &x), &c);
            lift_idempotent(ring, &x, j)?
        };
        // e reduces to ebar
        if &rq.project(&e) != ebar {
            return Err(Error::InternalAssertion(
                "lifted idempotent has wrong reduction".into(),
            ));
        }
        c = ring.sub(&c, &e);
        idempotents.push(e);
        block_of.push(*bi);
    }
    if !ring.is_zero(&c) {
        return Err(Error::InternalAssertion(
            "primitive idempotent lifts do not sum to 1".into(),
        ));
    }
    // verify orthogonality and primitivity in R
    for (i, e) in idempotents.iter().enumerate() {
        if ring.mul(e, e) != *e {
            return Err(Error::InternalAssertion("lift is not idempotent".into()));
        }
        for f in &idempotents[..i] {
            if !ring.is_zero(&ring.mul(e, f)) || !ring.is_zero(&ring.mul(f, e)) {
                return Err(Error::InternalAssertion("lifts not orthogonal".into()));
            }
        }
        let ei = ring.index_of(e);
        let primitive = ring.idempotents().iter().all(|&f| {
            f == 0
                || f == ei
                || ring.mul_idx(ring.mul_idx(ei, f), ei) != f
        });
        if !primitive {
            return Err(Error::InternalAssertion("lift is not primitive".into()));
        }
    }
    Ok(PrimitiveIdempotents {
        idempotents,
        block_of,
        blocks: wd.blocks.iter().map(|b| (b.n, b.q)).collect(),
    })
}

/// The projective indecomposable e*R as a module, for a primitive idempotent
/// e, together with its inclusion into the regular module.
pub fn principal_indecomposable(
    ring: &Arc<FiniteRing>,
    e: &Elt,
) -> Result<(FiniteModule, ModuleHom)> {
    let reg = regular_module(ring.clone());
    let mut elems: Vec<u64> = (0..ring.order())
        .map(|r| ring.index_of(&ring.mul(e, &ring.element(r))))
        .collect();
    elems.sort_unstable();
    elems.dedup();
    let sub = Submodule::from_elements(&reg, elems);
    submodule_module(&reg, &sub, format!("P<{:?}>", ring.index_of(e)))
}

/// A projective cover: the covering module and the surjection onto M.
pub struct Cover {
    pub module: FiniteModule,
    pub map: ModuleHom,
    /// Multiplicity of each R/J block's projective indecomposable in the
    /// cover.
    pub multiplicities: Vec<usize>,
}

impl std::fmt::Debug for Cover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cover")
            .field("module", &self.module.name)
            .field("order", &self.module.order())
            .field("multiplicities", &self.multiplicities)
            .finish()
    }
}

/// Computes the projective cover of M: the top M/MJ decomposes over R/J into
/// simples with multiplicities; the cover is the matching sum of projective
/// indecomposables with the canonically least surjection onto M.
pub fn projective_cover(m: &FiniteModule, guards: &Guards) -> Result<Cover> {
    let ring = m.ring.clone();
    if m.order() == 1 {
        let zero = super::build_module(ring, format!("P({})", m.name), vec![], vec![])?;
        return Ok(Cover {
            map: ModuleHom { matrix: vec![] },
            module: zero,
            multiplicities: vec![],
        });
    }
    let prim = primitive_idempotents(&ring)?;
    // top of M and block multiplicities
    let rad = module_radical(m);
    let (top, _) = quotient_module(m, &rad, format!("top({})", m.name))?;
    let mut multiplicities = Vec::with_capacity(prim.blocks.len());
    let mut pieces: Vec<FiniteModule> = Vec::new();
    for (bi, &(n, q)) in prim.blocks.iter().enumerate() {
        // block component of the top: top * e summed over this block's
        // primitive idempotents (equivalently top * central idempotent)
        let mut gens = Vec::new();
        for (e, &b) in prim.idempotents.iter().zip(&prim.block_of) {
            if b != bi {
                continue;
            }
            for x in top.elements() {
                gens.push(top.act(&x, e));
            }
        }
        let comp = Submodule::generated(&top, &gens);
        // |component| = (q^n)^a for the block simple of size q^n
        let simple_size = (q as u128).pow(n as u32);
        let mut a = 0usize;
        let mut sz = 1u128;
        while sz < comp.len() as u128 {
            sz *= simple_size;
            a += 1;
        }
        if sz != comp.len() as u128 {
            return Err(Error::InternalAssertion(format!(
                "top component size {} is not a power of the simple size {}",
                comp.len(),
                simple_size
            )));
        }
        multiplicities.push(a);
        if a > 0 {
            let e = prim
                .idempotents
                .iter()
                .zip(&prim.block_of)
                .find(|&(_, &b)| b == bi)
                .map(|(e, _)| e.clone())
                .expect("block has at least one idempotent");
            let (p, _) = principal_indecomposable(&ring, &e)?;
            for _ in 0..a {
                pieces.push(clone_module(&p)?);
            }
        }
    }
    let mut iter = pieces.into_iter();
    let first = iter.next().ok_or_else(|| {
        Error::InternalAssertion("nonzero module with zero top".into())
    })?;
    let mut cover = first;
    for p in iter {
        cover = super::direct_sum(&cover, &p)?;
    }
    // canonically least surjection
    let mut found = None;
    for h in hom_set(&cover, m, guards)? {
        if h.is_surjective_map(&cover, m) {
            found = Some(h);
            break;
        }
    }
    let map = found.ok_or_else(|| {
        Error::InternalAssertion("no surjection from the computed cover".into())
    })?;
    let cover = Cover {
        module: cover,
        map,
        multiplicities,
    };
    if !verify_cover(m, &cover, guards)? {
        return Err(Error::InternalAssertion(
            "constructed cover failed verification".into(),
        ));
    }
    Ok(cover)
}

fn clone_module(m: &FiniteModule) -> Result<FiniteModule> {
    let action = (0..m.rank())
        .map(|g| {
            (0..m.ring.rank())
                .map(|b| m.generator_action(g, b).clone())
                .collect()
        })
        .collect();
    super::build_module(m.ring.clone(), m.name.clone(), m.orders.clone(), action)
}

/// Full cover verification: the map is a linear surjection with superfluous
/// kernel, the source is projective, and every endomorphism h of the source
/// with p o h = p is an automorphism.
pub fn verify_cover(m: &FiniteModule, cover: &Cover, guards: &Guards) -> Result<bool> {
    let x = &cover.module;
    let p = &cover.map;
    if m.order() == 1 {
        return Ok(x.order() == 1);
    }
    if !p.is_linear(x, m) || !p.is_surjective_map(x, m) {
        return Ok(false);
    }
    let ker = p.kernel(x, m);
    if !is_superfluous(&ker, x, guards)? {
        return Ok(false);
    }
    if !is_projective(x, guards)? {
        return Ok(false);
    }
    for h in hom_set(x, x, guards)? {
        let ph = p.compose(&h, x, x, m);
        if &ph == p && !h.is_injective_map(x, x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projectivity: M is projective iff every surjection N -> M splits; for a
/// finite module it suffices that the canonical surjection from the free
/// module on M's generators splits, i.e. that some right inverse exists.
pub fn is_projective(m: &FiniteModule, _guards: &Guards) -> Result<bool> {
    let ring = m.ring.clone();
    if m.order() == 1 {
        return Ok(true);
    }
    // free module on the module generators
    let reg = regular_module(ring);
    let mut free = clone_module(&reg)?;
    for _ in 1..m.rank() {
        free = super::direct_sum(&free, &reg)?;
    }
    // canonical surjection: the g-th copy's identity goes to generator g
    let rk = reg.rank();
    let mut matrix = Vec::with_capacity(free.rank());
    for g in 0..m.rank() {
        for b in 0..rk {
            // basis element e_b of copy g maps to x_g * e_b
            let eb = m.ring.basis_element(b);
            matrix.push(m.act(&m.generator(g), &eb));
        }
    }
    let pi = ModuleHom { matrix };
    if !pi.is_linear(&free, m) || !pi.is_surjective_map(&free, m) {
        return Err(Error::InternalAssertion(
            "canonical free surjection malformed".into(),
        ));
    }
    // split: solve pi o s = id directly rather than enumerating Hom(M, free)
    let id = ModuleHom::identity(m);
    match super::homs::hom_through(m, &free, m, &pi, &id)? {
        Some(s) => {
            if pi.compose(&s, m, &free, m) != id || !s.is_linear(m, &free) {
                return Err(Error::InternalAssertion(
                    "free splitting fails verification".into(),
                ));
            }
            Ok(true)
        }
        None => Ok(false),
    }
}
