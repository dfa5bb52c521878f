//! Injectivity testing and injective envelopes. The ambient injective used
//! for embeddings is the character module C = additive dual of the ring with
//! the contragredient right action; the envelope is carved out of a finite
//! power of C as a maximal essential extension of the image.

use super::homs::hom_set;
use super::lattice::is_essential;
use super::{submodule_module, FiniteModule, ModuleHom, Submodule};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::exactlin::GroupBasis;
use crate::module::build_module;
use crate::ring::{right_ideals, FiniteRing};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Deterministic tie-breaking order for envelope construction searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    /// Ascending canonical index.
    Lex,
    /// Descending canonical index.
    ReverseLex,
}

/// The character module C of the ring: additive characters of (R, +) with
/// the right action (phi * r)(s) = phi(r * s). A finite injective cogenerator
/// whose additive group matches the ring's.
pub fn character_module(ring: Arc<FiniteRing>) -> FiniteModule {
    let k = ring.rank();
    let orders = ring.orders.clone();
    // delta_i * e_b evaluated at s is delta_i(e_b * s) = sum_l s_l c_{bl}^i
    // where c = structure constants; as a character with coordinates gamma_l
    // this is gamma_l = c_{bl}^i * d_l / d_i (an integer by torsion
    // compatibility of the structure constants).
    let mut action = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for b in 0..k {
            for l in 0..k {
                let c = ring.basis_product(b, l)[i];
                let num = c as u128 * orders[l] as u128;
                debug_assert!(num % orders[i] as u128 == 0);
                action[i][b][l] = ((num / orders[i] as u128) % orders[l] as u128) as u64;
            }
        }
    }
    let name = format!("C({})", ring.name);
    build_module(ring, name, orders, action).expect("character module is a valid module")
}

/// Evaluates a character (coefficient vector over the dual basis) at a ring
/// element, as a residue modulo the exponent N of (R, +).
pub fn character_eval(ring: &FiniteRing, phi: &[u64], s: &[u64]) -> (u64, u64) {
    let mut n = 1u64;
    for &d in &ring.orders {
        n = crate::exactlin::lcm(n, d);
    }
    let mut acc: u128 = 0;
    for (l, (&c, &x)) in phi.iter().zip(s).enumerate() {
        acc += c as u128 * x as u128 * (n / ring.orders[l]) as u128;
    }
    ((acc % n as u128) as u64, n)
}

/// Homomorphisms from a right ideal of R into M, via the generic hom solver
/// on the ideal viewed as a submodule of the regular module.
fn ideal_homs_into(
    reg: &FiniteModule,
    ideal_elements: &[u64],
    m: &FiniteModule,
    guards: &Guards,
) -> Result<(FiniteModule, ModuleHom, Vec<ModuleHom>)> {
    let sub = Submodule::from_elements(reg, ideal_elements.to_vec());
    let (imod, emb) = submodule_module(reg, &sub, "I")?;
    let homs = hom_set(&imod, m, guards)?;
    Ok((imod, emb, homs))
}

/// Baer criterion: M is injective iff for every right ideal I of R, every
/// hom I -> M is the restriction of x -> m * x for some m in M.
pub fn is_injective_module(m: &FiniteModule, guards: &Guards) -> Result<bool> {
    let ring = &m.ring;
    if ring.order() as usize > guards.max_ring {
        return Err(Error::guard(
            "injectivity scan",
            ring.order() as usize,
            guards.max_ring,
        ));
    }
    let reg = super::regular_module(ring.clone());
    for ideal in right_ideals(ring, guards.max_ring)? {
        let (imod, emb, homs) = ideal_homs_into(&reg, &ideal.elements, m, guards)?;
        for h in homs {
            // h extends iff some m0 in M has m0 * g = h(g) on the ideal
            // module's generators (g = ambient image of each generator)
            let extends = m.elements().any(|m0| {
                (0..imod.rank()).all(|gi| {
                    let g_ambient = &emb.matrix[gi];
                    m.act(&m0, g_ambient) == h.matrix[gi]
                })
            });
            if !extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An injective envelope: the enveloping module and the embedding of the
/// original module into it.
pub struct Envelope {
    pub module: FiniteModule,
    pub embedding: ModuleHom,
}

impl std::fmt::Debug for Envelope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Envelope")
            .field("module", &self.module.name)
            .field("order", &self.module.order())
            .finish()
    }
}

/// Computes the injective envelope of M: embed M into a finite power of the
/// character module C via homs that jointly separate points, then grow the
/// image to a maximal essential extension inside that power. The result is
/// injective, contains an isomorphic copy of M, and is essential over it.
pub fn injective_envelope(
    m: &FiniteModule,
    guards: &Guards,
    order: SearchOrder,
) -> Result<Envelope> {
    let ring = m.ring.clone();
    if m.order() == 1 {
        // the zero module is its own (injective) envelope
        let zero = build_module(ring, format!("E({})", m.name), vec![], vec![])?;
        return Ok(Envelope {
            module: zero,
            embedding: ModuleHom {
                matrix: vec![Vec::new(); m.rank()],
            },
        });
    }
    let c = character_module(ring.clone());
    // choose homs M -> C whose kernels jointly intersect to zero
    let mut homs = hom_set(m, &c, guards)?;
    if order == SearchOrder::ReverseLex {
        homs.reverse();
    }
    let mut chosen: Vec<ModuleHom> = Vec::new();
    let mut joint: BTreeSet<u64> = m.elements().map(|x| m.index_of(&x)).collect();
    for h in &homs {
        if joint.len() == 1 {
            break;
        }
        let ker = h.kernel(m, &c);
        let next: BTreeSet<u64> = joint
            .iter()
            .copied()
            .filter(|&x| ker.contains(x))
            .collect();
        if next.len() < joint.len() {
            joint = next;
            chosen.push(h.clone());
        }
    }
    if joint.len() != 1 {
        return Err(Error::InternalAssertion(
            "character module homs fail to separate points".into(),
        ));
    }
    // ambient X0 = C^k and the embedding u0
    let mut x0 = c;
    let emb0: ModuleHom;
    if chosen.len() > 1 {
        let mut acc = x0;
        for _ in 1..chosen.len() {
            acc = super::direct_sum(&acc, &character_module(ring.clone()))?;
        }
        x0 = acc;
    }
    {
        let ck = x0.rank() / chosen.len();
        let mut matrix = Vec::with_capacity(m.rank());
        for g in 0..m.rank() {
            let mut row = Vec::with_capacity(x0.rank());
            for h in &chosen {
                row.extend_from_slice(&h.matrix[g]);
            }
            debug_assert_eq!(row.len(), ck * chosen.len());
            matrix.push(row);
        }
        emb0 = ModuleHom { matrix };
    }
    if x0.order() > (guards.max_module as u64).saturating_mul(1 << 14) {
        return Err(Error::guard(
            "envelope ambient module",
            x0.order() as usize,
            guards.max_module << 14,
        ));
    }

    // essential climb: grow the image to a maximal submodule of X0 in which
    // the image stays essential
    let image = emb0.image(m, &x0);
    if image.len() as u64 != m.order() {
        return Err(Error::InternalAssertion(
            "joint character embedding is not injective".into(),
        ));
    }
    let img_set: BTreeSet<u64> = image.elements.iter().copied().collect();
    let mut current: BTreeSet<u64> = img_set.clone();
    let ring_elems: Vec<Vec<u64>> = ring.elements().collect();
    // yR meets the image nontrivially?
    let meets_image = |y: &Vec<u64>| -> bool {
        ring_elems.iter().any(|r| {
            let z = x0.act(y, r);
            !x0.is_zero(&z) && img_set.contains(&x0.index_of(&z))
        })
    };
    let candidates: Vec<u64> = match order {
        SearchOrder::Lex => (0..x0.order()).collect(),
        SearchOrder::ReverseLex => (0..x0.order()).rev().collect(),
    };
    'grow: loop {
        for &xi in &candidates {
            if current.contains(&xi) {
                continue;
            }
            let x = x0.element(xi);
            // quick necessary condition
            if !meets_image(&x) {
                continue;
            }
            // T = current + xR (already a submodule)
            let mut t: BTreeSet<u64> = BTreeSet::new();
            for r in &ring_elems {
                let xr = x0.act(&x, r);
                for &s in &current {
                    t.insert(x0.index_of(&x0.add(&x0.element(s), &xr)));
                }
            }
            // image must stay essential in T
            let essential = t.iter().all(|&yi| {
                yi == 0 || meets_image(&x0.element(yi))
            });
            if essential {
                current = t;
                continue 'grow;
            }
        }
        break;
    }

    // present the climb result as a module and re-express the embedding
    let sub = Submodule::from_elements(&x0, current.into_iter().collect());
    let (envelope, _into_x0) = submodule_module(&x0, &sub, format!("E({})", m.name))?;
    let gb = GroupBasis {
        basis: sub.generators.clone(),
        orders: sub.generator_orders.clone(),
    };
    let mut coords: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for (cf, e) in gb.enumerate(&x0.orders) {
        coords.insert(e, cf);
    }
    let matrix = emb0
        .matrix
        .iter()
        .map(|img| {
            coords
                .get(img)
                .cloned()
                .ok_or_else(|| Error::InternalAssertion("image escaped the envelope".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let embedding = ModuleHom { matrix };

    let env = Envelope {
        module: envelope,
        embedding,
    };
    if !verify_envelope(m, &env, guards)? {
        return Err(Error::InternalAssertion(
            "constructed envelope failed verification".into(),
        ));
    }
    Ok(env)
}

/// Full envelope verification: the embedding is a monic hom, its image is
/// essential, the target is injective, and every endomorphism of the target
/// fixing the embedding is an automorphism.
pub fn verify_envelope(m: &FiniteModule, env: &Envelope, guards: &Guards) -> Result<bool> {
    let x = &env.module;
    let u = &env.embedding;
    if !u.is_linear(m, x) || !u.is_injective_map(m, x) {
        return Ok(false);
    }
    if !is_essential(&u.image(m, x), x) {
        return Ok(false);
    }
    if !is_injective_module(x, guards)? {
        return Ok(false);
    }
    // minimality: h o u = u forces h to be an automorphism
    for h in hom_set(x, x, guards)? {
        let hu = h.compose(u, m, x, x);
        if &hu == u && !h.is_injective_map(x, x) {
            return Ok(false);
        }
    }
    Ok(true)
}
