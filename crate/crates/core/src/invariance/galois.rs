//! Galois groups of envelopes, co-Galois groups of covers, and the induced
//! surjection from Aut(X) onto Aut(M) whose kernel they are.

use super::{CoverRecord, EnvelopeRecord};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::module::homs::aut_group;
use crate::module::{FiniteModule, ModuleHom};
use std::collections::HashMap;

/// The (co-)Galois group of an envelope or cover, optionally with the table
/// of the induced map from Aut(X) to Aut(M).
pub struct GaloisData {
    /// Group elements, as automorphisms of X in canonical order.
    pub elements: Vec<ModuleHom>,
    /// For each automorphism of X (in canonical Aut(X) order), the induced
    /// automorphism of M; present only when M is (co)invariant.
    pub delta: Option<Vec<(ModuleHom, ModuleHom)>>,
}

/// Gal(u) = automorphisms g of X with g o u = u; verified closed under
/// composition and inverses.
pub fn galois_group(m: &FiniteModule, env: &EnvelopeRecord, guards: &Guards) -> Result<GaloisData> {
    let x = &env.x;
    let u = &env.u;
    let elements: Vec<ModuleHom> = aut_group(x, guards)?
        .into_iter()
        .filter(|g| &g.compose(u, m, x, x) == u)
        .collect();
    verify_subgroup(x, &elements)?;
    Ok(GaloisData {
        elements,
        delta: None,
    })
}

/// coGal(p) = automorphisms g of X with p o g = p; verified closed.
pub fn cogalois_group(
    m: &FiniteModule,
    cov: &CoverRecord,
    guards: &Guards,
) -> Result<GaloisData> {
    let x = &cov.x;
    let p = &cov.p;
    let elements: Vec<ModuleHom> = aut_group(x, guards)?
        .into_iter()
        .filter(|g| &p.compose(g, x, x, m) == p)
        .collect();
    verify_subgroup(x, &elements)?;
    Ok(GaloisData {
        elements,
        delta: None,
    })
}

fn verify_subgroup(x: &FiniteModule, elements: &[ModuleHom]) -> Result<()> {
    let set: std::collections::HashSet<&ModuleHom> = elements.iter().collect();
    if !set.contains(&ModuleHom::identity(x)) {
        return Err(Error::InternalAssertion("galois set misses the identity".into()));
    }
    for a in elements {
        for b in elements {
            let c = a.compose(b, x, x, x);
            if !set.contains(&c) {
                return Err(Error::InternalAssertion(
                    "galois set not closed under composition".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Computes the induced map Delta: Aut(X) -> Aut(M) for an automorphism-
/// invariant envelope: g restricts to Im u, pulled back through the monic u.
/// Verifies: totality, that each induced map is an automorphism of M, the
/// homomorphism law, surjectivity onto Aut(M), kernel = Gal(u), and the
/// counting identity |Aut(X)| = |Aut(M)| * |Gal(u)|.
pub fn delta_map(m: &FiniteModule, env: &EnvelopeRecord, guards: &Guards) -> Result<GaloisData> {
    let x = &env.x;
    let u = &env.u;
    // pull-back table: u(y) -> y
    let mut back: HashMap<u64, Vec<u64>> = HashMap::new();
    for y in m.elements() {
        back.insert(x.index_of(&u.apply(m, x, &y)), y.clone());
    }
    let auts_x = aut_group(x, guards)?;
    let mut table: Vec<(ModuleHom, ModuleHom)> = Vec::with_capacity(auts_x.len());
    for g in &auts_x {
        let mut matrix = Vec::with_capacity(m.rank());
        for i in 0..m.rank() {
            let gen = m.generator(i);
            let moved = g.apply(x, x, &u.apply(m, x, &gen));
            let pulled = back.get(&x.index_of(&moved)).ok_or_else(|| {
                Error::PreconditionViolation(
                    "module is not automorphism-invariant: image not preserved".into(),
                )
            })?;
            matrix.push(pulled.clone());
        }
        let f = ModuleHom { matrix };
        // f must be linear (it is a pullback of a linear map; verify anyway)
        // and an automorphism of M
        if !f.is_linear(m, m) || !f.is_injective_map(m, m) {
            return Err(Error::InternalAssertion(
                "induced map on M is not an automorphism".into(),
            ));
        }
        // defining identity u o f = g o u
        if u.compose(&f, m, m, x) != g.compose(u, m, x, x) {
            return Err(Error::InternalAssertion("delta triangle identity failed".into()));
        }
        table.push((g.clone(), f));
    }
    verify_delta_properties(m, x, &table, guards, |a, b| a.compose(b, x, x, x))?;
    let gal: Vec<ModuleHom> = table
        .iter()
        .filter(|(_, f)| *f == ModuleHom::identity(m))
        .map(|(g, _)| g.clone())
        .collect();
    Ok(GaloisData {
        elements: gal,
        delta: Some(table),
    })
}

/// Dual of `delta_map` for covers: for automorphism-coinvariant M, each
/// automorphism g of X induces f on M with f o p = p o g.
pub fn delta_map_cover(
    m: &FiniteModule,
    cov: &CoverRecord,
    guards: &Guards,
) -> Result<GaloisData> {
    let x = &cov.x;
    let p = &cov.p;
    // section: for each generator of M the least preimage under p
    let mut section: Vec<Vec<u64>> = Vec::with_capacity(m.rank());
    for i in 0..m.rank() {
        let gen = m.generator(i);
        let pre = x
            .elements()
            .find(|y| p.apply(x, m, y) == gen)
            .ok_or_else(|| Error::InternalAssertion("cover map not surjective".into()))?;
        section.push(pre);
    }
    let auts_x = aut_group(x, guards)?;
    let mut table: Vec<(ModuleHom, ModuleHom)> = Vec::with_capacity(auts_x.len());
    for g in &auts_x {
        let matrix: Vec<Vec<u64>> = section
            .iter()
            .map(|pre| p.apply(x, m, &g.apply(x, x, pre)))
            .collect();
        let f = ModuleHom { matrix };
        // well defined iff g preserves Ker p; the triangle identity then
        // certifies it
        if f.compose(p, x, m, m) != p.compose(g, x, x, m) {
            return Err(Error::PreconditionViolation(
                "module is not automorphism-coinvariant: kernel not preserved".into(),
            ));
        }
        if !f.is_linear(m, m) || !f.is_injective_map(m, m) {
            return Err(Error::InternalAssertion(
                "induced map on M is not an automorphism".into(),
            ));
        }
        table.push((g.clone(), f));
    }
    verify_delta_properties(m, x, &table, guards, |a, b| a.compose(b, x, x, x))?;
    let gal: Vec<ModuleHom> = table
        .iter()
        .filter(|(_, f)| *f == ModuleHom::identity(m))
        .map(|(g, _)| g.clone())
        .collect();
    Ok(GaloisData {
        elements: gal,
        delta: Some(table),
    })
}

fn verify_delta_properties(
    m: &FiniteModule,
    _x: &FiniteModule,
    table: &[(ModuleHom, ModuleHom)],
    guards: &Guards,
    compose_x: impl Fn(&ModuleHom, &ModuleHom) -> ModuleHom,
) -> Result<()> {
    let lookup: HashMap<&ModuleHom, &ModuleHom> =
        table.iter().map(|(g, f)| (g, f)).collect();
    // homomorphism law
    for (g1, f1) in table {
        for (g2, f2) in table {
            let g12 = compose_x(g1, g2);
            let f12 = f1.compose(f2, m, m, m);
            match lookup.get(&g12) {
                Some(&expect) => {
                    if *expect != f12 {
                        return Err(Error::InternalAssertion(
                            "delta is not a group homomorphism".into(),
                        ));
                    }
                }
                None => {
                    return Err(Error::InternalAssertion(
                        "Aut(X) not closed under composition".into(),
                    ))
                }
            }
        }
    }
    // surjectivity onto Aut(M) and the counting identity
    let image: std::collections::HashSet<&ModuleHom> =
        table.iter().map(|(_, f)| f).collect();
    let auts_m = aut_group(m, guards)?;
    if auts_m.iter().any(|f| !image.contains(f)) {
        return Err(Error::InternalAssertion("delta not surjective onto Aut(M)".into()));
    }
    let kernel = table
        .iter()
        .filter(|(_, f)| *f == ModuleHom::identity(m))
        .count();
    if table.len() != auts_m.len() * kernel {
        return Err(Error::InternalAssertion(
            "|Aut(X)| != |Aut(M)| * |Gal| counting identity failed".into(),
        ));
    }
    Ok(())
}
