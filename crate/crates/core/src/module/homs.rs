//! Homomorphism sets between finite modules, endomorphism rings, and
//! automorphism groups. Hom sets are computed by congruence solving over the
//! generator images, never by filtering raw set maps.

use super::{FiniteModule, ModuleHom};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::exactlin::{gcd, subgroup_decomposition, CongruenceSystem, GroupBasis};
use crate::ring::{build_ring, FiniteRing};
use std::collections::HashMap;

/// Unknown moduli and linearity constraints shared by every hom computation
/// from src to dst: unknown (g, l) is the dst-coordinate-l component of the
/// image of generator g, scaled so its natural order is gcd(ord(x_g), e_l).
fn linearity_system(src: &FiniteModule, dst: &FiniteModule) -> (Vec<u64>, CongruenceSystem) {
    let gk = src.rank();
    let hk = dst.rank();
    let rk = src.ring.rank();
    let mut moduli = Vec::with_capacity(gk * hk);
    for &m in &src.orders {
        for &e in &dst.orders {
            moduli.push(gcd(m, e));
        }
    }
    let mut sys = CongruenceSystem::new(moduli.clone());
    // linearity on generators: h(x_g * e_b) = h(x_g) * e_b
    for g in 0..gk {
        for b in 0..rk {
            // x_g * e_b = sum_j c_j x_j in src coordinates
            let c = src.generator_action(g, b);
            for l in 0..hk {
                let e_l = dst.orders[l];
                let mut coeffs = vec![0u64; gk * hk];
                // LHS: sum_j c_j h(x_j)_l = sum_j c_j (e_l/gcd_jl) t_{j,l}
                for (j, &cj) in c.iter().enumerate() {
                    let step = e_l / moduli[j * hk + l];
                    coeffs[j * hk + l] = (coeffs[j * hk + l] + (cj % e_l) * step) % e_l;
                }
                // RHS: (h(x_g) * e_b)_l = sum_m h(x_g)_m (y_m e_b)_l
                for m in 0..hk {
                    let a = dst.generator_action(m, b)[l];
                    if a == 0 {
                        continue;
                    }
                    let step = dst.orders[m] / moduli[g * hk + m];
                    let coef = ((a as u128 * step as u128) % e_l as u128) as u64;
                    coeffs[g * hk + m] = (coeffs[g * hk + m] + e_l - coef) % e_l;
                }
                sys.add_constraint(coeffs, 0, e_l);
            }
        }
    }
    (moduli, sys)
}

/// Decodes a congruence solution vector into a generator-image matrix.
fn decode_hom(sol: &[u64], moduli: &[u64], gk: usize, dst: &FiniteModule) -> ModuleHom {
    let hk = dst.rank();
    let mut matrix = Vec::with_capacity(gk);
    for g in 0..gk {
        let mut img = vec![0u64; hk];
        for l in 0..hk {
            let step = dst.orders[l] / moduli[g * hk + l];
            img[l] = (sol[g * hk + l] * step) % dst.orders[l];
        }
        matrix.push(img);
    }
    ModuleHom { matrix }
}

/// All right-module homomorphisms src -> dst, in canonical (sorted matrix)
/// order.
pub fn hom_set(src: &FiniteModule, dst: &FiniteModule, guards: &Guards) -> Result<Vec<ModuleHom>> {
    if src.ring.name != dst.ring.name {
        return Err(Error::PreconditionViolation(
            "hom set needs modules over the same ring".into(),
        ));
    }
    let gk = src.rank();
    if gk == 0 {
        return Ok(vec![ModuleHom { matrix: vec![] }]);
    }
    let (moduli, sys) = linearity_system(src, dst);
    let sols = match sys.solve() {
        Some(s) => s,
        None => return Ok(vec![]),
    };
    let all = sols.enumerate(guards.max_end).ok_or_else(|| {
        Error::guard("hom set enumeration", guards.max_end + 1, guards.max_end)
    })?;
    let mut out = Vec::with_capacity(all.len());
    for sol in all {
        out.push(decode_hom(&sol, &moduli, gk, dst));
    }
    out.sort();
    Ok(out)
}

/// Finds one homomorphism s: src -> dst with post o s = target (where
/// post: dst -> t and target: src -> t), by adding the composition equations
/// to the linearity system and taking a particular solution. Avoids
/// enumerating Hom(src, dst), which can be exponentially large.
pub fn hom_through(
    src: &FiniteModule,
    dst: &FiniteModule,
    t: &FiniteModule,
    post: &ModuleHom,
    target: &ModuleHom,
) -> Result<Option<ModuleHom>> {
    if src.ring.name != dst.ring.name || src.ring.name != t.ring.name {
        return Err(Error::PreconditionViolation(
            "hom search needs modules over the same ring".into(),
        ));
    }
    let gk = src.rank();
    let hk = dst.rank();
    if gk == 0 {
        return Ok(Some(ModuleHom { matrix: vec![] }));
    }
    let (moduli, mut sys) = linearity_system(src, dst);
    // post(s(x_g)) = target(x_g): for each src generator g and t coordinate c,
    // sum_l s(x_g)_l * post(y_l)_c = target(x_g)_c (mod ord_t(c))
    for g in 0..gk {
        for c in 0..t.rank() {
            let o_c = t.orders[c];
            let mut coeffs = vec![0u64; gk * hk];
            for l in 0..hk {
                let step = dst.orders[l] / moduli[g * hk + l];
                let a = post.matrix[l][c] % o_c;
                let coef = ((a as u128 * step as u128) % o_c as u128) as u64;
                coeffs[g * hk + l] = coef;
            }
            sys.add_constraint(coeffs, target.matrix[g][c] % o_c, o_c);
        }
    }
    match sys.solve() {
        Some(sols) => Ok(Some(decode_hom(&sols.particular, &moduli, gk, dst))),
        None => Ok(None),
    }
}

/// The endomorphism ring End(M) presented as a FiniteRing, together with a
/// bijection between ring element indices and the underlying homomorphisms.
/// Multiplication is composition: (f * g)(x) = f(g(x)).
pub struct EndRing {
    pub ring: FiniteRing,
    /// Homomorphism realized by each ring element index.
    homs: Vec<ModuleHom>,
    index: HashMap<ModuleHom, u64>,
}

impl EndRing {
    pub fn hom(&self, idx: u64) -> &ModuleHom {
        &self.homs[idx as usize]
    }

    pub fn index_of_hom(&self, h: &ModuleHom) -> Option<u64> {
        self.index.get(h).copied()
    }

    pub fn order(&self) -> u64 {
        self.ring.order()
    }
}

impl std::fmt::Debug for EndRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EndRing")
            .field("ring", &self.ring.name)
            .field("order", &self.ring.order())
            .finish()
    }
}

/// Flattens a hom's matrix into a single coefficient vector over the ambient
/// group prod_g prod_l Z_{e_l}.
fn flatten(h: &ModuleHom, hk: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(h.matrix.len() * hk);
    for row in &h.matrix {
        out.extend_from_slice(row);
    }
    out
}

fn unflatten(v: &[u64], gk: usize, hk: usize) -> ModuleHom {
    ModuleHom {
        matrix: (0..gk).map(|g| v[g * hk..(g + 1) * hk].to_vec()).collect(),
    }
}

/// Builds End(M) as a validated FiniteRing with composition as the product.
pub fn end_ring(m: &FiniteModule, guards: &Guards) -> Result<EndRing> {
    let homs = hom_set(m, m, guards)?;
    if homs.len() > guards.max_end {
        return Err(Error::guard("endomorphism ring", homs.len(), guards.max_end));
    }
    let gk = m.rank();
    let mut ambient = Vec::with_capacity(gk * gk);
    for _ in 0..gk {
        ambient.extend_from_slice(&m.orders);
    }
    let flat: Vec<Vec<u64>> = homs.iter().map(|h| flatten(h, gk)).collect();
    let gb = subgroup_decomposition(&ambient, &flat);
    if gb.group_order() as usize != homs.len() {
        return Err(Error::InternalAssertion(
            "endomorphism additive group decomposition has wrong order".into(),
        ));
    }
    let mut coords: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for (c, e) in gb.enumerate(&ambient) {
        coords.insert(e, c);
    }
    let k = gb.orders.len();
    let basis_homs: Vec<ModuleHom> = gb.basis.iter().map(|v| unflatten(v, gk, gk)).collect();
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            // product = composition: (e_i e_j)(x) = e_i(e_j(x))
            let comp = basis_homs[i].compose(&basis_homs[j], m, m, m);
            let c = coords.get(&flatten(&comp, gk)).ok_or_else(|| {
                Error::InternalAssertion("endomorphisms not closed under composition".into())
            })?;
            structure[i][j] = c.clone();
        }
    }
    let one = coords
        .get(&flatten(&ModuleHom::identity(m), gk))
        .ok_or_else(|| Error::InternalAssertion("identity hom missing from hom set".into()))?
        .clone();
    let ring = build_ring(format!("End({})", m.name), gb.orders.clone(), structure, one)?;
    // realize every ring element as a hom, in ring index order
    let basis_gb = GroupBasis {
        basis: gb.basis.clone(),
        orders: gb.orders.clone(),
    };
    let mut by_index = vec![ModuleHom { matrix: vec![] }; ring.order() as usize];
    let mut index = HashMap::new();
    for idx in 0..ring.order() {
        let coeffs = ring.element(idx);
        let h = unflatten(&basis_gb.element(&coeffs, &ambient), gk, gk);
        index.insert(h.clone(), idx);
        by_index[idx as usize] = h;
    }
    Ok(EndRing {
        ring,
        homs: by_index,
        index,
    })
}

/// All module automorphisms of M, in canonical order. A finite-module
/// endomorphism is an automorphism iff it is injective.
pub fn aut_group(m: &FiniteModule, guards: &Guards) -> Result<Vec<ModuleHom>> {
    Ok(hom_set(m, m, guards)?
        .into_iter()
        .filter(|h| h.is_injective_map(m, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{direct_sum, quotient_module, regular_module, Submodule};
    use crate::ring::catalog::{cyclic_ring, field, matrix_ring};
    use std::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    /// Oracle: all candidate generator-image matrices, filtered by the
    /// exhaustive linearity check.
    fn brute_homs(src: &FiniteModule, dst: &FiniteModule) -> Vec<ModuleHom> {
        let gk = src.rank();
        let total: u64 = (0..gk).map(|_| dst.order()).product();
        let mut out = Vec::new();
        for mut idx in 0..total {
            let mut matrix = Vec::with_capacity(gk);
            for _ in 0..gk {
                matrix.push(dst.element(idx % dst.order()));
                idx /= dst.order();
            }
            let h = ModuleHom { matrix };
            if h.is_linear(src, dst) {
                out.push(h);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn homs_z2_into_z4() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let homs = hom_set(&z2, &m, &g()).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs, brute_homs(&z2, &m));
    }

    #[test]
    fn homs_match_brute_force_on_mixed_modules() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let s = direct_sum(&m, &z2).unwrap();
        for (a, b) in [(&s, &m), (&m, &s), (&s, &s), (&z2, &s)] {
            assert_eq!(hom_set(a, b, &g()).unwrap(), brute_homs(a, b), "{} -> {}", a.name, b.name);
        }
    }

    #[test]
    fn end_of_z2_over_z4_is_f2() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (z2, _) = quotient_module(&m, &sub, "Z2").unwrap();
        let e = end_ring(&z2, &g()).unwrap();
        assert_eq!(e.order(), 2);
        assert!(e.ring.is_commutative());
    }

    #[test]
    fn aut_of_regular_z4() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r);
        let auts = aut_group(&m, &g()).unwrap();
        // multiplication by 1 and by 3
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[0].matrix, vec![vec![1]]);
        assert_eq!(auts[1].matrix, vec![vec![3]]);
    }

    #[test]
    fn end_of_free_rank_two_is_matrix_ring() {
        let r = Arc::new(cyclic_ring(4).unwrap());
        let m = regular_module(r.clone());
        let s = direct_sum(&m, &m).unwrap();
        let e = end_ring(&s, &g()).unwrap();
        assert_eq!(e.order(), 256);
        assert!(!e.ring.is_commutative());
        // composition really is the ring product
        for i in [1u64, 5, 17, 130, 255] {
            for j in [2u64, 7, 33, 100, 254] {
                let prod = e.ring.mul_idx(i, j);
                let comp = e.hom(i).compose(e.hom(j), &s, &s, &s);
                assert_eq!(e.index_of_hom(&comp), Some(prod));
            }
        }
    }

    #[test]
    fn end_of_regular_module_has_ring_order() {
        for ring in [
            cyclic_ring(6).unwrap(),
            matrix_ring(&field(2).unwrap(), 2).unwrap(),
        ] {
            let order = ring.order();
            let units = ring.units().len();
            let m = regular_module(Arc::new(ring));
            let e = end_ring(&m, &g()).unwrap();
            // End(R_R) = left multiplications, one per ring element
            assert_eq!(e.order(), order);
            assert_eq!(e.ring.units().len(), units);
            let auts = aut_group(&m, &g()).unwrap();
            assert_eq!(auts.len(), units);
        }
    }
}
