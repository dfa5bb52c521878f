//! Elementwise structural analysis of finite rings: units, the Jacobson
//! radical, regularity, self-injectivity (Baer criterion on the regular
//! module), idempotent lifting, exchange and clean predicates, unit-generated
//! subrings, and Z_2 quotients.

use super::{principal_right_ideal, right_ideals, subring_from_elements, Elt, FiniteRing, Ideal, Subring};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::exactlin::{gcd, CongruenceSystem};
use std::collections::HashSet;

impl FiniteRing {
    /// The unit group: (element index, inverse index) pairs in canonical
    /// (ascending index) order. Cached.
    pub fn units(&self) -> &[(u64, u64)] {
        self.units.get_or_init(|| {
            let n = self.order();
            let one = self.one_idx();
            let mut out = Vec::new();
            // find right inverses, then confirm two-sidedness (finite rings:
            // one-sided invertible implies invertible, but we verify anyway)
            for a in 0..n {
                let mut inv = None;
                for b in 0..n {
                    if self.mul_idx(a, b) == one && self.mul_idx(b, a) == one {
                        inv = Some(b);
                        break;
                    }
                }
                if let Some(b) = inv {
                    out.push((a, b));
                }
            }
            out
        })
    }

    /// Set of unit indices for O(1) membership tests. Cached.
    pub fn unit_set(&self) -> &HashSet<u64> {
        self.unit_set
            .get_or_init(|| self.units().iter().map(|&(a, _)| a).collect())
    }

    pub fn is_unit_idx(&self, a: u64) -> bool {
        self.unit_set().contains(&a)
    }

    pub fn inverse_idx(&self, a: u64) -> Option<u64> {
        self.units()
            .binary_search_by_key(&a, |&(x, _)| x)
            .ok()
            .map(|i| self.units()[i].1)
    }

    /// All idempotent element indices in canonical order. Cached.
    pub fn idempotents(&self) -> &[u64] {
        self.idempotents.get_or_init(|| {
            (0..self.order())
                .filter(|&a| self.mul_idx(a, a) == a)
                .collect()
        })
    }

    /// Jacobson radical J = {a : 1 - r*a is a unit for all r}. Cached.
    pub fn jacobson_radical(&self) -> &Ideal {
        self.radical.get_or_init(|| {
            let one = self.one_idx();
            let mut elems = Vec::new();
            'outer: for a in 0..self.order() {
                for r in 0..self.order() {
                    let t = self.add_idx(one, self.neg_idx(self.mul_idx(r, a)));
                    if !self.is_unit_idx(t) {
                        continue 'outer;
                    }
                }
                elems.push(a);
            }
            let ideal = Ideal::from_elements(self, elems);
            debug_assert!(ideal.is_two_sided_ideal(self));
            ideal
        })
    }

    /// True iff every a has a quasi-inverse x with a*x*a = a.
    pub fn is_von_neumann_regular(&self) -> bool {
        (0..self.order()).all(|a| {
            (0..self.order()).any(|x| self.mul_idx(self.mul_idx(a, x), a) == a)
        })
    }

    /// Regular with all idempotents central.
    pub fn is_abelian_regular(&self) -> bool {
        self.is_von_neumann_regular()
            && self.idempotents().iter().all(|&e| {
                (0..self.order()).all(|r| self.mul_idx(e, r) == self.mul_idx(r, e))
            })
    }

    /// Nilpotency index of an ideal: least m with I^m = 0, or None if the
    /// ideal is not nilpotent within |R| steps.
    pub fn nilpotency_index(&self, ideal: &Ideal) -> Option<usize> {
        let mut current: Vec<u64> = ideal.elements.clone();
        for m in 1..=(self.order() as usize) {
            if current == [0] {
                return Some(m);
            }
            // next power: additive closure of products x*y, x in current,
            // y in ideal
            let mut prods: HashSet<u64> = HashSet::new();
            for &x in &current {
                for &y in &ideal.elements {
                    prods.insert(self.mul_idx(x, y));
                }
            }
            let gens: Vec<Elt> = prods.iter().map(|&i| self.element(i)).collect();
            current = Ideal::additive_closure(self, &gens).elements;
        }
        if current == [0] {
            Some(self.order() as usize + 1)
        } else {
            None
        }
    }
}

/// All right-module homomorphisms from a right ideal I (with canonical
/// additive generators) into R_R, found by congruence solving, each returned
/// as the list of generator images. Never enumerates raw set maps.
pub fn ideal_homs(ring: &FiniteRing, ideal: &Ideal, guards: &Guards) -> Result<Vec<Vec<Elt>>> {
    let gens = &ideal.generators;
    let gorders = &ideal.generator_orders;
    let t = gens.len();
    let k = ring.rank();
    if t == 0 {
        return Ok(vec![vec![]]);
    }
    // coordinate lookup inside the ideal
    let gb = crate::exactlin::GroupBasis {
        basis: gens.clone(),
        orders: gorders.to_vec(),
    };
    let mut coords = std::collections::HashMap::new();
    for (c, e) in gb.enumerate(&ring.orders) {
        coords.insert(e, c);
    }
    // unknowns: image coordinate t_{i,l} of f(g_i) in ring coordinate l,
    // with natural order gcd(ord(g_i), d_l); actual coefficient is
    // t * (d_l / gcd)
    let mut moduli = Vec::with_capacity(t * k);
    for &m in gorders {
        for &d in &ring.orders {
            moduli.push(gcd(m, d));
        }
    }
    let mut sys = CongruenceSystem::new(moduli.clone());
    // R-linearity on generators: f(g_i * e_b) = f(g_i) * e_b for every ring
    // basis element e_b. Expand g_i * e_b in ideal coordinates, then equate
    // ring coordinates.
    for (i, g) in gens.iter().enumerate() {
        for b in 0..k {
            let gi_b = ring.mul(g, &ring.basis_element(b));
            let c = coords.get(&gi_b).ok_or_else(|| {
                Error::InternalAssertion("right ideal not closed under action".into())
            })?;
            // f(g_i * e_b) = sum_j c_j f(g_j); f(g_i) * e_b has coordinate l:
            // sum over ring coords m of f(g_i)_m * (e_m e_b)_l
            for l in 0..k {
                // build congruence mod d_l: LHS - RHS = 0
                let mut coeffs = vec![0u64; t * k];
                let d_l = ring.orders[l];
                // LHS: sum_j c_j * f(g_j)_l = sum_j c_j * (d_l/gcd_jl) t_{j,l}
                for (j, &cj) in c.iter().enumerate() {
                    let g_jl = moduli[j * k + l];
                    let step = d_l / g_jl;
                    coeffs[j * k + l] =
                        (coeffs[j * k + l] + (cj % d_l) * step) % d_l;
                }
                // RHS: sum_m f(g_i)_m * (e_m e_b)_l
                for m in 0..k {
                    let s = ring.basis_product(m, b)[l];
                    if s == 0 {
                        continue;
                    }
                    let g_im = moduli[i * k + m];
                    let step = ring.orders[m] / g_im;
                    // f(g_i)_m = step_m * t_{i,m} as an integer lift; its
                    // contribution mod d_l is s * step_m * t_{i,m}
                    let coef = ((s as u128 * step as u128) % d_l as u128) as u64;
                    // subtract: add d_l - coef
                    coeffs[i * k + m] =
                        (coeffs[i * k + m] + d_l - coef % d_l) % d_l;
                }
                // well-definedness needs d_l | coeff * modulus for each
                // unknown; our coefficients are multiples of the right steps
                // by construction
                sys.add_constraint(coeffs, 0, d_l);
            }
        }
    }
    let sols = match sys.solve() {
        Some(s) => s,
        None => return Ok(vec![]),
    };
    let all = sols
        .enumerate(guards.max_solutions)
        .ok_or_else(|| Error::guard("ideal hom enumeration", guards.max_solutions + 1, guards.max_solutions))?;
    let mut out = Vec::with_capacity(all.len());
    for sol in all {
        let mut images = Vec::with_capacity(t);
        for i in 0..t {
            let mut img = vec![0u64; k];
            for l in 0..k {
                let g_il = moduli[i * k + l];
                let step = ring.orders[l] / g_il;
                img[l] = (sol[i * k + l] * step) % ring.orders[l];
            }
            images.push(img);
        }
        out.push(images);
    }
    out.sort();
    Ok(out)
}

/// Baer criterion on the regular module: R is right self-injective iff every
/// hom from every right ideal into R_R extends to R_R, i.e. is given by left
/// multiplication by some ring element.
pub fn is_right_self_injective(ring: &FiniteRing, guards: &Guards) -> Result<bool> {
    if ring.order() as usize > guards.max_ring {
        return Err(Error::guard(
            "self-injectivity scan",
            ring.order() as usize,
            guards.max_ring,
        ));
    }
    let ideals = right_ideals(ring, guards.max_ring)?;
    for ideal in &ideals {
        for hom in ideal_homs(ring, ideal, guards)? {
            // extension = left multiplication by c with c*g_i = f(g_i)
            let extends = (0..ring.order()).any(|c| {
                let ce = ring.element(c);
                ideal
                    .generators
                    .iter()
                    .zip(&hom)
                    .all(|(g, img)| &ring.mul(&ce, g) == img)
            });
            if !extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lifts x with x^2 - x in the nil ideal N to an exact idempotent e with
/// e - x in N, via the iteration x <- 3x^2 - 2x^3.
pub fn lift_idempotent(ring: &FiniteRing, x: &Elt, nil: &Ideal) -> Result<Elt> {
    let defect = ring.sub(&ring.mul(x, x), x);
    if !nil.contains(ring.index_of(&defect)) {
        return Err(Error::PreconditionViolation(
            "x^2 - x is not in the given nil ideal".into(),
        ));
    }
    let mut e = x.clone();
    for _ in 0..=ring.order() {
        if ring.mul(&e, &e) == e {
            let diff = ring.sub(&e, x);
            if !nil.contains(ring.index_of(&diff)) {
                return Err(Error::InternalAssertion(
                    "idempotent lift drifted out of the nil ideal".into(),
                ));
            }
            return Ok(e);
        }
        let e2 = ring.mul(&e, &e);
        let e3 = ring.mul(&e2, &e);
        // 3e^2 - 2e^3
        e = ring.sub(
            &ring.add(&ring.add(&e2, &e2), &e2),
            &ring.add(&e3, &e3),
        );
    }
    Err(Error::PreconditionViolation(
        "iteration did not stabilize: ideal is not nil".into(),
    ))
}

/// Exchange predicate: for every a there is an idempotent e in aR with
/// 1 - e in (1-a)R. Returns per-element witnesses (a, e).
pub fn exchange_witnesses(ring: &FiniteRing) -> Option<Vec<(u64, u64)>> {
    let one = ring.one_idx();
    let mut out = Vec::with_capacity(ring.order() as usize);
    for a in 0..ring.order() {
        let ar = principal_right_ideal(ring, a);
        let complement = ring.add_idx(one, ring.neg_idx(a));
        let car = principal_right_ideal(ring, complement);
        let mut found = None;
        for &e in ring.idempotents() {
            let co_e = ring.add_idx(one, ring.neg_idx(e));
            if ar.contains(e) && car.contains(co_e) {
                found = Some(e);
                break;
            }
        }
        match found {
            Some(e) => out.push((a, e)),
            None => return None,
        }
    }
    Some(out)
}

pub fn is_exchange_ring(ring: &FiniteRing) -> bool {
    exchange_witnesses(ring).is_some()
}

/// Clean decomposition a = e + u with e idempotent, u a unit; returns the
/// lexicographically least witness (by e index) or None.
pub fn clean_decomposition(ring: &FiniteRing, a: &Elt) -> Option<(Elt, Elt)> {
    let ai = ring.index_of(a);
    for &e in ring.idempotents() {
        let u = ring.add_idx(ai, ring.neg_idx(e));
        if ring.is_unit_idx(u) {
            return Some((ring.element(e), ring.element(u)));
        }
    }
    None
}

/// The subring generated by the units of S (equivalently, the set of finite
/// sums of units, plus zero): closure of units ∪ {0} under addition and
/// multiplication, with the ambient identity.
pub fn unit_generated_subring(ring: &FiniteRing) -> Result<Subring> {
    let mut seen: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
    seen.insert(ring.index_of(&ring.zero()));
    for &(u, _) in ring.units() {
        seen.insert(u);
    }
    loop {
        let cur: Vec<u64> = seen.iter().copied().collect();
        let before = seen.len();
        for &a in &cur {
            for &b in &cur {
                seen.insert(ring.add_idx(a, b));
                seen.insert(ring.mul_idx(a, b));
            }
        }
        if seen.len() == before {
            break;
        }
    }
    subring_from_elements(
        ring,
        format!("units<{}>", ring.name),
        seen.into_iter().collect(),
        &ring.one(),
    )
}

/// Whether S has a ring quotient isomorphic to Z_2; if so, returns the
/// witness ideal (kernel). Index-2 additive subgroups are kernels of nonzero
/// additive characters to Z_2 vanishing on odd-order generators.
pub fn has_z2_quotient(ring: &FiniteRing) -> Option<Ideal> {
    let k = ring.rank();
    // character values on generators: 1 allowed only where the generator has
    // even order
    let even: Vec<usize> = (0..k).filter(|&i| ring.orders[i] % 2 == 0).collect();
    if even.is_empty() {
        return None;
    }
    let mut best: Option<Ideal> = None;
    for mask in 1u64..(1 << even.len()) {
        let chi = |e: &Elt| -> u64 {
            let mut s = 0u64;
            for (bit, &i) in even.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    s += e[i];
                }
            }
            s % 2
        };
        if chi(&ring.one) != 0 {
            // kernel H with 1 not in H
            let elems: Vec<u64> = (0..ring.order())
                .filter(|&i| chi(&ring.element(i)) == 0)
                .collect();
            let ideal = Ideal::from_elements(ring, elems);
            if ideal.is_two_sided_ideal(ring) {
                match &best {
                    Some(b) if b.elements <= ideal.elements => {}
                    _ => best = Some(ideal),
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog::*;

    #[test]
    fn units_of_small_rings() {
        let z6 = cyclic_ring(6).unwrap();
        let u: Vec<u64> = z6.units().iter().map(|&(a, _)| a).collect();
        assert_eq!(u, vec![1, 5]);

        let m2f2 = matrix_ring(&field(2).unwrap(), 2).unwrap();
        assert_eq!(m2f2.units().len(), 6);

        let f2xf2 = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let u: Vec<u64> = f2xf2.units().iter().map(|&(a, _)| a).collect();
        assert_eq!(u, vec![f2xf2.index_of(&vec![1, 1])]);
    }

    #[test]
    fn radical_examples() {
        let z4 = cyclic_ring(4).unwrap();
        assert_eq!(z4.jacobson_radical().elements, vec![0, 2]);

        let m2f2 = matrix_ring(&field(2).unwrap(), 2).unwrap();
        assert_eq!(m2f2.jacobson_radical().elements, vec![0]);

        let ut = upper_triangular_ring(&field(2).unwrap(), 2).unwrap();
        assert_eq!(ut.jacobson_radical().len(), 2);
    }

    #[test]
    fn radical_brute_force_cross_check() {
        // definitional brute force over all pairs, on a few rings
        for ring in [
            cyclic_ring(6).unwrap(),
            cyclic_ring(8).unwrap(),
            upper_triangular_ring(&field(2).unwrap(), 2).unwrap(),
            f2_dual_numbers().unwrap(),
        ] {
            let brute: Vec<u64> = (0..ring.order())
                .filter(|&a| {
                    (0..ring.order()).all(|r| {
                        let t = ring
                            .add_idx(ring.one_idx(), ring.neg_idx(ring.mul_idx(r, a)));
                        ring.is_unit_idx(t)
                    })
                })
                .collect();
            assert_eq!(ring.jacobson_radical().elements, brute, "{}", ring.name);
        }
    }

    #[test]
    fn regularity() {
        assert!(cyclic_ring(6).unwrap().is_von_neumann_regular());
        assert!(!cyclic_ring(4).unwrap().is_von_neumann_regular());
        let m2f3 = matrix_ring(&field(3).unwrap(), 2).unwrap();
        assert!(m2f3.is_von_neumann_regular());
        assert!(!m2f3.is_abelian_regular());
        assert!(cyclic_ring(6).unwrap().is_abelian_regular());
    }

    #[test]
    fn regular_iff_semisimple_cross_check() {
        for ring in [
            cyclic_ring(4).unwrap(),
            cyclic_ring(6).unwrap(),
            cyclic_ring(9).unwrap(),
            field(4).unwrap(),
            upper_triangular_ring(&field(2).unwrap(), 2).unwrap(),
            matrix_ring(&field(2).unwrap(), 2).unwrap(),
        ] {
            assert_eq!(
                ring.is_von_neumann_regular(),
                ring.jacobson_radical().is_zero(),
                "{}",
                ring.name
            );
        }
    }

    #[test]
    fn self_injectivity() {
        let g = Guards::default();
        assert!(is_right_self_injective(&cyclic_ring(4).unwrap(), &g).unwrap());
        let f2xf2 = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        assert!(is_right_self_injective(&f2xf2, &g).unwrap());
        let ut = upper_triangular_ring(&field(2).unwrap(), 2).unwrap();
        assert!(!is_right_self_injective(&ut, &g).unwrap());
    }

    #[test]
    fn lift_idempotent_z4() {
        let z4 = cyclic_ring(4).unwrap();
        let j = z4.jacobson_radical().clone();
        let e = lift_idempotent(&z4, &vec![3], &j).unwrap();
        assert_eq!(e, vec![1]);
        // already idempotent: unchanged
        let e = lift_idempotent(&z4, &vec![0], &j).unwrap();
        assert_eq!(e, vec![0]);
    }

    #[test]
    fn lift_idempotent_upper_triangular() {
        let ut = upper_triangular_ring(&field(2).unwrap(), 2).unwrap();
        let j = ut.jacobson_radical().clone();
        // x = e11 + e12 (positions ordered (0,0),(0,1),(1,1))
        let x = vec![1, 1, 0];
        let e = lift_idempotent(&ut, &x, &j).unwrap();
        assert_eq!(ut.mul(&e, &e), e);
        assert!(j.contains(ut.index_of(&ut.sub(&e, &x))));
    }

    #[test]
    fn exchange_and_clean() {
        let z4 = cyclic_ring(4).unwrap();
        assert!(is_exchange_ring(&z4));
        let (e, u) = clean_decomposition(&z4, &vec![2]).unwrap();
        assert_eq!(z4.add(&e, &u), vec![2]);
        assert_eq!(z4.mul(&e, &e), e);
        assert!(z4.is_unit_idx(z4.index_of(&u)));

        let z6 = cyclic_ring(6).unwrap();
        assert!(is_exchange_ring(&z6));
        let (e, u) = clean_decomposition(&z6, &vec![3]).unwrap();
        assert_eq!(z6.add(&e, &u), vec![3]);
        assert!(z6.is_unit_idx(z6.index_of(&u)));

        let f2 = field(2).unwrap();
        let (e, u) = clean_decomposition(&f2, &vec![0]).unwrap();
        assert_eq!((e, u), (vec![1], vec![1]));
    }

    #[test]
    fn unit_generated_subrings() {
        let f2xf2 = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let s = unit_generated_subring(&f2xf2).unwrap();
        assert_eq!(s.ring.order(), 2);

        let m2f2 = matrix_ring(&field(2).unwrap(), 2).unwrap();
        let s = unit_generated_subring(&m2f2).unwrap();
        assert_eq!(s.ring.order(), 16);

        let z6 = cyclic_ring(6).unwrap();
        let s = unit_generated_subring(&z6).unwrap();
        assert_eq!(s.ring.order(), 6);
    }

    #[test]
    fn z2_quotients() {
        let z6 = cyclic_ring(6).unwrap();
        let w = has_z2_quotient(&z6).unwrap();
        assert_eq!(w.elements, vec![0, 2, 4]);

        let m2f3 = matrix_ring(&field(3).unwrap(), 2).unwrap();
        assert!(has_z2_quotient(&m2f3).is_none());

        let f2xm2f2 = product_ring(
            &field(2).unwrap(),
            &matrix_ring(&field(2).unwrap(), 2).unwrap(),
        )
        .unwrap();
        let w = has_z2_quotient(&f2xm2f2).unwrap();
        assert_eq!(w.len(), 16); // 0 x M_2(F_2)
    }

    #[test]
    fn ideal_homs_cross_check_brute_force() {
        // homs from the ideal {0,2} of Z_4 into Z_4: brute-force additive
        // maps filtered by linearity
        let z4 = cyclic_ring(4).unwrap();
        let ideal = Ideal::from_elements(&z4, vec![0, 2]);
        let homs = ideal_homs(&z4, &ideal, &Guards::default()).unwrap();
        // generator is 2 with order 2; images must satisfy 2*f(2) = 0 and
        // f(2*r) = f(2)*r: f(2) in {0, 2}
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[0], vec![vec![0]]);
        assert_eq!(homs[1], vec![vec![2]]);
    }
}
