//! Finite unital associative rings presented by additive cyclic factors and
//! multiplication structure constants.

pub mod analysis;
pub mod catalog;
pub mod subrings;
pub mod unitsum;
pub mod wedderburn;

use crate::error::{Error, Result};
use crate::exactlin::subgroup_decomposition;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A ring element, as a coefficient vector over the ring's additive cyclic
/// factors (coefficient i reduced modulo `orders[i]`).
pub type Elt = Vec<u64>;

/// Rings at or below this order memoize their full multiplication table.
const MULT_TABLE_THRESHOLD: u64 = 1024;

/// A finite unital associative ring. The additive group is
/// Z_{d_1} x ... x Z_{d_k}; multiplication is the bilinear extension of the
/// basis products stored in `structure`.
pub struct FiniteRing {
    pub name: String,
    /// Additive orders d_1..d_k of the cyclic factors.
    pub orders: Vec<u64>,
    /// structure[i][j] = coefficient vector of e_i * e_j.
    structure: Vec<Vec<Elt>>,
    pub one: Elt,
    order: u64,
    characteristic: u64,
    mult_table: OnceLock<Option<Vec<u64>>>,
    units: OnceLock<Vec<(u64, u64)>>,
    unit_set: OnceLock<std::collections::HashSet<u64>>,
    idempotents: OnceLock<Vec<u64>>,
    radical: OnceLock<Ideal>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("orders", &self.orders)
            .field("one", &self.one)
            .finish()
    }
}

impl FiniteRing {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Elt {
        vec![0; self.orders.len()]
    }

    pub fn one(&self) -> Elt {
        self.one.clone()
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: u64, a: &Elt) -> Elt {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| ((c as u128 * x as u128) % d as u128) as u64)
            .collect()
    }

    /// Bilinear product from structure constants.
    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let k = self.orders.len();
        let mut acc = vec![0u128; k];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                if b[j] == 0 {
                    continue;
                }
                let coef = a[i] as u128 * b[j] as u128;
                let prod = &self.structure[i][j];
                for l in 0..k {
                    if prod[l] != 0 {
                        acc[l] += coef % self.orders[l] as u128 * prod[l] as u128;
                    }
                }
            }
        }
        acc.iter()
            .zip(&self.orders)
            .map(|(&v, &d)| (v % d as u128) as u64)
            .collect()
    }

    /// Lexicographic index of a coefficient tuple (first coordinate most
    /// significant, so index order equals lexicographic tuple order).
    pub fn index_of(&self, a: &Elt) -> u64 {
        let mut idx = 0u64;
        for (c, d) in a.iter().zip(&self.orders) {
            idx = idx * d + c % d;
        }
        idx
    }

    pub fn element(&self, mut idx: u64) -> Elt {
        let mut out = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            out[i] = idx % self.orders[i];
            idx /= self.orders[i];
        }
        out
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    fn mult_table(&self) -> Option<&Vec<u64>> {
        self.mult_table
            .get_or_init(|| {
                if self.order > MULT_TABLE_THRESHOLD {
                    return None;
                }
                let n = self.order as usize;
                let mut t = vec![0u64; n * n];
                for i in 0..n {
                    let a = self.element(i as u64);
                    for j in 0..n {
                        let b = self.element(j as u64);
                        t[i * n + j] = self.index_of(&self.mul(&a, &b));
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    pub fn mul_idx(&self, i: u64, j: u64) -> u64 {
        if let Some(t) = self.mult_table() {
            t[(i * self.order + j) as usize]
        } else {
            self.index_of(&self.mul(&self.element(i), &self.element(j)))
        }
    }

    pub fn add_idx(&self, i: u64, j: u64) -> u64 {
        self.index_of(&self.add(&self.element(i), &self.element(j)))
    }

    pub fn neg_idx(&self, i: u64) -> u64 {
        self.index_of(&self.neg(&self.element(i)))
    }

    pub fn one_idx(&self) -> u64 {
        self.index_of(&self.one)
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.orders.len();
        for i in 0..k {
            for j in 0..i {
                if self.structure[i][j] != self.structure[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Basis product e_i * e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &Elt {
        &self.structure[i][j]
    }

    /// The i-th additive basis element.
    pub fn basis_element(&self, i: usize) -> Elt {
        let mut e = self.zero();
        e[i] = 1;
        e
    }
}

/// Builds and validates a finite ring from additive orders, structure
/// constants and an identity candidate. Checks: well-definedness of the
/// bilinear extension, associativity on all basis triples, and the identity
/// laws on all basis elements.
pub fn build_ring(
    name: impl Into<String>,
    orders: Vec<u64>,
    structure: Vec<Vec<Elt>>,
    one: Elt,
) -> Result<FiniteRing> {
    let k = orders.len();
    if k == 0 {
        return Err(Error::axiom("unital ring with 1 != 0", "empty additive group"));
    }
    if orders.iter().any(|&d| d < 2) {
        return Err(Error::axiom(
            "additive cyclic factors have order >= 2",
            format!("orders {orders:?}"),
        ));
    }
    let mut order: u64 = 1;
    for &d in &orders {
        order = order
            .checked_mul(d)
            .ok_or_else(|| Error::Spec("ring order overflows u64".into()))?;
    }
    if structure.len() != k
        || structure.iter().any(|row| row.len() != k)
        || structure
            .iter()
            .flatten()
            .any(|c| c.len() != k || c.iter().zip(&orders).any(|(&x, &d)| x >= d))
    {
        return Err(Error::Spec(
            "structure constants must form a k x k table of reduced coefficient vectors".into(),
        ));
    }
    if one.len() != k || one.iter().zip(&orders).any(|(&x, &d)| x >= d) {
        return Err(Error::Spec("identity candidate not a reduced coefficient vector".into()));
    }

    // Well-definedness of the bilinear extension: d_i * (e_i e_j) and
    // d_j * (e_i e_j) must vanish coordinatewise.
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let c = structure[i][j][l];
                for side in [orders[i], orders[j]] {
                    if (side as u128 * c as u128) % orders[l] as u128 != 0 {
                        return Err(Error::axiom(
                            "bilinearity (torsion compatibility of structure constants)",
                            format!("e_{i} * e_{j} coordinate {l}"),
                        ));
                    }
                }
            }
        }
    }

    let ring = FiniteRing {
        name: name.into(),
        orders,
        structure,
        one,
        order,
        characteristic: 0,
        mult_table: OnceLock::new(),
        units: OnceLock::new(),
        unit_set: OnceLock::new(),
        idempotents: OnceLock::new(),
        radical: OnceLock::new(),
    };

    // Associativity on basis triples (bilinearity extends it to all elements).
    for i in 0..k {
        let ei = ring.basis_element(i);
        for j in 0..k {
            let ej = ring.basis_element(j);
            let eij = ring.mul(&ei, &ej);
            for l in 0..k {
                let el = ring.basis_element(l);
                let left = ring.mul(&eij, &el);
                let right = ring.mul(&ei, &ring.mul(&ej, &el));
                if left != right {
                    return Err(Error::axiom(
                        "associativity",
                        format!("(e_{i} e_{j}) e_{l} != e_{i} (e_{j} e_{l})"),
                    ));
                }
            }
        }
    }

    // Identity laws on basis elements.
    if ring.is_zero(&ring.one) {
        return Err(Error::axiom("unital ring with 1 != 0", "identity = 0"));
    }
    for i in 0..k {
        let ei = ring.basis_element(i);
        if ring.mul(&ring.one, &ei) != ei || ring.mul(&ei, &ring.one) != ei {
            return Err(Error::axiom("two-sided identity", format!("on basis element e_{i}")));
        }
    }

    // Characteristic: additive order of 1.
    let mut ch = 1u64;
    let mut acc = ring.one.clone();
    while !ring.is_zero(&acc) {
        acc = ring.add(&acc, &ring.one);
        ch += 1;
    }
    let mut ring = ring;
    ring.characteristic = ch;
    Ok(ring)
}

/// A two-sided ideal (or, where noted by the constructor used, a one-sided
/// ideal) stored as its full sorted element-index list plus a canonical
/// independent additive generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    /// Sorted indices of all elements.
    pub elements: Vec<u64>,
    /// Canonical independent additive generators (coefficient vectors).
    pub generators: Vec<Elt>,
    /// Additive orders of the canonical generators.
    pub generator_orders: Vec<u64>,
}

impl Ideal {
    /// Builds the additive-subgroup record from an element set; the caller
    /// guarantees closure properties.
    pub fn from_elements(ring: &FiniteRing, mut elements: Vec<u64>) -> Ideal {
        elements.sort_unstable();
        elements.dedup();
        let gens: Vec<Elt> = elements.iter().map(|&i| ring.element(i)).collect();
        let gb = subgroup_decomposition(&ring.orders, &gens);
        Ideal {
            elements,
            generators: gb.basis,
            generator_orders: gb.orders,
        }
    }

    /// Additive closure of `gens` inside the ring (no multiplicative
    /// closure applied).
    pub fn additive_closure(ring: &FiniteRing, gens: &[Elt]) -> Ideal {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(ring.index_of(&ring.zero()));
        let mut frontier: Vec<Elt> = vec![ring.zero()];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = ring.add(&v, g);
                if seen.insert(ring.index_of(&w)) {
                    frontier.push(w);
                }
            }
        }
        Ideal::from_elements(ring, seen.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.elements == [0]
    }

    /// Checks two-sided ideal closure exhaustively.
    pub fn is_two_sided_ideal(&self, ring: &FiniteRing) -> bool {
        for &h in &self.elements {
            for b in 0..ring.rank() {
                let eb = ring.index_of(&ring.basis_element(b));
                if !self.contains(ring.mul_idx(h, eb)) || !self.contains(ring.mul_idx(eb, h)) {
                    return false;
                }
            }
            // additive closure
            for &h2 in &self.elements {
                if !self.contains(ring.add_idx(h, h2)) {
                    return false;
                }
            }
        }
        true
    }

    /// Right-ideal closure: additive plus right multiplication.
    pub fn is_right_ideal(&self, ring: &FiniteRing) -> bool {
        for &h in &self.elements {
            for b in 0..ring.rank() {
                let eb = ring.index_of(&ring.basis_element(b));
                if !self.contains(ring.mul_idx(h, eb)) {
                    return false;
                }
            }
            for &h2 in &self.elements {
                if !self.contains(ring.add_idx(h, h2)) {
                    return false;
                }
            }
        }
        true
    }
}

/// The principal right ideal a*R, as an Ideal record (right ideal, not
/// necessarily two-sided).
pub fn principal_right_ideal(ring: &FiniteRing, a: u64) -> Ideal {
    let mut elems: Vec<u64> = (0..ring.order()).map(|r| ring.mul_idx(a, r)).collect();
    elems.sort_unstable();
    elems.dedup();
    Ideal::from_elements(ring, elems)
}

/// All right ideals of the ring, canonically ordered by (size, element list).
/// Computed as the closure of principal right ideals under pairwise sum.
pub fn right_ideals(ring: &FiniteRing, guard: usize) -> Result<Vec<Ideal>> {
    let mut seen: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<u64>> = Vec::new();
    for a in 0..ring.order() {
        let i = principal_right_ideal(ring, a);
        if seen.insert(i.elements.clone()) {
            frontier.push(i.elements);
        }
        if seen.len() > guard {
            return Err(Error::guard("right-ideal enumeration", seen.len(), guard));
        }
    }
    let base: Vec<Vec<u64>> = seen.iter().cloned().collect();
    while let Some(cur) = frontier.pop() {
        for b in &base {
            // sum ideal: additive closure of union (both are right ideals, so
            // the sum is just the set of pairwise sums)
            let mut sum: Vec<u64> = Vec::new();
            for &x in &cur {
                for &y in b {
                    sum.push(ring.add_idx(x, y));
                }
            }
            sum.sort_unstable();
            sum.dedup();
            if seen.insert(sum.clone()) {
                if seen.len() > guard {
                    return Err(Error::guard("right-ideal enumeration", seen.len(), guard));
                }
                frontier.push(sum);
            }
        }
    }
    let mut out: Vec<Ideal> = seen
        .into_iter()
        .map(|e| Ideal::from_elements(ring, e))
        .collect();
    out.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    Ok(out)
}

/// A subring of an ambient ring, with its own FiniteRing presentation and an
/// embedding back into the ambient ring.
pub struct Subring {
    pub ring: FiniteRing,
    /// Ambient coefficient vector of each subring basis element.
    pub embedding: Vec<Elt>,
    /// Sorted ambient element indices of the subring's elements.
    pub elements: Vec<u64>,
    /// Ambient element realizing the subring identity.
    pub identity: Elt,
}

impl Subring {
    /// Ambient image of a subring element.
    pub fn embed(&self, ambient: &FiniteRing, a: &Elt) -> Elt {
        let mut out = ambient.zero();
        for (c, b) in a.iter().zip(&self.embedding) {
            out = ambient.add(&out, &ambient.scalar_mul(*c, b));
        }
        out
    }
}

/// Presents a multiplicatively closed additive subgroup (with the given
/// identity element) of `ambient` as a FiniteRing in its own right.
///
/// `elements` must be the full sorted index list, closed under addition and
/// multiplication, containing `identity` which must be a two-sided identity
/// for the subset.
pub fn subring_from_elements(
    ambient: &FiniteRing,
    name: impl Into<String>,
    elements: Vec<u64>,
    identity: &Elt,
) -> Result<Subring> {
    let gens: Vec<Elt> = elements.iter().map(|&i| ambient.element(i)).collect();
    let gb = subgroup_decomposition(&ambient.orders, &gens);
    // coordinate lookup: ambient element -> coefficient tuple
    let mut coords: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for (c, e) in gb.enumerate(&ambient.orders) {
        coords.insert(e, c);
    }
    if coords.len() != elements.len() {
        return Err(Error::InternalAssertion(format!(
            "subring basis enumerates {} elements, expected {}",
            coords.len(),
            elements.len()
        )));
    }
    let k = gb.orders.len();
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let p = ambient.mul(&gb.basis[i], &gb.basis[j]);
            let c = coords.get(&p).ok_or_else(|| {
                Error::InternalAssertion("subring not multiplicatively closed".into())
            })?;
            structure[i][j] = c.clone();
        }
    }
    let one_coords = coords
        .get(identity)
        .ok_or_else(|| Error::InternalAssertion("subring identity not in subring".into()))?
        .clone();
    let ring = build_ring(name, gb.orders.clone(), structure, one_coords)?;
    Ok(Subring {
        ring,
        embedding: gb.basis,
        elements,
        identity: identity.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog::*;

    #[test]
    fn cyclic_ring_z6() {
        let r = cyclic_ring(6).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.characteristic(), 6);
        assert_eq!(r.mul(&vec![2], &vec![5]), vec![4]);
        assert!(r.is_commutative());
    }

    #[test]
    fn matrix_ring_m2f2_order_16() {
        let r = matrix_ring(&field(2).unwrap(), 2).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.characteristic(), 2);
        assert!(!r.is_commutative());
    }

    #[test]
    fn non_associative_table_rejected() {
        // 1-dim table over Z_2 with e*e = e is fine; over Z_4 with e*e = 2e
        // we get (ee)e = 2e*e... pick a genuinely broken 2-dim table.
        let orders = vec![2, 2];
        // e0 = identity, e1*e1 = e0 but e1*e0 = 0 breaks identity/associativity
        let structure = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 0], vec![1, 0]],
        ];
        let err = build_ring("bad", orders, structure, vec![1, 0]).unwrap_err();
        match err {
            Error::AxiomViolation { .. } => {}
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let r = matrix_ring(&field(2).unwrap(), 2).unwrap();
        let mut prev: Option<Elt> = None;
        for i in 0..r.order() {
            let e = r.element(i);
            assert_eq!(r.index_of(&e), i);
            if let Some(p) = prev {
                assert!(p < e);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn principal_right_ideal_z4() {
        let r = cyclic_ring(4).unwrap();
        let i = principal_right_ideal(&r, 2);
        assert_eq!(i.elements, vec![0, 2]);
        assert!(i.is_two_sided_ideal(&r));
    }

    #[test]
    fn right_ideals_of_z4() {
        let r = cyclic_ring(4).unwrap();
        let ideals = right_ideals(&r, 1000).unwrap();
        assert_eq!(ideals.len(), 3);
        assert_eq!(ideals[0].elements, vec![0]);
        assert_eq!(ideals[1].elements, vec![0, 2]);
        assert_eq!(ideals[2].elements, vec![0, 1, 2, 3]);
    }

    #[test]
    fn subring_roundtrip() {
        // diagonal subring of M_2(F_2)
        let m = matrix_ring(&field(2).unwrap(), 2).unwrap();
        let mut elems = Vec::new();
        for a in 0..2u64 {
            for d in 0..2u64 {
                elems.push(m.index_of(&vec![a, 0, 0, d]));
            }
        }
        elems.sort_unstable();
        let s = subring_from_elements(&m, "diag", elems, &m.one()).unwrap();
        assert_eq!(s.ring.order(), 4);
        assert!(s.ring.is_commutative());
        // embedding respects multiplication
        for a in 0..s.ring.order() {
            for b in 0..s.ring.order() {
                let ea = s.ring.element(a);
                let eb = s.ring.element(b);
                let inside = s.embed(&m, &s.ring.mul(&ea, &eb));
                let outside = m.mul(&s.embed(&m, &ea), &s.embed(&m, &eb));
                assert_eq!(inside, outside);
            }
        }
    }
}
