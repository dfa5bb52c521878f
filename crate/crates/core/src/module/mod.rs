//! Finite right modules over finite rings: validated construction, direct
//! sums, submodules and quotients, and structure-preserving maps.

pub mod cover;
pub mod envelope;
pub mod homs;
pub mod iso;
pub mod lattice;

use crate::error::{Error, Result};
use crate::exactlin::{quotient_decomposition, subgroup_decomposition};
use crate::ring::{Elt, FiniteRing};
use std::sync::Arc;

/// A module element: coefficient vector over the module's additive
/// generators.
pub type MElt = Vec<u64>;

/// A finite right R-module, given by additive cyclic generators and the
/// action of the ring's additive basis on them.
#[derive(Clone)]
pub struct FiniteModule {
    pub ring: Arc<FiniteRing>,
    pub name: String,
    /// Additive orders of the module generators.
    pub orders: Vec<u64>,
    /// action[g][b] = coefficient vector of (generator g) * (ring basis b).
    action: Vec<Vec<MElt>>,
    order: u64,
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteModule")
            .field("name", &self.name)
            .field("ring", &self.ring.name)
            .field("orders", &self.orders)
            .finish()
    }
}

impl FiniteModule {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> MElt {
        vec![0; self.orders.len()]
    }

    pub fn is_zero(&self, x: &MElt) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &MElt, y: &MElt) -> MElt {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &MElt) -> MElt {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| (d - a) % d)
            .collect()
    }

    pub fn sub(&self, x: &MElt, y: &MElt) -> MElt {
        self.add(x, &self.neg(y))
    }

    pub fn scalar_mul(&self, c: u64, x: &MElt) -> MElt {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| ((c as u128 * a as u128) % d as u128) as u64)
            .collect()
    }

    /// Right action x * r, bilinear over the stored generator action.
    pub fn act(&self, x: &MElt, r: &Elt) -> MElt {
        let k = self.orders.len();
        let mut acc = vec![0u128; k];
        for (g, &xg) in x.iter().enumerate() {
            if xg == 0 {
                continue;
            }
            for (b, &rb) in r.iter().enumerate() {
                if rb == 0 {
                    continue;
                }
                let coef = xg as u128 * rb as u128;
                for (l, &a) in self.action[g][b].iter().enumerate() {
                    if a != 0 {
                        acc[l] += coef % self.orders[l] as u128 * a as u128;
                    }
                }
            }
        }
        acc.iter()
            .zip(&self.orders)
            .map(|(&v, &d)| (v % d as u128) as u64)
            .collect()
    }

    pub fn index_of(&self, x: &MElt) -> u64 {
        let mut idx = 0u64;
        for (c, d) in x.iter().zip(&self.orders) {
            idx = idx * d + c % d;
        }
        idx
    }

    pub fn element(&self, mut idx: u64) -> MElt {
        let mut out = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            out[i] = idx % self.orders[i];
            idx /= self.orders[i];
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = MElt> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn generator(&self, g: usize) -> MElt {
        let mut x = self.zero();
        x[g] = 1;
        x
    }

    /// Stored action of generator g on ring basis element b.
    pub fn generator_action(&self, g: usize, b: usize) -> &MElt {
        &self.action[g][b]
    }
}

/// Builds and validates a finite right module: the action must be well
/// defined (torsion compatible), associative over ring basis pairs, and
/// unital.
pub fn build_module(
    ring: Arc<FiniteRing>,
    name: impl Into<String>,
    orders: Vec<u64>,
    action: Vec<Vec<MElt>>,
) -> Result<FiniteModule> {
    let gk = orders.len();
    let rk = ring.rank();
    if orders.iter().any(|&d| d < 1) {
        return Err(Error::Spec("module generator orders must be >= 1".into()));
    }
    let mut order = 1u64;
    for &d in &orders {
        order = order
            .checked_mul(d)
            .ok_or_else(|| Error::Spec("module order overflows u64".into()))?;
    }
    if action.len() != gk
        || action.iter().any(|row| row.len() != rk)
        || action
            .iter()
            .flatten()
            .any(|v| v.len() != gk || v.iter().zip(&orders).any(|(&c, &d)| c >= d))
    {
        return Err(Error::Spec(
            "action constants must form a (generators x ring-basis) table of reduced vectors"
                .into(),
        ));
    }
    // torsion compatibility: ord(g) * (g.e_b) = 0 and d_b * (g.e_b) = 0
    for g in 0..gk {
        for b in 0..rk {
            for (l, &c) in action[g][b].iter().enumerate() {
                for side in [orders[g], ring.orders[b]] {
                    if (side as u128 * c as u128) % orders[l] as u128 != 0 {
                        return Err(Error::axiom(
                            "action bilinearity (torsion compatibility)",
                            format!("generator {g}, ring basis {b}, coordinate {l}"),
                        ));
                    }
                }
            }
        }
    }
    let module = FiniteModule {
        ring: ring.clone(),
        name: name.into(),
        orders,
        action,
        order,
    };
    // associativity (x.e_a).e_b = x.(e_a e_b) on generators and basis pairs
    for g in 0..gk {
        let xg = module.generator(g);
        for a in 0..rk {
            let ea = ring.basis_element(a);
            let xa = module.act(&xg, &ea);
            for b in 0..rk {
                let eb = ring.basis_element(b);
                let left = module.act(&xa, &eb);
                let right = module.act(&xg, &ring.mul(&ea, &eb));
                if left != right {
                    return Err(Error::axiom(
                        "action associativity",
                        format!("(x_{g} e_{a}) e_{b} != x_{g} (e_{a} e_{b})"),
                    ));
                }
            }
        }
    }
    // unital
    for g in 0..gk {
        let xg = module.generator(g);
        if module.act(&xg, &ring.one) != xg {
            return Err(Error::axiom("unital action", format!("x_{g} * 1 != x_{g}")));
        }
    }
    Ok(module)
}

/// The regular module R_R.
pub fn regular_module(ring: Arc<FiniteRing>) -> FiniteModule {
    let rk = ring.rank();
    let orders = ring.orders.clone();
    let mut action = vec![vec![Vec::new(); rk]; rk];
    for g in 0..rk {
        for b in 0..rk {
            action[g][b] = ring.basis_product(g, b).clone();
        }
    }
    let name = format!("{}_reg", ring.name);
    build_module(ring, name, orders, action).expect("regular module is a valid module")
}

/// External direct sum M (+) N.
pub fn direct_sum(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
    if !Arc::ptr_eq(&m.ring, &n.ring) && m.ring.name != n.ring.name {
        return Err(Error::PreconditionViolation(
            "direct sum needs modules over the same ring".into(),
        ));
    }
    let gm = m.rank();
    let gn = n.rank();
    let rk = m.ring.rank();
    let mut orders = m.orders.clone();
    orders.extend_from_slice(&n.orders);
    let mut action = vec![vec![vec![0u64; gm + gn]; rk]; gm + gn];
    for g in 0..gm {
        for b in 0..rk {
            for (l, &c) in m.action[g][b].iter().enumerate() {
                action[g][b][l] = c;
            }
        }
    }
    for g in 0..gn {
        for b in 0..rk {
            for (l, &c) in n.action[g][b].iter().enumerate() {
                action[gm + g][b][gm + l] = c;
            }
        }
    }
    build_module(
        m.ring.clone(),
        format!("{} (+) {}", m.name, n.name),
        orders,
        action,
    )
}

/// A submodule, stored as its sorted element-index list plus a canonical
/// independent additive generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    pub elements: Vec<u64>,
    pub generators: Vec<MElt>,
    pub generator_orders: Vec<u64>,
}

impl Submodule {
    pub fn from_elements(m: &FiniteModule, mut elements: Vec<u64>) -> Submodule {
        elements.sort_unstable();
        elements.dedup();
        let gens: Vec<MElt> = elements.iter().map(|&i| m.element(i)).collect();
        let gb = subgroup_decomposition(&m.orders, &gens);
        Submodule {
            elements,
            generators: gb.basis,
            generator_orders: gb.orders,
        }
    }

    /// Submodule generated by a set of elements: closure under addition and
    /// the ring action.
    pub fn generated(m: &FiniteModule, gens: &[MElt]) -> Submodule {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(0u64);
        let mut frontier: Vec<MElt> = vec![m.zero()];
        for g in gens {
            if seen.insert(m.index_of(g)) {
                frontier.push(g.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            for b in 0..m.ring.rank() {
                let y = m.act(&x, &m.ring.basis_element(b));
                if seen.insert(m.index_of(&y)) {
                    frontier.push(y);
                }
            }
            let cur: Vec<u64> = seen.iter().copied().collect();
            for &yi in &cur {
                let s = m.add(&x, &m.element(yi));
                if seen.insert(m.index_of(&s)) {
                    frontier.push(s);
                }
            }
        }
        Submodule::from_elements(m, seen.into_iter().collect())
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

    pub fn is_whole(&self, m: &FiniteModule) -> bool {
        self.elements.len() as u64 == m.order()
    }

    /// Exhaustive closure check under addition and the ring action.
    pub fn is_submodule(&self, m: &FiniteModule) -> bool {
        for &x in &self.elements {
            let ex = m.element(x);
            for b in 0..m.ring.rank() {
                if !self.contains(m.index_of(&m.act(&ex, &m.ring.basis_element(b)))) {
                    return false;
                }
            }
            for &y in &self.elements {
                if !self.contains(m.index_of(&m.add(&ex, &m.element(y)))) {
                    return false;
                }
            }
        }
        true
    }

    pub fn intersect(&self, other: &Submodule, m: &FiniteModule) -> Submodule {
        let set: Vec<u64> = self
            .elements
            .iter()
            .copied()
            .filter(|i| other.contains(*i))
            .collect();
        Submodule::from_elements(m, set)
    }

    pub fn sum(&self, other: &Submodule, m: &FiniteModule) -> Submodule {
        let mut out = Vec::new();
        for &x in &self.elements {
            for &y in &other.elements {
                out.push(m.index_of(&m.add(&m.element(x), &m.element(y))));
            }
        }
        Submodule::from_elements(m, out)
    }
}

/// Presents a submodule as a FiniteModule in its own right, together with
/// the embedding hom into the parent.
pub fn submodule_module(
    m: &FiniteModule,
    sub: &Submodule,
    name: impl Into<String>,
) -> Result<(FiniteModule, ModuleHom)> {
    let gens = &sub.generators;
    let gorders = &sub.generator_orders;
    let gk = gens.len();
    // coordinate lookup inside the submodule
    let gb = crate::exactlin::GroupBasis {
        basis: gens.clone(),
        orders: gorders.clone(),
    };
    let mut coords = std::collections::HashMap::new();
    for (c, e) in gb.enumerate(&m.orders) {
        coords.insert(e, c);
    }
    let rk = m.ring.rank();
    let mut action = vec![vec![Vec::new(); rk]; gk];
    for g in 0..gk {
        for b in 0..rk {
            let img = m.act(&gens[g], &m.ring.basis_element(b));
            let c = coords.get(&img).ok_or_else(|| {
                Error::InternalAssertion("submodule not closed under the action".into())
            })?;
            action[g][b] = c.clone();
        }
    }
    let module = build_module(m.ring.clone(), name, gorders.clone(), action)?;
    let embedding = ModuleHom {
        matrix: gens.clone(),
    };
    Ok((module, embedding))
}

/// Presents the quotient M/sub as a FiniteModule, together with the
/// projection hom from the parent.
pub fn quotient_module(
    m: &FiniteModule,
    sub: &Submodule,
    name: impl Into<String>,
) -> Result<(FiniteModule, ModuleHom)> {
    let gens: Vec<MElt> = sub.elements.iter().map(|&i| m.element(i)).collect();
    let q = quotient_decomposition(&m.orders, &gens);
    let new_orders = q.orders().to_vec();
    let gk = new_orders.len();
    let rk = m.ring.rank();
    let lift = &q.basis.basis;
    let mut action = vec![vec![Vec::new(); rk]; gk];
    for g in 0..gk {
        for b in 0..rk {
            let img = m.act(&lift[g], &m.ring.basis_element(b));
            action[g][b] = q.project(&img);
        }
    }
    let module = build_module(m.ring.clone(), name, new_orders, action)?;
    let projection = ModuleHom {
        matrix: (0..m.rank()).map(|g| q.project(&m.generator(g))).collect(),
    };
    Ok((module, projection))
}

/// A homomorphism of right modules, stored as the images of the source
/// module's generators. Linearity is established by the constructors
/// (constraint solving in `homs`), not re-checked on each use.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleHom {
    pub matrix: Vec<MElt>,
}

impl ModuleHom {
    pub fn identity(m: &FiniteModule) -> ModuleHom {
        ModuleHom {
            matrix: (0..m.rank()).map(|g| m.generator(g)).collect(),
        }
    }

    pub fn zero(src: &FiniteModule, dst: &FiniteModule) -> ModuleHom {
        ModuleHom {
            matrix: vec![dst.zero(); src.rank()],
        }
    }

    pub fn apply(&self, _src: &FiniteModule, dst: &FiniteModule, x: &MElt) -> MElt {
        let mut acc = dst.zero();
        for (g, &c) in x.iter().enumerate() {
            if c != 0 {
                acc = dst.add(&acc, &dst.scalar_mul(c, &self.matrix[g]));
            }
        }
        acc
    }

    /// self after other: x -> self(other(x)).
    pub fn compose(
        &self,
        other: &ModuleHom,
        _src: &FiniteModule,
        mid: &FiniteModule,
        dst: &FiniteModule,
    ) -> ModuleHom {
        ModuleHom {
            matrix: other
                .matrix
                .iter()
                .map(|img| self.apply(mid, dst, img))
                .collect(),
        }
    }

    pub fn image(&self, src: &FiniteModule, dst: &FiniteModule) -> Submodule {
        let elems: Vec<u64> = src
            .elements()
            .map(|x| dst.index_of(&self.apply(src, dst, &x)))
            .collect();
        Submodule::from_elements(dst, elems)
    }

    pub fn kernel(&self, src: &FiniteModule, dst: &FiniteModule) -> Submodule {
        let elems: Vec<u64> = src
            .elements()
            .filter(|x| dst.is_zero(&self.apply(src, dst, &src.element(src.index_of(x)))))
            .map(|x| src.index_of(&x))
            .collect();
        Submodule::from_elements(src, elems)
    }

    pub fn is_injective_map(&self, src: &FiniteModule, dst: &FiniteModule) -> bool {
        self.kernel(src, dst).is_zero()
    }

    pub fn is_surjective_map(&self, src: &FiniteModule, dst: &FiniteModule) -> bool {
        self.image(src, dst).is_whole(dst)
    }

    /// Exhaustive linearity re-check (used by verification suites).
    pub fn is_linear(&self, src: &FiniteModule, dst: &FiniteModule) -> bool {
        for g in 0..src.rank() {
            let xg = src.generator(g);
            for b in 0..src.ring.rank() {
                let eb = src.ring.basis_element(b);
                let lhs = self.apply(src, dst, &src.act(&xg, &eb));
                let rhs = dst.act(&self.apply(src, dst, &xg), &eb);
                if lhs != rhs {
                    return false;
                }
            }
            // additive well-definedness on generator orders
            let img = &self.matrix[g];
            if !dst.is_zero(&dst.scalar_mul(src.orders[g], img)) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog::cyclic_ring;

    fn z4() -> Arc<FiniteRing> {
        Arc::new(cyclic_ring(4).unwrap())
    }

    #[test]
    fn regular_module_z4() {
        let m = regular_module(z4());
        assert_eq!(m.order(), 4);
        assert_eq!(m.act(&vec![3], &vec![3]), vec![1]);
    }

    #[test]
    fn quotient_z4_by_2z4() {
        let m = regular_module(z4());
        let sub = Submodule::generated(&m, &[vec![2]]);
        assert_eq!(sub.elements, vec![0, 2]);
        let (q, p) = quotient_module(&m, &sub, "Z4/2").unwrap();
        assert_eq!(q.order(), 2);
        // projection is surjective with kernel = sub
        assert!(p.is_surjective_map(&m, &q));
        assert_eq!(p.kernel(&m, &q).elements, vec![0, 2]);
        // the Z_4 action on Z_2: x * 2 = 0
        let x = q.generator(0);
        assert!(q.is_zero(&q.act(&x, &vec![2])));
        assert_eq!(q.act(&x, &vec![3]), x);
    }

    #[test]
    fn direct_sum_order() {
        let m = regular_module(z4());
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (q, _) = quotient_module(&m, &sub, "Z4/2").unwrap();
        let s = direct_sum(&m, &q).unwrap();
        assert_eq!(s.order(), 8);
        assert!(s.elements().count() == 8);
    }

    #[test]
    fn submodule_module_roundtrip() {
        let m = regular_module(z4());
        let sub = Submodule::generated(&m, &[vec![2]]);
        let (s, u) = submodule_module(&m, &sub, "2Z4").unwrap();
        assert_eq!(s.order(), 2);
        assert!(u.is_injective_map(&s, &m));
        assert!(u.is_linear(&s, &m));
        assert_eq!(u.image(&s, &m).elements, sub.elements);
    }

    #[test]
    fn invalid_action_rejected() {
        // Z_4 acting on Z_2 with x*1 = x is fine; x*e where e has order 4
        // mapping to order-2 target is fine; break associativity instead:
        // g*e = g but claim g*(e*e) = 0 cannot be stated directly, so break
        // unitality: g*1 = 0.
        let r = z4();
        let err = build_module(r, "bad", vec![2], vec![vec![vec![0]]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }
}
