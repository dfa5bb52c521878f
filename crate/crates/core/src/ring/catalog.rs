//! Standard ring constructions: cyclic rings, small finite fields, matrix
//! rings, products, upper-triangular rings, quotients, and group algebras of
//! small abelian groups. Every construction goes through `build_ring`, so
//! the ring axioms are re-validated on each instance.

use super::{build_ring, subring_from_elements, Elt, FiniteRing, Ideal};
use crate::error::{Error, Result};
use crate::exactlin::quotient_decomposition;

/// Z_n as a ring.
pub fn cyclic_ring(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::Spec(format!("cyclic ring needs n >= 2, got {n}")));
    }
    build_ring(format!("Z{n}"), vec![n], vec![vec![vec![1]]], vec![1])
}

/// Monic irreducible polynomials over F_p for the supported prime powers,
/// stored without the leading coefficient: x^k + c_{k-1} x^{k-1} + ... + c_0
/// is stored as [c_0, ..., c_{k-1}].
fn stored_irreducible(q: u64) -> Option<(u64, Vec<u64>)> {
    match q {
        4 => Some((2, vec![1, 1])),    // x^2 + x + 1
        8 => Some((2, vec![1, 1, 0])), // x^3 + x + 1
        9 => Some((3, vec![1, 0])),    // x^2 + 1
        _ => None,
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Brute-force fallback: the lexicographically least monic irreducible of
/// degree k over F_p, found by trial division against all lower-degree
/// monics. Desk scale only.
fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    // iterate over coefficient vectors [c_0..c_{k-1}]
    let total = p.pow(k as u32);
    'cand: for idx in 0..total {
        let mut c = Vec::with_capacity(k);
        let mut rem = idx;
        for _ in 0..k {
            c.push(rem % p);
            rem /= p;
        }
        // f(x) = x^k + sum c_i x^i; irreducible iff no root-free... full
        // check: no monic divisor of degree 1..k/2. Equivalent desk-scale
        // test: f has no root in F_{p^d} for d <= k/2 is awkward without the
        // field; instead test that no product of two lower-degree monics
        // equals f.
        for d1 in 1..=(k / 2) {
            let d2 = k - d1;
            let n1 = p.pow(d1 as u32);
            let n2 = p.pow(d2 as u32);
            for a in 0..n1 {
                let mut g = Vec::with_capacity(d1 + 1);
                let mut r = a;
                for _ in 0..d1 {
                    g.push(r % p);
                    r /= p;
                }
                g.push(1);
                for b in 0..n2 {
                    let mut h = Vec::with_capacity(d2 + 1);
                    let mut r = b;
                    for _ in 0..d2 {
                        h.push(r % p);
                        r /= p;
                    }
                    h.push(1);
                    // multiply g*h mod p
                    let mut prod = vec![0u64; k + 1];
                    for (i, &gi) in g.iter().enumerate() {
                        for (j, &hj) in h.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + gi * hj) % p;
                        }
                    }
                    if prod[..k] == c[..] && prod[k] == 1 {
                        continue 'cand;
                    }
                }
            }
        }
        return c;
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// The finite field F_q for a prime power q, as Z_p[x]/(f) with a stored (or
/// searched) irreducible f.
pub fn field(q: u64) -> Result<FiniteRing> {
    if is_prime(q) {
        let mut r = cyclic_ring(q)?;
        r.name = format!("F{q}");
        return Ok(r);
    }
    let (p, modpoly) = match stored_irreducible(q) {
        Some(v) => v,
        None => {
            // factor q = p^k
            let mut p = 2;
            while q % p != 0 {
                p += 1;
            }
            let mut k = 0;
            let mut rem = q;
            while rem > 1 {
                if rem % p != 0 {
                    return Err(Error::Spec(format!("{q} is not a prime power")));
                }
                rem /= p;
                k += 1;
            }
            (p, find_irreducible(p, k))
        }
    };
    let k = modpoly.len();
    // basis 1, x, ..., x^{k-1}; structure constants from polynomial
    // multiplication modulo f
    let reduce = |mut poly: Vec<u64>| -> Vec<u64> {
        // poly has degree <= 2k-2
        for d in (k..poly.len()).rev() {
            let c = poly[d] % p;
            if c != 0 {
                poly[d] = 0;
                for (i, &m) in modpoly.iter().enumerate() {
                    // x^d = x^{d-k} * (-(f - x^k)) = -sum m_i x^{d-k+i}
                    let sub = (c * m) % p;
                    poly[d - k + i] = (poly[d - k + i] + p - sub) % p;
                }
            }
        }
        poly.truncate(k);
        poly.resize(k, 0);
        for c in poly.iter_mut() {
            *c %= p;
        }
        poly
    };
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut prod = vec![0u64; i + j + 1];
            prod[i + j] = 1;
            structure[i][j] = reduce(prod);
        }
    }
    let mut one = vec![0u64; k];
    one[0] = 1;
    build_ring(format!("F{q}"), vec![p; k], structure, one)
}

/// n x n matrices over R. Basis index layout: position (s, t) and R-basis
/// index i map to basis index (s*n + t)*rank + i, so an element's coefficient
/// vector is the row-major concatenation of entry coefficient vectors.
pub fn matrix_ring(r: &FiniteRing, n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::Spec("matrix ring needs n >= 1".into()));
    }
    let rk = r.rank();
    let k = n * n * rk;
    let orders: Vec<u64> = std::iter::repeat(r.orders.clone())
        .take(n * n)
        .flatten()
        .collect();
    let idx = |s: usize, t: usize, i: usize| (s * n + t) * rk + i;
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for s in 0..n {
        for t in 0..n {
            for i in 0..rk {
                for u in 0..n {
                    for v in 0..n {
                        for j in 0..rk {
                            if t != u {
                                continue; // E_{st} E_{uv} = 0 unless t = u
                            }
                            let prod = r.basis_product(i, j);
                            let target = &mut structure[idx(s, t, i)][idx(u, v, j)];
                            for (l, &c) in prod.iter().enumerate() {
                                target[idx(s, v, l)] = c;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut one = vec![0u64; k];
    for s in 0..n {
        for (i, &c) in r.one.iter().enumerate() {
            one[idx(s, s, i)] = c;
        }
    }
    build_ring(format!("M{n}({})", r.name), orders, structure, one)
}

/// Direct product R1 x R2 with componentwise operations.
pub fn product_ring(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
    let k1 = r1.rank();
    let k2 = r2.rank();
    let k = k1 + k2;
    let mut orders = r1.orders.clone();
    orders.extend_from_slice(&r2.orders);
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k1 {
        for j in 0..k1 {
            let p = r1.basis_product(i, j);
            for (l, &c) in p.iter().enumerate() {
                structure[i][j][l] = c;
            }
        }
    }
    for i in 0..k2 {
        for j in 0..k2 {
            let p = r2.basis_product(i, j);
            for (l, &c) in p.iter().enumerate() {
                structure[k1 + i][k1 + j][k1 + l] = c;
            }
        }
    }
    let mut one = r1.one.clone();
    one.extend_from_slice(&r2.one);
    build_ring(format!("{} x {}", r1.name, r2.name), orders, structure, one)
}

/// Upper-triangular n x n matrices over F (entries at positions s <= t).
pub fn upper_triangular_ring(f: &FiniteRing, n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::Spec("upper-triangular ring needs n >= 1".into()));
    }
    let rk = f.rank();
    // enumerate positions (s, t) with s <= t in row-major order
    let mut positions = Vec::new();
    for s in 0..n {
        for t in s..n {
            positions.push((s, t));
        }
    }
    let pos_index = |s: usize, t: usize| positions.iter().position(|&p| p == (s, t)).unwrap();
    let k = positions.len() * rk;
    let orders: Vec<u64> = std::iter::repeat(f.orders.clone())
        .take(positions.len())
        .flatten()
        .collect();
    let idx = |s: usize, t: usize, i: usize| pos_index(s, t) * rk + i;
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for &(s, t) in &positions {
        for &(u, v) in &positions {
            if t != u {
                continue;
            }
            for i in 0..rk {
                for j in 0..rk {
                    let prod = f.basis_product(i, j);
                    let target = &mut structure[idx(s, t, i)][idx(u, v, j)];
                    for (l, &c) in prod.iter().enumerate() {
                        target[idx(s, v, l)] = c;
                    }
                }
            }
        }
    }
    let mut one = vec![0u64; k];
    for s in 0..n {
        for (i, &c) in f.one.iter().enumerate() {
            one[idx(s, s, i)] = c;
        }
    }
    build_ring(format!("UT({},{n})", f.name), orders, structure, one)
}

/// Quotient ring R/I for a two-sided ideal I (validated).
pub fn quotient_ring(r: &FiniteRing, ideal: &Ideal) -> Result<FiniteRing> {
    Ok(quotient_ring_map(r, ideal)?.ring)
}

/// A quotient ring together with the projection and a section (lift) back
/// into the source ring.
pub struct RingQuotient {
    pub ring: FiniteRing,
    proj: crate::exactlin::QuotientDecomposition,
}

impl RingQuotient {
    pub fn project(&self, x: &Elt) -> Elt {
        self.proj.project(x)
    }

    /// A preimage of a quotient element: the basis-lift combination. Always
    /// satisfies project(lift(x)) = x.
    pub fn lift(&self, ambient: &FiniteRing, x: &Elt) -> Elt {
        let mut out = ambient.zero();
        for (c, b) in x.iter().zip(&self.proj.basis.basis) {
            out = ambient.add(&out, &ambient.scalar_mul(*c, b));
        }
        out
    }
}

/// Quotient ring R/I with the projection map retained.
pub fn quotient_ring_map(r: &FiniteRing, ideal: &Ideal) -> Result<RingQuotient> {
    if !ideal.is_two_sided_ideal(r) {
        return Err(Error::PreconditionViolation(
            "quotient requires a two-sided ideal".into(),
        ));
    }
    if ideal.contains(r.one_idx()) {
        return Err(Error::axiom("unital ring with 1 != 0", "ideal contains 1"));
    }
    let gens: Vec<Elt> = ideal.elements.iter().map(|&i| r.element(i)).collect();
    let q = quotient_decomposition(&r.orders, &gens);
    let new_orders = q.orders().to_vec();
    let k = new_orders.len();
    // lift each quotient basis element to the ambient ring, multiply, project
    let lift: Vec<Elt> = q.basis.basis.clone();
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let p = r.mul(&lift[i], &lift[j]);
            structure[i][j] = q.project(&p);
        }
    }
    let one = q.project(&r.one);
    let ring = build_ring(format!("{}/I{}", r.name, ideal.len()), new_orders, structure, one)?;
    Ok(RingQuotient { ring, proj: q })
}

/// Group algebra F[G] for an abelian group G given by its cyclic factor
/// orders. Basis: (group element) x (F-basis); products multiply group
/// elements (add tuples) and field coefficients.
pub fn group_algebra(f: &FiniteRing, group_orders: &[u64]) -> Result<FiniteRing> {
    if group_orders.is_empty() || group_orders.iter().any(|&o| o == 0) {
        return Err(Error::Spec("group algebra needs a nonempty abelian group".into()));
    }
    let g_n: u64 = group_orders.iter().product();
    let rk = f.rank();
    let k = g_n as usize * rk;
    let orders: Vec<u64> = std::iter::repeat(f.orders.clone())
        .take(g_n as usize)
        .flatten()
        .collect();
    let g_elt = |mut idx: u64| -> Vec<u64> {
        let mut out = vec![0u64; group_orders.len()];
        for i in (0..group_orders.len()).rev() {
            out[i] = idx % group_orders[i];
            idx /= group_orders[i];
        }
        out
    };
    let g_idx = |e: &[u64]| -> u64 {
        let mut idx = 0u64;
        for (c, d) in e.iter().zip(group_orders) {
            idx = idx * d + c % d;
        }
        idx
    };
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for ga in 0..g_n {
        for gb in 0..g_n {
            let sum: Vec<u64> = g_elt(ga)
                .iter()
                .zip(&g_elt(gb))
                .zip(group_orders)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect();
            let gc = g_idx(&sum);
            for i in 0..rk {
                for j in 0..rk {
                    let prod = f.basis_product(i, j);
                    let target = &mut structure[(ga as usize) * rk + i][(gb as usize) * rk + j];
                    for (l, &c) in prod.iter().enumerate() {
                        target[gc as usize * rk + l] = c;
                    }
                }
            }
        }
    }
    let mut one = vec![0u64; k];
    for (i, &c) in f.one.iter().enumerate() {
        one[i] = c; // identity group element has index 0
    }
    let gdesc: Vec<String> = group_orders.iter().map(|o| format!("C{o}")).collect();
    build_ring(
        format!("{}[{}]", f.name, gdesc.join("x")),
        orders,
        structure,
        one,
    )
}

/// F_2[x]/(x^2), realized as a quotient construction: F_2[C_4] is
/// F_2[g]/(g^4 - 1) = F_2[y]/(y^4) with y = g + 1; quotienting by the ideal
/// generated by y^2 = g^2 + 1 leaves F_2[y]/(y^2).
pub fn f2_dual_numbers() -> Result<FiniteRing> {
    let f2 = field(2)?;
    let ga = group_algebra(&f2, &[4])?;
    // g^2 + 1: coefficient 1 at group element g^2 (index 2) and at 1 (index 0)
    let mut gen = ga.zero();
    gen[0] = 1;
    gen[2] = 1;
    // two-sided ideal generated by gen: additive closure of R*gen*R = gen*R
    // (commutative), i.e. of {gen * r}
    let mut elems: Vec<u64> = (0..ga.order())
        .map(|r| ga.index_of(&ga.mul(&gen, &ga.element(r))))
        .collect();
    elems.sort_unstable();
    elems.dedup();
    // close additively
    let gens: Vec<Elt> = elems.iter().map(|&i| ga.element(i)).collect();
    let ideal = Ideal::additive_closure(&ga, &gens);
    let mut q = quotient_ring(&ga, &ideal)?;
    q.name = "F2[x]/(x^2)".into();
    Ok(q)
}

/// The subring of an ambient ring generated by a set of elements (closure
/// under addition and multiplication, identity = ambient identity).
pub fn generated_subring(
    ambient: &FiniteRing,
    gens: &[Elt],
    name: impl Into<String>,
) -> Result<super::Subring> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(ambient.index_of(&ambient.zero()));
    seen.insert(ambient.one_idx());
    for g in gens {
        seen.insert(ambient.index_of(g));
    }
    loop {
        let cur: Vec<u64> = seen.iter().copied().collect();
        let before = seen.len();
        for &a in &cur {
            for &b in &cur {
                seen.insert(ambient.add_idx(a, b));
                seen.insert(ambient.mul_idx(a, b));
            }
        }
        if seen.len() == before {
            break;
        }
    }
    subring_from_elements(ambient, name, seen.into_iter().collect(), &ambient.one())
}
