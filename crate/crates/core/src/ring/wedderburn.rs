//! Semisimple structure: block decomposition into matrix rings over finite
//! fields (with explicitly verified isomorphisms) and the split into an
//! abelian part and a part whose every element is a sum of two units.

use super::{catalog::field, subring_from_elements, Elt, FiniteRing, Subring};
use crate::error::{Error, Result};

/// One simple block of a semisimple ring: the corner cut out by a primitive
/// central idempotent, identified with M_n(F_q) by an explicit, verified
/// isomorphism.
pub struct WedderburnBlock {
    /// Primitive central idempotent (ambient coefficient vector).
    pub idempotent: Elt,
    /// Matrix size n of the block M_n(F_q).
    pub n: usize,
    /// Field size q.
    pub q: u64,
    /// The block e*R as a subring (identity e).
    pub block: Subring,
    /// Orthogonal primitive idempotents f_1..f_n of the block summing to e
    /// (block coordinates).
    pub diagonal_idempotents: Vec<Elt>,
    /// a_s in f_s B f_1 and b_s in f_1 B f_s with a_s b_s = f_s,
    /// b_s a_s = f_1 (block coordinates). Matrix units are E_st = a_s * b_t.
    pub connectors: Vec<(Elt, Elt)>,
    /// The corner field f_1 B f_1 as a sorted list of block element indices,
    /// paired with their images in `field(q)` coefficients.
    pub corner_field: Vec<(u64, Elt)>,
}

pub struct WedderburnDecomposition {
    pub blocks: Vec<WedderburnBlock>,
}

impl WedderburnBlock {
    /// Image of a block element under the isomorphism to M_n(F_q): the
    /// (s, t) entry is the field image of b_s * x * a_t.
    pub fn matrix_of(&self, block_ring: &FiniteRing, x: &Elt) -> Vec<Vec<Elt>> {
        let n = self.n;
        let mut out = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let (_, b_s) = &self.connectors[s];
                let (a_t, _) = &self.connectors[t];
                let entry = block_ring.mul(&block_ring.mul(b_s, x), a_t);
                let idx = block_ring.index_of(&entry);
                let pos = self
                    .corner_field
                    .binary_search_by_key(&idx, |&(i, _)| i)
                    .expect("corner coordinate outside corner field");
                out[s][t] = self.corner_field[pos].1.clone();
            }
        }
        out
    }

    /// Block element with the given matrix of field coefficients (inverse of
    /// `matrix_of`): sum over s,t of a_s * theta^{-1}(m_st) * b_t.
    pub fn element_of(&self, block_ring: &FiniteRing, m: &[Vec<Elt>]) -> Elt {
        let mut acc = block_ring.zero();
        for (s, row) in m.iter().enumerate() {
            for (t, entry) in row.iter().enumerate() {
                let pos = self
                    .corner_field
                    .iter()
                    .position(|(_, f)| f == entry)
                    .expect("field element outside the corner image");
                let corner = block_ring.element(self.corner_field[pos].0);
                let (a_s, _) = &self.connectors[s];
                let (_, b_t) = &self.connectors[t];
                let term = block_ring.mul(&block_ring.mul(a_s, &corner), b_t);
                acc = block_ring.add(&acc, &term);
            }
        }
        acc
    }
}

fn central_idempotents(ring: &FiniteRing) -> Vec<u64> {
    ring.idempotents()
        .iter()
        .copied()
        .filter(|&e| (0..ring.rank()).all(|b| {
            let eb = ring.index_of(&ring.basis_element(b));
            ring.mul_idx(e, eb) == ring.mul_idx(eb, e)
        }))
        .collect()
}

/// Primitive idempotents of the corner c*R*c: nonzero idempotents f = cfc
/// whose corner f*R*f contains no idempotent other than 0 and f.
fn least_primitive_idempotent_under(ring: &FiniteRing, c: u64) -> Option<u64> {
    let corner: Vec<u64> = ring
        .idempotents()
        .iter()
        .copied()
        .filter(|&f| f != 0 && ring.mul_idx(ring.mul_idx(c, f), c) == f)
        .collect();
    corner
        .iter()
        .copied()
        .find(|&f| {
            // primitive iff no corner idempotent strictly under f
            !corner
                .iter()
                .any(|&g| g != f && ring.mul_idx(ring.mul_idx(f, g), f) == g)
        })
}

/// Artin-Wedderburn decomposition of a semisimple ring, with an explicit
/// isomorphism per block, verified multiplicatively on all element pairs.
pub fn artin_wedderburn(ring: &FiniteRing) -> Result<WedderburnDecomposition> {
    if !ring.jacobson_radical().is_zero() {
        return Err(Error::NotSemisimple);
    }
    let centrals = central_idempotents(ring);
    // primitive central idempotents: atoms of the boolean algebra
    let primitives: Vec<u64> = centrals
        .iter()
        .copied()
        .filter(|&e| {
            e != 0
                && !centrals
                    .iter()
                    .any(|&f| f != 0 && f != e && ring.mul_idx(e, f) == f)
        })
        .collect();
    // sanity: orthogonal, summing to 1
    let mut sum = 0u64; // additive identity index is 0
    for &e in &primitives {
        sum = ring.add_idx(sum, e);
    }
    if sum != ring.one_idx() {
        return Err(Error::InternalAssertion(
            "primitive central idempotents do not sum to 1".into(),
        ));
    }
    for (i, &e) in primitives.iter().enumerate() {
        for &f in &primitives[..i] {
            if ring.mul_idx(e, f) != 0 {
                return Err(Error::InternalAssertion(
                    "primitive central idempotents not orthogonal".into(),
                ));
            }
        }
    }

    let mut blocks = Vec::new();
    for &e in &primitives {
        blocks.push(analyze_block(ring, e)?);
    }
    Ok(WedderburnDecomposition { blocks })
}

fn analyze_block(ring: &FiniteRing, e: u64) -> Result<WedderburnBlock> {
    let e_elt = ring.element(e);
    let mut elems: Vec<u64> = (0..ring.order()).map(|r| ring.mul_idx(e, r)).collect();
    elems.sort_unstable();
    elems.dedup();
    let sub = subring_from_elements(ring, format!("block<{e}>"), elems, &e_elt)?;
    let b = &sub.ring;
    let order = b.order();

    // decompose the block identity into orthogonal primitive idempotents
    let one = b.one_idx();
    let mut fs: Vec<u64> = Vec::new();
    let mut remaining = one;
    while remaining != 0 {
        let f = least_primitive_idempotent_under(b, remaining).ok_or_else(|| {
            Error::InternalAssertion("no primitive idempotent under nonzero corner".into())
        })?;
        fs.push(f);
        remaining = b.add_idx(remaining, b.neg_idx(f));
    }
    let n = fs.len();

    // connectors a_s, b_s realizing the equivalence f_s ~ f_1
    let f1 = fs[0];
    let mut connectors: Vec<(u64, u64)> = Vec::with_capacity(n);
    for &f in &fs {
        if f == f1 {
            connectors.push((f1, f1));
            continue;
        }
        let mut found = None;
        'search: for a in 0..order {
            // a in f B f1
            if b.mul_idx(b.mul_idx(f, a), f1) != a || a == 0 {
                continue;
            }
            for x in 0..order {
                if b.mul_idx(b.mul_idx(f1, x), f) != x {
                    continue;
                }
                if b.mul_idx(a, x) == f && b.mul_idx(x, a) == f1 {
                    found = Some((a, x));
                    break 'search;
                }
            }
        }
        let (a, x) = found.ok_or_else(|| {
            Error::InternalAssertion("primitive idempotents not connected in simple block".into())
        })?;
        connectors.push((a, x));
    }

    // corner field f1 B f1
    let corner: Vec<u64> = (0..order)
        .filter(|&x| b.mul_idx(b.mul_idx(f1, x), f1) == x)
        .collect();
    let q = corner.len() as u64;
    // |B| must be q^(n^2)
    let mut expected = 1u64;
    for _ in 0..(n * n) {
        expected = expected.saturating_mul(q);
    }
    if expected != order {
        return Err(Error::InternalAssertion(format!(
            "block order {order} is not q^(n^2) = {q}^{}",
            n * n
        )));
    }
    let fq = field(q)?;
    let corner_images = corner_field_iso(b, &corner, f1, &fq)?;

    let block = WedderburnBlock {
        idempotent: e_elt,
        n,
        q,
        diagonal_idempotents: fs.iter().map(|&f| b.element(f)).collect(),
        connectors: connectors
            .iter()
            .map(|&(a, x)| (b.element(a), b.element(x)))
            .collect(),
        corner_field: corner_images,
        block: sub,
    };

    verify_block_iso(&block, &fq)?;
    Ok(block)
}

/// Finds a field isomorphism from the corner f1*B*f1 (element-index list,
/// identity f1) onto field(q), by mapping a multiplicative generator to each
/// candidate generator and checking additivity exhaustively.
fn corner_field_iso(
    b: &FiniteRing,
    corner: &[u64],
    f1: u64,
    fq: &FiniteRing,
) -> Result<Vec<(u64, Elt)>> {
    let q = corner.len() as u64;
    let mult_order = |start: u64, mul: &dyn Fn(u64, u64) -> u64, one: u64| -> u64 {
        let mut o = 1;
        let mut acc = start;
        while acc != one {
            acc = mul(acc, start);
            o += 1;
        }
        o
    };
    // multiplicative generator of the corner
    let gen = corner
        .iter()
        .copied()
        .find(|&x| x != 0 && mult_order(x, &|a, c| b.mul_idx(a, c), f1) == q - 1)
        .ok_or_else(|| Error::InternalAssertion("corner has no multiplicative generator".into()))?;
    for hg in 1..fq.order() {
        let h = fq.element(hg);
        // h must have multiplicative order q-1
        let ho = mult_order(
            hg,
            &|a, c| fq.index_of(&fq.mul(&fq.element(a), &fq.element(c))),
            fq.one_idx(),
        );
        if ho != q - 1 {
            continue;
        }
        // theta(gen^i) = h^i, theta(0) = 0
        let mut map: std::collections::HashMap<u64, Elt> = std::collections::HashMap::new();
        map.insert(0, fq.zero());
        let mut cx = f1;
        let mut cf = fq.one();
        map.insert(f1, fq.one());
        for _ in 1..q - 1 {
            cx = b.mul_idx(cx, gen);
            cf = fq.mul(&cf, &h);
            map.insert(cx, cf.clone());
        }
        // additivity check on all pairs
        let additive = corner.iter().all(|&x| {
            corner.iter().all(|&y| {
                let s = b.add_idx(x, y);
                let fs = fq.add(&map[&x], &map[&y]);
                map[&s] == fs
            })
        });
        if additive {
            let mut out: Vec<(u64, Elt)> = map.into_iter().collect();
            out.sort_by_key(|&(i, _)| i);
            return Ok(out);
        }
    }
    Err(Error::InternalAssertion(
        "no field isomorphism from corner found".into(),
    ))
}

/// Verifies the block isomorphism multiplicatively and bijectively.
fn verify_block_iso(block: &WedderburnBlock, fq: &FiniteRing) -> Result<()> {
    let b = &block.block.ring;
    let order = b.order();
    let mut seen = std::collections::HashSet::new();
    let all_pairs = order <= 128;
    for x in 0..order {
        let ex = b.element(x);
        let mx = block.matrix_of(b, &ex);
        if !seen.insert(format!("{mx:?}")) {
            return Err(Error::InternalAssertion("block map not injective".into()));
        }
        // roundtrip
        if block.element_of(b, &mx) != ex {
            return Err(Error::InternalAssertion("block map roundtrip failed".into()));
        }
        let ys: Vec<u64> = if all_pairs {
            (0..order).collect()
        } else {
            (0..b.rank() as u64).map(|i| b.index_of(&b.basis_element(i as usize))).collect()
        };
        for y in ys {
            let ey = b.element(y);
            let my = block.matrix_of(b, &ey);
            let mxy = block.matrix_of(b, &b.mul(&ex, &ey));
            // matrix product over F_q
            let n = block.n;
            for s in 0..n {
                for t in 0..n {
                    let mut acc = fq.zero();
                    for m in 0..n {
                        acc = fq.add(&acc, &fq.mul(&mx[s][m], &my[m][t]));
                    }
                    if acc != mxy[s][t] {
                        return Err(Error::InternalAssertion(
                            "block map not multiplicative".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Split of a semisimple (= finite regular self-injective) ring into the
/// product T1 of its field blocks (abelian regular) and the product T2 of
/// its matrix blocks, with a verified two-unit witness for every element of
/// T2.
pub struct TypeDecomposition {
    pub e1: Elt,
    pub e2: Elt,
    /// T1 = e1*S, or None when no field blocks exist.
    pub t1: Option<Subring>,
    /// T2 = e2*S, or None when all blocks are fields.
    pub t2: Option<Subring>,
    /// Per-block (n, q).
    pub blocks: Vec<(usize, u64)>,
    /// For each element x of T2 (T2-ring index), units u, v with u + v = x
    /// (T2-ring indices).
    pub two_unit_witnesses: Vec<(u64, u64, u64)>,
}

pub fn type_decomposition(ring: &FiniteRing) -> Result<TypeDecomposition> {
    if !ring.is_von_neumann_regular() {
        return Err(Error::NotApplicable(
            "type decomposition needs a regular (= semisimple) ring".into(),
        ));
    }
    let wd = artin_wedderburn(ring)?;
    let mut e1 = ring.zero();
    let mut e2 = ring.zero();
    for b in &wd.blocks {
        if b.n == 1 {
            e1 = ring.add(&e1, &b.idempotent);
        } else {
            e2 = ring.add(&e2, &b.idempotent);
        }
    }
    let corner = |e: &Elt, label: &str| -> Result<Option<Subring>> {
        if ring.is_zero(e) {
            return Ok(None);
        }
        let ei = ring.index_of(e);
        let mut elems: Vec<u64> = (0..ring.order()).map(|r| ring.mul_idx(ei, r)).collect();
        elems.sort_unstable();
        elems.dedup();
        Ok(Some(subring_from_elements(
            ring,
            format!("{label}<{}>", ring.name),
            elems,
            e,
        )?))
    };
    let t1 = corner(&e1, "T1")?;
    let t2 = corner(&e2, "T2")?;

    if let Some(t1) = &t1 {
        if !t1.ring.is_abelian_regular() {
            return Err(Error::InternalAssertion("T1 not abelian regular".into()));
        }
    }

    // two-unit witnesses in T2 via hash join over the unit set
    let mut witnesses = Vec::new();
    if let Some(t2) = &t2 {
        let r2 = &t2.ring;
        let unit_set = r2.unit_set();
        for x in 0..r2.order() {
            let mut found = None;
            for &(u, _) in r2.units() {
                let v = r2.add_idx(x, r2.neg_idx(u));
                if unit_set.contains(&v) {
                    found = Some((x, u, v));
                    break;
                }
            }
            let w = found.ok_or_else(|| {
                Error::InternalAssertion(format!(
                    "element {x} of T2 is not a sum of two units"
                ))
            })?;
            witnesses.push(w);
        }
    }

    Ok(TypeDecomposition {
        e1,
        e2,
        t1,
        t2,
        blocks: wd.blocks.iter().map(|b| (b.n, b.q)).collect(),
        two_unit_witnesses: witnesses,
    })
}
