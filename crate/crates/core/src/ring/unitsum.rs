//! Sum-of-units decompositions: k-unit witnesses, the diagonal two-unit
//! construction for matrices, diagonal reduction over semisimple rings, and
//! the three-unit extension of a monomorphism defined on a right ideal.

use super::catalog::matrix_ring;
use super::wedderburn::{artin_wedderburn, type_decomposition};
use super::{Elt, FiniteRing, Ideal};
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::exactlin::CongruenceSystem;

/// A verified sum-of-units decomposition: `target = sum of summands`, each
/// summand paired with its two-sided inverse.
#[derive(Debug, Clone)]
pub struct UnitSumWitness {
    pub target: Elt,
    pub summands: Vec<(Elt, Elt)>,
}

impl UnitSumWitness {
    /// Re-verifies the witness from scratch using only ring arithmetic.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let mut sum = ring.zero();
        for (u, inv) in &self.summands {
            if ring.mul(u, inv) != ring.one || ring.mul(inv, u) != ring.one {
                return false;
            }
            sum = ring.add(&sum, u);
        }
        sum == self.target
    }
}

/// Finds the two-sided inverse of `a` by solving the linear system
/// x * a = 1 coefficientwise and checking a * x = 1. Scales to rings far too
/// large to enumerate (the system has only rank-many unknowns).
pub fn find_inverse(ring: &FiniteRing, a: &Elt) -> Option<Elt> {
    let k = ring.rank();
    let mut sys = CongruenceSystem::new(ring.orders.clone());
    // coordinate l of x*a: sum_i x_i * (e_i a)_l
    let rows: Vec<Elt> = (0..k).map(|i| ring.mul(&ring.basis_element(i), a)).collect();
    for l in 0..k {
        let d_l = ring.orders[l];
        let coeffs: Vec<u64> = (0..k).map(|i| rows[i][l] % d_l).collect();
        sys.add_constraint(coeffs, ring.one[l], d_l);
    }
    let sol = sys.solve()?;
    let x = sol.particular;
    if ring.mul(a, &x) == ring.one && ring.mul(&x, a) == ring.one {
        Some(x)
    } else {
        // a has a left inverse but is not invertible; in a finite ring this
        // cannot happen, so any kernel shift would not help either
        None
    }
}

/// Writes `a` as a sum of exactly k units, if possible; the witness search is
/// exhaustive over the unit group (lexicographically least witness), so
/// "none" is a proof of nonexistence.
pub fn sum_of_k_units(ring: &FiniteRing, a: &Elt, k: usize) -> Option<UnitSumWitness> {
    fn go(ring: &FiniteRing, target: u64, k: usize, acc: &mut Vec<(u64, u64)>) -> bool {
        if k == 0 {
            return target == 0;
        }
        if k == 1 {
            if let Some(inv) = ring.inverse_idx(target) {
                acc.push((target, inv));
                return true;
            }
            return false;
        }
        for &(u, inv) in ring.units() {
            let rest = ring.add_idx(target, ring.neg_idx(u));
            acc.push((u, inv));
            if go(ring, rest, k - 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    if k == 0 {
        return None;
    }
    let mut acc = Vec::new();
    if go(ring, ring.index_of(a), k, &mut acc) {
        Some(UnitSumWitness {
            target: a.clone(),
            summands: acc
                .into_iter()
                .map(|(u, i)| (ring.element(u), ring.element(i)))
                .collect(),
        })
    } else {
        None
    }
}

// ---- dense matrices over a ring (entry representation; used to build
// elements of matrix_ring, whose basis layout is row-major) ----

pub type RMat = Vec<Vec<Elt>>;

pub fn mat_zero(ring: &FiniteRing, n: usize) -> RMat {
    vec![vec![ring.zero(); n]; n]
}

pub fn mat_identity(ring: &FiniteRing, n: usize) -> RMat {
    let mut m = mat_zero(ring, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ring.one();
    }
    m
}

pub fn mat_add(ring: &FiniteRing, a: &RMat, b: &RMat) -> RMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| ring.add(x, y)).collect())
        .collect()
}

pub fn mat_sub(ring: &FiniteRing, a: &RMat, b: &RMat) -> RMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| ring.sub(x, y)).collect())
        .collect()
}

pub fn mat_mul(ring: &FiniteRing, a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let mut out = mat_zero(ring, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ring.zero();
            for t in 0..n {
                acc = ring.add(&acc, &ring.mul(&a[i][t], &b[t][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Flattens an entry matrix into a coefficient vector of matrix_ring(R, n)
/// (row-major basis layout).
pub fn mat_to_elt(_ring: &FiniteRing, m: &RMat) -> Elt {
    let mut out = Vec::new();
    for row in m {
        for entry in row {
            out.extend_from_slice(entry);
        }
    }
    out
}

/// Inverse of `mat_to_elt`.
pub fn elt_to_mat(ring: &FiniteRing, n: usize, e: &Elt) -> RMat {
    let rk = ring.rank();
    let mut out = mat_zero(ring, n);
    for s in 0..n {
        for t in 0..n {
            let base = (s * n + t) * rk;
            out[s][t] = e[base..base + rk].to_vec();
        }
    }
    out
}

/// The diagonal two-unit decomposition: writes the diagonal matrix with the
/// given entries as a sum of two invertible matrices over R. Even-size runs
/// use consecutive 2x2 blocks of the identity
/// diag(a, b) = [[a, 1], [1, 0]] + [[0, -1], [-1, b]];
/// an odd trailing 3x3 block is resolved by a bounded candidate search whose
/// first candidate is the cyclic construction (diagonal entries, ones on the
/// superdiagonal, a 1 in the lower-left corner).
pub fn henriksen_diagonal(ring: &FiniteRing, diag: &[Elt]) -> Result<(FiniteRing, UnitSumWitness)> {
    let n = diag.len();
    if n < 2 {
        return Err(Error::PreconditionViolation(
            "diagonal two-unit decomposition needs n >= 2".into(),
        ));
    }
    let mn = matrix_ring(ring, n)?;
    let mut a = mat_zero(ring, n);
    let pairs = if n % 2 == 0 { n / 2 } else { (n - 3) / 2 };
    for p in 0..pairs {
        let i = 2 * p;
        a[i][i] = diag[i].clone();
        a[i][i + 1] = ring.one();
        a[i + 1][i] = ring.one();
        // a[i+1][i+1] stays 0
    }
    if n % 2 == 1 {
        let base = n - 3;
        // candidate family for the trailing 3x3 block, cyclic construction
        // first
        let mut placed = false;
        let candidates: Vec<[[i32; 3]; 3]> = vec![
            // markers: 2 = diag entry of that row, 1 = one, 0 = zero,
            // -1 = minus one
            [[2, 1, 0], [0, 2, 1], [1, 0, 0]],
            [[2, 1, 0], [0, 2, 1], [-1, 0, 0]],
            [[0, 1, 0], [0, 0, 1], [1, 0, 2]],
        ];
        for cand in &candidates {
            let mut trial = a.clone();
            for (r, row) in cand.iter().enumerate() {
                for (c, &m) in row.iter().enumerate() {
                    trial[base + r][base + c] = match m {
                        2 => diag[base + r].clone(),
                        1 => ring.one(),
                        -1 => ring.neg(&ring.one()),
                        _ => ring.zero(),
                    };
                }
            }
            // check both trial and D - trial invertible
            let d_full = {
                let mut d = mat_zero(ring, n);
                for i in 0..n {
                    d[i][i] = diag[i].clone();
                }
                d
            };
            let b_trial = mat_sub(ring, &d_full, &trial);
            let ea = mat_to_elt(ring, &trial);
            let eb = mat_to_elt(ring, &b_trial);
            if find_inverse(&mn, &ea).is_some() && find_inverse(&mn, &eb).is_some() {
                a = trial;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::SearchExhausted {
                what: format!("odd-block two-unit witness over M3({})", ring.name),
                bound: 3,
            });
        }
    }
    let mut d_full = mat_zero(ring, n);
    for i in 0..n {
        d_full[i][i] = diag[i].clone();
    }
    let b = mat_sub(ring, &d_full, &a);
    let ea = mat_to_elt(ring, &a);
    let eb = mat_to_elt(ring, &b);
    let ia = find_inverse(&mn, &ea).ok_or_else(|| Error::SearchExhausted {
        what: "first summand inverse".into(),
        bound: 0,
    })?;
    let ib = find_inverse(&mn, &eb).ok_or_else(|| Error::SearchExhausted {
        what: "second summand inverse".into(),
        bound: 0,
    })?;
    let witness = UnitSumWitness {
        target: mat_to_elt(ring, &d_full),
        summands: vec![(ea, ia), (eb, ib)],
    };
    if !witness.verify(&mn) {
        return Err(Error::InternalAssertion(
            "diagonal two-unit witness failed re-verification".into(),
        ));
    }
    Ok((mn, witness))
}

/// Diagonal reduction of a square matrix over a semisimple ring: returns
/// (P, D, Q) with P*A*Q = D diagonal, P and Q invertible (verified). Works
/// blockwise through the Wedderburn coordinates: each block contributes an
/// (m*n_i) x (m*n_i) matrix over F_{q_i}, reduced to rank normal form by
/// Gaussian elimination.
pub fn diagonal_reduction(
    ring: &FiniteRing,
    a: &RMat,
) -> Result<(RMat, RMat, RMat)> {
    let m = a.len();
    if m == 0 || a.iter().any(|r| r.len() != m) {
        return Err(Error::PreconditionViolation("square matrix required".into()));
    }
    let wd = artin_wedderburn(ring)?;
    let mut p = mat_zero(ring, m);
    let mut d = mat_zero(ring, m);
    let mut q = mat_zero(ring, m);
    for block in &wd.blocks {
        let b = &block.block;
        let br = &b.ring;
        let n = block.n;
        let e = ring.index_of(&block.idempotent);
        // block coordinate lookup: ambient -> block element
        let mut lookup = std::collections::HashMap::new();
        for (i, &amb) in b.elements.iter().enumerate() {
            let _ = i;
            lookup.insert(amb, ());
        }
        let to_block = |amb: &Elt| -> Elt {
            // solve embed(x) = e * amb by enumeration of block elements
            let target = ring.mul_idx(e, ring.index_of(amb));
            for x in 0..br.order() {
                let ex = br.element(x);
                if ring.index_of(&b.embed(ring, &ex)) == target {
                    return ex;
                }
            }
            unreachable!("corner projection missed the block");
        };
        // big matrix over F_q
        let fq = super::catalog::field(block.q)?;
        let big_n = m * n;
        let mut big = vec![vec![fq.zero(); big_n]; big_n];
        for s in 0..m {
            for t in 0..m {
                let entry = to_block(&a[s][t]);
                let fm = block.matrix_of(br, &entry);
                for i in 0..n {
                    for j in 0..n {
                        big[s * n + i][t * n + j] = fm[i][j].clone();
                    }
                }
            }
        }
        // Gaussian elimination to rank normal form with transform recording
        let mut pt = identity_fq(&fq, big_n);
        let mut qt = identity_fq(&fq, big_n);
        let mut rank = 0usize;
        for col in 0..big_n {
            if rank >= big_n {
                break;
            }
            // find pivot in column >= col? standard: work on (rank, col)
            let piv = (rank..big_n).find(|&r| !fq.is_zero(&big[r][col]));
            let Some(piv) = piv else { continue };
            big.swap(rank, piv);
            pt.swap(rank, piv);
            let inv = find_inverse(&fq, &big[rank][col]).expect("field pivot invertible");
            scale_row_fq(&fq, &mut big, rank, &inv);
            scale_row_fq(&fq, &mut pt, rank, &inv);
            for r in 0..big_n {
                if r != rank && !fq.is_zero(&big[r][col]) {
                    let c = fq.neg(&big[r][col]);
                    add_row_fq(&fq, &mut big, r, rank, &c);
                    add_row_fq(&fq, &mut pt, r, rank, &c);
                }
            }
            // clear the rest of the pivot row with column ops
            for cc in 0..big_n {
                if cc != col && !fq.is_zero(&big[rank][cc]) {
                    let c = fq.neg(&big[rank][cc]);
                    add_col_fq(&fq, &mut big, cc, col, &c);
                    add_col_fq(&fq, &mut qt, cc, col, &c);
                }
            }
            // move pivot column into position `rank`
            if col != rank {
                for row in big.iter_mut() {
                    row.swap(rank, col);
                }
                for row in qt.iter_mut() {
                    row.swap(rank, col);
                }
            }
            rank += 1;
        }
        // fold the three big matrices back into ambient m x m entries
        let fold = |bigm: &Vec<Vec<Elt>>, out: &mut RMat| {
            for s in 0..m {
                for t in 0..m {
                    let mut fm = vec![vec![fq.zero(); n]; n];
                    for i in 0..n {
                        for j in 0..n {
                            fm[i][j] = bigm[s * n + i][t * n + j].clone();
                        }
                    }
                    let be = block.element_of(br, &fm);
                    let amb = b.embed(ring, &be);
                    out[s][t] = ring.add(&out[s][t], &amb);
                }
            }
        };
        fold(&big, &mut d);
        fold(&pt, &mut p);
        fold(&qt, &mut q);
    }
    // verify
    let pa = mat_mul(ring, &p, a);
    let paq = mat_mul(ring, &pa, &q);
    if paq != d {
        return Err(Error::InternalAssertion("P*A*Q != D".into()));
    }
    for s in 0..m {
        for t in 0..m {
            if s != t && !ring.is_zero(&d[s][t]) {
                return Err(Error::InternalAssertion("D not diagonal".into()));
            }
        }
    }
    let mm = matrix_ring(ring, m)?;
    if find_inverse(&mm, &mat_to_elt(ring, &p)).is_none()
        || find_inverse(&mm, &mat_to_elt(ring, &q)).is_none()
    {
        return Err(Error::InternalAssertion("P or Q not invertible".into()));
    }
    Ok((p, d, q))
}

fn identity_fq(fq: &FiniteRing, n: usize) -> Vec<Vec<Elt>> {
    let mut m = vec![vec![fq.zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = fq.one();
    }
    m
}

fn scale_row_fq(fq: &FiniteRing, m: &mut [Vec<Elt>], row: usize, c: &Elt) {
    for e in m[row].iter_mut() {
        *e = fq.mul(c, e);
    }
}

fn add_row_fq(fq: &FiniteRing, m: &mut [Vec<Elt>], dst: usize, src: usize, c: &Elt) {
    for j in 0..m[dst].len() {
        let add = fq.mul(c, &m[src][j]);
        m[dst][j] = fq.add(&m[dst][j], &add);
    }
}

fn add_col_fq(fq: &FiniteRing, m: &mut [Vec<Elt>], dst: usize, src: usize, c: &Elt) {
    for row in m.iter_mut() {
        let add = fq.mul(&row[src], c);
        row[dst] = fq.add(&row[dst], &add);
    }
}

/// Extends a right-module homomorphism f defined on a right ideal N of a
/// regular self-injective ring S, with f monic on the abelian part of N, to
/// an endomorphism of S (= left multiplication by phi) that agrees with f on
/// N and is a verified sum of three units.
///
/// Construction: split S = T1 x T2 (type decomposition); on T1 the extension
/// is a single unit phi1 agreeing with f on N1 = e1*N; on T2 any extension
/// phi2 is split twice into two-unit sums; the three summands are
/// (phi1 + u1), (e1 + u3), (-e1 + u4) with phi2 = u1 + u3 + u4.
pub fn three_unit_extension(
    ring: &FiniteRing,
    n_ideal: &Ideal,
    f: &dyn Fn(&Elt) -> Elt,
    guards: &Guards,
) -> Result<(Elt, UnitSumWitness)> {
    if ring.order() as usize > guards.max_ring {
        return Err(Error::guard("three-unit extension", ring.order() as usize, guards.max_ring));
    }
    if !n_ideal.is_right_ideal(ring) {
        return Err(Error::PreconditionViolation("N is not a right ideal".into()));
    }
    // f must be additive and right-linear on N
    for &x in &n_ideal.elements {
        let ex = ring.element(x);
        for &y in &n_ideal.elements {
            let ey = ring.element(y);
            if f(&ring.add(&ex, &ey)) != ring.add(&f(&ex), &f(&ey)) {
                return Err(Error::PreconditionViolation("f not additive on N".into()));
            }
        }
        for bidx in 0..ring.rank() {
            let eb = ring.basis_element(bidx);
            if f(&ring.mul(&ex, &eb)) != ring.mul(&f(&ex), &eb) {
                return Err(Error::PreconditionViolation("f not right-linear on N".into()));
            }
        }
    }
    let td = type_decomposition(ring)?;
    let e1i = ring.index_of(&td.e1);
    let e2i = ring.index_of(&td.e2);
    // N1 = e1*N as an element set
    let n1: Vec<u64> = {
        let mut v: Vec<u64> = n_ideal
            .elements
            .iter()
            .map(|&x| ring.mul_idx(e1i, x))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    // f restricted to N1 must be monic
    {
        let mut images = std::collections::HashSet::new();
        for &x in &n1 {
            if !images.insert(ring.index_of(&f(&ring.element(x)))) {
                return Err(Error::PreconditionViolation(
                    "f is not monic on the abelian component N1".into(),
                ));
            }
        }
    }

    // phi1: unit of T1 (as ambient element supported on e1) with
    // phi1 * n = f(n) on N1
    let mut phi1 = ring.zero();
    if let Some(t1) = &td.t1 {
        let r1 = &t1.ring;
        let mut found = None;
        for &(u, _) in r1.units() {
            let amb = t1.embed(ring, &r1.element(u));
            let ambi = ring.index_of(&amb);
            if n1
                .iter()
                .all(|&x| ring.mul_idx(ambi, x) == ring.index_of(&f(&ring.element(x))))
            {
                found = Some(amb);
                break;
            }
        }
        phi1 = found.ok_or_else(|| {
            Error::PreconditionViolation(
                "no unit of the abelian part extends f on N1".into(),
            )
        })?;
    }

    // phi2: any extension on the T2 side (exists by self-injectivity)
    let mut phi2 = ring.zero();
    let mut t2_summands: Vec<(Elt, Elt)> = Vec::new(); // (u, inv) in T2 ring coords
    if let Some(t2) = &td.t2 {
        let r2 = &t2.ring;
        let n2: Vec<u64> = {
            let mut v: Vec<u64> = n_ideal
                .elements
                .iter()
                .map(|&x| ring.mul_idx(e2i, x))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut found = None;
        for c in 0..r2.order() {
            let amb = t2.embed(ring, &r2.element(c));
            let ambi = ring.index_of(&amb);
            if n2
                .iter()
                .all(|&x| ring.mul_idx(ambi, x) == ring.index_of(&f(&ring.element(x))))
            {
                found = Some(c);
                break;
            }
        }
        let c = found.ok_or_else(|| {
            Error::InternalAssertion(
                "self-injectivity extension missing on the matrix part".into(),
            )
        })?;
        phi2 = t2.embed(ring, &r2.element(c));
        // split c = u1 + v, v = u3 + u4 with all four units of T2
        let (_, u1, v) = td
            .two_unit_witnesses
            .iter()
            .copied()
            .find(|&(x, _, _)| x == c)
            .ok_or_else(|| Error::InternalAssertion("missing two-unit witness".into()))?;
        let (_, u3, u4) = td
            .two_unit_witnesses
            .iter()
            .copied()
            .find(|&(x, _, _)| x == v)
            .ok_or_else(|| Error::InternalAssertion("missing two-unit witness".into()))?;
        for u in [u1, u3, u4] {
            let inv = r2
                .inverse_idx(u)
                .ok_or_else(|| Error::InternalAssertion("witness summand not a unit".into()))?;
            t2_summands.push((r2.element(u), r2.element(inv)));
        }
    }

    let phi = ring.add(&phi1, &phi2);
    // assemble the three ambient summands
    let embed2 = |e: &Elt| -> Elt {
        match &td.t2 {
            Some(t2) => t2.embed(ring, e),
            None => ring.zero(),
        }
    };
    let parts_t1 = [phi1.clone(), td.e1.clone(), ring.neg(&td.e1)];
    let parts_t2: Vec<Elt> = if t2_summands.is_empty() {
        vec![ring.zero(), ring.zero(), ring.zero()]
    } else {
        t2_summands.iter().map(|(u, _)| embed2(u)).collect()
    };
    let mut summands = Vec::with_capacity(3);
    for i in 0..3 {
        let s = ring.add(&parts_t1[i], &parts_t2[i]);
        let inv = find_inverse(ring, &s).ok_or_else(|| {
            Error::InternalAssertion("three-unit summand not invertible".into())
        })?;
        summands.push((s, inv));
    }
    let witness = UnitSumWitness {
        target: phi.clone(),
        summands,
    };
    if !witness.verify(ring) {
        return Err(Error::InternalAssertion("three-unit witness failed".into()));
    }
    // phi agrees with f on N
    for &x in &n_ideal.elements {
        if ring.mul(&phi, &ring.element(x)) != f(&ring.element(x)) {
            return Err(Error::InternalAssertion(
                "extension does not restrict to f on N".into(),
            ));
        }
    }
    Ok((phi, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog::*;

    #[test]
    fn inverse_via_solve() {
        let z6 = cyclic_ring(6).unwrap();
        assert_eq!(find_inverse(&z6, &vec![5]), Some(vec![5]));
        assert_eq!(find_inverse(&z6, &vec![2]), None);
        let m = matrix_ring(&field(2).unwrap(), 2).unwrap();
        // [[1,1],[0,1]] is invertible
        let a = vec![1, 1, 0, 1];
        let inv = find_inverse(&m, &a).unwrap();
        assert_eq!(m.mul(&a, &inv), m.one);
    }

    #[test]
    fn k_unit_sums() {
        let z2 = field(2).unwrap();
        assert!(sum_of_k_units(&z2, &vec![1], 2).is_none()); // 1+1 = 0
        let z4 = cyclic_ring(4).unwrap();
        let w = sum_of_k_units(&z4, &vec![0], 2).unwrap();
        assert!(w.verify(&z4));
        assert_eq!(w.summands[0].0, vec![1]);
        assert_eq!(w.summands[1].0, vec![3]);
        // M_2(F_2): diag(1,0) as sum of two units, e.g. [[1,1],[1,0]] + [[0,1],[1,0]]
        let f2 = field(2).unwrap();
        let m = matrix_ring(&f2, 2).unwrap();
        let target = vec![1, 0, 0, 0];
        let w = sum_of_k_units(&m, &target, 2).unwrap();
        assert!(w.verify(&m));
        // the classical witness is itself valid
        let a = vec![1, 1, 1, 0];
        let b = vec![0, 1, 1, 0];
        assert_eq!(m.add(&a, &b), target);
        assert!(find_inverse(&m, &a).is_some());
        assert!(find_inverse(&m, &b).is_some());
    }

    #[test]
    fn henriksen_even() {
        let f2 = field(2).unwrap();
        let (mn, w) = henriksen_diagonal(&f2, &[vec![1], vec![0]]).unwrap();
        assert!(w.verify(&mn));
        // frozen classical witness: A = [[a,1],[1,0]], B = [[0,-1],[-1,b]]
        assert_eq!(w.summands[0].0, vec![1, 1, 1, 0]);
        assert_eq!(w.summands[1].0, vec![0, 1, 1, 0]);
    }

    #[test]
    fn henriksen_z6() {
        let z6 = cyclic_ring(6).unwrap();
        let (mn, w) = henriksen_diagonal(&z6, &[vec![2], vec![3]]).unwrap();
        assert!(w.verify(&mn));
        assert_eq!(w.summands[0].0, vec![2, 1, 1, 0]);
        assert_eq!(w.summands[1].0, vec![0, 5, 5, 3]);
    }

    #[test]
    fn henriksen_odd_and_zero() {
        let z4 = cyclic_ring(4).unwrap();
        let (mn, w) =
            henriksen_diagonal(&z4, &[vec![2], vec![0], vec![3]]).unwrap();
        assert!(w.verify(&mn));
        let f3 = field(3).unwrap();
        let zeros = vec![vec![0]; 4];
        let (mn, w) = henriksen_diagonal(&f3, &zeros).unwrap();
        assert!(w.verify(&mn));
    }

    #[test]
    fn diagonal_reduction_cases() {
        let m2f2 = matrix_ring(&field(2).unwrap(), 2).unwrap();
        // A = 0
        let a = mat_zero(&m2f2, 2);
        let (_p, d, _q) = diagonal_reduction(&m2f2, &a).unwrap();
        assert!(d.iter().flatten().all(|e| m2f2.is_zero(e)));
        // A = [[e11, 0],[0,0]]
        let mut a = mat_zero(&m2f2, 2);
        a[0][0] = vec![1, 0, 0, 0];
        let (p, d, q) = diagonal_reduction(&m2f2, &a).unwrap();
        let pa = mat_mul(&m2f2, &p, &a);
        let paq = mat_mul(&m2f2, &pa, &q);
        assert_eq!(paq, d);
        // invertible A stays full rank: identity
        let a = mat_identity(&m2f2, 2);
        let (_p, d, _q) = diagonal_reduction(&m2f2, &a).unwrap();
        let mm = matrix_ring(&m2f2, 2).unwrap();
        assert!(find_inverse(&mm, &mat_to_elt(&m2f2, &d)).is_some());
    }

    #[test]
    fn diagonal_reduction_product_ring() {
        let r = product_ring(
            &field(2).unwrap(),
            &matrix_ring(&field(3).unwrap(), 2).unwrap(),
        )
        .unwrap();
        let mut a = mat_zero(&r, 2);
        a[0][1] = r.one();
        a[1][0] = r.element(7); // arbitrary element
        let (p, d, q) = diagonal_reduction(&r, &a).unwrap();
        let paq = mat_mul(&r, &mat_mul(&r, &p, &a), &q);
        assert_eq!(paq, d);
    }

    #[test]
    fn three_unit_extension_identity_on_ideal() {
        // S = F_2 x M_2(F_2): regular self-injective with T1 = F_2
        let s = product_ring(
            &field(2).unwrap(),
            &matrix_ring(&field(2).unwrap(), 2).unwrap(),
        )
        .unwrap();
        // N = (1,0)*S = F_2 x 0
        let e = s.index_of(&{
            let mut v = s.zero();
            v[0] = 1;
            v
        });
        let n = crate::ring::principal_right_ideal(&s, e);
        let f = |x: &Elt| x.clone(); // inclusion
        let (phi, w) = three_unit_extension(&s, &n, &f, &Guards::default()).unwrap();
        assert!(w.verify(&s));
        for &x in &n.elements {
            assert_eq!(s.mul(&phi, &s.element(x)), s.element(x));
        }
    }

    #[test]
    fn three_unit_extension_f2xf2() {
        let s = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let e = s.index_of(&vec![1, 0]);
        let n = crate::ring::principal_right_ideal(&s, e);
        let f = |x: &Elt| x.clone();
        let (phi, w) = three_unit_extension(&s, &n, &f, &Guards::default()).unwrap();
        assert!(w.verify(&s));
        // phi restricted to N is the identity (f1 = inclusion)
        for &x in &n.elements {
            assert_eq!(s.mul(&phi, &s.element(x)), s.element(x));
        }
    }

    #[test]
    fn three_unit_extension_rejects_non_monic() {
        let s = product_ring(&field(2).unwrap(), &field(2).unwrap()).unwrap();
        let e = s.index_of(&vec![1, 0]);
        let n = crate::ring::principal_right_ideal(&s, e);
        let f = |_x: &Elt| s.zero();
        let err = three_unit_extension(&s, &n, &f, &Guards::default()).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolation(_)));
    }
}
