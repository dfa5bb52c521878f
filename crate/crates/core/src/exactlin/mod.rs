//! Exact linear algebra over Z/nZ.
//!
//! Everything here works with row vectors: a matrix acts on the right, so the
//! row span of a matrix is the set `{x * A}`. Row spans over Z/nZ with zero
//! divisors are canonicalized by the Howell normal form, whose saturation rows
//! make span membership decidable column by column.

mod congruence;
mod snf;

pub use congruence::{CongruenceSystem, SolutionSet};
pub use snf::{
    quotient_decomposition, smith_normal_form, subgroup_decomposition, GroupBasis,
    QuotientDecomposition,
};

use serde::{Deserialize, Serialize};

/// Dense matrix with entries in Z/nZ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(rows: usize, cols: usize, modulus: u64, entries: Vec<u64>) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries.into_iter().map(|e| e % modulus).collect();
        ModMatrix {
            rows,
            cols,
            modulus,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize, modulus: u64) -> Self {
        ModMatrix::new(rows, cols, modulus, vec![0; rows * cols])
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = ModMatrix::zero(n, n, modulus);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        ModMatrix::new(r, c, modulus, entries)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `self * other`, both over the same modulus.
    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let n = self.modulus;
        let mut out = ModMatrix::zero(self.rows, other.cols, n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = (out[(i, j)] + a * other[(k, j)]) % n;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rows);
        let n = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            let xi = xi % n;
            if xi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = (out[j] + xi * self[(i, j)]) % n;
            }
        }
        out
    }

    /// Appends zero rows until the matrix has `rows` rows.
    pub fn padded(&self, rows: usize) -> ModMatrix {
        assert!(rows >= self.rows);
        let mut entries = self.entries.clone();
        entries.resize(rows * self.cols, 0);
        ModMatrix::new(rows, self.cols, self.modulus, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Replaces rows a and b by (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, s: u64, t: u64, u: u64, v: u64) {
        let n = self.modulus;
        for j in 0..self.cols {
            let x = self[(a, j)];
            let y = self[(b, j)];
            self.entries[a * self.cols + j] = (s * x + t * y) % n;
            self.entries[b * self.cols + j] = (u * x + v * y) % n;
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        let n = self.modulus;
        for j in 0..self.cols {
            self.entries[i * self.cols + j] = (self[(i, j)] * c) % n;
        }
    }

    /// row[dst] += c * row[src]
    fn add_multiple(&mut self, dst: usize, src: usize, c: u64) {
        let n = self.modulus;
        let c = c % n;
        for j in 0..self.cols {
            self.entries[dst * self.cols + j] =
                (self[(dst, j)] + c * self[(src, j)]) % n;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ModMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ModMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.entries[i * self.cols + j]
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let sign = if a < 0 { -1 } else { 1 };
        return (a.abs(), sign, 0);
    }
    let (g, s, t) = egcd(b, a % b);
    (g, t, s - (a / b) * t)
}

/// Multiplicative inverse of `a` modulo `n`, if gcd(a, n) = 1.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (g, s, _) = egcd(a as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some((s.rem_euclid(n as i128)) as u64)
}

/// Finds a unit w mod n with w ≡ v (mod n/d), where d = n / (n/d).
/// Used to normalize Howell pivots: any v coprime to n/d lifts to a unit.
fn unit_lift(v: u64, n: u64, n_over_d: u64) -> u64 {
    debug_assert_eq!(n % n_over_d, 0);
    let mut w = v % n;
    loop {
        if gcd(w, n) == 1 {
            return w;
        }
        w = (w + n_over_d) % n;
    }
}

/// Result of a Howell normal form computation.
///
/// `h` holds the nonzero canonical rows. The transform `u` is square of size
/// `padded_rows` and satisfies `u * pad(A) = pad(h)`, where `pad` appends zero
/// rows up to `padded_rows`; `u_inv` is its inverse, so `u` is invertible
/// modulo n by construction.
#[derive(Debug, Clone)]
pub struct HowellForm {
    pub h: ModMatrix,
    pub u: ModMatrix,
    pub u_inv: ModMatrix,
    pub padded_rows: usize,
    /// Pivot column of each row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl HowellForm {
    /// Checks u * pad(A) = pad(h) and u * u_inv = I.
    pub fn verify(&self, a: &ModMatrix) -> bool {
        let pa = a.padded(self.padded_rows);
        let ph = self.h.padded(self.padded_rows);
        self.u.mul(&pa) == ph
            && self.u.mul(&self.u_inv) == ModMatrix::identity(self.padded_rows, a.modulus)
    }

    /// Tests whether `v` lies in the row span of `h`; on success returns the
    /// combination coefficients (one per row of `h`).
    pub fn span_contains(&self, v: &[u64]) -> Option<Vec<u64>> {
        let n = self.h.modulus;
        let mut residual: Vec<u64> = v.iter().map(|&x| x % n).collect();
        let mut coeffs = vec![0u64; self.h.rows];
        for (r, &pc) in self.pivots.iter().enumerate() {
            // Columns left of the pivot must already be cleared.
            let d = self.h[(r, pc)];
            let x = residual[pc];
            if x % d != 0 {
                return None;
            }
            let lambda = x / d;
            coeffs[r] = lambda;
            for j in 0..self.h.cols {
                let sub = (lambda * self.h[(r, j)]) % n;
                residual[j] = (residual[j] + n - sub) % n;
            }
        }
        if residual.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Howell normal form over Z/nZ with an invertible transform.
///
/// The row span of the result equals the row span of the input, and the form
/// is canonical for the span: pivots divide n, entries above a pivot are
/// reduced modulo the pivot, and saturation rows are inserted so that span
/// membership can be decided greedily.
pub fn howell_form(a: &ModMatrix) -> HowellForm {
    let n = a.modulus;
    // One extra slot per column for a potential saturation row.
    let total = a.rows + a.cols;
    let mut m = a.padded(total);
    let mut u = ModMatrix::identity(total, n);
    let mut u_inv = ModMatrix::identity(total, n);
    let mut next_pad = a.rows; // first unused pad slot
    let mut row_ptr = 0usize;
    let mut pivots = Vec::new();

    for col in 0..a.cols {
        if row_ptr >= total {
            break;
        }
        // Fold every lower row into the pivot row via unimodular 2x2 blocks.
        for i in (row_ptr + 1)..total {
            let x = m[(row_ptr, col)];
            let y = m[(i, col)];
            if y == 0 {
                continue;
            }
            if x == 0 {
                m.swap_rows(row_ptr, i);
                u.swap_rows(row_ptr, i);
                // (P^-1 = P; applied on the left of u_inv's inverse order
                // means swapping the same rows of u_inv tracked as columns;
                // easier: maintain u_inv via the inverse row op on the right.)
                u_inv_swap_cols(&mut u_inv, row_ptr, i);
                continue;
            }
            let (g, s, t) = egcd(x as i128, y as i128);
            let g = g as u64;
            let s = (s.rem_euclid(n as i128)) as u64;
            let t = (t.rem_euclid(n as i128)) as u64;
            // [[s, t], [-y/g, x/g]] has determinant 1.
            let p = (n - (y / g) % n) % n;
            let q = (x / g) % n;
            m.combine_rows(row_ptr, i, s, t, p, q);
            u.combine_rows(row_ptr, i, s, t, p, q);
            // Inverse of [[s,t],[p,q]] (det 1) is [[q,-t],[-p,s]], applied as
            // a column operation on u_inv.
            u_inv_combine_cols(&mut u_inv, row_ptr, i, q, (n - p % n) % n, (n - t % n) % n, s);
        }
        let pivot = m[(row_ptr, col)];
        if pivot == 0 {
            continue;
        }
        // Normalize the pivot to gcd(pivot, n).
        let d = gcd(pivot, n);
        if pivot != d {
            let v = pivot / d;
            let w = unit_lift(v, n, n / d);
            let winv = mod_inverse(w, n).expect("unit by construction");
            m.scale_row(row_ptr, winv);
            u.scale_row(row_ptr, winv);
            u_inv_scale_col(&mut u_inv, row_ptr, w);
            debug_assert_eq!(m[(row_ptr, col)], d);
        }
        // Reduce the entries above the pivot modulo d.
        for i in 0..row_ptr {
            let e = m[(i, col)];
            let q = e / d;
            if q != 0 {
                let c = (n - (q % n)) % n;
                m.add_multiple(i, row_ptr, c);
                u.add_multiple(i, row_ptr, c);
                u_inv_add_col(&mut u_inv, i, row_ptr, q % n);
            }
        }
        // Saturation: (n/d) times the pivot row has zeros through this
        // column but may be a new span element further right.
        if d > 1 {
            let c = (n / d) % n;
            let sat_nonzero = (col + 1..a.cols).any(|j| (c * m[(row_ptr, j)]) % n != 0);
            if sat_nonzero {
                let slot = next_pad.max(row_ptr + 1);
                debug_assert!(slot < total, "ran out of saturation slots");
                debug_assert!(m.row(slot).iter().all(|&x| x == 0));
                m.add_multiple(slot, row_ptr, c);
                u.add_multiple(slot, row_ptr, c);
                u_inv_add_col(&mut u_inv, slot, row_ptr, (n - c) % n);
                next_pad = slot + 1;
            }
        }
        pivots.push(col);
        row_ptr += 1;
        if row_ptr > next_pad {
            next_pad = row_ptr;
        }
    }

    debug_assert!((row_ptr..total).all(|i| m.row(i).iter().all(|&x| x == 0)));

    let h = ModMatrix::from_rows(
        &(0..row_ptr).map(|i| m.row(i).to_vec()).collect::<Vec<_>>(),
        n,
    );
    let h = if row_ptr == 0 {
        ModMatrix::zero(0, a.cols, n)
    } else {
        h
    };
    HowellForm {
        h,
        u,
        u_inv,
        padded_rows: total,
        pivots,
    }
}

// u_inv is maintained so that u * u_inv = I: every row operation E applied to
// u on the left corresponds to multiplying u_inv by E^-1 on the right, which
// is a column operation.
fn u_inv_swap_cols(m: &mut ModMatrix, a: usize, b: usize) {
    for i in 0..m.rows {
        let x = m[(i, a)];
        m[(i, a)] = m[(i, b)];
        m[(i, b)] = x;
    }
}

fn u_inv_combine_cols(m: &mut ModMatrix, a: usize, b: usize, s: u64, t: u64, p: u64, q: u64) {
    // columns (a, b) <- (s*a + t*b, p*a + q*b)
    let n = m.modulus;
    for i in 0..m.rows {
        let x = m[(i, a)];
        let y = m[(i, b)];
        m[(i, a)] = (s * x + t * y) % n;
        m[(i, b)] = (p * x + q * y) % n;
    }
}

fn u_inv_scale_col(m: &mut ModMatrix, c: usize, by: u64) {
    let n = m.modulus;
    for i in 0..m.rows {
        m[(i, c)] = (m[(i, c)] * by) % n;
    }
}

fn u_inv_add_col(m: &mut ModMatrix, src: usize, dst: usize, c: u64) {
    // Inverse of "row dst += c * row src" on the left is "col src += c * col
    // dst" on the right.
    let n = m.modulus;
    for i in 0..m.rows {
        m[(i, dst)] = (m[(i, dst)] + c * m[(i, src)]) % n;
    }
}

/// Description of the solution set of `x * A = b` over Z/nZ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
    pub modulus: u64,
}

impl LinearSolution {
    /// Enumerates the full affine solution set, canonically sorted.
    /// Returns None if it would exceed `limit`.
    pub fn enumerate(&self, limit: usize) -> Option<Vec<Vec<u64>>> {
        let n = self.modulus;
        let mut seen = std::collections::HashSet::new();
        let zero = vec![0u64; self.particular.len()];
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for g in &self.kernel {
                let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b) % n).collect();
                if seen.insert(w.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(w);
                }
            }
        }
        let mut out: Vec<Vec<u64>> = seen
            .into_iter()
            .map(|k| {
                k.iter()
                    .zip(&self.particular)
                    .map(|(&a, &b)| (a + b) % n)
                    .collect()
            })
            .collect();
        out.sort();
        Some(out)
    }
}

/// Solves `x * A = b` over Z/nZ. Returns None when inconsistent.
pub fn solve_linear(a: &ModMatrix, b: &[u64]) -> Option<LinearSolution> {
    assert_eq!(b.len(), a.cols, "rhs length mismatch");
    let n = a.modulus;
    let r = a.rows;
    // Augment with the identity so the transform is carried along: the span
    // of [A | I] is {(x*A, x)}.
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = a.row(i).to_vec();
        let mut tail = vec![0u64; r];
        tail[i] = 1;
        row.extend(tail);
        rows.push(row);
    }
    let aug = ModMatrix::from_rows(&rows, n);
    let hf = howell_form(&aug);

    // Kernel: rows whose A-part is zero.
    let mut kernel = Vec::new();
    for (i, &pc) in hf.pivots.iter().enumerate() {
        if pc >= a.cols {
            kernel.push(hf.h.row(i)[a.cols..].to_vec());
        }
    }

    // Particular solution: reduce (b, *) against the rows with pivots in the
    // A-part.
    let mut residual: Vec<u64> = b.iter().map(|&x| x % n).collect();
    let mut x = vec![0u64; r];
    for (i, &pc) in hf.pivots.iter().enumerate() {
        if pc >= a.cols {
            break;
        }
        let d = hf.h[(i, pc)];
        let v = residual[pc];
        if v % d != 0 {
            return None;
        }
        let lambda = v / d;
        if lambda != 0 {
            for j in 0..a.cols {
                let sub = (lambda * hf.h[(i, j)]) % n;
                residual[j] = (residual[j] + n - sub) % n;
            }
            for j in 0..r {
                x[j] = (x[j] + lambda * hf.h.row(i)[a.cols + j]) % n;
            }
        }
    }
    if residual.iter().any(|&v| v != 0) {
        return None;
    }
    Some(LinearSolution {
        particular: x,
        kernel,
        modulus: n,
    })
}

/// Generators of `{x : x * A = 0}` as a Z/nZ-module.
pub fn kernel_generators(a: &ModMatrix) -> Vec<Vec<u64>> {
    solve_linear(a, &vec![0u64; a.cols])
        .expect("homogeneous system is always consistent")
        .kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_enumerate(a: &ModMatrix, limit: usize) -> Option<std::collections::BTreeSet<Vec<u64>>> {
        // Brute-force span oracle: all Z/nZ combinations of the rows.
        let n = a.modulus;
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(vec![0u64; a.cols]);
        let mut frontier: Vec<Vec<u64>> = seen.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for i in 0..a.rows {
                let w: Vec<u64> = v
                    .iter()
                    .zip(a.row(i))
                    .map(|(&x, &y)| (x + y) % n)
                    .collect();
                if seen.insert(w.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(w);
                }
            }
        }
        Some(seen)
    }

    #[test]
    fn howell_already_canonical() {
        let a = ModMatrix::from_rows(&[vec![2]], 4);
        let hf = howell_form(&a);
        assert!(hf.verify(&a));
        assert_eq!(hf.h, ModMatrix::from_rows(&[vec![2]], 4));
    }

    #[test]
    fn howell_zero_matrix() {
        let a = ModMatrix::from_rows(&[vec![0]], 6);
        let hf = howell_form(&a);
        assert!(hf.verify(&a));
        assert_eq!(hf.h.rows, 0);
    }

    #[test]
    fn howell_span_mod4() {
        // Expected span derived by enumerating the 16 Z_4-combinations.
        let a = ModMatrix::from_rows(&[vec![2, 2], vec![0, 2]], 4);
        let hf = howell_form(&a);
        assert!(hf.verify(&a));
        let span = span_enumerate(&hf.h, 64).unwrap();
        let expect: std::collections::BTreeSet<Vec<u64>> =
            [vec![0, 0], vec![2, 2], vec![0, 2], vec![2, 0]]
                .into_iter()
                .collect();
        assert_eq!(span, expect);
    }

    #[test]
    fn howell_saturation_row() {
        // (2,1) mod 4 needs the saturation row (0,2).
        let a = ModMatrix::from_rows(&[vec![2, 1]], 4);
        let hf = howell_form(&a);
        assert!(hf.verify(&a));
        assert_eq!(hf.h.rows, 2);
        assert_eq!(
            span_enumerate(&hf.h, 64).unwrap(),
            span_enumerate(&a, 64).unwrap()
        );
        assert!(hf.span_contains(&[0, 2]).is_some());
        assert!(hf.span_contains(&[0, 1]).is_none());
    }

    #[test]
    fn howell_is_canonical_for_the_span() {
        // Two generating sets of the same span must produce identical forms.
        let a = ModMatrix::from_rows(&[vec![2, 1], vec![0, 2]], 4);
        let b = ModMatrix::from_rows(&[vec![2, 3], vec![2, 1], vec![0, 2]], 4);
        assert_eq!(howell_form(&a).h, howell_form(&b).h);
    }

    #[test]
    fn solve_2x_eq_2_mod4() {
        let a = ModMatrix::from_rows(&[vec![2]], 4);
        let s = solve_linear(&a, &[2]).unwrap();
        let all = s.enumerate(16).unwrap();
        assert_eq!(all, vec![vec![1], vec![3]]);
    }

    #[test]
    fn solve_2x_eq_1_mod4_none() {
        let a = ModMatrix::from_rows(&[vec![2]], 4);
        assert!(solve_linear(&a, &[1]).is_none());
    }

    #[test]
    fn solve_identity() {
        let a = ModMatrix::identity(3, 6);
        let s = solve_linear(&a, &[4, 1, 5]).unwrap();
        assert_eq!(s.particular, vec![4, 1, 5]);
        assert!(s.enumerate(8).unwrap().len() == 1);
    }

    #[test]
    fn kernel_examples() {
        // A=[[2]] mod 4 -> kernel {0, 2}
        let k = kernel_generators(&ModMatrix::from_rows(&[vec![2]], 4));
        let s = LinearSolution {
            particular: vec![0],
            kernel: k,
            modulus: 4,
        };
        assert_eq!(s.enumerate(8).unwrap(), vec![vec![0], vec![2]]);

        // unit entry -> trivial kernel
        let k = kernel_generators(&ModMatrix::from_rows(&[vec![1]], 5));
        let s = LinearSolution {
            particular: vec![0],
            kernel: k,
            modulus: 5,
        };
        assert_eq!(s.enumerate(8).unwrap(), vec![vec![0]]);

        // A=[[3]] mod 6 -> kernel {0,2,4} (derived by scanning all x in Z_6)
        let k = kernel_generators(&ModMatrix::from_rows(&[vec![3]], 6));
        let s = LinearSolution {
            particular: vec![0],
            kernel: k,
            modulus: 6,
        };
        assert_eq!(s.enumerate(8).unwrap(), vec![vec![0], vec![2], vec![4]]);
    }

    #[test]
    fn solve_agrees_with_bruteforce_small() {
        // Exhaustive cross-check on every 2x2 system over Z_4 with entries
        // in {0..3} for a fixed sample of matrices.
        for n in [2u64, 4, 6] {
            for seed in 0..40u64 {
                let e = |k: u64| (seed.wrapping_mul(2654435761).wrapping_add(k * 40503)) % n;
                let a = ModMatrix::from_rows(&[vec![e(1), e(2)], vec![e(3), e(4)]], n);
                let b = vec![e(5), e(6)];
                let brute: Vec<Vec<u64>> = {
                    let mut out = Vec::new();
                    for x0 in 0..n {
                        for x1 in 0..n {
                            if a.apply_row(&[x0, x1]) == b {
                                out.push(vec![x0, x1]);
                            }
                        }
                    }
                    out
                };
                match solve_linear(&a, &b) {
                    Some(s) => assert_eq!(s.enumerate(256).unwrap(), brute, "n={n} seed={seed}"),
                    None => assert!(brute.is_empty(), "n={n} seed={seed}"),
                }
            }
        }
    }
}
