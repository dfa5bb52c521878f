//! Integer Smith/Hermite forms, used to extract cyclic decompositions of
//! finite abelian groups presented as subgroups or quotients of a product of
//! cyclic groups.

/// Square-free integer matrix wrapper for the small exact computations here.
type IMat = Vec<Vec<i128>>;

fn imat_identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            let v = a[i][t];
            if v == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += v * b[t][j];
            }
        }
    }
    out
}

/// Smith normal form: returns (u, d, v, v_inv) with u*a*v = d diagonal,
/// d[i][i] dividing d[i+1][i+1], and u, v unimodular.
pub fn smith_normal_form(a: &IMat) -> (IMat, IMat, IMat, IMat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = imat_identity(rows);
    let mut v = imat_identity(cols);
    let mut v_inv = imat_identity(cols);

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Find a nonzero pivot at or after (t, t).
        let mut pivot = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            // column swap: v <- v * P, v_inv <- P * v_inv
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
        }

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in (t + 1)..rows {
                while d[i][t] != 0 {
                    let q = d[i][t].div_euclid(d[t][t]);
                    if q != 0 {
                        for j in 0..cols {
                            d[i][j] -= q * d[t][j];
                        }
                        for j in 0..rows {
                            u[i][j] -= q * u[t][j];
                        }
                    }
                    if d[i][t] != 0 {
                        d.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            // Clear row t right of the pivot.
            for j in (t + 1)..cols {
                while d[t][j] != 0 {
                    let q = d[t][j].div_euclid(d[t][t]);
                    if q != 0 {
                        for i in 0..rows {
                            d[i][j] -= q * d[i][t];
                        }
                        // v <- v * E(col j -= q col t); v_inv <- E^-1 * v_inv,
                        // i.e. v_inv row t += q * v_inv row j
                        for row in v.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for cidx in 0..cols {
                            let add = q * v_inv[j][cidx];
                            v_inv[t][cidx] += add;
                        }
                        dirty = true;
                    }
                    if d[t][j] != 0 {
                        // Swap columns t and j to continue the gcd ladder.
                        for row in d.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        v_inv.swap(t, j);
                        dirty = true;
                    }
                }
            }
            let _ = dirty;
            if (t + 1..rows).all(|i| d[i][t] == 0) && (t + 1..cols).all(|j| d[t][j] == 0) {
                break;
            }
        }

        // Ensure the pivot divides everything in the remaining block.
        let mut fixed = false;
        'divfix: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if d[i][j] % d[t][t] != 0 {
                    // Add row i to row t and redo this stage.
                    for jj in 0..cols {
                        d[t][jj] += d[i][jj];
                    }
                    for jj in 0..rows {
                        u[t][jj] += u[i][jj];
                    }
                    fixed = true;
                    break 'divfix;
                }
            }
        }
        if fixed {
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    (u, d, v, v_inv)
}

/// A finite abelian group presented by independent generators inside an
/// ambient product of cyclic groups: the map (c_1, ..., c_m) with
/// c_i in Z_{orders[i]} sending coefficients to sum(c_i * basis[i]) is a
/// group isomorphism onto the subgroup or quotient it describes.
#[derive(Debug, Clone)]
pub struct GroupBasis {
    /// Independent generators, as coefficient vectors in the ambient group.
    pub basis: Vec<Vec<u64>>,
    /// Order of each generator; the group is the direct product of the
    /// cyclic groups they generate.
    pub orders: Vec<u64>,
}

impl GroupBasis {
    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Element of the ambient group for a coefficient tuple.
    pub fn element(&self, coeffs: &[u64], ambient_orders: &[u64]) -> Vec<u64> {
        let dim = ambient_orders.len();
        let mut out = vec![0u64; dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for j in 0..dim {
                out[j] = (out[j] + c * b[j]) % ambient_orders[j];
            }
        }
        out
    }

    /// Enumerates (coefficient tuple, ambient element) pairs in lexicographic
    /// coefficient order.
    pub fn enumerate(&self, ambient_orders: &[u64]) -> Vec<(Vec<u64>, Vec<u64>)> {
        let mut out = Vec::with_capacity(self.group_order() as usize);
        let k = self.orders.len();
        let mut coeffs = vec![0u64; k];
        loop {
            out.push((coeffs.clone(), self.element(&coeffs, ambient_orders)));
            // mixed-radix increment, last coordinate fastest
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < self.orders[pos] {
                    break;
                }
                coeffs[pos] = 0;
                if pos == 0 {
                    return out;
                }
            }
            if k == 0 {
                return out;
            }
        }
    }
}

fn hermite_basis(ambient_orders: &[u64], generators: &[Vec<u64>]) -> IMat {
    // Basis (as rows) of the integer lattice spanned by the generator lifts
    // together with the relation lattice diag(ambient_orders).
    let dim = ambient_orders.len();
    let mut rows: IMat = generators
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    for (i, &o) in ambient_orders.iter().enumerate() {
        let mut r = vec![0i128; dim];
        r[i] = o as i128;
        rows.push(r);
    }
    // Row-style Hermite reduction to a square upper-triangular basis.
    let mut mat = rows;
    let mut pivot_row = 0usize;
    for col in 0..dim {
        // gcd ladder down the column
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..mat.len() {
                if mat[i][col] != 0 {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if mat[i][col].abs() < mat[b][col].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            mat.swap(pivot_row, b);
            let p = mat[pivot_row][col];
            let mut done = true;
            for i in (pivot_row + 1)..mat.len() {
                if mat[i][col] != 0 {
                    let q = mat[i][col].div_euclid(p);
                    for j in 0..dim {
                        let sub = q * mat[pivot_row][j];
                        mat[i][j] -= sub;
                    }
                    if mat[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if mat[pivot_row][col] < 0 {
            for j in 0..dim {
                mat[pivot_row][j] = -mat[pivot_row][j];
            }
        }
        debug_assert!(mat[pivot_row][col] != 0, "lattice not full rank");
        pivot_row += 1;
    }
    mat.truncate(dim);
    mat
}

/// Exact solve of x * b = target for upper-triangular integer b (back
/// substitution); panics if the solution is not integral.
fn solve_upper_triangular(b: &IMat, target: &[i128]) -> Vec<i128> {
    let n = b.len();
    let mut x = vec![0i128; n];
    let mut rem: Vec<i128> = target.to_vec();
    for col in 0..n {
        // only rows <= col have a nonzero entry in this column, so rem[col]
        // is x[col] * b[col][col] once earlier rows are subtracted
        let piv = b[col][col];
        debug_assert!(piv != 0);
        assert!(
            rem[col] % piv == 0,
            "non-integral triangular solve: sublattice containment violated"
        );
        let c = rem[col] / piv;
        x[col] = c;
        for j in 0..n {
            rem[j] -= c * b[col][j];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    x
}

/// Cyclic decomposition of the subgroup of prod Z_{ambient_orders[i]}
/// generated by `generators`: independent generators whose cyclic spans
/// direct-sum to the subgroup.
pub fn subgroup_decomposition(ambient_orders: &[u64], generators: &[Vec<u64>]) -> GroupBasis {
    let dim = ambient_orders.len();
    if dim == 0 {
        return GroupBasis {
            basis: vec![],
            orders: vec![],
        };
    }
    // M1 = lattice(generators + relations), M2 = relation lattice; the group
    // is M1 / M2. Find a basis of M1 adapted to M2 via the Smith form of the
    // coordinate matrix of M2 in a basis of M1.
    let b1 = hermite_basis(ambient_orders, generators);
    let mut c: IMat = Vec::with_capacity(dim);
    for (i, &o) in ambient_orders.iter().enumerate() {
        let mut target = vec![0i128; dim];
        target[i] = o as i128;
        c.push(solve_upper_triangular(&b1, &target));
    }
    let (u, d, _v, v_inv) = smith_normal_form(&c);
    let _ = u;
    // Adapted basis of M1: rows of v_inv * b1; the i-th generator has order
    // d[i][i] in the quotient.
    let adapted = imat_mul(&v_inv, &b1);
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    for i in 0..dim {
        let ord = d[i][i].unsigned_abs() as u64;
        debug_assert!(ord > 0, "relation lattice has full rank");
        if ord == 1 {
            continue;
        }
        let row: Vec<u64> = adapted[i]
            .iter()
            .zip(ambient_orders)
            .map(|(&x, &o)| x.rem_euclid(o as i128) as u64)
            .collect();
        basis.push(row);
        orders.push(ord);
    }
    GroupBasis { basis, orders }
}

/// Cyclic decomposition of the quotient of prod Z_{ambient_orders[i]} by the
/// subgroup generated by `generators`. Returns the basis of the quotient
/// (lifted to ambient coordinates) together with the projection data: the
/// coefficient tuple of an ambient element x is `project(x)`.
#[derive(Debug, Clone)]
pub struct QuotientDecomposition {
    pub basis: GroupBasis,
    /// Column transform: coefficients of x in the quotient are
    /// (x * v)[i] mod orders[i], restricted to the kept indices.
    v: IMat,
    kept: Vec<usize>,
    all_orders: Vec<u64>,
}

impl QuotientDecomposition {
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        let dim = self.v.len();
        debug_assert_eq!(x.len(), dim);
        let mut full = vec![0i128; dim];
        for i in 0..dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..dim {
                full[j] += x[i] as i128 * self.v[i][j];
            }
        }
        self.kept
            .iter()
            .map(|&j| full[j].rem_euclid(self.all_orders[j] as i128) as u64)
            .collect()
    }

    pub fn orders(&self) -> &[u64] {
        &self.basis.orders
    }
}

pub fn quotient_decomposition(
    ambient_orders: &[u64],
    generators: &[Vec<u64>],
) -> QuotientDecomposition {
    let dim = ambient_orders.len();
    let b = hermite_basis(ambient_orders, generators);
    let (_u, d, v, v_inv) = smith_normal_form(&b);
    let mut kept = Vec::new();
    let mut all_orders = vec![1u64; dim];
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    for i in 0..dim {
        let ord = d[i][i].unsigned_abs() as u64;
        all_orders[i] = ord.max(1);
        if ord <= 1 {
            continue;
        }
        kept.push(i);
        orders.push(ord);
        let row: Vec<u64> = v_inv[i]
            .iter()
            .zip(ambient_orders)
            .map(|(&x, &o)| x.rem_euclid(o as i128) as u64)
            .collect();
        basis.push(row);
    }
    QuotientDecomposition {
        basis: GroupBasis { basis, orders },
        v,
        kept,
        all_orders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn closure(ambient: &[u64], gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut seen = BTreeSet::new();
        seen.insert(vec![0; ambient.len()]);
        let mut frontier: Vec<Vec<u64>> = seen.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .zip(ambient)
                    .map(|((&a, &b), &o)| (a + b) % o)
                    .collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen
    }

    #[test]
    fn smith_small() {
        let a: IMat = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let (u, d, v, v_inv) = smith_normal_form(&a);
        let uav = imat_mul(&imat_mul(&u, &a), &v);
        assert_eq!(uav, d);
        let id = imat_mul(&v, &v_inv);
        assert_eq!(id, imat_identity(3));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d[i][j], 0);
                }
            }
        }
        // invariant factors: gcd of k x k minors gives 2, 4, 624
        assert_eq!(d[0][0], 2);
        assert_eq!(d[1][1], 2);
        assert_eq!(d[2][2], 156);
        assert_eq!(d[2][2] % d[1][1], 0);
        assert_eq!(d[1][1] % d[0][0], 0);
    }

    #[test]
    fn subgroup_basis_is_independent_and_spans() {
        // subgroup of Z_4 x Z_4 generated by (2,1)
        let ambient = vec![4u64, 4];
        let gens = vec![vec![2, 1]];
        let gb = subgroup_decomposition(&ambient, &gens);
        let expect = closure(&ambient, &gens);
        assert_eq!(gb.group_order() as usize, expect.len());
        let got: BTreeSet<Vec<u64>> = gb
            .enumerate(&ambient)
            .into_iter()
            .map(|(_, e)| e)
            .collect();
        assert_eq!(got, expect);
        // independence: enumerate must not repeat
        assert_eq!(gb.enumerate(&ambient).len(), expect.len());
    }

    #[test]
    fn subgroup_basis_mixed_orders() {
        let ambient = vec![8u64, 2, 3];
        let gens = vec![vec![2, 1, 0], vec![0, 0, 1], vec![4, 0, 2]];
        let gb = subgroup_decomposition(&ambient, &gens);
        let expect = closure(&ambient, &gens);
        let got: BTreeSet<Vec<u64>> = gb
            .enumerate(&ambient)
            .into_iter()
            .map(|(_, e)| e)
            .collect();
        assert_eq!(gb.group_order() as usize, expect.len());
        assert_eq!(got, expect);
    }

    #[test]
    fn quotient_z4_by_two() {
        // Z_4 / {0,2} = Z_2
        let q = quotient_decomposition(&[4], &[vec![2]]);
        assert_eq!(q.orders(), &[2]);
        assert_eq!(q.project(&[0]), vec![0]);
        assert_eq!(q.project(&[2]), vec![0]);
        assert_ne!(q.project(&[1]), vec![0]);
        assert_eq!(q.project(&[1]), q.project(&[3]));
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let ambient = vec![4u64, 6];
        let gens = vec![vec![2, 3]];
        let q = quotient_decomposition(&ambient, &gens);
        let order: u64 = q.orders().iter().product();
        assert_eq!(order, 24 / 2);
        for a0 in 0..4u64 {
            for a1 in 0..6u64 {
                for b0 in 0..4u64 {
                    for b1 in 0..6u64 {
                        let s = vec![(a0 + b0) % 4, (a1 + b1) % 6];
                        let pa = q.project(&[a0, a1]);
                        let pb = q.project(&[b0, b1]);
                        let sum: Vec<u64> = pa
                            .iter()
                            .zip(&pb)
                            .zip(q.orders())
                            .map(|((&x, &y), &o)| (x + y) % o)
                            .collect();
                        assert_eq!(q.project(&s), sum);
                    }
                }
            }
        }
        // kernel is exactly the subgroup
        let sub = closure(&ambient, &gens);
        for a0 in 0..4u64 {
            for a1 in 0..6u64 {
                let z = q.project(&[a0, a1]).iter().all(|&x| x == 0);
                assert_eq!(z, sub.contains(&vec![a0, a1]));
            }
        }
    }
}
