//! Hermite and Smith normal forms for the small integer matrices that
//! describe subgroup lattices and relation matrices.
//!
//! Everything here works on row-major `i128` matrices of tiny dimension
//! (the rank of a group, ≤ ~10 in practice), so simple Euclidean pivoting
//! is plenty fast and the wide integer type absorbs any intermediate growth.

// The pivoting loops combine two rows of one matrix in place, which iterator
// forms cannot express without split_at_mut noise; keep uniform index style.
#![allow(clippy::needless_range_loop)]

/// Row-style Hermite normal form of a full-column-rank lattice.
///
/// `rows` are generators of a rank-`k` sublattice of Z^k (callers always
/// include the relation vectors `d_i·e_i`, which forces full rank). Returns
/// the canonical k×k basis: upper triangular, positive diagonal, and each
/// above-diagonal entry reduced into `[0, pivot)`. Two generator sets span
/// the same lattice iff their canonical forms are equal.
pub fn hermite_normal_form(mut rows: Vec<Vec<i128>>, k: usize) -> Vec<Vec<i128>> {
    debug_assert!(rows.iter().all(|r| r.len() == k));
    if k == 0 {
        return Vec::new();
    }
    let n = rows.len();
    let mut top = 0usize;
    for col in 0..k {
        loop {
            let pivot = (top..n)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].unsigned_abs());
            let pivot = pivot.expect("lattice must have full column rank");
            rows.swap(top, pivot);
            let mut clean = true;
            for r in top + 1..n {
                if rows[r][col] != 0 {
                    let q = rows[r][col] / rows[top][col];
                    for c in col..k {
                        rows[r][c] -= q * rows[top][c];
                    }
                    clean &= rows[r][col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if rows[top][col] < 0 {
            for c in col..k {
                rows[top][c] = -rows[top][c];
            }
        }
        top += 1;
        if top == n {
            break;
        }
    }
    debug_assert!(top >= k, "lattice must have full column rank");
    rows.truncate(k);
    // Reduce above-diagonal entries into [0, pivot). Ascending column order:
    // row i only touches columns ≥ i, so finished columns stay reduced.
    for i in 0..k {
        for r in 0..i {
            let q = rows[r][i].div_euclid(rows[i][i]);
            if q != 0 {
                for c in i..k {
                    rows[r][c] -= q * rows[i][c];
                }
            }
        }
    }
    rows
}

/// Product of the diagonal of a square triangular matrix — the index of the
/// lattice it spans inside Z^k.
pub fn diagonal_product(basis: &[Vec<i128>]) -> i128 {
    basis.iter().enumerate().map(|(i, r)| r[i]).product()
}

/// Is `target` in the lattice spanned by a Hermite-form `basis`?
/// Back-substitution along the triangle; membership iff every quotient is
/// an exact integer.
pub fn in_lattice(basis: &[Vec<i128>], target: &[i128]) -> bool {
    let k = basis.len();
    debug_assert_eq!(target.len(), k);
    let mut rest: Vec<i128> = target.to_vec();
    for i in 0..k {
        if rest[i] % basis[i][i] != 0 {
            return false;
        }
        let q = rest[i] / basis[i][i];
        if q != 0 {
            for c in i..k {
                rest[c] -= q * basis[i][c];
            }
        }
    }
    true
}

/// Smith normal form of a square full-rank relation matrix.
///
/// Returns `(diag, v, v_inv)` with `U·R·V = diag(s)` for some unimodular U
/// (discarded), `s_1 | s_2 | … | s_k`, and `v_inv = v⁻¹`. Only the column
/// transform is tracked: for a group presented as `Z^k / rowspan(R)`, the
/// coordinates of `x` in `⊕ Z/s_i` are `x·V`, and the new generators are the
/// rows of `v_inv` expressed over the old ones.
pub fn smith_normal_form(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let k = a.len();
    debug_assert!(a.iter().all(|r| r.len() == k));
    let mut v = identity(k);
    let mut v_inv = identity(k);

    for t in 0..k {
        'pivot: loop {
            // Move the smallest nonzero of the trailing submatrix to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for r in t..k {
                for c in t..k {
                    if a[r][c] != 0
                        && best.is_none_or(|(br, bc)| {
                            a[r][c].unsigned_abs() < a[br][bc].unsigned_abs()
                        })
                    {
                        best = Some((r, c));
                    }
                }
            }
            let (br, bc) = best.expect("relation matrix must have full rank");
            a.swap(t, br);
            if bc != t {
                for row in a.iter_mut() {
                    row.swap(t, bc);
                }
                for row in v.iter_mut() {
                    row.swap(t, bc);
                }
                v_inv.swap(t, bc);
            }

            let mut dirty = false;
            for r in t + 1..k {
                if a[r][t] != 0 {
                    let q = a[r][t] / a[t][t];
                    for c in t..k {
                        a[r][c] -= q * a[t][c];
                    }
                    dirty |= a[r][t] != 0;
                }
            }
            for c in t + 1..k {
                if a[t][c] != 0 {
                    let q = a[t][c] / a[t][t];
                    // col_c -= q·col_t, tracked: v col_c -= q·v col_t,
                    // v_inv row_t += q·v_inv row_c.
                    for row in a.iter_mut() {
                        row[c] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[c] -= q * row[t];
                    }
                    for i in 0..k {
                        let add = q * v_inv[c][i];
                        v_inv[t][i] += add;
                    }
                    dirty |= a[t][c] != 0;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the whole trailing submatrix.
            for r in t + 1..k {
                for c in t + 1..k {
                    if a[r][c] % a[t][t] != 0 {
                        for cc in t..k {
                            let add = a[r][cc];
                            a[t][cc] += add;
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a[t][t] < 0 {
            for c in t..k {
                a[t][c] = -a[t][c];
            }
        }
    }
    let diag = (0..k).map(|i| a[i][i]).collect();
    (diag, v, v_inv)
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}
