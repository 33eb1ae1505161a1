//! Dense linear algebra over `F_p`: reduced row echelon form, rank, kernels,
//! solving, and canonical subspace representatives.
//!
//! Matrices are row-major `Vec<Vec<u64>>`. Dimensions in this crate stay tiny
//! (a few dozen at most), so plain Gaussian elimination is the right tool.

use crate::fp::{is_zero_vec, PrimeField};

/// Brings `rows` into reduced row echelon form in place and returns the rank.
///
/// The RREF is canonical, so two spanning sets generate the same subspace
/// exactly when their RREFs (with zero rows dropped) coincide.
pub fn rref(f: &PrimeField, rows: &mut [Vec<u64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = f.inv(rows[pivot_row][col]);
        for x in rows[pivot_row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                let (head, tail) = rows.split_at_mut(r.max(pivot_row));
                let (a, b) = if r < pivot_row {
                    (&mut head[r], &tail[0])
                } else {
                    (&mut tail[0], &head[pivot_row])
                };
                for (x, &y) in a.iter_mut().zip(b.iter()) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

pub fn rank(f: &PrimeField, rows: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    rref(f, &mut m)
}

/// Canonical basis of the row space: RREF with zero rows dropped.
pub fn canonical_subspace(f: &PrimeField, spanning: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = spanning.to_vec();
    let r = rref(f, &mut m);
    m.truncate(r);
    m
}

/// Basis of the null space `{x : M x = 0}` where the rows of `m` are the
/// equations. Deterministic: one basis vector per free column, in column
/// order, with a 1 in the free position.
pub fn kernel_basis(f: &PrimeField, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut red: Vec<Vec<u64>> = m.to_vec();
    let rank = rref(f, &mut red);
    red.truncate(rank);

    let mut pivot_of_row = Vec::with_capacity(rank);
    let mut is_pivot = vec![false; ncols];
    for row in &red {
        let col = row.iter().position(|&x| x != 0).expect("nonzero row");
        pivot_of_row.push(col);
        is_pivot[col] = true;
    }

    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &piv) in red.iter().zip(&pivot_of_row) {
            // pivot entry is 1, so x_piv = -row[free]
            v[piv] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves `M x = b` for one solution, or `None` if inconsistent.
pub fn solve(f: &PrimeField, m: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(m.len(), b.len(), "rhs length must match row count");
    if m.is_empty() {
        return Some(Vec::new());
    }
    let ncols = m[0].len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let rank = rref(f, &mut aug);
    aug.truncate(rank);
    let mut x = vec![0u64; ncols];
    for row in &aug {
        let piv = row.iter().position(|&v| v != 0).expect("nonzero row");
        if piv == ncols {
            return None; // row 0 ... 0 | nonzero
        }
        x[piv] = row[ncols];
    }
    Some(x)
}

/// Whether `v` lies in the row space of `basis`.
pub fn in_span(f: &PrimeField, basis: &[Vec<u64>], v: &[u64]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let mut m: Vec<Vec<u64>> = basis.to_vec();
    let base_rank = rref(f, &mut m);
    m.truncate(base_rank);
    m.push(v.to_vec());
    rank(f, &m) == base_rank
}

/// Whether the vectors in `tuple` are linearly independent modulo the span of
/// `baseline`: rank(baseline ∪ tuple) = rank(baseline) + |tuple|.
pub fn independent_mod(f: &PrimeField, baseline: &[Vec<u64>], tuple: &[Vec<u64>]) -> bool {
    let base_rank = rank(f, baseline);
    let mut all: Vec<Vec<u64>> = baseline.to_vec();
    all.extend(tuple.iter().cloned());
    rank(f, &all) == base_rank + tuple.len()
}

/// Two subspaces given by spanning sets are equal.
pub fn same_subspace(f: &PrimeField, a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    canonical_subspace(f, a) == canonical_subspace(f, b)
}

/// One representative per line of `F_p^dim`: all nonzero vectors whose first
/// nonzero coordinate is 1, in lexicographic order.
pub fn projective_lines(f: &PrimeField, dim: usize) -> Vec<Vec<u64>> {
    let p = f.p();
    let mut out = Vec::new();
    let mut v = vec![0u64; dim];
    loop {
        if let Some(line) = f.normalize_line(&v) {
            if line == v {
                out.push(v.clone());
            }
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] + 1 < p {
                v[i] += 1;
                for x in &mut v[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// All vectors of the subspace spanned by `basis` (small subspaces only).
pub fn enumerate_subspace(f: &PrimeField, basis: &[Vec<u64>], ambient_dim: usize) -> Vec<Vec<u64>> {
    let p = f.p();
    let mut out = vec![vec![0u64; ambient_dim]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                let mut w = v.clone();
                f.vec_add_scaled(&mut w, c, b);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
