//! Kernels of integer matrices modulo `d`.
//!
//! Two independent routes: Gauss-Jordan elimination over the field `Z_p`
//! for prime moduli, and an integer Smith normal form for any modulus.

use crate::group::Modulus;

/// `P * A * Q = S` with `P`, `Q` unimodular and `S` diagonal, every diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Non-zero diagonal entries `s_0 | s_1 | ...`, all positive.
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect()
}

fn mul_sub(target: i128, q: i128, source: i128) -> i128 {
    q.checked_mul(source)
        .and_then(|p| target.checked_sub(p))
        .expect("Smith normal form coefficient overflow")
}

/// `row[i] -= q * row[src]` on a dense matrix.
fn row_axpy(m: &mut [Vec<i128>], i: usize, src: usize, q: i128) {
    if q == 0 {
        return;
    }
    let (a, b) = if i < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[src])
    };
    for (x, &y) in a.iter_mut().zip(b.iter()) {
        *x = mul_sub(*x, q, y);
    }
}

/// `col[j] -= q * col[src]`.
fn col_axpy(m: &mut [Vec<i128>], j: usize, src: usize, q: i128) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[j] = mul_sub(row[j], q, row[src]);
    }
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(m: &mut [Vec<i128>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -*x;
    }
}

pub fn smith_normal_form(matrix: &[Vec<i128>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    for r in &a {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest non-zero magnitude in the trailing block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                row_axpy(&mut a, i, t, q);
                row_axpy(&mut left, i, t, q);
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                col_axpy(&mut a, j, t, q);
                col_axpy(&mut right, j, t, q);
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // enforce divisibility into the trailing block
                let p = a[t][t];
                match (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                    Some(i) => {
                        row_axpy(&mut a, t, i, -1);
                        row_axpy(&mut left, t, i, -1);
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let col_min = (t..rows)
                .filter(|&i| a[i][t] != 0)
                .min_by_key(|&i| a[i][t].unsigned_abs());
            let row_min = (t..cols)
                .filter(|&j| a[t][j] != 0)
                .min_by_key(|&j| a[t][j].unsigned_abs());
            let col_best = col_min.map(|i| a[i][t].unsigned_abs());
            let row_best = row_min.map(|j| a[t][j].unsigned_abs());
            if col_best.unwrap_or(u128::MAX) <= row_best.unwrap_or(u128::MAX) {
                let i = col_min.expect("pivot column has a non-zero entry");
                a.swap(t, i);
                left.swap(t, i);
            } else {
                let j = row_min.expect("pivot row has a non-zero entry");
                swap_cols(&mut a, t, j);
                swap_cols(&mut right, t, j);
            }
        }
        if a[t][t] < 0 {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
        diagonal.push(a[t][t]);
    }

    SmithForm {
        rows,
        cols,
        diagonal,
        left,
        right,
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators of `{x : A x = 0 mod d}` read off the Smith form: column `i` of
/// `Q` scaled by `d / gcd(s_i, d)`, with `s_i = 0` past the rank.
pub fn kernel_snf(matrix: &[Vec<u32>], cols: usize, modulus: Modulus) -> Vec<Vec<u32>> {
    let d = modulus.get() as i128;
    let lifted: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let snf = smith_normal_form(&lifted, cols);
    let mut generators = Vec::new();
    for i in 0..cols {
        let s = snf.diagonal.get(i).copied().unwrap_or(0);
        let g = gcd(s.unsigned_abs(), d as u128) as i128;
        let scale = d / g;
        let column: Vec<u32> = (0..cols)
            .map(|r| (snf.right[r][i].rem_euclid(d) * scale).rem_euclid(d) as u32)
            .collect();
        if column.iter().any(|&x| x != 0) {
            generators.push(column);
        }
    }
    generators
}

fn inverse_mod_prime(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Null-space basis over the field `Z_p`, one vector per free column of the
/// reduced row echelon form.
pub fn nullspace_prime_field(matrix: &[Vec<u32>], cols: usize, modulus: Modulus) -> Vec<Vec<u32>> {
    debug_assert!(modulus.is_prime());
    let p = modulus.get() as u64;
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % p).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(found) = (row..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, found);
        let inv = inverse_mod_prime(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != row && a[i][col] != 0 {
                let factor = a[i][col];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - factor * a[row][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = ((p - a[r][free]) % p) as u32;
        }
        basis.push(v);
    }
    basis
}
