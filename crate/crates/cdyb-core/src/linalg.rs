//! Dense exact linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{zero, Rat};

pub type Mat = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { zero() }).collect())
        .collect()
}

pub fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &Mat, v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(zero(), |s, x| s + x))
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).fold(zero(), |s, x| s + x)
}

/// Bilinear form `a^T g b`.
pub fn pair(g: &Mat, a: &[Rat], b: &[Rat]) -> Rat {
    dot(a, &mat_vec(g, b))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Mat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let d = &f * &m[row][c];
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Mat, cols: usize) -> usize {
    let mut m = m.clone();
    rref(&mut m, cols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<Rat>> {
    let mut r = m.clone();
    let pivots = rref(&mut r, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero(); cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// Affine solution set of `m x = b`: particular solution with free variables
/// set to zero, and a kernel basis. `None` when inconsistent.
pub fn solve_affine(m: &Mat, b: &[Rat], cols: usize) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let mut aug: Mat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some((x, nullspace(m, cols)))
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug, 2 * n);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Z-basis of the lattice spanned by the given rational vectors, by integer
/// row reduction. Returns `(basis, coords)` with `vectors[i] = Σ coords[i][k] basis[k]`.
pub fn lattice_basis(vectors: &[Vec<Rat>], dim: usize) -> (Vec<Vec<Rat>>, Vec<Vec<i64>>) {
    let mut den = BigInt::one();
    for v in vectors {
        for x in v {
            den = den.lcm(x.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
        .collect();
    // Row-reduce the matrix [scaled | I] over Z.
    let k = vectors.len();
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>)> = scaled
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut t = vec![BigInt::zero(); k];
            t[i] = BigInt::one();
            (v, t)
        })
        .collect();
    let mut top = 0;
    for col in 0..dim {
        loop {
            let nz: Vec<usize> = (top..k).filter(|&r| !rows[r].0[col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r].0[col].abs()).unwrap();
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..k {
                if rows[r].0[col].is_zero() {
                    continue;
                }
                let q = rows[r].0[col].div_floor(&rows[top].0[col]);
                let (pv, pt) = rows[top].clone();
                for c in 0..dim {
                    rows[r].0[c] -= &q * &pv[c];
                }
                for c in 0..k {
                    rows[r].1[c] -= &q * &pt[c];
                }
                if !rows[r].0[col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < k && !rows[top].0[col].is_zero() {
            if rows[top].0[col].is_negative() {
                rows[top].0.iter_mut().for_each(|x| *x = -x.clone());
                rows[top].1.iter_mut().for_each(|x| *x = -x.clone());
            }
            top += 1;
        }
    }
    let basis_int: Vec<Vec<BigInt>> = rows[..top].iter().map(|r| r.0.clone()).collect();
    let basis: Vec<Vec<Rat>> = basis_int
        .iter()
        .map(|v| v.iter().map(|x| Rat::new(x.clone(), den.clone())).collect())
        .collect();
    // Coordinates by exact solve against the (independent) basis.
    let bt = transpose(&basis, dim);
    let coords = vectors
        .iter()
        .map(|v| {
            let (x, _) = solve_affine(&bt, v, top).expect("vector lies in its own lattice");
            x.iter()
                .map(|c| crate::rational::to_i64(c).expect("integral lattice coordinates"))
                .collect()
        })
        .collect();
    (basis, coords)
}
