//! Row reduction over [`Scalar`].

use crate::field::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : Mv = 0}`, one vector per free column, each scaled so its
/// first nonzero coordinate is 1.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize, conductor: u32) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(conductor); ncols];
        v[free] = Scalar::one(conductor);
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(normalize(v));
    }
    basis
}

/// Scales `v` so its first nonzero coordinate is 1.
pub fn normalize(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF.
pub fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut m = vectors.to_vec();
    let k = rref(&mut m).len();
    m.truncate(k);
    m
}

/// Basis of the intersection of two subspaces given by bases.
pub fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>], conductor: u32) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // solve sum x_i a_i - sum y_j b_j = 0; columns are the vectors
    let cols: Vec<Vec<Scalar>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = kernel_basis(&rows, cols.len(), conductor);
    let vectors: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|coef| {
            (0..n)
                .map(|i| {
                    a.iter()
                        .zip(coef)
                        .fold(Scalar::zero(conductor), |acc, (v, x)| &acc + &(&v[i] * x))
                })
                .collect()
        })
        .collect();
    span_basis(&vectors)
}
