use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::field::{FieldAut, Scalar};

/// Square matrix over [`Scalar`], row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    n: usize,
    conductor: u32,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(n: usize, conductor: u32, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !conductor.is_multiple_of(e.conductor())) {
            return Err(Error::IncompatibleGenerators(format!(
                "entry of conductor {} in a matrix over conductor {conductor}",
                bad.conductor()
            )));
        }
        Ok(ExactMatrix {
            n,
            conductor,
            entries: entries.into_iter().map(|e| embed_scalar(e, conductor)).collect(),
        })
    }

    pub fn from_rows(conductor: u32, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix is not square".into()));
        }
        Self::new(n, conductor, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, Scalar::one(conductor))
    }

    pub fn scalar(n: usize, value: Scalar) -> Self {
        let m = value.conductor();
        let mut entries = vec![Scalar::zero(m); n * n];
        for i in 0..n {
            entries[i * n + i] = value.clone();
        }
        ExactMatrix {
            n,
            conductor: m,
            entries,
        }
    }

    pub fn diagonal(conductor: u32, diag: Vec<Scalar>) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![Scalar::zero(conductor); n * n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::new(n, conductor, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.n)
    }

    pub fn has_function_entries(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, Scalar::Func(_)))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Entrywise image under a field automorphism.
    pub fn apply_aut(&self, aut: &FieldAut) -> Result<Self> {
        if aut.is_identity() {
            return Ok(self.clone());
        }
        Ok(ExactMatrix {
            n: self.n,
            conductor: self.conductor,
            entries: self
                .entries
                .iter()
                .map(|e| aut.apply(e))
                .collect::<Result<_>>()?,
        })
    }

    pub fn apply_to_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Scalar::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a: Vec<Vec<Scalar>> = self.rows().map(|r| r.to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = Scalar::one(self.conductor);
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Scalar::zero(self.conductor),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.checked_div(&prev).expect("Bareiss pivot is nonzero");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inv(&self) -> Result<Self> {
        let n = self.n;
        let m = self.conductor;
        let mut a: Vec<Vec<Scalar>> = self
            .rows()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.to_vec();
                row.extend((0..n).map(|j| if i == j { Scalar::one(m) } else { Scalar::zero(m) }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let inv = a[col][col].inv()?;
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        Ok(ExactMatrix {
            n,
            conductor: m,
            entries: a.into_iter().flat_map(|r| r.into_iter().skip(n)).collect(),
        })
    }
}

fn embed_scalar(s: Scalar, m: u32) -> Scalar {
    if s.conductor() == m {
        return s;
    }
    // multiplying by 1 of the target conductor embeds
    &s * &Scalar::one(m)
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let m = self.conductor;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(m);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        ExactMatrix {
            n,
            conductor: m,
            entries,
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;

    fn mat(m: u32, rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            m,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_scalar(s, m, true).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_of_diagonal() {
        let d = mat(4, &[&["z", "0"], &["0", "-z"]]);
        assert!(d.det().is_one());
    }

    #[test]
    fn swap_is_an_involution() {
        let p = mat(4, &[&["0", "1"], &["1", "0"]]);
        assert_eq!(p.inv().unwrap(), p);
        assert_eq!(p.det(), Scalar::Const(crate::field::Cyclotomic::from_integer(4, -1)));
    }

    #[test]
    fn unitriangular_inverse() {
        let u = mat(3, &[&["1", "z"], &["0", "1"]]);
        assert_eq!(u.inv().unwrap(), mat(3, &[&["1", "-z"], &["0", "1"]]));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let s = mat(4, &[&["1", "t"], &["1/t", "1"]]);
        assert!(s.det().is_zero());
        assert_eq!(s.inv(), Err(Error::Singular));
    }

    #[test]
    fn function_field_inverse() {
        let a = mat(4, &[&["0", "t"], &["1/t", "0"]]);
        assert_eq!(&a * &a, ExactMatrix::identity(2, 4));
        assert_eq!(a.inv().unwrap(), a);
        let b = mat(4, &[&["t", "1", "0"], &["0", "t", "z"], &["1", "0", "1"]]);
        assert_eq!(&b * &b.inv().unwrap(), ExactMatrix::identity(3, 4));
    }
}
