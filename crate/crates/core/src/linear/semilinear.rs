use std::fmt;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldAut, Scalar};

/// An element `(A, σ)` of `GL(n, K) ⋊ Aut(K)`.
///
/// The group law is `(A, σ)(B, τ) = (A·σ(B), σ∘τ)` and the action on
/// `K^n` is `(A, σ)·v = A·σ(v)`; with these conventions the action is a left
/// action of the semidirect product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemilinearElement {
    matrix: ExactMatrix,
    aut: FieldAut,
}

impl SemilinearElement {
    pub fn new(matrix: ExactMatrix, aut: FieldAut) -> Result<Self> {
        if matrix.conductor() != aut.conductor() {
            return Err(Error::IncompatibleGenerators(format!(
                "matrix conductor {} with automorphism conductor {}",
                matrix.conductor(),
                aut.conductor()
            )));
        }
        if matrix.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(SemilinearElement { matrix, aut })
    }

    /// `(A, id)`.
    pub fn linear(matrix: ExactMatrix, function_field: bool) -> Result<Self> {
        let aut = FieldAut::identity(matrix.conductor(), function_field);
        Self::new(matrix, aut)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn aut(&self) -> &FieldAut {
        &self.aut
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_linear(&self) -> bool {
        self.aut.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.aut.is_identity() && self.matrix.is_identity()
    }

    pub fn identity_like(&self) -> Self {
        SemilinearElement {
            matrix: ExactMatrix::identity(self.dim(), self.matrix.conductor()),
            aut: FieldAut::identity(self.aut.conductor(), self.aut.is_function_field()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let twisted = other.matrix.apply_aut(&self.aut)?;
        Ok(SemilinearElement {
            matrix: &self.matrix * &twisted,
            aut: self.aut.compose(&other.aut)?,
        })
    }

    /// `(σ⁻¹(A⁻¹), σ⁻¹)`.
    pub fn inverse(&self) -> Result<Self> {
        let inv_aut = self.aut.inverse();
        Ok(SemilinearElement {
            matrix: self.matrix.inv()?.apply_aut(&inv_aut)?,
            aut: inv_aut,
        })
    }

    /// `A·σ(v)`.
    pub fn act(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let twisted: Vec<Scalar> = v.iter().map(|x| self.aut.apply(x)).collect::<Result<_>>()?;
        Ok(self.matrix.apply_to_vector(&twisted))
    }
}

impl fmt::Debug for SemilinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.matrix, self.aut)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_scalar, Cyclotomic, Mobius};

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            4,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_scalar(s, 4, true).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn negate_t() -> FieldAut {
        let c = |n| Cyclotomic::from_integer(4, n);
        FieldAut::new(4, 1, Mobius::new(c(-1), c(0), c(0), c(1)).unwrap(), true).unwrap()
    }

    #[test]
    fn inverse_gives_identity() {
        let g = SemilinearElement::new(mat(&[&["t", "1"], &["0", "z"]]), negate_t()).unwrap();
        let id = g.mul(&g.inverse().unwrap()).unwrap();
        assert!(id.is_identity());
        assert!(g.inverse().unwrap().mul(&g).unwrap().is_identity());
    }

    #[test]
    fn action_is_compatible_with_product() {
        let g = SemilinearElement::new(mat(&[&["t", "1"], &["0", "z"]]), negate_t()).unwrap();
        let h = SemilinearElement::new(mat(&[&["1", "t^2"], &["1", "0"]]), negate_t()).unwrap();
        let v = vec![parse_scalar("t+z", 4, true).unwrap(), parse_scalar("1/t", 4, true).unwrap()];
        let lhs = g.mul(&h).unwrap().act(&v).unwrap();
        let rhs = g.act(&h.act(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
