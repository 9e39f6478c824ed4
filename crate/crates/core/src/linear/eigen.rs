//! Common eigenspaces of finite abelian matrix groups and the permutation
//! action of a normalizing group on them.

use super::linalg::{kernel_basis, span_basis};
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::field::{Cyclotomic, Scalar};
use crate::group::{FiniteGroup, GroupElement, Homomorphism, Permutation};

/// One common eigenspace with its character on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    /// Reduced row echelon basis; each vector's first nonzero coordinate is 1.
    pub basis: Vec<Vec<Scalar>>,
    /// Eigenvalue of each generator, in generator order.
    pub character: Vec<Cyclotomic>,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub n: usize,
    pub conductor: u32,
    /// Generators of the abelian group, in the order used for refinement.
    pub generators: Vec<GroupElement>,
    /// Subspaces sorted by character.
    pub subspaces: Vec<Eigenspace>,
}

/// Splits `K^n` into common eigenspaces of an abelian group of linear
/// elements (matrices, or semilinear elements with trivial automorphism).
pub fn simultaneous_eigenspaces(a: &FiniteGroup) -> Result<EigenDecomposition> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let first = linear_matrix(a.identity())?;
    let n = first.dim();
    let m = first.conductor();
    let gens = a.generators().to_vec();
    let mut spaces: Vec<Eigenspace> = vec![Eigenspace {
        basis: ExactMatrix::identity(n, m).rows().map(<[Scalar]>::to_vec).collect(),
        character: Vec::new(),
    }];
    let roots = Cyclotomic::roots_of_unity(m);
    for g in &gens {
        let mat = linear_matrix(g)?;
        let order = g
            .order(a.order())
            .ok_or_else(|| Error::Internal("group element of unbounded order".into()))?;
        let candidates: Vec<&Cyclotomic> = roots
            .iter()
            .filter(|r| r.root_of_unity_order().is_some_and(|d| (order as u64).is_multiple_of(d)))
            .collect();
        let mut refined = Vec::new();
        for w in &spaces {
            let mut found = 0;
            for &lambda in &candidates {
                let piece = eigen_in(&mat, &w.basis, lambda);
                if piece.is_empty() {
                    continue;
                }
                found += piece.len();
                let mut character = w.character.clone();
                character.push(lambda.clone());
                refined.push(Eigenspace {
                    basis: piece,
                    character,
                });
            }
            if found != w.dim() {
                return Err(Error::IncompleteSplit {
                    found: found + (n - w.dim()),
                    n,
                });
            }
        }
        spaces = refined;
    }
    spaces.sort_by(|x, y| x.character.cmp(&y.character));
    Ok(EigenDecomposition {
        n,
        conductor: m,
        generators: gens,
        subspaces: spaces,
    })
}

/// `{v ∈ span(basis) : Mv = λv}` as a canonical basis.
fn eigen_in(mat: &ExactMatrix, basis: &[Vec<Scalar>], lambda: &Cyclotomic) -> Vec<Vec<Scalar>> {
    let n = mat.dim();
    let m = mat.conductor();
    let lam = Scalar::Const(lambda.embed(m));
    // columns (M - λ) b_j
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            mat.apply_to_vector(b)
                .iter()
                .zip(b)
                .map(|(mb, x)| mb - &(&lam * x))
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let coeffs = kernel_basis(&rows, basis.len(), m);
    let vectors: Vec<Vec<Scalar>> = coeffs
        .iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    basis
                        .iter()
                        .zip(c)
                        .fold(Scalar::zero(m), |acc, (b, x)| &acc + &(&b[i] * x))
                })
                .collect()
        })
        .collect();
    span_basis(&vectors)
}

fn linear_matrix(g: &GroupElement) -> Result<ExactMatrix> {
    match g {
        GroupElement::Matrix(m) => Ok(m.clone()),
        GroupElement::Semilinear(s) if s.is_linear() => Ok(s.matrix().clone()),
        _ => Err(Error::InvalidParameter(
            "eigenspaces need linear matrix elements".into(),
        )),
    }
}

/// `g·v` for matrix or semilinear `g`.
pub fn act(g: &GroupElement, v: &[Scalar]) -> Result<Vec<Scalar>> {
    match g {
        GroupElement::Matrix(m) => Ok(m.apply_to_vector(v)),
        GroupElement::Semilinear(s) => s.act(v),
        _ => Err(Error::InvalidParameter("element does not act on a vector space".into())),
    }
}

impl EigenDecomposition {
    pub fn total_dim(&self) -> usize {
        self.subspaces.iter().map(Eigenspace::dim).sum()
    }

    /// Rank of the union of all bases.
    pub fn rank(&self) -> usize {
        let all: Vec<Vec<Scalar>> = self.subspaces.iter().flat_map(|s| s.basis.clone()).collect();
        super::linalg::rank(&all)
    }

    /// The scalar by which `g` acts on each subspace, if it acts on every
    /// subspace by a single scalar.
    pub fn scalars_of(&self, g: &GroupElement) -> Result<Option<Vec<Cyclotomic>>> {
        let mut out = Vec::new();
        for w in &self.subspaces {
            let mut lambda: Option<Scalar> = None;
            for v in &w.basis {
                let image = act(g, v)?;
                // v is in echelon form, so its first nonzero entry is 1
                let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
                let l = image[lead].clone();
                let scaled: Vec<Scalar> = v.iter().map(|x| &l * x).collect();
                if scaled != image || lambda.as_ref().is_some_and(|p| *p != l) {
                    return Ok(None);
                }
                lambda = Some(l);
            }
            match lambda.and_then(|l| l.as_constant().cloned()) {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}

/// Permutation action of `G` on the subspaces of `d`.
#[derive(Clone, Debug)]
pub struct EigenspaceAction {
    /// Image of each generator of `G` on subspace indices.
    pub generator_permutations: Vec<Permutation>,
    /// `G → Sym(r)`.
    pub homomorphism: Homomorphism,
    /// `G₁`, the kernel.
    pub kernel: FiniteGroup,
}

/// Computes how `G` permutes the subspaces of `d`; requires the abelian
/// group behind `d` to be normal in `G`.
pub fn eigenspace_permutation_action(g: &FiniteGroup, d: &EigenDecomposition) -> Result<EigenspaceAction> {
    let a = g.subgroup_generated(&d.generators)?;
    if !g.is_normal(&a)? {
        return Err(Error::NotNormal);
    }
    let r = d.subspaces.len();
    let mut perms = Vec::new();
    for s in g.generators() {
        let mut images = vec![0u32; r];
        for (i, w) in d.subspaces.iter().enumerate() {
            let moved: Vec<Vec<Scalar>> = w.basis.iter().map(|v| act(s, v)).collect::<Result<_>>()?;
            let moved = span_basis(&moved);
            let j = d
                .subspaces
                .iter()
                .position(|x| x.basis == moved)
                .ok_or(Error::NotInvariant)?;
            images[i] = j as u32;
        }
        perms.push(Permutation::from_images(images).map_err(|_| Error::NotInvariant)?);
    }
    let image_gens: Vec<GroupElement> = perms.iter().cloned().map(GroupElement::from).collect();
    let sym = FiniteGroup::enumerate(image_gens.clone(), factorial_cap(r))?;
    let hom = Homomorphism::from_images(g, &sym, &image_gens)?;
    let kernel = hom.kernel();
    Ok(EigenspaceAction {
        generator_permutations: perms,
        homomorphism: hom,
        kernel,
    })
}

fn factorial_cap(r: usize) -> usize {
    (1..=r).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX)
}
