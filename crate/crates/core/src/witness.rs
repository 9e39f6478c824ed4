//! Standard group families and a catalog of finite semilinear groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_scalar, Cyclotomic, FieldAut, Mobius, Scalar};
use crate::group::{FiniteGroup, GroupElement, HeisenbergElement, Permutation, TupleElement, Twist, DEFAULT_MAX_ORDER};
use crate::linear::{ExactMatrix, SemilinearElement};

/// A named family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Triples mod a prime `p`, order `p³`.
    Heisenberg { p: u64 },
    /// Generated by an `n`-cycle.
    Cyclic { n: usize },
    /// `(Z/p)^n` as disjoint `p`-cycles.
    ElementaryAbelian { p: u64, n: usize },
    /// Symmetries of the `n`-gon, order `2n`.
    Dihedral { n: usize },
    /// Dicyclic group of order `4n` in `GL(2, Q(ζ_2n))`; `n = 2` is `Q8`.
    Quaternion { n: usize },
    DirectProduct { factors: Vec<FamilySpec> },
    /// Entry of [`semilinear_catalog`] by name.
    SemilinearExample { name: String },
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Generators of a family, validated.
pub fn generators(spec: &FamilySpec) -> Result<Vec<GroupElement>> {
    match spec {
        FamilySpec::Heisenberg { p } => {
            if !is_prime(*p) {
                return Err(Error::InvalidParameter(format!("heisenberg needs a prime, got {p}")));
            }
            Ok(vec![
                HeisenbergElement::new(*p, 1, 0, 0).into(),
                HeisenbergElement::new(*p, 0, 1, 0).into(),
            ])
        }
        FamilySpec::Cyclic { n } => {
            positive(*n, "cyclic")?;
            Ok(vec![cycle(*n, 0, *n).into()])
        }
        FamilySpec::ElementaryAbelian { p, n } => {
            if !is_prime(*p) {
                return Err(Error::InvalidParameter(format!("elementary abelian needs a prime, got {p}")));
            }
            positive(*n, "elementary abelian")?;
            let p = *p as usize;
            Ok((0..*n).map(|i| cycle(p * n, i * p, p).into()).collect())
        }
        FamilySpec::Dihedral { n } => {
            positive(*n, "dihedral")?;
            let rot = GroupElement::Tuple(TupleElement {
                parts: vec![cycle(*n, 0, *n).into(), Permutation::identity(2).into()],
                twist: Twist::SignInversion,
            });
            let flip = GroupElement::Tuple(TupleElement {
                parts: vec![Permutation::identity(*n).into(), cycle(2, 0, 2).into()],
                twist: Twist::SignInversion,
            });
            Ok(vec![rot, flip])
        }
        FamilySpec::Quaternion { n } => {
            positive(*n, "quaternion")?;
            let m = 2 * *n as u32;
            let z = Scalar::Const(Cyclotomic::zeta(m));
            let zi = Scalar::Const(Cyclotomic::zeta_power(m, -1));
            let a = ExactMatrix::diagonal(m, vec![z, zi])?;
            let x = matrix(m, &[&["0", "-1"], &["1", "0"]], false)?;
            Ok(vec![a.into(), x.into()])
        }
        FamilySpec::DirectProduct { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidParameter("direct product of no factors".into()));
            }
            let gens: Vec<Vec<GroupElement>> = factors.iter().map(generators).collect::<Result<_>>()?;
            let ids: Vec<GroupElement> = gens.iter().map(|g| g[0].identity_like()).collect();
            let mut out = Vec::new();
            for (i, gs) in gens.iter().enumerate() {
                for g in gs {
                    let mut parts = ids.clone();
                    parts[i] = g.clone();
                    out.push(GroupElement::Tuple(TupleElement {
                        parts,
                        twist: Twist::Direct,
                    }));
                }
            }
            Ok(out)
        }
        FamilySpec::SemilinearExample { name } => catalog_generators(name),
    }
}

fn positive(n: usize, family: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{family} needs n >= 1")));
    }
    Ok(())
}

/// The cycle `(start+1 ... start+len)` on `degree` points.
fn cycle(degree: usize, start: usize, len: usize) -> Permutation {
    let pts: Vec<usize> = (start + 1..=start + len).collect();
    let cycles = if len > 1 { vec![pts] } else { vec![] };
    Permutation::from_cycles(degree, &cycles).expect("points in range")
}

/// Builds and enumerates a family member.
pub fn build(spec: &FamilySpec) -> Result<FiniteGroup> {
    FiniteGroup::enumerate(generators(spec)?, DEFAULT_MAX_ORDER)
}

fn matrix(m: u32, rows: &[&[&str]], transcendental: bool) -> Result<ExactMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s, m, transcendental)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(m, rows)
}

fn mobius(m: u32, [a, b, c, d]: [i64; 4]) -> Result<Mobius> {
    let f = |x| Cyclotomic::from_integer(m, x);
    Mobius::new(f(a), f(b), f(c), f(d))
}

fn semilinear(m: u32, rows: &[&[&str]], map: [i64; 4]) -> Result<GroupElement> {
    let aut = FieldAut::new(m, 1, mobius(m, map)?, true)?;
    Ok(SemilinearElement::new(matrix(m, rows, true)?, aut)?.into())
}

fn linear(m: u32, rows: &[&[&str]], function_field: bool) -> Result<GroupElement> {
    Ok(SemilinearElement::linear(matrix(m, rows, function_field)?, function_field)?.into())
}

const NEG_T: [i64; 4] = [-1, 0, 0, 1];
const INV_T: [i64; 4] = [0, 1, 1, 0];

/// A catalog entry: a finite subgroup of `GL(n, K) ⋊ Aut(K)`.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub dimension: usize,
    pub conductor: u32,
    pub function_field: bool,
    pub order: usize,
    /// Nilpotency class of the image in `Aut(K)`.
    pub gamma_class: usize,
    pub group: FiniteGroup,
}

struct Recipe {
    name: &'static str,
    description: &'static str,
    dimension: usize,
    conductor: u32,
    function_field: bool,
    order: usize,
    gamma_class: usize,
}

const RECIPES: &[Recipe] = &[
    Recipe {
        name: "dihedral-twist",
        description: "<(diag(i,-i), id), ([[0,1],[1,0]], t -> -t)> over Q(i)(t)",
        dimension: 2,
        conductor: 4,
        function_field: true,
        order: 8,
        gamma_class: 1,
    },
    Recipe {
        name: "monomial-s3",
        description: "<z8*I, permutation matrices of S3> in GL(3, Q(z24))",
        dimension: 3,
        conductor: 24,
        function_field: false,
        order: 48,
        gamma_class: 0,
    },
    Recipe {
        name: "scalar-i",
        description: "<(i, id)> in KL(1, Q(i))",
        dimension: 1,
        conductor: 4,
        function_field: false,
        order: 4,
        gamma_class: 0,
    },
    Recipe {
        name: "scalar-i-swap",
        description: "<(iI, id), ([[0,1],[1,0]], id)> in GL(2, Q(i))",
        dimension: 2,
        conductor: 4,
        function_field: false,
        order: 8,
        gamma_class: 0,
    },
    Recipe {
        name: "klein-twist",
        description: "<(diag(i,-i), id), (I, t -> -t), ([[0,1],[1,0]], t -> 1/t)> over Q(i)(t)",
        dimension: 2,
        conductor: 4,
        function_field: true,
        order: 16,
        gamma_class: 1,
    },
    Recipe {
        name: "diagonal-z8",
        description: "<diag(z8, z8^3)> in GL(2, Q(z8))",
        dimension: 2,
        conductor: 8,
        function_field: false,
        order: 8,
        gamma_class: 0,
    },
    Recipe {
        name: "pauli",
        description: "<X, Y, Z> in GL(2, Q(i))",
        dimension: 2,
        conductor: 4,
        function_field: false,
        order: 16,
        gamma_class: 0,
    },
];

pub fn catalog_names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}

fn catalog_generators(name: &str) -> Result<Vec<GroupElement>> {
    match name {
        "dihedral-twist" => Ok(vec![
            linear(4, &[&["z", "0"], &["0", "-z"]], true)?,
            semilinear(4, &[&["0", "1"], &["1", "0"]], NEG_T)?,
        ]),
        "monomial-s3" => Ok(vec![
            linear(24, &[&["z^3", "0", "0"], &["0", "z^3", "0"], &["0", "0", "z^3"]], false)?,
            linear(24, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]], false)?,
            linear(24, &[&["0", "0", "1"], &["1", "0", "0"], &["0", "1", "0"]], false)?,
        ]),
        "scalar-i" => Ok(vec![linear(4, &[&["z"]], false)?]),
        "scalar-i-swap" => Ok(vec![
            linear(4, &[&["z", "0"], &["0", "z"]], false)?,
            linear(4, &[&["0", "1"], &["1", "0"]], false)?,
        ]),
        "klein-twist" => Ok(vec![
            linear(4, &[&["z", "0"], &["0", "-z"]], true)?,
            semilinear(4, &[&["1", "0"], &["0", "1"]], NEG_T)?,
            semilinear(4, &[&["0", "1"], &["1", "0"]], INV_T)?,
        ]),
        "diagonal-z8" => Ok(vec![linear(8, &[&["z", "0"], &["0", "z^3"]], false)?]),
        "pauli" => Ok(vec![
            linear(4, &[&["0", "1"], &["1", "0"]], false)?,
            linear(4, &[&["0", "-z"], &["z", "0"]], false)?,
            linear(4, &[&["1", "0"], &["0", "-1"]], false)?,
        ]),
        _ => Err(Error::InvalidParameter(format!(
            "unknown catalog entry {name:?}; known: {}",
            catalog_names().join(", ")
        ))),
    }
}

/// All catalog entries, enumerated.
pub fn semilinear_catalog() -> Result<Vec<CatalogEntry>> {
    RECIPES
        .iter()
        .map(|r| {
            let group = FiniteGroup::enumerate(catalog_generators(r.name)?, DEFAULT_MAX_ORDER)?;
            Ok(CatalogEntry {
                name: r.name,
                description: r.description,
                dimension: r.dimension,
                conductor: r.conductor,
                function_field: r.function_field,
                order: r.order,
                gamma_class: r.gamma_class,
                group,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        let order = |s: FamilySpec| build(&s).unwrap().order();
        assert_eq!(order(FamilySpec::Heisenberg { p: 3 }), 27);
        assert_eq!(order(FamilySpec::Cyclic { n: 1 }), 1);
        assert_eq!(order(FamilySpec::Cyclic { n: 12 }), 12);
        assert_eq!(order(FamilySpec::ElementaryAbelian { p: 2, n: 3 }), 8);
        assert_eq!(order(FamilySpec::Dihedral { n: 4 }), 8);
        assert_eq!(order(FamilySpec::Dihedral { n: 1 }), 2);
        assert_eq!(order(FamilySpec::Quaternion { n: 2 }), 8);
        assert_eq!(
            order(FamilySpec::DirectProduct {
                factors: vec![FamilySpec::Heisenberg { p: 3 }, FamilySpec::Cyclic { n: 4 }]
            }),
            108
        );
        assert!(build(&FamilySpec::Heisenberg { p: 4 }).is_err());
    }

    #[test]
    fn catalog_orders_match() {
        for e in semilinear_catalog().unwrap() {
            assert_eq!(e.group.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let s = FamilySpec::DirectProduct {
            factors: vec![FamilySpec::Quaternion { n: 2 }, FamilySpec::ElementaryAbelian { p: 3, n: 2 }],
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&text).unwrap(), s);
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"cyclic","n":3,"x":1}"#).is_err());
    }
}
