//! JSON group files and certificate serialization.
//!
//! A group file names the ambient group in `header` and lists generators in
//! that ambient's syntax:
//!
//! ```json
//! {
//!   "header": {"kind": "permutation", "degree": 4},
//!   "generators": ["(1 2 3 4)", "(1 3)"]
//! }
//! ```
//!
//! Kinds are `permutation` (cycle strings), `matrix` (row-major arrays of
//! scalar strings), `semilinear` (`{"matrix", "galois", "mobius"}`),
//! `heisenberg` (`[a, b, c]`) and `product` (arrays of factor elements).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{parse_cyclotomic, parse_scalar, FieldAut, Mobius};
use crate::group::{FiniteGroup, GroupElement, HeisenbergElement, Permutation, SearchLimits, TupleElement, Twist, DEFAULT_MAX_ORDER};
use crate::jordan::{CertificateInputs, ExtractionCertificate, Mode, SubgroupRecord, TraceStep};
use crate::linear::{ExactMatrix, SemilinearElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Header {
    Permutation {
        degree: usize,
    },
    Matrix {
        n: usize,
        conductor: u32,
        #[serde(default)]
        transcendental: bool,
    },
    Semilinear {
        n: usize,
        conductor: u32,
        #[serde(default)]
        transcendental: bool,
    },
    Heisenberg {
        p: u64,
    },
    Product {
        factors: Vec<Header>,
        #[serde(default = "direct")]
        twist: TwistName,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistName {
    Direct,
    SignInversion,
}

fn direct() -> TwistName {
    TwistName::Direct
}

impl From<Twist> for TwistName {
    fn from(t: Twist) -> Self {
        match t {
            Twist::Direct => TwistName::Direct,
            Twist::SignInversion => TwistName::SignInversion,
        }
    }
}

impl From<TwistName> for Twist {
    fn from(t: TwistName) -> Self {
        match t {
            TwistName::Direct => Twist::Direct,
            TwistName::SignInversion => Twist::SignInversion,
        }
    }
}

/// Optional budget overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Caps {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_census_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_subgroups: Option<usize>,
}

impl Caps {
    fn is_empty(&self) -> bool {
        *self == Caps::default()
    }

    pub fn limits(&self) -> SearchLimits {
        let mut l = SearchLimits::default();
        if let Some(x) = self.max_census_index {
            l.max_census_index = x;
        }
        if let Some(x) = self.max_subgroups {
            l.max_subgroups = x;
        }
        l
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupFile {
    header: Header,
    generators: Vec<Value>,
    #[serde(default, skip_serializing_if = "Caps::is_empty")]
    caps: Caps,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub header: Header,
    pub generators: Vec<GroupElement>,
    pub caps: Caps,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

impl GroupFile {
    pub fn new(header: Header, generators: Vec<GroupElement>) -> Self {
        GroupFile {
            header,
            generators,
            caps: Caps::default(),
        }
    }

    /// A file for the given generators, with the header read off the first.
    pub fn from_generators(generators: Vec<GroupElement>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidParameter("no generators".into()))?;
        let mut header = header_of(first)?;
        if let Header::Matrix { transcendental, .. } = &mut header {
            *transcendental = generators
                .iter()
                .any(|g| matches!(g, GroupElement::Matrix(m) if m.has_function_entries()));
        }
        Ok(GroupFile::new(header, generators))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawGroupFile = serde_json::from_str(text).map_err(parse_err)?;
        validate_header(&raw.header)?;
        let generators = raw
            .generators
            .iter()
            .map(|v| element_from_json(&raw.header, v))
            .collect::<Result<_>>()?;
        Ok(GroupFile {
            header: raw.header,
            generators,
            caps: raw.caps,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawGroupFile {
            header: self.header.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| element_to_json(&self.header, g))
                .collect::<Result<_>>()?,
            caps: self.caps.clone(),
        };
        Ok(serde_json::to_string_pretty(&raw).expect("serializable") + "\n")
    }

    /// Enumerates the group; `max_order` applies unless the file sets a
    /// smaller cap.
    pub fn group(&self, max_order: usize) -> Result<FiniteGroup> {
        let cap = self.caps.max_order.map_or(max_order, |c| c.min(max_order));
        if self.generators.is_empty() {
            return FiniteGroup::enumerate(vec![identity_of(&self.header)?], cap);
        }
        FiniteGroup::enumerate(self.generators.clone(), cap)
    }

    pub fn group_default(&self) -> Result<FiniteGroup> {
        self.group(DEFAULT_MAX_ORDER)
    }
}

fn validate_header(h: &Header) -> Result<()> {
    match h {
        Header::Permutation { degree } => {
            if *degree == 0 {
                return Err(Error::Parse("degree must be at least 1".into()));
            }
        }
        Header::Matrix { n, conductor, .. } | Header::Semilinear { n, conductor, .. } => {
            if *n == 0 || *conductor == 0 {
                return Err(Error::Parse("n and conductor must be at least 1".into()));
            }
        }
        Header::Heisenberg { p } => {
            if !crate::witness::is_prime(*p) {
                return Err(Error::Parse(format!("heisenberg modulus {p} is not prime")));
            }
        }
        Header::Product { factors, twist } => {
            if factors.is_empty() {
                return Err(Error::Parse("product needs factors".into()));
            }
            if *twist == TwistName::SignInversion && factors.len() != 2 {
                return Err(Error::Parse("sign inversion needs exactly two factors".into()));
            }
            factors.iter().try_for_each(validate_header)?;
        }
    }
    Ok(())
}

fn identity_of(h: &Header) -> Result<GroupElement> {
    Ok(match h {
        Header::Permutation { degree } => Permutation::identity(*degree).into(),
        Header::Matrix { n, conductor, .. } => ExactMatrix::identity(*n, *conductor).into(),
        Header::Semilinear {
            n,
            conductor,
            transcendental,
        } => SemilinearElement::linear(ExactMatrix::identity(*n, *conductor), *transcendental)?.into(),
        Header::Heisenberg { p } => HeisenbergElement::new(*p, 0, 0, 0).into(),
        Header::Product { factors, twist } => GroupElement::Tuple(TupleElement {
            parts: factors.iter().map(identity_of).collect::<Result<_>>()?,
            twist: (*twist).into(),
        }),
    })
}

/// The header describing the ambient group of `g`.
pub fn header_of(g: &GroupElement) -> Result<Header> {
    Ok(match g {
        GroupElement::Permutation(p) => Header::Permutation { degree: p.degree() },
        GroupElement::Matrix(m) => Header::Matrix {
            n: m.dim(),
            conductor: m.conductor(),
            transcendental: m.has_function_entries(),
        },
        GroupElement::Semilinear(s) => Header::Semilinear {
            n: s.dim(),
            conductor: s.matrix().conductor(),
            transcendental: s.aut().is_function_field(),
        },
        GroupElement::Heisenberg(h) => Header::Heisenberg { p: h.p },
        GroupElement::Tuple(t) => Header::Product {
            factors: t.parts.iter().map(header_of).collect::<Result<_>>()?,
            twist: t.twist.into(),
        },
        GroupElement::Coset(_) => {
            return Err(Error::InvalidParameter("quotient elements have no file syntax".into()))
        }
    })
}

/// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
pub fn parse_permutation(src: &str, degree: usize) -> Result<Permutation> {
    let s = src.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("bad cycle notation {src:?}")))?;
        let points: Vec<usize> = body
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad point {t:?} in {src:?}"))))
            .collect::<Result<_>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body.1.trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| Error::Parse(e.to_string()))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("expected a string, got {v}")))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))
}

fn parse_matrix(v: &Value, n: usize, m: u32, transcendental: bool) -> Result<ExactMatrix> {
    let rows = as_array(v)?;
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
    }
    let rows = rows
        .iter()
        .map(|r| {
            let r = as_array(r)?;
            if r.len() != n {
                return Err(Error::Parse(format!("expected {n} columns, got {}", r.len())));
            }
            r.iter().map(|x| parse_scalar(as_str(x)?, m, transcendental)).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let mat = ExactMatrix::from_rows(m, rows).map_err(|e| Error::Parse(e.to_string()))?;
    if !transcendental && mat.has_function_entries() {
        return Err(Error::Parse("t appears but the header is not transcendental".into()));
    }
    Ok(mat)
}

fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSemilinear {
    matrix: Value,
    #[serde(default = "one")]
    galois: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mobius: Option<[String; 4]>,
}

fn one() -> u32 {
    1
}

pub fn element_from_json(h: &Header, v: &Value) -> Result<GroupElement> {
    Ok(match h {
        Header::Permutation { degree } => parse_permutation(as_str(v)?, *degree)?.into(),
        Header::Matrix {
            n,
            conductor,
            transcendental,
        } => {
            let m = parse_matrix(v, *n, *conductor, *transcendental)?;
            if m.det().is_zero() {
                return Err(Error::Singular);
            }
            m.into()
        }
        Header::Semilinear {
            n,
            conductor,
            transcendental,
        } => {
            let raw: RawSemilinear = serde_json::from_value(v.clone()).map_err(parse_err)?;
            let m = *conductor;
            let mobius = match &raw.mobius {
                None => Mobius::identity(m),
                Some(e) => {
                    let c: Vec<_> = e.iter().map(|x| parse_cyclotomic(x, m)).collect::<Result<_>>()?;
                    let [a, b, cc, d]: [_; 4] = c.try_into().expect("four entries");
                    Mobius::new(a, b, cc, d).map_err(|e| Error::Parse(e.to_string()))?
                }
            };
            let aut = FieldAut::new(m, raw.galois, mobius, *transcendental).map_err(|e| Error::Parse(e.to_string()))?;
            let mat = parse_matrix(&raw.matrix, *n, m, *transcendental)?;
            SemilinearElement::new(mat, aut)?.into()
        }
        Header::Heisenberg { p } => {
            let t = as_array(v)?;
            let x: Vec<i64> = t
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("bad coordinate {x}"))))
                .collect::<Result<_>>()?;
            if x.len() != 3 {
                return Err(Error::Parse("heisenberg elements are [a, b, c]".into()));
            }
            HeisenbergElement::new(*p, x[0], x[1], x[2]).into()
        }
        Header::Product { factors, twist } => {
            let t = as_array(v)?;
            if t.len() != factors.len() {
                return Err(Error::Parse(format!("expected {} components", factors.len())));
            }
            GroupElement::Tuple(TupleElement {
                parts: factors
                    .iter()
                    .zip(t)
                    .map(|(f, x)| element_from_json(f, x))
                    .collect::<Result<_>>()?,
                twist: (*twist).into(),
            })
        }
    })
}

pub fn element_to_json(h: &Header, g: &GroupElement) -> Result<Value> {
    let found = header_of(g)?;
    let compatible = match (h, &found) {
        // a matrix without t may sit in a transcendental file
        (Header::Matrix { n, conductor, .. }, Header::Matrix { n: n2, conductor: m2, .. }) => n == n2 && conductor == m2,
        _ => *h == found,
    };
    if !compatible {
        return Err(Error::IncompatibleGenerators(format!("{g:?} does not fit the header")));
    }
    Ok(match g {
        GroupElement::Permutation(p) => Value::String(p.to_string()),
        GroupElement::Matrix(m) => matrix_to_json(m),
        GroupElement::Semilinear(s) => {
            let mobius = mobius_strings(s);
            serde_json::to_value(RawSemilinear {
                matrix: matrix_to_json(s.matrix()),
                galois: s.aut().galois_exponent(),
                mobius,
            })
            .expect("serializable")
        }
        GroupElement::Heisenberg(x) => serde_json::json!([x.a, x.b, x.c]),
        GroupElement::Tuple(t) => {
            let Header::Product { factors, .. } = h else { unreachable!() };
            Value::Array(
                factors
                    .iter()
                    .zip(&t.parts)
                    .map(|(f, x)| element_to_json(f, x))
                    .collect::<Result<_>>()?,
            )
        }
        GroupElement::Coset(_) => unreachable!("rejected by header_of"),
    })
}

/// Möbius entries for printing; `None` when the map is the identity.
fn mobius_strings(s: &SemilinearElement) -> Option<[String; 4]> {
    let mb = s.aut().mobius();
    if mb.is_identity() {
        return None;
    }
    Some(mb.entries().clone().map(|c| c.to_string()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    generators: Vec<Value>,
    elements: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    step: String,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawCertificate {
    mode: String,
    inputs: RawInputs,
    subgroup: RawSubgroup,
    claimed_class_bound: usize,
    verified_class: usize,
    index: usize,
    bound_value: u64,
    trace: Vec<RawStep>,
}

fn elements_to_json(h: &Header, xs: &[GroupElement]) -> Result<Vec<Value>> {
    xs.iter().map(|x| element_to_json(h, x)).collect()
}

fn elements_from_json(h: &Header, xs: &[Value]) -> Result<Vec<GroupElement>> {
    xs.iter().map(|x| element_from_json(h, x)).collect()
}

/// Certificate as a JSON value, with elements in the syntax of `header`.
pub fn certificate_to_value(cert: &ExtractionCertificate, header: &Header) -> Result<Value> {
    let raw = RawCertificate {
        mode: cert.mode.as_str().into(),
        inputs: RawInputs {
            c: cert.inputs.c,
            m: cert.inputs.m,
            j: cert.inputs.j,
            generators: elements_to_json(header, &cert.inputs.generators)?,
        },
        subgroup: RawSubgroup {
            generators: elements_to_json(header, &cert.subgroup.generators)?,
            elements: elements_to_json(header, &cert.subgroup.elements)?,
        },
        claimed_class_bound: cert.claimed_class_bound,
        verified_class: cert.verified_class,
        index: cert.index,
        bound_value: cert.bound_value,
        trace: cert
            .trace
            .iter()
            .map(|t| RawStep {
                step: t.step.clone(),
                order: t.order,
                index: t.index,
                bound: t.bound,
                count: t.count,
            })
            .collect(),
    };
    Ok(serde_json::to_value(raw).expect("serializable"))
}

pub fn certificate_to_json(cert: &ExtractionCertificate, header: &Header) -> Result<String> {
    let v = certificate_to_value(cert, header)?;
    Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
}

pub fn certificate_from_json(text: &str, header: &Header) -> Result<ExtractionCertificate> {
    let raw: RawCertificate = serde_json::from_str(text).map_err(parse_err)?;
    let mode = Mode::parse(&raw.mode).ok_or_else(|| Error::Parse(format!("unknown mode {:?}", raw.mode)))?;
    Ok(ExtractionCertificate {
        mode,
        inputs: CertificateInputs {
            c: raw.inputs.c,
            m: raw.inputs.m,
            j: raw.inputs.j,
            generators: elements_from_json(header, &raw.inputs.generators)?,
        },
        subgroup: SubgroupRecord {
            generators: elements_from_json(header, &raw.subgroup.generators)?,
            elements: elements_from_json(header, &raw.subgroup.elements)?,
        },
        claimed_class_bound: raw.claimed_class_bound,
        verified_class: raw.verified_class,
        index: raw.index,
        bound_value: raw.bound_value,
        trace: raw
            .trace
            .into_iter()
            .map(|t| TraceStep {
                step: t.step,
                order: t.order,
                index: t.index,
                bound: t.bound,
                count: t.count,
            })
            .collect(),
    })
}
