//! Group element payloads.
//!
//! Every payload is stored in canonical form, so structural equality is group
//! equality and the derived ordering is the canonical ordering used for
//! deterministic output.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::{ExactMatrix, SemilinearElement};

/// A permutation of `0..d`, composed right to left: `(xy)(i) = x(y(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from cycles over 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidParameter(format!(
                        "point {p} outside 1..{degree}"
                    )));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(Error::InvalidParameter(format!("point {p} repeated in cycles")));
                }
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Nontrivial cycles over 1-based points, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(a, b, c)` mod `p` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HeisenbergElement {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl HeisenbergElement {
    pub fn new(p: u64, a: i64, b: i64, c: i64) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        HeisenbergElement {
            p,
            a: r(a),
            b: r(b),
            c: r(c),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        HeisenbergElement {
            p,
            a: (self.a + o.a) % p,
            b: (self.b + o.b) % p,
            c: (self.c + o.c + self.a * o.b) % p,
        }
    }

    pub fn inverse(&self) -> Self {
        let p = self.p;
        HeisenbergElement {
            p,
            a: (p - self.a) % p,
            b: (p - self.b) % p,
            c: ((self.a * self.b) % p + p - self.c) % p,
        }
    }
}

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// Coset bookkeeping for one quotient `G/N`: maps every element of `G` to
/// the least element of its coset.
pub struct CosetContext {
    id: u64,
    rep_of: HashMap<GroupElement, GroupElement>,
}

impl CosetContext {
    pub(crate) fn new(rep_of: HashMap<GroupElement, GroupElement>) -> Arc<Self> {
        Arc::new(CosetContext {
            id: NEXT_CONTEXT.fetch_add(1, AtomicOrdering::Relaxed),
            rep_of,
        })
    }

    fn rep(&self, g: &GroupElement) -> GroupElement {
        self.rep_of
            .get(g)
            .cloned()
            .expect("product of coset representatives stays in the ambient group")
    }
}

/// A coset `gN`, identified by its least element.
#[derive(Clone)]
pub struct CosetElement {
    rep: Box<GroupElement>,
    ctx: Arc<CosetContext>,
}

impl CosetElement {
    pub(crate) fn new(rep: GroupElement, ctx: Arc<CosetContext>) -> Self {
        CosetElement {
            rep: Box::new(rep),
            ctx,
        }
    }

    pub fn representative(&self) -> &GroupElement {
        &self.rep
    }

    fn key(&self) -> (u64, &GroupElement) {
        (self.ctx.id, &self.rep)
    }
}

impl PartialEq for CosetElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for CosetElement {}
impl Hash for CosetElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.id.hash(state);
        self.rep.hash(state);
    }
}
impl PartialOrd for CosetElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CosetElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// How the second factor of a two-factor product acts on the first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Twist {
    /// Componentwise product.
    Direct,
    /// `(n, h)(n', h') = (n·h(n'), hh')` where `h` inverts `n'` when `h` is
    /// an odd permutation. Requires an abelian first factor.
    SignInversion,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleElement {
    pub parts: Vec<GroupElement>,
    pub twist: Twist,
}

/// A group element payload.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Permutation(Permutation),
    Matrix(ExactMatrix),
    Semilinear(SemilinearElement),
    Heisenberg(HeisenbergElement),
    Coset(CosetElement),
    Tuple(TupleElement),
}

/// Identifies the ambient group a payload lives in; products are only
/// defined between payloads with equal ambients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ambient {
    Permutation { degree: usize },
    Matrix { n: usize, conductor: u32 },
    Semilinear { n: usize, conductor: u32 },
    Heisenberg { p: u64 },
    Coset { context: u64 },
    Tuple { parts: Vec<Ambient>, twist: Twist },
}

impl GroupElement {
    pub fn ambient(&self) -> Ambient {
        match self {
            GroupElement::Permutation(p) => Ambient::Permutation { degree: p.degree() },
            GroupElement::Matrix(m) => Ambient::Matrix {
                n: m.dim(),
                conductor: m.conductor(),
            },
            GroupElement::Semilinear(s) => Ambient::Semilinear {
                n: s.dim(),
                conductor: s.matrix().conductor(),
            },
            GroupElement::Heisenberg(h) => Ambient::Heisenberg { p: h.p },
            GroupElement::Coset(c) => Ambient::Coset { context: c.ctx.id },
            GroupElement::Tuple(t) => Ambient::Tuple {
                parts: t.parts.iter().map(GroupElement::ambient).collect(),
                twist: t.twist,
            },
        }
    }

    /// Group product. Panics if the ambients differ; [`FiniteGroup::enumerate`]
    /// checks compatibility up front.
    ///
    /// [`FiniteGroup::enumerate`]: super::FiniteGroup::enumerate
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (self, other) {
            (Permutation(a), Permutation(b)) => Permutation(a.compose(b)),
            (Matrix(a), Matrix(b)) => Matrix(a * b),
            (Semilinear(a), Semilinear(b)) => {
                Semilinear(a.mul(b).expect("compatible semilinear elements"))
            }
            (Heisenberg(a), Heisenberg(b)) => Heisenberg(a.mul(b)),
            (Coset(a), Coset(b)) => {
                assert_eq!(a.ctx.id, b.ctx.id, "cosets of different quotients");
                let prod = a.rep.mul(&b.rep);
                Coset(CosetElement::new(a.ctx.rep(&prod), a.ctx.clone()))
            }
            (Tuple(a), Tuple(b)) => {
                assert_eq!(a.twist, b.twist, "tuples with different twists");
                let parts = match a.twist {
                    Twist::Direct => a.parts.iter().zip(&b.parts).map(|(x, y)| x.mul(y)).collect(),
                    Twist::SignInversion => {
                        let acting_odd = match &a.parts[1] {
                            Permutation(h) => h.sign() < 0,
                            _ => panic!("sign-inversion twist needs a permutation factor"),
                        };
                        let moved = if acting_odd { b.parts[0].inverse() } else { b.parts[0].clone() };
                        vec![a.parts[0].mul(&moved), a.parts[1].mul(&b.parts[1])]
                    }
                };
                Tuple(TupleElement { parts, twist: a.twist })
            }
            _ => panic!("product of incompatible group elements"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Permutation(p) => Permutation(p.inverse()),
            Matrix(m) => Matrix(m.inv().expect("group elements are invertible")),
            Semilinear(s) => Semilinear(s.inverse().expect("group elements are invertible")),
            Heisenberg(h) => Heisenberg(h.inverse()),
            Coset(c) => Coset(CosetElement::new(c.ctx.rep(&c.rep.inverse()), c.ctx.clone())),
            Tuple(t) => match t.twist {
                Twist::Direct => Tuple(TupleElement {
                    parts: t.parts.iter().map(GroupElement::inverse).collect(),
                    twist: t.twist,
                }),
                Twist::SignInversion => {
                    // (n, h)^-1 = (h^-1(n^-1), h^-1); h and h^-1 share a sign
                    let odd = matches!(&t.parts[1], Permutation(h) if h.sign() < 0);
                    let n_inv = t.parts[0].inverse();
                    let first = if odd { n_inv.inverse() } else { n_inv };
                    Tuple(TupleElement {
                        parts: vec![first, t.parts[1].inverse()],
                        twist: t.twist,
                    })
                }
            },
        }
    }

    /// The identity of the ambient group.
    pub fn identity_like(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Permutation(p) => Permutation(self::Permutation::identity(p.degree())),
            Matrix(m) => Matrix(ExactMatrix::identity(m.dim(), m.conductor())),
            Semilinear(s) => Semilinear(s.identity_like()),
            Heisenberg(h) => Heisenberg(HeisenbergElement::new(h.p, 0, 0, 0)),
            Coset(c) => {
                let e = c.rep.identity_like();
                Coset(CosetElement::new(c.ctx.rep(&e), c.ctx.clone()))
            }
            Tuple(t) => Tuple(TupleElement {
                parts: t.parts.iter().map(GroupElement::identity_like).collect(),
                twist: t.twist,
            }),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Least `d <= cap` with `g^d = 1`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let id = self.identity_like();
        let mut x = self.clone();
        for d in 1..=cap {
            if x == id {
                return Some(d);
            }
            x = x.mul(self);
        }
        None
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Permutation(p) => write!(f, "{p}"),
            GroupElement::Matrix(m) => write!(f, "{m:?}"),
            GroupElement::Semilinear(s) => write!(f, "{s:?}"),
            GroupElement::Heisenberg(h) => write!(f, "({}, {}, {})", h.a, h.b, h.c),
            GroupElement::Coset(c) => write!(f, "[{:?}]", c.rep),
            GroupElement::Tuple(t) => f.debug_list().entries(&t.parts).finish(),
        }
    }
}

impl From<Permutation> for GroupElement {
    fn from(p: Permutation) -> Self {
        GroupElement::Permutation(p)
    }
}

impl From<HeisenbergElement> for GroupElement {
    fn from(h: HeisenbergElement) -> Self {
        GroupElement::Heisenberg(h)
    }
}

impl From<ExactMatrix> for GroupElement {
    fn from(m: ExactMatrix) -> Self {
        GroupElement::Matrix(m)
    }
}

impl From<SemilinearElement> for GroupElement {
    fn from(s: SemilinearElement) -> Self {
        GroupElement::Semilinear(s)
    }
}
