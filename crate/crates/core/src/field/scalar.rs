use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::{forward_owned, Cyclotomic};
use super::ratfunc::RatFunc;
use crate::error::Result;

/// A matrix entry: a cyclotomic constant or a non-constant element of
/// `Q(ζ_m)(t)`.
///
/// Constant rational functions are always stored as `Const`, which keeps the
/// representation canonical across the two fields.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Const(Cyclotomic),
    Func(RatFunc),
}

impl Scalar {
    pub fn zero(m: u32) -> Self {
        Scalar::Const(Cyclotomic::zero(m))
    }

    pub fn one(m: u32) -> Self {
        Scalar::Const(Cyclotomic::one(m))
    }

    pub fn t(m: u32) -> Self {
        Scalar::Func(RatFunc::t(m))
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        match f.as_constant() {
            Some(c) => Scalar::Const(c),
            None => Scalar::Func(f),
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Const(c) => c.conductor(),
            Scalar::Func(f) => f.conductor(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Const(c) if c.is_one())
    }

    pub fn as_constant(&self) -> Option<&Cyclotomic> {
        match self {
            Scalar::Const(c) => Some(c),
            Scalar::Func(_) => None,
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        match self {
            Scalar::Const(c) => RatFunc::constant(c.clone()),
            Scalar::Func(f) => f.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Const(c) => Ok(Scalar::Const(c.inv()?)),
            Scalar::Func(f) => Ok(Scalar::from_ratfunc(f.inv()?)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn galois(&self, k: u32) -> Self {
        match self {
            Scalar::Const(c) => Scalar::Const(c.galois(k)),
            Scalar::Func(f) => Scalar::from_ratfunc(f.galois(k)),
        }
    }
}

impl From<Cyclotomic> for Scalar {
    fn from(c: Cyclotomic) -> Self {
        Scalar::Const(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Const(a), Scalar::Const(b)) => Scalar::Const(a + b),
            _ => Scalar::from_ratfunc(&self.to_ratfunc() + &other.to_ratfunc()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Const(a), Scalar::Const(b)) => Scalar::Const(a * b),
            _ => Scalar::from_ratfunc(&self.to_ratfunc() * &other.to_ratfunc()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Const(c) => Scalar::Const(-c),
            Scalar::Func(f) => Scalar::Func(-f),
        }
    }
}

forward_owned!(Add, add, Scalar);
forward_owned!(Sub, sub, Scalar);
forward_owned!(Mul, mul, Scalar);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Const(c) => write!(f, "{c}"),
            Scalar::Func(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Const(c) => write!(f, "{c:?}"),
            Scalar::Func(r) => write!(f, "{r:?}"),
        }
    }
}
