//! The rational function field `Q(ζ_m)(t)` in one transcendental.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use super::cyclotomic::{forward_owned, Cyclotomic};
use crate::error::{Error, Result};

/// Polynomial in `t` with cyclotomic coefficients, ascending, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    conductor: u32,
    coeffs: Vec<Cyclotomic>,
}

impl Poly {
    pub fn zero(m: u32) -> Self {
        Poly {
            conductor: m,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_coeffs(c.conductor(), vec![c])
    }

    /// The monomial `t`.
    pub fn t(m: u32) -> Self {
        Self::from_coeffs(m, vec![Cyclotomic::zero(m), Cyclotomic::one(m)])
    }

    pub fn from_coeffs(m: u32, coeffs: Vec<Cyclotomic>) -> Self {
        let mut p = Poly {
            conductor: m,
            coeffs: coeffs.into_iter().map(|c| c.embed(m)).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Cyclotomic::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&Cyclotomic> {
        self.coeffs.last()
    }

    fn coeff(&self, i: usize) -> Cyclotomic {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.conductor))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let m = self.conductor.lcm(&c.conductor());
        Self::from_coeffs(m, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Applies `ζ ↦ ζ^k` to every coefficient.
    pub fn galois(&self, k: u32) -> Self {
        Self::from_coeffs(self.conductor, self.coeffs.iter().map(|c| c.galois(k)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.lead().expect("nonzero").inv()?;
        let m = self.conductor.lcm(&divisor.conductor);
        let mut rem = Self::from_coeffs(m, self.coeffs.clone());
        let mut quot = vec![Cyclotomic::zero(m); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.lead().expect("nonzero") * &lead_inv;
            let shift = rd - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem.coeffs[shift + i] = &rem.coeffs[shift + i] - &(&c * d);
            }
            quot[shift] = c;
            rem.trim();
        }
        Ok((Self::from_coeffs(m, quot), rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm. Remainders
    /// are rescaled to be monic, which keeps coefficient growth in check.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::constant(Cyclotomic::one(a.conductor.lcm(&b.conductor)));
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let m = self.conductor.lcm(&other.conductor);
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(m, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let m = self.conductor.lcm(&other.conductor);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(m);
        }
        let mut out = vec![Cyclotomic::zero(m); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(m, out)
    }
}

forward_owned!(Add, add, Poly);
forward_owned!(Sub, sub, Poly);
forward_owned!(Mul, mul, Poly);

/// Descending powers of `t`, coefficients other than 1 in parentheses:
/// `t^2+(1)`, `(-1)*t`, `(1+z)`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let tpart = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if c.is_one() {
                if k == 0 {
                    f.write_str("1")?;
                } else {
                    f.write_str(&tpart)?;
                }
            } else if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{tpart}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A reduced fraction `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    conductor: u32,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = num.conductor.lcm(&den.conductor);
        if num.is_zero() {
            return Ok(Self::constant(Cyclotomic::zero(m)));
        }
        let (n, d) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        };
        let l = d.lead().expect("nonzero").inv()?;
        Ok(RatFunc {
            conductor: m,
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let m = c.conductor();
        RatFunc {
            conductor: m,
            num: Poly::constant(c),
            den: Poly::constant(Cyclotomic::one(m)),
        }
    }

    pub fn t(m: u32) -> Self {
        RatFunc {
            conductor: m,
            num: Poly::t(m),
            den: Poly::constant(Cyclotomic::one(m)),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if `num` and `den` are both constant.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(
                self.num
                    .coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(|| Cyclotomic::zero(self.conductor)),
            )
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Applies `ζ ↦ ζ^k` to the coefficients.
    pub fn galois(&self, k: u32) -> Self {
        Self::new(self.num.galois(k), self.den.galois(k)).expect("automorphism keeps den nonzero")
    }

    /// Evaluates a polynomial at a rational function by Horner's rule.
    fn eval_poly(p: &Poly, at: &RatFunc) -> RatFunc {
        let m = at.conductor.lcm(&p.conductor);
        let mut acc = RatFunc::constant(Cyclotomic::zero(m));
        for c in p.coeffs.iter().rev() {
            acc = &(&acc * at) + &RatFunc::constant(c.clone());
        }
        acc
    }

    /// Substitutes `t ↦ value` into this function.
    pub fn substitute(&self, value: &RatFunc) -> Result<RatFunc> {
        let n = Self::eval_poly(&self.num, value);
        let d = Self::eval_poly(&self.den, value);
        n.checked_div(&d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).expect("den nonzero");
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("den nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, other: &RatFunc) -> RatFunc {
        self + &(-other)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            conductor: self.conductor,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).expect("den nonzero")
    }
}

forward_owned!(Add, add, RatFunc);
forward_owned!(Sub, sub, RatFunc);
forward_owned!(Mul, mul, RatFunc);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [m={}]", self, self.conductor)
    }
}
