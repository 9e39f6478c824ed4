//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(φ(m)-1)` reduced
//! modulo the m-th cyclotomic polynomial. The representation is canonical for
//! a fixed conductor: two elements of the same conductor are equal exactly
//! when their coefficient vectors are identical. Binary operations on
//! elements of different conductors first embed both into the field of the
//! least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduction data for one conductor: `powers[e]` holds `ζ^e` in the power
/// basis for every `0 <= e < m`.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field_data(m: u32) -> Arc<FieldData> {
    if let Some(data) = field_cache().read().expect("cache poisoned").get(&m) {
        return data.clone();
    }
    let data = Arc::new(build_field_data(m));
    field_cache()
        .write()
        .expect("cache poisoned")
        .entry(m)
        .or_insert(data)
        .clone()
}

/// Integer coefficients (ascending) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn build_field_data(m: u32) -> FieldData {
    let poly = cyclotomic_polynomial(m);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1];
        }
        for i in 0..phi {
            next[i] -= top * poly[i];
        }
        cur = next;
    }
    FieldData { phi, powers }
}

/// Euler's totient, computed by trial division.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// An element of `Q(ζ_m)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        Cyclotomic {
            conductor: m,
            coeffs: vec![BigRational::zero(); totient(m)],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ_m^e` for any integer exponent.
    pub fn zeta_power(m: u32, e: i64) -> Self {
        let data = field_data(m);
        let e = e.rem_euclid(m as i64) as usize;
        Cyclotomic {
            conductor: m,
            coeffs: data.powers[e]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// The distinguished primitive root `ζ_m`.
    pub fn zeta(m: u32) -> Self {
        Self::zeta_power(m, 1)
    }

    /// Builds an element from power-basis coefficients of arbitrary length;
    /// exponents at or beyond `φ(m)` are reduced.
    pub fn from_exponent_coeffs(m: u32, raw: &[BigRational]) -> Self {
        let data = field_data(m);
        let mut by_exp = vec![BigRational::zero(); m as usize];
        for (e, c) in raw.iter().enumerate() {
            let slot = &mut by_exp[e % m as usize];
            *slot += c;
        }
        reduce(m, &data, &by_exp)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_target)`; `target` must be a multiple
    /// of the conductor.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot embed conductor {} into {}",
            self.conductor,
            target
        );
        let step = (target / self.conductor) as usize;
        let data = field_data(target);
        let mut by_exp = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                by_exp[k * step] += c;
            }
        }
        reduce(target, &data, &by_exp)
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.embed(m), other.embed(m))
    }

    /// Field equality, embedding into a common conductor when needed.
    pub fn equals(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self == other
        } else {
            let (a, b) = self.aligned(other);
            a == b
        }
    }

    /// Integer numerators over a common denominator.
    fn integral(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let m = self.conductor;
        let data = field_data(m);
        let (a, da) = self.integral();
        let (b, db) = other.integral();
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    by_exp[(i + j) % m as usize] += x * y;
                }
            }
        }
        let den = da * db;
        Cyclotomic {
            conductor: m,
            coeffs: reduce_integral(&data, &by_exp)
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse. The product `y` of the nontrivial Galois
    /// conjugates satisfies `x·y = N(x) ∈ Q`, so `x⁻¹ = y / N(x)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let m = self.conductor;
        let mut y = Self::one(m);
        for k in 2..m {
            if k.gcd(&m) == 1 {
                y = y.mul_same(&self.galois(k));
            }
        }
        let norm = self.mul_same(&y);
        let q = norm
            .as_rational()
            .ok_or_else(|| Error::Internal("norm is not rational".into()))?
            .recip();
        Ok(Cyclotomic {
            conductor: m,
            coeffs: y.coeffs.iter().map(|c| c * &q).collect(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Applies the Galois automorphism `ζ_m ↦ ζ_m^k`.
    pub fn galois(&self, k: u32) -> Self {
        let m = self.conductor;
        let data = field_data(m);
        let (nums, den) = self.integral();
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (i, c) in nums.into_iter().enumerate() {
            if !c.is_zero() {
                by_exp[(i as u64 * k as u64 % m as u64) as usize] += c;
            }
        }
        Cyclotomic {
            conductor: m,
            coeffs: reduce_integral(&data, &by_exp)
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        }
    }

    /// Multiplicative order if the element is a root of unity.
    ///
    /// Roots of unity in `Q(ζ_m)` have order dividing `lcm(2, m)`, so only
    /// the divisors of that number are tested.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = (self.conductor as u64).lcm(&2);
        if !self.pow(bound as i64).ok()?.is_one() {
            return None;
        }
        (1..=bound)
            .filter(|d| bound.is_multiple_of(*d))
            .find(|&d| self.pow(d as i64).map(|x| x.is_one()).unwrap_or(false))
    }

    /// Every root of unity of `Q(ζ_m)` (the numbers `±ζ_m^j`), each listed
    /// once, sorted canonically.
    pub fn roots_of_unity(m: u32) -> Vec<Cyclotomic> {
        let mut out: Vec<Cyclotomic> = Vec::new();
        for j in 0..m as i64 {
            let z = Self::zeta_power(m, j);
            let neg = -&z;
            for x in [z, neg] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }
}

fn reduce_integral(data: &FieldData, by_exp: &[BigInt]) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); data.phi];
    for (e, c) in by_exp.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, &p) in data.powers[e].iter().enumerate() {
            match p {
                0 => {}
                1 => coeffs[i] += c,
                -1 => coeffs[i] -= c,
                _ => coeffs[i] += c * p,
            }
        }
    }
    coeffs
}

fn reduce(m: u32, data: &FieldData, by_exp: &[BigRational]) -> Cyclotomic {
    let mut coeffs = vec![BigRational::zero(); data.phi];
    for (e, c) in by_exp.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, &p) in data.powers[e].iter().enumerate() {
            match p {
                0 => {}
                1 => coeffs[i] += c,
                -1 => coeffs[i] -= c,
                _ => coeffs[i] += c * BigRational::from_integer(BigInt::from(p)),
            }
        }
    }
    Cyclotomic {
        conductor: m,
        coeffs,
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor != other.conductor {
            let (a, b) = self.aligned(other);
            return &a + &b;
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &(-other)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor != other.conductor {
            let (a, b) = self.aligned(other);
            return a.mul_same(&b);
        }
        self.mul_same(other)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, other: $ty) -> $ty {
                (&self).$method(&other)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Add, add, Cyclotomic);
forward_owned!(Sub, sub, Cyclotomic);
forward_owned!(Mul, mul, Cyclotomic);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Canonical text: ascending powers of `z`, e.g. `1+z-3/2*z^2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&zpart)?;
            } else {
                write!(f, "{abs}*{zpart}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [m={}]", self, self.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(24), 8);
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let one = Cyclotomic::one(3);
        let z = Cyclotomic::zeta(3);
        let z2 = &z * &z;
        assert!((&(&one + &z) + &z2).is_zero());
    }

    #[test]
    fn i_squared() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_integer(4, -1));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let x = &Cyclotomic::one(4) + &Cyclotomic::zeta(4);
        let expected = Cyclotomic::from_exponent_coeffs(4, &[q(1, 2), q(-1, 2)]);
        assert_eq!(x.inv().unwrap(), expected);
        assert!(Cyclotomic::zero(4).inv().is_err());
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(Cyclotomic::zeta_power(8, 3).root_of_unity_order(), Some(8));
        assert_eq!(Cyclotomic::from_integer(4, -1).root_of_unity_order(), Some(2));
        let x = &Cyclotomic::one(4) + &Cyclotomic::zeta(4);
        assert_eq!(x.root_of_unity_order(), None);
        // Q(ζ_3) contains the sixth roots of unity
        assert_eq!((-Cyclotomic::zeta(3)).root_of_unity_order(), Some(6));
        assert_eq!(Cyclotomic::roots_of_unity(3).len(), 6);
        assert_eq!(Cyclotomic::roots_of_unity(8).len(), 8);
    }

    #[test]
    fn embedding_preserves_values() {
        let i = Cyclotomic::zeta(4);
        let z8 = Cyclotomic::zeta(8);
        assert_eq!(i.embed(8), &z8 * &z8);
        assert!(i.equals(&(&z8 * &z8)));
        // mixed conductors multiply in the lcm field
        let w = Cyclotomic::zeta(3);
        assert_eq!((&i * &w).conductor(), 12);
    }

    #[test]
    fn galois_action() {
        let z = Cyclotomic::zeta(8);
        let x = &z + &z.inv().unwrap();
        let z3 = Cyclotomic::zeta_power(8, 3);
        assert_eq!(x.galois(3), &z3 + &z3.inv().unwrap());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::zero(4).to_string(), "0");
        assert_eq!(Cyclotomic::zeta_power(8, 4).to_string(), "-1");
        let x = Cyclotomic::from_exponent_coeffs(8, &[q(1, 1), q(0, 1), q(-3, 2), q(1, 1)]);
        assert_eq!(x.to_string(), "1-3/2*z^2+z^3");
    }
}
