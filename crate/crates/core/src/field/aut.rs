//! Automorphisms of `Q(ζ_m)` and `Q(ζ_m)(t)`: a Galois twist `ζ ↦ ζ^k`
//! followed by a Möbius substitution `t ↦ (at+b)/(ct+d)`.

use std::fmt;

use num_integer::Integer;

use super::cyclotomic::Cyclotomic;
use super::ratfunc::{Poly, RatFunc};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Projective 2×2 matrix `[[a, b], [c, d]]`, scaled so that its first
/// nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    entries: [Cyclotomic; 4],
}

impl Mobius {
    pub fn identity(m: u32) -> Self {
        Mobius {
            entries: [
                Cyclotomic::one(m),
                Cyclotomic::zero(m),
                Cyclotomic::zero(m),
                Cyclotomic::one(m),
            ],
        }
    }

    pub fn new(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::InvalidParameter("Möbius map with ad - bc = 0".into()));
        }
        let entries = [a, b, c, d];
        let lead = entries
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero determinant")
            .inv()?;
        Ok(Mobius {
            entries: entries.map(|x| &x * &lead),
        })
    }

    pub fn entries(&self) -> &[Cyclotomic; 4] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.entries;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    /// Matrix product `self · other`, i.e. the substitution `self(other(t))`.
    fn compose(&self, other: &Mobius) -> Mobius {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Mobius::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("product of invertible maps")
    }

    fn galois(&self, k: u32) -> Mobius {
        let [a, b, c, d] = &self.entries;
        Mobius::new(a.galois(k), b.galois(k), c.galois(k), d.galois(k)).expect("invertible")
    }

    fn inverse(&self) -> Mobius {
        let [a, b, c, d] = &self.entries;
        Mobius::new(d.clone(), -b, -c, a.clone()).expect("invertible")
    }

    /// `(a t + b)/(c t + d)` as a rational function.
    pub fn as_ratfunc(&self) -> RatFunc {
        let [a, b, c, d] = &self.entries;
        let m = a.conductor();
        let num = Poly::from_coeffs(m, vec![b.clone(), a.clone()]);
        let den = Poly::from_coeffs(m, vec![d.clone(), c.clone()]);
        RatFunc::new(num, den).expect("invertible map has nonzero denominator")
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "t -> (({a})t+({b}))/(({c})t+({d}))")
    }
}

/// A field automorphism `σ = (k, M)` acting by `f ↦ f^{σ_k}(M(t))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldAut {
    conductor: u32,
    galois: u32,
    mobius: Mobius,
    function_field: bool,
}

impl FieldAut {
    pub fn identity(m: u32, function_field: bool) -> Self {
        FieldAut {
            conductor: m,
            galois: 1 % m.max(2),
            mobius: Mobius::identity(m),
            function_field,
        }
    }

    pub fn new(m: u32, galois: u32, mobius: Mobius, function_field: bool) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("conductor must be positive".into()));
        }
        let k = galois % m;
        let k = if m <= 2 { 1 } else { k };
        if (k as u64).gcd(&(m as u64)) != 1 {
            return Err(Error::InvalidParameter(format!(
                "galois exponent {galois} is not a unit modulo {m}"
            )));
        }
        if !function_field && !mobius.is_identity() {
            return Err(Error::InvalidParameter(
                "Möbius part requires a function field".into(),
            ));
        }
        let mobius = Mobius::new(
            mobius.entries[0].embed(m),
            mobius.entries[1].embed(m),
            mobius.entries[2].embed(m),
            mobius.entries[3].embed(m),
        )?;
        Ok(FieldAut {
            conductor: m,
            galois: k,
            mobius,
            function_field,
        })
    }

    pub fn galois_only(m: u32, k: u32, function_field: bool) -> Result<Self> {
        Self::new(m, k, Mobius::identity(m), function_field)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn galois_exponent(&self) -> u32 {
        self.galois
    }

    pub fn mobius(&self) -> &Mobius {
        &self.mobius
    }

    pub fn is_function_field(&self) -> bool {
        self.function_field
    }

    pub fn is_identity(&self) -> bool {
        self.galois == 1 % self.conductor.max(2) && self.mobius.is_identity()
    }

    /// True when `ζ_m ↦ ζ_m`, so every root of unity of the field is fixed.
    pub fn fixes_roots_of_unity(&self) -> bool {
        self.conductor <= 2 || self.galois == 1
    }

    fn check_conductor(&self, m: u32) -> Result<()> {
        if self.conductor.is_multiple_of(m) {
            Ok(())
        } else {
            Err(Error::IncompatibleGenerators(format!(
                "automorphism of conductor {} applied to conductor {m}",
                self.conductor
            )))
        }
    }

    pub fn apply_cyclotomic(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        self.check_conductor(x.conductor())?;
        Ok(x.embed(self.conductor).galois(self.galois))
    }

    pub fn apply_ratfunc(&self, f: &RatFunc) -> Result<RatFunc> {
        self.check_conductor(f.conductor())?;
        let twisted = f.galois(self.galois);
        if self.mobius.is_identity() {
            return Ok(twisted);
        }
        twisted.substitute(&self.mobius.as_ratfunc())
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar> {
        match x {
            Scalar::Const(c) => Ok(Scalar::Const(self.apply_cyclotomic(c)?)),
            Scalar::Func(f) => Ok(Scalar::from_ratfunc(self.apply_ratfunc(f)?)),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FieldAut) -> Result<FieldAut> {
        if self.conductor != other.conductor {
            return Err(Error::IncompatibleGenerators(format!(
                "composing automorphisms of conductors {} and {}",
                self.conductor, other.conductor
            )));
        }
        let m = self.conductor;
        let galois = ((self.galois as u64 * other.galois as u64) % m.max(1) as u64) as u32;
        let mobius = other.mobius.galois(self.galois).compose(&self.mobius);
        Self::new(m, galois, mobius, self.function_field || other.function_field)
    }

    pub fn inverse(&self) -> FieldAut {
        let m = self.conductor;
        let k_inv = if m <= 2 {
            1
        } else {
            (1..m)
                .find(|&j| (j as u64 * self.galois as u64) % m as u64 == 1)
                .expect("unit has an inverse")
        };
        let mobius = self.mobius.galois(k_inv).inverse();
        FieldAut {
            conductor: m,
            galois: k_inv,
            mobius,
            function_field: self.function_field,
        }
    }
}

impl fmt::Debug for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ[z->z^{}; {:?}]", self.galois, self.mobius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(4, n)
    }

    fn mob(a: i64, b: i64, cc: i64, d: i64) -> Mobius {
        Mobius::new(c(a), c(b), c(cc), c(d)).unwrap()
    }

    fn aut(mobius: Mobius) -> FieldAut {
        FieldAut::new(4, 1, mobius, true).unwrap()
    }

    #[test]
    fn galois_exponents_multiply() {
        let s = FieldAut::galois_only(8, 3, false).unwrap();
        let ss = s.compose(&s).unwrap();
        assert_eq!(ss.galois_exponent(), 1);
        let z = Cyclotomic::zeta(8);
        assert_eq!(ss.apply_cyclotomic(&z).unwrap(), z);
        assert!(FieldAut::galois_only(8, 2, false).is_err());
    }

    #[test]
    fn translations_compose() {
        let shift = aut(mob(1, 1, 0, 1));
        let twice = shift.compose(&shift).unwrap();
        assert_eq!(twice, aut(mob(1, 2, 0, 1)));
    }

    #[test]
    fn negation_then_reciprocal() {
        let neg = aut(mob(-1, 0, 0, 1));
        let recip = aut(mob(0, 1, 1, 0));
        let composed = neg.compose(&recip).unwrap();
        // probe on t: neg(recip(t)) = neg(1/t) = -1/t
        let t = RatFunc::t(4);
        let lhs = composed.apply_ratfunc(&t).unwrap();
        let rhs = neg.apply_ratfunc(&recip.apply_ratfunc(&t).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, (-&RatFunc::constant(c(1))).checked_div(&t).unwrap());
    }

    #[test]
    fn reciprocal_is_an_involution() {
        let recip = aut(mob(0, 1, 1, 0));
        let t2 = &RatFunc::t(4) * &RatFunc::t(4);
        let image = recip.apply_ratfunc(&t2).unwrap();
        assert_eq!(image, RatFunc::constant(c(1)).checked_div(&t2).unwrap());
        assert!(recip.compose(&recip).unwrap().is_identity());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let s = FieldAut::new(8, 3, Mobius::new(Cyclotomic::zeta(8), Cyclotomic::one(8), Cyclotomic::zero(8), Cyclotomic::one(8)).unwrap(), true).unwrap();
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert!(s.inverse().compose(&s).unwrap().is_identity());
    }
}
