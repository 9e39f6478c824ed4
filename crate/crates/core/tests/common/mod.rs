#![allow(dead_code)]

use nilgroup::field::parse_scalar;
use nilgroup::group::{FiniteGroup, GroupElement, Permutation};
use nilgroup::linear::ExactMatrix;
use nilgroup::witness::{build, semilinear_catalog, FamilySpec};

pub fn perm(degree: usize, cycles: &[&[usize]]) -> GroupElement {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).unwrap().into()
}

pub fn perm_group(degree: usize, gens: &[&[&[usize]]]) -> FiniteGroup {
    FiniteGroup::enumerate(gens.iter().map(|c| perm(degree, c)).collect(), 100_000).unwrap()
}

pub fn matrix(m: u32, rows: &[&[&str]]) -> GroupElement {
    ExactMatrix::from_rows(
        m,
        rows.iter()
            .map(|r| r.iter().map(|s| parse_scalar(s, m, false).unwrap()).collect())
            .collect(),
    )
    .unwrap()
    .into()
}

pub fn matrix_group(gens: Vec<GroupElement>) -> FiniteGroup {
    FiniteGroup::enumerate(gens, 100_000).unwrap()
}

pub fn family(spec: FamilySpec) -> FiniteGroup {
    build(&spec).unwrap()
}

pub fn heisenberg(p: u64) -> FiniteGroup {
    family(FamilySpec::Heisenberg { p })
}

pub fn sym3() -> FiniteGroup {
    perm_group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
}

pub fn q8() -> FiniteGroup {
    family(FamilySpec::Quaternion { n: 2 })
}

pub fn d4() -> FiniteGroup {
    family(FamilySpec::Dihedral { n: 4 })
}

pub fn elementary(p: u64, n: usize) -> FiniteGroup {
    family(FamilySpec::ElementaryAbelian { p, n })
}

fn product(factors: Vec<FamilySpec>) -> FiniteGroup {
    family(FamilySpec::DirectProduct { factors })
}

/// Test groups of order at most 512, nilpotent and not.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    use FamilySpec::*;
    let mut out: Vec<(String, FiniteGroup)> = vec![
        ("trivial".into(), family(Cyclic { n: 1 })),
        ("Z12".into(), family(Cyclic { n: 12 })),
        ("Z2^3".into(), elementary(2, 3)),
        ("Z3^2".into(), elementary(3, 2)),
        ("Z2^4".into(), elementary(2, 4)),
        ("Heis3".into(), heisenberg(3)),
        ("Heis5".into(), heisenberg(5)),
        ("D4".into(), d4()),
        ("D8".into(), family(Dihedral { n: 8 })),
        ("D16".into(), family(Dihedral { n: 16 })),
        ("Q8".into(), q8()),
        ("Q16".into(), family(Quaternion { n: 4 })),
        ("Z2xHeis3".into(), product(vec![Cyclic { n: 2 }, Heisenberg { p: 3 }])),
        ("D4xZ3".into(), product(vec![Dihedral { n: 4 }, Cyclic { n: 3 }])),
        ("Q8xD4".into(), product(vec![Quaternion { n: 2 }, Dihedral { n: 4 }])),
        ("Heis3xZ3xZ2".into(), product(vec![Heisenberg { p: 3 }, Cyclic { n: 3 }, Cyclic { n: 2 }])),
        ("S3".into(), sym3()),
        ("D5".into(), family(Dihedral { n: 5 })),
        ("D6".into(), family(Dihedral { n: 6 })),
        ("Dic3".into(), family(Quaternion { n: 3 })),
        ("S3xZ2".into(), product(vec![Dihedral { n: 3 }, Cyclic { n: 2 }])),
        ("A4".into(), perm_group(4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]])),
        ("S4".into(), perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]])),
        ("A5".into(), perm_group(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])),
        ("S3xS3".into(), perm_group(6, &[&[&[1, 2]], &[&[1, 2, 3]], &[&[4, 5]], &[&[4, 5, 6]]])),
        ("D9".into(), family(Dihedral { n: 9 })),
    ];
    for e in semilinear_catalog().unwrap() {
        out.push((e.name.to_string(), e.group));
    }
    out
}

/// The scalar corpus as `(conductor, transcendental, canonical text)`.
pub fn scalar_corpus() -> Vec<(u32, bool, String)> {
    include_str!("../data/scalars.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.splitn(3, ' ');
            let m = parts.next().unwrap().parse().unwrap();
            let ff = parts.next().unwrap().parse().unwrap();
            (m, ff, parts.next().unwrap().to_string())
        })
        .collect()
}

pub mod numeric {
    //! Floating-point evaluation at `ζ_m = e^{2πi/m}`, used as an oracle for
    //! the exact arithmetic.

    use nilgroup::field::{Cyclotomic, FieldAut, Mobius, Poly, RatFunc, Scalar};
    use num_bigint::BigInt;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub const CONDUCTORS: [u32; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 24];
    /// Generic evaluation point for `t`.
    pub const T0: Complex64 = Complex64::new(0.37, 0.61);

    fn zeta(m: u32, k: u32) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
    }

    /// Value of `x` under the embedding `ζ ↦ e^{2πik/m}`.
    pub fn cyclotomic(x: &Cyclotomic, k: u32) -> Complex64 {
        let z = zeta(x.conductor(), k);
        x.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| z.powu(i as u32) * c.to_f64().unwrap())
            .sum()
    }

    pub fn poly(p: &Poly, k: u32, t: Complex64) -> Complex64 {
        p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + cyclotomic(c, k))
    }

    pub fn scalar(x: &Scalar, k: u32, t: Complex64) -> Complex64 {
        match x {
            Scalar::Const(c) => cyclotomic(c, k),
            Scalar::Func(f) => poly(f.numerator(), k, t) / poly(f.denominator(), k, t),
        }
    }

    pub fn mobius(mu: &Mobius, t: Complex64) -> Complex64 {
        let [a, b, c, d] = mu.entries().clone().map(|x| cyclotomic(&x, 1));
        (a * t + b) / (c * t + d)
    }

    /// Oracle for `σ(x)` evaluated at `t`.
    pub fn image(sigma: &FieldAut, x: &Scalar, t: Complex64) -> Complex64 {
        let m = sigma.conductor();
        let k = sigma.galois_exponent();
        let x = match x {
            Scalar::Const(c) => Scalar::Const(c.embed(m)),
            Scalar::Func(f) => Scalar::Func(RatFunc::new(embed_poly(f.numerator(), m), embed_poly(f.denominator(), m)).unwrap()),
        };
        scalar(&x, k, mobius(sigma.mobius(), t))
    }

    fn embed_poly(p: &Poly, m: u32) -> Poly {
        Poly::from_coeffs(m, p.coeffs().iter().map(|c| c.embed(m)).collect())
    }

    pub fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-6 * (1.0 + a.norm().max(b.norm()))
    }

    fn rational(rng: &mut ChaCha8Rng) -> BigRational {
        BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4)))
    }

    pub fn random_cyclotomic(rng: &mut ChaCha8Rng, m: u32) -> Cyclotomic {
        let len = rng.gen_range(0..=m as usize + 2);
        let raw: Vec<BigRational> = (0..len).map(|_| rational(rng)).collect();
        Cyclotomic::from_exponent_coeffs(m, &raw)
    }

    fn random_poly(rng: &mut ChaCha8Rng, m: u32, max_deg: usize) -> Poly {
        let deg = rng.gen_range(0..=max_deg);
        Poly::from_coeffs(m, (0..=deg).map(|_| random_cyclotomic(rng, m)).collect())
    }

    pub fn random_scalar(rng: &mut ChaCha8Rng, m: u32, function_field: bool) -> Scalar {
        if !function_field || rng.gen_bool(0.2) {
            return Scalar::Const(random_cyclotomic(rng, m));
        }
        let num = random_poly(rng, m, 2);
        let mut den = random_poly(rng, m, 1);
        if den.is_zero() {
            den = Poly::constant(Cyclotomic::one(m));
        }
        Scalar::from_ratfunc(RatFunc::new(num, den).unwrap())
    }

    pub fn random_nonzero_scalar(rng: &mut ChaCha8Rng, m: u32, function_field: bool) -> Scalar {
        loop {
            let x = random_scalar(rng, m, function_field);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn random_unit(rng: &mut ChaCha8Rng, m: u32) -> u32 {
        if m <= 2 {
            return 1;
        }
        loop {
            let k = rng.gen_range(1..m);
            if num_integer::gcd(k, m) == 1 {
                return k;
            }
        }
    }

    pub fn random_aut(rng: &mut ChaCha8Rng, m: u32, function_field: bool) -> FieldAut {
        let k = random_unit(rng, m);
        if !function_field {
            return FieldAut::galois_only(m, k, false).unwrap();
        }
        loop {
            let small = |rng: &mut ChaCha8Rng| {
                let e = rng.gen_range(0..m as i64);
                let c = rng.gen_range(-2i64..=2);
                &Cyclotomic::zeta_power(m, e) * &Cyclotomic::from_integer(m, c)
            };
            let (a, b, c, d) = (small(rng), small(rng), small(rng), small(rng));
            if let Ok(mu) = Mobius::new(a, b, c, d) {
                return FieldAut::new(m, k, mu, true).unwrap();
            }
        }
    }
}
