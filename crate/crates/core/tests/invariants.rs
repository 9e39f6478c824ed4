mod common;

use common::*;
use nilgroup::group::{
    center, centralizer, commutator_subgroup, is_characteristic, quotient, FiniteGroup, GroupElement, Permutation,
    SearchLimits,
};
use nilgroup::jordan::{characteristic_abelian, dn_extract, subgroup_census, verify_certificate};
use nilgroup::nilpotent::{
    central_extension_check, is_nilpotent_of_class_at_most, lower_central_series, nilpotency_class, phi_homomorphism,
    upper_central_series,
};
use nilgroup::witness::{generators, FamilySpec};
use nilgroup::Error;
use proptest::prelude::*;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Random permutation groups of degree at most 6.
fn perm_group_strategy() -> impl Strategy<Value = FiniteGroup> {
    (3usize..=6)
        .prop_flat_map(|d| prop::collection::vec(Just((0..d as u32).collect::<Vec<u32>>()).prop_shuffle(), 1..=3))
        .prop_map(|gens| {
            let gens: Vec<GroupElement> = gens
                .into_iter()
                .map(|images| Permutation::from_images(images).unwrap().into())
                .collect();
            FiniteGroup::enumerate(gens, 1000).unwrap()
        })
}

fn nilpotent_factor() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..=12).prop_map(|n| FamilySpec::Cyclic { n }),
        prop::sample::select(vec![3u64, 5]).prop_map(|p| FamilySpec::Heisenberg { p }),
        (1usize..=3).prop_map(|n| FamilySpec::ElementaryAbelian { p: 2, n }),
        prop::sample::select(vec![2usize, 4, 8]).prop_map(|n| FamilySpec::Dihedral { n }),
        prop::sample::select(vec![2usize, 4]).prop_map(|n| FamilySpec::Quaternion { n }),
    ]
}

/// Random nilpotent groups as products of one or two nilpotent families.
fn nilpotent_strategy() -> impl Strategy<Value = FiniteGroup> {
    prop::collection::vec(nilpotent_factor(), 1..=2).prop_filter_map("order at most 512", |factors| {
        let gens = generators(&FamilySpec::DirectProduct { factors }).unwrap();
        FiniteGroup::enumerate(gens, 512).ok()
    })
}

fn any_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![perm_group_strategy(), nilpotent_strategy()]
}

fn pick(g: &FiniteGroup, seeds: &[usize]) -> Vec<GroupElement> {
    seeds.iter().map(|s| g.element(s % g.order()).clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_and_lagrange(g in any_group(), seeds in prop::collection::vec(any::<usize>(), 1..=3)) {
        let h = g.subgroup_generated(&pick(&g, &seeds)).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert!(h.is_subgroup_of(&g));
        for x in h.elements() {
            prop_assert!(h.contains(&x.inverse()));
            for y in h.generators() {
                prop_assert!(h.contains(&x.mul(y)));
            }
        }
    }

    #[test]
    fn quotients_are_exact(g in any_group(), which in 0usize..3) {
        let n = match which {
            0 => commutator_subgroup(&g, &g).unwrap(),
            1 => center(&g),
            _ => g.clone(),
        };
        let (q, proj) = quotient(&g, &n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert_eq!(proj.kernel(), n);
        prop_assert_eq!(proj.image().order(), q.order());
        if which == 0 {
            prop_assert!(q.is_abelian());
        }
    }

    #[test]
    fn center_is_full_centralizer(g in any_group()) {
        let z = center(&g);
        prop_assert_eq!(&centralizer(&g, g.generators()).unwrap(), &z);
        prop_assert!(z.is_abelian());
        prop_assert!(g.is_normal(&z).unwrap());
    }

    #[test]
    fn series_agree(g in any_group(), seed in any::<u64>()) {
        let lower = lower_central_series(&g);
        let upper = upper_central_series(&g);
        prop_assert_eq!(lower.class, upper.class);
        prop_assert_eq!(nilpotency_class(&g), lower.class);
        // γ terms decrease and Z terms increase
        prop_assert!(lower.orders().windows(2).all(|w| w[0] % w[1] == 0));
        prop_assert!(upper.orders().windows(2).all(|w| w[1] % w[0] == 0));
        for n in 0..=4 {
            let check = is_nilpotent_of_class_at_most(&g, n, seed);
            prop_assert_eq!(check.holds, lower.class.is_some_and(|c| c <= n));
            prop_assert!(check.agrees());
        }
    }

    #[test]
    fn census_methods_agree(g in perm_group_strategy().prop_filter("small", |g| g.order() <= 120), j in 1usize..=4) {
        prop_assume!(g.order() % j == 0);
        let census = subgroup_census(&g, j).unwrap();
        prop_assert!(census.methods_agree);
        // each index-j subgroup is a point stabilizer of (j-1)! transitive actions
        prop_assert_eq!(census.transitive, census.count() as u64 * factorial(j - 1));
        prop_assert!(census.homomorphisms <= census.bound);
        for h in &census.subgroups {
            prop_assert_eq!(h.order() * j, g.order());
        }
    }

    #[test]
    fn commutator_maps_are_homomorphisms(g in nilpotent_strategy(), seeds in prop::collection::vec(any::<usize>(), 3), slot in 0usize..3) {
        let c = nilpotency_class(&g).unwrap().max(1);
        let fixed = pick(&g, &seeds[..c - 1]);
        let phi = phi_homomorphism(&g, c, &fixed, 1 + slot % c).unwrap();
        prop_assert!(phi.check_all_pairs());
    }

    #[test]
    fn central_extensions(g in nilpotent_strategy(), seed in any::<usize>()) {
        let z = center(&g);
        let a = z.subgroup_generated(&pick(&z, &[seed])).unwrap();
        let report = central_extension_check(&g, &a).unwrap();
        prop_assert!(report.holds);
        prop_assert!(report.class.unwrap() <= report.quotient_class.unwrap() + 1);
    }

    #[test]
    fn dn_certificates(g in nilpotent_strategy()) {
        let class = nilpotency_class(&g).unwrap();
        for c in class.saturating_sub(1)..=class {
            let cert = dn_extract(&g, g.generators(), c).unwrap();
            prop_assert!((cert.index as u64) <= cert.bound_value);
            prop_assert!(cert.verified_class <= cert.claimed_class_bound);
            prop_assert_eq!(g.order() % cert.index, 0);
            prop_assert!(verify_certificate(&cert, &g).passed());
        }
    }

    #[test]
    fn characteristic_abelian_is_characteristic(g in any_group().prop_filter("automorphism budget", |g| g.order() <= 64)) {
        let cert = characteristic_abelian(&g).unwrap();
        let a = g.subgroup_generated(&cert.subgroup.generators).unwrap();
        prop_assert!(a.is_abelian());
        match is_characteristic(&g, &a, &SearchLimits::default()) {
            Err(Error::CensusCapExceeded(_)) => prop_assert!(cert.trace[2].count.is_none()),
            verdict => prop_assert!(verdict.unwrap()),
        }
        prop_assert!(verify_certificate(&cert, &g).passed());
    }
}

#[test]
fn heisenberg_witnesses() {
    for p in [3u64, 5, 7, 11] {
        let g = heisenberg(p);
        let p = p as usize;
        assert_eq!(g.order(), p * p * p);
        assert_eq!(nilpotency_class(&g), Some(2));
        let z = center(&g);
        assert_eq!(z.order(), p);
        assert_eq!(commutator_subgroup(&g, &g).unwrap(), z);
        assert_eq!(g.exponent(), p);
        assert_eq!(lower_central_series(&g).orders(), vec![p * p * p, p, 1]);
        assert_eq!(upper_central_series(&g).orders(), vec![1, p, p * p * p]);
    }
}
