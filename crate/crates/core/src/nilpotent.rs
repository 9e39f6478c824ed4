//! Central series, nilpotency class and the commutator identities of
//! nilpotent groups as executable checks.
//!
//! Indexing: `γ_0(G) = G`, `γ_{i+1}(G) = [γ_i(G), G]`, `Z_0(G) = 1`, and the
//! class is the least `c` with `γ_c(G) = 1`. An abelian group has class 1
//! and only the trivial group has class 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{center, quotient, Bits, FiniteGroup, GroupElement, Homomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Upper,
    Lower,
}

#[derive(Clone, Debug)]
pub struct CentralSeriesReport {
    pub kind: SeriesKind,
    /// Terms up to and including the first one that repeats.
    pub chain: Vec<FiniteGroup>,
    /// Nilpotency class, `None` if the series stabilizes short of its goal.
    pub class: Option<usize>,
}

impl CentralSeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.chain.iter().map(FiniteGroup::order).collect()
    }
}

/// `γ_0 = G ⊇ γ_1 ⊇ ...` until the terms stop shrinking.
pub fn lower_central_series(g: &FiniteGroup) -> CentralSeriesReport {
    let gens = g.generator_indices().to_vec();
    let mut chain = vec![g.clone()];
    let mut current: Vec<u32> = gens.clone();
    let mut order = g.order();
    while order > 1 {
        let (bits, next_gens) = crate::group::commutator_bits(g, &current, &gens);
        let next_order = bits.count();
        if next_order == order {
            break;
        }
        chain.push(g.subgroup_from_bits(&bits));
        current = next_gens;
        order = next_order;
    }
    let class = (order == 1).then(|| chain.len() - 1);
    CentralSeriesReport {
        kind: SeriesKind::Lower,
        chain,
        class,
    }
}

/// `Z_0 = 1 ⊆ Z_1 ⊆ ...` with `Z_{i+1} = {x : [x, s] ∈ Z_i for every
/// generator s}`, until the terms stop growing.
pub fn upper_central_series(g: &FiniteGroup) -> CentralSeriesReport {
    let n = g.order();
    let gens = g.generator_indices().to_vec();
    let mut members = Bits::from_indices(n, &[g.identity_index()]);
    let mut chain = vec![g.trivial_subgroup()];
    let mut order = 1;
    while order < n {
        let next: Vec<u32> = (0..n as u32)
            .filter(|&x| gens.iter().all(|&s| members.contains(g.comm_idx(x, s))))
            .collect();
        if next.len() == order {
            break;
        }
        order = next.len();
        members = Bits::from_indices(n, &next);
        chain.push(g.subgroup_from_indices(&next, None));
    }
    let class = (order == n).then(|| chain.len() - 1);
    CentralSeriesReport {
        kind: SeriesKind::Upper,
        chain,
        class,
    }
}

pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    lower_central_series(g).class
}

/// Class of the subgroup `⟨gens⟩` of `g`, if at most `bound`.
pub(crate) fn class_at_most_in(g: &FiniteGroup, gens: &[u32], bound: usize) -> bool {
    let (mut bits, mut current) = g.normal_closure_under(gens, gens);
    for _ in 0..bound {
        if bits.count() == 1 {
            return true;
        }
        let seeds: Vec<u32> = current
            .iter()
            .flat_map(|&x| gens.iter().map(move |&y| (x, y)))
            .map(|(x, y)| g.comm_idx(x, y))
            .collect();
        let (next, next_gens) = g.normal_closure_under(&seeds, gens);
        if next.count() == bits.count() {
            return false;
        }
        bits = next;
        current = next_gens;
    }
    bits.count() == 1
}

/// Left-nested commutator `[[...[g_1, g_2], ...], g_k]`; a single element
/// is returned unchanged.
pub fn iterated_commutator(elems: &[GroupElement]) -> Result<GroupElement> {
    let (first, rest) = elems
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("iterated commutator of no elements".into()))?;
    let ambient = first.ambient();
    let mut acc = first.clone();
    for x in rest {
        if x.ambient() != ambient {
            return Err(Error::IncompatibleGenerators("mixed commutator arguments".into()));
        }
        acc = acc.commutator(x);
    }
    Ok(acc)
}

pub(crate) fn iterated_commutator_idx(g: &FiniteGroup, elems: &[u32]) -> u32 {
    let mut acc = elems[0];
    for &x in &elems[1..] {
        acc = g.comm_idx(acc, x);
    }
    acc
}

/// Tuple budget for the exhaustive commutator check.
pub const TUPLE_BUDGET: f64 = 1e7;
/// Tuples drawn when the exhaustive check is out of budget.
pub const TUPLE_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMethod {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ClassCheck {
    /// `γ_n(G) = 1`.
    pub holds: bool,
    pub method: TupleMethod,
    /// Every length-`(n+1)` commutator tested was trivial.
    pub tuples_vanish: bool,
    /// Lexicographically least nonvanishing tuple found, by element order.
    pub witness: Option<Vec<GroupElement>>,
}

impl ClassCheck {
    /// The tuple check agrees with the series verdict. A sampled check
    /// that finds nothing is consistent with either verdict.
    pub fn agrees(&self) -> bool {
        match self.method {
            TupleMethod::Exhaustive => self.holds == self.tuples_vanish,
            TupleMethod::Sampled { .. } => !self.holds || self.tuples_vanish,
        }
    }
}

/// Decides `class(G) ≤ n` from the lower central series and cross-checks
/// it against the vanishing of all `(n+1)`-fold commutators.
pub fn is_nilpotent_of_class_at_most(g: &FiniteGroup, n: usize, seed: u64) -> ClassCheck {
    let holds = lower_central_series(g).class.is_some_and(|c| c <= n);
    let size = g.order() as f64;
    if size.powi(n as i32 + 1) <= TUPLE_BUDGET {
        let witness = least_nonvanishing_tuple(g, n + 1);
        ClassCheck {
            holds,
            method: TupleMethod::Exhaustive,
            tuples_vanish: witness.is_none(),
            witness: witness.map(|w| to_elements(g, &w)),
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<Vec<u32>> = None;
        let id = g.identity_index();
        let mut tuple = vec![0u32; n + 1];
        for _ in 0..TUPLE_SAMPLES {
            for x in tuple.iter_mut() {
                *x = rng.gen_range(0..g.order() as u32);
            }
            if iterated_commutator_idx(g, &tuple) != id && best.as_ref().is_none_or(|b| tuple < *b) {
                best = Some(tuple.clone());
            }
        }
        ClassCheck {
            holds,
            method: TupleMethod::Sampled {
                samples: TUPLE_SAMPLES,
                seed,
            },
            tuples_vanish: best.is_none(),
            witness: best.map(|w| to_elements(g, &w)),
        }
    }
}

fn to_elements(g: &FiniteGroup, idx: &[u32]) -> Vec<GroupElement> {
    idx.iter().map(|&i| g.element(i as usize).clone()).collect()
}

/// Least tuple `(g_1, ..., g_len)` with nontrivial left-nested commutator.
///
/// Works on value sets: `live[j]` holds the values after `j + 1` entries
/// from which some completion ends away from the identity, so the greedy
/// choice of each entry is exact.
fn least_nonvanishing_tuple(g: &FiniteGroup, len: usize) -> Option<Vec<u32>> {
    let n = g.order() as u32;
    let id = g.identity_index();
    let mut live: Vec<Bits> = vec![Bits::new(n as usize); len];
    for x in 0..n {
        if x != id {
            live[len - 1].insert(x);
        }
    }
    for j in (0..len - 1).rev() {
        let (head, tail) = live.split_at_mut(j + 1);
        let next = &tail[0];
        for v in 0..n {
            if (0..n).any(|y| next.contains(g.comm_idx(v, y))) {
                head[j].insert(v);
            }
        }
    }
    let first = (0..n).find(|&x| live[0].contains(x))?;
    let mut tuple = vec![first];
    let mut v = first;
    for set in &live[1..] {
        let y = (0..n).find(|&y| set.contains(g.comm_idx(v, y))).expect("live value has a completion");
        v = g.comm_idx(v, y);
        tuple.push(y);
    }
    Some(tuple)
}

/// The map `g ↦ [[...[g_1, ..., g_{j-1}], g], g_j, ..., g_{n-1}]` with `g`
/// in slot `j` (1-based), into `γ_{n-1}(G)`. Requires class `≤ n`.
pub fn phi_homomorphism(g: &FiniteGroup, n: usize, fixed: &[GroupElement], slot: usize) -> Result<Homomorphism> {
    if n == 0 || fixed.len() != n - 1 || slot == 0 || slot > n {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1, n - 1 fixed elements and 1 <= slot <= n (n = {n}, {} fixed, slot {slot})",
            fixed.len()
        )));
    }
    let series = lower_central_series(g);
    match series.class {
        Some(c) if c <= n => {}
        class => return Err(Error::ClassTooLarge { class, bound: n }),
    }
    let fixed_idx: Vec<u32> = fixed.iter().map(|x| g.index_of(x).map(|i| i as u32).ok_or(Error::ElementNotInGroup)).collect::<Result<_>>()?;
    let codomain = series
        .chain
        .get(n - 1)
        .cloned()
        .unwrap_or_else(|| g.trivial_subgroup());
    let mut tuple: Vec<u32> = Vec::with_capacity(n);
    let map: Vec<u32> = (0..g.order() as u32)
        .map(|x| {
            tuple.clear();
            tuple.extend_from_slice(&fixed_idx[..slot - 1]);
            tuple.push(x);
            tuple.extend_from_slice(&fixed_idx[slot - 1..]);
            let v = iterated_commutator_idx(g, &tuple);
            codomain
                .index_of(g.element(v as usize))
                .expect("commutator of n elements lies in the (n-1)th term") as u32
        })
        .collect();
    Homomorphism::from_table(g, &codomain, map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionReport {
    pub quotient_class: Option<usize>,
    pub class: Option<usize>,
    /// `class(G) ≤ class(G/A) + 1`.
    pub holds: bool,
}

/// For central `A`, compares `class(G)` with `class(G/A) + 1`.
pub fn central_extension_check(g: &FiniteGroup, a: &FiniteGroup) -> Result<CentralExtensionReport> {
    let z = center(g);
    if !a.elements().iter().all(|x| z.contains(x)) {
        return Err(Error::NotCentral);
    }
    let (q, _) = quotient(g, a)?;
    let quotient_class = nilpotency_class(&q);
    let class = nilpotency_class(g);
    let holds = match (class, quotient_class) {
        (Some(c), Some(qc)) => c <= qc + 1,
        (None, None) => true,
        _ => false,
    };
    Ok(CentralExtensionReport {
        quotient_class,
        class,
        holds,
    })
}

#[derive(Clone, Debug)]
pub struct SylowReport {
    /// One Sylow subgroup per prime divisor of `|G|`, by increasing prime.
    pub subgroups: Vec<(u64, FiniteGroup)>,
    pub pairwise_commute: bool,
    /// Multiplying one element from each Sylow subgroup hits every element
    /// of `G` exactly once.
    pub product_is_bijective: bool,
    pub is_direct_product: bool,
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, grown greedily from the trivial group by joining
/// `p`-elements in canonical order while the join stays a `p`-group.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> FiniteGroup {
    let full = prime_factors(g.order() as u64)
        .into_iter()
        .find(|&(q, _)| q == p)
        .map_or(1, |(_, e)| (p as usize).pow(e));
    let p = p as usize;
    let mut bits = Bits::from_indices(g.order(), &[g.identity_index()]);
    let mut gens: Vec<u32> = Vec::new();
    let candidates: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| g.element_order(x as usize) > 1 && is_power_of(g.element_order(x as usize), p))
        .collect();
    while bits.count() < full {
        let mut grown = false;
        for &x in &candidates {
            if bits.contains(x) {
                continue;
            }
            let joined = g.join_bits(&bits, &gens, x);
            if is_power_of(joined.count(), p) {
                bits = joined;
                gens.push(x);
                grown = true;
                break;
            }
        }
        assert!(grown, "a non-Sylow p-subgroup always extends");
    }
    g.subgroup_from_indices(&bits.indices(), None)
}

/// Tests whether `G` is the direct product of its Sylow subgroups.
pub fn sylow_product_check(g: &FiniteGroup) -> SylowReport {
    let subgroups: Vec<(u64, FiniteGroup)> = prime_factors(g.order() as u64)
        .into_iter()
        .map(|(p, _)| (p, sylow_subgroup(g, p)))
        .collect();
    let idx: Vec<Vec<u32>> = subgroups
        .iter()
        .map(|(_, s)| g.indices_of(s).expect("subgroup of g"))
        .collect();
    let gens: Vec<Vec<u32>> = subgroups
        .iter()
        .map(|(_, s)| s.generators().iter().map(|x| g.index_of(x).unwrap() as u32).collect())
        .collect();
    let mut pairwise_commute = true;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            pairwise_commute &= gens[i]
                .iter()
                .all(|&a| gens[j].iter().all(|&b| g.mul_idx(a, b) == g.mul_idx(b, a)));
        }
    }
    let mut product = Bits::from_indices(g.order(), &[g.identity_index()]);
    let mut size = 1usize;
    for s in &idx {
        let mut next = Bits::new(g.order());
        for x in product.indices() {
            for &y in s {
                next.insert(g.mul_idx(x, y));
            }
        }
        size *= s.len();
        product = next;
    }
    let product_is_bijective = product.count() == g.order() && size == g.order();
    SylowReport {
        is_direct_product: pairwise_commute && product_is_bijective,
        subgroups,
        pairwise_commute,
        product_is_bijective,
    }
}
