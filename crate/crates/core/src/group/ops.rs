use std::collections::HashMap;

use super::bits::Bits;
use super::element::{CosetContext, CosetElement, GroupElement};
use super::finite::FiniteGroup;
use super::homomorphism::Homomorphism;
use crate::error::{Error, Result};

/// `Z(G)`.
pub fn center(g: &FiniteGroup) -> FiniteGroup {
    let gens = g.generator_indices().to_vec();
    centralizer_of_indices(g, &gens)
}

/// Elements of `g` commuting with every element of `s`.
pub fn centralizer(g: &FiniteGroup, s: &[GroupElement]) -> Result<FiniteGroup> {
    let idx: Vec<u32> = s.iter().map(|x| g.require(x)).collect::<Result<_>>()?;
    // commuting with generators of <S> is enough
    let members = g.closure(&idx);
    let gens = g.greedy_generators(&members);
    Ok(centralizer_of_indices(g, &gens))
}

pub(crate) fn centralizer_of_indices(g: &FiniteGroup, s: &[u32]) -> FiniteGroup {
    let idx: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| s.iter().all(|&y| g.mul_idx(x, y) == g.mul_idx(y, x)))
        .collect();
    g.subgroup_from_indices(&idx, None)
}

/// `[A, B]`, generated by all `[a, b] = a⁻¹b⁻¹ab`.
///
/// Computed as the normal closure in `⟨A, B⟩` of the commutators of
/// generators.
pub fn commutator_subgroup(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let ambient = if a.is_subgroup_of(b) {
        b.clone()
    } else if b.is_subgroup_of(a) {
        a.clone()
    } else {
        let gens: Vec<GroupElement> = a.generators().iter().chain(b.generators()).cloned().collect();
        FiniteGroup::enumerate(gens, a.cap().max(b.cap()))?
    };
    let ai: Vec<u32> = a.generators().iter().map(|x| ambient.require(x)).collect::<Result<_>>()?;
    let bi: Vec<u32> = b.generators().iter().map(|x| ambient.require(x)).collect::<Result<_>>()?;
    Ok(commutator_in(&ambient, &ai, &bi))
}

/// `[⟨a⟩, ⟨b⟩]` for generator index lists `a`, `b` of subgroups whose join is
/// normalized by `g`'s generators (for example `b` generating `g`).
pub(crate) fn commutator_in(g: &FiniteGroup, a: &[u32], b: &[u32]) -> FiniteGroup {
    let (bits, _) = commutator_bits(g, a, b);
    g.subgroup_from_bits(&bits)
}

pub(crate) fn commutator_bits(g: &FiniteGroup, a: &[u32], b: &[u32]) -> (Bits, Vec<u32>) {
    let seeds: Vec<u32> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.comm_idx(x, y))
        .collect();
    g.normal_closure_bits(&seeds)
}

/// `G/N` with its verified projection.
pub fn quotient(g: &FiniteGroup, n: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !g.is_normal(n)? {
        return Err(Error::NotNormal);
    }
    let n_idx = g.indices_of(n)?;
    let order = g.order();
    let mut rep = vec![u32::MAX; order];
    for x in 0..order as u32 {
        if rep[x as usize] != u32::MAX {
            continue;
        }
        for &y in &n_idx {
            rep[g.mul_idx(x, y) as usize] = x;
        }
    }
    let rep_of: HashMap<GroupElement, GroupElement> = (0..order)
        .map(|i| (g.element(i).clone(), g.element(rep[i] as usize).clone()))
        .collect();
    let ctx = CosetContext::new(rep_of);
    let coset = |i: u32| GroupElement::Coset(CosetElement::new(g.element(rep[i as usize] as usize).clone(), ctx.clone()));
    let mut gens: Vec<GroupElement> = Vec::new();
    for &s in g.generator_indices() {
        let c = coset(s);
        if !gens.contains(&c) {
            gens.push(c);
        }
    }
    let q = FiniteGroup::enumerate(gens, g.cap())?;
    let map: Vec<u32> = (0..order as u32)
        .map(|i| q.require(&coset(i)).expect("coset of a member lies in the quotient"))
        .collect();
    let proj = Homomorphism::from_table(g, &q, map)?;
    Ok((q, proj))
}

/// Intersection of two subgroups of `g`.
pub fn intersection(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let mut x = Bits::from_indices(g.order(), &g.indices_of(a)?);
    x.intersect_with(&Bits::from_indices(g.order(), &g.indices_of(b)?));
    Ok(g.subgroup_from_bits(&x))
}

/// Subgroup of `g` generated by `a` and `b`.
pub fn join(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    g.subgroup_generated(&[a.generators(), b.generators()].concat())
}
