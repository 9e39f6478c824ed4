use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::bits::Bits;
use super::element::GroupElement;
use crate::error::{Error, Result};

/// Default enumeration budget.
pub const DEFAULT_MAX_ORDER: usize = 100_000;

/// Groups up to this order carry a full multiplication table.
const TABLE_LIMIT: usize = 1500;

const NO_GEN: u32 = u32::MAX;

struct GroupData {
    generators: Vec<GroupElement>,
    gen_index: Vec<u32>,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, u32>,
    identity: u32,
    // right[i * k + g] = elements[i] * generators[g]
    right: Vec<u32>,
    // breadth-first tree: element = parent * generators[gen]
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    cap: usize,
}

/// A fully enumerated finite group.
///
/// Elements are stored sorted by canonical form, so element indices are
/// stable and every listing derived from them is deterministic. All tables
/// are built at construction and the value is immutable afterwards; clones
/// share the data.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    /// Closure of `generators` under multiplication.
    pub fn enumerate(generators: Vec<GroupElement>, cap: usize) -> Result<FiniteGroup> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidParameter("at least one generator is required".into()))?;
        let ambient = first.ambient();
        for g in &generators[1..] {
            if g.ambient() != ambient {
                return Err(Error::IncompatibleGenerators(format!(
                    "{:?} and {:?}",
                    ambient,
                    g.ambient()
                )));
            }
        }
        for g in &generators {
            if let GroupElement::Matrix(m) = g {
                if m.det().is_zero() {
                    return Err(Error::Singular);
                }
            }
        }
        let k = generators.len();
        let identity = first.identity_like();
        let mut found = vec![identity.clone()];
        let mut lookup: HashMap<GroupElement, u32> = HashMap::from([(identity, 0)]);
        let mut parent = vec![(0u32, NO_GEN)];
        let mut right: Vec<u32> = Vec::new();
        let mut next = 0usize;
        while next < found.len() {
            for (gi, g) in generators.iter().enumerate() {
                let y = found[next].mul(g);
                let idx = match lookup.get(&y) {
                    Some(&i) => i,
                    None => {
                        if found.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let i = found.len() as u32;
                        lookup.insert(y.clone(), i);
                        found.push(y);
                        parent.push((next as u32, gi as u32));
                        i
                    }
                };
                right.push(idx);
            }
            next += 1;
        }

        // renumber in canonical order
        let n = found.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| found[a as usize].cmp(&found[b as usize]));
        let mut new_of = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        let mut right_sorted = vec![0u32; n * k];
        let mut parent_sorted = vec![(0u32, NO_GEN); n];
        for old in 0..n {
            let new = new_of[old] as usize;
            for g in 0..k {
                right_sorted[new * k + g] = new_of[right[old * k + g] as usize];
            }
            let (p, g) = parent[old];
            parent_sorted[new] = (new_of[p as usize], g);
        }
        let mut slots: Vec<Option<GroupElement>> = found.into_iter().map(Some).collect();
        let elements: Vec<GroupElement> = order
            .iter()
            .map(|&old| slots[old as usize].take().expect("each element moved once"))
            .collect();
        for v in lookup.values_mut() {
            *v = new_of[*v as usize];
        }
        let gen_index = generators.iter().map(|g| lookup[g]).collect();
        Ok(Self::assemble(
            generators,
            gen_index,
            elements,
            lookup,
            new_of[0],
            right_sorted,
            parent_sorted,
            cap,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        generators: Vec<GroupElement>,
        gen_index: Vec<u32>,
        elements: Vec<GroupElement>,
        lookup: HashMap<GroupElement, u32>,
        identity: u32,
        right: Vec<u32>,
        parent: Vec<(u32, u32)>,
        cap: usize,
    ) -> FiniteGroup {
        let n = elements.len();
        let k = generators.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let bfs = bfs_order(&parent, identity);
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                let row = &mut t[i * n..(i + 1) * n];
                for &j in &bfs {
                    let (p, g) = parent[j as usize];
                    row[j as usize] = if g == NO_GEN {
                        i as u32
                    } else {
                        right[row[p as usize] as usize * k + g as usize]
                    };
                }
            }
            t
        });
        let mut data = GroupData {
            generators,
            gen_index,
            elements,
            lookup,
            identity,
            right,
            parent,
            table,
            inverse: vec![u32::MAX; n],
            orders: vec![0; n],
            cap,
        };
        // walk each cyclic subgroup once
        for start in 0..n as u32 {
            if data.orders[start as usize] != 0 {
                continue;
            }
            let mut powers = vec![identity];
            let mut x = start;
            while x != identity {
                powers.push(x);
                x = mul_data(&data, x, start);
            }
            let d = powers.len();
            for (a, &p) in powers.iter().enumerate() {
                data.inverse[p as usize] = powers[(d - a) % d];
                data.orders[p as usize] = (d / gcd(a, d)) as u32;
            }
        }
        FiniteGroup(Arc::new(data))
    }

    /// The subgroup on the given sorted element indices, which must be closed.
    pub(crate) fn subgroup_from_indices(&self, idx: &[u32], gens: Option<Vec<u32>>) -> FiniteGroup {
        let gens = gens.unwrap_or_else(|| self.greedy_generators(idx));
        let mut local = vec![u32::MAX; self.order()];
        for (li, &pi) in idx.iter().enumerate() {
            local[pi as usize] = li as u32;
        }
        let n = idx.len();
        let k = gens.len();
        let identity = local[self.0.identity as usize];
        let mut right = vec![0u32; n * k];
        let mut parent = vec![(identity, NO_GEN); n];
        let mut seen = Bits::new(n);
        seen.insert(identity);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = local[self.mul_idx(idx[x as usize], g) as usize];
                debug_assert!(y != u32::MAX, "subset is not closed");
                right[x as usize * k + gi] = y;
                if seen.insert(y) {
                    parent[y as usize] = (x, gi as u32);
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<GroupElement> = idx.iter().map(|&i| self.element(i as usize).clone()).collect();
        let lookup = elements.iter().cloned().zip(0u32..).collect();
        let generators = gens.iter().map(|&g| self.element(g as usize).clone()).collect();
        let gen_index = gens.iter().map(|&g| local[g as usize]).collect();
        Self::assemble(generators, gen_index, elements, lookup, identity, right, parent, self.0.cap)
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn cap(&self) -> usize {
        self.0.cap
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.0.generators
    }

    pub(crate) fn generator_indices(&self) -> &[u32] {
        &self.0.gen_index
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.0.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.0.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.0.lookup.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.0.lookup.contains_key(g)
    }

    pub fn identity(&self) -> &GroupElement {
        &self.0.elements[self.0.identity as usize]
    }

    pub(crate) fn identity_index(&self) -> u32 {
        self.0.identity
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: u32, b: u32) -> u32 {
        mul_data(&self.0, a, b)
    }

    #[inline]
    pub(crate) fn inv_idx(&self, a: u32) -> u32 {
        self.0.inverse[a as usize]
    }

    pub(crate) fn comm_idx(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul_idx(a, b);
        let ba = self.mul_idx(b, a);
        // [a,b] = (ba)^-1 (ab)
        self.mul_idx(self.inv_idx(ba), ab)
    }

    pub(crate) fn right_mul_gen(&self, a: u32, g: usize) -> u32 {
        self.0.right[a as usize * self.0.generators.len() + g]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.0.orders[i] as usize
    }

    /// Product of two member elements.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        Ok(self.element(self.mul_idx(i, j) as usize).clone())
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.inv_idx(self.require(a)?) as usize).clone())
    }

    pub(crate) fn require(&self, g: &GroupElement) -> Result<u32> {
        self.0.lookup.get(g).copied().ok_or(Error::ElementNotInGroup)
    }

    /// Shortest word in the generators (indices into [`generators`]) that
    /// evaluates to element `i`, found during breadth-first enumeration.
    ///
    /// [`generators`]: FiniteGroup::generators
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = i as u32;
        loop {
            let (p, g) = self.0.parent[x as usize];
            if g == NO_GEN {
                break;
            }
            w.push(g as usize);
            x = p;
        }
        w.reverse();
        w
    }

    /// Breadth-first tree edges `(element, parent, generator)` in discovery
    /// order, identity first.
    pub(crate) fn bfs_edges(&self) -> Vec<(u32, u32, u32)> {
        bfs_order(&self.0.parent, self.0.identity)
            .into_iter()
            .map(|x| {
                let (p, g) = self.0.parent[x as usize];
                (x, p, g)
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generator_indices();
        g.iter().all(|&a| g.iter().all(|&b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Element indices of a subgroup given as its own group.
    pub(crate) fn indices_of(&self, h: &FiniteGroup) -> Result<Vec<u32>> {
        let mut idx: Vec<u32> = h.elements().iter().map(|g| self.require(g)).collect::<Result<_>>()?;
        idx.sort_unstable();
        Ok(idx)
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.elements().iter().all(|x| g.contains(x))
    }

    /// Sorted closure of a set of element indices.
    pub(crate) fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure_bits(gens).indices()
    }

    pub(crate) fn closure_bits(&self, gens: &[u32]) -> Bits {
        let id = self.0.identity;
        let mut seen = Bits::new(self.order());
        seen.insert(id);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul_idx(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// Extends a closed subgroup (as bits) by one more element.
    pub(crate) fn join_bits(&self, sub: &Bits, sub_gens: &[u32], x: u32) -> Bits {
        let mut gens = sub_gens.to_vec();
        gens.push(x);
        let mut seen = sub.clone();
        let mut frontier = sub.indices();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = self.mul_idx(y, g);
                if seen.insert(z) {
                    frontier.push(z);
                }
            }
        }
        seen
    }

    /// Canonical generators of the subgroup on `idx`: scanning in element
    /// order, keep each element not yet generated by the earlier ones.
    pub(crate) fn greedy_generators(&self, idx: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut sub = Bits::from_indices(self.order(), &[self.0.identity]);
        let mut count = 1;
        for &i in idx {
            if count == idx.len() {
                break;
            }
            if !sub.contains(i) {
                sub = self.join_bits(&sub, &gens, i);
                gens.push(i);
                count = sub.count();
            }
        }
        if gens.is_empty() {
            gens.push(self.0.identity);
        }
        gens
    }

    /// Subgroup generated by member elements.
    pub fn subgroup_generated(&self, elems: &[GroupElement]) -> Result<FiniteGroup> {
        let idx: Vec<u32> = elems.iter().map(|g| self.require(g)).collect::<Result<_>>()?;
        Ok(self.subgroup_of_gens(&idx))
    }

    pub(crate) fn subgroup_of_gens(&self, gens: &[u32]) -> FiniteGroup {
        let members = self.closure(gens);
        self.subgroup_from_indices(&members, None)
    }

    pub(crate) fn subgroup_from_bits(&self, bits: &Bits) -> FiniteGroup {
        self.subgroup_from_indices(&bits.indices(), None)
    }

    pub fn trivial_subgroup(&self) -> FiniteGroup {
        self.subgroup_from_indices(&[self.0.identity], None)
    }

    /// Smallest normal subgroup containing the given elements.
    pub(crate) fn normal_closure_bits(&self, seeds: &[u32]) -> (Bits, Vec<u32>) {
        let conj = self.generator_indices().to_vec();
        self.normal_closure_under(seeds, &conj)
    }

    /// Smallest subgroup containing `seeds` and normalized by `conj`.
    pub(crate) fn normal_closure_under(&self, seeds: &[u32], conj: &[u32]) -> (Bits, Vec<u32>) {
        let mut gens: Vec<u32> = Vec::new();
        let mut sub = Bits::from_indices(self.order(), &[self.0.identity]);
        let mut pending: Vec<u32> = seeds.to_vec();
        let mut done = 0;
        loop {
            while let Some(x) = pending.pop() {
                if !sub.contains(x) {
                    sub = self.join_bits(&sub, &gens, x);
                    gens.push(x);
                }
            }
            if done == gens.len() {
                return (sub, gens);
            }
            let h = gens[done];
            done += 1;
            for &g in conj {
                let c = self.mul_idx(self.mul_idx(self.inv_idx(g), h), g);
                if !sub.contains(c) {
                    pending.push(c);
                }
            }
        }
    }

    pub(crate) fn is_normal_bits(&self, sub: &Bits, sub_gens: &[u32]) -> bool {
        self.generator_indices().iter().all(|&g| {
            let gi = self.inv_idx(g);
            sub_gens.iter().all(|&h| sub.contains(self.mul_idx(self.mul_idx(gi, h), g)))
        })
    }

    /// True if `n` is a normal subgroup of `self`.
    pub fn is_normal(&self, n: &FiniteGroup) -> Result<bool> {
        let idx = self.indices_of(n)?;
        let gens: Vec<u32> = n.generators().iter().map(|g| self.require(g)).collect::<Result<_>>()?;
        Ok(self.is_normal_bits(&Bits::from_indices(self.order(), &idx), &gens))
    }

    /// Group exponent.
    pub fn exponent(&self) -> usize {
        self.0.orders.iter().fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    /// One generator per cyclic subgroup, the least element generating it.
    pub(crate) fn cyclic_subgroup_reps(&self) -> Vec<u32> {
        let n = self.order();
        let mut covered = Bits::new(n);
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if covered.contains(x) {
                continue;
            }
            reps.push(x);
            let d = self.element_order(x as usize);
            let mut p = x;
            for a in 1..=d {
                if gcd(a, d) == 1 {
                    covered.insert(p);
                }
                p = self.mul_idx(p, x);
            }
        }
        reps
    }
}

fn mul_data(d: &GroupData, a: u32, b: u32) -> u32 {
    if let Some(t) = &d.table {
        return t[a as usize * d.elements.len() + b as usize];
    }
    // walk the word of b
    let k = d.generators.len();
    let mut gens = Vec::new();
    let mut x = b;
    loop {
        let (p, g) = d.parent[x as usize];
        if g == NO_GEN {
            break;
        }
        gens.push(g);
        x = p;
    }
    let mut acc = a;
    for &g in gens.iter().rev() {
        acc = d.right[acc as usize * k + g as usize];
    }
    acc
}

fn bfs_order(parent: &[(u32, u32)], identity: u32) -> Vec<u32> {
    let n = parent.len();
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (x, &(p, g)) in parent.iter().enumerate() {
        if g != NO_GEN {
            children[p as usize].push(x as u32);
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        out.push(x);
        queue.extend(children[x as usize].iter().copied());
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.elements == other.0.elements
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, generators {:?})", self.order(), self.0.generators)
    }
}
