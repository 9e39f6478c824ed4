//! Exhaustive searches over subgroups, homomorphisms and automorphisms.

use std::collections::{HashMap, HashSet};

use super::bits::Bits;
use super::finite::FiniteGroup;
use super::homomorphism::Homomorphism;
use crate::error::{Error, Result};

/// Budgets for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest index accepted by the subgroup census.
    pub max_census_index: usize,
    /// Largest number of subgroups visited by a subgroup walk.
    pub max_subgroups: usize,
    /// Largest number of partial assignments tried by homomorphism search.
    pub max_hom_nodes: u64,
    /// Largest group order accepted by automorphism search.
    pub max_automorphism_order: usize,
    /// Largest number of automorphisms materialized.
    pub max_automorphisms: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_census_index: 8,
            max_subgroups: 250_000,
            max_hom_nodes: 50_000_000,
            max_automorphism_order: 512,
            max_automorphisms: 20_000,
        }
    }
}

/// A subgroup of an enumerated group, as element bits plus generators.
#[derive(Clone)]
pub(crate) struct Sub {
    pub bits: Bits,
    pub gens: Vec<u32>,
    pub order: usize,
}

/// Breadth-first walk over all subgroups satisfying `keep`, built as joins
/// of cyclic subgroups. `keep` must be inherited by subgroups, otherwise
/// the walk is incomplete. The trivial subgroup is always included.
pub(crate) fn subgroup_walk(
    g: &FiniteGroup,
    limits: &SearchLimits,
    keep: impl Fn(&Sub) -> bool,
) -> Result<Vec<Sub>> {
    let id = g.identity_index();
    let trivial = Sub {
        bits: Bits::from_indices(g.order(), &[id]),
        gens: Vec::new(),
        order: 1,
    };
    let joiners: Vec<u32> = g
        .cyclic_subgroup_reps()
        .into_iter()
        .filter(|&x| x != id)
        .collect();
    let mut seen: HashSet<Bits> = HashSet::from([trivial.bits.clone()]);
    let mut out = vec![trivial];
    let mut next = 0;
    while next < out.len() {
        let k = out[next].clone();
        next += 1;
        for &x in &joiners {
            if k.bits.contains(x) {
                continue;
            }
            let bits = g.join_bits(&k.bits, &k.gens, x);
            if !seen.insert(bits.clone()) {
                continue;
            }
            let mut gens = k.gens.clone();
            gens.push(x);
            let order = bits.count();
            let cand = Sub { bits, gens, order };
            if !keep(&cand) {
                continue;
            }
            out.push(cand);
            if out.len() > limits.max_subgroups {
                return Err(Error::CensusCapExceeded(format!(
                    "more than {} subgroups visited",
                    limits.max_subgroups
                )));
            }
        }
    }
    Ok(out)
}

fn check_index(g: &FiniteGroup, j: usize, limits: &SearchLimits) -> Result<()> {
    if j == 0 || !g.order().is_multiple_of(j) {
        return Err(Error::InvalidParameter(format!(
            "index {j} does not divide the group order {}",
            g.order()
        )));
    }
    if j > limits.max_census_index {
        return Err(Error::CensusCapExceeded(format!(
            "index {j} above the census cap {}",
            limits.max_census_index
        )));
    }
    Ok(())
}

/// All subgroups of index `j`, by the direct extend-and-close search.
pub fn subgroups_of_index(g: &FiniteGroup, j: usize) -> Result<Vec<FiniteGroup>> {
    subgroups_of_index_direct(g, j, &SearchLimits::default())
}

pub fn subgroups_of_index_direct(g: &FiniteGroup, j: usize, limits: &SearchLimits) -> Result<Vec<FiniteGroup>> {
    check_index(g, j, limits)?;
    let target = g.order() / j;
    let subs = subgroup_walk(g, limits, |s| target.is_multiple_of(s.order))?;
    let mut found: Vec<Vec<u32>> = subs
        .into_iter()
        .filter(|s| s.order == target)
        .map(|s| s.bits.indices())
        .collect();
    found.sort();
    Ok(found.iter().map(|idx| g.subgroup_from_indices(idx, None)).collect())
}

/// Result of the coset-action census.
#[derive(Debug)]
pub struct CosetActionCensus {
    /// Distinct point stabilizers, in canonical order.
    pub subgroups: Vec<FiniteGroup>,
    /// Number of homomorphisms into `Sym(J)` found.
    pub homomorphisms: u64,
    /// Number of those whose image is transitive.
    pub transitive: u64,
    /// Size of the generating set the assignments ran over.
    pub generators: usize,
}

/// All subgroups of index `j` as point stabilizers of transitive
/// homomorphisms `G → Sym(j)`, enumerated over a minimal generating set.
pub fn subgroups_of_index_by_action(g: &FiniteGroup, j: usize, limits: &SearchLimits) -> Result<CosetActionCensus> {
    check_index(g, j, limits)?;
    let gens = minimal_generating_indices(g, limits)?;
    let sym = SymTable::new(j);
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s as usize);
            (0..sym.len() as u32).filter(|&p| o.is_multiple_of(sym.order(p))).collect()
        })
        .collect();
    let mut census = CosetActionCensus {
        subgroups: Vec::new(),
        homomorphisms: 0,
        transitive: 0,
        generators: gens.len(),
    };
    let mut stabilizers: HashSet<Vec<u32>> = HashSet::new();
    let mut nodes = 0u64;
    let mut images: Vec<u32> = Vec::with_capacity(gens.len());
    let mut failure: Option<Error> = None;
    hom_backtrack(
        g,
        &gens,
        &candidates,
        &mut images,
        &mut nodes,
        limits.max_hom_nodes,
        sym.identity(),
        &|a, b| sym.mul(a, b),
        &|_, _| true,
        &mut |map: &[u32], images: &[u32]| {
            census.homomorphisms += 1;
            if !sym.is_transitive(images) {
                return true;
            }
            census.transitive += 1;
            let stab: Vec<u32> = (0..g.order() as u32)
                .filter(|&x| sym.fixes_zero(map[x as usize]))
                .collect();
            stabilizers.insert(stab);
            true
        },
        &mut failure,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let mut stabs: Vec<Vec<u32>> = stabilizers.into_iter().collect();
    stabs.sort();
    census.subgroups = stabs.iter().map(|idx| g.subgroup_from_indices(idx, None)).collect();
    Ok(census)
}

/// Depth-first assignment of generator images with consistency checks on
/// every prefix subgroup. `visit` receives the full element map and the
/// images; returning false stops the search.
#[allow(clippy::too_many_arguments)]
fn hom_backtrack<E: Copy + Eq>(
    g: &FiniteGroup,
    gens: &[u32],
    candidates: &[Vec<E>],
    images: &mut Vec<E>,
    nodes: &mut u64,
    max_nodes: u64,
    identity: E,
    mul: &dyn Fn(E, E) -> E,
    prefix_ok: &dyn Fn(&[E], &[u32]) -> bool,
    visit: &mut dyn FnMut(&[E], &[E]) -> bool,
    failure: &mut Option<Error>,
) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        let (map, _) = extend(g, gens, images, identity, mul).expect("checked on the last prefix");
        return visit(&map, images);
    }
    for &c in &candidates[depth] {
        *nodes += 1;
        if *nodes > max_nodes {
            *failure = Some(Error::CensusCapExceeded(format!(
                "homomorphism search above {max_nodes} nodes"
            )));
            return false;
        }
        images.push(c);
        let ok = extend(g, &gens[..=depth], images, identity, mul).is_some_and(|(map, reached)| prefix_ok(&map, &reached));
        if ok && !hom_backtrack(g, gens, candidates, images, nodes, max_nodes, identity, mul, prefix_ok, visit, failure) {
            images.pop();
            return false;
        }
        images.pop();
    }
    true
}

/// Extends images of `gens` over `⟨gens⟩` along right multiplication,
/// returning `None` on the first inconsistent edge. Entries outside the
/// subgroup are left as `identity`; the second value lists the subgroup.
fn extend<E: Copy + Eq>(
    g: &FiniteGroup,
    gens: &[u32],
    images: &[E],
    identity: E,
    mul: &dyn Fn(E, E) -> E,
) -> Option<(Vec<E>, Vec<u32>)> {
    let n = g.order();
    let id = g.identity_index();
    let mut map = vec![identity; n];
    let mut seen = Bits::new(n);
    seen.insert(id);
    let mut reached = vec![id];
    let mut next = 0;
    while next < reached.len() {
        let x = reached[next];
        next += 1;
        let fx = map[x as usize];
        for (&s, &fs) in gens.iter().zip(images) {
            let y = g.mul_idx(x, s);
            let fy = mul(fx, fs);
            if seen.insert(y) {
                map[y as usize] = fy;
                reached.push(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    Some((map, reached))
}

/// `Sym(j)` with a full multiplication table, `j ≤ 8`.
struct SymTable {
    degree: usize,
    perms: Vec<Vec<u8>>,
    table: Vec<u32>,
    orders: Vec<usize>,
}

impl SymTable {
    fn new(degree: usize) -> Self {
        let mut perms: Vec<Vec<u8>> = Vec::new();
        permutations(&mut (0..degree as u8).collect(), 0, &mut perms);
        perms.sort();
        let index: HashMap<Vec<u8>, u32> = perms.iter().cloned().zip(0u32..).collect();
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (ab)(i) = a(b(i))
                let prod: Vec<u8> = pb.iter().map(|&i| pa[i as usize]).collect();
                table[a * n + b] = index[&prod];
            }
        }
        let mut orders = vec![0; n];
        for (p, o) in orders.iter_mut().enumerate() {
            let mut x = p as u32;
            let mut d = 1;
            while x != 0 {
                x = table[x as usize * n + p];
                d += 1;
            }
            *o = d;
        }
        SymTable {
            degree,
            perms,
            table,
            orders,
        }
    }

    fn len(&self) -> usize {
        self.perms.len()
    }

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.perms.len() + b as usize]
    }

    fn order(&self, p: u32) -> usize {
        self.orders[p as usize]
    }

    fn fixes_zero(&self, p: u32) -> bool {
        self.perms[p as usize][0] == 0
    }

    fn is_transitive(&self, images: &[u32]) -> bool {
        let mut reached = vec![false; self.degree];
        reached[0] = true;
        let mut stack = vec![0u8];
        while let Some(x) = stack.pop() {
            for &p in images {
                let y = self.perms[p as usize][x as usize];
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        reached.iter().all(|&r| r)
    }
}

fn permutations(items: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Maps each element to the index (into `reps`) of its cyclic subgroup.
fn cyclic_classes(g: &FiniteGroup) -> (Vec<u32>, Vec<u32>) {
    let reps = g.cyclic_subgroup_reps();
    let mut of = vec![u32::MAX; g.order()];
    for (ri, &x) in reps.iter().enumerate() {
        let d = g.element_order(x as usize);
        let mut p = x;
        for a in 1..=d {
            if num_integer::gcd(a, d) == 1 {
                of[p as usize] = ri as u32;
            }
            p = g.mul_idx(p, x);
        }
    }
    (reps, of)
}

/// A generating set of minimum size, as element indices.
///
/// Searches level by level over distinct subgroups generated by `k`
/// cyclic subgroups; the first cyclic subgroup is taken up to conjugacy.
/// The trivial group reports the single generator `1`.
pub(crate) fn minimal_generating_indices(g: &FiniteGroup, limits: &SearchLimits) -> Result<Vec<u32>> {
    let n = g.order();
    let id = g.identity_index();
    if n == 1 {
        return Ok(vec![id]);
    }
    let (reps, of) = cyclic_classes(g);
    if let Some(&x) = reps.iter().find(|&&x| g.element_order(x as usize) == n) {
        return Ok(vec![x]);
    }
    // first generator: one cyclic subgroup per conjugacy class
    let mut class_done = vec![false; reps.len()];
    let mut level: Vec<Sub> = Vec::new();
    let mut seen: HashSet<Bits> = HashSet::new();
    for (ri, &x) in reps.iter().enumerate() {
        if x == id || class_done[ri] {
            continue;
        }
        let mut stack = vec![x];
        class_done[ri] = true;
        while let Some(y) = stack.pop() {
            for &s in g.generator_indices() {
                let c = g.mul_idx(g.mul_idx(g.inv_idx(s), y), s);
                let rc = of[c as usize] as usize;
                if !class_done[rc] {
                    class_done[rc] = true;
                    stack.push(c);
                }
            }
        }
        let bits = g.closure_bits(&[x]);
        seen.insert(bits.clone());
        level.push(Sub {
            order: bits.count(),
            bits,
            gens: vec![x],
        });
    }
    let mut total = level.len();
    loop {
        let mut next: Vec<Sub> = Vec::new();
        let mut next_seen: HashSet<Bits> = HashSet::new();
        for k in &level {
            for &x in &reps {
                if k.bits.contains(x) {
                    continue;
                }
                let bits = g.join_bits(&k.bits, &k.gens, x);
                let mut gens = k.gens.clone();
                gens.push(x);
                if bits.count() == n {
                    return Ok(gens);
                }
                if seen.contains(&bits) || !next_seen.insert(bits.clone()) {
                    continue;
                }
                total += 1;
                if total > limits.max_subgroups {
                    return Err(Error::CensusCapExceeded(format!(
                        "more than {} subgroups visited",
                        limits.max_subgroups
                    )));
                }
                next.push(Sub {
                    order: bits.count(),
                    bits,
                    gens,
                });
            }
        }
        seen.extend(next_seen);
        if next.is_empty() {
            return Err(Error::Internal("generator search did not reach the group".into()));
        }
        level = next;
    }
}

/// Smallest `k` such that some `k` elements generate `G`.
pub fn min_generator_count(g: &FiniteGroup) -> Result<usize> {
    Ok(minimal_generating_indices(g, &SearchLimits::default())?.len())
}

/// A generating set of minimum size.
pub fn minimal_generating_set(g: &FiniteGroup, limits: &SearchLimits) -> Result<Vec<super::GroupElement>> {
    Ok(minimal_generating_indices(g, limits)?
        .into_iter()
        .map(|i| g.element(i as usize).clone())
        .collect())
}

/// Calls `visit` with the element table of every automorphism; stops early
/// if `visit` returns false.
pub(crate) fn for_each_automorphism(
    g: &FiniteGroup,
    limits: &SearchLimits,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> Result<()> {
    if g.order() > limits.max_automorphism_order {
        return Err(Error::CensusCapExceeded(format!(
            "automorphism search limited to order {}",
            limits.max_automorphism_order
        )));
    }
    let gens = minimal_generating_indices(g, limits)?;
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s as usize);
            (0..g.order() as u32).filter(|&x| g.element_order(x as usize) == o).collect()
        })
        .collect();
    let mut nodes = 0;
    let mut images = Vec::new();
    let mut failure = None;
    let n = g.order();
    hom_backtrack(
        g,
        &gens,
        &candidates,
        &mut images,
        &mut nodes,
        limits.max_hom_nodes,
        g.identity_index(),
        &|a, b| g.mul_idx(a, b),
        // an automorphism is injective on every prefix subgroup
        &|map, reached| {
            let mut hit = Bits::new(n);
            reached.iter().all(|&x| hit.insert(map[x as usize]))
        },
        &mut |map: &[u32], _: &[u32]| {
            let mut hit = Bits::new(n);
            if map.iter().all(|&y| hit.insert(y)) {
                visit(map)
            } else {
                true
            }
        },
        &mut failure,
    );
    failure.map_or(Ok(()), Err)
}

/// All automorphisms of `G`.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    automorphism_group_with(g, &SearchLimits::default())
}

pub fn automorphism_group_with(g: &FiniteGroup, limits: &SearchLimits) -> Result<Vec<Homomorphism>> {
    let mut tables: Vec<Vec<u32>> = Vec::new();
    let mut over = false;
    for_each_automorphism(g, limits, &mut |map| {
        if tables.len() == limits.max_automorphisms {
            over = true;
            return false;
        }
        tables.push(map.to_vec());
        true
    })?;
    if over {
        return Err(Error::CensusCapExceeded(format!(
            "more than {} automorphisms",
            limits.max_automorphisms
        )));
    }
    tables.sort();
    tables
        .into_iter()
        .map(|t| Homomorphism::from_table(g, g, t))
        .collect()
}

/// True if every automorphism of `g` maps `h` onto itself. Fails with
/// `CensusCapExceeded` after `max_automorphisms` automorphisms.
pub fn is_characteristic(g: &FiniteGroup, h: &FiniteGroup, limits: &SearchLimits) -> Result<bool> {
    let members = Bits::from_indices(g.order(), &g.indices_of(h)?);
    if h.order() == 1 || h.order() == g.order() {
        return Ok(true);
    }
    let gens: Vec<u32> = h.generators().iter().map(|x| g.require(x)).collect::<Result<_>>()?;
    let mut ok = true;
    let mut count = 0;
    for_each_automorphism(g, limits, &mut |map| {
        count += 1;
        ok = gens.iter().all(|&x| members.contains(map[x as usize]));
        ok && count <= limits.max_automorphisms
    })?;
    if ok && count > limits.max_automorphisms {
        return Err(Error::CensusCapExceeded(format!(
            "more than {} automorphisms",
            limits.max_automorphisms
        )));
    }
    Ok(ok)
}
