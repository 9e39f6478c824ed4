//! Extraction of bounded-index nilpotent subgroups, with certificates that
//! can be checked independently of the code that produced them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{
    centralizer, for_each_automorphism, centralizer_of_indices, min_generator_count, minimal_generating_indices, quotient,
    subgroup_walk, subgroups_of_index_by_action, subgroups_of_index_direct, FiniteGroup, GroupElement, Homomorphism,
    SearchLimits,
};
use crate::linear::{eigenspace_permutation_action, simultaneous_eigenspaces};
use crate::nilpotent::{class_at_most_in, iterated_commutator_idx, lower_central_series, nilpotency_class, upper_central_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Dn,
    Jor,
    Groupmain,
    GroupmainNogen,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Dn => "dn",
            Mode::Jor => "jor",
            Mode::Groupmain => "groupmain",
            Mode::GroupmainNogen => "groupmain-nogen",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        [Mode::Dn, Mode::Jor, Mode::Groupmain, Mode::GroupmainNogen]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

/// Parameters an extraction ran with.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateInputs {
    pub c: Option<usize>,
    /// Largest minimal generating set size among the groups in the trace.
    pub m: Option<usize>,
    pub j: Option<usize>,
    /// Generators the commutator maps run over (`dn` mode only).
    pub generators: Vec<GroupElement>,
}

/// One step of a pipeline: the order of the group it produced, the index it
/// cost and the a priori bound on that index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: String,
    pub order: usize,
    pub index: Option<usize>,
    pub bound: Option<u64>,
    /// Step-specific count: subgroups intersected, eigenspaces, or maps.
    pub count: Option<usize>,
}

impl TraceStep {
    fn new(step: &str, order: usize) -> Self {
        TraceStep {
            step: step.into(),
            order,
            index: None,
            bound: None,
            count: None,
        }
    }

    fn index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    fn bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    fn count(mut self, count: usize) -> Self {
        self.count = Some(count);
        self
    }
}

/// The extracted subgroup as listed data, so that a certificate read from
/// disk can be checked without trusting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub generators: Vec<GroupElement>,
    pub elements: Vec<GroupElement>,
}

impl SubgroupRecord {
    pub fn of(h: &FiniteGroup) -> Self {
        SubgroupRecord {
            generators: h.generators().to_vec(),
            elements: h.elements().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionCertificate {
    pub mode: Mode,
    pub inputs: CertificateInputs,
    pub subgroup: SubgroupRecord,
    pub claimed_class_bound: usize,
    pub verified_class: usize,
    pub index: usize,
    /// Product of the per-step bounds, saturating at `u64::MAX`.
    pub bound_value: u64,
    pub trace: Vec<TraceStep>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |acc, k| acc.saturating_mul(k))
}

fn saturating_pow(base: usize, exp: u64) -> u64 {
    let mut acc = 1u64;
    for _ in 0..exp {
        if acc == u64::MAX {
            break;
        }
        acc = acc.saturating_mul(base as u64);
    }
    acc
}

/// Subgroup of `g` given as a subgroup of `sub`, which is itself a subgroup of `g`.
fn lift(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let idx: Vec<u32> = h.elements().iter().map(|x| g.require(x)).collect::<Result<_>>()?;
    Ok(g.subgroup_from_indices(&idx, None))
}

fn class_of(h: &FiniteGroup) -> Result<usize> {
    nilpotency_class(h).ok_or_else(|| Error::Internal("extracted subgroup is not nilpotent".into()))
}

/// Intersection of all abelian subgroups of maximal order; characteristic
/// because automorphisms permute that set.
pub fn characteristic_abelian(n: &FiniteGroup) -> Result<ExtractionCertificate> {
    characteristic_abelian_with(n, &SearchLimits::default())
}

pub fn characteristic_abelian_with(n: &FiniteGroup, limits: &SearchLimits) -> Result<ExtractionCertificate> {
    let (a, mut steps) = abelian_core(n, limits)?;
    let checked = automorphisms_preserving(n, &a, limits)?;
    let mut step = TraceStep::new("automorphism-invariance", a.order());
    step.count = checked;
    steps.push(step);
    let best = steps[0].index.expect("search step has an index");
    let s = steps[0].count.expect("search step has a count");
    let index = n.order() / a.order();
    Ok(ExtractionCertificate {
        mode: Mode::Jor,
        inputs: CertificateInputs {
            j: Some(best),
            ..Default::default()
        },
        subgroup: SubgroupRecord::of(&a),
        claimed_class_bound: 1,
        verified_class: class_of(&a)?,
        index,
        // each member of S has index `best`, so the intersection has index at most best^|S|
        bound_value: saturating_pow(best, s as u64),
        trace: steps,
    })
}

/// Number of automorphisms of `n`, all checked to fix `a` setwise; `None`
/// when `n` is too large to enumerate them, in which case invariance rests
/// on the construction alone.
fn automorphisms_preserving(n: &FiniteGroup, a: &FiniteGroup, limits: &SearchLimits) -> Result<Option<usize>> {
    let members = crate::group::Bits::from_indices(n.order(), &n.indices_of(a)?);
    let gens: Vec<u32> = a.generators().iter().map(|x| n.require(x)).collect::<Result<_>>()?;
    let mut count = 0;
    let mut moved = false;
    let outcome = for_each_automorphism(n, limits, &mut |map| {
        count += 1;
        moved = !gens.iter().all(|&x| members.contains(map[x as usize]));
        !moved && count <= limits.max_automorphisms
    });
    match outcome {
        Err(Error::CensusCapExceeded(_)) => return Ok(None),
        Err(e) => return Err(e),
        Ok(()) => {}
    }
    if moved {
        return Err(Error::Internal("intersection of maximal abelian subgroups is not characteristic".into()));
    }
    if count > limits.max_automorphisms {
        return Ok(None);
    }
    Ok(Some(count))
}

fn abelian_core(n: &FiniteGroup, limits: &SearchLimits) -> Result<(FiniteGroup, Vec<TraceStep>)> {
    let subs = subgroup_walk(n, limits, |s| {
        s.gens
            .iter()
            .enumerate()
            .all(|(i, &x)| s.gens[..i].iter().all(|&y| n.mul_idx(x, y) == n.mul_idx(y, x)))
    })?;
    let top = subs.iter().map(|s| s.order).max().unwrap_or(1);
    let mut members: Option<crate::group::Bits> = None;
    let mut count = 0;
    for s in subs.iter().filter(|s| s.order == top) {
        count += 1;
        members = Some(match members {
            None => s.bits.clone(),
            Some(mut b) => {
                b.intersect_with(&s.bits);
                b
            }
        });
    }
    let a = n.subgroup_from_bits(&members.expect("the trivial subgroup is abelian"));
    let steps = vec![
        TraceStep::new("abelian-search", top).index(n.order() / top).count(count),
        TraceStep::new("intersection", a.order()).index(n.order() / a.order()),
    ];
    Ok((a, steps))
}

/// Intersection of the kernels of `x ↦ [u, x]` over the left-nested
/// commutators `u` of length `c` in `gens`; returns the subgroup, `|γ_c|`
/// and the number of distinct maps. For `c = 0` the single map is the
/// identity and the result is trivial.
fn dn_core(g: &FiniteGroup, gens: &[u32], c: usize) -> Result<(FiniteGroup, usize, usize)> {
    let series = lower_central_series(g);
    match series.class {
        Some(k) if k <= c + 1 => {}
        class => {
            return Err(Error::ClassHypothesisViolated(format!(
                "class {} exceeds c + 1 = {}",
                class.map_or("infinite".to_string(), |k| k.to_string()),
                c + 1
            )))
        }
    }
    let gamma_c = series.chain.get(c).map_or(1, FiniteGroup::order);
    if c == 0 {
        return Ok((g.trivial_subgroup(), gamma_c, 1));
    }
    let mut heads: BTreeSet<u32> = BTreeSet::new();
    let mut seq = vec![0usize; c];
    if !gens.is_empty() {
        loop {
            let elems: Vec<u32> = seq.iter().map(|&i| gens[i]).collect();
            heads.insert(iterated_commutator_idx(g, &elems));
            let Some(pos) = seq.iter().rposition(|&i| i + 1 < gens.len()) else {
                break;
            };
            seq[pos] += 1;
            seq[pos + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    for &u in &heads {
        let map: Vec<u32> = (0..g.order() as u32).map(|x| g.comm_idx(u, x)).collect();
        Homomorphism::from_table(g, g, map)
            .map_err(|_| Error::Internal("commutator map is not a homomorphism".into()))?;
    }
    let heads: Vec<u32> = heads.into_iter().collect();
    Ok((centralizer_of_indices(g, &heads), gamma_c, heads.len()))
}

/// Class `≤ c` subgroup of a group of class `≤ c + 1`, of index at most
/// `|γ_c(G)|^(m^c)` for `m` generators.
pub fn dn_extract(g: &FiniteGroup, gens: &[GroupElement], c: usize) -> Result<ExtractionCertificate> {
    let idx: Vec<u32> = gens.iter().map(|x| g.require(x)).collect::<Result<_>>()?;
    if g.closure(&idx).len() != g.order() {
        return Err(Error::InvalidParameter("elements do not generate the group".into()));
    }
    let (h, j, maps) = dn_core(g, &idx, c)?;
    let index = g.order() / h.order();
    let bound = saturating_pow(j, (gens.len() as u64).saturating_pow(c as u32));
    Ok(ExtractionCertificate {
        mode: Mode::Dn,
        inputs: CertificateInputs {
            c: Some(c),
            m: Some(gens.len()),
            j: Some(j),
            generators: gens.to_vec(),
        },
        subgroup: SubgroupRecord::of(&h),
        claimed_class_bound: c,
        verified_class: class_of(&h)?,
        index,
        bound_value: bound,
        trace: vec![TraceStep::new("kernels", h.order()).index(index).bound(bound).count(maps)],
    })
}

/// Index-`J` subgroups found both by direct search and as stabilizers of
/// transitive actions on `J` points.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub index: usize,
    pub subgroups: Vec<FiniteGroup>,
    /// `min_generator_count(G)`.
    pub generator_count: usize,
    /// `(J!)^r`, saturating.
    pub bound: u64,
    pub homomorphisms: u64,
    pub transitive: u64,
    pub methods_agree: bool,
}

impl CensusResult {
    pub fn count(&self) -> usize {
        self.subgroups.len()
    }
}

pub fn subgroup_census(g: &FiniteGroup, j: usize) -> Result<CensusResult> {
    subgroup_census_with(g, j, &SearchLimits::default())
}

pub fn subgroup_census_with(g: &FiniteGroup, j: usize, limits: &SearchLimits) -> Result<CensusResult> {
    let action = subgroups_of_index_by_action(g, j, limits)?;
    let direct = subgroups_of_index_direct(g, j, limits)?;
    let r = action.generators;
    Ok(CensusResult {
        index: j,
        methods_agree: action.subgroups == direct,
        subgroups: action.subgroups,
        generator_count: r,
        bound: saturating_pow(factorial(j) as usize, r as u64),
        homomorphisms: action.homomorphisms,
        transitive: action.transitive,
    })
}

fn is_linear(x: &GroupElement) -> Result<bool> {
    match x {
        GroupElement::Matrix(_) => Ok(true),
        GroupElement::Semilinear(s) => Ok(s.is_linear()),
        _ => Err(Error::InvalidParameter(
            "extraction needs a group of matrices or semilinear elements".into(),
        )),
    }
}

/// Runs the semilinear pipeline: linear part, characteristic abelian
/// subgroup, eigenspace kernel, quotient by `A`, centralizer of the linear
/// image and the commutator-kernel step, lifted back to `G`.
pub fn groupmain_extract(g: &FiniteGroup, c: usize, mode: Mode) -> Result<ExtractionCertificate> {
    groupmain_extract_with(g, c, mode, &SearchLimits::default())
}

pub fn groupmain_extract_with(g: &FiniteGroup, c: usize, mode: Mode, limits: &SearchLimits) -> Result<ExtractionCertificate> {
    let skip_dn = match mode {
        Mode::Groupmain => false,
        Mode::GroupmainNogen => true,
        _ => return Err(Error::InvalidParameter(format!("{} is not a pipeline mode", mode.as_str()))),
    };
    let mut trace = Vec::new();
    let mut trace_groups: Vec<FiniteGroup> = vec![g.clone()];

    let mut linear_idx = Vec::new();
    for (i, x) in g.elements().iter().enumerate() {
        if is_linear(x)? {
            linear_idx.push(i as u32);
        }
    }
    let n = g.subgroup_from_indices(&linear_idx, None);
    for x in g.generators() {
        if let GroupElement::Semilinear(s) = x {
            if !s.aut().fixes_roots_of_unity() {
                return Err(Error::RootsOfUnityMoved);
            }
        }
    }
    let (gamma, _) = quotient(g, &n)?;
    match nilpotency_class(&gamma) {
        Some(k) if k <= c => {}
        _ => return Err(Error::GammaNotNilpotent { bound: c }),
    }
    trace.push(TraceStep::new("linear-part", n.order()).index(g.order() / n.order()));
    trace_groups.push(n.clone());

    let (a, _) = abelian_core(&n, limits)?;
    trace.push(TraceStep::new("characteristic-abelian", a.order()).index(n.order() / a.order()));
    trace_groups.push(a.clone());

    let decomposition = simultaneous_eigenspaces(&a)?;
    let r = decomposition.subspaces.len();
    let action = eigenspace_permutation_action(g, &decomposition)?;
    let g1 = action.kernel;
    let r_bound = factorial(r);
    trace.push(
        TraceStep::new("eigenspace-kernel", g1.order())
            .index(g.order() / g1.order())
            .bound(r_bound)
            .count(r),
    );
    trace_groups.push(g1.clone());

    let z = crate::group::center(&g1);
    if !a.elements().iter().all(|x| z.contains(x)) {
        return Err(Error::Internal("abelian subgroup does not act by scalars".into()));
    }
    trace.push(TraceStep::new("scalar-action", a.order()));

    let a_in_g1 = lift(&g1, &a)?;
    let (gbar, proj) = quotient(&g1, &a_in_g1)?;
    let n1_idx: Vec<u32> = linear_idx
        .iter()
        .map(|&i| g.element(i as usize))
        .filter_map(|x| g1.index_of(x).map(|i| i as u32))
        .collect();
    let n1 = g1.subgroup_from_indices(&n1_idx, None);
    let nbar = proj.image_of(&n1)?;
    trace.push(TraceStep::new("quotient", gbar.order()).count(nbar.order()));
    trace_groups.push(gbar.clone());
    trace_groups.push(nbar.clone());

    let cbar = centralizer(&gbar, nbar.generators())?;
    let centralizer_bound = factorial(nbar.order());
    trace.push(
        TraceStep::new("centralizer", cbar.order())
            .index(gbar.order() / cbar.order())
            .bound(centralizer_bound),
    );
    trace_groups.push(cbar.clone());
    match nilpotency_class(&cbar) {
        Some(k) if k <= c + 1 => {}
        _ => return Err(Error::Internal("centralizer exceeds class c + 1".into())),
    }

    let (hbar, dn_bound) = if skip_dn {
        (cbar.clone(), 1)
    } else {
        let gens = minimal_generating_indices(&cbar, limits)?;
        let (hbar, j, maps) = dn_core(&cbar, &gens, c)?;
        let bound = saturating_pow(j, (gens.len() as u64).saturating_pow(c as u32));
        trace.push(
            TraceStep::new("commutator-kernels", hbar.order())
                .index(cbar.order() / hbar.order())
                .bound(bound)
                .count(maps),
        );
        trace_groups.push(hbar.clone());
        (hbar, bound)
    };

    let h_in_g1 = proj.preimage(&lift(&gbar, &hbar)?)?;
    let h = lift(g, &h_in_g1)?;
    let index = g.order() / h.order();
    let bound_value = r_bound.saturating_mul(centralizer_bound).saturating_mul(dn_bound);
    trace.push(TraceStep::new("lift", h.order()).index(index).bound(bound_value));
    trace_groups.push(h.clone());

    let claimed = if skip_dn { c + 2 } else { (c + 1).max(1) };
    let verified = class_of(&h)?;
    if verified > claimed {
        return Err(Error::Internal(format!("extracted class {verified} exceeds {claimed}")));
    }
    let mut m = 0;
    for t in &trace_groups {
        m = m.max(min_generator_count(t)?);
    }
    Ok(ExtractionCertificate {
        mode,
        inputs: CertificateInputs {
            c: Some(c),
            m: Some(m),
            j: Some(nbar.order()),
            generators: Vec::new(),
        },
        subgroup: SubgroupRecord::of(&h),
        claimed_class_bound: claimed,
        verified_class: verified,
        index,
        bound_value,
        trace,
    })
}

/// Named outcome of each check run by [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<(&'static str, bool)>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }

    /// First failing check, if any.
    pub fn failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|(_, ok)| !ok).map(|&(name, _)| name)
    }
}

/// Re-checks a certificate against `g` from scratch. Checks run in order
/// and stop at the first failure.
pub fn verify_certificate(cert: &ExtractionCertificate, g: &FiniteGroup) -> Verification {
    let mut v = Verification { checks: Vec::new() };
    let mut check = |name, ok: bool| {
        v.checks.push((name, ok));
        ok
    };
    let rec = &cert.subgroup;
    let members = rec.elements.iter().chain(&rec.generators).all(|x| g.contains(x));
    if !check("membership", members) {
        return v;
    }
    let h = match g.subgroup_generated(&rec.generators) {
        Ok(h) => h,
        Err(_) => {
            check("closure", false);
            return v;
        }
    };
    let listed: BTreeSet<&GroupElement> = rec.elements.iter().collect();
    let closed = listed.len() == rec.elements.len() && listed == h.elements().iter().collect();
    if !check("closure", closed) {
        return v;
    }
    let verified = Some(cert.verified_class);
    if !check("lower-class", lower_central_series(&h).class == verified) {
        return v;
    }
    if !check("upper-class", upper_central_series(&h).class == verified) {
        return v;
    }
    if !check("class-bound", cert.verified_class <= cert.claimed_class_bound) {
        return v;
    }
    if !check("index", cert.index.checked_mul(h.order()) == Some(g.order())) {
        return v;
    }
    if !check("bound", cert.index as u64 <= cert.bound_value) {
        return v;
    }
    let replay = match cert.mode {
        Mode::Jor => characteristic_abelian(g),
        Mode::Dn => dn_extract(g, &cert.inputs.generators, cert.inputs.c.unwrap_or(0)),
        mode => groupmain_extract(g, cert.inputs.c.unwrap_or(0), mode),
    };
    check("replay", replay.as_ref().is_ok_and(|r| r == cert));
    v
}

/// Smallest index of a subgroup of class `≤ c`, by exhaustive search.
pub fn min_nilpotent_index(g: &FiniteGroup, c: usize) -> Result<usize> {
    min_nilpotent_index_with(g, c, &SearchLimits::default(), 2000)
}

pub fn min_nilpotent_index_with(g: &FiniteGroup, c: usize, limits: &SearchLimits, max_order: usize) -> Result<usize> {
    if nilpotency_class(g).is_some_and(|k| k <= c) {
        return Ok(1);
    }
    if g.order() > max_order {
        return Err(Error::CensusCapExceeded(format!(
            "subgroup search limited to order {max_order}"
        )));
    }
    let subs = subgroup_walk(g, limits, |s| class_at_most_in(g, &s.gens, c))?;
    let best = subs.iter().map(|s| s.order).max().unwrap_or(1);
    Ok(g.order() / best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{build, FamilySpec};

    #[test]
    fn dihedral_characteristic_abelian_is_center() {
        let d4 = build(&FamilySpec::Dihedral { n: 4 }).unwrap();
        let cert = characteristic_abelian(&d4).unwrap();
        assert_eq!(cert.subgroup.elements.len(), 2);
        assert_eq!(cert.index, 4);
        assert_eq!(cert.trace[0].count, Some(3));
        assert!(verify_certificate(&cert, &d4).passed());
    }

    #[test]
    fn heisenberg_dn_index_is_exact() {
        let h = build(&FamilySpec::Heisenberg { p: 5 }).unwrap();
        let cert = dn_extract(&h, h.generators(), 1).unwrap();
        assert_eq!(cert.index, 25);
        assert_eq!(cert.bound_value, 25);
        assert_eq!(cert.verified_class, 1);
        assert!(verify_certificate(&cert, &h).passed());
        let mut bad = cert.clone();
        bad.index = 24;
        assert_eq!(verify_certificate(&bad, &h).failure(), Some("index"));
    }

    #[test]
    fn census_of_s3() {
        let s3 = FiniteGroup::enumerate(
            vec![
                crate::group::Permutation::from_cycles(3, &[vec![1, 2]]).unwrap().into(),
                crate::group::Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap().into(),
            ],
            100,
        )
        .unwrap();
        let r = subgroup_census(&s3, 2).unwrap();
        assert_eq!(r.count(), 1);
        assert!(r.methods_agree);
        assert_eq!(min_nilpotent_index(&s3, 1).unwrap(), 2);
    }

    #[test]
    fn twisted_dihedral_pipeline() {
        let g = build(&FamilySpec::SemilinearExample {
            name: "dihedral-twist".into(),
        })
        .unwrap();
        let cert = groupmain_extract(&g, 1, Mode::Groupmain).unwrap();
        assert_eq!(cert.index, 2);
        assert_eq!(cert.verified_class, 1);
        assert!(verify_certificate(&cert, &g).passed());
        let nogen = groupmain_extract(&g, 1, Mode::GroupmainNogen).unwrap();
        assert_eq!(nogen.claimed_class_bound, 3);
        assert!(verify_certificate(&nogen, &g).passed());
    }
}
