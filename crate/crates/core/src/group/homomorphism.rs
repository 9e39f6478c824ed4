use std::fmt;

use super::bits::Bits;
use super::element::GroupElement;
use super::finite::FiniteGroup;
use crate::error::{Error, Result};

/// A map between enumerated groups, stored as an element-index table.
#[derive(Clone)]
pub struct Homomorphism {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    map: Vec<u32>,
    verified: bool,
}

impl Homomorphism {
    /// Extends `images` (one per domain generator) along the enumeration's
    /// shortest words, then verifies the result.
    pub fn from_images(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        images: &[GroupElement],
    ) -> Result<Homomorphism> {
        if images.len() != domain.generators().len() {
            return Err(Error::InvalidParameter(format!(
                "{} images for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        let img: Vec<u32> = images.iter().map(|x| codomain.require(x)).collect::<Result<_>>()?;
        let mut map = vec![u32::MAX; domain.order()];
        for (x, p, g) in domain.bfs_edges() {
            map[x as usize] = if x == domain.identity_index() {
                codomain.identity_index()
            } else {
                codomain.mul_idx(map[p as usize], img[g as usize])
            };
        }
        let hom = Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map,
            verified: false,
        };
        hom.verify()
    }

    /// Wraps an explicit table and verifies it.
    pub(crate) fn from_table(domain: &FiniteGroup, codomain: &FiniteGroup, map: Vec<u32>) -> Result<Homomorphism> {
        Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map,
            verified: false,
        }
        .verify()
    }

    /// Checks `φ(x·s) = φ(x)·φ(s)` for every element `x` and generator `s`.
    /// Every element is a word in the generators, so by induction on word
    /// length this is equivalent to `φ(xy) = φ(x)φ(y)` for all `x, y`.
    fn verify(mut self) -> Result<Homomorphism> {
        let d = &self.domain;
        let c = &self.codomain;
        if self.map[d.identity_index() as usize] != c.identity_index() {
            return Err(Error::NotAHomomorphism);
        }
        for (gi, &s) in d.generator_indices().iter().enumerate() {
            let fs = self.map[s as usize];
            for x in 0..d.order() as u32 {
                let xs = d.right_mul_gen(x, gi);
                if self.map[xs as usize] != c.mul_idx(self.map[x as usize], fs) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        self.verified = true;
        Ok(self)
    }

    /// Exhaustive check over all pairs; used by tests as an independent
    /// confirmation of [`verified`](Homomorphism::verified).
    pub fn check_all_pairs(&self) -> bool {
        let d = &self.domain;
        let c = &self.codomain;
        (0..d.order() as u32).all(|x| {
            (0..d.order() as u32).all(|y| {
                self.map[d.mul_idx(x, y) as usize] == c.mul_idx(self.map[x as usize], self.map[y as usize])
            })
        })
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn apply(&self, g: &GroupElement) -> Result<&GroupElement> {
        let i = self.domain.require(g)?;
        Ok(self.codomain.element(self.map[i as usize] as usize))
    }

    pub fn kernel(&self) -> FiniteGroup {
        let id = self.codomain.identity_index();
        let idx: Vec<u32> = (0..self.domain.order() as u32)
            .filter(|&x| self.map[x as usize] == id)
            .collect();
        self.domain.subgroup_from_indices(&idx, None)
    }

    pub fn kernel_order(&self) -> usize {
        let id = self.codomain.identity_index();
        self.map.iter().filter(|&&x| x == id).count()
    }

    pub fn image(&self) -> FiniteGroup {
        let bits = Bits::from_indices(self.codomain.order(), &self.map);
        self.codomain.subgroup_from_bits(&bits)
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        let idx: Vec<u32> = self.domain.indices_of(h)?.iter().map(|&x| self.map[x as usize]).collect();
        Ok(self.codomain.subgroup_from_bits(&Bits::from_indices(self.codomain.order(), &idx)))
    }

    /// Preimage of a subgroup of the codomain.
    pub fn preimage(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        let target = Bits::from_indices(self.codomain.order(), &self.codomain.indices_of(h)?);
        let idx: Vec<u32> = (0..self.domain.order() as u32)
            .filter(|&x| target.contains(self.map[x as usize]))
            .collect();
        Ok(self.domain.subgroup_from_indices(&idx, None))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_order() == 1
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.domain.order() == self.codomain.order()
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Homomorphism(|domain| {}, |codomain| {}, |kernel| {})",
            self.domain.order(),
            self.codomain.order(),
            self.kernel_order()
        )
    }
}
