//! Variant pairs and variant functions over concrete sets.
//!
//! `⟨a;b⟩ = ({0}×a) ∪ ({1}×b)` and `λ̃_{x∈A} b_x = ⋃_{x∈A} {x}×b_x` do not raise
//! rank, which is what lets non-well-founded tuples exist as ordinary sets.
//! Application is the image operator. The space-enumerating operators
//! ([`vfunspace`], [`famprod`]) enumerate a powerset and are size-guarded.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hfs::{image, kpair, std_product, HfSet};

/// Largest `|A × ⋃B|` accepted by the function-space enumerators (2^16 subsets).
pub const MAX_SPACE_BASE: usize = 16;

/// An `A`-indexed family `{b_x}_{x∈A}`; keys are compared as sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Family {
    entries: BTreeMap<HfSet, HfSet>,
}

impl Family {
    pub fn new() -> Family {
        Family::default()
    }

    /// Adds `x ↦ b`, replacing any earlier value for `x`.
    pub fn insert(&mut self, x: HfSet, b: HfSet) {
        self.entries.insert(x, b);
    }

    pub fn get(&self, x: &HfSet) -> Option<&HfSet> {
        self.entries.get(x)
    }

    pub fn keys(&self) -> HfSet {
        HfSet::from_members(self.entries.keys().cloned())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HfSet, &HfSet)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The family `x ↦ f(b_x)` over the same keys.
    pub fn map_values(&self, mut f: impl FnMut(&HfSet) -> HfSet) -> Family {
        self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect()
    }
}

impl FromIterator<(HfSet, HfSet)> for Family {
    fn from_iter<T: IntoIterator<Item = (HfSet, HfSet)>>(iter: T) -> Self {
        Family {
            entries: iter.into_iter().collect(),
        }
    }
}

/// The variant pair `⟨a;b⟩`.
pub fn vpair(a: &HfSet, b: &HfSet) -> HfSet {
    let zero = HfSet::singleton(HfSet::empty());
    let one = HfSet::singleton(HfSet::one());
    std_product(&zero, a).union(&std_product(&one, b))
}

/// The variant function `λ̃_{x∈A} b_x`.
pub fn vlambda(fam: &Family) -> HfSet {
    HfSet::from_members(
        fam.iter()
            .flat_map(|(x, b)| b.members().iter().map(move |y| kpair(x, y))),
    )
}

/// `λ̃` over the index ordinals `0..values.len()`.
pub fn vtuple(values: &[HfSet]) -> HfSet {
    vlambda(
        &values
            .iter()
            .enumerate()
            .map(|(i, b)| (HfSet::ordinal(i), b.clone()))
            .collect(),
    )
}

/// Application `f ‘ {x}`; yields 0 outside the function's domain.
pub fn vapply(f: &HfSet, x: &HfSet) -> HfSet {
    image(f, &HfSet::singleton(x.clone()))
}

/// Shared enumerator for `{f ⊆ A × base | ∀x∈A. f ‘ {x} ∈ allowed(x)}`.
fn function_space(
    what: &'static str,
    domain: &HfSet,
    base: &HfSet,
    allowed: impl Fn(&HfSet) -> Option<HfSet>,
) -> Result<HfSet> {
    let graph = std_product(domain, base);
    if graph.len() > MAX_SPACE_BASE {
        return Err(Error::SizeLimit {
            what,
            size: graph.len(),
            limit: MAX_SPACE_BASE,
        });
    }
    let candidates = graph.subsets(MAX_SPACE_BASE)?;
    Ok(HfSet::from_members(candidates.into_iter().filter(|f| {
        domain.members().iter().all(|x| match allowed(x) {
            Some(target) => target.contains(&vapply(f, x)),
            None => false,
        })
    })))
}

/// The variant function space `A →̃ B = {f ⊆ A × ⋃B | ∀x∈A. f ‘ {x} ∈ B}`.
pub fn vfunspace(a: &HfSet, b: &HfSet) -> Result<HfSet> {
    function_space("variant function space", a, &b.big_union(), |_| Some(b.clone()))
}

/// The variant product `A ×̃ B = {⟨x;y⟩ | x ∈ A ∧ y ∈ B}`.
pub fn vproduct(a: &HfSet, b: &HfSet) -> HfSet {
    HfSet::from_members(
        a.members()
            .iter()
            .flat_map(|x| b.members().iter().map(move |y| vpair(x, y))),
    )
}

/// The variant sum `A +̃ B = ({0} ×̃ A) ∪ ({1} ×̃ B)`.
pub fn vsum(a: &HfSet, b: &HfSet) -> HfSet {
    let zero = HfSet::singleton(HfSet::empty());
    let one = HfSet::singleton(HfSet::one());
    vproduct(&zero, a).union(&vproduct(&one, b))
}

/// `Σ̃_{x∈A} B_x = {⟨x;y⟩ | x ∈ A ∧ y ∈ B_x}`.
pub fn famsum(fam: &Family) -> HfSet {
    HfSet::from_members(
        fam.iter()
            .flat_map(|(x, bs)| bs.members().iter().map(move |y| vpair(x, y))),
    )
}

/// `Π̃_{x∈A} B_x = {f ⊆ A × ⋃_x B_x | ∀x∈A. f ‘ {x} ∈ B_x}`.
pub fn famprod(fam: &Family) -> Result<HfSet> {
    let base = HfSet::from_members(fam.iter().flat_map(|(_, b)| b.members().iter().cloned()));
    function_space("variant family product", &fam.keys(), &base, |x| {
        fam.get(x).cloned()
    })
}
