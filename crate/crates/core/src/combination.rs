//! Dempster's rule of combination.
//!
//! Two bodies of evidence on the same frame are combined by multiplying
//! every pair of focal masses and assigning the product to the
//! intersection. Products landing on ∅ are the conflict κ; the rest is
//! rescaled by `1 / (1 − κ)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::evidence::MassFunction;

/// Combined masses below this are discarded after normalization.
pub const PRUNE_BELOW: f64 = 1e-15;

/// κ within this distance of 1 counts as total conflict.
pub const TOTAL_CONFLICT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct CombinationReport {
    pub result: MassFunction,
    /// Mass that fell on ∅ before normalization. For a fold this is the
    /// cumulative `1 − Π(1 − κᵢ)`.
    pub conflict: f64,
}

/// Order-independent sum: the same multiset of terms always yields the same bits.
fn canonical_sum(terms: &mut [f64]) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().fold(0.0, |acc, t| acc + t)
}

/// Pairwise products grouped by intersection. Key 0 collects the conflict.
fn intersect_products(m1: &MassFunction, m2: &MassFunction) -> Result<BTreeMap<u64, Vec<f64>>> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut products: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for (&b, &x) in m1.focal_bits() {
        for (&c, &y) in m2.focal_bits() {
            products.entry(b & c).or_default().push(x * y);
        }
    }
    Ok(products)
}

/// κ = Σ m1(B)·m2(C) over pairs with B ∩ C = ∅.
pub fn conflict_mass(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    let mut products = intersect_products(m1, m2)?;
    Ok(products
        .get_mut(&0)
        .map(|terms| canonical_sum(terms).min(1.0))
        .unwrap_or(0.0))
}

/// The orthogonal sum `m1 ⊕ m2`. Commutative bit-for-bit.
pub fn combine(m1: &MassFunction, m2: &MassFunction) -> Result<CombinationReport> {
    combine_at(m1, m2, 1)
}

fn combine_at(m1: &MassFunction, m2: &MassFunction, index: usize) -> Result<CombinationReport> {
    let mut products = intersect_products(m1, m2)?;
    let conflict = products
        .remove(&0)
        .map(|mut terms| canonical_sum(&mut terms).min(1.0))
        .unwrap_or(0.0);
    if conflict >= 1.0 - TOTAL_CONFLICT_TOLERANCE {
        return Err(Error::TotalConflict { index });
    }
    let scale = 1.0 - conflict;
    let focals: BTreeMap<u64, f64> = products
        .into_iter()
        .map(|(bits, mut terms)| (bits, canonical_sum(&mut terms) / scale))
        .filter(|&(_, m)| m >= PRUNE_BELOW)
        .collect();
    Ok(CombinationReport {
        result: MassFunction::proposition_unchecked(m1.frame(), focals),
        conflict,
    })
}

/// Left fold of [`combine`] over `masses`. On total conflict the error
/// carries the index of the input whose addition triggered it.
pub fn combine_all<'a, I>(masses: I) -> Result<CombinationReport>
where
    I: IntoIterator<Item = &'a MassFunction>,
{
    let mut iter = masses.into_iter();
    let first = iter.next().ok_or(Error::EmptyEvidence)?;
    let mut acc = first.clone();
    let mut retained = 1.0;
    for (i, m) in iter.enumerate() {
        let step = combine_at(&acc, m, i + 1)?;
        retained *= 1.0 - step.conflict;
        acc = step.result;
    }
    Ok(CombinationReport {
        result: acc,
        conflict: 1.0 - retained,
    })
}

/// Weakens `m` by `factor`: every non-frame focal is scaled and the lost
/// mass moves to the whole frame. `factor = 0` gives the vacuous mass.
pub fn discount(m: &MassFunction, factor: f64) -> Result<MassFunction> {
    if !(0.0..=1.0).contains(&factor) {
        return Err(Error::FactorOutOfRange(factor));
    }
    if factor == 1.0 {
        return Ok(m.clone());
    }
    let full = m.frame().full().bits();
    let mut focals: BTreeMap<u64, f64> = m
        .focal_bits()
        .iter()
        .filter(|(&bits, _)| bits != full)
        .map(|(&bits, &mass)| (bits, factor * mass))
        .filter(|&(_, mass)| mass > 0.0)
        .collect();
    let on_frame = m.focal_bits().get(&full).copied().unwrap_or(0.0);
    let kept = 1.0 - factor * (1.0 - on_frame);
    if kept > 0.0 {
        focals.insert(full, kept);
    }
    Ok(MassFunction::proposition_unchecked(m.frame(), focals))
}
