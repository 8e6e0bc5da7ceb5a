//! Mass functions and the evidential intervals they induce.
//!
//! A [`MassFunction`] spreads one unit of belief over non-empty propositions
//! of a frame. Focal propositions may overlap. The interval for a
//! proposition `A` runs from the belief in `A` (mass committed to subsets
//! of `A`) to its plausibility (mass not committed against `A`); the width
//! is the ignorance that remains about `A`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::frame::{Frame, Proposition};

/// Allowed deviation of the total mass from 1 at construction.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `[support, plausibility]` with `0 <= support <= plausibility <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvidentialInterval {
    support: f64,
    plausibility: f64,
}

impl EvidentialInterval {
    pub fn new(support: f64, plausibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&support)
            || !(0.0..=1.0).contains(&plausibility)
            || support > plausibility
        {
            return Err(Error::InvalidInterval {
                support,
                plausibility,
            });
        }
        Ok(EvidentialInterval {
            support,
            plausibility,
        })
    }

    /// `[0, 1]`: nothing is known.
    pub fn unknown() -> Self {
        EvidentialInterval {
            support: 0.0,
            plausibility: 1.0,
        }
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn plausibility(&self) -> f64 {
        self.plausibility
    }

    /// Residual ignorance, the interval width.
    pub fn ignorance(&self) -> f64 {
        self.plausibility - self.support
    }

    pub fn is_point(&self) -> bool {
        self.support == self.plausibility
    }
}

impl fmt::Display for EvidentialInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6}, {:.6}]", self.support, self.plausibility)
    }
}

/// A normalized basic probability assignment over one frame.
#[derive(Clone, Debug)]
pub struct MassFunction {
    frame: Frame,
    // keyed by proposition bits; never contains 0 or non-positive masses
    focals: BTreeMap<u64, f64>,
}

impl MassFunction {
    /// Validates and builds a mass function. Zero entries are dropped and
    /// repeated propositions are summed.
    pub fn new<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Proposition, f64)>,
    {
        let mut focals = BTreeMap::new();
        for (p, mass) in entries {
            frame.check(&p)?;
            if mass < 0.0 {
                return Err(Error::NegativeMass(mass));
            }
            if mass == 0.0 {
                continue;
            }
            if p.is_empty() {
                return Err(Error::MassOnEmptySet);
            }
            *focals.entry(p.bits()).or_insert(0.0) += mass;
        }
        let total: f64 = focals.values().sum();
        // written negated so that a NaN total is rejected too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !((total - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
            return Err(Error::NotNormalized(total));
        }
        Ok(MassFunction {
            frame: frame.clone(),
            focals,
        })
    }

    /// Skips validation; callers guarantee positive masses on non-empty
    /// propositions that sum to 1.
    pub(crate) fn proposition_unchecked(frame: &Frame, focals: BTreeMap<u64, f64>) -> Self {
        debug_assert!(!focals.contains_key(&0));
        debug_assert!(focals.values().all(|&m| m > 0.0));
        debug_assert!((focals.values().sum::<f64>() - 1.0).abs() <= NORMALIZATION_TOLERANCE);
        MassFunction {
            frame: frame.clone(),
            focals,
        }
    }

    /// All mass on the whole frame: total ignorance.
    pub fn vacuous(frame: &Frame) -> Self {
        MassFunction {
            frame: frame.clone(),
            focals: BTreeMap::from([(frame.full().bits(), 1.0)]),
        }
    }

    /// Evidence supporting `focus` to `degree`, with the remainder left on
    /// the whole frame.
    pub fn simple_support(frame: &Frame, focus: Proposition, degree: f64) -> Result<Self> {
        frame.check(&focus)?;
        if focus.is_empty() {
            return Err(Error::EmptyFocus);
        }
        if !(0.0..=1.0).contains(&degree) {
            return Err(Error::DegreeOutOfRange(degree));
        }
        MassFunction::new(frame, [(focus, degree), (frame.full(), 1.0 - degree)])
    }

    /// A Bayesian mass: probabilities on singletons only.
    pub fn bayesian<I, S>(frame: &Frame, probs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut seen = vec![None; frame.len()];
        for (name, p) in probs {
            let name = name.as_ref();
            let i = frame
                .atom_index(name)
                .ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
            if seen[i].replace(p).is_some() {
                return Err(Error::DuplicateAtom(name.to_string()));
            }
        }
        let mut entries = Vec::with_capacity(frame.len());
        for (i, p) in seen.into_iter().enumerate() {
            let p = p.ok_or_else(|| Error::MissingAtom(frame.atoms()[i].clone()))?;
            entries.push((frame.singleton(i), p));
        }
        MassFunction::new(frame, entries)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal propositions and their masses, ordered by bit mask.
    pub fn focals(&self) -> impl Iterator<Item = (Proposition, f64)> + '_ {
        self.focals
            .iter()
            .map(|(&bits, &m)| (self.frame.proposition_unchecked(bits), m))
    }

    pub(crate) fn focal_bits(&self) -> &BTreeMap<u64, f64> {
        &self.focals
    }

    pub fn focal_count(&self) -> usize {
        self.focals.len()
    }

    /// Mass assigned directly to `p` (zero if `p` is not focal).
    pub fn mass(&self, p: &Proposition) -> Result<f64> {
        self.frame.check(p)?;
        Ok(self.focals.get(&p.bits()).copied().unwrap_or(0.0))
    }

    pub fn is_vacuous(&self) -> bool {
        self.focals.len() == 1 && self.focals.contains_key(&self.frame.full().bits())
    }

    /// Every focal is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.focals.keys().all(|b| b.count_ones() == 1)
    }

    /// Bel(A): total mass of focals contained in `a`.
    pub fn belief(&self, a: &Proposition) -> Result<f64> {
        self.frame.check(a)?;
        if a.is_full() {
            return Ok(1.0);
        }
        let a = a.bits();
        // folding from +0.0 because an empty f64 sum is -0.0
        let sum: f64 = self
            .focals
            .iter()
            .filter(|(&b, _)| b & !a == 0)
            .fold(0.0, |acc, (_, &m)| acc + m);
        Ok(sum.min(1.0))
    }

    /// Pl(A): total mass of focals that intersect `a`; equals 1 − Bel(¬A).
    pub fn plausibility(&self, a: &Proposition) -> Result<f64> {
        self.frame.check(a)?;
        if a.is_full() {
            return Ok(1.0);
        }
        let a = a.bits();
        let sum: f64 = self
            .focals
            .iter()
            .filter(|(&b, _)| b & a != 0)
            .fold(0.0, |acc, (_, &m)| acc + m);
        Ok(sum.min(1.0))
    }

    pub fn interval(&self, a: &Proposition) -> Result<EvidentialInterval> {
        EvidentialInterval::new(self.belief(a)?, self.plausibility(a)?)
    }

    /// Same frame and the same focal set with masses within `tol`.
    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        if self.frame != other.frame {
            return false;
        }
        let keys = self.focals.keys().chain(other.focals.keys());
        keys.into_iter().all(|k| {
            let a = self.focals.get(k).copied().unwrap_or(0.0);
            let b = other.focals.get(k).copied().unwrap_or(0.0);
            (a - b).abs() <= tol
        })
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, m)) in self.focals().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let name = self.frame.describe(&p).map_err(|_| fmt::Error)?;
            write!(f, "{name}: {m:.6}")?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMassFile {
    frame: Vec<String>,
    masses: Vec<Vec<RawFocal>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFocal {
    focus: Vec<String>,
    mass: f64,
}

/// Parses a list of mass functions sharing one frame:
/// `{"frame": [atoms], "masses": [[{"focus": [atoms], "mass": x}, ...], ...]}`.
pub fn load_masses(text: &str) -> Result<(Frame, Vec<MassFunction>)> {
    let raw: RawMassFile = serde_json::from_str(text)?;
    let frame = Frame::new(raw.frame)?;
    let masses = raw
        .masses
        .into_iter()
        .map(|entries| {
            let entries = entries
                .into_iter()
                .map(|e| Ok((frame.proposition(&e.focus)?, e.mass)))
                .collect::<Result<Vec<_>>>()?;
            MassFunction::new(&frame, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((frame, masses))
}
