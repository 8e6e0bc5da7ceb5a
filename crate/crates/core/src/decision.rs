//! Committed belief per hypothesis and the decide-or-conflict rule.

use std::fmt;

use crate::combination::CombinationReport;
use crate::error::{Error, Result};
use crate::evidence::{EvidentialInterval, MassFunction};
use crate::frame::Proposition;

pub const DEFAULT_CONFLICT_THRESHOLD: f64 = 0.95;

/// Singleton beliefs closer than this are a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Evidence for, against, and not yet committed either way.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportTriple {
    pub pro: f64,
    pub con: f64,
    pub uncommitted: f64,
}

/// `(Bel(A), Bel(¬A), 1 − Bel(A) − Bel(¬A))` for a proposition strictly
/// between ∅ and the whole frame.
pub fn support_pro_con(m: &MassFunction, a: &Proposition) -> Result<SupportTriple> {
    m.frame().check(a)?;
    if a.is_empty() || a.is_full() {
        return Err(Error::TrivialProposition);
    }
    let pro = m.belief(a)?;
    let con = m.belief(&a.complement())?;
    Ok(SupportTriple {
        pro,
        con,
        uncommitted: (1.0 - pro - con).max(0.0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConflictReason {
    Tie,
    HighConflict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionStatus {
    /// The hypothesis' interval lies strictly above every rival's.
    Decided(String),
    /// Best singleton belief, but some rival remains plausible enough to overtake it.
    Leaning(String),
    Conflicted(ConflictReason),
}

impl DecisionStatus {
    pub fn hypothesis(&self) -> Option<&str> {
        match self {
            DecisionStatus::Decided(h) | DecisionStatus::Leaning(h) => Some(h),
            DecisionStatus::Conflicted(_) => None,
        }
    }

    /// Short label used in traces.
    pub fn label(&self) -> &'static str {
        match self {
            DecisionStatus::Decided(_) => "decided",
            DecisionStatus::Leaning(_) => "leaning",
            DecisionStatus::Conflicted(ConflictReason::Tie) => "tie",
            DecisionStatus::Conflicted(ConflictReason::HighConflict) => "high_conflict",
        }
    }
}

impl fmt::Display for DecisionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hypothesis() {
            Some(h) => write!(f, "{}({h})", self.label()),
            None => write!(f, "conflicted({})", self.label()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub status: DecisionStatus,
    /// Every atom with its singleton interval, highest support first.
    pub ranking: Vec<(String, EvidentialInterval)>,
    pub cumulative_conflict: f64,
}

/// Per-atom singleton intervals in frame order.
pub fn singleton_intervals(m: &MassFunction) -> Vec<(String, EvidentialInterval)> {
    let frame = m.frame();
    (0..frame.len())
        .map(|i| {
            let interval = m
                .interval(&frame.singleton(i))
                .expect("singleton of the mass function's own frame");
            (frame.atoms()[i].clone(), interval)
        })
        .collect()
}

/// Applies the decision rule to a combination result.
///
/// High cumulative conflict wins over everything. Otherwise the atom with
/// the largest singleton belief is chosen, provided it is unique; it is
/// `Decided` when its belief exceeds every other atom's plausibility, and
/// `Leaning` when it does not.
pub fn decide(report: &CombinationReport, conflict_threshold: f64) -> Result<Decision> {
    if !(conflict_threshold > 0.0 && conflict_threshold <= 1.0) {
        return Err(Error::InvalidThreshold(conflict_threshold));
    }
    let intervals = singleton_intervals(&report.result);
    let mut ranking = intervals.clone();
    // stable: equal supports keep frame order
    ranking.sort_by(|a, b| b.1.support().total_cmp(&a.1.support()));

    let status = if report.conflict >= conflict_threshold {
        DecisionStatus::Conflicted(ConflictReason::HighConflict)
    } else {
        let (best, best_iv) = &ranking[0];
        let tied = ranking[1..]
            .iter()
            .any(|(_, iv)| (best_iv.support() - iv.support()).abs() <= TIE_TOLERANCE);
        if tied {
            DecisionStatus::Conflicted(ConflictReason::Tie)
        } else if ranking[1..]
            .iter()
            .all(|(_, iv)| best_iv.support() > iv.plausibility())
        {
            DecisionStatus::Decided(best.clone())
        } else {
            DecisionStatus::Leaning(best.clone())
        }
    };
    Ok(Decision {
        status,
        ranking,
        cumulative_conflict: report.conflict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combination::combine;
    use crate::frame::Frame;

    fn report(m: MassFunction, conflict: f64) -> CombinationReport {
        CombinationReport { result: m, conflict }
    }

    #[test]
    fn pro_con_examples() {
        let f = Frame::new(["lake", "tower", "ridge"]).unwrap();
        let lake = f.proposition(["lake"]).unwrap();
        let m = MassFunction::new(
            &f,
            [(lake, 0.5), (f.proposition(["lake", "tower"]).unwrap(), 0.3), (f.full(), 0.2)],
        )
        .unwrap();
        let t = support_pro_con(&m, &lake).unwrap();
        assert!((t.pro - 0.5).abs() < 1e-12 && t.con == 0.0 && (t.uncommitted - 0.5).abs() < 1e-12);

        let t = support_pro_con(&MassFunction::vacuous(&f), &lake).unwrap();
        assert_eq!((t.pro, t.con, t.uncommitted), (0.0, 0.0, 1.0));

        let b = MassFunction::bayesian(&f, [("lake", 0.5), ("tower", 0.3), ("ridge", 0.2)]).unwrap();
        let t = support_pro_con(&b, &lake).unwrap();
        assert!((t.pro - 0.5).abs() < 1e-12 && (t.con - 0.5).abs() < 1e-12 && t.uncommitted < 1e-12);

        assert!(matches!(support_pro_con(&m, &f.empty()), Err(Error::TrivialProposition)));
        assert!(matches!(support_pro_con(&m, &f.full()), Err(Error::TrivialProposition)));
        let g = Frame::new(["lake"]).unwrap();
        assert!(matches!(support_pro_con(&m, &g.full()), Err(Error::FrameMismatch)));
    }

    #[test]
    fn leaning_under_conflict() {
        let f = Frame::new(["lake", "tower"]).unwrap();
        let ss = |a: &str, s| MassFunction::simple_support(&f, f.proposition([a]).unwrap(), s).unwrap();
        let r = combine(&ss("lake", 0.7), &ss("tower", 0.6)).unwrap();
        let d = decide(&r, DEFAULT_CONFLICT_THRESHOLD).unwrap();
        assert_eq!(d.status, DecisionStatus::Leaning("lake".into()));
        assert!((d.cumulative_conflict - 0.42).abs() < 1e-12);
        assert_eq!(d.ranking[0].0, "lake");
        assert!((d.ranking[0].1.support() - 0.482759).abs() < 1e-6);
        assert!((d.ranking[1].1.plausibility() - 0.517241).abs() < 1e-6);

        // the same report is flagged once the threshold drops below its conflict
        let d = decide(&r, 0.4).unwrap();
        assert_eq!(d.status, DecisionStatus::Conflicted(ConflictReason::HighConflict));
    }

    #[test]
    fn decided_by_dominance() {
        let f = Frame::new(["lake", "tower"]).unwrap();
        let m = MassFunction::new(&f, [(f.proposition(["lake"]).unwrap(), 0.9), (f.full(), 0.1)]).unwrap();
        let d = decide(&report(m, 0.0), DEFAULT_CONFLICT_THRESHOLD).unwrap();
        assert_eq!(d.status, DecisionStatus::Decided("lake".into()));
    }

    #[test]
    fn vacuous_is_a_tie() {
        let f = Frame::new(["lake", "tower", "ridge"]).unwrap();
        let d = decide(&report(MassFunction::vacuous(&f), 0.0), DEFAULT_CONFLICT_THRESHOLD).unwrap();
        assert_eq!(d.status, DecisionStatus::Conflicted(ConflictReason::Tie));
        assert_eq!(d.ranking.len(), 3);
        // ranking keeps frame order among equals
        let names: Vec<_> = d.ranking.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["lake", "tower", "ridge"]);
    }

    #[test]
    fn single_atom_frame_is_decided() {
        let f = Frame::new(["lake"]).unwrap();
        let d = decide(&report(MassFunction::vacuous(&f), 0.0), 0.95).unwrap();
        assert_eq!(d.status, DecisionStatus::Decided("lake".into()));
    }

    #[test]
    fn threshold_validation() {
        let f = Frame::new(["lake", "tower"]).unwrap();
        let r = report(MassFunction::vacuous(&f), 0.0);
        assert!(matches!(decide(&r, 0.0), Err(Error::InvalidThreshold(_))));
        assert!(matches!(decide(&r, 1.5), Err(Error::InvalidThreshold(_))));
        assert!(decide(&r, 1.0).is_ok());
    }

    #[test]
    fn status_labels() {
        assert_eq!(DecisionStatus::Decided("lake".into()).to_string(), "decided(lake)");
        assert_eq!(
            DecisionStatus::Conflicted(ConflictReason::HighConflict).to_string(),
            "conflicted(high_conflict)"
        );
    }
}
