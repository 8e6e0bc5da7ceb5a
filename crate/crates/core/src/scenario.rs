//! Replay of time-stamped sensor reports.
//!
//! Each report is a simple support for its focus. At every step the
//! reports inside the sliding window are discounted by age, fused with the
//! orthogonal sum and run through the decision rule, giving one
//! [`TraceRow`] per step.

use serde::Deserialize;

use crate::combination::{combine_all, discount, CombinationReport};
use crate::decision::{decide, singleton_intervals, ConflictReason, DecisionStatus, DEFAULT_CONFLICT_THRESHOLD};
use crate::error::{Error, Result};
use crate::evidence::{EvidentialInterval, MassFunction};
use crate::frame::{Frame, Proposition};

/// Slack for comparing step times against report times.
const TIME_EPSILON: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SensorReport {
    pub sensor_id: String,
    pub time: f64,
    pub focus: Proposition,
    pub degree: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioSettings {
    /// Seconds of history fused at each step.
    pub window: f64,
    /// Seconds between steps.
    pub step: f64,
    /// Per-second reliability decay applied to aging reports; 1 disables it.
    pub discount_rate: f64,
    pub conflict_threshold: f64,
}

impl Default for ScenarioSettings {
    fn default() -> Self {
        ScenarioSettings {
            window: 10.0,
            step: 1.0,
            discount_rate: 1.0,
            conflict_threshold: DEFAULT_CONFLICT_THRESHOLD,
        }
    }
}

impl ScenarioSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.window.is_finite() && self.window > 0.0) {
            return Err(Error::InvalidWindow(self.window));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidStep(self.step));
        }
        if !(0.0..=1.0).contains(&self.discount_rate) {
            return Err(Error::InvalidDiscountRate(self.discount_rate));
        }
        if !(self.conflict_threshold > 0.0 && self.conflict_threshold <= 1.0) {
            return Err(Error::InvalidThreshold(self.conflict_threshold));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    frame: Frame,
    reports: Vec<SensorReport>,
    settings: ScenarioSettings,
}

impl Scenario {
    /// `reports` must be in non-decreasing time order. Reports sharing a
    /// timestamp are fused in sensor-id order.
    pub fn new(frame: Frame, mut reports: Vec<SensorReport>, settings: ScenarioSettings) -> Result<Self> {
        settings.validate()?;
        for (i, r) in reports.iter().enumerate() {
            frame.check(&r.focus)?;
            if !(r.time.is_finite() && r.time >= 0.0) {
                return Err(Error::InvalidTime(r.time));
            }
            if r.focus.is_empty() {
                return Err(Error::EmptyFocus);
            }
            if !(0.0..=1.0).contains(&r.degree) {
                return Err(Error::DegreeOutOfRange(r.degree));
            }
            if i > 0 && r.time < reports[i - 1].time {
                return Err(Error::UnsortedReports { index: i });
            }
        }
        reports.sort_by(|a, b| a.time.total_cmp(&b.time).then_with(|| a.sensor_id.cmp(&b.sensor_id)));
        Ok(Scenario {
            frame,
            reports,
            settings,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Reports in fold order.
    pub fn reports(&self) -> &[SensorReport] {
        &self.reports
    }

    pub fn settings(&self) -> ScenarioSettings {
        self.settings
    }

    pub fn with_settings(mut self, settings: ScenarioSettings) -> Result<Self> {
        settings.validate()?;
        self.settings = settings;
        Ok(self)
    }

    /// Undiscounted simple supports for every report, in fold order.
    pub fn evidence(&self) -> Vec<MassFunction> {
        self.reports
            .iter()
            .map(|r| report_mass(&self.frame, r, 1.0))
            .collect()
    }

    /// Step times: from the first report to the last, `step` apart, always
    /// ending exactly on the last report time.
    pub fn step_times(&self) -> Vec<f64> {
        let (Some(first), Some(last)) = (self.reports.first(), self.reports.last()) else {
            return Vec::new();
        };
        let (start, end) = (first.time, last.time);
        let mut times = Vec::new();
        for k in 0u64.. {
            let t = start + k as f64 * self.settings.step;
            if t >= end - TIME_EPSILON {
                times.push(end);
                break;
            }
            times.push(t);
        }
        times
    }

    /// Reports with `t − window < time ≤ t`.
    pub fn in_window(&self, t: f64) -> impl Iterator<Item = &SensorReport> {
        let lower = t - self.settings.window + TIME_EPSILON;
        let upper = t + TIME_EPSILON;
        self.reports
            .iter()
            .filter(move |r| r.time > lower && r.time <= upper)
    }
}

fn report_mass(frame: &Frame, report: &SensorReport, factor: f64) -> MassFunction {
    let m = MassFunction::simple_support(frame, report.focus, report.degree)
        .expect("reports are validated on construction");
    discount(&m, factor).expect("discount factor in [0, 1]")
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub time: f64,
    /// Singleton interval per atom, in frame order.
    pub intervals: Vec<(String, EvidentialInterval)>,
    pub cumulative_conflict: f64,
    pub status: DecisionStatus,
    /// Number of reports fused at this step.
    pub fused: usize,
}

/// Fuses the in-window evidence at time `t`. `Ok(None)` when the window is empty.
pub fn fuse_at(s: &Scenario, t: f64) -> Result<Option<CombinationReport>> {
    let rate = s.settings.discount_rate;
    let masses: Vec<MassFunction> = s
        .in_window(t)
        .map(|r| {
            let age = (t - r.time).max(0.0);
            report_mass(&s.frame, r, rate.powf(age))
        })
        .collect();
    if masses.is_empty() {
        return Ok(None);
    }
    combine_all(&masses).map(Some)
}

/// Replays the scenario. Total conflict at a step is recorded in that
/// row rather than aborting the run.
pub fn run_scenario(s: &Scenario) -> Result<Vec<TraceRow>> {
    let vacuous = singleton_intervals(&MassFunction::vacuous(&s.frame));
    let mut rows = Vec::new();
    for t in s.step_times() {
        let fused = s.in_window(t).count();
        let row = match fuse_at(s, t) {
            Ok(Some(report)) => {
                let decision = decide(&report, s.settings.conflict_threshold)?;
                TraceRow {
                    time: t,
                    intervals: singleton_intervals(&report.result),
                    cumulative_conflict: report.conflict,
                    status: decision.status,
                    fused,
                }
            }
            Ok(None) => TraceRow {
                time: t,
                intervals: vacuous.clone(),
                cumulative_conflict: 0.0,
                status: DecisionStatus::Conflicted(ConflictReason::Tie),
                fused,
            },
            Err(Error::TotalConflict { .. }) => TraceRow {
                time: t,
                intervals: vacuous.clone(),
                cumulative_conflict: 1.0,
                status: DecisionStatus::Conflicted(ConflictReason::HighConflict),
                fused,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    frame: Vec<String>,
    window: Option<f64>,
    step: Option<f64>,
    discount_rate: Option<f64>,
    conflict_threshold: Option<f64>,
    #[serde(default)]
    reports: Vec<RawReport>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReport {
    sensor: String,
    t: f64,
    focus: Vec<String>,
    degree: f64,
}

/// Parses and validates a scenario document.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text)?;
    let frame = Frame::new(raw.frame)?;
    let defaults = ScenarioSettings::default();
    let settings = ScenarioSettings {
        window: raw.window.unwrap_or(defaults.window),
        step: raw.step.unwrap_or(defaults.step),
        discount_rate: raw.discount_rate.unwrap_or(defaults.discount_rate),
        conflict_threshold: raw.conflict_threshold.unwrap_or(defaults.conflict_threshold),
    };
    let reports = raw
        .reports
        .into_iter()
        .map(|r| {
            Ok(SensorReport {
                focus: frame.proposition(&r.focus)?,
                sensor_id: r.sensor,
                time: r.t,
                degree: r.degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Scenario::new(frame, reports, settings)
}
