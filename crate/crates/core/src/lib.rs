//! Evidential reasoning over finite frames of discernment.
//!
//! - [`frame`]: frames, propositions as bit sets, and logical-to-set translation
//! - [`evidence`]: mass functions, simple supports, belief/plausibility intervals
//! - [`combination`]: the orthogonal sum, conflict, folding and discounting
//! - [`decision`]: pro/con support and the decide-or-conflict rule
//! - [`routing`]: answerability of queries against data sources, polling,
//!   decomposition and views
//! - [`scenario`] and [`trace`]: windowed replay of sensor reports

pub mod combination;
pub mod decision;
pub mod error;
pub mod evidence;
pub mod frame;
pub mod routing;
pub mod scenario;
pub mod trace;

pub use combination::{combine, combine_all, conflict_mass, discount, CombinationReport};
pub use decision::{decide, support_pro_con, ConflictReason, Decision, DecisionStatus, SupportTriple};
pub use error::{Error, Result};
pub use evidence::{load_masses, EvidentialInterval, MassFunction};
pub use frame::{translate_logical, Frame, FrameId, Proposition, QueryExpr};
pub use routing::{answerability, decompose, make_view, poll, RoutePlan, SourceDescriptor, SourceRegistry};
pub use scenario::{load_scenario, run_scenario, Scenario, ScenarioSettings, SensorReport, TraceRow};
pub use trace::{emit_trace, TraceFormat};
