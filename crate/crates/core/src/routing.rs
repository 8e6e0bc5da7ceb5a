//! Belief-driven routing of queries across heterogeneous data sources.
//!
//! Each source advertises a capability weight per attribute. The weight is
//! a simple support for "this attribute can be answered here"; absent
//! attributes are certainly unanswerable. Query answerability composes
//! those supports over the query tree assuming independent attributes.
//! On top of that sit polling (shortlisting sources), decomposition
//! (splitting a query across sources) and views (merging same-schema
//! sources).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::EvidentialInterval;
use crate::frame::QueryExpr;

pub const DEFAULT_POLL_THRESHOLD: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceDescriptor {
    pub id: String,
    /// Lower is preferred.
    pub priority: i64,
    /// Attribute name to capability weight in `[0, 1]`.
    pub schema: BTreeMap<String, f64>,
}

impl SourceDescriptor {
    pub fn new<I, S>(id: impl Into<String>, priority: i64, schema: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let src = SourceDescriptor {
            id: id.into(),
            priority,
            schema: schema.into_iter().map(|(a, w)| (a.into(), w)).collect(),
        };
        src.validate()?;
        Ok(src)
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::EmptySourceId);
        }
        for (attribute, &weight) in &self.schema {
            if !(0.0..=1.0).contains(&weight) {
                return Err(Error::WeightOutOfRange {
                    attribute: attribute.clone(),
                    weight,
                });
            }
        }
        Ok(())
    }

    pub fn weight(&self, attribute: &str) -> Option<f64> {
        self.schema.get(attribute).copied()
    }

    /// Every attribute of `query` is present with a positive weight.
    fn fully_answers(&self, query: &QueryExpr) -> bool {
        query
            .attributes()
            .iter()
            .all(|a| self.weight(a).is_some_and(|w| w > 0.0))
    }
}

/// A set of sources with unique ids. Registration touches nothing else, so
/// sources can be added while routing runs on an earlier snapshot.
#[derive(Clone, Debug, Default)]
pub struct SourceRegistry {
    sources: Vec<SourceDescriptor>,
}

impl SourceRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, src: SourceDescriptor) -> Result<()> {
        src.validate()?;
        if self.get(&src.id).is_some() {
            return Err(Error::DuplicateSource(src.id));
        }
        self.sources.push(src);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&SourceDescriptor> {
        self.sources.iter().find(|s| s.id == id)
    }

    pub fn sources(&self) -> &[SourceDescriptor] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }
}

impl TryFrom<Vec<SourceDescriptor>> for SourceRegistry {
    type Error = Error;

    fn try_from(sources: Vec<SourceDescriptor>) -> Result<Self> {
        let mut registry = SourceRegistry::new();
        for src in sources {
            registry.register(src)?;
        }
        Ok(registry)
    }
}

/// Interval for "`query` can be processed against `src`".
pub fn answerability(query: &QueryExpr, src: &SourceDescriptor) -> Result<EvidentialInterval> {
    query.validate()?;
    let (support, plausibility) = answer(query, src)?;
    EvidentialInterval::new(support, plausibility)
}

fn answer(query: &QueryExpr, src: &SourceDescriptor) -> Result<(f64, f64)> {
    match query {
        QueryExpr::Atom(name) => Ok(match src.weight(name) {
            Some(w) => (w, 1.0),
            None => (0.0, 0.0),
        }),
        QueryExpr::And(children) => children.iter().try_fold((1.0, 1.0), |(s, p), c| {
            let (cs, cp) = answer(c, src)?;
            Ok((s * cs, p * cp))
        }),
        QueryExpr::Or(children) => {
            let (miss_s, miss_p) = children.iter().try_fold((1.0, 1.0), |(s, p), c| {
                let (cs, cp) = answer(c, src)?;
                Ok::<_, Error>((s * (1.0 - cs), p * (1.0 - cp)))
            })?;
            Ok((1.0 - miss_s, 1.0 - miss_p))
        }
        QueryExpr::Implies(..) => Err(Error::ImpliesNotRoutable),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolledSource {
    pub id: String,
    pub priority: i64,
    pub interval: EvidentialInterval,
}

/// Keeps the sources whose answerability plausibility reaches `threshold`,
/// ordered by support (descending), then priority, then id.
pub fn poll(query: &QueryExpr, sources: &[SourceDescriptor], threshold: f64) -> Result<Vec<PolledSource>> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let mut shortlist = Vec::new();
    for src in sources {
        let interval = answerability(query, src)?;
        if interval.plausibility() >= threshold {
            shortlist.push(PolledSource {
                id: src.id.clone(),
                priority: src.priority,
                interval,
            });
        }
    }
    shortlist.sort_by(|a, b| {
        b.interval
            .support()
            .total_cmp(&a.interval.support())
            .then(a.priority.cmp(&b.priority))
            .then_with(|| a.id.cmp(&b.id))
    });
    Ok(shortlist)
}

/// The descriptors of a poll result, in shortlist order.
pub fn shortlisted<'a>(polled: &[PolledSource], sources: &'a [SourceDescriptor]) -> Vec<&'a SourceDescriptor> {
    polled
        .iter()
        .filter_map(|p| sources.iter().find(|s| s.id == p.id))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub fragment: QueryExpr,
    pub source: String,
    pub support: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoutePlan {
    pub assignments: Vec<Assignment>,
    /// Product of the assigned fragments' supports; 0 when nothing is assigned.
    pub total_support: f64,
    /// Atoms no shortlisted source can answer.
    pub unassigned: Vec<QueryExpr>,
}

/// Splits `query` into maximal sub-trees that a single source answers in
/// full, giving each to the source with the highest support for it.
pub fn decompose<S>(query: &QueryExpr, shortlist: &[S]) -> Result<RoutePlan>
where
    S: std::borrow::Borrow<SourceDescriptor>,
{
    if shortlist.is_empty() {
        return Err(Error::EmptyShortlist);
    }
    query.validate()?;
    if contains_implies(query) {
        return Err(Error::ImpliesNotRoutable);
    }
    let sources: Vec<&SourceDescriptor> = shortlist.iter().map(|s| s.borrow()).collect();
    let mut plan = RoutePlan {
        assignments: Vec::new(),
        total_support: 0.0,
        unassigned: Vec::new(),
    };
    assign(query, &sources, &mut plan)?;
    if !plan.assignments.is_empty() {
        plan.total_support = plan.assignments.iter().map(|a| a.support).product();
    }
    Ok(plan)
}

fn contains_implies(query: &QueryExpr) -> bool {
    match query {
        QueryExpr::Atom(_) => false,
        QueryExpr::And(children) | QueryExpr::Or(children) => children.iter().any(contains_implies),
        QueryExpr::Implies(..) => true,
    }
}

fn assign(query: &QueryExpr, sources: &[&SourceDescriptor], plan: &mut RoutePlan) -> Result<()> {
    let mut best: Option<(f64, &SourceDescriptor)> = None;
    for &src in sources.iter().filter(|s| s.fully_answers(query)) {
        let support = answerability(query, src)?.support();
        let better = match best {
            None => true,
            Some((s, b)) => support
                .total_cmp(&s)
                .then(b.priority.cmp(&src.priority))
                .then_with(|| b.id.cmp(&src.id))
                .is_gt(),
        };
        if better {
            best = Some((support, src));
        }
    }
    if let Some((support, src)) = best {
        plan.assignments.push(Assignment {
            fragment: query.clone(),
            source: src.id.clone(),
            support,
        });
        return Ok(());
    }
    match query {
        QueryExpr::Atom(_) => plan.unassigned.push(query.clone()),
        QueryExpr::And(children) | QueryExpr::Or(children) => {
            for c in children {
                assign(c, sources, plan)?;
            }
        }
        QueryExpr::Implies(..) => return Err(Error::ImpliesNotRoutable),
    }
    Ok(())
}

/// Merges same-schema sources into one virtual source: per-attribute
/// weight is the best part's, priority the most preferred part's.
pub fn make_view(name: impl Into<String>, parts: &[SourceDescriptor]) -> Result<SourceDescriptor> {
    let name = name.into();
    if name.is_empty() {
        return Err(Error::EmptySourceId);
    }
    let (first, rest) = match parts {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => return Err(Error::TooFewParts),
    };
    let attrs: BTreeSet<&String> = first.schema.keys().collect();
    let mut differing = BTreeSet::new();
    for part in rest {
        let other: BTreeSet<&String> = part.schema.keys().collect();
        differing.extend(attrs.symmetric_difference(&other).map(|a| a.to_string()));
    }
    if !differing.is_empty() {
        return Err(Error::SchemaMismatch(differing.into_iter().collect()));
    }
    let schema: BTreeMap<String, f64> = first
        .schema
        .keys()
        .map(|a| {
            let w = parts.iter().map(|p| p.schema[a]).fold(0.0, f64::max);
            (a.clone(), w)
        })
        .collect();
    let priority = parts.iter().map(|p| p.priority).min().unwrap_or_default();
    SourceDescriptor::new(name, priority, schema)
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawQuery {
    op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<RawQuery>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl TryFrom<RawQuery> for QueryExpr {
    type Error = Error;

    fn try_from(raw: RawQuery) -> Result<Self> {
        let malformed = |msg: &str| Err(Error::MalformedQuery(msg.to_string()));
        let expr = match raw.op.as_str() {
            "atom" => {
                if !raw.children.is_empty() {
                    return malformed("atom nodes take no children");
                }
                match raw.name {
                    Some(name) => QueryExpr::Atom(name),
                    None => return malformed("atom node without a name"),
                }
            }
            "and" | "or" | "implies" => {
                if raw.name.is_some() {
                    return malformed("only atom nodes carry a name");
                }
                let children = raw
                    .children
                    .into_iter()
                    .map(QueryExpr::try_from)
                    .collect::<Result<Vec<_>>>()?;
                match raw.op.as_str() {
                    "and" => QueryExpr::And(children),
                    "or" => QueryExpr::Or(children),
                    _ => {
                        let [lhs, rhs]: [QueryExpr; 2] = children
                            .try_into()
                            .map_err(|_| Error::MalformedQuery("implies takes exactly two children".into()))?;
                        QueryExpr::implies(lhs, rhs)
                    }
                }
            }
            other => return malformed(&format!("unknown op `{other}`")),
        };
        expr.validate()?;
        Ok(expr)
    }
}

impl From<&QueryExpr> for RawQuery {
    fn from(expr: &QueryExpr) -> Self {
        let node = |op: &str, children: Vec<RawQuery>| RawQuery {
            op: op.to_string(),
            children,
            name: None,
        };
        match expr {
            QueryExpr::Atom(name) => RawQuery {
                op: "atom".into(),
                children: Vec::new(),
                name: Some(name.clone()),
            },
            QueryExpr::And(c) => node("and", c.iter().map(RawQuery::from).collect()),
            QueryExpr::Or(c) => node("or", c.iter().map(RawQuery::from).collect()),
            QueryExpr::Implies(l, r) => node("implies", vec![l.as_ref().into(), r.as_ref().into()]),
        }
    }
}

/// Parses the query file format: `{"op": "and"|"or"|"atom", "children": [...], "name": "..."}`.
pub fn parse_query(text: &str) -> Result<QueryExpr> {
    let raw: RawQuery = serde_json::from_str(text)?;
    QueryExpr::try_from(raw)
}

pub fn query_to_json(expr: &QueryExpr) -> String {
    serde_json::to_string(&RawQuery::from(expr)).expect("query trees always serialize")
}

/// Parses the sources file format: a list of `{"id", "priority", "schema"}`
/// objects with unique ids.
pub fn parse_sources(text: &str) -> Result<Vec<SourceDescriptor>> {
    let sources: Vec<SourceDescriptor> = serde_json::from_str(text)?;
    let registry = SourceRegistry::try_from(sources)?;
    Ok(registry.sources)
}
