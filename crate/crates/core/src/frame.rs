//! Frames of discernment and the set algebra over their propositions.
//!
//! A [`Frame`] is an ordered list of mutually exclusive atoms. A
//! [`Proposition`] is a subset of one frame, stored as a 64-bit mask whose
//! bit `i` is the frame's `i`-th atom. Logical connectives over query
//! attributes are mapped onto intersection, union and complement by
//! [`translate_logical`].

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 64;

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a frame. Two frames built from the same atom list are still
/// different frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameId(u64);

#[derive(Debug)]
struct FrameInner {
    id: FrameId,
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered, immutable set of atomic hypotheses. Cloning is cheap and
/// preserves identity.
#[derive(Clone, Debug)]
pub struct Frame(Arc<FrameInner>);

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Frame {}

impl Frame {
    pub fn new<I, S>(atom_names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atom_names.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms(atoms.len()));
        }
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, name) in atoms.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyAtomName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateAtom(name.clone()));
            }
        }
        let id = FrameId(NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed));
        Ok(Frame(Arc::new(FrameInner { id, atoms, index })))
    }

    pub fn id(&self) -> FrameId {
        self.0.id
    }

    pub fn atoms(&self) -> &[String] {
        &self.0.atoms
    }

    pub fn len(&self) -> usize {
        self.0.atoms.len()
    }

    /// Always false; frames have at least one atom.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    fn full_mask(&self) -> u64 {
        mask_for_width(self.len())
    }

    /// The proposition made of the named atoms. An empty list gives ∅.
    pub fn proposition<I, S>(&self, atoms: I) -> Result<Proposition>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for name in atoms {
            let name = name.as_ref();
            let i = self
                .atom_index(name)
                .ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(self.proposition_unchecked(bits))
    }

    pub fn singleton(&self, index: usize) -> Proposition {
        assert!(index < self.len(), "atom index {index} out of range");
        self.proposition_unchecked(1 << index)
    }

    pub fn empty(&self) -> Proposition {
        self.proposition_unchecked(0)
    }

    /// The whole frame, Θ.
    pub fn full(&self) -> Proposition {
        self.proposition_unchecked(self.full_mask())
    }

    /// Builds a proposition from a raw mask; bits beyond the frame are an error.
    pub fn from_bits(&self, bits: u64) -> Result<Proposition> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::UnknownAtom(format!("bit mask {bits:#x}")));
        }
        Ok(self.proposition_unchecked(bits))
    }

    pub(crate) fn proposition_unchecked(&self, bits: u64) -> Proposition {
        Proposition {
            frame: self.id(),
            bits,
            full: self.full_mask(),
        }
    }

    /// Every subset of the frame, ∅ first and Θ last. Only sensible for small frames.
    pub fn subsets(&self) -> impl Iterator<Item = Proposition> + '_ {
        assert!(self.len() < 32, "refusing to enumerate 2^{} subsets", self.len());
        (0..=self.full_mask()).map(move |bits| self.proposition_unchecked(bits))
    }

    /// Atom names of `p`, in frame order.
    pub fn names(&self, p: &Proposition) -> Result<Vec<&str>> {
        self.check(p)?;
        Ok(p.atom_indices().map(|i| self.0.atoms[i].as_str()).collect())
    }

    /// `{a,b}` style rendering; `∅` for the empty set.
    pub fn describe(&self, p: &Proposition) -> Result<String> {
        let names = self.names(p)?;
        if names.is_empty() {
            return Ok("∅".to_string());
        }
        Ok(format!("{{{}}}", names.join(",")))
    }

    pub(crate) fn check(&self, p: &Proposition) -> Result<()> {
        if p.frame != self.id() {
            return Err(Error::FrameMismatch);
        }
        Ok(())
    }
}

fn mask_for_width(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A subset of a frame's atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    frame: FrameId,
    bits: u64,
    full: u64,
}

impl Proposition {
    pub fn frame_id(&self) -> FrameId {
        self.frame
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.full
    }

    /// Number of atoms in the subset.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains_atom(&self, index: usize) -> bool {
        index < 64 && self.bits & (1 << index) != 0
    }

    pub fn atom_indices(&self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    /// Complement relative to the owning frame.
    pub fn complement(&self) -> Proposition {
        Proposition {
            bits: !self.bits & self.full,
            ..*self
        }
    }

    pub fn intersect(&self, other: &Proposition) -> Result<Proposition> {
        self.same_frame(other)?;
        Ok(Proposition {
            bits: self.bits & other.bits,
            ..*self
        })
    }

    pub fn union(&self, other: &Proposition) -> Result<Proposition> {
        self.same_frame(other)?;
        Ok(Proposition {
            bits: self.bits | other.bits,
            ..*self
        })
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Proposition) -> Result<bool> {
        self.same_frame(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    fn same_frame(&self, other: &Proposition) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        Ok(())
    }
}

/// A logical query over named attributes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QueryExpr {
    Atom(String),
    And(Vec<QueryExpr>),
    Or(Vec<QueryExpr>),
    Implies(Box<QueryExpr>, Box<QueryExpr>),
}

impl QueryExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        QueryExpr::Atom(name.into())
    }

    pub fn and(children: impl IntoIterator<Item = QueryExpr>) -> Self {
        QueryExpr::And(children.into_iter().collect())
    }

    pub fn or(children: impl IntoIterator<Item = QueryExpr>) -> Self {
        QueryExpr::Or(children.into_iter().collect())
    }

    pub fn implies(lhs: QueryExpr, rhs: QueryExpr) -> Self {
        QueryExpr::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// Checks structural well-formedness: non-empty names, and/or with at
    /// least two children.
    pub fn validate(&self) -> Result<()> {
        match self {
            QueryExpr::Atom(name) if name.is_empty() => {
                Err(Error::MalformedQuery("empty attribute name".into()))
            }
            QueryExpr::Atom(_) => Ok(()),
            QueryExpr::And(children) | QueryExpr::Or(children) => {
                if children.len() < 2 {
                    return Err(Error::MalformedQuery(format!(
                        "`{}` needs at least two children, got {}",
                        self.op_name(),
                        children.len()
                    )));
                }
                children.iter().try_for_each(QueryExpr::validate)
            }
            QueryExpr::Implies(lhs, rhs) => {
                lhs.validate()?;
                rhs.validate()
            }
        }
    }

    pub fn op_name(&self) -> &'static str {
        match self {
            QueryExpr::Atom(_) => "atom",
            QueryExpr::And(_) => "and",
            QueryExpr::Or(_) => "or",
            QueryExpr::Implies(..) => "implies",
        }
    }

    /// Attribute names in left-to-right order, with repeats.
    pub fn attributes(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_attributes(&mut out);
        out
    }

    fn collect_attributes<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            QueryExpr::Atom(name) => out.push(name),
            QueryExpr::And(children) | QueryExpr::Or(children) => {
                children.iter().for_each(|c| c.collect_attributes(out))
            }
            QueryExpr::Implies(lhs, rhs) => {
                lhs.collect_attributes(out);
                rhs.collect_attributes(out);
            }
        }
    }
}

impl fmt::Display for QueryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryExpr::Atom(name) => f.write_str(name),
            QueryExpr::And(children) | QueryExpr::Or(children) => {
                write!(f, "{}(", self.op_name())?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            QueryExpr::Implies(lhs, rhs) => write!(f, "implies({lhs}, {rhs})"),
        }
    }
}

/// Maps a query onto a proposition of `frame`: and → ∩, or → ∪,
/// implies(a, b) → ¬a ∪ b.
pub fn translate_logical(
    expr: &QueryExpr,
    frame: &Frame,
    atom_map: &HashMap<String, Proposition>,
) -> Result<Proposition> {
    expr.validate()?;
    translate(expr, frame, atom_map)
}

fn translate(
    expr: &QueryExpr,
    frame: &Frame,
    atom_map: &HashMap<String, Proposition>,
) -> Result<Proposition> {
    match expr {
        QueryExpr::Atom(name) => {
            let p = atom_map
                .get(name)
                .ok_or_else(|| Error::UnmappedAttribute(name.clone()))?;
            frame.check(p)?;
            Ok(*p)
        }
        QueryExpr::And(children) => children.iter().try_fold(frame.full(), |acc, c| {
            acc.intersect(&translate(c, frame, atom_map)?)
        }),
        QueryExpr::Or(children) => children.iter().try_fold(frame.empty(), |acc, c| {
            acc.union(&translate(c, frame, atom_map)?)
        }),
        QueryExpr::Implies(lhs, rhs) => {
            let a = translate(lhs, frame, atom_map)?;
            let b = translate(rhs, frame, atom_map)?;
            a.complement().union(&b)
        }
    }
}
