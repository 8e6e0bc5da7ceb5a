//! Brute-force oracles and random generators shared by the integration tests.
//!
//! Nothing here calls the routine it is used to check.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use evident::routing::SourceDescriptor;
use evident::{Frame, MassFunction, QueryExpr};
use proptest::prelude::*;

/// (atom count, focal masks with raw weights); masks are reduced into the frame by the caller.
pub fn mass_parts(max_atoms: usize, max_focals: usize) -> impl Strategy<Value = (usize, Vec<(u64, f64)>)> {
    (1..=max_atoms).prop_flat_map(move |n| {
        let full = (1u64 << n) - 1;
        (Just(n), prop::collection::vec((1..=full, 0.01f64..1.0), 1..=max_focals))
    })
}

pub fn build_mass(frame: &Frame, parts: &[(u64, f64)]) -> MassFunction {
    let total: f64 = parts.iter().map(|p| p.1).sum();
    MassFunction::new(frame, parts.iter().map(|&(b, w)| (frame.from_bits(b).unwrap(), w / total))).unwrap()
}

pub fn frame_of(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("h{i}"))).unwrap()
}

/// Focal masks and masses, read back through the public `mass` accessor
/// for every subset of the frame.
pub fn mass_table(m: &MassFunction) -> Vec<f64> {
    m.frame().subsets().map(|p| m.mass(&p).unwrap()).collect()
}

/// Bel(A) = Σ_{B ⊆ A} m(B), enumerating every subset of the frame.
pub fn brute_belief(table: &[f64], a: u64) -> f64 {
    (0..table.len() as u64).filter(|&b| b != 0 && b & !a == 0).map(|b| table[b as usize]).sum()
}

/// Pl(A) = Σ_{B ∩ A ≠ ∅} m(B), enumerating every subset of the frame.
pub fn brute_plausibility(table: &[f64], a: u64) -> f64 {
    (0..table.len() as u64).filter(|&b| b & a != 0).map(|b| table[b as usize]).sum()
}

/// Pairwise orthogonal sum over explicit focal lists. Returns (masses, κ).
pub fn brute_combine(m1: &[(u64, f64)], m2: &[(u64, f64)]) -> (HashMap<u64, f64>, f64) {
    let mut raw: HashMap<u64, f64> = HashMap::new();
    let mut conflict = 0.0;
    for &(b, x) in m1 {
        for &(c, y) in m2 {
            if b & c == 0 {
                conflict += x * y;
            } else {
                *raw.entry(b & c).or_insert(0.0) += x * y;
            }
        }
    }
    let norm = 1.0 - conflict;
    (raw.into_iter().map(|(k, v)| (k, v / norm)).collect(), conflict)
}

pub fn focal_list(m: &MassFunction) -> Vec<(u64, f64)> {
    m.focals().map(|(p, x)| (p.bits(), x)).collect()
}

/// A random mass function with up to `max_focals` distinct focals.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame, max_focals: usize) -> MassFunction {
    let full = frame.full().bits();
    let limit = (full as usize).min(max_focals);
    let k = rng.gen_range(1..=limit);
    let mut focals: BTreeMap<u64, f64> = BTreeMap::new();
    while focals.len() < k {
        let bits = rng.gen_range(1..=full);
        focals.insert(bits, rng.gen_range(0.01..1.0));
    }
    let total: f64 = focals.values().sum();
    MassFunction::new(
        frame,
        focals.into_iter().map(|(b, w)| (frame.from_bits(b).unwrap(), w / total)),
    )
    .unwrap()
}

pub fn random_bayesian<R: Rng>(rng: &mut R, frame: &Frame) -> MassFunction {
    let weights: Vec<f64> = (0..frame.len()).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    MassFunction::bayesian(frame, frame.atoms().iter().zip(weights.iter().map(|w| w / total))).unwrap()
}

// ---------------------------------------------------------------- queries

/// Every and/or tree whose leaves are the first `n` attributes, left to right.
pub fn all_query_shapes(n: usize, names: &[&str]) -> Vec<QueryExpr> {
    fn build(lo: usize, hi: usize, names: &[&str]) -> Vec<QueryExpr> {
        if hi - lo == 1 {
            return vec![QueryExpr::atom(names[lo])];
        }
        let mut out = Vec::new();
        // split [lo, hi) into k >= 2 consecutive non-empty runs
        for cuts in compositions(hi - lo) {
            if cuts.len() < 2 {
                continue;
            }
            let mut children_options: Vec<Vec<QueryExpr>> = vec![Vec::new()];
            let mut start = lo;
            for len in cuts {
                let subs = build(start, start + len, names);
                children_options = children_options
                    .into_iter()
                    .flat_map(|prefix| {
                        subs.iter().map(move |s| {
                            let mut v = prefix.clone();
                            v.push(s.clone());
                            v
                        })
                    })
                    .collect();
                start += len;
            }
            for children in children_options {
                out.push(QueryExpr::And(children.clone()));
                out.push(QueryExpr::Or(children));
            }
        }
        out
    }
    build(0, n, names)
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// A random and/or tree of bounded depth over `names` (repeats allowed).
pub fn random_query<R: Rng>(rng: &mut R, names: &[&str], depth: usize) -> QueryExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return QueryExpr::atom(names[rng.gen_range(0..names.len())]);
    }
    let k = rng.gen_range(2..=3);
    let children: Vec<QueryExpr> = (0..k).map(|_| random_query(rng, names, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        QueryExpr::And(children)
    } else {
        QueryExpr::Or(children)
    }
}

pub fn random_source<R: Rng>(rng: &mut R, id: &str, names: &[&str]) -> SourceDescriptor {
    let mut schema = Vec::new();
    for a in names {
        if rng.gen_bool(0.6) {
            let w = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.05..=1.0) };
            schema.push((a.to_string(), w));
        }
    }
    SourceDescriptor::new(id, rng.gen_range(0..3), schema).unwrap()
}

pub fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite weight")
}

/// Answerability recursion in exact rational arithmetic: (support, plausibility).
pub fn rational_answerability(q: &QueryExpr, src: &SourceDescriptor) -> (BigRational, BigRational) {
    match q {
        QueryExpr::Atom(a) => match src.schema.get(a) {
            Some(&w) => (to_rational(w), BigRational::one()),
            None => (BigRational::zero(), BigRational::zero()),
        },
        QueryExpr::And(cs) => cs.iter().fold((BigRational::one(), BigRational::one()), |(s, p), c| {
            let (cs, cp) = rational_answerability(c, src);
            (s * cs, p * cp)
        }),
        QueryExpr::Or(cs) => {
            let (ms, mp) = cs.iter().fold((BigRational::one(), BigRational::one()), |(s, p), c| {
                let (cs, cp) = rational_answerability(c, src);
                (s * (BigRational::one() - cs), p * (BigRational::one() - cp))
            });
            (BigRational::one() - ms, BigRational::one() - mp)
        }
        QueryExpr::Implies(..) => unreachable!("not generated"),
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("bounded rational")
}

/// Evaluates an and/or/implies query with a truth assignment per attribute.
pub fn eval_query(q: &QueryExpr, truth: &dyn Fn(&str) -> bool) -> bool {
    match q {
        QueryExpr::Atom(a) => truth(a),
        QueryExpr::And(cs) => cs.iter().all(|c| eval_query(c, truth)),
        QueryExpr::Or(cs) => cs.iter().any(|c| eval_query(c, truth)),
        QueryExpr::Implies(l, r) => !eval_query(l, truth) || eval_query(r, truth),
    }
}

// ---------------------------------------------------------- decomposition

#[derive(Debug, Clone, PartialEq)]
pub struct BrutePlan {
    pub assignments: Vec<(QueryExpr, String)>,
    pub total_support: f64,
    pub unassigned: Vec<QueryExpr>,
}

/// Every way to cut the tree into fragments; atoms left out are unassigned.
fn cuts(q: &QueryExpr) -> Vec<(Vec<QueryExpr>, Vec<QueryExpr>)> {
    let mut out = vec![(vec![q.clone()], Vec::new())];
    match q {
        QueryExpr::Atom(_) => out.push((Vec::new(), vec![q.clone()])),
        QueryExpr::And(cs) | QueryExpr::Or(cs) => {
            let mut acc: Vec<(Vec<QueryExpr>, Vec<QueryExpr>)> = vec![(Vec::new(), Vec::new())];
            for c in cs {
                let sub = cuts(c);
                acc = acc
                    .into_iter()
                    .flat_map(|(f, u)| {
                        sub.iter().map(move |(sf, su)| {
                            let mut f = f.clone();
                            let mut u = u.clone();
                            f.extend(sf.iter().cloned());
                            u.extend(su.iter().cloned());
                            (f, u)
                        })
                    })
                    .collect();
            }
            out.extend(acc);
        }
        QueryExpr::Implies(..) => unreachable!(),
    }
    out
}

fn atom_count(q: &QueryExpr) -> usize {
    q.attributes().len()
}

/// Exhaustive search over cuts × source assignments. Preference: cover the
/// most atoms, then use the fewest fragments, then the highest product of
/// supports, then the lexicographically smallest (priority, id) sequence.
type PlanKey = (usize, Reverse<usize>, f64, Reverse<Vec<(i64, String)>>);

pub fn brute_decompose(q: &QueryExpr, sources: &[SourceDescriptor]) -> BrutePlan {
    let mut best: Option<(PlanKey, BrutePlan)> = None;
    for (fragments, unassigned) in cuts(q) {
        let n = fragments.len();
        let combos = sources.len().pow(n as u32);
        for code in 0..combos {
            let mut c = code;
            let mut picks = Vec::with_capacity(n);
            for _ in 0..n {
                picks.push(&sources[c % sources.len()]);
                c /= sources.len();
            }
            let valid = fragments.iter().zip(&picks).all(|(f, s)| {
                f.attributes().iter().all(|a| s.schema.get(*a).is_some_and(|&w| w > 0.0))
            });
            if !valid {
                continue;
            }
            let supports: Vec<f64> = fragments
                .iter()
                .zip(&picks)
                .map(|(f, s)| rational_to_f64(&rational_answerability(f, s).0))
                .collect();
            let total = if n == 0 { 0.0 } else { supports.iter().product() };
            let covered: usize = fragments.iter().map(atom_count).sum();
            let tiebreak: Vec<(i64, String)> = picks.iter().map(|s| (s.priority, s.id.clone())).collect();
            let key: PlanKey = (covered, Reverse(n), total, Reverse(tiebreak));
            let better = match &best {
                None => true,
                Some((k, _)) => key.partial_cmp(k) == Some(std::cmp::Ordering::Greater),
            };
            if better {
                let plan = BrutePlan {
                    assignments: fragments.iter().cloned().zip(picks.iter().map(|s| s.id.clone())).collect(),
                    total_support: total,
                    unassigned: unassigned.clone(),
                };
                best = Some((key, plan));
            }
        }
    }
    best.expect("the all-unassigned cut is always valid").1
}
