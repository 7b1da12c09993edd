//! Exhaustive searches for edge instances and counterexamples.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::{Classifier, DisKind};
use crate::error::{Error, Result};
use crate::lattice::{Limits, SubLattice};
use crate::maps::quotient_check;
use crate::topology::SubbasisSpace;

use super::corpus::Corpus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    /// `V(N) ∪ V(K) ⊊ V(N ∩ K)`.
    UnionStrict,
    /// A union of two V-sets that is not itself a V-set.
    VNotClosed,
    NonSober,
    /// Disconnected, yet no two subbasis sets split the space.
    SubbasisNoStrongDisconnect,
    /// `V(√N) ≠ V(N)`.
    RadicalEqualityFails,
    /// The Bourne projection `M → M/N` has the contraction property but
    /// does not pull back homeomorphically onto `V(N)`.
    QuotientCorollaryMismatch,
}

impl Query {
    pub const ALL: [Query; 6] = [
        Query::UnionStrict,
        Query::VNotClosed,
        Query::NonSober,
        Query::SubbasisNoStrongDisconnect,
        Query::RadicalEqualityFails,
        Query::QuotientCorollaryMismatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Query::UnionStrict => "union_strict",
            Query::VNotClosed => "v_not_closed",
            Query::NonSober => "non_sober",
            Query::SubbasisNoStrongDisconnect => "subbasis_no_strong_disconnect",
            Query::RadicalEqualityFails => "radical_equality_fails",
            Query::QuotientCorollaryMismatch => "quotient_corollary_mismatch",
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Query {
    type Err = Error;

    fn from_str(s: &str) -> Result<Query> {
        Query::ALL
            .into_iter()
            .find(|q| q.as_str() == s.trim().replace('-', "_"))
            .ok_or_else(|| Error::Usage(format!("unknown mining query {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Hit {
    pub structure: String,
    pub kind: DisKind,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct MineResult {
    pub query: Query,
    pub spaces_searched: usize,
    /// Spaces refused by a resource cap; they were not searched.
    pub spaces_skipped: usize,
    /// At most one hit per space, in corpus then kind order.
    pub hits: Vec<Hit>,
    /// More hits existed than the requested limit.
    pub truncated: bool,
}

impl MineResult {
    /// Nothing found and nothing skipped: a certified negative within the
    /// searched bounds.
    pub fn certified_none(&self) -> bool {
        self.hits.is_empty() && self.spaces_skipped == 0
    }
}

fn mine_space(
    q: Query,
    lat: &Arc<SubLattice>,
    space: &Arc<SubbasisSpace>,
    primes: &[crate::bits::SubsetMask],
    limits: &Limits,
) -> Option<Value> {
    let show = |n| lat.show(n);
    let pts = |s: &crate::bits::PointSet| space.point_labels(s);
    match q {
        Query::UnionStrict => {
            for a in lat.ids() {
                for b in a + 1..lat.len() {
                    let u = space.v_set(a).union(space.v_set(b));
                    let meet = space.v_set(lat.meet_id(a, b));
                    if u != *meet {
                        return Some(json!({"n": show(a), "k": show(b), "union": pts(&u),
                            "meet": show(lat.meet_id(a, b)), "v_meet": pts(meet)}));
                    }
                }
            }
            None
        }
        Query::VNotClosed => {
            for a in lat.ids() {
                for b in a + 1..lat.len() {
                    let u = space.v_set(a).union(space.v_set(b));
                    if !lat.ids().any(|c| *space.v_set(c) == u) {
                        return Some(json!({"n": show(a), "k": show(b), "union": pts(&u)}));
                    }
                }
            }
            None
        }
        Query::NonSober => {
            let s = space.is_sober();
            (!s.sober).then(|| {
                json!({"offending": s.offending.map(|o| o.iter().map(|&p| space.point_label(p)).collect::<Vec<_>>())})
            })
        }
        Query::SubbasisNoStrongDisconnect => {
            let c = space.connectivity_report();
            (!c.connected && !c.subbasis_strongly_disconnects).then(|| {
                let (a, b) = c.basis_witness.expect("disconnected spaces have a basis witness");
                json!({
                    "basis_witness": [
                        {"points": pts(&crate::bits::PointSet::from_indices(space.len(), a.points.iter().copied())),
                         "union_of_v": a.generators.iter().map(|&g| show(g)).collect::<Vec<_>>()},
                        {"points": pts(&crate::bits::PointSet::from_indices(space.len(), b.points.iter().copied())),
                         "union_of_v": b.generators.iter().map(|&g| show(g)).collect::<Vec<_>>()},
                    ]
                })
            })
        }
        Query::RadicalEqualityFails => lat.ids().find_map(|n| {
            let r = lat.id_of(lat.radical(lat.mask(n), primes)).expect("radical");
            (space.v_set(r) != space.v_set(n)).then(|| {
                json!({"n": show(n), "radical": show(r), "v_n": pts(space.v_set(n)), "v_radical": pts(space.v_set(r))})
            })
        }),
        Query::QuotientCorollaryMismatch => lat.ids().find_map(|n| {
            let kind = space.kind().expect("class space");
            let qc = quotient_check(lat, space, n, kind, limits).ok()?;
            (qc.contraction && !qc.onto_v_n).then(|| {
                let h = qc.homeo.as_ref().expect("contraction holds");
                json!({
                    "n": show(n),
                    "subtractive_closure": show(qc.subtractive_closure),
                    "image": h.onto.iter().map(|&p| space.point_label(p)).collect::<Vec<_>>(),
                    "v_n": pts(space.v_set(n)),
                    "onto_v_subtractive_closure": qc.onto_v_kn,
                })
            })
        }),
    }
}

enum SpaceOutcome {
    Searched(Option<Hit>),
    Skipped,
}

/// Searches every (structure, kind) pair; returns the first witness of each
/// space, capped at `limit` hits overall.
pub fn mine_counterexamples(
    corpus: &Corpus,
    query: Query,
    kinds: &[DisKind],
    limit: Option<usize>,
    limits: &Limits,
) -> MineResult {
    let per_entry: Vec<Vec<SpaceOutcome>> = corpus
        .entries
        .par_iter()
        .map(|e| {
            let lat = match SubLattice::new(e.module.clone(), limits) {
                Ok(l) => Arc::new(l),
                Err(_) => return kinds.iter().map(|_| SpaceOutcome::Skipped).collect(),
            };
            let primes = Classifier::new(&lat).prime_masks();
            kinds
                .iter()
                .map(|&kind| match SubbasisSpace::for_kind(lat.clone(), kind, limits) {
                    Err(_) => SpaceOutcome::Skipped,
                    Ok(space) => SpaceOutcome::Searched(
                        mine_space(query, &lat, &Arc::new(space), &primes, limits).map(|witness| Hit {
                            structure: e.id.clone(),
                            kind,
                            witness,
                        }),
                    ),
                })
                .collect()
        })
        .collect();
    let mut result = MineResult {
        query,
        spaces_searched: 0,
        spaces_skipped: 0,
        hits: Vec::new(),
        truncated: false,
    };
    for o in per_entry.into_iter().flatten() {
        match o {
            SpaceOutcome::Skipped => result.spaces_skipped += 1,
            SpaceOutcome::Searched(hit) => {
                result.spaces_searched += 1;
                if let Some(h) = hit {
                    if limit.is_some_and(|l| result.hits.len() >= l) {
                        result.truncated = true;
                    } else {
                        result.hits.push(h);
                    }
                }
            }
        }
    }
    result
}
