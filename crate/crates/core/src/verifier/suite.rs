//! Runs the claim registry over a corpus.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Homomorphism;
use crate::bits::{PointSet, SubsetMask};
use crate::classes::{Classifier, DisKind};
use crate::error::{Error, Result};
use crate::lattice::{Limits, SubId, SubLattice};
use crate::maps::{check_contraction, pullback, quotient_check};
use crate::topology::SubbasisSpace;

use super::claims::{ClaimDef, Scope, CLAIMS};
use super::corpus::{homomorphisms, projections, Corpus, HomEntry};
use super::report::{ClaimReport, Status, Subject, SuiteReport};

/// Random families drawn per space for the sampled claims.
pub const DEFAULT_SAMPLES: usize = 128;
pub const DEFAULT_SEED: u64 = 0x005e_ed0f_5e71;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub kinds: Vec<DisKind>,
    /// `None` runs every claim.
    pub claims: Option<BTreeSet<String>>,
    pub seed: u64,
    pub samples: usize,
    pub limits: Limits,
    /// Derive identities, projections and inclusions from the corpus.
    pub derived_maps: bool,
    /// Add the curated coordinate projections.
    pub projections: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            kinds: DisKind::ALL.to_vec(),
            claims: None,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            limits: Limits::default(),
            derived_maps: true,
            projections: true,
        }
    }
}

impl SuiteOptions {
    fn selected(&self, scope: Scope) -> Vec<&'static ClaimDef> {
        CLAIMS
            .iter()
            .filter(|c| c.scope == scope)
            .filter(|c| self.claims.as_ref().is_none_or(|s| s.contains(c.id)))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if let Some(s) = &self.claims {
            if let Some(bad) = s.iter().find(|id| super::claims::claim(id).is_none()) {
                return Err(Error::Usage(format!("unknown claim id {bad:?}")));
            }
        }
        Ok(())
    }
}

pub(crate) enum Outcome {
    Pass,
    Fail(Value),
    Skip(String),
    /// The claim says nothing about this instance; no row is emitted.
    Inapplicable,
}

struct SobReadings {
    per_set_failure: Option<SubId>,
    global_premise: bool,
    /// Soberness, when the global premise holds.
    global: Option<bool>,
    selection_failure: Option<(SubId, SubId, SubId)>,
}

fn check(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

/// FNV-1a over the parts, mixed into the seed, so every space draws its
/// own reproducible stream regardless of scheduling.
fn stream_seed(seed: u64, parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for p in parts {
        for b in p.bytes().chain([0xff]) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Shared state for the space claims of one (structure, kind).
pub(crate) struct SpaceCtx<'a> {
    pub lat: &'a Arc<SubLattice>,
    pub space: &'a SubbasisSpace,
    pub kind: DisKind,
    pub primes: &'a [SubsetMask],
    pub maximal: &'a [SubId],
    pub seed: u64,
    pub samples: usize,
    omegas: Vec<SubsetMask>,
}

impl<'a> SpaceCtx<'a> {
    pub fn new(
        lat: &'a Arc<SubLattice>,
        space: &'a SubbasisSpace,
        kind: DisKind,
        primes: &'a [SubsetMask],
        maximal: &'a [SubId],
        seed: u64,
        samples: usize,
    ) -> Self {
        let omegas = lat.ids().map(|n| space.omega(n)).collect();
        SpaceCtx {
            lat,
            space,
            kind,
            primes,
            maximal,
            seed,
            samples,
            omegas,
        }
    }

    fn rng(&self, claim: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(stream_seed(self.seed, &[claim]))
    }

    fn show(&self, n: SubId) -> String {
        self.lat.show(n)
    }

    fn pts(&self, s: &PointSet) -> Vec<String> {
        self.space.point_labels(s)
    }

    fn v(&self, n: SubId) -> &PointSet {
        self.space.v_set(n)
    }

    fn omega_id(&self, n: SubId) -> SubId {
        self.lat.id_of(self.omegas[n]).expect("intersection of subsemimodules")
    }

    fn random_sub(&self, rng: &mut ChaCha8Rng) -> SubId {
        rng.random_range(0..self.lat.len())
    }

    fn first_failure<T>(
        &self,
        items: impl Iterator<Item = T>,
        bad: impl Fn(&T) -> bool,
        witness: impl Fn(T) -> Value,
    ) -> Outcome {
        let mut items = items;
        match items.find(|t| bad(t)) {
            Some(t) => Outcome::Fail(witness(t)),
            None => Outcome::Pass,
        }
    }

    /// The converse of the generic-point theorem under both quantifier
    /// readings, plus the proof's step that an irreducible `V(K)` inside
    /// `V(A) ∪ V(B)` lies in one of them.
    fn sob_readings(&self) -> SobReadings {
        let (lat, sp) = (self.lat, self.space);
        let omega_in_v = |n: SubId| sp.point_of(self.omega_id(n)).is_some_and(|p| self.v(n).contains(p));
        let irreducible: Vec<SubId> = lat
            .ids()
            .filter(|&n| sp.irreducible_closed(self.v(n)).unwrap_or(false))
            .collect();
        let per_set_failure = irreducible
            .iter()
            .copied()
            .find(|&n| omega_in_v(n) && sp.generic_points(self.v(n)).expect("closed").len() != 1);
        let premise = irreducible.iter().all(|&n| omega_in_v(n));
        let global = premise.then(|| sp.is_sober().sober);
        let selection_failure = irreducible.iter().find_map(|&k| {
            let vk = self.v(k);
            lat.ids().find_map(|a| {
                (a..lat.len()).find_map(|b| {
                    let (va, vb) = (self.v(a), self.v(b));
                    (vk.is_subset(&va.union(vb)) && !vk.is_subset(va) && !vk.is_subset(vb)).then_some((k, a, b))
                })
            })
        });
        SobReadings {
            per_set_failure,
            global_premise: premise,
            global,
            selection_failure,
        }
    }

    /// Per-row information attached regardless of status.
    pub fn detail(&self, claim: &ClaimDef) -> Option<Value> {
        (claim.id == "sob-omega-criterion" && claim.applies_to(self.kind)).then(|| {
            let r = self.sob_readings();
            json!({
                "per_set": r.per_set_failure.is_none(),
                "global_premise": r.global_premise,
                "global": r.global,
                "selection_step": r.selection_failure.is_none(),
            })
        })
    }

    pub fn run(&self, claim: &ClaimDef) -> Outcome {
        if !claim.applies_to(self.kind) {
            return Outcome::Inapplicable;
        }
        let lat = self.lat;
        let sp = self.space;
        match claim.id {
            "vsets-antitone" => {
                let mut rng = self.rng(claim.id);
                let pairs: Vec<(SubId, SubId)> = (0..self.samples)
                    .map(|_| {
                        let n = self.random_sub(&mut rng);
                        let k = lat.sum_id(n, self.random_sub(&mut rng));
                        (n, k)
                    })
                    .collect();
                self.first_failure(
                    pairs.into_iter(),
                    |&(n, k)| !self.v(k).is_subset(self.v(n)),
                    |(n, k)| json!({"n": self.show(n), "k": self.show(k), "v_n": self.pts(self.v(n)), "v_k": self.pts(self.v(k))}),
                )
            }
            "vsets-generated" => {
                let mut rng = self.rng(claim.id);
                let full = lat.module().full_mask();
                let size = lat.module().len();
                let sets: Vec<SubsetMask> = (0..self.samples)
                    .map(|_| {
                        let s = SubsetMask(rng.random::<u64>() & full.0);
                        if s.is_empty() {
                            SubsetMask::singleton(rng.random_range(0..size))
                        } else {
                            s
                        }
                    })
                    .collect();
                self.first_failure(
                    sets.into_iter(),
                    |&s| sp.v_of_subset(s) != *self.v(lat.generated_id(s)),
                    |s| {
                        json!({"subset": lat.module().show(s), "v_subset": self.pts(&sp.v_of_subset(s)),
                               "generated": self.show(lat.generated_id(s)), "v_generated": self.pts(self.v(lat.generated_id(s)))})
                    },
                )
            }
            "vsets-extremes" => check(self.v(lat.zero_id()).is_full() && self.v(lat.top_id()).is_empty(), || {
                json!({"v_zero": self.pts(self.v(lat.zero_id())), "v_top": self.pts(self.v(lat.top_id()))})
            }),
            "vsets-meet-is-sum" => {
                let mut rng = self.rng(claim.id);
                let families: Vec<Vec<SubId>> = (0..self.samples)
                    .map(|_| {
                        let k = rng.random_range(0..=4);
                        (0..k).map(|_| self.random_sub(&mut rng)).collect()
                    })
                    .collect();
                let meet = |f: &[SubId]| f.iter().fold(sp.all(), |acc, &n| acc.intersection(self.v(n)));
                let sum = |f: &[SubId]| lat.id_of(lat.sum(f.iter().map(|&n| lat.mask(n)))).expect("sum");
                self.first_failure(
                    families.into_iter(),
                    |f| meet(f) != *self.v(sum(f)),
                    |f| {
                        json!({"family": f.iter().map(|&n| self.show(n)).collect::<Vec<_>>(),
                               "meet_of_v": self.pts(&meet(&f)), "sum": self.show(sum(&f)), "v_sum": self.pts(self.v(sum(&f)))})
                    },
                )
            }
            "vsets-union-below-meet" => {
                let mut rng = self.rng(claim.id);
                let pairs: Vec<(SubId, SubId)> = (0..self.samples)
                    .map(|_| (self.random_sub(&mut rng), self.random_sub(&mut rng)))
                    .collect();
                self.first_failure(
                    pairs.into_iter(),
                    |&(n, k)| !self.v(n).union(self.v(k)).is_subset(self.v(lat.meet_id(n, k))),
                    |(n, k)| {
                        json!({"n": self.show(n), "k": self.show(k), "union": self.pts(&self.v(n).union(self.v(k))),
                               "v_meet": self.pts(self.v(lat.meet_id(n, k)))})
                    },
                )
            }
            "vsets-radical-contains" | "vsets-radical-equality" => {
                let equality = claim.id == "vsets-radical-equality";
                let radical = |n: SubId| lat.id_of(lat.radical(lat.mask(n), self.primes)).expect("radical");
                self.first_failure(
                    lat.ids(),
                    |&n| {
                        let (vr, vn) = (self.v(radical(n)), self.v(n));
                        if equality { vr != vn } else { !vr.is_subset(vn) }
                    },
                    |n| {
                        json!({"n": self.show(n), "radical": self.show(radical(n)), "v_n": self.pts(self.v(n)),
                               "v_radical": self.pts(self.v(radical(n)))})
                    },
                )
            }
            "omega-extensive" => self.first_failure(
                lat.ids(),
                |&n| !lat.mask(n).is_subset(self.omegas[n]),
                |n| json!({"n": self.show(n), "omega": lat.module().show(self.omegas[n])}),
            ),
            "omega-fixes-points" => self.first_failure(
                sp.points().iter().copied(),
                |&n| self.omegas[n] != lat.mask(n),
                |n| json!({"point": self.show(n), "omega": lat.module().show(self.omegas[n])}),
            ),
            "omega-preserves-v" => self.first_failure(
                lat.ids(),
                |&n| self.v(n) != self.v(self.omega_id(n)),
                |n| {
                    json!({"n": self.show(n), "omega": self.show(self.omega_id(n)), "v_n": self.pts(self.v(n)),
                           "v_omega": self.pts(self.v(self.omega_id(n)))})
                },
            ),
            "omega-reverses-order" => self.first_failure(
                lat.ids().flat_map(|a| lat.ids().map(move |b| (a, b))),
                |&(a, b)| self.v(a).is_subset(self.v(b)) != self.omegas[b].is_subset(self.omegas[a]),
                |(a, b)| {
                    json!({"n1": self.show(a), "n2": self.show(b), "v_n1": self.pts(self.v(a)), "v_n2": self.pts(self.v(b)),
                           "omega_n1": lat.module().show(self.omegas[a]), "omega_n2": lat.module().show(self.omegas[b])})
                },
            ),
            "scc-iff-contains-maximal" => {
                let scc = sp.scc_check();
                let missing: Vec<SubId> = self.maximal.iter().copied().filter(|&m| sp.point_of(m).is_none()).collect();
                check(scc.holds == missing.is_empty(), || {
                    json!({"scc": scc.holds, "scc_witness": scc.witness.map(|n| self.show(n)),
                           "maximal_not_points": missing.iter().map(|&n| self.show(n)).collect::<Vec<_>>()})
                })
            }
            "compact-sum-covers" => {
                if !sp.scc_check().holds {
                    return Outcome::Inapplicable;
                }
                self.first_failure(
                    lat.ids().flat_map(|a| lat.ids().map(move |b| (a, b))),
                    |&(a, b)| self.v(a).is_disjoint(self.v(b)) && lat.sum_id(a, b) != lat.top_id(),
                    |(a, b)| json!({"n": self.show(a), "k": self.show(b), "sum": self.show(lat.sum_id(a, b))}),
                )
            }
            "t0" => check(sp.separation_report().t0, || json!({"specialization": sp.specialization()})),
            "specialization-is-inclusion" => {
                let le = sp.specialization();
                let n = sp.len();
                self.first_failure(
                    (0..n).flat_map(|p| (0..n).map(move |q| (p, q))),
                    |&(p, q)| le[p][q] != lat.mask(sp.points()[p]).is_subset(lat.mask(sp.points()[q])),
                    |(p, q)| json!({"lower": sp.point_label(p), "upper": sp.point_label(q), "specializes": le[p][q]}),
                )
            }
            "point-closure-is-v" => self.first_failure(
                0..sp.len(),
                |&p| {
                    let n = sp.points()[p];
                    sp.point_closure(p) != *self.v(n) || !sp.irreducible_closed(self.v(n)).unwrap_or(false)
                },
                |p| {
                    let n = sp.points()[p];
                    json!({"point": self.show(n), "closure": self.pts(&sp.point_closure(p)), "v": self.pts(self.v(n))})
                },
            ),
            "proper-subbasis-irreducible" => self.first_failure(
                lat.ids(),
                |&n| !self.v(n).is_empty() && !sp.irreducible_closed(self.v(n)).unwrap_or(false),
                |n| json!({"n": self.show(n), "v": self.pts(self.v(n))}),
            ),
            "t1-iff-within-maximal" => {
                let t1 = sp.separation_report().t1;
                let outside: Vec<String> = sp
                    .points()
                    .iter()
                    .filter(|p| !self.maximal.contains(p))
                    .map(|&p| self.show(p))
                    .collect();
                check(t1 == outside.is_empty(), || {
                    json!({"t1": t1, "within_maximal": outside.is_empty(), "non_maximal_points": outside,
                           "points": self.pts(&sp.all())})
                })
            }
            "t1-iff-antichain" => {
                let t1 = sp.separation_report().t1;
                let pts = sp.points();
                let chain = pts
                    .iter()
                    .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
                    .find(|&(a, b)| a != b && lat.mask(a).is_subset(lat.mask(b)));
                check(t1 == chain.is_none(), || {
                    json!({"t1": t1, "comparable_points": chain.map(|(a, b)| [self.show(a), self.show(b)])})
                })
            }
            "sob-generic-is-omega" => self.first_failure(
                lat.ids().filter(|&n| sp.irreducible_closed(self.v(n)).unwrap_or(false)),
                |&n| {
                    let gens = sp.generic_points(self.v(n)).expect("closed");
                    gens.len() == 1 && {
                        let l = sp.points()[gens[0]];
                        l != self.omega_id(n) || !self.v(n).contains(gens[0])
                    }
                },
                |n| {
                    let gens = sp.generic_points(self.v(n)).expect("closed");
                    json!({"n": self.show(n), "v": self.pts(self.v(n)), "generic": sp.point_label(gens[0]),
                           "omega": self.show(self.omega_id(n))})
                },
            ),
            "sob-omega-criterion" => {
                let r = self.sob_readings();
                if let Some(n) = r.per_set_failure {
                    return Outcome::Fail(json!({"reading": "per_set", "n": self.show(n), "v": self.pts(self.v(n)),
                        "generic_points": sp.generic_points(self.v(n)).expect("closed").iter().map(|&p| sp.point_label(p)).collect::<Vec<_>>()}));
                }
                if let Some((k, a, b)) = r.selection_failure {
                    return Outcome::Fail(json!({"reading": "selection_step", "k": self.show(k), "a": self.show(a), "b": self.show(b)}));
                }
                check(r.global != Some(false), || {
                    let s = sp.is_sober();
                    json!({"reading": "global", "offending": s.offending.map(|o| o.iter().map(|&p| sp.point_label(p)).collect::<Vec<_>>())})
                })
            }
            "sober-standard-kinds" | "sober-strongly-irreducible" => {
                let s = sp.is_sober();
                check(s.sober, || json!({"offending": s.offending.map(|o| o.iter().map(|&p| sp.point_label(p)).collect::<Vec<_>>())}))
            }
            "strong-disconnect-implies-disconnected" => {
                let c = sp.connectivity_report();
                check(!(c.subbasis_strongly_disconnects || c.basis_strongly_disconnects) || !c.connected, || {
                    json!({"connected": c.connected, "subbasis": c.subbasis_strongly_disconnects, "basis": c.basis_strongly_disconnects})
                })
            }
            "basis-meet-closed" => self.basis_meet_closed(),
            "disconnected-iff-basis-splits" => {
                let c = sp.connectivity_report();
                check(c.connected != c.basis_strongly_disconnects, || {
                    json!({"connected": c.connected, "basis_strongly_disconnects": c.basis_strongly_disconnects})
                })
            }
            "connected-with-zero" => {
                if sp.point_of(lat.zero_id()).is_none() {
                    return Outcome::Inapplicable;
                }
                let c = sp.connectivity_report();
                check(c.connected, || json!({"basis_witness": c.basis_witness}))
            }
            "connected-standard-kinds" => {
                let c = sp.connectivity_report();
                check(c.connected, || json!({"basis_witness": c.basis_witness}))
            }
            other => Outcome::Skip(format!("{other} is not a space claim")),
        }
    }

    /// `(∪ V(N_i)) ∩ (∪ V(K_j)) = ∪ V(N_i + K_j)` for families of one or
    /// two members, then closure of the materialized basis under meets.
    fn basis_meet_closed(&self) -> Outcome {
        let lat = self.lat;
        let sp = self.space;
        let n = lat.len();
        let families: Vec<Vec<SubId>> = (0..n)
            .flat_map(|a| (a..n).map(move |b| if a == b { vec![a] } else { vec![a, b] }))
            .collect();
        let union = |f: &[SubId]| f.iter().fold(sp.none(), |acc, &x| acc.union(self.v(x)));
        let total = families.len();
        let pairs: Box<dyn Iterator<Item = (usize, usize)>> = if total * total <= 1 << 16 {
            Box::new((0..total).flat_map(move |i| (0..total).map(move |j| (i, j))))
        } else {
            let mut rng = self.rng("basis-meet-closed");
            let picks: Vec<(usize, usize)> = (0..self.samples * 16)
                .map(|_| (rng.random_range(0..total), rng.random_range(0..total)))
                .collect();
            Box::new(picks.into_iter())
        };
        for (i, j) in pairs {
            let (a, b) = (&families[i], &families[j]);
            let lhs = union(a).intersection(&union(b));
            let sums: Vec<SubId> = a
                .iter()
                .flat_map(|&x| b.iter().map(move |&y| lat.sum_id(x, y)))
                .collect();
            if lhs != union(&sums) {
                return Outcome::Fail(json!({
                    "first": a.iter().map(|&x| self.show(x)).collect::<Vec<_>>(),
                    "second": b.iter().map(|&x| self.show(x)).collect::<Vec<_>>(),
                    "meet": self.pts(&lhs),
                    "union_of_sums": self.pts(&union(&sums)),
                }));
            }
        }
        if let Some(basis) = sp.basis() {
            let limit = 256;
            let idx: Vec<(usize, usize)> = if basis.len() <= limit {
                (0..basis.len())
                    .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
                    .collect()
            } else {
                let mut rng = self.rng("basis-meet-closed/materialized");
                (0..self.samples * 16)
                    .map(|_| (rng.random_range(0..basis.len()), rng.random_range(0..basis.len())))
                    .collect()
            };
            if let Some((i, j)) = idx
                .into_iter()
                .find(|&(i, j)| !sp.is_basis_set(&basis[i].intersection(&basis[j])))
            {
                return Outcome::Fail(json!({"first": self.pts(&basis[i]), "second": self.pts(&basis[j]),
                    "meet": self.pts(&basis[i].intersection(&basis[j]))}));
            }
        }
        Outcome::Pass
    }
}

fn row(
    claim: &ClaimDef,
    structure: &str,
    kind: Option<DisKind>,
    outcome: Outcome,
    elapsed: Duration,
    subject: &Subject,
    detail: Option<Value>,
) -> Option<ClaimReport> {
    let (status, witness) = match outcome {
        Outcome::Pass => (Status::Pass, None),
        Outcome::Fail(w) => (Status::Fail, Some(w)),
        Outcome::Skip(reason) => (Status::Skipped, Some(json!({"reason": reason}))),
        Outcome::Inapplicable => return None,
    };
    Some(ClaimReport {
        claim: claim.id,
        anchor: claim.anchor,
        structure: structure.to_string(),
        kind,
        status,
        witness,
        detail,
        elapsed,
        subject: Some(subject.clone()),
    })
}

fn skipped_rows(
    claims: &[&'static ClaimDef],
    structure: &str,
    kinds: &[Option<DisKind>],
    reason: &str,
    subject: &Subject,
) -> Vec<ClaimReport> {
    let mut out = Vec::new();
    for &c in claims {
        for &k in kinds {
            if k.is_none_or(|k| c.applies_to(k)) {
                out.extend(row(
                    c,
                    structure,
                    k,
                    Outcome::Skip(reason.to_string()),
                    Duration::ZERO,
                    subject,
                    None,
                ));
            }
        }
    }
    out
}

fn space_rows(
    id: &str,
    module: &Arc<crate::algebra::Semimodule>,
    opts: &SuiteOptions,
    claims: &[&'static ClaimDef],
    quotient: &[&'static ClaimDef],
) -> Vec<ClaimReport> {
    let subject = Subject::Module(module.clone());
    let all_kinds: Vec<Option<DisKind>> = opts.kinds.iter().map(|&k| Some(k)).collect();
    let lat = match SubLattice::new(module.clone(), &opts.limits) {
        Ok(l) => Arc::new(l),
        Err(e) => {
            let mut rows = skipped_rows(claims, id, &all_kinds, &e.to_string(), &subject);
            rows.extend(skipped_rows(quotient, id, &all_kinds, &e.to_string(), &subject));
            return rows;
        }
    };
    let classifier = Classifier::new(&lat);
    let primes = classifier.prime_masks();
    let maximal = classifier.select_class(DisKind::Maximal).points;
    let mut rows = Vec::new();
    for &kind in &opts.kinds {
        let space = match SubbasisSpace::for_kind(lat.clone(), kind, &opts.limits) {
            Ok(s) => Arc::new(s),
            Err(e) => {
                rows.extend(skipped_rows(claims, id, &[Some(kind)], &e.to_string(), &subject));
                rows.extend(skipped_rows(quotient, id, &[Some(kind)], &e.to_string(), &subject));
                continue;
            }
        };
        let seed = stream_seed(opts.seed, &[id, kind.as_str()]);
        let ctx = SpaceCtx::new(&lat, &space, kind, &primes, &maximal, seed, opts.samples);
        for &c in claims {
            let start = Instant::now();
            let outcome = ctx.run(c);
            let detail = ctx.detail(c);
            rows.extend(row(c, id, Some(kind), outcome, start.elapsed(), &subject, detail));
        }
        for &c in quotient {
            for n in lat.ids() {
                let start = Instant::now();
                let (outcome, detail) = match quotient_check(&lat, &space, n, kind, &opts.limits) {
                    Err(e) => (Outcome::Skip(e.to_string()), None),
                    Ok(q) if !q.contraction => (Outcome::Inapplicable, None),
                    Ok(q) => {
                        let detail = json!({
                            "n": lat.show(n),
                            "subtractive_closure": lat.show(q.subtractive_closure),
                            "onto_v_n": q.onto_v_n,
                            "onto_v_subtractive_closure": q.onto_v_kn,
                        });
                        let outcome = if q.onto_v_n {
                            Outcome::Pass
                        } else {
                            let h = q.homeo.as_ref().expect("contraction holds");
                            Outcome::Fail(json!({
                                "n": lat.show(n),
                                "image": h.onto.iter().map(|&p| space.point_label(p)).collect::<Vec<_>>(),
                                "v_n": space.point_labels(space.v_set(n)),
                                "v_subtractive_closure": space.point_labels(space.v_set(q.subtractive_closure)),
                                "injective": h.injective,
                                "closed_onto_image": h.closed_onto_image,
                                "onto_v_subtractive_closure": q.onto_v_kn,
                            }))
                        };
                        (outcome, Some(detail))
                    }
                };
                rows.extend(row(c, id, Some(kind), outcome, start.elapsed(), &subject, detail));
            }
        }
    }
    rows
}

fn map_rows(entry: &HomEntry, opts: &SuiteOptions, claims: &[&'static ClaimDef]) -> Vec<ClaimReport> {
    let subject = Subject::Map(entry.hom.clone());
    let kinds: Vec<Option<DisKind>> = opts.kinds.iter().map(|&k| Some(k)).collect();
    let lattices = SubLattice::new(entry.hom.source().clone(), &opts.limits).and_then(|s| {
        Ok((
            Arc::new(s),
            Arc::new(SubLattice::new(entry.hom.target().clone(), &opts.limits)?),
        ))
    });
    let (src, dst) = match lattices {
        Ok(p) => p,
        Err(e) => return skipped_rows(claims, &entry.id, &kinds, &e.to_string(), &subject),
    };
    let mut rows = Vec::new();
    for &kind in &opts.kinds {
        let spaces = SubbasisSpace::for_kind(src.clone(), kind, &opts.limits).and_then(|d| {
            Ok((
                Arc::new(d),
                Arc::new(SubbasisSpace::for_kind(dst.clone(), kind, &opts.limits)?),
            ))
        });
        let (domain, codomain) = match spaces {
            Ok(p) => p,
            Err(e) => {
                rows.extend(skipped_rows(claims, &entry.id, &[Some(kind)], &e.to_string(), &subject));
                continue;
            }
        };
        match check_contraction(&entry.hom, &domain, &codomain) {
            Ok(c) if c.holds => {}
            _ => continue,
        }
        let pm = match pullback(&entry.hom, domain, codomain) {
            Ok(pm) => pm,
            Err(e) => {
                rows.extend(skipped_rows(claims, &entry.id, &[Some(kind)], &e.to_string(), &subject));
                continue;
            }
        };
        for &c in claims {
            let start = Instant::now();
            let outcome = match c.id {
                "pullback-continuous" => {
                    let r = pm.continuity_check();
                    check(r.continuous && r.identity_exact, || {
                        serde_json::to_value(pm.report()).expect("json")
                    })
                }
                "pullback-homeomorphism" => match pm.surjective_homeo_check() {
                    Err(Error::NotSurjective(_)) => Outcome::Inapplicable,
                    Err(e) => Outcome::Skip(e.to_string()),
                    Ok(h) => check(h.homeomorphic, || serde_json::to_value(pm.report()).expect("json")),
                },
                "pullback-density" => {
                    let d = pm.density_check();
                    check(d.biconditional_holds, || {
                        serde_json::to_value(pm.report()).expect("json")
                    })
                }
                other => Outcome::Skip(format!("{other} is not a map claim")),
            };
            rows.extend(row(c, &entry.id, Some(kind), outcome, start.elapsed(), &subject, None));
        }
    }
    rows
}

/// The homomorphisms a suite run checks map claims against.
pub fn map_corpus(corpus: &Corpus, opts: &SuiteOptions) -> Result<Vec<HomEntry>> {
    let mut homs = Vec::new();
    if opts.derived_maps {
        homs.extend(homomorphisms(corpus, &opts.limits)?);
    }
    if opts.projections {
        homs.extend(projections());
    }
    Ok(homs)
}

/// One row per (claim, structure, kind) to which the claim applies, in
/// corpus order then registry order; identical inputs give identical rows.
pub fn run_theorem_suite(corpus: &Corpus, opts: &SuiteOptions) -> Result<SuiteReport> {
    opts.validate()?;
    let space_claims = opts.selected(Scope::Space);
    let quotient_claims = opts.selected(Scope::Quotient);
    let map_claims = opts.selected(Scope::Map);

    let mut rows: Vec<ClaimReport> = corpus
        .entries
        .par_iter()
        .map(|e| space_rows(&e.id, &e.module, opts, &space_claims, &quotient_claims))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    if !map_claims.is_empty() {
        let homs = map_corpus(corpus, opts)?;
        rows.extend(
            homs.par_iter()
                .map(|h| map_rows(h, opts, &map_claims))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten(),
        );
    }
    Ok(SuiteReport::new(rows))
}

/// Builds the pullback check of one homomorphism for one kind, as used by
/// the `maps` front end.
pub fn contraction_spaces(
    hom: &Homomorphism,
    kind: DisKind,
    limits: &Limits,
) -> Result<(Arc<SubbasisSpace>, Arc<SubbasisSpace>)> {
    let src = Arc::new(SubLattice::new(hom.source().clone(), limits)?);
    let dst = Arc::new(SubLattice::new(hom.target().clone(), limits)?);
    Ok((
        Arc::new(SubbasisSpace::for_kind(src, kind, limits)?),
        Arc::new(SubbasisSpace::for_kind(dst, kind, limits)?),
    ))
}
