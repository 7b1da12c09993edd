//! Acceptance suite: one line per criterion, then a nonzero exit if any
//! criterion failed. Runs without the libtest harness so every line is
//! printed on every run.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use semispace::algebra::{quotient_bourne, Homomorphism};
use semispace::classes::{Classifier, DisKind};
use semispace::lattice::{Limits, SubLattice};
use semispace::maps::{check_contraction, pullback};
use semispace::topology::SubbasisSpace;
use semispace::verifier::{
    mine_counterexamples, run_theorem_suite, Corpus, Query, SuiteOptions, SuiteReport, SweepSpec,
};

/// Wall-clock budget for the V-set and omega lemma suite.
const LEMMA_SUITE_BUDGET: Duration = Duration::from_secs(60);
/// Wall-clock budget for all mining queries over the small sweep.
const MINING_BUDGET: Duration = Duration::from_secs(600);
/// Minimum random families drawn per space for the sampled lemma parts.
const MIN_SAMPLES: usize = 100;
/// Minimum distinct homomorphisms with the contraction property.
const MIN_CONTRACTING_HOMS: usize = 10;
/// Largest carrier checked against the brute-force lattice oracle.
const BRUTE_FORCE_MAX_MODULE: usize = 12;
const MINING_SWEEP: &str = "r<=2,m<=4";

const LEMMA_CLAIMS: &[&str] = &[
    "vsets-antitone",
    "vsets-generated",
    "vsets-extremes",
    "vsets-meet-is-sum",
    "vsets-union-below-meet",
    "vsets-radical-contains",
    "vsets-radical-equality",
    "omega-extensive",
    "omega-fixes-points",
    "omega-preserves-v",
    "omega-reverses-order",
];

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(checks: &[(&str, bool)], extra: String) -> Verdict {
        let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        let detail = if failed.is_empty() {
            extra
        } else {
            format!("failed: {}; {extra}", failed.join(", "))
        };
        Verdict {
            pass: failed.is_empty(),
            detail,
        }
    }
}

fn lattice(name: &str) -> Arc<SubLattice> {
    Arc::new(SubLattice::new(curated(name), &Limits::default()).unwrap())
}

fn space(name: &str, kind: DisKind) -> SubbasisSpace {
    SubbasisSpace::for_kind(lattice(name), kind, &Limits::default()).unwrap()
}

fn suite(claims: &[&str]) -> SuiteReport {
    let opts = SuiteOptions {
        claims: Some(claims.iter().map(|s| s.to_string()).collect()),
        ..SuiteOptions::default()
    };
    run_theorem_suite(&Corpus::curated(), &opts).expect("suite runs")
}

/// Every listed claim produced rows, none failed and none were skipped.
fn clean(report: &SuiteReport, claims: &[&str]) -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for c in claims {
        let n = report.by_claim.get(c).copied().unwrap_or_default();
        ok &= n.pass > 0 && n.fail == 0 && n.skipped == 0;
        parts.push(format!("{c} {}/{}", n.pass, n.pass + n.fail + n.skipped));
    }
    (ok, parts.join(", "))
}

fn lemma_suite() -> Verdict {
    let start = Instant::now();
    let report = suite(LEMMA_CLAIMS);
    let elapsed = start.elapsed();
    let (ok, summary) = clean(&report, LEMMA_CLAIMS);
    let spaces = CURATED_SPACES;
    let full_coverage = LEMMA_CLAIMS
        .iter()
        .filter(|&&c| c != "vsets-radical-equality")
        .all(|c| report.by_claim[c].pass == spaces);
    Verdict::new(
        &[
            ("all parts hold", ok),
            ("every curated space checked", full_coverage),
            ("sample count", SuiteOptions::default().samples >= MIN_SAMPLES),
            ("time budget", elapsed < LEMMA_SUITE_BUDGET),
        ],
        format!("{summary}; {:.2}s", elapsed.as_secs_f64()),
    )
}

/// Curated structures times kinds.
const CURATED_SPACES: usize = 9 * 17;

fn t0_everywhere() -> Verdict {
    let claims = ["t0", "specialization-is-inclusion"];
    let (ok, summary) = clean(&suite(&claims), &claims);
    let mut direct = true;
    for name in semispace::algebra::standard::CURATED {
        for kind in DisKind::ALL {
            direct &= space(name, kind).separation_report().t0;
        }
    }
    Verdict::new(&[("claims", ok), ("direct t0 scan", direct)], summary)
}

fn t1_theorem() -> Verdict {
    let claims = ["t1-iff-within-maximal"];
    let report = suite(&claims);
    let (ok, summary) = clean(&report, &claims);
    let max = space("F2^2", DisKind::Maximal);
    let positive = max.separation_report().t1 && max.len() == 3 && max.closed_sets().unwrap().len() == 1 << 3;
    let prime = space("F2^2", DisKind::Prime);
    let negative = !prime.separation_report().t1 && prime.point_of(prime.lattice().zero_id()).is_some();
    let failing: Vec<String> = report
        .failures()
        .map(|r| format!("{}/{}", r.structure, r.kind.map(|k| k.as_str()).unwrap_or("-")))
        .collect();
    Verdict::new(
        &[
            ("biconditional on every space", ok),
            ("maximal plane discrete", positive),
            ("prime plane not T1", negative),
        ],
        if failing.is_empty() {
            summary
        } else {
            format!("{summary}; counterexamples {}", failing.join(" "))
        },
    )
}

fn irreducible_closures() -> Verdict {
    let claims = ["point-closure-is-v", "proper-subbasis-irreducible"];
    let (ok, summary) = clean(&suite(&claims), &claims);
    Verdict::new(&[("claims", ok)], summary)
}

fn sobriety() -> Verdict {
    let claims = [
        "sob-generic-is-omega",
        "sob-omega-criterion",
        "sober-standard-kinds",
        "sober-strongly-irreducible",
    ];
    let (ok, summary) = clean(&suite(&claims), &claims);
    Verdict::new(&[("claims", ok)], summary)
}

fn scc_compactness() -> Verdict {
    let claims = ["scc-iff-contains-maximal", "compact-sum-covers"];
    let (ok, summary) = clean(&suite(&claims), &claims);
    let strong = space("F2^2", DisKind::Strong);
    let scc = strong.scc_check();
    let witness_ok = !scc.holds && scc.witness == Some(strong.lattice().zero_id());
    Verdict::new(
        &[("claims", ok), ("strong plane fails scc at {0}", witness_ok)],
        summary,
    )
}

fn connectedness() -> Verdict {
    let claims = [
        "connected-with-zero",
        "connected-standard-kinds",
        "strong-disconnect-implies-disconnected",
        "basis-meet-closed",
        "disconnected-iff-basis-splits",
    ];
    let (ok, summary) = clean(&suite(&claims), &claims);
    let max = space("F2^2", DisKind::Maximal);
    let c = max.connectivity_report();
    let plane = !c.connected && c.basis_strongly_disconnects && !c.subbasis_strongly_disconnects;
    let witness = c.basis_witness.as_ref().is_some_and(|(a, b)| {
        let (a, b) = (
            semispace::PointSet::from_indices(max.len(), a.points.iter().copied()),
            semispace::PointSet::from_indices(max.len(), b.points.iter().copied()),
        );
        a.is_disjoint(&b)
            && a.union(&b).is_full()
            && max.is_closed(&a)
            && max.is_closed(&b)
            && !a.is_empty()
            && !b.is_empty()
    });
    Verdict::new(
        &[
            ("claims", ok),
            ("maximal plane split by basis only", plane),
            ("basis witness valid", witness),
        ],
        summary,
    )
}

fn pullbacks() -> Verdict {
    let claims = ["pullback-continuous", "pullback-homeomorphism", "pullback-density"];
    let report = suite(&claims);
    let (ok, summary) = clean(&report, &claims);
    let homs: BTreeSet<&str> = report
        .rows_for("pullback-continuous")
        .map(|r| r.structure.as_str())
        .collect();

    // Projection onto the first coordinate of F2^2, prime kind.
    let plane = curated("F2^2");
    let line = curated("F2");
    let proj = Homomorphism::new(plane, line, vec![0, 0, 1, 1]).unwrap();
    let limits = Limits::default();
    let domain = Arc::new(SubbasisSpace::for_kind(lattice("F2^2"), DisKind::Prime, &limits).unwrap());
    let codomain = Arc::new(SubbasisSpace::for_kind(lattice("F2"), DisKind::Prime, &limits).unwrap());
    let contraction = check_contraction(&proj, &domain, &codomain).unwrap().holds;
    let pm = pullback(&proj, domain.clone(), codomain).unwrap();
    let kernel = domain.lattice().id_of(proj.kernel()).unwrap();
    let a = domain.point_of(kernel).unwrap();
    let image: Vec<usize> = pm.image().iter().collect();
    let d = pm.density_check();
    let h = pm.surjective_homeo_check().unwrap();
    let example = contraction
        && to_set(proj.kernel()) == set(&[0, 1])
        && image == vec![a]
        && h.homeomorphic
        && !d.dense
        && d.image_closure == vec![a];

    let mut failing: BTreeMap<&str, usize> = BTreeMap::new();
    for r in report.failures() {
        *failing.entry(r.claim).or_default() += 1;
    }
    Verdict::new(
        &[
            ("continuity, homeomorphism and density on every contracting map", ok),
            ("enough contracting homomorphisms", homs.len() >= MIN_CONTRACTING_HOMS),
            ("projection example", example),
        ],
        format!(
            "{summary}; {} contracting homomorphisms; failures {failing:?}",
            homs.len()
        ),
    )
}

fn mining() -> Verdict {
    let curated = mine_counterexamples(
        &Corpus::curated(),
        Query::UnionStrict,
        &DisKind::ALL,
        None,
        &Limits::default(),
    );
    let plane_hit = curated
        .hits
        .iter()
        .find(|h| h.structure == "F2^2" && h.kind == DisKind::Prime);
    let witness = plane_hit.is_some_and(|h| {
        let w = &h.witness;
        w["n"] == "{(0,0),(0,1)}"
            && w["k"] == "{(0,0),(1,0)}"
            && w["union"].as_array().map(Vec::len) == Some(2)
            && w["v_meet"].as_array().map(Vec::len) == Some(4)
    });

    let sweep = Corpus::from_sweep(&MINING_SWEEP.parse::<SweepSpec>().unwrap());
    let start = Instant::now();
    let mut summary = Vec::new();
    let mut complete = true;
    for q in Query::ALL {
        let r = mine_counterexamples(&sweep, q, &DisKind::ALL, None, &Limits::default());
        complete &= r.spaces_skipped == 0;
        summary.push(format!(
            "{q}: {}",
            if r.certified_none() {
                "none".to_string()
            } else {
                r.hits.len().to_string()
            }
        ));
    }
    let elapsed = start.elapsed();
    Verdict::new(
        &[
            ("F2^2 prime witness", witness),
            ("sweep searched without skips", complete),
            ("time budget", elapsed < MINING_BUDGET),
        ],
        format!(
            "{} sweep structures; {}; {:.2}s",
            sweep.len(),
            summary.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let corpus = oracle_corpus();
    let mut lattices = true;
    let mut quotients = true;
    let mut classes = true;
    let mut checked = 0;
    for (_, m) in &corpus {
        if m.len() > BRUTE_FORCE_MAX_MODULE {
            continue;
        }
        checked += 1;
        let lat = SubLattice::new(m.clone(), &Limits::default()).unwrap();
        let subs: Vec<Set> = lat.subs().iter().map(|&s| to_set(s)).collect();
        lattices &= subs == brute_subsemimodules(m);
        for &n in lat.subs() {
            let q = quotient_bourne(m, n).unwrap();
            let rel = congruence_closure(m, &to_set(n));
            quotients &= (0..m.len())
                .all(|x| (0..m.len()).all(|y| (q.projection.apply(x) == q.projection.apply(y)) == rel[x][y]));
        }
        let c = Classifier::new(&lat);
        let o = ClassOracle::new(m);
        for kind in DisKind::ALL {
            classes &= lat
                .ids()
                .all(|n| c.is_in_class(n, kind).member == o.member(&to_set(lat.mask(n)), kind));
        }
    }
    Verdict::new(
        &[
            ("lattice", lattices),
            ("quotient", quotients),
            ("classes", classes),
            ("corpus nonempty", checked > 0),
        ],
        format!("{checked} structures"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("V-set and omega lemma suite", lemma_suite),
        ("T0 and specialization order", t0_everywhere),
        ("T1 iff points are maximal", t1_theorem),
        ("point closures and irreducibility", irreducible_closures),
        ("sobriety", sobriety),
        ("scc and compactness", scc_compactness),
        ("connectedness", connectedness),
        ("pullback maps", pullbacks),
        ("counterexample mining", mining),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
