mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use semispace::algebra::quotient_bourne;
use semispace::classes::{Classifier, DisKind};
use semispace::lattice::{Limits, SubLattice};
use semispace::topology::SubbasisSpace;

fn lattice(m: &Arc<semispace::algebra::Semimodule>) -> Arc<SubLattice> {
    Arc::new(SubLattice::new(m.clone(), &Limits::default()).unwrap())
}

fn subs_of(lat: &SubLattice) -> Vec<Set> {
    lat.subs().iter().map(|&m| to_set(m)).collect()
}

#[test]
fn lattice_matches_brute_force() {
    for (id, m) in oracle_corpus() {
        assert!(m.len() <= 12, "{id}");
        assert_eq!(subs_of(&lattice(&m)), brute_subsemimodules(&m), "{id}");
    }
}

#[test]
fn frozen_lattices() {
    assert_eq!(subs_of(&lattice(&curated("B"))), vec![set(&[0]), set(&[0, 1])]);
    assert_eq!(
        subs_of(&lattice(&curated("Z4"))),
        vec![set(&[0]), set(&[0, 2]), set(&[0, 1, 2, 3])]
    );
    assert_eq!(
        subs_of(&lattice(&curated("N2"))),
        vec![set(&[0]), set(&[0, 2]), set(&[0, 1, 2])]
    );
    assert_eq!(lattice(&curated("F2^2")).len(), 5);
}

#[test]
fn frozen_generation_and_lattice_operations() {
    let n3 = lattice(&curated("N3"));
    assert_eq!(to_set(n3.generate(to_mask(&set(&[2])))), set(&[0, 2, 3]));
    assert_eq!(generated(&curated("N3"), &set(&[2])), set(&[0, 2, 3]));

    // F2^2 elements: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
    let p = lattice(&curated("F2^2"));
    let a = to_mask(&set(&[0, 2]));
    let b = to_mask(&set(&[0, 1]));
    assert_eq!(p.sum([a, b]), p.module().full_mask());
    assert_eq!(a.intersection(b), to_mask(&set(&[0])));
    assert_eq!(to_set(p.colon(to_mask(&set(&[0])))), set(&[0]));
    let n2 = lattice(&curated("N2"));
    assert_eq!(to_set(n2.colon(to_mask(&set(&[0, 2])))), set(&[0, 2]));

    let c = Classifier::new(&p);
    assert_eq!(to_set(c.radical(to_mask(&set(&[0])))), set(&[0]));
    assert_eq!(c.radical(a), a);
    assert_eq!(to_set(c.prime_to_set(a)), set(&[1]));
    let bl = lattice(&curated("B"));
    assert_eq!(
        to_set(Classifier::new(&bl).prime_to_set(to_mask(&set(&[0])))),
        set(&[1])
    );
}

#[test]
fn generation_matches_iterated_closure() {
    for (id, m) in oracle_corpus().into_iter().take(40) {
        let lat = lattice(&m);
        for bits in 0u64..1 << m.len() {
            let s = to_set(semispace::SubsetMask(bits));
            assert_eq!(to_set(lat.generate(to_mask(&s))), generated(&m, &s), "{id} {s:?}");
        }
    }
}

#[test]
fn quotient_matches_congruence_closure() {
    for (id, m) in oracle_corpus() {
        let lat = lattice(&m);
        for &n in lat.subs() {
            let q = quotient_bourne(&m, n).unwrap();
            let rel = congruence_closure(&m, &to_set(n));
            for (x, row) in rel.iter().enumerate() {
                for (y, &related) in row.iter().enumerate() {
                    assert_eq!(
                        q.projection.apply(x) == q.projection.apply(y),
                        related,
                        "{id} N={:?} x={x} y={y}",
                        to_set(n)
                    );
                }
            }
            let classes = (0..m.len()).filter(|&x| (0..x).all(|y| !rel[x][y])).count();
            assert_eq!(q.quotient.len(), classes, "{id}");
        }
    }
}

#[test]
fn frozen_quotients() {
    let p = curated("F2^2");
    let q = quotient_bourne(&p, to_mask(&set(&[0, 1]))).unwrap();
    assert_eq!(q.quotient.len(), 2);
    assert_eq!(lattice(&q.quotient).len(), 2);

    let n2 = curated("N2");
    let q = quotient_bourne(&n2, to_mask(&set(&[0, 2]))).unwrap();
    assert_eq!(q.quotient.len(), 1);
}

#[test]
fn classes_match_direct_quantifiers() {
    for (id, m) in oracle_corpus() {
        let lat = lattice(&m);
        let c = Classifier::new(&lat);
        let o = ClassOracle::new(&m);
        for kind in DisKind::ALL {
            for n in lat.ids() {
                let s = to_set(lat.mask(n));
                assert_eq!(c.is_in_class(n, kind).member, o.member(&s, kind), "{id} {kind} {s:?}");
            }
        }
        for n in lat.ids() {
            let s = to_set(lat.mask(n));
            assert_eq!(to_set(c.radical(lat.mask(n))), o.radical(&s), "{id} radical {s:?}");
        }
    }
}

#[test]
fn frozen_plane_classes() {
    let lat = lattice(&curated("F2^2"));
    let c = Classifier::new(&lat);
    let ids = |k| c.select_class(k).points;
    assert_eq!(ids(DisKind::Prime), vec![0, 1, 2, 3]);
    assert_eq!(ids(DisKind::Maximal), vec![1, 2, 3]);
    assert!(ids(DisKind::Strong).is_empty());

    let n2 = lattice(&curated("N2"));
    let id = n2.id_of(to_mask(&set(&[0, 2]))).unwrap();
    assert!(!Classifier::new(&n2).is_in_class(id, DisKind::Subtractive).member);
}

fn top_oracle(space: &SubbasisSpace) -> TopOracle {
    let lat = space.lattice();
    let vsets = lat.ids().map(|n| space.v_set(n).iter().collect::<Set>());
    TopOracle::new(space.len(), vsets)
}

/// The closure oracle enumerates every closed set, so it only runs on small spaces.
const ORACLE_POINTS: usize = 10;

#[test]
fn topology_matches_closure_oracle() {
    for (id, m) in oracle_corpus() {
        let lat = lattice(&m);
        for kind in DisKind::ALL {
            let space = SubbasisSpace::for_kind(lat.clone(), kind, &Limits::default()).unwrap();
            if space.len() > ORACLE_POINTS {
                continue;
            }
            let o = top_oracle(&space);
            let tag = format!("{id} {kind}");
            if let Some(closed) = space.closed_sets() {
                let got: std::collections::BTreeSet<Set> = closed.iter().map(|c| c.iter().collect()).collect();
                assert_eq!(got, o.closed_sets(), "{tag}");
            }
            for p in 0..space.len() {
                assert_eq!(
                    space.point_closure(p).iter().collect::<Set>(),
                    o.closure(&set(&[p])),
                    "{tag}"
                );
            }
            let sep = space.separation_report();
            assert_eq!(sep.t0, o.t0(), "{tag}");
            assert_eq!(sep.t1, o.t1(), "{tag}");
            assert_eq!(space.is_sober().sober, o.sober(), "{tag}");
            assert_eq!(space.connectivity_report().connected, o.connected(), "{tag}");
        }
    }
}

#[test]
fn frozen_prime_plane_topology() {
    // Points: 0 = {0}, 1 = A = <(0,1)>, 2 = B = <(1,0)>, 3 = C = <(1,1)>.
    let lat = lattice(&curated("F2^2"));
    let space = SubbasisSpace::for_kind(lat, DisKind::Prime, &Limits::default()).unwrap();
    assert_eq!(space.v_set(1).iter().collect::<Set>(), set(&[1]));
    assert_eq!(space.closed_sets().unwrap().len(), 9);
    assert_eq!(space.point_closure(0).iter().collect::<Set>(), set(&[0, 1, 2, 3]));
    assert_eq!(space.point_closure(1).iter().collect::<Set>(), set(&[1]));
    assert_eq!(space.specialization_hasse(), vec![(0, 1), (0, 2), (0, 3)]);
    let ab = semispace::PointSet::from_indices(4, [1, 2]);
    assert!(!space.irreducible_closed(&ab).unwrap());
    assert_eq!(space.generic_points(&space.all()).unwrap(), vec![0]);
    assert_eq!(space.omega(0), to_mask(&set(&[0])));

    let lat = lattice(&curated("F2^2"));
    let max = SubbasisSpace::for_kind(lat, DisKind::Maximal, &Limits::default()).unwrap();
    assert_eq!(max.omega(0), to_mask(&set(&[0])));
    assert!(max.point_of(0).is_none());
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..oracle_corpus().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generate_is_a_closure_operator(i in corpus_index(), a in any::<u64>(), b in any::<u64>()) {
        let (_, m) = oracle_corpus().swap_remove(i);
        let lat = lattice(&m);
        let full = m.full_mask().0;
        let (a, b) = (semispace::SubsetMask(a & full), semispace::SubsetMask(b & full));
        let ga = lat.generate(a);
        prop_assert!(a.is_subset(ga));
        prop_assert_eq!(lat.generate(ga), ga);
        prop_assert!(lat.generate(a.intersection(b)).is_subset(ga));
        prop_assert!(lat.id_of(ga).is_some());
    }

    #[test]
    fn v_sets_respect_the_lattice(i in corpus_index(), k in 0usize..17, x in any::<u16>(), y in any::<u16>()) {
        let (_, m) = oracle_corpus().swap_remove(i);
        let lat = lattice(&m);
        let space = SubbasisSpace::for_kind(lat.clone(), DisKind::ALL[k], &Limits::default()).unwrap();
        let (a, b) = (x as usize % lat.len(), y as usize % lat.len());
        let sum = lat.sum_id(a, b);
        let meet = lat.meet_id(a, b);
        prop_assert_eq!(&space.v_set(a).intersection(space.v_set(b)), space.v_set(sum));
        prop_assert!(space.v_set(a).union(space.v_set(b)).is_subset(space.v_set(meet)));
        if lat.mask(a).is_subset(lat.mask(b)) {
            prop_assert!(space.v_set(b).is_subset(space.v_set(a)));
        }
        prop_assert!(space.is_closed(space.v_set(a)));
    }

    #[test]
    fn closure_is_idempotent_and_extensive(i in corpus_index(), k in 0usize..17, bits in any::<u64>()) {
        let (_, m) = oracle_corpus().swap_remove(i);
        let space = SubbasisSpace::for_kind(lattice(&m), DisKind::ALL[k], &Limits::default()).unwrap();
        let s = semispace::PointSet::from_indices(space.len(), (0..space.len()).filter(|p| bits >> (p % 64) & 1 == 1));
        let c = space.closure(&s);
        prop_assert!(s.is_subset(&c));
        prop_assert_eq!(space.closure(&c), c.clone());
        prop_assert!(space.is_closed(&c));
    }
}
