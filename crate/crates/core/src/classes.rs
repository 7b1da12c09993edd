//! Membership of subsemimodules in the distinguished classes, and the point
//! sets `Dis_M` built from them.
//!
//! Every predicate is decided by exhaustive quantification over the finite
//! carrier or the finite lattice. Every class excludes `M` itself.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::is_ideal;
use crate::bits::SubsetMask;
use crate::error::Error;
use crate::lattice::{SubId, SubLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisKind {
    Proper,
    Subtractive,
    /// Read as: `x + y ∈ N` implies `x ∈ N` and `y ∈ N`.
    Strong,
    Maximal,
    Prime,
    Primary,
    WeaklyPrime,
    Primal,
    Semiprime,
    Extraordinary,
    StronglyIrreducible,
    Irreducible,
    CompletelyIrreducible,
    Cyclic,
    FinitelyGenerated,
    Minimal,
    MinimalPrime,
}

impl DisKind {
    pub const ALL: [DisKind; 17] = [
        DisKind::Proper,
        DisKind::Subtractive,
        DisKind::Strong,
        DisKind::Maximal,
        DisKind::Prime,
        DisKind::Primary,
        DisKind::WeaklyPrime,
        DisKind::Primal,
        DisKind::Semiprime,
        DisKind::Extraordinary,
        DisKind::StronglyIrreducible,
        DisKind::Irreducible,
        DisKind::CompletelyIrreducible,
        DisKind::Cyclic,
        DisKind::FinitelyGenerated,
        DisKind::Minimal,
        DisKind::MinimalPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DisKind::Proper => "proper",
            DisKind::Subtractive => "subtractive",
            DisKind::Strong => "strong",
            DisKind::Maximal => "maximal",
            DisKind::Prime => "prime",
            DisKind::Primary => "primary",
            DisKind::WeaklyPrime => "weakly_prime",
            DisKind::Primal => "primal",
            DisKind::Semiprime => "semiprime",
            DisKind::Extraordinary => "extraordinary",
            DisKind::StronglyIrreducible => "strongly_irreducible",
            DisKind::Irreducible => "irreducible",
            DisKind::CompletelyIrreducible => "completely_irreducible",
            DisKind::Cyclic => "cyclic",
            DisKind::FinitelyGenerated => "finitely_generated",
            DisKind::Minimal => "minimal",
            DisKind::MinimalPrime => "minimal_prime",
        }
    }

    /// Parses a comma-separated list; `all` expands to every kind.
    pub fn parse_list(s: &str) -> Result<Vec<DisKind>, Error> {
        if s.trim() == "all" {
            return Ok(DisKind::ALL.to_vec());
        }
        s.split(',').map(|k| k.trim().parse()).collect()
    }
}

impl fmt::Display for DisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().replace('-', "_");
        DisKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Note attached to reports that involve the strong class.
pub const STRONG_READING: &str = "strong: read as \"x + y in N implies x in N and y in N\" for all x, y in M";

/// Why a subsemimodule fails a class predicate. Indices are module
/// elements, scalar indices, or lattice ids as named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ClassWitness {
    /// `M` is never a point.
    WholeModule,
    /// `{0}` is excluded from the minimal classes.
    ZeroSubmodule,
    /// Elements `x, y` breaking subtractivity or strongness.
    Elements {
        x: usize,
        y: usize,
    },
    /// Scalar `r` and element `m` breaking a prime-like condition.
    ScalarElement {
        r: usize,
        m: usize,
    },
    /// A proper subsemimodule strictly above.
    StrictlyAbove {
        sub: SubId,
    },
    /// A nonzero subsemimodule strictly below.
    StrictlyBelow {
        sub: SubId,
    },
    /// Two subsemimodules breaking an irreducibility condition.
    Pair {
        first: SubId,
        second: SubId,
    },
    /// `N` is the intersection of these strict supersets.
    IntersectionOf {
        subs: Vec<SubId>,
    },
    /// Scalars in `R ∖ Prm(N)` whose sum is prime to `N`.
    ComplementNotAdditive {
        a: usize,
        b: usize,
    },
    /// `r·a` is prime to `N` although `a` is not.
    ComplementNotAbsorbing {
        r: usize,
        a: usize,
    },
    /// `N` differs from the intersection of the primes above it.
    NotRadical {
        radical: SubsetMask,
    },
    NoPrimeAbove,
    NotPrime {
        inner: Box<ClassWitness>,
    },
    NotMinimal {
        inner: Box<ClassWitness>,
    },
    NoSingleGenerator,
}

impl ClassWitness {
    /// Human-readable rendering using element labels.
    pub fn render(&self, lat: &SubLattice) -> String {
        let m = lat.module();
        let r = m.ring();
        match self {
            ClassWitness::WholeModule => "N = M".into(),
            ClassWitness::ZeroSubmodule => "N = {0}".into(),
            ClassWitness::Elements { x, y } => format!("x={}, y={}", m.label(*x), m.label(*y)),
            ClassWitness::ScalarElement { r: s, m: e } => format!("r={}, m={}", r.label(*s), m.label(*e)),
            ClassWitness::StrictlyAbove { sub } => format!("contained in {}", lat.show(*sub)),
            ClassWitness::StrictlyBelow { sub } => format!("contains {}", lat.show(*sub)),
            ClassWitness::Pair { first, second } => format!("L={}, K={}", lat.show(*first), lat.show(*second)),
            ClassWitness::IntersectionOf { subs } => {
                let parts: Vec<String> = subs.iter().map(|&s| lat.show(s)).collect();
                format!("intersection of {}", parts.join(" and "))
            }
            ClassWitness::ComplementNotAdditive { a, b } => {
                format!("{} + {} is prime to N", r.label(*a), r.label(*b))
            }
            ClassWitness::ComplementNotAbsorbing { r: s, a } => {
                format!("{}·{} is prime to N", r.label(*s), r.label(*a))
            }
            ClassWitness::NotRadical { radical } => format!("radical is {}", m.show(*radical)),
            ClassWitness::NoPrimeAbove => "no prime contains N".into(),
            ClassWitness::NotPrime { inner } => format!("not prime: {}", inner.render(lat)),
            ClassWitness::NotMinimal { inner } => format!("not minimal: {}", inner.render(lat)),
            ClassWitness::NoSingleGenerator => "no single element generates N".into(),
        }
    }
}

/// Decision for one (subsemimodule, class) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<ClassWitness>,
}

impl Membership {
    fn yes() -> Membership {
        Membership {
            member: true,
            witness: None,
        }
    }

    fn no(w: ClassWitness) -> Membership {
        Membership {
            member: false,
            witness: Some(w),
        }
    }

    fn from_witness(w: Option<ClassWitness>) -> Membership {
        match w {
            None => Membership::yes(),
            Some(w) => Membership::no(w),
        }
    }
}

/// The points of a subsemimodule space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisSpacePoints {
    pub kind: DisKind,
    /// Lattice ids, ascending.
    pub points: Vec<SubId>,
}

/// Class decisions over one lattice, caching the prime and semiprime
/// families that several predicates depend on.
pub struct Classifier<'a> {
    lat: &'a SubLattice,
    primes: OnceLock<Vec<SubId>>,
    semiprimes: OnceLock<Vec<SubId>>,
}

impl<'a> Classifier<'a> {
    pub fn new(lat: &'a SubLattice) -> Classifier<'a> {
        Classifier {
            lat,
            primes: OnceLock::new(),
            semiprimes: OnceLock::new(),
        }
    }

    pub fn lattice(&self) -> &'a SubLattice {
        self.lat
    }

    /// Ids of all prime subsemimodules.
    pub fn primes(&self) -> &[SubId] {
        self.primes.get_or_init(|| {
            self.lat
                .proper_ids()
                .filter(|&i| self.prime_witness(i).is_none())
                .collect()
        })
    }

    pub fn prime_masks(&self) -> Vec<SubsetMask> {
        self.primes().iter().map(|&i| self.lat.mask(i)).collect()
    }

    pub fn semiprimes(&self) -> &[SubId] {
        self.semiprimes.get_or_init(|| {
            self.lat
                .proper_ids()
                .filter(|&i| self.semiprime_witness(i).is_none())
                .collect()
        })
    }

    /// `√N`: intersection of the primes containing `N`, `M` if there are none.
    pub fn radical(&self, n: SubsetMask) -> SubsetMask {
        self.lat.radical(n, &self.prime_masks())
    }

    /// `Prm(N)`: scalars `r` with `rm ∈ N ⇒ m ∈ N`.
    pub fn prime_to_set(&self, n: SubsetMask) -> SubsetMask {
        let m = self.lat.module();
        SubsetMask::from_indices(
            (0..m.ring().len()).filter(|&r| (0..m.len()).all(|x| !n.contains(m.act(r, x)) || n.contains(x))),
        )
    }

    pub fn is_in_class(&self, id: SubId, kind: DisKind) -> Membership {
        if id == self.lat.top_id() {
            return Membership::no(ClassWitness::WholeModule);
        }
        Membership::from_witness(match kind {
            DisKind::Proper => None,
            DisKind::Subtractive => self.subtractive_witness(id),
            DisKind::Strong => self.strong_witness(id),
            DisKind::Maximal => self.maximal_witness(id),
            DisKind::Prime => self.prime_witness(id),
            DisKind::Primary => self.primary_witness(id),
            DisKind::WeaklyPrime => self.weakly_prime_witness(id),
            DisKind::Primal => self.primal_witness(id),
            DisKind::Semiprime => self.semiprime_witness(id),
            DisKind::Extraordinary => self.extraordinary_witness(id),
            DisKind::StronglyIrreducible => self.strongly_irreducible_witness(id),
            DisKind::Irreducible => self.irreducible_witness(id),
            DisKind::CompletelyIrreducible => self.completely_irreducible_witness(id),
            DisKind::Cyclic => self.cyclic_witness(id),
            DisKind::FinitelyGenerated => self.finitely_generated_witness(id),
            DisKind::Minimal => self.minimal_witness(id),
            DisKind::MinimalPrime => self
                .minimal_witness(id)
                .map(|w| ClassWitness::NotMinimal { inner: Box::new(w) })
                .or_else(|| {
                    self.prime_witness(id)
                        .map(|w| ClassWitness::NotPrime { inner: Box::new(w) })
                }),
        })
    }

    pub fn select_class(&self, kind: DisKind) -> DisSpacePoints {
        let points = match kind {
            DisKind::Prime => self.primes().to_vec(),
            DisKind::Semiprime => self.semiprimes().to_vec(),
            _ => self
                .lat
                .proper_ids()
                .filter(|&i| self.is_in_class(i, kind).member)
                .collect(),
        };
        DisSpacePoints { kind, points }
    }

    /// `member[kind][sub]` for every kind in `kinds` and every subsemimodule.
    pub fn matrix(&self, kinds: &[DisKind]) -> Vec<Vec<bool>> {
        kinds
            .iter()
            .map(|&k| self.lat.ids().map(|i| self.is_in_class(i, k).member).collect())
            .collect()
    }

    fn subtractive_witness(&self, id: SubId) -> Option<ClassWitness> {
        let m = self.lat.module();
        let n = self.lat.mask(id);
        n.iter()
            .flat_map(|x| (0..m.len()).map(move |y| (x, y)))
            .find(|&(x, y)| n.contains(m.add(x, y)) && !n.contains(y))
            .map(|(x, y)| ClassWitness::Elements { x, y })
    }

    fn strong_witness(&self, id: SubId) -> Option<ClassWitness> {
        let m = self.lat.module();
        let n = self.lat.mask(id);
        (0..m.len())
            .flat_map(|x| (0..m.len()).map(move |y| (x, y)))
            .find(|&(x, y)| n.contains(m.add(x, y)) && !(n.contains(x) && n.contains(y)))
            .map(|(x, y)| ClassWitness::Elements { x, y })
    }

    fn maximal_witness(&self, id: SubId) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        self.lat
            .proper_ids()
            .find(|&k| n.is_proper_subset(self.lat.mask(k)))
            .map(|sub| ClassWitness::StrictlyAbove { sub })
    }

    /// First `(r, m)` with `rm ∈ N`, `m ∉ N` and `r` failing `accept`.
    fn scalar_witness(&self, id: SubId, accept: impl Fn(usize, usize) -> bool) -> Option<ClassWitness> {
        let m = self.lat.module();
        let n = self.lat.mask(id);
        for r in 0..m.ring().len() {
            for x in 0..m.len() {
                if n.contains(m.act(r, x)) && !n.contains(x) && !accept(r, x) {
                    return Some(ClassWitness::ScalarElement { r, m: x });
                }
            }
        }
        None
    }

    fn prime_witness(&self, id: SubId) -> Option<ClassWitness> {
        let colon = self.lat.colon(self.lat.mask(id));
        self.scalar_witness(id, |r, _| colon.contains(r))
    }

    fn primary_witness(&self, id: SubId) -> Option<ClassWitness> {
        let ring = self.lat.module().ring().clone();
        let colon = self.lat.colon(self.lat.mask(id));
        // Powers r, r^2, .. r^|R| already cover every distinct power of r.
        self.scalar_witness(id, |r, _| (1..=ring.len()).any(|k| colon.contains(ring.pow(r, k))))
    }

    fn weakly_prime_witness(&self, id: SubId) -> Option<ClassWitness> {
        let m = self.lat.module();
        let n = self.lat.mask(id);
        self.scalar_witness(id, |r, x| {
            m.act(r, x) == m.zero() || m.act_on(r, m.full_mask()).is_subset(n)
        })
    }

    fn primal_witness(&self, id: SubId) -> Option<ClassWitness> {
        let ring = self.lat.module().ring().clone();
        let prm = self.prime_to_set(self.lat.mask(id));
        let rest = prm.complement(ring.len());
        if is_ideal(&ring, rest) {
            return None;
        }
        for a in rest.iter() {
            for b in rest.iter() {
                if !rest.contains(ring.add(a, b)) {
                    return Some(ClassWitness::ComplementNotAdditive { a, b });
                }
            }
        }
        for a in rest.iter() {
            for r in 0..ring.len() {
                if !rest.contains(ring.mul(r, a)) {
                    return Some(ClassWitness::ComplementNotAbsorbing { r, a });
                }
            }
        }
        // Only reachable if zero were prime to N, which forces N = M.
        Some(ClassWitness::WholeModule)
    }

    fn semiprime_witness(&self, id: SubId) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        let above: Vec<SubsetMask> = self
            .primes()
            .iter()
            .map(|&p| self.lat.mask(p))
            .filter(|&p| n.is_subset(p))
            .collect();
        if above.is_empty() {
            return Some(ClassWitness::NoPrimeAbove);
        }
        let radical = self.lat.intersect(above);
        (radical != n).then_some(ClassWitness::NotRadical { radical })
    }

    fn extraordinary_witness(&self, id: SubId) -> Option<ClassWitness> {
        if let Some(w) = self.prime_witness(id) {
            return Some(ClassWitness::NotPrime { inner: Box::new(w) });
        }
        self.pair_witness(id, self.semiprimes())
    }

    /// First `(L, K)` from `family` with `L ∩ K ⊆ N`, `L ⊄ N`, `K ⊄ N`.
    fn pair_witness(&self, id: SubId, family: &[SubId]) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        for (i, &l) in family.iter().enumerate() {
            let lm = self.lat.mask(l);
            if lm.is_subset(n) {
                continue;
            }
            for &k in &family[i..] {
                let km = self.lat.mask(k);
                if !km.is_subset(n) && lm.intersection(km).is_subset(n) {
                    return Some(ClassWitness::Pair { first: l, second: k });
                }
            }
        }
        None
    }

    fn strongly_irreducible_witness(&self, id: SubId) -> Option<ClassWitness> {
        let all: Vec<SubId> = self.lat.ids().collect();
        self.pair_witness(id, &all)
    }

    fn strict_supersets(&self, id: SubId) -> Vec<SubId> {
        let n = self.lat.mask(id);
        self.lat
            .ids()
            .filter(|&k| n.is_proper_subset(self.lat.mask(k)))
            .collect()
    }

    fn irreducible_witness(&self, id: SubId) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        let above = self.strict_supersets(id);
        for (i, &l) in above.iter().enumerate() {
            for &k in &above[i + 1..] {
                if self.lat.mask(l).intersection(self.lat.mask(k)) == n {
                    return Some(ClassWitness::Pair { first: l, second: k });
                }
            }
        }
        None
    }

    fn completely_irreducible_witness(&self, id: SubId) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        let above = self.strict_supersets(id);
        // Any family of strict supersets meeting in N can be enlarged to all
        // of them, so it suffices to test the full family.
        let meet = self.lat.intersect(above.iter().map(|&k| self.lat.mask(k)));
        (!above.is_empty() && meet == n).then_some(ClassWitness::IntersectionOf { subs: above })
    }

    fn cyclic_witness(&self, id: SubId) -> Option<ClassWitness> {
        let n = self.lat.mask(id);
        let generated = n.iter().any(|x| self.lat.cyclic()[x] == n);
        (!generated).then_some(ClassWitness::NoSingleGenerator)
    }

    fn finitely_generated_witness(&self, id: SubId) -> Option<ClassWitness> {
        // N is generated by its own (finite) carrier.
        let n = self.lat.mask(id);
        (self.lat.generate(n) != n).then_some(ClassWitness::NoSingleGenerator)
    }

    fn minimal_witness(&self, id: SubId) -> Option<ClassWitness> {
        if id == self.lat.zero_id() {
            return Some(ClassWitness::ZeroSubmodule);
        }
        let n = self.lat.mask(id);
        self.lat
            .ids()
            .filter(|&k| k != self.lat.zero_id())
            .find(|&k| self.lat.mask(k).is_proper_subset(n))
            .map(|sub| ClassWitness::StrictlyBelow { sub })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard;
    use crate::lattice::Limits;
    use std::sync::Arc;

    fn lattice(name: &str) -> SubLattice {
        SubLattice::new(Arc::new(standard::named(name).unwrap()), &Limits::default()).unwrap()
    }

    fn id(lat: &SubLattice, elems: &[usize]) -> SubId {
        lat.id_of(SubsetMask::from_indices(elems.iter().copied())).unwrap()
    }

    #[test]
    fn kind_names_round_trip() {
        for k in DisKind::ALL {
            assert_eq!(k.as_str().parse::<DisKind>().unwrap(), k);
        }
        assert_eq!("weakly-prime".parse::<DisKind>().unwrap(), DisKind::WeaklyPrime);
        assert!("bogus".parse::<DisKind>().is_err());
        assert_eq!(DisKind::parse_list("all").unwrap().len(), 17);
    }

    #[test]
    fn n2_ideal_is_not_subtractive() {
        let lat = lattice("N2");
        let c = Classifier::new(&lat);
        let m = c.is_in_class(id(&lat, &[0, 2]), DisKind::Subtractive);
        assert!(!m.member);
        assert_eq!(m.witness, Some(ClassWitness::Elements { x: 2, y: 1 }));
    }

    #[test]
    fn plane_classes() {
        let lat = lattice("F2^2");
        let c = Classifier::new(&lat);
        assert_eq!(c.select_class(DisKind::Prime).points, vec![0, 1, 2, 3]);
        assert_eq!(c.select_class(DisKind::Maximal).points, vec![1, 2, 3]);
        assert!(c.select_class(DisKind::Strong).points.is_empty());
        assert!(c.is_in_class(2, DisKind::Prime).member);
        let zero_max = c.is_in_class(0, DisKind::Maximal);
        assert!(!zero_max.member);
        assert!(matches!(zero_max.witness, Some(ClassWitness::StrictlyAbove { .. })));
        assert_eq!(
            c.is_in_class(4, DisKind::Proper).witness,
            Some(ClassWitness::WholeModule)
        );
    }

    #[test]
    fn prime_to_sets() {
        let lat = lattice("F2^2");
        let c = Classifier::new(&lat);
        assert_eq!(c.prime_to_set(lat.mask(2)), SubsetMask::singleton(1));
        let b = lattice("B");
        let cb = Classifier::new(&b);
        assert_eq!(cb.prime_to_set(b.mask(b.zero_id())), SubsetMask::singleton(1));
        for name in standard::CURATED {
            let lat = lattice(name);
            let c = Classifier::new(&lat);
            let one = lat.module().ring().one();
            for i in lat.ids() {
                assert!(c.prime_to_set(lat.mask(i)).contains(one));
            }
        }
    }

    #[test]
    fn radical_of_zero_in_plane() {
        let lat = lattice("F2^2");
        let c = Classifier::new(&lat);
        assert_eq!(c.radical(SubsetMask::singleton(0)), SubsetMask::singleton(0));
        assert_eq!(c.radical(lat.mask(2)), lat.mask(2));
        assert_eq!(c.radical(lat.module().full_mask()), lat.module().full_mask());
    }

    #[test]
    fn definitional_implications_on_curated() {
        for name in standard::CURATED {
            let lat = lattice(name);
            let c = Classifier::new(&lat);
            for i in lat.ids() {
                let is = |k| c.is_in_class(i, k).member;
                if is(DisKind::Prime) {
                    assert!(is(DisKind::Primary) && is(DisKind::WeaklyPrime), "{name} {i}");
                }
                if is(DisKind::StronglyIrreducible) || is(DisKind::CompletelyIrreducible) {
                    assert!(is(DisKind::Irreducible), "{name} {i}");
                }
                assert_eq!(is(DisKind::MinimalPrime), is(DisKind::Minimal) && is(DisKind::Prime));
                assert!(is(DisKind::FinitelyGenerated) == (i != lat.top_id()));
            }
            assert!(DisKind::ALL
                .iter()
                .all(|&k| !c.select_class(k).points.contains(&lat.top_id())));
        }
    }
}
