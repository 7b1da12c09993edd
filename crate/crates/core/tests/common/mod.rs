//! Slow, direct reference implementations used to cross-check the library.
//! Everything here works on `BTreeSet`s and quantifies over raw tables.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use semispace::algebra::standard::{self, Standard, CURATED};
use semispace::algebra::Semimodule;
use semispace::classes::DisKind;
use semispace::verifier::{Corpus, SweepSpec};
use semispace::SubsetMask;

pub type Set = BTreeSet<usize>;

pub fn to_mask(s: &Set) -> SubsetMask {
    SubsetMask::from_indices(s.iter().copied())
}

pub fn to_set(m: SubsetMask) -> Set {
    m.iter().collect()
}

pub fn set(xs: &[usize]) -> Set {
    xs.iter().copied().collect()
}

pub fn curated(name: &str) -> Arc<Semimodule> {
    Arc::new(standard::named(name).expect("curated name"))
}

pub fn from_expr(expr: &str) -> Arc<Semimodule> {
    match standard::make_standard(expr).expect("valid expression") {
        Standard::Semiring(r) => Arc::new(standard::self_module(&r)),
        Standard::Semimodule(m) => Arc::new(m),
    }
}

/// Curated structures, a few larger ones up to 12 elements, and small
/// exhaustive sweeps.
pub fn oracle_corpus() -> Vec<(String, Arc<Semimodule>)> {
    static CORPUS: OnceLock<Vec<(String, Arc<Semimodule>)>> = OnceLock::new();
    CORPUS.get_or_init(build_oracle_corpus).clone()
}

fn build_oracle_corpus() -> Vec<(String, Arc<Semimodule>)> {
    let mut out: Vec<(String, Arc<Semimodule>)> = CURATED.iter().map(|n| (n.to_string(), curated(n))).collect();
    for e in [
        "zmod(12)",
        "product(boolean,zmod(6))",
        "vector_module(trunc_nat(2),2)",
        "vector_module(boolean,3)",
        "trunc_nat(9)",
    ] {
        out.push((e.to_string(), from_expr(e)));
    }
    for spec in ["r<=3,m<=4", "r<=2,m<=5"] {
        let c = Corpus::from_sweep(&spec.parse::<SweepSpec>().unwrap());
        out.extend(c.entries.into_iter().map(|e| (e.id, e.module)));
    }
    out
}

pub fn is_subsemimodule(m: &Semimodule, s: &Set) -> bool {
    s.contains(&m.zero())
        && s.iter().all(|&x| s.iter().all(|&y| s.contains(&m.add(x, y))))
        && (0..m.ring().len()).all(|r| s.iter().all(|&x| s.contains(&m.act(r, x))))
}

/// Every subset of the carrier, kept when closed. Ordered by numeric mask.
pub fn brute_subsemimodules(m: &Semimodule) -> Vec<Set> {
    let n = m.len();
    assert!(n <= 16);
    (0u64..1 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<Set>())
        .filter(|s| is_subsemimodule(m, s))
        .collect()
}

/// Iterated closure of `seed ∪ {0}` under sums and scalar multiples.
pub fn generated(m: &Semimodule, seed: &Set) -> Set {
    let mut s = seed.clone();
    s.insert(m.zero());
    loop {
        let mut next = s.clone();
        for &x in &s {
            for &y in &s {
                next.insert(m.add(x, y));
            }
            for r in 0..m.ring().len() {
                next.insert(m.act(r, x));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Least congruence identifying every element of `n` with zero, computed as
/// a fixpoint of reflexive, symmetric, transitive and compatible closure.
pub fn congruence_closure(m: &Semimodule, n: &Set) -> Vec<Vec<bool>> {
    let k = m.len();
    let mut rel = vec![vec![false; k]; k];
    for (x, row) in rel.iter_mut().enumerate() {
        row[x] = true;
    }
    for &a in n {
        rel[a][m.zero()] = true;
        rel[m.zero()][a] = true;
    }
    loop {
        let mut changed = false;
        let mut set = |rel: &mut Vec<Vec<bool>>, x: usize, y: usize| {
            if !rel[x][y] {
                rel[x][y] = true;
                changed = true;
            }
        };
        for x in 0..k {
            for y in 0..k {
                if !rel[x][y] {
                    continue;
                }
                set(&mut rel, y, x);
                for z in 0..k {
                    set(&mut rel, m.add(x, z), m.add(y, z));
                    if rel[y][z] {
                        set(&mut rel, x, z);
                    }
                }
                for r in 0..m.ring().len() {
                    set(&mut rel, m.act(r, x), m.act(r, y));
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Class membership decided straight from the quantified definitions.
pub struct ClassOracle<'a> {
    pub m: &'a Semimodule,
    pub subs: Vec<Set>,
    pub top: Set,
    pub primes: Vec<Set>,
    pub semiprimes: Vec<Set>,
}

impl<'a> ClassOracle<'a> {
    pub fn new(m: &'a Semimodule) -> ClassOracle<'a> {
        let subs = brute_subsemimodules(m);
        let top: Set = (0..m.len()).collect();
        let mut o = ClassOracle {
            m,
            subs,
            top,
            primes: Vec::new(),
            semiprimes: Vec::new(),
        };
        o.primes = o.subs.iter().filter(|n| o.prime(n)).cloned().collect();
        o.semiprimes = o.subs.iter().filter(|n| o.semiprime(n)).cloned().collect();
        o
    }

    fn ring_len(&self) -> usize {
        self.m.ring().len()
    }

    /// `rM ⊆ N`.
    fn annihilates(&self, r: usize, n: &Set) -> bool {
        (0..self.m.len()).all(|y| n.contains(&self.m.act(r, y)))
    }

    fn proper(&self, n: &Set) -> bool {
        *n != self.top
    }

    fn prime(&self, n: &Set) -> bool {
        self.proper(n)
            && (0..self.ring_len()).all(|r| {
                (0..self.m.len()).all(|x| !n.contains(&self.m.act(r, x)) || n.contains(&x) || self.annihilates(r, n))
            })
    }

    fn semiprime(&self, n: &Set) -> bool {
        let above: Vec<&Set> = self.primes.iter().filter(|p| n.is_subset(p)).collect();
        self.proper(n)
            && !above.is_empty()
            && above
                .iter()
                .fold(self.top.clone(), |acc, p| acc.intersection(p).copied().collect())
                == *n
    }

    pub fn radical(&self, n: &Set) -> Set {
        self.primes
            .iter()
            .filter(|p| n.is_subset(p))
            .fold(self.top.clone(), |acc, p| acc.intersection(p).copied().collect())
    }

    fn prime_to(&self, n: &Set) -> Set {
        (0..self.ring_len())
            .filter(|&r| (0..self.m.len()).all(|x| !n.contains(&self.m.act(r, x)) || n.contains(&x)))
            .collect()
    }

    fn is_ring_ideal(&self, i: &Set) -> bool {
        let r = self.m.ring();
        !i.is_empty()
            && i.iter().all(|&a| i.iter().all(|&b| i.contains(&r.add(a, b))))
            && i.iter().all(|&a| (0..r.len()).all(|s| i.contains(&r.mul(s, a))))
    }

    fn strictly_above(&self, n: &Set) -> Vec<&Set> {
        self.subs.iter().filter(|k| n.is_subset(k) && k != &n).collect()
    }

    pub fn member(&self, n: &Set, kind: DisKind) -> bool {
        let m = self.m;
        let all = 0..m.len();
        if !self.proper(n) {
            return false;
        }
        match kind {
            DisKind::Proper => true,
            DisKind::Subtractive => n
                .iter()
                .all(|&x| all.clone().all(|y| !n.contains(&m.add(x, y)) || n.contains(&y))),
            DisKind::Strong => all.clone().all(|x| {
                all.clone()
                    .all(|y| !n.contains(&m.add(x, y)) || (n.contains(&x) && n.contains(&y)))
            }),
            DisKind::Maximal => self.subs.iter().all(|k| !self.proper(k) || !n.is_subset(k) || k == n),
            DisKind::Prime => self.prime(n),
            DisKind::Primary => (0..self.ring_len()).all(|r| {
                all.clone().all(|x| {
                    !n.contains(&m.act(r, x))
                        || n.contains(&x)
                        || (1..=self.ring_len()).any(|k| self.annihilates(m.ring().pow(r, k), n))
                })
            }),
            DisKind::WeaklyPrime => (0..self.ring_len()).all(|r| {
                all.clone().all(|x| {
                    let rx = m.act(r, x);
                    rx == m.zero() || !n.contains(&rx) || n.contains(&x) || self.annihilates(r, n)
                })
            }),
            DisKind::Primal => {
                let prm = self.prime_to(n);
                let rest: Set = (0..self.ring_len()).filter(|r| !prm.contains(r)).collect();
                self.is_ring_ideal(&rest)
            }
            DisKind::Semiprime => self.semiprime(n),
            DisKind::Extraordinary => {
                self.prime(n)
                    && self.semiprimes.iter().all(|l| {
                        self.semiprimes.iter().all(|k| {
                            let meet: Set = l.intersection(k).copied().collect();
                            !meet.is_subset(n) || l.is_subset(n) || k.is_subset(n)
                        })
                    })
            }
            DisKind::StronglyIrreducible => self.subs.iter().all(|l| {
                self.subs.iter().all(|k| {
                    let meet: Set = l.intersection(k).copied().collect();
                    !meet.is_subset(n) || l.is_subset(n) || k.is_subset(n)
                })
            }),
            DisKind::Irreducible => {
                let above = self.strictly_above(n);
                above
                    .iter()
                    .all(|l| above.iter().all(|k| l.intersection(k).copied().collect::<Set>() != *n))
            }
            DisKind::CompletelyIrreducible => {
                // In a finite lattice: exactly one upper cover.
                let above = self.strictly_above(n);
                let covers = above
                    .iter()
                    .filter(|u| above.iter().all(|v| !(v.is_subset(u) && v != *u)))
                    .count();
                covers == 1
            }
            DisKind::Cyclic => n.iter().any(|&x| generated(m, &set(&[x])) == *n),
            DisKind::FinitelyGenerated => true,
            DisKind::Minimal => n.len() > 1 && self.subs.iter().all(|k| k.len() == 1 || !k.is_subset(n) || k == n),
            DisKind::MinimalPrime => self.prime(n) && self.member(n, DisKind::Minimal),
        }
    }
}

/// A finite topology given by a closed subbasis over points `0..n`, with
/// point sets as bit masks.
pub struct TopOracle {
    pub n: usize,
    pub closed: BTreeSet<u64>,
}

pub fn bits(s: &Set) -> u64 {
    s.iter().fold(0, |acc, &p| acc | 1 << p)
}

pub fn unbits(b: u64) -> Set {
    (0..64).filter(|p| b >> p & 1 == 1).collect()
}

impl TopOracle {
    /// Closes `subbasis ∪ {∅, X}` under pairwise unions and intersections.
    pub fn new(n: usize, subbasis: impl IntoIterator<Item = Set>) -> TopOracle {
        assert!(n < 64);
        let all = (1u64 << n) - 1;
        let mut closed: BTreeSet<u64> = subbasis.into_iter().map(|s| bits(&s)).collect();
        closed.insert(0);
        closed.insert(all);
        loop {
            let cur: Vec<u64> = closed.iter().copied().collect();
            let before = closed.len();
            for &a in &cur {
                for &b in &cur {
                    closed.insert(a | b);
                    closed.insert(a & b);
                }
            }
            if closed.len() == before {
                return TopOracle { n, closed };
            }
        }
    }

    fn all(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn closed_sets(&self) -> BTreeSet<Set> {
        self.closed.iter().map(|&c| unbits(c)).collect()
    }

    pub fn closure(&self, s: &Set) -> Set {
        let s = bits(s);
        unbits(
            self.closed
                .iter()
                .filter(|&&c| s & !c == 0)
                .fold(self.all(), |acc, &c| acc & c),
        )
    }

    pub fn t0(&self) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| self.closure(&set(&[p])) != self.closure(&set(&[q]))))
    }

    pub fn t1(&self) -> bool {
        (0..self.n).all(|p| self.closed.contains(&(1 << p)))
    }

    pub fn irreducible(&self, f: u64) -> bool {
        let proper: Vec<u64> = self.closed.iter().copied().filter(|&a| a & !f == 0 && a != f).collect();
        f != 0 && proper.iter().all(|&a| proper.iter().all(|&b| a | b != f))
    }

    pub fn sober(&self) -> bool {
        self.closed.iter().filter(|&&f| self.irreducible(f)).all(|&f| {
            unbits(f)
                .iter()
                .filter(|&&p| bits(&self.closure(&set(&[p]))) == f)
                .count()
                == 1
        })
    }

    pub fn connected(&self) -> bool {
        let all = self.all();
        self.closed
            .iter()
            .all(|&c| c == 0 || c == all || !self.closed.contains(&(all & !c)))
    }
}
