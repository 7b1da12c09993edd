//! The lattice `Sub_M` of all subsemimodules of a finite semimodule.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::Semimodule;
use crate::bits::SubsetMask;
use crate::error::{Error, Result};

/// Index of a subsemimodule within its [`SubLattice`].
pub type SubId = usize;

/// Resource caps. Exceeding one is an explicit refusal, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_module: usize,
    pub max_lattice: usize,
    /// Spaces with at most this many points get their closed sets
    /// materialized eagerly.
    pub max_eager_points: usize,
    pub max_closed_sets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_module: 16,
            max_lattice: 4096,
            max_eager_points: 20,
            max_closed_sets: 1 << 20,
        }
    }
}

/// All subsemimodules of a module, in canonical (numeric mask) order.
pub struct SubLattice {
    module: Arc<Semimodule>,
    subs: Vec<SubsetMask>,
    index: HashMap<SubsetMask, SubId>,
    zero_id: SubId,
    top_id: SubId,
    cyclic: Vec<SubsetMask>,
    hasse: OnceLock<Vec<(SubId, SubId)>>,
    sum_table: OnceLock<Vec<SubId>>,
}

impl std::fmt::Debug for SubLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubLattice")
            .field("module", &self.module)
            .field("subs", &self.subs)
            .finish()
    }
}

/// Enumerates `Sub_M` by closing the cyclic subsemimodules under sums.
pub fn enumerate_subsemimodules(module: &Arc<Semimodule>, limits: &Limits) -> Result<SubLattice> {
    SubLattice::new(module.clone(), limits)
}

impl SubLattice {
    pub fn new(module: Arc<Semimodule>, limits: &Limits) -> Result<SubLattice> {
        if module.len() > limits.max_module {
            return Err(Error::SizeCap {
                what: "module size",
                actual: module.len(),
                cap: limits.max_module,
            });
        }
        let cyclic: Vec<SubsetMask> = (0..module.len())
            .map(|x| module.generate(SubsetMask::singleton(x)))
            .collect();
        let mut generators: Vec<SubsetMask> = cyclic.clone();
        generators.sort_unstable();
        generators.dedup();

        let mut found: BTreeSet<SubsetMask> = BTreeSet::new();
        let mut work = vec![module.zero_mask()];
        found.insert(module.zero_mask());
        while let Some(s) = work.pop() {
            for &c in &generators {
                if c.is_subset(s) {
                    continue;
                }
                let t = module.generate(s.union(c));
                if found.insert(t) {
                    if found.len() > limits.max_lattice {
                        return Err(Error::SizeCap {
                            what: "subsemimodule lattice",
                            actual: found.len(),
                            cap: limits.max_lattice,
                        });
                    }
                    work.push(t);
                }
            }
        }
        let subs: Vec<SubsetMask> = found.into_iter().collect();
        let index: HashMap<SubsetMask, SubId> = subs.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let zero_id = index[&module.zero_mask()];
        let top_id = index[&module.full_mask()];
        Ok(SubLattice {
            module,
            subs,
            index,
            zero_id,
            top_id,
            cyclic,
            hasse: OnceLock::new(),
            sum_table: OnceLock::new(),
        })
    }

    pub fn module(&self) -> &Arc<Semimodule> {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn subs(&self) -> &[SubsetMask] {
        &self.subs
    }

    #[inline]
    pub fn mask(&self, id: SubId) -> SubsetMask {
        self.subs[id]
    }

    pub fn id_of(&self, m: SubsetMask) -> Option<SubId> {
        self.index.get(&m).copied()
    }

    pub fn zero_id(&self) -> SubId {
        self.zero_id
    }

    pub fn top_id(&self) -> SubId {
        self.top_id
    }

    pub fn ids(&self) -> std::ops::Range<SubId> {
        0..self.subs.len()
    }

    /// Ids of all subsemimodules other than `M`.
    pub fn proper_ids(&self) -> impl Iterator<Item = SubId> + '_ {
        self.ids().filter(move |&i| i != self.top_id)
    }

    /// `⟨x⟩` for each element `x`.
    pub fn cyclic(&self) -> &[SubsetMask] {
        &self.cyclic
    }

    pub fn generate(&self, s: SubsetMask) -> SubsetMask {
        self.module.generate(s)
    }

    /// Id of the subsemimodule generated by `s`.
    pub fn generated_id(&self, s: SubsetMask) -> SubId {
        self.index[&self.generate(s)]
    }

    /// Sum of a family; the empty sum is `{0}`.
    pub fn sum<I: IntoIterator<Item = SubsetMask>>(&self, family: I) -> SubsetMask {
        let union = family.into_iter().fold(SubsetMask::EMPTY, SubsetMask::union);
        self.generate(union)
    }

    /// Intersection of a family; the empty intersection is `M`.
    pub fn intersect<I: IntoIterator<Item = SubsetMask>>(&self, family: I) -> SubsetMask {
        family
            .into_iter()
            .fold(self.module.full_mask(), SubsetMask::intersection)
    }

    /// `N + K` by id, through a lazily built table.
    pub fn sum_id(&self, a: SubId, b: SubId) -> SubId {
        let n = self.subs.len();
        let table = self.sum_table.get_or_init(|| {
            let mut t = vec![0; n * n];
            for i in 0..n {
                for j in i..n {
                    let s = self.index[&self.generate(self.subs[i].union(self.subs[j]))];
                    t[i * n + j] = s;
                    t[j * n + i] = s;
                }
            }
            t
        });
        table[a * n + b]
    }

    pub fn meet_id(&self, a: SubId, b: SubId) -> SubId {
        self.index[&self.subs[a].intersection(self.subs[b])]
    }

    /// `(N : M) = {r | rM ⊆ N}`, as a mask over the semiring carrier.
    pub fn colon(&self, n: SubsetMask) -> SubsetMask {
        let m = &self.module;
        SubsetMask::from_indices((0..m.ring().len()).filter(|&r| (0..m.len()).all(|x| n.contains(m.act(r, x)))))
    }

    /// Intersection of the given primes that contain `n`; `M` if none do.
    pub fn radical(&self, n: SubsetMask, primes: &[SubsetMask]) -> SubsetMask {
        self.intersect(primes.iter().copied().filter(|&p| n.is_subset(p)))
    }

    /// `{x | x + a = b for some a, b ∈ N}`, the least subtractive
    /// subsemimodule containing `N`.
    pub fn subtractive_closure(&self, n: SubsetMask) -> SubsetMask {
        let m = &self.module;
        SubsetMask::from_indices((0..m.len()).filter(|&x| n.iter().any(|a| n.contains(m.add(x, a)))))
    }

    /// Cover relation of inclusion as `(lower, upper)` pairs.
    pub fn hasse(&self) -> &[(SubId, SubId)] {
        self.hasse.get_or_init(|| {
            let mut edges = Vec::new();
            for (j, &upper) in self.subs.iter().enumerate() {
                let below: Vec<SubId> = self.ids().filter(|&i| self.subs[i].is_proper_subset(upper)).collect();
                for &i in &below {
                    let covered = below.iter().any(|&k| self.subs[i].is_proper_subset(self.subs[k]));
                    if !covered {
                        edges.push((i, j));
                    }
                }
            }
            edges.sort_unstable();
            edges
        })
    }

    pub fn show(&self, id: SubId) -> String {
        self.module.show(self.subs[id])
    }

    pub fn report(&self) -> LatticeReport {
        LatticeReport {
            elements: self.module.labels().to_vec(),
            subsemimodules: self
                .ids()
                .map(|i| SubEntry {
                    id: i,
                    elements: self.module.mask_labels(self.subs[i]),
                })
                .collect(),
            hasse: self.hasse().to_vec(),
        }
    }

    /// Inclusion Hasse diagram in Graphviz DOT, edges pointing upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sub {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in self.ids() {
            let _ = writeln!(out, "  s{i} [label=\"{}\"];", escape(&self.show(i)));
        }
        for &(a, b) in self.hasse() {
            let _ = writeln!(out, "  s{a} -> s{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Clone, Debug, Serialize)]
pub struct SubEntry {
    pub id: SubId,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub elements: Vec<String>,
    pub subsemimodules: Vec<SubEntry>,
    pub hasse: Vec<(SubId, SubId)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard;
    use proptest::prelude::*;

    fn lattice(name: &str) -> SubLattice {
        SubLattice::new(Arc::new(standard::named(name).unwrap()), &Limits::default()).unwrap()
    }

    fn brute(m: &Semimodule) -> Vec<SubsetMask> {
        (0..1u64 << m.len())
            .map(SubsetMask)
            .filter(|&s| m.is_subsemimodule(s))
            .collect()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(lattice("F2^2").len(), 5);
        assert_eq!(lattice("B").len(), 2);
        let n2 = lattice("N2");
        assert_eq!(
            n2.subs(),
            [
                SubsetMask::from_indices([0]),
                SubsetMask::from_indices([0, 2]),
                SubsetMask::from_indices([0, 1, 2])
            ]
        );
    }

    #[test]
    fn matches_subset_scan_on_curated() {
        for name in standard::CURATED {
            let l = lattice(name);
            assert_eq!(l.subs(), brute(l.module()).as_slice(), "{name}");
        }
    }

    #[test]
    fn size_caps_refuse() {
        let m = Arc::new(standard::named("F2^3").unwrap());
        let tight = Limits {
            max_module: 4,
            ..Limits::default()
        };
        assert!(matches!(SubLattice::new(m.clone(), &tight), Err(Error::SizeCap { .. })));
        let tight = Limits {
            max_lattice: 10,
            ..Limits::default()
        };
        assert!(matches!(SubLattice::new(m, &tight), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn sums_meets_and_colons() {
        let l = lattice("F2^2");
        let a = SubsetMask::from_indices([0, 2]);
        let b = SubsetMask::from_indices([0, 1]);
        assert_eq!(l.sum([a, b]), SubsetMask::full(4));
        assert_eq!(l.sum([]), SubsetMask::singleton(0));
        assert_eq!(l.intersect([a, b]), SubsetMask::singleton(0));
        assert_eq!(l.intersect([]), SubsetMask::full(4));
        assert_eq!(l.colon(SubsetMask::singleton(0)), SubsetMask::singleton(0));
        assert_eq!(l.colon(SubsetMask::full(4)), SubsetMask::full(2));
        let n2 = lattice("N2");
        assert_eq!(
            n2.colon(SubsetMask::from_indices([0, 2])),
            SubsetMask::from_indices([0, 2])
        );
        assert_eq!(
            n2.sum([SubsetMask::from_indices([0, 2]); 2]),
            SubsetMask::from_indices([0, 2])
        );
    }

    #[test]
    fn subtractive_closure_in_n2() {
        let l = lattice("N2");
        assert_eq!(
            l.subtractive_closure(SubsetMask::from_indices([0, 2])),
            SubsetMask::full(3)
        );
        assert_eq!(
            l.subtractive_closure(SubsetMask::singleton(0)),
            SubsetMask::singleton(0)
        );
    }

    #[test]
    fn hasse_of_plane() {
        let l = lattice("F2^2");
        // 0 < three lines < M
        assert_eq!(l.hasse(), [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
        assert!(l.to_dot().contains("s0 -> s1;"));
    }

    proptest! {
        #[test]
        fn generate_is_a_closure_operator(name in prop::sample::select(standard::CURATED.to_vec()), a in any::<u64>(), b in any::<u64>()) {
            let l = lattice(name);
            let full = l.module().full_mask();
            let s = SubsetMask(a).intersection(full);
            let t = s.union(SubsetMask(b).intersection(full));
            let gs = l.generate(s);
            prop_assert!(s.is_subset(gs));
            prop_assert!(gs.is_subset(l.generate(t)));
            prop_assert_eq!(l.generate(gs), gs);
            prop_assert!(l.id_of(gs).is_some());
        }
    }
}
