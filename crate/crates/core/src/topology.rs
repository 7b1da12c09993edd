//! The topology on a point set `Dis_M` generated by the closed subbasis
//! `{V(N) | N ∈ Sub_M}`, with `V(N) = {L ∈ Dis_M | N ⊆ L}`.
//!
//! Small spaces (see [`Limits::max_eager_points`]) get their closed basis
//! (finite unions of subbasis sets) and all closed sets (intersections of
//! basis sets) materialized as [`PointSet`]s. Larger spaces answer closure
//! queries from the subbasis alone, using that a finite space's closed sets
//! are exactly the unions of point closures.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{PointSet, SubsetMask};
use crate::classes::{Classifier, DisKind, DisSpacePoints};
use crate::error::{Error, Result};
use crate::lattice::{escape, Limits, SubId, SubLattice};

/// Index of a point within its space (position in [`SubbasisSpace::points`]).
pub type PointId = usize;

struct Materialized {
    basis: Vec<PointSet>,
    closed: Vec<PointSet>,
    closed_lookup: HashSet<PointSet>,
    basis_lookup: HashSet<PointSet>,
}

pub struct SubbasisSpace {
    lattice: Arc<SubLattice>,
    kind: Option<DisKind>,
    points: Vec<SubId>,
    point_of: HashMap<SubId, PointId>,
    subbasis: Vec<PointSet>,
    point_closures: Vec<PointSet>,
    families: Option<Materialized>,
}

impl std::fmt::Debug for SubbasisSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubbasisSpace")
            .field("kind", &self.kind)
            .field("points", &self.points)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub t0: bool,
    pub t1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoberReport {
    pub sober: bool,
    /// A nonempty irreducible closed set without exactly one generic point.
    pub offending: Option<Vec<PointId>>,
}

/// A closed set written as a union of subbasis sets `V(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionOfV {
    pub points: Vec<PointId>,
    pub generators: Vec<SubId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub subbasis_strongly_disconnects: bool,
    pub basis_strongly_disconnects: bool,
    /// Two subsemimodules whose V-sets split the space.
    pub subbasis_witness: Option<(SubId, SubId)>,
    pub basis_witness: Option<(UnionOfV, UnionOfV)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccReport {
    pub holds: bool,
    /// A proper subsemimodule with empty V-set.
    pub witness: Option<SubId>,
}

pub fn build_space(points: &DisSpacePoints, lattice: Arc<SubLattice>, limits: &Limits) -> Result<SubbasisSpace> {
    SubbasisSpace::new(lattice, Some(points.kind), points.points.clone(), limits)
}

impl SubbasisSpace {
    /// Space on an arbitrary set of proper subsemimodules.
    pub fn new(
        lattice: Arc<SubLattice>,
        kind: Option<DisKind>,
        mut points: Vec<SubId>,
        limits: &Limits,
    ) -> Result<SubbasisSpace> {
        points.sort_unstable();
        points.dedup();
        if let Some(&bad) = points.iter().find(|&&p| p >= lattice.len() || p == lattice.top_id()) {
            return Err(Error::Malformed(format!("{bad} is not a proper subsemimodule id")));
        }
        let point_of: HashMap<SubId, PointId> = points.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = points.len();
        let subbasis: Vec<PointSet> = lattice
            .ids()
            .map(|id| {
                let nm = lattice.mask(id);
                PointSet::from_indices(n, (0..n).filter(|&p| nm.is_subset(lattice.mask(points[p]))))
            })
            .collect();
        let point_closures = (0..n)
            .map(|p| {
                // Intersection of every subbasis set containing p.
                subbasis
                    .iter()
                    .filter(|v| v.contains(p))
                    .fold(PointSet::full(n), |acc, v| acc.intersection(v))
            })
            .collect();
        let mut space = SubbasisSpace {
            lattice,
            kind,
            points,
            point_of,
            subbasis,
            point_closures,
            families: None,
        };
        if n <= limits.max_eager_points {
            space.families = Some(space.materialize(limits.max_closed_sets)?);
        }
        Ok(space)
    }

    /// Builds the space of the given class over `lattice`.
    pub fn for_kind(lattice: Arc<SubLattice>, kind: DisKind, limits: &Limits) -> Result<SubbasisSpace> {
        let pts = Classifier::new(&lattice).select_class(kind);
        build_space(&pts, lattice, limits)
    }

    fn materialize(&self, cap: usize) -> Result<Materialized> {
        let n = self.points.len();
        let refuse = |actual| Error::SizeCap {
            what: "closed-set family",
            actual,
            cap,
        };
        let generators: Vec<PointSet> = {
            let mut g = self.subbasis.clone();
            g.sort();
            g.dedup();
            g
        };
        let mut basis_lookup: HashSet<PointSet> = generators.iter().cloned().collect();
        let mut work = generators.clone();
        while let Some(b) = work.pop() {
            for g in &generators {
                let u = b.union(g);
                if !basis_lookup.contains(&u) {
                    basis_lookup.insert(u.clone());
                    if basis_lookup.len() > cap {
                        return Err(refuse(basis_lookup.len()));
                    }
                    work.push(u);
                }
            }
        }
        let mut basis: Vec<PointSet> = basis_lookup.iter().cloned().collect();
        basis.sort();

        let mut closed_lookup: HashSet<PointSet> = basis_lookup.clone();
        closed_lookup.insert(PointSet::empty(n));
        closed_lookup.insert(PointSet::full(n));
        let mut work: Vec<PointSet> = closed_lookup.iter().cloned().collect();
        while let Some(c) = work.pop() {
            for b in &basis {
                let i = c.intersection(b);
                if !closed_lookup.contains(&i) {
                    closed_lookup.insert(i.clone());
                    if closed_lookup.len() > cap {
                        return Err(refuse(closed_lookup.len()));
                    }
                    work.push(i);
                }
            }
        }
        let mut closed: Vec<PointSet> = closed_lookup.iter().cloned().collect();
        closed.sort();
        Ok(Materialized {
            basis,
            closed,
            closed_lookup,
            basis_lookup,
        })
    }

    pub fn lattice(&self) -> &Arc<SubLattice> {
        &self.lattice
    }

    pub fn kind(&self) -> Option<DisKind> {
        self.kind
    }

    /// Lattice ids of the points, ascending.
    pub fn points(&self) -> &[SubId] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_of(&self, sub: SubId) -> Option<PointId> {
        self.point_of.get(&sub).copied()
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn none(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn is_materialized(&self) -> bool {
        self.families.is_some()
    }

    /// `V(N)` for `N ∈ Sub_M`.
    pub fn v_set(&self, n: SubId) -> &PointSet {
        &self.subbasis[n]
    }

    /// `V(S)` for an arbitrary subset `S` of the carrier.
    pub fn v_of_subset(&self, s: SubsetMask) -> PointSet {
        PointSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&p| s.is_subset(self.lattice.mask(self.points[p]))),
        )
    }

    pub fn subbasis(&self) -> &[PointSet] {
        &self.subbasis
    }

    /// Deduplicated closed basis, if materialized.
    pub fn basis(&self) -> Option<&[PointSet]> {
        self.families.as_ref().map(|f| f.basis.as_slice())
    }

    /// Every closed set, if materialized.
    pub fn closed_sets(&self) -> Option<&[PointSet]> {
        self.families.as_ref().map(|f| f.closed.as_slice())
    }

    pub fn is_basis_set(&self, s: &PointSet) -> bool {
        match &self.families {
            Some(f) => f.basis_lookup.contains(s),
            None => self.is_closed(s),
        }
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        match &self.families {
            Some(f) => f.closed_lookup.contains(s),
            None => self.closure(s) == *s,
        }
    }

    /// Least closed set containing `s`.
    pub fn closure(&self, s: &PointSet) -> PointSet {
        match &self.families {
            Some(f) => f
                .closed
                .iter()
                .filter(|c| s.is_subset(c))
                .fold(self.all(), |acc, c| acc.intersection(c)),
            None => s.iter().fold(self.none(), |acc, p| acc.union(&self.point_closures[p])),
        }
    }

    pub fn point_closure(&self, p: PointId) -> PointSet {
        self.closure(&PointSet::from_indices(self.len(), [p]))
    }

    /// `le[p][q]` iff `q ∈ closure({p})`.
    pub fn specialization(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|p| {
                let c = self.point_closure(p);
                (0..self.len()).map(|q| c.contains(q)).collect()
            })
            .collect()
    }

    /// Cover pairs `(p, q)` of the specialization order, `p ≼ q`.
    pub fn specialization_hasse(&self) -> Vec<(PointId, PointId)> {
        let le = self.specialization();
        let n = self.len();
        let strict = |p: usize, q: usize| p != q && le[p][q] && !le[q][p];
        let mut edges = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if strict(p, q) && !(0..n).any(|r| strict(p, r) && strict(r, q)) {
                    edges.push((p, q));
                }
            }
        }
        edges
    }

    pub fn separation_report(&self) -> SeparationReport {
        let le = self.specialization();
        let n = self.len();
        let t0 = (0..n).all(|p| (0..n).all(|q| p == q || !(le[p][q] && le[q][p])));
        let t1 = (0..n).all(|p| self.point_closure(p).count() == 1);
        SeparationReport { t0, t1 }
    }

    fn require_closed(&self, s: &PointSet) -> Result<()> {
        if self.is_closed(s) {
            Ok(())
        } else {
            Err(Error::NotClosed(format!("{:?}", self.point_labels(s))))
        }
    }

    /// Nonempty and not the union of two properly smaller closed sets.
    pub fn irreducible_closed(&self, s: &PointSet) -> Result<bool> {
        self.require_closed(s)?;
        if s.is_empty() {
            return Ok(false);
        }
        Ok(match &self.families {
            // Closed sets are closed under finite unions, so a cover by two
            // proper closed subsets exists iff all of them together cover s.
            Some(f) => {
                let cover = f
                    .closed
                    .iter()
                    .filter(|c| c.is_subset(s) && *c != s)
                    .fold(self.none(), |acc, c| acc.union(c));
                cover != *s
            }
            None => s.iter().any(|p| self.point_closures[p] == *s),
        })
    }

    /// Points whose closure is exactly `s`.
    pub fn generic_points(&self, s: &PointSet) -> Result<Vec<PointId>> {
        self.require_closed(s)?;
        Ok(s.iter().filter(|&p| self.point_closure(p) == *s).collect())
    }

    pub fn is_sober(&self) -> SoberReport {
        let offending = match &self.families {
            Some(f) => f.closed.iter().find(|c| {
                self.irreducible_closed(c).expect("member of the closed family")
                    && self.generic_points(c).expect("closed").len() != 1
            }),
            // Irreducible closed sets of a finite space are point closures.
            None => None,
        };
        if let Some(c) = offending {
            return SoberReport {
                sober: false,
                offending: Some(c.iter().collect()),
            };
        }
        if self.families.is_none() {
            let closures: Vec<&PointSet> = self.point_closures.iter().collect();
            for (p, c) in closures.iter().enumerate() {
                if closures.iter().enumerate().any(|(q, d)| q != p && d == c) {
                    return SoberReport {
                        sober: false,
                        offending: Some(c.iter().collect()),
                    };
                }
            }
        }
        SoberReport {
            sober: true,
            offending: None,
        }
    }

    pub fn connectivity_report(&self) -> ConnectivityReport {
        let all = self.all();
        let splits = |a: &PointSet| !a.is_empty() && !a.is_full();
        let connected = match &self.families {
            Some(f) => !f
                .closed
                .iter()
                .any(|c| splits(c) && f.closed_lookup.contains(&c.complement())),
            None => self.components() <= 1,
        };

        let mut subbasis_witness = None;
        'outer: for a in self.lattice.ids() {
            let va = &self.subbasis[a];
            if !splits(va) {
                continue;
            }
            for b in self.lattice.ids() {
                let vb = &self.subbasis[b];
                if !vb.is_empty() && va.is_disjoint(vb) && va.union(vb) == all {
                    subbasis_witness = Some((a, b));
                    break 'outer;
                }
            }
        }

        let basis_witness = match &self.families {
            Some(f) => f
                .basis
                .iter()
                .find(|b| splits(b) && f.basis_lookup.contains(&b.complement()))
                .map(|b| (self.as_union_of_v(b), self.as_union_of_v(&b.complement()))),
            None if !connected => {
                let comp = self.component_of(0);
                Some((self.as_union_of_v(&comp), self.as_union_of_v(&comp.complement())))
            }
            None => None,
        };

        ConnectivityReport {
            connected,
            subbasis_strongly_disconnects: subbasis_witness.is_some(),
            basis_strongly_disconnects: basis_witness.is_some(),
            subbasis_witness,
            basis_witness,
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn component_of(&self, start: PointId) -> PointSet {
        let le = self.specialization();
        let mut comp = PointSet::from_indices(self.len(), [start]);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for q in 0..self.len() {
                if (le[p][q] || le[q][p]) && !comp.contains(q) {
                    comp.insert(q);
                    stack.push(q);
                }
            }
        }
        comp
    }

    fn components(&self) -> usize {
        let mut seen = self.none();
        let mut count = 0;
        for p in 0..self.len() {
            if !seen.contains(p) {
                seen = seen.union(&self.component_of(p));
                count += 1;
            }
        }
        count
    }

    /// A short representation of a basis set as a union of `V(N)`s:
    /// the inclusion-maximal subbasis sets inside it, with redundant ones
    /// dropped. `generators` is empty for the empty set.
    pub fn as_union_of_v(&self, b: &PointSet) -> UnionOfV {
        let mut seen: HashSet<&PointSet> = HashSet::new();
        let mut cands: Vec<SubId> = Vec::new();
        for id in self.lattice.ids() {
            let v = &self.subbasis[id];
            if !v.is_empty() && v.is_subset(b) && seen.insert(v) {
                cands.push(id);
            }
        }
        let maximal: Vec<SubId> = cands
            .iter()
            .copied()
            .filter(|&i| {
                !cands.iter().any(|&j| {
                    j != i && self.subbasis[i].is_subset(&self.subbasis[j]) && self.subbasis[i] != self.subbasis[j]
                })
            })
            .collect();
        let mut kept = maximal.clone();
        for &i in &maximal {
            let rest = kept
                .iter()
                .filter(|&&j| j != i)
                .fold(self.none(), |acc, &j| acc.union(&self.subbasis[j]));
            if rest == *b {
                kept.retain(|&j| j != i);
            }
        }
        UnionOfV {
            points: b.iter().collect(),
            generators: kept,
        }
    }

    /// `N^ω`: intersection of the points above `N`, `M` if there are none.
    pub fn omega(&self, n: SubId) -> SubsetMask {
        self.lattice
            .intersect(self.subbasis[n].iter().map(|p| self.lattice.mask(self.points[p])))
    }

    /// Every proper `N` has a nonempty `V(N)`.
    pub fn scc_check(&self) -> SccReport {
        let witness = self.lattice.proper_ids().find(|&n| self.subbasis[n].is_empty());
        SccReport {
            holds: witness.is_none(),
            witness,
        }
    }

    /// Point ids mapped to the element-set rendering of their subsemimodule.
    pub fn point_labels(&self, s: &PointSet) -> Vec<String> {
        s.iter().map(|p| self.lattice.show(self.points[p])).collect()
    }

    pub fn point_label(&self, p: PointId) -> String {
        self.lattice.show(self.points[p])
    }

    /// Specialization Hasse diagram in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph specialization {\n  rankdir=BT;\n  node [shape=box];\n");
        for p in 0..self.len() {
            let _ = writeln!(out, "  p{p} [label=\"{}\"];", escape(&self.point_label(p)));
        }
        for (p, q) in self.specialization_hasse() {
            let _ = writeln!(out, "  p{p} -> p{q};");
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> SpaceReport {
        let show_union = |u: &UnionOfV| LabelledUnion {
            points: u.points.iter().map(|&p| self.point_label(p)).collect(),
            generators: u.generators.iter().map(|&g| self.lattice.show(g)).collect(),
        };
        let conn = self.connectivity_report();
        let sober = self.is_sober();
        let scc = self.scc_check();
        SpaceReport {
            kind: self.kind.map(|k| k.to_string()),
            points: (0..self.len()).map(|p| self.point_label(p)).collect(),
            subbasis: self
                .lattice
                .ids()
                .map(|n| SubbasisEntry {
                    n: self.lattice.show(n),
                    v: self.point_labels(&self.subbasis[n]),
                })
                .collect(),
            basis_count: self.basis().map(|b| b.len()),
            closed_count: self.closed_sets().map(|c| c.len()),
            separation: self.separation_report(),
            sober: sober.sober,
            sober_offending: sober
                .offending
                .map(|o| o.iter().map(|&p| self.point_label(p)).collect()),
            scc_holds: scc.holds,
            scc_witness: scc.witness.map(|w| self.lattice.show(w)),
            connectivity: ConnectivityLabels {
                connected: conn.connected,
                subbasis_strongly_disconnects: conn.subbasis_strongly_disconnects,
                basis_strongly_disconnects: conn.basis_strongly_disconnects,
                subbasis_witness: conn
                    .subbasis_witness
                    .map(|(a, b)| (self.lattice.show(a), self.lattice.show(b))),
                basis_witness: conn.basis_witness.as_ref().map(|(a, b)| (show_union(a), show_union(b))),
            },
            specialization_hasse: self
                .specialization_hasse()
                .into_iter()
                .map(|(p, q)| (self.point_label(p), self.point_label(q)))
                .collect(),
            conventions: match self.kind {
                Some(DisKind::Strong) => format!("{CONVENTIONS}; {}", crate::classes::STRONG_READING),
                _ => CONVENTIONS.to_string(),
            },
        }
    }
}

pub const CONVENTIONS: &str =
    "empty space: connected, T0, T1 and sober hold vacuously; irreducible closed sets are nonempty";

#[derive(Clone, Debug, Serialize)]
pub struct SubbasisEntry {
    pub n: String,
    pub v: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledUnion {
    pub points: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityLabels {
    pub connected: bool,
    pub subbasis_strongly_disconnects: bool,
    pub basis_strongly_disconnects: bool,
    pub subbasis_witness: Option<(String, String)>,
    pub basis_witness: Option<(LabelledUnion, LabelledUnion)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceReport {
    pub kind: Option<String>,
    pub points: Vec<String>,
    pub subbasis: Vec<SubbasisEntry>,
    pub basis_count: Option<usize>,
    pub closed_count: Option<usize>,
    pub separation: SeparationReport,
    pub sober: bool,
    pub sober_offending: Option<Vec<String>>,
    pub scc_holds: bool,
    pub scc_witness: Option<String>,
    pub connectivity: ConnectivityLabels,
    pub specialization_hasse: Vec<(String, String)>,
    pub conventions: String,
}
