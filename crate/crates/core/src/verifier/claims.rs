//! The registry of checkable claims. Each claim has a descriptive id, the
//! anchor label of the statement it checks, and the scope it runs over.

use serde::Serialize;

use crate::classes::DisKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// One row per (structure, kind).
    Space,
    /// One row per (homomorphism, kind) where contraction holds.
    Map,
    /// One row per (structure, subsemimodule, kind) where the Bourne
    /// projection has the contraction property.
    Quotient,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClaimDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    /// Kinds the claim is stated for; empty means every kind.
    #[serde(skip)]
    pub kinds: &'static [DisKind],
}

const fn space(id: &'static str, anchor: &'static str, statement: &'static str) -> ClaimDef {
    ClaimDef {
        id,
        anchor,
        statement,
        scope: Scope::Space,
        kinds: &[],
    }
}

const fn space_for(
    id: &'static str,
    anchor: &'static str,
    statement: &'static str,
    kinds: &'static [DisKind],
) -> ClaimDef {
    ClaimDef {
        id,
        anchor,
        statement,
        scope: Scope::Space,
        kinds,
    }
}

const fn scoped(id: &'static str, anchor: &'static str, statement: &'static str, scope: Scope) -> ClaimDef {
    ClaimDef {
        id,
        anchor,
        statement,
        scope,
        kinds: &[],
    }
}

pub const RADICAL_EQUALITY_KINDS: &[DisKind] = &[DisKind::Prime, DisKind::MinimalPrime, DisKind::Maximal];
pub const SOBER_KINDS: &[DisKind] = &[DisKind::Proper, DisKind::Prime, DisKind::MinimalPrime];
pub const CONNECTED_KINDS: &[DisKind] = &[DisKind::Proper, DisKind::FinitelyGenerated, DisKind::Cyclic];

pub const CLAIMS: &[ClaimDef] = &[
    space("vsets-antitone", "bpvs(1)", "N ⊆ K implies V(K) ⊆ V(N)"),
    space("vsets-generated", "bpvs(2)", "V(S) = V(<S>) for nonempty subsets S"),
    space("vsets-extremes", "bpvs(3)", "V(0) is every point and V(M) is empty"),
    space(
        "vsets-meet-is-sum",
        "bpvs(4)",
        "the intersection of V(N_i) is V(sum of N_i)",
    ),
    space("vsets-union-below-meet", "bpvs(5)", "V(N) ∪ V(K) ⊆ V(N ∩ K)"),
    space("vsets-radical-contains", "bpvs(6)", "V(√N) ⊆ V(N)"),
    space_for(
        "vsets-radical-equality",
        "bpvs(6)-note",
        "V(√N) = V(N) for the prime, minimal prime and maximal classes",
        RADICAL_EQUALITY_KINDS,
    ),
    space("omega-extensive", "bpvs(7)", "N ⊆ N^ω"),
    space("omega-fixes-points", "bpvs(8)", "N^ω = N for every point N"),
    space("omega-preserves-v", "bpvs(9)", "V(N) = V(N^ω)"),
    space("omega-reverses-order", "bpvs(10)", "V(N1) ⊆ V(N2) iff N2^ω ⊆ N1^ω"),
    space(
        "scc-iff-contains-maximal",
        "ncc",
        "V(N) = ∅ forces N = M iff every maximal subsemimodule is a point",
    ),
    space(
        "compact-sum-covers",
        "comp",
        "under the scc property, subbasis sets with empty intersection come from subsemimodules summing to M",
    ),
    space("t0", "ct0t1", "every space is T0"),
    space(
        "specialization-is-inclusion",
        "irrc-order",
        "L1 ≼ L2 iff L1 ⊆ L2 on points",
    ),
    space(
        "point-closure-is-v",
        "irrc",
        "closure({N}) = V(N) and V(N) is irreducible for every point N",
    ),
    space_for(
        "proper-subbasis-irreducible",
        "spiir",
        "every nonempty subbasis set of the proper space is irreducible",
        &[DisKind::Proper],
    ),
    space(
        "t1-iff-within-maximal",
        "t1",
        "T1 iff every point is a maximal subsemimodule",
    ),
    space("t1-iff-antichain", "t1-finite", "T1 iff no point contains another"),
    space(
        "sob-generic-is-omega",
        "sob",
        "a unique generic point of a nonempty irreducible V(N) is N^ω, and N^ω ∈ V(N)",
    ),
    space(
        "sob-omega-criterion",
        "sob-converse",
        "N^ω ∈ V(N) for every nonempty irreducible V(N) makes the space sober",
    ),
    space_for(
        "sober-standard-kinds",
        "sob-cor",
        "proper, prime and minimal prime spaces are sober",
        SOBER_KINDS,
    ),
    space_for(
        "sober-strongly-irreducible",
        "sirrs",
        "the strongly irreducible space is sober",
        &[DisKind::StronglyIrreducible],
    ),
    space(
        "strong-disconnect-implies-disconnected",
        "strong-disconnection",
        "a closed subbasis or basis that strongly disconnects the space makes it disconnected",
    ),
    space(
        "basis-meet-closed",
        "th1",
        "the closed basis is closed under binary intersection",
    ),
    space(
        "disconnected-iff-basis-splits",
        "cor1",
        "disconnected iff the closed basis strongly disconnects",
    ),
    space("connected-with-zero", "conis", "{0} a point implies connected"),
    space_for(
        "connected-standard-kinds",
        "conis-cor",
        "proper, finitely generated and cyclic spaces are connected",
        CONNECTED_KINDS,
    ),
    scoped(
        "pullback-continuous",
        "conmap(1)",
        "φ* is continuous with (φ*)⁻¹(V(N)) = V(<φ(N)>)",
        Scope::Map,
    ),
    scoped(
        "pullback-homeomorphism",
        "conmap(2)",
        "for surjective φ, φ* is a homeomorphism onto V(ker φ)",
        Scope::Map,
    ),
    scoped(
        "pullback-density",
        "conmap(3)",
        "the image of φ* is dense iff ker φ lies in every point",
        Scope::Map,
    ),
    scoped(
        "quotient-homeomorphism",
        "conmap-cor",
        "the projection M → M/N pulls Dis_{M/N} back homeomorphically onto V(N)",
        Scope::Quotient,
    ),
];

/// Every statement the registry must cover.
pub const ANCHORS: &[&str] = &[
    "bpvs(1)",
    "bpvs(2)",
    "bpvs(3)",
    "bpvs(4)",
    "bpvs(5)",
    "bpvs(6)",
    "bpvs(6)-note",
    "bpvs(7)",
    "bpvs(8)",
    "bpvs(9)",
    "bpvs(10)",
    "ncc",
    "comp",
    "ct0t1",
    "irrc",
    "irrc-order",
    "spiir",
    "t1",
    "t1-finite",
    "sob",
    "sob-converse",
    "sob-cor",
    "sirrs",
    "strong-disconnection",
    "th1",
    "cor1",
    "conis",
    "conis-cor",
    "conmap(1)",
    "conmap(2)",
    "conmap(3)",
    "conmap-cor",
];

pub fn claim(id: &str) -> Option<&'static ClaimDef> {
    CLAIMS.iter().find(|c| c.id == id)
}

impl ClaimDef {
    pub fn applies_to(&self, kind: DisKind) -> bool {
        self.kinds.is_empty() || self.kinds.contains(&kind)
    }
}
