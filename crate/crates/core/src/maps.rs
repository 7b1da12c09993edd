//! The induced map `φ*: Dis_{M'} → Dis_M`, `N' ↦ φ⁻¹(N')`, of a
//! homomorphism `φ: M → M'`, and the checks run against it.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{quotient_bourne, Homomorphism};
use crate::bits::{PointSet, SubsetMask};
use crate::classes::DisKind;
use crate::error::{Error, Result};
use crate::lattice::{Limits, SubId, SubLattice};
use crate::topology::{PointId, SubbasisSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub holds: bool,
    /// A point of `Dis_{M'}` (lattice id in `Sub_{M'}`) whose preimage is
    /// not a point of `Dis_M`.
    pub witness: Option<SubId>,
}

fn check_spaces(hom: &Homomorphism, domain: &SubbasisSpace, codomain: &SubbasisSpace) -> Result<()> {
    if **domain.lattice().module() != **hom.source() || **codomain.lattice().module() != **hom.target() {
        return Err(Error::Usage(
            "spaces do not sit over the source and target of the homomorphism".into(),
        ));
    }
    Ok(())
}

/// Whether `φ⁻¹(N')` is a point of `domain` for every point `N'` of
/// `codomain`.
pub fn check_contraction(
    hom: &Homomorphism,
    domain: &SubbasisSpace,
    codomain: &SubbasisSpace,
) -> Result<ContractionReport> {
    check_spaces(hom, domain, codomain)?;
    let dl = domain.lattice();
    let cl = codomain.lattice();
    let witness = codomain.points().iter().copied().find(|&np| {
        let pre = hom.preimage(cl.mask(np));
        dl.id_of(pre).and_then(|id| domain.point_of(id)).is_none()
    });
    Ok(ContractionReport {
        holds: witness.is_none(),
        witness,
    })
}

pub struct PullbackMap {
    hom: Homomorphism,
    domain: Arc<SubbasisSpace>,
    codomain: Arc<SubbasisSpace>,
    /// Codomain point ↦ domain point.
    table: Vec<PointId>,
}

/// Builds `φ*`, refusing with the witness when contraction fails.
pub fn pullback(hom: &Homomorphism, domain: Arc<SubbasisSpace>, codomain: Arc<SubbasisSpace>) -> Result<PullbackMap> {
    let c = check_contraction(hom, &domain, &codomain)?;
    if let Some(w) = c.witness {
        return Err(Error::ContractionFails(codomain.lattice().show(w)));
    }
    let dl = domain.lattice().clone();
    let cl = codomain.lattice().clone();
    let table = codomain
        .points()
        .iter()
        .map(|&np| {
            let id = dl
                .id_of(hom.preimage(cl.mask(np)))
                .expect("preimage of a subsemimodule");
            domain.point_of(id).expect("contraction holds")
        })
        .collect();
    Ok(PullbackMap {
        hom: hom.clone(),
        domain,
        codomain,
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityEntry {
    /// `N ∈ Sub_M`.
    pub n: SubId,
    /// `⟨φ(N)⟩ ∈ Sub_{M'}`.
    pub generated_image: SubId,
    /// `(φ*)⁻¹(V(N)) = V(⟨φ(N)⟩)`.
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    /// Preimage of every subbasis closed set is closed.
    pub continuous: bool,
    /// The identity `(φ*)⁻¹(V(N)) = V(⟨φ(N)⟩)` holds for every `N`.
    pub identity_exact: bool,
    pub certificate: Vec<ContinuityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoReport {
    pub homeomorphic: bool,
    pub onto: Vec<PointId>,
    pub v_kernel: Vec<PointId>,
    pub image_is_v_kernel: bool,
    pub injective: bool,
    pub continuous: bool,
    /// Image of every closed set is closed in the image subspace.
    pub closed_onto_image: bool,
    /// `φ*(V(N')) = V(φ⁻¹(N'))` for every `N' ∈ Sub_{M'}`.
    pub closed_map_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub dense: bool,
    pub kernel: SubsetMask,
    /// Intersection of all points of `Dis_M` (`M` when empty).
    pub points_meet: SubsetMask,
    /// `ker φ ⊆ ⋂ Dis_M`.
    pub criterion: bool,
    pub biconditional_holds: bool,
    pub image_closure: Vec<PointId>,
    /// `closure(φ*(V(N'))) = V(φ⁻¹(N'))` for every `N' ∈ Sub_{M'}`.
    pub closure_identity: bool,
}

impl PullbackMap {
    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn domain(&self) -> &Arc<SubbasisSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SubbasisSpace> {
        &self.codomain
    }

    pub fn table(&self) -> &[PointId] {
        &self.table
    }

    /// `φ*(X)` for a set of codomain points.
    pub fn image_of(&self, x: &PointSet) -> PointSet {
        PointSet::from_indices(self.domain.len(), x.iter().map(|p| self.table[p]))
    }

    /// `(φ*)⁻¹(Y)` for a set of domain points.
    pub fn preimage_of(&self, y: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.codomain.len(),
            (0..self.codomain.len()).filter(|&p| y.contains(self.table[p])),
        )
    }

    pub fn image(&self) -> PointSet {
        self.image_of(&self.codomain.all())
    }

    pub fn continuity_check(&self) -> ContinuityReport {
        let dl = self.domain.lattice();
        let cl = self.codomain.lattice();
        let mut continuous = true;
        let certificate: Vec<ContinuityEntry> = dl
            .ids()
            .map(|n| {
                let pre = self.preimage_of(self.domain.v_set(n));
                continuous &= self.codomain.is_closed(&pre);
                let generated_image = cl.generated_id(self.hom.forward(dl.mask(n)));
                ContinuityEntry {
                    n,
                    generated_image,
                    matches: pre == *self.codomain.v_set(generated_image),
                }
            })
            .collect();
        ContinuityReport {
            continuous,
            identity_exact: certificate.iter().all(|e| e.matches),
            certificate,
        }
    }

    pub fn surjective_homeo_check(&self) -> Result<HomeoReport> {
        if !self.hom.is_surjective() {
            let missing = self
                .hom
                .image()
                .complement(self.hom.target().len())
                .iter()
                .next()
                .expect("a missed element");
            return Err(Error::NotSurjective(self.hom.target().label(missing).to_string()));
        }
        let closed = self.codomain.closed_sets().ok_or(Error::SizeCap {
            what: "points for map checks",
            actual: self.codomain.len(),
            cap: self.codomain.len().saturating_sub(1),
        })?;
        let dl = self.domain.lattice();
        let cl = self.codomain.lattice();
        let image = self.image();
        let kernel_id = dl.id_of(self.hom.kernel()).expect("kernel is a subsemimodule");
        let v_kernel = self.domain.v_set(kernel_id).clone();
        let mut seen = PointSet::empty(self.domain.len());
        let mut injective = true;
        for &t in &self.table {
            injective &= !seen.contains(t);
            seen.insert(t);
        }
        let closed_onto_image = closed.iter().all(|k| {
            let img = self.image_of(k);
            self.domain.closure(&img).intersection(&image) == img
        });
        let closed_map_identity = cl.ids().all(|np| {
            let pre_id = dl.id_of(self.hom.preimage(cl.mask(np))).expect("preimage");
            self.image_of(self.codomain.v_set(np)) == *self.domain.v_set(pre_id)
        });
        let continuous = self.continuity_check().continuous;
        let image_is_v_kernel = image == v_kernel;
        Ok(HomeoReport {
            homeomorphic: continuous && injective && image_is_v_kernel && closed_onto_image,
            onto: image.iter().collect(),
            v_kernel: v_kernel.iter().collect(),
            image_is_v_kernel,
            injective,
            continuous,
            closed_onto_image,
            closed_map_identity,
        })
    }

    pub fn density_check(&self) -> DensityReport {
        let dl = self.domain.lattice();
        let cl = self.codomain.lattice();
        let closure = self.domain.closure(&self.image());
        let dense = closure.is_full();
        let kernel = self.hom.kernel();
        let points_meet = dl.intersect(self.domain.points().iter().map(|&p| dl.mask(p)));
        let criterion = kernel.is_subset(points_meet);
        let closure_identity = cl.ids().all(|np| {
            let pre_id = dl.id_of(self.hom.preimage(cl.mask(np))).expect("preimage");
            self.domain.closure(&self.image_of(self.codomain.v_set(np))) == *self.domain.v_set(pre_id)
        });
        DensityReport {
            dense,
            kernel,
            points_meet,
            criterion,
            biconditional_holds: dense == criterion,
            image_closure: closure.iter().collect(),
            closure_identity,
        }
    }

    pub fn report(&self) -> MapsReport {
        let dl = self.domain.lattice();
        let cl = self.codomain.lattice();
        let cont = self.continuity_check();
        let dens = self.density_check();
        let m = self.hom.source();
        MapsReport {
            kind: self.domain.kind().map(|k| k.to_string()),
            contraction: ContractionReport {
                holds: true,
                witness: None,
            },
            table: self
                .table
                .iter()
                .enumerate()
                .map(|(p, &q)| (self.codomain.point_label(p), self.domain.point_label(q)))
                .collect(),
            continuity: LabelledContinuity {
                continuous: cont.continuous,
                identity_exact: cont.identity_exact,
                certificate: cont
                    .certificate
                    .iter()
                    .map(|e| (dl.show(e.n), cl.show(e.generated_image), e.matches))
                    .collect(),
            },
            homeomorphism: match self.surjective_homeo_check() {
                Ok(h) => HomeoOutcome::Checked(LabelledHomeo {
                    homeomorphic: h.homeomorphic,
                    onto: h.onto.iter().map(|&p| self.domain.point_label(p)).collect(),
                    v_kernel: h.v_kernel.iter().map(|&p| self.domain.point_label(p)).collect(),
                    image_is_v_kernel: h.image_is_v_kernel,
                    injective: h.injective,
                    continuous: h.continuous,
                    closed_onto_image: h.closed_onto_image,
                    closed_map_identity: h.closed_map_identity,
                }),
                Err(e) => HomeoOutcome::Refused(e.to_string()),
            },
            density: LabelledDensity {
                dense: dens.dense,
                kernel: m.show(dens.kernel),
                points_meet: m.show(dens.points_meet),
                criterion: dens.criterion,
                biconditional_holds: dens.biconditional_holds,
                image_closure: dens.image_closure.iter().map(|&p| self.domain.point_label(p)).collect(),
                closure_identity: dens.closure_identity,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledContinuity {
    pub continuous: bool,
    pub identity_exact: bool,
    /// `(N, ⟨φ(N)⟩, identity holds)`.
    pub certificate: Vec<(String, String, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledHomeo {
    pub homeomorphic: bool,
    pub onto: Vec<String>,
    pub v_kernel: Vec<String>,
    pub image_is_v_kernel: bool,
    pub injective: bool,
    pub continuous: bool,
    pub closed_onto_image: bool,
    pub closed_map_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomeoOutcome {
    Checked(LabelledHomeo),
    Refused(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledDensity {
    pub dense: bool,
    pub kernel: String,
    pub points_meet: String,
    pub criterion: bool,
    pub biconditional_holds: bool,
    pub image_closure: Vec<String>,
    pub closure_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapsReport {
    pub kind: Option<String>,
    pub contraction: ContractionReport,
    /// `(N', φ*(N'))`.
    pub table: Vec<(String, String)>,
    pub continuity: LabelledContinuity,
    pub homeomorphism: HomeoOutcome,
    pub density: LabelledDensity,
}

/// Outcome of comparing `Dis_{M/N}` with the closed subspaces `V(N)` and
/// `V(k(N))` of `Dis_M` through the Bourne projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub n: SubId,
    pub subtractive_closure: SubId,
    pub contraction: bool,
    /// Present only when contraction holds.
    pub homeo: Option<HomeoReport>,
    /// `φ*` is a homeomorphism onto exactly `V(N)`.
    pub onto_v_n: bool,
    /// `φ*` is a homeomorphism onto exactly `V(k(N))`.
    pub onto_v_kn: bool,
}

/// Runs the quotient comparison for `M → M/N` and the given class.
pub fn quotient_check(
    lattice: &Arc<SubLattice>,
    domain: &Arc<SubbasisSpace>,
    n: SubId,
    kind: DisKind,
    limits: &Limits,
) -> Result<QuotientCheck> {
    let module = lattice.module();
    let q = quotient_bourne(module, lattice.mask(n))?;
    let qlat = Arc::new(SubLattice::new(q.quotient.clone(), limits)?);
    let codomain = Arc::new(SubbasisSpace::for_kind(qlat, kind, limits)?);
    let kn = lattice
        .id_of(lattice.subtractive_closure(lattice.mask(n)))
        .expect("subtractive closure is a subsemimodule");
    let contraction = check_contraction(&q.projection, domain, &codomain)?.holds;
    let mut out = QuotientCheck {
        n,
        subtractive_closure: kn,
        contraction,
        homeo: None,
        onto_v_n: false,
        onto_v_kn: false,
    };
    if contraction {
        let pm = pullback(&q.projection, domain.clone(), codomain)?;
        let h = pm.surjective_homeo_check()?;
        let iso = h.continuous && h.injective && h.closed_onto_image;
        let image = pm.image();
        out.onto_v_n = iso && image == *domain.v_set(n);
        out.onto_v_kn = iso && image == *domain.v_set(kn);
        out.homeo = Some(h);
    }
    Ok(out)
}
