use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{io, quotient_bourne, standard, Homomorphism, Semimodule};
use crate::error::{Error, Result};
use crate::lattice::{Limits, SubLattice};

use super::sweep::{sweep, SweepSpec};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub module: Arc<Semimodule>,
}

/// Named structures to run claims against, in a fixed order.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

fn load_entry(path: &Path) -> Result<Semimodule> {
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    match value.get("structure") {
        Some(inner) if value.get("claim").is_some() => io::StructureFile::deserialize(inner)?.into_module(),
        _ => io::StructureFile::deserialize(&value)?.into_module(),
    }
}

impl Corpus {
    /// `B`, `N2`, `N3`, `Z3`, `Z4`, `Z6` over themselves, `F2^2`, `F2^3`
    /// and `B^2`.
    pub fn curated() -> Corpus {
        Corpus {
            entries: standard::CURATED
                .iter()
                .map(|&name| CorpusEntry {
                    id: name.to_string(),
                    module: Arc::new(standard::named(name).expect("curated name")),
                })
                .collect(),
        }
    }

    /// Every `*.json` structure file in `dir`, sorted by file name; the id
    /// is the file stem. Witness records are accepted too and contribute
    /// their (source) structure, so a witness directory can be replayed.
    /// Invalid files are an error.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Corpus> {
        let mut paths: Vec<_> = std::fs::read_dir(dir.as_ref())?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut entries = Vec::with_capacity(paths.len());
        for p in paths {
            let module = load_entry(&p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
            entries.push(CorpusEntry {
                id: p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                module: Arc::new(module),
            });
        }
        Ok(Corpus { entries })
    }

    pub fn from_sweep(spec: &SweepSpec) -> Corpus {
        Corpus {
            entries: sweep(spec)
                .into_iter()
                .map(|m| CorpusEntry {
                    id: m.id,
                    module: m.module,
                })
                .collect(),
        }
    }

    pub fn extend(&mut self, other: Corpus) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

#[derive(Clone, Debug)]
pub struct HomEntry {
    pub id: String,
    pub hom: Homomorphism,
    /// Set for Bourne projections: the subsemimodule quotiented out.
    pub quotient_of: Option<crate::bits::SubsetMask>,
}

/// Homomorphisms derived from a corpus: for every module the identity,
/// the Bourne projection `M → M/N` and the inclusion `N → M` for each
/// subsemimodule `N` (inclusions only for proper `N`).
pub fn homomorphisms(corpus: &Corpus, limits: &Limits) -> Result<Vec<HomEntry>> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        let lat = SubLattice::new(e.module.clone(), limits)?;
        out.push(HomEntry {
            id: format!("{}:id", e.id),
            hom: Homomorphism::identity(e.module.clone()),
            quotient_of: None,
        });
        for n in lat.ids() {
            let mask = lat.mask(n);
            let q = quotient_bourne(&e.module, mask)?;
            out.push(HomEntry {
                id: format!("{}:quotient{}", e.id, lat.show(n)),
                hom: q.projection,
                quotient_of: Some(mask),
            });
        }
        for n in lat.proper_ids() {
            out.push(HomEntry {
                id: format!("{}:inclusion{}", e.id, lat.show(n)),
                hom: Homomorphism::inclusion(e.module.clone(), lat.mask(n))?,
                quotient_of: None,
            });
        }
    }
    Ok(out)
}

/// Coordinate projections between the curated vector modules:
/// `F2^2 → F2` (both coordinates), `F2^3 → F2^2` (dropping the last),
/// `B^2 → B` (both coordinates).
pub fn projections() -> Vec<HomEntry> {
    let f2 = Arc::new(standard::zmod(2).expect("F2"));
    let b = Arc::new(standard::boolean());
    let line = |r: &Arc<crate::algebra::Semiring>| Arc::new(standard::self_module(r));
    let vec = |r: &Arc<crate::algebra::Semiring>, d| Arc::new(standard::vector_module(r, d).expect("vector module"));
    let hom = |id: &str, src: Arc<Semimodule>, dst: Arc<Semimodule>, map: Vec<usize>| HomEntry {
        id: id.to_string(),
        hom: Homomorphism::new(src, dst, map).expect("coordinate projection"),
        quotient_of: None,
    };
    vec![
        hom("F2^2->F2:first", vec(&f2, 2), line(&f2), vec![0, 0, 1, 1]),
        hom("F2^2->F2:second", vec(&f2, 2), line(&f2), vec![0, 1, 0, 1]),
        // (a,b,c) ↦ (a,b): index abc ↦ ab.
        hom(
            "F2^3->F2^2:drop-last",
            vec(&f2, 3),
            vec(&f2, 2),
            (0..8).map(|x| x >> 1).collect(),
        ),
        hom("B^2->B:first", vec(&b, 2), line(&b), vec![0, 0, 1, 1]),
        hom("B^2->B:second", vec(&b, 2), line(&b), vec![0, 1, 0, 1]),
    ]
}
