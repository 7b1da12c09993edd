use std::sync::Arc;

use super::{Axiom, Semimodule, Validation, Violation};
use crate::bits::SubsetMask;
use crate::error::{Error, Result};

/// A verified semimodule homomorphism `source → target`.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Arc<Semimodule>,
    target: Arc<Semimodule>,
    map: Vec<usize>,
}

/// Checks `f(0) = 0`, additivity and scalar equivariance over every table
/// entry. Out-of-range map entries and mismatched semirings are structural
/// errors.
pub fn verify_homomorphism(source: &Semimodule, target: &Semimodule, map: &[usize]) -> Result<Validation> {
    if source.ring() != target.ring() {
        return Err(Error::RingMismatch);
    }
    if map.len() != source.len() {
        return Err(Error::Malformed(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            source.len()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
        return Err(Error::Malformed(format!("map entry {bad} out of range")));
    }
    let fail = |axiom, w: Vec<String>| Validation::Violated(Violation { axiom, witness: w });
    if map[source.zero()] != target.zero() {
        return Ok(fail(Axiom::HomPreservesZero, vec![source.label(source.zero()).into()]));
    }
    for x in 0..source.len() {
        for y in 0..source.len() {
            if map[source.add(x, y)] != target.add(map[x], map[y]) {
                return Ok(fail(
                    Axiom::HomAdditive,
                    vec![source.label(x).into(), source.label(y).into()],
                ));
            }
        }
    }
    let ring = source.ring();
    for r in 0..ring.len() {
        for x in 0..source.len() {
            if map[source.act(r, x)] != target.act(r, map[x]) {
                return Ok(fail(
                    Axiom::HomEquivariant,
                    vec![ring.label(r).into(), source.label(x).into()],
                ));
            }
        }
    }
    Ok(Validation::Ok)
}

impl Homomorphism {
    pub fn new(source: Arc<Semimodule>, target: Arc<Semimodule>, map: Vec<usize>) -> Result<Homomorphism> {
        verify_homomorphism(&source, &target, &map)?.into_result()?;
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(m: Arc<Semimodule>) -> Homomorphism {
        let map = (0..m.len()).collect();
        Homomorphism {
            source: m.clone(),
            target: m,
            map,
        }
    }

    pub fn zero_map(source: Arc<Semimodule>, target: Arc<Semimodule>) -> Result<Homomorphism> {
        let z = target.zero();
        let n = source.len();
        Homomorphism::new(source, target, vec![z; n])
    }

    /// Inclusion of the subsemimodule `sub` of `m`, with the restricted
    /// module as source.
    pub fn inclusion(m: Arc<Semimodule>, sub: SubsetMask) -> Result<Homomorphism> {
        let (restricted, members) = m.restrict(sub)?;
        Homomorphism::new(Arc::new(restricted), m, members)
    }

    pub fn source(&self) -> &Arc<Semimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Semimodule> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Preimage of the target zero.
    pub fn kernel(&self) -> SubsetMask {
        self.preimage(self.target.zero_mask())
    }

    pub fn image(&self) -> SubsetMask {
        self.forward(self.source.full_mask())
    }

    pub fn preimage(&self, s: SubsetMask) -> SubsetMask {
        SubsetMask::from_indices((0..self.source.len()).filter(|&x| s.contains(self.map[x])))
    }

    pub fn forward(&self, s: SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(s.iter().map(|x| self.map[x]))
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.target.full_mask()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = SubsetMask::EMPTY;
        for &y in &self.map {
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    /// Map table as `(source label, target label)` pairs.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.label(x).to_string(), self.target.label(y).to_string()))
            .collect()
    }

    /// Builds a homomorphism from `(source label, target label)` pairs.
    pub fn from_label_pairs(
        source: Arc<Semimodule>,
        target: Arc<Semimodule>,
        pairs: &[(String, String)],
    ) -> Result<Homomorphism> {
        let mut map = vec![None; source.len()];
        for (a, b) in pairs {
            let x = source
                .index_of(a)
                .ok_or_else(|| Error::Malformed(format!("unknown source label {a:?}")))?;
            let y = target
                .index_of(b)
                .ok_or_else(|| Error::Malformed(format!("unknown target label {b:?}")))?;
            if map[x].replace(y).is_some() {
                return Err(Error::Malformed(format!("source label {a:?} mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::Malformed(format!("no image for {:?}", source.label(x)))))
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(source, target, map)
    }
}
