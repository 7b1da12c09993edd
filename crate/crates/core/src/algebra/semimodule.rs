use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_commutative_monoid, resolve_labels, violation, Axiom, Semiring, Table, Validation};
use crate::bits::{SubsetMask, MAX_CARRIER};
use crate::error::{Error, Result};

/// Raw, unvalidated semimodule tables. `action[r][x]` is the index of `r·x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemimoduleTables {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
    pub zero: usize,
}

/// A validated finite semimodule over a finite commutative semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semimodule {
    ring: Arc<Semiring>,
    labels: Vec<String>,
    add: Table,
    action: Table,
    zero: usize,
}

/// Checks the commutative-monoid axioms and the five action axioms
/// (i)-(v), reporting the first failure with its witness.
pub fn verify_semimodule(ring: &Semiring, t: &SemimoduleTables) -> Result<Validation> {
    let (add, action) = shape_check(ring, t)?;
    Ok(scan_axioms(ring, &t.elements, &add, &action, t.zero))
}

fn shape_check(ring: &Semiring, t: &SemimoduleTables) -> Result<(Table, Table)> {
    let m = t.elements.len();
    if m == 0 {
        return Err(Error::Malformed("semimodule has no elements".into()));
    }
    if m > MAX_CARRIER {
        return Err(Error::Malformed(format!(
            "semimodule has {m} elements, at most {MAX_CARRIER} supported"
        )));
    }
    resolve_labels(&t.elements)?;
    if t.zero >= m {
        return Err(Error::Malformed("zero index out of range".into()));
    }
    let add = Table::from_rows("add", &t.add, m, m, m)?;
    let action = Table::from_rows("action", &t.action, ring.len(), m, m)?;
    Ok((add, action))
}

fn scan_axioms(ring: &Semiring, labels: &[String], add: &Table, act: &Table, zero: usize) -> Validation {
    let v = check_commutative_monoid(
        add,
        zero,
        labels,
        [
            Axiom::AdditiveIdentity,
            Axiom::AdditiveCommutativity,
            Axiom::AdditiveAssociativity,
        ],
    );
    if !v.is_ok() {
        return v;
    }
    let n = ring.len();
    let m = labels.len();
    // Witnesses mix scalars and vectors, so label them explicitly.
    let mixed = |scalars: &[usize], vectors: &[usize]| {
        let mut w: Vec<String> = scalars.iter().map(|&r| ring.label(r).to_string()).collect();
        w.extend(vectors.iter().map(|&x| labels[x].clone()));
        w
    };
    let fail = |axiom, w| Validation::Violated(super::Violation { axiom, witness: w });
    for r in 0..n {
        for s in 0..n {
            for x in 0..m {
                if act.get(ring.add(r, s), x) != add.get(act.get(r, x), act.get(s, x)) {
                    return fail(Axiom::ScalarSumDistributes, mixed(&[r, s], &[x]));
                }
            }
        }
    }
    for r in 0..n {
        for x in 0..m {
            for y in 0..m {
                if act.get(r, add.get(x, y)) != add.get(act.get(r, x), act.get(r, y)) {
                    return fail(Axiom::VectorSumDistributes, mixed(&[r], &[x, y]));
                }
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            for x in 0..m {
                if act.get(ring.mul(r, s), x) != act.get(r, act.get(s, x)) {
                    return fail(Axiom::ActionAssociative, mixed(&[r, s], &[x]));
                }
            }
        }
    }
    for x in 0..m {
        if act.get(ring.one(), x) != x {
            return violation(Axiom::UnitAction, labels, &[x]);
        }
    }
    for r in 0..n {
        if act.get(r, zero) != zero {
            return fail(Axiom::ZeroAction, mixed(&[r], &[zero]));
        }
    }
    for x in 0..m {
        if act.get(ring.zero(), x) != zero {
            return fail(Axiom::ZeroAction, mixed(&[ring.zero()], &[x]));
        }
    }
    Validation::Ok
}

impl Semimodule {
    pub fn from_tables(ring: Arc<Semiring>, t: SemimoduleTables) -> Result<Semimodule> {
        let (add, action) = shape_check(&ring, &t)?;
        scan_axioms(&ring, &t.elements, &add, &action, t.zero).into_result()?;
        Ok(Semimodule {
            ring,
            labels: t.elements,
            add,
            action,
            zero: t.zero,
        })
    }

    pub(crate) fn from_fn(
        ring: Arc<Semiring>,
        labels: Vec<String>,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        action: impl Fn(usize, usize) -> usize,
    ) -> Result<Semimodule> {
        let m = labels.len();
        let n = ring.len();
        Semimodule::from_tables(
            ring,
            SemimoduleTables {
                add: Table::from_fn(m, m, add).to_rows(),
                action: Table::from_fn(n, m, action).to_rows(),
                elements: labels,
                zero,
            },
        )
    }

    pub fn tables(&self) -> SemimoduleTables {
        SemimoduleTables {
            elements: self.labels.clone(),
            add: self.add.to_rows(),
            action: self.action.to_rows(),
            zero: self.zero,
        }
    }

    pub fn ring(&self) -> &Arc<Semiring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.get(x, y)
    }

    /// Scalar action `r·x`.
    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.action.get(r, x)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn zero_mask(&self) -> SubsetMask {
        SubsetMask::singleton(self.zero)
    }

    /// Closure certificate: contains zero, closed under `+` and the action.
    pub fn is_subsemimodule(&self, s: SubsetMask) -> bool {
        if !s.contains(self.zero) {
            return false;
        }
        for x in s.iter() {
            for y in s.iter() {
                if !s.contains(self.add(x, y)) {
                    return false;
                }
            }
            for r in 0..self.ring.len() {
                if !s.contains(self.act(r, x)) {
                    return false;
                }
            }
        }
        true
    }

    /// The least subsemimodule containing `seed`.
    pub fn generate(&self, seed: SubsetMask) -> SubsetMask {
        let mut set = seed;
        set.insert(self.zero);
        let mut queue: Vec<usize> = set.iter().collect();
        while let Some(x) = queue.pop() {
            for r in 0..self.ring.len() {
                let y = self.act(r, x);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
            for y in set.iter().collect::<Vec<_>>() {
                let z = self.add(x, y);
                if !set.contains(z) {
                    set.insert(z);
                    queue.push(z);
                }
            }
        }
        set
    }

    /// Image of a subset under the action of every scalar in `scalars`.
    pub fn act_on(&self, r: usize, s: SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(s.iter().map(|x| self.act(r, x)))
    }

    /// The restriction of this semimodule to a subsemimodule `sub`, with
    /// elements in carrier order. Returns the restricted module and the
    /// inclusion map as a list of carrier indices.
    pub fn restrict(&self, sub: SubsetMask) -> Result<(Semimodule, Vec<usize>)> {
        if !self.is_subsemimodule(sub) {
            return Err(Error::Malformed(format!(
                "{:?} is not a subsemimodule",
                self.mask_labels(sub)
            )));
        }
        let members: Vec<usize> = sub.iter().collect();
        let pos = |x: usize| members.iter().position(|&y| y == x).expect("closed subset");
        let restricted = Semimodule::from_fn(
            self.ring.clone(),
            members.iter().map(|&x| self.labels[x].clone()).collect(),
            pos(self.zero),
            |i, j| pos(self.add(members[i], members[j])),
            |r, i| pos(self.act(r, members[i])),
        )?;
        Ok((restricted, members))
    }

    pub fn mask_labels(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a, b, c}` rendering of a subset.
    pub fn show(&self, m: SubsetMask) -> String {
        format!("{{{}}}", self.mask_labels(m).join(","))
    }
}

impl fmt::Debug for Semimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semimodule{{{}}} over {:?}", self.labels.join(","), self.ring)
    }
}
