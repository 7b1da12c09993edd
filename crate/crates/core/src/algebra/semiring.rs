use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_commutative_monoid, resolve_labels, violation, Axiom, Table, Validation};
use crate::bits::{SubsetMask, MAX_CARRIER};
use crate::error::{Error, Result};

/// Raw, unvalidated semiring tables addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringTables {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

/// A validated finite commutative semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semiring {
    labels: Vec<String>,
    add: Table,
    mul: Table,
    zero: usize,
    one: usize,
}

/// Checks every commutative-semiring axiom by exhaustive table scan.
///
/// Malformed tables produce `Err`; a well-formed table that breaks an axiom
/// produces `Ok(Validation::Violated(..))` naming the first failure.
pub fn verify_semiring(t: &SemiringTables) -> Result<Validation> {
    let (add, mul) = shape_check(t)?;
    Ok(scan_axioms(&t.elements, &add, &mul, t.zero, t.one))
}

fn shape_check(t: &SemiringTables) -> Result<(Table, Table)> {
    let n = t.elements.len();
    if n == 0 {
        return Err(Error::Malformed("semiring has no elements".into()));
    }
    if n > MAX_CARRIER {
        return Err(Error::Malformed(format!(
            "semiring has {n} elements, at most {MAX_CARRIER} supported"
        )));
    }
    resolve_labels(&t.elements)?;
    if t.zero >= n || t.one >= n {
        return Err(Error::Malformed("zero/one index out of range".into()));
    }
    let add = Table::from_rows("add", &t.add, n, n, n)?;
    let mul = Table::from_rows("mul", &t.mul, n, n, n)?;
    Ok((add, mul))
}

fn scan_axioms(labels: &[String], add: &Table, mul: &Table, zero: usize, one: usize) -> Validation {
    let n = labels.len();
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
    let v = check_commutative_monoid(
        mul,
        one,
        labels,
        [
            Axiom::MultiplicativeIdentity,
            Axiom::MultiplicativeCommutativity,
            Axiom::MultiplicativeAssociativity,
        ],
    );
    if !v.is_ok() {
        return v;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul.get(a, add.get(b, c)) != add.get(mul.get(a, b), mul.get(a, c)) {
                    return violation(Axiom::LeftDistributivity, labels, &[a, b, c]);
                }
                if mul.get(add.get(a, b), c) != add.get(mul.get(a, c), mul.get(b, c)) {
                    return violation(Axiom::RightDistributivity, labels, &[a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        if mul.get(zero, a) != zero || mul.get(a, zero) != zero {
            return violation(Axiom::ZeroAnnihilation, labels, &[a]);
        }
    }
    Validation::Ok
}

impl Semiring {
    pub fn from_tables(t: SemiringTables) -> Result<Semiring> {
        let (add, mul) = shape_check(&t)?;
        scan_axioms(&t.elements, &add, &mul, t.zero, t.one).into_result()?;
        Ok(Semiring {
            labels: t.elements,
            add,
            mul,
            zero: t.zero,
            one: t.one,
        })
    }

    pub(crate) fn from_fn(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Semiring> {
        let n = labels.len();
        Semiring::from_tables(SemiringTables {
            add: Table::from_fn(n, n, add).to_rows(),
            mul: Table::from_fn(n, n, mul).to_rows(),
            elements: labels,
            zero,
            one,
        })
    }

    pub fn tables(&self) -> SemiringTables {
        SemiringTables {
            elements: self.labels.clone(),
            add: self.add.to_rows(),
            mul: self.mul.to_rows(),
            zero: self.zero,
            one: self.one,
        }
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    /// `r^k` for `k >= 1`.
    pub fn pow(&self, r: usize, k: usize) -> usize {
        assert!(k >= 1);
        (1..k).fold(r, |acc, _| self.mul(acc, r))
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn mask_labels(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semiring{{{}}}", self.labels.join(","))
    }
}

/// Whether `ideal` contains zero and is closed under addition and under
/// multiplication by arbitrary scalars.
pub fn is_ideal(ring: &Semiring, ideal: SubsetMask) -> bool {
    if !ideal.contains(ring.zero()) {
        return false;
    }
    for a in ideal.iter() {
        for b in ideal.iter() {
            if !ideal.contains(ring.add(a, b)) {
                return false;
            }
        }
        for r in 0..ring.len() {
            if !ideal.contains(ring.mul(r, a)) {
                return false;
            }
        }
    }
    true
}

/// All ideals of `ring`, in canonical (numeric mask) order.
pub fn enumerate_ideals(ring: &Semiring) -> Vec<SubsetMask> {
    let n = ring.len();
    let mut found = std::collections::BTreeSet::new();
    let mut frontier = vec![SubsetMask::singleton(ring.zero())];
    found.insert(frontier[0]);
    let principal: Vec<SubsetMask> = (0..n).map(|a| ideal_closure(ring, SubsetMask::singleton(a))).collect();
    while let Some(i) = frontier.pop() {
        for &p in &principal {
            let j = ideal_closure(ring, i.union(p));
            if found.insert(j) {
                frontier.push(j);
            }
        }
    }
    found.into_iter().collect()
}

fn ideal_closure(ring: &Semiring, seed: SubsetMask) -> SubsetMask {
    let mut set = seed;
    set.insert(ring.zero());
    let mut queue: Vec<usize> = set.iter().collect();
    while let Some(x) = queue.pop() {
        for r in 0..ring.len() {
            let y = ring.mul(r, x);
            if !set.contains(y) {
                set.insert(y);
                queue.push(y);
            }
        }
        for y in set.iter().collect::<Vec<_>>() {
            let z = ring.add(x, y);
            if !set.contains(z) {
                set.insert(z);
                queue.push(z);
            }
        }
    }
    set
}
