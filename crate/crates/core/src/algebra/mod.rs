//! Finite commutative semirings, semimodules over them, homomorphisms and
//! Bourne quotients. All structures are validated on construction and are
//! immutable afterwards.

mod hom;
pub mod io;
mod quotient;
mod semimodule;
mod semiring;
pub mod standard;

use std::fmt;

use serde::Serialize;

pub use hom::{verify_homomorphism, Homomorphism};
pub use quotient::{quotient_bourne, BourneQuotient};
pub use semimodule::{verify_semimodule, Semimodule, SemimoduleTables};
pub use semiring::{enumerate_ideals, is_ideal, verify_semiring, Semiring, SemiringTables};

use crate::error::{Error, Result};

/// A square or rectangular operation table of carrier indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl Table {
    /// Builds a table, checking that every row has `cols` entries and that
    /// every entry is below `range`.
    pub fn from_rows(name: &str, rows: &[Vec<usize>], expect_rows: usize, cols: usize, range: usize) -> Result<Table> {
        if rows.len() != expect_rows {
            return Err(Error::Malformed(format!(
                "{name} table has {} rows, expected {expect_rows}",
                rows.len()
            )));
        }
        let mut data = Vec::with_capacity(expect_rows * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Malformed(format!(
                    "{name} table row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= range {
                    return Err(Error::Malformed(format!(
                        "{name} table entry ({i},{j}) = {v} is out of range 0..{range}"
                    )));
                }
                data.push(v);
            }
        }
        Ok(Table {
            rows: expect_rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Table {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Table { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }
}

/// The axiom families checked by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeCommutativity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    ZeroAnnihilation,
    /// `(r + r')m = rm + r'm`
    ScalarSumDistributes,
    /// `r(m + m') = rm + rm'`
    VectorSumDistributes,
    /// `(rr')m = r(r'm)`
    ActionAssociative,
    /// `1m = m`
    UnitAction,
    /// `r0 = 0 = 0m`
    ZeroAction,
    HomPreservesZero,
    HomAdditive,
    HomEquivariant,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::MultiplicativeCommutativity => "multiplicative commutativity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::ZeroAnnihilation => "zero annihilation",
            Axiom::ScalarSumDistributes => "(i) (r+r')m = rm+r'm",
            Axiom::VectorSumDistributes => "(ii) r(m+m') = rm+rm'",
            Axiom::ActionAssociative => "(iii) (rr')m = r(r'm)",
            Axiom::UnitAction => "(iv) 1m = m",
            Axiom::ZeroAction => "(v) r0 = 0 = 0m",
            Axiom::HomPreservesZero => "homomorphism maps 0 to 0",
            Axiom::HomAdditive => "homomorphism is additive",
            Axiom::HomEquivariant => "homomorphism commutes with scalars",
        }
    }
}

/// The first axiom found violated, with the element tuple that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Labels of the witness elements, in the order the axiom quantifies them.
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.axiom.name(), self.witness.join(", "))
    }
}

/// Outcome of an axiom scan over well-formed tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Validation {
    Ok,
    Violated(Violation),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Validation::Ok => Ok(()),
            Validation::Violated(v) => Err(Error::Axiom(v)),
        }
    }
}

pub(crate) fn violation(axiom: Axiom, labels: &[String], idx: &[usize]) -> Validation {
    Validation::Violated(Violation {
        axiom,
        witness: idx.iter().map(|&i| labels[i].clone()).collect(),
    })
}

/// Monoid axioms for a commutative monoid table: identity, commutativity,
/// associativity, in that order.
pub(crate) fn check_commutative_monoid(add: &Table, zero: usize, labels: &[String], axioms: [Axiom; 3]) -> Validation {
    let n = labels.len();
    for x in 0..n {
        if add.get(zero, x) != x || add.get(x, zero) != x {
            return violation(axioms[0], labels, &[x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if add.get(x, y) != add.get(y, x) {
                return violation(axioms[1], labels, &[x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = add.get(x, y);
            for z in 0..n {
                if add.get(xy, z) != add.get(x, add.get(y, z)) {
                    return violation(axioms[2], labels, &[x, y, z]);
                }
            }
        }
    }
    Validation::Ok
}

pub(crate) fn resolve_labels(labels: &[String]) -> Result<std::collections::HashMap<&str, usize>> {
    let mut map = std::collections::HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), i).is_some() {
            return Err(Error::Malformed(format!("duplicate element label {l:?}")));
        }
    }
    Ok(map)
}
