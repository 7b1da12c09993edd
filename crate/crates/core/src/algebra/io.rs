//! JSON structure files.
//!
//! ```json
//! {"semiring": {"elements": ["0","1"], "add": [["0","1"],["1","1"]],
//!               "mul": [["0","0"],["0","1"]], "zero": "0", "one": "1"},
//!  "module":   {"elements": [...], "add": [[...]], "action": [[...]], "zero": "0"}}
//! ```
//!
//! Table entries are element labels. Numeric labels are accepted and read as
//! their decimal text. When `module` is absent the semiring acts on itself.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    resolve_labels, standard, verify_semimodule, verify_semiring, Semimodule, SemimoduleTables, Semiring,
    SemiringTables,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(i64),
}

impl Label {
    fn text(&self) -> String {
        match self {
            Label::Text(s) => s.clone(),
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringFile {
    pub elements: Vec<Label>,
    pub add: Vec<Vec<Label>>,
    pub mul: Vec<Vec<Label>>,
    pub zero: Label,
    pub one: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub elements: Vec<Label>,
    pub add: Vec<Vec<Label>>,
    pub action: Vec<Vec<Label>>,
    pub zero: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub semiring: SemiringFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
}

fn texts(v: &[Label]) -> Vec<String> {
    v.iter().map(Label::text).collect()
}

fn resolve_table(name: &str, labels: &[String], table: &[Vec<Label>]) -> Result<Vec<Vec<usize>>> {
    let index = resolve_labels(labels)?;
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|l| {
                    let t = l.text();
                    index
                        .get(t.as_str())
                        .copied()
                        .ok_or_else(|| Error::Malformed(format!("{name} table refers to unknown label {t:?}")))
                })
                .collect()
        })
        .collect()
}

fn resolve_one(what: &str, labels: &[String], l: &Label) -> Result<usize> {
    let t = l.text();
    labels
        .iter()
        .position(|x| *x == t)
        .ok_or_else(|| Error::Malformed(format!("{what} label {t:?} is not an element")))
}

impl StructureFile {
    pub fn semiring_tables(&self) -> Result<SemiringTables> {
        let s = &self.semiring;
        let elements = texts(&s.elements);
        Ok(SemiringTables {
            add: resolve_table("semiring add", &elements, &s.add)?,
            mul: resolve_table("semiring mul", &elements, &s.mul)?,
            zero: resolve_one("semiring zero", &elements, &s.zero)?,
            one: resolve_one("semiring one", &elements, &s.one)?,
            elements,
        })
    }

    /// Resolves labels, runs both verifiers and returns the module.
    pub fn into_module(self) -> Result<Semimodule> {
        let rt = self.semiring_tables()?;
        verify_semiring(&rt)?.into_result()?;
        let ring = Arc::new(Semiring::from_tables(rt)?);
        let Some(m) = &self.module else {
            return Ok(standard::self_module(&ring));
        };
        let elements = texts(&m.elements);
        let mt = SemimoduleTables {
            add: resolve_table("module add", &elements, &m.add)?,
            action: resolve_table("module action", &elements, &m.action)?,
            zero: resolve_one("module zero", &elements, &m.zero)?,
            elements,
        };
        verify_semimodule(&ring, &mt)?.into_result()?;
        Semimodule::from_tables(ring, mt)
    }

    pub fn from_module(m: &Semimodule) -> StructureFile {
        let r = m.ring();
        let lab = |s: &str| Label::Text(s.to_string());
        let rt = r.tables();
        let mt = m.tables();
        let rows = |t: &[Vec<usize>], names: &[String]| -> Vec<Vec<Label>> {
            t.iter()
                .map(|row| row.iter().map(|&i| lab(&names[i])).collect())
                .collect()
        };
        StructureFile {
            semiring: SemiringFile {
                elements: rt.elements.iter().map(|s| lab(s)).collect(),
                add: rows(&rt.add, &rt.elements),
                mul: rows(&rt.mul, &rt.elements),
                zero: lab(r.label(r.zero())),
                one: lab(r.label(r.one())),
            },
            module: Some(ModuleFile {
                elements: mt.elements.iter().map(|s| lab(s)).collect(),
                add: rows(&mt.add, &mt.elements),
                action: rows(&mt.action, &mt.elements),
                zero: lab(m.label(m.zero())),
            }),
        }
    }
}

pub fn parse_structure(text: &str) -> Result<Semimodule> {
    let file: StructureFile = serde_json::from_str(text)?;
    file.into_module()
}

pub fn load_structure(path: impl AsRef<Path>) -> Result<Semimodule> {
    parse_structure(&std::fs::read_to_string(path)?)
}

pub fn structure_json(m: &Semimodule) -> String {
    serde_json::to_string_pretty(&StructureFile::from_module(m)).expect("structure serializes")
}
