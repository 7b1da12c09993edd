//! Exhaustive enumeration of small semirings and semimodules.
//!
//! Tables are labelled (no isomorphism reduction). The zero of every
//! structure is index 0 and the one of a semiring is index 1; the free
//! cells are filled in row-major order by backtracking, pruning any
//! partial table that already breaks associativity.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{Semimodule, SemimoduleTables, Semiring, SemiringTables};
use crate::error::{Error, Result};

/// Bounds of a sweep: semirings with `2 ..= max_ring` elements and
/// semimodules over them with `1 ..= max_module` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub max_ring: usize,
    pub max_module: usize,
}

pub const MAX_SWEEP_RING: usize = 4;
pub const MAX_SWEEP_MODULE: usize = 5;

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            max_ring: 2,
            max_module: 4,
        }
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r<={},m<={}", self.max_ring, self.max_module)
    }
}

impl FromStr for SweepSpec {
    type Err = Error;

    /// Parses `"r<=2,m<=4"`; either bound may be omitted.
    fn from_str(s: &str) -> Result<SweepSpec> {
        let mut spec = SweepSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once("<=")
                .ok_or_else(|| Error::Usage(format!("bad sweep bound {part:?}, expected e.g. r<=2")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|e| Error::Usage(format!("bad sweep bound {part:?}: {e}")))?;
            match key.trim() {
                "r" => spec.max_ring = value,
                "m" => spec.max_module = value,
                other => return Err(Error::Usage(format!("unknown sweep key {other:?}"))),
            }
        }
        if !(2..=MAX_SWEEP_RING).contains(&spec.max_ring) {
            return Err(Error::Usage(format!("sweep needs 2 <= r <= {MAX_SWEEP_RING}")));
        }
        if !(1..=MAX_SWEEP_MODULE).contains(&spec.max_module) {
            return Err(Error::Usage(format!("sweep needs 1 <= m <= {MAX_SWEEP_MODULE}")));
        }
        Ok(spec)
    }
}

/// Partial binary table, `None` for cells not yet chosen.
type Partial = Vec<Vec<Option<usize>>>;

fn associative_so_far(t: &Partial) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = t[a][b] else { continue };
            for c in 0..n {
                let (Some(l), Some(bc)) = (t[ab][c], t[b][c]) else {
                    continue;
                };
                if let Some(r) = t[a][bc] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All commutative associative tables on `n` elements that agree with
/// `fixed` wherever it returns `Some`.
fn commutative_monoids(n: usize, fixed: impl Fn(usize, usize) -> Option<usize>) -> Vec<Vec<Vec<usize>>> {
    let mut t: Partial = (0..n).map(|i| (0..n).map(|j| fixed(i, j)).collect()).collect();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| t[i][j].is_none())
        .collect();
    let mut out = Vec::new();
    fn go(t: &mut Partial, free: &[(usize, usize)], k: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if !associative_so_far(t) {
            return;
        }
        let Some(&(i, j)) = free.get(k) else {
            out.push(
                t.iter()
                    .map(|row| row.iter().map(|c| c.expect("filled")).collect())
                    .collect(),
            );
            return;
        };
        for v in 0..t.len() {
            t[i][j] = Some(v);
            t[j][i] = Some(v);
            go(t, free, k + 1, out);
        }
        t[i][j] = None;
        t[j][i] = None;
    }
    go(&mut t, &free, 0, &mut out);
    out
}

fn numerals(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every semiring on `{0, .., n-1}` with zero 0 and one 1 (`n >= 2`).
pub fn semirings(n: usize) -> Vec<Semiring> {
    let adds = commutative_monoids(n, |i, j| match (i, j) {
        (0, x) | (x, 0) => Some(x),
        _ => None,
    });
    let muls = commutative_monoids(n, |i, j| match (i, j) {
        (0, _) | (_, 0) => Some(0),
        (1, x) | (x, 1) => Some(x),
        _ => None,
    });
    let mut out = Vec::new();
    for add in &adds {
        for mul in &muls {
            let t = SemiringTables {
                elements: numerals(n),
                add: add.clone(),
                mul: mul.clone(),
                zero: 0,
                one: 1,
            };
            if let Ok(r) = Semiring::from_tables(t) {
                out.push(r);
            }
        }
    }
    out
}

/// Every semimodule on `{0, .., m-1}` with zero 0 over `ring`.
pub fn semimodules(ring: &Arc<Semiring>, m: usize) -> Vec<Semimodule> {
    let adds = commutative_monoids(m, |i, j| match (i, j) {
        (0, x) | (x, 0) => Some(x),
        _ => None,
    });
    let (zero, one) = (ring.zero(), ring.one());
    let free: Vec<(usize, usize)> = (0..ring.len())
        .filter(|&r| r != zero && r != one)
        .flat_map(|r| (1..m).map(move |x| (r, x)))
        .collect();
    let mut out = Vec::new();
    for add in adds {
        let mut action: Vec<Vec<usize>> = (0..ring.len())
            .map(|r| if r == one { (0..m).collect() } else { vec![0; m] })
            .collect();
        // Odometer over the free action cells.
        loop {
            let t = SemimoduleTables {
                elements: numerals(m),
                add: add.clone(),
                action: action.clone(),
                zero: 0,
            };
            if let Ok(sm) = Semimodule::from_tables(ring.clone(), t) {
                out.push(sm);
            }
            let mut carried = true;
            for &(r, x) in &free {
                action[r][x] += 1;
                if action[r][x] < m {
                    carried = false;
                    break;
                }
                action[r][x] = 0;
            }
            if carried {
                break;
            }
        }
    }
    out
}

/// One member of a sweep with its stable identifier
/// `sweep/r<n>.<i>/m<m>.<j>`.
#[derive(Clone, Debug)]
pub struct SweepMember {
    pub id: String,
    pub module: Arc<Semimodule>,
}

pub fn sweep(spec: &SweepSpec) -> Vec<SweepMember> {
    let mut out = Vec::new();
    for n in 2..=spec.max_ring {
        for (i, ring) in semirings(n).into_iter().enumerate() {
            let ring = Arc::new(ring);
            for m in 1..=spec.max_module {
                for (j, module) in semimodules(&ring, m).into_iter().enumerate() {
                    out.push(SweepMember {
                        id: format!("sweep/r{n}.{i}/m{m}.{j}"),
                        module: Arc::new(module),
                    });
                }
            }
        }
    }
    out
}
