//! Constructors for the standard families used by the corpus.
//!
//! Every constructor goes through the validating `from_tables` path, so a
//! returned structure has passed its verifier.

use std::sync::Arc;

use super::{Semimodule, Semiring};
use crate::error::{Error, Result};

fn numerals(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The Boolean semiring `{0, 1}` with `1 + 1 = 1`.
pub fn boolean() -> Semiring {
    Semiring::from_fn(numerals(2), 0, 1, |a, b| a | b, |a, b| a & b).expect("boolean semiring")
}

/// `{0, .., k}` with saturating addition and multiplication.
pub fn trunc_nat(k: usize) -> Result<Semiring> {
    if k < 1 {
        return Err(Error::InvalidParams {
            family: "trunc_nat",
            reason: format!("k = {k}, need k >= 1"),
        });
    }
    Semiring::from_fn(numerals(k + 1), 0, 1, |a, b| (a + b).min(k), |a, b| (a * b).min(k))
}

/// Integers modulo `n`.
pub fn zmod(n: usize) -> Result<Semiring> {
    if n < 2 {
        return Err(Error::InvalidParams {
            family: "zmod",
            reason: format!("n = {n}, need n >= 2"),
        });
    }
    Semiring::from_fn(numerals(n), 0, 1, |a, b| (a + b) % n, |a, b| (a * b) % n)
}

/// Componentwise product `R × S`, elements ordered with the first
/// coordinate most significant.
pub fn product(r: &Semiring, s: &Semiring) -> Result<Semiring> {
    let ns = s.len();
    let labels = (0..r.len() * ns)
        .map(|i| format!("({},{})", r.label(i / ns), s.label(i % ns)))
        .collect();
    let idx = |a: usize, b: usize| a * ns + b;
    Semiring::from_fn(
        labels,
        idx(r.zero(), s.zero()),
        idx(r.one(), s.one()),
        |x, y| idx(r.add(x / ns, y / ns), s.add(x % ns, y % ns)),
        |x, y| idx(r.mul(x / ns, y / ns), s.mul(x % ns, y % ns)),
    )
}

/// `R` as a module over itself.
pub fn self_module(ring: &Arc<Semiring>) -> Semimodule {
    Semimodule::from_fn(
        ring.clone(),
        ring.labels().to_vec(),
        ring.zero(),
        |a, b| ring.add(a, b),
        |r, a| ring.mul(r, a),
    )
    .expect("a semiring is a semimodule over itself")
}

/// `R^d` with componentwise operations; tuples in lexicographic order,
/// first coordinate most significant.
pub fn vector_module(ring: &Arc<Semiring>, d: usize) -> Result<Semimodule> {
    if d < 1 {
        return Err(Error::InvalidParams {
            family: "vector_module",
            reason: "dimension must be at least 1".into(),
        });
    }
    let n = ring.len();
    let size = n
        .checked_pow(d as u32)
        .filter(|&s| s <= crate::bits::MAX_CARRIER)
        .ok_or_else(|| Error::InvalidParams {
            family: "vector_module",
            reason: format!("{n}^{d} elements exceeds the carrier limit"),
        })?;
    let digits = |x: usize| -> Vec<usize> {
        let mut out = vec![0; d];
        let mut rest = x;
        for slot in out.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        out
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &c| acc * n + c);
    let labels = (0..size)
        .map(|x| {
            let parts: Vec<&str> = digits(x).iter().map(|&c| ring.label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero = encode(&vec![ring.zero(); d]);
    Semimodule::from_fn(
        ring.clone(),
        labels,
        zero,
        |x, y| {
            let (a, b) = (digits(x), digits(y));
            let s: Vec<usize> = a.iter().zip(&b).map(|(&p, &q)| ring.add(p, q)).collect();
            encode(&s)
        },
        |r, x| {
            let s: Vec<usize> = digits(x).iter().map(|&p| ring.mul(r, p)).collect();
            encode(&s)
        },
    )
}

/// A structure produced by [`make_standard`].
#[derive(Clone, Debug)]
pub enum Standard {
    Semiring(Arc<Semiring>),
    Semimodule(Semimodule),
}

/// Builds a standard structure from a textual family expression:
/// `boolean`, `trunc_nat(k)`, `zmod(n)`, `product(R,S)`, `self_module(R)`,
/// `vector_module(R,d)`.
pub fn make_standard(expr: &str) -> Result<Standard> {
    let expr = expr.trim();
    let (head, args) = match expr.find('(') {
        Some(open) => {
            if !expr.ends_with(')') {
                return Err(Error::Usage(format!("unbalanced expression {expr:?}")));
            }
            (&expr[..open], split_args(&expr[open + 1..expr.len() - 1])?)
        }
        None => (expr, Vec::new()),
    };
    let ring_arg = |i: usize| -> Result<Arc<Semiring>> {
        match make_standard(args.get(i).ok_or_else(|| arity(head))?)? {
            Standard::Semiring(r) => Ok(r),
            Standard::Semimodule(_) => Err(Error::Usage(format!("{head} expects a semiring argument"))),
        }
    };
    let int_arg = |i: usize| -> Result<usize> {
        args.get(i)
            .ok_or_else(|| arity(head))?
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Usage(format!("{head}: {e}")))
    };
    Ok(match head.trim() {
        "boolean" => Standard::Semiring(Arc::new(boolean())),
        "trunc_nat" => Standard::Semiring(Arc::new(trunc_nat(int_arg(0)?)?)),
        "zmod" => Standard::Semiring(Arc::new(zmod(int_arg(0)?)?)),
        "product" => Standard::Semiring(Arc::new(product(&*ring_arg(0)?, &*ring_arg(1)?)?)),
        "self_module" => Standard::Semimodule(self_module(&ring_arg(0)?)),
        "vector_module" => Standard::Semimodule(vector_module(&ring_arg(0)?, int_arg(1)?)?),
        other => return Err(Error::Usage(format!("unknown standard family {other:?}"))),
    })
}

fn arity(head: &str) -> Error {
    Error::Usage(format!("{head}: missing argument"))
}

fn split_args(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Usage(format!("unbalanced expression {s:?}")));
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Curated named structures. Names: `B`, `N2`, `N3`, `Z2`/`F2`, `Z3`, `Z4`,
/// `Z6`, `F2^2`, `F2^3`, `B^2`.
pub fn named(name: &str) -> Option<Semimodule> {
    let ring = |r: Result<Semiring>| Arc::new(r.expect("curated semiring"));
    Some(match name {
        "B" => self_module(&Arc::new(boolean())),
        "N2" => self_module(&ring(trunc_nat(2))),
        "N3" => self_module(&ring(trunc_nat(3))),
        "Z2" | "F2" => self_module(&ring(zmod(2))),
        "Z3" => self_module(&ring(zmod(3))),
        "Z4" => self_module(&ring(zmod(4))),
        "Z6" => self_module(&ring(zmod(6))),
        "F2^2" => vector_module(&ring(zmod(2)), 2).ok()?,
        "F2^3" => vector_module(&ring(zmod(2)), 3).ok()?,
        "B^2" => vector_module(&Arc::new(boolean()), 2).ok()?,
        _ => return None,
    })
}

/// Names of the curated corpus, in corpus order.
pub const CURATED: [&str; 9] = ["B", "N2", "N3", "Z3", "Z4", "Z6", "F2^2", "F2^3", "B^2"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_semimodule, verify_semiring, Validation};

    #[test]
    fn families_pass_their_verifiers() {
        for r in [
            boolean(),
            trunc_nat(1).unwrap(),
            trunc_nat(2).unwrap(),
            trunc_nat(3).unwrap(),
            zmod(2).unwrap(),
            zmod(6).unwrap(),
            product(&boolean(), &zmod(2).unwrap()).unwrap(),
        ] {
            assert_eq!(verify_semiring(&r.tables()).unwrap(), Validation::Ok);
        }
        for name in CURATED {
            let m = named(name).unwrap();
            assert_eq!(
                verify_semimodule(m.ring(), &m.tables()).unwrap(),
                Validation::Ok,
                "{name}"
            );
        }
    }

    #[test]
    fn trunc_nat_two_saturates() {
        let n2 = trunc_nat(2).unwrap();
        assert_eq!(n2.labels(), ["0", "1", "2"]);
        assert_eq!(n2.add(1, 1), 2);
        assert_eq!(n2.add(2, 2), 2);
        assert_eq!(n2.mul(2, 2), 2);
    }

    #[test]
    fn bad_params_are_rejected() {
        assert!(matches!(trunc_nat(0), Err(Error::InvalidParams { .. })));
        assert!(matches!(zmod(1), Err(Error::InvalidParams { .. })));
    }

    #[test]
    fn expressions_parse() {
        match make_standard("vector_module(zmod(2),2)").unwrap() {
            Standard::Semimodule(m) => {
                assert_eq!(m.labels(), ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
            }
            _ => panic!(),
        }
        match make_standard("product(boolean, trunc_nat(2))").unwrap() {
            Standard::Semiring(r) => assert_eq!(r.len(), 6),
            _ => panic!(),
        }
        assert!(make_standard("zmod(1)").is_err());
        assert!(make_standard("nope").is_err());
    }
}
