use std::sync::Arc;

use super::{Homomorphism, Semimodule};
use crate::bits::SubsetMask;
use crate::error::{Error, Result};

/// `M/N` under the Bourne congruence together with its projection.
#[derive(Clone, Debug)]
pub struct BourneQuotient {
    pub quotient: Arc<Semimodule>,
    pub projection: Homomorphism,
    /// Congruence classes as subsets of `M`, ordered by least member.
    pub classes: Vec<SubsetMask>,
}

/// Quotient of `module` by the Bourne congruence of `n`:
/// `x ≡ y` iff `x + a = y + b` for some `a, b ∈ n`.
///
/// Quotient elements are labelled `[x]` with `x` the least member of the
/// class in carrier order.
pub fn quotient_bourne(module: &Arc<Semimodule>, n: SubsetMask) -> Result<BourneQuotient> {
    if !module.is_subsemimodule(n) {
        return Err(Error::Malformed(format!("{} is not a subsemimodule", module.show(n))));
    }
    let size = module.len();
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    // Every x with x + a = v (a ∈ n) lands in the class of the first such x.
    let mut first_reaching: Vec<Option<usize>> = vec![None; size];
    for x in 0..size {
        for a in n.iter() {
            let v = module.add(x, a);
            match first_reaching[v] {
                None => first_reaching[v] = Some(x),
                Some(y) => {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
    }
    let roots: Vec<usize> = (0..size).map(|x| find(&mut parent, x)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let class_of: Vec<usize> = roots
        .iter()
        .map(|r| reps.binary_search(r).expect("root is a representative"))
        .collect();
    let classes: Vec<SubsetMask> = (0..reps.len())
        .map(|c| SubsetMask::from_indices((0..size).filter(|&x| class_of[x] == c)))
        .collect();
    let labels = reps.iter().map(|&r| format!("[{}]", module.label(r))).collect();
    let quotient = Arc::new(Semimodule::from_fn(
        module.ring().clone(),
        labels,
        class_of[module.zero()],
        |c, d| class_of[module.add(reps[c], reps[d])],
        |r, c| class_of[module.act(r, reps[c])],
    )?);
    let projection = Homomorphism::new(module.clone(), quotient.clone(), class_of)?;
    Ok(BourneQuotient {
        quotient,
        projection,
        classes,
    })
}
