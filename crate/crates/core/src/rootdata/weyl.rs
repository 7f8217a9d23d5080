use std::collections::HashSet;

use num_bigint::BigInt;

use super::datum::BasedRootDatum;
use super::RootError;
use crate::exactalg::IntMatrix;

pub const DEFAULT_WEYL_BOUND: usize = 2_000_000;

fn mul_flat(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// Weyl group as flat row-major `i64` matrices, in breadth-first order from
/// the identity.
pub fn weyl_elements_flat(d: &BasedRootDatum, bound: usize) -> Result<Vec<Vec<i64>>, RootError> {
    if d.weyl_order() > bound as u128 {
        // enumeration would stop at bound + 1 elements
        return Err(RootError::WeylTooLarge { count: bound + 1 });
    }
    let n = d.rank();
    let gens: Vec<Vec<i64>> = (0..d.semisimple_rank())
        .map(|i| d.simple_reflection(i))
        .collect();
    let mut id = vec![0i64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(id.clone());
    let mut all = vec![id];
    let mut k = 0;
    while k < all.len() {
        for g in &gens {
            let w = mul_flat(g, &all[k], n);
            if seen.insert(w.clone()) {
                all.push(w);
                if all.len() > bound {
                    return Err(RootError::WeylTooLarge { count: all.len() });
                }
            }
        }
        k += 1;
    }
    Ok(all)
}

/// All elements of the Weyl group as matrices on `X`.
pub fn weyl_elements(d: &BasedRootDatum, bound: usize) -> Result<Vec<IntMatrix>, RootError> {
    let n = d.rank();
    Ok(weyl_elements_flat(d, bound)?
        .into_iter()
        .map(|w| IntMatrix::new(n, n, w.into_iter().map(BigInt::from).collect()))
        .collect())
}
