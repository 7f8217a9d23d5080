use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::aut::SemidirectData;
use super::points::TameParameterPoint;
use super::ModuliError;
use crate::fingrp::{make_field, FiniteField, FqMatrix, GroupKind, GroupSpecFin};

/// A point built from a cocharacter, with the field it lives over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Parameter {
    pub point: TameParameterPoint,
    pub field: FiniteField,
    /// Square root of `q` used for `lambda(S)`; `None` when all weights are
    /// even and `q` itself suffices.
    pub r: Option<u32>,
}

/// Splits a weight list into strings `w, w-2, ..., -w`, each given as the
/// positions carrying those weights in descending order.
fn weight_strings(weights: &[i64]) -> Result<Vec<Vec<usize>>, ModuliError> {
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &w) in weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(i);
    }
    for v in by_weight.values_mut() {
        v.reverse();
    }
    let mut strings = Vec::new();
    while let Some((&top, _)) = by_weight.iter().next_back() {
        if top < 0 {
            return Err(ModuliError::BadInput(
                "weights are not those of an sl2 representation".into(),
            ));
        }
        let mut s = Vec::new();
        let mut w = top;
        while w >= -top {
            let slot = by_weight.get_mut(&w).and_then(Vec::pop).ok_or_else(|| {
                ModuliError::BadInput("weights are not those of an sl2 representation".into())
            })?;
            if by_weight.get(&w).is_some_and(Vec::is_empty) {
                by_weight.remove(&w);
            }
            s.push(slot);
            w -= 2;
        }
        strings.push(s);
    }
    Ok(strings)
}

fn binomial_mod(n: usize, k: usize, f: &FiniteField) -> u32 {
    let mut c = 1u128;
    for i in 0..k {
        c = c * (n - i) as u128 / (i as u128 + 1);
    }
    f.from_int((c % u128::from(f.ell())) as i64)
}

/// `sigma0 = lambda(U)`, `F0 = lambda(S) F_part` for the principal
/// `SL2 -> GL_n` with the given diagonal weights, `U = [[1,1],[0,1]]` and
/// `S = diag(r, r^-1)`, `r^2 = q`.
///
/// If `q` has no square root in the field, the degree is doubled; this is
/// only possible when `F_part` has prime-field entries.
pub fn sl2_parameter(
    weights: &[i64],
    f_part: &FqMatrix,
    field: &FiniteField,
    q: u64,
) -> Result<Sl2Parameter, ModuliError> {
    let n = weights.len();
    if f_part.n() != n {
        return Err(ModuliError::BadInput("F_part has the wrong size".into()));
    }
    let strings = weight_strings(weights)?;
    let qe = field.from_int((q % u64::from(field.ell())) as i64);
    let odd = weights.iter().any(|w| w % 2 != 0);
    let (field, f_part, r) = match field.sqrt(qe) {
        _ if !odd => (field.clone(), f_part.clone(), None),
        Some(r) => (field.clone(), f_part.clone(), Some(r)),
        None => {
            if field.k() != 1 {
                return Err(ModuliError::BadInput(
                    "no square root of q and F_part is not over the prime field".into(),
                ));
            }
            let big = make_field(field.ell(), 2 * field.k())?;
            let qb = big.from_int((q % u64::from(big.ell())) as i64);
            let r = big
                .sqrt(qb)
                .expect("every element of F_ell is a square in F_ell^2");
            let fp = FqMatrix::new(&big, n, f_part.entries().to_vec());
            (big, fp, Some(r))
        }
    };
    let f = &field;
    let mut u = FqMatrix::identity(f, n).entries().to_vec();
    for s in &strings {
        for (i, &pi) in s.iter().enumerate() {
            for (j, &pj) in s.iter().enumerate().take(i) {
                u[pj * n + pi] = binomial_mod(i, j, f);
            }
        }
    }
    // lambda(S) = diag(r^w), or diag(q^(w/2)) when every weight is even
    let (base, step) = match r {
        Some(r) => (r, 1),
        None => (f.from_int((q % u64::from(f.ell())) as i64), 2),
    };
    let binv = f.inv(base).expect("q is prime to ell");
    let diag: Vec<u32> = weights
        .iter()
        .map(|&w| {
            let e = w.unsigned_abs() / step;
            if w >= 0 {
                f.pow(base, e)
            } else {
                f.pow(binv, e)
            }
        })
        .collect();
    let sigma0 = FqMatrix::new(f, n, u);
    let f0 = FqMatrix::diag(f, &diag).mul(&f_part, f);
    let spec = GroupSpecFin::new(GroupKind::GL, n, field.clone())?;
    let sd = SemidirectData::trivial(q);
    let point = TameParameterPoint::new(f0, sigma0, &spec, &sd)
        .map_err(|_| ModuliError::BadInput("F_part does not centralize the cocharacter".into()))?;
    Ok(Sl2Parameter { point, field, r })
}
