use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::aut::TwistAut;
use super::ModuliError;
use crate::decimal;
use crate::exactalg::{hermite_rows, integer_kernel, smith_normal_form, IntMatrix};
use crate::fingrp::{FiniteField, FqMatrix};

/// First cohomology of tame inertia, and its Frobenius coinvariants, as
/// invariant-factor lists (empty for the trivial group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCohomology {
    #[serde(with = "decimal::big_vec")]
    pub h1_inertia: Vec<BigInt>,
    #[serde(with = "decimal::big_vec")]
    pub h1_total: Vec<BigInt>,
}

/// Finite abelian group `Z/n_1 + ... + Z/n_r` with endomorphisms given by
/// integer matrices acting on columns of generator coordinates.
struct Abelian {
    moduli: Vec<BigInt>,
}

impl Abelian {
    fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn is_endomorphism(&self, m: &IntMatrix) -> bool {
        let r = self.rank();
        m.rows() == r
            && m.cols() == r
            && (0..r).all(|i| {
                (0..r).all(|j| (&self.moduli[j] * m.get(i, j)).is_multiple_of(&self.moduli[i]))
            })
    }

    fn equal(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| (a.get(i, j) - b.get(i, j)).is_multiple_of(&self.moduli[i])))
    }

    fn reduce(&self, a: &IntMatrix) -> IntMatrix {
        let r = self.rank();
        let mut out = a.clone();
        for i in 0..r {
            for j in 0..r {
                out.set(i, j, a.get(i, j).mod_floor(&self.moduli[i]));
            }
        }
        out
    }

    fn power_sum(&self, s: &IntMatrix, m: u64) -> IntMatrix {
        let r = self.rank();
        let mut acc = IntMatrix::zeros(r, r);
        let mut p = IntMatrix::identity(r);
        for _ in 0..m {
            acc = self.reduce(&acc.add(&p));
            p = self.reduce(&(&p * s));
        }
        acc
    }

    fn diag(&self) -> IntMatrix {
        let r = self.rank();
        let mut d = IntMatrix::zeros(r, r);
        for (i, n) in self.moduli.iter().enumerate() {
            d.set(i, i, n.clone());
        }
        d
    }
}

const AUT_ORDER_LIMIT: u64 = 100_000;

/// Invariant factors `> 1` of `S / R` for full-rank row lattices `R <= S`.
fn lattice_quotient(s_rows: &IntMatrix, r_rows: &IntMatrix) -> Result<Vec<BigInt>, ModuliError> {
    let s = hermite_rows(s_rows);
    let n = s.cols();
    if s.rows() != n {
        return Err(ModuliError::BadInput("lattice is not of full rank".into()));
    }
    let mut coords = IntMatrix::zeros(r_rows.rows(), n);
    for k in 0..r_rows.rows() {
        // solve x S = row, S upper triangular
        let mut rem: Vec<BigInt> = r_rows.row(k).to_vec();
        for j in 0..n {
            let piv = s.get(j, j);
            let (x, r) = rem[j].div_rem(piv);
            if !r.is_zero() {
                return Err(ModuliError::BadAction(
                    "action does not preserve the cocycle lattice".into(),
                ));
            }
            for (c, val) in rem.iter_mut().enumerate().skip(j) {
                *val -= &x * s.get(j, c);
            }
            coords.set(k, j, x);
        }
    }
    let snf = smith_normal_form(&coords);
    let mut out: Vec<BigInt> = snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    if out.iter().any(|d| d.is_zero()) || snf.invariant_factors().len() < n {
        return Err(ModuliError::BadInput("quotient is infinite".into()));
    }
    out.iter_mut().for_each(|d| *d = d.abs());
    Ok(out)
}

fn image_rows(m: &IntMatrix, basis: &IntMatrix) -> IntMatrix {
    // row b maps to (m b^T)^T = b m^T
    basis * &m.transpose()
}

/// `H^1(I, A) = N_M^{-1}(A[p']) / (1 - sigma) A` for tame inertia acting on
/// `A` through `sigma` of order dividing `m_order`, and its coinvariants under
/// `[a] -> [Fr^-1 N_q(a)]`.
pub fn cyclic_cohomology(
    invariants: &[u64],
    sigma: &IntMatrix,
    fr: &IntMatrix,
    q: u64,
    m_order: u64,
    p: u64,
) -> Result<CyclicCohomology, ModuliError> {
    if invariants.contains(&0) {
        return Err(ModuliError::BadInput("A must be finite".into()));
    }
    if m_order == 0 {
        return Err(ModuliError::BadInput("M must be positive".into()));
    }
    let keep: Vec<usize> = (0..invariants.len())
        .filter(|&i| invariants[i] > 1)
        .collect();
    if keep.is_empty() {
        return Ok(CyclicCohomology {
            h1_inertia: vec![],
            h1_total: vec![],
        });
    }
    let sub = |m: &IntMatrix| -> IntMatrix {
        let r = keep.len();
        let mut out = IntMatrix::zeros(r, r);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out.set(a, b, m.get(i, j).clone());
            }
        }
        out
    };
    let a = Abelian {
        moduli: keep.iter().map(|&i| BigInt::from(invariants[i])).collect(),
    };
    let r = a.rank();
    if sigma.rows() != invariants.len() || fr.rows() != invariants.len() {
        return Err(ModuliError::BadInput(
            "action matrices have the wrong size".into(),
        ));
    }
    let (sigma, fr) = (sub(sigma), sub(fr));
    if !a.is_endomorphism(&sigma) || !a.is_endomorphism(&fr) {
        return Err(ModuliError::BadAction(
            "matrix is not an endomorphism of A".into(),
        ));
    }
    let id = IntMatrix::identity(r);
    if !a.equal(&sigma.pow(m_order), &id) {
        return Err(ModuliError::BadAction("sigma^M != 1 on A".into()));
    }
    if !a.equal(&(&fr * &sigma), &(&sigma.pow(q) * &fr)) {
        return Err(ModuliError::BadAction(
            "Fr sigma Fr^-1 != sigma^q on A".into(),
        ));
    }
    // Fr^-1 = Fr^(ord - 1)
    let mut fr_inv = id.clone();
    let mut cur = a.reduce(&fr);
    let mut ord = 1;
    while !a.equal(&cur, &id) {
        fr_inv = cur.clone();
        cur = a.reduce(&(&cur * &fr));
        ord += 1;
        if ord > AUT_ORDER_LIMIT {
            return Err(ModuliError::BadAction(
                "Fr is not an automorphism of A".into(),
            ));
        }
    }

    let d = a.diag();
    // A[p'] = p^e A + (lattice of A)
    let mut pe = BigInt::one();
    if p > 1 {
        let pb = BigInt::from(p);
        for n in &a.moduli {
            let mut t = n.clone();
            let mut k = BigInt::one();
            while t.is_multiple_of(&pb) {
                t /= &pb;
                k *= &pb;
            }
            pe = pe.lcm(&k);
        }
    }
    let lp = d.vstack(&IntMatrix::identity(r).scale(&pe));
    let lp = hermite_rows(&lp);
    // S = {x : N_M x in L'}: kernel of [N_M | -L'^T]
    let nm = a.power_sum(&sigma, m_order);
    let big = nm.hstack(&lp.transpose().scale(&BigInt::from(-1)));
    let ker = integer_kernel(&big);
    let mut s_rows = IntMatrix::zeros(ker.rows(), r);
    for i in 0..ker.rows() {
        for j in 0..r {
            s_rows.set(i, j, ker.get(i, j).clone());
        }
    }
    let s_rows = hermite_rows(&s_rows.vstack(&d));
    let b_rows = image_rows(&id.sub(&sigma), &IntMatrix::identity(r)).vstack(&d);
    let h1_inertia = lattice_quotient(&s_rows, &b_rows)?;

    let psi = a.reduce(&(&fr_inv * &a.power_sum(&sigma, q)));
    let moved = image_rows(&psi.sub(&id), &s_rows);
    let h1_total = lattice_quotient(&s_rows, &b_rows.vstack(&moved))?;
    Ok(CyclicCohomology {
        h1_inertia,
        h1_total,
    })
}

/// Guard for [`h1_finite`]: `m * |H|`.
pub const H1_FINITE_LIMIT: u64 = 1_000_000;

/// `H^1(Z/m, H)` for a finite matrix group `H` on which the generator acts by
/// `action`: cocycles `h` with `h action(h) ... action^{m-1}(h) = 1` up to
/// `h -> g h action(g)^-1`. Returns the least element of each class and the
/// class size, ordered by representative.
pub fn h1_finite(
    m: u64,
    action: &TwistAut,
    elements: &[FqMatrix],
    f: &FiniteField,
) -> Result<Vec<(FqMatrix, usize)>, ModuliError> {
    if m == 0 {
        return Err(ModuliError::BadInput("m must be positive".into()));
    }
    let work = m.saturating_mul(elements.len() as u64);
    if work > H1_FINITE_LIMIT {
        return Err(ModuliError::TooManyPairs {
            pairs: work.to_string(),
            cap: H1_FINITE_LIMIT,
        });
    }
    if elements.iter().any(|g| &action.apply_n(g, m, f) != g) {
        return Err(ModuliError::BadAction(
            "action order does not divide m".into(),
        ));
    }
    let Some(first) = elements.first() else {
        return Ok(Vec::new());
    };
    let one = FqMatrix::identity(f, first.n());
    let mut cocycles: Vec<FqMatrix> = elements
        .iter()
        .filter(|h| {
            let mut acc = one.clone();
            let mut t = (*h).clone();
            for i in 0..m {
                if i > 0 {
                    t = action.apply(&t, f);
                }
                acc = acc.mul(&t, f);
            }
            acc.is_identity()
        })
        .cloned()
        .collect();
    cocycles.sort();
    let twisted: Vec<(FqMatrix, FqMatrix)> = elements
        .iter()
        .map(|g| {
            (
                g.clone(),
                action.apply(g, f).inverse(f).expect("invertible"),
            )
        })
        .collect();
    let mut seen: HashSet<FqMatrix> = HashSet::new();
    let mut out = Vec::new();
    for h in cocycles {
        if seen.contains(&h) {
            continue;
        }
        let orbit: HashSet<FqMatrix> = twisted
            .iter()
            .map(|(g, gi)| g.mul(&h, f).mul(gi, f))
            .collect();
        out.push((h, orbit.len()));
        seen.extend(orbit);
    }
    Ok(out)
}
