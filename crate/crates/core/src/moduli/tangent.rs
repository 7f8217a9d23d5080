use serde::{Deserialize, Serialize};

use super::aut::{SemidirectData, TwistAut};
use super::points::TameParameterPoint;
use super::ModuliError;
use crate::exactalg::IntMatrix;
use crate::fingrp::{make_field, FiniteField, FqMatrix, GroupKind, GroupSpecFin};

/// Tangent space and twisted invariants at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    #[serde(rename = "dim")]
    pub dim_tangent: usize,
    #[serde(rename = "h0")]
    pub dim_h0_twist: usize,
    pub dim_group: usize,
    pub unobstructed: bool,
}

impl TangentReport {
    /// `dim T = dim g + h0`.
    pub fn equality_holds(&self) -> bool {
        self.dim_tangent == self.dim_group + self.dim_h0_twist
    }

    /// Both dimensions from the operators `A_s`, `A_fr` on a `d`-dimensional space.
    pub fn from_operators(a_s: &FqMatrix, a_fr: &FqMatrix, q: u64, f: &FiniteField) -> Self {
        let d = a_s.n();
        let id = FqMatrix::identity(f, d);
        let mut sum = FqMatrix::scalar(f, d, 0);
        let mut pw = id.clone();
        for _ in 0..q {
            sum = sum.add(&pw, f);
            pw = pw.mul(a_s, f);
        }
        // pw = A_s^q
        let left = id.sub(&pw, f);
        let right = a_fr.sub(&sum, f);
        let mut rel = Vec::with_capacity(2 * d * d);
        for i in 0..d {
            rel.extend((0..d).map(|j| left.get(i, j)));
            rel.extend((0..d).map(|j| right.get(i, j)));
        }
        let dim_tangent = 2 * d - FqMatrix::rank_of(d, 2 * d, &rel, f);

        let qa = a_fr.scale(f.from_int(q as i64), f).sub(&id, f);
        let fix = a_s.sub(&id, f);
        let mut h0 = fix.entries().to_vec();
        h0.extend_from_slice(qa.entries());
        let dim_h0_twist = d - FqMatrix::rank_of(2 * d, d, &h0, f);
        Self {
            dim_tangent,
            dim_h0_twist,
            dim_group: d,
            unobstructed: dim_h0_twist == 0,
        }
    }
}

/// Basis of the matrix Lie algebra of the group, with the coordinate
/// positions: a basis vector is `1` at its own position and `0` at the others.
pub struct LieBasis {
    pub basis: Vec<FqMatrix>,
    positions: Vec<usize>,
}

impl LieBasis {
    pub fn of(spec: &GroupSpecFin) -> Result<Self, ModuliError> {
        let f = spec.field();
        let n = spec.n();
        let nn = n * n;
        let conds: Vec<u32> = match spec.kind() {
            GroupKind::GL => Vec::new(),
            GroupKind::SL => (0..nn).map(|p| u32::from(p / n == p % n)).collect(),
            GroupKind::Sp => {
                // X^T J + J X = 0, one row per entry (a, b)
                let j = spec.form().expect("symplectic form");
                let mut rows = Vec::with_capacity(nn * nn);
                for a in 0..n {
                    for b in 0..n {
                        let mut row = vec![0u32; nn];
                        for c in 0..n {
                            // (X^T J)_{ab} = sum_c X_{ca} J_{cb}
                            row[c * n + a] = f.add(row[c * n + a], j.get(c, b));
                            // (J X)_{ab} = sum_c J_{ac} X_{cb}
                            row[c * n + b] = f.add(row[c * n + b], j.get(a, c));
                        }
                        rows.extend(row);
                    }
                }
                rows
            }
            GroupKind::U => return Err(ModuliError::NotSupported("unitary Lie algebra".into())),
        };
        let rows = conds.len() / nn.max(1);
        let (kernel, positions) = FqMatrix::nullspace_with_free(rows, nn, &conds, f);
        let basis = kernel.into_iter().map(|v| FqMatrix::new(f, n, v)).collect();
        Ok(Self { basis, positions })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &FqMatrix) -> Vec<u32> {
        self.positions.iter().map(|&p| x.entries()[p]).collect()
    }

    /// Matrix of a linear operator on the Lie algebra.
    pub fn operator(&self, f: &FiniteField, op: impl Fn(&FqMatrix) -> FqMatrix) -> FqMatrix {
        let d = self.dim();
        let mut e = vec![0u32; d * d];
        for (j, b) in self.basis.iter().enumerate() {
            for (i, c) in self.coords(&op(b)).into_iter().enumerate() {
                e[i * d + j] = c;
            }
        }
        FqMatrix::new(f, d, e)
    }
}

fn ad_twisted(g: &FqMatrix, theta: &TwistAut, basis: &LieBasis, f: &FiniteField) -> FqMatrix {
    let gi = g.inverse(f).expect("invertible");
    basis.operator(f, |y| g.mul(&theta.apply_lie(y, f), f).mul(&gi, f))
}

/// Linearized relation and twisted invariants at a point, with
/// `A_s = Ad(sigma0) d theta_s` and `A_fr = Ad(F0) d theta_fr`.
pub fn tangent_report(
    pt: &TameParameterPoint,
    spec: &GroupSpecFin,
    sd: &SemidirectData,
) -> Result<TangentReport, ModuliError> {
    let f = spec.field();
    let basis = LieBasis::of(spec)?;
    let a_s = ad_twisted(&pt.sigma0, sd.theta_s(), &basis, f);
    let a_fr = ad_twisted(&pt.f0, sd.theta_fr(), &basis, f);
    Ok(TangentReport::from_operators(&a_s, &a_fr, sd.q(), f))
}

/// Tangent report for a split torus of rank `r` over `F_ell` on which `s`
/// acts trivially and `Fr` through the integer matrix `beta`.
pub fn torus_tangent_report(
    beta: &IntMatrix,
    q: u64,
    ell: u32,
) -> Result<TangentReport, ModuliError> {
    let f = make_field(ell, 1)?;
    let r = beta.rows();
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let m = beta.get(i, j) % num_bigint::BigInt::from(ell);
                    i64::try_from(m).expect("reduced entry")
                })
                .collect()
        })
        .collect();
    let a_fr = FqMatrix::from_int_rows(&f, &rows);
    Ok(TangentReport::from_operators(
        &FqMatrix::identity(&f, r),
        &a_fr,
        q,
        &f,
    ))
}
