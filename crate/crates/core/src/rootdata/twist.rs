use num_bigint::BigInt;
use serde::Serialize;

use super::datum::{build_blocks_twisted, BasedRootDatum, FactorKind};
use super::{cartan, RootError};
use crate::exactalg::IntMatrix;

const ORDER_LIMIT: u64 = 10_000;

/// Automorphism of a based root datum, acting on `X` (column convention).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramAutomorphism {
    lattice_matrix: IntMatrix,
    simple_perm: Vec<usize>,
    order: u64,
    /// Twist order per factor when built from a label; `None` for custom matrices.
    #[serde(skip)]
    factor_orders: Option<Vec<u32>>,
}

impl DiagramAutomorphism {
    pub fn identity(d: &BasedRootDatum) -> Self {
        Self {
            lattice_matrix: IntMatrix::identity(d.rank()),
            simple_perm: (0..d.semisimple_rank()).collect(),
            order: 1,
            factor_orders: Some(vec![1; d.factors().len()]),
        }
    }

    /// Validates an arbitrary lattice automorphism preserving `Delta`.
    pub fn from_matrix(d: &BasedRootDatum, m: IntMatrix) -> Result<Self, RootError> {
        let mut a = Self::validate(d, m)?;
        if a.order == 1 {
            a.factor_orders = Some(vec![1; d.factors().len()]);
        }
        Ok(a)
    }

    /// Applies the standard twist of the given order to each factor.
    pub fn from_factor_orders(d: &BasedRootDatum, orders: &[u32]) -> Result<Self, RootError> {
        if orders.len() != d.factors().len() {
            return Err(RootError::InvalidAutomorphism(format!(
                "{} twist orders for {} factors",
                orders.len(),
                d.factors().len()
            )));
        }
        let n = d.rank();
        let mut m = IntMatrix::zeros(n, n);
        for (f, &ord) in d.factors().iter().zip(orders) {
            let block = factor_twist(f.kind, f.family, f.ss_rank, f.dim, ord).ok_or_else(|| {
                RootError::NoSuchTwist {
                    label: f.label.clone(),
                    order: ord,
                }
            })?;
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(f.offset + i, f.offset + j, BigInt::from(v));
                }
            }
        }
        let mut a = Self::validate(d, m)?;
        a.factor_orders = Some(orders.to_vec());
        Ok(a)
    }

    fn validate(d: &BasedRootDatum, m: IntMatrix) -> Result<Self, RootError> {
        let n = d.rank();
        if m.rows() != n || m.cols() != n {
            return Err(RootError::InvalidAutomorphism(format!(
                "expected {n}x{n} matrix"
            )));
        }
        let order = m
            .finite_order(ORDER_LIMIT)
            .ok_or_else(|| RootError::InvalidAutomorphism("infinite order".into()))?;
        let simple = d.simple_roots();
        let mut perm = Vec::with_capacity(simple.len());
        for a in &simple {
            let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
            let img = m.mul_vec(&v);
            let j = simple
                .iter()
                .position(|b| b.iter().zip(&img).all(|(x, y)| BigInt::from(*x) == *y))
                .ok_or_else(|| {
                    RootError::InvalidAutomorphism("simple roots not permuted".into())
                })?;
            perm.push(j);
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != perm.len() {
            return Err(RootError::InvalidAutomorphism("not a permutation".into()));
        }
        // coroots must be permuted compatibly: <beta a_i, beta^-T c_j> = <a_i, c_j>
        // follows once the Cartan matrix is preserved
        let c = d.cartan();
        for i in 0..perm.len() {
            for j in 0..perm.len() {
                if c.get(perm[i], perm[j]) != c.get(i, j) {
                    return Err(RootError::InvalidAutomorphism(
                        "Cartan matrix not preserved".into(),
                    ));
                }
            }
        }
        Ok(Self {
            lattice_matrix: m,
            simple_perm: perm,
            order,
            factor_orders: None,
        })
    }

    pub fn lattice_matrix(&self) -> &IntMatrix {
        &self.lattice_matrix
    }

    pub fn simple_perm(&self) -> &[usize] {
        &self.simple_perm
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn factor_orders(&self) -> Option<&[u32]> {
        self.factor_orders.as_deref()
    }

    pub fn inverse(&self) -> Self {
        let mut inv_perm = vec![0; self.simple_perm.len()];
        for (i, &j) in self.simple_perm.iter().enumerate() {
            inv_perm[j] = i;
        }
        Self {
            lattice_matrix: self.lattice_matrix.pow(self.order - 1),
            simple_perm: inv_perm,
            order: self.order,
            factor_orders: self.factor_orders.clone(),
        }
    }
}

fn factor_twist(
    kind: FactorKind,
    family: Option<cartan::Family>,
    ss_rank: usize,
    dim: usize,
    order: u32,
) -> Option<Vec<Vec<i64>>> {
    let mut m = vec![vec![0i64; dim]; dim];
    if order == 1 {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        return Some(m);
    }
    match (kind, order) {
        (FactorKind::GeneralLinear, 2) => {
            for i in 0..dim {
                m[dim - 1 - i][i] = -1;
            }
        }
        (FactorKind::Torus, 2) => {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = -1;
            }
        }
        (FactorKind::EvenOrthogonal, 2) => {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            m[dim - 1][dim - 1] = -1;
        }
        (FactorKind::Adjoint | FactorKind::SpecialLinear, _) => {
            let p = cartan::diagram_symmetry(family?, ss_rank, order)?;
            for (j, &pj) in p.iter().enumerate() {
                m[pj][j] = 1;
            }
        }
        _ => return None,
    }
    Some(m)
}

/// Parses a label with optional `^k` suffixes and builds datum plus twist.
pub fn build_twisted(spec: &str) -> Result<(BasedRootDatum, DiagramAutomorphism), RootError> {
    let (d, orders) = build_blocks_twisted(spec)?;
    let beta = DiagramAutomorphism::from_factor_orders(&d, &orders)?;
    Ok((d, beta))
}
