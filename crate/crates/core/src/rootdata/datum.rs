use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::cartan::{self, Family};
use super::RootError;
use crate::exactalg::IntMatrix;

const MAX_CLASSICAL_RANK: usize = 12;

/// How a single simple factor (or torus) is realized on its block of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// `GL_n` on `Z^n`, roots `e_i - e_j`.
    GeneralLinear,
    /// `SL_n` on its weight lattice.
    SpecialLinear,
    /// `Sp_{2n}` on `Z^n`.
    Symplectic,
    /// `SO_{2n+1}` on `Z^n`.
    OddOrthogonal,
    /// `SO_{2n}` on `Z^n`.
    EvenOrthogonal,
    /// Adjoint group of a Cartan type, lattice spanned by the simple roots.
    Adjoint,
    /// Split torus of rank `r`.
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorInfo {
    pub label: String,
    pub kind: FactorKind,
    pub family: Option<Family>,
    pub ss_rank: usize,
    pub central_rank: usize,
    /// First lattice coordinate of this factor.
    pub offset: usize,
    pub dim: usize,
}

impl FactorInfo {
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![1; self.central_rank];
        if let Some(f) = self.family {
            d.extend(cartan::degrees(f, self.ss_rank));
        }
        d.sort_unstable();
        d
    }

    pub fn num_positive_roots(&self) -> u64 {
        let Some(f) = self.family else { return 0 };
        cartan::degrees(f, self.ss_rank).iter().map(|d| d - 1).sum()
    }

    pub fn is_exceptional(&self) -> bool {
        self.family.is_some_and(Family::is_exceptional)
    }
}

/// Based root datum `(X, X^vee, Delta, Delta^vee)` with all roots and coroots listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasedRootDatum {
    label: String,
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    /// Coefficients of each root in the basis of simple roots.
    root_coeffs: Vec<Vec<i64>>,
    simple_indices: Vec<usize>,
    cartan: IntMatrix,
    factors: Vec<FactorInfo>,
}

fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

struct Block {
    info: FactorInfo,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn from_cartan_block(label: &str, family: Family, n: usize, kind: FactorKind) -> Block {
    let c = cartan::cartan_matrix(family, n);
    let (roots, coroots) = match kind {
        // X = root lattice: alpha_j = e_j, coroot i = row i of C
        FactorKind::Adjoint => ((0..n).map(|j| unit(n, j)).collect(), c.clone()),
        // X = weight lattice: alpha_j = column j of C, coroot i = e_i
        FactorKind::SpecialLinear => (
            (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect(),
            (0..n).map(|i| unit(n, i)).collect(),
        ),
        _ => unreachable!(),
    };
    Block {
        info: FactorInfo {
            label: label.to_string(),
            kind,
            family: Some(family),
            ss_rank: n,
            central_rank: 0,
            offset: 0,
            dim: n,
        },
        simple_roots: roots,
        simple_coroots: coroots,
    }
}

fn classical_block(label: &str, kind: FactorKind, n: usize) -> Block {
    let diff = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..n.saturating_sub(1)).map(diff).collect();
    let mut coroots = roots.clone();
    let (family, ss_rank) = match kind {
        FactorKind::GeneralLinear => ((n >= 2).then_some(Family::A), n - 1),
        FactorKind::Symplectic => {
            let mut a = vec![0; n];
            a[n - 1] = 2;
            roots.push(a);
            coroots.push(unit(n, n - 1));
            (Some(Family::C), n)
        }
        FactorKind::OddOrthogonal => {
            roots.push(unit(n, n - 1));
            let mut a = vec![0; n];
            a[n - 1] = 2;
            coroots.push(a);
            (Some(Family::B), n)
        }
        FactorKind::EvenOrthogonal if n >= 2 => {
            let mut a = vec![0; n];
            a[n - 2] = 1;
            a[n - 1] = 1;
            roots.push(a.clone());
            coroots.push(a);
            (Some(Family::D), n)
        }
        FactorKind::EvenOrthogonal => {
            roots.clear();
            coroots.clear();
            (None, 0)
        }
        FactorKind::Torus => {
            roots.clear();
            coroots.clear();
            (None, 0)
        }
        _ => unreachable!(),
    };
    let ss_rank = if family.is_some() { ss_rank } else { 0 };
    Block {
        info: FactorInfo {
            label: label.to_string(),
            kind,
            family,
            ss_rank,
            central_rank: n - ss_rank,
            offset: 0,
            dim: n,
        },
        simple_roots: roots,
        simple_coroots: coroots,
    }
}

fn parse_number(s: &str, label: &str) -> Result<usize, RootError> {
    s.parse::<usize>()
        .map_err(|_| RootError::UnsupportedType(label.to_string()))
}

/// Builds one factor. `twist` selects the realization for triality.
fn build_block(token: &str, twist: u32) -> Result<Block, RootError> {
    let bad = || RootError::UnsupportedType(token.to_string());
    let check_rank = |n: usize| {
        if n == 0 || n > MAX_CLASSICAL_RANK + 1 {
            Err(bad())
        } else {
            Ok(n)
        }
    };
    if let Some(rest) = token.strip_prefix("GL") {
        let n = check_rank(parse_number(rest, token)?)?;
        return Ok(classical_block(token, FactorKind::GeneralLinear, n));
    }
    if let Some(rest) = token.strip_prefix("SL") {
        let n = check_rank(parse_number(rest, token)?)?;
        if n == 1 {
            return Ok(classical_block(token, FactorKind::Torus, 0));
        }
        return Ok(from_cartan_block(
            token,
            Family::A,
            n - 1,
            FactorKind::SpecialLinear,
        ));
    }
    if let Some(rest) = token.strip_prefix("Sp") {
        let n2 = parse_number(rest, token)?;
        if n2 % 2 != 0 || n2 == 0 || n2 / 2 > MAX_CLASSICAL_RANK {
            return Err(bad());
        }
        return Ok(classical_block(token, FactorKind::Symplectic, n2 / 2));
    }
    if let Some(rest) = token.strip_prefix("SO") {
        let m = parse_number(rest, token)?;
        if m < 2 || m / 2 > MAX_CLASSICAL_RANK {
            return Err(bad());
        }
        if m % 2 == 1 {
            return Ok(classical_block(token, FactorKind::OddOrthogonal, m / 2));
        }
        if m == 8 && twist == 3 {
            // the SO_8 lattice is not triality-stable; use the adjoint D4 lattice
            let mut b = from_cartan_block(token, Family::D, 4, FactorKind::Adjoint);
            b.info.label = token.to_string();
            return Ok(b);
        }
        return Ok(classical_block(token, FactorKind::EvenOrthogonal, m / 2));
    }
    if let Some(rest) = token.strip_prefix('T') {
        let r = parse_number(rest, token)?;
        return Ok(classical_block(token, FactorKind::Torus, r));
    }
    let mut chars = token.chars();
    let family = match chars.next() {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        Some('D') => Family::D,
        Some('G') => Family::G,
        Some('F') => Family::F,
        Some('E') => Family::E,
        _ => return Err(bad()),
    };
    let n = parse_number(chars.as_str(), token)?;
    if !cartan::is_valid_rank(family, n) || n > MAX_CLASSICAL_RANK {
        return Err(bad());
    }
    Ok(from_cartan_block(token, family, n, FactorKind::Adjoint))
}

/// Splits `"GL2xSO8^3"` into `[("GL2", 1), ("SO8", 3)]`.
pub fn parse_label(spec: &str) -> Result<Vec<(String, u32)>, RootError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(RootError::UnsupportedType(spec.to_string()));
    }
    spec.split(['x', '×'])
        .map(|tok| {
            let tok = tok.trim();
            match tok.split_once('^') {
                Some((name, ord)) => {
                    let ord: u32 = ord
                        .parse()
                        .map_err(|_| RootError::UnsupportedType(tok.to_string()))?;
                    if ord == 0 {
                        return Err(RootError::UnsupportedType(tok.to_string()));
                    }
                    Ok((name.to_string(), ord))
                }
                None => Ok((tok.to_string(), 1)),
            }
        })
        .collect()
}

impl BasedRootDatum {
    fn assemble(label: String, blocks: Vec<Block>) -> Self {
        let rank: usize = blocks.iter().map(|b| b.info.dim).sum();
        let mut simple_roots = Vec::new();
        let mut simple_coroots = Vec::new();
        let mut factors = Vec::new();
        let mut offset = 0;
        for mut b in blocks {
            let embed = |v: &Vec<i64>| {
                let mut w = vec![0; rank];
                w[offset..offset + v.len()].copy_from_slice(v);
                w
            };
            simple_roots.extend(b.simple_roots.iter().map(embed));
            simple_coroots.extend(b.simple_coroots.iter().map(embed));
            b.info.offset = offset;
            offset += b.info.dim;
            factors.push(b.info);
        }
        let r = simple_roots.len();
        let mut cartan = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                cartan.set(
                    i,
                    j,
                    BigInt::from(pairing(&simple_roots[j], &simple_coroots[i])),
                );
            }
        }

        // reflection closure, tracking coroots and simple-root coefficients
        let mut roots = simple_roots.clone();
        let mut coroots = simple_coroots.clone();
        let mut coeffs: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
        let mut seen: HashMap<Vec<i64>, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut k = 0;
        while k < roots.len() {
            for i in 0..r {
                let c = pairing(&roots[k], &simple_coroots[i]);
                let d = pairing(&simple_roots[i], &coroots[k]);
                let nr: Vec<i64> = roots[k]
                    .iter()
                    .zip(&simple_roots[i])
                    .map(|(a, b)| a - c * b)
                    .collect();
                if seen.contains_key(&nr) {
                    continue;
                }
                let nc: Vec<i64> = coroots[k]
                    .iter()
                    .zip(&simple_coroots[i])
                    .map(|(a, b)| a - d * b)
                    .collect();
                let mut ncf = coeffs[k].clone();
                ncf[i] -= c;
                seen.insert(nr.clone(), roots.len());
                roots.push(nr);
                coroots.push(nc);
                coeffs.push(ncf);
            }
            k += 1;
        }
        Self {
            label,
            rank,
            roots,
            coroots,
            root_coeffs: coeffs,
            simple_indices: (0..r).collect(),
            cartan,
            factors,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Lattice rank of `X`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    pub fn simple_roots(&self) -> Vec<&[i64]> {
        self.simple_indices
            .iter()
            .map(|&i| self.roots[i].as_slice())
            .collect()
    }

    pub fn simple_coroots(&self) -> Vec<&[i64]> {
        self.simple_indices
            .iter()
            .map(|&i| self.coroots[i].as_slice())
            .collect()
    }

    pub fn root_coefficients(&self) -> &[Vec<i64>] {
        &self.root_coeffs
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn factors(&self) -> &[FactorInfo] {
        &self.factors
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_indices.len()
    }

    pub fn central_rank(&self) -> usize {
        self.rank - self.semisimple_rank()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.root_coeffs
            .iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .count()
    }

    pub fn has_exceptional_factor(&self) -> bool {
        self.factors.iter().any(FactorInfo::is_exceptional)
    }

    /// Order of the Weyl group from the degree table.
    pub fn weyl_order(&self) -> u128 {
        self.factors
            .iter()
            .filter_map(|f| f.family.map(|fam| cartan::degrees(fam, f.ss_rank)))
            .flatten()
            .map(u128::from)
            .product()
    }

    /// Simple reflection `s_i` as an integer matrix on `X` (column convention).
    pub fn simple_reflection(&self, i: usize) -> Vec<i64> {
        let n = self.rank;
        let a = &self.roots[self.simple_indices[i]];
        let c = &self.coroots[self.simple_indices[i]];
        let mut m = vec![0i64; n * n];
        for r in 0..n {
            for col in 0..n {
                let id = i64::from(r == col);
                m[r * n + col] = id - a[r] * c[col];
            }
        }
        m
    }
}

/// Builds the root datum for a label such as `"GL3"`, `"G2"` or `"GL2xSp4"`.
///
/// Twist suffixes (`^2`, `^3`) are rejected here; see [`build_twisted`].
pub fn build_root_datum(spec: &str) -> Result<BasedRootDatum, RootError> {
    let parts = parse_label(spec)?;
    if parts.iter().any(|(_, o)| *o != 1) {
        return Err(RootError::UnsupportedType(spec.to_string()));
    }
    let blocks = parts
        .iter()
        .map(|(tok, _)| build_block(tok, 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasedRootDatum::assemble(spec.to_string(), blocks))
}

pub(super) fn build_blocks_twisted(spec: &str) -> Result<(BasedRootDatum, Vec<u32>), RootError> {
    let parts = parse_label(spec)?;
    let blocks = parts
        .iter()
        .map(|(tok, ord)| build_block(tok, *ord))
        .collect::<Result<Vec<_>, _>>()?;
    let twists = parts.iter().map(|(_, o)| *o).collect();
    Ok((BasedRootDatum::assemble(spec.to_string(), blocks), twists))
}
