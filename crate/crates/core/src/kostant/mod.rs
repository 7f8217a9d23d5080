//! Principal sl2-triples in small classical Lie algebras, centralizers of the
//! principal nilpotent, and the exact determinant identity on them.

mod qmat;

pub use qmat::QMatrix;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal;
use crate::exactalg::IntPoly;
use crate::fingrp::{FiniteField, FqMatrix};
use crate::rootdata::{build_twisted, chi_twisted, ChiMethod, RootError};
use qmat::{det_of, rat, rational_kernel, solve_in_span};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KostantError {
    #[error("unsupported algebra {0}")]
    Unsupported(String),
    #[error("t must be nonzero")]
    ZeroParameter,
    #[error("determinant {det} is not +-chi(t^2) = {chi}")]
    Mismatch { det: String, chi: String },
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Sl,
    Sp,
}

/// Principal triple `(E, H, F)` with the centralizer of `E` split into
/// `H`-weight vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostantFrame {
    kind: AlgebraKind,
    n: usize,
    /// Includes the centre of `gl_n`.
    gl: bool,
    pub e: QMatrix,
    pub h: QMatrix,
    pub f: QMatrix,
    pub centralizer_basis: Vec<QMatrix>,
    pub weights: Vec<i64>,
}

/// `J` with `J[i][n-1-i] = (-1)^i`.
fn alternating_antidiagonal(n: usize) -> QMatrix {
    let mut j = QMatrix::zeros(n);
    for i in 0..n {
        j.set(i, n - 1 - i, rat(if i % 2 == 0 { 1 } else { -1 }));
    }
    j
}

/// `X -> -J X^T J^-1`.
fn outer_map(x: &QMatrix) -> QMatrix {
    let n = x.n();
    let j = alternating_antidiagonal(n);
    let ji = j.inverse().expect("J is invertible");
    j.mul(&x.transpose()).mul(&ji).scale(&rat(-1))
}

/// Linear conditions cutting the algebra out of `n x n` matrices, one row of
/// length `n^2` per condition.
fn algebra_conditions(kind: AlgebraKind, n: usize, gl: bool) -> Vec<Vec<BigRational>> {
    let nn = n * n;
    match kind {
        AlgebraKind::Sl if gl => Vec::new(),
        AlgebraKind::Sl => vec![(0..nn)
            .map(|p| {
                if p / n == p % n {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()],
        AlgebraKind::Sp => (0..nn)
            .map(|p| {
                // X - beta(X) = 0 at entry p
                let mut row = vec![BigRational::zero(); nn];
                for q in 0..nn {
                    let img = outer_map(&QMatrix::unit(n, q / n, q % n));
                    row[q] = -img.entries()[p].clone();
                }
                row[p] += BigRational::one();
                row
            })
            .collect(),
    }
}

/// Rows of the linear map `X -> [A, X]` on `n x n` matrices.
fn ad_rows(a: &QMatrix) -> Vec<Vec<BigRational>> {
    let n = a.n();
    let nn = n * n;
    let images: Vec<QMatrix> = (0..nn)
        .map(|q| a.bracket(&QMatrix::unit(n, q / n, q % n)))
        .collect();
    (0..nn)
        .map(|p| images.iter().map(|m| m.entries()[p].clone()).collect())
        .collect()
}

fn parse_algebra(label: &str) -> Result<(AlgebraKind, usize, bool), KostantError> {
    let lower = label.to_ascii_lowercase();
    let (kind, gl, rest) = if let Some(r) = lower.strip_prefix("sl") {
        (AlgebraKind::Sl, false, r)
    } else if let Some(r) = lower.strip_prefix("gl") {
        (AlgebraKind::Sl, true, r)
    } else if let Some(r) = lower.strip_prefix("sp") {
        (AlgebraKind::Sp, false, r)
    } else {
        return Err(KostantError::Unsupported(label.into()));
    };
    let n: usize = rest
        .parse()
        .map_err(|_| KostantError::Unsupported(label.into()))?;
    let ok = match kind {
        AlgebraKind::Sl => (2..=5).contains(&n),
        AlgebraKind::Sp => n == 4,
    };
    if !ok {
        return Err(KostantError::Unsupported(label.into()));
    }
    Ok((kind, n, gl))
}

/// Principal triple of `sl_n` (`n <= 5`), `gl_n` or `sp_4`.
///
/// `E` is the superdiagonal and `H = diag(n-1, n-3, ..., 1-n)`; `sp_4` is
/// realized as the fixed points of `X -> -J X^T J^-1`, which contain both.
pub fn principal_triple(label: &str) -> Result<KostantFrame, KostantError> {
    let (kind, n, gl) = parse_algebra(label)?;
    let mut e = QMatrix::zeros(n);
    let mut h = QMatrix::zeros(n);
    for i in 0..n {
        h.set(i, i, rat(n as i64 - 1 - 2 * i as i64));
        if i + 1 < n {
            e.set(i, i + 1, BigRational::one());
        }
    }
    let nn = n * n;
    let conds = algebra_conditions(kind, n, gl);

    // F: [E, F] = H and [H, F] = -2F inside the algebra
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for (r, v) in ad_rows(&e).into_iter().zip(h.entries()) {
        rows.push(r);
        rhs.push(v.clone());
    }
    for (p, mut r) in ad_rows(&h).into_iter().enumerate() {
        r[p] += rat(2);
        rows.push(r);
        rhs.push(BigRational::zero());
    }
    for r in &conds {
        rows.push(r.clone());
        rhs.push(BigRational::zero());
    }
    let mut aug = Vec::with_capacity(rows.len() * (nn + 1));
    for (r, b) in rows.iter().zip(&rhs) {
        aug.extend(r.iter().cloned());
        aug.push(-b.clone());
    }
    let ker = rational_kernel(rows.len(), nn + 1, &aug);
    let sol = ker
        .into_iter()
        .find(|k| !k[nn].is_zero())
        .expect("principal triple exists");
    let last = sol[nn].clone();
    let f = QMatrix::from_entries(n, sol[..nn].iter().map(|c| c / &last).collect());

    // centralizer of E, weight by weight
    let mut centralizer_basis = Vec::new();
    let mut weights = Vec::new();
    for w in (0..=2 * (n as i64 - 1)).step_by(2) {
        let mut sys: Vec<BigRational> = Vec::new();
        let mut count = 0;
        for r in ad_rows(&e) {
            sys.extend(r);
            count += 1;
        }
        for (p, mut r) in ad_rows(&h).into_iter().enumerate() {
            r[p] -= rat(w);
            sys.extend(r);
            count += 1;
        }
        for r in &conds {
            sys.extend(r.iter().cloned());
            count += 1;
        }
        for v in rational_kernel(count, nn, &sys) {
            centralizer_basis.push(QMatrix::from_entries(n, v));
            weights.push(w);
        }
    }
    Ok(KostantFrame {
        kind,
        n,
        gl,
        e,
        h,
        f,
        centralizer_basis,
        weights,
    })
}

impl KostantFrame {
    pub fn label(&self) -> String {
        match (self.kind, self.gl) {
            (AlgebraKind::Sl, false) => format!("sl{}", self.n),
            (AlgebraKind::Sl, true) => format!("gl{}", self.n),
            (AlgebraKind::Sp, _) => format!("sp{}", self.n),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn includes_center(&self) -> bool {
        self.gl
    }

    /// Same triple on `gl_n`, adding the central line at weight 0.
    pub fn with_center(&self) -> Result<Self, KostantError> {
        if self.kind != AlgebraKind::Sl {
            return Err(KostantError::Unsupported(format!(
                "centre for {}",
                self.label()
            )));
        }
        principal_triple(&format!("gl{}", self.n))
    }

    /// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H` and the centralizer weights.
    pub fn check_identities(&self) -> bool {
        let two = rat(2);
        self.h.bracket(&self.e) == self.e.scale(&two)
            && self.h.bracket(&self.f) == self.f.scale(&rat(-2))
            && self.e.bracket(&self.f) == self.h
            && self
                .centralizer_basis
                .iter()
                .zip(&self.weights)
                .all(|(x, &w)| {
                    x.bracket(&self.e).is_zero()
                        && self.h.bracket(x) == x.scale(&rat(w))
                        && w >= 0
                        && w % 2 == 0
                })
    }

    /// Root datum label for `chi`: adjoint type, or `GL_n` with the centre.
    fn chi_label(&self) -> String {
        match (self.kind, self.gl) {
            (AlgebraKind::Sl, false) => format!("A{}", self.n - 1),
            (AlgebraKind::Sl, true) => format!("GL{}", self.n),
            (AlgebraKind::Sp, _) => format!("C{}", self.n / 2),
        }
    }

    /// `chi` of the matching root datum, twisted when `beta` is given.
    pub fn chi(&self, beta: Option<&PinnedOuter>) -> Result<IntPoly, KostantError> {
        let label = match beta {
            Some(b) => format!("{}^{}", self.chi_label(), b.order),
            None => self.chi_label(),
        };
        let (d, tw) = build_twisted(&label)?;
        Ok(chi_twisted(&d, &tw, ChiMethod::Table)?)
    }

    /// Matrix of `beta` on the centralizer basis (identity when `None`).
    fn beta_on_centralizer(&self, beta: Option<&PinnedOuter>) -> Vec<Vec<BigRational>> {
        let d = self.centralizer_basis.len();
        (0..d)
            .map(|j| match beta {
                None => (0..d)
                    .map(|i| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect(),
                Some(b) => solve_in_span(
                    &self.centralizer_basis,
                    &b.apply(&self.centralizer_basis[j]),
                )
                .expect("beta preserves the centralizer"),
            })
            .collect()
    }
}

/// Pinned outer automorphism `X -> -J X^T J^-1` of `sl_n` or `gl_n`, `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedOuter {
    pub order: u32,
}

impl PinnedOuter {
    /// `None` where the algebra has no outer automorphism (`sl_2`, `sp_4`).
    pub fn for_frame(frame: &KostantFrame) -> Option<Self> {
        (frame.kind == AlgebraKind::Sl && frame.n >= 3).then_some(Self { order: 2 })
    }

    pub fn apply(&self, x: &QMatrix) -> QMatrix {
        outer_map(x)
    }

    /// `beta(E) = E`, `beta(H) = H`, and `beta` respects brackets on the
    /// centralizer and the triple.
    pub fn check(&self, frame: &KostantFrame) -> bool {
        let mut gens: Vec<&QMatrix> = vec![&frame.e, &frame.h, &frame.f];
        gens.extend(frame.centralizer_basis.iter());
        self.apply(&frame.e) == frame.e
            && self.apply(&frame.h) == frame.h
            && gens.iter().all(|x| {
                gens.iter()
                    .all(|y| self.apply(&x.bracket(y)) == self.apply(x).bracket(&self.apply(y)))
            })
    }
}

/// `det(t^2 Ad_lambda(t) Ad_beta - id)` on the centralizer, compared with `chi(t^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostantReport {
    pub algebra: String,
    pub beta_order: u32,
    #[serde(with = "decimal::big")]
    pub t: BigInt,
    #[serde(with = "decimal::big")]
    pub det: BigInt,
    #[serde(with = "decimal::big")]
    pub chi_at_t2: BigInt,
    pub sign: i8,
}

/// Exact determinant of `X -> t^2 lambda(t) beta(X) lambda(t)^-1 - X` on the
/// centralizer of `E`, with `lambda(t) = diag(t^{h_i})`. Errors unless the
/// result is `+-chi(t^2)`.
pub fn kostant_determinant(
    frame: &KostantFrame,
    beta: Option<&PinnedOuter>,
    t: i64,
) -> Result<KostantReport, KostantError> {
    if t == 0 {
        return Err(KostantError::ZeroParameter);
    }
    let d = frame.centralizer_basis.len();
    let b = frame.beta_on_centralizer(beta);
    let tq = rat(t);
    let t2 = &tq * &tq;
    // column j: t^2 t^{w_i} b[j][i] - delta_ij, since lambda(t) scales weight w by t^w
    let mut m = vec![BigRational::zero(); d * d];
    for j in 0..d {
        for i in 0..d {
            let mut v = &t2 * num_traits::pow(tq.clone(), frame.weights[i] as usize) * &b[j][i];
            if i == j {
                v -= BigRational::one();
            }
            m[i * d + j] = v;
        }
    }
    let det = det_of(d, m);
    let chi = frame.chi(beta)?;
    let chi_at_t2 = chi.eval(&BigInt::from(t * t));
    let (num, den) = (det.numer().clone(), det.denom().clone());
    let sign = if !den.is_one() {
        0
    } else if num == chi_at_t2 {
        1
    } else if num == -&chi_at_t2 {
        -1
    } else {
        0
    };
    if sign == 0 || chi_at_t2.is_zero() && !num.is_zero() {
        return Err(KostantError::Mismatch {
            det: det.to_string(),
            chi: chi_at_t2.to_string(),
        });
    }
    Ok(KostantReport {
        algebra: frame.label(),
        beta_order: beta.map_or(1, |b| b.order),
        t: BigInt::from(t),
        det: num,
        chi_at_t2,
        sign,
    })
}

/// Mod-`ell` form of the identity at `t = sqrt(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularUnipotentReport {
    /// `det(q Ad_lambda(sqrt q) Ad_beta - id) != 0` over the field.
    pub unobstructed: bool,
    /// `chi(q) != 0 mod ell`.
    pub chi_nonzero: bool,
}

impl RegularUnipotentReport {
    pub fn agrees(&self) -> bool {
        self.unobstructed == self.chi_nonzero
    }
}

/// Reduces the operator mod `ell`. Centralizer weights are even, so
/// `lambda(sqrt q)` acts by `q^{w/2}` and no square root is needed.
pub fn regular_unipotent_check(
    frame: &KostantFrame,
    beta: Option<&PinnedOuter>,
    field: &FiniteField,
    q: u64,
) -> Result<RegularUnipotentReport, KostantError> {
    let d = frame.centralizer_basis.len();
    let b = frame.beta_on_centralizer(beta);
    let ell = BigInt::from(field.ell());
    let reduce = |x: &BigRational| -> u32 {
        let n = field.from_int((x.numer() % &ell).to_i64().expect("reduced"));
        let dn = field.from_int((x.denom() % &ell).to_i64().expect("reduced"));
        field.mul(n, field.inv(dn).expect("denominator prime to ell"))
    };
    let qe = field.from_int((q % u64::from(field.ell())) as i64);
    let mut m = vec![0u32; d * d];
    for j in 0..d {
        for i in 0..d {
            let scale = field.pow(qe, 1 + frame.weights[i] as u64 / 2);
            let mut v = field.mul(scale, reduce(&b[j][i]));
            if i == j {
                v = field.sub(v, 1);
            }
            m[i * d + j] = v;
        }
    }
    let unobstructed = d == 0 || FqMatrix::new(field, d, m).det(field) != 0;
    let chi = frame.chi(beta)?;
    let chi_nonzero = !chi.eval_mod(&BigInt::from(q), &ell).is_zero();
    Ok(RegularUnipotentReport {
        unobstructed,
        chi_nonzero,
    })
}
