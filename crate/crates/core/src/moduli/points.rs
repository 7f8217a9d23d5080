use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::aut::{check_kind, LElement, SemidirectData};
use super::tangent::{tangent_report, TangentReport};
use super::ModuliError;
use crate::dualgroup::ArithContext;
use crate::exactalg::IntPoly;
use crate::fingrp::{enumerate_group, jordan_exponents, FqMatrix, GroupKind, GroupSpecFin};
use crate::rootdata::build_root_datum;

/// Default cap on `|G|^2` for [`enumerate_z1`].
pub const MAX_PAIRS: u64 = 10_000_000;

/// A pair `(F0, sigma0)` satisfying the defining relation, with the Jordan
/// parts of `(sigma0, s)` in the finite semidirect model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameParameterPoint {
    #[serde(rename = "F0")]
    pub f0: FqMatrix,
    pub sigma0: FqMatrix,
    pub ss: LElement,
    pub u: LElement,
    /// Order of `(sigma0, s)`.
    pub order: u64,
}

impl TameParameterPoint {
    /// Builds the point after checking the relation.
    pub fn new(
        f0: FqMatrix,
        sigma0: FqMatrix,
        spec: &GroupSpecFin,
        sd: &SemidirectData,
    ) -> Result<Self, ModuliError> {
        let f = spec.field();
        if !sd.relation_holds(&f0, &sigma0, f) {
            return Err(ModuliError::BadInput(
                "pair does not satisfy the defining relation".into(),
            ));
        }
        Ok(Self::unchecked(f0, sigma0, spec, sd))
    }

    fn unchecked(f0: FqMatrix, sigma0: FqMatrix, spec: &GroupSpecFin, sd: &SemidirectData) -> Self {
        let f = spec.field();
        let x = LElement {
            g: sigma0.clone(),
            s_power: 1 % sd.s_order(),
        };
        let order = sd.l_order(&x, spec);
        let (a, b) = jordan_exponents(order, u64::from(f.ell()));
        let ss = sd.l_pow(&x, a, f);
        let u = sd.l_pow(&x, b, f);
        Self {
            f0,
            sigma0,
            ss,
            u,
            order,
        }
    }

    /// `(sigma0, s)` as an element of the semidirect model.
    pub fn sigma_l(&self, sd: &SemidirectData) -> LElement {
        LElement {
            g: self.sigma0.clone(),
            s_power: 1 % sd.s_order(),
        }
    }
}

/// All solutions of the defining relation, ordered by `(F0, sigma0)`.
pub fn enumerate_z1(
    spec: &GroupSpecFin,
    sd: &SemidirectData,
    max_pairs: Option<u64>,
) -> Result<Vec<TameParameterPoint>, ModuliError> {
    check_kind(spec)?;
    if !sd.w_relation_ok() {
        return Err(ModuliError::BadAction(
            "theta_fr theta_s theta_fr^-1 != theta_s^q".into(),
        ));
    }
    let est = spec.expected_order()?;
    let pairs = &est * &est;
    let cap = max_pairs.unwrap_or(MAX_PAIRS);
    if pairs > BigInt::from(cap) {
        return Err(ModuliError::TooManyPairs {
            pairs: pairs.to_string(),
            cap,
        });
    }
    let f = spec.field();
    let elements = enumerate_group(spec)?;
    let q = sd.q();
    // per sigma: theta_fr(sigma) and N_q(sigma)
    let sig: Vec<(FqMatrix, FqMatrix)> = elements
        .par_iter()
        .map(|s| (sd.theta_fr().apply(s, f), sd.norm(s, q, f)))
        .collect();
    let per_f: Vec<Vec<TameParameterPoint>> = elements
        .par_iter()
        .map(|f0| {
            let psi = sd.theta_s().apply_n(f0, q, f);
            let mut out = Vec::new();
            for (s, (tf, nq)) in elements.iter().zip(&sig) {
                if f0.mul(tf, f) == nq.mul(&psi, f) {
                    out.push(TameParameterPoint::unchecked(
                        f0.clone(),
                        s.clone(),
                        spec,
                        sd,
                    ));
                }
            }
            out
        })
        .collect();
    Ok(per_f.into_iter().flatten().collect())
}

/// Points with `sigma0 = xi`.
pub fn fiber_over_sigma(points: &[TameParameterPoint], xi: &FqMatrix) -> Vec<TameParameterPoint> {
    points.iter().filter(|p| &p.sigma0 == xi).cloned().collect()
}

/// Outcome of the torsor check on one fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsorReport {
    pub fiber_size: usize,
    pub centralizer_size: usize,
    /// Every `F_x F_y^-1` centralizes `(xi, s)`.
    pub ratios_ok: bool,
}

impl TorsorReport {
    pub fn holds(&self) -> bool {
        self.ratios_ok && (self.fiber_size == 0 || self.fiber_size == self.centralizer_size)
    }
}

/// Twisted centralizer `{c : c xi theta_s(c)^-1 = xi}` of `(xi, s)`.
pub fn twisted_centralizer(
    xi: &FqMatrix,
    elements: &[FqMatrix],
    spec: &GroupSpecFin,
    sd: &SemidirectData,
) -> Vec<FqMatrix> {
    let f = spec.field();
    elements
        .iter()
        .filter(|c| c.mul(xi, f) == xi.mul(&sd.theta_s().apply(c, f), f))
        .cloned()
        .collect()
}

/// Checks that the fiber over `xi` is a torsor under the twisted centralizer.
///
/// Ratios are taken against the first member; with `C` a group this covers
/// all pairs.
pub fn torsor_check(
    fiber: &[TameParameterPoint],
    xi: &FqMatrix,
    elements: &[FqMatrix],
    spec: &GroupSpecFin,
    sd: &SemidirectData,
) -> TorsorReport {
    let f = spec.field();
    let cent: HashSet<FqMatrix> = twisted_centralizer(xi, elements, spec, sd)
        .into_iter()
        .collect();
    let ratios_ok = match fiber.first() {
        None => true,
        Some(base) => {
            let bi = base.f0.inverse(f).expect("invertible");
            fiber
                .iter()
                .all(|x| x.sigma0 == *xi && cent.contains(&x.f0.mul(&bi, f)))
        }
    };
    TorsorReport {
        fiber_size: fiber.len(),
        centralizer_size: cent.len(),
        ratios_ok,
    }
}

/// Results of the Jordan, unipotence and order-estimate checks at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub jordan_ok: bool,
    pub unipotent_ok: bool,
    pub estimate_ok: bool,
}

impl BoundsReport {
    pub fn all(&self) -> bool {
        self.jordan_ok && self.unipotent_ok && self.estimate_ok
    }
}

/// Weyl group order of the group's root datum.
pub fn weyl_order_of(spec: &GroupSpecFin) -> Result<u64, ModuliError> {
    let d = build_root_datum(&spec.root_label())?;
    d.weyl_order()
        .to_u64()
        .ok_or_else(|| ModuliError::BadInput("Weyl group order exceeds u64".into()))
}

/// `e (q^{f N} - 1) mod m`.
fn jordan_bound_mod(ctx: &ArithContext, n_weyl: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut acc = 1u128 % m128;
    let mut base = u128::from(ctx.q()) % m128;
    let mut e = u128::from(ctx.f()) * u128::from(n_weyl);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    let v = (acc + m128 - 1 % m128) % m128;
    (v * (u128::from(ctx.e()) % m128) % m128) as u64
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The three order checks at a point; `chi` is the global characteristic
/// polynomial of the L-group.
pub fn check_point_bounds(
    pt: &TameParameterPoint,
    spec: &GroupSpecFin,
    sd: &SemidirectData,
    ctx: &ArithContext,
    chi: &IntPoly,
) -> Result<BoundsReport, ModuliError> {
    let ell = u64::from(spec.field().ell());
    let n_weyl = weyl_order_of(spec)?;
    let ord_ss = sd.l_order(&pt.ss, spec);
    let jordan_ok = !ord_ss.is_multiple_of(ell) && jordan_bound_mod(ctx, n_weyl, ord_ss) == 0;

    let m_mod = jordan_bound_mod(ctx, n_weyl, pt.order);
    let residual = pt.order / pt.order.gcd(&m_mod);
    let unipotent_ok = is_power_of(residual, ell);

    let estimate_ok = if pt.u.is_trivial() {
        let c = chi.eval(&BigInt::from(ctx.q()));
        let bound = BigInt::from(ctx.e()) * &c * &c;
        !bound.is_zero() && (bound % BigInt::from(pt.order)).is_zero()
    } else {
        true
    };
    Ok(BoundsReport {
        jordan_ok,
        unipotent_ok,
        estimate_ok,
    })
}

/// A component label: the class of `sigma^ss` under twisted conjugation
/// together with its label inside the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertialClass {
    pub sigma_rep: LElement,
    pub beta_label: u32,
    pub count: usize,
}

/// Groups points by the conjugacy class of `sigma^ss`.
///
/// GL only. Centralizers there are connected, so every class carries the
/// single label 0. This approximates the component count over the algebraic
/// closure by data over one finite field.
pub fn inertial_classes(
    points: &[TameParameterPoint],
    spec: &GroupSpecFin,
    sd: &SemidirectData,
) -> Result<Vec<InertialClass>, ModuliError> {
    if spec.kind() != GroupKind::GL {
        return Err(ModuliError::NotSupported(format!(
            "inertial classes for {}",
            spec.label()
        )));
    }
    let f = spec.field();
    let elements = enumerate_group(spec)?;
    let inverses: Vec<FqMatrix> = elements
        .iter()
        .map(|g| g.inverse(f).expect("invertible"))
        .collect();
    let mut rep_of: HashMap<LElement, LElement> = HashMap::new();
    let mut counts: BTreeMap<LElement, usize> = BTreeMap::new();
    for pt in points {
        let x = &pt.ss;
        if !rep_of.contains_key(x) {
            let orbit: Vec<LElement> = elements
                .iter()
                .zip(&inverses)
                .map(|(g, gi)| {
                    let tw = sd.theta_s().apply_n(gi, x.s_power, f);
                    LElement {
                        g: g.mul(&x.g, f).mul(&tw, f),
                        s_power: x.s_power,
                    }
                })
                .collect();
            let rep = orbit.iter().min().expect("nonempty orbit").clone();
            for y in orbit {
                rep_of.insert(y, rep.clone());
            }
        }
        *counts.entry(rep_of[x].clone()).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(sigma_rep, count)| InertialClass {
            sigma_rep,
            beta_label: 0,
            count,
        })
        .collect())
}

/// One analysed point as written to the point-list JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(flatten)]
    pub point: TameParameterPoint,
    pub tangent: TangentReport,
    pub bounds: BoundsReport,
}

/// Point list with its group and action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointList {
    pub spec: GroupSpecFin,
    pub sd: SemidirectData,
    pub points: Vec<PointRecord>,
}

/// Tangent and bound reports for every point, in input order.
pub fn analyze_points(
    points: &[TameParameterPoint],
    spec: &GroupSpecFin,
    sd: &SemidirectData,
    ctx: &ArithContext,
    chi: &IntPoly,
) -> Result<PointList, ModuliError> {
    let records = points
        .par_iter()
        .map(|p| {
            Ok(PointRecord {
                point: p.clone(),
                tangent: tangent_report(p, spec, sd)?,
                bounds: check_point_bounds(p, spec, sd, ctx, chi)?,
            })
        })
        .collect::<Result<Vec<_>, ModuliError>>()?;
    Ok(PointList {
        spec: spec.clone(),
        sd: sd.clone(),
        points: records,
    })
}
