use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::fingrp::{make_field, FiniteField, FqMatrix, GroupKind, GroupSpecFin};

/// Algebraic automorphism `g -> C tau(g) C^-1` of a matrix group, where `tau`
/// is either the identity or inverse-transpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAut", into = "RawAut")]
pub struct TwistAut {
    conj: Option<(FqMatrix, FqMatrix)>,
    inverse_transpose: bool,
}

#[derive(Serialize, Deserialize)]
struct RawAut {
    conj: Option<FqMatrix>,
    inverse_transpose: bool,
}

impl TryFrom<RawAut> for TwistAut {
    type Error = ModuliError;
    fn try_from(r: RawAut) -> Result<Self, ModuliError> {
        match r.conj {
            None => Ok(Self {
                conj: None,
                inverse_transpose: r.inverse_transpose,
            }),
            Some(c) => {
                let f = make_field(c.ell(), c.k())?;
                Self::new(Some(c), r.inverse_transpose, &f)
            }
        }
    }
}

impl From<TwistAut> for RawAut {
    fn from(a: TwistAut) -> Self {
        RawAut {
            conj: a.conj.map(|(c, _)| c),
            inverse_transpose: a.inverse_transpose,
        }
    }
}

impl TwistAut {
    pub fn identity() -> Self {
        Self {
            conj: None,
            inverse_transpose: false,
        }
    }

    pub fn new(
        conj: Option<FqMatrix>,
        inverse_transpose: bool,
        f: &FiniteField,
    ) -> Result<Self, ModuliError> {
        let conj = match conj {
            None => None,
            Some(c) => {
                let ci = c.inverse(f).ok_or_else(|| {
                    ModuliError::BadAction("conjugating matrix is singular".into())
                })?;
                Some((c, ci))
            }
        };
        Ok(Self {
            conj,
            inverse_transpose,
        })
    }

    pub fn conjugation(c: FqMatrix, f: &FiniteField) -> Result<Self, ModuliError> {
        Self::new(Some(c), false, f)
    }

    pub fn conj(&self) -> Option<&FqMatrix> {
        self.conj.as_ref().map(|(c, _)| c)
    }

    pub fn inverse_transpose(&self) -> bool {
        self.inverse_transpose
    }

    pub fn is_identity(&self) -> bool {
        self.conj.is_none() && !self.inverse_transpose
    }

    pub fn apply(&self, g: &FqMatrix, f: &FiniteField) -> FqMatrix {
        let x = if self.inverse_transpose {
            g.inverse(f).expect("group element").transpose()
        } else {
            g.clone()
        };
        match &self.conj {
            Some((c, ci)) => c.mul(&x, f).mul(ci, f),
            None => x,
        }
    }

    pub fn apply_n(&self, g: &FqMatrix, times: u64, f: &FiniteField) -> FqMatrix {
        let mut x = g.clone();
        for _ in 0..times {
            x = self.apply(&x, f);
        }
        x
    }

    /// Differential on the matrix Lie algebra.
    pub fn apply_lie(&self, y: &FqMatrix, f: &FiniteField) -> FqMatrix {
        let x = if self.inverse_transpose {
            y.transpose().map(|v| f.neg(v))
        } else {
            y.clone()
        };
        match &self.conj {
            Some((c, ci)) => c.mul(&x, f).mul(ci, f),
            None => x,
        }
    }
}

/// The pair `(theta_fr, theta_s)` through which `Fr` and `s` act on the
/// dual group, with the relation `Fr s Fr^-1 = s^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectData {
    theta_fr: TwistAut,
    theta_s: TwistAut,
    q: u64,
    w_relation_ok: bool,
    s_order: u64,
}

const AUT_ORDER_LIMIT: u64 = 64;

impl SemidirectData {
    /// Trivial action.
    pub fn trivial(q: u64) -> Self {
        Self {
            theta_fr: TwistAut::identity(),
            theta_s: TwistAut::identity(),
            q,
            w_relation_ok: true,
            s_order: 1,
        }
    }

    /// Checks that both automorphisms preserve the group and satisfy
    /// `theta_fr theta_s = theta_s^q theta_fr` on every element of `elements`.
    pub fn new(
        spec: &GroupSpecFin,
        elements: &[FqMatrix],
        theta_fr: TwistAut,
        theta_s: TwistAut,
        q: u64,
    ) -> Result<Self, ModuliError> {
        if q < 2 {
            return Err(ModuliError::BadInput(format!(
                "q = {q} is not a prime power"
            )));
        }
        check_kind(spec)?;
        let f = spec.field();
        for g in elements {
            for t in [&theta_fr, &theta_s] {
                if !spec.contains(&t.apply(g, f)) {
                    return Err(ModuliError::BadAction(
                        "automorphism does not preserve the group".into(),
                    ));
                }
            }
        }
        let w_relation_ok = elements.iter().all(|g| {
            theta_fr.apply(&theta_s.apply(g, f), f) == theta_s.apply_n(&theta_fr.apply(g, f), q, f)
        });
        let mut s_order = 1;
        let mut cur: Vec<FqMatrix> = elements.iter().map(|g| theta_s.apply(g, f)).collect();
        while cur.as_slice() != elements {
            s_order += 1;
            if s_order > AUT_ORDER_LIMIT {
                return Err(ModuliError::BadAction(
                    "theta_s has no small finite order".into(),
                ));
            }
            cur = cur.iter().map(|g| theta_s.apply(g, f)).collect();
        }
        Ok(Self {
            theta_fr,
            theta_s,
            q,
            w_relation_ok,
            s_order,
        })
    }

    pub fn theta_fr(&self) -> &TwistAut {
        &self.theta_fr
    }

    pub fn theta_s(&self) -> &TwistAut {
        &self.theta_s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn w_relation_ok(&self) -> bool {
        self.w_relation_ok
    }

    /// Order of `theta_s` as an automorphism of the group.
    pub fn s_order(&self) -> u64 {
        self.s_order
    }

    /// `N_q(sigma) = sigma theta_s(sigma) ... theta_s^{q-1}(sigma)`.
    pub fn norm(&self, sigma: &FqMatrix, m: u64, f: &FiniteField) -> FqMatrix {
        let mut acc = FqMatrix::identity(f, sigma.n());
        let mut t = sigma.clone();
        for i in 0..m {
            if i > 0 {
                t = self.theta_s.apply(&t, f);
            }
            acc = acc.mul(&t, f);
        }
        acc
    }

    /// The defining identity `F theta_fr(sigma) theta_s^q(F)^-1 = N_q(sigma)`.
    pub fn relation_holds(&self, f0: &FqMatrix, sigma0: &FqMatrix, f: &FiniteField) -> bool {
        let lhs = f0.mul(&self.theta_fr.apply(sigma0, f), f);
        let rhs = self
            .norm(sigma0, self.q, f)
            .mul(&self.theta_s.apply_n(f0, self.q, f), f);
        lhs == rhs
    }

    /// Product in `G x| <theta_s>` of `(g, s^a)` and `(h, s^b)`.
    pub fn l_mul(&self, x: &LElement, y: &LElement, f: &FiniteField) -> LElement {
        let h = self.theta_s.apply_n(&y.g, x.s_power, f);
        LElement {
            g: x.g.mul(&h, f),
            s_power: (x.s_power + y.s_power) % self.s_order,
        }
    }

    pub fn l_pow(&self, x: &LElement, mut e: u64, f: &FiniteField) -> LElement {
        let mut base = x.clone();
        let mut acc = LElement {
            g: FqMatrix::identity(f, x.g.n()),
            s_power: 0,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = self.l_mul(&acc, &base, f);
            }
            base = self.l_mul(&base, &base, f);
            e >>= 1;
        }
        acc
    }

    /// Order of `(g, s^a)`: a multiple `m` of the order of `s^a` with the
    /// group part of the `m`-th power trivial.
    pub fn l_order(&self, x: &LElement, spec: &GroupSpecFin) -> u64 {
        let f = spec.field();
        let sa = self.s_order / num_integer::gcd(self.s_order, x.s_power % self.s_order);
        let y = self.l_pow(x, sa, f);
        debug_assert_eq!(y.s_power, 0);
        sa * spec.element_order(&y.g)
    }
}

/// Element `(g, s^a)` of the finite semidirect model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LElement {
    pub g: FqMatrix,
    pub s_power: u64,
}

impl LElement {
    pub fn is_trivial(&self) -> bool {
        self.s_power == 0 && self.g.is_identity()
    }
}

pub(super) fn check_kind(spec: &GroupSpecFin) -> Result<(), ModuliError> {
    if spec.kind() == GroupKind::U {
        return Err(ModuliError::NotSupported(
            "unitary groups are not algebraic over the coefficient field".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::enumerate_group;

    #[test]
    fn outer_twist_of_gl2() {
        let spec = GroupSpecFin::parse("GL2", 3, 1).unwrap();
        let f = spec.field().clone();
        let els = enumerate_group(&spec).unwrap();
        let j = FqMatrix::from_int_rows(&f, &[vec![0, 1], vec![-1, 0]]);
        let outer = TwistAut::new(Some(j), true, &f).unwrap();
        // g -> J g^-T J^-1 is the outer involution fixing the standard pinning
        let sd = SemidirectData::new(&spec, &els, TwistAut::identity(), outer.clone(), 3).unwrap();
        assert!(sd.w_relation_ok());
        assert_eq!(sd.s_order(), 2);
        let sd = SemidirectData::new(&spec, &els, outer, TwistAut::identity(), 2).unwrap();
        assert!(sd.w_relation_ok());
    }

    #[test]
    fn l_order_with_twist() {
        let spec = GroupSpecFin::parse("GL1", 5, 1).unwrap();
        let f = spec.field().clone();
        let els = enumerate_group(&spec).unwrap();
        let inv = TwistAut::new(None, true, &f).unwrap();
        let sd = SemidirectData::new(&spec, &els, TwistAut::identity(), inv, 3).unwrap();
        assert_eq!(sd.s_order(), 2);
        // (g, s)^2 = (g g^-1, 1) = 1
        let x = LElement {
            g: FqMatrix::from_int_rows(&f, &[vec![2]]),
            s_power: 1,
        };
        assert_eq!(sd.l_order(&x, &spec), 2);
        let y = LElement {
            g: FqMatrix::from_int_rows(&f, &[vec![2]]),
            s_power: 0,
        };
        assert_eq!(sd.l_order(&y, &spec), 4);
    }
}
