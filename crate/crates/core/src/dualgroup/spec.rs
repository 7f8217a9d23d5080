use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::DualError;
use crate::exactalg::{is_prime_u64, IntMatrix, IntPoly};
use crate::rootdata::{
    build_twisted, chi_prime, chi_twisted, fundamental_degrees, parse_label, BasedRootDatum,
    ChiMethod, DiagramAutomorphism,
};

const ORDER_LIMIT: u64 = 10_000;

/// Residue characteristic `p`, residue field size `q`, and the tame
/// ramification index `e` and residue degree `f` of the splitting extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawContext", into = "RawContext")]
pub struct ArithContext {
    p: u64,
    q: u64,
    e: u64,
    f: u64,
}

#[derive(Serialize, Deserialize)]
struct RawContext {
    p: u64,
    q: u64,
    e: u64,
    f: u64,
}

impl TryFrom<RawContext> for ArithContext {
    type Error = DualError;
    fn try_from(r: RawContext) -> Result<Self, DualError> {
        ArithContext::new(r.p, r.q, r.e, r.f)
    }
}

impl From<ArithContext> for RawContext {
    fn from(c: ArithContext) -> Self {
        RawContext {
            p: c.p,
            q: c.q,
            e: c.e,
            f: c.f,
        }
    }
}

impl ArithContext {
    pub fn new(p: u64, q: u64, e: u64, f: u64) -> Result<Self, DualError> {
        if !is_prime_u64(p) {
            return Err(DualError::InvalidContext(format!("p = {p} is not prime")));
        }
        let mut m = q;
        while m > 1 && m.is_multiple_of(p) {
            m /= p;
        }
        if q < 2 || m != 1 {
            return Err(DualError::InvalidContext(format!(
                "q = {q} is not a power of {p}"
            )));
        }
        if e == 0 || f == 0 {
            return Err(DualError::InvalidContext("e and f must be positive".into()));
        }
        if e.gcd(&p) != 1 {
            return Err(DualError::InvalidContext(format!(
                "e = {e} is divisible by p"
            )));
        }
        Ok(Self { p, q, e, f })
    }

    /// Context with `p` recovered from `q` and `e = f = 1`.
    pub fn from_q(q: u64) -> Result<Self, DualError> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| DualError::InvalidContext(format!("q = {q} is not a prime power")))?;
        Self::new(p, q, 1, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }
}

/// A block of `f` copies of a simple (or reductive) factor permuted cyclically
/// by Frobenius, with `twist` the automorphism induced by `Fr^f` on one copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFactor {
    label: String,
    datum: BasedRootDatum,
    f: u32,
    twist: DiagramAutomorphism,
    twist_order: u32,
}

impl LFactor {
    pub fn new(label: &str, f: u32, twist_order: u32) -> Result<Self, DualError> {
        if f == 0 {
            return Err(DualError::InvalidSpec(
                "cycle length f must be positive".into(),
            ));
        }
        let parts = parse_label(label)?;
        if parts.len() != 1 || parts[0].1 != 1 {
            return Err(DualError::InvalidSpec(format!(
                "factor `{label}` must be a single untwisted type"
            )));
        }
        let token = if twist_order == 1 {
            label.to_string()
        } else {
            format!("{label}^{twist_order}")
        };
        let (datum, twist) = build_twisted(&token)?;
        Ok(Self {
            label: label.to_string(),
            datum,
            f,
            twist,
            twist_order,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn twist(&self) -> &DiagramAutomorphism {
        &self.twist
    }

    pub fn twist_order(&self) -> u32 {
        self.twist_order
    }

    fn chi(&self) -> Result<IntPoly, DualError> {
        Ok(chi_twisted(&self.datum, &self.twist, ChiMethod::Auto)?.compose_power(self.f as usize))
    }

    fn chi_prime(&self) -> Result<IntPoly, DualError> {
        Ok(chi_prime(&self.datum, &self.twist)?.compose_power(self.f as usize))
    }

    fn is_triality(&self) -> bool {
        self.twist_order == 3
    }

    fn untwisted_coxeter(&self) -> u64 {
        fundamental_degrees(&self.datum)
            .into_iter()
            .max()
            .unwrap_or(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LGroupSpec {
    factors: Vec<LFactor>,
    abelian_fr: IntMatrix,
    context: ArithContext,
}

#[derive(Serialize, Deserialize)]
struct RawFactor {
    #[serde(rename = "type")]
    label: String,
    f: u32,
    twist_order: u32,
}

#[derive(Serialize, Deserialize)]
struct RawAbelian {
    rank: usize,
    fr_matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    factors: Vec<RawFactor>,
    abelian: RawAbelian,
    context: ArithContext,
}

impl Serialize for LGroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSpec {
            factors: self
                .factors
                .iter()
                .map(|f| RawFactor {
                    label: f.label.clone(),
                    f: f.f,
                    twist_order: f.twist_order,
                })
                .collect(),
            abelian: RawAbelian {
                rank: self.abelian_fr.rows(),
                fr_matrix: self.abelian_fr.clone(),
            },
            context: self.context,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LGroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSpec::deserialize(d)?;
        if raw.abelian.fr_matrix.rows() != raw.abelian.rank {
            return Err(serde::de::Error::custom(
                "abelian rank does not match fr_matrix",
            ));
        }
        let factors = raw
            .factors
            .iter()
            .map(|f| LFactor::new(&f.label, f.f, f.twist_order))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        LGroupSpec::new(factors, raw.abelian.fr_matrix, raw.context)
            .map_err(serde::de::Error::custom)
    }
}

impl LGroupSpec {
    pub fn new(
        factors: Vec<LFactor>,
        abelian_fr: IntMatrix,
        context: ArithContext,
    ) -> Result<Self, DualError> {
        if !abelian_fr.is_square() {
            return Err(DualError::InvalidSpec(
                "abelian Frobenius matrix must be square".into(),
            ));
        }
        if abelian_fr.rows() > 0 && abelian_fr.finite_order(ORDER_LIMIT).is_none() {
            return Err(DualError::InfiniteOrder);
        }
        Ok(Self {
            factors,
            abelian_fr,
            context,
        })
    }

    /// Each `x`-separated factor of the label becomes a block with `f = 1`;
    /// a `^k` suffix sets the twist order. No separate abelian part.
    pub fn from_label(label: &str, context: ArithContext) -> Result<Self, DualError> {
        let factors = parse_label(label)?
            .into_iter()
            .map(|(tok, ord)| LFactor::new(&tok, 1, ord))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factors, IntMatrix::zeros(0, 0), context)
    }

    pub fn factors(&self) -> &[LFactor] {
        &self.factors
    }

    pub fn abelian_fr(&self) -> &IntMatrix {
        &self.abelian_fr
    }

    pub fn context(&self) -> &ArithContext {
        &self.context
    }

    pub fn with_context(mut self, context: ArithContext) -> Self {
        self.context = context;
        self
    }

    pub fn has_exceptional_or_triality(&self) -> bool {
        self.factors
            .iter()
            .any(|f| f.datum.has_exceptional_factor() || f.is_triality())
    }

    pub fn has_triality(&self) -> bool {
        self.factors.iter().any(LFactor::is_triality)
    }

    /// `N = sum_i f_i |Phi^+_i|`.
    pub fn num_positive_roots(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| u64::from(f.f) * f.datum.num_positive_roots() as u64)
            .sum()
    }

    /// Coxeter number of the untwisted group: the largest fundamental degree.
    pub fn untwisted_coxeter(&self) -> u64 {
        let ab = u64::from(self.abelian_fr.rows() > 0);
        self.factors
            .iter()
            .map(LFactor::untwisted_coxeter)
            .max()
            .unwrap_or(0)
            .max(ab)
    }

    fn chi_abelian(&self) -> Result<IntPoly, DualError> {
        if self.abelian_fr.rows() == 0 {
            return Ok(IntPoly::one());
        }
        let order = self
            .abelian_fr
            .finite_order(ORDER_LIMIT)
            .ok_or(DualError::InfiniteOrder)?;
        let chi = self.abelian_fr.char_poly();
        let inv = self.abelian_fr.pow(order - 1).char_poly();
        if chi != inv {
            return Err(DualError::BadAction(
                "Frobenius and its inverse have different characteristic polynomials".into(),
            ));
        }
        Ok(chi)
    }

    fn combine(
        &self,
        per_factor: impl Fn(&LFactor) -> Result<IntPoly, DualError>,
    ) -> Result<IntPoly, DualError> {
        let mut acc = self.chi_abelian()?;
        for f in &self.factors {
            acc = acc * per_factor(f)?;
        }
        Ok(acc)
    }

    /// `chi` with each triality block replaced by `T^12 - 1` (in `T^f`).
    pub fn chi_prime(&self) -> Result<IntPoly, DualError> {
        self.combine(LFactor::chi_prime)
    }
}

/// `chi_ab(T) * prod_i chi_i(T^{f_i})`.
pub fn chi_global(spec: &LGroupSpec) -> Result<IntPoly, DualError> {
    spec.combine(LFactor::chi)
}

/// `q^N chi(q)`: the order of the finite group of Lie type.
pub fn chevalley_steinberg(spec: &LGroupSpec, q: u64) -> Result<BigInt, DualError> {
    let chi = chi_global(spec)?;
    let val = chi.eval(&BigInt::from(q));
    if !val.is_positive() {
        return Err(DualError::NonPositiveCount);
    }
    let n = u32::try_from(spec.num_positive_roots())
        .map_err(|_| DualError::InvalidSpec("too many roots".into()))?;
    Ok(BigInt::from(q).pow(n) * val)
}
