use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Dense univariate polynomial over the integers, coefficients in ascending degree.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * T^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `T^n - c`.
    pub fn binomial(n: usize, c: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] += 1;
        coeffs[0] -= c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Substitutes `T -> T^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        if self.is_zero() {
            return Self::zero();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Substitutes `T -> -T`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, a: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * a + c)
    }

    /// Horner evaluation reducing modulo `m` at every step; result in `[0, m)`.
    pub fn eval_mod(&self, a: &BigInt, m: &BigInt) -> BigInt {
        assert!(*m >= BigInt::from(2), "modulus must be at least 2");
        let a = a.mod_floor(m);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &a + c).mod_floor(m))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division over the integers. Returns `None` when `divisor` does not
    /// divide `self` in `Z[T]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_int(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division in `Z[T]`, failing if a quotient coefficient is not integral.
    pub fn div_rem_int(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Divisibility over the rationals.
    pub fn divides(&self, other: &IntPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = rat_div_rem(&to_rat(other), &to_rat(self));
        r.is_empty()
    }

    /// Primitive integer polynomial with positive leading coefficient that is
    /// a rational multiple of `r`.
    pub(crate) fn from_rational_primitive(r: &[BigRational]) -> Self {
        let den = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = r
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        IntPoly::new(ints).primitive_part()
    }
}

fn to_rat(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rat_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &c * bc;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn rat_monic(mut a: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut a);
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = rat_monic(a.to_vec());
    let mut y = rat_monic(b.to_vec());
    while !y.is_empty() {
        let (_, r) = rat_div_rem(&x, &y);
        x = y;
        y = rat_monic(r);
    }
    x
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Least common multiple over the rationals, as a primitive integer
/// polynomial with positive leading coefficient.
pub fn primitive_lcm(polys: &[IntPoly]) -> Result<IntPoly, ExactError> {
    let (first, rest) = polys.split_first().ok_or(ExactError::EmptyInput)?;
    if polys.iter().any(IntPoly::is_zero) {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut acc = rat_monic(to_rat(first));
    for p in rest {
        let p = rat_monic(to_rat(p));
        let g = rat_gcd(&acc, &p);
        let (q, r) = rat_div_rem(&p, &g);
        debug_assert!(r.is_empty());
        acc = rat_monic(rat_mul(&acc, &q));
    }
    Ok(IntPoly::from_rational_primitive(&acc))
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
