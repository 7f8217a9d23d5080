use serde::{Deserialize, Serialize};

use super::FinError;
use crate::exactalg::is_prime_u64;

const MAX_FIELD_SIZE: u32 = 4096;
const ADD_TABLE_LIMIT: u32 = 512;

/// `F_{ell^k}` with elements indexed `0..ell^k` by their coefficient digits in
/// base `ell`, lowest degree first. Index 0 is zero and index 1 is one.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct FiniteField {
    ell: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    ell: u32,
    k: u32,
    modulus: Vec<u32>,
}

impl TryFrom<RawField> for FiniteField {
    type Error = FinError;
    fn try_from(r: RawField) -> Result<Self, FinError> {
        let f = make_field(r.ell, r.k)?;
        if f.modulus != r.modulus {
            return Err(FinError::UnsupportedField(format!(
                "modulus {:?} is not the canonical one",
                r.modulus
            )));
        }
        Ok(f)
    }
}

impl From<FiniteField> for RawField {
    fn from(f: FiniteField) -> Self {
        RawField {
            ell: f.ell,
            k: f.k,
            modulus: f.modulus,
        }
    }
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.ell, self.k, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

// polynomials over F_ell, coefficient vectors lowest degree first

fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], ell: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % u64::from(ell);
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    poly_rem(&mut r, m, ell);
    r
}

/// Reduces `r` modulo the monic polynomial `m` in place.
fn poly_rem(r: &mut Vec<u32>, m: &[u32], ell: u32) {
    let dm = m.len() - 1;
    trim(r);
    while r.len() > dm {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (u64::from(top) * u64::from(c) % u64::from(ell)) as u32;
            r[shift + i] = (r[shift + i] + ell - sub) % ell;
        }
        trim(r);
    }
}

fn inv_mod(a: u32, ell: u32) -> u32 {
    let mut r = 1u64;
    let mut b = u64::from(a);
    let mut e = ell - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(ell);
        }
        b = b * b % u64::from(ell);
        e >>= 1;
    }
    r as u32
}

fn make_monic(p: &mut [u32], ell: u32) {
    if let Some(&lead) = p.last() {
        let inv = inv_mod(lead, ell);
        for c in p.iter_mut() {
            *c = (u64::from(*c) * u64::from(inv) % u64::from(ell)) as u32;
        }
    }
}

/// Monic gcd over `F_ell`.
fn poly_gcd(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        make_monic(&mut b, ell);
        poly_rem(&mut a, &b, ell);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a, ell);
    a
}

/// `x^(ell^i) mod m`.
fn frobenius_x(m: &[u32], ell: u32, i: u32) -> Vec<u32> {
    let mut x = vec![0, 1];
    poly_rem(&mut x, m, ell);
    for _ in 0..i {
        // raise to the ell-th power by repeated multiplication
        let base = x.clone();
        let mut acc = vec![1];
        for _ in 0..ell {
            acc = poly_mulmod(&acc, &base, m, ell);
        }
        x = acc;
    }
    x
}

fn is_irreducible(m: &[u32], ell: u32) -> bool {
    let k = (m.len() - 1) as u32;
    let mut x = vec![0, 1];
    poly_rem(&mut x, m, ell);
    for i in 1..k {
        let mut d = frobenius_x(m, ell, i);
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + ell - 1) % ell;
        trim(&mut d);
        if poly_gcd(m, &d, ell) != vec![1] {
            return false;
        }
    }
    frobenius_x(m, ell, k) == x
}

/// Lexicographically smallest (lowest degree compared first) monic irreducible.
fn canonical_modulus(ell: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = ell.pow(k);
    for code in 0..total {
        // c_0 is the most significant digit of `code`
        let mut m = vec![0u32; k as usize + 1];
        let mut c = code;
        for i in (0..k as usize).rev() {
            m[i] = c % ell;
            c /= ell;
        }
        m[k as usize] = 1;
        if m[0] != 0 && is_irreducible(&m, ell) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn make_field(ell: u32, k: u32) -> Result<FiniteField, FinError> {
    if !is_prime_u64(u64::from(ell)) {
        return Err(FinError::NotPrime(ell));
    }
    if !(1..=4).contains(&k) || u64::from(ell).pow(k) > u64::from(MAX_FIELD_SIZE) {
        return Err(FinError::UnsupportedField(format!("{ell}^{k}")));
    }
    let size = ell.pow(k);
    let modulus = canonical_modulus(ell, k);
    let to_poly = |mut a: u32| {
        let mut v = Vec::with_capacity(k as usize);
        for _ in 0..k {
            v.push(a % ell);
            a /= ell;
        }
        v
    };
    let to_index = |p: &[u32]| p.iter().rev().fold(0u32, |acc, &c| acc * ell + c);
    let mulmod = |a: u32, b: u32| {
        let mut r = poly_mulmod(&to_poly(a), &to_poly(b), &modulus, ell);
        r.resize(k as usize, 0);
        to_index(&r)
    };
    // smallest generator of the multiplicative group
    let n = size - 1;
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; size as usize];
    'search: for g in 2..size.max(3) {
        if size == 2 {
            exp[0] = 1;
            break;
        }
        let mut x = 1u32;
        for i in 0..n {
            if i > 0 && x == 1 {
                continue 'search;
            }
            exp[i as usize] = x;
            x = mulmod(x, g);
        }
        break;
    }
    for (i, &e) in exp.iter().enumerate() {
        log[e as usize] = i as u32;
    }
    let digit_add = |a: u32, b: u32| {
        let (pa, pb) = (to_poly(a), to_poly(b));
        let s: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % ell).collect();
        to_index(&s)
    };
    let neg: Vec<u32> = (0..size)
        .map(|a| {
            to_index(
                &to_poly(a)
                    .iter()
                    .map(|&c| (ell - c) % ell)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let add = (size <= ADD_TABLE_LIMIT).then(|| {
        let mut t = vec![0u16; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                t[(a * size + b) as usize] = digit_add(a, b) as u16;
            }
        }
        t
    });
    Ok(FiniteField {
        ell,
        k,
        size,
        modulus,
        exp,
        log,
        add,
        neg,
    })
}

impl FiniteField {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.ell)) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.ell;
        }
        if let Some(t) = &self.add {
            return u32::from(t[(a * self.size + b) as usize]);
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.ell + b % self.ell) % self.ell) * place;
            a /= self.ell;
            b /= self.ell;
            place *= self.ell;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = u64::from(self.size - 1);
        self.exp[((u64::from(self.log[a as usize]) * (e % n)) % n) as usize]
    }

    /// `a^(ell^j)`.
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        self.pow(a, u64::from(self.ell).pow(j % self.k))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = u64::from(self.size - 1);
        let l = u64::from(self.log[a as usize]);
        Some(n / num_integer::gcd(l, n))
    }

    /// Smallest-index square root, if any.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Generator of the multiplicative group used for the log tables.
    pub fn generator(&self) -> u32 {
        if self.size == 2 {
            1
        } else {
            self.exp[1]
        }
    }
}
