use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{cyclotomic, cyclotomic_factorization, ExactError, IntPoly};

const TRIAL_LIMIT: u64 = 10_000;
const MR_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    is_probable_prime(&BigUint::from(n))
}

/// Miller–Rabin with the first sixteen prime bases (deterministic below 3.3e24).
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent; returns a nontrivial factor of the composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

fn split_into(n: BigUint, out: &mut BTreeSet<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.insert(n);
        return;
    }
    let f = pollard_brent(&n);
    let rest = &n / &f;
    split_into(f, out);
    split_into(rest, out);
}

/// Ascending prime divisors of `|n|`.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigUint>, ExactError> {
    if n.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let mut m = n.magnitude().clone();
    let mut out = BTreeSet::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        if (&m % &bp).is_zero() {
            out.insert(bp.clone());
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(m, &mut out);
    Ok(out.into_iter().collect())
}

/// Prime divisors of `scale * poly(a)`, factoring through the cyclotomic
/// decomposition of `poly` so that only small integers reach the factorizer.
pub fn prime_divisors_of_value(
    poly: &IntPoly,
    a: &BigInt,
    scale: &BigInt,
) -> Result<Vec<BigUint>, ExactError> {
    if poly.is_zero() || scale.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let (mult, rem) = cyclotomic_factorization(poly);
    let mut out = BTreeSet::new();
    let mut pieces = vec![scale.clone(), rem.eval(a)];
    pieces.extend(mult.keys().map(|&n| cyclotomic(n).eval(a)));
    for v in pieces {
        out.extend(prime_divisors(&v)?);
    }
    Ok(out.into_iter().collect())
}
