use std::collections::BTreeMap;

use super::IntPoly;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The `n`-th cyclotomic polynomial, via `prod_{d | n} (T^d - 1)^{mu(n/d)}`.
///
/// Panics for `n = 0`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = &num * &IntPoly::binomial(d as usize, 1),
            -1 => den = &den * &IntPoly::binomial(d as usize, 1),
            _ => {}
        }
    }
    num.div_exact(&den)
        .expect("Möbius product of T^d - 1 is exact")
}

/// Every `n` with `phi(n) <= deg`, ascending.
pub fn cyclotomic_indices_up_to_degree(deg: usize) -> Vec<u64> {
    // phi(n) >= sqrt(n / 2), so n <= 2 deg^2 covers everything
    let limit = 2 * (deg as u64).pow(2) + 2;
    (1..=limit)
        .filter(|&n| euler_phi(n) as usize <= deg)
        .collect()
}

/// Splits off all cyclotomic factors: `p = remainder * prod Phi_n^{mult}`.
pub fn cyclotomic_factorization(p: &IntPoly) -> (BTreeMap<u64, u32>, IntPoly) {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut rem = p.clone();
    let mut mult = BTreeMap::new();
    let deg = p.degree().unwrap_or(0);
    for n in cyclotomic_indices_up_to_degree(deg) {
        let phi = cyclotomic(n);
        let mut count = 0;
        while rem.degree().unwrap_or(0) >= phi.degree().unwrap() {
            match rem.div_exact(&phi) {
                Some(q) => {
                    rem = q;
                    count += 1;
                }
                None => break,
            }
        }
        if count > 0 {
            mult.insert(n, count);
        }
    }
    (mult, rem)
}

/// `prod_{n <= h} Phi_n`.
pub fn cyclotomic_prefix_product(h: u64) -> IntPoly {
    (1..=h).map(cyclotomic).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_12_by_recursive_division() {
        // Oracle: T^12 - 1 divided by Phi_d for the proper divisors of 12.
        let mut q = IntPoly::binomial(12, 1);
        for d in [1, 2, 3, 4, 6] {
            q = q.div_exact(&cyclotomic(d)).unwrap();
        }
        assert_eq!(q, p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_is_binomial() {
        for n in 1..=200u64 {
            let prod: IntPoly = divisors(n).into_iter().map(cyclotomic).product();
            assert_eq!(prod, IntPoly::binomial(n as usize, 1), "n = {n}");
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn factorization_examples() {
        let (m, r) = cyclotomic_factorization(&p(&[-1, 0, 1]));
        assert_eq!(m, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(r, IntPoly::one());

        let chi = &(&IntPoly::binomial(2, 1) * &IntPoly::binomial(6, 1))
            * &p(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let (m, r) = cyclotomic_factorization(&chi);
        assert_eq!(m, BTreeMap::from([(1, 2), (2, 2), (3, 2), (6, 2), (12, 1)]));
        assert_eq!(r, IntPoly::one());

        let (m, r) = cyclotomic_factorization(&p(&[2, 0, 1]));
        assert!(m.is_empty());
        assert_eq!(r, p(&[2, 0, 1]));
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(cyclotomic_indices_up_to_degree(2), vec![1, 2, 3, 4, 6]);
    }
}
