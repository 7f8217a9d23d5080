//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use langparams_core::fingrp::{enumerate_group, FqMatrix, GroupSpecFin};
use langparams_core::moduli::SemidirectData;

/// `G x| A` with `A` the automorphism group generated by `theta_fr` and
/// `theta_s`, everything stored as index tables.
pub struct SemidirectModel {
    pub elements: Vec<FqMatrix>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Automorphisms as permutations of element indices.
    auts: Vec<Vec<u32>>,
    aut_mul: Vec<Vec<usize>>,
    aut_inv: Vec<usize>,
    fr: usize,
    s: usize,
}

impl SemidirectModel {
    pub fn new(spec: &GroupSpecFin, sd: &SemidirectData) -> Self {
        let f = spec.field();
        let elements = enumerate_group(spec).unwrap();
        let n = elements.len();
        let index: HashMap<&FqMatrix, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g, i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.mul(b, f)];
            }
        }
        let id = index[&FqMatrix::identity(f, spec.n())] as usize;
        let inv: Vec<u32> = (0..n)
            .map(|i| (0..n).find(|&j| mul[i * n + j] as usize == id).unwrap() as u32)
            .collect();
        let perm = |t: &langparams_core::moduli::TwistAut| -> Vec<u32> {
            elements.iter().map(|g| index[&t.apply(g, f)]).collect()
        };
        let gens = [perm(sd.theta_fr()), perm(sd.theta_s())];
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut auts = vec![identity];
        let mut at: HashMap<Vec<u32>, usize> = HashMap::new();
        at.insert(auts[0].clone(), 0);
        let mut k = 0;
        while k < auts.len() {
            for g in &gens {
                let c: Vec<u32> = auts[k].iter().map(|&x| g[x as usize]).collect();
                if !at.contains_key(&c) {
                    at.insert(c.clone(), auts.len());
                    auts.push(c);
                }
            }
            k += 1;
        }
        // (a b)(x) = a(b(x))
        let aut_mul: Vec<Vec<usize>> = auts
            .iter()
            .map(|a| {
                auts.iter()
                    .map(|b| at[&b.iter().map(|&x| a[x as usize]).collect::<Vec<u32>>()])
                    .collect()
            })
            .collect();
        let aut_inv: Vec<usize> = (0..auts.len())
            .map(|i| (0..auts.len()).find(|&j| aut_mul[i][j] == 0).unwrap())
            .collect();
        let fr = at[&gens[0]];
        let s = at[&gens[1]];
        Self {
            elements,
            mul,
            inv,
            auts,
            aut_mul,
            aut_inv,
            fr,
            s,
        }
    }

    fn product(&self, x: (u32, usize), y: (u32, usize)) -> (u32, usize) {
        let n = self.elements.len();
        let h = self.auts[x.1][y.0 as usize];
        (
            self.mul[x.0 as usize * n + h as usize],
            self.aut_mul[x.1][y.1],
        )
    }

    fn inverse(&self, x: (u32, usize)) -> (u32, usize) {
        let ai = self.aut_inv[x.1];
        (self.auts[ai][self.inv[x.0 as usize] as usize], ai)
    }

    fn power(&self, x: (u32, usize), e: u64) -> (u32, usize) {
        let id = (self.identity_index(), 0);
        (0..e).fold(id, |acc, _| self.product(acc, x))
    }

    pub fn s_index(&self) -> usize {
        self.s
    }

    fn identity_index(&self) -> u32 {
        self.elements.iter().position(|g| g.is_identity()).unwrap() as u32
    }

    /// Group part and automorphism index of `(g, s^k)`.
    pub fn l_element(&self, g: &FqMatrix, k: u64) -> (u32, usize) {
        let gi = self.elements.iter().position(|x| x == g).unwrap() as u32;
        (gi, self.power((self.identity_index(), self.s), k).1)
    }

    pub fn order(&self, x: (u32, usize)) -> u64 {
        let id = (self.identity_index(), 0);
        let mut y = x;
        let mut n = 1;
        while y != id {
            y = self.product(y, x);
            n += 1;
        }
        n
    }

    pub fn pow(&self, x: (u32, usize), e: u64) -> (u32, usize) {
        self.power(x, e % self.order(x))
    }

    pub fn group_part(&self, x: (u32, usize)) -> &FqMatrix {
        &self.elements[x.0 as usize]
    }

    /// Semisimple part: the power of `x` congruent to 1 modulo the prime-to-`ell`
    /// part of its order and to 0 modulo the `ell` part.
    /// Also returns the exponent used.
    pub fn semisimple(&self, x: (u32, usize), ell: u64) -> ((u32, usize), u64) {
        let n = self.order(x);
        let mut pl = 1;
        let mut t = n;
        while t.is_multiple_of(ell) {
            t /= ell;
            pl *= ell;
        }
        let e = (0..n).find(|&e| e % t == 1 % t && e % pl == 0).unwrap();
        (self.power(x, e), e)
    }

    /// Group parts of the orbit of `x` under conjugation by `G`.
    pub fn conjugation_orbit(&self, x: (u32, usize)) -> Vec<u32> {
        let n = self.elements.len() as u32;
        let mut out: Vec<u32> = (0..n)
            .map(|g| {
                let gg = (g, 0);
                self.product(self.product(gg, x), self.inverse(gg)).0
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Pairs with `(F, Fr)(sigma, s)(F, Fr)^-1 = (sigma, s)^q`, sorted.
    pub fn solutions(&self, q: u64) -> Vec<(FqMatrix, FqMatrix)> {
        let n = self.elements.len() as u32;
        let mut out = Vec::new();
        for fi in 0..n {
            let ff = (fi, self.fr);
            let ffi = self.inverse(ff);
            for si in 0..n {
                let x = (si, self.s);
                let lhs = self.product(self.product(ff, x), ffi);
                if lhs == self.power(x, q) {
                    out.push((
                        self.elements[fi as usize].clone(),
                        self.elements[si as usize].clone(),
                    ));
                }
            }
        }
        out.sort();
        out
    }
}

/// Invariant factors `> 1` of a finite abelian group given by its elements
/// (as coordinate vectors mod `moduli`) modulo a subgroup.
pub fn quotient_structure(group: &[Vec<u64>], sub: &HashSet<Vec<u64>>, moduli: &[u64]) -> Vec<u64> {
    let scale = |v: &[u64], d: u64| -> Vec<u64> {
        v.iter().zip(moduli).map(|(&x, &m)| x * d % m).collect()
    };
    let order = (group.len() / sub.len()) as u64;
    let mut primes = Vec::new();
    let mut t = order;
    let mut p = 2;
    while t > 1 {
        if t.is_multiple_of(p) {
            primes.push(p);
            while t.is_multiple_of(p) {
                t /= p;
            }
        }
        p += 1;
    }
    // for each prime r: c_k = log_r |Q[r^k]| gives the number of factors with r-part >= r^k
    let mut factors: BTreeMap<usize, u64> = BTreeMap::new();
    for r in primes {
        let mut prev = 0u32;
        let mut k = 1u32;
        let mut ge: Vec<u32> = Vec::new();
        loop {
            let d = r.pow(k);
            let count = group.iter().filter(|v| sub.contains(&scale(v, d))).count() / sub.len();
            let c = (count as f64).log(r as f64).round() as u32;
            if c == prev {
                break;
            }
            ge.push(c - prev);
            prev = c;
            k += 1;
        }
        // ge[k-1] = number of factors with r-exponent >= k
        let total = ge.first().copied().unwrap_or(0) as usize;
        for (i, slot) in (0..total).rev().enumerate() {
            let exp = ge.iter().filter(|&&g| g as usize > i).count() as u32;
            *factors.entry(slot).or_insert(1) *= r.pow(exp);
        }
    }
    let mut out: Vec<u64> = factors.into_values().filter(|&x| x > 1).collect();
    out.sort();
    out
}

fn all_vectors(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn apply(m: &[Vec<i64>], v: &[u64], moduli: &[u64]) -> Vec<u64> {
    (0..moduli.len())
        .map(|i| {
            let s: i64 = (0..v.len()).map(|j| m[i][j] * v[j] as i64).sum();
            s.rem_euclid(moduli[i] as i64) as u64
        })
        .collect()
}

fn add(a: &[u64], b: &[u64], moduli: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(moduli)
        .map(|((&x, &y), &m)| (x + y) % m)
        .collect()
}

fn sub(a: &[u64], b: &[u64], moduli: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(moduli)
        .map(|((&x, &y), &m)| (x + m - y) % m)
        .collect()
}

fn span(gens: &[Vec<u64>], moduli: &[u64]) -> HashSet<Vec<u64>> {
    let zero = vec![0u64; moduli.len()];
    let mut set: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add(&x, g, moduli);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `H^1(Z/N, A)` and its coinvariants under Frobenius, by enumerating
/// cocycles on the cyclic quotient of order `N`: `c` is determined by
/// `a = c(s)` with `sum_{i<N} sigma^i a = 0`, and Frobenius acts by
/// `(Fr c)(s) = Fr(c(s^{q'}))` with `q q' = 1 mod N`.
pub fn brute_force_h1(
    moduli: &[u64],
    sigma: &[Vec<i64>],
    fr: &[Vec<i64>],
    q: u64,
    big_n: u64,
) -> (Vec<u64>, Vec<u64>) {
    let all = all_vectors(moduli);
    let norm = |a: &[u64], m: u64| -> Vec<u64> {
        let mut acc = vec![0u64; moduli.len()];
        let mut t = a.to_vec();
        for _ in 0..m {
            acc = add(&acc, &t, moduli);
            t = apply(sigma, &t, moduli);
        }
        acc
    };
    let zero = vec![0u64; moduli.len()];
    let cocycles: Vec<Vec<u64>> = all
        .iter()
        .filter(|a| norm(a, big_n) == zero)
        .cloned()
        .collect();
    let boundaries: Vec<Vec<u64>> = all
        .iter()
        .map(|b| sub(b, &apply(sigma, b, moduli), moduli))
        .collect();
    let bset = span(&boundaries, moduli);
    let h1 = quotient_structure(&cocycles, &bset, moduli);

    let qp = (1..=big_n)
        .find(|&x| (q * x) % big_n == 1 % big_n)
        .expect("q invertible mod N");
    let moved: Vec<Vec<u64>> = cocycles
        .iter()
        .map(|a| sub(&apply(fr, &norm(a, qp), moduli), a, moduli))
        .collect();
    let mut gens = boundaries;
    gens.extend(moved);
    let rset = span(&gens, moduli);
    let total = quotient_structure(&cocycles, &rset, moduli);
    (h1, total)
}

/// Points `(F, sigma)` of a split torus over `F_ell` satisfying
/// `F theta_fr(sigma) theta_s^q(F)^-1 = N_q(sigma)`, where automorphisms act
/// by `theta(t)_i = prod_j t_j^{b[i][j]}`.
pub fn torus_point_count(b_fr: &[Vec<i64>], b_s: &[Vec<i64>], q: u64, ell: u64) -> u64 {
    let r = b_fr.len();
    let units: Vec<u64> = (1..ell).collect();
    let pw = |x: u64, e: i64| -> u64 {
        let e = e.rem_euclid(ell as i64 - 1) as u64;
        let mut acc = 1u64;
        for _ in 0..e {
            acc = acc * x % ell;
        }
        acc
    };
    let act = |b: &[Vec<i64>], t: &[u64]| -> Vec<u64> {
        (0..r)
            .map(|i| (0..r).fold(1, |acc, j| acc * pw(t[j], b[i][j]) % ell))
            .collect()
    };
    let mul =
        |a: &[u64], c: &[u64]| -> Vec<u64> { a.iter().zip(c).map(|(x, y)| x * y % ell).collect() };
    let inv = |a: &[u64]| -> Vec<u64> { a.iter().map(|&x| pw(x, -1)).collect() };
    let mut torus: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..r {
        torus = torus
            .into_iter()
            .flat_map(|v| {
                units.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let s_pow_q = |t: &[u64]| -> Vec<u64> { (0..q).fold(t.to_vec(), |acc, _| act(b_s, &acc)) };
    // F -> F theta_s^q(F)^-1 is a homomorphism; count fibers
    let mut image: HashMap<Vec<u64>, u64> = HashMap::new();
    for f in &torus {
        *image.entry(mul(f, &inv(&s_pow_q(f)))).or_default() += 1;
    }
    let mut count = 0;
    for s in &torus {
        let mut n = vec![1u64; r];
        let mut t = s.clone();
        for _ in 0..q {
            n = mul(&n, &t);
            t = act(b_s, &t);
        }
        // F theta_s^q(F)^-1 = N_q(s) theta_fr(s)^-1
        let target = mul(&n, &inv(&act(b_fr, s)));
        count += image.get(&target).copied().unwrap_or(0);
    }
    count
}

/// The outer automorphism `g -> J g^-T J^-1` with `J` alternating antidiagonal.
pub fn outer(spec: &GroupSpecFin) -> langparams_core::moduli::TwistAut {
    let n = spec.n();
    let f = spec.field();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + j == n - 1 {
                        if i % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    langparams_core::moduli::TwistAut::new(Some(FqMatrix::from_int_rows(f, &rows)), true, f)
        .unwrap()
}

/// Semidirect data for a twist name: `trivial`, `fr-outer` or `s-outer`.
pub fn semidirect(spec: &GroupSpecFin, twist: &str, q: u64) -> SemidirectData {
    use langparams_core::moduli::TwistAut;
    let elements = enumerate_group(spec).unwrap();
    let (fr, s) = match twist {
        "trivial" => (TwistAut::identity(), TwistAut::identity()),
        "fr-outer" => (outer(spec), TwistAut::identity()),
        "s-outer" => (TwistAut::identity(), outer(spec)),
        other => panic!("unknown twist {other}"),
    };
    SemidirectData::new(spec, &elements, fr, s, q).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ClassRow {
    pub rep: Vec<u32>,
    pub s_power: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GoldenCase {
    pub group: String,
    pub ell: u32,
    pub q: u64,
    pub twist: String,
    pub points: usize,
    pub classes: Vec<ClassRow>,
}

/// Configurations frozen in the golden fixture.
pub const GOLDEN_CASES: &[(&str, u32, u64, &str)] = &[
    ("GL1", 3, 2, "trivial"),
    ("GL1", 5, 2, "trivial"),
    ("GL1", 7, 3, "trivial"),
    ("GL1", 7, 4, "trivial"),
    ("GL2", 3, 2, "trivial"),
    ("GL2", 3, 4, "trivial"),
    ("GL2", 5, 2, "trivial"),
    ("GL2", 5, 3, "trivial"),
    ("GL2", 3, 2, "fr-outer"),
    ("GL2", 3, 5, "s-outer"),
    ("GL2", 5, 3, "s-outer"),
];

/// Point count and inertial class list from the permutation model.
pub fn golden_case_oracle(group: &str, ell: u32, q: u64, twist: &str) -> GoldenCase {
    let spec = GroupSpecFin::parse(group, ell, 1).unwrap();
    let sd = semidirect(&spec, twist, q);
    let model = SemidirectModel::new(&spec, &sd);
    let sols = model.solutions(q);
    let mut counts: BTreeMap<(FqMatrix, u64), usize> = BTreeMap::new();
    let mut rep_of: HashMap<u32, u32> = HashMap::new();
    for (_, sigma) in &sols {
        let x = model.l_element(sigma, 1);
        let (ss, e) = model.semisimple(x, ell as u64);
        let s_power = e % sd.s_order();
        let rep = *rep_of.entry(ss.0).or_insert_with(|| {
            let orbit = model.conjugation_orbit(ss);
            let m = orbit
                .iter()
                .map(|&i| &model.elements[i as usize])
                .min()
                .unwrap();
            model.elements.iter().position(|e| e == m).unwrap() as u32
        });
        *counts
            .entry((model.elements[rep as usize].clone(), s_power))
            .or_default() += 1;
    }
    GoldenCase {
        group: group.into(),
        ell,
        q,
        twist: twist.into(),
        points: sols.len(),
        classes: counts
            .into_iter()
            .map(|((g, s), count)| ClassRow {
                rep: g.entries().to_vec(),
                s_power: s,
                count,
            })
            .collect(),
    }
}
