use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::field::{make_field, FiniteField};
use super::matrix::FqMatrix;
use super::FinError;
use crate::dualgroup::{chevalley_steinberg, ArithContext, LGroupSpec};
use crate::exactalg::prime_divisors;

pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SL,
    /// Preserves `[[0, I], [-I, 0]]`.
    Sp,
    /// Unitary group over the quadratic subextension: `g J conj(g)^T = J`
    /// with `J` antidiagonal ones and `conj` the Frobenius of order two.
    U,
}

/// A matrix group over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct GroupSpecFin {
    kind: GroupKind,
    n: usize,
    field: FiniteField,
    /// Multiple of every element order, with its prime divisors.
    exp_bound: Option<u64>,
    exp_primes: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    kind: GroupKind,
    n: usize,
    ell: u32,
    k: u32,
}

impl TryFrom<RawGroup> for GroupSpecFin {
    type Error = FinError;
    fn try_from(r: RawGroup) -> Result<Self, FinError> {
        GroupSpecFin::new(r.kind, r.n, make_field(r.ell, r.k)?)
    }
}

impl From<GroupSpecFin> for RawGroup {
    fn from(g: GroupSpecFin) -> Self {
        RawGroup {
            kind: g.kind,
            n: g.n,
            ell: g.field.ell(),
            k: g.field.k(),
        }
    }
}

impl GroupSpecFin {
    pub fn new(kind: GroupKind, n: usize, field: FiniteField) -> Result<Self, FinError> {
        if n == 0 || n > 8 {
            return Err(FinError::InvalidGroup(format!("matrix size {n}")));
        }
        if kind == GroupKind::Sp && !n.is_multiple_of(2) {
            return Err(FinError::InvalidGroup("Sp needs even size".into()));
        }
        if kind == GroupKind::U && !field.k().is_multiple_of(2) {
            return Err(FinError::InvalidGroup(
                "U needs a field of even degree".into(),
            ));
        }
        let (exp_bound, exp_primes) = exponent_bound(&field, n);
        Ok(Self {
            kind,
            n,
            field,
            exp_bound,
            exp_primes,
        })
    }

    /// Parses `GL2`, `SL3`, `Sp4`, `U3`.
    pub fn parse(label: &str, ell: u32, k: u32) -> Result<Self, FinError> {
        let bad = || FinError::InvalidGroup(label.to_string());
        let (kind, rest) = if let Some(r) = label.strip_prefix("GL") {
            (GroupKind::GL, r)
        } else if let Some(r) = label.strip_prefix("SL") {
            (GroupKind::SL, r)
        } else if let Some(r) = label.strip_prefix("Sp") {
            (GroupKind::Sp, r)
        } else if let Some(r) = label.strip_prefix('U') {
            (GroupKind::U, r)
        } else {
            return Err(bad());
        };
        let n: usize = rest.parse().map_err(|_| bad())?;
        Self::new(kind, n, make_field(ell, k)?)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn label(&self) -> String {
        let k = match self.kind {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::Sp => "Sp",
            GroupKind::U => "U",
        };
        format!("{k}{}", self.n)
    }

    /// Size of the field of definition (`sqrt` of the field size for `U`).
    pub fn q(&self) -> u64 {
        match self.kind {
            GroupKind::U => u64::from(self.field.ell()).pow(self.field.k() / 2),
            _ => u64::from(self.field.size()),
        }
    }

    /// Lie algebra dimension of the group.
    pub fn dim(&self) -> usize {
        let n = self.n;
        match self.kind {
            GroupKind::GL | GroupKind::U => n * n,
            GroupKind::SL => n * n - 1,
            GroupKind::Sp => n * (n + 1) / 2,
        }
    }

    /// The matching root-datum label for point counting.
    pub fn root_label(&self) -> String {
        match self.kind {
            GroupKind::GL => format!("GL{}", self.n),
            GroupKind::SL => format!("SL{}", self.n),
            GroupKind::Sp => format!("Sp{}", self.n),
            GroupKind::U => format!("GL{}^2", self.n),
        }
    }

    /// Group order from the Chevalley–Steinberg formula.
    pub fn expected_order(&self) -> Result<BigInt, FinError> {
        let q = self.q();
        let ctx = ArithContext::from_q(q).map_err(|e| FinError::InvalidGroup(e.to_string()))?;
        let spec = LGroupSpec::from_label(&self.root_label(), ctx)
            .map_err(|e| FinError::InvalidGroup(e.to_string()))?;
        chevalley_steinberg(&spec, q).map_err(|e| FinError::InvalidGroup(e.to_string()))
    }

    /// The form `J` for `Sp` and `U`.
    pub fn form(&self) -> Option<FqMatrix> {
        let f = &self.field;
        let n = self.n;
        match self.kind {
            GroupKind::Sp => {
                let m = n / 2;
                let mut e = vec![0; n * n];
                for i in 0..m {
                    e[i * n + m + i] = 1;
                    e[(m + i) * n + i] = f.neg(1);
                }
                Some(FqMatrix::new(f, n, e))
            }
            GroupKind::U => {
                let mut e = vec![0; n * n];
                for i in 0..n {
                    e[i * n + n - 1 - i] = 1;
                }
                Some(FqMatrix::new(f, n, e))
            }
            _ => None,
        }
    }

    fn conj_power(&self) -> u32 {
        self.field.k() / 2
    }

    pub fn contains(&self, g: &FqMatrix) -> bool {
        let f = &self.field;
        if g.n() != self.n || g.ell() != f.ell() || g.k() != f.k() {
            return false;
        }
        match self.kind {
            GroupKind::GL => g.det(f) != 0,
            GroupKind::SL => g.det(f) == 1,
            GroupKind::Sp => {
                let j = self.form().unwrap();
                g.transpose().mul(&j, f).mul(g, f) == j
            }
            GroupKind::U => {
                let j = self.form().unwrap();
                g.mul(&j, f)
                    .mul(&g.frobenius(self.conj_power(), f).transpose(), f)
                    == j
            }
        }
    }

    /// Least `m >= 1` with `g^m = 1`.
    pub fn element_order(&self, g: &FqMatrix) -> u64 {
        let f = &self.field;
        let Some(mut order) = self.exp_bound else {
            // bound too large for u64: step through powers
            let mut x = g.clone();
            let mut m = 1u64;
            while !x.is_identity() {
                x = x.mul(g, f);
                m += 1;
            }
            return m;
        };
        debug_assert!(g.pow(order, f).is_identity());
        for &p in &self.exp_primes {
            while order % p == 0 && g.pow(order / p, f).is_identity() {
                order /= p;
            }
        }
        order
    }

    /// Semisimple and unipotent parts `(s, u)` inside the cyclic group `<g>`.
    pub fn jordan(&self, g: &FqMatrix) -> (FqMatrix, FqMatrix) {
        let (es, eu) = jordan_exponents(self.element_order(g), u64::from(self.field.ell()));
        (g.pow(es, &self.field), g.pow(eu, &self.field))
    }
}

/// `ell^e lcm(q^i - 1, i <= n)` with `ell^e >= n`, if it fits in `u64`.
fn exponent_bound(field: &FiniteField, n: usize) -> (Option<u64>, Vec<u64>) {
    let qf = BigInt::from(field.size());
    let ell = u64::from(field.ell());
    let mut lcm = BigInt::from(1);
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    primes.insert(ell);
    let mut qi = BigInt::from(1);
    for _ in 0..n {
        qi *= &qf;
        let v: BigInt = &qi - 1;
        lcm = num_integer::Integer::lcm(&lcm, &v);
        for p in prime_divisors(&v).unwrap_or_default() {
            primes.insert(p.to_u64().expect("small prime"));
        }
    }
    let mut lp = 1u64;
    while lp < n as u64 {
        lp *= ell;
    }
    ((lcm * lp).to_u64(), primes.into_iter().collect())
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// For an element of order `order`, exponents `(a, b)` with `g^a` of order
/// prime to `ell`, `g^b` of `ell`-power order and `g^a g^b = g`.
pub fn jordan_exponents(order: u64, ell: u64) -> (u64, u64) {
    let mut lv = 1u64;
    let mut r = order;
    while r.is_multiple_of(ell) {
        r /= ell;
        lv *= ell;
    }
    let x = mod_inverse(lv % r.max(1), r);
    let y = mod_inverse(r % lv.max(1), lv);
    // a = lv * x is 1 mod r and 0 mod lv; b = r * y is 0 mod r and 1 mod lv
    ((lv * x) % order.max(1), (r * y) % order.max(1))
}

/// Every element of the group, in lexicographic order of entry indices.
pub fn enumerate_group(spec: &GroupSpecFin) -> Result<Vec<FqMatrix>, FinError> {
    let est = spec.expected_order()?;
    if est > BigInt::from(ENUMERATION_LIMIT) {
        return Err(FinError::GroupTooLarge {
            estimate: est.to_string(),
        });
    }
    let f = spec.field();
    let n = spec.n();
    let q = f.size();
    let total = q.pow(n as u32);
    let rows: Vec<Vec<u32>> = (0..total)
        .map(|mut c| {
            let mut v = vec![0u32; n];
            for i in (0..n).rev() {
                v[i] = c % q;
                c /= q;
            }
            v
        })
        .collect();
    let form = spec.form();
    let conj = spec.conj_power();
    let pairing = |a: &[u32], b: &[u32], conj_b: bool| -> u32 {
        let j = form.as_ref().unwrap();
        let mut acc = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for l in 0..n {
                let jl = j.get(i, l);
                if jl == 0 {
                    continue;
                }
                let bl = if conj_b {
                    f.frobenius(b[l], conj)
                } else {
                    b[l]
                };
                acc = f.add(acc, f.mul(f.mul(a[i], jl), bl));
            }
        }
        acc
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut flat: Vec<u32> = Vec::with_capacity(n * n);

    fn rec(
        depth: usize,
        n: usize,
        rows: &[Vec<u32>],
        chosen: &mut Vec<usize>,
        flat: &mut Vec<u32>,
        accept: &dyn Fn(&[usize], &[u32], usize) -> bool,
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == n {
            out.push(flat.clone());
            return;
        }
        for (idx, row) in rows.iter().enumerate() {
            flat.extend_from_slice(row);
            chosen.push(idx);
            if accept(chosen, flat, depth) {
                rec(depth + 1, n, rows, chosen, flat, accept, out);
            }
            chosen.pop();
            flat.truncate(depth * n);
        }
    }

    let accept = |chosen: &[usize], flat: &[u32], depth: usize| -> bool {
        let new = &rows[chosen[depth]];
        match spec.kind() {
            GroupKind::GL | GroupKind::SL => {
                if FqMatrix::rank_of(depth + 1, n, flat, f) != depth + 1 {
                    return false;
                }
                if spec.kind() == GroupKind::SL && depth + 1 == n {
                    return FqMatrix::new(f, n, flat.to_vec()).det(f) == 1;
                }
                true
            }
            GroupKind::Sp | GroupKind::U => {
                let j = form.as_ref().unwrap();
                let is_u = spec.kind() == GroupKind::U;
                (0..=depth).all(|i| {
                    let other = &rows[chosen[i]];
                    pairing(new, other, is_u) == j.get(depth, i)
                        && (i == depth || pairing(other, new, is_u) == j.get(i, depth))
                })
            }
        }
    };
    let mut raw = Vec::new();
    rec(0, n, &rows, &mut chosen, &mut flat, &accept, &mut raw);
    out.extend(raw.into_iter().map(|e| FqMatrix::new(f, n, e)));
    Ok(out)
}

/// Orbits of `subgroup` acting on `elements` by conjugation: the least
/// element of each orbit with the number of elements in it.
pub fn conjugacy_reps(
    elements: &[FqMatrix],
    subgroup: &[FqMatrix],
    f: &FiniteField,
) -> Vec<(FqMatrix, usize)> {
    let mut sorted: Vec<&FqMatrix> = elements.iter().collect();
    sorted.sort();
    sorted.dedup();
    let members: HashSet<&FqMatrix> = sorted.iter().copied().collect();
    let pairs: Vec<(FqMatrix, FqMatrix)> = subgroup
        .iter()
        .map(|h| {
            (
                h.clone(),
                h.inverse(f).expect("subgroup elements are invertible"),
            )
        })
        .collect();
    let mut seen: HashSet<FqMatrix> = HashSet::new();
    let mut out = Vec::new();
    for x in sorted {
        if seen.contains(x) {
            continue;
        }
        let mut orbit: HashMap<FqMatrix, ()> = HashMap::new();
        for (h, hi) in &pairs {
            orbit.insert(h.mul(x, f).mul(hi, f), ());
        }
        orbit.insert(x.clone(), ());
        let size = orbit.keys().filter(|y| members.contains(y)).count();
        seen.extend(orbit.into_keys());
        out.push((x.clone(), size));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(label: &str, ell: u32, k: u32) -> GroupSpecFin {
        GroupSpecFin::parse(label, ell, k).unwrap()
    }

    #[test]
    fn counts_match_formula() {
        for (label, ell, k, count) in [
            ("GL1", 5, 1, 4),
            ("GL2", 3, 1, 48),
            ("GL2", 2, 2, 180),
            ("SL2", 5, 1, 120),
            ("Sp4", 2, 1, 720),
            ("U3", 2, 2, 648),
            ("GL3", 2, 1, 168),
            ("SL1", 7, 1, 1),
        ] {
            let g = group(label, ell, k);
            let all = enumerate_group(&g).unwrap();
            assert_eq!(all.len(), count, "{label}");
            assert_eq!(g.expected_order().unwrap(), BigInt::from(count));
            assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
            assert!(all.iter().all(|x| g.contains(x)), "{label}");
        }
    }

    #[test]
    fn guard() {
        let g = group("GL4", 3, 1);
        assert!(matches!(
            enumerate_group(&g),
            Err(FinError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn orders() {
        let g = group("GL2", 3, 1);
        let f = g.field().clone();
        assert_eq!(g.element_order(&FqMatrix::identity(&f, 2)), 1);
        assert_eq!(
            g.element_order(&FqMatrix::from_rows(&f, &[vec![0, 1], vec![1, 0]])),
            2
        );
        let g5 = group("GL2", 5, 1);
        let f5 = g5.field().clone();
        assert_eq!(
            g5.element_order(&FqMatrix::from_rows(&f5, &[vec![1, 1], vec![0, 1]])),
            5
        );
    }

    #[test]
    fn jordan_examples() {
        let g = group("GL2", 3, 1);
        let f = g.field().clone();
        let m = |r: &[Vec<u32>]| FqMatrix::from_rows(&f, r);
        let u = m(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(g.jordan(&u), (FqMatrix::identity(&f, 2), u.clone()));
        let s = m(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(g.jordan(&s), (s.clone(), FqMatrix::identity(&f, 2)));
        let x = m(&[vec![2, 1], vec![0, 2]]);
        let (ss, uu) = g.jordan(&x);
        assert_eq!(ss, FqMatrix::scalar(&f, 2, 2));
        assert_eq!(uu, m(&[vec![1, 2], vec![0, 1]]));
        assert_eq!(ss.mul(&uu, &f), x);
    }

    #[test]
    fn conjugacy_examples() {
        let g = group("GL2", 3, 1);
        let f = g.field().clone();
        let all = enumerate_group(&g).unwrap();
        let unip: Vec<FqMatrix> = all
            .iter()
            .filter(|x| x.pow(3, &f).is_identity())
            .cloned()
            .collect();
        let reps = conjugacy_reps(&unip, &all, &f);
        let mut sizes: Vec<usize> = reps.iter().map(|r| r.1).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 8]);
        let g1 = group("GL1", 5, 1);
        let all1 = enumerate_group(&g1).unwrap();
        assert_eq!(conjugacy_reps(&all1, &all1, g1.field()).len(), 4);
    }
}
