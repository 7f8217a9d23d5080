use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Square matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_entries(n: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        Self::from_entries(n, rows.iter().flatten().map(|&x| rat(x)).collect())
    }

    /// Matrix unit `e_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, BigRational::one());
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_entries(
            self.n,
            self.entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_entries(
            self.n,
            self.entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_entries(self.n, self.entries.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// `[self, o]`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.entries.swap(col * n + j, piv * n + j);
                inv.entries.swap(col * n + j, piv * n + j);
            }
            let s = a.get(col, col).recip();
            for j in 0..n {
                a.entries[col * n + j] *= &s;
                inv.entries[col * n + j] *= &s;
            }
            for r in 0..n {
                let c = a.get(r, col).clone();
                if r == col || c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (a.get(col, j) * &c, inv.get(col, j) * &c);
                    a.entries[r * n + j] -= x;
                    inv.entries[r * n + j] -= y;
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> BigRational {
        det_of(self.n, self.entries.clone())
    }
}

pub(crate) fn det_of(n: usize, mut a: Vec<BigRational>) -> BigRational {
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col].clone();
        det *= &p;
        for r in col + 1..n {
            let c = &a[r * n + col] / &p;
            if c.is_zero() {
                continue;
            }
            for j in col..n {
                let x = &a[col * n + j] * &c;
                a[r * n + j] -= x;
            }
        }
    }
    det
}

/// Basis of the kernel of a row-major `rows x cols` rational matrix.
pub(crate) fn rational_kernel(
    rows: usize,
    cols: usize,
    data: &[BigRational],
) -> Vec<Vec<BigRational>> {
    let mut a = data.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, piv * cols + j);
        }
        let s = a[rank * cols + col].recip();
        for j in 0..cols {
            a[rank * cols + j] *= &s;
        }
        for r in 0..rows {
            let c = a[r * cols + col].clone();
            if r == rank || c.is_zero() {
                continue;
            }
            for j in 0..cols {
                let x = &a[rank * cols + j] * &c;
                a[r * cols + j] -= x;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r * cols + fc].clone();
            }
            v
        })
        .collect()
}

/// Coefficients of `v` in the linearly independent family `basis`, if `v`
/// lies in its span.
pub(crate) fn solve_in_span(basis: &[QMatrix], v: &QMatrix) -> Option<Vec<BigRational>> {
    let d = basis.len();
    let m = v.entries().len();
    // augmented system [b_0 ... b_{d-1} | -v] with kernel vector ending in 1
    let mut data = Vec::with_capacity(m * (d + 1));
    for p in 0..m {
        data.extend(basis.iter().map(|b| b.entries()[p].clone()));
        data.push(-v.entries()[p].clone());
    }
    let ker = rational_kernel(m, d + 1, &data);
    let k = ker.into_iter().find(|k| !k[d].is_zero())?;
    let last = k[d].clone();
    Some(k[..d].iter().map(|c| c / &last).collect())
}
