use serde::{Deserialize, Serialize};

use super::field::FiniteField;

/// Square matrix over `F_{ell^k}`, entries as field-element indices in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqMatrix {
    n: usize,
    ell: u32,
    k: u32,
    entries: Vec<u32>,
}

impl FqMatrix {
    pub fn new(f: &FiniteField, n: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count");
        debug_assert!(entries.iter().all(|&x| x < f.size()));
        Self {
            n,
            ell: f.ell(),
            k: f.k(),
            entries,
        }
    }

    pub fn from_rows(f: &FiniteField, rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        Self::new(f, n, rows.iter().flatten().copied().collect())
    }

    /// Matrix with integer entries reduced into the prime field.
    pub fn from_int_rows(f: &FiniteField, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        Self::new(
            f,
            n,
            rows.iter().flatten().map(|&x| f.from_int(x)).collect(),
        )
    }

    pub fn identity(f: &FiniteField, n: usize) -> Self {
        Self::scalar(f, n, 1)
    }

    pub fn scalar(f: &FiniteField, n: usize, c: u32) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = c;
        }
        Self::new(f, n, e)
    }

    pub fn diag(f: &FiniteField, d: &[u32]) -> Self {
        let n = d.len();
        let mut e = vec![0; n * n];
        for (i, &x) in d.iter().enumerate() {
            e[i * n + i] = x;
        }
        Self::new(f, n, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.n;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[l * n + j];
                    if b != 0 {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Self {
            n,
            ell: self.ell,
            k: self.k,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Self {
            n: self.n,
            ell: self.ell,
            k: self.k,
            entries,
        }
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Self {
            n: self.n,
            ell: self.ell,
            k: self.k,
            entries,
        }
    }

    pub fn scale(&self, c: u32, f: &FiniteField) -> Self {
        self.map(|x| f.mul(c, x))
    }

    pub fn map(&self, g: impl Fn(u32) -> u32) -> Self {
        Self {
            n: self.n,
            ell: self.ell,
            k: self.k,
            entries: self.entries.iter().map(|&x| g(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.entries[i * n + j];
            }
        }
        Self {
            n,
            ell: self.ell,
            k: self.k,
            entries: e,
        }
    }

    /// Entrywise `x -> x^(ell^j)`.
    pub fn frobenius(&self, j: u32, f: &FiniteField) -> Self {
        self.map(|x| f.frobenius(x, j))
    }

    pub fn pow(&self, mut e: u64, f: &FiniteField) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(f, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self, f: &FiniteField) -> Option<Self> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
                inv.swap(col * n + j, piv * n + j);
            }
            let s = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(s, a[col * n + j]);
                inv[col * n + j] = f.mul(s, inv[col * n + j]);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(c, inv[col * n + j]));
                }
            }
        }
        Some(Self {
            n,
            ell: self.ell,
            k: self.k,
            entries: inv,
        })
    }

    pub fn det(&self, f: &FiniteField) -> u32 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).unwrap();
            for r in col + 1..n {
                let c = f.mul(a[r * n + col], pinv);
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Rank of a (not necessarily square) row-major matrix over the field.
    pub fn rank_of(rows: usize, cols: usize, data: &[u32], f: &FiniteField) -> usize {
        let mut a = data.to_vec();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(rank * cols + j, piv * cols + j);
            }
            let pinv = f.inv(a[rank * cols + col]).unwrap();
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let c = f.mul(a[r * cols + col], pinv);
                if c == 0 {
                    continue;
                }
                for j in col..cols {
                    a[r * cols + j] = f.sub(a[r * cols + j], f.mul(c, a[rank * cols + j]));
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Basis of `{v : A v = 0}` for a row-major `rows x cols` matrix `A`.
    pub fn nullspace(rows: usize, cols: usize, data: &[u32], f: &FiniteField) -> Vec<Vec<u32>> {
        Self::nullspace_with_free(rows, cols, data, f).0
    }

    /// Nullspace basis together with its free columns: the `i`-th basis
    /// vector is `1` at the `i`-th free column and `0` at the others.
    pub fn nullspace_with_free(
        rows: usize,
        cols: usize,
        data: &[u32],
        f: &FiniteField,
    ) -> (Vec<Vec<u32>>, Vec<usize>) {
        let mut a = data.to_vec();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(rank * cols + j, piv * cols + j);
            }
            let pinv = f.inv(a[rank * cols + col]).unwrap();
            for j in 0..cols {
                a[rank * cols + j] = f.mul(pinv, a[rank * cols + j]);
            }
            for r in 0..rows {
                let c = a[r * cols + col];
                if r == rank || c == 0 {
                    continue;
                }
                for j in 0..cols {
                    a[r * cols + j] = f.sub(a[r * cols + j], f.mul(c, a[rank * cols + j]));
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(a[r * cols + fc]);
                }
                v
            })
            .collect();
        (basis, free)
    }
}
