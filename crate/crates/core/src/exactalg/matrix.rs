use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntPoly;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entries length must be rows * cols"
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        Self::new(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a * c).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, entries)
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend(self.row(i).iter().cloned());
            entries.extend(other.row(i).iter().cloned());
        }
        Self::new(self.rows, cols, entries)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// `det(T*I - self)` by Faddeev–LeVerrier with exact integer division.
    pub fn char_poly(&self) -> IntPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self * &m;
            let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
            let c = -(tr / BigInt::from(k));
            coeffs[n - k] = c.clone();
            m = am.add(&Self::identity(n).scale(&c));
        }
        IntPoly::new(coeffs)
    }

    /// Order of a finite-order square matrix, searching up to `limit`.
    pub fn finite_order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(self.rows);
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == id {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * c;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += c * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * c;
            self.entries[i * self.cols + dst] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.entries[i * self.cols + j];
            self.entries[i * self.cols + j] = v;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct IntMatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntMatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = IntMatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom("entries length must equal rows * cols"));
        }
        let entries = raw
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix::new(raw.rows, raw.cols, entries))
    }
}

/// Smith normal form `U * M * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|x| !x.is_zero())
            .count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let k = r.min(c);
    for t in 0..k {
        // smallest nonzero entry of the trailing block as pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t).div_floor(d.get(t, t));
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = d.get(t, j).div_floor(d.get(t, t));
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> SmithForm {
    for t in 0..d.rows().min(d.cols()) {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form of the row lattice of `m`, zero rows dropped.
///
/// Pivots are positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let pivot = (row..r)
                .filter(|&i| !a.get(i, col).is_zero())
                .min_by(|&x, &y| a.get(x, col).abs().cmp(&a.get(y, col).abs()));
            let Some(p) = pivot else { break };
            a.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                let q = a.get(i, col).div_floor(a.get(row, col));
                a.add_row_multiple(i, row, &-q);
                if !a.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(row, col).is_zero() {
            continue;
        }
        if a.get(row, col).is_negative() {
            a.negate_row(row);
        }
        let pivot = a.get(row, col).clone();
        for i in 0..row {
            let q = a.get(i, col).div_floor(&pivot);
            a.add_row_multiple(i, row, &-q);
        }
        row += 1;
    }
    let entries = a.entries()[..row * c].to_vec();
    IntMatrix::new(row, c, entries)
}

/// Basis (as rows) of the saturated lattice `{v : M v = 0}`, in Hermite form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let c = m.cols();
    let vt = snf.v.transpose();
    let basis: Vec<BigInt> = (rank..c).flat_map(|j| vt.row(j).to_vec()).collect();
    let raw = IntMatrix::new(c - rank, c, basis);
    hermite_rows(&raw)
}
