//! Dense matrices over the integers with arbitrary-precision entries.
//!
//! Everything downstream (group presentations, cokernels, kernels, signed
//! adjacency matrices) is built on the Smith and Hermite normal forms here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::JsonInt;

/// Dense row-major integer matrix. `0 x n` and `n x 0` shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ZMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(c);
        }
        m
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input, so
    /// it is meant for literals in code and tests.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row in ZMatrix::from_rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { entries, ..*self })
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|a| -a).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a * c).collect(),
            ..*self
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// Rows `range` of the matrix, all columns.
    pub fn row_slice(&self, range: std::ops::Range<usize>) -> Self {
        let rows = range.len();
        let entries = self.entries[range.start * self.cols..range.end * self.cols].to_vec();
        Self {
            rows,
            cols: self.cols,
            entries,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for ZMatrix {
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
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<JsonInt>>,
}

impl Serialize for ZMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().cloned().map(JsonInt).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but lists {}",
                raw.rows,
                raw.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for (i, row) in raw.entries.into_iter().enumerate() {
            if row.len() != raw.cols {
                return Err(D::Error::custom(format!(
                    "matrix row {i} has {} entries, expected {}",
                    row.len(),
                    raw.cols
                )));
            }
            entries.extend(row.into_iter().map(|x| x.0));
        }
        Ok(ZMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries,
        })
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `D`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Position of the nonzero entry of least absolute value in the lower-right
/// block starting at `(t, t)`; ties go to the lowest row, then column.
fn min_abs_nonzero(a: &ZMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].magnitude() <= x.magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with transforms.
pub fn snf(m: &ZMatrix) -> SnfDecomposition {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = ZMatrix::identity(r);
    let mut v = ZMatrix::identity(c);

    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // The pivot must divide everything left in the trailing block.
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfDecomposition { u, d: a, v }
}

/// Column-style Hermite form `H = M * W` together with `W` and the pivot
/// positions `(row, col)` of `H`, in increasing order.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    pub h: ZMatrix,
    pub w: ZMatrix,
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `H`: a basis of the column lattice of `M`.
    pub fn basis(&self) -> ZMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.rank()).map(|j| self.h.column(j)).collect();
        ZMatrix::from_columns(self.h.rows, &cols)
    }

    /// Coefficients `x` with `H[:, ..rank] * x = y`, or `None` when `y` is
    /// not in the column lattice.
    pub fn solve_in_basis(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        if y.len() != self.h.rows {
            return None;
        }
        let mut residual = y.to_vec();
        let mut x = vec![BigInt::zero(); self.rank()];
        for &(row, col) in &self.pivots {
            let p = &self.h[(row, col)];
            let (q, rem) = residual[row].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, r) in residual.iter_mut().enumerate().skip(row) {
                    *r -= &self.h[(i, col)] * &q;
                }
            }
            x[col] = q;
        }
        residual.iter().all(Zero::is_zero).then_some(x)
    }

    /// Coefficients `z` with `M * z = y`.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.solve_in_basis(y)?;
        let mut padded = x;
        padded.resize(self.w.rows, BigInt::zero());
        self.w.mul_vec(&padded).ok()
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        self.solve_in_basis(y).is_some()
    }
}

pub fn hermite(m: &ZMatrix) -> HermiteDecomposition {
    let (r, c) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut w = ZMatrix::identity(c);
    let mut pivots = Vec::new();
    let mut pc = 0;

    for row in 0..r {
        if pc == c {
            break;
        }
        // Euclid across the row until only column `pc` is nonzero.
        loop {
            let mut best: Option<usize> = None;
            for j in pc..c {
                if h[(row, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(row, b)].magnitude() <= h[(row, j)].magnitude() => {}
                    _ => best = Some(j),
                }
            }
            let Some(j) = best else { break };
            h.swap_cols(pc, j);
            w.swap_cols(pc, j);
            let mut done = true;
            for j in pc + 1..c {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(row, j)] / &h[(row, pc)]);
                h.add_col_multiple(j, pc, &q);
                w.add_col_multiple(j, pc, &q);
                done &= h[(row, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(row, pc)].is_zero() {
            continue;
        }
        if h[(row, pc)].is_negative() {
            h.negate_col(pc);
            w.negate_col(pc);
        }
        let pivot = h[(row, pc)].clone();
        for j in 0..pc {
            let q = -h[(row, j)].div_floor(&pivot);
            if !q.is_zero() {
                h.add_col_multiple(j, pc, &q);
                w.add_col_multiple(j, pc, &q);
            }
        }
        pivots.push((row, pc));
        pc += 1;
    }

    HermiteDecomposition { h, w, pivots }
}

/// Column-style Hermite normal form.
pub fn hnf(m: &ZMatrix) -> ZMatrix {
    hermite(m).h
}

/// Columns form a Z-basis of `{x : M x = 0}`, in Hermite form.
pub fn kernel_basis(m: &ZMatrix) -> ZMatrix {
    let dec = snf(m);
    let r = dec.rank();
    let cols: Vec<Vec<BigInt>> = (r..m.cols).map(|j| dec.v.column(j)).collect();
    let raw = ZMatrix::from_columns(m.cols, &cols);
    let herm = hermite(&raw);
    herm.basis()
}

pub fn rank(m: &ZMatrix) -> usize {
    hermite(m).rank()
}
