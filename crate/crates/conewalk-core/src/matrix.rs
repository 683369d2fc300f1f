//! Dense matrices over arbitrary-precision integers, with the exact
//! eliminations the rest of the crate is built on: fraction-free
//! determinants, rational congruence diagonalization, integer kernels and
//! integral linear solving via unimodular column reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix of `BigInt` entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(i, j).clone();
                            m.set(k, j, b);
                            m.set(i, j, a);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    m.set(i, j, num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.column_reduction().pivots.len()
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix, by exact
    /// rational congruence reduction (Sylvester's law of inertia).
    ///
    /// A zero diagonal pivot is repaired with the basis change
    /// `e_i <- e_i + e_j` for some `j` with a nonzero off-diagonal entry.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "signature of a non-symmetric matrix");
        let n = self.rows;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(self.at(i, j).clone()))
                    .collect()
            })
            .collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for i in 0..n {
            if m[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(i, j);
                    for row in m.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                    // e_i <- e_i + e_j: add row j to row i, then column j to column i.
                    for c in 0..n {
                        let add = m[j][c].clone();
                        m[i][c] += add;
                    }
                    for r in 0..n {
                        let add = m[r][j].clone();
                        m[r][i] += add;
                    }
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = m[i][i].clone();
            if pivot.is_zero() {
                zero += 1;
                continue;
            }
            if pivot > BigRational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            for r in i + 1..n {
                if m[r][i].is_zero() {
                    continue;
                }
                let factor = &m[r][i] / &pivot;
                for c in 0..n {
                    let sub = &factor * &m[i][c];
                    m[r][c] -= sub;
                }
                for r2 in 0..n {
                    let sub = &factor * &m[r2][i].clone();
                    m[r2][r] -= sub;
                }
            }
        }
        (pos, neg, zero)
    }

    /// Unimodular column reduction `A * U = E` with `E` in column echelon
    /// form. Pivot rows strictly increase column by column; columns past the
    /// pivots are zero.
    pub fn column_reduction(&self) -> ColumnReduction {
        let (m, n) = (self.rows, self.cols);
        let mut e = self.clone();
        let mut u = Matrix::identity(n);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut lead = 0usize;
        for r in 0..m {
            if lead >= n {
                break;
            }
            loop {
                // Pick the column with the smallest nonzero entry in row r to
                // keep the gcd elimination short.
                let mut best: Option<usize> = None;
                for j in lead..n {
                    if !e.at(r, j).is_zero() {
                        best = match best {
                            None => Some(j),
                            Some(b) if e.at(r, j).abs() < e.at(r, b).abs() => Some(j),
                            keep => keep,
                        };
                    }
                }
                let Some(p) = best else { break };
                swap_cols(&mut e, &mut u, lead, p);
                let mut done = true;
                for j in lead + 1..n {
                    if e.at(r, j).is_zero() {
                        continue;
                    }
                    let q = e.at(r, j).div_floor(e.at(r, lead));
                    if !q.is_zero() {
                        sub_col(&mut e, &mut u, j, lead, &q);
                    }
                    if !e.at(r, j).is_zero() {
                        done = false;
                    }
                }
                if done {
                    if e.at(r, lead).is_negative() {
                        negate_col(&mut e, &mut u, lead);
                    }
                    pivots.push((r, lead));
                    lead += 1;
                    break;
                }
            }
        }
        ColumnReduction { e, u, pivots }
    }

    /// Basis of the saturated integer kernel `{x : Ax = 0}`, in canonical
    /// (row Hermite) form.
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let red = self.column_reduction();
        let rank = red.pivots.len();
        let raw: Vec<Vec<BigInt>> = (rank..self.cols).map(|j| red.u.col(j)).collect();
        hnf_rows(raw)
    }
}

/// Result of unimodular column reduction: `a * u = e`.
pub struct ColumnReduction {
    pub e: Matrix,
    pub u: Matrix,
    pub pivots: Vec<(usize, usize)>,
}

impl ColumnReduction {
    /// A particular integral solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.e.rows());
        let n = self.e.cols();
        let mut z = vec![BigInt::zero(); n];
        for (k, &(r, c)) in self.pivots.iter().enumerate() {
            let mut residual = b[r].clone();
            for &(_, cj) in self.pivots.iter().take(k) {
                residual -= self.e.at(r, cj) * &z[cj];
            }
            let (q, rem) = residual.div_rem(self.e.at(r, c));
            if !rem.is_zero() {
                return None;
            }
            z[c] = q;
        }
        // Verify the non-pivot rows too.
        let check = self.e.mul_vec(&z);
        if check != b {
            return None;
        }
        Some(self.u.mul_vec(&z))
    }

    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let rank = self.pivots.len();
        let raw: Vec<Vec<BigInt>> = (rank..self.e.cols()).map(|j| self.u.col(j)).collect();
        hnf_rows(raw)
    }
}

fn swap_cols(e: &mut Matrix, u: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..e.rows() {
        let x = e.at(i, a).clone();
        let y = e.at(i, b).clone();
        e.set(i, a, y);
        e.set(i, b, x);
    }
    for i in 0..u.rows() {
        let x = u.at(i, a).clone();
        let y = u.at(i, b).clone();
        u.set(i, a, y);
        u.set(i, b, x);
    }
}

fn sub_col(e: &mut Matrix, u: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..e.rows() {
        let v = e.at(i, target) - q * e.at(i, source);
        e.set(i, target, v);
    }
    for i in 0..u.rows() {
        let v = u.at(i, target) - q * u.at(i, source);
        u.set(i, target, v);
    }
}

fn negate_col(e: &mut Matrix, u: &mut Matrix, c: usize) {
    for i in 0..e.rows() {
        let v = -e.at(i, c);
        e.set(i, c, v);
    }
    for i in 0..u.rows() {
        let v = -u.at(i, c);
        u.set(i, c, v);
    }
}

/// Canonical row Hermite form of a spanning set: integer row echelon with
/// positive pivots reduced upwards. Rows remain a basis of the same lattice.
pub fn hnf_rows(vectors: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vectors;
    }
    let n = vectors[0].len();
    let mut rows = vectors;
    let mut pivot_row = 0usize;
    for col in 0..n {
        // gcd-reduce the column below pivot_row into a single entry
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if !rows[r][col].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if rows[r][col].abs() < rows[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            rows.swap(pivot_row, p);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                if !q.is_zero() {
                    for c in 0..n {
                        let v = &rows[r][c] - &q * &rows[pivot_row][c];
                        rows[r][c] = v;
                    }
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[pivot_row][col].is_negative() {
                    for c in 0..n {
                        rows[pivot_row][c] = -rows[pivot_row][c].clone();
                    }
                }
                // reduce the entries above the pivot into [0, pivot)
                let pivot = rows[pivot_row][col].clone();
                for r in 0..pivot_row {
                    let q = rows[r][col].div_floor(&pivot);
                    if !q.is_zero() {
                        for c in 0..n {
                            let v = &rows[r][c] - &q * &rows[pivot_row][c];
                            rows[r][c] = v;
                        }
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Exact dot product of integer slices.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// gcd of all entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Divides out the content, mapping a nonzero vector to its primitive
/// multiple on the same ray. The zero vector is returned unchanged.
pub fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}
