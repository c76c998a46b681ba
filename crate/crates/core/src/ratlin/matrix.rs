use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{lcm_denominators, Rat, Scalar};
use super::LinAlgError;

/// Fixed-length vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Vector(vec![T::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> Result<T, LinAlgError> {
        if self.len() != other.len() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Concatenation `(self, tail)`.
    pub fn extended(&self, tail: &[T]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Vector(v)
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

/// Dense row-major matrix with immutable shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[T] {
        assert!(i < self.rows, "row {i} out of bounds ({} rows)", self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = cell.clone() + a.clone() * other.data[k * other.cols + j].clone();
                }
            }
        }
        Ok(out)
    }

    /// Copy with row `i` multiplied by `factor`.
    pub fn with_scaled_row(&self, i: usize, factor: &T) -> Self {
        let mut m = self.clone();
        for j in 0..self.cols {
            let cell = &mut m.data[i * self.cols + j];
            *cell = cell.clone() * factor.clone();
        }
        m
    }

    fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    /// Determinant by Bareiss elimination: every intermediate entry is a
    /// minor of the input, so each division is exact.
    pub fn det(&self) -> Result<T, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            for row in tail.iter_mut() {
                for j in k + 1..n {
                    row[j] = (row[j].clone() * pivot_row[k].clone()
                        - row[k].clone() * pivot_row[j].clone())
                        / prev.clone();
                }
                row[k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Fraction-free Gauss-Jordan reduction.
    ///
    /// On return every pivot row carries the same pivot value `D` (the last
    /// pivot, a maximal minor up to sign) and zeros in the other pivot
    /// columns. Returns the reduced matrix, the pivot columns in row order,
    /// and `D` (one when the matrix is zero).
    pub fn fraction_free_rref(&self) -> (Self, Vec<usize>, T) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let pivot_row = a[r].clone();
            let pv = pivot_row[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let factor = row[c].clone();
                for j in 0..self.cols {
                    if j == c {
                        continue;
                    }
                    row[j] = (row[j].clone() * pv.clone() - factor.clone() * pivot_row[j].clone())
                        / prev.clone();
                }
                row[c] = T::zero();
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().flatten().collect();
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
            prev,
        )
    }

    pub fn rank(&self) -> usize {
        // Forward-only fraction-free elimination is enough for the pivot count.
        let mut a = self.to_rows();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                for j in c + 1..self.cols {
                    row[j] = (row[j].clone() * pivot_row[c].clone()
                        - row[c].clone() * pivot_row[j].clone())
                        / prev.clone();
                }
                row[c] = T::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Generator of the kernel when it is one-dimensional, scaled so that all
    /// entries stay in the ring of the input.
    pub fn kernel_vector(&self) -> Option<Vector<T>> {
        if self.cols == 0 {
            return None;
        }
        let (reduced, pivots, d) = self.fraction_free_rref();
        if pivots.len() + 1 != self.cols {
            return None;
        }
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![T::zero(); self.cols];
        x[free] = d;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -reduced.data[i * self.cols + free].clone();
        }
        Some(Vector(x))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.data[i * self.cols + j]
    }
}

/// Multiplies every row by the lcm of its denominators. Returns the integer
/// matrix and the per-row scale factors.
pub fn integer_rows(m: &Matrix<Rat>) -> (Matrix<BigInt>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(m.rows);
    let mut data = Vec::with_capacity(m.data.len());
    for i in 0..m.rows {
        let row = m.row(i);
        let l = lcm_denominators(row);
        for v in row {
            data.push((v * Rat::from_integer(l.clone())).to_integer());
        }
        scales.push(l);
    }
    (
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        scales,
    )
}

/// Exact determinant of a rational matrix. Denominators are cleared row by
/// row first so elimination runs over the integers.
pub fn det(m: &Matrix<Rat>) -> Result<Rat, LinAlgError> {
    let (im, scales) = integer_rows(m);
    let d = im.det()?;
    let s = scales.into_iter().fold(BigInt::one(), |acc, x| acc * x);
    Ok(Rat::new(d, s))
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    integer_rows(m).0.rank()
}

/// Inverse of a square rational matrix via fraction-free reduction of
/// `[A | I]`.
pub fn inverse(m: &Matrix<Rat>) -> Result<Matrix<Rat>, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = m.row(i).to_vec();
        row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        rows.push(row);
    }
    let aug = Matrix::from_rows(rows)?;
    let (reduced, pivots, d) = aug.fraction_free_rref();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinAlgError::Singular);
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(reduced[(i, n + j)].clone() / d.clone());
        }
    }
    Matrix::new(n, n, data)
}
