//! Dense exact matrices and fraction-free elimination.
//!
//! Everything here works over `BigInt` / `BigRational`. Elimination is
//! Bareiss-style: every intermediate entry is a minor of the input, so all
//! divisions are exact and entries stay integral until back-substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type RationalVector = Vec<BigRational>;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(n: usize) -> Self {
        IntegerMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn negated(&self) -> Self {
        IntegerMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Principal submatrix on the given row/column indices, in that order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> RationalVector {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| !self[(i, j)].is_zero())
                    .map(|j| BigRational::from(self[(i, j)].clone()) * &x[j])
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Exact determinant by fraction-free elimination with partial pivoting
    /// on the first nonzero entry.
    pub fn determinant(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        let mut rows = self.to_rows();
        match bareiss_forward(&mut rows, self.n, true) {
            Some(swaps) => {
                let det = rows[self.n - 1][self.n - 1].clone();
                if swaps % 2 == 1 {
                    -det
                } else {
                    det
                }
            }
            None => BigInt::zero(),
        }
    }

    /// Leading principal minors d_1, …, d_n. Stops early (returning a shorter
    /// list ending in zero) when a minor vanishes.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut rows = self.to_rows();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = rows[k][k].clone();
            minors.push(pivot.clone());
            if pivot.is_zero() {
                break;
            }
            eliminate_below(&mut rows, k, n, &prev);
            prev = pivot;
        }
        minors
    }

    /// Sylvester's criterion applied to `-Q`.
    pub fn is_negative_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let minors = self.negated().leading_minors();
        minors.len() == self.n && minors.iter().all(|d| d.is_positive())
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_columns(cols: Vec<RationalVector>) -> Self {
        let n = cols.len();
        let mut data = vec![BigRational::zero(); n * n];
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                data[i * n + j] = x;
            }
        }
        RationalMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigRational> {
        self.data.iter()
    }

    pub fn negated(&self) -> Self {
        RationalMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul_integer(&self, q: &IntegerMatrix) -> Self {
        let n = self.n;
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    if !q[(k, j)].is_zero() {
                        acc += &self[(i, k)] * BigRational::from(q[(k, j)].clone());
                    }
                }
                data[i * n + j] = acc;
            }
        }
        RationalMatrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    self[(i, j)].is_one()
                } else {
                    self[(i, j)].is_zero()
                }
            })
        })
    }

    /// Split into an integer matrix `P` and a positive integer `d` with
    /// `self = P / d`, `d` the lcm of all denominators.
    pub fn over_common_denominator(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let d = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows = self
            .rows()
            .map(|r| r.iter().map(|x| x.numer() * (&d / x.denom())).collect())
            .collect();
        (rows, d)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.n + j]
    }
}

/// One Bareiss step: clear column `k` below the pivot `rows[k][k]`.
fn eliminate_below(rows: &mut [Vec<BigInt>], k: usize, n: usize, prev: &BigInt) {
    let ncols = rows[k].len();
    let (top, bottom) = rows.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in bottom.iter_mut().take(n - k - 1) {
        let factor = row[k].clone();
        for j in k + 1..ncols {
            let v = &row[j] * pivot - &factor * &pivot_row[j];
            row[j] = v / prev;
        }
        row[k] = BigInt::zero();
    }
}

/// Forward elimination on an `n x ncols` augmented system (`ncols >= n`).
/// Returns the number of row swaps, or `None` if the leading `n x n`
/// block is singular.
fn bareiss_forward(rows: &mut [Vec<BigInt>], n: usize, pivoting: bool) -> Option<usize> {
    let mut prev = BigInt::one();
    let mut swaps = 0;
    for k in 0..n {
        if rows[k][k].is_zero() {
            if !pivoting {
                return None;
            }
            let p = (k + 1..n).find(|&i| !rows[i][k].is_zero())?;
            rows.swap(k, p);
            swaps += 1;
        }
        eliminate_below(rows, k, n, &prev);
        prev = rows[k][k].clone();
    }
    Some(swaps)
}

/// Solve `Q X = B` for several right-hand sides at once.
pub fn solve_columns(q: &IntegerMatrix, rhs: &[RationalVector]) -> Result<Vec<RationalVector>> {
    let n = q.dim();
    for b in rhs {
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
    }
    if n == 0 {
        return Ok(rhs.to_vec());
    }
    // Scale each right-hand side to integers; undo after back-substitution.
    let scales: Vec<BigInt> = rhs
        .iter()
        .map(|b| b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..n).map(|j| q[(i, j)].clone()).collect();
            for (b, s) in rhs.iter().zip(&scales) {
                row.push(b[i].numer() * (s / b[i].denom()));
            }
            row
        })
        .collect();
    bareiss_forward(&mut rows, n, true).ok_or(Error::Singular)?;

    let m = rhs.len();
    let mut out = vec![vec![BigRational::zero(); n]; m];
    for (c, scale) in scales.iter().enumerate() {
        let x = &mut out[c];
        for i in (0..n).rev() {
            let mut acc = BigRational::from(rows[i][n + c].clone());
            for j in i + 1..n {
                if !rows[i][j].is_zero() {
                    acc -= BigRational::from(rows[i][j].clone()) * &x[j];
                }
            }
            x[i] = acc / BigRational::from(rows[i][i].clone());
        }
        let s = BigRational::from(scale.clone());
        for xi in x.iter_mut() {
            *xi /= &s;
        }
    }
    Ok(out)
}

pub fn solve(q: &IntegerMatrix, b: &[BigRational]) -> Result<RationalVector> {
    Ok(solve_columns(q, &[b.to_vec()])?.pop().unwrap_or_default())
}

pub fn inverse(q: &IntegerMatrix) -> Result<RationalMatrix> {
    let n = q.dim();
    let identity: Vec<RationalVector> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(RationalMatrix::from_columns(solve_columns(q, &identity)?))
}

pub fn dot(x: &[BigRational], y: &[BigRational]) -> BigRational {
    x.iter().zip(y).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

pub fn to_rational_vector<T: Into<BigInt> + Clone>(v: &[T]) -> RationalVector {
    v.iter().map(|x| BigRational::from(x.clone().into())).collect()
}
