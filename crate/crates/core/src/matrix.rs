//! Small dense integer matrices and division-free characteristic polynomials.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};
use serde::{Deserialize, Serialize};

use crate::intpoly::IntPolynomial;
use crate::{Error, Result};

/// Square matrix of `i64`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; fails unless the rows form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix rows must form a square"));
        }
        Ok(IntMatrix { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = a.checked_mul(rhs[(k, j)])?;
                    out[(i, j)] = out[(i, j)].checked_add(prod)?;
                }
            }
        }
        Some(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data =
            self.data.iter().zip(&rhs.data).map(|(a, b)| i64::checked_add(*a, *b)).collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { n: self.n, data })
    }

    pub fn neg(&self) -> Self {
        IntMatrix { n: self.n, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Inverse of an upper unitriangular matrix, by back substitution.
    pub fn unitriangular_inverse(&self) -> Option<Self> {
        let n = self.n;
        if (0..n).any(|i| self[(i, i)] != 1 || (0..i).any(|j| self[(i, j)] != 0)) {
            return None;
        }
        let mut inv = Self::identity(n);
        // Solve U X = I column by column, rows bottom to top.
        for col in 0..n {
            for i in (0..col).rev() {
                let mut s: i64 = 0;
                for k in i + 1..=col {
                    s = s.checked_add(self[(i, k)].checked_mul(inv[(k, col)])?)?;
                }
                inv[(i, col)] = s.checked_neg()?;
            }
        }
        Some(inv)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut a: Vec<Vec<BigInt>> =
            self.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        prev * sign
    }

    /// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.n)
            .map(|k| {
                let sub: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| self[(i, j)]).collect()).collect();
                IntMatrix::from_rows(&sub).expect("square").determinant()
            })
            .collect()
    }

    /// Characteristic polynomial `det(tI - A)`, computed with Berkowitz's
    /// division-free algorithm. Runs in `i64` and falls back to big integers
    /// on overflow.
    pub fn charpoly(&self) -> IntPolynomial {
        match self.charpoly_i64() {
            Some(c) => IntPolynomial::from_i64s(&c),
            None => {
                let rows: Vec<Vec<BigInt>> =
                    self.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
                IntPolynomial::new(berkowitz(&rows).expect("big integers do not overflow"))
            }
        }
    }

    /// Ascending coefficients of `det(tI - A)`, or `None` on `i64` overflow.
    pub fn charpoly_i64(&self) -> Option<Vec<i64>> {
        berkowitz(&self.rows())
    }
}

/// Ascending coefficients of `det(tI - A)` for a square matrix over a
/// commutative ring, using only ring operations. `None` if an operation
/// overflows.
pub fn berkowitz<T>(a: &[Vec<T>]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = a.len();
    // Descending coefficients of the characteristic polynomial of the
    // leading r x r block.
    let mut poly: Vec<T> = vec![T::one()];
    for r in 0..n {
        let mut col: Vec<T> = Vec::with_capacity(r + 2);
        col.push(T::one());
        col.push(T::zero().checked_sub(&a[r][r])?);
        // v runs through A_r^k C for the leading block A_r and column C.
        let mut v: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let mut dot = T::zero();
            for (j, vj) in v.iter().enumerate() {
                dot = dot.checked_add(&a[r][j].checked_mul(vj)?)?;
            }
            col.push(T::zero().checked_sub(&dot)?);
            let mut next = Vec::with_capacity(r);
            for i in 0..r {
                let mut s = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    s = s.checked_add(&a[i][j].checked_mul(vj)?)?;
                }
                next.push(s);
            }
            v = next;
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = T::zero();
            for j in 0..=i.min(r) {
                s = s.checked_add(&col[i - j].checked_mul(&poly[j])?)?;
            }
            next.push(s);
        }
        poly = next;
    }
    poly.reverse();
    Some(poly)
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}
