//! Spherical / affine / indefinite classification by definiteness of the
//! bilinear form.
//!
//! Integral forms are decided exactly with a symmetric elimination over the
//! rationals that pivots on positive diagonal entries. It ends in one of
//! three states, each of which yields a checkable certificate:
//!
//! * everything eliminated: positive definite, certified by the leading
//!   principal minors (all positive);
//! * a remaining diagonal entry is negative, or the remaining block has zero
//!   diagonal but a non-zero entry: indefinite, certified by an integer
//!   vector `v` with `v^T B v < 0`;
//! * the remaining block is zero: positive semidefinite and singular,
//!   certified by an integer kernel vector.
//!
//! A disconnected graph has a block-diagonal form, so this reports the worst
//! kind among its components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{bilinear_form, CoxMatrix, CoxeterGraph};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// Eigenvalue tolerance for forms with irrational entries.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;
/// Eigenvalues this small are treated as exact zeros on the numeric path.
const NUMERIC_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Spherical,
    Affine,
    Indefinite,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Spherical => "spherical",
            Kind::Affine => "affine",
            Kind::Indefinite => "indefinite",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Leading principal minors of `B`, all positive.
    LeadingMinors(Vec<BigInt>),
    /// Non-zero integer vector with `B v = 0`.
    Kernel(Vec<BigInt>),
    /// Integer vector with `v^T B v = value < 0`.
    NegativeDirection { vector: Vec<BigInt>, value: BigInt },
    /// Extremal eigenvalues of a floating-point form.
    Eigenvalues { min: f64, max: f64, tol: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub kind: Kind,
    pub certificate: Certificate,
}

impl Classification {
    /// Re-checks the certificate against the form of `g`.
    pub fn verify(&self, g: &CoxeterGraph) -> bool {
        match (&bilinear_form(g), &self.certificate, self.kind) {
            (CoxMatrix::Exact(b), Certificate::LeadingMinors(m), Kind::Spherical) => {
                *m == b.leading_minors() && m.iter().all(Signed::is_positive)
            }
            (CoxMatrix::Exact(b), Certificate::Kernel(v), Kind::Affine) => {
                v.iter().any(|x| !x.is_zero()) && mat_vec(b, v).iter().all(Zero::is_zero)
            }
            (CoxMatrix::Exact(b), Certificate::NegativeDirection { vector, value }, Kind::Indefinite) => {
                value.is_negative() && quadratic(b, vector) == *value
            }
            (CoxMatrix::Numeric(_), Certificate::Eigenvalues { min, tol, .. }, kind) => match kind {
                Kind::Spherical => *min > *tol,
                Kind::Affine => min.abs() <= *tol,
                Kind::Indefinite => *min < -*tol,
            },
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let ints = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let cert = match &self.certificate {
            Certificate::LeadingMinors(m) => json!({"leading_minors": ints(m)}),
            Certificate::Kernel(v) => json!({"kernel_vector": ints(v)}),
            Certificate::NegativeDirection { vector, value } => {
                json!({"negative_vector": ints(vector), "value": value.to_string()})
            }
            Certificate::Eigenvalues { min, max, tol } => {
                json!({"min_eigenvalue": min, "max_eigenvalue": max, "tol": tol})
            }
        };
        json!({"kind": self.kind.as_str(), "certificate": cert})
    }
}

fn mat_vec(b: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..b.dim()).map(|i| (0..b.dim()).map(|j| BigInt::from(b[(i, j)]) * &v[j]).sum()).collect()
}

fn quadratic(b: &IntMatrix, v: &[BigInt]) -> BigInt {
    mat_vec(b, v).iter().zip(v).map(|(a, x)| a * x).sum()
}

/// Classifies `g` as spherical, affine or indefinite.
pub fn classify(g: &CoxeterGraph) -> Result<Classification> {
    match bilinear_form(g) {
        CoxMatrix::Exact(b) => classify_exact(&b),
        CoxMatrix::Numeric(b) => {
            let eig = nalgebra::SymmetricEigen::new(b).eigenvalues;
            let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
            let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let kind = if min > NUMERIC_TOLERANCE {
                Kind::Spherical
            } else if min < -NUMERIC_TOLERANCE {
                Kind::Indefinite
            } else if min.abs() <= NUMERIC_ZERO {
                Kind::Affine
            } else {
                return Err(Error::Ambiguous(format!(
                    "smallest eigenvalue {min:e} of the form is too close to zero to classify"
                )));
            };
            Ok(Classification { kind, certificate: Certificate::Eigenvalues { min, max, tol: NUMERIC_TOLERANCE } })
        }
    }
}

pub(crate) fn classify_exact(b: &IntMatrix) -> Result<Classification> {
    let n = b.dim();
    let mut s: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(b[(i, j)].into())).collect()).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        if remaining.is_empty() {
            let minors = b.leading_minors();
            return Ok(Classification { kind: Kind::Spherical, certificate: Certificate::LeadingMinors(minors) });
        }
        if let Some(pos) = remaining.iter().position(|&k| s[k][k].is_positive()) {
            let k = remaining.remove(pos);
            for &i in &remaining {
                let factor = &s[i][k] / &s[k][k];
                if factor.is_zero() {
                    continue;
                }
                for &j in &remaining {
                    let delta = &factor * &s[k][j];
                    s[i][j] -= delta;
                }
            }
            pivots.push(k);
            continue;
        }
        // No positive pivot left.
        let mut tail = vec![BigRational::zero(); n];
        let kind = if let Some(&k) = remaining.iter().find(|&&k| s[k][k].is_negative()) {
            tail[k] = BigRational::one();
            Kind::Indefinite
        } else if let Some((i, j)) = remaining
            .iter()
            .flat_map(|&i| remaining.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !s[i][j].is_zero())
        {
            tail[i] = BigRational::one();
            tail[j] = if s[i][j].is_positive() { -BigRational::one() } else { BigRational::one() };
            Kind::Indefinite
        } else {
            tail[remaining[0]] = BigRational::one();
            Kind::Affine
        };
        let v = extend_over_pivots(b, &pivots, tail)?;
        let certificate = match kind {
            Kind::Affine => Certificate::Kernel(v),
            _ => {
                let value = quadratic(b, &v);
                Certificate::NegativeDirection { vector: v, value }
            }
        };
        let c = Classification { kind, certificate };
        return Ok(c);
    }
}

/// Given fixed coordinates off the pivot set, chooses the pivot coordinates
/// to minimise the form (`x_P = -B_PP^{-1} B_PR x_R`) and clears denominators.
fn extend_over_pivots(b: &IntMatrix, pivots: &[usize], mut x: Vec<BigRational>) -> Result<Vec<BigInt>> {
    let p = pivots.len();
    if p > 0 {
        // Augmented system B_PP y = -B_PR x_R.
        let mut a: Vec<Vec<BigRational>> = pivots
            .iter()
            .map(|&i| {
                let mut row: Vec<BigRational> =
                    pivots.iter().map(|&j| BigRational::from_integer(b[(i, j)].into())).collect();
                let rhs: BigRational = (0..b.dim())
                    .filter(|j| !pivots.contains(j))
                    .map(|j| BigRational::from_integer(b[(i, j)].into()) * &x[j])
                    .sum();
                row.push(-rhs);
                row
            })
            .collect();
        for col in 0..p {
            let piv = (col..p)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular pivot block".into()))?;
            a.swap(col, piv);
            let lead = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v /= &lead;
            }
            for r in 0..p {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=p {
                        let delta = &f * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        for (row, &i) in pivots.iter().enumerate() {
            x[i] = a[row][p].clone();
        }
    }
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Ok(ints.into_iter().map(|v| if g.is_zero() { v } else { v / &g }).collect())
}
