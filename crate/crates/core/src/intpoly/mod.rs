//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! [`IntPolynomial`] is the carrier for every exact polynomial in the crate:
//! Lehmer's polynomial, growth-series denominators, Alexander polynomials and
//! characteristic polynomials of Coxeter elements. Numerical root analysis
//! lives in [`roots`] and [`measure`].

pub mod measure;
mod parse;
pub mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use measure::{cyclotomic, is_cyclotomic_product, is_reciprocal, is_salem, mahler_measure};
pub use parse::parse_poly;
pub use roots::{find_roots, RootSet};

/// Polynomial with integer coefficients, stored ascending by exponent.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    /// Lehmer's polynomial `x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1`.
    pub fn lehmer() -> Self {
        Self::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Coefficients rounded to the nearest `f64`.
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `x^d p(1/x)` where `d` is the degree.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplies by `-1` if needed so the leading coefficient is positive.
    pub fn with_positive_leading(self) -> Self {
        if self.leading().is_some_and(Signed::is_negative) {
            -self
        } else {
            self
        }
    }

    /// Splits off the largest power of `x` dividing `self`: returns `(k, q)`
    /// with `self = x^k * q`.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect()).with_positive_leading()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division in `Z[x]`. Returns `None` if `divisor` does not divide
    /// `self` with an integral quotient, or if `divisor` is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` divided by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let (Some(n), Some(dd)) = (self.degree(), divisor.degree()) else {
            return self.clone();
        };
        if n < dd {
            return self.clone();
        }
        let lead = divisor.leading().cloned().unwrap_or_default();
        let mut rem = self.coeffs.clone();
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &top * d;
            }
        }
        rem.truncate(dd);
        Self::new(rem)
    }

    /// Greatest common divisor in `Z[x]` up to the integer content: the result
    /// is primitive with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Square-free decomposition of the primitive part: pairs `(f, m)` with
    /// each `f` primitive, square-free, non-constant and pairwise coprime, such
    /// that `primitive_part(self) = prod f^m` up to sign.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let a = self.primitive_part();
        if a.is_constant() {
            return Vec::new();
        }
        let b = a.derivative();
        let c = a.gcd(&b);
        let mut w = a.div_exact(&c).expect("gcd divides");
        let mut y = b.div_exact(&c).expect("gcd divides derivative");
        let mut z = &y - &w.derivative();
        let mut out = Vec::new();
        let mut mult = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), mult));
            }
            w = w.div_exact(&g).expect("gcd divides");
            y = z.div_exact(&g).expect("gcd divides");
            z = &y - &w.derivative();
            mult += 1;
        }
        out
    }

    /// Symbolic rendering in the variable `var`, highest power first.
    pub fn to_symbolic(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push(var),
                _ => {
                    out.push(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }

    /// Comma-separated ascending coefficients; `"0"` for the zero polynomial.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    /// Equality up to the units `±x^k` of `Z[x, 1/x]`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        let (_, a) = self.split_x_power();
        let (_, b) = other.split_x_power();
        a == b || a == -b
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbolic('x'))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self.to_symbolic('x'))
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse_poly(s)
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| acc * p)
    }
}

impl<'a> std::iter::Product<&'a IntPolynomial> for IntPolynomial {
    fn product<I: Iterator<Item = &'a IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * p)
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| acc + p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<String>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson { coeffs: self.coeffs.iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.trim().parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn symbolic_rendering() {
        assert_eq!(IntPolynomial::lehmer().to_string(), "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1");
        assert_eq!(p(&[1, -1, 0, 1]).to_string(), "x^3 - x + 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2x");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[1, 2])), Some(p(&[2])));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+1)^3 (x^2+x+1)
        let f = p(&[-1, 1]) * p(&[-1, 1]);
        let g = p(&[1, 1]) * p(&[1, 1]) * p(&[1, 1]);
        let h = p(&[1, 1, 1]);
        let prod = f.clone() * g.clone() * h.clone();
        let dec = prod.squarefree_decomposition();
        assert_eq!(dec, vec![(h, 1), (p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
        assert_eq!(prod.gcd(&f), f);
        assert_eq!(p(&[6, 4]).gcd(&p(&[3, 2])), p(&[3, 2]));
    }

    #[test]
    fn substitutions() {
        let l = IntPolynomial::lehmer();
        assert_eq!(l.reversed(), l);
        assert_eq!(p(&[1, 2, 3]).negate_variable(), p(&[1, -2, 3]));
        assert_eq!(p(&[0, 0, 3, 1]).split_x_power(), (2, p(&[3, 1])));
        assert!(p(&[0, 1, -1]).eq_up_to_units(&p(&[-1, 1])));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big = IntPolynomial::new(vec![BigInt::from(10).pow(30), BigInt::from(-1)]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, r#"{"coeffs":["1000000000000000000000000000000","-1"]}"#);
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }
}
