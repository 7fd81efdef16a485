//! Growth-series denominators of polygonal reflection groups.
//!
//! For a signature `(p_1, ..., p_k)` the denominator is
//!
//! ```text
//! delta = (x - k + 1) [p_1] ... [p_k] + sum_i [p_1] ... ^[p_i] ... [p_k]
//! ```
//!
//! with `[p] = 1 + x + ... + x^(p-1)`. It has a root outside the unit circle
//! exactly when the orbifold Euler characteristic is negative.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intpoly::{find_roots, is_salem, IntPolynomial};
use crate::{Error, Result};

/// A tuple `(p_1, ..., p_k)` with `k >= 2` and every `p_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleSignature {
    sorted: Vec<u32>,
    original: Vec<u32>,
}

impl TupleSignature {
    pub fn new(ps: &[u32]) -> Result<Self> {
        if ps.len() < 2 {
            return Err(Error::domain(format!("a signature needs at least 2 entries, got {}", ps.len())));
        }
        if let Some(p) = ps.iter().find(|&&p| p < 2) {
            return Err(Error::domain(format!("signature entries must be at least 2, got {p}")));
        }
        let mut sorted = ps.to_vec();
        sorted.sort_unstable();
        Ok(TupleSignature { sorted, original: ps.to_vec() })
    }

    /// Entries in ascending order.
    pub fn ps(&self) -> &[u32] {
        &self.sorted
    }

    /// Entries as given.
    pub fn original(&self) -> &[u32] {
        &self.original
    }

    pub fn k(&self) -> usize {
        self.sorted.len()
    }
}

impl fmt::Display for TupleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.original.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `[p] = 1 + x + ... + x^(p-1)`.
pub fn bracket(p: u32) -> Result<IntPolynomial> {
    if p < 1 {
        return Err(Error::domain("bracket [p] needs p >= 1"));
    }
    Ok(IntPolynomial::from_i64s(&vec![1; p as usize]))
}

pub fn delta(sig: &TupleSignature) -> IntPolynomial {
    let brackets: Vec<IntPolynomial> = sig.ps().iter().map(|&p| bracket(p).expect("p >= 2")).collect();
    let k = sig.k() as i64;
    let lead = IntPolynomial::from_i64s(&[1 - k, 1]);
    let full: IntPolynomial = brackets.iter().product();
    let rest: IntPolynomial = (0..brackets.len())
        .map(|i| brackets.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b).product::<IntPolynomial>())
        .sum();
    &lead * &full + rest
}

fn reciprocal_sum(sig: &TupleSignature) -> BigRational {
    sig.ps().iter().map(|&p| BigRational::new(BigInt::one(), BigInt::from(p))).sum()
}

/// `chi = sum 1/p_i - (k - 2)`.
pub fn orbifold_chi(sig: &TupleSignature) -> BigRational {
    reciprocal_sum(sig) - BigRational::from_integer(BigInt::from(sig.k() as i64 - 2))
}

/// `k - 2 - sum 1/p_i`, the negative of [`orbifold_chi`].
pub fn excess(sig: &TupleSignature) -> BigRational {
    -orbifold_chi(sig)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRate {
    pub value: f64,
    pub tol: f64,
    pub salem: bool,
}

/// Largest real root of [`delta`] when `chi < 0`, else `1`.
///
/// The Salem flag comes from [`is_salem`] on the denominator, so it is an
/// independent check rather than a restatement of the sign of `chi`.
pub fn growth_rate(sig: &TupleSignature, tol: f64) -> Result<GrowthRate> {
    if !orbifold_chi(sig).is_negative() {
        if !(tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        return Ok(GrowthRate { value: 1.0, tol, salem: false });
    }
    let d = delta(sig);
    let roots = find_roots(&d, tol)?;
    let value = roots
        .roots()
        .iter()
        .filter(|z| z.im.abs() <= roots.radius() && z.re > 1.0)
        .map(|z| z.re)
        .fold(f64::NAN, f64::max);
    if value.is_nan() {
        return Err(Error::InvariantViolation(format!("delta{sig} has no real root above 1 although chi < 0")));
    }
    let salem = is_salem(&d, tol.max(1e-8))?;
    Ok(GrowthRate { value, tol: roots.radius().max(f64::EPSILON), salem })
}

/// Result of [`minimal_excess`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExcessMinimum {
    pub value: BigRational,
    /// Every signature attaining the minimum, ascending.
    pub minimizers: Vec<Vec<u32>>,
    /// Search nodes visited.
    pub visited: u64,
}

/// Smallest positive excess over nondecreasing signatures with
/// `2 <= k <= kmax` and `2 <= p_i <= pmax`.
///
/// Branch and bound: with `m` entries left and the next entry at least `p`,
/// the excess is at least `k - 2 - S - m/p`, which rises with `p`. The last
/// entry is never enumerated; the best choice is the least `p` keeping the
/// excess positive.
pub fn minimal_excess(kmax: usize, pmax: u32) -> Result<Option<ExcessMinimum>> {
    if kmax < 2 || pmax < 2 {
        return Err(Error::domain("minimal_excess needs kmax >= 2 and pmax >= 2"));
    }
    struct State {
        best: Option<BigRational>,
        minimizers: Vec<Vec<u32>>,
        visited: u64,
        pmax: u32,
    }
    fn recurse(st: &mut State, k: usize, prefix: &mut Vec<u32>, sum: &BigRational) {
        st.visited += 1;
        let budget = BigRational::from_integer(BigInt::from(k as i64 - 2)) - sum;
        let left = k - prefix.len();
        let lo = *prefix.last().unwrap_or(&2);
        if left == 1 {
            // need 1/p < budget: p > 1/budget
            if !budget.is_positive() {
                return;
            }
            let floor = (budget.recip()).floor().to_integer();
            let p = BigInt::from(lo).max(floor + 1);
            if p > BigInt::from(st.pmax) {
                return;
            }
            let p: u32 = p.try_into().expect("bounded by pmax");
            let value = &budget - BigRational::new(BigInt::one(), BigInt::from(p));
            let mut tuple = prefix.clone();
            tuple.push(p);
            match &st.best {
                Some(b) if value > *b => {}
                Some(b) if value == *b => st.minimizers.push(tuple),
                _ => {
                    st.best = Some(value);
                    st.minimizers = vec![tuple];
                }
            }
            return;
        }
        for p in lo..=st.pmax {
            let bound = &budget - BigRational::new(BigInt::from(left as i64), BigInt::from(p));
            if let Some(b) = &st.best {
                if bound > *b {
                    break;
                }
            }
            prefix.push(p);
            let s = sum + BigRational::new(BigInt::one(), BigInt::from(p));
            recurse(st, k, prefix, &s);
            prefix.pop();
        }
    }
    let mut st = State { best: None, minimizers: Vec::new(), visited: 0, pmax };
    for k in 2..=kmax {
        recurse(&mut st, k, &mut Vec::new(), &BigRational::zero());
    }
    st.minimizers.sort();
    Ok(st.best.map(|value| ExcessMinimum { value, minimizers: st.minimizers, visited: st.visited }))
}
