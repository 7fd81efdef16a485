//! Mahler measure, reciprocity, and the cyclotomic and Salem predicates.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::roots::find_roots;
use super::IntPolynomial;
use crate::{Error, Result};

/// Mahler measure `|a_d| * prod max(1, |z|)` over the complex roots `z`,
/// accurate to within `tol`.
///
/// For a monic polynomial this is the product of the moduli of the roots
/// outside the unit circle. Constants have measure `|c|`.
pub fn mahler_measure(p: &IntPolynomial, tol: f64) -> Result<f64> {
    let Some(degree) = p.degree() else {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    };
    let lead = p.leading().and_then(ToPrimitive::to_f64).unwrap_or(f64::INFINITY).abs();
    if degree == 0 {
        return Ok(lead);
    }
    // If every root is within r of its approximation z~, then each factor
    // max(1, |z|) lies within a factor (1 +- r) of max(1, |z~|), and only the
    // m roots with |z~| >= 1 - r can move at all. So the true measure lies
    // within M~ ((1 + r)^m - 1) of the computed M~.
    let mut root_tol = tol / (2.0 * degree as f64);
    let mut achieved = f64::INFINITY;
    for _ in 0..4 {
        let roots = find_roots(p, root_tol)?;
        let r = roots.radius();
        let m = roots.roots().iter().filter(|z| z.norm() >= 1.0 - r).count();
        let value = roots.roots().iter().map(|z| z.norm().max(1.0)).product::<f64>() * lead;
        let err = value * (m as f64 * r.ln_1p()).exp_m1();
        if err <= tol {
            return Ok(value);
        }
        achieved = achieved.min(err);
        root_tol = root_tol.min(tol / (2.0 * (m.max(1) as f64) * value));
    }
    Err(Error::Convergence { requested: tol, achieved })
}

/// True iff the coefficient sequence is a palindrome, i.e. `p(x) = x^d p(1/x)`.
pub fn is_reciprocal(p: &IntPolynomial) -> bool {
    let c = p.coeffs();
    c.iter().eq(c.iter().rev())
}

/// The `d`-th cyclotomic polynomial, via `prod_{e | d} (x^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u32) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let factor = &IntPolynomial::monomial(1, e as usize) - &IntPolynomial::one();
        match mobius(d / e) {
            1 => num = num * factor,
            -1 => den = den * factor,
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn totients(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for i in 2..=limit {
        if phi[i] == i {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i;
            }
        }
    }
    phi
}

/// True iff the monic polynomial `p` is a product of cyclotomic polynomials.
///
/// Decided exactly by dividing out every `Phi_d` with `phi(d) <= deg p` as
/// often as it divides, then checking that the quotient is `1`.
pub fn is_cyclotomic_product(p: &IntPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::domain("cyclotomic test on the zero polynomial"));
    }
    if !p.is_monic() {
        return Err(Error::domain("cyclotomic test requires a monic polynomial"));
    }
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(true);
    }
    // Cheap necessary condition: the constant term of a product of Phi_d is +-1.
    if p.coeff(0).abs() != BigInt::from(1) {
        return Ok(false);
    }
    // phi(d) >= sqrt(d / 2), so phi(d) <= n forces d <= 2 n^2.
    let limit = 2 * n * n + 2;
    let phi = totients(limit);
    let mut q = p.clone();
    for d in 1..=limit {
        if phi[d] > q.degree().unwrap_or(0) {
            continue;
        }
        let cd = cyclotomic(d as u32);
        while let Some(next) = q.div_exact(&cd) {
            q = next;
        }
        if q.is_constant() {
            break;
        }
    }
    Ok(q == IntPolynomial::one())
}

/// True iff `p` is the kind of polynomial a Salem number satisfies.
///
/// `p` must be reciprocal and have exactly one root of modulus greater than
/// `1 + tol`, that root real, and at least one root on the unit circle. Roots
/// are located to within `tol / 10`; a root whose modulus lands within `tol`
/// of 1 but further than `tol / 10` from it cannot be classified and is
/// reported as [`Error::Ambiguous`].
pub fn is_salem(p: &IntPolynomial, tol: f64) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::domain("Salem test on the zero polynomial"));
    }
    if !p.is_monic() {
        return Err(Error::domain("Salem test requires a monic polynomial"));
    }
    if !is_reciprocal(p) || p.degree() == Some(0) {
        return Ok(false);
    }
    let fine = tol / 10.0;
    let roots = find_roots(p, fine)?;
    let (mut outside, mut on_circle) = (Vec::new(), 0usize);
    for z in roots.roots() {
        let rho = z.norm();
        if (rho - 1.0).abs() <= fine {
            on_circle += 1;
        } else if rho > 1.0 + tol {
            outside.push(*z);
        } else if rho >= 1.0 - tol {
            return Err(Error::Ambiguous(format!("root {z} has modulus {rho} within {tol:e} of the unit circle")));
        }
    }
    let real_outside = outside.len() == 1 && outside[0].im.abs() <= roots.radius();
    Ok(real_outside && on_circle > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn smyth() -> IntPolynomial {
        p(&[1, -1, 0, 1])
    }

    #[test]
    fn mahler_values() {
        assert!((mahler_measure(&IntPolynomial::lehmer(), 1e-10).unwrap() - 1.17628).abs() < 1e-4);
        assert!((mahler_measure(&smyth(), 1e-10).unwrap() - 1.32472).abs() < 1e-4);
        assert_eq!(mahler_measure(&p(&[1, 1, 1]), 1e-10).unwrap(), 1.0);
        assert_eq!(mahler_measure(&p(&[-3]), 1e-10).unwrap(), 3.0);
        // 2x - 1 has its root inside: measure is the leading coefficient.
        assert!((mahler_measure(&p(&[-1, 2]), 1e-10).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(mahler_measure(&IntPolynomial::zero(), 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn lehmer_number_to_full_precision() {
        // Bisection on the exact polynomial as an independent check.
        let l = IntPolynomial::lehmer().to_f64s();
        let f = |x: f64| l.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let (mut lo, mut hi) = (1.1, 1.2);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = mahler_measure(&IntPolynomial::lehmer(), 1e-12).unwrap();
        assert!((m - lo).abs() < 1e-12, "{m} vs {lo}");
    }

    #[test]
    fn reciprocity() {
        assert!(is_reciprocal(&IntPolynomial::lehmer()));
        assert!(!is_reciprocal(&smyth()));
        assert!(is_reciprocal(&IntPolynomial::one()));
        assert!(!is_reciprocal(&p(&[-1, 1])));
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        assert_eq!(cyclotomic(105).degree(), Some(48));
    }

    #[test]
    fn cyclotomic_products() {
        assert!(is_cyclotomic_product(&p(&[1, 1, 1])).unwrap());
        assert!(!is_cyclotomic_product(&IntPolynomial::lehmer()).unwrap());
        assert!(!is_cyclotomic_product(&p(&[-1, -1, 1])).unwrap());
        let f = cyclotomic(5) * cyclotomic(5) * cyclotomic(1) * cyclotomic(30);
        assert!(is_cyclotomic_product(&f).unwrap());
        assert!(is_cyclotomic_product(&IntPolynomial::one()).unwrap());
        assert!(!is_cyclotomic_product(&p(&[0, 1])).unwrap());
        assert!(matches!(is_cyclotomic_product(&p(&[1, 2])), Err(Error::Domain(_))));
    }

    #[test]
    fn salem_predicate() {
        assert!(is_salem(&IntPolynomial::lehmer(), 1e-8).unwrap());
        assert!(!is_salem(&smyth(), 1e-8).unwrap());
        assert!(!is_salem(&p(&[-2, 1]), 1e-8).unwrap());
        // x^2 - 3x + 1 is reciprocal with a real root outside but none on the circle.
        assert!(!is_salem(&p(&[1, -3, 1]), 1e-8).unwrap());
        // Lehmer times a cyclotomic factor still qualifies as a polynomial.
        assert!(is_salem(&(IntPolynomial::lehmer() * cyclotomic(3)), 1e-8).unwrap());
        assert!(!is_salem(&cyclotomic(7), 1e-8).unwrap());
    }
}
