//! Certified numerical isolation of complex roots.
//!
//! Roots are computed one square-free factor at a time. Each factor is
//! solved with the Aberth–Ehrlich simultaneous iteration started from the
//! eigenvalues of its companion matrix, then certified with inclusion disks:
//! if `w_i = p(z_i) / (a_d prod_{j != i} (z_i - z_j))` is the Weierstrass
//! correction at `z_i`, the disks `D(z_i, d |w_i|)` cover all roots and every
//! connected component of their union holds as many roots as disks. When the
//! disks are pairwise disjoint each contains exactly one root.
//!
//! `p(z_i)` is first bounded in floating point, including a rounding-error
//! term. If that bound is too coarse the residual is recomputed exactly:
//! `z_i` is a dyadic rational, so `p(z_i)` is an exact Gaussian rational.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::IntPolynomial;
use crate::{Error, Result};

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
const MAX_ITERATIONS: usize = 400;
const REFINEMENT_ROUNDS: usize = 4;

/// All complex roots of a polynomial, listed with multiplicity.
///
/// Each true root lies within `radius` of exactly one listed approximation
/// (counting a root of multiplicity `m` as `m` coincident entries).
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
    radius: f64,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest modulus among the roots; `0` for an empty set.
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Roots of modulus greater than `bound`.
    pub fn outside(&self, bound: f64) -> impl Iterator<Item = &Complex64> {
        self.roots.iter().filter(move |z| z.norm() > bound)
    }
}

/// Finds all complex roots of `p` with a certified uniform error radius at
/// most `tol`.
///
/// Results are deterministic for a fixed input. Roots are sorted by real
/// part, then imaginary part.
pub fn find_roots(p: &IntPolynomial, tol: f64) -> Result<RootSet> {
    if !(tol > 0.0) {
        return Err(Error::domain("root tolerance must be positive"));
    }
    let degree = match p.degree() {
        None => return Err(Error::domain("the zero polynomial has no finite root set")),
        Some(0) => return Err(Error::domain("constant polynomial has no roots")),
        Some(d) => d,
    };

    let (zeros, rest) = p.split_x_power();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let mut radius: f64 = 0.0;
    for (factor, mult) in rest.squarefree_decomposition() {
        let (found, r) = isolate_squarefree(&factor, tol)?;
        radius = radius.max(r);
        for z in found {
            roots.extend(std::iter::repeat_n(z, mult));
        }
    }
    if roots.len() != degree {
        return Err(Error::Internal(format!("found {} roots for a polynomial of degree {degree}", roots.len())));
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(RootSet { roots, radius })
}

/// Roots and certified radius for a square-free polynomial.
fn isolate_squarefree(p: &IntPolynomial, tol: f64) -> Result<(Vec<Complex64>, f64)> {
    let coeffs = p.to_f64s();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::domain("coefficients exceed floating-point range"));
    }
    let d = coeffs.len() - 1;
    if d == 1 {
        let z = Complex64::new(-coeffs[0] / coeffs[1], 0.0);
        let r = 2.0 * UNIT_ROUNDOFF * z.norm();
        return Ok((vec![z], r));
    }

    let mut z = initial_guesses(&coeffs);
    let mut achieved = f64::INFINITY;
    let deriv = p.derivative();
    let mut certify = |z: &[Complex64], exact: Option<&[BigInt]>| {
        let (sym, r) = symmetrize(z, &inclusion_radii(&coeffs, exact, z)?);
        achieved = achieved.min(r);
        (r <= tol).then_some((sym, r))
    };
    for _ in 0..REFINEMENT_ROUNDS {
        aberth(&coeffs, &mut z);
        if let Some(found) = certify(&z, None).or_else(|| certify(&z, Some(p.coeffs()))) {
            return Ok(found);
        }
        // Floating-point Horner noise can stall the iteration short of the
        // nearest representable root; polish with exact residuals.
        polish_exact(p.coeffs(), deriv.coeffs(), &mut z);
        if let Some(found) = certify(&z, Some(p.coeffs())) {
            return Ok(found);
        }
    }
    Err(Error::Convergence { requested: tol, achieved })
}

fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let companion = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    // The unbounded Schur iteration can cycle on companions with symmetric
    // spectra such as x^4 + x^2 + 1, so the iteration count is capped.
    let mut z: Vec<Complex64> = Schur::try_new(companion, f64::EPSILON, 1000)
        .map(|s| s.complex_eigenvalues().iter().copied().collect())
        .unwrap_or_default();
    if z.len() != d || z.iter().any(|c| !c.is_finite()) {
        // Fallback: points spread on a circle of the Cauchy radius.
        let rho = 1.0 + coeffs[..d].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
        z = (0..d).map(|k| Complex64::from_polar(rho, 0.4 + std::f64::consts::TAU * k as f64 / d as f64)).collect();
    }
    // Aberth needs pairwise distinct starting points.
    for i in 0..d {
        for j in 0..i {
            if (z[i] - z[j]).norm() < 1e-10 * (1.0 + z[i].norm()) {
                z[i] += Complex64::new(1e-7, 1e-7 * (i as f64 + 1.0));
            }
        }
    }
    z
}

/// Newton ratio `p(z) / p'(z)`, evaluated through the reversed polynomial
/// when `|z| > 1` to avoid overflow.
fn newton_ratio(coeffs: &[f64], z: Complex64) -> Complex64 {
    let d = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut r, mut dr) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in coeffs.iter() {
            dr = dr * w + r;
            r = r * w + c;
        }
        // p(z) = z^d r(w), p'(z) = z^{d-1} (d r(w) - w r'(w))
        z / (Complex64::new(d as f64, 0.0) - w * dr / r)
    }
}

fn aberth(coeffs: &[f64], z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        let mut max_rel: f64 = 0.0;
        for i in 0..n {
            let ratio = newton_ratio(coeffs, z[i]);
            if !ratio.is_finite() {
                continue;
            }
            if ratio.norm() == 0.0 {
                continue;
            }
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
                max_rel = max_rel.max(step.norm() / z[i].norm().max(f64::MIN_POSITIVE));
            }
        }
        if max_rel <= 4.0 * f64::EPSILON || max_step == 0.0 {
            break;
        }
    }
}

/// `ln(|p~(z)| + err)` where `p~` is the floating-point Horner value and
/// `err` bounds its rounding error.
fn log_abs_upper(coeffs: &[f64], z: Complex64) -> f64 {
    let d = coeffs.len() - 1;
    let gamma = 8.0 * (d as f64 + 2.0) * UNIT_ROUNDOFF;
    if z.norm() <= 1.0 {
        let a = z.norm();
        let mut p = Complex64::new(0.0, 0.0);
        let mut s = 0.0;
        for &c in coeffs.iter().rev() {
            p = p * z + c;
            s = s * a + c.abs();
        }
        (p.norm() + gamma * s).ln()
    } else {
        let w = z.inv();
        let a = w.norm();
        let mut r = Complex64::new(0.0, 0.0);
        let mut s = 0.0;
        for &c in coeffs.iter() {
            r = r * w + c;
            s = s * a + c.abs();
        }
        d as f64 * z.norm().ln() + (r.norm() + gamma * s).ln()
    }
}

/// `x = m 2^e` with integer `m`, odd unless `x = 0`.
fn decode(x: f64) -> (i64, i64) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1 << 52) - 1)) as i64;
    let mant = if exp == 0 { frac << 1 } else { frac | 1 << 52 };
    if mant == 0 {
        return (0, 0);
    }
    let tz = mant.trailing_zeros() as i64;
    (sign * (mant >> tz), exp - 1075 + tz)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, |v| v.abs().ln());
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().map_or(f64::INFINITY, |v| v.abs().ln()) + shift as f64 * std::f64::consts::LN_2
}

/// Exact `p(z) 2^shift` as Gaussian integer parts, with the `shift`.
fn eval_exact(coeffs: &[BigInt], z: Complex64) -> (BigInt, BigInt, usize) {
    let d = coeffs.len() - 1;
    let (mr, er) = decode(z.re);
    let (mi, ei) = decode(z.im);
    let scale = (-er.min(ei)).max(0) as usize;
    let a = BigInt::from(mr) << (er + scale as i64) as usize;
    let b = BigInt::from(mi) << (ei + scale as i64) as usize;
    // q_k = 2^(scale (d - k)) (c_d z^(d-k) + ... + c_k)
    let mut qr = coeffs[d].clone();
    let mut qi = BigInt::zero();
    for k in (0..d).rev() {
        let nr = &qr * &a - &qi * &b;
        let ni = &qr * &b + &qi * &a;
        qr = nr + (&coeffs[k] << (scale * (d - k)));
        qi = ni;
    }
    (qr, qi, scale * d)
}

/// `re + i im` as a complex mantissa and a binary exponent.
fn to_scaled(re: &BigInt, im: &BigInt) -> (Complex64, i64) {
    let bits = re.bits().max(im.bits());
    let shift = bits.saturating_sub(60);
    let f = |x: &BigInt| (x >> shift).to_f64().unwrap_or(0.0);
    (Complex64::new(f(re), f(im)), shift as i64)
}

/// Aberth sweeps with `p(z) / p'(z)` computed from exact values.
fn polish_exact(coeffs: &[BigInt], deriv: &[BigInt], z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..3 {
        for i in 0..n {
            let (pr, pi, ps) = eval_exact(coeffs, z[i]);
            let (dr, di, ds) = eval_exact(deriv, z[i]);
            let ((pm, pe), (dm, de)) = (to_scaled(&pr, &pi), to_scaled(&dr, &di));
            if pm.norm() == 0.0 || dm.norm() == 0.0 {
                continue;
            }
            let exp = (pe - ps as i64) - (de - ds as i64);
            let ratio = pm / dm * 2f64.powi(exp.clamp(-1000, 1000) as i32);
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
            }
        }
    }
}

/// An upper bound on `ln |p(z)|`, evaluated exactly.
fn log_abs_exact(coeffs: &[BigInt], z: Complex64) -> f64 {
    let (qr, qi, shift) = eval_exact(coeffs, z);
    let norm2 = &qr * &qr + &qi * &qi;
    if norm2.is_zero() {
        return f64::NEG_INFINITY;
    }
    0.5 * ln_big(&norm2) - shift as f64 * std::f64::consts::LN_2 + 1e-12
}

/// Inclusion radii `d |w_i|`, or `None` if two disks overlap. With `exact`
/// coefficients the residuals are evaluated without rounding.
fn inclusion_radii(coeffs: &[f64], exact: Option<&[BigInt]>, z: &[Complex64]) -> Option<Vec<f64>> {
    let d = z.len();
    let lead = coeffs[d].abs().ln();
    let slack = 1.0 + 4.0 * (d as f64 + 2.0) * UNIT_ROUNDOFF;
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let mut log_den = lead;
        for j in 0..d {
            if j != i {
                let gap = (z[i] - z[j]).norm();
                if gap == 0.0 {
                    return None;
                }
                log_den += gap.ln();
            }
        }
        let log_p = match exact {
            Some(c) => log_abs_exact(c, z[i]),
            None => log_abs_upper(coeffs, z[i]),
        };
        let w = (log_p - log_den).exp() * slack;
        radii.push(d as f64 * w);
    }
    for i in 0..d {
        for j in 0..i {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    Some(radii)
}

/// Snaps provably real roots onto the real axis and makes the non-real ones
/// exact conjugate pairs. Returns the adjusted centres and a uniform radius.
fn symmetrize(z: &[Complex64], radii: &[f64]) -> (Vec<Complex64>, f64) {
    let d = z.len();
    let mut out = z.to_vec();
    let mut r = radii.to_vec();
    let mut done = vec![false; d];
    for i in 0..d {
        if done[i] {
            continue;
        }
        let conj = z[i].conj();
        // Disks meeting the mirror image of disk i.
        let partners: Vec<usize> = (0..d).filter(|&j| (z[j] - conj).norm() <= radii[i] + radii[j]).collect();
        if partners == [i] {
            // The mirror of the root in disk i lies in disk i, so that root is real.
            out[i] = z[i].re.into();
            done[i] = true;
        } else if let Some(&j) = partners.iter().find(|&&j| j != i && !done[j]) {
            let centre = (z[i] + z[j].conj()) * 0.5;
            let shift = (z[i] - centre).norm();
            out[i] = centre;
            out[j] = centre.conj();
            let grown = radii[i].max(radii[j]) + shift;
            r[i] = grown;
            r[j] = grown;
            done[i] = true;
            done[j] = true;
        }
    }
    let radius = r.iter().copied().fold(0.0, f64::max);
    (out, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_residuals() {
        // p(x) = x^2 - 2 at 1.5: 0.25; at 0.5 + 0.25i: -1.8125 + 0.25i
        let c = [BigInt::from(-2), BigInt::zero(), BigInt::from(1)];
        assert!((log_abs_exact(&c, Complex64::new(1.5, 0.0)) - 0.25f64.ln()).abs() < 1e-11);
        let v = Complex64::new(-1.8125, 0.25).norm().ln();
        assert!((log_abs_exact(&c, Complex64::new(0.5, 0.25)) - v).abs() < 1e-11);
        assert_eq!(log_abs_exact(&[BigInt::from(-4), BigInt::from(1)], Complex64::new(4.0, 0.0)), f64::NEG_INFINITY);
        assert_eq!(decode(-0.75), (-3, -2));
        assert_eq!(decode(0.0), (0, 0));
        assert_eq!(decode(f64::MIN_POSITIVE), (1, -1022));
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn plus_minus_one() {
        for tol in [1e-2, 1e-8, 1e-12] {
            let rs = find_roots(&p(&[-1, 0, 1]), tol).unwrap();
            assert_eq!(rs.roots(), &[Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]);
            assert!(rs.radius() <= tol);
        }
    }

    #[test]
    fn golden_ratio() {
        // Oracle: quadratic formula, (1 ± sqrt 5) / 2.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let psi = (1.0 - 5f64.sqrt()) / 2.0;
        let rs = find_roots(&p(&[-1, -1, 1]), 1e-6).unwrap();
        assert!((rs.roots()[0].re - psi).abs() < 1e-6);
        assert!((rs.roots()[1].re - phi).abs() < 1e-6);
        assert!(rs.roots().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn lehmer_has_one_root_outside() {
        let rs = find_roots(&IntPolynomial::lehmer(), 1e-10).unwrap();
        let out: Vec<_> = rs.outside(1.0 + 1e-6).collect();
        assert_eq!(out.len(), 1);
        assert!((out[0].re - 1.17628).abs() < 1e-4);
        assert_eq!(out[0].im, 0.0);
    }

    #[test]
    fn exact_residuals_reach_below_rounding_floor() {
        let rs = find_roots(&IntPolynomial::lehmer(), 1e-14).unwrap();
        assert!(rs.radius() <= 1e-14);
        let d = crate::growth::delta(&crate::growth::TupleSignature::new(&[2, 3, 9]).unwrap());
        assert!(find_roots(&d, 1e-13).is_ok());
    }

    #[test]
    fn repeated_roots_keep_multiplicity() {
        // x^2 (x-1)^3 (x^2+1)
        let f = p(&[0, 0, 1]) * p(&[-1, 1]) * p(&[-1, 1]) * p(&[-1, 1]) * p(&[1, 0, 1]);
        let rs = find_roots(&f, 1e-12).unwrap();
        assert_eq!(rs.len(), 7);
        let ones = rs.roots().iter().filter(|z| (*z - 1.0).norm() < 1e-12).count();
        let zeros = rs.roots().iter().filter(|z| z.norm() == 0.0).count();
        assert_eq!((ones, zeros), (3, 2));
    }

    #[test]
    fn conjugate_pairs_are_exact() {
        let rs = find_roots(&IntPolynomial::lehmer(), 1e-10).unwrap();
        for z in rs.roots() {
            assert!(rs.roots().contains(&z.conj()));
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(find_roots(&IntPolynomial::zero(), 1e-8), Err(Error::Domain(_))));
        assert!(matches!(find_roots(&p(&[3]), 1e-8), Err(Error::Domain(_))));
        assert!(matches!(find_roots(&p(&[1, 1]), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_spectrum_terminates() {
        // roots are the primitive 3rd and 6th roots of unity
        let rs = find_roots(&p(&[1, 0, 1, 0, 1]), 1e-12).unwrap();
        assert!(rs.roots().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        assert!(rs.roots().iter().all(|z| (z.powu(6) - 1.0).norm() < 1e-10));
    }

    #[test]
    fn large_roots_do_not_overflow() {
        // (x - 1000)(x + 1000)(x^2 + 1) x-free, degree 4
        let f = p(&[-1000, 1]) * p(&[1000, 1]) * p(&[1, 0, 1]);
        let rs = find_roots(&f, 1e-8).unwrap();
        assert!((rs.max_modulus() - 1000.0).abs() < 1e-8);
    }
}
