//! Seifert matrices of positive chord systems and their link invariants.
//!
//! For a positive system the Seifert matrix is `M = I + A+`, with `A+` the
//! strictly upper part of the intersection matrix. Then `M + M^T` is the
//! bilinear form of the incidence graph, the monodromy is `h = M^T M^-1`
//! and `C = -h` is a Coxeter element. Since `M` is unitriangular, `M^-1` and
//! `h` are integer matrices.

use crate::chords::{intersection_matrix, make_positive, realize, OrderedChordSystem, DEFAULT_BUDGET};
use crate::coxeter::{family, Family};
use crate::growth::{delta, TupleSignature};
use crate::intpoly::IntPolynomial;
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// An upper unitriangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct SeifertMatrix(IntMatrix);

impl TryFrom<IntMatrix> for SeifertMatrix {
    type Error = Error;

    fn try_from(m: IntMatrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            if m[(i, i)] != 1 {
                return Err(Error::domain(format!("Seifert matrix needs 1 on the diagonal, row {}", i + 1)));
            }
            if let Some(j) = (0..i).find(|&j| m[(i, j)] != 0) {
                return Err(Error::domain(format!(
                    "Seifert matrix must be upper triangular, entry ({}, {}) is non-zero",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(SeifertMatrix(m))
    }
}

impl From<SeifertMatrix> for IntMatrix {
    fn from(m: SeifertMatrix) -> Self {
        m.0
    }
}

impl SeifertMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

/// `M = I + A+` for a positive system.
pub fn seifert_matrix(sys: &OrderedChordSystem) -> Result<SeifertMatrix> {
    if let Some((i, j)) = sys.positivity_violation() {
        return Err(Error::Precondition(format!(
            "system is not positive: chord {} (index {}) crosses chord {} (index {}) negatively",
            sys.sequence()[i] + 1,
            i + 1,
            sys.sequence()[j] + 1,
            j + 1
        )));
    }
    let a = intersection_matrix(sys);
    let n = a.dim();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = a[(i, j)];
        }
    }
    Ok(SeifertMatrix(m))
}

/// `h = M^T M^-1`.
pub fn monodromy(m: &SeifertMatrix) -> Result<IntMatrix> {
    let inv =
        m.0.unitriangular_inverse()
            .ok_or_else(|| Error::Internal("inverse of the Seifert matrix overflows i64".into()))?;
    m.0.transpose().checked_mul(&inv).ok_or_else(|| Error::Internal("monodromy overflows i64".into()))
}

/// `C = -M^T M^-1`.
pub fn coxeter_from_link(m: &SeifertMatrix) -> Result<IntMatrix> {
    Ok(monodromy(m)?.neg())
}

/// `det(tM - M^T)` by fraction-free elimination over `Z[t]`, with positive
/// leading coefficient.
pub fn alexander(m: &SeifertMatrix) -> IntPolynomial {
    let n = m.dim();
    let a = &m.0;
    let mut rows: Vec<Vec<IntPolynomial>> =
        (0..n).map(|i| (0..n).map(|j| IntPolynomial::from_i64s(&[-a[(j, i)], a[(i, j)]])).collect()).collect();
    det_bareiss(&mut rows).with_positive_leading()
}

fn det_bareiss(a: &mut [Vec<IntPolynomial>]) -> IntPolynomial {
    let n = a.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `delta(sig)(-x)`, with positive leading coefficient.
pub fn pretzel_alexander(sig: &TupleSignature) -> IntPolynomial {
    delta(sig).negate_variable().with_positive_leading()
}

/// The positive system of the star graph: realized with the centre chord
/// first and arms by increasing `p_i`, then made positive.
pub fn star_system(sig: &TupleSignature) -> Result<OrderedChordSystem> {
    let g = family(&Family::Star(sig.ps().to_vec()))?;
    let d = realize(&g, DEFAULT_BUDGET)?.ok_or_else(|| Error::Internal("trees are always realizable".into()))?;
    Ok(make_positive(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::ChordDiagram;
    use crate::coxeter::{bilinear_form, char_poly_coxeter, Ordering};

    fn m(rows: &[&[i64]]) -> SeifertMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows).unwrap().try_into().unwrap()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn identity_matrix() {
        let id = SeifertMatrix(IntMatrix::identity(3));
        assert_eq!(monodromy(&id).unwrap(), IntMatrix::identity(3));
        assert_eq!(coxeter_from_link(&id).unwrap(), IntMatrix::identity(3).neg());
        // det((t - 1) I) = (t - 1)^3
        assert_eq!(alexander(&id), poly(&[-1, 3, -3, 1]));
    }

    #[test]
    fn crossing_free_system() {
        let d: ChordDiagram = "1 1 2 2 3 3".parse().unwrap();
        let s = seifert_matrix(&OrderedChordSystem::natural(d)).unwrap();
        assert_eq!(*s.matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn rejects_non_positive_systems() {
        let d: ChordDiagram = "+1 +2 -1 -2".parse().unwrap();
        let sys = OrderedChordSystem::new(d, vec![1, 0]).unwrap();
        let err = seifert_matrix(&sys).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref msg) if msg.contains("index 2") && msg.contains("index 1")));
        let lower: Result<SeifertMatrix> = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap().try_into();
        assert!(lower.is_err());
    }

    #[test]
    fn five_cycle_alexander_polynomials() {
        let m1 = m(&[&[1, -1, 0, 0, -1], &[0, 1, -1, 0, 0], &[0, 0, 1, -1, 0], &[0, 0, 0, 1, -1], &[0, 0, 0, 0, 1]]);
        let m2 = m(&[&[1, 0, -1, -1, 0], &[0, 1, -1, 0, -1], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, -1], &[0, 0, 0, 0, 1]]);
        let d1 = alexander(&m1).negate_variable();
        let d2 = alexander(&m2).negate_variable();
        assert!(d1.eq_up_to_units(&poly(&[1, -1, 0, 0, -1, 1])));
        assert!(d2.eq_up_to_units(&poly(&[1, 0, -1, -1, 0, 1])));
        // characteristic polynomial of the monodromy is the same polynomial
        for s in [&m1, &m2] {
            let h = monodromy(s).unwrap();
            assert_eq!(h.determinant(), 1.into());
            assert!(h.charpoly().eq_up_to_units(&alexander(s)));
        }
    }

    #[test]
    fn sign_bridge() {
        let s = star_system(&TupleSignature::new(&[2, 3, 7]).unwrap()).unwrap();
        let sm = seifert_matrix(&s).unwrap();
        let n = sm.dim() as u32;
        let c = coxeter_from_link(&sm).unwrap();
        let bridge = alexander(&sm).negate_variable().scale(&(-1i64).pow(n).into());
        assert_eq!(c.charpoly(), bridge.with_positive_leading());
        assert_eq!(c.charpoly(), IntPolynomial::lehmer());
        let g = s.incidence_graph();
        assert_eq!(char_poly_coxeter(&g, &Ordering::identity(g.n())).unwrap(), c.charpoly());
        // B = M + M^T
        let b = sm.matrix().checked_add(&sm.matrix().transpose()).unwrap();
        assert_eq!(Some(&b), bilinear_form(&g).as_exact());
    }

    #[test]
    fn pretzel_polynomials() {
        let sig = TupleSignature::new(&[2, 3, 7]).unwrap();
        let p = pretzel_alexander(&sig);
        assert!(p.eq_up_to_units(&IntPolynomial::lehmer().negate_variable()));
        let s = star_system(&sig).unwrap();
        assert!(alexander(&seifert_matrix(&s).unwrap()).eq_up_to_units(&p));
        // (2,2): delta = x^3 + x^2 + x + 1, so delta(-x) = -x^3 + x^2 - x + 1
        let p22 = pretzel_alexander(&TupleSignature::new(&[2, 2]).unwrap());
        assert_eq!(p22, poly(&[-1, 1, -1, 1]));
    }
}
