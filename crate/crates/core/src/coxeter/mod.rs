//! Coxeter graphs, their bilinear forms, reflections and Coxeter elements.
//!
//! The form is `B[i][j] = -2 cos(pi / m_ij)` with `m_ii = 1`. Reflections act
//! by `s_i(e_j) = e_j - B[i][j] e_i`, and for an ordering `v_1, ..., v_n` of
//! the vertices the Coxeter element is the matrix product
//! `C = s_{v_1} s_{v_2} ... s_{v_n}` (so `s_{v_n}` is applied first).
//! Different composition conventions give conjugate matrices; everything
//! computed from `C` here is conjugation invariant.
//!
//! Graphs whose labels are all 3 or infinity have integer forms and are
//! handled exactly. Other labels fall back to `f64` arithmetic.

mod classify;
mod family;
mod graph;

use nalgebra::DMatrix;

use crate::intpoly::{find_roots, IntPolynomial};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

pub use classify::{classify, Certificate, Classification, Kind};
pub use family::{family, Family};
pub use graph::{directed_graph, CoxeterGraph, DirectedCoxeterGraph, Label, Ordering};

/// A real matrix that is exact whenever its entries are known to be integers.
#[derive(Debug, Clone, PartialEq)]
pub enum CoxMatrix {
    Exact(IntMatrix),
    Numeric(DMatrix<f64>),
}

impl CoxMatrix {
    pub fn dim(&self) -> usize {
        match self {
            CoxMatrix::Exact(m) => m.dim(),
            CoxMatrix::Numeric(m) => m.nrows(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            CoxMatrix::Exact(m) => m[(i, j)] as f64,
            CoxMatrix::Numeric(m) => m[(i, j)],
        }
    }

    pub fn as_exact(&self) -> Option<&IntMatrix> {
        match self {
            CoxMatrix::Exact(m) => Some(m),
            CoxMatrix::Numeric(_) => None,
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }
}

/// The symmetric bilinear form of a Coxeter graph. Diagonal entries are 2.
pub type BilinearForm = CoxMatrix;

/// `B[i][j] = -2 cos(pi / m_ij)`; exact when every label is 3 or infinity.
pub fn bilinear_form(g: &CoxeterGraph) -> BilinearForm {
    let n = g.n();
    if g.is_integral() {
        let mut b = IntMatrix::zeros(n);
        for i in 0..n {
            b[(i, i)] = 2;
        }
        for (i, j, l) in g.edges() {
            let v = l.integral_entry().expect("integral label");
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
        CoxMatrix::Exact(b)
    } else {
        let mut b = DMatrix::from_diagonal_element(n, n, 2.0);
        for (i, j, l) in g.edges() {
            b[(i, j)] = l.form_entry();
            b[(j, i)] = l.form_entry();
        }
        CoxMatrix::Numeric(b)
    }
}

/// Matrix of the reflection `s_i` in the basis `e_1, ..., e_n` (columns are
/// images of basis vectors).
pub fn reflection_matrix(g: &CoxeterGraph, i: usize) -> Result<CoxMatrix> {
    if i >= g.n() {
        return Err(Error::domain(format!("vertex {i} out of range for {} vertices", g.n())));
    }
    Ok(match bilinear_form(g) {
        CoxMatrix::Exact(b) => {
            let mut r = IntMatrix::identity(g.n());
            for j in 0..g.n() {
                r[(i, j)] -= b[(i, j)];
            }
            CoxMatrix::Exact(r)
        }
        CoxMatrix::Numeric(b) => {
            let mut r = DMatrix::identity(g.n(), g.n());
            for j in 0..g.n() {
                r[(i, j)] -= b[(i, j)];
            }
            CoxMatrix::Numeric(r)
        }
    })
}

/// `C = s_{v_1} ... s_{v_n}` for the vertices `v_k` listed in product order,
/// built by applying reflections to the identity from the right.
pub(crate) fn coxeter_element_exact(form: &IntMatrix, sequence: &[usize]) -> Option<IntMatrix> {
    let n = form.dim();
    let mut x = IntMatrix::identity(n);
    for &v in sequence.iter().rev() {
        // Row v of s_v X is X[v] - sum_j B[v][j] X[j].
        let mut row = vec![0i64; n];
        for (c, r) in row.iter_mut().enumerate() {
            let mut s = x[(v, c)];
            for j in 0..n {
                let b = form[(v, j)];
                if b != 0 {
                    s = s.checked_sub(b.checked_mul(x[(j, c)])?)?;
                }
            }
            *r = s;
        }
        for (c, r) in row.into_iter().enumerate() {
            x[(v, c)] = r;
        }
    }
    Some(x)
}

fn coxeter_element_numeric(form: &DMatrix<f64>, sequence: &[usize]) -> DMatrix<f64> {
    let n = form.nrows();
    let mut x = DMatrix::identity(n, n);
    for &v in sequence.iter().rev() {
        let mut row = x.row(v).clone_owned();
        for j in 0..n {
            let b = form[(v, j)];
            if b != 0.0 {
                row -= x.row(j) * b;
            }
        }
        x.set_row(v, &row);
    }
    x
}

/// The Coxeter element for the given ordering.
pub fn coxeter_element(g: &CoxeterGraph, ord: &Ordering) -> Result<CoxMatrix> {
    ord.check(g)?;
    let seq = ord.sequence();
    Ok(match bilinear_form(g) {
        CoxMatrix::Exact(b) => CoxMatrix::Exact(
            coxeter_element_exact(&b, &seq).ok_or_else(|| Error::Internal("Coxeter element overflows i64".into()))?,
        ),
        CoxMatrix::Numeric(b) => CoxMatrix::Numeric(coxeter_element_numeric(&b, &seq)),
    })
}

/// Exact characteristic polynomial `det(tI - C)` of the Coxeter element,
/// for graphs whose labels are all 3 or infinity.
pub fn char_poly_coxeter(g: &CoxeterGraph, ord: &Ordering) -> Result<IntPolynomial> {
    if !g.is_integral() {
        return Err(Error::Unsupported(
            "exact characteristic polynomials need labels 3 or infinity; use spectral_radius for other labels".into(),
        ));
    }
    match coxeter_element(g, ord)? {
        CoxMatrix::Exact(c) => Ok(c.charpoly()),
        CoxMatrix::Numeric(_) => unreachable!("integral graphs give exact matrices"),
    }
}

/// Spectral radius of the Coxeter element.
///
/// Integral graphs go through the exact characteristic polynomial and
/// certified root isolation, so the result is within `tol`. Other graphs use
/// a floating-point eigenvalue solver; expect about `1e-8` accuracy when `C`
/// has a non-trivial Jordan block (the affine case).
pub fn spectral_radius(g: &CoxeterGraph, ord: &Ordering, tol: f64) -> Result<f64> {
    if g.n() == 0 {
        return Ok(0.0);
    }
    if g.is_integral() {
        let p = char_poly_coxeter(g, ord)?;
        return Ok(find_roots(&p, tol)?.max_modulus());
    }
    let c = coxeter_element(g, ord)?.to_f64();
    Ok(c.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> CoxeterGraph {
        family(&Family::A(n)).unwrap()
    }

    fn exact(m: CoxMatrix) -> IntMatrix {
        m.as_exact().cloned().unwrap()
    }

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.rows()
    }

    #[test]
    fn form_entries() {
        let mut g = CoxeterGraph::empty(4);
        g.add_edge(0, 1, Label::Finite(3)).unwrap();
        g.add_edge(1, 2, Label::Infinity).unwrap();
        let b = exact(bilinear_form(&g));
        assert_eq!(b[(0, 1)], -1);
        assert_eq!(b[(1, 2)], -2);
        assert_eq!(b[(0, 3)], 0);
        assert_eq!(b[(3, 3)], 2);
        g.add_edge(2, 3, Label::Finite(4)).unwrap();
        let b = bilinear_form(&g);
        assert!((b.get(2, 3) + 2f64.sqrt()).abs() < 1e-15);
        assert!((b.get(0, 1) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn reflections() {
        let single = CoxeterGraph::empty(1);
        assert_eq!(rows(&exact(reflection_matrix(&single, 0).unwrap())), vec![vec![-1]]);
        let s1 = exact(reflection_matrix(&path(2), 0).unwrap());
        assert_eq!(rows(&s1), vec![vec![-1, 1], vec![0, 1]]);
        assert!(reflection_matrix(&path(2), 2).is_err());
    }

    #[test]
    fn reflections_are_involutions_preserving_the_form() {
        let g = family(&Family::Star(vec![2, 3, 7])).unwrap();
        let b = exact(bilinear_form(&g));
        for i in 0..g.n() {
            let s = exact(reflection_matrix(&g, i).unwrap());
            assert_eq!(s.checked_mul(&s).unwrap(), IntMatrix::identity(g.n()));
            let sbs = s.transpose().checked_mul(&b).unwrap().checked_mul(&s).unwrap();
            assert_eq!(sbs, b);
        }
        // Non-integral labels preserve the form numerically.
        let mut h = CoxeterGraph::empty(3);
        h.add_edge(0, 1, Label::Finite(5)).unwrap();
        h.add_edge(1, 2, Label::Finite(4)).unwrap();
        let b = bilinear_form(&h).to_f64();
        for i in 0..3 {
            let s = reflection_matrix(&h, i).unwrap().to_f64();
            assert!((&s * &s - DMatrix::identity(3, 3)).abs().max() < 1e-12);
            assert!((s.transpose() * &b * &s - &b).abs().max() < 1e-12);
        }
    }

    #[test]
    fn small_coxeter_elements() {
        let single = CoxeterGraph::empty(1);
        let c = exact(coxeter_element(&single, &Ordering::identity(1)).unwrap());
        assert_eq!(rows(&c), vec![vec![-1]]);
        assert_eq!(char_poly_coxeter(&single, &Ordering::identity(1)).unwrap(), IntPolynomial::from_i64s(&[1, 1]));

        // Hand product: [[-1,1],[0,1]] [[1,0],[1,-1]] = [[0,-1],[1,-1]].
        let c = exact(coxeter_element(&path(2), &Ordering::identity(2)).unwrap());
        assert_eq!(rows(&c), vec![vec![0, -1], vec![1, -1]]);
        assert_eq!(c[(0, 0)] + c[(1, 1)], -1);
        assert_eq!(c.determinant(), 1.into());
        assert_eq!(char_poly_coxeter(&path(2), &Ordering::identity(2)).unwrap(), IntPolynomial::from_i64s(&[1, 1, 1]));
    }

    #[test]
    fn e10_gives_lehmer() {
        let e10 = family(&Family::Star(vec![2, 3, 7])).unwrap();
        for seq in [(0..10).collect::<Vec<_>>(), (0..10).rev().collect(), vec![3, 7, 0, 9, 1, 5, 2, 8, 4, 6]] {
            let ord = Ordering::from_sequence(&seq).unwrap();
            assert_eq!(char_poly_coxeter(&e10, &ord).unwrap(), IntPolynomial::lehmer());
            let rho = spectral_radius(&e10, &ord, 1e-10).unwrap();
            assert!((rho - 1.176280818).abs() < 1e-6);
        }
    }

    #[test]
    fn determinant_is_sign_of_dimension() {
        for g in [path(5), family(&Family::D(6)).unwrap(), family(&Family::AffineA(4)).unwrap()] {
            let c = exact(coxeter_element(&g, &Ordering::identity(g.n())).unwrap());
            let expected = if g.n() % 2 == 0 { 1 } else { -1 };
            assert_eq!(c.determinant(), expected.into());
        }
    }

    #[test]
    fn non_integral_labels() {
        let mut h = CoxeterGraph::empty(2);
        h.add_edge(0, 1, Label::Finite(5)).unwrap();
        assert!(matches!(char_poly_coxeter(&h, &Ordering::identity(2)), Err(Error::Unsupported(_))));
        // H2 is spherical: the Coxeter element is a rotation.
        let rho = spectral_radius(&h, &Ordering::identity(2), 1e-10).unwrap();
        assert!((rho - 1.0).abs() < 1e-12);
        // A (2,3,7) triangle group: hyperbolic, radius above 1.
        let mut t = CoxeterGraph::empty(3);
        t.add_edge(0, 1, Label::Finite(7)).unwrap();
        t.add_edge(1, 2, Label::Finite(3)).unwrap();
        let rho = spectral_radius(&t, &Ordering::identity(3), 1e-10).unwrap();
        assert!(rho > 1.0 + 1e-6);
    }

    #[test]
    fn single_vertex_radius() {
        let g = CoxeterGraph::empty(1);
        assert_eq!(spectral_radius(&g, &Ordering::identity(1), 1e-10).unwrap(), 1.0);
    }
}
