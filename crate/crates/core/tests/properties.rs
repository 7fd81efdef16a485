//! Property tests over randomly generated polynomials, graphs and chord
//! diagrams, plus a few exhaustive sweeps over small cases.

use coxlink::chords::{
    incidence_graph, is_positive, make_positive, obstruction, realize, realize_all, ChordDiagram, OrderedChordSystem,
    DEFAULT_BUDGET,
};
use coxlink::coxeter::{
    bilinear_form, char_poly_coxeter, coxeter_element, directed_graph, reflection_matrix, CoxeterGraph, Label, Ordering,
};
use coxlink::graphs;
use coxlink::growth::{delta, excess, growth_rate, orbifold_chi, TupleSignature};
use coxlink::intpoly::{cyclotomic, find_roots, is_cyclotomic_product, is_reciprocal, mahler_measure};
use coxlink::search::min_mahler_delta;
use coxlink::seifert::{alexander, coxeter_from_link, pretzel_alexander, seifert_matrix};
use coxlink::IntPolynomial;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const TOL: f64 = 1e-8;

fn poly(max_degree: usize) -> impl Strategy<Value = IntPolynomial> {
    (prop::collection::vec(-3i64..=3, 1..=max_degree), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])).prop_map(
        |(mut c, lead)| {
            c.push(lead);
            IntPolynomial::from_i64s(&c)
        },
    )
}

fn monic(max_degree: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-3i64..=3, 1..=max_degree).prop_map(|mut c| {
        c.push(1);
        IntPolynomial::from_i64s(&c)
    })
}

/// A random Coxeter graph on `1..=max_n` vertices with labels drawn from
/// `labels` (absent edges included with probability one half).
fn labelled_graph(max_n: usize, labels: Vec<u32>) -> impl Strategy<Value = CoxeterGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        let choices: Vec<u32> = std::iter::repeat_n(0, labels.len()).chain(labels.iter().copied()).collect();
        prop::collection::vec(prop::sample::select(choices), pairs).prop_map(move |ls| {
            let mut g = CoxeterGraph::empty(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    match ls[k] {
                        0 => {}
                        u32::MAX => g.add_edge(i, j, Label::Infinity).unwrap(),
                        m => g.add_edge(i, j, Label::new(m).unwrap()).unwrap(),
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = CoxeterGraph> {
    labelled_graph(max_n, vec![3])
}

fn with_ordering(g: impl Strategy<Value = CoxeterGraph>) -> impl Strategy<Value = (CoxeterGraph, Vec<usize>)> {
    g.prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn diagram(max_n: usize) -> impl Strategy<Value = ChordDiagram> {
    (1..=max_n)
        .prop_flat_map(|n| Just((0..n).flat_map(|c| [c, c]).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|ids| ChordDiagram::from_ids(&ids).unwrap())
}

/// A positive system: the diagram made positive, then reordered by a random
/// linear extension of the forced order (chosen by `picks`).
fn positive_system(max_n: usize) -> impl Strategy<Value = OrderedChordSystem> {
    (diagram(max_n), prop::collection::vec(any::<prop::sample::Index>(), max_n))
        .prop_map(|(d, picks)| reorder(&make_positive(&d), &picks))
}

fn reorder(sys: &OrderedChordSystem, picks: &[prop::sample::Index]) -> OrderedChordSystem {
    let d = sys.diagram();
    let n = d.n();
    let a = d.intersection_matrix().rows();
    let mut done = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for k in 0..n {
        let ready: Vec<usize> = (0..n).filter(|&y| !done[y] && (0..n).all(|x| done[x] || a[y][x] != 1)).collect();
        let v = ready[picks[k].index(ready.len())];
        done[v] = true;
        seq.push(v);
    }
    OrderedChordSystem::new(d.clone(), seq).unwrap()
}

fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    (a - b).abs().max() <= tol
}

fn signature() -> impl Strategy<Value = TupleSignature> {
    prop::collection::vec(2u32..=20, 2..=5).prop_map(|ps| TupleSignature::new(&ps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mahler_is_multiplicative(p in poly(6), q in poly(6)) {
        let (mp, mq) = (mahler_measure(&p, TOL).unwrap(), mahler_measure(&q, TOL).unwrap());
        let mpq = mahler_measure(&(p.clone() * q.clone()), TOL).unwrap();
        // each measure is within TOL, so the product is within TOL (mp + mq) + TOL^2
        prop_assert!((mpq - mp * mq).abs() <= TOL * (1.0 + mp + mq), "{} {} {}", mp, mq, mpq);
    }

    #[test]
    fn kronecker_consistency(idx in prop::collection::vec(1u32..=30, 1..=4)) {
        let f: IntPolynomial = idx.iter().map(|&d| cyclotomic(d)).product();
        prop_assert!(is_cyclotomic_product(&f).unwrap());
        prop_assert!((mahler_measure(&f, TOL).unwrap() - 1.0).abs() <= TOL);
    }

    #[test]
    fn measure_above_one_is_not_cyclotomic(p in monic(8)) {
        prop_assume!(p.coeff(0).abs() == 1.into());
        let m = mahler_measure(&p, TOL).unwrap();
        if m > 1.0 + 1e-6 {
            prop_assert!(!is_cyclotomic_product(&p).unwrap());
        }
        if is_cyclotomic_product(&p).unwrap() {
            prop_assert!((m - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn vieta_sum_and_product(p in poly(8)) {
        let rs = find_roots(&p, 1e-10).unwrap();
        let c = p.to_f64s();
        let d = c.len() - 1;
        let sum: Complex64 = rs.roots().iter().sum();
        let prod: Complex64 = rs.roots().iter().product();
        let scale: f64 = rs.roots().iter().map(|z| 1.0 + z.norm()).product();
        prop_assert!((sum + c[d - 1] / c[d]).norm() <= 1e-8 * scale);
        let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((prod - sign * c[0] / c[d]).norm() <= 1e-8 * scale);
        prop_assert_eq!(rs.len(), d);
    }

    #[test]
    fn reciprocal_roots_close_under_inversion(q in poly(5)) {
        prop_assume!(!q.coeff(0).is_zero());
        let p = q.clone() * q.reversed();
        prop_assert!(is_reciprocal(&p) || is_reciprocal(&-p.clone()));
        let rs = find_roots(&p, 1e-10).unwrap();
        for z in rs.roots() {
            let w = z.inv();
            let nearest = rs.roots().iter().map(|u| (u - w).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-6 * (1.0 + w.norm()), "1/{} missing", z);
        }
    }

    #[test]
    fn reflections_are_involutions_preserving_the_form(g in labelled_graph(6, vec![3, 4, 5, 6, u32::MAX])) {
        let b = bilinear_form(&g).to_f64();
        let id = DMatrix::<f64>::identity(g.n(), g.n());
        for i in 0..g.n() {
            let s = reflection_matrix(&g, i).unwrap().to_f64();
            prop_assert!(close(&(&s * &s), &id, 1e-9));
            prop_assert!(close(&(s.transpose() * &b * &s), &b, 1e-9));
        }
    }

    #[test]
    fn coxeter_element_determinant((g, seq) in with_ordering(labelled_graph(7, vec![3, 4, 6, u32::MAX]))) {
        let c = coxeter_element(&g, &Ordering::from_sequence(&seq).unwrap()).unwrap().to_f64();
        let expected = if g.n() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((c.determinant() - expected).abs() <= 1e-8);
    }

    #[test]
    fn commuting_swap_keeps_directed_graph_and_charpoly((g, seq) in with_ordering(simple_graph(7)), at in any::<prop::sample::Index>()) {
        prop_assume!(g.n() >= 2);
        let k = at.index(g.n() - 1);
        let mut swapped = seq.clone();
        swapped.swap(k, k + 1);
        let (a, b) = (Ordering::from_sequence(&seq).unwrap(), Ordering::from_sequence(&swapped).unwrap());
        if g.label(seq[k], seq[k + 1]).is_none() {
            prop_assert_eq!(directed_graph(&g, &a).unwrap(), directed_graph(&g, &b).unwrap());
            prop_assert_eq!(char_poly_coxeter(&g, &a).unwrap(), char_poly_coxeter(&g, &b).unwrap());
        }
    }

    #[test]
    fn intersection_matrix_is_skew(d in diagram(10)) {
        let a = d.intersection_matrix().rows();
        for i in 0..d.n() {
            prop_assert_eq!(a[i][i], 0);
            for j in 0..d.n() {
                prop_assert_eq!(a[i][j], -a[j][i]);
                prop_assert!(a[i][j].abs() <= 1);
                prop_assert_eq!(a[i][j] != 0, d.crosses(i, j));
            }
        }
    }

    #[test]
    fn flipping_negates_row_and_column(d in diagram(8), c in any::<prop::sample::Index>()) {
        let c = c.index(d.n());
        let (a, f) = (d.intersection_matrix().rows(), d.flipped(c).intersection_matrix().rows());
        for i in 0..d.n() {
            for j in 0..d.n() {
                let s = if (i == c) != (j == c) { -1 } else { 1 };
                prop_assert_eq!(f[i][j], s * a[i][j]);
            }
        }
    }

    #[test]
    fn make_positive_is_positive(d in diagram(8)) {
        let sys = make_positive(&d);
        prop_assert!(is_positive(&sys), "{}", sys);
        prop_assert_eq!(incidence_graph(sys.diagram()), incidence_graph(&d));
    }

    #[test]
    fn realize_inverts_incidence(d in diagram(8)) {
        let g = incidence_graph(&d);
        let found = realize(&g, DEFAULT_BUDGET).unwrap().expect("an incidence graph is realizable");
        prop_assert_eq!(incidence_graph(&found), g);
        prop_assert!(obstruction(&incidence_graph(&d)).unwrap().is_none());
    }

    #[test]
    fn obstructed_random_graphs_do_not_realize(g in simple_graph(8)) {
        if let Some(w) = obstruction(&g).unwrap() {
            prop_assert!(w.verify(&g));
            prop_assert_eq!(realize(&g, DEFAULT_BUDGET).unwrap(), None);
        }
    }

    #[test]
    fn seifert_identities(sys in positive_system(8)) {
        let m = seifert_matrix(&sys).unwrap();
        let mm = m.matrix();
        let g = sys.incidence_graph();
        let b = mm.checked_add(&mm.transpose()).unwrap();
        let form = bilinear_form(&g);
        prop_assert_eq!(form.as_exact(), Some(&b));
        let p = alexander(&m);
        prop_assert!(p.leading().is_some_and(Signed::is_positive));
        let r = p.reversed();
        prop_assert!(r == p || r == -p.clone(), "{} is not reciprocal", p);
        // charpoly(-M^T M^-1) = (-1)^n alex(-t)
        let n = sys.n();
        let bridge = if n % 2 == 0 { p.negate_variable() } else { -p.negate_variable() };
        let c = coxeter_from_link(&m).unwrap();
        prop_assert_eq!(c.charpoly(), bridge.clone());
        prop_assert_eq!(char_poly_coxeter(&g, &Ordering::identity(n)).unwrap(), bridge);
    }

    #[test]
    fn alexander_is_independent_of_linear_extension(
        d in diagram(8),
        a in prop::collection::vec(any::<prop::sample::Index>(), 8),
        b in prop::collection::vec(any::<prop::sample::Index>(), 8),
    ) {
        let base = make_positive(&d);
        let (s, t) = (reorder(&base, &a), reorder(&base, &b));
        prop_assert_eq!(alexander(&seifert_matrix(&s).unwrap()), alexander(&seifert_matrix(&t).unwrap()));
    }

    #[test]
    fn delta_is_monic_and_reciprocal(sig in signature()) {
        let d = delta(&sig);
        prop_assert!(d.is_monic());
        prop_assert!(is_reciprocal(&d));
    }

    #[test]
    fn growth_exceeds_one_iff_chi_negative(sig in signature()) {
        let chi = orbifold_chi(&sig);
        let rate = growth_rate(&sig, TOL).unwrap();
        prop_assert_eq!(rate.value > 1.0, chi.is_negative(), "{} {}", sig, rate.value);
        prop_assert_eq!(excess(&sig), -chi);
    }
}

#[test]
fn orderings_of_small_trees_share_a_charpoly() {
    for n in 1..=7 {
        for adj in graphs::all_trees(n) {
            let g = from_masks(&adj);
            let mut seq: Vec<usize> = (0..n).collect();
            let first = char_poly_coxeter(&g, &Ordering::identity(n)).unwrap();
            while next_permutation(&mut seq) {
                let p = char_poly_coxeter(&g, &Ordering::from_sequence(&seq).unwrap()).unwrap();
                assert_eq!(p, first, "tree {adj:?}, order {seq:?}");
            }
        }
    }
}

#[test]
fn obstruction_implies_no_realization_exhaustively() {
    for n in 1..=7 {
        for adj in graphs::all_graphs(n) {
            let g = from_masks(&adj);
            if obstruction(&g).unwrap().is_some() {
                assert_eq!(realize(&g, DEFAULT_BUDGET).unwrap(), None, "{adj:?}");
            }
        }
    }
}

#[test]
fn star_alexander_is_independent_of_the_realization() {
    // every star with at most 9 vertices and every realization; ordering
    // classes where the enumeration reaches (at most 8 chords)
    for ps in star_signatures(8) {
        let sig = TupleSignature::new(&ps).unwrap();
        let expected = pretzel_alexander(&sig);
        let g = coxlink::coxeter::family(&coxlink::coxeter::Family::Star(ps.clone())).unwrap();
        for word in realize_all(&g, DEFAULT_BUDGET).unwrap() {
            let d = ChordDiagram::from_ids(&word).unwrap();
            let sys = make_positive(&d);
            let p = alexander(&seifert_matrix(&sys).unwrap());
            assert!(p.eq_up_to_units(&expected), "{ps:?} {sys}: {p} vs {expected}");
            if d.n() > coxlink::chords::MAX_CHORDS {
                continue;
            }
            let classes = coxlink::chords::enumerate_positive_orderings(&d).unwrap();
            for class in &classes.classes {
                let q = alexander(&seifert_matrix(&class.representative).unwrap());
                assert!(q.eq_up_to_units(&expected), "{ps:?} {}: {q}", class.representative);
            }
        }
    }
}

#[test]
fn tuple_search_is_monotone_in_the_window() {
    let value = |k, p| min_mahler_delta(k, p).unwrap().min_value.unwrap().value;
    let windows = [(3, 7), (3, 9), (4, 9), (4, 11), (5, 11)];
    let values: Vec<f64> = windows.iter().map(|&(k, p)| value(k, p)).collect();
    for w in values.windows(2) {
        assert!(w[1] <= w[0] + 2.0 * TOL, "{values:?}");
    }
}

fn star_signatures(budget: u32) -> Vec<Vec<u32>> {
    fn go(min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for p in min..=left + 1 {
            cur.push(p);
            go(p, left - (p - 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, budget, &mut Vec::new(), &mut out);
    out
}

fn from_masks(adj: &[u64]) -> CoxeterGraph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| adj[i] >> j & 1 == 1).collect();
    CoxeterGraph::simply_laced(n, &edges).unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
