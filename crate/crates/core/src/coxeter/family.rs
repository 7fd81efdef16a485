//! Named Coxeter graphs with a fixed vertex numbering.
//!
//! Numbering conventions (0-based):
//!
//! * `A(n)`: the path `0 - 1 - ... - n-1`.
//! * `Cycle(n)`: the cycle `0 - 1 - ... - n-1 - 0` (`n >= 3`).
//! * `AffineA(n)`: `Cycle(n + 1)` for `n >= 2`; for `n = 1` two vertices
//!   joined by an edge labelled infinity.
//! * `Star(p_1, ..., p_k)`: centre `0`, then arm 1 (`p_1 - 1` vertices,
//!   listed outward from the centre), then arm 2, and so on.
//! * `D(n)` = `Star(2, 2, n - 2)`, `E(n)` = `Star(2, 3, n - 3)`; in
//!   particular `E(8)` is `Star(2, 3, 5)` and `E(10)` is `Star(2, 3, 7)`.
//! * `AffineD(n)` (`n + 1` vertices): the chain `0 - ... - (n - 4)`, leaves
//!   `n - 3` and `n - 2` on vertex `0`, leaves `n - 1` and `n` on vertex
//!   `n - 4` (for `n = 4` all four leaves hang off vertex `0`).
//! * `AffineE6/7/8` = `Star(3,3,3)`, `Star(2,4,4)`, `Star(2,3,6)`.
//! * `Complete(n)`, `Cube` (vertex `v` adjacent to `v ^ 1`, `v ^ 2`, `v ^ 4`),
//!   and `TriangleWithTail` (triangle `0, 1, 2` with `3` attached to `0`).

use super::graph::{CoxeterGraph, Label};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    A(usize),
    D(usize),
    E(usize),
    AffineA(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    Star(Vec<u32>),
    Cycle(usize),
    Complete(usize),
    Cube,
    TriangleWithTail,
}

fn edges(n: usize, list: &[(usize, usize)]) -> Result<CoxeterGraph> {
    CoxeterGraph::simply_laced(n, list)
}

fn star(arms: &[u32]) -> Result<CoxeterGraph> {
    if arms.is_empty() {
        return Err(Error::domain("a star needs at least one arm"));
    }
    if let Some(p) = arms.iter().find(|&&p| p < 2) {
        return Err(Error::domain(format!("star arm parameter {p} must be at least 2")));
    }
    let n = 1 + arms.iter().map(|&p| p as usize - 1).sum::<usize>();
    let mut list = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &p in arms {
        let mut prev = 0;
        for _ in 0..p - 1 {
            list.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    edges(n, &list)
}

/// Builds the named graph.
pub fn family(kind: &Family) -> Result<CoxeterGraph> {
    match *kind {
        Family::A(n) => {
            if n == 0 {
                return Err(Error::domain("A_n needs n >= 1"));
            }
            edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::domain("a cycle needs at least 3 vertices"));
            }
            edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        }
        Family::AffineA(n) => match n {
            0 => Err(Error::domain("affine A_n needs n >= 1")),
            1 => {
                let mut g = CoxeterGraph::empty(2);
                g.add_edge(0, 1, Label::Infinity)?;
                Ok(g)
            }
            _ => family(&Family::Cycle(n + 1)),
        },
        Family::D(n) => {
            if n < 4 {
                return Err(Error::domain("D_n needs n >= 4"));
            }
            star(&[2, 2, n as u32 - 2])
        }
        Family::E(n) => {
            if n < 6 {
                return Err(Error::domain("E_n needs n >= 6"));
            }
            star(&[2, 3, n as u32 - 3])
        }
        Family::AffineD(n) => {
            if n < 4 {
                return Err(Error::domain("affine D_n needs n >= 4"));
            }
            let last = n - 4;
            let mut list: Vec<(usize, usize)> = (1..=last).map(|i| (i - 1, i)).collect();
            list.extend([(0, n - 3), (0, n - 2), (last, n - 1), (last, n)]);
            edges(n + 1, &list)
        }
        Family::AffineE6 => star(&[3, 3, 3]),
        Family::AffineE7 => star(&[2, 4, 4]),
        Family::AffineE8 => star(&[2, 3, 6]),
        Family::Star(ref arms) => star(arms),
        Family::Complete(n) => {
            if n == 0 {
                return Err(Error::domain("complete graph needs n >= 1"));
            }
            let list: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            edges(n, &list)
        }
        Family::Cube => {
            let list: Vec<_> = (0..8usize)
                .flat_map(|v| [1, 2, 4].into_iter().map(move |b| (v, v ^ b)))
                .filter(|(a, b)| a < b)
                .collect();
            edges(8, &list)
        }
        Family::TriangleWithTail => edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_numbering() {
        let e10 = family(&Family::Star(vec![2, 3, 7])).unwrap();
        assert_eq!(e10.n(), 10);
        assert!(e10.is_tree());
        // centre, arm of 1, arm of 2, arm of 6 (edges sorted)
        let expected = [(0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)];
        assert_eq!(e10.edges().map(|(i, j, _)| (i, j)).collect::<Vec<_>>(), expected);
        assert_eq!(family(&Family::E(10)).unwrap(), e10);
        assert_eq!(family(&Family::E(8)).unwrap().n(), 8);
        assert_eq!(family(&Family::Star(vec![2])).unwrap(), family(&Family::A(2)).unwrap());
    }

    #[test]
    fn sizes() {
        assert_eq!(family(&Family::AffineD(4)).unwrap().n(), 5);
        assert_eq!(family(&Family::AffineD(7)).unwrap().edge_count(), 7);
        assert!(family(&Family::AffineD(7)).unwrap().is_tree());
        assert_eq!(family(&Family::AffineE6).unwrap().n(), 7);
        assert_eq!(family(&Family::AffineE7).unwrap().n(), 8);
        assert_eq!(family(&Family::AffineE8).unwrap().n(), 9);
        assert_eq!(family(&Family::Cube).unwrap().edge_count(), 12);
        assert_eq!(family(&Family::AffineA(1)).unwrap().label(0, 1), Some(Label::Infinity));
    }

    #[test]
    fn invalid_parameters() {
        assert!(family(&Family::Star(vec![])).is_err());
        assert!(family(&Family::Star(vec![2, 1])).is_err());
        assert!(family(&Family::D(3)).is_err());
        assert!(family(&Family::Cycle(2)).is_err());
        assert!(family(&Family::A(0)).is_err());
    }
}
