//! Realizing graphs as incidence graphs of chord diagrams, and the
//! induced-cycle obstruction.

use std::collections::BTreeSet;

use super::{ChordDiagram, OrderedChordSystem};
use crate::coxeter::{CoxeterGraph, Ordering};
use crate::graphs::{self, Masks};
use crate::{Error, Result};

/// Default node budget for [`realize`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;
/// Largest graph [`realize`] accepts.
pub const MAX_REALIZE_VERTICES: usize = 10;

/// Backtracking state for one connected component.
struct Search<'a> {
    adj: &'a [u64],
    order: Vec<usize>,
    word: Vec<usize>,
    placed: u64,
    budget: u64,
}

impl Search<'_> {
    /// Calls `found` on every word realizing the component; stops early when
    /// it returns `true`. Errors if the budget runs out.
    fn run(&mut self, idx: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(found(&self.word));
        }
        let v = self.order[idx];
        let need = self.adj[v] & self.placed;
        let len = self.word.len();
        // The first chord's first endpoint stays at slot 0, which fixes the
        // rotation; gaps are numbered 1..=len.
        for p in 1..=len {
            let mut between = 0u64;
            for q in p..=len {
                if q > p {
                    between ^= 1 << self.word[q - 1];
                }
                if self.budget == 0 {
                    return Err(Error::Inconclusive { budget: 0 });
                }
                self.budget -= 1;
                if between != need {
                    continue;
                }
                self.word.insert(q, v);
                self.word.insert(p, v);
                self.placed |= 1 << v;
                let stop = self.run(idx + 1, found)?;
                self.placed &= !(1 << v);
                self.word.remove(p);
                self.word.remove(q);
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn bfs_order(adj: &[u64], comp: &[usize]) -> Vec<usize> {
    let mut order = vec![comp[0]];
    let mut seen = 1u64 << comp[0];
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        k += 1;
        for u in 0..adj.len() {
            if (adj[v] >> u) & 1 == 1 && (seen >> u) & 1 == 0 {
                seen |= 1 << u;
                order.push(u);
            }
        }
    }
    order
}

fn check_input(g: &CoxeterGraph) -> Result<Masks> {
    if !g.is_simply_laced() {
        return Err(Error::Unsupported("realization needs a simply-laced graph".into()));
    }
    if g.n() > MAX_REALIZE_VERTICES {
        return Err(Error::Precondition(format!(
            "realization is limited to {MAX_REALIZE_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    Ok(g.masks())
}

fn with_budget(budget: u64) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Inconclusive { .. } => Error::Inconclusive { budget },
        other => other,
    }
}

/// A chord diagram whose incidence graph is exactly `g` (chord `v` stands
/// for vertex `v`), `None` if none exists.
///
/// Components are realized separately and placed side by side. Exhausting
/// `budget` search nodes yields [`Error::Inconclusive`], never `None`.
pub fn realize(g: &CoxeterGraph, budget: u64) -> Result<Option<ChordDiagram>> {
    let adj = check_input(g)?;
    let mut remaining = budget;
    let mut word = Vec::with_capacity(2 * g.n());
    for comp in graphs::components(&adj) {
        let mut search = Search {
            adj: &adj,
            order: bfs_order(&adj, &comp),
            word: vec![comp[0], comp[0]],
            placed: 1 << comp[0],
            budget: remaining,
        };
        let mut hit = None;
        search
            .run(1, &mut |w| {
                hit = Some(w.to_vec());
                true
            })
            .map_err(with_budget(budget))?;
        remaining = search.budget;
        match hit {
            Some(w) => word.extend(w),
            None => return Ok(None),
        }
    }
    Ok(Some(ChordDiagram::from_ids(&word)?))
}

/// Every realization of a connected `g`, up to rotation and reflection of
/// the circular word and relabelling of chords, as canonical words.
pub fn realize_all(g: &CoxeterGraph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let adj = check_input(g)?;
    if g.n() == 0 {
        return Ok(vec![Vec::new()]);
    }
    if !graphs::is_connected(&adj) {
        return Err(Error::Precondition("realize_all needs a connected graph".into()));
    }
    let order = bfs_order(&adj, &[0]);
    let mut search = Search { adj: &adj, word: vec![order[0], order[0]], placed: 1 << order[0], order, budget };
    let mut classes = BTreeSet::new();
    search
        .run(1, &mut |w| {
            classes.insert(canonical_word(w));
            false
        })
        .map_err(with_budget(budget))?;
    Ok(classes.into_iter().collect())
}

/// Whether some positive chord system has incidence graph `g` (chord `v`
/// for vertex `v`) and chord order `ord`. Searches every realization of the
/// connected graph `g` and every orientation.
pub fn positively_realizable(g: &CoxeterGraph, ord: &Ordering, budget: u64) -> Result<bool> {
    let adj = check_input(g)?;
    if ord.len() != g.n() {
        return Err(Error::domain("ordering and graph differ in size"));
    }
    if g.n() == 0 {
        return Ok(true);
    }
    if !graphs::is_connected(&adj) {
        return Err(Error::Precondition("positively_realizable needs a connected graph".into()));
    }
    let sequence = ord.sequence();
    let n = g.n();
    let order = bfs_order(&adj, &[0]);
    let mut search = Search { adj: &adj, word: vec![order[0], order[0]], placed: 1 << order[0], order, budget };
    search
        .run(1, &mut |w| {
            let d = ChordDiagram::from_ids(w).expect("search words are valid");
            (0u64..1 << n).any(|bits| {
                let sys =
                    OrderedChordSystem { diagram: d.oriented(|c| bits >> c & 1 == 1), sequence: sequence.clone() };
                sys.positivity_violation().is_none()
            })
        })
        .map_err(with_budget(budget))
}

/// Canonical form of a circular double-occurrence word under rotation,
/// reflection and renaming: the least relabelled-by-first-occurrence word.
pub fn canonical_word(word: &[usize]) -> Vec<usize> {
    let len = word.len();
    let mut best: Option<Vec<usize>> = None;
    for reflect in [false, true] {
        for r in 0..len {
            let mut names = std::collections::HashMap::new();
            let cand: Vec<usize> = (0..len)
                .map(|k| {
                    let idx = if reflect { (r + len - k) % len } else { (r + k) % len };
                    let next = names.len();
                    *names.entry(word[idx]).or_insert(next)
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Certificate that a graph is not a circle graph: a vertex `hub` adjacent
/// to an independent set of at least three vertices that all lie on one
/// induced cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub hub: usize,
    pub independent: Vec<usize>,
    /// Vertices of the induced cycle in cyclic order.
    pub cycle: Vec<usize>,
}

impl Witness {
    /// Checks all four conditions against `g`.
    pub fn verify(&self, g: &CoxeterGraph) -> bool {
        let adj = g.masks();
        let n = adj.len();
        let edge = |a: usize, b: usize| (adj[a] >> b) & 1 == 1;
        let ind = &self.independent;
        let cyc = &self.cycle;
        if self.hub >= n || ind.len() < 3 || cyc.len() < 4 || ind.iter().chain(cyc).any(|&v| v >= n) {
            return false;
        }
        let independent = ind.iter().all(|&a| ind.iter().all(|&b| !edge(a, b)));
        let hub_sees_all = ind.iter().all(|&a| edge(self.hub, a));
        let on_cycle = ind.iter().all(|a| cyc.contains(a));
        let mask: u64 = cyc.iter().map(|&v| 1u64 << v).sum();
        let distinct = mask.count_ones() as usize == cyc.len();
        let induced = (0..cyc.len()).all(|k| {
            let v = cyc[k];
            let next = cyc[(k + 1) % cyc.len()];
            edge(v, next) && (adj[v] & mask).count_ones() == 2
        });
        independent && hub_sees_all && on_cycle && distinct && induced
    }
}

/// Cyclic vertex order of `mask` if it induces a cycle of length >= 4.
fn induced_cycle(adj: &[u64], mask: u64) -> Option<Vec<usize>> {
    if mask.count_ones() < 4 {
        return None;
    }
    let mut v = mask.trailing_zeros() as usize;
    for u in ones(mask) {
        if (adj[u] & mask).count_ones() != 2 {
            return None;
        }
    }
    let start = v;
    let mut prev = usize::MAX;
    let mut cycle = Vec::new();
    loop {
        cycle.push(v);
        let next = ones(adj[v] & mask).find(|&u| u != prev)?;
        prev = v;
        v = next;
        if v == start {
            break;
        }
    }
    (cycle.len() == mask.count_ones() as usize).then_some(cycle)
}

fn ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| (mask >> i) & 1 == 1)
}

/// Exhaustive search for a [`Witness`].
pub fn obstruction(g: &CoxeterGraph) -> Result<Option<Witness>> {
    if !g.is_simply_laced() {
        return Err(Error::Unsupported("the obstruction needs a simply-laced graph".into()));
    }
    let adj = g.masks();
    let n = adj.len();
    if n > 20 {
        return Err(Error::Precondition(format!("obstruction search is limited to 20 vertices, got {n}")));
    }
    // Induced cycles, smallest vertex sets first.
    let mut cycles: Vec<u64> = (0u64..1 << n).filter(|&m| induced_cycle(&adj, m).is_some()).collect();
    cycles.sort_by_key(|m| (m.count_ones(), *m));
    for hub in 0..n {
        let nbrs: Vec<usize> = ones(adj[hub]).collect();
        for sub in 0u64..1 << nbrs.len() {
            if sub.count_ones() < 3 {
                continue;
            }
            let set: u64 = ones(sub).map(|k| 1u64 << nbrs[k]).sum();
            if ones(set).any(|v| adj[v] & set != 0) {
                continue;
            }
            if let Some(&c) = cycles.iter().find(|&&c| c & set == set) {
                return Ok(Some(Witness {
                    hub,
                    independent: ones(set).collect(),
                    cycle: induced_cycle(&adj, c).expect("filtered above"),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::incidence_graph;
    use crate::coxeter::{family, Family, Ordering};

    fn realizes(g: &CoxeterGraph) -> bool {
        match realize(g, DEFAULT_BUDGET).unwrap() {
            Some(d) => {
                assert_eq!(incidence_graph(&d), *g);
                true
            }
            None => false,
        }
    }

    #[test]
    fn small_families() {
        for f in [Family::Cycle(5), Family::Complete(4), Family::E(10), Family::TriangleWithTail, Family::A(1)] {
            assert!(realizes(&family(&f).unwrap()), "{f:?}");
        }
        assert!(realizes(&CoxeterGraph::empty(3)));
        assert!(realizes(&CoxeterGraph::empty(0)));
    }

    #[test]
    fn cube_is_not_a_circle_graph() {
        let q3 = family(&Family::Cube).unwrap();
        assert!(!realizes(&q3));
        let w = obstruction(&q3).unwrap().expect("witness");
        assert!(w.verify(&q3));
        assert_eq!(w.cycle.len(), 6);
    }

    #[test]
    fn five_cycle_has_one_diagram() {
        let c5 = family(&Family::Cycle(5)).unwrap();
        let all = realize_all(&c5, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], canonical_word(&[0, 4, 1, 0, 2, 1, 3, 2, 4, 3]));
    }

    #[test]
    fn no_obstruction_on_trees_and_cycles() {
        assert_eq!(obstruction(&family(&Family::E(10)).unwrap()).unwrap(), None);
        assert_eq!(obstruction(&family(&Family::Cycle(5)).unwrap()).unwrap(), None);
    }

    #[test]
    fn ordered_squares() {
        // On the 4-cycle 0-1-2-3-0 an order is positively realizable unless
        // it has one source and one sink joined by paths of lengths 1 and 3.
        let c4 = family(&Family::Cycle(4)).unwrap();
        for (seq, expected) in [
            ([0, 1, 2, 3], false),
            ([0, 3, 2, 1], false),
            ([0, 1, 3, 2], true),
            ([0, 2, 1, 3], true),
            ([1, 3, 0, 2], true),
        ] {
            let ord = Ordering::from_sequence(&seq).unwrap();
            assert_eq!(positively_realizable(&c4, &ord, DEFAULT_BUDGET).unwrap(), expected, "{seq:?}");
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let q3 = family(&Family::Cube).unwrap();
        assert!(matches!(realize(&q3, 10), Err(Error::Inconclusive { budget: 10 })));
    }

    #[test]
    fn canonical_word_ignores_symmetry() {
        let w = [0, 1, 0, 1, 2, 2];
        let rotated = [1, 0, 1, 2, 2, 0];
        let reflected = [2, 2, 1, 0, 1, 0];
        let renamed = [2, 0, 2, 0, 1, 1];
        let c = canonical_word(&w);
        for v in [rotated, reflected, renamed] {
            assert_eq!(canonical_word(&v), c);
        }
        assert_ne!(canonical_word(&[0, 0, 1, 1, 2, 2]), c);
    }
}
