//! Positive orderings of a chord diagram.
//!
//! Fix orientations. A crossing of `x` and `y` with `A[y][x] = +1` forces
//! `x` before `y` in any positive order, which gives a directed incidence
//! graph `D`. The positive orders are exactly the linear extensions of `D`,
//! so an orientation admits one iff `D` is acyclic.
//!
//! Two positive systems are equivalent when their directed graphs are
//! related by isomorphisms and by moving the last chord to the front. The
//! move reverses that chord, turning a sink of `D` into a source; it is what
//! happens to the construction in [`make_positive`](super::make_positive)
//! when the direction `v` sweeps past the chord, and it conjugates the
//! Coxeter element, so Alexander polynomials are constant on classes.

use std::collections::BTreeMap;

use super::{ChordDiagram, OrderedChordSystem};
use crate::graphs;
use crate::{Error, Result};

/// Largest diagram handled by [`enumerate_positive_orderings`].
pub const MAX_CHORDS: usize = 8;

/// One equivalence class of positive systems.
#[derive(Debug, Clone)]
pub struct PositiveClass {
    /// Canonical codes of the directed incidence graphs in the class, in
    /// order of discovery.
    pub structures: Vec<Vec<u8>>,
    /// The first system of the class found.
    pub representative: OrderedChordSystem,
    /// Number of orientations in the class.
    pub orientations: u64,
    /// Number of (orientation, order) pairs in the class.
    pub systems: u64,
}

#[derive(Debug, Clone)]
pub struct PositiveOrderings {
    pub classes: Vec<PositiveClass>,
    index: BTreeMap<Vec<u8>, usize>,
}

impl PositiveOrderings {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class containing the directed incidence graph with canonical `code`.
    pub fn class_of(&self, code: &[u8]) -> Option<usize> {
        self.index.get(code).copied()
    }
}

/// Arcs forced on `d`, as predecessor masks: bit `x` of `pred[y]` means
/// `x` must precede `y`.
fn predecessors(d: &ChordDiagram) -> Vec<u64> {
    let n = d.n();
    let mut pred = vec![0u64; n];
    for y in 0..n {
        for x in 0..n {
            if d.sign(y, x) == 1 {
                pred[y] |= 1 << x;
            }
        }
    }
    pred
}

fn class_code(pred: &[u64]) -> Vec<u8> {
    let n = pred.len();
    let arcs: Vec<(usize, usize)> =
        (0..n).flat_map(|y| (0..n).filter(move |&x| pred[y] >> x & 1 == 1).map(move |x| (x, y))).collect();
    graphs::digraph_canonical(n, arcs)
}

/// Number of linear extensions, 0 when cyclic.
fn count_extensions(pred: &[u64]) -> u64 {
    let n = pred.len();
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for mask in 0..(1usize << n) {
        if ways[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if mask >> v & 1 == 0 && pred[v] & !(mask as u64) == 0 {
                ways[mask | 1 << v] += ways[mask];
            }
        }
    }
    ways[(1 << n) - 1]
}

/// Least linear extension by chord id, if any.
fn first_extension(pred: &[u64]) -> Option<Vec<usize>> {
    let n = pred.len();
    let mut done = 0u64;
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).find(|&v| done >> v & 1 == 0 && pred[v] & !done == 0)?;
        done |= 1 << v;
        seq.push(v);
    }
    Some(seq)
}

fn for_each_extension(pred: &[u64], done: u64, seq: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let n = pred.len();
    if seq.len() == n {
        f(seq);
        return;
    }
    for v in 0..n {
        if done >> v & 1 == 0 && pred[v] & !done == 0 {
            seq.push(v);
            for_each_extension(pred, done | 1 << v, seq, f);
            seq.pop();
        }
    }
}

fn check_size(d: &ChordDiagram) -> Result<()> {
    if d.n() > MAX_CHORDS {
        return Err(Error::Precondition(format!(
            "positive-ordering enumeration is limited to {MAX_CHORDS} chords, got {}",
            d.n()
        )));
    }
    Ok(())
}

fn oriented(d: &ChordDiagram, bits: u64) -> ChordDiagram {
    d.oriented(|c| bits >> c & 1 == 1)
}

struct Structure {
    representative: OrderedChordSystem,
    orientations: u64,
    systems: u64,
    reflected: Vec<Vec<u8>>,
}

/// Reverses all arcs at the sink `x`.
fn reflect_sink(pred: &[u64], x: usize) -> Vec<u64> {
    let mut out = pred.to_vec();
    out[x] = 0;
    for (y, p) in out.iter_mut().enumerate() {
        if pred[x] >> y & 1 == 1 {
            *p |= 1 << x;
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groups all positive (orientation, order) pairs of `d` into classes.
///
/// Classes are listed in order of first appearance, scanning orientations by
/// the bit mask of reversed chords.
pub fn enumerate_positive_orderings(d: &ChordDiagram) -> Result<PositiveOrderings> {
    check_size(d)?;
    let n = d.n();
    let mut structures: Vec<(Vec<u8>, Structure)> = Vec::new();
    let mut fine: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for bits in 0u64..1 << n {
        let od = oriented(d, bits);
        let pred = predecessors(&od);
        let count = count_extensions(&pred);
        if count == 0 {
            continue;
        }
        let code = class_code(&pred);
        if let Some(&k) = fine.get(&code) {
            structures[k].1.orientations += 1;
            structures[k].1.systems += count;
            continue;
        }
        let successors = |x: usize| pred.iter().any(|p| p >> x & 1 == 1);
        let reflected =
            (0..n).filter(|&x| pred[x] != 0 && !successors(x)).map(|x| class_code(&reflect_sink(&pred, x))).collect();
        let seq = first_extension(&pred).expect("acyclic");
        fine.insert(code.clone(), structures.len());
        structures.push((
            code,
            Structure { representative: OrderedChordSystem::new(od, seq)?, orientations: 1, systems: count, reflected },
        ));
    }
    let mut parent: Vec<usize> = (0..structures.len()).collect();
    for (k, (_, s)) in structures.iter().enumerate() {
        for code in &s.reflected {
            let other =
                *fine.get(code).ok_or_else(|| Error::Internal("reflected orientation missing from the scan".into()))?;
            let (a, b) = (find(&mut parent, k), find(&mut parent, other));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<PositiveClass> = Vec::new();
    let mut root_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut index = BTreeMap::new();
    for (k, (code, s)) in structures.into_iter().enumerate() {
        let root = find(&mut parent, k);
        let c = *root_class.entry(root).or_insert_with(|| {
            classes.push(PositiveClass {
                structures: Vec::new(),
                representative: s.representative.clone(),
                orientations: 0,
                systems: 0,
            });
            classes.len() - 1
        });
        classes[c].orientations += s.orientations;
        classes[c].systems += s.systems;
        index.insert(code.clone(), c);
        classes[c].structures.push(code);
    }
    Ok(PositiveOrderings { classes, index })
}

/// Calls `f(class_code, system)` for every positive system of `d`.
pub fn positive_systems(d: &ChordDiagram, f: &mut dyn FnMut(&[u8], &OrderedChordSystem)) -> Result<()> {
    check_size(d)?;
    let n = d.n();
    for bits in 0u64..1 << n {
        let od = oriented(d, bits);
        let pred = predecessors(&od);
        if first_extension(&pred).is_none() {
            continue;
        }
        let code = class_code(&pred);
        let mut seq = Vec::with_capacity(n);
        for_each_extension(&pred, 0, &mut seq, &mut |s| {
            let sys = OrderedChordSystem { diagram: od.clone(), sequence: s.to_vec() };
            f(&code, &sys);
        });
    }
    Ok(())
}
