//! Canonical forms and isomorphism-free enumeration for small graphs.
//!
//! Graphs here are tiny (at most a few dozen vertices, usually ten or fewer),
//! so canonical labelings are found by branch and bound over the cells of an
//! equitable colour refinement, with twin vertices collapsed. Trees use the
//! classical centre-rooted bracket encoding instead.

use std::collections::{BTreeMap, BTreeSet};

/// Adjacency of an undirected simple graph as bit masks: bit `j` of
/// `adj[i]` is set iff `i` and `j` are adjacent.
pub type Masks = Vec<u64>;

/// Relation matrix `rel[i][j]` with `rel[j][i] = mirror(rel[i][j])`.
struct Relation<'a> {
    rel: &'a [Vec<u8>],
    mirror: fn(u8) -> u8,
}

fn undirected_mirror(x: u8) -> u8 {
    x
}

/// `1` means `i -> j`, `2` means `j -> i`.
fn directed_mirror(x: u8) -> u8 {
    match x {
        1 => 2,
        2 => 1,
        other => other,
    }
}

impl Relation<'_> {
    fn n(&self) -> usize {
        self.rel.len()
    }

    /// Colour refinement from a degree-like start. Returns a colour per vertex;
    /// colours are canonical (depend only on the isomorphism type).
    fn refine(&self) -> Vec<usize> {
        let n = self.n();
        let mut colour = vec![0usize; n];
        let mut classes = 1;
        loop {
            let sigs: Vec<(usize, Vec<(u8, usize)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u8, usize)> = (0..n)
                        .filter(|&w| w != v && self.rel[v][w] != 0)
                        .map(|w| (self.rel[v][w], colour[w]))
                        .collect();
                    s.sort_unstable();
                    (colour[v], s)
                })
                .collect();
            let distinct: BTreeSet<&(usize, Vec<(u8, usize)>)> = sigs.iter().collect();
            let index: BTreeMap<&(usize, Vec<(u8, usize)>), usize> =
                distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let next: Vec<usize> = sigs.iter().map(|s| index[s]).collect();
            let count = distinct.len();
            colour = next;
            if count == classes {
                return colour;
            }
            classes = count;
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (0..self.n()).all(|w| w == u || w == v || self.rel[u][w] == self.rel[v][w])
            && self.rel[u][v] == (self.mirror)(self.rel[u][v])
    }

    /// Lexicographically largest code over labelings that respect the colour
    /// order. The code lists `rel` between new positions column by column.
    fn canonical(&self) -> Vec<u8> {
        let n = self.n();
        let colour = self.refine();
        let mut slots: Vec<usize> = colour.clone();
        slots.sort_unstable();
        let mut search = Search {
            rel: self,
            colour: &colour,
            slots: &slots,
            labeling: Vec::with_capacity(n),
            used: vec![false; n],
            code: Vec::with_capacity(n * n.saturating_sub(1) / 2),
            best: None,
        };
        search.run();
        let mut out: Vec<u8> = Vec::with_capacity(slots.len() + 1);
        out.push(n as u8);
        out.extend(search.best.unwrap_or_default());
        out
    }
}

struct Search<'a, 'b> {
    rel: &'a Relation<'b>,
    colour: &'a [usize],
    slots: &'a [usize],
    labeling: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_, '_> {
    fn run(&mut self) {
        let k = self.labeling.len();
        if k == self.used.len() {
            if self.best.as_ref().is_none_or(|b| self.code > *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let want = self.slots[k];
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.used.len() {
            if self.used[v] || self.colour[v] != want {
                continue;
            }
            if tried.iter().any(|&t| self.rel.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let start = self.code.len();
            for &u in &self.labeling {
                self.code.push(self.rel.rel[u][v]);
            }
            let len = self.code.len();
            let behind = self.best.as_ref().is_some_and(|b| self.code[..] < b[..len]);
            if !behind {
                self.labeling.push(v);
                self.used[v] = true;
                self.run();
                self.used[v] = false;
                self.labeling.pop();
            }
            self.code.truncate(start);
        }
    }
}

fn masks_to_relation(adj: &[u64]) -> Vec<Vec<u8>> {
    let n = adj.len();
    (0..n).map(|i| (0..n).map(|j| ((adj[i] >> j) & 1) as u8).collect()).collect()
}

/// Canonical code of an undirected graph: equal codes iff isomorphic.
pub fn graph_canonical(adj: &[u64]) -> Vec<u8> {
    let rel = masks_to_relation(adj);
    Relation { rel: &rel, mirror: undirected_mirror }.canonical()
}

/// Canonical code of a directed graph on `n` vertices given by its arcs.
/// Antiparallel arc pairs are not supported.
pub fn digraph_canonical(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Vec<u8> {
    let mut rel = vec![vec![0u8; n]; n];
    for (a, b) in arcs {
        rel[a][b] = 1;
        rel[b][a] = 2;
    }
    Relation { rel: &rel, mirror: directed_mirror }.canonical()
}

pub fn are_isomorphic(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && graph_canonical(a) == graph_canonical(b)
}

pub fn is_connected(adj: &[u64]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

pub fn edge_count(adj: &[u64]) -> usize {
    adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
}

pub fn is_tree(adj: &[u64]) -> bool {
    !adj.is_empty() && edge_count(adj) + 1 == adj.len() && is_connected(adj)
}

/// Connected components, each listed in increasing vertex order.
pub fn components(adj: &[u64]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if (adj[v] >> w) & 1 == 1 && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// All graphs on exactly `n` vertices up to isomorphism, in canonical order.
pub fn all_graphs(n: usize) -> Vec<Masks> {
    assert!(n <= 10, "graph enumeration is limited to 10 vertices");
    let mut level: BTreeMap<Vec<u8>, Masks> = BTreeMap::new();
    level.insert(graph_canonical(&[]), Vec::new());
    for k in 0..n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for subset in 0u64..(1u64 << k) {
                let mut h = g.clone();
                for (v, m) in h.iter_mut().enumerate() {
                    if (subset >> v) & 1 == 1 {
                        *m |= 1 << k;
                    }
                }
                h.push(subset);
                next.entry(graph_canonical(&h)).or_insert(h);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Rooted bracket encoding of the subtree at `v` away from `parent`.
fn ahu(adj: &[u64], v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> =
        (0..adj.len()).filter(|&w| (adj[v] >> w) & 1 == 1 && Some(w) != parent).map(|w| ahu(adj, w, Some(v))).collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

fn tree_centres(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut alive = n;
    let mut removed = vec![false; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while alive > 2 {
        let mut next = Vec::new();
        for &l in &leaves {
            removed[l] = true;
            alive -= 1;
            for w in 0..n {
                if (adj[l] >> w) & 1 == 1 && !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Canonical string of a free tree.
pub fn tree_canonical(adj: &[u64]) -> String {
    if adj.is_empty() {
        return String::new();
    }
    tree_centres(adj).into_iter().map(|c| ahu(adj, c, None)).min().unwrap_or_default()
}

/// All free trees on exactly `n` vertices up to isomorphism, in canonical order.
pub fn all_trees(n: usize) -> Vec<Masks> {
    assert!((1..=20).contains(&n), "tree enumeration needs 1..=20 vertices");
    let mut level: BTreeMap<String, Masks> = BTreeMap::new();
    level.insert(tree_canonical(&[0]), vec![0]);
    for k in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..k {
                let mut h = t.clone();
                h[v] |= 1 << k;
                h.push(1 << v);
                next.entry(tree_canonical(&h)).or_insert(h);
            }
        }
        level = next;
    }
    level.into_values().collect()
}
