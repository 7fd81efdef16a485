use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graphs::{self, Masks};
use crate::{Error, Result};

/// Edge label `m_ij` of a Coxeter graph. Absent edges stand for `m_ij = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A finite label `m >= 3`.
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::domain(format!("edge label {m} must be at least 3")));
        }
        Ok(Label::Finite(m))
    }

    /// Bilinear-form entry `-2 cos(pi / m)`.
    pub fn form_entry(self) -> f64 {
        match self {
            Label::Finite(m) => -2.0 * (std::f64::consts::PI / f64::from(m)).cos(),
            Label::Infinity => -2.0,
        }
    }

    /// The form entry when it is an integer (`m = 3` gives `-1`, `m = inf`
    /// gives `-2`).
    pub fn integral_entry(self) -> Option<i64> {
        match self {
            Label::Finite(3) => Some(-1),
            Label::Infinity => Some(-2),
            Label::Finite(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

/// A Coxeter graph on vertices `0..n`.
///
/// Vertices are 0-based in the API and 1-based in the JSON format.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Label>,
}

impl CoxeterGraph {
    /// `n` vertices, no edges.
    pub fn empty(n: usize) -> Self {
        CoxeterGraph { n, edges: BTreeMap::new() }
    }

    /// Simply-laced graph from an edge list.
    pub fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j, Label::Finite(3))?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, label: Label) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::domain(format!("edge ({i}, {j}) out of range for {} vertices", self.n)));
        }
        if i == j {
            return Err(Error::domain(format!("self-loop at vertex {i}")));
        }
        if let Label::Finite(m) = label {
            if m < 3 {
                return Err(Error::domain(format!("edge label {m} must be at least 3")));
            }
        }
        let key = (i.min(j), i.max(j));
        if self.edges.insert(key, label).is_some() {
            return Err(Error::domain(format!("duplicate edge ({i}, {j})")));
        }
        Ok(())
    }

    pub(crate) fn from_masks(adj: &[u64]) -> Self {
        let n = adj.len();
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if (adj[i] >> j) & 1 == 1 {
                    g.edges.insert((i, j), Label::Finite(3));
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges `(i, j, label)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.edges.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, i: usize, j: usize) -> Option<Label> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.label(v, w).is_some())
    }

    /// Every edge is labelled 3.
    pub fn is_simply_laced(&self) -> bool {
        self.edges.values().all(|&l| l == Label::Finite(3))
    }

    /// Every form entry is an integer (labels 3 and infinity only).
    pub fn is_integral(&self) -> bool {
        self.edges.values().all(|l| l.integral_entry().is_some())
    }

    /// Adjacency bit masks; the graph must have at most 64 vertices.
    pub fn masks(&self) -> Masks {
        assert!(self.n <= 64, "bit-mask adjacency needs at most 64 vertices");
        let mut adj = vec![0u64; self.n];
        for &(i, j) in self.edges.keys() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        graphs::is_connected(&self.masks())
    }

    pub fn is_tree(&self) -> bool {
        graphs::is_tree(&self.masks())
    }

    /// Isomorphism of the underlying unlabelled graphs, for simply-laced
    /// graphs.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.is_simply_laced() && other.is_simply_laced() && graphs::are_isomorphic(&self.masks(), &other.masks())
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut g = Self::empty(self.n);
        for (i, j, l) in self.edges() {
            g.add_edge(perm[i], perm[j], l)?;
        }
        Ok(g)
    }

    /// Induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &w) in vertices.iter().enumerate().skip(a + 1) {
                if let Some(l) = self.label(u, w) {
                    g.edges.insert((a, b), l);
                }
            }
        }
        g
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph(n={}, edges=[", self.n)?;
        for (k, (i, j, l)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            match l {
                Label::Finite(3) => write!(f, "{i}-{j}")?,
                _ => write!(f, "{i}-{j}:{l}")?,
            }
        }
        f.write_str("])")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<Vec<u64>>,
    #[serde(flatten)]
    extra: BTreeMap<String, Value>,
}

impl Serialize for CoxeterGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let edges = self
            .edges()
            .map(|(i, j, l)| match l {
                Label::Finite(3) => vec![i as u64 + 1, j as u64 + 1],
                Label::Finite(m) => vec![i as u64 + 1, j as u64 + 1, u64::from(m)],
                Label::Infinity => vec![i as u64 + 1, j as u64 + 1, 0],
            })
            .collect();
        GraphJson { n: self.n, edges, extra: BTreeMap::new() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoxeterGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let mut g = CoxeterGraph::empty(raw.n);
        for e in raw.edges {
            let (i, j, label) = match e.as_slice() {
                [i, j] => (*i, *j, Label::Finite(3)),
                [i, j, 0] => (*i, *j, Label::Infinity),
                [i, j, m] => (*i, *j, Label::Finite(u32::try_from(*m).map_err(D::Error::custom)?)),
                _ => return Err(D::Error::custom("edge must be [i, j] or [i, j, label]")),
            };
            if i == 0 || j == 0 {
                return Err(D::Error::custom("vertices are 1-based"));
            }
            g.add_edge(i as usize - 1, j as usize - 1, label).map_err(D::Error::custom)?;
        }
        Ok(g)
    }
}

/// A total order on the vertices: `position(v)` is the index of the
/// reflection `s_v` in the product `C = s_1 ... s_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    position: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Ordering { position: (0..n).collect() }
    }

    /// From positions: `position[v]` is the index of vertex `v`.
    pub fn from_positions(position: Vec<usize>) -> Result<Self> {
        let n = position.len();
        let mut seen = vec![false; n];
        for &p in &position {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::domain("ordering is not a permutation"));
            }
        }
        Ok(Ordering { position })
    }

    /// From the vertices listed in product order.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (k, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::domain("ordering is not a permutation"));
            }
            position[v] = k;
        }
        Ok(Ordering { position })
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Vertices in product order.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.position.len()];
        for (v, &p) in self.position.iter().enumerate() {
            seq[p] = v;
        }
        seq
    }

    pub(crate) fn check(&self, g: &CoxeterGraph) -> Result<()> {
        if self.position.len() != g.n() {
            return Err(Error::domain(format!(
                "ordering has {} entries but the graph has {} vertices",
                self.position.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// A Coxeter graph whose edges carry a direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedCoxeterGraph {
    graph: CoxeterGraph,
    arcs: BTreeSet<(usize, usize)>,
}

impl DirectedCoxeterGraph {
    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    /// Arcs `(from, to)`, sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.contains(&(from, to))
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.graph.n();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.arcs {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.arcs {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        seen == n
    }

    /// Canonical code up to isomorphism of directed graphs (labels ignored).
    pub fn canonical_code(&self) -> Vec<u8> {
        graphs::digraph_canonical(self.graph.n(), self.arcs.iter().copied())
    }
}

/// Directs every edge toward the endpoint that comes later in `ord`.
pub fn directed_graph(g: &CoxeterGraph, ord: &Ordering) -> Result<DirectedCoxeterGraph> {
    ord.check(g)?;
    let arcs = g.edges().map(|(i, j, _)| if ord.position(i) < ord.position(j) { (i, j) } else { (j, i) }).collect();
    Ok(DirectedCoxeterGraph { graph: g.clone(), arcs })
}
