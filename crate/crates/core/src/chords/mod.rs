//! Chord diagrams on a disk.
//!
//! A diagram with `n` chords is a circular word of `2n` endpoint slots. Slot
//! `k` sits at angle `pi k / n` on the unit circle, so slots run
//! counter-clockwise. Whether two chords cross is decided by interleaving in
//! the word alone; coordinates are only needed by [`make_positive`].
//!
//! Sign convention: `A[i][j] = +1` when chords `i` and `j` cross and the head
//! of `j` lies on the counter-clockwise arc from the tail of `i` to the head
//! of `i`. Geometrically this is `d_i x d_j < 0` for the direction vectors.

mod orderings;
mod realize;

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterGraph, Ordering};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

pub use orderings::{enumerate_positive_orderings, positive_systems, PositiveClass, PositiveOrderings, MAX_CHORDS};
pub use realize::{
    canonical_word, obstruction, positively_realizable, realize, realize_all, Witness, DEFAULT_BUDGET,
    MAX_REALIZE_VERTICES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Tail,
    Head,
}

impl Role {
    fn flip(self) -> Self {
        match self {
            Role::Tail => Role::Head,
            Role::Head => Role::Tail,
        }
    }
}

/// One slot of the circular word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub chord: usize,
    pub role: Role,
}

/// Oriented chords `0..n` with endpoints on the circle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    word: Vec<Endpoint>,
    tail: Vec<usize>,
    head: Vec<usize>,
}

impl ChordDiagram {
    /// Checks that every chord of `0..n` occurs once as tail and once as head.
    pub fn new(word: Vec<Endpoint>) -> Result<Self> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::domain("a chord word has even length"));
        }
        let n = word.len() / 2;
        let mut tail = vec![usize::MAX; n];
        let mut head = vec![usize::MAX; n];
        for (slot, e) in word.iter().enumerate() {
            if e.chord >= n {
                return Err(Error::domain(format!("chord {} out of range for {n} chords", e.chord + 1)));
            }
            let seat = match e.role {
                Role::Tail => &mut tail[e.chord],
                Role::Head => &mut head[e.chord],
            };
            if *seat != usize::MAX {
                return Err(Error::domain(format!("chord {} has two {:?} endpoints", e.chord + 1, e.role)));
            }
            *seat = slot;
        }
        Ok(ChordDiagram { word, tail, head })
    }

    /// Diagram from a word of chord ids; the first occurrence of each chord
    /// is its tail.
    pub fn from_ids(ids: &[usize]) -> Result<Self> {
        let mut seen = vec![false; ids.len()];
        let word = ids
            .iter()
            .map(|&c| {
                let first = seen.get(c).is_none_or(|s| !s);
                if let Some(s) = seen.get_mut(c) {
                    *s = true;
                }
                Endpoint { chord: c, role: if first { Role::Tail } else { Role::Head } }
            })
            .collect();
        Self::new(word)
    }

    pub fn n(&self) -> usize {
        self.tail.len()
    }

    pub fn word(&self) -> &[Endpoint] {
        &self.word
    }

    /// Slots of the tail and head of chord `c`.
    pub fn endpoints(&self, c: usize) -> (usize, usize) {
        (self.tail[c], self.head[c])
    }

    fn between(&self, c: usize, slot: usize) -> bool {
        let (a, b) = (self.tail[c].min(self.head[c]), self.tail[c].max(self.head[c]));
        a < slot && slot < b
    }

    /// Whether chords `i` and `j` cross, i.e. their endpoints interleave.
    pub fn crosses(&self, i: usize, j: usize) -> bool {
        i != j && self.between(i, self.tail[j]) != self.between(i, self.head[j])
    }

    /// Algebraic intersection number of chords `i` and `j`.
    pub fn sign(&self, i: usize, j: usize) -> i64 {
        if !self.crosses(i, j) {
            return 0;
        }
        let len = self.word.len();
        let offset = |s: usize| (s + len - self.tail[i]) % len;
        if offset(self.head[j]) < offset(self.head[i]) {
            1
        } else {
            -1
        }
    }

    /// Intersection matrix indexed by chord id.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut a = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = self.sign(i, j);
            }
        }
        a
    }

    /// The same diagram with chord `c` reversed.
    pub fn flipped(&self, c: usize) -> Self {
        let mut word = self.word.clone();
        for e in word.iter_mut().filter(|e| e.chord == c) {
            e.role = e.role.flip();
        }
        ChordDiagram::new(word).expect("flipping preserves validity")
    }

    /// Reverses every chord `c` with `flip[c]` set.
    pub fn oriented(&self, flip: impl Fn(usize) -> bool) -> Self {
        let word = self
            .word
            .iter()
            .map(|e| Endpoint { chord: e.chord, role: if flip(e.chord) { e.role.flip() } else { e.role } })
            .collect();
        ChordDiagram::new(word).expect("flipping preserves validity")
    }

    /// Renames chord `c` to `perm[c]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        Ordering::from_positions(perm.to_vec())?;
        if perm.len() != self.n() {
            return Err(Error::domain("relabelling has the wrong length"));
        }
        let word = self.word.iter().map(|e| Endpoint { chord: perm[e.chord], role: e.role }).collect();
        ChordDiagram::new(word)
    }

    /// Unit vector of slot `k`.
    fn point(&self, slot: usize) -> (f64, f64) {
        let angle = std::f64::consts::PI * slot as f64 / self.n() as f64;
        (angle.cos(), angle.sin())
    }

    /// Direction vector `head - tail` of chord `c`.
    pub fn direction(&self, c: usize) -> (f64, f64) {
        let (tx, ty) = self.point(self.tail[c]);
        let (hx, hy) = self.point(self.head[c]);
        (hx - tx, hy - ty)
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let sign = if e.role == Role::Tail { '+' } else { '-' };
            write!(f, "{sign}{}", e.chord + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram({self})")
    }
}

/// Whitespace-separated tokens, 1-based: `+3` is the tail of chord 3 and
/// `-3` its head. An unsigned `3` means tail on first occurrence and head on
/// the second.
impl FromStr for ChordDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut seen = Vec::<bool>::new();
        let mut word = Vec::new();
        let mut pos = 0;
        for token in s.split_whitespace() {
            let start = pos + s[pos..].find(token).unwrap_or(0);
            pos = start + token.len();
            let (explicit, digits) = match token.as_bytes()[0] {
                b'+' => (Some(Role::Tail), &token[1..]),
                b'-' => (Some(Role::Head), &token[1..]),
                _ => (None, token),
            };
            let id: usize = digits.parse().map_err(|_| Error::Parse {
                position: start,
                message: format!("expected a chord token, found `{token}`"),
            })?;
            if id == 0 {
                return Err(Error::Parse { position: start, message: "chord ids start at 1".into() });
            }
            let c = id - 1;
            if seen.len() <= c {
                seen.resize(c + 1, false);
            }
            let role = explicit.unwrap_or(if seen[c] { Role::Head } else { Role::Tail });
            seen[c] = true;
            word.push(Endpoint { chord: c, role });
        }
        ChordDiagram::new(word)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    word: Vec<(usize, String)>,
}

impl Serialize for ChordDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            word: self
                .word
                .iter()
                .map(|e| {
                    let role = if e.role == Role::Tail { "tail" } else { "head" };
                    (e.chord + 1, role.to_string())
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        let word = raw
            .word
            .into_iter()
            .map(|(id, role)| {
                let role = match role.as_str() {
                    "tail" => Role::Tail,
                    "head" => Role::Head,
                    other => return Err(D::Error::custom(format!("unknown endpoint role `{other}`"))),
                };
                if id == 0 {
                    return Err(D::Error::custom("chord ids start at 1"));
                }
                Ok(Endpoint { chord: id - 1, role })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ChordDiagram::new(word).map_err(D::Error::custom)
    }
}

/// A diagram together with a total order on its chords.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedChordSystem {
    diagram: ChordDiagram,
    sequence: Vec<usize>,
}

impl OrderedChordSystem {
    /// `sequence[k]` is the chord with index `k`.
    pub fn new(diagram: ChordDiagram, sequence: Vec<usize>) -> Result<Self> {
        if sequence.len() != diagram.n() {
            return Err(Error::domain(format!(
                "order lists {} chords but the diagram has {}",
                sequence.len(),
                diagram.n()
            )));
        }
        Ordering::from_sequence(&sequence)?;
        Ok(OrderedChordSystem { diagram, sequence })
    }

    /// Chords ordered by id.
    pub fn natural(diagram: ChordDiagram) -> Self {
        let sequence = (0..diagram.n()).collect();
        OrderedChordSystem { diagram, sequence }
    }

    pub fn diagram(&self) -> &ChordDiagram {
        &self.diagram
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn n(&self) -> usize {
        self.sequence.len()
    }

    /// The order as a vertex ordering of [`incidence_graph`] of the diagram.
    pub fn ordering(&self) -> Ordering {
        Ordering::from_sequence(&self.sequence).expect("validated on construction")
    }

    /// Incidence graph with vertex `k` standing for the `k`-th chord.
    pub fn incidence_graph(&self) -> CoxeterGraph {
        let n = self.n();
        let mut adj = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if self.diagram.crosses(self.sequence[i], self.sequence[j]) {
                    adj[i] |= 1 << j;
                }
            }
        }
        CoxeterGraph::from_masks(&adj)
    }

    /// The first pair `(i, j)` with `i > j` and `A[i][j] < 0`, 0-based.
    pub fn positivity_violation(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| self.diagram.sign(self.sequence[i], self.sequence[j]) < 0)
    }
}

impl fmt::Display for OrderedChordSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.sequence.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "{} | order {}", self.diagram, order.join(" "))
    }
}

/// The [`Display`](fmt::Display) form `<word> | order <ids>`; without the
/// `| order` part the chords are taken in id order.
impl FromStr for OrderedChordSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(bar) = s.find('|') else {
            return Ok(OrderedChordSystem::natural(s.parse()?));
        };
        let diagram: ChordDiagram = s[..bar].parse()?;
        let rest = &s[bar + 1..];
        let offset = bar + 1 + (rest.len() - rest.trim_start().len());
        let Some(ids) = rest.trim_start().strip_prefix("order") else {
            return Err(Error::Parse { position: offset, message: "expected `order` after `|`".into() });
        };
        let mut seq = Vec::new();
        let mut pos = s.len() - ids.len();
        for token in ids.split_whitespace() {
            let start = pos + s[pos..].find(token).unwrap_or(0);
            pos = start + token.len();
            match token.parse::<usize>() {
                Ok(id) if id >= 1 => seq.push(id - 1),
                _ => {
                    return Err(Error::Parse {
                        position: start,
                        message: format!("expected a 1-based chord id, found `{token}`"),
                    })
                }
            }
        }
        OrderedChordSystem::new(diagram, seq)
    }
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    word: Vec<(usize, String)>,
    #[serde(default)]
    order: Option<Vec<usize>>,
}

impl Serialize for OrderedChordSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let word = serde_json::to_value(&self.diagram).map_err(serde::ser::Error::custom)?;
        let word: DiagramJson = serde_json::from_value(word).map_err(serde::ser::Error::custom)?;
        SystemJson { word: word.word, order: Some(self.sequence.iter().map(|c| c + 1).collect()) }.serialize(s)
    }
}

/// `{"word": [...], "order": [ids...]}`; a missing order means chord-id order.
impl<'de> Deserialize<'de> for OrderedChordSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SystemJson::deserialize(d)?;
        let diagram: ChordDiagram =
            serde_json::from_value(serde_json::json!({ "word": raw.word })).map_err(D::Error::custom)?;
        match raw.order {
            None => Ok(OrderedChordSystem::natural(diagram)),
            Some(order) => {
                if order.contains(&0) {
                    return Err(D::Error::custom("chord ids start at 1"));
                }
                let seq = order.into_iter().map(|c| c - 1).collect();
                OrderedChordSystem::new(diagram, seq).map_err(D::Error::custom)
            }
        }
    }
}

/// Intersection matrix indexed by order: entry `(i, j)` concerns the `i`-th
/// and `j`-th chords.
pub fn intersection_matrix(sys: &OrderedChordSystem) -> IntMatrix {
    let n = sys.n();
    let mut a = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = sys.diagram.sign(sys.sequence[i], sys.sequence[j]);
        }
    }
    a
}

/// Every later chord crosses every earlier one positively: `A[i][j] >= 0`
/// for `i > j`.
pub fn is_positive(sys: &OrderedChordSystem) -> bool {
    sys.positivity_violation().is_none()
}

/// Incidence graph with a vertex per chord id.
pub fn incidence_graph(d: &ChordDiagram) -> CoxeterGraph {
    OrderedChordSystem::natural(d.clone()).incidence_graph()
}

/// Orients and orders the chords so that the system is positive.
///
/// Picks a direction `v` no chord is perpendicular to, turns every chord to
/// point along `v`, then orders chords by signed angle from `v`, clockwise
/// ones first. Later chords are then counter-clockwise of earlier ones, so
/// every crossing is positive.
pub fn make_positive(d: &ChordDiagram) -> OrderedChordSystem {
    let n = d.n();
    if n == 0 {
        return OrderedChordSystem::natural(d.clone());
    }
    // Chord directions lie at multiples of pi / 2n, so odd multiples of
    // pi / 4n are generic. The scan guards against rounding anyway.
    let v = (0..)
        .map(|m| {
            let phi = std::f64::consts::PI * (2 * m + 1) as f64 / (4 * n) as f64;
            (phi.cos(), phi.sin())
        })
        .find(|&(vx, vy)| {
            (0..n).all(|c| {
                let (dx, dy) = d.direction(c);
                (dx * vx + dy * vy).abs() > 1e-9 * dx.hypot(dy)
            })
        })
        .expect("a generic direction exists");
    let oriented = d.oriented(|c| {
        let (dx, dy) = d.direction(c);
        dx * v.0 + dy * v.1 < 0.0
    });
    let mut keyed: Vec<(f64, usize)> = (0..n)
        .map(|c| {
            let (dx, dy) = oriented.direction(c);
            ((v.0 * dy - v.1 * dx).atan2(v.0 * dx + v.1 * dy), c)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let sequence = keyed.into_iter().map(|(_, c)| c).collect();
    OrderedChordSystem { diagram: oriented, sequence }
}
