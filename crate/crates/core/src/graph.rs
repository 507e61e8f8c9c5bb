//! Finite graphs given by vertices and darts, edge paths, turns and free
//! reduction.
//!
//! Every edge `e` contributes two darts: the positive dart `2e` and its
//! reverse `2e + 1`, so reversal is a single xor.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An oriented edge. Darts are interned: dart `2i` is the canonical
/// orientation of edge `i` and `2i + 1` its reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dart(pub u32);

impl Dart {
    pub fn new(edge: usize, reversed: bool) -> Dart {
        Dart((edge as u32) << 1 | reversed as u32)
    }

    #[inline]
    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_reversed(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite graph. Vertices are `0..vertex_count`, edges `0..edge_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    /// origin vertex per dart
    origin: Vec<usize>,
}

impl Graph {
    /// Builds a graph from named vertices and edges `(name, origin, terminus)`.
    pub fn new(vertex_names: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Graph> {
        let mut origin = Vec::with_capacity(edges.len() * 2);
        let mut edge_names = Vec::with_capacity(edges.len());
        for (name, o, t) in edges {
            if o >= vertex_names.len() || t >= vertex_names.len() {
                return Err(Error::UnknownVertex(name));
            }
            origin.push(o);
            origin.push(t);
            edge_names.push(name);
        }
        Ok(Graph {
            vertex_names,
            edge_names,
            origin,
        })
    }

    /// The rose with one vertex and the given petals.
    pub fn rose<S: AsRef<str>>(petals: &[S]) -> Graph {
        let edges = petals
            .iter()
            .map(|p| (p.as_ref().to_string(), 0, 0))
            .collect();
        Graph::new(vec!["v".to_string()], edges).expect("rose is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.dart_count() as u32).map(Dart)
    }

    /// Canonical (positive) darts, one per edge.
    pub fn edges(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.edge_count()).map(|e| Dart::new(e, false))
    }

    pub fn origin(&self, d: Dart) -> usize {
        self.origin[d.index()]
    }

    pub fn terminus(&self, d: Dart) -> usize {
        self.origin[d.reverse().index()]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Darts whose origin is `v`, in interned order.
    pub fn outgoing(&self, v: usize) -> Vec<Dart> {
        self.darts().filter(|&d| self.origin(d) == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.origin.iter().filter(|&&o| o == v).count()
    }

    /// Dart label: edge name, with `~` appended for reversed darts.
    pub fn dart_name(&self, d: Dart) -> String {
        let name = &self.edge_names[d.edge()];
        if d.is_reversed() {
            format!("{name}~")
        } else {
            name.clone()
        }
    }

    pub fn dart_by_name(&self, token: &str) -> Option<Dart> {
        match token.strip_suffix('~') {
            Some(base) => self.edge_by_name(base).map(|e| Dart::new(e, true)),
            None => self.edge_by_name(token).map(|e| Dart::new(e, false)),
        }
    }

    /// Parses whitespace separated dart tokens into a well formed path.
    pub fn parse_path(&self, text: &str) -> Result<EdgePath> {
        let darts = text
            .split_whitespace()
            .map(|t| self.dart_by_name(t).ok_or_else(|| Error::UnknownToken(t.to_string())))
            .collect::<Result<Vec<_>>>()?;
        EdgePath::new(self, darts)
    }

    pub fn format_path(&self, p: &EdgePath) -> String {
        p.darts()
            .iter()
            .map(|&d| self.dart_name(d))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Same vertex/edge names and incidences.
    pub fn same_shape(&self, other: &Graph) -> bool {
        self == other
    }

    /// Checks the standing conventions on graphs.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.vertex_count() == 0 {
            violations.push(Violation::Empty);
        }
        for d in self.darts() {
            let r = d.reverse();
            if r == d || r.reverse() != d || r.index() >= self.dart_count() {
                violations.push(Violation::Involution(d));
            }
        }
        for v in 0..self.vertex_count() {
            let k = self.valence(v);
            if k <= 1 {
                violations.push(Violation::LowValence {
                    vertex: self.vertex_names[v].clone(),
                    valence: k,
                });
            }
        }
        if self.vertex_count() > 0 {
            let components = self.component_count();
            if components > 1 {
                violations.push(Violation::Disconnected { components });
            }
        }
        ValidationReport { violations }
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut components = 0;
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for d in self.darts().filter(|&d| self.origin(d) == v) {
                    let w = self.terminus(d);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Empty,
    Involution(Dart),
    LowValence { vertex: String, valence: usize },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::Involution(d) => write!(f, "reversal is not an involution at dart {}", d.0),
            Violation::LowValence { vertex, valence } => {
                write!(f, "vertex {vertex} has valence {valence}")
            }
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite edge path. Consecutive darts are incident; the empty path is a
/// valid degenerate path.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgePath(Vec<Dart>);

impl EdgePath {
    /// Checks incidence of consecutive darts.
    pub fn new(g: &Graph, darts: Vec<Dart>) -> Result<EdgePath> {
        if let Some(bad) = darts.iter().find(|d| d.index() >= g.dart_count()) {
            return Err(Error::UnknownDart(bad.0));
        }
        for (i, w) in darts.windows(2).enumerate() {
            if g.terminus(w[0]) != g.origin(w[1]) {
                return Err(Error::MalformedPath { index: i + 1 });
            }
        }
        Ok(EdgePath(darts))
    }

    /// Wraps darts without checking incidence. Callers guarantee wellformedness.
    pub fn from_darts_unchecked(darts: Vec<Dart>) -> EdgePath {
        EdgePath(darts)
    }

    pub fn empty() -> EdgePath {
        EdgePath(Vec::new())
    }

    pub fn single(d: Dart) -> EdgePath {
        EdgePath(vec![d])
    }

    pub fn darts(&self) -> &[Dart] {
        &self.0
    }

    pub fn into_darts(self) -> Vec<Dart> {
        self.0
    }

    /// Simplicial length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Dart> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Dart> {
        self.0.last().copied()
    }

    pub fn reverse(&self) -> EdgePath {
        EdgePath(self.0.iter().rev().map(|d| d.reverse()).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].reverse())
    }

    /// Free reduction `[p]`, single stack pass.
    pub fn reduce(&self) -> EdgePath {
        EdgePath(reduce_darts(self.0.iter().copied()))
    }

    pub fn concat(&self, other: &EdgePath) -> EdgePath {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        EdgePath(v)
    }

    pub fn prefix(&self, n: usize) -> EdgePath {
        EdgePath(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn subpath(&self, start: usize, end: usize) -> EdgePath {
        EdgePath(self.0[start..end].to_vec())
    }

    pub fn is_prefix_of(&self, other: &EdgePath) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Turns crossed at the interior vertices of the path, in order.
    pub fn turns(&self) -> impl Iterator<Item = Turn> + '_ {
        self.0.windows(2).map(|w| Turn::new(w[0].reverse(), w[1]))
    }

    pub fn crosses_turn(&self, t: Turn) -> bool {
        self.turns().any(|u| u == t)
    }
}

/// Stack based free reduction over a dart stream.
pub(crate) fn reduce_darts(darts: impl IntoIterator<Item = Dart>) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::new();
    for d in darts {
        if out.last() == Some(&d.reverse()) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

/// An unordered pair of darts sharing their origin, stored with the smaller
/// interned dart first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Turn(Dart, Dart);

impl Turn {
    pub fn new(a: Dart, b: Dart) -> Turn {
        if a <= b {
            Turn(a, b)
        } else {
            Turn(b, a)
        }
    }

    pub fn darts(self) -> (Dart, Dart) {
        (self.0, self.1)
    }

    pub fn is_degenerate(self) -> bool {
        self.0 == self.1
    }

    /// All non-degenerate turns of `g`, in canonical order.
    pub fn all_nondegenerate(g: &Graph) -> Vec<Turn> {
        let mut out = Vec::new();
        for a in g.darts() {
            for b in g.darts().filter(|&b| b > a) {
                if g.origin(a) == g.origin(b) {
                    out.push(Turn(a, b));
                }
            }
        }
        out
    }

    pub fn display(self, g: &Graph) -> String {
        format!("({}, {})", g.dart_name(self.0), g.dart_name(self.1))
    }
}
