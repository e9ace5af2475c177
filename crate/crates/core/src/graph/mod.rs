//! Finite multigraphs, edge paths and generative descriptions of infinite
//! locally finite graphs.

mod builtin;
mod family;
mod table;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{EdgeId, VertexId};

pub use builtin::{Ladder, Line, RegularTree};
pub use family::{
    ball, build_family, complement_components, ComplementComponent, Generator, GraphFamily,
    ParamValue, Params, RayFamily,
};
pub use table::{TableEdge, TableFamily, TableSpec};
pub(crate) use family::components_beyond;

/// An edge of a multigraph, stored with a fixed orientation `a -> b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    pub fn new(id: impl Into<EdgeId>, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        Self { id: id.into(), a: a.into(), b: b.into() }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.a == v {
            Some(&self.b)
        } else if &self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

/// A finite multigraph with a basepoint. Parallel edges and self-loops are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    basepoint: VertexId,
}

impl FiniteGraph {
    pub fn new(basepoint: impl Into<VertexId>) -> Self {
        let basepoint = basepoint.into();
        let mut g = Self {
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            basepoint: basepoint.clone(),
        };
        g.add_vertex(basepoint);
        g
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) {
        let v = v.into();
        self.incidence.entry(v.clone()).or_default();
        self.vertices.insert(v);
    }

    /// Adds an edge. Both endpoints must already be vertices and the edge id
    /// must be fresh.
    pub fn add_edge(&mut self, edge: Edge) -> Result<()> {
        for end in [&edge.a, &edge.b] {
            if !self.vertices.contains(end) {
                return Err(Error::UnknownVertex(end.clone()));
            }
        }
        if self.edges.contains_key(&edge.id) {
            return Err(Error::Inconsistent(format!("duplicate edge id `{}`", edge.id)));
        }
        self.incidence.get_mut(&edge.a).expect("endpoint").insert(edge.id.clone());
        self.incidence.get_mut(&edge.b).expect("endpoint").insert(edge.id.clone());
        self.edges.insert(edge.id.clone(), edge);
        Ok(())
    }

    pub fn basepoint(&self) -> &VertexId {
        &self.basepoint
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// Incident edges of `v` paired with their far endpoint, ordered by far
    /// endpoint and then by edge id. A self-loop is listed once.
    pub fn neighbors(&self, v: &VertexId) -> Vec<(&VertexId, &Edge)> {
        let mut out: Vec<(&VertexId, &Edge)> = self
            .incidence
            .get(v)
            .into_iter()
            .flatten()
            .map(|id| {
                let e = &self.edges[id];
                (e.other(v).expect("incident edge"), e)
            })
            .collect();
        out.sort_by(|x, y| x.0.cmp(y.0).then_with(|| x.1.id.cmp(&y.1.id)));
        out
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.incidence
            .get(v)
            .map(|ids| ids.iter().map(|id| if self.edges[id].is_loop() { 2 } else { 1 }).sum())
            .unwrap_or(0)
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for (w, _) in self.neighbors(&v) {
                    if seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
                comp.insert(v);
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// First Betti number `E - V + c`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.components().len() - self.vertices.len()
    }

    /// Graph distance from the basepoint to every reachable vertex.
    pub fn bfs_distances(&self) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::from([(self.basepoint.clone(), 0)]);
        let mut queue = VecDeque::from([self.basepoint.clone()]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for (w, _) in self.neighbors(&v) {
                if !dist.contains_key(w) {
                    dist.insert(w.clone(), d + 1);
                    queue.push_back(w.clone());
                }
            }
        }
        dist
    }

    /// True when every vertex and edge of `self` appears in `host` with the
    /// same endpoints.
    pub fn is_subgraph_of(&self, host: &FiniteGraph) -> bool {
        self.vertices.iter().all(|v| host.has_vertex(v))
            && self.edges.values().all(|e| host.edge(&e.id) == Some(e))
    }

    /// Graphviz rendering. `highlight` vertices get a distinct style.
    pub fn to_dot_with(&self, name: &str, highlight: &BTreeSet<VertexId>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", escape_dot(name));
        for v in &self.vertices {
            let mut attrs = Vec::new();
            if v == &self.basepoint {
                attrs.push("shape=doublecircle".to_owned());
            }
            if highlight.contains(v) {
                attrs.push("shape=box".to_owned());
                attrs.push("style=filled".to_owned());
                attrs.push("fillcolor=lightgray".to_owned());
            }
            if attrs.is_empty() {
                let _ = writeln!(out, "  \"{}\";", escape_dot(v.as_str()));
            } else {
                let _ = writeln!(out, "  \"{}\" [{}];", escape_dot(v.as_str()), attrs.join(", "));
            }
        }
        for e in self.edges.values() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                escape_dot(e.a.as_str()),
                escape_dot(e.b.as_str()),
                escape_dot(e.id.as_str())
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_with(name, &BTreeSet::new())
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    basepoint: VertexId,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Serialize for FiniteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            basepoint: self.basepoint.clone(),
            vertices: self.vertices.iter().cloned().collect(),
            edges: self.edges.values().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        let mut g = FiniteGraph::new(repr.basepoint);
        for v in repr.vertices {
            g.add_vertex(v);
        }
        for e in repr.edges {
            g.add_edge(e).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

/// One traversal of an edge; `forward` means from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Step {
    pub fn forward(edge: impl Into<EdgeId>) -> Self {
        Self { edge: edge.into(), forward: true }
    }

    pub fn backward(edge: impl Into<EdgeId>) -> Self {
        Self { edge: edge.into(), forward: false }
    }

    pub fn reversed(&self) -> Self {
        Self { edge: self.edge.clone(), forward: !self.forward }
    }

    /// `(from, to)` of this traversal.
    pub fn ends<'a>(&self, edge: &'a Edge) -> (&'a VertexId, &'a VertexId) {
        if self.forward {
            (&edge.a, &edge.b)
        } else {
            (&edge.b, &edge.a)
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.forward { '+' } else { '-' }, self.edge)
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (forward, rest) = match s.as_bytes().first() {
            Some(b'+') => (true, &s[1..]),
            Some(b'-') => (false, &s[1..]),
            _ => return Err(Error::Malformed(format!("step `{s}` must start with `+` or `-`"))),
        };
        if rest.is_empty() {
            return Err(Error::Malformed(format!("step `{s}` has no edge id")));
        }
        Ok(Self { edge: EdgeId::new(rest), forward })
    }
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A walk given by its start vertex and a sequence of edge traversals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

impl EdgePath {
    pub fn empty(start: impl Into<VertexId>) -> Self {
        Self { start: start.into(), steps: Vec::new() }
    }

    pub fn new(start: impl Into<VertexId>, steps: Vec<Step>) -> Self {
        Self { start: start.into(), steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Walks the path in `g` and returns the final vertex.
    pub fn end_in(&self, g: &FiniteGraph) -> Result<VertexId> {
        if !g.has_vertex(&self.start) {
            return Err(Error::UnknownVertex(self.start.clone()));
        }
        let mut at = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let edge = g.edge(&step.edge).ok_or_else(|| Error::UnknownEdge(step.edge.clone()))?;
            let (from, to) = step.ends(edge);
            if from != &at {
                return Err(Error::PathBroken { step: i, edge: step.edge.clone(), at });
            }
            at = to.clone();
        }
        Ok(at)
    }

    /// Checks that the path is a closed walk in `g` starting at `start`.
    pub fn check_closed(&self, g: &FiniteGraph) -> Result<()> {
        let end = self.end_in(g)?;
        if end != self.start {
            return Err(Error::PathNotClosed(end));
        }
        Ok(())
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &EdgePath) -> EdgePath {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        EdgePath { start: self.start.clone(), steps }
    }

    /// Signed traversal count per edge.
    pub fn signed_counts(&self) -> BTreeMap<EdgeId, i64> {
        let mut counts = BTreeMap::new();
        for step in &self.steps {
            *counts.entry(step.edge.clone()).or_insert(0) += if step.forward { 1 } else { -1 };
        }
        counts
    }

    /// Unsigned traversal count per edge.
    pub fn traversal_counts(&self) -> BTreeMap<EdgeId, u64> {
        let mut counts = BTreeMap::new();
        for step in &self.steps {
            *counts.entry(step.edge.clone()).or_insert(0) += 1;
        }
        counts
    }
}
