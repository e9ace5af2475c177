use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::word::{Letter, ReducedWord, Word};
use crate::error::{Error, Result};
use crate::graph::{EdgePath, FiniteGraph, Step};
use crate::ids::{EdgeId, VertexId};

/// A non-tree edge with its canonical orientation `tail -> head`: from the
/// smaller endpoint to the larger one, or the stored direction for a
/// self-loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub edge: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    /// The stored orientation `a -> b` is the canonical one.
    #[serde(skip)]
    pub stored_is_canonical: bool,
}

impl Chord {
    fn new(graph: &FiniteGraph, edge: &EdgeId) -> Self {
        let e = graph.edge(edge).expect("chord is an edge of the graph");
        let stored_is_canonical = e.a <= e.b;
        let (tail, head) = if stored_is_canonical { (e.a.clone(), e.b.clone()) } else { (e.b.clone(), e.a.clone()) };
        Self { edge: edge.clone(), tail, head, stored_is_canonical }
    }
}

/// A spanning tree rooted at the basepoint, with its chords numbered. Chord
/// `i` is generator `i` of `π_1`.
#[derive(Clone, Debug, Serialize)]
pub struct SpanningTree {
    #[serde(skip)]
    graph: FiniteGraph,
    parent: BTreeMap<VertexId, (VertexId, EdgeId)>,
    tree_edges: BTreeSet<EdgeId>,
    chords: Vec<Chord>,
    #[serde(skip)]
    chord_index: BTreeMap<EdgeId, usize>,
}

impl SpanningTree {
    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn rank(&self) -> usize {
        self.chords.len()
    }

    pub fn tree_edges(&self) -> &BTreeSet<EdgeId> {
        &self.tree_edges
    }

    pub fn chord_index(&self, e: &EdgeId) -> Option<usize> {
        self.chord_index.get(e).copied()
    }

    pub fn parent(&self, v: &VertexId) -> Option<&(VertexId, EdgeId)> {
        self.parent.get(v)
    }

    /// Tree path from the basepoint to `v`.
    pub fn path_from_root(&self, v: &VertexId) -> Result<Vec<Step>> {
        if !self.graph.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        let mut steps = Vec::new();
        let mut at = v.clone();
        while let Some((up, e)) = self.parent.get(&at) {
            let edge = self.graph.edge(e).expect("tree edge");
            steps.push(Step { edge: e.clone(), forward: edge.a == *up && edge.b == at });
            at = up.clone();
        }
        steps.reverse();
        Ok(steps)
    }

    fn path_to_root(&self, v: &VertexId) -> Result<Vec<Step>> {
        Ok(self.path_from_root(v)?.iter().rev().map(Step::reversed).collect())
    }

    /// The closed walk `root -> tail · chord · head -> root` representing
    /// generator `i`.
    pub fn generator_loop(&self, i: usize) -> Result<EdgePath> {
        let chord = self
            .chords
            .get(i)
            .ok_or(Error::GeneratorOutOfRange { generator: i, rank: self.rank() })?;
        let mut steps = self.path_from_root(&chord.tail)?;
        steps.push(Step { edge: chord.edge.clone(), forward: chord.stored_is_canonical });
        steps.extend(self.path_to_root(&chord.head)?);
        Ok(EdgePath::new(self.graph.basepoint().clone(), steps))
    }

    /// A closed walk whose chord word is exactly `w`.
    pub fn realize(&self, w: &Word) -> Result<EdgePath> {
        if w.rank() != self.rank() {
            return Err(Error::AlphabetMismatch { expected: self.rank(), found: w.rank() });
        }
        let mut path = EdgePath::empty(self.graph.basepoint().clone());
        for l in w.letters() {
            let mut piece = self.generator_loop(l.generator)?;
            if l.inverse {
                piece.steps = piece.steps.iter().rev().map(Step::reversed).collect();
            }
            path.steps.extend(piece.steps);
        }
        Ok(path)
    }
}

/// Breadth-first spanning tree from the basepoint. Neighbours are scanned in
/// vertex-id order and parallel edges in edge-id order; chords are numbered
/// in the order the scan first meets them.
pub fn spanning_tree(g: &FiniteGraph) -> Result<SpanningTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let root = g.basepoint().clone();
    let mut parent = BTreeMap::new();
    let mut tree_edges = BTreeSet::new();
    let mut chord_order = Vec::new();
    let mut seen_chords = BTreeSet::new();
    let mut visited = BTreeSet::from([root.clone()]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for (w, e) in g.neighbors(&v) {
            if tree_edges.contains(&e.id) {
                continue;
            }
            if visited.insert(w.clone()) {
                parent.insert(w.clone(), (v.clone(), e.id.clone()));
                tree_edges.insert(e.id.clone());
                queue.push_back(w.clone());
            } else if seen_chords.insert(e.id.clone()) {
                chord_order.push(e.id.clone());
            }
        }
    }
    Ok(assemble(g, parent, tree_edges, chord_order))
}

fn assemble(
    g: &FiniteGraph,
    parent: BTreeMap<VertexId, (VertexId, EdgeId)>,
    tree_edges: BTreeSet<EdgeId>,
    chord_order: Vec<EdgeId>,
) -> SpanningTree {
    let chords: Vec<Chord> = chord_order.iter().map(|e| Chord::new(g, e)).collect();
    let chord_index = chords.iter().enumerate().map(|(i, c)| (c.edge.clone(), i)).collect();
    SpanningTree { graph: g.clone(), parent, tree_edges, chords, chord_index }
}

struct UnionFind {
    index: BTreeMap<VertexId, usize>,
    parent: Vec<usize>,
}

impl UnionFind {
    fn new<'a>(vertices: impl Iterator<Item = &'a VertexId>) -> Self {
        let index: BTreeMap<VertexId, usize> = vertices.cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let parent = (0..index.len()).collect();
        Self { index, parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: &VertexId, b: &VertexId) -> bool {
        let (ra, rb) = (self.find(self.index[a]), self.find(self.index[b]));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Extends a spanning tree of a connected subgraph to one of `host`. Every
/// tree edge of `sub` stays a tree edge, so every chord of `sub` stays a
/// chord and keeps its number; new chords are numbered after them.
pub fn extend_spanning_tree(sub: &SpanningTree, host: &FiniteGraph) -> Result<SpanningTree> {
    if sub.graph.basepoint() != host.basepoint() {
        return Err(Error::NotContained("basepoints differ".into()));
    }
    if !sub.graph.is_subgraph_of(host) {
        return Err(Error::NotContained("an edge or vertex of the subgraph is missing".into()));
    }
    if !host.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut uf = UnionFind::new(host.vertices());
    let mut tree_edges = BTreeSet::new();
    for e in &sub.tree_edges {
        let edge = host.edge(e).expect("checked containment");
        uf.union(&edge.a, &edge.b);
        tree_edges.insert(e.clone());
    }
    let root = host.basepoint().clone();
    let mut new_chords = Vec::new();
    let mut met = BTreeSet::new();
    let mut visited = BTreeSet::from([root.clone()]);
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(v) = queue.pop_front() {
        for (w, e) in host.neighbors(&v) {
            if visited.insert(w.clone()) {
                queue.push_back(w.clone());
            }
            if tree_edges.contains(&e.id) || !met.insert(e.id.clone()) {
                continue;
            }
            if uf.union(&e.a, &e.b) {
                tree_edges.insert(e.id.clone());
            } else if sub.chord_index(&e.id).is_none() {
                new_chords.push(e.id.clone());
            }
        }
    }
    // Orient the tree from the root.
    let mut parent = BTreeMap::new();
    let mut visited = BTreeSet::from([root.clone()]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for (w, e) in host.neighbors(&v) {
            if tree_edges.contains(&e.id) && visited.insert(w.clone()) {
                parent.insert(w.clone(), (v.clone(), e.id.clone()));
                queue.push_back(w.clone());
            }
        }
    }
    let mut chord_order: Vec<EdgeId> = sub.chords.iter().map(|c| c.edge.clone()).collect();
    chord_order.extend(new_chords);
    Ok(assemble(host, parent, tree_edges, chord_order))
}

/// Records the chord crossings of a closed walk: `+` along the canonical
/// orientation, `-` against it. Tree edges contribute nothing.
pub fn trace_word(path: &EdgePath, tree: &SpanningTree) -> Result<Word> {
    path.check_closed(&tree.graph)?;
    let mut word = Word::empty(tree.rank());
    for step in &path.steps {
        if let Some(i) = tree.chord_index(&step.edge) {
            let canonical = step.forward == tree.chords[i].stored_is_canonical;
            word.push(if canonical { Letter::pos(i) } else { Letter::neg(i) })?;
        }
    }
    Ok(word)
}

/// Reduced chord word of a closed walk.
pub fn trace_reduced(path: &EdgePath, tree: &SpanningTree) -> Result<ReducedWord> {
    Ok(trace_word(path, tree)?.reduce())
}
