use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ball, Edge, FiniteGraph, GraphFamily};
use crate::graph::components_beyond;
use crate::ids::{EdgeId, VertexId};

/// The quotient graph `Γ_n` together with its collapse data.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientGraph {
    pub graph: FiniteGraph,
    pub level: usize,
    /// Collapsed vertex of each complement component, by component index.
    pub collapsed: Vec<VertexId>,
    /// Frontier (distance `n`) vertices of each component.
    pub frontiers: Vec<Vec<VertexId>>,
    /// Original edge of each quotient edge.
    pub origin: BTreeMap<EdgeId, EdgeId>,
    #[serde(skip)]
    frontier_component: BTreeMap<VertexId, usize>,
    #[serde(skip)]
    family: GraphFamily,
}

impl QuotientGraph {
    pub fn is_collapsed(&self, v: &VertexId) -> bool {
        self.collapsed.contains(v)
    }

    pub fn collapsed_set(&self) -> BTreeSet<VertexId> {
        self.collapsed.iter().cloned().collect()
    }

    /// Index of the complement component containing an original vertex at
    /// distance `>= n`.
    pub fn component_of(&self, v: &VertexId) -> Result<usize> {
        let frontier = descend_to(&self.family, v, self.level)?;
        self.frontier_component
            .get(&frontier)
            .copied()
            .ok_or(Error::UnknownVertex(frontier))
    }

    /// Image of an original vertex in `Γ_n`.
    pub fn image_of(&self, v: &VertexId) -> Result<VertexId> {
        let d = self.family.distance(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        if d < self.level {
            Ok(v.clone())
        } else {
            Ok(self.collapsed[self.component_of(v)?].clone())
        }
    }

    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.graph.edge(e).is_some()
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn to_dot(&self) -> String {
        let name = format!("{}_{}", self.family.name(), self.level);
        self.graph.to_dot_with(&name, &self.collapsed_set())
    }
}

/// Follows neighbours of strictly smaller distance from `v` down to distance
/// `level`, choosing the least such neighbour each time.
pub(crate) fn descend_to(family: &GraphFamily, v: &VertexId, level: usize) -> Result<VertexId> {
    let gen = family.generator();
    let mut at = v.clone();
    let mut d = family.distance(&at).ok_or_else(|| Error::UnknownVertex(at.clone()))?;
    if d < level {
        return Err(Error::Inconsistent(format!("`{v}` lies inside the ball of radius {level}")));
    }
    while d > level {
        let next = gen
            .incident(&at)?
            .into_iter()
            .filter_map(|e| e.other(&at).cloned())
            .filter(|w| family.distance(w) == Some(d - 1))
            .min()
            .ok_or_else(|| Error::Inconsistent(format!("`{at}` has no neighbour one step closer")))?;
        at = next;
        d -= 1;
    }
    Ok(at)
}

/// Builds `Γ_n` for `n >= 1`.
pub fn truncate(family: &GraphFamily, n: usize) -> Result<QuotientGraph> {
    if n < 1 {
        return Err(Error::LevelTooSmall { level: n, min: 1 });
    }
    let outer = ball(family, n)?;
    let comps = components_beyond(family, n, family.certification_radius(n))?;
    let mut frontiers: Vec<Vec<VertexId>> = comps
        .iter()
        .map(|c| c.iter().filter(|v| family.distance(v) == Some(n)).cloned().collect())
        .collect();
    frontiers.sort();

    let mut frontier_component = BTreeMap::new();
    let mut collapsed = Vec::with_capacity(frontiers.len());
    for (i, fr) in frontiers.iter().enumerate() {
        for v in fr {
            frontier_component.insert(v.clone(), i);
        }
        collapsed.push(VertexId::new(format!("C:{n}:{i}")));
    }

    let mut graph = FiniteGraph::new(family.basepoint());
    for v in outer.vertices() {
        if family.distance(v).is_some_and(|d| d < n) {
            graph.add_vertex(v.clone());
        }
    }
    for c in &collapsed {
        graph.add_vertex(c.clone());
    }
    let image = |v: &VertexId| -> VertexId {
        match frontier_component.get(v) {
            Some(&i) => collapsed[i].clone(),
            None => v.clone(),
        }
    };
    let mut origin = BTreeMap::new();
    for e in outer.edges() {
        let (a, b) = (image(&e.a), image(&e.b));
        let inner_a = frontier_component.contains_key(&e.a);
        let inner_b = frontier_component.contains_key(&e.b);
        if inner_a && inner_b {
            if a != b {
                return Err(Error::Inconsistent(format!(
                    "edge `{}` joins two distinct complement components",
                    e.id
                )));
            }
            continue;
        }
        graph.add_edge(Edge { id: e.id.clone(), a, b })?;
        origin.insert(e.id.clone(), e.id.clone());
    }
    Ok(QuotientGraph {
        graph,
        level: n,
        collapsed,
        frontiers,
        origin,
        frontier_component,
        family: family.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Params, ParamValue};

    fn family(name: &str) -> GraphFamily {
        build_family(name, Params::new()).unwrap()
    }

    #[test]
    fn ladder_quotient_counts() {
        let ladder = family("ladder");
        for n in 1..=10 {
            let q = truncate(&ladder, n).unwrap();
            assert_eq!(q.collapsed.len(), 1);
            // b:0..b:n-1 and t:0..t:n-2 plus the collapsed vertex.
            assert_eq!(q.graph.vertex_count(), 2 * n);
            assert_eq!(q.graph.edge_count(), 3 * n - 1);
            assert_eq!(q.graph.betti_number(), n);
            assert!(q.graph.is_connected());
        }
    }

    #[test]
    fn line_quotient_is_a_path() {
        let line = family("line");
        for n in 1..=6 {
            let q = truncate(&line, n).unwrap();
            assert_eq!(q.collapsed, vec![VertexId::new(format!("C:{n}:0")), VertexId::new(format!("C:{n}:1"))]);
            assert_eq!(q.graph.vertex_count(), 2 * n + 1);
            assert_eq!(q.graph.betti_number(), 0);
        }
        let q = truncate(&line, 2).unwrap();
        assert_eq!(q.image_of(&"z:-7".into()).unwrap(), VertexId::new("C:2:0"));
        assert_eq!(q.image_of(&"z:5".into()).unwrap(), VertexId::new("C:2:1"));
        assert_eq!(q.image_of(&"z:1".into()).unwrap(), VertexId::new("z:1"));
    }

    #[test]
    fn tree_quotient_is_a_tree() {
        let tree = build_family("tree", Params::from([("degree".into(), ParamValue::Int(3))])).unwrap();
        let q = truncate(&tree, 2).unwrap();
        assert_eq!(q.collapsed.len(), 6);
        assert_eq!(q.graph.betti_number(), 0);
        assert!(q.graph.is_connected());
    }

    #[test]
    fn level_zero_is_rejected() {
        assert_eq!(truncate(&family("ladder"), 0).unwrap_err(), Error::LevelTooSmall { level: 0, min: 1 });
    }

    #[test]
    fn collapsed_vertices_never_adjacent() {
        let tree = family("tree");
        for n in 1..=4 {
            let q = truncate(&tree, n).unwrap();
            for e in q.graph.edges() {
                assert!(!(q.is_collapsed(&e.a) && q.is_collapsed(&e.b)));
            }
        }
    }

    #[test]
    fn dot_styles_collapsed_vertices() {
        let q = truncate(&family("ladder"), 2).unwrap();
        let dot = q.to_dot();
        assert!(dot.contains("\"C:2:0\" [shape=box, style=filled, fillcolor=lightgray];"));
        assert!(dot.contains("\"b:1\" -- \"C:2:0\" [label=\"b:1\"];"));
    }
}
