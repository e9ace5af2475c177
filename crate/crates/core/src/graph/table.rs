//! Finite, table-driven families read from JSON.
//!
//! ```json
//! {
//!   "name": "theta",
//!   "vertices_at_level": [["p"], ["a", "b"], ["c"]],
//!   "edges": [
//!     [],
//!     [{"id": "pa", "a": "p", "b": "a"}, {"id": "pb", "a": "p", "b": "b"}],
//!     [{"id": "ac", "a": "a", "b": "c"}, {"id": "bc", "a": "b", "b": "c"}]
//!   ]
//! }
//! ```
//!
//! Level 0 holds only the basepoint. Each edge is listed at the larger level
//! of its two endpoints, and the levels must be the true graph distances
//! from the basepoint. The table describes the ball of radius
//! `vertices_at_level.len() - 1`; nothing beyond it is generated.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::family::Generator;
use super::{Edge, FiniteGraph};
use crate::error::{Error, Result};
use crate::ids::{EdgeId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEdge {
    pub id: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub vertices_at_level: Vec<Vec<VertexId>>,
    pub edges: Vec<Vec<TableEdge>>,
}

#[derive(Debug)]
pub struct TableFamily {
    levels: Vec<Vec<VertexId>>,
    distance: BTreeMap<VertexId, usize>,
    edges: BTreeMap<EdgeId, Edge>,
    incident: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl TableFamily {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TableSpec =
            serde_json::from_str(text).map_err(|e| Error::Malformed(format!("family table: {e}")))?;
        Self::from_spec(spec)
    }

    pub fn from_spec(spec: TableSpec) -> Result<Self> {
        let name = spec.name.clone().unwrap_or_else(|| "table".to_owned());
        let invalid = |reason: String| Error::InvalidParams { family: name.clone(), reason };
        if spec.vertices_at_level.first().map(Vec::len) != Some(1) {
            return Err(invalid("level 0 must contain exactly the basepoint".into()));
        }
        if spec.edges.len() > spec.vertices_at_level.len() {
            return Err(invalid("more edge levels than vertex levels".into()));
        }
        let mut distance = BTreeMap::new();
        let mut levels = Vec::new();
        for (level, vs) in spec.vertices_at_level.iter().enumerate() {
            let mut sorted = vs.clone();
            sorted.sort();
            for v in &sorted {
                if distance.insert(v.clone(), level).is_some() {
                    return Err(invalid(format!("vertex `{v}` listed twice")));
                }
            }
            levels.push(sorted);
        }
        let basepoint = levels[0][0].clone();
        let mut graph = FiniteGraph::new(basepoint);
        for v in distance.keys() {
            graph.add_vertex(v.clone());
        }
        let mut edges = BTreeMap::new();
        let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for (level, es) in spec.edges.iter().enumerate() {
            for te in es {
                let edge = Edge { id: te.id.clone(), a: te.a.clone(), b: te.b.clone() };
                let (Some(&da), Some(&db)) = (distance.get(&edge.a), distance.get(&edge.b)) else {
                    return Err(invalid(format!("edge `{}` has an unlisted endpoint", edge.id)));
                };
                if da.max(db) != level {
                    return Err(Error::LocalFiniteness {
                        family: name.clone(),
                        radius: level,
                        reason: format!(
                            "edge `{}` listed at level {level} but its endpoints reach level {}",
                            edge.id,
                            da.max(db)
                        ),
                    });
                }
                graph.add_edge(edge.clone()).map_err(|e| invalid(e.to_string()))?;
                incident.entry(edge.a.clone()).or_default().push(edge.id.clone());
                if !edge.is_loop() {
                    incident.entry(edge.b.clone()).or_default().push(edge.id.clone());
                }
                edges.insert(edge.id.clone(), edge);
            }
        }
        let bfs = graph.bfs_distances();
        for (v, &d) in &distance {
            if bfs.get(v) != Some(&d) {
                return Err(invalid(format!(
                    "vertex `{v}` is listed at level {d} but lies at distance {:?}",
                    bfs.get(v)
                )));
            }
        }
        Ok(Self { levels, distance, edges, incident })
    }
}

impl Generator for TableFamily {
    fn basepoint(&self) -> VertexId {
        self.levels[0][0].clone()
    }

    fn layer(&self, n: usize) -> Result<Vec<VertexId>> {
        Ok(self.levels.get(n).cloned().unwrap_or_default())
    }

    fn incident(&self, v: &VertexId) -> Result<Vec<Edge>> {
        if !self.distance.contains_key(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        let ids: BTreeSet<&EdgeId> = self.incident.get(v).into_iter().flatten().collect();
        Ok(ids.into_iter().map(|id| self.edges[id].clone()).collect())
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        self.edges.get(id).cloned()
    }

    fn distance(&self, v: &VertexId) -> Option<usize> {
        self.distance.get(v).copied()
    }

    fn connectivity_slack(&self) -> usize {
        self.levels.len()
    }

    fn max_radius(&self) -> Option<usize> {
        Some(self.levels.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = r#"{
        "name": "theta",
        "vertices_at_level": [["p"], ["a", "b"], ["c"]],
        "edges": [
            [],
            [{"id": "pa", "a": "p", "b": "a"}, {"id": "pb", "a": "p", "b": "b"}],
            [{"id": "ac", "a": "a", "b": "c"}, {"id": "bc", "a": "b", "b": "c"}]
        ]
    }"#;

    #[test]
    fn parses_valid_table() {
        let t = TableFamily::from_json(THETA).unwrap();
        assert_eq!(t.max_radius(), Some(2));
        assert_eq!(t.distance(&"c".into()), Some(2));
        assert_eq!(t.incident(&"a".into()).unwrap().len(), 2);
    }

    #[test]
    fn rejects_edge_at_wrong_level() {
        let bad = THETA.replace(
            r#"[{"id": "ac", "a": "a", "b": "c"}, {"id": "bc", "a": "b", "b": "c"}]"#,
            r#"[{"id": "ac", "a": "a", "b": "c"}, {"id": "bc", "a": "b", "b": "c"}, {"id": "ab", "a": "a", "b": "b"}]"#,
        );
        assert!(matches!(TableFamily::from_json(&bad), Err(Error::LocalFiniteness { .. })));
    }

    #[test]
    fn rejects_wrong_distances() {
        let bad = r#"{"vertices_at_level": [["p"], ["a"], ["b"]],
            "edges": [[], [{"id": "pa", "a": "p", "b": "a"}], [{"id": "pb", "a": "p", "b": "b"}]]}"#;
        assert!(matches!(TableFamily::from_json(bad), Err(Error::InvalidParams { .. })));
        let bad = r#"{"vertices_at_level": [["p"], ["a"]], "edges": [[], []]}"#;
        assert!(matches!(TableFamily::from_json(bad), Err(Error::InvalidParams { .. })));
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(matches!(TableFamily::from_json("{"), Err(Error::Malformed(_))));
    }
}
