use std::collections::BTreeMap;

use serde::Serialize;

use super::quotient::{truncate, QuotientGraph};
use crate::error::{Error, Result};
use crate::graph::{EdgePath, GraphFamily, Step};
use crate::ids::{EdgeId, VertexId};

/// Where an edge of the source graph goes: to an edge, or collapsed to a
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeImage {
    Edge(EdgeId),
    Vertex(VertexId),
}

/// A cellular map `Γ_m -> Γ_n`. Surviving edges keep their orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMap {
    pub source_level: usize,
    pub target_level: usize,
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, EdgeImage>,
}

impl GraphMap {
    pub fn vertex(&self, v: &VertexId) -> Result<&VertexId> {
        self.vertices.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn edge(&self, e: &EdgeId) -> Result<&EdgeImage> {
        self.edges.get(e).ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    /// Image of a walk, with collapsed edges erased.
    pub fn apply_to_path(&self, path: &EdgePath) -> Result<EdgePath> {
        let mut steps = Vec::new();
        for step in &path.steps {
            if let EdgeImage::Edge(e) = self.edge(&step.edge)? {
                steps.push(Step { edge: e.clone(), forward: step.forward });
            }
        }
        Ok(EdgePath { start: self.vertex(&path.start)?.clone(), steps })
    }

    /// `self ∘ first`, where `first: Γ_l -> Γ_m` and `self: Γ_m -> Γ_n`.
    pub fn after(&self, first: &GraphMap) -> Result<GraphMap> {
        if first.target_level != self.source_level {
            return Err(Error::Inconsistent(format!(
                "cannot compose a map into level {} with a map from level {}",
                first.target_level, self.source_level
            )));
        }
        let vertices = first
            .vertices
            .iter()
            .map(|(v, w)| Ok((v.clone(), self.vertex(w)?.clone())))
            .collect::<Result<_>>()?;
        let edges = first
            .edges
            .iter()
            .map(|(e, img)| {
                let img = match img {
                    EdgeImage::Edge(f) => self.edge(f)?.clone(),
                    EdgeImage::Vertex(w) => EdgeImage::Vertex(self.vertex(w)?.clone()),
                };
                Ok((e.clone(), img))
            })
            .collect::<Result<_>>()?;
        Ok(GraphMap {
            source_level: first.source_level,
            target_level: self.target_level,
            vertices,
            edges,
        })
    }

    /// Checks that edge images are compatible with vertex images.
    pub fn check(&self, source: &QuotientGraph, target: &QuotientGraph) -> Result<()> {
        for e in source.graph.edges() {
            let (a, b) = (self.vertex(&e.a)?, self.vertex(&e.b)?);
            match self.edge(&e.id)? {
                EdgeImage::Edge(f) => {
                    let img = target.graph.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
                    if (&img.a, &img.b) != (a, b) {
                        return Err(Error::Inconsistent(format!("edge `{}` maps off its endpoints", e.id)));
                    }
                }
                EdgeImage::Vertex(w) => {
                    if a != w || b != w {
                        return Err(Error::Inconsistent(format!("edge `{}` collapses inconsistently", e.id)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The projection `ρ^m_n: Γ_m -> Γ_n` for `m >= n >= 1`.
pub fn rho_map(family: &GraphFamily, m: usize, n: usize) -> Result<GraphMap> {
    if m < n {
        return Err(Error::LevelOrder { m, n });
    }
    let source = truncate(family, m)?;
    let target = truncate(family, n)?;
    rho_between(&source, &target)
}

pub(crate) fn rho_between(source: &QuotientGraph, target: &QuotientGraph) -> Result<GraphMap> {
    let (m, n) = (source.level, target.level);
    if m < n {
        return Err(Error::LevelOrder { m, n });
    }
    let mut vertices = BTreeMap::new();
    for v in source.graph.vertices() {
        let img = match source.collapsed.iter().position(|c| c == v) {
            Some(i) => target.image_of(&source.frontiers[i][0])?,
            None => target.image_of(v)?,
        };
        vertices.insert(v.clone(), img);
    }
    let mut edges = BTreeMap::new();
    for e in source.graph.edges() {
        let img = if target.has_edge(&e.id) {
            EdgeImage::Edge(e.id.clone())
        } else {
            EdgeImage::Vertex(vertices[&e.a].clone())
        };
        edges.insert(e.id.clone(), img);
    }
    let map = GraphMap { source_level: m, target_level: n, vertices, edges };
    map.check(source, target)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Params};

    #[test]
    fn equal_levels_give_identity() {
        let l = build_family("ladder", Params::new()).unwrap();
        let map = rho_map(&l, 4, 4).unwrap();
        assert!(map.vertices.iter().all(|(v, w)| v == w));
        assert!(map.edges.iter().all(|(e, img)| img == &EdgeImage::Edge(e.clone())));
    }

    #[test]
    fn ladder_five_to_three() {
        let l = build_family("ladder", Params::new()).unwrap();
        let map = rho_map(&l, 5, 3).unwrap();
        assert_eq!(map.edge(&"b:4".into()).unwrap(), &EdgeImage::Vertex("C:3:0".into()));
        assert_eq!(map.edge(&"b:2".into()).unwrap(), &EdgeImage::Edge("b:2".into()));
        assert_eq!(map.vertex(&"C:5:0".into()).unwrap(), &VertexId::new("C:3:0"));
        assert_eq!(map.vertex(&"t:1".into()).unwrap(), &VertexId::new("t:1"));
        assert_eq!(map.vertex(&"t:3".into()).unwrap(), &VertexId::new("C:3:0"));
    }

    #[test]
    fn line_collapsed_vertices_stay_apart() {
        let line = build_family("line", Params::new()).unwrap();
        let map = rho_map(&line, 4, 2).unwrap();
        assert_eq!(map.vertex(&"C:4:0".into()).unwrap(), &VertexId::new("C:2:0"));
        assert_eq!(map.vertex(&"C:4:1".into()).unwrap(), &VertexId::new("C:2:1"));
    }

    #[test]
    fn wrong_order_is_rejected() {
        let line = build_family("line", Params::new()).unwrap();
        assert_eq!(rho_map(&line, 2, 4).unwrap_err(), Error::LevelOrder { m: 2, n: 4 });
    }
}
