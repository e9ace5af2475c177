use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builtin::{Ladder, Line, RegularTree};
use super::table::TableFamily;
use super::{Edge, FiniteGraph, Step};
use crate::error::{Error, Result};
use crate::ids::{EdgeId, VertexId};

/// Radius up to which `build_family` checks the generator.
const VALIDATION_RADIUS: usize = 4;

/// A rule producing an infinite, locally finite, pointed graph.
///
/// Implementations must be consistent: `distance` is the graph distance from
/// the basepoint, `layer(n)` lists exactly the vertices at distance `n`, and
/// `incident` lists every edge at a vertex, independent of any radius.
pub trait Generator: fmt::Debug + Send + Sync {
    fn basepoint(&self) -> VertexId;

    /// Vertices at distance exactly `n`, sorted.
    fn layer(&self, n: usize) -> Result<Vec<VertexId>>;

    /// Every edge incident to `v`.
    fn incident(&self, v: &VertexId) -> Result<Vec<Edge>>;

    fn edge(&self, id: &EdgeId) -> Option<Edge>;

    fn distance(&self, v: &VertexId) -> Option<usize>;

    /// Components of the subgraph induced on distance `>= n` are already
    /// connected inside the ball of radius `n + slack`.
    fn connectivity_slack(&self) -> usize;

    /// Largest radius the generator can produce, for finite tables.
    fn max_radius(&self) -> Option<usize> {
        None
    }

    fn ray(&self, _name: &str) -> Option<&dyn RayFamily> {
        None
    }

    fn ray_names(&self) -> Vec<String> {
        Vec::new()
    }
}

/// An indexed family of edge blocks whose concatenation is a proper ray.
/// Block `i` starts at `block_start(i)` and ends at `block_start(i + 1)`.
pub trait RayFamily: fmt::Debug + Send + Sync {
    fn block(&self, index: usize) -> Vec<Step>;

    fn block_start(&self, index: usize) -> VertexId;

    /// Smallest index from which every block lies at distance `>= n`.
    fn escape_index(&self, n: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Str(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Str(s) => f.write_str(s),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// A named, parameterised graph generator.
#[derive(Clone)]
pub struct GraphFamily {
    name: String,
    params: Params,
    generator: Arc<dyn Generator>,
}

impl fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphFamily")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl GraphFamily {
    /// Wraps a generator after checking it up to a small radius.
    pub fn from_generator(
        name: impl Into<String>,
        params: Params,
        generator: Arc<dyn Generator>,
    ) -> Result<Self> {
        let family = Self { name: name.into(), params, generator };
        family.validate(VALIDATION_RADIUS)?;
        Ok(family)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn generator(&self) -> &dyn Generator {
        self.generator.as_ref()
    }

    pub fn basepoint(&self) -> VertexId {
        self.generator.basepoint()
    }

    pub fn distance(&self, v: &VertexId) -> Option<usize> {
        self.generator.distance(v)
    }

    pub fn edge(&self, id: &EdgeId) -> Option<Edge> {
        self.generator.edge(id)
    }

    pub fn ray(&self, name: &str) -> Result<&dyn RayFamily> {
        self.generator.ray(name).ok_or_else(|| Error::UnknownRay(name.to_owned()))
    }

    fn check_radius(&self, radius: usize) -> Result<()> {
        match self.generator.max_radius() {
            Some(max) if radius > max => Err(Error::OutsideGeneratedRegion {
                family: self.name.clone(),
                radius,
                max,
            }),
            _ => Ok(()),
        }
    }

    /// Radius of the ball in which the components beyond radius `n` are
    /// certainly connected.
    pub(crate) fn certification_radius(&self, n: usize) -> usize {
        let wanted = n + self.generator.connectivity_slack();
        match self.generator.max_radius() {
            Some(max) => wanted.min(max).max(n),
            None => wanted,
        }
    }

    fn validate(&self, radius: usize) -> Result<()> {
        let radius = match self.generator.max_radius() {
            Some(max) => radius.min(max),
            None => radius,
        };
        let fail = |reason: String| Error::LocalFiniteness {
            family: self.name.clone(),
            radius,
            reason,
        };
        let p = self.generator.basepoint();
        if self.generator.layer(0)? != vec![p.clone()] {
            return Err(fail("layer 0 must be exactly the basepoint".into()));
        }
        for n in 0..=radius {
            for v in self.generator.layer(n)? {
                if self.generator.distance(&v) != Some(n) {
                    return Err(fail(format!("vertex `{v}` listed at layer {n}")));
                }
                let edges = self.generator.incident(&v)?;
                let mut ids = BTreeSet::new();
                for e in &edges {
                    let Some(w) = e.other(&v) else {
                        return Err(fail(format!("edge `{}` listed at `{v}` is not incident", e.id)));
                    };
                    if !ids.insert(e.id.clone()) {
                        return Err(fail(format!("edge `{}` listed twice at `{v}`", e.id)));
                    }
                    match self.generator.distance(w) {
                        Some(d) if d.abs_diff(n) <= 1 => {}
                        _ => return Err(fail(format!("edge `{}` jumps layers", e.id))),
                    }
                    if self.generator.edge(&e.id).as_ref() != Some(e) {
                        return Err(fail(format!("edge `{}` lookup disagrees", e.id)));
                    }
                }
                if n > 0
                    && !edges.iter().any(|e| {
                        e.other(&v).and_then(|w| self.generator.distance(w)) == Some(n - 1)
                    })
                {
                    return Err(fail(format!("vertex `{v}` has no neighbour one layer closer")));
                }
            }
        }
        Ok(())
    }
}

fn int_param(family: &str, params: &Params, key: &str) -> Result<Option<i64>> {
    match params.get(key) {
        None => Ok(None),
        Some(ParamValue::Int(i)) => Ok(Some(*i)),
        Some(ParamValue::Str(s)) => s.parse().map(Some).map_err(|_| Error::InvalidParams {
            family: family.to_owned(),
            reason: format!("`{key}` must be an integer, got `{s}`"),
        }),
    }
}

fn reject_unknown(family: &str, params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::InvalidParams {
            family: family.to_owned(),
            reason: format!("unknown parameter `{k}`"),
        }),
        None => Ok(()),
    }
}

/// Builds one of the registered families: `ladder`, `line`, `tree`
/// (param `degree`, default 3) or `table` (param `json` with an inline
/// table, or `path` to a table file).
pub fn build_family(name: &str, params: Params) -> Result<GraphFamily> {
    let generator: Arc<dyn Generator> = match name {
        "ladder" => {
            reject_unknown(name, &params, &[])?;
            Arc::new(Ladder::new())
        }
        "line" => {
            reject_unknown(name, &params, &[])?;
            Arc::new(Line::new())
        }
        "tree" => {
            reject_unknown(name, &params, &["degree"])?;
            let degree = int_param(name, &params, "degree")?.unwrap_or(3);
            if degree < 3 {
                return Err(Error::InvalidParams {
                    family: name.to_owned(),
                    reason: format!("degree must be at least 3, got {degree}"),
                });
            }
            Arc::new(RegularTree::new(degree as usize))
        }
        "table" => {
            reject_unknown(name, &params, &["json", "path"])?;
            let text = match (params.get("json"), params.get("path")) {
                (Some(ParamValue::Str(json)), None) => json.clone(),
                (None, Some(ParamValue::Str(path))) => std::fs::read_to_string(path)
                    .map_err(|e| Error::Malformed(format!("cannot read `{path}`: {e}")))?,
                _ => {
                    return Err(Error::InvalidParams {
                        family: name.to_owned(),
                        reason: "exactly one of `json` or `path` is required".into(),
                    })
                }
            };
            Arc::new(TableFamily::from_json(&text)?)
        }
        other => return Err(Error::UnknownFamily(other.to_owned())),
    };
    GraphFamily::from_generator(name, params, generator)
}

/// The subgraph induced on the vertices at distance `<= n` from the
/// basepoint.
pub fn ball(family: &GraphFamily, n: usize) -> Result<FiniteGraph> {
    family.check_radius(n)?;
    let gen = family.generator();
    let mut g = FiniteGraph::new(gen.basepoint());
    let mut layers = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let layer = gen.layer(r)?;
        for v in &layer {
            g.add_vertex(v.clone());
        }
        layers.push(layer);
    }
    for layer in &layers {
        for v in layer {
            for e in gen.incident(v)? {
                if g.edge(&e.id).is_none() && g.has_vertex(&e.a) && g.has_vertex(&e.b) {
                    g.add_edge(e)?;
                }
            }
        }
    }
    Ok(g)
}

/// Components of the subgraph induced on distance `>= n`, computed inside
/// the ball of the given radius and listed by smallest member.
pub(crate) fn components_beyond(
    family: &GraphFamily,
    n: usize,
    radius: usize,
) -> Result<Vec<BTreeSet<VertexId>>> {
    let g = ball(family, radius)?;
    let far = |v: &VertexId| family.distance(v).is_some_and(|d| d >= n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in g.vertices().filter(|v| far(v)) {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start.clone());
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for (w, _) in g.neighbors(&v) {
                if far(w) && seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
            comp.insert(v);
        }
        out.push(comp);
    }
    Ok(out)
}

/// A component of the complement of the open ball, seen within a horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementComponent {
    pub id: usize,
    /// Members at distance exactly `n`.
    pub frontier: Vec<VertexId>,
    /// Number of members within the horizon.
    pub size: usize,
    /// The component still reaches the horizon. Advisory only.
    pub infinite: bool,
}

pub fn complement_components(
    family: &GraphFamily,
    n: usize,
    horizon: usize,
) -> Result<Vec<ComplementComponent>> {
    if horizon <= n {
        return Err(Error::HorizonTooSmall { radius: n, horizon });
    }
    let comps = components_beyond(family, n, horizon)?;
    Ok(comps
        .into_iter()
        .enumerate()
        .map(|(id, comp)| {
            let frontier = comp.iter().filter(|v| family.distance(v) == Some(n)).cloned().collect();
            let infinite = comp.iter().any(|v| family.distance(v) == Some(horizon));
            ComplementComponent { id, frontier, size: comp.len(), infinite }
        })
        .collect())
}
