//! Built-in families with closed-form distances.

use super::family::{Generator, RayFamily};
use super::{Edge, Step};
use crate::error::{Error, Result};
use crate::ids::{EdgeId, VertexId};

fn index_of(id: &str, prefix: &str) -> Option<i64> {
    let (p, rest) = id.split_once(':')?;
    if p != prefix {
        return None;
    }
    rest.parse().ok()
}

fn nonneg_index(id: &str, prefix: &str) -> Option<usize> {
    index_of(id, prefix).and_then(|i| usize::try_from(i).ok())
}

/// The one-way infinite ladder based at `b:0`.
///
/// Vertices `b:i` (bottom rail) and `t:i` (top rail) for `i >= 0`. Edges
/// `b:i = b:i -> b:i+1`, `t:i = t:i -> t:i+1` and rungs `r:i = b:i -> t:i`.
/// `d(b:i) = i` and `d(t:i) = i + 1`.
///
/// Rays: `bottom` (`+b:i`), `top` (`+t:i`), and `squares`, whose block `i`
/// starts at `t:i` and runs once clockwise around the square between rungs
/// `i` and `i+1` before moving on to `t:i+1`:
/// `+t:i -r:i+1 -b:i +r:i +t:i`.
#[derive(Debug, Default)]
pub struct Ladder {
    bottom: LadderRay,
    top: LadderRay,
    squares: LadderRay,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
enum LadderRayKind {
    #[default]
    Bottom,
    Top,
    Squares,
}

#[derive(Debug, Default)]
struct LadderRay {
    kind: LadderRayKind,
}

impl Ladder {
    pub fn new() -> Self {
        Self {
            bottom: LadderRay { kind: LadderRayKind::Bottom },
            top: LadderRay { kind: LadderRayKind::Top },
            squares: LadderRay { kind: LadderRayKind::Squares },
        }
    }

    fn b(i: usize) -> VertexId {
        VertexId::new(format!("b:{i}"))
    }

    fn t(i: usize) -> VertexId {
        VertexId::new(format!("t:{i}"))
    }
}

impl Generator for Ladder {
    fn basepoint(&self) -> VertexId {
        Self::b(0)
    }

    fn layer(&self, n: usize) -> Result<Vec<VertexId>> {
        Ok(if n == 0 { vec![Self::b(0)] } else { vec![Self::b(n), Self::t(n - 1)] })
    }

    fn incident(&self, v: &VertexId) -> Result<Vec<Edge>> {
        let (rail, i) = if let Some(i) = nonneg_index(v.as_str(), "b") {
            ("b", i)
        } else if let Some(i) = nonneg_index(v.as_str(), "t") {
            ("t", i)
        } else {
            return Err(Error::UnknownVertex(v.clone()));
        };
        let mut ids = vec![format!("{rail}:{i}"), format!("r:{i}")];
        if i > 0 {
            ids.push(format!("{rail}:{}", i - 1));
        }
        Ok(ids.into_iter().filter_map(|id| self.edge(&EdgeId::new(id))).collect())
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        let s = id.as_str();
        if let Some(i) = nonneg_index(s, "b") {
            Some(Edge::new(s, Self::b(i), Self::b(i + 1)))
        } else if let Some(i) = nonneg_index(s, "t") {
            Some(Edge::new(s, Self::t(i), Self::t(i + 1)))
        } else {
            nonneg_index(s, "r").map(|i| Edge::new(s, Self::b(i), Self::t(i)))
        }
    }

    fn distance(&self, v: &VertexId) -> Option<usize> {
        nonneg_index(v.as_str(), "b").or_else(|| nonneg_index(v.as_str(), "t").map(|i| i + 1))
    }

    fn connectivity_slack(&self) -> usize {
        // b:n and t:n-1 meet through t:n at distance n + 1.
        1
    }

    fn ray(&self, name: &str) -> Option<&dyn RayFamily> {
        match name {
            "bottom" => Some(&self.bottom),
            "top" => Some(&self.top),
            "squares" => Some(&self.squares),
            _ => None,
        }
    }

    fn ray_names(&self) -> Vec<String> {
        vec!["bottom".into(), "top".into(), "squares".into()]
    }
}

impl RayFamily for LadderRay {
    fn block(&self, i: usize) -> Vec<Step> {
        match self.kind {
            LadderRayKind::Bottom => vec![Step::forward(format!("b:{i}"))],
            LadderRayKind::Top => vec![Step::forward(format!("t:{i}"))],
            LadderRayKind::Squares => vec![
                Step::forward(format!("t:{i}")),
                Step::backward(format!("r:{}", i + 1)),
                Step::backward(format!("b:{i}")),
                Step::forward(format!("r:{i}")),
                Step::forward(format!("t:{i}")),
            ],
        }
    }

    fn block_start(&self, i: usize) -> VertexId {
        match self.kind {
            LadderRayKind::Bottom => Ladder::b(i),
            LadderRayKind::Top | LadderRayKind::Squares => Ladder::t(i),
        }
    }

    fn escape_index(&self, n: usize) -> usize {
        match self.kind {
            LadderRayKind::Bottom | LadderRayKind::Squares => n,
            LadderRayKind::Top => n.saturating_sub(1),
        }
    }
}

/// The Cayley graph of the integers: vertices `z:k`, edges `e:k = z:k -> z:k+1`,
/// based at `z:0`. Rays `right` (`+e:i`) and `left` (`-e:-i-1`).
#[derive(Debug, Default)]
pub struct Line {
    right: LineRay,
    left: LineRay,
}

#[derive(Debug, Default)]
struct LineRay {
    leftward: bool,
}

impl Line {
    pub fn new() -> Self {
        Self { right: LineRay { leftward: false }, left: LineRay { leftward: true } }
    }

    fn z(k: i64) -> VertexId {
        VertexId::new(format!("z:{k}"))
    }
}

impl Generator for Line {
    fn basepoint(&self) -> VertexId {
        Self::z(0)
    }

    fn layer(&self, n: usize) -> Result<Vec<VertexId>> {
        let k = n as i64;
        Ok(if n == 0 { vec![Self::z(0)] } else { vec![Self::z(-k), Self::z(k)] })
    }

    fn incident(&self, v: &VertexId) -> Result<Vec<Edge>> {
        let k = index_of(v.as_str(), "z").ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        Ok(vec![
            Edge::new(format!("e:{}", k - 1), Self::z(k - 1), Self::z(k)),
            Edge::new(format!("e:{k}"), Self::z(k), Self::z(k + 1)),
        ])
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        index_of(id.as_str(), "e").map(|k| Edge::new(id.as_str(), Self::z(k), Self::z(k + 1)))
    }

    fn distance(&self, v: &VertexId) -> Option<usize> {
        index_of(v.as_str(), "z").map(|k| k.unsigned_abs() as usize)
    }

    fn connectivity_slack(&self) -> usize {
        0
    }

    fn ray(&self, name: &str) -> Option<&dyn RayFamily> {
        match name {
            "right" => Some(&self.right),
            "left" => Some(&self.left),
            _ => None,
        }
    }

    fn ray_names(&self) -> Vec<String> {
        vec!["left".into(), "right".into()]
    }
}

impl RayFamily for LineRay {
    fn block(&self, i: usize) -> Vec<Step> {
        let i = i as i64;
        if self.leftward {
            vec![Step::backward(format!("e:{}", -i - 1))]
        } else {
            vec![Step::forward(format!("e:{i}"))]
        }
    }

    fn block_start(&self, i: usize) -> VertexId {
        let i = i as i64;
        Line::z(if self.leftward { -i } else { i })
    }

    fn escape_index(&self, n: usize) -> usize {
        n
    }
}

/// The `degree`-regular tree. The root is `n`; the children of the root are
/// `n:0 .. n:degree-1` and every other vertex `v` has children
/// `v:0 .. v:degree-2`. The edge into a non-root vertex `n:x:..:z` is
/// `e:x:..:z`. Ray `leftmost` follows the children numbered 0.
#[derive(Debug)]
pub struct RegularTree {
    degree: usize,
    leftmost: LeftmostRay,
}

#[derive(Debug)]
struct LeftmostRay;

impl RegularTree {
    pub fn new(degree: usize) -> Self {
        Self { degree, leftmost: LeftmostRay }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Child indices of a vertex, validated against the branching rule.
    fn path_of(&self, v: &str) -> Option<Vec<usize>> {
        let mut parts = v.split(':');
        if parts.next()? != "n" {
            return None;
        }
        let path: Vec<usize> = parts.map(|p| p.parse().ok()).collect::<Option<_>>()?;
        let ok = path.iter().enumerate().all(|(depth, &c)| {
            if depth == 0 {
                c < self.degree
            } else {
                c < self.degree - 1
            }
        });
        ok.then_some(path)
    }

    fn vertex(path: &[usize]) -> VertexId {
        let mut s = String::from("n");
        for c in path {
            s.push(':');
            s.push_str(&c.to_string());
        }
        VertexId::new(s)
    }

    fn edge_into(path: &[usize]) -> Edge {
        let child = Self::vertex(path);
        let parent = Self::vertex(&path[..path.len() - 1]);
        let id = format!("e{}", &child.as_str()[1..]);
        Edge::new(id, parent, child)
    }

    fn children(&self, path: &[usize]) -> usize {
        if path.is_empty() {
            self.degree
        } else {
            self.degree - 1
        }
    }
}

impl Generator for RegularTree {
    fn basepoint(&self) -> VertexId {
        VertexId::new("n")
    }

    fn layer(&self, n: usize) -> Result<Vec<VertexId>> {
        let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            paths = paths
                .into_iter()
                .flat_map(|p| {
                    (0..self.children(&p)).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        Ok(paths.iter().map(|p| Self::vertex(p)).collect())
    }

    fn incident(&self, v: &VertexId) -> Result<Vec<Edge>> {
        let path = self.path_of(v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        let mut out = Vec::new();
        if !path.is_empty() {
            out.push(Self::edge_into(&path));
        }
        for c in 0..self.children(&path) {
            let mut child = path.clone();
            child.push(c);
            out.push(Self::edge_into(&child));
        }
        Ok(out)
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        let rest = id.as_str().strip_prefix('e')?;
        let path = self.path_of(&format!("n{rest}"))?;
        (!path.is_empty()).then(|| Self::edge_into(&path))
    }

    fn distance(&self, v: &VertexId) -> Option<usize> {
        self.path_of(v.as_str()).map(|p| p.len())
    }

    fn connectivity_slack(&self) -> usize {
        0
    }

    fn ray(&self, name: &str) -> Option<&dyn RayFamily> {
        (name == "leftmost").then_some(&self.leftmost as &dyn RayFamily)
    }

    fn ray_names(&self) -> Vec<String> {
        vec!["leftmost".into()]
    }
}

impl RayFamily for LeftmostRay {
    fn block(&self, i: usize) -> Vec<Step> {
        let id = format!("e{}", ":0".repeat(i + 1));
        vec![Step::forward(id)]
    }

    fn block_start(&self, i: usize) -> VertexId {
        VertexId::new(format!("n{}", ":0".repeat(i)))
    }

    fn escape_index(&self, n: usize) -> usize {
        n
    }
}
