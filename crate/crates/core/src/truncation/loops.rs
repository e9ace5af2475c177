use serde::{Deserialize, Serialize};

use super::quotient::{truncate, QuotientGraph};
use crate::error::{Error, Result};
use crate::graph::{EdgePath, GraphFamily, Step};

/// One piece of a loop in the end compactification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Segment {
    /// Finitely many edges, starting where the previous segment ended.
    Path(Vec<Step>),
    /// Blocks `start, start + 1, ...` of a ray family, running out to an end.
    RayOut { ray: String, start: usize },
    /// The reverse of `RayOut { ray, start: to }`: comes back from the end
    /// and stops at the start of block `to`.
    RayBack { ray: String, to: usize },
}

/// A loop at the basepoint built from finite paths and rays. A `RayOut`
/// must be followed directly by a `RayBack`; the two meet at an end.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopSpec {
    pub segments: Vec<Segment>,
}

impl LoopSpec {
    pub fn new(segments: Vec<Segment>) -> Self {
        Self { segments }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// Loop concatenation; both loops are based at the same point.
    pub fn concat(&self, other: &LoopSpec) -> LoopSpec {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        LoopSpec { segments }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("loop spec: {e}")))
    }
}

/// Checks that the loop is well formed in the original graph: finite paths
/// are walks, rays start where the previous segment ended, every outward
/// ray is answered by an inward one and the loop closes at the basepoint.
pub fn validate_loop(spec: &LoopSpec, family: &GraphFamily) -> Result<()> {
    let mut at = family.basepoint();
    let mut outward: Option<usize> = None;
    for (i, segment) in spec.segments.iter().enumerate() {
        match segment {
            Segment::Path(steps) => {
                if outward.is_some() {
                    return Err(Error::InvalidLoop(format!(
                        "segment {i} is a finite path following an outward ray"
                    )));
                }
                for (k, step) in steps.iter().enumerate() {
                    let edge = family.edge(&step.edge).ok_or_else(|| Error::UnknownEdge(step.edge.clone()))?;
                    let (from, to) = step.ends(&edge);
                    if from != &at {
                        return Err(Error::InvalidLoop(format!(
                            "segment {i} step {k} (`{step}`) does not start at `{at}`"
                        )));
                    }
                    at = to.clone();
                }
            }
            Segment::RayOut { ray, start } => {
                if outward.is_some() {
                    return Err(Error::InvalidLoop(format!("segment {i} leaves for an end twice")));
                }
                let r = family.ray(ray)?;
                if r.block_start(*start) != at {
                    return Err(Error::InvalidLoop(format!(
                        "segment {i} ray `{ray}` starts at `{}`, not `{at}`",
                        r.block_start(*start)
                    )));
                }
                outward = Some(i);
            }
            Segment::RayBack { ray, to } => {
                if outward.take().is_none() {
                    return Err(Error::InvalidLoop(format!(
                        "segment {i} returns from an end it never reached"
                    )));
                }
                at = family.ray(ray)?.block_start(*to);
            }
        }
    }
    if outward.is_some() {
        return Err(Error::InvalidLoop("loop ends at an end".into()));
    }
    if at != family.basepoint() {
        return Err(Error::InvalidLoop(format!("loop ends at `{at}`, not at the basepoint")));
    }
    Ok(())
}

fn push_surviving(q: &QuotientGraph, steps: impl IntoIterator<Item = Step>, out: &mut Vec<Step>) {
    out.extend(steps.into_iter().filter(|s| q.has_edge(&s.edge)));
}

/// Image of a loop in `Γ_n`: surviving edges in order, vanished edges
/// dropped. Ray segments are only expanded up to the block from which the
/// ray stays outside the ball.
pub fn theta_trace(spec: &LoopSpec, family: &GraphFamily, n: usize) -> Result<EdgePath> {
    validate_loop(spec, family)?;
    let q = truncate(family, n)?;
    trace_in(spec, &q)
}

pub(crate) fn trace_in(spec: &LoopSpec, q: &QuotientGraph) -> Result<EdgePath> {
    let family = q.family();
    let n = q.level;
    let mut steps = Vec::new();
    let mut pending: Option<(usize, usize)> = None;
    for (i, segment) in spec.segments.iter().enumerate() {
        match segment {
            Segment::Path(path) => push_surviving(q, path.iter().cloned(), &mut steps),
            Segment::RayOut { ray, start } => {
                let r = family.ray(ray)?;
                let stop = r.escape_index(n).max(*start);
                for k in *start..stop {
                    push_surviving(q, r.block(k), &mut steps);
                }
                pending = Some((i, q.component_of(&r.block_start(stop))?));
            }
            Segment::RayBack { ray, to } => {
                let r = family.ray(ray)?;
                let stop = r.escape_index(n).max(*to);
                let component = q.component_of(&r.block_start(stop))?;
                if let Some((first, out_component)) = pending.take() {
                    if out_component != component {
                        return Err(Error::SplitAtInfinity { first, second: i, level: n });
                    }
                }
                for k in (*to..stop).rev() {
                    push_surviving(q, r.block(k).iter().rev().map(Step::reversed), &mut steps);
                }
            }
        }
    }
    let path = EdgePath::new(family.basepoint(), steps);
    path.check_closed(&q.graph)
        .map_err(|e| Error::InvalidLoop(format!("image in level {n} is not a closed walk: {e}")))?;
    Ok(path)
}

fn parse_steps(steps: &[&str]) -> Vec<Step> {
    steps.iter().map(|s| s.parse().expect("well-formed built-in step")).collect()
}

fn ray_out(ray: &str) -> Segment {
    Segment::RayOut { ray: ray.into(), start: 0 }
}

fn ray_back(ray: &str) -> Segment {
    Segment::RayBack { ray: ray.into(), to: 0 }
}

/// Names of the built-in loops.
pub fn builtin_loop_names() -> &'static [&'static str] {
    &["trivial", "square", "roundtrip", "nullhomotopic", "figure4"]
}

/// Built-in loops. `trivial` exists on every family; the others live on the
/// ladder:
///
/// * `square`: `+b:0 +r:1 -t:0 -r:0`, the first square once.
/// * `roundtrip`: out along the bottom rail, back along the top rail, then
///   down the first rung.
/// * `nullhomotopic`: out along the bottom rail and back the same way.
/// * `figure4`: out along the bottom rail, back along the top rail, out
///   again through the `squares` ray (every square once clockwise, moving
///   along the top rail between squares), back along the top rail, then
///   down the first rung.
pub fn builtin_loop(name: &str, family: &GraphFamily) -> Result<LoopSpec> {
    let spec = match name {
        "trivial" => LoopSpec::trivial(),
        "square" => LoopSpec::new(vec![Segment::Path(parse_steps(&["+b:0", "+r:1", "-t:0", "-r:0"]))]),
        "roundtrip" => LoopSpec::new(vec![
            ray_out("bottom"),
            ray_back("top"),
            Segment::Path(parse_steps(&["-r:0"])),
        ]),
        "nullhomotopic" => LoopSpec::new(vec![ray_out("bottom"), ray_back("bottom")]),
        "figure4" => LoopSpec::new(vec![
            ray_out("bottom"),
            ray_back("top"),
            ray_out("squares"),
            ray_back("top"),
            Segment::Path(parse_steps(&["-r:0"])),
        ]),
        other => return Err(Error::UnknownLoop(other.to_owned())),
    };
    validate_loop(&spec, family).map_err(|e| match e {
        Error::UnknownEdge(_) | Error::UnknownRay(_) => {
            Error::UnknownLoop(format!("{name} (not defined on family `{}`)", family.name()))
        }
        other => other,
    })?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Params};

    fn ladder() -> GraphFamily {
        build_family("ladder", Params::new()).unwrap()
    }

    fn text(path: &EdgePath) -> Vec<String> {
        path.steps.iter().map(Step::to_string).collect()
    }

    #[test]
    fn roundtrip_at_level_four() {
        let l = ladder();
        let spec = builtin_loop("roundtrip", &l).unwrap();
        let path = theta_trace(&spec, &l, 4).unwrap();
        assert_eq!(
            text(&path),
            ["+b:0", "+b:1", "+b:2", "+b:3", "-t:2", "-t:1", "-t:0", "-r:0"]
        );
    }

    #[test]
    fn square_inside_ball_is_unchanged() {
        let l = ladder();
        let spec = builtin_loop("square", &l).unwrap();
        for n in 2..=8 {
            let path = theta_trace(&spec, &l, n).unwrap();
            assert_eq!(text(&path), ["+b:0", "+r:1", "-t:0", "-r:0"], "level {n}");
        }
    }

    #[test]
    fn figure4_has_zero_signed_counts() {
        let l = ladder();
        let spec = builtin_loop("figure4", &l).unwrap();
        for n in 1..=8 {
            let q = truncate(&l, n).unwrap();
            let path = theta_trace(&spec, &l, n).unwrap();
            let counts = path.signed_counts();
            for e in q.graph.edges() {
                assert_eq!(counts.get(&e.id).copied().unwrap_or(0), 0, "edge {} level {n}", e.id);
            }
            // every retained edge is traversed
            assert_eq!(path.traversal_counts().len(), q.graph.edge_count(), "level {n}");
        }
    }

    #[test]
    fn rejects_explicit_path_after_outward_ray() {
        let l = ladder();
        let spec = LoopSpec::new(vec![ray_out("bottom"), Segment::Path(parse_steps(&["-b:0"]))]);
        assert!(matches!(validate_loop(&spec, &l), Err(Error::InvalidLoop(_))));
    }

    #[test]
    fn rejects_unclosed_loop() {
        let l = ladder();
        let spec = LoopSpec::new(vec![Segment::Path(parse_steps(&["+b:0"]))]);
        assert!(matches!(validate_loop(&spec, &l), Err(Error::InvalidLoop(_))));
        let spec = LoopSpec::new(vec![ray_out("bottom")]);
        assert!(matches!(validate_loop(&spec, &l), Err(Error::InvalidLoop(_))));
    }

    #[test]
    fn line_rays_to_different_ends_split() {
        let line = build_family("line", Params::new()).unwrap();
        let spec = LoopSpec::new(vec![ray_out("right"), ray_back("left")]);
        validate_loop(&spec, &line).unwrap();
        assert_eq!(
            theta_trace(&spec, &line, 3).unwrap_err(),
            Error::SplitAtInfinity { first: 0, second: 1, level: 3 }
        );
        let spec = LoopSpec::new(vec![ray_out("right"), ray_back("right")]);
        let path = theta_trace(&spec, &line, 3).unwrap();
        assert_eq!(text(&path), ["+e:0", "+e:1", "+e:2", "-e:2", "-e:1", "-e:0"]);
    }

    #[test]
    fn ladder_loops_are_unknown_elsewhere() {
        let line = build_family("line", Params::new()).unwrap();
        assert!(matches!(builtin_loop("figure4", &line), Err(Error::UnknownLoop(_))));
        assert!(builtin_loop("trivial", &line).is_ok());
        assert!(matches!(builtin_loop("nope", &line), Err(Error::UnknownLoop(_))));
    }

    #[test]
    fn json_form() {
        let text = r#"{"segments": [{"ray_out": {"ray": "bottom", "start": 0}},
                                    {"ray_back": {"ray": "top", "to": 0}},
                                    {"path": ["-r:0"]}]}"#;
        assert_eq!(LoopSpec::from_json(text).unwrap(), builtin_loop("roundtrip", &ladder()).unwrap());
        assert!(matches!(LoopSpec::from_json(r#"{"segments": [{"jump": 1}]}"#), Err(Error::Malformed(_))));
    }
}
