//! JSON graph specifications and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{DirectedGraph, GraphError, SeparatedGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub rng: String,
}

/// `{"vertices": [...], "edges": [{"name","src","rng"}], "separation": {v: [[e,...],...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

impl GraphSpec {
    pub fn from_graph(g: &DirectedGraph) -> Self {
        GraphSpec {
            vertices: g.vertex_names().to_vec(),
            edges: (0..g.edge_count())
                .map(|e| EdgeSpec {
                    name: g.edge_name(e).to_string(),
                    src: g.vertex_name(g.source(e)).to_string(),
                    rng: g.vertex_name(g.range(e)).to_string(),
                })
                .collect(),
            separation: None,
        }
    }

    pub fn from_separated(sg: &SeparatedGraph) -> Self {
        let g = sg.graph();
        let mut spec = Self::from_graph(g);
        let sep = (0..g.vertex_count())
            .filter(|&v| !sg.classes(v).is_empty())
            .map(|v| {
                let classes =
                    sg.classes(v).iter().map(|x| x.iter().map(|&e| g.edge_name(e).to_string()).collect()).collect();
                (g.vertex_name(v).to_string(), classes)
            })
            .collect();
        spec.separation = Some(sep);
        spec
    }
}

pub fn build_graph(spec: &GraphSpec) -> Result<DirectedGraph, GraphError> {
    let edges: Vec<(&str, &str, &str)> =
        spec.edges.iter().map(|e| (e.name.as_str(), e.src.as_str(), e.rng.as_str())).collect();
    let vertices: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    DirectedGraph::new(&vertices, &edges)
}

/// Builds the separated graph; a missing separation means the trivial one.
/// Vertices absent from a given separation map get the trivial partition.
pub fn build_separated_graph(spec: &GraphSpec) -> Result<SeparatedGraph, GraphError> {
    let g = build_graph(spec)?;
    let Some(sep) = &spec.separation else { return Ok(SeparatedGraph::trivial(g)) };
    let mut classes: Vec<Vec<Vec<usize>>> = (0..g.vertex_count())
        .map(|v| if g.is_source(v) { Vec::new() } else { vec![g.incoming(v).to_vec()] })
        .collect();
    for (vname, cv) in sep {
        let v = g.vertex(vname)?;
        let mut parsed = Vec::with_capacity(cv.len());
        for class in cv {
            let mut ids = Vec::with_capacity(class.len());
            for e in class {
                ids.push(g.edge(e).map_err(|_| GraphError::BadPartition {
                    vertex: vname.clone(),
                    edge: e.clone(),
                    reason: "is not an edge of the graph".into(),
                })?);
            }
            parsed.push(ids);
        }
        classes[v] = parsed;
    }
    SeparatedGraph::new(g, classes)
}

const COLORS: [&str; 8] = ["blue", "red", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"];

/// Class colour by index within `C_v`.
pub(crate) fn class_color(i: usize) -> &'static str {
    COLORS[i % COLORS.len()]
}

/// DOT rendering with separation classes as edge colours.
pub fn to_dot(sg: &SeparatedGraph) -> String {
    let g = sg.graph();
    let mut out = String::from("digraph G {\n");
    for v in g.vertex_names() {
        let _ = writeln!(out, "  {v:?};");
    }
    for e in 0..g.edge_count() {
        let _ = writeln!(
            out,
            "  {:?} -> {:?} [label={:?}, color={}];",
            g.vertex_name(g.source(e)),
            g.vertex_name(g.range(e)),
            g.edge_name(e),
            class_color(sg.class_of(e))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{fullshift, toeplitz};

    #[test]
    fn rose_and_toeplitz_specs() {
        let spec: GraphSpec = serde_json::from_str(
            r#"{"vertices":["v"],"edges":[{"name":"x1","src":"v","rng":"v"},{"name":"x2","src":"v","rng":"v"}]}"#,
        )
        .unwrap();
        let g = build_graph(&spec).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 2));
        assert_eq!(build_graph(&GraphSpec::from_graph(&toeplitz())).unwrap(), toeplitz());
    }

    #[test]
    fn dangling_and_duplicate() {
        let spec: GraphSpec =
            serde_json::from_str(r#"{"vertices":["v"],"edges":[{"name":"x","src":"u","rng":"v"}]}"#).unwrap();
        assert_eq!(
            build_graph(&spec).unwrap_err(),
            GraphError::DanglingEndpoint { edge: "x".into(), vertex: "u".into() }
        );
        let dup: GraphSpec = serde_json::from_str(r#"{"vertices":["v","v"],"edges":[]}"#).unwrap();
        assert_eq!(build_graph(&dup).unwrap_err(), GraphError::DuplicateId("v".into()));
    }

    #[test]
    fn separated_round_trip() {
        let f = fullshift();
        let spec = GraphSpec::from_separated(&f);
        let json = serde_json::to_string(&spec).unwrap();
        let back = build_separated_graph(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(to_dot(&f).contains("color=red"));
    }
}
