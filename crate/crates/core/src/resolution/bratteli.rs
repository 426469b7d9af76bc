//! Layered export of a resolution tower.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ResolutionTower;
use crate::graphs::class_color;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliEdge {
    pub name: String,
    pub src: String,
    pub rng: String,
    /// The edge runs from layer `layer + 1` to layer `layer`.
    pub layer: usize,
    /// Index of its class at the range vertex.
    pub class: usize,
    pub color: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliDiagram {
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<BratteliEdge>,
}

impl BratteliDiagram {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Bratteli {\n  rankdir=BT;\n");
        for (j, layer) in self.layers.iter().enumerate() {
            let _ = write!(out, "  {{ rank=same; // layer {j}\n");
            for v in layer {
                let _ = writeln!(out, "    {v:?};");
            }
            out.push_str("  }\n");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {:?} -> {:?} [label={:?}, color={}];", e.src, e.rng, e.name, e.color);
        }
        out.push_str("}\n");
        out
    }
}

/// Layer 0 is the bottom layer of the base; layer `j + 1` is the top layer of level `j`.
pub fn export_bratteli(t: &ResolutionTower) -> BratteliDiagram {
    let mut layers = Vec::new();
    let mut edges = Vec::new();
    for (j, sg) in t.levels().iter().enumerate() {
        let g = sg.graph();
        let (bottom, top) = sg.bipartition().expect("levels are bipartite");
        if j == 0 {
            layers.push(bottom.iter().map(|&v| g.vertex_name(v).to_string()).collect());
        }
        layers.push(top.iter().map(|&v| g.vertex_name(v).to_string()).collect());
        for e in 0..g.edge_count() {
            let class = sg.class_of(e);
            edges.push(BratteliEdge {
                name: g.edge_name(e).to_string(),
                src: g.vertex_name(g.source(e)).to_string(),
                rng: g.vertex_name(g.range(e)).to_string(),
                layer: j,
                class,
                color: class_color(class).to_string(),
            });
        }
    }
    BratteliDiagram { layers, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, fullshift};
    use crate::resolution::{resolve_tower, DEFAULT_SIZE_CAP};

    #[test]
    fn fullshift_layers() {
        let d = export_bratteli(&resolve_tower(&fullshift(), 1, DEFAULT_SIZE_CAP).unwrap());
        let sizes: Vec<usize> = d.layers.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        for v in &d.layers[2] {
            let colors: Vec<&str> = d.edges.iter().filter(|e| &e.src == v).map(|e| e.color.as_str()).collect();
            assert_eq!(colors, vec!["blue", "red"]);
        }
        assert!(d.to_dot().contains("rank=same"));
    }

    #[test]
    fn emn_layers() {
        let d = export_bratteli(&resolve_tower(&emn(2, 3).unwrap(), 1, DEFAULT_SIZE_CAP).unwrap());
        assert_eq!(d.layers.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 6]);
        assert_eq!(export_bratteli(&resolve_tower(&emn(2, 3).unwrap(), 0, 10).unwrap()).layers.len(), 2);
    }
}
