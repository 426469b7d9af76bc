//! Named example graphs.

use super::{DirectedGraph, GraphError, SeparatedGraph};

/// Registry of the standard examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardGraph {
    Rose(usize),
    Line(usize),
    Toeplitz,
    Emn { m: usize, n: usize },
    PartialIsometry,
    FullShift,
}

/// A standard example: plain graphs, or separated graphs for the separated examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Plain(DirectedGraph),
    Separated(SeparatedGraph),
}

impl NamedGraph {
    pub fn graph(&self) -> &DirectedGraph {
        match self {
            NamedGraph::Plain(g) => g,
            NamedGraph::Separated(sg) => sg.graph(),
        }
    }

    /// The separated graph, trivially separated for plain examples.
    pub fn separated(&self) -> SeparatedGraph {
        match self {
            NamedGraph::Plain(g) => SeparatedGraph::trivial(g.clone()),
            NamedGraph::Separated(sg) => sg.clone(),
        }
    }

    pub fn is_separated(&self) -> bool {
        matches!(self, NamedGraph::Separated(_))
    }
}

pub fn standard_graph(name: StandardGraph) -> Result<NamedGraph, GraphError> {
    Ok(match name {
        StandardGraph::Rose(n) => NamedGraph::Plain(rose(n)?),
        StandardGraph::Line(n) => NamedGraph::Plain(line(n)?),
        StandardGraph::Toeplitz => NamedGraph::Plain(toeplitz()),
        StandardGraph::Emn { m, n } => NamedGraph::Separated(emn(m, n)?),
        StandardGraph::PartialIsometry => NamedGraph::Separated(partial_isometry()),
        StandardGraph::FullShift => NamedGraph::Separated(fullshift()),
    })
}

/// One vertex `v` with loops `x1..xn`.
pub fn rose(n: usize) -> Result<DirectedGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameter("rose needs n >= 1".into()));
    }
    let edges: Vec<(String, String, String)> = (1..=n).map(|i| (format!("x{i}"), "v".into(), "v".into())).collect();
    DirectedGraph::new(&["v".to_string()], &edges)
}

/// Vertices `v1..vn`, edges `e_i` with range `v_i` and source `v_{i+1}`.
pub fn line(n: usize) -> Result<DirectedGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameter("line needs n >= 1".into()));
    }
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("e{i}"), format!("v{}", i + 1), format!("v{i}"))).collect();
    DirectedGraph::new(&vertices, &edges)
}

/// `u` with a loop `e`, and `f` from `v` to `u`.
pub fn toeplitz() -> DirectedGraph {
    DirectedGraph::new(&["u", "v"], &[("e", "u", "u"), ("f", "v", "u")]).expect("static graph")
}

/// `alpha_1..alpha_n` and `beta_1..beta_m` from `w` to `v`, separated as `{X, Y}`.
pub fn emn(m: usize, n: usize) -> Result<SeparatedGraph, GraphError> {
    if m == 0 || m > n {
        return Err(GraphError::BadParameter(format!("emn needs 1 <= m <= n, got m={m}, n={n}")));
    }
    let mut edges: Vec<(String, String, String)> =
        (1..=n).map(|i| (format!("alpha_{i}"), "w".into(), "v".into())).collect();
    edges.extend((1..=m).map(|j| (format!("beta_{j}"), "w".into(), "v".into())));
    let g = DirectedGraph::new(&["v".to_string(), "w".to_string()], &edges)?;
    let x: Vec<usize> = (0..n).collect();
    let y: Vec<usize> = (n..n + m).collect();
    SeparatedGraph::new(g, vec![vec![x, y], vec![]])
}

/// The separated graph of a partial isometry.
pub fn partial_isometry() -> SeparatedGraph {
    let g = DirectedGraph::new(
        &["v", "w1", "w2", "w3"],
        &[("alpha_1", "w1", "v"), ("alpha_2", "w2", "v"), ("beta_1", "w1", "v"), ("beta_2", "w3", "v")],
    )
    .expect("static graph");
    SeparatedGraph::new(g, vec![vec![vec![0, 1], vec![2, 3]], vec![], vec![], vec![]]).expect("static partition")
}

/// The full shift on two letters: blue `alpha_i` and red `beta_i` from `i` to `v`.
pub fn fullshift() -> SeparatedGraph {
    let g = DirectedGraph::new(
        &["v", "0", "1"],
        &[("alpha_0", "0", "v"), ("alpha_1", "1", "v"), ("beta_0", "0", "v"), ("beta_1", "1", "v")],
    )
    .expect("static graph");
    SeparatedGraph::new(g, vec![vec![vec![0, 1], vec![2, 3]], vec![], vec![]]).expect("static partition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let r = rose(3).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (1, 3));
        let e = emn(2, 3).unwrap();
        let sizes: Vec<usize> = e.classes(0).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 2]);
        let f = fullshift();
        assert_eq!(f.graph().vertex_names(), &["v", "0", "1"]);
        assert_eq!(f.classes(0).len(), 2);
        assert!(matches!(emn(3, 2), Err(GraphError::BadParameter(_))));
        assert!(matches!(rose(0), Err(GraphError::BadParameter(_))));
        assert!(standard_graph(StandardGraph::PartialIsometry).unwrap().is_separated());
    }
}
