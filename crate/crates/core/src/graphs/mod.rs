//! Finite directed graphs, separated graphs and their structural predicates.
//!
//! Paths compose right to left: a path `e1 e2 ... en` requires
//! `s(e_i) == r(e_{i+1})`, its range is `r(e1)` and its source is `s(en)`.
//! A vertex is a source when it receives no edge.

mod spec;
mod standard;

use std::collections::{BTreeSet, HashMap, VecDeque};

pub(crate) use spec::class_color;
pub use spec::{build_graph, build_separated_graph, to_dot, EdgeSpec, GraphSpec};
pub use standard::{emn, fullshift, line, partial_isometry, rose, standard_graph, toeplitz, NamedGraph, StandardGraph};

use crate::linalg::Matrix;
use crate::{IntMatrix, Integer};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate identifier {0:?}")]
    DuplicateId(String),
    #[error("edge {edge:?} refers to missing vertex {vertex:?}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad partition at vertex {vertex:?}: edge {edge:?} {reason}")]
    BadPartition { vertex: String, edge: String, reason: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("graph is not bipartite")]
    NotBipartite,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Edge {
    name: String,
    src: usize,
    rng: usize,
}

/// Finite directed graph with ordered, uniquely named vertices and edges.
#[derive(Clone, Debug)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn new<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self, GraphError>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.as_ref().to_string(), i).is_some() {
                return Err(GraphError::DuplicateId(v.as_ref().to_string()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, (name, src, rng)) in edges.iter().enumerate() {
            let name = name.as_ref().to_string();
            if edge_index.contains_key(&name) {
                return Err(GraphError::DuplicateId(name));
            }
            let lookup = |v: &V| {
                vertex_index.get(v.as_ref()).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: name.clone(),
                    vertex: v.as_ref().to_string(),
                })
            };
            let (s, r) = (lookup(src)?, lookup(rng)?);
            edge_index.insert(name.clone(), i);
            out.push(Edge { name, src: s, rng: r });
        }
        Ok(Self::assemble(vertices.iter().map(|v| v.as_ref().to_string()).collect(), out, vertex_index, edge_index))
    }

    fn assemble(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, usize>,
        edge_index: HashMap<String, usize>,
    ) -> Self {
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incoming[e.rng].push(i);
            outgoing[e.src].push(i);
        }
        DirectedGraph { vertices, edges, vertex_index, edge_index, incoming, outgoing }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_index.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<usize, GraphError> {
        self.edge_index.get(name).copied().ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].rng
    }

    /// `r^{-1}(v)` in edge order.
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// `s^{-1}(v)` in edge order.
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    /// Receives no edge.
    pub fn is_source(&self, v: usize) -> bool {
        self.incoming[v].is_empty()
    }

    /// Emits no edge.
    pub fn is_sink(&self, v: usize) -> bool {
        self.outgoing[v].is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn non_sources(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    /// `A(v, w) = #{e : r(e) = v, s(e) = w}`.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut counts = vec![0i64; n * n];
        for e in &self.edges {
            counts[e.rng * n + e.src] += 1;
        }
        Matrix::from_fn(n, n, |r, c| Integer::from(counts[r * n + c]))
    }

    /// Adjacency matrix with the rows of sources removed.
    pub fn reduced_adjacency(&self) -> IntMatrix {
        let a = self.adjacency_matrix();
        let rows = self.non_sources();
        Matrix::from_fn(rows.len(), self.vertex_count(), |r, c| a.get(rows[r], c).clone())
    }

    /// All `w` with a path from `v` to `w` (source `v`, range `w`), including `v`.
    pub fn reachable(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &e in self.outgoing(x) {
                let y = self.edges[e].rng;
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether `v` lies on a cycle.
    pub fn on_cycle(&self, v: usize) -> bool {
        self.outgoing(v).iter().any(|&e| self.reachable(self.range(e)).contains(&v))
    }

    /// Validates a path given as edge indices `e1 ... en` with `s(e_i) = r(e_{i+1})`.
    pub fn check_path(&self, edges: &[usize]) -> Result<(), GraphError> {
        if let Some(&e) = edges.iter().find(|&&e| e >= self.edge_count()) {
            return Err(GraphError::InvalidPath(format!("edge index {e} out of range")));
        }
        for (i, w) in edges.windows(2).enumerate() {
            if self.source(w[0]) != self.range(w[1]) {
                return Err(GraphError::InvalidPath(format!(
                    "s({}) != r({}) at position {}",
                    self.edge_name(w[0]),
                    self.edge_name(w[1]),
                    i
                )));
            }
        }
        Ok(())
    }
}

/// Finite path: a vertex for trivial paths, else composable edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(usize),
    Edges(Vec<usize>),
}

impl Path {
    pub fn new(g: &DirectedGraph, edges: Vec<usize>) -> Result<Path, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::InvalidPath("empty edge list; use a trivial path".into()));
        }
        g.check_path(&edges)?;
        Ok(Path::Edges(edges))
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> &[usize] {
        match self {
            Path::Trivial(_) => &[],
            Path::Edges(e) => e,
        }
    }

    pub fn range(&self, g: &DirectedGraph) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Edges(e) => g.range(e[0]),
        }
    }

    pub fn source(&self, g: &DirectedGraph) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Edges(e) => g.source(*e.last().expect("nonempty")),
        }
    }
}

/// Graph with a partition `C_v` of every `r^{-1}(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedGraph {
    graph: DirectedGraph,
    classes: Vec<Vec<Vec<usize>>>,
}

impl SeparatedGraph {
    /// Validates that `classes[v]` partitions `r^{-1}(v)` into nonempty blocks.
    pub fn new(graph: DirectedGraph, classes: Vec<Vec<Vec<usize>>>) -> Result<Self, GraphError> {
        if classes.len() != graph.vertex_count() {
            return Err(GraphError::BadParameter(format!(
                "separation lists {} vertices, graph has {}",
                classes.len(),
                graph.vertex_count()
            )));
        }
        for (v, cv) in classes.iter().enumerate() {
            let vname = graph.vertex_name(v).to_string();
            let mut seen = BTreeSet::new();
            for class in cv {
                if class.is_empty() {
                    return Err(GraphError::BadPartition {
                        vertex: vname,
                        edge: String::new(),
                        reason: "empty class".into(),
                    });
                }
                for &e in class {
                    let bad = |reason: &str| GraphError::BadPartition {
                        vertex: vname.clone(),
                        edge: graph.edges.get(e).map_or_else(|| format!("#{e}"), |x| x.name.clone()),
                        reason: reason.into(),
                    };
                    if e >= graph.edge_count() || graph.range(e) != v {
                        return Err(bad("does not end at this vertex"));
                    }
                    if !seen.insert(e) {
                        return Err(bad("appears in two classes"));
                    }
                }
            }
            if let Some(&e) = graph.incoming(v).iter().find(|e| !seen.contains(e)) {
                return Err(GraphError::BadPartition {
                    vertex: vname,
                    edge: graph.edge_name(e).to_string(),
                    reason: "is not covered by any class".into(),
                });
            }
        }
        Ok(SeparatedGraph { graph, classes })
    }

    /// `C_v = {r^{-1}(v)}` for non-sources.
    pub fn trivial(graph: DirectedGraph) -> Self {
        let classes = (0..graph.vertex_count())
            .map(|v| if graph.is_source(v) { Vec::new() } else { vec![graph.incoming(v).to_vec()] })
            .collect();
        SeparatedGraph { graph, classes }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    /// `C_v` as lists of edge indices.
    pub fn classes(&self, v: usize) -> &[Vec<usize>] {
        &self.classes[v]
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Index of the class containing edge `e` within `C_{r(e)}`.
    pub fn class_of(&self, e: usize) -> usize {
        let v = self.graph.range(e);
        self.classes[v].iter().position(|c| c.contains(&e)).expect("partition covers r^{-1}(v)")
    }

    /// `(E^{0,0}, E^{0,1}) = (r(E^1), s(E^1))` when these are disjoint and cover `E^0`.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let g = &self.graph;
        let bottom: Vec<usize> = (0..g.vertex_count()).filter(|&v| !g.incoming(v).is_empty()).collect();
        let top: Vec<usize> = (0..g.vertex_count()).filter(|&v| !g.outgoing(v).is_empty()).collect();
        let disjoint = bottom.iter().all(|v| !top.contains(v));
        (disjoint && bottom.len() + top.len() == g.vertex_count()).then_some((bottom, top))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// (TT1) `|C_v| >= 2` on `E^{0,0}`, (TT2) every class has at least two edges,
    /// (TT3) `|s^{-1}(w)| >= 2` on `E^{0,1}`. False when not bipartite.
    pub fn satisfies_three_twos(&self) -> bool {
        let Some((bottom, top)) = self.bipartition() else { return false };
        bottom.iter().all(|&v| self.classes[v].len() >= 2)
            && self.classes.iter().flatten().all(|x| x.len() >= 2)
            && top.iter().all(|&w| self.graph.outgoing(w).len() >= 2)
    }

    /// The bipartite double: vertex copies `v_0, v_1`, edges `h_v: v_1 -> v_0` and
    /// `e_0: s(e)_1 -> r(e)_0`, with `C_{v_0} = {{e_0 : e in r^{-1}(v)}, {h_v}}` per
    /// original class (the edge classes omitted for sources) and `C_{v_1}` empty.
    pub fn bipartite_double(&self) -> SeparatedGraph {
        let g = &self.graph;
        let n = g.vertex_count();
        let mut vertices = Vec::with_capacity(2 * n);
        for v in g.vertex_names() {
            vertices.push(format!("{v}_0"));
        }
        for v in g.vertex_names() {
            vertices.push(format!("{v}_1"));
        }
        let mut edges = Vec::with_capacity(n + g.edge_count());
        for v in 0..n {
            edges.push((format!("h_{}", g.vertex_name(v)), vertices[n + v].clone(), vertices[v].clone()));
        }
        for e in 0..g.edge_count() {
            edges.push((
                format!("{}_0", g.edge_name(e)),
                vertices[n + g.source(e)].clone(),
                vertices[g.range(e)].clone(),
            ));
        }
        let graph = DirectedGraph::new(&vertices, &edges).expect("doubling preserves uniqueness");
        let mut classes = vec![Vec::new(); 2 * n];
        for v in 0..n {
            let mut cv: Vec<Vec<usize>> = self.classes[v].iter().map(|x| x.iter().map(|&e| n + e).collect()).collect();
            cv.push(vec![v]);
            classes[v] = cv;
        }
        SeparatedGraph::new(graph, classes).expect("doubling yields a partition")
    }
}

/// True iff every cycle has a vertex receiving at least two edges: the subgraph of
/// in-degree-one vertices with their unique incoming edges must be acyclic.
pub fn every_cycle_has_entry(g: &DirectedGraph) -> bool {
    let n = g.vertex_count();
    // In that subgraph each vertex has at most one predecessor, so walking
    // predecessors from any vertex either terminates or closes a cycle.
    let pred: Vec<Option<usize>> =
        (0..n).map(|v| if g.incoming(v).len() == 1 { Some(g.source(g.incoming(v)[0])) } else { None }).collect();
    let mut state = vec![0u8; n];
    for start in 0..n {
        let mut trail = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            match state[v] {
                2 => break,
                1 => return false,
                _ => {}
            }
            state[v] = 1;
            trail.push(v);
            cur = pred[v];
        }
        for v in trail {
            state[v] = 2;
        }
    }
    true
}

/// Finite-graph cofinality: every vertex on a cycle and every source reaches all vertices.
pub fn is_cofinal(g: &DirectedGraph) -> bool {
    let n = g.vertex_count();
    (0..n).filter(|&v| g.is_source(v) || g.on_cycle(v)).all(|v| g.reachable(v).len() == n)
}

/// Simplicity criterion for the graph algebra.
pub fn is_simple_graph_algebra(g: &DirectedGraph) -> bool {
    every_cycle_has_entry(g) && is_cofinal(g)
}

/// Name-based wrapper around [`DirectedGraph::reachable`].
pub fn reachable_set(g: &DirectedGraph, v: &str) -> Result<BTreeSet<String>, GraphError> {
    let i = g.vertex(v)?;
    Ok(g.reachable(i).into_iter().map(|w| g.vertex_name(w).to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toeplitz_reachability() {
        let g = toeplitz();
        assert_eq!(reachable_set(&g, "u").unwrap(), BTreeSet::from(["u".to_string()]));
        assert_eq!(reachable_set(&g, "v").unwrap(), BTreeSet::from(["u".to_string(), "v".to_string()]));
        assert!(matches!(reachable_set(&g, "q"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn adjacency_conventions() {
        let l = line(3).unwrap();
        let a = l.adjacency_matrix();
        assert_eq!(*a.get(0, 1), Integer::from(1));
        assert_eq!(*a.get(1, 2), Integer::from(1));
        assert_eq!(a.to_rows().iter().flatten().filter(|x| **x != Integer::from(0)).count(), 2);
        let red = l.reduced_adjacency();
        assert_eq!(red.rows(), 2);
        let t = toeplitz();
        assert_eq!(t.adjacency_matrix().to_rows(), vec![vec![Integer::from(1), Integer::from(1)], vec![Integer::from(0), Integer::from(0)]]);
        assert_eq!(t.reduced_adjacency().rows(), 1);
        assert_eq!(rose(4).unwrap().adjacency_matrix().to_rows(), vec![vec![Integer::from(4)]]);
    }

    #[test]
    fn cycle_entries_and_cofinality() {
        assert!(!every_cycle_has_entry(&rose(1).unwrap()));
        assert!(every_cycle_has_entry(&rose(2).unwrap()));
        assert!(every_cycle_has_entry(&toeplitz()));
        assert!(!is_cofinal(&toeplitz()));
        for n in 1..5 {
            assert!(is_cofinal(&line(n).unwrap()));
            assert!(is_cofinal(&rose(n).unwrap()));
        }
    }

    #[test]
    fn partition_errors_name_the_edge() {
        let g = DirectedGraph::new(&["v", "w"], &[("a", "w", "v"), ("b", "w", "v")]).unwrap();
        let err = SeparatedGraph::new(g.clone(), vec![vec![vec![0, 1], vec![1]], vec![]]).unwrap_err();
        assert_eq!(err, GraphError::BadPartition { vertex: "v".into(), edge: "b".into(), reason: "appears in two classes".into() });
        let err = SeparatedGraph::new(g, vec![vec![vec![0]], vec![]]).unwrap_err();
        assert!(matches!(err, GraphError::BadPartition { ref edge, .. } if edge == "b"));
    }

    #[test]
    fn doubling_sizes() {
        let single = SeparatedGraph::trivial(DirectedGraph::new::<&str, &str>(&["v"], &[]).unwrap());
        let d = single.bipartite_double();
        assert_eq!((d.graph().vertex_count(), d.graph().edge_count()), (2, 1));
        assert_eq!(d.classes(0), &[vec![0]]);
        let r2 = SeparatedGraph::trivial(rose(2).unwrap()).bipartite_double();
        assert_eq!((r2.graph().vertex_count(), r2.graph().edge_count()), (2, 3));
        let sizes: Vec<usize> = r2.classes(0).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 1]);
        assert!(r2.is_bipartite());
        let e = emn(2, 3).unwrap().bipartite_double();
        assert_eq!((e.graph().vertex_count(), e.graph().edge_count()), (4, 7));
    }

    #[test]
    fn bipartite_and_three_twos() {
        assert!(!SeparatedGraph::trivial(rose(2).unwrap()).is_bipartite());
        let f = fullshift();
        assert!(f.is_bipartite() && f.satisfies_three_twos());
        let e = emn(2, 3).unwrap();
        assert!(e.is_bipartite() && e.satisfies_three_twos());
        assert!(!emn(1, 3).unwrap().satisfies_three_twos());
    }

    #[test]
    fn path_validation() {
        let l = line(3).unwrap();
        assert!(Path::new(&l, vec![0, 1]).is_ok());
        assert!(Path::new(&l, vec![1, 0]).is_err());
        let p = Path::new(&l, vec![0, 1]).unwrap();
        assert_eq!((p.range(&l), p.source(&l), p.len()), (0, 2, 2));
    }
}
