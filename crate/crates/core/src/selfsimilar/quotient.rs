//! The quotient graph `E_G` and its monoid.

use serde::{Deserialize, Serialize};

use super::{SelfSimilarAction, SelfSimilarError};
use crate::graphs::{DirectedGraph, GraphSpec};
use crate::monoids::{
    cancellation_report, graph_monoid, graph_stably_finite, is_stably_finite, CancellationReport, CancellationScope,
    MonoidPresentation, PresentationSpec, StablyFinite,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representatives {
    #[default]
    Least,
    Greatest,
}

/// Vertex orbits under the generators, as a representative index per vertex.
fn orbit_representatives(act: &SelfSimilarAction, choice: Representatives) -> Result<Vec<usize>, SelfSimilarError> {
    let g = act.graph();
    let n = g.vertex_count();
    let gens = act.generators();
    let mut rep = vec![usize::MAX; n];
    for v in 0..n {
        if rep[v] != usize::MAX {
            continue;
        }
        let mut orbit = vec![v];
        let mut i = 0;
        while i < orbit.len() {
            for h in &gens {
                let w = act.act_vertex(h, orbit[i]);
                if w >= n {
                    return Err(SelfSimilarError::NonComputableOrbits(format!("generator sends vertex {v} outside the graph")));
                }
                if !orbit.contains(&w) {
                    orbit.push(w);
                }
            }
            i += 1;
        }
        let r = match choice {
            Representatives::Least => *orbit.iter().min().expect("nonempty"),
            Representatives::Greatest => *orbit.iter().max().expect("nonempty"),
        };
        for w in orbit {
            rep[w] = r;
        }
    }
    Ok(rep)
}

pub fn quotient_graph(act: &SelfSimilarAction) -> Result<DirectedGraph, SelfSimilarError> {
    quotient_graph_with(act, Representatives::Least)
}

/// Vertices are the orbit representatives; edges are those ending at a representative, in the original order.
pub fn quotient_graph_with(act: &SelfSimilarAction, choice: Representatives) -> Result<DirectedGraph, SelfSimilarError> {
    let g = act.graph();
    let rep = orbit_representatives(act, choice)?;
    let vertices: Vec<&str> = (0..g.vertex_count()).filter(|&v| rep[v] == v).map(|v| g.vertex_name(v)).collect();
    let edges: Vec<(&str, &str, &str)> = (0..g.edge_count())
        .filter(|&e| rep[g.range(e)] == g.range(e))
        .map(|e| (g.edge_name(e), g.vertex_name(rep[g.source(e)]), g.vertex_name(g.range(e))))
        .collect();
    Ok(DirectedGraph::new(&vertices, &edges)?)
}

pub fn type_monoid_selfsimilar(act: &SelfSimilarAction) -> Result<MonoidPresentation, SelfSimilarError> {
    Ok(graph_monoid(&quotient_graph(act)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub quotient: GraphSpec,
    pub monoid: PresentationSpec,
    pub stably_finite: StablyFinite,
    /// Combinatorial verdict: no cycle of the quotient has an entry.
    pub graph_stably_finite: bool,
    pub cancellation: CancellationReport,
    /// Algebra-side statements that follow from the monoid verdict; not computed.
    pub implied: Vec<String>,
}

pub fn dichotomy_report(act: &SelfSimilarAction, scope: &CancellationScope) -> Result<DichotomyReport, SelfSimilarError> {
    let q = quotient_graph(act)?;
    let m = graph_monoid(&q);
    let stably_finite = is_stably_finite(&m, &scope.budget);
    let fast = graph_stably_finite(&q);
    let implied = match &stably_finite {
        StablyFinite::Yes { .. } => vec!["type semigroup stably finite: the algebra is stably finite".to_string()],
        StablyFinite::No { .. } => vec!["type semigroup not stably finite: the algebra is not stably finite".to_string()],
        StablyFinite::Unknown => Vec::new(),
    };
    Ok(DichotomyReport {
        quotient: GraphSpec::from_graph(&q),
        monoid: m.to_spec(),
        stably_finite,
        graph_stably_finite: fast,
        cancellation: cancellation_report(&m, scope),
        implied,
    })
}
