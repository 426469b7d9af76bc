//! Self-similar actions of groups on finite graphs.
//!
//! An action is a group acting by graph automorphisms together with a
//! cocycle `phi(g, e)`. Three group models are supported: the integers
//! acting through a Katsura pair of matrices, explicit finite groups given by
//! tables, and automaton groups generated by an invertible Mealy machine
//! acting on a rose graph.

mod quotient;
mod verify;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::{rose, DirectedGraph, GraphError, GraphSpec, Path};

pub use quotient::{
    dichotomy_report, quotient_graph, quotient_graph_with, type_monoid_selfsimilar, DichotomyReport, Representatives,
};
pub use verify::{
    all_paths, default_samples, is_pseudo_free, katsura_pseudo_free, verify_cocycle, CocycleReport, CocycleSamples, PseudoFree,
    Violation, words_up_to,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SelfSimilarError {
    #[error("specification violated: {0}")]
    SpecViolation(String),
    #[error("state {0:?} does not permute the alphabet")]
    NonInvertibleState(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("vertex orbits could not be computed: {0}")]
    NonComputableOrbits(String),
    #[error("cannot parse group element {0:?}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Katsura data: `A` nonnegative without zero rows, `B` integral, `B_ij = 0` wherever `A_ij = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KatsuraSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
}

impl KatsuraSpec {
    pub fn new(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> Result<Self, SelfSimilarError> {
        let spec = KatsuraSpec { a, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn validate(&self) -> Result<(), SelfSimilarError> {
        let n = self.a.len();
        let bad = |m: String| Err(SelfSimilarError::SpecViolation(m));
        if n == 0 {
            return bad("A must be nonempty".into());
        }
        if self.b.len() != n || self.a.iter().chain(&self.b).any(|row| row.len() != n) {
            return bad(format!("A and B must both be {n}x{n}"));
        }
        for i in 0..n {
            if self.a[i].iter().all(|&c| c == 0) {
                return bad(format!("row {i} of A is zero"));
            }
            for j in 0..n {
                if self.a[i][j] < 0 {
                    return bad(format!("A[{i}][{j}] is negative"));
                }
                if self.a[i][j] == 0 && self.b[i][j] != 0 {
                    return bad(format!("B[{i}][{j}] is nonzero where A[{i}][{j}] is zero"));
                }
            }
        }
        Ok(())
    }
}

/// One state of a Mealy machine: on input `x` it writes `out[x]` and moves to `next[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpec {
    pub name: String,
    pub out: Vec<usize>,
    pub next: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MealySpec {
    pub alphabet: usize,
    pub states: Vec<StateSpec>,
}

impl MealySpec {
    /// Two-state machine generating the lamplighter group.
    pub fn lamplighter() -> Self {
        let state = |name: &str, out: [usize; 2], next: [&str; 2]| StateSpec {
            name: name.into(),
            out: out.to_vec(),
            next: next.iter().map(|s| s.to_string()).collect(),
        };
        MealySpec { alphabet: 2, states: vec![state("a", [0, 1], ["a", "b"]), state("b", [1, 0], ["b", "a"])] }
    }
}

/// Explicit finite group with element tables.
///
/// `vertex_action[g][v]`, `edge_action[g][e]` and `cocycle[g][e]` are element or
/// graph indices, and `mul[g][h]` is the product `gh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteActionSpec {
    pub graph: GraphSpec,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub vertex_action: Vec<Vec<usize>>,
    pub edge_action: Vec<Vec<usize>>,
    pub cocycle: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub state: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter { state: self.state, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum GroupElement {
    Int(i64),
    Finite(usize),
    /// Freely reduced word; the rightmost letter acts first.
    Word(Vec<Letter>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct FiniteGroup {
    names: Vec<String>,
    identity: usize,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    vertex_action: Vec<Vec<usize>>,
    edge_action: Vec<Vec<usize>>,
    cocycle: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Machine {
    names: Vec<String>,
    out: Vec<Vec<usize>>,
    inv_out: Vec<Vec<usize>>,
    next: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Group {
    Katsura { spec: KatsuraSpec, labels: Vec<(usize, usize, i64)>, index: HashMap<(usize, usize, i64), usize> },
    Finite(FiniteGroup),
    Automaton(Machine),
}

/// Which model the group belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Integers,
    Finite,
    Automaton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfSimilarAction {
    graph: DirectedGraph,
    group: Group,
}

fn div_floor(a: i128, b: i128) -> (i128, i128) {
    let q = a.div_euclid(b);
    (q, a - q * b)
}

impl SelfSimilarAction {
    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn kind(&self) -> GroupKind {
        match self.group {
            Group::Katsura { .. } => GroupKind::Integers,
            Group::Finite(_) => GroupKind::Finite,
            Group::Automaton(_) => GroupKind::Automaton,
        }
    }

    pub fn katsura_spec(&self) -> Option<&KatsuraSpec> {
        match &self.group {
            Group::Katsura { spec, .. } => Some(spec),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.group {
            Group::Katsura { .. } => GroupElement::Int(0),
            Group::Finite(f) => GroupElement::Finite(f.identity),
            Group::Automaton(_) => GroupElement::Word(Vec::new()),
        }
    }

    /// Generators used for orbits and automorphism checks.
    pub fn generators(&self) -> Vec<GroupElement> {
        match &self.group {
            Group::Katsura { .. } => vec![GroupElement::Int(1)],
            Group::Finite(f) => (0..f.names.len()).filter(|&g| g != f.identity).map(GroupElement::Finite).collect(),
            Group::Automaton(m) => {
                (0..m.names.len()).map(|state| GroupElement::Word(vec![Letter { state, inverse: false }])).collect()
            }
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    fn check_element(&self, g: &GroupElement) -> Result<(), SelfSimilarError> {
        let ok = match (&self.group, g) {
            (Group::Katsura { .. }, GroupElement::Int(_)) => true,
            (Group::Finite(f), GroupElement::Finite(i)) => *i < f.names.len(),
            (Group::Automaton(m), GroupElement::Word(w)) => w.iter().all(|l| l.state < m.names.len()),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SelfSimilarError::Parse(format!("{g:?} does not belong to this group")))
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (&self.group, g, h) {
            (_, GroupElement::Int(a), GroupElement::Int(b)) => GroupElement::Int(a + b),
            (Group::Finite(f), GroupElement::Finite(a), GroupElement::Finite(b)) => GroupElement::Finite(f.mul[*a][*b]),
            (_, GroupElement::Word(a), GroupElement::Word(b)) => GroupElement::Word(reduce(a.iter().chain(b).copied())),
            _ => panic!("elements from different groups"),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        match (&self.group, g) {
            (_, GroupElement::Int(a)) => GroupElement::Int(-a),
            (Group::Finite(f), GroupElement::Finite(a)) => GroupElement::Finite(f.inverse[*a]),
            (_, GroupElement::Word(w)) => GroupElement::Word(w.iter().rev().map(|l| l.inv()).collect()),
            _ => panic!("element from a different group"),
        }
    }

    pub fn act_vertex(&self, g: &GroupElement, v: usize) -> usize {
        match (&self.group, g) {
            (Group::Finite(f), GroupElement::Finite(a)) => f.vertex_action[*a][v],
            _ => v,
        }
    }

    /// `(g e, g|_e)`.
    pub fn act_edge(&self, g: &GroupElement, e: usize) -> (usize, GroupElement) {
        match (&self.group, g) {
            (Group::Katsura { spec, labels, index }, GroupElement::Int(m)) => {
                let (i, j, n) = labels[e];
                let a = i128::from(spec.a[i][j]);
                let (k, r) = div_floor(i128::from(n) + i128::from(*m) * i128::from(spec.b[i][j]), a);
                let r = i64::try_from(r).expect("remainder below A_ij");
                let k = i64::try_from(k).expect("cocycle value fits in i64");
                (index[&(i, j, r)], GroupElement::Int(k))
            }
            (Group::Finite(f), GroupElement::Finite(a)) => {
                (f.edge_action[*a][e], GroupElement::Finite(f.cocycle[*a][e]))
            }
            (Group::Automaton(m), GroupElement::Word(w)) => {
                let mut x = e;
                let mut parts: Vec<Vec<Letter>> = Vec::with_capacity(w.len());
                for l in w.iter().rev() {
                    let (y, restricted) = if l.inverse {
                        let pre = m.inv_out[l.state][x];
                        (pre, Letter { state: m.next[l.state][pre], inverse: true })
                    } else {
                        (m.out[l.state][x], Letter { state: m.next[l.state][x], inverse: false })
                    };
                    parts.push(vec![restricted]);
                    x = y;
                }
                parts.reverse();
                (x, GroupElement::Word(reduce(parts.into_iter().flatten())))
            }
            _ => panic!("element from a different group"),
        }
    }

    pub fn cocycle(&self, g: &GroupElement, e: usize) -> GroupElement {
        self.act_edge(g, e).1
    }

    /// `g alpha`, computed edge by edge.
    pub fn act_path(&self, g: &GroupElement, path: &Path) -> Result<Path, SelfSimilarError> {
        Ok(self.act_and_restrict(g, path)?.0)
    }

    /// `g|_alpha`.
    pub fn restrict_path(&self, g: &GroupElement, path: &Path) -> Result<GroupElement, SelfSimilarError> {
        Ok(self.act_and_restrict(g, path)?.1)
    }

    pub fn act_and_restrict(&self, g: &GroupElement, path: &Path) -> Result<(Path, GroupElement), SelfSimilarError> {
        self.check_element(g)?;
        match path {
            Path::Trivial(v) => {
                if *v >= self.graph.vertex_count() {
                    return Err(SelfSimilarError::InvalidPath(format!("vertex index {v} out of range")));
                }
                Ok((Path::Trivial(self.act_vertex(g, *v)), g.clone()))
            }
            Path::Edges(edges) => {
                self.graph.check_path(edges).map_err(|e| SelfSimilarError::InvalidPath(e.to_string()))?;
                let mut cur = g.clone();
                let mut out = Vec::with_capacity(edges.len());
                for &e in edges {
                    let (f, next) = self.act_edge(&cur, e);
                    out.push(f);
                    cur = next;
                }
                Ok((Path::Edges(out), cur))
            }
        }
    }

    /// Bounded equality: syntactic, else agreement of action and restriction on all paths of length `depth`.
    pub fn agree_up_to(&self, g: &GroupElement, h: &GroupElement, depth: usize) -> bool {
        if g == h {
            return true;
        }
        if !matches!(self.group, Group::Automaton(_)) {
            return false;
        }
        let d = self.multiply(&self.inverse(h), g);
        self.acts_trivially_up_to(&d, depth)
    }

    /// `g` fixes every path of length at most `depth`.
    pub fn acts_trivially_up_to(&self, g: &GroupElement, depth: usize) -> bool {
        let mut frontier = vec![g.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for h in &frontier {
                if self.is_identity(h) {
                    continue;
                }
                for e in 0..self.graph.edge_count() {
                    let (f, r) = self.act_edge(h, e);
                    if f != e {
                        return false;
                    }
                    if !next.contains(&r) {
                        next.push(r);
                    }
                }
            }
            if next.is_empty() {
                return true;
            }
            frontier = next;
        }
        (0..self.graph.vertex_count()).all(|v| frontier.iter().all(|h| self.act_vertex(h, v) == v))
    }

    pub fn format_element(&self, g: &GroupElement) -> String {
        match (&self.group, g) {
            (_, GroupElement::Int(m)) => m.to_string(),
            (Group::Finite(f), GroupElement::Finite(i)) => f.names.get(*i).cloned().unwrap_or_else(|| i.to_string()),
            (Group::Automaton(m), GroupElement::Word(w)) => {
                if w.is_empty() {
                    return "1".into();
                }
                w.iter()
                    .map(|l| if l.inverse { format!("{}^-1", m.names[l.state]) } else { m.names[l.state].clone() })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            _ => format!("{g:?}"),
        }
    }

    /// Integers for Katsura actions, element names for finite groups, `"a b^-1"` words for automata.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, SelfSimilarError> {
        let text = text.trim();
        let err = || SelfSimilarError::Parse(text.into());
        match &self.group {
            Group::Katsura { .. } => text.parse().map(GroupElement::Int).map_err(|_| err()),
            Group::Finite(f) => f
                .names
                .iter()
                .position(|n| n == text)
                .or_else(|| text.parse().ok().filter(|&i| i < f.names.len()))
                .map(GroupElement::Finite)
                .ok_or_else(err),
            Group::Automaton(m) => {
                if text == "1" || text.is_empty() {
                    return Ok(GroupElement::Word(Vec::new()));
                }
                let mut letters = Vec::new();
                for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
                    let (name, inverse) = match tok.strip_suffix("^-1") {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    let state = m.names.iter().position(|n| n == name).ok_or_else(err)?;
                    letters.push(Letter { state, inverse });
                }
                Ok(GroupElement::Word(reduce(letters)))
            }
        }
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Integers acting on the Katsura graph: edges `e_i_j_n` from `v_j` to `v_i`, `0 <= n < A_ij`.
pub fn katsura_action(spec: &KatsuraSpec) -> Result<SelfSimilarAction, SelfSimilarError> {
    spec.validate()?;
    let n = spec.size();
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..spec.a[i][j] {
                index.insert((i, j, k), labels.len());
                labels.push((i, j, k));
                edges.push((format!("e_{i}_{j}_{k}"), vertices[j].clone(), vertices[i].clone()));
            }
        }
    }
    let graph = DirectedGraph::new(&vertices, &edges)?;
    Ok(SelfSimilarAction { graph, group: Group::Katsura { spec: spec.clone(), labels, index } })
}

/// Automaton group on the rose with one loop per letter; loop `i` carries letter `i - 1`.
pub fn automaton_action(machine: &MealySpec) -> Result<SelfSimilarAction, SelfSimilarError> {
    let n = machine.alphabet;
    if n == 0 || machine.states.is_empty() {
        return Err(SelfSimilarError::SpecViolation("alphabet and state set must be nonempty".into()));
    }
    let names: Vec<String> = machine.states.iter().map(|s| s.name.clone()).collect();
    let mut out = Vec::new();
    let mut inv_out = Vec::new();
    let mut next = Vec::new();
    for s in &machine.states {
        if names.iter().filter(|n| **n == s.name).count() > 1 {
            return Err(SelfSimilarError::SpecViolation(format!("duplicate state {:?}", s.name)));
        }
        if s.out.len() != n || s.next.len() != n {
            return Err(SelfSimilarError::SpecViolation(format!("state {:?} needs {n} transitions", s.name)));
        }
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in s.out.iter().enumerate() {
            if y >= n || inv[y] != usize::MAX {
                return Err(SelfSimilarError::NonInvertibleState(s.name.clone()));
            }
            inv[y] = x;
        }
        let targets = s
            .next
            .iter()
            .map(|t| {
                names
                    .iter()
                    .position(|n| n == t)
                    .ok_or_else(|| SelfSimilarError::SpecViolation(format!("unknown state {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(s.out.clone());
        inv_out.push(inv);
        next.push(targets);
    }
    Ok(SelfSimilarAction { graph: rose(n)?, group: Group::Automaton(Machine { names, out, inv_out, next }) })
}

/// Finite group given by full tables; checks the group axioms and that each element permutes vertices and edges.
pub fn finite_action(spec: &FiniteActionSpec) -> Result<SelfSimilarAction, SelfSimilarError> {
    let graph = crate::graphs::build_graph(&spec.graph)?;
    let k = spec.elements.len();
    let bad = |m: String| SelfSimilarError::SpecViolation(m);
    let is_perm = |row: &[usize], n: usize| {
        let mut seen = vec![false; n];
        row.len() == n && row.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    if k == 0 || spec.mul.len() != k || spec.mul.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
        return Err(bad(format!("multiplication table must be {k}x{k} over element indices")));
    }
    let identity = (0..k)
        .find(|&e| (0..k).all(|g| spec.mul[e][g] == g && spec.mul[g][e] == g))
        .ok_or_else(|| bad("no identity element".into()))?;
    let mut inverse = Vec::with_capacity(k);
    for g in 0..k {
        let h = (0..k).find(|&h| spec.mul[g][h] == identity).ok_or_else(|| bad(format!("element {g} has no inverse")))?;
        inverse.push(h);
        for h in 0..k {
            for l in 0..k {
                if spec.mul[spec.mul[g][h]][l] != spec.mul[g][spec.mul[h][l]] {
                    return Err(bad(format!("multiplication is not associative at ({g},{h},{l})")));
                }
            }
        }
    }
    let (nv, ne) = (graph.vertex_count(), graph.edge_count());
    for g in 0..k {
        if spec.vertex_action.get(g).is_none_or(|r| !is_perm(r, nv)) {
            return Err(bad(format!("element {g} does not permute the vertices")));
        }
        if spec.edge_action.get(g).is_none_or(|r| !is_perm(r, ne)) {
            return Err(bad(format!("element {g} does not permute the edges")));
        }
        if spec.cocycle.get(g).is_none_or(|r| r.len() != ne || r.iter().any(|&x| x >= k)) {
            return Err(bad(format!("cocycle row {g} must list {ne} element indices")));
        }
    }
    Ok(SelfSimilarAction {
        graph,
        group: Group::Finite(FiniteGroup {
            names: spec.elements.clone(),
            identity,
            mul: spec.mul.clone(),
            inverse,
            vertex_action: spec.vertex_action.clone(),
            edge_action: spec.edge_action.clone(),
            cocycle: spec.cocycle.clone(),
        }),
    })
}

/// Trivial group acting on `g`.
pub fn trivial_action(g: &DirectedGraph) -> SelfSimilarAction {
    let spec = FiniteActionSpec {
        graph: GraphSpec::from_graph(g),
        elements: vec!["1".into()],
        mul: vec![vec![0]],
        vertex_action: vec![(0..g.vertex_count()).collect()],
        edge_action: vec![(0..g.edge_count()).collect()],
        cocycle: vec![vec![0; g.edge_count()]],
    };
    finite_action(&spec).expect("trivial tables are valid")
}

/// Order-two group swapping `u` and `v`, each carrying one loop.
pub fn swap_loops_action() -> SelfSimilarAction {
    let spec = FiniteActionSpec {
        graph: GraphSpec {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![
                crate::graphs::EdgeSpec { name: "loop_u".into(), src: "u".into(), rng: "u".into() },
                crate::graphs::EdgeSpec { name: "loop_v".into(), src: "v".into(), rng: "v".into() },
            ],
            separation: None,
        },
        elements: vec!["1".into(), "s".into()],
        mul: vec![vec![0, 1], vec![1, 0]],
        vertex_action: vec![vec![0, 1], vec![1, 0]],
        edge_action: vec![vec![0, 1], vec![1, 0]],
        cocycle: vec![vec![0, 0], vec![1, 1]],
    };
    finite_action(&spec).expect("swap tables are valid")
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Integers => "integers",
            GroupKind::Finite => "finite",
            GroupKind::Automaton => "automaton",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> SelfSimilarAction {
        katsura_action(&KatsuraSpec::new(vec![vec![2]], vec![vec![1]]).unwrap()).unwrap()
    }

    #[test]
    fn odometer_letters() {
        let a = odometer();
        assert_eq!(a.act_edge(&GroupElement::Int(1), 0), (1, GroupElement::Int(0)));
        assert_eq!(a.act_edge(&GroupElement::Int(1), 1), (0, GroupElement::Int(1)));
        assert_eq!(a.act_edge(&GroupElement::Int(-1), 0), (1, GroupElement::Int(-1)));
        for e in 0..2 {
            assert_eq!(a.act_edge(&GroupElement::Int(0), e), (e, GroupElement::Int(0)));
        }
    }

    #[test]
    fn odometer_carries() {
        let a = odometer();
        let (p, r) = a.act_and_restrict(&GroupElement::Int(1), &Path::Edges(vec![1, 1])).unwrap();
        assert_eq!(p, Path::Edges(vec![0, 0]));
        assert_eq!(r, GroupElement::Int(1));
        assert!(a.act_path(&GroupElement::Int(1), &Path::Edges(vec![5])).is_err());
    }

    #[test]
    fn zero_b_entry() {
        let spec = KatsuraSpec::new(vec![vec![1, 1], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let a = katsura_action(&spec).unwrap();
        let e = a.graph().edge("e_0_1_0").unwrap();
        assert_eq!(a.act_edge(&GroupElement::Int(5), e), (e, GroupElement::Int(0)));
    }

    #[test]
    fn katsura_validation() {
        assert!(KatsuraSpec::new(vec![vec![0]], vec![vec![0]]).is_err());
        assert!(KatsuraSpec::new(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(KatsuraSpec::new(vec![vec![-1]], vec![vec![0]]).is_err());
    }

    #[test]
    fn lamplighter_transitions() {
        let a = automaton_action(&MealySpec::lamplighter()).unwrap();
        let sa = a.parse_element("a").unwrap();
        let sb = a.parse_element("b").unwrap();
        assert_eq!(a.act_edge(&sa, 0), (0, sa.clone()));
        assert_eq!(a.act_edge(&sb, 1), (0, sa.clone()));
        let id = a.identity();
        assert_eq!(a.act_edge(&id, 1), (1, id.clone()));
        let w = a.parse_element("a^-1 b").unwrap();
        assert_eq!(a.format_element(&w), "a^-1 b");
        assert_eq!(a.multiply(&w, &a.inverse(&w)), id);
        let (p, _) = a.act_and_restrict(&w, &Path::Edges(vec![0; 8])).unwrap();
        let again = a.act_path(&a.inverse(&w), &p).unwrap();
        assert_eq!(again, Path::Edges(vec![0; 8]));
    }

    #[test]
    fn non_invertible_state() {
        let mut m = MealySpec::lamplighter();
        m.states[0].out = vec![0, 0];
        assert_eq!(automaton_action(&m), Err(SelfSimilarError::NonInvertibleState("a".into())));
    }

    #[test]
    fn finite_tables_validated() {
        let s = swap_loops_action();
        let g = s.parse_element("s").unwrap();
        assert_eq!(s.act_vertex(&g, 0), 1);
        assert_eq!(s.act_edge(&g, 0), (1, g.clone()));
        assert!(s.is_identity(&s.multiply(&g, &g)));
    }
}
