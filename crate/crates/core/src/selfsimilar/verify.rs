//! Sampled cocycle verification and pseudo-freeness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupKind, KatsuraSpec, Letter, SelfSimilarAction};
use crate::graphs::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSamples {
    pub elements: Vec<GroupElement>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    pub at: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub group: GroupKind,
    pub samples: CocycleSamples,
    pub checks: u64,
    pub violations: Vec<Violation>,
}

impl CocycleReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All edge paths of length `1..=max_len`, in lexicographic edge order.
pub fn all_paths(act: &SelfSimilarAction, max_len: usize) -> Vec<Vec<usize>> {
    let g = act.graph();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..g.edge_count()).map(|e| vec![e]).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for p in &layer {
            let last = *p.last().expect("nonempty");
            for &e in g.incoming(g.source(last)) {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        layer = next;
    }
    out
}

/// Freely reduced words of length `<= len` in the states and their inverses.
pub fn words_up_to(states: usize, len: usize) -> Vec<GroupElement> {
    let mut out = vec![GroupElement::Word(Vec::new())];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for state in 0..states {
                for inverse in [false, true] {
                    let l = Letter { state, inverse };
                    if w.last().is_some_and(|p| p.state == state && p.inverse != inverse) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(GroupElement::Word));
        layer = next;
    }
    out
}

/// Elements `-2..=2` for the integers, every element of a finite group, reduced words of length `<= 2`;
/// paths of length `<= 2`, or `<= 4` for rose graphs.
pub fn default_samples(act: &SelfSimilarAction) -> CocycleSamples {
    let elements = match act.kind() {
        GroupKind::Integers => (-2..=2).map(GroupElement::Int).collect(),
        GroupKind::Finite => (0..act.finite_order()).map(GroupElement::Finite).collect(),
        GroupKind::Automaton => words_up_to(act.state_count(), 2),
    };
    let len = if act.graph().vertex_count() == 1 { 4 } else { 2 };
    CocycleSamples { elements, paths: all_paths(act, len) }
}

impl SelfSimilarAction {
    pub(crate) fn finite_order(&self) -> usize {
        match &self.group {
            super::Group::Finite(f) => f.names.len(),
            _ => 0,
        }
    }

    pub(crate) fn state_count(&self) -> usize {
        match &self.group {
            super::Group::Automaton(m) => m.names.len(),
            _ => 0,
        }
    }

    pub(crate) fn same(&self, g: &GroupElement, h: &GroupElement) -> bool {
        self.agree_up_to(g, h, 4)
    }
}

fn checks_for(act: &SelfSimilarAction, g: &GroupElement, samples: &CocycleSamples) -> (u64, Vec<Violation>) {
    let graph = act.graph();
    let fmt = |x: &GroupElement| act.format_element(x);
    let mut count = 0;
    let mut out = Vec::new();
    let mut push = |check: &str, h: Option<&GroupElement>, at: String, detail: String| {
        out.push(Violation { check: check.into(), g: fmt(g), h: h.map(fmt), at, detail })
    };
    for e in 0..graph.edge_count() {
        let name = graph.edge_name(e).to_string();
        let (ge, phi) = act.act_edge(g, e);
        count += 3;
        if act.is_identity(g) && (ge != e || !act.is_identity(&phi)) {
            push("identity", None, name.clone(), format!("1 maps it to {} with restriction {}", graph.edge_name(ge), fmt(&phi)));
        }
        let s = graph.source(e);
        if act.act_vertex(&phi, s) != act.act_vertex(g, s) {
            push("self_similar", None, name.clone(), format!("restriction {} moves the source differently", fmt(&phi)));
        }
        if graph.source(ge) != act.act_vertex(g, s) || graph.range(ge) != act.act_vertex(g, graph.range(e)) {
            push("automorphism", None, name.clone(), format!("image {} has the wrong endpoints", graph.edge_name(ge)));
        }
        for h in &samples.elements {
            count += 1;
            let gh = act.multiply(g, h);
            let (he, phi_h) = act.act_edge(h, e);
            let (ghe, phi_gh) = act.act_edge(&gh, e);
            let (g_he, phi_g) = act.act_edge(g, he);
            let expected = act.multiply(&phi_g, &phi_h);
            if ghe != g_he || !act.same(&phi_gh, &expected) {
                push(
                    "cocycle",
                    Some(h),
                    name.clone(),
                    format!("phi(gh, e) = {} but phi(g, h e) phi(h, e) = {}", fmt(&phi_gh), fmt(&expected)),
                );
            }
        }
    }
    for a in &samples.paths {
        for b in &samples.paths {
            if graph.source(*a.last().expect("nonempty")) != graph.range(b[0]) {
                continue;
            }
            count += 1;
            let ab: Vec<usize> = a.iter().chain(b).copied().collect();
            let (whole, r_whole) = act.act_and_restrict(g, &Path::Edges(ab.clone())).expect("sampled paths are valid");
            let (first, r_a) = act.act_and_restrict(g, &Path::Edges(a.clone())).expect("valid");
            let (second, r_ab) = act.act_and_restrict(&r_a, &Path::Edges(b.clone())).expect("valid");
            let joined: Vec<usize> = first.edges().iter().chain(second.edges()).copied().collect();
            let at = ab.iter().map(|&e| graph.edge_name(e)).collect::<Vec<_>>().join(" ");
            if whole.edges() != joined.as_slice() {
                push("path_action", None, at.clone(), "g(ab) differs from (g a)(g|_a b)".into());
            }
            if !act.same(&r_whole, &r_ab) {
                push("path_restriction", None, at, format!("{} differs from {}", fmt(&r_whole), fmt(&r_ab)));
            }
        }
    }
    (count, out)
}

/// Checks the cocycle identity, self-similarity, automorphism and path identities on `samples`.
pub fn verify_cocycle(act: &SelfSimilarAction, samples: &CocycleSamples) -> CocycleReport {
    let results: Vec<(u64, Vec<Violation>)> =
        samples.elements.par_iter().map(|g| checks_for(act, g, samples)).collect();
    let mut checks = 0;
    let mut violations = Vec::new();
    for (c, v) in results {
        checks += c;
        violations.extend(v);
    }
    CocycleReport { group: act.kind(), samples: samples.clone(), checks, violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum PseudoFree {
    /// No witness; `exhaustive` when every group element was examined.
    Yes { exhaustive: bool },
    No { g: GroupElement, edge: String },
    Unknown,
}

/// Searches `g != 1` and `e` with `g e = e` and `phi(g, e) = 1`, over `|m| <= bound` or words of length `<= bound`.
pub fn is_pseudo_free(act: &SelfSimilarAction, bound: usize) -> PseudoFree {
    let (elements, exhaustive): (Vec<GroupElement>, bool) = match act.kind() {
        GroupKind::Integers => {
            let b = i64::try_from(bound).unwrap_or(i64::MAX);
            ((1..=b).flat_map(|m| [GroupElement::Int(m), GroupElement::Int(-m)]).collect(), false)
        }
        GroupKind::Finite => ((0..act.finite_order()).map(GroupElement::Finite).collect(), true),
        GroupKind::Automaton => (words_up_to(act.state_count(), bound), false),
    };
    let mut undecided = false;
    for g in &elements {
        if act.is_identity(g) {
            continue;
        }
        for e in 0..act.graph().edge_count() {
            let (f, phi) = act.act_edge(g, e);
            if f != e {
                continue;
            }
            if act.is_identity(&phi) {
                if act.kind() != GroupKind::Automaton || !act.acts_trivially_up_to(g, 2 * bound.max(1)) {
                    return PseudoFree::No { g: g.clone(), edge: act.graph().edge_name(e).to_string() };
                }
                undecided = true;
            } else if act.kind() == GroupKind::Automaton && act.acts_trivially_up_to(&phi, 2 * bound.max(1)) {
                undecided = true;
            }
        }
    }
    if undecided {
        PseudoFree::Unknown
    } else {
        PseudoFree::Yes { exhaustive }
    }
}

/// `B_ij != 0` wherever `A_ij != 0`.
pub fn katsura_pseudo_free(spec: &KatsuraSpec) -> bool {
    spec.a.iter().zip(&spec.b).all(|(ra, rb)| ra.iter().zip(rb).all(|(&a, &b)| a == 0 || b != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsimilar::{automaton_action, katsura_action, swap_loops_action, MealySpec};

    #[test]
    fn odometer_cocycle_holds() {
        let act = katsura_action(&KatsuraSpec::new(vec![vec![2]], vec![vec![1]]).unwrap()).unwrap();
        let report = verify_cocycle(&act, &default_samples(&act));
        assert!(report.ok(), "{:?}", report.violations);
        assert!(report.checks > 0);
    }

    #[test]
    fn lamplighter_cocycle_holds() {
        let act = automaton_action(&MealySpec::lamplighter()).unwrap();
        let samples = default_samples(&act);
        assert_eq!(samples.elements.len(), 1 + 4 + 12);
        assert!(verify_cocycle(&act, &samples).ok());
    }

    #[test]
    fn swap_cocycle_holds() {
        let act = swap_loops_action();
        assert!(verify_cocycle(&act, &default_samples(&act)).ok());
    }

    #[test]
    fn pseudo_freeness() {
        let free = katsura_action(&KatsuraSpec::new(vec![vec![2]], vec![vec![1]]).unwrap()).unwrap();
        assert_eq!(is_pseudo_free(&free, 8), PseudoFree::Yes { exhaustive: false });
        let spec = KatsuraSpec::new(vec![vec![2]], vec![vec![0]]).unwrap();
        let fixed = katsura_action(&spec).unwrap();
        assert_eq!(is_pseudo_free(&fixed, 8), PseudoFree::No { g: GroupElement::Int(1), edge: "e_0_0_0".into() });
        assert!(!katsura_pseudo_free(&spec));
    }
}
