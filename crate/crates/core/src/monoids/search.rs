//! Rewriting moves and the budgeted equality / order decisions.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::certificate::{weights_dot, Certificate};
use super::cone::integer_cone_rays;
use super::cyclic::{cyclic_invariant_search, CyclicBounds, CyclicMode};
use super::{MonoidElement, MonoidError, MonoidPresentation};
use crate::{Integer, Rational};

/// Exploration limits. `Unknown` is returned when they are hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Rewriting depth for presentations that are not graded.
    pub max_depth: usize,
    /// Cap on visited states per exploration.
    pub max_frontier: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timeout: Option<Duration>,
    pub cyclic: CyclicBounds,
    /// Largest multiple tried by paradox and cyclic-type searches.
    pub max_multiple: u32,
    /// Cone enumeration is skipped above this many generators.
    pub max_cone_generators: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 12,
            max_frontier: 100_000,
            timeout: None,
            cyclic: CyclicBounds::default(),
            max_multiple: 8,
            max_cone_generators: 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
    Both,
}

/// One elementary move: `forward` replaces `lhs` by `rhs`, otherwise `rhs` by `lhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub relation: usize,
    pub forward: bool,
}

pub fn apply_step(p: &MonoidPresentation, x: &MonoidElement, step: Step) -> Option<MonoidElement> {
    let r = p.relations().get(step.relation)?;
    let (from, to) = if step.forward { (&r.lhs, &r.rhs) } else { (&r.rhs, &r.lhs) };
    x.checked_sub(from).map(|d| d.add(to))
}

/// Moves in deterministic order: relation index, then forward before backward.
pub(crate) fn moves(p: &MonoidPresentation, x: &MonoidElement, dir: Direction) -> Vec<(Step, MonoidElement)> {
    let mut out = Vec::new();
    for relation in 0..p.relations().len() {
        for forward in [true, false] {
            let allowed = match dir {
                Direction::Forward => forward,
                Direction::Backward => !forward,
                Direction::Both => true,
            };
            if !allowed {
                continue;
            }
            let step = Step { relation, forward };
            if let Some(y) = apply_step(p, x, step) {
                if y != *x {
                    out.push((step, y));
                }
            }
        }
    }
    out
}

/// All one-step rewrites of `x`.
pub fn rewrite_neighbors(p: &MonoidPresentation, x: &MonoidElement, dir: Direction) -> BTreeSet<MonoidElement> {
    moves(p, x, dir).into_iter().map(|(_, y)| y).collect()
}

/// Applies `steps` in order, failing on an inapplicable step.
pub fn replay(p: &MonoidPresentation, x: &MonoidElement, steps: &[Step]) -> Option<MonoidElement> {
    steps.iter().try_fold(x.clone(), |acc, &s| apply_step(p, &acc, s))
}

/// Two rewrite paths reaching a common element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteProof {
    pub from_x: Vec<Step>,
    pub from_y: Vec<Step>,
}

impl RewriteProof {
    pub fn trivial() -> Self {
        RewriteProof { from_x: Vec::new(), from_y: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.from_x.len() + self.from_y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Common element when both paths replay.
    pub fn meet(&self, p: &MonoidPresentation, x: &MonoidElement, y: &MonoidElement) -> Option<MonoidElement> {
        let a = replay(p, x, &self.from_x)?;
        let b = replay(p, y, &self.from_y)?;
        (a == b).then_some(a)
    }

    /// Proof of `y = x` from a proof of `x = y`.
    pub fn swapped(&self) -> Self {
        RewriteProof { from_x: self.from_y.clone(), from_y: self.from_x.clone() }
    }

    /// Single path `x -> y`: `from_x` followed by the inverse of `from_y`.
    pub fn linear(&self) -> Vec<Step> {
        let mut out = self.from_x.clone();
        out.extend(self.from_y.iter().rev().map(|s| Step { relation: s.relation, forward: !s.forward }));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum EqVerdict {
    Equal { proof: RewriteProof },
    Distinct { certificate: Certificate },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum LeqVerdict {
    /// `x + z` and `y` are equal, witnessed by `proof` (paths from `x + z` and from `y`).
    Leq { z: MonoidElement, proof: RewriteProof },
    NotLeq { certificate: Certificate },
    Unknown,
}

enum Explore {
    Met(RewriteProof),
    Closed(Vec<MonoidElement>),
    Exhausted,
}

type Parents = HashMap<MonoidElement, Option<(MonoidElement, Step)>>;

fn path_to(parents: &Parents, node: &MonoidElement) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut cur = node.clone();
    while let Some(Some((prev, step))) = parents.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    steps
}

/// Equality and order decisions for one presentation, caching the invariant cone.
pub struct Decider<'a> {
    p: &'a MonoidPresentation,
    budget: SearchBudget,
    rays: OnceLock<Option<Vec<Vec<Integer>>>>,
}

impl<'a> Decider<'a> {
    pub fn new(p: &'a MonoidPresentation, budget: SearchBudget) -> Self {
        Decider { p, budget, rays: OnceLock::new() }
    }

    pub fn presentation(&self) -> &MonoidPresentation {
        self.p
    }

    pub fn budget(&self) -> &SearchBudget {
        &self.budget
    }

    /// Extreme rays of the nonnegative invariant cone, when small enough to enumerate.
    pub fn rays(&self) -> Option<&[Vec<Integer>]> {
        self.rays
            .get_or_init(|| {
                if self.p.rank() > self.budget.max_cone_generators {
                    return None;
                }
                let eqs: Vec<Vec<Integer>> = self
                    .p
                    .relations()
                    .iter()
                    .map(|r| r.lhs.0.iter().zip(&r.rhs.0).map(|(&a, &b)| Integer::from(a) - Integer::from(b)).collect())
                    .collect();
                integer_cone_rays(self.p.rank(), &eqs, 20_000)
            })
            .as_deref()
    }

    fn deadline(&self) -> Option<Instant> {
        self.budget.timeout.map(|t| Instant::now() + t)
    }

    fn ones(&self) -> Certificate {
        Certificate::RationalWeights { weights: vec![Rational::from_integer(1.into()); self.p.rank()] }
    }

    pub fn equal(&self, x: &MonoidElement, y: &MonoidElement) -> Result<EqVerdict, MonoidError> {
        self.p.check(x)?;
        self.p.check(y)?;
        if x == y {
            return Ok(EqVerdict::Equal { proof: RewriteProof::trivial() });
        }
        if self.p.is_graded() && x.degree() != y.degree() {
            return Ok(EqVerdict::Distinct { certificate: self.ones() });
        }
        let closed = match self.explore_equal(x, y) {
            Explore::Met(proof) => return Ok(EqVerdict::Equal { proof }),
            Explore::Closed(members) => Some(members),
            Explore::Exhausted => None,
        };
        if let Some(certificate) = self.separating_certificate(x, y, CyclicMode::Equality) {
            return Ok(EqVerdict::Distinct { certificate });
        }
        Ok(match closed {
            Some(members) => EqVerdict::Distinct { certificate: Certificate::ClosedClass { members } },
            None => EqVerdict::Unknown,
        })
    }

    pub fn leq(&self, x: &MonoidElement, y: &MonoidElement) -> Result<LeqVerdict, MonoidError> {
        self.p.check(x)?;
        self.p.check(y)?;
        if x.is_zero() {
            return Ok(LeqVerdict::Leq { z: y.clone(), proof: RewriteProof::trivial() });
        }
        if self.p.is_graded() && x.degree() > y.degree() {
            return Ok(LeqVerdict::NotLeq { certificate: self.ones() });
        }
        let closed = match self.explore_leq(x, y) {
            Explore::Met(proof) => {
                let top = replay(self.p, y, &proof.from_y).expect("search paths replay");
                let z = top.checked_sub(x).expect("search stops on a dominating element");
                return Ok(LeqVerdict::Leq { z, proof });
            }
            Explore::Closed(members) => Some(members),
            Explore::Exhausted => None,
        };
        if let Some(certificate) = self.separating_certificate(x, y, CyclicMode::Order) {
            return Ok(LeqVerdict::NotLeq { certificate });
        }
        Ok(match closed {
            Some(members) => LeqVerdict::NotLeq { certificate: Certificate::ClosedClass { members } },
            None => LeqVerdict::Unknown,
        })
    }

    /// A monotone invariant separating `x` from `y` (`w(x) != w(y)`, or `x` not below `y`).
    pub fn separating_certificate(&self, x: &MonoidElement, y: &MonoidElement, mode: CyclicMode) -> Option<Certificate> {
        if let Some(rays) = self.rays() {
            for ray in rays {
                let w: Vec<Rational> = ray.iter().map(|c| Rational::from_integer(c.clone())).collect();
                let (wx, wy) = (weights_dot(&w, x), weights_dot(&w, y));
                let separates = match mode {
                    CyclicMode::Equality => wx != wy,
                    CyclicMode::Order => wx > wy,
                };
                if separates {
                    return Some(Certificate::RationalWeights { weights: w });
                }
            }
        }
        cyclic_invariant_search(self.p, x, y, &self.budget.cyclic, mode)
    }

    fn depth_limit(&self) -> usize {
        if self.p.is_graded() {
            usize::MAX
        } else {
            self.budget.max_depth
        }
    }

    fn explore_equal(&self, x: &MonoidElement, y: &MonoidElement) -> Explore {
        let deadline = self.deadline();
        let mut parents: [Parents; 2] = [HashMap::new(), HashMap::new()];
        parents[0].insert(x.clone(), None);
        parents[1].insert(y.clone(), None);
        let mut frontier = [vec![x.clone()], vec![y.clone()]];
        let mut depth = 0usize;
        loop {
            for side in 0..2 {
                if frontier[side].is_empty() {
                    let mut members: Vec<MonoidElement> = parents[side].keys().cloned().collect();
                    members.sort();
                    return Explore::Closed(members);
                }
            }
            if depth >= self.depth_limit() {
                return Explore::Exhausted;
            }
            let side = if frontier[1].len() < frontier[0].len() { 1 } else { 0 };
            let other = 1 - side;
            let mut next = Vec::new();
            for node in std::mem::take(&mut frontier[side]) {
                for (step, succ) in moves(self.p, &node, Direction::Both) {
                    if parents[side].contains_key(&succ) {
                        continue;
                    }
                    parents[side].insert(succ.clone(), Some((node.clone(), step)));
                    if parents[other].contains_key(&succ) {
                        let a = path_to(&parents[side], &succ);
                        let b = path_to(&parents[other], &succ);
                        let proof = if side == 0 {
                            RewriteProof { from_x: a, from_y: b }
                        } else {
                            RewriteProof { from_x: b, from_y: a }
                        };
                        return Explore::Met(proof);
                    }
                    next.push(succ);
                }
                if parents[0].len() + parents[1].len() > self.budget.max_frontier
                    || deadline.is_some_and(|d| Instant::now() > d)
                {
                    return Explore::Exhausted;
                }
            }
            frontier[side] = next;
            depth += 1;
        }
    }

    fn explore_leq(&self, x: &MonoidElement, y: &MonoidElement) -> Explore {
        self.explore_from(y, |m| m.dominates(x))
    }

    /// Breadth-first search of the class of `start` for an element satisfying `goal`.
    fn explore_from(&self, start: &MonoidElement, goal: impl Fn(&MonoidElement) -> bool) -> Explore {
        let deadline = self.deadline();
        let mut parents: Parents = HashMap::new();
        parents.insert(start.clone(), None);
        if goal(start) {
            return Explore::Met(RewriteProof::trivial());
        }
        let mut frontier = vec![start.clone()];
        let mut depth = 0usize;
        while !frontier.is_empty() {
            if depth >= self.depth_limit() {
                return Explore::Exhausted;
            }
            let mut next = Vec::new();
            for node in frontier {
                for (step, succ) in moves(self.p, &node, Direction::Both) {
                    if parents.contains_key(&succ) {
                        continue;
                    }
                    parents.insert(succ.clone(), Some((node.clone(), step)));
                    if goal(&succ) {
                        return Explore::Met(RewriteProof { from_x: Vec::new(), from_y: path_to(&parents, &succ) });
                    }
                    next.push(succ);
                }
                if parents.len() > self.budget.max_frontier || deadline.is_some_and(|d| Instant::now() > d) {
                    return Explore::Exhausted;
                }
            }
            frontier = next;
            depth += 1;
        }
        let mut members: Vec<MonoidElement> = parents.into_keys().collect();
        members.sort();
        Explore::Closed(members)
    }

    /// Some `y` in the class of `x` strictly above `x`, with a path `x -> y`.
    pub(crate) fn strict_dominator(&self, x: &MonoidElement) -> Option<(MonoidElement, Vec<Step>)> {
        match self.explore_from(x, |m| m != x && m.dominates(x)) {
            Explore::Met(proof) => {
                let y = replay(self.p, x, &proof.from_y).expect("search paths replay");
                Some((y, proof.from_y))
            }
            _ => None,
        }
    }

    /// Elements of the class of `x` reachable within the depth and state limits.
    pub fn bounded_class(&self, x: &MonoidElement) -> Vec<MonoidElement> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        let mut depth = 0;
        while !frontier.is_empty() && depth < self.budget.max_depth {
            let mut next = Vec::new();
            for node in frontier {
                for (_, succ) in moves(self.p, &node, Direction::Both) {
                    if seen.len() >= self.budget.max_frontier {
                        return seen.into_iter().collect();
                    }
                    if seen.insert(succ.clone()) {
                        next.push(succ);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        seen.into_iter().collect()
    }

    /// Congruence class of `x` when it is finite and within the state cap.
    pub fn class_of(&self, x: &MonoidElement) -> Option<Vec<MonoidElement>> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        while let Some(node) = frontier.pop() {
            for (_, succ) in moves(self.p, &node, Direction::Both) {
                if seen.insert(succ.clone()) {
                    if seen.len() > self.budget.max_frontier {
                        return None;
                    }
                    frontier.push(succ);
                }
            }
        }
        Some(seen.into_iter().collect())
    }
}

pub fn decide_equal(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    budget: &SearchBudget,
) -> Result<EqVerdict, MonoidError> {
    Decider::new(p, budget.clone()).equal(x, y)
}

pub fn decide_leq(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    budget: &SearchBudget,
) -> Result<LeqVerdict, MonoidError> {
    Decider::new(p, budget.clone()).leq(x, y)
}

/// Sum of the cone rays, when it is strictly positive.
pub(crate) fn positive_ray_sum(rays: &[Vec<Integer>], n: usize) -> Option<Vec<Integer>> {
    let mut sum = vec![Integer::zero(); n];
    for r in rays {
        for (s, c) in sum.iter_mut().zip(r) {
            *s += c;
        }
    }
    sum.iter().all(|c| *c > Integer::zero()).then_some(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, rose};
    use crate::monoids::{cyclic_monoid, graph_monoid, separated_monoid, verify_certificate_claim, CertifiedClaim};

    fn el(v: &[u32]) -> MonoidElement {
        MonoidElement(v.to_vec())
    }

    #[test]
    fn neighbours() {
        let p = graph_monoid(&rose(3).unwrap());
        assert_eq!(rewrite_neighbors(&p, &el(&[1]), Direction::Forward), BTreeSet::from([el(&[3])]));
        assert!(rewrite_neighbors(&p, &el(&[0]), Direction::Both).is_empty());
        let e = separated_monoid(&emn(2, 3).unwrap());
        assert_eq!(rewrite_neighbors(&e, &el(&[1, 0]), Direction::Forward), BTreeSet::from([el(&[0, 3]), el(&[0, 2])]));
    }

    #[test]
    fn emn_equality_path() {
        let e = separated_monoid(&emn(2, 3).unwrap());
        let (x, y) = (el(&[0, 2]), el(&[0, 3]));
        let EqVerdict::Equal { proof } = decide_equal(&e, &x, &y, &SearchBudget::default()).unwrap() else {
            panic!("expected Equal")
        };
        assert_eq!(proof.len(), 2);
        assert!(proof.meet(&e, &x, &y).is_some());
        let claim = CertifiedClaim::Equal { x, y, proof };
        verify_certificate_claim(&e, &claim).unwrap();
    }

    #[test]
    fn cyclic_separation_of_a_and_2a() {
        let p = cyclic_monoid(1, 3).unwrap();
        let v = decide_equal(&p, &el(&[1]), &el(&[2]), &SearchBudget::default()).unwrap();
        assert_eq!(v, EqVerdict::Distinct { certificate: Certificate::CyclicHom { p: 1, q: 3, values: vec![1] } });
    }

    #[test]
    fn leq_cases() {
        let b = SearchBudget::default();
        let p = cyclic_monoid(1, 2).unwrap();
        assert!(matches!(decide_leq(&p, &el(&[2]), &el(&[1]), &b).unwrap(), LeqVerdict::Leq { .. }));
        let e = separated_monoid(&emn(2, 3).unwrap());
        let v = decide_leq(&e, &el(&[0, 2]), &el(&[0, 1]), &b).unwrap();
        assert_eq!(
            v,
            LeqVerdict::NotLeq { certificate: Certificate::CyclicHom { p: 2, q: 3, values: vec![2, 1] } }
        );
        let LeqVerdict::Leq { z, .. } = decide_leq(&e, &el(&[0, 0]), &el(&[1, 1]), &b).unwrap() else { panic!() };
        assert_eq!(z, el(&[1, 1]));
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let p = graph_monoid(&rose(2).unwrap());
        let b = SearchBudget { max_depth: 1, ..SearchBudget::default() };
        assert_eq!(decide_equal(&p, &el(&[1]), &el(&[5]), &b).unwrap(), EqVerdict::Unknown);
        assert!(matches!(decide_equal(&p, &el(&[1]), &el(&[5]), &SearchBudget::default()).unwrap(), EqVerdict::Equal { .. }));
    }

    #[test]
    fn dimension_mismatch() {
        let p = graph_monoid(&rose(2).unwrap());
        assert!(matches!(
            decide_equal(&p, &el(&[1, 0]), &el(&[1]), &SearchBudget::default()),
            Err(MonoidError::DimensionMismatch { .. })
        ));
    }
}
