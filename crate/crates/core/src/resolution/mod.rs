//! One-step resolutions of bipartite separated graphs and their towers.
//!
//! Level `n + 1` keeps the top vertices of level `n` as its bottom layer and
//! adds one top vertex per choice of an edge from every class at a bottom
//! vertex. The separated monoids of the levels form a direct system whose
//! limit is queried by promoting elements to a common level.

mod bratteli;
mod shift;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::graphs::{DirectedGraph, GraphError, SeparatedGraph};
use crate::monoids::{
    separated_monoid, CertifiedClaim, Decider, EqVerdict, LeqVerdict, MonoidElement, MonoidError,
    MonoidPresentation, Relation, RewriteProof, SearchBudget, Step,
};

pub use bratteli::{export_bratteli, BratteliDiagram, BratteliEdge};
pub use shift::{fullshift_monoid, FullShiftMonoid};

pub const DEFAULT_SIZE_CAP: usize = 100_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("separated graph is not bipartite")]
    NotBipartite,
    #[error("level {level} would have {size} vertices, above the cap of {cap}")]
    SizeCapExceeded { level: usize, size: u128, cap: usize },
    #[error("level {level}: classes {first} and {second} at {vertex:?} were not proved to have equal images")]
    WellDefinednessUnproved { level: usize, vertex: String, first: usize, second: usize },
    #[error("level {level} out of range (tower has {levels} levels)")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn predicted_sizes(sg: &SeparatedGraph) -> Result<(u128, u128, u128), ResolutionError> {
    let (bottom, top) = sg.bipartition().ok_or(ResolutionError::NotBipartite)?;
    let mut new_top: u128 = 0;
    let mut new_edges: u128 = 0;
    for &u in &bottom {
        let prod = sg.classes(u).iter().fold(1u128, |acc, x| acc.saturating_mul(x.len() as u128));
        new_top = new_top.saturating_add(prod);
        new_edges = new_edges.saturating_add(prod.saturating_mul(sg.classes(u).len() as u128));
    }
    Ok((top.len() as u128, new_top, new_edges))
}

/// The 1-step resolution. Top vertex `u[i1,...,ik]` picks member `i_j` of the `j`-th class at `u`;
/// edge `u[...]/j` runs from it to the source of that member and omits it from the tuple.
pub fn one_step_resolution(sg: &SeparatedGraph) -> Result<SeparatedGraph, ResolutionError> {
    let (bottom, top) = sg.bipartition().ok_or(ResolutionError::NotBipartite)?;
    let g = sg.graph();
    let mut vertices: Vec<String> = top.iter().map(|&w| g.vertex_name(w).to_string()).collect();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    // Old edge behind every new edge, for building the classes.
    let mut origin: Vec<usize> = Vec::new();
    for &u in &bottom {
        let classes = sg.classes(u);
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        let mut idx = vec![0usize; sizes.len()];
        loop {
            let label: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            let name = format!("{}[{}]", g.vertex_name(u), label.join(","));
            for (j, class) in classes.iter().enumerate() {
                let x = class[idx[j]];
                edges.push((format!("{name}/{}", j + 1), name.clone(), g.vertex_name(g.source(x)).to_string()));
                origin.push(x);
            }
            vertices.push(name);
            let Some(pos) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < sizes[p]) else { break };
            idx[pos] += 1;
            for i in &mut idx[pos + 1..] {
                *i = 0;
            }
        }
    }
    let graph = DirectedGraph::new(&vertices, &edges)?;
    let mut classes = vec![Vec::new(); graph.vertex_count()];
    for (new_v, &w) in top.iter().enumerate() {
        let mut by_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (e, &x) in origin.iter().enumerate() {
            if g.source(x) == w {
                by_edge.entry(x).or_default().push(e);
            }
        }
        classes[new_v] = g.outgoing(w).iter().map(|x| by_edge.remove(x).unwrap_or_default()).collect();
    }
    Ok(SeparatedGraph::new(graph, classes)?)
}

/// Generator images of a monoid homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidMap {
    pub images: Vec<MonoidElement>,
}

impl MonoidMap {
    pub fn apply(&self, x: &MonoidElement) -> MonoidElement {
        let n = self.images.first().map_or(0, MonoidElement::len);
        let mut out = MonoidElement::zero(n);
        for (c, img) in x.0.iter().zip(&self.images) {
            out = out.add(&img.scale(*c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellDefinedness {
    pub vertex: String,
    pub first: usize,
    pub second: usize,
    pub claim: CertifiedClaim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMap {
    pub level: usize,
    pub map: MonoidMap,
    /// One equality proof per pair of classes at each bottom vertex.
    pub proofs: Vec<WellDefinedness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub level: usize,
    pub bottom: usize,
    pub top: usize,
    pub edges: usize,
    pub predicted_top: Option<u128>,
    pub predicted_edges: Option<u128>,
}

impl LevelCounts {
    pub fn holds(&self) -> bool {
        self.predicted_top.is_none_or(|p| p == self.top as u128)
            && self.predicted_edges.is_none_or(|p| p == self.edges as u128)
    }
}

/// Element of the monoid at a given level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypElement {
    pub level: usize,
    pub element: MonoidElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypVerdict<V> {
    /// Level where the verdict was obtained.
    pub level: usize,
    pub x: MonoidElement,
    pub y: MonoidElement,
    pub verdict: V,
}

pub struct ResolutionTower {
    levels: Vec<SeparatedGraph>,
    monoids: Vec<OnceLock<MonoidPresentation>>,
    maps: Vec<OnceLock<Result<TransitionMap, ResolutionError>>>,
}

pub fn resolve_tower(sg: &SeparatedGraph, depth: usize, cap: usize) -> Result<ResolutionTower, ResolutionError> {
    if sg.graph().vertex_count() > cap {
        return Err(ResolutionError::SizeCapExceeded { level: 0, size: sg.graph().vertex_count() as u128, cap });
    }
    let mut levels = vec![sg.clone()];
    predicted_sizes(sg)?;
    for level in 1..=depth {
        let prev = levels.last().expect("nonempty");
        let (old_top, new_top, _) = predicted_sizes(prev)?;
        let size = old_top.saturating_add(new_top);
        if size > cap as u128 {
            return Err(ResolutionError::SizeCapExceeded { level, size, cap });
        }
        levels.push(one_step_resolution(prev)?);
    }
    let n = levels.len();
    Ok(ResolutionTower {
        levels,
        monoids: (0..n).map(|_| OnceLock::new()).collect(),
        maps: (0..n.saturating_sub(1)).map(|_| OnceLock::new()).collect(),
    })
}

/// Relation index of class `c` at vertex `v` in [`separated_monoid`] order.
fn relation_index(sg: &SeparatedGraph, v: usize, c: usize) -> usize {
    (0..v).map(|w| sg.classes(w).len()).sum::<usize>() + c
}

impl ResolutionTower {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[SeparatedGraph] {
        &self.levels
    }

    fn check_level(&self, level: usize) -> Result<(), ResolutionError> {
        if level < self.levels.len() {
            Ok(())
        } else {
            Err(ResolutionError::LevelOutOfRange { level, levels: self.levels.len() })
        }
    }

    pub fn level(&self, n: usize) -> Result<&SeparatedGraph, ResolutionError> {
        self.check_level(n)?;
        Ok(&self.levels[n])
    }

    pub fn monoid(&self, n: usize) -> Result<&MonoidPresentation, ResolutionError> {
        self.check_level(n)?;
        Ok(self.monoids[n].get_or_init(|| separated_monoid(&self.levels[n])))
    }

    /// Bottom layer names of every level; level `n + 1` must equal the top layer of level `n`.
    pub fn chaining_holds(&self) -> bool {
        self.levels.windows(2).all(|w| {
            let (_, top) = w[0].bipartition().expect("levels are bipartite");
            let (bottom, _) = w[1].bipartition().expect("levels are bipartite");
            let a: Vec<&str> = top.iter().map(|&v| w[0].graph().vertex_name(v)).collect();
            let b: Vec<&str> = bottom.iter().map(|&v| w[1].graph().vertex_name(v)).collect();
            a == b
        })
    }

    pub fn counts(&self) -> Vec<LevelCounts> {
        let mut out = Vec::with_capacity(self.levels.len());
        let mut predicted: Option<(u128, u128)> = None;
        for (level, sg) in self.levels.iter().enumerate() {
            let (bottom, top) = sg.bipartition().expect("levels are bipartite");
            out.push(LevelCounts {
                level,
                bottom: bottom.len(),
                top: top.len(),
                edges: sg.graph().edge_count(),
                predicted_top: predicted.map(|p| p.0),
                predicted_edges: predicted.map(|p| p.1),
            });
            let (_, t, e) = predicted_sizes(sg).expect("levels are bipartite");
            predicted = Some((t, e));
        }
        out
    }

    /// Map from level `n` to level `n + 1`, with proofs that every class at a bottom vertex gives the same image.
    pub fn transition_map(&self, n: usize) -> Result<&TransitionMap, ResolutionError> {
        if n + 1 >= self.levels.len() {
            return Err(ResolutionError::LevelOutOfRange { level: n + 1, levels: self.levels.len() });
        }
        self.maps[n].get_or_init(|| self.build_map(n)).as_ref().map_err(Clone::clone)
    }

    fn build_map(&self, n: usize) -> Result<TransitionMap, ResolutionError> {
        let (cur, next) = (&self.levels[n], &self.levels[n + 1]);
        let (g, h) = (cur.graph(), next.graph());
        let target = self.monoid(n + 1)?;
        let width = h.vertex_count();
        let new_index = |v: usize| h.vertex(g.vertex_name(v)).expect("top layer carries over");
        let class_sum = |class: &[usize]| {
            let mut x = MonoidElement::zero(width);
            for &e in class {
                x.0[new_index(g.source(e))] += 1;
            }
            x
        };
        // Expanding a_{s(e)} along the class X(e) of the next level.
        let expand = |class: &[usize]| -> Vec<Step> {
            class
                .iter()
                .map(|&e| {
                    let w = g.source(e);
                    let c = g.outgoing(w).iter().position(|&x| x == e).expect("e leaves its source");
                    Step { relation: relation_index(next, new_index(w), c), forward: true }
                })
                .collect()
        };
        let mut images = Vec::with_capacity(g.vertex_count());
        let mut proofs = Vec::new();
        for v in 0..g.vertex_count() {
            let classes = cur.classes(v);
            if classes.is_empty() {
                images.push(MonoidElement::unit(width, new_index(v)));
                continue;
            }
            images.push(class_sum(&classes[0]));
            for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    let (x, y) = (class_sum(&classes[i]), class_sum(&classes[j]));
                    let proof = RewriteProof { from_x: expand(&classes[i]), from_y: expand(&classes[j]) };
                    if proof.meet(target, &x, &y).is_none() {
                        return Err(ResolutionError::WellDefinednessUnproved {
                            level: n,
                            vertex: g.vertex_name(v).to_string(),
                            first: i,
                            second: j,
                        });
                    }
                    proofs.push(WellDefinedness {
                        vertex: g.vertex_name(v).to_string(),
                        first: i,
                        second: j,
                        claim: CertifiedClaim::Equal { x, y, proof },
                    });
                }
            }
        }
        Ok(TransitionMap { level: n, map: MonoidMap { images }, proofs })
    }

    pub fn parse(&self, level: usize, text: &str) -> Result<TypElement, ResolutionError> {
        let element = self.monoid(level)?.parse_element(text)?;
        Ok(TypElement { level, element })
    }

    pub fn promote(&self, x: &TypElement, target: usize) -> Result<TypElement, ResolutionError> {
        self.check_level(target)?;
        self.monoid(x.level)?.check(&x.element)?;
        if x.level > target {
            return Err(ResolutionError::LevelOutOfRange { level: target, levels: self.levels.len() });
        }
        let mut element = x.element.clone();
        for n in x.level..target {
            element = self.transition_map(n)?.map.apply(&element);
        }
        Ok(TypElement { level: target, element })
    }

    /// Decides from the lowest common level upward; a definite verdict at any level holds in the limit.
    pub fn typ_equal(
        &self,
        x: &TypElement,
        y: &TypElement,
        budget: &SearchBudget,
    ) -> Result<TypVerdict<EqVerdict>, ResolutionError> {
        let start = x.level.max(y.level);
        let mut last = None;
        for level in start..self.levels.len() {
            let (a, b) = (self.promote(x, level)?.element, self.promote(y, level)?.element);
            let verdict = Decider::new(self.monoid(level)?, budget.clone()).equal(&a, &b)?;
            let done = verdict != EqVerdict::Unknown;
            last = Some(TypVerdict { level, x: a, y: b, verdict });
            if done {
                break;
            }
        }
        last.ok_or(ResolutionError::LevelOutOfRange { level: start, levels: self.levels.len() })
    }

    pub fn typ_leq(
        &self,
        x: &TypElement,
        y: &TypElement,
        budget: &SearchBudget,
    ) -> Result<TypVerdict<LeqVerdict>, ResolutionError> {
        let start = x.level.max(y.level);
        let mut last = None;
        for level in start..self.levels.len() {
            let (a, b) = (self.promote(x, level)?.element, self.promote(y, level)?.element);
            let verdict = Decider::new(self.monoid(level)?, budget.clone()).leq(&a, &b)?;
            let done = verdict != LeqVerdict::Unknown;
            last = Some(TypVerdict { level, x: a, y: b, verdict });
            if done {
                break;
            }
        }
        last.ok_or(ResolutionError::LevelOutOfRange { level: start, levels: self.levels.len() })
    }
}

/// Monoid on the top layer: for each bottom vertex, the first class sum equals every other class sum.
pub fn top_layer_presentation(sg: &SeparatedGraph) -> Result<MonoidPresentation, ResolutionError> {
    let (bottom, top) = sg.bipartition().ok_or(ResolutionError::NotBipartite)?;
    let g = sg.graph();
    let pos: HashMap<usize, usize> = top.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let sum = |class: &[usize]| {
        let mut x = MonoidElement::zero(top.len());
        for &e in class {
            x.0[pos[&g.source(e)]] += 1;
        }
        x
    };
    let mut relations = Vec::new();
    for &u in &bottom {
        let classes = sg.classes(u);
        for c in &classes[1..] {
            relations.push(Relation { lhs: sum(&classes[0]), rhs: sum(c) });
        }
    }
    let names = top.iter().map(|&w| g.vertex_name(w).to_string()).collect();
    Ok(MonoidPresentation::new(names, relations)?)
}

fn normalized(r: &Relation, perm: &[usize]) -> (MonoidElement, MonoidElement) {
    let map = |x: &MonoidElement| {
        let mut y = MonoidElement::zero(x.len());
        for (i, &c) in x.0.iter().enumerate() {
            y.0[perm[i]] += c;
        }
        y
    };
    let (a, b) = (map(&r.lhs), map(&r.rhs));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A generator bijection `perm` carrying the relations of `p` onto those of `q`, up to side order.
pub fn presentation_isomorphism(p: &MonoidPresentation, q: &MonoidPresentation) -> Option<Vec<usize>> {
    let n = p.rank();
    if n != q.rank() || p.relations().len() != q.relations().len() {
        return None;
    }
    let identity: Vec<usize> = (0..n).collect();
    let target: HashSet<(MonoidElement, MonoidElement)> = q.relations().iter().map(|r| normalized(r, &identity)).collect();
    let mut target_sorted: Vec<_> = q.relations().iter().map(|r| normalized(r, &identity)).collect();
    target_sorted.sort();
    let occurrences = |pr: &MonoidPresentation, i: usize| {
        let mut sig: Vec<(u32, u32)> = pr
            .relations()
            .iter()
            .flat_map(|r| [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)])
            .filter(|(a, _)| a.0[i] > 0)
            .map(|(a, b)| (a.0[i], b.0[i]))
            .collect();
        sig.sort();
        sig
    };
    let sig_p: Vec<_> = (0..n).map(|i| occurrences(p, i)).collect();
    let sig_q: Vec<_> = (0..n).map(|i| occurrences(q, i)).collect();
    // Assign generators in an order that closes relations early.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = p
            .relations()
            .iter()
            .flat_map(|r| r.lhs.support().chain(r.rhs.support()).collect::<Vec<_>>())
            .find(|&i| !placed[i] && order.iter().any(|&o| p.relations().iter().any(|r| r.lhs.0[o] + r.rhs.0[o] > 0 && r.lhs.0[i] + r.rhs.0[i] > 0)))
            .or_else(|| (0..n).find(|&i| !placed[i]))
            .expect("unplaced generator");
        placed[next] = true;
        order.push(next);
    }
    let mut rank_in_order = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        rank_in_order[i] = k;
    }
    let closing: Vec<Vec<usize>> = (0..n)
        .map(|k| {
            (0..p.relations().len())
                .filter(|&ri| {
                    let r = &p.relations()[ri];
                    r.lhs.support().chain(r.rhs.support()).map(|i| rank_in_order[i]).max() == Some(k)
                })
                .collect()
        })
        .collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut budget: u64 = 5_000_000;
    fn go(
        k: usize,
        order: &[usize],
        closing: &[Vec<usize>],
        p: &MonoidPresentation,
        target: &HashSet<(MonoidElement, MonoidElement)>,
        sig_p: &[Vec<(u32, u32)>],
        sig_q: &[Vec<(u32, u32)>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        budget: &mut u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        for j in 0..perm.len() {
            if used[j] || sig_p[i] != sig_q[j] {
                continue;
            }
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            perm[i] = j;
            used[j] = true;
            let ok = closing[k].iter().all(|&ri| {
                let full: Vec<usize> = perm.iter().map(|&x| if x == usize::MAX { 0 } else { x }).collect();
                target.contains(&normalized(&p.relations()[ri], &full))
            });
            if ok && go(k + 1, order, closing, p, target, sig_p, sig_q, perm, used, budget) {
                return true;
            }
            used[j] = false;
            perm[i] = usize::MAX;
        }
        false
    }
    if !go(0, &order, &closing, p, &target, &sig_p, &sig_q, &mut perm, &mut used, &mut budget) {
        return None;
    }
    let mut mapped: Vec<_> = p.relations().iter().map(|r| normalized(r, &perm)).collect();
    mapped.sort();
    (mapped == target_sorted).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, fullshift};

    #[test]
    fn fullshift_first_step() {
        let r = one_step_resolution(&fullshift()).unwrap();
        let (bottom, top) = r.bipartition().unwrap();
        assert_eq!((bottom.len(), top.len(), r.graph().edge_count()), (2, 4, 8));
        for &v in &bottom {
            assert_eq!(r.classes(v).iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
        }
    }

    #[test]
    fn emn_first_step() {
        let r = one_step_resolution(&emn(2, 3).unwrap()).unwrap();
        let (bottom, top) = r.bipartition().unwrap();
        assert_eq!((bottom.len(), top.len(), r.graph().edge_count()), (1, 6, 12));
        let mut sizes: Vec<usize> = r.classes(bottom[0]).iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn tower_counts() {
        let t = resolve_tower(&fullshift(), 6, DEFAULT_SIZE_CAP).unwrap();
        assert!(t.chaining_holds());
        for c in t.counts() {
            assert_eq!(c.bottom, 1 << c.level);
            assert!(c.holds());
        }
        assert!(matches!(resolve_tower(&fullshift(), 6, 50), Err(ResolutionError::SizeCapExceeded { .. })));
        assert_eq!(resolve_tower(&fullshift(), 0, 10).unwrap().level_count(), 1);
    }

    #[test]
    fn promotion() {
        let t = resolve_tower(&fullshift(), 2, DEFAULT_SIZE_CAP).unwrap();
        let v = t.parse(0, "v").unwrap();
        let one = t.promote(&v, 1).unwrap();
        assert_eq!(t.monoid(1).unwrap().format_element(&one.element), "0 + 1");
        let two = t.promote(&v, 2).unwrap();
        assert_eq!(two.element.degree(), 4);
        assert_eq!(t.promote(&v, 0).unwrap(), v);
        assert!(t.promote(&one, 0).is_err());
        assert_eq!(t.transition_map(1).unwrap().proofs.len(), 2);
    }

    #[test]
    fn limit_queries() {
        let t = resolve_tower(&emn(2, 3).unwrap(), 1, DEFAULT_SIZE_CAP).unwrap();
        let b = SearchBudget::default();
        let v = t.typ_equal(&t.parse(0, "2*w").unwrap(), &t.parse(0, "3*w").unwrap(), &b).unwrap();
        assert!(matches!(v.verdict, EqVerdict::Equal { .. }));
        let v = t.typ_leq(&t.parse(0, "2*w").unwrap(), &t.parse(0, "w").unwrap(), &b).unwrap();
        assert_eq!(v.level, 0);
        assert!(matches!(v.verdict, LeqVerdict::NotLeq { .. }));
    }

    #[test]
    fn isomorphism_search() {
        let a = top_layer_presentation(&one_step_resolution(&fullshift()).unwrap()).unwrap();
        let m2 = fullshift_monoid(2).unwrap().presentation;
        assert!(presentation_isomorphism(&a, &m2).is_some());
        let m3 = fullshift_monoid(3).unwrap().presentation;
        assert!(presentation_isomorphism(&a, &m3).is_none());
    }
}
