//! Finitely presented commutative monoids with certified decisions.
//!
//! Elements are nonnegative integer vectors over the generators. Two vectors
//! are equal in the monoid when a chain of elementary moves
//! `z + lhs <-> z + rhs` connects them.

mod certificate;
mod cone;
mod cyclic;
mod properties;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::{DirectedGraph, SeparatedGraph};

pub use certificate::{verify_certificate_claim, CertifiedClaim, Certificate, MeasureCertificate, VerifyError};
pub use cone::{integer_cone_rays, rational_invariant_cone};
pub use cyclic::{cyclic_invariant_search, cyclic_le, cyclic_normal_form, CyclicBounds, CyclicMode};
pub use properties::{
    cancellation_report, cyclic_type, find_refinement, graph_stably_finite, is_stably_finite, tarski_measure,
    CancellationReport, CancellationScope, CyclicType, Property, PropertyEntry, PropertyVerdict, StablyFinite,
    TarskiVerdict,
};
pub use search::{
    apply_step, decide_equal, decide_leq, replay, rewrite_neighbors, Decider, Direction, EqVerdict, LeqVerdict,
    RewriteProof, SearchBudget, Step,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("relation {0} has two zero sides")]
    EmptyRelation(usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("cannot parse element {0:?}")]
    Parse(String),
    #[error("element must be nonzero")]
    ZeroElement,
}

/// Vector of generator multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonoidElement(pub Vec<u32>);

impl MonoidElement {
    pub fn zero(n: usize) -> Self {
        MonoidElement(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MonoidElement(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        MonoidElement(self.0.iter().map(|a| a * k).collect())
    }

    /// Coordinatewise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self - other` when `self` dominates `other`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.dominates(other).then(|| MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i)
    }
}

/// Relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: MonoidElement,
    pub rhs: MonoidElement,
}

/// Generators and relations of a commutative monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
    graded: bool,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self, MonoidError> {
        let n = generators.len();
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(MonoidError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relations.iter().enumerate() {
            for side in [&r.lhs, &r.rhs] {
                if side.len() != n {
                    return Err(MonoidError::DimensionMismatch { expected: n, found: side.len() });
                }
            }
            if r.lhs.is_zero() && r.rhs.is_zero() {
                return Err(MonoidError::EmptyRelation(i));
            }
        }
        let graded = relations.iter().all(|r| r.lhs.degree() == r.rhs.degree());
        Ok(MonoidPresentation { generators, relations, graded })
    }

    pub fn free(generators: Vec<String>) -> Result<Self, MonoidError> {
        Self::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Every relation preserves the coordinate sum.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn generator(&self, name: &str) -> Result<usize, MonoidError> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| MonoidError::UnknownGenerator(name.into()))
    }

    pub fn zero(&self) -> MonoidElement {
        MonoidElement::zero(self.rank())
    }

    pub fn unit(&self, i: usize) -> MonoidElement {
        MonoidElement::unit(self.rank(), i)
    }

    pub fn check(&self, x: &MonoidElement) -> Result<(), MonoidError> {
        if x.len() != self.rank() {
            return Err(MonoidError::DimensionMismatch { expected: self.rank(), found: x.len() });
        }
        Ok(())
    }

    /// Parses `"2*w + v"`, a bare generator name, or `"0"` when no generator is named `0`.
    pub fn parse_element(&self, text: &str) -> Result<MonoidElement, MonoidError> {
        let mut out = self.zero();
        let text = text.trim();
        if text.is_empty() {
            return Err(MonoidError::Parse(text.into()));
        }
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(MonoidError::Parse(text.into()));
            }
            if term.chars().all(|c| c.is_ascii_digit()) && self.generator(term).is_err() {
                if term.parse::<u32>().ok() == Some(0) {
                    continue;
                }
                return Err(MonoidError::Parse(text.into()));
            }
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (c.trim().parse::<u32>().map_err(|_| MonoidError::Parse(text.into()))?, n.trim()),
                None => (1, term),
            };
            let i = self.generator(name)?;
            out.0[i] += coef;
        }
        Ok(out)
    }

    /// Inverse of [`Self::parse_element`], in generator order.
    pub fn format_element(&self, x: &MonoidElement) -> String {
        let terms: Vec<String> = x
            .support()
            .map(|i| if x.0[i] == 1 { self.generators[i].clone() } else { format!("{}*{}", x.0[i], self.generators[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_spec(&self) -> PresentationSpec {
        let side = |x: &MonoidElement| x.support().map(|i| (self.generators[i].clone(), x.0[i])).collect();
        PresentationSpec {
            generators: self.generators.clone(),
            relations: self.relations.iter().map(|r| RelationSpec { lhs: side(&r.lhs), rhs: side(&r.rhs) }).collect(),
        }
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Self, MonoidError> {
        let n = spec.generators.len();
        let index = |name: &str| {
            spec.generators.iter().position(|g| g == name).ok_or_else(|| MonoidError::UnknownGenerator(name.into()))
        };
        let mut relations = Vec::with_capacity(spec.relations.len());
        for r in &spec.relations {
            let mut lhs = MonoidElement::zero(n);
            let mut rhs = MonoidElement::zero(n);
            for (g, c) in &r.lhs {
                lhs.0[index(g)?] += c;
            }
            for (g, c) in &r.rhs {
                rhs.0[index(g)?] += c;
            }
            relations.push(Relation { lhs, rhs });
        }
        Self::new(spec.generators.clone(), relations)
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", self.format_element(&r.lhs), self.format_element(&r.rhs)))
            .collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub lhs: BTreeMap<String, u32>,
    pub rhs: BTreeMap<String, u32>,
}

/// `{"generators": [...], "relations": [{"lhs": {gen: count}, "rhs": {...}}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    pub relations: Vec<RelationSpec>,
}

/// `a_v = sum_{r(e) = v} a_{s(e)}` for every non-source `v`.
pub fn graph_monoid(g: &DirectedGraph) -> MonoidPresentation {
    separated_monoid(&SeparatedGraph::trivial(g.clone()))
}

/// `a_v = sum_{e in X} a_{s(e)}` for every class `X` in `C_v`.
pub fn separated_monoid(sg: &SeparatedGraph) -> MonoidPresentation {
    let g = sg.graph();
    let n = g.vertex_count();
    let mut relations = Vec::with_capacity(sg.class_count());
    for v in 0..n {
        for class in sg.classes(v) {
            let mut rhs = MonoidElement::zero(n);
            for &e in class {
                rhs.0[g.source(e)] += 1;
            }
            relations.push(Relation { lhs: MonoidElement::unit(n, v), rhs });
        }
    }
    MonoidPresentation::new(g.vertex_names().to_vec(), relations).expect("vertex names are unique")
}

/// `<a | p a = q a>` with `p < q`.
pub fn cyclic_monoid(p: u32, q: u32) -> Result<MonoidPresentation, MonoidError> {
    if p == 0 || p >= q {
        return Err(MonoidError::BadParameter(format!("cyclic monoid needs 1 <= p < q, got p={p}, q={q}")));
    }
    MonoidPresentation::new(
        vec!["a".into()],
        vec![Relation { lhs: MonoidElement(vec![p]), rhs: MonoidElement(vec![q]) }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, fullshift, line, rose};

    #[test]
    fn graph_monoid_relations() {
        let r = graph_monoid(&rose(3).unwrap());
        assert_eq!(r.to_string(), "<v | v = 3*v>");
        let l = graph_monoid(&line(3).unwrap());
        assert_eq!(l.to_string(), "<v1, v2, v3 | v1 = v2, v2 = v3>");
        let only_sources = graph_monoid(&DirectedGraph::new::<&str, &str>(&["a", "b"], &[]).unwrap());
        assert!(only_sources.relations().is_empty());
    }

    #[test]
    fn separated_monoid_relations() {
        assert_eq!(separated_monoid(&emn(2, 3).unwrap()).to_string(), "<v, w | v = 3*w, v = 2*w>");
        assert_eq!(separated_monoid(&fullshift()).to_string(), "<v, 0, 1 | v = 0 + 1, v = 0 + 1>");
        let t = SeparatedGraph::trivial(line(3).unwrap());
        assert_eq!(separated_monoid(&t), graph_monoid(&line(3).unwrap()));
    }

    #[test]
    fn cyclic_monoids() {
        assert_eq!(cyclic_monoid(1, 2).unwrap().to_string(), "<a | a = 2*a>");
        assert!(cyclic_monoid(3, 3).is_err());
        assert!(cyclic_monoid(0, 3).is_err());
    }

    #[test]
    fn element_parsing() {
        let p = separated_monoid(&emn(2, 3).unwrap());
        assert_eq!(p.parse_element("2*w + v").unwrap(), MonoidElement(vec![1, 2]));
        assert_eq!(p.parse_element("w + w").unwrap(), MonoidElement(vec![0, 2]));
        assert_eq!(p.parse_element("0").unwrap(), MonoidElement(vec![0, 0]));
        assert!(matches!(p.parse_element("q"), Err(MonoidError::UnknownGenerator(_))));
        assert!(p.parse_element("2*").is_err());
        let f = separated_monoid(&fullshift());
        assert_eq!(f.parse_element("0 + 1").unwrap(), MonoidElement(vec![0, 1, 1]));
        assert_eq!(p.format_element(&MonoidElement(vec![1, 2])), "v + 2*w");
    }

    #[test]
    fn spec_round_trip() {
        let p = separated_monoid(&emn(2, 3).unwrap());
        let json = serde_json::to_string(&p.to_spec()).unwrap();
        assert_eq!(MonoidPresentation::from_spec(&serde_json::from_str(&json).unwrap()).unwrap(), p);
        assert!(!p.is_graded());
        assert!(!separated_monoid(&fullshift()).is_graded());
    }
}
