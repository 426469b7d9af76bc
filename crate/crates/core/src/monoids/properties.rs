//! Stable finiteness, Tarski measures, cyclic type and the cancellation hierarchy.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{sub_elements, CertifiedClaim, Certificate, MeasureCertificate};
use super::cone::integer_cone_rays;
use super::search::{moves, positive_ray_sum, Decider, Direction, EqVerdict, LeqVerdict, RewriteProof, SearchBudget};
use super::{MonoidElement, MonoidError, MonoidPresentation};
use crate::graphs::DirectedGraph;
use crate::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum StablyFinite {
    Yes {
        #[serde(with = "crate::scalar::rational_vec")]
        weights: Vec<Rational>,
    },
    /// `x + b = x` with `b != 0`.
    No { x: MonoidElement, b: MonoidElement, proof: RewriteProof, nonzero: Certificate },
    Unknown,
}

impl StablyFinite {
    pub fn claim(&self) -> Option<CertifiedClaim> {
        match self {
            StablyFinite::Yes { weights } => Some(CertifiedClaim::StablyFinite { weights: weights.clone() }),
            StablyFinite::No { x, b, proof, nonzero } => Some(CertifiedClaim::NotStablyFinite {
                x: x.clone(),
                b: b.clone(),
                proof: proof.clone(),
                nonzero: nonzero.clone(),
            }),
            StablyFinite::Unknown => None,
        }
    }
}

fn to_rationals(v: &[Integer]) -> Vec<Rational> {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// Elements of coordinate sum `d`, ordered by their nondecreasing index words.
pub(crate) fn elements_of_degree(n: usize, d: u32) -> Vec<MonoidElement> {
    if n == 0 {
        return if d == 0 { vec![MonoidElement(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut word = vec![0usize; d as usize];
    loop {
        let mut x = MonoidElement::zero(n);
        for &i in &word {
            x.0[i] += 1;
        }
        out.push(x);
        let Some(pos) = word.iter().rposition(|&i| i + 1 < n) else { break };
        let next = word[pos] + 1;
        for w in &mut word[pos..] {
            *w = next;
        }
    }
    out
}

fn slice_size(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    let k = (n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul(u128::from(d) + i) / i;
    }
    acc
}

pub fn is_stably_finite(p: &MonoidPresentation, budget: &SearchBudget) -> StablyFinite {
    if p.is_graded() {
        return StablyFinite::Yes { weights: vec![Rational::one(); p.rank()] };
    }
    let decider = Decider::new(p, budget.clone());
    if let Some(sum) = decider.rays().and_then(|r| positive_ray_sum(r, p.rank())) {
        return StablyFinite::Yes { weights: to_rationals(&sum) };
    }
    let candidates = (1..=2).flat_map(|d| elements_of_degree(p.rank(), d));
    for x in candidates {
        let Some((y, path)) = decider.strict_dominator(&x) else { continue };
        let b = y.checked_sub(&x).expect("dominator");
        if let Ok(EqVerdict::Distinct { certificate }) = decider.equal(&b, &p.zero()) {
            let proof = RewriteProof { from_x: Vec::new(), from_y: path };
            return StablyFinite::No { x, b, proof, nonzero: certificate };
        }
    }
    StablyFinite::Unknown
}

/// No vertex on a cycle receives two or more edges.
pub fn graph_stably_finite(g: &DirectedGraph) -> bool {
    (0..g.vertex_count()).all(|v| !g.on_cycle(v) || g.incoming(v).len() < 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum TarskiVerdict {
    Measure { measure: MeasureCertificate },
    /// `(n + 1) e + z = n e`.
    Paradox { n: u32, z: MonoidElement, proof: RewriteProof },
    Unknown,
}

impl TarskiVerdict {
    pub fn claim(&self, e: &MonoidElement) -> Option<CertifiedClaim> {
        match self {
            TarskiVerdict::Measure { measure } => Some(CertifiedClaim::Measure { e: e.clone(), measure: measure.clone() }),
            TarskiVerdict::Paradox { n, z, proof } => {
                Some(CertifiedClaim::Paradox { e: e.clone(), n: *n, z: z.clone(), proof: proof.clone() })
            }
            TarskiVerdict::Unknown => None,
        }
    }
}

/// Smallest generator set containing `seed` such that no relation has exactly one side meeting it.
fn infinite_closure(p: &MonoidPresentation, seed: usize) -> Option<BTreeSet<usize>> {
    let mut set = BTreeSet::from([seed]);
    loop {
        let mut grew = false;
        for r in p.relations() {
            let hits = |x: &MonoidElement| x.support().any(|i| set.contains(&i));
            let (l, rr) = (hits(&r.lhs), hits(&r.rhs));
            if l == rr {
                continue;
            }
            let other = if l { &r.rhs } else { &r.lhs };
            if other.is_zero() {
                return None;
            }
            let add: Vec<usize> = other.support().collect();
            set.extend(add);
            grew = true;
        }
        if !grew {
            return Some(set);
        }
    }
}

fn finite_measure(p: &MonoidPresentation, e: &MonoidElement, inf: &BTreeSet<usize>) -> Option<MeasureCertificate> {
    let n = p.rank();
    let mut eqs: Vec<Vec<Integer>> = Vec::new();
    for r in p.relations() {
        if r.lhs.support().chain(r.rhs.support()).any(|i| inf.contains(&i)) {
            continue;
        }
        eqs.push(r.lhs.0.iter().zip(&r.rhs.0).map(|(&a, &b)| Integer::from(a) - Integer::from(b)).collect());
    }
    for &i in inf {
        let mut row = vec![Integer::zero(); n];
        row[i] = Integer::one();
        eqs.push(row);
    }
    let rays = integer_cone_rays::<Integer>(n, &eqs, 20_000)?;
    for ray in rays {
        let w = to_rationals(&ray);
        let total = super::certificate::weights_dot(&w, e);
        if total > Rational::zero() {
            let weights = w.into_iter().map(|c| c / total.clone()).collect();
            return Some(MeasureCertificate { infinite: inf.iter().copied().collect(), weights });
        }
    }
    None
}

pub fn tarski_measure(
    p: &MonoidPresentation,
    e: &MonoidElement,
    budget: &SearchBudget,
) -> Result<TarskiVerdict, MonoidError> {
    p.check(e)?;
    if e.is_zero() {
        return Err(MonoidError::ZeroElement);
    }
    if p.rank() <= budget.max_cone_generators {
        let mut candidates: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        for g in 0..p.rank() {
            if let Some(set) = infinite_closure(p, g) {
                if !candidates.contains(&set) {
                    candidates.push(set);
                }
            }
        }
        for inf in candidates {
            if e.support().any(|i| inf.contains(&i)) {
                continue;
            }
            if let Some(measure) = finite_measure(p, e, &inf) {
                return Ok(TarskiVerdict::Measure { measure });
            }
        }
    }
    let decider = Decider::new(p, budget.clone());
    for n in 1..=budget.max_multiple {
        if let LeqVerdict::Leq { z, proof } = decider.leq(&e.scale(n + 1), &e.scale(n))? {
            return Ok(TarskiVerdict::Paradox { n, z, proof });
        }
    }
    Ok(TarskiVerdict::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum CyclicType {
    /// `m x` and `n x` certified distinct for all `m < n <= max_multiple`.
    Free { claims: Vec<CertifiedClaim> },
    LeavittType { m: u32, n: u32, claims: Vec<CertifiedClaim> },
    /// First pair left undecided.
    Unknown { m: u32, n: u32 },
}

pub fn cyclic_type(p: &MonoidPresentation, x: &MonoidElement, budget: &SearchBudget) -> Result<CyclicType, MonoidError> {
    p.check(x)?;
    if x.is_zero() {
        return Err(MonoidError::ZeroElement);
    }
    let decider = Decider::new(p, budget.clone());
    let mut claims = Vec::new();
    for n in 2..=budget.max_multiple.max(2) {
        for m in 1..n {
            let (a, b) = (x.scale(m), x.scale(n));
            match decider.equal(&a, &b)? {
                EqVerdict::Equal { proof } => {
                    claims.push(CertifiedClaim::Equal { x: a, y: b, proof });
                    return Ok(CyclicType::LeavittType { m, n, claims });
                }
                EqVerdict::Distinct { certificate } => claims.push(CertifiedClaim::Distinct { x: a, y: b, certificate }),
                EqVerdict::Unknown => return Ok(CyclicType::Unknown { m, n }),
            }
        }
    }
    Ok(CyclicType::Free { claims })
}

/// Bounded search for `z11 + z12 = a`, `z21 + z22 = b`, `z11 + z21 = c`, `z12 + z22 = d`.
/// Returns `[z11, z12, z21, z22]`.
pub fn find_refinement(
    p: &MonoidPresentation,
    a: &MonoidElement,
    b: &MonoidElement,
    c: &MonoidElement,
    d: &MonoidElement,
    budget: &SearchBudget,
) -> Result<Option<[MonoidElement; 4]>, MonoidError> {
    for x in [a, b, c, d] {
        p.check(x)?;
    }
    let decider = Decider::new(p, budget.clone());
    let ca = decider.bounded_class(a);
    let cb = decider.bounded_class(b);
    let cc: BTreeSet<MonoidElement> = decider.bounded_class(c).into_iter().collect();
    let cd: BTreeSet<MonoidElement> = decider.bounded_class(d).into_iter().collect();
    for a1 in &ca {
        for z11 in sub_elements(a1) {
            let z12 = a1.checked_sub(&z11).expect("sub-element");
            for b1 in &cb {
                for z21 in sub_elements(b1) {
                    let z22 = b1.checked_sub(&z21).expect("sub-element");
                    if cc.contains(&z11.add(&z21)) && cd.contains(&z12.add(&z22)) {
                        return Ok(Some([z11, z12, z21, z22]));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Cancellative,
    Separative,
    StronglySeparative,
    Unperforated,
    PlainParadoxes,
    Refinement,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Cancellative,
        Property::Separative,
        Property::StronglySeparative,
        Property::Unperforated,
        Property::PlainParadoxes,
        Property::Refinement,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum PropertyVerdict {
    /// `witness` names the elements of the counterexample; `claims` certify each assertion.
    CounterexampleFound { witness: Vec<(String, MonoidElement)>, claims: Vec<CertifiedClaim> },
    NoCounterexampleWithinScope,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEntry {
    pub property: Property,
    pub verdict: PropertyVerdict,
    /// Candidate tuples examined.
    pub checked: u64,
    /// Candidates where a needed decision came back `Unknown`.
    pub undecided: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationScope {
    /// Elements of coordinate sum up to this bound are enumerated.
    pub max_degree: u32,
    /// Multiples `n` for unperforation and paradoxes, with `n * degree <= 2 * max_degree`.
    pub max_multiple: u32,
    pub budget: SearchBudget,
}

impl Default for CancellationScope {
    fn default() -> Self {
        CancellationScope {
            max_degree: 4,
            max_multiple: 4,
            budget: SearchBudget { max_depth: 8, max_frontier: 5_000, ..SearchBudget::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationReport {
    pub graded: bool,
    pub scope: CancellationScope,
    pub entries: Vec<PropertyEntry>,
}

impl CancellationReport {
    pub fn entry(&self, property: Property) -> Option<&PropertyEntry> {
        self.entries.iter().find(|e| e.property == property)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tri {
    Yes,
    No,
    Unknown,
}

struct Slice {
    id: HashMap<MonoidElement, usize>,
    classes: Vec<Vec<MonoidElement>>,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

impl Slice {
    fn build(p: &MonoidPresentation, d: u32) -> Slice {
        let elems = elements_of_degree(p.rank(), d);
        let index: HashMap<MonoidElement, usize> = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        for (i, x) in elems.iter().enumerate() {
            for (_, y) in moves(p, x, Direction::Forward) {
                let j = index[&y];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut class_of_root = HashMap::new();
        let mut classes: Vec<Vec<MonoidElement>> = Vec::new();
        let mut id = HashMap::with_capacity(elems.len());
        for (i, x) in elems.into_iter().enumerate() {
            let root = find(&mut parent, i);
            let c = *class_of_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(x.clone());
            id.insert(x, c);
        }
        Slice { id, classes }
    }
}

/// Decisions for the report: exact slice partitions when graded, cached budgeted searches otherwise.
struct Oracle<'a> {
    decider: Decider<'a>,
    slices: HashMap<u64, Option<Slice>>,
    eq_cache: HashMap<(MonoidElement, MonoidElement), EqVerdict>,
    leq_cache: HashMap<(MonoidElement, MonoidElement), LeqVerdict>,
}

impl<'a> Oracle<'a> {
    fn new(p: &'a MonoidPresentation, budget: SearchBudget) -> Self {
        Oracle { decider: Decider::new(p, budget), slices: HashMap::new(), eq_cache: HashMap::new(), leq_cache: HashMap::new() }
    }

    fn p(&self) -> &MonoidPresentation {
        self.decider.presentation()
    }

    fn slice(&mut self, d: u64) -> Option<&Slice> {
        if !self.p().is_graded() {
            return None;
        }
        let p = self.decider.presentation();
        let cap = self.decider.budget().max_frontier as u128;
        self.slices
            .entry(d)
            .or_insert_with(|| {
                let d32 = u32::try_from(d).ok()?;
                (slice_size(p.rank(), d32) <= cap).then(|| Slice::build(p, d32))
            })
            .as_ref()
    }

    fn key(&mut self, x: &MonoidElement) -> Option<(u64, usize)> {
        let d = x.degree();
        self.slice(d).map(|s| (d, s.id[x]))
    }

    fn eq_verdict(&mut self, x: &MonoidElement, y: &MonoidElement) -> EqVerdict {
        let k = (x.clone(), y.clone());
        if let Some(v) = self.eq_cache.get(&k) {
            return v.clone();
        }
        let v = self.decider.equal(x, y).unwrap_or(EqVerdict::Unknown);
        self.eq_cache.insert(k, v.clone());
        v
    }

    fn leq_verdict(&mut self, x: &MonoidElement, y: &MonoidElement) -> LeqVerdict {
        let k = (x.clone(), y.clone());
        if let Some(v) = self.leq_cache.get(&k) {
            return v.clone();
        }
        let v = self.decider.leq(x, y).unwrap_or(LeqVerdict::Unknown);
        self.leq_cache.insert(k, v.clone());
        v
    }

    fn eq(&mut self, x: &MonoidElement, y: &MonoidElement) -> Tri {
        if x == y {
            return Tri::Yes;
        }
        if self.p().is_graded() {
            if x.degree() != y.degree() {
                return Tri::No;
            }
            if let Some(s) = self.slice(x.degree()) {
                return if s.id[x] == s.id[y] { Tri::Yes } else { Tri::No };
            }
        }
        match self.eq_verdict(x, y) {
            EqVerdict::Equal { .. } => Tri::Yes,
            EqVerdict::Distinct { .. } => Tri::No,
            EqVerdict::Unknown => Tri::Unknown,
        }
    }

    fn leq(&mut self, x: &MonoidElement, y: &MonoidElement) -> Tri {
        if x.is_zero() || x == y {
            return Tri::Yes;
        }
        if self.p().is_graded() {
            if x.degree() > y.degree() {
                return Tri::No;
            }
            if let Some(s) = self.slice(y.degree()) {
                let c = s.id[y];
                return if s.classes[c].iter().any(|m| m.dominates(x)) { Tri::Yes } else { Tri::No };
            }
        }
        match self.leq_verdict(x, y) {
            LeqVerdict::Leq { .. } => Tri::Yes,
            LeqVerdict::NotLeq { .. } => Tri::No,
            LeqVerdict::Unknown => Tri::Unknown,
        }
    }

    fn eq_claim(&mut self, x: &MonoidElement, y: &MonoidElement) -> Option<CertifiedClaim> {
        match self.eq_verdict(x, y) {
            EqVerdict::Equal { proof } => Some(CertifiedClaim::Equal { x: x.clone(), y: y.clone(), proof }),
            EqVerdict::Distinct { certificate } => {
                Some(CertifiedClaim::Distinct { x: x.clone(), y: y.clone(), certificate })
            }
            EqVerdict::Unknown => None,
        }
    }

    fn leq_claim(&mut self, x: &MonoidElement, y: &MonoidElement) -> Option<CertifiedClaim> {
        match self.leq_verdict(x, y) {
            LeqVerdict::Leq { z, proof } => Some(CertifiedClaim::Leq { x: x.clone(), y: y.clone(), z, proof }),
            LeqVerdict::NotLeq { certificate } => Some(CertifiedClaim::NotLeq { x: x.clone(), y: y.clone(), certificate }),
            LeqVerdict::Unknown => None,
        }
    }
}

struct Tally {
    checked: u64,
    undecided: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, undecided: 0 }
    }

    fn entry(self, property: Property, verdict: PropertyVerdict) -> PropertyEntry {
        PropertyEntry { property, verdict, checked: self.checked, undecided: self.undecided }
    }
}

fn found(witness: &[(&str, &MonoidElement)], claims: Vec<Option<CertifiedClaim>>) -> Option<PropertyVerdict> {
    let claims: Option<Vec<CertifiedClaim>> = claims.into_iter().collect();
    Some(PropertyVerdict::CounterexampleFound {
        witness: witness.iter().map(|(n, x)| (n.to_string(), (*x).clone())).collect(),
        claims: claims?,
    })
}

fn cancellative(o: &mut Oracle, elems: &[MonoidElement]) -> PropertyEntry {
    let mut t = Tally::new();
    let graded = o.p().is_graded();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            if graded && x.degree() != y.degree() {
                continue;
            }
            let c = o.eq(x, y);
            if c == Tri::Yes {
                continue;
            }
            for z in elems {
                t.checked += 1;
                let (xz, yz) = (x.add(z), y.add(z));
                match (o.eq(&xz, &yz), c) {
                    (Tri::No, _) => {}
                    (Tri::Yes, Tri::No) => {
                        let claims = vec![o.eq_claim(&xz, &yz), o.eq_claim(x, y)];
                        match found(&[("x", x), ("y", y), ("z", z)], claims) {
                            Some(v) => return t.entry(Property::Cancellative, v),
                            None => t.undecided += 1,
                        }
                    }
                    _ => t.undecided += 1,
                }
            }
        }
    }
    t.entry(Property::Cancellative, PropertyVerdict::NoCounterexampleWithinScope)
}

fn separative(o: &mut Oracle, elems: &[MonoidElement], strong: bool) -> PropertyEntry {
    let property = if strong { Property::StronglySeparative } else { Property::Separative };
    let mut t = Tally::new();
    let graded = o.p().is_graded();
    for (i, x) in elems.iter().enumerate() {
        let ys: Box<dyn Iterator<Item = &MonoidElement>> =
            if strong { Box::new(elems.iter()) } else { Box::new(elems[i + 1..].iter()) };
        for y in ys {
            if x == y || (graded && x.degree() != y.degree()) {
                continue;
            }
            t.checked += 1;
            let (xx, xy, yy) = (x.scale(2), x.add(y), y.scale(2));
            let h1 = o.eq(&xx, &xy);
            if h1 == Tri::No {
                continue;
            }
            let h2 = if strong { Tri::Yes } else { o.eq(&xy, &yy) };
            if h2 == Tri::No {
                continue;
            }
            let c = o.eq(x, y);
            if c == Tri::Yes {
                continue;
            }
            if h1 == Tri::Yes && h2 == Tri::Yes && c == Tri::No {
                let mut claims = vec![o.eq_claim(&xx, &xy)];
                if !strong {
                    claims.push(o.eq_claim(&xy, &yy));
                }
                claims.push(o.eq_claim(x, y));
                match found(&[("x", x), ("y", y)], claims) {
                    Some(v) => return t.entry(property, v),
                    None => t.undecided += 1,
                }
            } else {
                t.undecided += 1;
            }
        }
    }
    t.entry(property, PropertyVerdict::NoCounterexampleWithinScope)
}

fn unperforated(o: &mut Oracle, elems: &[MonoidElement], scope: &CancellationScope) -> PropertyEntry {
    let mut t = Tally::new();
    let limit = 2 * u64::from(scope.max_degree);
    for x in elems {
        for y in elems {
            if x == y {
                continue;
            }
            let top = x.degree().max(y.degree());
            let multiples: Vec<u32> = (2..=scope.max_multiple).filter(|&n| u64::from(n) * top <= limit).collect();
            if multiples.is_empty() {
                continue;
            }
            let c = o.leq(x, y);
            if c == Tri::Yes {
                continue;
            }
            for n in multiples {
                t.checked += 1;
                let (nx, ny) = (x.scale(n), y.scale(n));
                match (o.leq(&nx, &ny), c) {
                    (Tri::No, _) => {}
                    (Tri::Yes, Tri::No) => {
                        let claims = vec![o.leq_claim(&nx, &ny), o.leq_claim(x, y)];
                        match found(&[("x", x), ("y", y), ("n", &MonoidElement(vec![n]))], claims) {
                            Some(v) => return t.entry(Property::Unperforated, v),
                            None => t.undecided += 1,
                        }
                    }
                    _ => t.undecided += 1,
                }
            }
        }
    }
    t.entry(Property::Unperforated, PropertyVerdict::NoCounterexampleWithinScope)
}

fn plain_paradoxes(o: &mut Oracle, elems: &[MonoidElement], scope: &CancellationScope) -> PropertyEntry {
    let mut t = Tally::new();
    if o.p().is_graded() {
        t.checked = elems.len() as u64;
        return t.entry(Property::PlainParadoxes, PropertyVerdict::NoCounterexampleWithinScope);
    }
    for x in elems {
        let c = o.leq(&x.scale(2), x);
        if c == Tri::Yes {
            t.checked += 1;
            continue;
        }
        for n in 2..=scope.max_multiple {
            t.checked += 1;
            let (big, small) = (x.scale(n + 1), x.scale(n));
            match (o.leq(&big, &small), c) {
                (Tri::No, _) => {}
                (Tri::Yes, Tri::No) => {
                    let claims = vec![o.leq_claim(&big, &small), o.leq_claim(&x.scale(2), x)];
                    match found(&[("x", x), ("n", &MonoidElement(vec![n]))], claims) {
                        Some(v) => return t.entry(Property::PlainParadoxes, v),
                        None => t.undecided += 1,
                    }
                }
                _ => t.undecided += 1,
            }
        }
    }
    t.entry(Property::PlainParadoxes, PropertyVerdict::NoCounterexampleWithinScope)
}

type ClassKey = (u64, usize);

fn refinement(o: &mut Oracle, scope: &CancellationScope) -> PropertyEntry {
    let mut t = Tally::new();
    if !o.p().is_graded() {
        let reason = "exhaustive refinement search needs finite degree slices".to_string();
        return t.entry(Property::Refinement, PropertyVerdict::Skipped { reason });
    }
    for s in 1..=u64::from(scope.max_degree) {
        for d in 0..=s {
            if o.slice(d).is_none() {
                t.undecided += 1;
                return t.entry(Property::Refinement, PropertyVerdict::NoCounterexampleWithinScope);
            }
        }
        let classes = o.slice(s).expect("checked").classes.clone();
        for class in &classes {
            let mut pairs: BTreeSet<(ClassKey, ClassKey)> = BTreeSet::new();
            for u in class {
                for a in sub_elements(u) {
                    let b = u.checked_sub(&a).expect("sub-element");
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    pairs.insert((o.key(&a).expect("slice"), o.key(&b).expect("slice")));
                }
            }
            for &(ka, kb) in &pairs {
                t.checked += 1;
                let ma = o.slice(ka.0).expect("slice").classes[ka.1].clone();
                let mb = o.slice(kb.0).expect("slice").classes[kb.1].clone();
                let mut reached: BTreeSet<(ClassKey, ClassKey)> = BTreeSet::new();
                for a in &ma {
                    for z11 in sub_elements(a) {
                        let z12 = a.checked_sub(&z11).expect("sub-element");
                        for b in &mb {
                            for z21 in sub_elements(b) {
                                let z22 = b.checked_sub(&z21).expect("sub-element");
                                let k1 = o.key(&z11.add(&z21)).expect("slice");
                                let k2 = o.key(&z12.add(&z22)).expect("slice");
                                reached.insert((k1, k2));
                            }
                        }
                    }
                }
                if let Some(&(kc, kd)) = pairs.iter().find(|pair| !reached.contains(pair)) {
                    let mc = o.slice(kc.0).expect("slice").classes[kc.1].clone();
                    let md = o.slice(kd.0).expect("slice").classes[kd.1].clone();
                    let (a, b, c, d) = (ma[0].clone(), mb[0].clone(), mc[0].clone(), md[0].clone());
                    let no_ref = CertifiedClaim::NoRefinement {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                        d: d.clone(),
                        classes: vec![ma, mb, mc, md],
                    };
                    let claims = vec![o.eq_claim(&a.add(&b), &c.add(&d)), Some(no_ref)];
                    match found(&[("a", &a), ("b", &b), ("c", &c), ("d", &d)], claims) {
                        Some(v) => return t.entry(Property::Refinement, v),
                        None => t.undecided += 1,
                    }
                }
            }
        }
    }
    t.entry(Property::Refinement, PropertyVerdict::NoCounterexampleWithinScope)
}

/// Bounded search for counterexamples to each property over elements of degree `1..=max_degree`.
pub fn cancellation_report(p: &MonoidPresentation, scope: &CancellationScope) -> CancellationReport {
    let mut o = Oracle::new(p, scope.budget.clone());
    let elems: Vec<MonoidElement> = (1..=scope.max_degree).flat_map(|d| elements_of_degree(p.rank(), d)).collect();
    let entries = vec![
        cancellative(&mut o, &elems),
        separative(&mut o, &elems, false),
        separative(&mut o, &elems, true),
        unperforated(&mut o, &elems, scope),
        plain_paradoxes(&mut o, &elems, scope),
        refinement(&mut o, scope),
    ];
    CancellationReport { graded: p.is_graded(), scope: scope.clone(), entries }
}
