//! Certificates and their independent verification.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclic::{cyclic_le, cyclic_normal_form};
use super::search::{moves, Direction, RewriteProof};
use super::{MonoidElement, MonoidPresentation};
use crate::Rational;

/// Evidence that two elements differ, or that one is not below another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Nonnegative weights constant on every relation.
    RationalWeights {
        #[serde(with = "crate::scalar::rational_vec")]
        weights: Vec<Rational>,
    },
    /// Homomorphism into `<a | p a = q a>` sending generator `i` to `values[i] * a`.
    CyclicHom { p: u32, q: u32, values: Vec<u32> },
    /// A congruence class closed under every move.
    ClosedClass { members: Vec<MonoidElement> },
    /// Rewrite paths to a common element.
    RewritePath(RewriteProof),
}

/// Homomorphism to `[0, inf]`: generators in `infinite` map to infinity, the rest by `weights`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureCertificate {
    pub infinite: Vec<usize>,
    #[serde(with = "crate::scalar::rational_vec")]
    pub weights: Vec<Rational>,
}

/// A self-contained statement about a presentation, checkable offline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim")]
pub enum CertifiedClaim {
    Equal { x: MonoidElement, y: MonoidElement, proof: RewriteProof },
    Distinct { x: MonoidElement, y: MonoidElement, certificate: Certificate },
    /// `x + z = y`.
    Leq { x: MonoidElement, y: MonoidElement, z: MonoidElement, proof: RewriteProof },
    NotLeq { x: MonoidElement, y: MonoidElement, certificate: Certificate },
    /// Strictly positive invariant weights, so `x + b = x` forces `b = 0`.
    StablyFinite {
        #[serde(with = "crate::scalar::rational_vec")]
        weights: Vec<Rational>,
    },
    /// `x + b = x` with `b != 0`.
    NotStablyFinite { x: MonoidElement, b: MonoidElement, proof: RewriteProof, nonzero: Certificate },
    Measure { e: MonoidElement, measure: MeasureCertificate },
    /// `(n + 1) e + z = n e`.
    Paradox { e: MonoidElement, n: u32, z: MonoidElement, proof: RewriteProof },
    /// No `z_ij` with `a = z11 + z12`, `b = z21 + z22`, `c = z11 + z21`, `d = z12 + z22`.
    /// `classes` are the full classes of `a`, `b`, `c`, `d`.
    NoRefinement {
        a: MonoidElement,
        b: MonoidElement,
        c: MonoidElement,
        d: MonoidElement,
        classes: Vec<Vec<MonoidElement>>,
    },
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("dimension mismatch")]
    Dimension,
    #[error("rewrite path does not replay or does not meet")]
    BadPath,
    #[error("weights are negative or not invariant under relation {0}")]
    NotInvariant(usize),
    #[error("certificate does not separate the elements")]
    NotSeparating,
    #[error("cyclic parameters must satisfy 1 <= p < q")]
    BadCyclic,
    #[error("class is not closed: {0}")]
    NotClosed(String),
    #[error("certificate kind {0} cannot support this claim")]
    WrongKind(&'static str),
    #[error("weights are not strictly positive")]
    NotPositive,
    #[error("measure is inconsistent: {0}")]
    BadMeasure(String),
}

pub(crate) fn weights_dot(w: &[Rational], x: &MonoidElement) -> Rational {
    w.iter().zip(&x.0).fold(Rational::zero(), |acc, (wi, &c)| acc + wi.clone() * Rational::from_integer(c.into()))
}

fn cyclic_value(values: &[u32], x: &MonoidElement) -> u64 {
    values.iter().zip(&x.0).map(|(&v, &c)| u64::from(v) * u64::from(c)).sum()
}

fn check_dims(p: &MonoidPresentation, xs: &[&MonoidElement]) -> Result<(), VerifyError> {
    if xs.iter().all(|x| x.len() == p.rank()) {
        Ok(())
    } else {
        Err(VerifyError::Dimension)
    }
}

fn check_weights(p: &MonoidPresentation, w: &[Rational]) -> Result<(), VerifyError> {
    if w.len() != p.rank() {
        return Err(VerifyError::Dimension);
    }
    if w.iter().any(|c| *c < Rational::zero()) {
        return Err(VerifyError::NotInvariant(usize::MAX));
    }
    for (i, r) in p.relations().iter().enumerate() {
        if weights_dot(w, &r.lhs) != weights_dot(w, &r.rhs) {
            return Err(VerifyError::NotInvariant(i));
        }
    }
    Ok(())
}

fn check_cyclic(p: &MonoidPresentation, pp: u32, q: u32, values: &[u32]) -> Result<(), VerifyError> {
    if pp == 0 || pp >= q {
        return Err(VerifyError::BadCyclic);
    }
    if values.len() != p.rank() {
        return Err(VerifyError::Dimension);
    }
    for (i, r) in p.relations().iter().enumerate() {
        let a = cyclic_normal_form(cyclic_value(values, &r.lhs), pp, q);
        let b = cyclic_normal_form(cyclic_value(values, &r.rhs), pp, q);
        if a != b {
            return Err(VerifyError::NotInvariant(i));
        }
    }
    Ok(())
}

fn check_closed(p: &MonoidPresentation, members: &[MonoidElement]) -> Result<BTreeSet<MonoidElement>, VerifyError> {
    let set: BTreeSet<MonoidElement> = members.iter().cloned().collect();
    for m in &set {
        if m.len() != p.rank() {
            return Err(VerifyError::Dimension);
        }
        for (_, n) in moves(p, m, Direction::Both) {
            if !set.contains(&n) {
                return Err(VerifyError::NotClosed(format!("{} -> {}", p.format_element(m), p.format_element(&n))));
            }
        }
    }
    Ok(set)
}

/// Checks that `cert` shows `x != y`.
pub(crate) fn verify_distinct(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    cert: &Certificate,
) -> Result<(), VerifyError> {
    check_dims(p, &[x, y])?;
    match cert {
        Certificate::RationalWeights { weights } => {
            check_weights(p, weights)?;
            if weights_dot(weights, x) == weights_dot(weights, y) {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::CyclicHom { p: pp, q, values } => {
            check_cyclic(p, *pp, *q, values)?;
            let a = cyclic_normal_form(cyclic_value(values, x), *pp, *q);
            let b = cyclic_normal_form(cyclic_value(values, y), *pp, *q);
            if a == b {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::ClosedClass { members } => {
            let set = check_closed(p, members)?;
            if set.contains(x) == set.contains(y) {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::RewritePath(_) => return Err(VerifyError::WrongKind("RewritePath")),
    }
    Ok(())
}

/// Checks that `cert` shows `x` is not below `y`.
pub(crate) fn verify_not_leq(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    cert: &Certificate,
) -> Result<(), VerifyError> {
    check_dims(p, &[x, y])?;
    match cert {
        Certificate::RationalWeights { weights } => {
            check_weights(p, weights)?;
            if weights_dot(weights, x) <= weights_dot(weights, y) {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::CyclicHom { p: pp, q, values } => {
            check_cyclic(p, *pp, *q, values)?;
            let a = cyclic_normal_form(cyclic_value(values, x), *pp, *q);
            let b = cyclic_normal_form(cyclic_value(values, y), *pp, *q);
            if cyclic_le(a, b, *pp) {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::ClosedClass { members } => {
            let set = check_closed(p, members)?;
            if !set.contains(y) || set.iter().any(|m| m.dominates(x)) {
                return Err(VerifyError::NotSeparating);
            }
        }
        Certificate::RewritePath(_) => return Err(VerifyError::WrongKind("RewritePath")),
    }
    Ok(())
}

fn verify_equal(p: &MonoidPresentation, x: &MonoidElement, y: &MonoidElement, proof: &RewriteProof) -> Result<(), VerifyError> {
    check_dims(p, &[x, y])?;
    proof.meet(p, x, y).map(|_| ()).ok_or(VerifyError::BadPath)
}

/// Verifies a claim against the presentation using only replay and arithmetic.
pub fn verify_certificate_claim(p: &MonoidPresentation, claim: &CertifiedClaim) -> Result<(), VerifyError> {
    match claim {
        CertifiedClaim::Equal { x, y, proof } => verify_equal(p, x, y, proof),
        CertifiedClaim::Distinct { x, y, certificate } => verify_distinct(p, x, y, certificate),
        CertifiedClaim::Leq { x, y, z, proof } => {
            check_dims(p, &[x, y, z])?;
            verify_equal(p, &x.add(z), y, proof)
        }
        CertifiedClaim::NotLeq { x, y, certificate } => verify_not_leq(p, x, y, certificate),
        CertifiedClaim::StablyFinite { weights } => {
            check_weights(p, weights)?;
            if weights.iter().any(|w| *w <= Rational::zero()) {
                return Err(VerifyError::NotPositive);
            }
            Ok(())
        }
        CertifiedClaim::NotStablyFinite { x, b, proof, nonzero } => {
            check_dims(p, &[x, b])?;
            verify_equal(p, &x.add(b), x, proof)?;
            verify_distinct(p, b, &p.zero(), nonzero)
        }
        CertifiedClaim::Measure { e, measure } => verify_measure(p, e, measure),
        CertifiedClaim::Paradox { e, n, z, proof } => {
            check_dims(p, &[e, z])?;
            if e.is_zero() {
                return Err(VerifyError::BadMeasure("paradox of the zero element".into()));
            }
            verify_equal(p, &e.scale(n + 1).add(z), &e.scale(*n), proof)
        }
        CertifiedClaim::NoRefinement { a, b, c, d, classes } => verify_no_refinement(p, [a, b, c, d], classes),
    }
}

/// Every `u` with `u <= x`, in increasing order.
pub(crate) fn sub_elements(x: &MonoidElement) -> Vec<MonoidElement> {
    let mut out = vec![MonoidElement(Vec::with_capacity(x.len()))];
    for &c in &x.0 {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=c).map(move |k| {
                    let mut v = prefix.clone();
                    v.0.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

fn verify_no_refinement(
    p: &MonoidPresentation,
    elems: [&MonoidElement; 4],
    classes: &[Vec<MonoidElement>],
) -> Result<(), VerifyError> {
    check_dims(p, &elems)?;
    if classes.len() != 4 {
        return Err(VerifyError::Dimension);
    }
    let mut sets = Vec::with_capacity(4);
    for (x, members) in elems.iter().zip(classes) {
        let set = check_closed(p, members)?;
        if !set.contains(*x) {
            return Err(VerifyError::NotClosed(format!("{} is not in its listed class", p.format_element(x))));
        }
        sets.push(set);
    }
    for a in &sets[0] {
        for z11 in sub_elements(a) {
            let z12 = a.checked_sub(&z11).expect("sub-element");
            for b in &sets[1] {
                for z21 in sub_elements(b) {
                    let z22 = b.checked_sub(&z21).expect("sub-element");
                    if sets[2].contains(&z11.add(&z21)) && sets[3].contains(&z12.add(&z22)) {
                        return Err(VerifyError::NotSeparating);
                    }
                }
            }
        }
    }
    Ok(())
}

fn verify_measure(p: &MonoidPresentation, e: &MonoidElement, m: &MeasureCertificate) -> Result<(), VerifyError> {
    check_dims(p, &[e])?;
    if m.weights.len() != p.rank() || m.infinite.iter().any(|&i| i >= p.rank()) {
        return Err(VerifyError::Dimension);
    }
    if m.weights.iter().any(|w| *w < Rational::zero()) {
        return Err(VerifyError::BadMeasure("negative weight".into()));
    }
    let inf: BTreeSet<usize> = m.infinite.iter().copied().collect();
    let hits = |x: &MonoidElement| x.support().any(|i| inf.contains(&i));
    for (i, r) in p.relations().iter().enumerate() {
        match (hits(&r.lhs), hits(&r.rhs)) {
            (true, true) => {}
            (false, false) => {
                if weights_dot(&m.weights, &r.lhs) != weights_dot(&m.weights, &r.rhs) {
                    return Err(VerifyError::NotInvariant(i));
                }
            }
            _ => return Err(VerifyError::BadMeasure(format!("relation {i} has one infinite side"))),
        }
    }
    if hits(e) {
        return Err(VerifyError::BadMeasure("e has infinite measure".into()));
    }
    if !weights_dot(&m.weights, e).is_one() {
        return Err(VerifyError::BadMeasure("measure of e is not 1".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, rose};
    use crate::monoids::{graph_monoid, separated_monoid};

    fn el(v: &[u32]) -> MonoidElement {
        MonoidElement(v.to_vec())
    }

    #[test]
    fn corrupted_certificates_fail() {
        let e = separated_monoid(&emn(2, 3).unwrap());
        let good = Certificate::CyclicHom { p: 2, q: 3, values: vec![2, 1] };
        verify_distinct(&e, &el(&[0, 1]), &el(&[0, 2]), &good).unwrap();
        let bad = Certificate::CyclicHom { p: 2, q: 3, values: vec![1, 1] };
        assert_eq!(verify_distinct(&e, &el(&[0, 1]), &el(&[0, 2]), &bad), Err(VerifyError::NotInvariant(0)));
        let w = Certificate::RationalWeights { weights: vec![Rational::one(), Rational::one()] };
        assert!(matches!(verify_distinct(&e, &el(&[0, 1]), &el(&[0, 2]), &w), Err(VerifyError::NotInvariant(_))));
        let open = Certificate::ClosedClass { members: vec![el(&[1, 0])] };
        assert!(matches!(verify_distinct(&e, &el(&[1, 0]), &el(&[0, 2]), &open), Err(VerifyError::NotClosed(_))));
        let closed = Certificate::ClosedClass { members: vec![el(&[0, 1])] };
        verify_distinct(&e, &el(&[0, 1]), &el(&[0, 2]), &closed).unwrap();
    }

    #[test]
    fn stably_finite_claims() {
        let r = graph_monoid(&rose(2).unwrap());
        let claim = CertifiedClaim::StablyFinite { weights: vec![Rational::one()] };
        assert!(verify_certificate_claim(&r, &claim).is_err());
        let bad_path = CertifiedClaim::Equal {
            x: el(&[1]),
            y: el(&[2]),
            proof: RewriteProof { from_x: vec![super::super::Step { relation: 0, forward: false }], from_y: vec![] },
        };
        assert_eq!(verify_certificate_claim(&r, &bad_path), Err(VerifyError::BadPath));
    }

    #[test]
    fn claim_json_round_trip() {
        let claim = CertifiedClaim::Distinct {
            x: el(&[0, 1]),
            y: el(&[0, 2]),
            certificate: Certificate::RationalWeights { weights: vec![Rational::new(1.into(), 2.into()), Rational::zero()] },
        };
        let json = serde_json::to_string(&claim).unwrap();
        assert!(json.contains("\"1/2\""));
        let back: CertifiedClaim = serde_json::from_str(&json).unwrap();
        assert_eq!(back, claim);
    }
}
