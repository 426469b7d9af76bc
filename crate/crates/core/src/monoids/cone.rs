//! Extreme rays of `{w >= 0 : A w = 0}` by double description.

use std::collections::BTreeSet;


use super::MonoidPresentation;
use crate::scalar::ExactInt;
use crate::{Integer, Rational};

fn dot<T: ExactInt>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn primitive<T: ExactInt>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
    v
}

fn support<T: ExactInt>(v: &[T]) -> BTreeSet<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Primitive integer extreme rays of `{w in Q^n : w >= 0, a . w = 0 for every a}`, sorted.
/// Returns `None` when an intermediate ray set exceeds `max_rays`.
pub fn integer_cone_rays<T: ExactInt>(n: usize, equalities: &[Vec<T>], max_rays: usize) -> Option<Vec<Vec<T>>> {
    let mut rays: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for a in equalities {
        let vals: Vec<T> = rays.iter().map(|r| dot(a, r)).collect();
        let mut next: Vec<Vec<T>> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if v.is_zero() {
                next.push(r.clone());
            }
        }
        for (pr, pv) in rays.iter().zip(&vals).filter(|(_, v)| v.is_positive()) {
            for (nr, nv) in rays.iter().zip(&vals).filter(|(_, v)| v.is_negative()) {
                let combo: Vec<T> =
                    pr.iter().zip(nr).map(|(p, q)| pv.clone() * q.clone() - nv.clone() * p.clone()).collect();
                next.push(primitive(combo));
                if next.len() > max_rays.saturating_mul(4) {
                    return None;
                }
            }
        }
        next.sort();
        next.dedup();
        let supports: Vec<BTreeSet<usize>> = next.iter().map(|r| support(r)).collect();
        rays = next
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                !supports.iter().enumerate().any(|(j, s)| j != *i && s.is_subset(&supports[*i]) && *s != supports[*i])
            })
            .map(|(_, r)| r.clone())
            .collect();
        if rays.len() > max_rays {
            return None;
        }
    }
    rays.sort();
    rays.reverse();
    Some(rays)
}

/// Generators of the cone of nonnegative rational weights constant on every relation.
pub fn rational_invariant_cone(p: &MonoidPresentation) -> Vec<Vec<Rational>> {
    let eqs: Vec<Vec<Integer>> = p
        .relations()
        .iter()
        .map(|r| r.lhs.0.iter().zip(&r.rhs.0).map(|(&a, &b)| Integer::from(a) - Integer::from(b)).collect())
        .collect();
    integer_cone_rays(p.rank(), &eqs, usize::MAX)
        .unwrap_or_default()
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::line;
    use crate::monoids::{cyclic_monoid, graph_monoid};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn documented_cones() {
        assert_eq!(rational_invariant_cone(&graph_monoid(&line(3).unwrap())), vec![ints(&[1, 1, 1])]);
        assert!(rational_invariant_cone(&cyclic_monoid(1, 2).unwrap()).is_empty());
        let free = MonoidPresentation::free(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(rational_invariant_cone(&free), vec![ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn two_dimensional_cone() {
        // x0 + x1 = x2 + x3 in the orthant of R^4 has four extreme rays.
        let rays = integer_cone_rays::<i64>(4, &[vec![1, 1, -1, -1]], 100).unwrap();
        assert_eq!(rays, vec![vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]]);
    }
}
