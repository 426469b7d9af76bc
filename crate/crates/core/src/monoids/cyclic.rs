//! Homomorphisms into the cyclic monoids `C_{p,q} = <a | p a = q a>`.

use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use super::{MonoidElement, MonoidPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicBounds {
    pub max_p: u32,
    pub max_q: u32,
    pub max_val: u32,
    /// Cap on assignment nodes visited across all `(p, q)`.
    pub max_nodes: usize,
}

impl Default for CyclicBounds {
    fn default() -> Self {
        CyclicBounds { max_p: 4, max_q: 6, max_val: 6, max_nodes: 200_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclicMode {
    /// Images must differ.
    Equality,
    /// Image of `x` must not lie below the image of `y`.
    Order,
}

/// Normal form of `n a` in `C_{p,q}`: `n` below `p`, else `p + (n - p) mod (q - p)`.
pub fn cyclic_normal_form(n: u64, p: u32, q: u32) -> u64 {
    let (p, q) = (u64::from(p), u64::from(q));
    if n < p {
        n
    } else {
        p + (n - p) % (q - p)
    }
}

/// Algebraic order on normal forms of `C_{p,q}`.
pub fn cyclic_le(x: u64, y: u64, p: u32) -> bool {
    y >= x.min(u64::from(p))
}

struct Search<'a> {
    pres: &'a MonoidPresentation,
    x: &'a MonoidElement,
    y: &'a MonoidElement,
    mode: CyclicMode,
    p: u32,
    q: u32,
    max_val: u32,
    relevant: Vec<bool>,
    /// Relations whose support ends at each generator index.
    closes: Vec<Vec<usize>>,
    values: Vec<u32>,
    nodes: usize,
    max_nodes: usize,
}

impl Search<'_> {
    fn eval(&self, e: &MonoidElement) -> u64 {
        let n = self.values.iter().zip(&e.0).map(|(&v, &c)| u64::from(v) * u64::from(c)).sum();
        cyclic_normal_form(n, self.p, self.q)
    }

    fn separates(&self) -> bool {
        let (a, b) = (self.eval(self.x), self.eval(self.y));
        match self.mode {
            CyclicMode::Equality => a != b,
            CyclicMode::Order => !cyclic_le(a, b, self.p),
        }
    }

    /// Depth-first over generator values in lexicographic order.
    fn run(&mut self, i: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        if i == self.values.len() {
            return Some(self.separates());
        }
        let top = if self.relevant[i] { self.max_val.min(self.q - 1) } else { 0 };
        for v in 0..=top {
            self.values[i] = v;
            let ok = self.closes[i].iter().all(|&r| {
                let rel = &self.pres.relations()[r];
                self.eval(&rel.lhs) == self.eval(&rel.rhs)
            });
            if ok {
                match self.run(i + 1) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
        }
        self.values[i] = 0;
        Some(false)
    }
}

/// First homomorphism into some `C_{p,q}` (q ascending, then p, then values
/// lexicographically in generator order) separating `x` from `y` in the given mode.
pub fn cyclic_invariant_search(
    pres: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    bounds: &CyclicBounds,
    mode: CyclicMode,
) -> Option<Certificate> {
    if mode == CyclicMode::Equality && x == y {
        return None;
    }
    let n = pres.rank();
    let mut relevant: Vec<bool> = (0..n).map(|i| x.0[i] > 0 || y.0[i] > 0).collect();
    let mut closes = vec![Vec::new(); n];
    for (r, rel) in pres.relations().iter().enumerate() {
        let last = rel.lhs.support().chain(rel.rhs.support()).max();
        if let Some(last) = last {
            closes[last].push(r);
        }
        for i in rel.lhs.support().chain(rel.rhs.support()) {
            relevant[i] = true;
        }
    }
    let mut nodes = 0usize;
    for q in 2..=bounds.max_q {
        for p in 1..q.min(bounds.max_p + 1) {
            let mut s = Search {
                pres,
                x,
                y,
                mode,
                p,
                q,
                max_val: bounds.max_val,
                relevant: relevant.clone(),
                closes: closes.clone(),
                values: vec![0; n],
                nodes,
                max_nodes: bounds.max_nodes,
            };
            let found = s.run(0);
            nodes = s.nodes;
            match found {
                Some(true) => return Some(Certificate::CyclicHom { p, q, values: s.values }),
                Some(false) => {}
                None => return None,
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::emn;
    use crate::monoids::separated_monoid;

    #[test]
    fn normal_forms() {
        let forms: Vec<u64> = (0..8).map(|n| cyclic_normal_form(n, 2, 4)).collect();
        assert_eq!(forms, vec![0, 1, 2, 3, 2, 3, 2, 3]);
        let forms: Vec<u64> = (0..5).map(|n| cyclic_normal_form(n, 2, 3)).collect();
        assert_eq!(forms, vec![0, 1, 2, 2, 2]);
    }

    #[test]
    fn order_in_cyclic_monoid() {
        // In C_{2,3}: 0 < a < 2a, and 2a is the absorbing top.
        assert!(cyclic_le(1, 2, 2));
        assert!(!cyclic_le(2, 1, 2));
        assert!(cyclic_le(0, 0, 2));
        // In C_{1,3} the elements a and 2a lie on a cycle and are mutually below each other.
        assert!(cyclic_le(1, 2, 1) && cyclic_le(2, 1, 1));
    }

    #[test]
    fn emn_separation() {
        let e = separated_monoid(&emn(2, 3).unwrap());
        let c = cyclic_invariant_search(
            &e,
            &MonoidElement(vec![0, 1]),
            &MonoidElement(vec![0, 2]),
            &CyclicBounds::default(),
            CyclicMode::Equality,
        );
        assert_eq!(c, Some(Certificate::CyclicHom { p: 2, q: 3, values: vec![2, 1] }));
        let same = MonoidElement(vec![1, 1]);
        assert_eq!(cyclic_invariant_search(&e, &same, &same, &CyclicBounds::default(), CyclicMode::Equality), None);
    }
}
