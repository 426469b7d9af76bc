//! Smith normal form and K-theory of graph and Katsura algebras.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graphs::DirectedGraph;
use crate::linalg::Matrix;
use crate::scalar::ExactInt;
use crate::selfsimilar::{KatsuraSpec, SelfSimilarError};
use crate::{GroupDescriptor, IntMatrix, Integer};

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T: ExactInt> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: ExactInt> SmithDecomposition<T> {
    /// Diagonal of `d`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

/// `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_i >= 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: ExactInt")]
pub struct AbelianGroupDescriptor<T> {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(with = "crate::scalar::int_vec")]
    pub torsion: Vec<T>,
}

impl<T: ExactInt> AbelianGroupDescriptor<T> {
    pub fn trivial() -> Self {
        AbelianGroupDescriptor { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupDescriptor { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^rank + sum Z/c_i` for arbitrary cyclic orders `c_i`.
    /// Orders of zero count as free summands; units are dropped.
    pub fn from_cyclic(rank: usize, orders: &[T]) -> Self {
        let mut free_rank = rank;
        let mut finite = Vec::new();
        for c in orders {
            if c.is_zero() {
                free_rank += 1;
            } else if !c.abs().is_one() {
                finite.push(c.abs());
            }
        }
        let n = finite.len();
        let diag = Matrix::from_fn(n, n, |r, c| if r == c { finite[r].clone() } else { T::zero() });
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect();
        AbelianGroupDescriptor { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<T> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<T> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(T::one(), |acc, t| acc * t.clone()))
    }
}

impl<T: ExactInt> fmt::Display for AbelianGroupDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form with deterministic pivoting: least nonzero absolute
/// value in the active block, ties broken row-major.
pub fn smith_normal_form<T: ExactInt>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = least_entry(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);
            let mut clean = true;
            for r in t + 1..rows {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = -d.get(r, t).div_floor(d.get(t, t));
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                clean &= d.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = -d.get(t, c).div_floor(d.get(t, t));
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                clean &= d.get(t, c).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    d.add_row_multiple(t, r, &T::one());
                    u.add_row_multiple(t, r, &T::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish<T: ExactInt>(u: Matrix<T>, d: Matrix<T>, v: Matrix<T>) -> SmithDecomposition<T> {
    SmithDecomposition { u, d, v }
}

fn least_entry<T: ExactInt>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let a = d.get(r, c).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((r, c, a));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Cokernel of `m` viewed as a map `Z^cols -> Z^rows`.
pub fn cokernel<T: ExactInt>(m: &Matrix<T>) -> AbelianGroupDescriptor<T> {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let torsion = factors.iter().filter(|x| !x.is_one()).cloned().collect();
    AbelianGroupDescriptor { free_rank: m.rows() - factors.len(), torsion }
}

/// Kernel of `m` viewed as a map `Z^cols -> Z^rows` (always free).
pub fn kernel<T: ExactInt>(m: &Matrix<T>) -> AbelianGroupDescriptor<T> {
    AbelianGroupDescriptor::free(m.cols() - smith_normal_form(m).rank())
}

/// K-groups of an algebra as a pair of descriptors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct KGroups {
    pub K0: GroupDescriptor,
    pub K1: GroupDescriptor,
}

/// `I - (A')^T` as a map from the non-source coordinates to all vertices.
pub fn graph_k_matrix(g: &DirectedGraph) -> IntMatrix {
    let a = g.adjacency_matrix();
    let cols: Vec<usize> = g.non_sources();
    Matrix::from_fn(g.vertex_count(), cols.len(), |v, j| {
        let w = cols[j];
        let delta = if v == w { Integer::one() } else { Integer::zero() };
        delta - a.get(w, v).clone()
    })
}

/// K-theory of the graph algebra: cokernel and kernel of [`graph_k_matrix`].
pub fn graph_k_theory(g: &DirectedGraph) -> KGroups {
    let m = graph_k_matrix(g);
    KGroups { K0: cokernel(&m), K1: kernel(&m) }
}

/// K-theory of the Katsura algebra of `(A, B)`.
pub fn katsura_k_theory(spec: &KatsuraSpec) -> Result<KGroups, SelfSimilarError> {
    spec.validate()?;
    let n = spec.size();
    let ia = identity_minus_transpose(spec.a(), n);
    let ib = identity_minus_transpose(spec.b(), n);
    Ok(KGroups {
        K0: cokernel(&ia).direct_sum(&kernel(&ib)),
        K1: cokernel(&ib).direct_sum(&kernel(&ia)),
    })
}

fn identity_minus_transpose(m: &[Vec<i64>], n: usize) -> IntMatrix {
    Matrix::from_fn(n, n, |r, c| {
        let delta = if r == c { 1 } else { 0 };
        Integer::from(delta - m[c][r])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check<T: ExactInt>(m: &Matrix<T>) -> SmithDecomposition<T> {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let m = Matrix::<Integer>::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![Integer::from(1), Integer::from(6)]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let m = Matrix::<Integer>::zeros(2, 3);
        let s = check(&m);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn one_by_one_absolute_value() {
        for n in 2..8i64 {
            let m = Matrix::<Integer>::from_i64_rows(&[vec![1 - n]]).unwrap();
            assert_eq!(check(&m).diagonal(), vec![Integer::from(n - 1)]);
        }
    }

    #[test]
    fn generic_over_machine_integers() {
        let m = Matrix::<i64>::from_i64_rows(&[vec![4, 6, 2], vec![6, 9, 3], vec![2, 3, 7]]).unwrap();
        let s = check(&m);
        assert_eq!(s.rank(), 2);
        let m32 = Matrix::<i32>::from_fn(2, 2, |r, c| [[6, 4], [4, 6]][r][c]);
        assert_eq!(check(&m32).diagonal(), vec![2, 10]);
    }

    #[test]
    fn descriptor_canonicalisation() {
        let g = GroupDescriptor::from_cyclic(0, &[Integer::from(2), Integer::from(3), Integer::from(1)]);
        assert_eq!(g.torsion, vec![Integer::from(6)]);
        let h = GroupDescriptor::from_cyclic(1, &[Integer::from(4), Integer::from(0), Integer::from(6)]);
        assert_eq!(h.free_rank, 2);
        assert_eq!(h.torsion, vec![Integer::from(2), Integer::from(12)]);
        assert_eq!(h.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(GroupDescriptor::trivial().to_string(), "0");
    }

    #[test]
    fn descriptor_json_shape() {
        let g = GroupDescriptor::from_cyclic(1, &[Integer::from(3)]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":1,"torsion":[3]}"#);
    }
}
