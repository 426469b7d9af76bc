use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use typforge::graphs::{line, rose, toeplitz};
use typforge::ktheory::{cokernel, graph_k_theory, katsura_k_theory, kernel, smith_normal_form};
use typforge::linalg::Matrix;
use typforge::selfsimilar::KatsuraSpec;
use typforge::{GroupDescriptor, IntMatrix, Integer};

fn leibniz(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * leibniz(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in subsets(n, k - 1).into_iter().filter(|r| r.first().is_none_or(|&x| x > first)) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all `k x k` minors.
fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&leibniz(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect()).collect()
}

#[test]
fn random_matrices_match_minor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut violations = Vec::new();
    for case in 0..100 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let raw: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::from_i64_rows(&raw).unwrap();
        let s = smith_normal_form(&m);
        let product = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        if product != s.d {
            violations.push(format!("case {case}: U M V != D"));
        }
        for (name, x) in [("U", &s.u), ("V", &s.v)] {
            let det = leibniz(&to_i128(x));
            if det.abs() != 1 {
                violations.push(format!("case {case}: det {name} = {det}"));
            }
        }
        for r in 0..rows {
            for c in 0..cols {
                if r != c && *s.d.get(r, c) != Integer::from(0) {
                    violations.push(format!("case {case}: off-diagonal entry"));
                }
            }
        }
        let ours: Vec<i128> = s.invariant_factors().iter().map(|x| i128::try_from(x).unwrap()).collect();
        if ours.iter().any(|&x| x < 0) || ours.windows(2).any(|w| w[1] % w[0] != 0) {
            violations.push(format!("case {case}: not a divisibility chain {ours:?}"));
        }
        let oracle = invariant_factors_by_minors(&to_i128(&m));
        if ours != oracle {
            violations.push(format!("case {case}: {ours:?} vs minors {oracle:?}"));
        }
    }
    assert!(violations.is_empty(), "{violations:#?}");
}

#[test]
fn machine_and_big_integers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let raw: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let small = Matrix::<i64>::from_i64_rows(&raw).unwrap();
        let big = IntMatrix::from_i64_rows(&raw).unwrap();
        let a: Vec<Integer> = smith_normal_form(&small).invariant_factors().into_iter().map(Integer::from).collect();
        assert_eq!(a, smith_normal_form(&big).invariant_factors());
        assert_eq!(cokernel(&small).free_rank, cokernel(&big).free_rank);
        assert_eq!(kernel(&small).free_rank, kernel(&big).free_rank);
    }
}

fn cyclic(orders: &[i64]) -> GroupDescriptor {
    GroupDescriptor::from_cyclic(0, &orders.iter().map(|&t| Integer::from(t)).collect::<Vec<_>>())
}

#[test]
fn rose_closed_form() {
    for n in 2..=12 {
        let k = graph_k_theory(&rose(n).unwrap());
        assert_eq!(k.K0, cyclic(&[n as i64 - 1]), "rose {n}");
        assert_eq!(k.K1, GroupDescriptor::trivial());
    }
    let k = graph_k_theory(&rose(1).unwrap());
    assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1), GroupDescriptor::free(1)));
}

#[test]
fn small_graphs() {
    let k = graph_k_theory(&toeplitz());
    assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1), GroupDescriptor::trivial()));
    for n in 1..=5 {
        let k = graph_k_theory(&line(n).unwrap());
        assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1), GroupDescriptor::trivial()), "line {n}");
    }
}

#[test]
fn katsura_by_hand() {
    // 1 x 1: K0 = Z/(n-1) + ker(1 - m), K1 = coker(1 - m) + ker(1 - n).
    let k = katsura_k_theory(&KatsuraSpec::new(vec![vec![2]], vec![vec![1]]).unwrap()).unwrap();
    assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1), GroupDescriptor::free(1)));
    let k = katsura_k_theory(&KatsuraSpec::new(vec![vec![3]], vec![vec![2]]).unwrap()).unwrap();
    assert_eq!((k.K0, k.K1), (cyclic(&[2]), GroupDescriptor::trivial()));
    let k = katsura_k_theory(&KatsuraSpec::new(vec![vec![4]], vec![vec![-2]]).unwrap()).unwrap();
    assert_eq!((k.K0, k.K1), (cyclic(&[3]), cyclic(&[3])));
    // 2 x 2 diagonal splits into two 1 x 1 blocks.
    let k = katsura_k_theory(&KatsuraSpec::new(vec![vec![2, 0], vec![0, 3]], vec![vec![1, 0], vec![0, 2]]).unwrap())
        .unwrap();
    assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1).direct_sum(&cyclic(&[2])), GroupDescriptor::free(1)));
    // I - A^T = [[-1, -1], [0, -2]] has cokernel Z/2; I - B^T = [[0, -1], [0, 0]] has cokernel Z and kernel Z.
    let k = katsura_k_theory(&KatsuraSpec::new(vec![vec![2, 0], vec![1, 3]], vec![vec![1, 0], vec![1, 1]]).unwrap())
        .unwrap();
    assert_eq!((k.K0, k.K1), (GroupDescriptor::free(1).direct_sum(&cyclic(&[2])), GroupDescriptor::free(1)));
}

#[test]
fn rejects_zero_rows() {
    assert!(KatsuraSpec::new(vec![vec![0]], vec![vec![0]]).is_err());
}
