use proptest::prelude::*;
use typforge::graphs::{DirectedGraph, EdgeSpec, GraphSpec, Path};
use typforge::selfsimilar::{
    automaton_action, finite_action, katsura_action, quotient_graph, swap_loops_action, trivial_action,
    FiniteActionSpec, GroupElement, KatsuraSpec, MealySpec, SelfSimilarAction,
};

fn katsura_spec() -> impl Strategy<Value = KatsuraSpec> {
    (1usize..=3).prop_flat_map(|n| {
        (prop::collection::vec(0i64..=3, n * n), prop::collection::vec((1i64..=3, any::<bool>()), n * n)).prop_map(
            move |(a, b)| {
                let mut am = vec![vec![0; n]; n];
                let mut bm = vec![vec![0; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        am[i][j] = if i == j { a[i * n + j].max(1) } else { a[i * n + j] };
                        let (m, neg) = b[i * n + j];
                        bm[i][j] = if am[i][j] == 0 { 0 } else if neg { -m } else { m };
                    }
                }
                KatsuraSpec::new(am, bm).unwrap()
            },
        )
    })
}

/// `(i, j, n)` from the edge name `e_i_j_n`.
fn label(g: &DirectedGraph, e: usize) -> (usize, usize, i64) {
    let parts: Vec<&str> = g.edge_name(e).split('_').collect();
    (parts[1].parse().unwrap(), parts[2].parse().unwrap(), parts[3].parse().unwrap())
}

fn int(g: &GroupElement) -> i64 {
    match g {
        GroupElement::Int(k) => *k,
        other => panic!("not an integer: {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn katsura_cocycle(spec in katsura_spec(), g in -40i64..=40, h in -40i64..=40, pick in any::<usize>()) {
        let act = katsura_action(&spec).unwrap();
        let graph = act.graph();
        let e = pick % graph.edge_count();
        let (i, j, n) = label(graph, e);
        let (ge, gphi) = act.act_edge(&GroupElement::Int(g), e);

        // g . e_{i,j,n} = e_{i,j,r} and phi = k where n + g B_ij = k A_ij + r, 0 <= r < A_ij.
        let total = n + g * spec.b[i][j];
        let (k, r) = (total.div_euclid(spec.a[i][j]), total.rem_euclid(spec.a[i][j]));
        prop_assert_eq!(label(graph, ge), (i, j, r));
        prop_assert_eq!(int(&gphi), k);
        prop_assert_eq!(graph.source(ge), graph.source(e));
        prop_assert_eq!(graph.range(ge), graph.range(e));

        let gh = act.multiply(&GroupElement::Int(g), &GroupElement::Int(h));
        prop_assert_eq!(int(&gh), g + h);
        let (he, hphi) = act.act_edge(&GroupElement::Int(h), e);
        let (g_he, g_phi) = act.act_edge(&GroupElement::Int(g), he);
        let (ghe, ghphi) = act.act_edge(&gh, e);
        prop_assert_eq!(ghe, g_he);
        prop_assert_eq!(int(&ghphi), int(&g_phi) + int(&hphi));
        prop_assert!(act.is_identity(&act.cocycle(&GroupElement::Int(0), e)));
    }
}

/// Lamplighter machine on binary strings: `a` keeps the bit, `b` flips it; both move to `a` on 0 and `b` on 1.
fn lamplighter_apply(state: usize, inverse: bool, bits: &[usize]) -> Vec<usize> {
    let flips = [false, true];
    let mut s = state;
    let mut out = Vec::with_capacity(bits.len());
    for &x in bits {
        let y = if flips[s] { 1 - x } else { x };
        out.push(y);
        // The next state depends on the input letter of the forward machine.
        let read = if inverse { y } else { x };
        s = if read == 0 { s } else { 1 - s };
    }
    out
}

fn word_element(act: &SelfSimilarAction, letters: &[(usize, bool)]) -> GroupElement {
    let gens = act.generators();
    letters.iter().fold(act.identity(), |acc, &(s, inv)| {
        let x = if inv { act.inverse(&gens[s]) } else { gens[s].clone() };
        act.multiply(&acc, &x)
    })
}

fn edges(p: &Path) -> Vec<usize> {
    p.edges().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn lamplighter_matches_machine(
        letters in prop::collection::vec((0usize..2, any::<bool>()), 0..=6),
        other in prop::collection::vec((0usize..2, any::<bool>()), 0..=4),
        bits in prop::collection::vec(0usize..2, 1..=8),
    ) {
        let act = automaton_action(&MealySpec::lamplighter()).unwrap();
        let g = word_element(&act, &letters);
        let path = Path::new(act.graph(), bits.clone()).unwrap();

        let mut expected = bits.clone();
        for &(s, inv) in letters.iter().rev() {
            expected = lamplighter_apply(s, inv, &expected);
        }
        prop_assert_eq!(edges(&act.act_path(&g, &path).unwrap()), expected.clone());

        let back = act.act_path(&act.inverse(&g), &Path::new(act.graph(), expected).unwrap()).unwrap();
        prop_assert_eq!(edges(&back), bits.clone());

        // (gh)|_alpha = g|_{h alpha} h|_alpha and (gh) alpha = g (h alpha).
        let h = word_element(&act, &other);
        let gh = act.multiply(&g, &h);
        let (h_alpha, h_res) = act.act_and_restrict(&h, &path).unwrap();
        let (gh_alpha, gh_res) = act.act_and_restrict(&gh, &path).unwrap();
        let (g_h_alpha, g_res) = act.act_and_restrict(&g, &h_alpha).unwrap();
        prop_assert_eq!(gh_alpha, g_h_alpha);
        prop_assert!(act.agree_up_to(&gh_res, &act.multiply(&g_res, &h_res), 4));
    }
}

fn random_graph(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> =
        edges.iter().enumerate().map(|(i, &(s, r))| (format!("e{i}"), format!("v{}", s % n), format!("v{}", r % n))).collect();
    DirectedGraph::new(&vertices, &edges).unwrap()
}

proptest! {
    #[test]
    fn trivial_action_quotient_is_the_graph(
        n in 1usize..=5,
        edges in prop::collection::vec((0usize..5, 0usize..5), 0..=8),
    ) {
        let g = random_graph(n, &edges);
        prop_assert_eq!(quotient_graph(&trivial_action(&g)).unwrap(), g);
    }

    #[test]
    fn katsura_quotient_is_the_graph(spec in katsura_spec()) {
        let act = katsura_action(&spec).unwrap();
        prop_assert_eq!(&quotient_graph(&act).unwrap(), act.graph());
    }
}

#[test]
fn vertex_swaps_collapse_orbits() {
    let q = quotient_graph(&swap_loops_action()).unwrap();
    assert_eq!(q.vertex_names(), ["u"]);
    assert_eq!(q.edge_count(), 1);
    assert_eq!((q.source(0), q.range(0)), (0, 0));

    let edge = |name: &str, src: &str, rng: &str| EdgeSpec { name: name.into(), src: src.into(), rng: rng.into() };
    let spec = FiniteActionSpec {
        graph: GraphSpec {
            vertices: vec!["x".into(), "y".into()],
            edges: vec![edge("e", "x", "y"), edge("f", "y", "x")],
            separation: None,
        },
        elements: vec!["1".into(), "s".into()],
        mul: vec![vec![0, 1], vec![1, 0]],
        vertex_action: vec![vec![0, 1], vec![1, 0]],
        edge_action: vec![vec![0, 1], vec![1, 0]],
        cocycle: vec![vec![0, 0], vec![0, 0]],
    };
    let q = quotient_graph(&finite_action(&spec).unwrap()).unwrap();
    let expected = DirectedGraph::new(&["x"], &[("f", "x", "x")]).unwrap();
    assert_eq!(q, expected);
}
