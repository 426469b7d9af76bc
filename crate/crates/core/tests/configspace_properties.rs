use std::collections::BTreeSet;

use proptest::prelude::*;
use typforge::configspace::{
    count_balls, enumerate_balls, invert_word, translate, validate, EdgeLetter, FiniteConfiguration, Word,
};
use typforge::graphs::{DirectedGraph, SeparatedGraph};
use typforge::Integer;

/// Bipartite separated graph: edges run from top vertices `w*` to bottom vertices `v*`; unused vertices are dropped.
fn bipartite(tops: usize, bottoms: usize, edges: &[(usize, usize, usize)]) -> SeparatedGraph {
    let list: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(w, v, _))| (format!("e{i}"), format!("w{}", w % tops), format!("v{}", v % bottoms)))
        .collect();
    let mut names: Vec<String> = list.iter().map(|(_, _, v)| v.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let bottoms = names.len();
    names.extend(list.iter().map(|(_, w, _)| w.clone()).collect::<BTreeSet<_>>());
    let g = DirectedGraph::new(&names, &list).unwrap();
    let mut classes = vec![Vec::new(); names.len()];
    for v in 0..bottoms {
        let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for &e in g.incoming(v) {
            by_label[edges[e].2 % 3].push(e);
        }
        classes[v] = by_label.into_iter().filter(|x| !x.is_empty()).collect();
    }
    SeparatedGraph::new(g, classes).unwrap()
}

fn start(g: &DirectedGraph, l: EdgeLetter) -> usize {
    if l.inverse {
        g.source(l.edge)
    } else {
        g.range(l.edge)
    }
}

fn end(g: &DirectedGraph, l: EdgeLetter) -> usize {
    if l.inverse {
        g.range(l.edge)
    } else {
        g.source(l.edge)
    }
}

/// Letter set at a word is admissible: the source star at receiving-free vertices, else one edge per class.
fn admissible(sg: &SeparatedGraph, at: usize, letters: &BTreeSet<EdgeLetter>) -> bool {
    let g = sg.graph();
    if g.incoming(at).is_empty() {
        let star: BTreeSet<EdgeLetter> = g.outgoing(at).iter().map(|&e| EdgeLetter { edge: e, inverse: true }).collect();
        return *letters == star;
    }
    letters.iter().all(|l| !l.inverse)
        && letters.len() == sg.classes(at).len()
        && sg.classes(at).iter().all(|x| x.iter().filter(|&&e| letters.contains(&EdgeLetter { edge: e, inverse: false })).count() == 1)
}

/// Every configuration, found by trying all subsets of the possible extensions at each word.
fn brute_force(sg: &SeparatedGraph, radius: usize, base: usize) -> BTreeSet<BTreeSet<Word>> {
    fn go(
        sg: &SeparatedGraph,
        radius: usize,
        base: usize,
        pending: Vec<Word>,
        words: BTreeSet<Word>,
        out: &mut BTreeSet<BTreeSet<Word>>,
    ) {
        let g = sg.graph();
        let Some(pos) = pending.iter().position(|w| w.len() < radius) else {
            out.insert(words);
            return;
        };
        let w = pending[pos].clone();
        let mut rest = pending;
        rest.remove(pos);
        let at = w.iter().fold(base, |_, &l| end(g, l));
        let back = w.last().map(|l| l.inv());
        let candidates: Vec<EdgeLetter> = (0..g.edge_count())
            .flat_map(|edge| [false, true].map(|inverse| EdgeLetter { edge, inverse }))
            .filter(|&l| start(g, l) == at && Some(l) != back)
            .collect();
        for mask in 0u32..(1 << candidates.len()) {
            let chosen: Vec<EdgeLetter> =
                candidates.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect();
            let mut letters: BTreeSet<EdgeLetter> = chosen.iter().copied().collect();
            letters.extend(back);
            if !admissible(sg, at, &letters) {
                continue;
            }
            let mut next_words = words.clone();
            let mut next_pending = rest.clone();
            for &l in &chosen {
                let mut c = w.clone();
                c.push(l);
                next_words.insert(c.clone());
                next_pending.push(c);
            }
            go(sg, radius, base, next_pending, next_words, out);
        }
    }
    let mut out = BTreeSet::new();
    go(sg, radius, base, vec![Vec::new()], BTreeSet::from([Vec::new()]), &mut out);
    out
}

fn graph_strategy() -> impl Strategy<Value = SeparatedGraph> {
    (1usize..=2, 1usize..=2, prop::collection::vec((0usize..2, 0usize..2, 0usize..3), 1..=4))
        .prop_map(|(t, b, edges)| bipartite(t, b, &edges))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, ..ProptestConfig::default() })]

    #[test]
    fn counts_match_brute_force(sg in graph_strategy(), radius in 0usize..=3) {
        for base in 0..sg.graph().vertex_count() {
            let oracle = brute_force(&sg, radius, base);
            prop_assert_eq!(count_balls(&sg, radius, base).unwrap(), Integer::from(oracle.len()));
            let balls = enumerate_balls(&sg, radius, base, 1_000_000).unwrap();
            let found: BTreeSet<BTreeSet<Word>> = balls.iter().map(|c| c.words.clone()).collect();
            prop_assert_eq!(found.len(), balls.len(), "duplicate configurations");
            prop_assert_eq!(&found, &oracle);
            for c in &balls {
                prop_assert!(validate(&sg, c).is_ok());
            }
        }
    }

    #[test]
    fn removing_an_outer_word_invalidates(sg in graph_strategy(), radius in 1usize..=3, pick in any::<usize>()) {
        for base in 0..sg.graph().vertex_count() {
            for c in enumerate_balls(&sg, radius, base, 100_000).unwrap() {
                let outer: Vec<&Word> = c.words.iter().filter(|w| w.len() == radius).collect();
                if outer.is_empty() {
                    continue;
                }
                let mut broken = c.clone();
                broken.words.remove(&outer[pick % outer.len()].clone());
                prop_assert!(validate(&sg, &broken).is_err());
            }
        }
    }

    #[test]
    fn radius_one_is_a_product_over_classes(sg in graph_strategy()) {
        let g = sg.graph();
        for v in 0..g.vertex_count() {
            let expected: usize = sg.classes(v).iter().map(Vec::len).product();
            prop_assert_eq!(count_balls(&sg, 1, v).unwrap(), Integer::from(expected));
        }
    }

    #[test]
    fn translation_is_coherent(sg in graph_strategy(), radius in 1usize..=3) {
        let g = sg.graph();
        for base in 0..g.vertex_count() {
            for c in enumerate_balls(&sg, radius, base, 100_000).unwrap() {
                for word in &c.words {
                    let h = invert_word(word);
                    let t = translate(&sg, &c, &h).unwrap();
                    prop_assert_eq!(t.radius, radius - word.len());
                    prop_assert_eq!(t.base, word.iter().fold(base, |_, &l| end(g, l)));
                    prop_assert!(validate(&sg, &t).is_ok());
                    if 2 * word.len() <= radius {
                        let back = translate(&sg, &t, word).unwrap();
                        let expected = FiniteConfiguration { base, ..c.truncate(radius - 2 * word.len()) };
                        prop_assert_eq!(back, expected);
                    }
                }
            }
        }
    }
}

#[test]
fn named_graphs_match_brute_force() {
    let sg = typforge::graphs::fullshift();
    let v = sg.graph().vertex("v").unwrap();
    let counts: Vec<usize> = (0..=4).map(|r| brute_force(&sg, r, v).len()).collect();
    assert_eq!(counts, [1, 4, 4, 16, 16]);
    for (r, &n) in counts.iter().enumerate() {
        assert_eq!(count_balls(&sg, r, v).unwrap(), Integer::from(n));
    }
    let sg = typforge::graphs::emn(2, 3).unwrap();
    for r in 0..=3 {
        assert_eq!(count_balls(&sg, r, 0).unwrap(), Integer::from(brute_force(&sg, r, 0).len()));
    }
}
