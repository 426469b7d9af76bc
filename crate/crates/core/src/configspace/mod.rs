//! Finite balls in the configuration space of a bipartite separated graph.
//!
//! A word is a reduced word over `E^1` and its formal inverses. Reading `e`
//! moves from `r(e)` to `s(e)` and reading `e^-1` moves back. A configuration
//! of radius `n` is a prefix-closed set of such words of length at most `n`
//! in which every word shorter than `n` sees a valid local configuration.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::graphs::{GraphError, SeparatedGraph};
use crate::resolution::{resolve_tower, ResolutionError};
use crate::Integer;

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("separated graph is not bipartite")]
    NotBipartite,
    #[error("{count} configurations exceed the cap of {cap}")]
    SizeCap { count: String, cap: usize },
    #[error("word {0:?} is not in the configuration")]
    WordNotInConfiguration(String),
    #[error("translation by {0:?} is undefined: its inverse is not in the configuration")]
    OutOfDomain(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLetter {
    pub edge: usize,
    pub inverse: bool,
}

impl EdgeLetter {
    pub fn inv(self) -> EdgeLetter {
        EdgeLetter { edge: self.edge, inverse: !self.inverse }
    }

    fn start(self, sg: &SeparatedGraph) -> usize {
        let g = sg.graph();
        if self.inverse {
            g.source(self.edge)
        } else {
            g.range(self.edge)
        }
    }

    fn end(self, sg: &SeparatedGraph) -> usize {
        let g = sg.graph();
        if self.inverse {
            g.range(self.edge)
        } else {
            g.source(self.edge)
        }
    }
}

pub type Word = Vec<EdgeLetter>;

/// Free reduction of `a b`.
pub fn reduce_product(a: &[EdgeLetter], b: &[EdgeLetter]) -> Word {
    let mut out = a.to_vec();
    for &l in b {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[EdgeLetter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn format_letter(sg: &SeparatedGraph, l: EdgeLetter) -> String {
    let name = sg.graph().edge_name(l.edge);
    if l.inverse {
        format!("{name}^-1")
    } else {
        name.to_string()
    }
}

pub fn format_word(sg: &SeparatedGraph, w: &[EdgeLetter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&l| format_letter(sg, l)).collect::<Vec<_>>().join(" ")
}

/// Parses `"1"` or space-separated edge names, each optionally suffixed `^-1`. The result is reduced.
pub fn parse_word(sg: &SeparatedGraph, text: &str) -> Result<Word, ConfigError> {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let edge = sg.graph().edge(name).map_err(|_| ConfigError::Parse(format!("unknown edge {name:?}")))?;
        letters.push(EdgeLetter { edge, inverse });
    }
    Ok(reduce_product(&[], &letters))
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteConfiguration {
    pub base: usize,
    pub radius: usize,
    pub words: BTreeSet<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSpec {
    pub base: String,
    pub radius: usize,
    pub words: Vec<String>,
}

impl FiniteConfiguration {
    pub fn contains(&self, w: &[EdgeLetter]) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Members of length at most `radius`.
    pub fn truncate(&self, radius: usize) -> FiniteConfiguration {
        FiniteConfiguration {
            base: self.base,
            radius: radius.min(self.radius),
            words: self.words.iter().filter(|w| w.len() <= radius).cloned().collect(),
        }
    }

    /// Words in shortlex order.
    pub fn sorted_words(&self) -> Vec<&Word> {
        let mut v: Vec<&Word> = self.words.iter().collect();
        v.sort_by(|a, b| shortlex(a, b));
        v
    }

    pub fn to_spec(&self, sg: &SeparatedGraph) -> ConfigurationSpec {
        ConfigurationSpec {
            base: sg.graph().vertex_name(self.base).to_string(),
            radius: self.radius,
            words: self.sorted_words().into_iter().map(|w| format_word(sg, w)).collect(),
        }
    }

    pub fn from_spec(sg: &SeparatedGraph, spec: &ConfigurationSpec) -> Result<Self, ConfigError> {
        let base = sg.graph().vertex(&spec.base)?;
        let words = spec.words.iter().map(|w| parse_word(sg, w)).collect::<Result<_, _>>()?;
        Ok(FiniteConfiguration { base, radius: spec.radius, words })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum LocalForm {
    /// `{e^-1 : s(e) = w}`.
    Sources { vertex: String },
    /// One edge from each class of `C_v`.
    Choice { vertex: String },
    /// At the radius; unconstrained.
    Boundary,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConfiguration {
    pub letters: Vec<String>,
    #[serde(flatten)]
    pub form: LocalForm,
}

/// Form of a letter set, independent of where it was found.
fn classify(sg: &SeparatedGraph, letters: &BTreeSet<EdgeLetter>) -> LocalForm {
    let g = sg.graph();
    let Some(first) = letters.iter().next() else { return LocalForm::Invalid };
    if letters.iter().all(|l| l.inverse) {
        let w = g.source(first.edge);
        let star: BTreeSet<EdgeLetter> = g.outgoing(w).iter().map(|&e| EdgeLetter { edge: e, inverse: true }).collect();
        if &star == letters {
            return LocalForm::Sources { vertex: g.vertex_name(w).to_string() };
        }
    } else if letters.iter().all(|l| !l.inverse) {
        let v = g.range(first.edge);
        let classes = sg.classes(v);
        let one_each = letters.len() == classes.len()
            && letters.iter().all(|l| g.range(l.edge) == v)
            && classes.iter().all(|x| x.iter().filter(|e| letters.contains(&EdgeLetter { edge: **e, inverse: false })).count() == 1);
        if one_each {
            return LocalForm::Choice { vertex: g.vertex_name(v).to_string() };
        }
    }
    LocalForm::Invalid
}

fn local_letters(sg: &SeparatedGraph, c: &FiniteConfiguration, alpha: &[EdgeLetter]) -> BTreeSet<EdgeLetter> {
    let mut out = BTreeSet::new();
    for edge in 0..sg.graph().edge_count() {
        for inverse in [false, true] {
            let l = EdgeLetter { edge, inverse };
            if c.contains(&reduce_product(alpha, &[l])) {
                out.insert(l);
            }
        }
    }
    out
}

/// The letters `sigma` with `alpha sigma` (reduced) in `c`, and their form.
pub fn local_config(
    sg: &SeparatedGraph,
    c: &FiniteConfiguration,
    alpha: &[EdgeLetter],
) -> Result<LocalConfiguration, ConfigError> {
    if !c.contains(alpha) {
        return Err(ConfigError::WordNotInConfiguration(format_word(sg, alpha)));
    }
    let letters = local_letters(sg, c, alpha);
    let form = if alpha.len() >= c.radius { LocalForm::Boundary } else { classify(sg, &letters) };
    Ok(LocalConfiguration { letters: letters.iter().map(|&l| format_letter(sg, l)).collect(), form })
}

fn expected_form(sg: &SeparatedGraph, v: usize) -> LocalForm {
    let name = sg.graph().vertex_name(v).to_string();
    if sg.graph().incoming(v).is_empty() {
        LocalForm::Sources { vertex: name }
    } else {
        LocalForm::Choice { vertex: name }
    }
}

/// Checks the configuration invariants directly from the word set.
pub fn validate(sg: &SeparatedGraph, c: &FiniteConfiguration) -> Result<(), ConfigError> {
    let bad = |m: String| Err(ConfigError::Invalid(m));
    if !sg.is_bipartite() {
        return Err(ConfigError::NotBipartite);
    }
    if c.base >= sg.graph().vertex_count() {
        return bad(format!("base {} is not a vertex", c.base));
    }
    if !c.contains(&[]) {
        return bad("missing the empty word".into());
    }
    for w in &c.words {
        let text = || format_word(sg, w);
        if w.len() > c.radius {
            return bad(format!("{} is longer than the radius {}", text(), c.radius));
        }
        if w.iter().any(|l| l.edge >= sg.graph().edge_count()) {
            return bad("unknown edge".into());
        }
        if w.windows(2).any(|p| p[1] == p[0].inv()) {
            return bad(format!("{} is not reduced", text()));
        }
        let mut at = c.base;
        for &l in w {
            if l.start(sg) != at {
                return bad(format!("{} is not a path from the base", text()));
            }
            at = l.end(sg);
        }
        if !w.is_empty() && !c.contains(&w[..w.len() - 1]) {
            return bad(format!("prefix of {} is missing", text()));
        }
        if w.len() < c.radius {
            let form = classify(sg, &local_letters(sg, c, w));
            if form != expected_form(sg, at) {
                return bad(format!("local configuration at {} is {:?}", text(), form));
            }
        }
    }
    Ok(())
}

struct Expander<'a> {
    sg: &'a SeparatedGraph,
    base: usize,
    radius: usize,
    cap: usize,
}

impl Expander<'_> {
    /// Alternative child-letter sets for the word `w`.
    fn options(&self, w: &[EdgeLetter]) -> Vec<Vec<EdgeLetter>> {
        let g = self.sg.graph();
        let fwd = |e: usize| EdgeLetter { edge: e, inverse: false };
        let back = |e: usize| EdgeLetter { edge: e, inverse: true };
        let choose = |v: usize, skip: Option<usize>| -> Vec<Vec<EdgeLetter>> {
            let mut acc: Vec<Vec<EdgeLetter>> = vec![Vec::new()];
            for (i, x) in self.sg.classes(v).iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                acc = acc
                    .iter()
                    .flat_map(|p| {
                        x.iter().map(move |&e| {
                            let mut q = p.clone();
                            q.push(fwd(e));
                            q
                        })
                    })
                    .collect();
            }
            acc
        };
        match w.last() {
            None if g.incoming(self.base).is_empty() => vec![g.outgoing(self.base).iter().map(|&e| back(e)).collect()],
            None => choose(self.base, None),
            Some(l) if !l.inverse => {
                vec![g.outgoing(g.source(l.edge)).iter().filter(|&&f| f != l.edge).map(|&f| back(f)).collect()]
            }
            Some(l) => choose(g.range(l.edge), Some(self.sg.class_of(l.edge))),
        }
    }

    fn run(&self, words: &mut Vec<Word>, mut pos: usize, out: &mut Vec<FiniteConfiguration>) -> Result<(), ConfigError> {
        loop {
            if pos == words.len() {
                if out.len() >= self.cap {
                    return Err(ConfigError::SizeCap { count: format!("more than {}", self.cap), cap: self.cap });
                }
                out.push(FiniteConfiguration {
                    base: self.base,
                    radius: self.radius,
                    words: words.iter().cloned().collect(),
                });
                return Ok(());
            }
            if words[pos].len() == self.radius {
                pos += 1;
                continue;
            }
            let mut opts = self.options(&words[pos]);
            if opts.len() == 1 {
                let w = words[pos].clone();
                for l in opts.pop().expect("one option") {
                    let mut c = w.clone();
                    c.push(l);
                    words.push(c);
                }
                pos += 1;
                continue;
            }
            let keep = words.len();
            for opt in opts {
                let w = words[pos].clone();
                for l in opt {
                    let mut c = w.clone();
                    c.push(l);
                    words.push(c);
                }
                self.run(words, pos + 1, out)?;
                words.truncate(keep);
            }
            return Ok(());
        }
    }
}

/// All radius-`radius` configurations based at `base`, in depth-first choice order.
pub fn enumerate_balls(
    sg: &SeparatedGraph,
    radius: usize,
    base: usize,
    cap: usize,
) -> Result<Vec<FiniteConfiguration>, ConfigError> {
    if !sg.is_bipartite() {
        return Err(ConfigError::NotBipartite);
    }
    if base >= sg.graph().vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{base}")).into());
    }
    let count = count_balls(sg, radius, base)?;
    if count > Integer::from(cap) {
        return Err(ConfigError::SizeCap { count: count.to_string(), cap });
    }
    let mut out = Vec::new();
    Expander { sg, base, radius, cap }.run(&mut vec![Vec::new()], 0, &mut out)?;
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Down(usize),
    Up(usize),
}

struct Counter<'a> {
    sg: &'a SeparatedGraph,
    memo: HashMap<(Node, usize), Integer>,
}

impl Counter<'_> {
    /// Completions below a word ending in `e` (`Down`) or `e^-1` (`Up`) with `r` letters to go.
    fn count(&mut self, node: Node, r: usize) -> Integer {
        if r == 0 {
            return Integer::from(1);
        }
        if let Some(v) = self.memo.get(&(node, r)) {
            return v.clone();
        }
        let g = self.sg.graph();
        let value = match node {
            Node::Down(e) => {
                let mut acc = Integer::from(1);
                for &f in g.outgoing(g.source(e)).iter().filter(|&&f| f != e) {
                    acc *= self.count(Node::Up(f), r - 1);
                }
                acc
            }
            Node::Up(f) => {
                let v = g.range(f);
                let skip = self.sg.class_of(f);
                self.choices(v, Some(skip), r)
            }
        };
        self.memo.insert((node, r), value.clone());
        value
    }

    fn choices(&mut self, v: usize, skip: Option<usize>, r: usize) -> Integer {
        let classes: Vec<Vec<usize>> = self.sg.classes(v).to_vec();
        let mut acc = Integer::from(1);
        for (i, x) in classes.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let mut sum = Integer::from(0);
            for &e in x {
                sum += self.count(Node::Down(e), r - 1);
            }
            acc *= sum;
        }
        acc
    }
}

/// Number of radius-`radius` configurations based at `base`, without enumerating them.
pub fn count_balls(sg: &SeparatedGraph, radius: usize, base: usize) -> Result<Integer, ConfigError> {
    if !sg.is_bipartite() {
        return Err(ConfigError::NotBipartite);
    }
    if base >= sg.graph().vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{base}")).into());
    }
    if radius == 0 {
        return Ok(Integer::from(1));
    }
    let mut c = Counter { sg, memo: HashMap::new() };
    let g = sg.graph();
    if g.incoming(base).is_empty() {
        let mut acc = Integer::from(1);
        for &f in g.outgoing(base) {
            acc *= c.count(Node::Up(f), radius - 1);
        }
        Ok(acc)
    } else {
        Ok(c.choices(base, None, radius))
    }
}

/// `theta_g(c)`: the words `g beta`, kept up to radius `radius - |g|`, based at the end of `g^-1`.
pub fn translate(sg: &SeparatedGraph, c: &FiniteConfiguration, g: &[EdgeLetter]) -> Result<FiniteConfiguration, ConfigError> {
    let ginv = invert_word(g);
    if !c.contains(&ginv) || g.len() > c.radius {
        return Err(ConfigError::OutOfDomain(format_word(sg, g)));
    }
    let base = ginv.iter().fold(c.base, |_, l| l.end(sg));
    let radius = c.radius - g.len();
    let words = c.words.iter().map(|b| reduce_product(g, b)).filter(|w| w.len() <= radius).collect();
    Ok(FiniteConfiguration { base, radius, words })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCount {
    pub radius: usize,
    pub base: String,
    /// `bottom` for `E^{0,0}`, `top` for `E^{0,1}`.
    pub layer: String,
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSize {
    pub level: usize,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusMatch {
    pub radius: usize,
    /// Total of the counts over bottom bases.
    pub total: String,
    /// Levels whose bottom layer has exactly `total` vertices.
    pub levels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub counts: Vec<BallCount>,
    pub levels: Vec<LevelSize>,
    pub matches: Vec<RadiusMatch>,
    /// Least matching level per radius, when every radius matches and these are nondecreasing.
    pub correspondence: Option<Vec<(usize, usize)>>,
    pub unmatched: Vec<usize>,
    /// Levels that could not be built under the cap.
    pub truncated: bool,
}

/// Ball counts for every base and radius `0..=max_radius` against the bottom-layer sizes of the tower.
pub fn crosscheck_counts(sg: &SeparatedGraph, max_radius: usize, cap: usize) -> Result<CrossCheck, ConfigError> {
    let (bottom, _) = sg.bipartition().ok_or(ConfigError::NotBipartite)?;
    let g = sg.graph();
    let mut counts = Vec::new();
    let mut totals = Vec::new();
    for radius in 0..=max_radius {
        let mut total = Integer::from(0);
        for v in 0..g.vertex_count() {
            let n = count_balls(sg, radius, v)?;
            let is_bottom = bottom.contains(&v);
            if is_bottom {
                total += &n;
            }
            counts.push(BallCount {
                radius,
                base: g.vertex_name(v).to_string(),
                layer: if is_bottom { "bottom" } else { "top" }.into(),
                count: n.to_string(),
            });
        }
        totals.push(total);
    }
    let want = 2 * max_radius;
    let mut tower = None;
    let mut truncated = false;
    for depth in (0..=want).rev() {
        match resolve_tower(sg, depth, cap) {
            Ok(t) => {
                tower = Some(t);
                break;
            }
            Err(ResolutionError::SizeCapExceeded { .. }) => truncated = true,
            Err(e) => return Err(e.into()),
        }
    }
    let tower = tower.expect("depth 0 needs no resolution");
    let levels: Vec<LevelSize> = tower
        .levels()
        .iter()
        .enumerate()
        .map(|(level, l)| {
            let (b, t) = l.bipartition().expect("levels are bipartite");
            LevelSize { level, bottom: b.len(), top: t.len() }
        })
        .collect();
    let matches: Vec<RadiusMatch> = totals
        .iter()
        .enumerate()
        .map(|(radius, total)| RadiusMatch {
            radius,
            total: total.to_string(),
            levels: levels.iter().filter(|l| Integer::from(l.bottom) == *total).map(|l| l.level).collect(),
        })
        .collect();
    let unmatched: Vec<usize> = matches.iter().filter(|m| m.levels.is_empty()).map(|m| m.radius).collect();
    let least: Vec<(usize, usize)> = matches.iter().filter_map(|m| m.levels.first().map(|&l| (m.radius, l))).collect();
    let monotone = least.windows(2).all(|p| p[0].1 <= p[1].1);
    let correspondence = (unmatched.is_empty() && monotone).then_some(least);
    Ok(CrossCheck { counts, levels, matches, correspondence, unmatched, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emn, fullshift, partial_isometry};

    fn w(sg: &SeparatedGraph, s: &str) -> Word {
        parse_word(sg, s).unwrap()
    }

    #[test]
    fn fullshift_small_radii() {
        let sg = fullshift();
        let v = sg.graph().vertex("v").unwrap();
        let zero = sg.graph().vertex("0").unwrap();
        assert_eq!(enumerate_balls(&sg, 0, v, 10).unwrap().len(), 1);
        let r1 = enumerate_balls(&sg, 1, v, 10).unwrap();
        assert_eq!(r1.len(), 4);
        let at0 = enumerate_balls(&sg, 1, zero, 10).unwrap();
        assert_eq!(at0.len(), 1);
        assert_eq!(at0[0].to_spec(&sg).words, ["1", "alpha_0^-1", "beta_0^-1"]);
        let counts: Vec<Integer> = (0..5).map(|r| count_balls(&sg, r, v).unwrap()).collect();
        assert_eq!(counts, [1, 4, 4, 16, 16].map(Integer::from));
    }

    #[test]
    fn enumeration_matches_count_and_validates() {
        for sg in [fullshift(), emn(2, 3).unwrap(), partial_isometry()] {
            for base in 0..sg.graph().vertex_count() {
                for r in 0..4 {
                    let balls = enumerate_balls(&sg, r, base, 100_000).unwrap();
                    assert_eq!(Integer::from(balls.len()), count_balls(&sg, r, base).unwrap());
                    let distinct: BTreeSet<_> = balls.iter().map(|c| c.words.clone()).collect();
                    assert_eq!(distinct.len(), balls.len());
                    for c in &balls {
                        validate(&sg, c).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn emn_radius_one() {
        let sg = emn(2, 3).unwrap();
        assert_eq!(count_balls(&sg, 1, 0).unwrap(), Integer::from(6));
        assert_eq!(count_balls(&sg, 3, 0).unwrap(), Integer::from(5184));
    }

    #[test]
    fn local_configurations() {
        let sg = fullshift();
        let c = enumerate_balls(&sg, 2, 0, 10).unwrap().remove(0);
        let root = local_config(&sg, &c, &[]).unwrap();
        assert_eq!(root.letters, ["alpha_0", "beta_0"]);
        assert_eq!(root.form, LocalForm::Choice { vertex: "v".into() });
        let a = local_config(&sg, &c, &w(&sg, "alpha_0")).unwrap();
        assert_eq!(a.letters, ["alpha_0^-1", "beta_0^-1"]);
        assert_eq!(a.form, LocalForm::Sources { vertex: "0".into() });
        let edge = local_config(&sg, &c, &w(&sg, "alpha_0 beta_0^-1")).unwrap();
        assert_eq!(edge.form, LocalForm::Boundary);
        assert!(matches!(local_config(&sg, &c, &w(&sg, "alpha_1")), Err(ConfigError::WordNotInConfiguration(_))));
    }

    #[test]
    fn translation() {
        let sg = fullshift();
        let c = enumerate_balls(&sg, 3, 0, 100).unwrap().remove(0);
        assert_eq!(translate(&sg, &c, &[]).unwrap(), c);
        let g = w(&sg, "alpha_0^-1");
        let t = translate(&sg, &c, &g).unwrap();
        assert_eq!(sg.graph().vertex_name(t.base), "0");
        validate(&sg, &t).unwrap();
        let back = translate(&sg, &t, &invert_word(&g)).unwrap();
        assert_eq!(back, c.truncate(1));
        assert!(matches!(translate(&sg, &c, &w(&sg, "alpha_1^-1")), Err(ConfigError::OutOfDomain(_))));
    }

    #[test]
    fn validation_rejects() {
        let sg = fullshift();
        let mut c = enumerate_balls(&sg, 1, 0, 10).unwrap().remove(0);
        c.words.insert(w(&sg, "alpha_1"));
        assert!(validate(&sg, &c).is_err());
        let c = FiniteConfiguration { base: 0, radius: 1, words: [Vec::new()].into() };
        assert!(validate(&sg, &c).is_err());
    }

    #[test]
    fn crosscheck_fullshift() {
        let x = crosscheck_counts(&fullshift(), 2, 10_000).unwrap();
        let levels: Vec<Vec<usize>> = x.matches.iter().map(|m| m.levels.clone()).collect();
        assert_eq!(levels, [vec![0], vec![2], vec![2]]);
        assert_eq!(x.correspondence, Some(vec![(0, 0), (1, 2), (2, 2)]));
    }
}
