use std::time::Duration;

use clap::{Args, Subcommand};
use serde_json::{json, Value};
use typforge::configspace::{
    count_balls, crosscheck_counts, enumerate_balls, ConfigError, DEFAULT_BALL_CAP,
};
use typforge::graphs::{every_cycle_has_entry, is_cofinal, is_simple_graph_algebra, to_dot, GraphError, NamedGraph};
use typforge::ktheory::{graph_k_matrix, graph_k_theory, katsura_k_theory};
use typforge::monoids::{
    cancellation_report, cyclic_type, graph_stably_finite, is_stably_finite, tarski_measure,
    verify_certificate_claim, CancellationScope, CertifiedClaim, CyclicType, Decider, EqVerdict, LeqVerdict,
    MonoidElement, MonoidError, MonoidPresentation, PropertyVerdict, SearchBudget, StablyFinite, TarskiVerdict,
};
use typforge::resolution::{
    export_bratteli, fullshift_monoid, presentation_isomorphism, resolve_tower, top_layer_presentation,
    ResolutionError, DEFAULT_SIZE_CAP,
};
use typforge::selfsimilar::{
    all_paths, default_samples, dichotomy_report, is_pseudo_free, katsura_pseudo_free, quotient_graph,
    type_monoid_selfsimilar, verify_cocycle, words_up_to, CocycleSamples, GroupElement, GroupKind, PseudoFree,
    SelfSimilarError,
};

use crate::input::{read_bytes, parse_json, schema, ActionArgs, ActionInput, GraphArgs, InputError, MonoidSource};
use crate::report::{sha256_hex, CertificateEntry, Outcome, RunReport};
use crate::{CliError, Format};

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SelfSimilarError> for CliError {
    fn from(e: SelfSimilarError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::SizeCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::SizeCap { .. } => CliError::Cap(e.to_string()),
            ConfigError::Resolution(r) => r.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// `TYPFORGE_SIZE_CAP` when set, else `default`.
fn size_cap(default: usize) -> Result<usize, CliError> {
    match std::env::var("TYPFORGE_SIZE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("TYPFORGE_SIZE_CAP={v:?} is not a count"))),
        Err(_) => Ok(default),
    }
}

#[derive(Clone, Debug, Args)]
pub struct BudgetArgs {
    /// Rewriting depth for presentations that are not graded.
    #[arg(long = "search-depth")]
    search_depth: Option<usize>,
    /// Visited states per exploration.
    #[arg(long)]
    frontier: Option<usize>,
    /// Wall-clock limit per decision; output then depends on machine speed.
    #[arg(long = "timeout-ms")]
    timeout_ms: Option<u64>,
    #[arg(long = "max-multiple")]
    max_multiple: Option<u32>,
}

impl BudgetArgs {
    fn budget(&self, depth: Option<usize>) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(d) = depth.or(self.search_depth) {
            b.max_depth = d;
        }
        if let Some(f) = self.frontier {
            b.max_frontier = f;
        }
        if let Some(m) = self.max_multiple {
            b.max_multiple = m;
        }
        b.timeout = self.timeout_ms.map(Duration::from_millis);
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Sizes, sources, sinks and separation.
    Info(GraphArgs),
    /// Simplicity of the graph algebra.
    Simple(GraphArgs),
    /// Bipartition of a separated graph.
    Bipartite(GraphArgs),
}

pub fn graph(cmd: GraphCmd) -> Result<(Outcome, bool), CliError> {
    match cmd {
        GraphCmd::Info(a) => {
            let (named, input) = a.load()?;
            let sg = named.separated();
            let g = named.graph();
            let names = |vs: Vec<usize>| vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect::<Vec<_>>();
            let result = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "separated": named.is_separated(),
                "classes": sg.class_count(),
                "sources": names(g.sources()),
                "sinks": names(g.sinks()),
                "bipartite": sg.is_bipartite(),
            });
            let summary = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
            Ok((Outcome::new(input, summary, result).with_dot(to_dot(&sg)), true))
        }
        GraphCmd::Simple(a) => {
            let (named, input) = a.load()?;
            let g = named.graph();
            let simple = is_simple_graph_algebra(g);
            let result = json!({
                "simple": simple,
                "cofinal": is_cofinal(g),
                "every_cycle_has_entry": every_cycle_has_entry(g),
            });
            Ok((Outcome::new(input, if simple { "simple" } else { "not simple" }, result), false))
        }
        GraphCmd::Bipartite(a) => {
            let (sg, input) = a.separated()?;
            let g = sg.graph();
            let result = match sg.bipartition() {
                Some((bottom, top)) => json!({
                    "bipartite": true,
                    "bottom": bottom.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    "top": top.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    "three_twos": sg.satisfies_three_twos(),
                }),
                None => json!({ "bipartite": false }),
            };
            let summary = if sg.is_bipartite() { "bipartite" } else { "not bipartite" };
            Ok((Outcome::new(input, summary, result), false))
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct MonoidCommon {
    #[command(flatten)]
    source: MonoidSource,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Rewriting depth, same as `--search-depth`.
    #[arg(long)]
    depth: Option<usize>,
}

impl MonoidCommon {
    fn load(&self) -> Result<(MonoidPresentation, Value, SearchBudget), CliError> {
        let (p, input) = self.source.load()?;
        Ok((p, input, self.budget.budget(self.depth)))
    }
}

#[derive(Clone, Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    common: MonoidCommon,
    /// Element such as `2*w + v`.
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
}

#[derive(Clone, Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    common: MonoidCommon,
    #[arg(long)]
    x: String,
}

#[derive(Clone, Debug, Args)]
pub struct CancellationArgs {
    #[command(flatten)]
    common: MonoidCommon,
    /// Largest coordinate sum of enumerated elements.
    #[arg(long = "max-degree", default_value_t = 4)]
    max_degree: u32,
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    Eq(PairArgs),
    Le(PairArgs),
    /// Cyclic type of the submonoid generated by `--x`.
    Type(ElementArgs),
    Stablyfinite(MonoidCommon),
    /// Measure or paradox for `--x`.
    Tarski(ElementArgs),
    /// Cancellation-type properties within a bounded scope.
    Cancellation(CancellationArgs),
}

fn input_with(input: Value, extra: Value) -> Value {
    json!({ "source": input, "query": extra })
}

fn eq_claim(x: &MonoidElement, y: &MonoidElement, v: &EqVerdict) -> Option<CertifiedClaim> {
    match v {
        EqVerdict::Equal { proof } => Some(CertifiedClaim::Equal { x: x.clone(), y: y.clone(), proof: proof.clone() }),
        EqVerdict::Distinct { certificate } => {
            Some(CertifiedClaim::Distinct { x: x.clone(), y: y.clone(), certificate: certificate.clone() })
        }
        EqVerdict::Unknown => None,
    }
}

fn leq_claim(x: &MonoidElement, y: &MonoidElement, v: &LeqVerdict) -> Option<CertifiedClaim> {
    match v {
        LeqVerdict::Leq { z, proof } => {
            Some(CertifiedClaim::Leq { x: x.clone(), y: y.clone(), z: z.clone(), proof: proof.clone() })
        }
        LeqVerdict::NotLeq { certificate } => {
            Some(CertifiedClaim::NotLeq { x: x.clone(), y: y.clone(), certificate: certificate.clone() })
        }
        LeqVerdict::Unknown => None,
    }
}

fn eq_name(v: &EqVerdict) -> &'static str {
    match v {
        EqVerdict::Equal { .. } => "Equal",
        EqVerdict::Distinct { .. } => "Distinct",
        EqVerdict::Unknown => "Unknown",
    }
}

fn leq_name(v: &LeqVerdict) -> &'static str {
    match v {
        LeqVerdict::Leq { .. } => "Leq",
        LeqVerdict::NotLeq { .. } => "NotLeq",
        LeqVerdict::Unknown => "Unknown",
    }
}

pub fn monoid(cmd: MonoidCmd) -> Result<Outcome, CliError> {
    match cmd {
        MonoidCmd::Eq(a) => {
            let (p, input, budget) = a.common.load()?;
            let (x, y) = (p.parse_element(&a.x)?, p.parse_element(&a.y)?);
            let v = Decider::new(&p, budget).equal(&x, &y)?;
            let input = input_with(input, json!({ "x": a.x, "y": a.y }));
            let result = json!({ "presentation": p.to_string(), "x": p.format_element(&x), "y": p.format_element(&y), "verdict": v });
            let mut o = Outcome::new(input, eq_name(&v), result).unknown(v == EqVerdict::Unknown);
            o.certify(&p, "eq", eq_claim(&x, &y, &v));
            Ok(o)
        }
        MonoidCmd::Le(a) => {
            let (p, input, budget) = a.common.load()?;
            let (x, y) = (p.parse_element(&a.x)?, p.parse_element(&a.y)?);
            let v = Decider::new(&p, budget).leq(&x, &y)?;
            let input = input_with(input, json!({ "x": a.x, "y": a.y }));
            let result = json!({ "presentation": p.to_string(), "x": p.format_element(&x), "y": p.format_element(&y), "verdict": v });
            let mut o = Outcome::new(input, leq_name(&v), result).unknown(v == LeqVerdict::Unknown);
            o.certify(&p, "le", leq_claim(&x, &y, &v));
            Ok(o)
        }
        MonoidCmd::Type(a) => {
            let (p, input, budget) = a.common.load()?;
            let x = p.parse_element(&a.x)?;
            let t = cyclic_type(&p, &x, &budget)?;
            let (summary, claims, unknown) = match &t {
                CyclicType::Free { claims } => ("Free".to_string(), claims.clone(), false),
                CyclicType::LeavittType { m, n, claims } => (format!("LeavittType({m},{n})"), claims.clone(), false),
                CyclicType::Unknown { m, n } => (format!("Unknown at ({m},{n})"), Vec::new(), true),
            };
            let input = input_with(input, json!({ "x": a.x }));
            let mut o = Outcome::new(input, summary, json!({ "presentation": p.to_string(), "type": t })).unknown(unknown);
            for c in claims {
                o.certify(&p, "type", Some(c));
            }
            Ok(o)
        }
        MonoidCmd::Stablyfinite(a) => {
            let (p, input, budget) = a.load()?;
            let v = is_stably_finite(&p, &budget);
            let summary = match v {
                StablyFinite::Yes { .. } => "Yes",
                StablyFinite::No { .. } => "No",
                StablyFinite::Unknown => "Unknown",
            };
            let combinatorial = match (&a.source.presentation, a.source.graph.load()) {
                (None, Ok((NamedGraph::Plain(g), _))) => Some(graph_stably_finite(&g)),
                _ => None,
            };
            let result = json!({ "presentation": p.to_string(), "verdict": v, "graph_criterion": combinatorial });
            let mut o = Outcome::new(input, summary, result).unknown(v == StablyFinite::Unknown);
            o.certify(&p, "stably_finite", v.claim());
            Ok(o)
        }
        MonoidCmd::Tarski(a) => {
            let (p, input, budget) = a.common.load()?;
            let e = p.parse_element(&a.x)?;
            let v = tarski_measure(&p, &e, &budget)?;
            let summary = match v {
                TarskiVerdict::Measure { .. } => "Measure",
                TarskiVerdict::Paradox { .. } => "Paradox",
                TarskiVerdict::Unknown => "Unknown",
            };
            let input = input_with(input, json!({ "x": a.x }));
            let mut o = Outcome::new(input, summary, json!({ "presentation": p.to_string(), "verdict": v }))
                .unknown(v == TarskiVerdict::Unknown);
            o.certify(&p, "tarski", v.claim(&e));
            Ok(o)
        }
        MonoidCmd::Cancellation(a) => {
            let (p, input, budget) = a.common.load()?;
            let scope = CancellationScope {
                max_degree: a.max_degree,
                max_multiple: a.common.budget.max_multiple.unwrap_or(CancellationScope::default().max_multiple),
                budget,
            };
            let report = cancellation_report(&p, &scope);
            let input = input_with(input, json!({ "max_degree": a.max_degree }));
            let mut o = Outcome::new(input, cancellation_summary(&report.entries), json!({ "presentation": p.to_string(), "report": &report }));
            certify_entries(&mut o, &p, &report.entries);
            Ok(o)
        }
    }
}

fn cancellation_summary(entries: &[typforge::monoids::PropertyEntry]) -> String {
    entries
        .iter()
        .map(|e| {
            let name = serde_json::to_value(e.property).expect("serializes");
            let v = match &e.verdict {
                PropertyVerdict::CounterexampleFound { .. } => "counterexample",
                PropertyVerdict::NoCounterexampleWithinScope => "none in scope",
                PropertyVerdict::Skipped { .. } => "skipped",
            };
            format!("{}: {v}", name.as_str().unwrap_or_default())
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn certify_entries(o: &mut Outcome, p: &MonoidPresentation, entries: &[typforge::monoids::PropertyEntry]) {
    for e in entries {
        if let PropertyVerdict::CounterexampleFound { claims, .. } = &e.verdict {
            let ctx = serde_json::to_value(e.property).expect("serializes");
            for c in claims {
                o.certify(p, ctx.as_str().unwrap_or_default(), Some(c.clone()));
            }
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    action: ActionArgs,
    /// Integers `-k..=k` for Katsura actions.
    #[arg(long = "int-range")]
    int_range: Option<i64>,
    /// Words up to this length for automaton actions.
    #[arg(long = "word-len")]
    word_len: Option<usize>,
    /// Paths up to this length.
    #[arg(long = "path-len")]
    path_len: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct PseudoArgs {
    #[command(flatten)]
    action: ActionArgs,
    #[arg(long, default_value_t = 8)]
    bound: usize,
}

#[derive(Clone, Debug, Args)]
pub struct SelfTypArgs {
    #[command(flatten)]
    action: ActionArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, requires = "y")]
    x: Option<String>,
    #[arg(long, requires = "x")]
    y: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct DichotomyArgs {
    #[command(flatten)]
    action: ActionArgs,
    #[arg(long = "max-degree", default_value_t = 3)]
    max_degree: u32,
}

#[derive(Subcommand, Debug)]
pub enum SelfsimCmd {
    /// Sampled cocycle and self-similarity identities.
    Check(CheckArgs),
    Pseudofree(PseudoArgs),
    /// Quotient graph by the vertex orbits.
    Quotient(ActionArgs),
    /// Type monoid of the quotient graph.
    Typ(SelfTypArgs),
    Dichotomy(DichotomyArgs),
}

pub fn selfsim(cmd: SelfsimCmd) -> Result<(Outcome, bool), CliError> {
    match cmd {
        SelfsimCmd::Check(a) => {
            let (act, input) = a.action.load()?;
            let mut samples = default_samples(&act);
            if let (GroupKind::Integers, Some(k)) = (act.kind(), a.int_range) {
                samples.elements = (-k..=k).map(GroupElement::Int).collect();
            }
            if let (GroupKind::Automaton, Some(l)) = (act.kind(), a.word_len) {
                samples.elements = words_up_to(act.generators().len(), l);
            }
            if let Some(l) = a.path_len {
                samples.paths = all_paths(&act, l);
            }
            let report = verify_cocycle(&act, &samples);
            let summary = if report.ok() {
                format!("ok: {} checks", report.checks)
            } else {
                format!("{} violations", report.violations.len())
            };
            let result = json!({
                "group": report.group,
                "elements": report.samples.elements.len(),
                "paths": report.samples.paths.len(),
                "checks": report.checks,
                "ok": report.ok(),
                "violations": report.violations,
            });
            let input = input_with(input, json!({ "samples": sample_digest(&report.samples) }));
            Ok((Outcome::new(input, summary, result), false))
        }
        SelfsimCmd::Pseudofree(a) => {
            let (act, input) = a.action.load()?;
            let v = is_pseudo_free(&act, a.bound);
            let criterion = act.katsura_spec().map(katsura_pseudo_free);
            let summary = match &v {
                PseudoFree::Yes { exhaustive: true } => "pseudo-free",
                PseudoFree::Yes { exhaustive: false } => "no witness within bound",
                PseudoFree::No { .. } => "not pseudo-free",
                PseudoFree::Unknown => "Unknown",
            };
            let result = json!({ "bound": a.bound, "search": v, "katsura_criterion": criterion });
            let input = input_with(input, json!({ "bound": a.bound }));
            Ok((Outcome::new(input, summary, result).unknown(v == PseudoFree::Unknown), false))
        }
        SelfsimCmd::Quotient(a) => {
            let (act, input) = a.load()?;
            let q = quotient_graph(&act)?;
            let spec = typforge::graphs::GraphSpec::from_graph(&q);
            let summary = format!("{} vertices, {} edges", q.vertex_count(), q.edge_count());
            let dot = to_dot(&typforge::graphs::SeparatedGraph::trivial(q));
            Ok((Outcome::new(input, summary, json!({ "quotient": spec })).with_dot(dot), true))
        }
        SelfsimCmd::Typ(a) => {
            let (act, input) = a.action.load()?;
            let p = type_monoid_selfsimilar(&act)?;
            let mut result = json!({ "presentation": p.to_string(), "spec": p.to_spec() });
            let mut summary = p.to_string();
            let mut claim = None;
            let mut unknown = false;
            if let (Some(xs), Some(ys)) = (&a.x, &a.y) {
                let (x, y) = (p.parse_element(xs)?, p.parse_element(ys)?);
                let v = Decider::new(&p, a.budget.budget(None)).equal(&x, &y)?;
                summary = eq_name(&v).into();
                unknown = v == EqVerdict::Unknown;
                claim = eq_claim(&x, &y, &v);
                result["verdict"] = serde_json::to_value(&v).expect("serializes");
            }
            let input = input_with(input, json!({ "x": a.x, "y": a.y }));
            let mut o = Outcome::new(input, summary, result).unknown(unknown);
            o.certify(&p, "eq", claim);
            Ok((o, false))
        }
        SelfsimCmd::Dichotomy(a) => {
            let (act, input) = a.action.load()?;
            let scope = CancellationScope { max_degree: a.max_degree, ..CancellationScope::default() };
            let r = dichotomy_report(&act, &scope)?;
            let p = MonoidPresentation::from_spec(&r.monoid)?;
            let summary = match r.stably_finite {
                StablyFinite::Yes { .. } => "stably finite",
                StablyFinite::No { .. } => "not stably finite",
                StablyFinite::Unknown => "Unknown",
            };
            let input = input_with(input, json!({ "max_degree": a.max_degree }));
            let unknown = r.stably_finite == StablyFinite::Unknown;
            let mut o = Outcome::new(input, summary, &r).unknown(unknown);
            o.certify(&p, "stably_finite", r.stably_finite.claim());
            certify_entries(&mut o, &p, &r.cancellation.entries);
            Ok((o, false))
        }
    }
}

fn sample_digest(s: &CocycleSamples) -> String {
    sha256_hex(&serde_json::to_vec(s).expect("samples serialize"))
}

#[derive(Clone, Debug, Args)]
pub struct ResolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Number of resolution steps.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Output, overriding `--format`.
    #[arg(long, value_enum)]
    pub emit: Option<Format>,
    /// Omit the well-definedness certificates of the transition maps.
    #[arg(long = "no-proofs")]
    no_proofs: bool,
}

pub fn resolve(a: ResolveArgs) -> Result<Outcome, CliError> {
    let (sg, input) = a.graph.separated()?;
    let tower = resolve_tower(&sg, a.depth, size_cap(DEFAULT_SIZE_CAP)?)?;
    let diagram = export_bratteli(&tower);
    let mut maps = Vec::new();
    let mut o = Outcome::default();
    for n in 0..tower.depth() {
        let t = tower.transition_map(n)?;
        let (from, to) = (tower.monoid(n)?, tower.monoid(n + 1)?);
        let images: Vec<String> = t.map.images.iter().map(|x| to.format_element(x)).collect();
        maps.push(json!({
            "level": n,
            "images": from.generators().iter().zip(images).map(|(g, x)| json!([g, x])).collect::<Vec<_>>(),
            "proofs": t.proofs.len(),
        }));
        if !a.no_proofs {
            for w in &t.proofs {
                o.certify(to, format!("transition {n}: {} classes {} and {}", w.vertex, w.first, w.second), Some(w.claim.clone()));
            }
        }
    }
    let counts = tower.counts();
    let result = json!({
        "depth": tower.depth(),
        "counts": counts,
        "counts_hold": counts.iter().all(|c| c.holds()),
        "chaining_holds": tower.chaining_holds(),
        "transition_maps": maps,
        "diagram": diagram,
    });
    let sizes: Vec<String> = counts.iter().map(|c| c.bottom.to_string()).collect();
    let outcome = Outcome::new(input_with(input, json!({ "depth": a.depth })), format!("bottom layers {}", sizes.join("/")), result);
    Ok(Outcome { presentations: o.presentations, certificates: o.certificates, ..outcome }.with_dot(diagram.to_dot()))
}

#[derive(Clone, Debug, Args)]
pub struct TypArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Tower depth.
    #[arg(long, default_value_t = 0)]
    depth: usize,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    /// Level of `--x` in the tower.
    #[arg(long = "x-level", default_value_t = 0)]
    x_level: usize,
    #[arg(long = "y-level", default_value_t = 0)]
    y_level: usize,
}

#[derive(Subcommand, Debug)]
pub enum TypCmd {
    Eq(TypArgs),
    Le(TypArgs),
}

pub fn typ(cmd: TypCmd) -> Result<Outcome, CliError> {
    let (a, leq) = match cmd {
        TypCmd::Eq(a) => (a, false),
        TypCmd::Le(a) => (a, true),
    };
    let (sg, input) = a.graph.separated()?;
    let tower = resolve_tower(&sg, a.depth, size_cap(DEFAULT_SIZE_CAP)?)?;
    let x = tower.parse(a.x_level, &a.x)?;
    let y = tower.parse(a.y_level, &a.y)?;
    let budget = a.budget.budget(None);
    let input = input_with(
        input,
        json!({ "depth": a.depth, "x": a.x, "y": a.y, "x_level": a.x_level, "y_level": a.y_level }),
    );
    if leq {
        let v = tower.typ_leq(&x, &y, &budget)?;
        let p = tower.monoid(v.level)?;
        let result = json!({ "level": v.level, "x": p.format_element(&v.x), "y": p.format_element(&v.y), "verdict": v.verdict });
        let mut o = Outcome::new(input, leq_name(&v.verdict), result).unknown(v.verdict == LeqVerdict::Unknown);
        o.certify(p, format!("level {}", v.level), leq_claim(&v.x, &v.y, &v.verdict));
        Ok(o)
    } else {
        let v = tower.typ_equal(&x, &y, &budget)?;
        let p = tower.monoid(v.level)?;
        let result = json!({ "level": v.level, "x": p.format_element(&v.x), "y": p.format_element(&v.y), "verdict": v.verdict });
        let mut o = Outcome::new(input, eq_name(&v.verdict), result).unknown(v.verdict == EqVerdict::Unknown);
        o.certify(p, format!("level {}", v.level), eq_claim(&v.x, &v.y, &v.verdict));
        Ok(o)
    }
}

#[derive(Clone, Debug, Args)]
pub struct ShiftArgs {
    /// Word length.
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Also compare with the top layer of the resolution tower of the full shift.
    #[arg(long)]
    tower: bool,
}

#[derive(Subcommand, Debug)]
pub enum ShiftCmd {
    /// The full-shift monoid on binary words of length `n`.
    Monoid(ShiftArgs),
}

pub fn shift(cmd: ShiftCmd) -> Result<Outcome, CliError> {
    let ShiftCmd::Monoid(a) = cmd;
    let m = fullshift_monoid(a.n)?;
    let next = fullshift_monoid(a.n + 1).ok();
    let mut result = json!({
        "n": a.n,
        "presentation": m.presentation.to_string(),
        "spec": m.presentation.to_spec(),
        "phi": next.map(|next| m.presentation.generators().iter().zip(&m.phi.images).map(|(g, x)| {
            json!([g, next.presentation.format_element(x)])
        }).collect::<Vec<_>>()),
    });
    if a.tower {
        let sg = typforge::graphs::fullshift();
        let tower = resolve_tower(&sg, a.n - 1, size_cap(DEFAULT_SIZE_CAP)?)?;
        let top = top_layer_presentation(tower.level(a.n - 1)?)?;
        let iso = presentation_isomorphism(&m.presentation, &top);
        result["tower_isomorphism"] = json!(iso.map(|perm| {
            perm.iter().enumerate().map(|(i, &j)| json!([m.presentation.generators()[i], top.generators()[j]])).collect::<Vec<_>>()
        }));
    }
    Ok(Outcome::new(json!({ "n": a.n, "tower": a.tower }), m.presentation.to_string(), result))
}

#[derive(Clone, Debug, Args)]
pub struct BallArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    radius: usize,
    /// Base vertex; every vertex when omitted (`count` only).
    #[arg(long)]
    base: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct CrossArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long = "max-radius", default_value_t = 2)]
    max_radius: usize,
}

#[derive(Subcommand, Debug)]
pub enum ConfigCmd {
    /// Number of configurations of the given radius.
    Count(BallArgs),
    /// The configurations themselves.
    Enumerate(BallArgs),
    /// Ball counts against the layer sizes of the resolution tower.
    Crosscheck(CrossArgs),
}

pub fn configspace(cmd: ConfigCmd) -> Result<Outcome, CliError> {
    match cmd {
        ConfigCmd::Count(a) => {
            let (sg, input) = a.graph.separated()?;
            let g = sg.graph();
            let bases: Vec<usize> = match &a.base {
                Some(b) => vec![g.vertex(b)?],
                None => (0..g.vertex_count()).collect(),
            };
            let mut rows = Vec::new();
            for v in bases {
                rows.push(json!({ "base": g.vertex_name(v), "count": count_balls(&sg, a.radius, v)?.to_string() }));
            }
            let summary = rows.iter().map(|r| format!("{}: {}", r["base"].as_str().unwrap_or_default(), r["count"].as_str().unwrap_or_default())).collect::<Vec<_>>().join(", ");
            let input = input_with(input, json!({ "radius": a.radius, "base": a.base }));
            Ok(Outcome::new(input, summary, json!({ "radius": a.radius, "counts": rows })))
        }
        ConfigCmd::Enumerate(a) => {
            let (sg, input) = a.graph.separated()?;
            let base = a.base.as_deref().ok_or_else(|| CliError::Input("enumerate needs --base".into()))?;
            let v = sg.graph().vertex(base)?;
            let balls = enumerate_balls(&sg, a.radius, v, size_cap(DEFAULT_BALL_CAP)?)?;
            let specs: Vec<_> = balls.iter().map(|c| c.to_spec(&sg)).collect();
            let input = input_with(input, json!({ "radius": a.radius, "base": base }));
            Ok(Outcome::new(input, format!("{} configurations", specs.len()), json!({ "count": specs.len(), "configurations": specs })))
        }
        ConfigCmd::Crosscheck(a) => {
            let (sg, input) = a.graph.separated()?;
            let x = crosscheck_counts(&sg, a.max_radius, size_cap(DEFAULT_SIZE_CAP)?)?;
            let summary = match &x.correspondence {
                Some(c) => c.iter().map(|(r, l)| format!("r{r}->L{l}")).collect::<Vec<_>>().join(" "),
                None => format!("unmatched radii {:?}", x.unmatched),
            };
            let input = input_with(input, json!({ "max_radius": a.max_radius }));
            Ok(Outcome::new(input, summary, &x))
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct KatsuraArgs {
    #[command(flatten)]
    action: ActionArgs,
}

#[derive(Subcommand, Debug)]
pub enum KtheoryCmd {
    /// K-groups of a graph algebra.
    Graph(GraphArgs),
    /// K-groups of a Katsura algebra.
    Katsura(KatsuraArgs),
}

fn describe(d: &typforge::GroupDescriptor) -> String {
    let mut parts = Vec::new();
    match d.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn ktheory(cmd: KtheoryCmd) -> Result<Outcome, CliError> {
    match cmd {
        KtheoryCmd::Graph(a) => {
            let (named, input) = a.load()?;
            let g = named.graph();
            let k = graph_k_theory(g);
            let summary = format!("K0 = {}, K1 = {}", describe(&k.K0), describe(&k.K1));
            let result = json!({ "matrix": graph_k_matrix(g), "K0": k.K0, "K1": k.K1 });
            Ok(Outcome::new(input, summary, result))
        }
        KtheoryCmd::Katsura(a) => {
            let (spec_input, input) = a.action.input()?;
            let ActionInput::Katsura(spec) = spec_input else {
                return Err(CliError::Input("ktheory katsura needs Katsura data {\"A\", \"B\"}".into()));
            };
            let k = katsura_k_theory(&spec)?;
            let summary = format!("K0 = {}, K1 = {}", describe(&k.K0), describe(&k.K1));
            Ok(Outcome::new(input, summary, json!({ "K0": k.K0, "K1": k.K1 })))
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Run report JSON, `-` for stdin.
    pub file: String,
}

pub fn verify_cert(a: VerifyArgs) -> Result<Outcome, CliError> {
    let bytes = read_bytes(&a.file)?;
    let report: RunReport = parse_json(&a.file, &bytes)?;
    let mut failures = Vec::new();
    let mut presentations = Vec::new();
    for spec in &report.presentations {
        presentations.push(MonoidPresentation::from_spec(spec).map_err(schema)?);
    }
    for (i, CertificateEntry { context, presentation, claim }) in report.certificates.iter().enumerate() {
        let verdict = match presentations.get(*presentation) {
            Some(p) => verify_certificate_claim(p, claim).map_err(|e| e.to_string()),
            None => Err(format!("presentation {presentation} is missing")),
        };
        if let Err(e) = verdict {
            failures.push(json!({ "index": i, "context": context, "error": e }));
        }
    }
    let total = report.certificates.len();
    let summary = if failures.is_empty() {
        format!("all {total} certificates verified")
    } else {
        format!("{} of {total} certificates rejected", failures.len())
    };
    let rejected = !failures.is_empty();
    let result = json!({ "total": total, "valid": total - failures.len(), "failures": failures });
    let mut o = Outcome::new(json!({ "sha256": sha256_hex(&bytes) }), summary, result);
    o.rejected = rejected;
    Ok(o)
}
