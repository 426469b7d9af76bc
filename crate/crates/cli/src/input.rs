use std::fs;
use std::io::Read;

use serde::de::DeserializeOwned;
use serde_json::Value;
use typforge::graphs::{build_separated_graph, standard_graph, GraphSpec, NamedGraph, SeparatedGraph, StandardGraph};
use typforge::monoids::{MonoidPresentation, PresentationSpec};
use typforge::selfsimilar::{
    automaton_action, finite_action, katsura_action, swap_loops_action, FiniteActionSpec, KatsuraSpec, MealySpec,
    SelfSimilarAction,
};

#[derive(Debug)]
pub enum InputError {
    Io(String),
    Parse(String),
    Schema(String),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(m) => write!(f, "io error: {m}"),
            InputError::Parse(m) => write!(f, "parse error: {m}"),
            InputError::Schema(m) => write!(f, "schema error: {m}"),
        }
    }
}

pub fn schema(e: impl std::fmt::Display) -> InputError {
    InputError::Schema(e.to_string())
}

pub fn read_bytes(path: &str) -> Result<Vec<u8>, InputError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| InputError::Io(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| InputError::Io(format!("{path}: {e}")))
    }
}

pub fn parse_json<T: DeserializeOwned>(origin: &str, bytes: &[u8]) -> Result<T, InputError> {
    serde_json::from_slice(bytes).map_err(|e| {
        let msg = format!("{origin}:{}:{}: {e}", e.line(), e.column());
        if e.is_data() {
            InputError::Schema(msg)
        } else {
            InputError::Parse(msg)
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, InputError> {
    parse_json(path, &read_bytes(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphName {
    Rose,
    Line,
    Toeplitz,
    Emn,
    #[value(name = "partial_isometry", alias = "partial-isometry")]
    PartialIsometry,
    Fullshift,
}

#[derive(Clone, Debug, clap::Args)]
pub struct GraphArgs {
    /// Graph JSON file, `-` for stdin.
    #[arg(long, conflicts_with = "name")]
    pub graph: Option<String>,
    /// Named example.
    #[arg(long, value_enum)]
    pub name: Option<GraphName>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

impl GraphArgs {
    pub fn load(&self) -> Result<(NamedGraph, Value), InputError> {
        let named = match (&self.graph, self.name) {
            (Some(path), _) => {
                let spec: GraphSpec = read_json(path)?;
                let sg = build_separated_graph(&spec).map_err(schema)?;
                if spec.separation.is_some() {
                    NamedGraph::Separated(sg)
                } else {
                    NamedGraph::Plain(sg.graph().clone())
                }
            }
            (None, Some(name)) => {
                let which = match name {
                    GraphName::Rose => StandardGraph::Rose(self.n.unwrap_or(2)),
                    GraphName::Line => StandardGraph::Line(self.n.unwrap_or(2)),
                    GraphName::Toeplitz => StandardGraph::Toeplitz,
                    GraphName::Emn => StandardGraph::Emn { m: self.m.unwrap_or(2), n: self.n.unwrap_or(3) },
                    GraphName::PartialIsometry => StandardGraph::PartialIsometry,
                    GraphName::Fullshift => StandardGraph::FullShift,
                };
                standard_graph(which).map_err(schema)?
            }
            (None, None) => return Err(InputError::Schema("give --graph FILE or --name".into())),
        };
        let spec = match &named {
            NamedGraph::Plain(g) => GraphSpec::from_graph(g),
            NamedGraph::Separated(sg) => GraphSpec::from_separated(sg),
        };
        let value = serde_json::to_value(spec).expect("graph spec serializes");
        Ok((named, value))
    }

    pub fn separated(&self) -> Result<(SeparatedGraph, Value), InputError> {
        let (g, v) = self.load()?;
        Ok((g.separated(), v))
    }
}

#[derive(Clone, Debug, clap::Args)]
pub struct MonoidSource {
    /// Presentation JSON file, `-` for stdin.
    #[arg(long, conflicts_with_all = ["graph", "name"])]
    pub presentation: Option<String>,
    #[command(flatten)]
    pub graph: GraphArgs,
}

impl MonoidSource {
    /// Graph monoid for plain graphs, separated monoid for separated ones.
    pub fn load(&self) -> Result<(MonoidPresentation, Value), InputError> {
        if let Some(path) = &self.presentation {
            let spec: PresentationSpec = read_json(path)?;
            let p = MonoidPresentation::from_spec(&spec).map_err(schema)?;
            return Ok((p, serde_json::to_value(spec).expect("spec serializes")));
        }
        let (named, value) = self.graph.load()?;
        Ok((typforge::monoids::separated_monoid(&named.separated()), value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ActionName {
    Lamplighter,
    Odometer,
    Swap,
}

#[derive(Clone, Debug, clap::Args)]
pub struct ActionArgs {
    /// Katsura `{"A","B"}`, Mealy `{"alphabet","states"}` or finite-group `{"graph",...}` JSON.
    #[arg(long, conflicts_with = "name")]
    pub action: Option<String>,
    #[arg(long, value_enum)]
    pub name: Option<ActionName>,
    /// Katsura matrix `A` as inline JSON.
    #[arg(long = "katsura-a", requires = "katsura_b", conflicts_with_all = ["action", "name"])]
    pub katsura_a: Option<String>,
    #[arg(long = "katsura-b", requires = "katsura_a")]
    pub katsura_b: Option<String>,
}

pub enum ActionInput {
    Katsura(KatsuraSpec),
    Mealy(MealySpec),
    Finite(FiniteActionSpec),
    Swap,
}

impl ActionArgs {
    pub fn input(&self) -> Result<(ActionInput, Value), InputError> {
        if let (Some(a), Some(b)) = (&self.katsura_a, &self.katsura_b) {
            let a: Vec<Vec<i64>> = parse_json("--katsura-a", a.as_bytes())?;
            let b: Vec<Vec<i64>> = parse_json("--katsura-b", b.as_bytes())?;
            let spec = KatsuraSpec { a, b };
            let v = serde_json::to_value(&spec).expect("spec serializes");
            return Ok((ActionInput::Katsura(spec), v));
        }
        if let Some(name) = self.name {
            return Ok(match name {
                ActionName::Lamplighter => {
                    let m = MealySpec::lamplighter();
                    let v = serde_json::to_value(&m).expect("spec serializes");
                    (ActionInput::Mealy(m), v)
                }
                ActionName::Odometer => {
                    let spec = KatsuraSpec { a: vec![vec![2]], b: vec![vec![1]] };
                    let v = serde_json::to_value(&spec).expect("spec serializes");
                    (ActionInput::Katsura(spec), v)
                }
                ActionName::Swap => (ActionInput::Swap, Value::String("swap".into())),
            });
        }
        let Some(path) = &self.action else {
            return Err(InputError::Schema("give --action FILE, --name or --katsura-a/--katsura-b".into()));
        };
        let bytes = read_bytes(path)?;
        let value: Value = parse_json(path, &bytes)?;
        let obj = value.as_object().ok_or_else(|| InputError::Schema(format!("{path}: expected an object")))?;
        let input = if obj.contains_key("A") {
            ActionInput::Katsura(parse_json(path, &bytes)?)
        } else if obj.contains_key("alphabet") {
            ActionInput::Mealy(parse_json(path, &bytes)?)
        } else if obj.contains_key("graph") {
            ActionInput::Finite(parse_json(path, &bytes)?)
        } else {
            return Err(InputError::Schema(format!("{path}: not a Katsura, Mealy or finite-group action")));
        };
        Ok((input, value))
    }

    pub fn load(&self) -> Result<(SelfSimilarAction, Value), InputError> {
        let (input, value) = self.input()?;
        let act = match input {
            ActionInput::Katsura(s) => katsura_action(&s),
            ActionInput::Mealy(m) => automaton_action(&m),
            ActionInput::Finite(f) => finite_action(&f),
            ActionInput::Swap => Ok(swap_loops_action()),
        }
        .map_err(schema)?;
        Ok((act, value))
    }
}
