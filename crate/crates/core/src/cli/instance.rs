//! The instance file: a quantale, named objects and a task list, as JSON.
//!
//! Quantale values are element names; Lawvere carriers also take JSON
//! numbers and strings such as `"1/3"` or `"inf"`. Maps are lists of target
//! names in the order of the source elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A quantale value as written in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Name(String),
    Number(serde_json::Number),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Name(s) => write!(f, "{}", s),
            Value::Number(n) => write!(f, "{}", n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleSpec {
    Builtin(String),
    Table(TableSpec),
}

/// `order` lists generating pairs `a <= b`; the order is their reflexive
/// transitive closure. `tensor[i][j]` names `elements[i] ⊗ elements[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub norm: Value,
}

/// An inline object or the name of a declared one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Name(String),
    Inline(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VcatSpec {
    pub objects: Vec<String>,
    pub dist: Vec<Vec<Value>>,
}

/// `[id, norm]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NsetSpec {
    pub elements: Vec<(String, Value)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage<O, M> {
    pub object: O,
    pub step: M,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tail<O, M> {
    pub object: O,
    pub endo: M,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "ambient", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SequenceSpec {
    Nset {
        #[serde(default)]
        prefix: Vec<Stage<Ref<NsetSpec>, Vec<String>>>,
        tail: Tail<Ref<NsetSpec>, Vec<String>>,
    },
    Dset {
        #[serde(default)]
        prefix: Vec<Stage<Ref<VcatSpec>, Vec<String>>>,
        tail: Tail<Ref<VcatSpec>, Vec<String>>,
    },
    Ncat {
        category: String,
        #[serde(default)]
        prefix: Vec<Stage<String, String>>,
        tail: Tail<String, String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTail {
    pub points: Vec<String>,
    /// Must equal `points.len()` when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounitEntry {
    pub a: String,
    pub b: String,
    /// Element of `Φ(b)`.
    pub y: String,
    /// Element of `Ψ(a)`.
    pub x: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSpec {
    pub object: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectSpec {
    Vcat(VcatSpec),
    Vfunctor {
        source: String,
        target: String,
        map: Vec<String>,
    },
    Vdist {
        source: String,
        target: String,
        values: Vec<Vec<Value>>,
    },
    /// A weight `φ` and a coweight `ψ` on one V-category.
    Weights {
        category: String,
        phi: Vec<Value>,
        psi: Vec<Value>,
    },
    /// Identities default to `id_<object>` with norm `k` when omitted.
    Ncat {
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identities: Option<Vec<String>>,
        #[serde(default)]
        compose: Vec<(String, String, String)>,
    },
    /// Identity actions may be omitted.
    Ndist {
        category: String,
        variance: String,
        sets: BTreeMap<String, Vec<(String, Value)>>,
        #[serde(default)]
        action: BTreeMap<String, Vec<String>>,
    },
    Certificate {
        category: String,
        phi: String,
        psi: String,
        counit: Vec<CounitEntry>,
        unit: UnitSpec,
    },
    Nset(NsetSpec),
    Sequence(SequenceSpec),
    MetricSequence {
        space: String,
        #[serde(default)]
        prefix_points: Vec<String>,
        tail: PointTail,
    },
    Map {
        source: String,
        target: String,
        map: Vec<String>,
    },
}

impl ObjectSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ObjectSpec::Vcat(_) => "vcat",
            ObjectSpec::Vfunctor { .. } => "vfunctor",
            ObjectSpec::Vdist { .. } => "vdist",
            ObjectSpec::Weights { .. } => "weights",
            ObjectSpec::Ncat { .. } => "ncat",
            ObjectSpec::Ndist { .. } => "ndist",
            ObjectSpec::Certificate { .. } => "certificate",
            ObjectSpec::Nset(_) => "nset",
            ObjectSpec::Sequence(_) => "sequence",
            ObjectSpec::MetricSequence { .. } => "metric-sequence",
            ObjectSpec::Map { .. } => "map",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Compose,
    Adjoint,
    Isbell,
    Representable,
    Lawvere,
    Split,
    Cauchy,
    Colimit,
    ForwardLimit,
    Lipnorm,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Compose => "compose",
            Command::Adjoint => "adjoint",
            Command::Isbell => "isbell",
            Command::Representable => "representable",
            Command::Lawvere => "lawvere",
            Command::Split => "split",
            Command::Cauchy => "cauchy",
            Command::Colimit => "colimit",
            Command::ForwardLimit => "forward-limit",
            Command::Lipnorm => "lipnorm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub command: Command,
    /// Object name; `validate` without a target checks the quantale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    /// Second operand of `compose` and `adjoint`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with: Option<String>,
    /// `forward-limit` candidate point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    /// `lipnorm` mode: `odot`, `multiplicative` or `log`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// `lipnorm` log base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
}

impl Task {
    pub fn new(command: Command, target: Option<String>) -> Self {
        Task { command, target, with: None, candidate: None, mode: None, base: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub quantale: QuantaleSpec,
    /// Second quantale on the same lattice, for norms of maps between
    /// V-categories.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odot: Option<QuantaleSpec>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

/// A JSON syntax or schema error with its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_instance(text: &str) -> std::result::Result<Instance, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        ParseError { line: e.line(), column: e.column(), message }
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(inst).expect("instances serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "quantale": "chain3",
  "objects": {
    "X": {"kind": "vcat", "objects": ["a", "b"], "dist": [["1", "m"], ["0", "1"]]},
    "S": {"kind": "sequence", "ambient": "nset",
          "prefix": [{"object": {"elements": [["p", "m"]]}, "step": ["q"]}],
          "tail": {"object": {"elements": [["q", "1"]]}, "endo": ["q"]}},
    "A": {"kind": "ncat", "objects": ["o"],
          "morphisms": [{"name": "e", "dom": "o", "cod": "o", "norm": "1"}],
          "compose": [["e", "e", "e"]]}
  },
  "tasks": [{"command": "validate", "target": "X"}, {"command": "forward-limit", "target": "M", "candidate": "a"}]
}"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(inst.objects.len(), 3);
        assert!(matches!(inst.objects["S"], ObjectSpec::Sequence(SequenceSpec::Nset { .. })));
        let again = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn numbers_are_values() {
        let inst = parse_instance(
            r#"{"quantale": "lawvere-plus", "objects": {"X": {"kind": "vcat", "objects": ["a"], "dist": [[0.5]]}}}"#,
        )
        .unwrap();
        match &inst.objects["X"] {
            ObjectSpec::Vcat(v) => assert_eq!(v.dist[0][0].to_string(), "0.5"),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_instance("{\n  \"quantale\": \"bool2\",\n  \"tasks\": [}\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 0);
        let e = parse_instance("{\"quantale\": \"bool2\", \"bogus\": 1}").unwrap_err();
        assert!(e.message.contains("bogus"), "{}", e.message);
        let e = parse_instance(r#"{"quantale": "bool2", "tasks": [{"command": "frobnicate"}]}"#).unwrap_err();
        assert!(e.message.contains("frobnicate"));
        let e = parse_instance(
            r#"{"quantale": "bool2", "objects": {"f": {"kind": "map", "source": "X", "target": "X", "map": [], "extra": 0}}}"#,
        )
        .unwrap_err();
        assert!(e.message.contains("extra"), "{}", e.message);
    }
}
