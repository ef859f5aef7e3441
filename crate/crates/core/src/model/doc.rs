//! JSON instance documents. Every integer that can be a weight, target or bound
//! travels as a decimal string so that 64-bit JSON parsers cannot truncate it.

use serde::{Deserialize, Serialize};

use super::{parse_natural, Graph, Natural, ProblemKind, RangedInstance, WeightFn};
use crate::error::{Error, Result};

/// The on-disk instance format.
///
/// ```json
/// { "kind": "knapsack", "n": 2, "weights": ["3","4"], "values": ["1","1"],
///   "l": "7", "u": "inf", "b": "2" }
/// ```
///
/// `weights` is always the ranged function `ω` (per vertex for `vertexcover` and
/// `dominatingset`, per edge for `tsp`); `values` is the budgeted function `ν`
/// of a Knapsack instance and `b` its budget. `u = "inf"` means `n·N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub kind: ProblemKind,
    pub n: usize,
    pub weights: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    pub l: String,
    pub u: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    /// Declared weight bound `N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    /// Vertex count of a `tsp` graph; defaults to one past the largest endpoint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    /// Element names; element `i` of the universe is `labels[i]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl InstanceDoc {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance documents always serialize")
    }
}

fn parse_list(field: &str, values: &[String]) -> Result<WeightFn> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_natural(&format!("{field}[{i}]"), s))
        .collect::<Result<Vec<_>>>()
        .map(WeightFn::new)
}

/// Checks a parsed document against every invariant and builds the instance.
pub fn validate_instance(doc: &InstanceDoc) -> Result<RangedInstance> {
    if doc.weights.len() != doc.n {
        return Err(Error::LengthMismatch {
            field: "weights".into(),
            expected: doc.n,
            found: doc.weights.len(),
        });
    }
    let omega = parse_list("weights", &doc.weights)?;
    let nu = match &doc.values {
        Some(v) if v.len() != doc.n => {
            return Err(Error::LengthMismatch {
                field: "values".into(),
                expected: doc.n,
                found: v.len(),
            })
        }
        Some(v) => Some(parse_list("values", v)?),
        None => None,
    };
    let l = parse_natural("l", &doc.l)?;
    let u = match doc.u.trim() {
        "inf" => None,
        s => Some(parse_natural("u", s)?),
    };
    let b = doc.b.as_deref().map(|s| parse_natural("b", s)).transpose()?;
    let bound = doc.bound.as_deref().map(|s| parse_natural("bound", s)).transpose()?;
    let graph = match (&doc.edges, doc.kind.has_graph()) {
        (Some(edges), true) => {
            let vertex_count = match doc.kind {
                ProblemKind::Tsp => doc
                    .vertices
                    .unwrap_or_else(|| edges.iter().flatten().max().map_or(0, |&v| v + 1)),
                _ => doc.n,
            };
            Some(Graph::new(vertex_count, edges.iter().map(|&[a, b]| (a, b)))?)
        }
        (None, true) => return Err(Error::MissingField("edges")),
        (Some(_), false) => {
            return Err(Error::InvalidField {
                field: "edges".into(),
                reason: format!("kind {:?} takes no edges", doc.kind),
            })
        }
        (None, false) => None,
    };
    RangedInstance::build(doc.kind, omega, nu, l, u, b, bound, graph, doc.labels.clone())
}

impl From<&RangedInstance> for InstanceDoc {
    fn from(inst: &RangedInstance) -> Self {
        let dec = |w: &WeightFn| w.iter().map(Natural::to_string).collect::<Vec<_>>();
        let graph = inst.graph();
        InstanceDoc {
            kind: inst.kind(),
            n: inst.n(),
            weights: dec(inst.omega()),
            values: inst.nu().map(dec),
            l: inst.l().to_string(),
            u: inst.u().to_string(),
            b: inst.b().map(Natural::to_string),
            edges: graph.map(|g| g.edges().iter().map(|&(a, b)| [a, b]).collect()),
            bound: inst.declared_bound().map(Natural::to_string),
            vertices: graph.filter(|_| inst.kind() == ProblemKind::Tsp).map(Graph::vertex_count),
            labels: inst.labels().map(<[String]>::to_vec),
        }
    }
}
