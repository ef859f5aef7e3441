//! Core data types: naturals, weight functions, subsets, instances.

mod doc;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};

pub use doc::{validate_instance, InstanceDoc};

/// Unbounded non-negative integer. Weights may be exponential in `|U|`.
pub type Natural = num_bigint::BigUint;

/// Number of bits needed to write `x`; zero for zero.
pub fn bit_length(x: &Natural) -> u64 {
    x.bits()
}

/// `⌈log₂ d⌉` for `d ≥ 1`, and 0 for `d = 0`.
pub fn ceil_lg(d: &Natural) -> u64 {
    if d.is_zero() {
        0
    } else {
        (d - 1u32).bits()
    }
}

/// Parses a canonical decimal string. `field` names the source for diagnostics.
pub fn parse_natural(field: &str, s: &str) -> Result<Natural> {
    let trimmed = s.trim();
    if let Some(rest) = trimmed.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::NegativeValue {
                field: field.to_string(),
                value: s.to_string(),
            });
        }
    }
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedDecimal {
            field: field.to_string(),
            value: s.to_string(),
        });
    }
    trimmed.parse::<Natural>().map_err(|_| Error::MalformedDecimal {
        field: field.to_string(),
        value: s.to_string(),
    })
}

/// A subset of the universe `{0, …, n−1}` stored as a bitmask (bit `e` set iff `e ∈ X`).
///
/// The derived ordering is the integer order of the mask, which is the
/// "lexicographically smallest" tie-break used by every solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The whole universe `{0, …, n−1}`; `n ≤ 64`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= 64, "subsets are limited to 64 elements");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |m, e| m | (1u64 << e)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(e)
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A total map from universe elements `0..n` to [`Natural`] weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightFn {
    weights: Vec<Natural>,
}

impl WeightFn {
    pub fn new(weights: Vec<Natural>) -> Self {
        WeightFn { weights }
    }

    pub fn from_u64s(weights: &[u64]) -> Self {
        WeightFn::new(weights.iter().map(|&w| Natural::from(w)).collect())
    }

    /// Number of universe elements.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Natural] {
        &self.weights
    }

    pub fn get(&self, e: usize) -> &Natural {
        &self.weights[e]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Natural> {
        self.weights.iter()
    }

    /// Largest weight, or zero for the empty universe.
    pub fn max(&self) -> Natural {
        self.weights.iter().max().cloned().unwrap_or_default()
    }

    /// `ω(U)`.
    pub fn total(&self) -> Natural {
        self.weights.iter().sum()
    }

    /// `ω(X) = Σ_{e∈X} ω(e)`.
    pub fn eval(&self, x: Subset) -> Natural {
        x.elements().filter(|&e| e < self.len()).map(|e| &self.weights[e]).sum()
    }
}

impl FromIterator<Natural> for WeightFn {
    fn from_iter<I: IntoIterator<Item = Natural>>(iter: I) -> Self {
        WeightFn::new(iter.into_iter().collect())
    }
}

/// A weight function paired with an exact target `t`: "is there an `X` with `ω(X) = t`?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPair {
    pub weights: Arc<WeightFn>,
    pub target: Natural,
}

impl ExactPair {
    pub fn new(weights: WeightFn, target: Natural) -> Self {
        ExactPair {
            weights: Arc::new(weights),
            target,
        }
    }

    pub fn is_hit_by(&self, x: Subset) -> bool {
        self.weights.eval(x) == self.target
    }
}

/// Subset Sum: is there an `X ⊆ U` with `α(X) = c`?
///
/// The weight function sits behind an `Arc` because reductions emit many
/// instances that differ only in their target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub alpha: Arc<WeightFn>,
    pub target: Natural,
}

impl SubsetSumInstance {
    pub fn new(alpha: WeightFn, target: Natural) -> Self {
        SubsetSumInstance {
            alpha: Arc::new(alpha),
            target,
        }
    }

    pub fn shared(alpha: Arc<WeightFn>, target: Natural) -> Self {
        SubsetSumInstance { alpha, target }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_witness(&self, x: Subset) -> bool {
        self.alpha.eval(x) == self.target
    }
}

/// Which problem an instance document describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Ranged,
    SubsetSum,
    Knapsack,
    VertexCover,
    DominatingSet,
    Tsp,
}

impl ProblemKind {
    pub fn has_graph(self) -> bool {
        matches!(self, ProblemKind::VertexCover | ProblemKind::DominatingSet | ProblemKind::Tsp)
    }
}

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored with the smaller endpoint first, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Rejects out-of-range endpoints, self-loops and duplicate edges.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidEdge(a, b, "endpoint out of range"));
            }
            if a == b {
                return Err(Error::InvalidEdge(a, b, "self-loop"));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidEdge(a, b, "duplicate edge"));
            }
            out.push(e);
        }
        Ok(Graph {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// Closed-neighbourhood bitmasks, one per vertex (`vertex_count ≤ 64`).
    pub fn closed_neighbourhoods(&self) -> Vec<u64> {
        let mut nb: Vec<u64> = (0..self.vertex_count).map(|v| 1u64 << v).collect();
        for &(a, b) in &self.edges {
            nb[a] |= 1 << b;
            nb[b] |= 1 << a;
        }
        nb
    }
}

/// A validated ranged instance: is there an `X ∈ F` with `ω(X) ∈ [l, u]`?
///
/// Knapsack instances additionally carry a second weight function `ν` with a
/// budget `b` (`ν(X) ≤ b`); the profit threshold `t` is stored as `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangedInstance {
    kind: ProblemKind,
    omega: WeightFn,
    nu: Option<WeightFn>,
    l: Natural,
    u: Natural,
    b: Option<Natural>,
    bound: Option<Natural>,
    graph: Option<Graph>,
    labels: Option<Vec<String>>,
}

impl RangedInstance {
    /// Plain ranged instance over all subsets.
    pub fn ranged(omega: WeightFn, l: Natural, u: Natural) -> Result<Self> {
        Self::build(ProblemKind::Ranged, omega, None, l, Some(u), None, None, None, None)
    }

    /// Exact Subset Sum instance, stored as the range `[c, c]`.
    pub fn subset_sum(alpha: WeightFn, c: Natural) -> Result<Self> {
        Self::build(ProblemKind::SubsetSum, alpha, None, c.clone(), Some(c), None, None, None, None)
    }

    /// Knapsack: `ω(X) ≥ t` and `ν(X) ≤ b`; the profit range is `[t, nN]`.
    pub fn knapsack(omega: WeightFn, nu: WeightFn, t: Natural, b: Natural) -> Result<Self> {
        Self::build(ProblemKind::Knapsack, omega, Some(nu), t, None, Some(b), None, None, None)
    }

    /// Graph problem with weights on vertices (VC, DS) or edges (TSP).
    pub fn graph_problem(kind: ProblemKind, graph: Graph, weights: WeightFn, l: Natural, u: Natural) -> Result<Self> {
        if !kind.has_graph() {
            return Err(Error::InvalidField {
                field: "kind".into(),
                reason: format!("{kind:?} has no graph"),
            });
        }
        Self::build(kind, weights, None, l, Some(u), None, None, Some(graph), None)
    }

    /// Declares the weight bound `N` (every weight must be `≤ N`).
    ///
    /// A Knapsack instance whose `u` was the derived default `n·N` gets `u`
    /// re-derived from the new bound.
    pub fn with_bound(self, bound: Natural) -> Result<Self> {
        let derived_u = self.kind == ProblemKind::Knapsack && self.u == Natural::from(self.n()) * self.bound();
        let u = if derived_u { None } else { Some(self.u) };
        Self::build(
            self.kind,
            self.omega,
            self.nu,
            self.l,
            u,
            self.b,
            Some(bound),
            self.graph,
            self.labels,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        kind: ProblemKind,
        omega: WeightFn,
        nu: Option<WeightFn>,
        l: Natural,
        u: Option<Natural>,
        b: Option<Natural>,
        bound: Option<Natural>,
        graph: Option<Graph>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = omega.len();
        if let Some(nu) = &nu {
            if nu.len() != n {
                return Err(Error::LengthMismatch {
                    field: "values".into(),
                    expected: n,
                    found: nu.len(),
                });
            }
        }
        if let Some(bound) = &bound {
            check_bound("weights", &omega, bound)?;
        }
        if let Some(g) = &graph {
            let expected = match kind {
                ProblemKind::Tsp => g.edges().len(),
                _ => g.vertex_count(),
            };
            if expected != n {
                return Err(Error::LengthMismatch {
                    field: "weights".into(),
                    expected,
                    found: n,
                });
            }
        } else if kind.has_graph() {
            return Err(Error::MissingField("edges"));
        }
        if kind == ProblemKind::Knapsack && (nu.is_none() || b.is_none()) {
            return Err(Error::MissingField(if nu.is_none() { "values" } else { "b" }));
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::LengthMismatch {
                    field: "labels".into(),
                    expected: n,
                    found: labels.len(),
                });
            }
            let unique: HashSet<&String> = labels.iter().collect();
            if unique.len() != n {
                return Err(Error::InvalidField {
                    field: "labels".into(),
                    reason: "labels must be unique".into(),
                });
            }
        }
        let big_n = bound.clone().unwrap_or_else(|| omega.max());
        let u = u.unwrap_or_else(|| Natural::from(n) * &big_n);
        if l > u {
            return Err(Error::InvertedRange { l, u });
        }
        Ok(RangedInstance {
            kind,
            omega,
            nu,
            l,
            u,
            b,
            bound,
            graph,
            labels,
        })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &WeightFn {
        &self.omega
    }

    pub fn nu(&self) -> Option<&WeightFn> {
        self.nu.as_ref()
    }

    pub fn l(&self) -> &Natural {
        &self.l
    }

    pub fn u(&self) -> &Natural {
        &self.u
    }

    pub fn b(&self) -> Option<&Natural> {
        self.b.as_ref()
    }

    pub fn declared_bound(&self) -> Option<&Natural> {
        self.bound.as_ref()
    }

    /// The declared `N`, or the largest weight of `ω` when none was declared.
    pub fn bound(&self) -> Natural {
        self.bound.clone().unwrap_or_else(|| self.omega.max())
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The same instance with the range replaced by `[l, u]`.
    pub fn with_range(&self, l: Natural, u: Natural) -> Result<Self> {
        if l > u {
            return Err(Error::InvertedRange { l, u });
        }
        Ok(RangedInstance { l, u, ..self.clone() })
    }

    /// `(ν, b)` of a Knapsack instance.
    pub fn budget(&self) -> Result<(&WeightFn, &Natural)> {
        let nu = self.nu.as_ref().ok_or(Error::MissingField("values"))?;
        let b = self.b.as_ref().ok_or(Error::MissingField("b"))?;
        Ok((nu, b))
    }

    /// Views an instance with `l = u = c` as Subset Sum.
    pub fn to_subset_sum(&self) -> Result<SubsetSumInstance> {
        if self.l != self.u {
            return Err(Error::NotExact {
                l: self.l.clone(),
                u: self.u.clone(),
            });
        }
        Ok(SubsetSumInstance::new(self.omega.clone(), self.l.clone()))
    }
}

fn check_bound(field: &str, w: &WeightFn, bound: &Natural) -> Result<()> {
    match w.iter().position(|x| x > bound) {
        Some(i) => Err(Error::BoundViolation {
            field: format!("{field}[{i}]"),
            bound: bound.clone(),
        }),
        None => Ok(()),
    }
}
