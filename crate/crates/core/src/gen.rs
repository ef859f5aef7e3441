//! Seeded generator of planted-Yes instances for tests and benchmarks.

use num_bigint::RandBigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Graph, InstanceDoc, Natural, ProblemKind, RangedInstance, Subset, WeightFn};

/// Parameters of [`gen_instance`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Universe size; the vertex count for graph kinds.
    pub n: usize,
    /// Weights are drawn uniformly below `2^weight_bits`.
    pub weight_bits: u64,
    pub kind: ProblemKind,
    /// Probability that an element copies the weight (and value) of an
    /// earlier element instead of drawing a fresh one.
    #[serde(default)]
    pub duplicate_fraction: Option<f64>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: ProblemKind, n: usize, weight_bits: u64, seed: u64) -> Self {
        GeneratorSpec {
            n,
            weight_bits,
            kind,
            duplicate_fraction: None,
            seed,
        }
    }

    pub fn with_duplicates(mut self, fraction: f64) -> Self {
        self.duplicate_fraction = Some(fraction);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.weight_bits == 0 {
            return Err(Error::InvalidSpec("weight_bits must be at least 1".into()));
        }
        if let Some(d) = self.duplicate_fraction {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::InvalidSpec(format!("duplicate_fraction {d} outside [0, 1]")));
            }
        }
        let universe = match self.kind {
            ProblemKind::Tsp => {
                if self.n < 3 {
                    return Err(Error::InvalidSpec("tsp needs at least 3 vertices".into()));
                }
                self.n * (self.n - 1) / 2
            }
            _ => self.n,
        };
        if universe > 64 {
            return Err(Error::InvalidSpec(format!("universe of {universe} elements exceeds 64")));
        }
        Ok(())
    }
}

struct Draw {
    rng: ChaCha8Rng,
    bits: u64,
    dup: f64,
}

impl Draw {
    /// `count` weights, each possibly a copy of an earlier one. With `values`
    /// the copies are taken jointly so duplicated elements are identical.
    fn weights(&mut self, count: usize, values: bool) -> (WeightFn, WeightFn) {
        let mut w: Vec<Natural> = Vec::with_capacity(count);
        let mut v: Vec<Natural> = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 && self.dup > 0.0 && self.rng.gen_bool(self.dup) {
                let j = self.rng.gen_range(0..i);
                w.push(w[j].clone());
                v.push(v[j].clone());
            } else {
                w.push(self.rng.gen_biguint(self.bits));
                v.push(if values { self.rng.gen_biguint(self.bits) } else { Natural::default() });
            }
        }
        (WeightFn::new(w), WeightFn::new(v))
    }

    fn subset(&mut self, n: usize) -> Subset {
        let mask: u64 = self.rng.gen();
        Subset(mask & Subset::full(n).0)
    }
}

/// Generates a planted-Yes instance document; deterministic given the spec.
///
/// * `subsetsum`: target is the weight of a random subset.
/// * `ranged`: a random interval around the weight of a random subset.
/// * `knapsack`: `t` and `b` are the profit and cost of a random subset.
/// * `vertexcover`, `dominatingset`: a random graph for which a random vertex
///   set is a cover (dominating set); the range is `[0, ω(X₀)]`.
/// * `tsp`: complete graph, range `[0, ω(T)]` for a random tour `T`.
pub fn gen_instance(spec: &GeneratorSpec) -> Result<InstanceDoc> {
    spec.validate()?;
    let mut d = Draw {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        bits: spec.weight_bits,
        dup: spec.duplicate_fraction.unwrap_or(0.0),
    };
    let n = spec.n;
    let inst = match spec.kind {
        ProblemKind::SubsetSum => {
            let (w, _) = d.weights(n, false);
            let x = d.subset(n);
            let c = w.eval(x);
            RangedInstance::subset_sum(w, c)?
        }
        ProblemKind::Ranged => {
            let (w, _) = d.weights(n, false);
            let x = d.subset(n);
            let s = w.eval(x);
            let below = d.rng.gen_biguint(spec.weight_bits).min(s.clone());
            let above = d.rng.gen_biguint(spec.weight_bits);
            RangedInstance::ranged(w, &s - below, s + above)?
        }
        ProblemKind::Knapsack => {
            let (w, v) = d.weights(n, true);
            let x = d.subset(n);
            let (t, b) = (w.eval(x), v.eval(x));
            RangedInstance::knapsack(w, v, t, b)?
        }
        ProblemKind::VertexCover => {
            let (w, _) = d.weights(n, false);
            let cover = d.subset(n);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if (cover.contains(a) || cover.contains(b)) && d.rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            let t = w.eval(cover);
            RangedInstance::graph_problem(ProblemKind::VertexCover, Graph::new(n, edges)?, w, Natural::default(), t)?
        }
        ProblemKind::DominatingSet => {
            let (w, _) = d.weights(n, false);
            let mut dom = d.subset(n);
            if dom.is_empty() && n > 0 {
                dom = Subset::from_elements([0]);
            }
            let members: Vec<usize> = dom.elements().collect();
            let mut edges = std::collections::BTreeSet::new();
            for a in 0..n {
                for b in a + 1..n {
                    if d.rng.gen_bool(0.3) {
                        edges.insert((a, b));
                    }
                }
            }
            for v in 0..n {
                if !dom.contains(v) && !members.iter().any(|&m| edges.contains(&(m.min(v), m.max(v)))) {
                    let m = *members.choose(&mut d.rng).expect("nonempty");
                    edges.insert((m.min(v), m.max(v)));
                }
            }
            let t = w.eval(dom);
            RangedInstance::graph_problem(ProblemKind::DominatingSet, Graph::new(n, edges)?, w, Natural::default(), t)?
        }
        ProblemKind::Tsp => {
            let graph = Graph::complete(n);
            let (w, _) = d.weights(graph.edges().len(), false);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut d.rng);
            let tour = Subset::from_elements((0..n).map(|i| {
                let (a, b) = (order[i], order[(i + 1) % n]);
                let key = (a.min(b), a.max(b));
                graph.edges().iter().position(|&e| e == key).expect("complete graph")
            }));
            let t = w.eval(tour);
            RangedInstance::graph_problem(ProblemKind::Tsp, graph, w, Natural::default(), t)?
        }
    };
    Ok(InstanceDoc::from(&inst))
}
