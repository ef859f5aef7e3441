//! JSON documents exchanged between subcommands. Naturals travel as decimal strings.

use exactify_core::compress::CompressedOutput;
use exactify_core::kernelize::{KernelHeader, KernelItem};
use exactify_core::model::{parse_natural, validate_instance};
use exactify_core::shrink::{ShrinkCase, ShrinkOutput};
use exactify_core::{InstanceDoc, Natural, Subset, SubsetSumInstance, WeightFn};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn dec(w: &WeightFn) -> Vec<String> {
    w.iter().map(Natural::to_string).collect()
}

pub fn parse_weights(field: &str, values: &[String]) -> exactify_core::Result<WeightFn> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_natural(&format!("{field}[{i}]"), s))
        .collect::<exactify_core::Result<Vec<_>>>()
        .map(WeightFn::new)
}

/// `{ "weights": [...], "target": "..." }`. Extra keys (as on kernel items)
/// are ignored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairDoc {
    pub weights: Vec<String>,
    pub target: String,
}

impl PairDoc {
    pub fn parse(&self) -> exactify_core::Result<SubsetSumInstance> {
        Ok(SubsetSumInstance::new(
            parse_weights("weights", &self.weights)?,
            parse_natural("target", &self.target)?,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelDoc {
    pub weights: Vec<String>,
    pub targets: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceDoc {
    pub level: usize,
    pub l: String,
    pub u: String,
    pub case: ShrinkCase,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShrinkDoc {
    pub pairs: Vec<PairDoc>,
    pub levels: Vec<LevelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceDoc>>,
}

impl ShrinkDoc {
    pub fn new(out: &ShrinkOutput, trace: bool) -> Self {
        ShrinkDoc {
            pairs: out
                .pairs()
                .map(|p| PairDoc {
                    weights: dec(&p.weights),
                    target: p.target.to_string(),
                })
                .collect(),
            levels: out
                .levels
                .iter()
                .map(|lv| LevelDoc {
                    weights: dec(&lv.weights),
                    targets: lv.targets.iter().map(Natural::to_string).collect(),
                })
                .collect(),
            trace: trace.then(|| {
                out.trace
                    .iter()
                    .map(|s| TraceDoc {
                        level: s.level,
                        l: s.l.to_string(),
                        u: s.u.to_string(),
                        case: s.case,
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompressedDoc {
    pub omega_prime: Vec<String>,
    pub targets: Vec<String>,
    pub prime: String,
    pub prime_bound: String,
    pub epsilon: f64,
    pub seed: Option<u64>,
}

impl From<&CompressedOutput> for CompressedDoc {
    fn from(c: &CompressedOutput) -> Self {
        CompressedDoc {
            omega_prime: dec(&c.omega_prime),
            targets: c.targets.iter().map(Natural::to_string).collect(),
            prime: c.prime.to_string(),
            prime_bound: c.prime_bound.to_string(),
            epsilon: c.epsilon.value(),
            seed: c.seed,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelItemDoc {
    pub pair: usize,
    pub slot: usize,
    pub weights: Vec<String>,
    pub target: String,
    pub prime: String,
    pub seed: u64,
}

impl From<&KernelItem> for KernelItemDoc {
    fn from(it: &KernelItem) -> Self {
        KernelItemDoc {
            pair: it.pair,
            slot: it.slot,
            weights: dec(&it.weights),
            target: it.target.to_string(),
            prime: it.prime.to_string(),
            seed: it.seed,
        }
    }
}

/// Reads Subset Sum instances from either a shrink output document (one
/// instance per pair), a kernel stream (header skipped, one instance per
/// item) or JSON lines of instance documents with `l = u`.
pub fn read_subset_sums(text: &str) -> CliResult<Vec<SubsetSumInstance>> {
    if let Ok(doc) = serde_json::from_str::<ShrinkDoc>(text) {
        let mut out = Vec::with_capacity(doc.pairs.len());
        for (i, p) in doc.pairs.iter().enumerate() {
            out.push(p.parse().map_err(|source| CliError::Line { line: i + 1, source })?);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let wrap = |source| CliError::Line { line: i + 1, source };
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| wrap(e.into()))?;
        if value.get("kind").is_some() {
            let doc: InstanceDoc = serde_json::from_value(value).map_err(|e| wrap(e.into()))?;
            let inst = validate_instance(&doc).map_err(wrap)?;
            out.push(inst.to_subset_sum().map_err(wrap)?);
        } else if value.get("ell").is_none() {
            let pair: PairDoc = serde_json::from_value(value).map_err(|e| wrap(e.into()))?;
            out.push(pair.parse().map_err(wrap)?);
        }
    }
    Ok(out)
}

/// A parsed kernel stream: header plus items.
pub struct KernelStream {
    pub header: KernelHeader,
    pub items: Vec<KernelItemDoc>,
}

pub fn read_kernel(text: &str) -> CliResult<KernelStream> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty kernel stream".into()))?;
    let header: KernelHeader =
        serde_json::from_str(first).map_err(|e| CliError::Line { line: 1, source: e.into() })?;
    let items = lines
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CliError::Line { line: i + 1, source: e.into() }))
        .collect::<CliResult<Vec<KernelItemDoc>>>()?;
    if items.len() != header.items {
        return Err(CliError::Input(format!(
            "kernel header announces {} items, found {}",
            header.items,
            items.len()
        )));
    }
    Ok(KernelStream { header, items })
}

pub fn subset_json(x: Subset) -> Vec<usize> {
    x.elements().collect()
}
