//! `solve`: a worker pool over an instance stream with deterministic
//! first-Yes short-circuiting.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use exactify_core::{SolveResult, Solver, SubsetSumInstance};
use serde_json::json;

use crate::docs::subset_json;
use crate::error::{CliError, CliResult, EXIT_GUARD, EXIT_NO, EXIT_OK, EXIT_USAGE};

pub struct Report {
    /// Outcomes for the decided prefix of the stream.
    outcomes: Vec<Option<exactify_core::Result<SolveResult>>>,
    /// Smallest index with a Yes verdict.
    first_yes: Option<usize>,
}

/// Decides `instances` with `jobs` workers. Workers claim indices in
/// increasing order; once index `i` is Yes no index above `i` is claimed, so
/// every index up to the smallest Yes is always decided whatever the
/// scheduling. With `all`, nothing is skipped.
pub fn solve_stream(instances: &[SubsetSumInstance], solver: Solver, jobs: usize, all: bool) -> Report {
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let outcomes: Mutex<Vec<Option<exactify_core::Result<SolveResult>>>> =
        Mutex::new((0..instances.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= instances.len() || (!all && i > best.load(Ordering::SeqCst)) {
                    break;
                }
                let result = solver.solve(&instances[i]);
                if matches!(&result, Ok(r) if r.satisfiable) {
                    best.fetch_min(i, Ordering::SeqCst);
                }
                outcomes.lock().expect("no worker panics")[i] = Some(result);
            });
        }
    });
    let best = best.into_inner();
    let mut outcomes = outcomes.into_inner().expect("no worker panics");
    if !all && best != usize::MAX {
        outcomes.truncate(best + 1);
    }
    Report {
        outcomes,
        first_yes: (best != usize::MAX).then_some(best),
    }
}

impl Report {
    /// One JSON line per decided instance, then a witness line if any Yes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, outcome) in self.outcomes.iter().enumerate() {
            let line = match outcome {
                Some(Ok(r)) if r.satisfiable => json!({
                    "index": i,
                    "verdict": "yes",
                    "witness": subset_json(r.witness.expect("Yes carries a witness")),
                    "nodes_explored": r.stats.nodes_explored,
                    "table_cells": r.stats.table_cells,
                }),
                Some(Ok(r)) => json!({
                    "index": i,
                    "verdict": "no",
                    "nodes_explored": r.stats.nodes_explored,
                    "table_cells": r.stats.table_cells,
                }),
                Some(Err(e)) => json!({ "index": i, "verdict": "error", "error": e.to_string() }),
                None => continue,
            };
            out.push_str(&line.to_string());
            out.push('\n');
        }
        if let Some(i) = self.first_yes {
            if let Some(Some(Ok(r))) = self.outcomes.get(i) {
                let w = subset_json(r.witness.expect("Yes carries a witness"));
                out.push_str(&json!({ "witness": { "index": i, "elements": w } }).to_string());
                out.push('\n');
            }
        }
        out
    }

    /// Per-instance verdicts; fails on the first instance that errored.
    pub fn answers(&self) -> CliResult<Vec<bool>> {
        self.outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| match o {
                Some(Ok(r)) => Ok(r.satisfiable),
                Some(Err(e)) => Err(CliError::Input(format!("instance {i}: {e}"))),
                None => Err(CliError::Input(format!("instance {i} was not decided"))),
            })
            .collect()
    }

    /// 0 on a Yes, 1 when every instance is No, otherwise the first error's code.
    pub fn exit_code(&self) -> CliResult<i32> {
        if self.first_yes.is_some() {
            return Ok(EXIT_OK);
        }
        for (i, o) in self.outcomes.iter().enumerate() {
            if let Some(Err(e)) = o {
                let code = if e.is_guard() { EXIT_GUARD } else { EXIT_USAGE };
                eprintln!("error: instance {i}: {e}");
                return Ok(code);
            }
        }
        Ok(EXIT_NO)
    }
}
