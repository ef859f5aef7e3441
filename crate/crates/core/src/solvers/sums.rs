//! Distinct subset sums, computed by set doubling over sorted vectors:
//! `reachable ← reachable ∪ (reachable + w(e))`.

use super::{narrow, Acc, Limits, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::model::{Natural, Subset, WeightFn};

fn check_size(len: usize, limit: usize) -> Result<()> {
    if len > limit {
        return Err(Error::GuardExceeded {
            what: "reachable-set size",
            limit: limit as u64,
            actual: len as u64,
        });
    }
    Ok(())
}

/// Merges two sorted runs, keeping the first occurrence of equal keys
/// (`old` wins over `new`).
fn merge<T>(old: Vec<T>, new: Vec<T>, cmp: impl Fn(&T, &T) -> std::cmp::Ordering) -> Vec<T> {
    let mut out = Vec::with_capacity(old.len() + new.len());
    let mut a = old.into_iter().peekable();
    let mut b = new.into_iter().peekable();
    loop {
        let take_a = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => match cmp(x, y) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    b.next();
                    true
                }
            },
        };
        out.push(if take_a { a.next() } else { b.next() }.expect("peeked"));
    }
    out
}

/// Sorted set `{ω(X) : X ⊆ U}`.
pub(crate) fn reachable_sums<T: Acc>(w: &[T], limit: usize) -> Result<Vec<T>> {
    let mut reach = vec![T::default()];
    for x in w {
        let shifted: Vec<T> = reach
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s += x;
                s
            })
            .collect();
        reach = merge(reach, shifted, |x, y| x.cmp(y));
        check_size(reach.len(), limit)?;
    }
    Ok(reach)
}

/// `S = |{ω(X) : X ⊆ U}|`.
pub fn count_distinct_sums(w: &WeightFn) -> Result<u64> {
    count_distinct_sums_with(w, &Limits::default())
}

pub fn count_distinct_sums_with(w: &WeightFn, limits: &Limits) -> Result<u64> {
    let len = match narrow(w, &Natural::default()) {
        Some((ws, _)) => reachable_sums(&ws, limits.max_distinct)?.len(),
        None => reachable_sums(w.weights(), limits.max_distinct)?.len(),
    };
    Ok(len as u64)
}

/// `|{(ω(X), ν(X)) : X ⊆ U}|`.
pub fn count_distinct_pair_sums(w: &WeightFn, v: &WeightFn) -> Result<u64> {
    Ok(PairTable::build(w, v, Limits::default().max_distinct)?.entries.len() as u64)
}

const ORIGIN: u32 = u32::MAX;

/// Reachable `(ω, ν)` pairs, sorted, each with the element that first produced it.
struct PairTable<'a> {
    w: &'a WeightFn,
    v: &'a WeightFn,
    entries: Vec<(Natural, Natural, u32)>,
    generated: u64,
}

impl<'a> PairTable<'a> {
    fn build(w: &'a WeightFn, v: &'a WeightFn, limit: usize) -> Result<Self> {
        if w.len() != v.len() {
            return Err(Error::LengthMismatch {
                field: "values".into(),
                expected: w.len(),
                found: v.len(),
            });
        }
        let mut entries = vec![(Natural::default(), Natural::default(), ORIGIN)];
        let mut generated = 1;
        for (e, (x, y)) in w.iter().zip(v.iter()).enumerate() {
            let shifted: Vec<_> = entries.iter().map(|(a, b, _)| (a + x, b + y, e as u32)).collect();
            generated += shifted.len() as u64;
            entries = merge(entries, shifted, |(a, b, _), (c, d, _)| (a, b).cmp(&(c, d)));
            check_size(entries.len(), limit)?;
        }
        Ok(PairTable { w, v, entries, generated })
    }

    fn find(&self, a: &Natural, b: &Natural) -> Option<&(Natural, Natural, u32)> {
        self.entries
            .binary_search_by(|(x, y, _)| (x, y).cmp(&(a, b)))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Smallest mask reaching `entry`, by following first-producer links.
    fn witness(&self, entry: &(Natural, Natural, u32)) -> Subset {
        let (mut a, mut b, mut e) = entry.clone();
        let mut mask = 0u64;
        while e != ORIGIN {
            let i = e as usize;
            mask |= 1 << i;
            a -= self.w.get(i);
            b -= self.v.get(i);
            e = self.find(&a, &b).expect("predecessor pair is reachable").2;
        }
        Subset(mask)
    }
}

/// Decides `∃X: ω(X) ≥ t ∧ ν(X) ≤ b` over the full reachable pair set.
///
/// Time is `O(n·S·log S)` for `S` distinct pairs; `stats.table_cells = S`.
pub fn solve_sparse_pairs(omega: &WeightFn, nu: &WeightFn, t: &Natural, b: &Natural) -> Result<SolveResult> {
    let table = PairTable::build(omega, nu, Limits::default().max_distinct)?;
    let witness = table
        .entries
        .iter()
        .filter(|(x, y, _)| x >= t && y <= b)
        .map(|entry| table.witness(entry))
        .min();
    let stats = SolveStats {
        nodes_explored: table.generated,
        table_cells: table.entries.len() as u64,
    };
    Ok(SolveResult::from_witness(witness, stats))
}
