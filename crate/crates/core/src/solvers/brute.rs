use super::{guard, narrow, Acc, SolveResult, SolveStats};
use crate::error::Result;
use crate::model::{Natural, Subset, SubsetSumInstance};

pub(super) fn solve(inst: &SubsetSumInstance, max_n: usize) -> Result<SolveResult> {
    let n = inst.n();
    guard("brute-force universe size", max_n as u64, n as u64)?;
    let witness = match narrow(&inst.alpha, &inst.target) {
        Some((w, c)) => gray_scan(&w, &c),
        None => {
            let w: Vec<Natural> = inst.alpha.weights().to_vec();
            gray_scan(&w, &inst.target)
        }
    };
    let stats = SolveStats {
        nodes_explored: 1u64 << n,
        table_cells: 0,
    };
    Ok(SolveResult::from_witness(witness.map(Subset), stats))
}

/// Visits all subsets in Gray-code order (one add or subtract per step) and
/// keeps the smallest mask whose sum equals `c`.
fn gray_scan<T: Acc>(w: &[T], c: &T) -> Option<u64> {
    let mut sum = T::default();
    let mut mask = 0u64;
    let mut best = (sum == *c).then_some(0);
    for i in 1u64..1 << w.len() {
        let e = i.trailing_zeros() as usize;
        mask ^= 1 << e;
        if mask >> e & 1 == 1 {
            sum += &w[e];
        } else {
            sum -= &w[e];
        }
        if sum == *c && best.is_none_or(|b| mask < b) {
            best = Some(mask);
        }
    }
    best
}
