use super::{guard, narrow, try_vec, Acc, SolveResult, SolveStats};
use crate::error::Result;
use crate::model::{Natural, Subset, SubsetSumInstance};

pub(super) fn solve(inst: &SubsetSumInstance, max_n: usize) -> Result<SolveResult> {
    let n = inst.n();
    guard("meet-in-the-middle universe size", max_n as u64, n as u64)?;
    let (witness, stats) = match narrow(&inst.alpha, &inst.target) {
        Some((w, c)) => search(&w, &c)?,
        None => {
            let w: Vec<Natural> = inst.alpha.weights().to_vec();
            search(&w, &inst.target)?
        }
    };
    Ok(SolveResult::from_witness(witness.map(Subset), stats))
}

/// Sums of every subset of `w`, indexed by mask.
fn sums_by_mask<T: Acc>(w: &[T]) -> Result<Vec<T>> {
    let mut sums = try_vec("meet-in-the-middle list", 1usize << w.len(), T::default())?;
    for m in 1..sums.len() {
        let e = m.trailing_zeros() as usize;
        let mut s = sums[m & (m - 1)].clone();
        s += &w[e];
        sums[m] = s;
    }
    Ok(sums)
}

/// The low half (elements `0..⌈n/2⌉`) is sorted by `(sum, mask)`; the high
/// half is scanned in ascending mask order, so the first match is the
/// smallest full mask.
fn search<T: Acc>(w: &[T], c: &T) -> Result<(Option<u64>, SolveStats)> {
    let h = w.len().div_ceil(2);
    let (low, high) = w.split_at(h);

    let mut low_sums: Vec<(T, u64)> = sums_by_mask(low)?
        .into_iter()
        .enumerate()
        .map(|(m, s)| (s, m as u64))
        .collect();
    low_sums.sort_unstable();
    let high_sums = sums_by_mask(high)?;

    let stats = SolveStats {
        nodes_explored: (low_sums.len() + high_sums.len()) as u64,
        table_cells: low_sums.len() as u64,
    };
    for (m, s) in high_sums.iter().enumerate() {
        if s > c {
            continue;
        }
        let mut need = c.clone();
        need -= s;
        let idx = low_sums.partition_point(|(x, _)| *x < need);
        if let Some((x, lm)) = low_sums.get(idx) {
            if *x == need {
                return Ok((Some(lm | (m as u64) << h), stats));
            }
        }
    }
    Ok((None, stats))
}
