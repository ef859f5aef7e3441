use super::{guard, try_vec, SolveResult, SolveStats};
use crate::error::Result;
use crate::model::{Subset, SubsetSumInstance};

const UNSET: u32 = u32::MAX;
const ORIGIN: u32 = u32::MAX - 1;

/// Bitset reachability over `0..=c`. `first[s]` records the element whose
/// processing first made `s` reachable; following these links from `c`
/// yields the smallest-mask witness.
pub(super) fn solve(inst: &SubsetSumInstance, max_bits: u64) -> Result<SolveResult> {
    guard("DP target bit length", max_bits, inst.target.bits())?;
    let c = usize::try_from(&inst.target).expect("guarded bit length fits usize");
    let n = inst.n();
    let words = c / 64 + 1;
    let mut reach = try_vec("DP table cells", words, 0u64)?;
    let mut first = try_vec("DP table cells", c + 1, UNSET)?;
    reach[0] = 1;
    first[0] = ORIGIN;

    let mut weights = Vec::with_capacity(n);
    for (e, w) in inst.alpha.iter().enumerate() {
        match usize::try_from(w) {
            Ok(w) if w > 0 && w <= c => weights.push((e, w)),
            _ => {}
        }
    }

    for &(e, w) in &weights {
        let (q, r) = (w / 64, (w % 64) as u32);
        // High to low: reach[i - q], reach[i - q - 1] are still the values from before element e.
        for i in (q..words).rev() {
            let mut shifted = reach[i - q] << r;
            if r > 0 && i > q {
                shifted |= reach[i - q - 1] >> (64 - r);
            }
            let mut fresh = shifted & !reach[i];
            if i == words - 1 {
                let valid = c % 64 + 1;
                if valid < 64 {
                    fresh &= (1u64 << valid) - 1;
                }
            }
            reach[i] |= fresh;
            while fresh != 0 {
                let s = i * 64 + fresh.trailing_zeros() as usize;
                first[s] = e as u32;
                fresh &= fresh - 1;
            }
        }
    }

    let witness = (first[c] != UNSET).then(|| {
        let (mut s, mut mask) = (c, 0u64);
        while first[s] != ORIGIN {
            let e = first[s] as usize;
            mask |= 1 << e;
            s -= usize::try_from(inst.alpha.get(e)).expect("weight ≤ c");
        }
        Subset(mask)
    });
    let stats = SolveStats {
        nodes_explored: weights.len() as u64,
        table_cells: c as u64 + 1,
    };
    Ok(SolveResult::from_witness(witness, stats))
}
