use std::collections::HashMap;
use std::sync::Arc;

use super::sums::reachable_sums;
use super::{guard, narrow, Limits};
use crate::error::Result;
use crate::model::{Natural, SubsetSumInstance, WeightFn};

enum SumSet {
    Narrow(Vec<u128>),
    Wide(Vec<Natural>),
}

/// Subset Sum decision procedure that memoizes the reachable-sum set of each
/// weight function it sees, keyed by `Arc` identity.
///
/// Reductions emit long runs of instances sharing one `Arc<WeightFn>` and
/// differing only in the target; after the first instance of a run each
/// decision is a binary search.
#[derive(Default)]
pub struct SumSetCache {
    limits: Limits,
    /// The stored `Arc`s keep the keyed pointers from being reused while cached.
    sets: Vec<(Arc<WeightFn>, SumSet)>,
    index: HashMap<*const WeightFn, usize>,
    last: Option<usize>,
}

impl SumSetCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_limits(limits: Limits) -> Self {
        SumSetCache {
            limits,
            ..Self::default()
        }
    }

    /// Number of distinct weight functions seen so far.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn clear(&mut self) {
        self.sets.clear();
        self.index.clear();
        self.last = None;
    }

    fn slot(&mut self, alpha: &Arc<WeightFn>) -> Result<usize> {
        if let Some(i) = self.last.filter(|&i| Arc::ptr_eq(&self.sets[i].0, alpha)) {
            return Ok(i);
        }
        let key = Arc::as_ptr(alpha);
        let i = match self.index.get(&key) {
            Some(&i) => i,
            None => {
                guard("memoized universe size", self.limits.memo_max_n as u64, alpha.len() as u64)?;
                let set = match narrow(alpha, &Natural::default()) {
                    Some((w, _)) => SumSet::Narrow(reachable_sums(&w, self.limits.max_distinct)?),
                    None => SumSet::Wide(reachable_sums(alpha.weights(), self.limits.max_distinct)?),
                };
                self.sets.push((Arc::clone(alpha), set));
                self.index.insert(key, self.sets.len() - 1);
                self.sets.len() - 1
            }
        };
        self.last = Some(i);
        Ok(i)
    }

    pub fn decide(&mut self, inst: &SubsetSumInstance) -> Result<bool> {
        let i = self.slot(&inst.alpha)?;
        Ok(match &self.sets[i].1 {
            SumSet::Narrow(sums) => u128::try_from(&inst.target).is_ok_and(|c| sums.binary_search(&c).is_ok()),
            SumSet::Wide(sums) => sums.binary_search(&inst.target).is_ok(),
        })
    }
}
