//! Knapsack → Subset Sum by shrinking both weight dimensions and packing the
//! two exact constraints into one integer.
//!
//! With radix `R = (n+1)·N`, a quadruple `(ω_i, ν_i, b_i, t_i)` becomes
//! `α(e) = ν_i(e)·R + ω_i(e)` and `c = b_i·R + t_i`. Since `ω_i(X) ≤ nN < R`,
//! the low digit never carries, so `α(X) = c ⇔ ν_i(X) = b_i ∧ ω_i(X) = t_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{Natural, RangedInstance, SubsetSumInstance, WeightFn};
use crate::shrink::{exact_cover, ShrinkOutput};

/// One element of `Ω_ω × Ω_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    pub omega: Arc<WeightFn>,
    pub nu: Arc<WeightFn>,
    pub b: Natural,
    pub t: Natural,
}

/// `α(e) = ν(e)·R + ω(e)` with `R = (n+1)·N`; checks `ω ≤ N` elementwise.
pub fn concat_weights(omega: &WeightFn, nu: &WeightFn, bound: &Natural) -> Result<WeightFn> {
    let n = omega.len();
    if nu.len() != n {
        return Err(Error::LengthMismatch {
            field: "values".into(),
            expected: n,
            found: nu.len(),
        });
    }
    if let Some(i) = omega.iter().position(|x| x > bound) {
        return Err(Error::BoundViolation {
            field: format!("omega[{i}]"),
            bound: bound.clone(),
        });
    }
    let radix = Natural::from(n + 1) * bound;
    Ok(omega.iter().zip(nu.iter()).map(|(w, v)| v * &radix + w).collect())
}

/// Packs a quadruple into one Subset Sum instance.
///
/// Fails if some `ω_i(e) > N` or `t_i > nN`; either means the caller's `N`
/// is stale and the two digits could interact.
pub fn concat_exact_pair(q: &Quadruple, bound: &Natural, n: usize) -> Result<SubsetSumInstance> {
    if q.omega.len() != n {
        return Err(Error::LengthMismatch {
            field: "omega".into(),
            expected: n,
            found: q.omega.len(),
        });
    }
    let alpha = concat_weights(&q.omega, &q.nu, bound)?;
    if q.t > Natural::from(n) * bound {
        return Err(Error::BoundViolation {
            field: "t".into(),
            bound: bound.clone(),
        });
    }
    let c = &q.b * (Natural::from(n + 1) * bound) + &q.t;
    Ok(SubsetSumInstance::new(alpha, c))
}

/// The reduction of one Knapsack instance: `Ω_ω = shrink(ω, t, nN)` and
/// `Ω_ν = shrink(ν, 0, b)`, with the cross product streamed on demand.
#[derive(Clone, Debug)]
pub struct KnapsackReduction {
    n: usize,
    bound: Natural,
    profit: ShrinkOutput,
    budget: ShrinkOutput,
}

impl KnapsackReduction {
    pub fn new(inst: &RangedInstance) -> Result<Self> {
        let (nu, b) = inst.budget()?;
        let budget = exact_cover(nu, &Natural::default(), b);
        Ok(Self::with_budget(inst, inst.l(), budget))
    }

    fn with_budget(inst: &RangedInstance, t: &Natural, budget: ShrinkOutput) -> Self {
        let n = inst.n();
        // N ≥ 1 keeps the radix (n+1)·N positive when every weight is zero.
        let bound = inst.bound().max(Natural::from(1u32));
        let top = inst.u().min(&(Natural::from(n) * &bound)).clone();
        let profit = exact_cover(inst.omega(), t, &top);
        KnapsackReduction {
            n,
            bound,
            profit,
            budget,
        }
    }

    /// The radix bound `N` used for concatenation.
    pub fn bound(&self) -> &Natural {
        &self.bound
    }

    pub fn profit_pairs(&self) -> &ShrinkOutput {
        &self.profit
    }

    pub fn budget_pairs(&self) -> &ShrinkOutput {
        &self.budget
    }

    /// Number of Subset Sum instances, `|Ω_ω|·|Ω_ν|`.
    pub fn len(&self) -> usize {
        self.profit.len() * self.budget.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn quadruples(&self) -> impl Iterator<Item = Quadruple> + '_ {
        self.budget.levels.iter().flat_map(move |bl| {
            self.profit.levels.iter().flat_map(move |pl| {
                bl.targets.iter().flat_map(move |b| {
                    pl.targets.iter().map(move |t| Quadruple {
                        omega: Arc::clone(&pl.weights),
                        nu: Arc::clone(&bl.weights),
                        b: b.clone(),
                        t: t.clone(),
                    })
                })
            })
        })
    }

    /// The concatenated instances, lazily. All instances built from the same
    /// pair of levels share one `α` allocation.
    pub fn instances(&self) -> impl Iterator<Item = SubsetSumInstance> + '_ {
        let radix = Natural::from(self.n + 1) * &self.bound;
        self.budget.levels.iter().flat_map(move |bl| {
            let radix = radix.clone();
            self.profit.levels.iter().flat_map(move |pl| {
                let alpha = Arc::new(
                    concat_weights(&pl.weights, &bl.weights, &self.bound).expect("halved weights stay within N"),
                );
                let radix = radix.clone();
                bl.targets.iter().flat_map(move |b| {
                    let high = b * &radix;
                    let alpha = Arc::clone(&alpha);
                    pl.targets
                        .iter()
                        .map(move |t| SubsetSumInstance::shared(Arc::clone(&alpha), &high + t))
                })
            })
        })
    }
}

/// Reduces a Knapsack instance (`ω(X) ≥ t = l`, `ν(X) ≤ b`) to Subset Sum.
///
/// Some output instance is satisfiable iff the Knapsack instance is a Yes-instance.
pub fn knapsack_to_subsetsum(inst: &RangedInstance) -> Result<KnapsackReduction> {
    KnapsackReduction::new(inst)
}

/// `max{ω(X) : ν(X) ≤ b}` by binary search over the threshold `t ∈ [0, nN]`,
/// deciding each probe through the Subset Sum reduction.
///
/// `decide` answers single Subset Sum instances; a probe stops at its first Yes.
pub fn maximize_knapsack<F>(inst: &RangedInstance, mut decide: F) -> Result<Natural>
where
    F: FnMut(&SubsetSumInstance) -> Result<bool>,
{
    let (nu, b) = inst.budget()?;
    let budget = exact_cover(nu, &Natural::default(), b);
    let full = inst.with_range(Natural::default(), Natural::from(inst.n()) * inst.bound())?;

    // Invariant: threshold `lo` is feasible (t = 0 via X = ∅); `hi` bounds the optimum.
    let mut lo = Natural::default();
    let mut hi = full.u().clone();
    while lo < hi {
        let mid: Natural = (&lo + &hi + 1u32) >> 1u32;
        let reduction = KnapsackReduction::with_budget(&full, &mid, budget.clone());
        let mut feasible = false;
        for sub in reduction.instances() {
            if decide(&sub)? {
                feasible = true;
                break;
            }
        }
        if feasible {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    Ok(lo)
}
