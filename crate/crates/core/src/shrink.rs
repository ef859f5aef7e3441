//! Interval shrinking: cover `[l, u]` with exact targets under halved weights.
//!
//! For every `X ⊆ U`, `ω(X) ∈ [l, u]` holds iff some emitted pair
//! `(ω_i, t_i)` has `ω_i(X) = t_i`. Each step of the loop is one of:
//!
//! 1. `u − l ≤ 5n`: emit `l, l+1, …, u` under the current weights and stop;
//! 2. `l` odd: emit `l`, continue on `[l+1, u]`;
//! 3. `u` odd: emit `u`, continue on `[l, u−1]`;
//! 4. both even: emit `l, …, l+3n` and `u−2n, …, u`, then continue with
//!    `ω'(e) = ⌊ω(e)/2⌋` on `[(l+2n)/2, (u−2n)/2]`.
//!
//! Case 4 is sound because `(ω(X) − n)/2 ≤ ω'(X) ≤ ω(X)/2`.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::One;

use crate::model::{ceil_lg, ExactPair, Natural, WeightFn};

/// `ω'(e) = ⌊ω(e)/2⌋` for every element.
pub fn halve_weights(w: &WeightFn) -> WeightFn {
    w.iter().map(|x| x >> 1u32).collect()
}

/// Which branch a step of the shrink loop took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShrinkCase {
    Base,
    LOdd,
    UOdd,
    Halve,
}

/// One step of the loop: the interval it was entered with and the branch taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Number of halvings applied to the weights so far.
    pub level: usize,
    pub l: Natural,
    pub u: Natural,
    pub case: ShrinkCase,
}

/// All targets emitted under one weight function (`ω` halved `level` times).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkLevel {
    pub weights: Arc<WeightFn>,
    pub targets: Vec<Natural>,
}

/// Result of [`shrink`]. Pairs are grouped by weight function so the
/// `K` pairs share only `depth + 1` weight vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ShrinkOutput {
    pub levels: Vec<ShrinkLevel>,
    pub trace: Vec<TraceStep>,
}

impl ShrinkOutput {
    /// `K`, the number of emitted pairs.
    pub fn len(&self) -> usize {
        self.levels.iter().map(|lv| lv.targets.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The pairs `(ω_i, t_i)` in emission order.
    pub fn pairs(&self) -> impl Iterator<Item = ExactPair> + '_ {
        self.levels.iter().flat_map(|lv| {
            lv.targets.iter().map(move |t| ExactPair {
                weights: Arc::clone(&lv.weights),
                target: t.clone(),
            })
        })
    }

    /// Output for the degenerate case where the targets are emitted directly.
    fn direct(w: &WeightFn, l: &Natural, u: &Natural) -> Self {
        let mut targets = Vec::new();
        let mut t = l.clone();
        while &t <= u {
            targets.push(t.clone());
            t += 1u32;
        }
        ShrinkOutput {
            levels: vec![ShrinkLevel {
                weights: Arc::new(w.clone()),
                targets,
            }],
            trace: vec![TraceStep {
                level: 0,
                l: l.clone(),
                u: u.clone(),
                case: ShrinkCase::Base,
            }],
        }
    }
}

/// Transforms the ranged question `ω(X) ∈ [l, u]` into exact questions.
///
/// An empty interval (`l > u`) yields no pairs, which keeps the iff-property.
pub fn shrink(w: &WeightFn, l: &Natural, u: &Natural) -> ShrinkOutput {
    if l > u {
        return ShrinkOutput::default();
    }
    let n = Natural::from(w.len());
    let base_width = &n * 5u32;
    let two_n = &n * 2u32;
    let three_n = &n * 3u32;

    let mut out = ShrinkOutput::default();
    let mut weights = Arc::new(w.clone());
    let mut targets = Vec::new();
    let (mut l, mut u) = (l.clone(), u.clone());
    let mut level = 0;

    loop {
        let step = |case| TraceStep {
            level,
            l: l.clone(),
            u: u.clone(),
            case,
        };
        if &u - &l <= base_width {
            out.trace.push(step(ShrinkCase::Base));
            push_run(&mut targets, &l, &u);
            break;
        } else if l.is_odd() {
            out.trace.push(step(ShrinkCase::LOdd));
            targets.push(l.clone());
            l += 1u32;
        } else if u.is_odd() {
            out.trace.push(step(ShrinkCase::UOdd));
            targets.push(u.clone());
            u -= 1u32;
        } else {
            out.trace.push(step(ShrinkCase::Halve));
            push_run(&mut targets, &l, &(&l + &three_n));
            push_run(&mut targets, &(&u - &two_n), &u);
            let halved = Arc::new(halve_weights(&weights));
            out.levels.push(ShrinkLevel {
                weights: std::mem::replace(&mut weights, halved),
                targets: std::mem::take(&mut targets),
            });
            l = (&l + &two_n) >> 1u32;
            u = (&u - &two_n) >> 1u32;
            level += 1;
        }
    }
    out.levels.push(ShrinkLevel { weights, targets });
    out
}

/// Like [`shrink`], but widths `u − l ≤ 1` bypass the loop and emit `l` (and `u`) directly.
pub fn exact_cover(w: &WeightFn, l: &Natural, u: &Natural) -> ShrinkOutput {
    if l > u {
        ShrinkOutput::default()
    } else if u - l <= Natural::one() {
        ShrinkOutput::direct(w, l, u)
    } else {
        shrink(w, l, u)
    }
}

fn push_run(targets: &mut Vec<Natural>, from: &Natural, to: &Natural) {
    let mut t = from.clone();
    while &t <= to {
        targets.push(t.clone());
        t += 1u32;
    }
}

/// `(5n+2)·⌈lg(u−l)⌉`, the commonly quoted bound on `K` for `u − l > 1`.
///
/// The loop can exceed it: the odd-endpoint cases add up to two pairs per
/// halving level on top of the `5n+2` pairs of case 4. Small universes
/// (`n ≤ 4`) with wide intervals overshoot; see [`pair_bound`].
pub fn nominal_pair_bound(n: usize, width: &Natural) -> Natural {
    Natural::from(5 * n + 2) * ceil_lg(width)
}

/// `(5n+4)·⌈lg(u−l)⌉`, a bound on `K` that holds for every `u − l > 1`.
pub fn pair_bound(n: usize, width: &Natural) -> Natural {
    Natural::from(5 * n + 4) * ceil_lg(width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Subset;
    use proptest::prelude::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    fn targets_of(out: &ShrinkOutput) -> Vec<(usize, u64)> {
        out.levels
            .iter()
            .enumerate()
            .flat_map(|(i, lv)| lv.targets.iter().map(move |t| (i, u64::try_from(t).unwrap())))
            .collect()
    }

    /// Subsets hit by some pair, by plain enumeration of all `2^n` subsets.
    fn hit_set(w: &[u64], out: &ShrinkOutput) -> Vec<u64> {
        let n = w.len();
        (0u64..1 << n)
            .filter(|&m| out.pairs().any(|p| p.is_hit_by(Subset(m))))
            .collect()
    }

    fn in_range_set(w: &[u64], l: u64, u: u64) -> Vec<u64> {
        let n = w.len();
        (0u64..1 << n)
            .filter(|&m| {
                let s: u64 = (0..n).filter(|e| m >> e & 1 == 1).map(|e| w[e]).sum();
                l <= s && s <= u
            })
            .collect()
    }

    #[test]
    fn halve_examples() {
        assert_eq!(halve_weights(&WeightFn::from_u64s(&[5, 9, 14])), WeightFn::from_u64s(&[2, 4, 7]));
        assert_eq!(halve_weights(&WeightFn::from_u64s(&[0, 1])), WeightFn::from_u64s(&[0, 0]));
        let big = WeightFn::new(vec![nat(1) << 100usize]);
        assert_eq!(halve_weights(&big), WeightFn::new(vec![nat(1) << 99usize]));
    }

    #[test]
    fn base_case_emits_whole_interval() {
        let w = WeightFn::from_u64s(&[1, 2]);
        let out = shrink(&w, &nat(3), &nat(7));
        assert_eq!(out.len(), 5);
        assert_eq!(targets_of(&out), vec![(0, 3), (0, 4), (0, 5), (0, 6), (0, 7)]);
        assert_eq!(out.trace.len(), 1);
        assert_eq!(out.trace[0].case, ShrinkCase::Base);
    }

    #[test]
    fn one_halving_level() {
        let raw = [5, 9, 14];
        let w = WeightFn::from_u64s(&raw);
        let out = shrink(&w, &nat(2), &nat(20));
        let mut expected: Vec<(usize, u64)> = (2..=11).map(|t| (0, t)).collect();
        expected.extend((14..=20).map(|t| (0, t)));
        expected.extend((4..=7).map(|t| (1, t)));
        assert_eq!(targets_of(&out), expected);
        assert_eq!(out.len(), 21);
        assert_eq!(*out.levels[1].weights, WeightFn::from_u64s(&[2, 4, 7]));
        assert!(nat(21) <= nominal_pair_bound(3, &nat(18)));

        // Sums of (5,9,14) are 0,5,9,14,14,19,23,28; those in [2,20] are hit, nothing else is.
        let hits = hit_set(&raw, &out);
        assert_eq!(hits, in_range_set(&raw, 2, 20));
        assert_eq!(hits, vec![0b001, 0b010, 0b011, 0b100, 0b101]);
    }

    #[test]
    fn odd_lower_endpoint_is_emitted_first() {
        let w = WeightFn::from_u64s(&[4]);
        let out = shrink(&w, &nat(3), &nat(100));
        assert_eq!(out.pairs().next().unwrap().target, nat(3));
        assert_eq!(out.trace[0].case, ShrinkCase::LOdd);
        assert_eq!((out.trace[1].l.clone(), out.trace[1].u.clone()), (nat(4), nat(100)));
    }

    #[test]
    fn degenerate_widths() {
        let w = WeightFn::from_u64s(&[3, 5]);
        assert_eq!(targets_of(&shrink(&w, &nat(4), &nat(4))), vec![(0, 4)]);
        assert_eq!(targets_of(&exact_cover(&w, &nat(4), &nat(5))), vec![(0, 4), (0, 5)]);
        assert!(shrink(&w, &nat(5), &nat(4)).is_empty());
        let empty = WeightFn::default();
        assert_eq!(targets_of(&exact_cover(&empty, &nat(0), &nat(1))), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn empty_universe_wide_interval() {
        // n = 0: only X = ∅ with ω(∅) = 0 exists.
        let w = WeightFn::default();
        for (l, u) in [(0, 9), (1, 9), (0, 0), (3, 1000)] {
            let out = shrink(&w, &nat(l), &nat(u));
            let hit = out.pairs().any(|p| p.is_hit_by(Subset::EMPTY));
            assert_eq!(hit, l == 0, "[{l},{u}]");
        }
    }

    #[test]
    fn not_counting_preserving() {
        // ω = (12) on [10, 100]: 12 ∈ [l, l+3n] at level 0, and ω'({0}) = 6 is
        // the lower endpoint of the next level, so {0} matches two pairs.
        let w = WeightFn::from_u64s(&[12]);
        let out = shrink(&w, &nat(10), &nat(100));
        let hits = out.pairs().filter(|p| p.is_hit_by(Subset(1))).count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn nominal_bound_fails_for_small_universes() {
        // l = 2n+1 and u = 2^m − (2n+1) keep both endpoints odd on every
        // level, so each level emits 5n+4 pairs.
        let w = WeightFn::from_u64s(&[3]);
        let l = nat(3);
        let mut overshoots = 0;
        for m in 8..60 {
            let u = (nat(1) << m) - 3u32;
            let out = shrink(&w, &l, &u);
            let width = &u - &l;
            assert!(nat(out.len() as u64) <= pair_bound(1, &width), "m = {m}");
            if nat(out.len() as u64) > nominal_pair_bound(1, &width) {
                overshoots += 1;
            }
        }
        assert!(overshoots > 0, "expected an overshoot of (5n+2)·⌈lg(u−l)⌉");
    }

    #[test]
    fn deterministic() {
        let w = WeightFn::from_u64s(&[123, 456, 789]);
        assert_eq!(shrink(&w, &nat(17), &nat(1_000_000)), shrink(&w, &nat(17), &nat(1_000_000)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn iff_property_and_bounds(
            raw in prop::collection::vec(0u64..1 << 12, 0..=7),
            a in 0u64..1 << 15,
            b in 0u64..1 << 15,
        ) {
            let (l, u) = (a.min(b), a.max(b));
            let w = WeightFn::from_u64s(&raw);
            let out = shrink(&w, &nat(l), &nat(u));
            prop_assert_eq!(hit_set(&raw, &out), in_range_set(&raw, l, u));
            if u - l > 1 && !raw.is_empty() {
                prop_assert!(nat(out.len() as u64) <= pair_bound(raw.len(), &nat(u - l)));
            }
            let max = w.max();
            for lv in &out.levels {
                prop_assert!(lv.weights.max() <= max);
            }
        }

        #[test]
        fn trace_structure(
            raw in prop::collection::vec(0u64..1 << 40, 1..=12),
            a in any::<u64>(),
            b in any::<u64>(),
        ) {
            let w = WeightFn::from_u64s(&raw);
            let out = shrink(&w, &nat(a.min(b)), &nat(a.max(b)));
            // Never three odd-endpoint steps in a row.
            let mut run = 0;
            for step in &out.trace {
                if matches!(step.case, ShrinkCase::LOdd | ShrinkCase::UOdd) { run += 1 } else { run = 0 }
                prop_assert!(run <= 2);
            }
            // Max weight at least halves per level.
            for pair in out.levels.windows(2) {
                prop_assert!(pair[1].weights.max() <= pair[0].weights.max() >> 1u32);
            }
            prop_assert_eq!(out.trace.last().map(|s| s.case), Some(ShrinkCase::Base));
        }
    }
}
