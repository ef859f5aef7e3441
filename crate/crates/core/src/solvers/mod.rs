//! Exact Subset Sum solvers and distinct-sum machinery.
//!
//! Every solver returns the lexicographically smallest witness, i.e. the
//! satisfying [`Subset`] with the smallest bitmask, so results can be compared
//! witness-for-witness across solvers.

mod brute;
mod dp;
mod memo;
mod mitm;
mod sums;

use std::fmt;
use std::hash::Hash;
use std::ops::{AddAssign, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Natural, Subset, SubsetSumInstance, WeightFn};

pub use memo::SumSetCache;
pub use sums::{count_distinct_pair_sums, count_distinct_sums, solve_sparse_pairs};

/// Work counters reported alongside a verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub table_cells: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub satisfiable: bool,
    pub witness: Option<Subset>,
    pub stats: SolveStats,
}

impl SolveResult {
    fn from_witness(witness: Option<Subset>, stats: SolveStats) -> Self {
        SolveResult {
            satisfiable: witness.is_some(),
            witness,
            stats,
        }
    }
}

/// Size and memory guards. Exceeding one is a [`Error::GuardExceeded`], never a crash.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for exhaustive enumeration.
    pub brute_max_n: usize,
    /// Largest bit length of the target for the DP table.
    pub dp_max_target_bits: u64,
    /// Largest `n` for meet-in-the-middle.
    pub mitm_max_n: usize,
    /// Largest reachable-set size for the distinct-sum computations.
    pub max_distinct: usize,
    /// Largest `n` for the memoized sum-set decision procedure.
    pub memo_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_max_n: 30,
            dp_max_target_bits: 32,
            mitm_max_n: 60,
            max_distinct: 1 << 24,
            memo_max_n: 22,
        }
    }
}

impl Limits {
    pub fn solve_brute(&self, inst: &SubsetSumInstance) -> Result<SolveResult> {
        brute::solve(inst, self.brute_max_n)
    }

    pub fn solve_dp(&self, inst: &SubsetSumInstance) -> Result<SolveResult> {
        dp::solve(inst, self.dp_max_target_bits)
    }

    pub fn solve_mitm(&self, inst: &SubsetSumInstance) -> Result<SolveResult> {
        mitm::solve(inst, self.mitm_max_n)
    }
}

/// Exhaustive enumeration of all `2^n` subsets (`n ≤ 30`).
pub fn solve_brute(inst: &SubsetSumInstance) -> Result<SolveResult> {
    Limits::default().solve_brute(inst)
}

/// Reachability table over sums `0..=c` (`bitlen(c) ≤ 32`).
pub fn solve_dp(inst: &SubsetSumInstance) -> Result<SolveResult> {
    Limits::default().solve_dp(inst)
}

/// Two-list meet-in-the-middle search (`n ≤ 60`).
pub fn solve_mitm(inst: &SubsetSumInstance) -> Result<SolveResult> {
    Limits::default().solve_mitm(inst)
}

/// Solver selection as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solver {
    Brute,
    Dp,
    Mitm,
    /// DP when `bitlen(c) ≤ 24`, meet-in-the-middle otherwise.
    Auto,
}

impl Solver {
    pub const AUTO_DP_MAX_BITS: u64 = 24;

    pub fn solve(self, inst: &SubsetSumInstance) -> Result<SolveResult> {
        match self {
            Solver::Brute => solve_brute(inst),
            Solver::Dp => solve_dp(inst),
            Solver::Mitm => solve_mitm(inst),
            Solver::Auto if inst.target.bits() <= Self::AUTO_DP_MAX_BITS => solve_dp(inst),
            Solver::Auto => solve_mitm(inst),
        }
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Solver::Brute),
            "dp" => Ok(Solver::Dp),
            "mitm" => Ok(Solver::Mitm),
            "auto" => Ok(Solver::Auto),
            other => Err(Error::InvalidField {
                field: "solver".into(),
                reason: format!("unknown solver {other:?}"),
            }),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Brute => "brute",
            Solver::Dp => "dp",
            Solver::Mitm => "mitm",
            Solver::Auto => "auto",
        })
    }
}

/// Sum type for the enumeration kernels: `u128` when everything fits, `Natural` otherwise.
pub(crate) trait Acc: Clone + Ord + Default + Hash + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {}

impl Acc for u128 {}
impl Acc for Natural {}

/// Weights and `extra` as `u128`, provided `ω(U) + extra` stays below `2^127`.
pub(crate) fn narrow(w: &WeightFn, extra: &Natural) -> Option<(Vec<u128>, u128)> {
    let total = w.total() + extra;
    if total.bits() >= 127 {
        return None;
    }
    let ws = w.iter().map(|x| u128::try_from(x).expect("checked by total")).collect();
    Some((ws, u128::try_from(extra).expect("checked by total")))
}

fn guard(what: &'static str, limit: u64, actual: u64) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}

/// Allocates a vector of `len` copies of `value`, reporting allocation failure as a guard error.
pub(crate) fn try_vec<T: Clone>(what: &'static str, len: usize, value: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::GuardExceeded {
        what,
        limit: 0,
        actual: len as u64,
    })?;
    v.resize(len, value);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(w: &[u64], c: u64) -> SubsetSumInstance {
        SubsetSumInstance::new(WeightFn::from_u64s(w), Natural::from(c))
    }

    /// Smallest satisfying mask by ascending enumeration; independent of all solvers.
    fn oracle(w: &[u64], c: u64) -> Option<u64> {
        (0u64..1 << w.len()).find(|&m| (0..w.len()).filter(|e| m >> e & 1 == 1).map(|e| w[e]).sum::<u64>() == c)
    }

    fn check_all(w: &[u64], c: u64) {
        let expected = oracle(w, c).map(Subset);
        let i = inst(w, c);
        for solver in [Solver::Brute, Solver::Dp, Solver::Mitm, Solver::Auto] {
            let r = solver.solve(&i).unwrap();
            assert_eq!(r.witness, expected, "{solver} on {w:?}, c = {c}");
            assert_eq!(r.satisfiable, expected.is_some());
            if let Some(x) = r.witness {
                assert!(i.is_witness(x));
            }
        }
    }

    #[test]
    fn brute_examples() {
        let r = solve_brute(&inst(&[3, 5, 8], 8)).unwrap();
        assert_eq!(r.witness, Some(Subset::from_elements([0, 1])));
        assert!(!solve_brute(&inst(&[3, 5, 8], 7)).unwrap().satisfiable);
        let r = solve_brute(&inst(&[], 0)).unwrap();
        assert_eq!(r.witness, Some(Subset::EMPTY));
    }

    #[test]
    fn dp_examples() {
        assert!(solve_dp(&inst(&[3, 5, 8], 8)).unwrap().satisfiable);
        assert!(!solve_dp(&inst(&[2, 4, 6], 5)).unwrap().satisfiable);
        let r = solve_dp(&inst(&[1, 1, 1], 3)).unwrap();
        assert_eq!(r.witness, Some(Subset::from_elements([0, 1, 2])));
        assert_eq!(r.stats.table_cells, 4);
    }

    #[test]
    fn mitm_examples() {
        let r = solve_mitm(&inst(&[3, 5, 8, 13], 21)).unwrap();
        assert!(r.satisfiable);
        assert_eq!(r.witness, oracle(&[3, 5, 8, 13], 21).map(Subset));
        let r = solve_mitm(&inst(&[1, 2, 4, 8], 15)).unwrap();
        assert_eq!(r.witness, Some(Subset::full(4)));
        assert!(!solve_mitm(&inst(&[10, 10], 5)).unwrap().satisfiable);
    }

    #[test]
    fn solvers_agree_on_edge_cases() {
        check_all(&[], 0);
        check_all(&[], 1);
        check_all(&[0, 0, 0], 0);
        check_all(&[0, 5, 0, 5], 5);
        check_all(&[7], 7);
        check_all(&[7], 6);
        check_all(&[1, 2, 3, 4, 5], 15);
        check_all(&[1, 2, 3, 4, 5], 16);
    }

    #[test]
    fn guards_are_typed_errors() {
        let big = inst(&[1; 31], 3);
        assert!(matches!(solve_brute(&big), Err(Error::GuardExceeded { .. })));
        let wide = SubsetSumInstance::new(WeightFn::from_u64s(&[1]), Natural::from(1u64 << 40));
        assert!(matches!(solve_dp(&wide), Err(Error::GuardExceeded { .. })));
        let long = inst(&[1; 61], 3);
        assert!(matches!(solve_mitm(&long), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn huge_weights_take_the_bignum_path() {
        let two = Natural::from(2u32);
        let w: Vec<Natural> = [300u32, 301, 302, 303].iter().map(|&k| num_traits::pow(two.clone(), k as usize)).collect();
        let target = &w[1] + &w[3];
        let i = SubsetSumInstance::new(WeightFn::new(w), target);
        let b = solve_brute(&i).unwrap();
        let m = solve_mitm(&i).unwrap();
        assert_eq!(b.witness, Some(Subset::from_elements([1, 3])));
        assert_eq!(m.witness, b.witness);
        assert!(matches!(solve_dp(&i), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn solver_names_round_trip() {
        for s in [Solver::Brute, Solver::Dp, Solver::Mitm, Solver::Auto] {
            assert_eq!(s.to_string().parse::<Solver>().unwrap(), s);
        }
        assert!("fast".parse::<Solver>().is_err());
    }

    proptest! {
        #[test]
        fn solvers_match_enumeration(w in prop::collection::vec(0u64..64, 0..=10), c in 0u64..300) {
            check_all(&w, c);
        }

        #[test]
        fn planted_targets_are_found(w in prop::collection::vec(0u64..1 << 20, 1..=14), mask in any::<u64>()) {
            let m = mask & ((1u64 << w.len()) - 1);
            let c: u64 = (0..w.len()).filter(|e| m >> e & 1 == 1).map(|e| w[e]).sum();
            check_all(&w, c);
        }
    }
}
