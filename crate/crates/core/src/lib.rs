//! Turning weighted *ranged* subset-selection problems into small families of
//! *exact* problems.
//!
//! A ranged problem asks for a set `X` from a family `F ⊆ 2^U` whose weight
//! `ω(X) = Σ_{e∈X} ω(e)` lies in an interval `[l, u]`. The crate provides:
//!
//! * [`shrink`]: covers `[l, u]` with `O(n·lg(u−l))` exact targets under
//!   progressively halved weight functions,
//! * [`reduce`]: Knapsack → Subset Sum by shrinking both weight dimensions and
//!   packing them into a single mixed-radix integer, plus maximum Knapsack by
//!   binary search,
//! * [`compress`]: randomized weight compression modulo a random prime,
//! * [`kernelize`]: the shrink + compress pipeline producing polynomially many
//!   small-weight exact instances (an OR-kernel with one-sided error),
//! * [`solvers`] and [`families`]: exact Subset Sum solvers, distinct-sum
//!   counting and the brute-force ground truth used throughout the tests.
//!
//! All weights are arbitrary-precision [`Natural`]s; nothing in the data path
//! goes through floating point.

pub mod compress;
pub mod error;
pub mod families;
pub mod gen;
pub mod kernelize;
pub mod model;
pub mod reduce;
pub mod shrink;
pub mod solvers;

pub use compress::{choose_prime_bound, compress_weights, random_prime, CompressedOutput, Epsilon};
pub use error::{Error, Result};
pub use families::{brute_force_ranged, FamilyKind, FamilyOracle};
pub use gen::{gen_instance, GeneratorSpec};
pub use kernelize::{evaluate_kernel_output, kernelize, KernelItem, KernelOutput};
pub use model::{
    ExactPair, Graph, InstanceDoc, Natural, ProblemKind, RangedInstance, Subset, SubsetSumInstance,
    WeightFn,
};
pub use reduce::{knapsack_to_subsetsum, maximize_knapsack, KnapsackReduction, Quadruple};
pub use shrink::{halve_weights, shrink, ShrinkOutput};
pub use solvers::{SolveResult, Solver};
