//! Randomized Turing kernel: shrink the range, then compress every exact pair.
//!
//! The answers of the emitted small-weight instances are combined by OR.
//! Yes-instances are always preserved; a No-instance produces a hit with
//! probability at most `ε′` (union bound over the `ℓ` compressions, each run
//! at `ε′/ℓ`).
//!
//! Every emitted value is below `M = 2^{n+1}·(n+1)·P` where `P` is the prime
//! bound, and empirically
//! `bitlen(M) ≤ n + 4·(bitlen(n) + bitlen(bitlen N) + bitlen(⌈1/ε′⌉) + bitlen(bitlen(u−l)))`,
//! i.e. the size constant is `c = 4`.

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::compress::{choose_prime_bound, compress_weights, Epsilon};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilyOracle};
use crate::model::{bit_length, Natural, RangedInstance, Subset, WeightFn};
use crate::shrink::shrink;

/// One exact instance `ω′(X) = t′` of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelItem {
    /// Index `i` of the shrink pair this item came from.
    pub pair: usize,
    /// Index `j` of the lifted target `(t_i mod p) + j·p`.
    pub slot: usize,
    pub weights: Arc<WeightFn>,
    pub target: Natural,
    pub prime: Natural,
    /// Seed used for the prime of pair `i`.
    pub seed: u64,
}

impl KernelItem {
    pub fn is_hit_by(&self, x: Subset) -> bool {
        self.weights.eval(x) == self.target
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelOutput {
    pub family: FamilyKind,
    pub n: usize,
    /// Number of shrink pairs `ℓ`.
    pub ell: usize,
    pub eps_prime: Epsilon,
    pub seed: u64,
    /// Largest weight or target actually emitted.
    pub weight_bound: Natural,
    /// `choose_prime_bound(n, N, ε′/ℓ)`.
    pub prime_bound: Natural,
    /// Sorted by `(pair, slot)`.
    pub items: Vec<KernelItem>,
}

impl KernelOutput {
    /// `2^{n+1}·(n+1)·prime_bound`, the guaranteed ceiling on every emitted value.
    pub fn weight_limit(&self) -> Natural {
        (Natural::one() << (self.n + 1)) * Natural::from(self.n + 1) * &self.prime_bound
    }

    /// True if some item is hit by some member of `oracle`; exhaustive over `2^n`.
    pub fn any_hit(&self, oracle: &FamilyOracle) -> bool {
        let members: Vec<Subset> = (0..1u64 << self.n)
            .map(Subset)
            .filter(|&x| oracle.contains(x))
            .collect();
        self.items.iter().any(|it| members.iter().any(|&x| it.is_hit_by(x)))
    }
}

/// Header record of a serialized kernel (the first JSON line).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct KernelHeader {
    pub family: FamilyKind,
    pub n: usize,
    pub ell: usize,
    pub eps_prime: String,
    pub seed: u64,
    pub weight_bound: String,
    pub prime_bound: String,
    pub items: usize,
}

impl From<&KernelOutput> for KernelHeader {
    fn from(k: &KernelOutput) -> Self {
        KernelHeader {
            family: k.family,
            n: k.n,
            ell: k.ell,
            eps_prime: k.eps_prime.to_string(),
            seed: k.seed,
            weight_bound: k.weight_bound.to_string(),
            prime_bound: k.prime_bound.to_string(),
            items: k.items.len(),
        }
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `i`-th compression: `splitmix64(master ⊕ i)`.
pub fn derive_seed(master: u64, i: usize) -> u64 {
    splitmix64(master ^ i as u64)
}

/// Builds the kernel of `inst` for the family `family`.
///
/// The range is `[l, min(u, nN)]`. The pipeline itself accepts any weight
/// length; see [`length_guard`] for the `lg N ≤ 2^n` precondition.
pub fn kernelize(inst: &RangedInstance, family: FamilyKind, eps_prime: Epsilon, seed: u64) -> Result<KernelOutput> {
    let n = inst.n();
    let oracle = FamilyOracle::new(family, n, inst.graph().cloned())?;
    if oracle.universe_size() != n {
        return Err(Error::LengthMismatch {
            field: "weights".into(),
            expected: oracle.universe_size(),
            found: n,
        });
    }
    let bound = inst.bound();
    let top = Natural::from(n) * &bound;
    let u = inst.u().min(&top).clone();
    let pairs = shrink(inst.omega(), inst.l(), &u);
    let ell = pairs.len();
    let eps_i = eps_prime.split(ell);
    let prime_bound = choose_prime_bound(n, &bound, eps_i);

    let mut items = Vec::with_capacity(ell * (n + 1));
    let mut weight_bound = Natural::default();
    for (i, pair) in pairs.pairs().enumerate() {
        let seed_i = derive_seed(seed, i);
        let c = compress_weights(&pair.weights, &pair.target, eps_i, seed_i)?;
        weight_bound = weight_bound.max(c.max_value());
        let weights = Arc::new(c.omega_prime);
        for (j, target) in c.targets.into_iter().enumerate() {
            items.push(KernelItem {
                pair: i,
                slot: j,
                weights: Arc::clone(&weights),
                target,
                prime: c.prime.clone(),
                seed: seed_i,
            });
        }
    }
    Ok(KernelOutput {
        family,
        n,
        ell,
        eps_prime,
        seed,
        weight_bound,
        prime_bound,
        items,
    })
}

/// Rejects instances with `bitlen(N) > 2^n` with [`Error::WeightsTooLong`].
/// Those have fewer subsets than weight bits and are cheaper to brute-force
/// than to kernelize.
pub fn length_guard(inst: &RangedInstance) -> Result<()> {
    let n = inst.n();
    let bits = bit_length(&inst.bound());
    if n < 64 && bits > 1u64 << n {
        return Err(Error::WeightsTooLong { bits, n });
    }
    Ok(())
}

/// OR of the per-item answers; `answers` must align with the `item_count` items.
pub fn evaluate_kernel_output(item_count: usize, answers: &[bool]) -> Result<bool> {
    if answers.len() != item_count {
        return Err(Error::LengthMismatch {
            field: "answers".into(),
            expected: item_count,
            found: answers.len(),
        });
    }
    Ok(answers.iter().any(|&a| a))
}
