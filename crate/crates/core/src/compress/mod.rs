//! Randomized weight compression: replace weights by residues modulo a
//! random prime `p` and the target by its `n+1` lifts `(t mod p) + j·p`.
//!
//! Completeness is deterministic: `w(X) = t` gives `ω'(X) ≡ t (mod p)` with
//! `0 ≤ ω'(X) ≤ n(p−1) < (n+1)p`, so `ω'(X)` is one of the lifts. A false
//! hit needs `p | (w(X) − t) ≠ 0`; each such difference has at most
//! `bitlen(nN)` prime factors, and `[P, 2P]` holds at least `P / (2 ln 2P)`
//! primes, so choosing `P` large enough bounds the failure probability by `ε`.

mod prime;

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{Natural, WeightFn};

pub use prime::{is_probable_prime, random_prime, MILLER_RABIN_ROUNDS};

/// Soundness parameter, strictly between 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Epsilon(value))
        } else {
            Err(Error::EpsilonOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `ε / k` for a union bound over `k ≥ 1` events.
    pub fn split(self, k: usize) -> Self {
        Epsilon(self.0 / k.max(1) as f64)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Smallest power of two `P ≥ 16` with `P / (2 ln 2P) ≥ 2^n · bitlen(nN) / ε`,
/// taking `bitlen(0) = 1`.
pub fn choose_prime_bound(n: usize, bound: &Natural, eps: Epsilon) -> Natural {
    let span = Natural::from(n) * bound;
    let bits = if span.is_zero() { 1 } else { span.bits() };
    // log₂ of the right-hand side.
    let need = n as f64 + (bits as f64).log2() - eps.value().log2();
    let mut k: u64 = 4;
    // log₂(2^k / (2 (k+1) ln 2)) = k − 1 − log₂((k+1) ln 2)
    while (k as f64) - 1.0 - ((k + 1) as f64 * std::f64::consts::LN_2).log2() < need {
        k += 1;
    }
    Natural::from(1u32) << k
}

/// Output of [`compress_weights`].
#[derive(Clone, Debug, PartialEq)]
pub struct CompressedOutput {
    /// `ω'(e) = w(e) mod p`.
    pub omega_prime: WeightFn,
    /// `(t mod p) + j·p` for `j = 0..=n`.
    pub targets: Vec<Natural>,
    pub prime: Natural,
    /// The `P` that `p ∈ [P, 2P]` was drawn from.
    pub prime_bound: Natural,
    pub epsilon: Epsilon,
    pub seed: Option<u64>,
}

impl CompressedOutput {
    /// True if `value` equals one of the targets.
    pub fn hits(&self, value: &Natural) -> bool {
        let r = &self.targets[0];
        if value < r {
            return false;
        }
        let diff = value - r;
        (&diff % &self.prime).is_zero()
            && (&diff / &self.prime).to_usize().is_some_and(|j| j < self.targets.len())
    }

    /// Largest emitted value (weight or target); at most `(n+1)·p`.
    pub fn max_value(&self) -> Natural {
        self.omega_prime.max().max(self.targets.last().cloned().unwrap_or_default())
    }
}

/// Compression with a caller-chosen modulus. `prime_bound` and `eps` are recorded only.
pub fn compress_with_prime(w: &WeightFn, t: &Natural, p: &Natural, prime_bound: Natural, eps: Epsilon) -> CompressedOutput {
    let omega_prime = w.iter().map(|x| x % p).collect();
    let base = t % p;
    let targets = (0..=w.len()).map(|j| &base + p * Natural::from(j)).collect();
    CompressedOutput {
        omega_prime,
        targets,
        prime: p.clone(),
        prime_bound,
        epsilon: eps,
        seed: None,
    }
}

/// Compresses `(w, t)` modulo a random prime from `[P, 2P]`, `P` from
/// [`choose_prime_bound`].
///
/// `N` is taken as `max(max w, ⌈t/n⌉)` so that `nN` bounds every difference
/// `|w(X) − t|`.
pub fn compress_weights(w: &WeightFn, t: &Natural, eps: Epsilon, seed: u64) -> Result<CompressedOutput> {
    let n = w.len();
    let mut bound = w.max();
    if n > 0 {
        let per_element = (t + Natural::from(n - 1)) / Natural::from(n);
        bound = bound.max(per_element);
    }
    let prime_bound = choose_prime_bound(n, &bound, eps);
    let p = random_prime(&prime_bound, seed)?;
    let mut out = compress_with_prime(w, t, &p, prime_bound, eps);
    out.seed = Some(seed);
    Ok(out)
}
