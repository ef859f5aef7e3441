//! Probabilistic primality testing and seeded random primes.

use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Natural;

/// Miller–Rabin rounds per candidate; error probability below `4^-40`.
pub const MILLER_RABIN_ROUNDS: u32 = 40;

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64<R: Rng>(n: u64, rounds: u32, rng: &mut R) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for _ in 0..rounds {
        let a = rng.gen_range(2..n - 1);
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big<R: Rng>(n: &Natural, rounds: u32, rng: &mut R) -> bool {
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let two = Natural::from(2u32);
    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial division by small primes, then `rounds` Miller–Rabin rounds with
/// bases drawn from `rng`. Never rejects a prime.
pub fn is_probable_prime<R: Rng>(n: &Natural, rounds: u32, rng: &mut R) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for p in SMALL_PRIMES {
            if small == p {
                return true;
            }
            if small % p == 0 {
                return false;
            }
        }
        return miller_rabin_u64(small, rounds, rng);
    }
    if SMALL_PRIMES.iter().any(|&p| (n % p).is_zero()) {
        return false;
    }
    miller_rabin_big(n, rounds, rng)
}

/// A prime in `[lower, 2·lower]` by rejection sampling of uniform candidates;
/// deterministic given `seed`.
///
/// Gives up after `64·bitlen(lower)²` candidates, which happens with
/// negligible probability for `lower ≥ 16`.
pub fn random_prime(lower: &Natural, seed: u64) -> Result<Natural> {
    assert!(*lower >= Natural::from(16u32), "prime bound must be at least 16");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = lower.bits();
    let cap = 64 * bits * bits;
    let span_end = lower + 1u32;
    for _ in 0..cap {
        let candidate = lower + rng.gen_biguint_below(&span_end);
        if candidate.is_even() {
            continue;
        }
        if is_probable_prime(&candidate, MILLER_RABIN_ROUNDS, &mut rng) {
            return Ok(candidate);
        }
    }
    Err(Error::PrimeSearchExhausted {
        lower: lower.clone(),
        attempts: cap,
    })
}
