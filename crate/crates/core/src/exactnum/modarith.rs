//! Modular exponentiation and primality testing on big integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// `base^exponent mod modulus`, with the result reduced into
/// `[0, modulus)`. Negative bases are reduced first.
///
/// Panics if `modulus < 2`.
pub fn mod_pow(base: &BigInt, exponent: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(modulus >= &BigUint::from(2u32), "modulus must be at least 2");
    let m = BigInt::from(modulus.clone());
    let reduced = base.mod_floor(&m);
    let reduced = reduced
        .to_biguint()
        .expect("mod_floor by a positive modulus is nonnegative");
    reduced.modpow(exponent, modulus)
}

/// Deterministic Miller-Rabin witnesses for all `n < 2^64`.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality test: deterministic for `n < 2^64` (the fixed witness set is
/// exhaustive there); for larger inputs the same witnesses make it a
/// strong probable-prime test.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for b in MR_BASES {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for b in MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
