//! Exact integer number theory on `u64` values.
//!
//! All modular multiplication goes through a 128-bit intermediate, so moduli
//! up to the full 64-bit range are safe. No floating point anywhere.

use thiserror::Error;

/// Inputs to the semiprime totient/Carmichael helpers must be two distinct primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SemiprimeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the two primes must be distinct")]
    PrimesEqual,
}

/// `(a * b) mod m` without overflow. `m` must be nonzero.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

/// Least common multiple. Inputs must be small enough not to overflow.
pub fn lcm(x: u64, y: u64) -> u64 {
    if x == 0 || y == 0 {
        return 0;
    }
    x / gcd(x, y) * y
}

/// Extended Euclid: returns `(g, s, t)` with `s*x + t*y = g = gcd(x, y)`.
pub fn egcd(x: u64, y: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (x as i128, y as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

/// Modular inverse: the unique `u` in `[1, m)` with `u*x ≡ 1 (mod m)`,
/// or `None` when `gcd(x, m) != 1`. Requires `m >= 2`.
pub fn mod_inv(x: u64, m: u64) -> Option<u64> {
    assert!(m >= 2, "mod_inv requires m >= 2");
    let (g, s, _) = egcd(x, m);
    if g != 1 {
        return None;
    }
    let m = m as i128;
    Some(((s % m + m) % m) as u64)
}

/// `base^exp mod m` by square-and-multiply; `0^0 := 1 mod m`. Requires `m >= 1`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 1, "mod_pow requires m >= 1");
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Sufficient witness set for deterministic Miller-Rabin below 2^64
// (Sinclair / Jaeschke bounds).
const MILLER_RABIN_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test, correct for all `u64` inputs.
pub fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // n - 1 = 2^s * d with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_WITNESSES {
        let mut x = mod_pow(a, d, n);
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

/// All primes `p` with `lo <= p <= hi`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_probable_prime(n)).collect()
}

/// Euler totient of the semiprime `b*v`: `(b-1)*(v-1)`.
pub fn euler_phi_semiprime(b: u64, v: u64) -> Result<u64, SemiprimeError> {
    check_distinct_primes(b, v)?;
    Ok((b - 1) * (v - 1))
}

/// Carmichael function of the semiprime `b*v`: `lcm(b-1, v-1)`.
pub fn carmichael_semiprime(b: u64, v: u64) -> Result<u64, SemiprimeError> {
    check_distinct_primes(b, v)?;
    Ok(lcm(b - 1, v - 1))
}

fn check_distinct_primes(b: u64, v: u64) -> Result<(), SemiprimeError> {
    if !is_probable_prime(b) {
        return Err(SemiprimeError::NotPrime(b));
    }
    if !is_probable_prime(v) {
        return Err(SemiprimeError::NotPrime(v));
    }
    if b == v {
        return Err(SemiprimeError::PrimesEqual);
    }
    Ok(())
}

/// Smallest `t >= 1` with `x^t ≡ 1 (mod m)`, or `None` when `gcd(x, m) != 1`.
///
/// Brute-force iteration; intended for desk-scale moduli (the order is at
/// most `m - 1`). Requires `m >= 2`.
pub fn multiplicative_order(x: u64, m: u64) -> Option<u64> {
    assert!(m >= 2, "multiplicative_order requires m >= 2");
    if gcd(x, m) != 1 {
        return None;
    }
    let x = x % m;
    let mut acc = x;
    let mut t = 1;
    while acc != 1 {
        acc = mul_mod(acc, x, m);
        t += 1;
    }
    Some(t)
}
