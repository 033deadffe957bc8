//! Small integer number theory: primality, prime powers, factorization.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(ℓ, k)` with `n = ℓ^k`, ℓ prime, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(l, k)] => Some((*l, *k)),
        _ => None,
    }
}

/// Least prime power `q > 1` with `q ≡ 1 (mod p)`, by ascending scan.
pub fn smallest_prime_power_1modp(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if prime_power(q).is_some() {
            return q;
        }
        q += p;
    }
}

pub fn pow_u128(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

const MR_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Primality of an arbitrary-size integer: exact trial division for values below
/// 2^40, otherwise trial division by small primes followed by Miller–Rabin with
/// the first 16 prime bases (deterministic below 3.3·10^24).
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < (1u64 << 40) {
            return is_prime(small);
        }
    }
    for d in 2u64..1000 {
        if is_prime(d) && (n % d).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn smallest_q_table() {
        let got: Vec<u64> = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
            .iter()
            .map(|&p| smallest_prime_power_1modp(p))
            .collect();
        assert_eq!(got, vec![3, 4, 11, 8, 23, 27, 103, 191, 47, 59]);
    }

    #[test]
    fn big_primality() {
        assert!(!is_prime_big(&big_pow(3, 3)));
        assert!(is_prime_big(&BigUint::from(1_000_000_007u64)));
        assert!(!is_prime_big(&big_pow(1_000_003, 3)));
        // 2^61 - 1 is a Mersenne prime
        assert!(is_prime_big(&(big_pow(2, 61) - 1u32)));
        assert!(!is_prime_big(&(big_pow(2, 67) - 1u32)));
    }
}
