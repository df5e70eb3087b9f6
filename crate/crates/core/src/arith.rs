//! Integer number theory and `GF(p)` scalar helpers.

use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending. Trial division.
pub fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Inverse of `a` modulo `m`, if it exists. `mod_inverse(_, 1)` is `Some(0)`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

#[inline]
pub(crate) fn add_p(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn sub_p(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn mul_p(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_p(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Inverse in GF(p); caller guarantees `a != 0`.
pub(crate) fn inv_p(a: u32, p: u32) -> u32 {
    mod_inverse(a as u64, p as u64).expect("nonzero scalar in a prime field") as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_group_orders() {
        assert_eq!(factor_u64(15), [3, 5]);
        assert_eq!(factor_u64(255), [3, 5, 17]);
        assert_eq!(factor_u64(4095), [3, 5, 7, 13]);
        assert_eq!(factor_u64(242), [2, 11]);
        assert_eq!(factor_u64(1), Vec::<u64>::new());
        assert_eq!(factor_u64(97), [97]);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(5, 3), Some(2));
        assert_eq!(mod_inverse(3, 5), Some(2));
        assert_eq!(mod_inverse(6, 9), None);
        assert_eq!(mod_inverse(7, 1), Some(0));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
