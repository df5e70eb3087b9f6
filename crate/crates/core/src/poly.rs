//! Dense polynomials over GF(p), coefficients low-to-high.
//!
//! Only what the modulus search and the field arithmetic need: reduction
//! modulo a monic polynomial, modular powering, gcd and Rabin's
//! irreducibility test.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factor_u64, inv_p, mul_p, sub_p};

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Product of two residues modulo the monic `modulus` (degree `n`).
/// Inputs have length `n`; output has length `n`.
pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let pp = p as u64;
    let mut wide = vec![0u64; 2 * n.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            wide[i + j] = (wide[i + j] + x as u64 * y as u64) % pp;
        }
    }
    for k in (n..wide.len()).rev() {
        let c = wide[k];
        if c == 0 {
            continue;
        }
        wide[k] = 0;
        for i in 0..n {
            let f = modulus[i] as u64;
            wide[k - n + i] = (wide[k - n + i] + (pp - c) * f) % pp;
        }
    }
    wide.truncate(n);
    wide.into_iter().map(|c| c as u32).collect()
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut acc = one(n);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, modulus, p);
        }
    }
    acc
}

pub(crate) fn one(n: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[0] = 1;
    v
}

/// The residue of `x` modulo a monic modulus of degree `n`.
pub(crate) fn x_residue(modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    if n == 1 {
        // x ≡ -c0
        return vec![sub_p(0, modulus[0], p)];
    }
    let mut v = vec![0u32; n];
    v[1] = 1;
    v
}

/// Remainder of `a` by a nonzero `b`.
fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_p(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul_p(r[k], lead_inv, p);
        for i in 0..=db {
            r[k - db + i] = sub_p(r[k - db + i], mul_p(c, b[i], p), p);
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test for a monic polynomial of degree `n >= 1`.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n == 1 {
        return true;
    }
    let x = x_residue(modulus, p);
    // x^(p^k) mod f
    let frob_power = |k: usize| {
        let mut y = x.clone();
        for _ in 0..k {
            y = pow_mod(&y, p as u64, modulus, p);
        }
        y
    };
    if frob_power(n) != x {
        return false;
    }
    for r in factor_u64(n as u64) {
        let mut y = frob_power(n / r as usize);
        y[1] = sub_p(y[1], 1, p);
        let g = gcd(modulus, &y, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Whether the residue of `x` has multiplicative order exactly `order`
/// (whose distinct prime factors are `primes`).
pub(crate) fn x_has_order(modulus: &[u32], p: u32, order: u64, primes: &[u64]) -> bool {
    let n = modulus.len() - 1;
    let x = x_residue(modulus, p);
    let unit = one(n);
    if pow_mod(&x, order, modulus, p) != unit {
        return false;
    }
    primes.iter().all(|&q| pow_mod(&x, order / q, modulus, p) != unit)
}
