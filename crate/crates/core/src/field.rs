//! Arithmetic in `GF(p^n)` with a fixed primitive modulus.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{add_p, checked_pow, factor_u64, is_prime, mul_p, neg_p, sub_p};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly;

/// Fields up to this many elements get full exp/log tables.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

const MAX_FIELD_SIZE: u64 = 1 << 62;

/// An element of `GF(p^n)` as its coefficient vector in the basis
/// `1, α, …, α^{n−1}`.
///
/// Elements are only meaningful together with the [`FieldCtx`] that made
/// them; subfield elements live in the big field too.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    coeffs: Vec<u32>,
}

impl Element {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The zero element of the same field.
    pub(crate) fn zeroed(&self) -> Element {
        Element { coeffs: vec![0; self.coeffs.len()] }
    }

    /// Packs the coefficients as base-`p` digits, `c_0` least significant.
    pub fn index(&self, p: u32) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }
}

struct LogTables {
    /// `exp[k]` = packed index of `α^k`.
    exp: Vec<u32>,
    /// `log[index]` = k; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field `GF(p^n) = GF(p)[x] / (f)` with `f` primitive, so the
/// residue `α` of `x` generates the multiplicative group.
///
/// Immutable after construction.
pub struct FieldCtx {
    p: u32,
    n: usize,
    size: u64,
    modulus: Vec<u32>,
    group_primes: Vec<u64>,
    /// Column `j` holds `(α^j)^p`.
    frobenius: Matrix,
    /// `tr(α^j)` for `j < n`.
    trace_weights: Vec<u32>,
    tables: Option<LogTables>,
}

impl core::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

/// Smallest primitive monic polynomial of degree `n` over GF(p), ordering
/// candidates by the integer `Σ c_i p^i` of their low coefficients.
pub fn find_primitive_modulus(p: u32, n: usize) -> Result<Vec<u32>> {
    let size = validate_size(p, n)?;
    let primes = factor_u64(size - 1);
    let mut candidate = vec![0u32; n + 1];
    candidate[n] = 1;
    for k in 0..size {
        let mut rest = k;
        for c in candidate.iter_mut().take(n) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        if candidate[0] == 0 {
            continue;
        }
        if poly::x_has_order(&candidate, p, size - 1, &primes) {
            return Ok(candidate);
        }
    }
    // Primitive polynomials exist for every (p, n).
    unreachable!("no primitive polynomial of degree {n} over GF({p})")
}

fn validate_size(p: u32, n: usize) -> Result<u64> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrimeP(p as u64));
    }
    if n == 0 {
        return Err(Error::BadModulus);
    }
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge);
    }
    match checked_pow(p as u64, n) {
        Some(size) if size <= MAX_FIELD_SIZE => Ok(size),
        _ => Err(Error::FieldTooLarge),
    }
}

impl FieldCtx {
    /// `GF(p^n)` with the smallest primitive modulus and the default table cap.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        Self::with_options(p, n, None, DEFAULT_TABLE_CAP)
    }

    pub fn with_modulus(p: u32, n: usize, modulus: &[u32]) -> Result<Self> {
        Self::with_options(p, n, Some(modulus), DEFAULT_TABLE_CAP)
    }

    /// Full constructor. `modulus` is monic, low-to-high, length `n + 1`.
    /// Exp/log tables are built when `p^n <= table_cap`.
    pub fn with_options(p: u32, n: usize, modulus: Option<&[u32]>, table_cap: u64) -> Result<Self> {
        let size = validate_size(p, n)?;
        let group_primes = factor_u64(size - 1);
        let modulus = match modulus {
            None => find_primitive_modulus(p, n)?,
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus);
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::NotIrreducible);
                }
                if !poly::x_has_order(m, p, size - 1, &group_primes) {
                    return Err(Error::NotPrimitive);
                }
                m.to_vec()
            }
        };

        let mut ctx = FieldCtx {
            p,
            n,
            size,
            modulus,
            group_primes,
            frobenius: Matrix::zeros(p, n, n),
            trace_weights: Vec::new(),
            tables: None,
        };

        let mut power = ctx.one();
        for j in 0..n {
            let image = ctx.pow_by_squaring(&power, p as u64);
            for (i, &c) in image.coeffs.iter().enumerate() {
                ctx.frobenius.set(i, j, c);
            }
            power = ctx.mul_alpha(&power);
        }

        let mut weights = Vec::with_capacity(n);
        let mut power = ctx.one();
        for _ in 0..n {
            let tr = ctx.frobenius_sum(&power, 1, n);
            debug_assert!(tr.coeffs[1..].iter().all(|&c| c == 0));
            weights.push(tr.coeffs[0]);
            power = ctx.mul_alpha(&power);
        }
        ctx.trace_weights = weights;

        if size <= table_cap && size <= u32::MAX as u64 {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let order = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; self.size as usize];
        let mut x = self.one();
        for k in 0..order {
            let idx = x.index(self.p) as u32;
            exp.push(idx);
            log[idx as usize] = k as u32;
            x = self.mul_alpha(&x);
        }
        LogTables { exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// `p^n − 1`, the order of `α`.
    pub fn group_order(&self) -> u64 {
        self.size - 1
    }

    /// Distinct primes dividing `p^n − 1`.
    pub fn group_order_primes(&self) -> &[u64] {
        &self.group_primes
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// `p^m` for a subfield degree `m`.
    pub fn subfield_size(&self, m: usize) -> u64 {
        checked_pow(self.p as u64, m).expect("subfield of a representable field")
    }

    pub(crate) fn check_divisor(&self, m: usize) -> Result<()> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { divisor: m as u64, of: self.n as u64 });
        }
        Ok(())
    }

    // ----- element construction -----

    pub fn zero(&self) -> Element {
        Element { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> Element {
        self.scalar(1)
    }

    pub fn alpha(&self) -> Element {
        Element { coeffs: poly::x_residue(&self.modulus, self.p) }
    }

    /// The prime-field scalar `c` embedded in `GF(p^n)`.
    pub fn scalar(&self, c: u32) -> Element {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        Element { coeffs }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<Element> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::MalformedElement);
        }
        Ok(Element { coeffs: coeffs.to_vec() })
    }

    /// Inverse of [`Element::index`].
    pub fn from_index(&self, mut index: u64) -> Result<Element> {
        if index >= self.size {
            return Err(Error::MalformedElement);
        }
        let p = self.p as u64;
        let coeffs = (0..self.n)
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect();
        Ok(Element { coeffs })
    }

    /// Whether a prime-field scalar (an element of `GF(p) ⊂ GF(p^n)`).
    pub fn as_scalar(&self, a: &Element) -> Option<u32> {
        a.coeffs[1..].iter().all(|&c| c == 0).then(|| a.coeffs[0])
    }

    // ----- arithmetic -----

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| add_p(x, y, self.p)).collect();
        Element { coeffs }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| sub_p(x, y, self.p)).collect();
        Element { coeffs }
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().map(|&x| neg_p(x, self.p)).collect() }
    }

    pub fn scale(&self, c: u32, a: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().map(|&x| mul_p(x, c % self.p, self.p)).collect() }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if let Some(t) = &self.tables {
            if a.is_zero() || b.is_zero() {
                return self.zero();
            }
            let la = t.log[a.index(self.p) as usize] as u64;
            let lb = t.log[b.index(self.p) as usize] as u64;
            let k = (la + lb) % (self.size - 1);
            return self.unpack(t.exp[k as usize] as u64);
        }
        Element { coeffs: poly::mul_mod(&a.coeffs, &b.coeffs, &self.modulus, self.p) }
    }

    fn unpack(&self, index: u64) -> Element {
        self.from_index(index).expect("table index in range")
    }

    /// `a · α`, a shift followed by one reduction step.
    pub fn mul_alpha(&self, a: &Element) -> Element {
        let n = self.n;
        let p = self.p;
        if n == 1 {
            let alpha = neg_p(self.modulus[0], p);
            return Element { coeffs: vec![mul_p(a.coeffs[0], alpha, p)] };
        }
        let top = a.coeffs[n - 1];
        let mut coeffs = vec![0u32; n];
        for i in (1..n).rev() {
            coeffs[i] = sub_p(a.coeffs[i - 1], mul_p(top, self.modulus[i], p), p);
        }
        coeffs[0] = sub_p(0, mul_p(top, self.modulus[0], p), p);
        Element { coeffs }
    }

    fn pow_by_squaring(&self, a: &Element, e: u64) -> Element {
        Element { coeffs: poly::pow_mod(&a.coeffs, e, &self.modulus, self.p) }
    }

    pub fn pow(&self, a: &Element, e: u64) -> Element {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        if let Some(t) = &self.tables {
            let order = self.size - 1;
            let la = t.log[a.index(self.p) as usize] as u128;
            let k = (la * (e % order) as u128 % order as u128) as usize;
            return self.unpack(t.exp[k] as u64);
        }
        self.pow_by_squaring(a, e)
    }

    /// `α^k` for any integer `k` (reduced modulo `p^n − 1`).
    pub fn alpha_pow(&self, k: i64) -> Element {
        let order = (self.size - 1) as i64;
        let k = k.rem_euclid(order) as u64;
        if let Some(t) = &self.tables {
            return self.unpack(t.exp[k as usize] as u64);
        }
        self.pow_by_squaring(&self.alpha(), k)
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// Discrete logarithm to base `α`, in `[0, p^n − 1)`.
    pub fn log(&self, a: &Element) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::LogOfZero);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[a.index(self.p) as usize] as u64);
        }
        Ok(self.baby_step_giant_step(a))
    }

    fn baby_step_giant_step(&self, a: &Element) -> u64 {
        let order = self.size - 1;
        let mut m = 1u64;
        while m.saturating_mul(m) < order {
            m += 1;
        }
        let mut baby = BTreeMap::new();
        let mut x = self.one();
        for j in 0..m {
            baby.entry(x.index(self.p)).or_insert(j);
            x = self.mul_alpha(&x);
        }
        let giant = self.alpha_pow(-(m as i64));
        let mut y = a.clone();
        for i in 0..m {
            if let Some(&j) = baby.get(&y.index(self.p)) {
                return (i * m + j) % order;
            }
            y = self.mul(&y, &giant);
        }
        unreachable!("every nonzero element is a power of a primitive α")
    }

    // ----- Frobenius and traces -----

    /// `a^p`.
    pub fn frobenius(&self, a: &Element) -> Element {
        Element { coeffs: self.frobenius.mul_vec(&a.coeffs) }
    }

    /// `a^{p^k}`.
    pub fn frobenius_pow(&self, a: &Element, k: usize) -> Element {
        let mut y = a.clone();
        for _ in 0..k % self.n {
            y = self.frobenius(&y);
        }
        y
    }

    /// `Σ_{i < terms} a^{p^{step·i}}`.
    fn frobenius_sum(&self, a: &Element, step: usize, terms: usize) -> Element {
        let mut acc = a.clone();
        let mut y = a.clone();
        for _ in 1..terms {
            y = self.frobenius_pow(&y, step);
            acc = self.add(&acc, &y);
        }
        acc
    }

    /// Absolute trace `GF(p^n) → GF(p)`.
    pub fn trace(&self, a: &Element) -> u32 {
        dot(&self.trace_weights, &a.coeffs, self.p)
    }

    /// Relative trace `GF(p^n) → GF(p^m)`, `Σ_{i < n/m} a^{p^{mi}}`.
    pub fn trace_to_subfield(&self, m: usize, a: &Element) -> Result<Element> {
        self.relative_trace(a, self.n, m)
    }

    /// Relative trace `GF(p^d) → GF(p^m)` for `m | d | n`; `a` must lie in `GF(p^d)`.
    pub fn relative_trace(&self, a: &Element, d: usize, m: usize) -> Result<Element> {
        self.check_divisor(d)?;
        if m == 0 || !d.is_multiple_of(m) {
            return Err(Error::NotADivisor { divisor: m as u64, of: d as u64 });
        }
        Ok(self.frobenius_sum(a, m, d / m))
    }

    /// Frobenius fixed-point test `a^{p^m} = a`.
    pub fn in_subfield(&self, m: usize, a: &Element) -> bool {
        self.frobenius_pow(a, m) == *a
    }

    /// `α^{(p^n−1)/(p^m−1)}`, the canonical generator of `GF(p^m)^×`.
    pub fn subfield_generator(&self, m: usize) -> Result<Element> {
        self.check_divisor(m)?;
        let cofactor = (self.size - 1) / (self.subfield_size(m) - 1);
        Ok(self.alpha_pow(cofactor as i64))
    }

    /// Exponent `r` with `a = g^r`, `g = subfield_generator(m)`, `r ∈ [0, p^m − 1)`.
    pub fn subfield_log(&self, m: usize, a: &Element) -> Result<u64> {
        self.check_divisor(m)?;
        let cofactor = (self.size - 1) / (self.subfield_size(m) - 1);
        let l = self.log(a)?;
        if l % cofactor != 0 {
            return Err(Error::NotInSubfield);
        }
        Ok(l / cofactor)
    }

    /// `Ψ(x) = (ψ(x), ψ(αx), …, ψ(α^{n−1}x))`.
    pub fn coord_map(&self, form: &LinearForm, x: &Element) -> Vec<u32> {
        let mut y = x.clone();
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push(form.eval(self, &y));
            y = self.mul_alpha(&y);
        }
        out
    }
}

fn dot(w: &[u32], v: &[u32], p: u32) -> u32 {
    let pp = p as u64;
    (w.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % pp)) as u32
}

/// A nonzero `GF(p)`-linear form `x ↦ tr(λx)`.
///
/// Every nonzero linear map `GF(p^n) → GF(p)` has exactly one such `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    lambda: Element,
    /// `ψ(α^j)` for `j < n`.
    weights: Vec<u32>,
}

impl LinearForm {
    pub fn new(ctx: &FieldCtx, lambda: Element) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroForm);
        }
        let mut weights = Vec::with_capacity(ctx.n);
        let mut y = lambda.clone();
        for _ in 0..ctx.n {
            weights.push(ctx.trace(&y));
            y = ctx.mul_alpha(&y);
        }
        Ok(LinearForm { lambda, weights })
    }

    /// The absolute trace itself (`λ = 1`).
    pub fn trace(ctx: &FieldCtx) -> Self {
        Self::new(ctx, ctx.one()).expect("one is nonzero")
    }

    /// Recovers `λ` from the values `ψ(α^j)`, `j < n`.
    pub fn from_weights(ctx: &FieldCtx, weights: &[u32]) -> Result<Self> {
        if weights.len() != ctx.n {
            return Err(Error::LengthMismatch { expected: ctx.n, found: weights.len() });
        }
        // tr(λ α^j) = Σ_c λ_c tr(α^{c+j}); the Hankel matrix is invertible
        // because the trace form is nondegenerate.
        let mut powers = Vec::with_capacity(2 * ctx.n);
        let mut y = ctx.one();
        for _ in 0..2 * ctx.n {
            powers.push(ctx.trace(&y));
            y = ctx.mul_alpha(&y);
        }
        let rows: Vec<Vec<u32>> = (0..ctx.n).map(|j| (0..ctx.n).map(|c| powers[c + j]).collect()).collect();
        let hankel = Matrix::from_rows(ctx.p, &rows);
        let inv = hankel.inverse().expect("trace form is nondegenerate");
        let lambda = ctx.element(&inv.mul_vec(weights))?;
        Self::new(ctx, lambda)
    }

    pub fn lambda(&self) -> &Element {
        &self.lambda
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn eval(&self, ctx: &FieldCtx, x: &Element) -> u32 {
        dot(&self.weights, &x.coeffs, ctx.p)
    }
}
