//! The `s × t` trace De Bruijn torus and its column structure.
//!
//! Position `(i, j)` holds the element `β^i γ^j = α^{(t·i + s·j) mod (p^n−1)}`
//! with `β = α^t`, `γ = α^s`; since `gcd(s, t) = 1` this is a bijection onto
//! `GF(p^n)^×`. The value grid is `B_{i,j} = ψ(β^i γ^j)`.
//!
//! When `s = p^m − 1` for some `m | n`, `β` generates `GF(p^m)^×` and column
//! `j` is either zero or a cyclic shift of the subfield sequence
//! `DB_β = (tr(β^i))_i`, selected by the relative trace of `λ γ^j`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::dbseq::DbSequence;
use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx, LinearForm};
use crate::patterns::Pattern;
use crate::subfield::OrbitFactor;

#[derive(Clone, Debug)]
pub struct Torus<'f> {
    ctx: &'f FieldCtx,
    s: usize,
    t: usize,
    exponents: Vec<u64>,
    values: Vec<u32>,
    form: LinearForm,
}

impl<'f> Torus<'f> {
    pub fn new(ctx: &'f FieldCtx, s: usize, t: usize, form: &LinearForm) -> Result<Self> {
        let order = ctx.group_order();
        if s == 0 || t == 0 || (s as u64).checked_mul(t as u64) != Some(order) || gcd(s as u64, t as u64) != 1 {
            return Err(Error::BadFactorization { s, t });
        }
        if form.lambda().is_zero() {
            return Err(Error::ZeroForm);
        }
        // ψ(α^k) for every k, by successive multiplication with α
        let mut by_exponent = Vec::with_capacity(order as usize);
        let mut x = ctx.one();
        for _ in 0..order {
            by_exponent.push(form.eval(ctx, &x));
            x = ctx.mul_alpha(&x);
        }
        let mut exponents = Vec::with_capacity(s * t);
        let mut values = Vec::with_capacity(s * t);
        for i in 0..s as u64 {
            for j in 0..t as u64 {
                let e = (t as u64 * i + s as u64 * j) % order;
                exponents.push(e);
                values.push(by_exponent[e as usize]);
            }
        }
        let torus = Torus { ctx, s, t, exponents, values, form: form.clone() };
        debug_assert!(torus.exponents_are_bijective());
        Ok(torus)
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.ctx
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    /// `β = α^t`.
    pub fn beta(&self) -> Element {
        self.ctx.alpha_pow(self.t as i64)
    }

    /// `γ = α^s`.
    pub fn gamma(&self) -> Element {
        self.ctx.alpha_pow(self.s as i64)
    }

    pub fn exponent(&self, i: usize, j: usize) -> u64 {
        self.exponents[(i % self.s) * self.t + j % self.t]
    }

    pub fn value(&self, i: usize, j: usize) -> u32 {
        self.values[(i % self.s) * self.t + j % self.t]
    }

    pub fn element(&self, i: usize, j: usize) -> Element {
        self.ctx.alpha_pow(self.exponent(i, j) as i64)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[i * self.t..(i + 1) * self.t]
    }

    pub fn exponent_row(&self, i: usize) -> &[u64] {
        &self.exponents[i * self.t..(i + 1) * self.t]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.s).map(|i| self.value(i, j)).collect()
    }

    /// Row-major value grid.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Row-major exponent grid.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Grid position of `α^k`, inverting `k = t·i + s·j mod st`.
    pub fn position_of_exponent(&self, k: u64) -> (usize, usize) {
        let (s, t) = (self.s as u64, self.t as u64);
        let k = k % (s * t);
        let t_inv = crate::arith::mod_inverse(t % s.max(1), s).unwrap_or(0);
        let s_inv = crate::arith::mod_inverse(s % t.max(1), t).unwrap_or(0);
        let i = (k % s) * t_inv % s.max(1);
        let j = (k % t) * s_inv % t.max(1);
        (i as usize, j as usize)
    }

    pub fn exponents_are_bijective(&self) -> bool {
        let mut seen = vec![false; self.exponents.len()];
        for &e in &self.exponents {
            if seen[e as usize] {
                return false;
            }
            seen[e as usize] = true;
        }
        true
    }

    fn subfield_degree(&self, m: usize) -> Result<()> {
        let ctx = self.ctx;
        if m == 0 || !ctx.n().is_multiple_of(m) || ctx.subfield_size(m) - 1 != self.s as u64 {
            return Err(Error::NotSubfieldRegime);
        }
        Ok(())
    }

    /// Labels every column via `tr_{GF(p^n)/GF(p^m)}(λ γ^j)` and checks each
    /// label against the stored values entrywise.
    pub fn classify_columns(&self, m: usize) -> Result<ColumnReport> {
        self.subfield_degree(m)?;
        let ctx = self.ctx;
        let db_beta = subfield_digits(ctx, m)?;
        let gamma = self.gamma();
        let mut x = self.form.lambda().clone();
        let mut labels = Vec::with_capacity(self.t);
        for j in 0..self.t {
            let c = ctx.trace_to_subfield(m, &x)?;
            let label =
                if c.is_zero() { ColumnLabel::Zero } else { ColumnLabel::Shift(ctx.subfield_log(m, &c)? as usize) };
            let column = self.column(j);
            let matches = match label {
                ColumnLabel::Zero => column.iter().all(|&v| v == 0),
                ColumnLabel::Shift(r) => (0..self.s).all(|i| column[i] == db_beta[(r + i) % self.s]),
            };
            if !matches {
                return Err(Error::ColumnMismatch { column: j });
            }
            labels.push(label);
            x = ctx.mul(&x, &gamma);
        }
        let mut counts = BTreeMap::new();
        let mut zero_columns = 0;
        for label in &labels {
            match label {
                ColumnLabel::Zero => zero_columns += 1,
                ColumnLabel::Shift(r) => *counts.entry(*r).or_insert(0) += 1,
            }
        }
        let factors = ctx.factor_unity(m, self.t as u64)?;
        Ok(ColumnReport { labels, factors, counts, zero_columns })
    }

    /// `B′_{i,j} = B_{i mod s, j mod t}` on an `(s + I) × (t + J)` grid, where
    /// `I`, `J` are the pattern's row and column extents.
    pub fn extend_array(&self, pattern: &Pattern) -> ExtendedGrid {
        let (ext_i, ext_j) = pattern.extents();
        let rows = self.s + ext_i;
        let cols = self.t + ext_j;
        let mut values = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                values.push(self.value(i, j));
            }
        }
        ExtendedGrid { rows, cols, values }
    }
}

/// `DB_β` as prime-field digits, `β` the canonical generator of `GF(p^m)`.
fn subfield_digits(ctx: &FieldCtx, m: usize) -> Result<Vec<u32>> {
    if m == 1 {
        // GF(p) over itself: tr is the identity, DB_β = (β^i)
        let beta = ctx.subfield_generator(1)?;
        let mut out = Vec::new();
        let mut x = ctx.one();
        for _ in 0..ctx.p() - 1 {
            out.push(ctx.as_scalar(&x).expect("prime-field element"));
            x = ctx.mul(&x, &beta);
        }
        return Ok(out);
    }
    let seq = DbSequence::of_subfield(ctx, m)?;
    Ok(seq.digits(ctx).expect("absolute trace lands in GF(p)"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnLabel {
    Zero,
    /// Column equals `DB_β` rotated by `r`, `r ∈ [0, s)`.
    Shift(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnReport {
    pub labels: Vec<ColumnLabel>,
    pub factors: Vec<OrbitFactor>,
    /// `r ↦` number of columns labelled `Shift(r)`.
    pub counts: BTreeMap<usize, usize>,
    pub zero_columns: usize,
}

/// Column tallies predicted from the factorisation of `x^t − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceCounts {
    pub counts: BTreeMap<usize, usize>,
    pub zero_columns: usize,
}

/// Predicts how often each shift `DB_β^{[r]}` appears among the columns of
/// the trace torus with `s = p^m − 1`, from the irreducible factors of
/// `x^t − 1` over `GF(p^m)`.
///
/// A factor of degree `d` contributes `d` columns whose relative trace is
/// `(n/m)/d` times the sum of its roots, i.e. `(n/m)/d · (−c_{d−1})`.
pub fn occurrence_counts(ctx: &FieldCtx, m: usize) -> Result<OccurrenceCounts> {
    if m == 0 || !ctx.n().is_multiple_of(m) {
        return Err(Error::NotSubfieldRegime);
    }
    let s = ctx.subfield_size(m) - 1;
    let t = ctx.group_order() / s;
    if gcd(s, t) != 1 {
        return Err(Error::NotSubfieldRegime);
    }
    let k = (ctx.n() / m) as u64;
    let mut counts = BTreeMap::new();
    let mut zero_columns = 0;
    for factor in ctx.factor_unity(m, t)? {
        let d = factor.poly.degree();
        let second = factor.poly.second_leading().expect("degree >= 1");
        let multiplier = ((k / d as u64) % ctx.p() as u64) as u32;
        let trace = ctx.scale(multiplier, &ctx.neg(second));
        if trace.is_zero() {
            zero_columns += d;
        } else {
            *counts.entry(ctx.subfield_log(m, &trace)? as usize).or_insert(0) += d;
        }
    }
    Ok(OccurrenceCounts { counts, zero_columns })
}

/// Whether `x² + β^i x + 1` has no root in `GF(2^m)`, with `β` the canonical
/// generator of the subfield `GF(2^m)` of `ctx`.
pub fn quadratic_criterion(ctx: &FieldCtx, m: usize, i: u64) -> Result<bool> {
    if ctx.p() != 2 {
        return Err(Error::OddCharacteristic);
    }
    let beta = ctx.subfield_generator(m)?;
    let a = ctx.pow(&beta, i);
    let one = ctx.one();
    let has_root = |y: &Element| {
        let v = ctx.add(&ctx.add(&ctx.mul(y, y), &ctx.mul(&a, y)), &one);
        v.is_zero()
    };
    if has_root(&ctx.zero()) {
        return Ok(false);
    }
    let mut y = ctx.one();
    for _ in 0..ctx.subfield_size(m) - 1 {
        if has_root(&y) {
            return Ok(false);
        }
        y = ctx.mul(&y, &beta);
    }
    Ok(true)
}

/// Non-toroidal copy of the torus with wraparound rows and columns appended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGrid {
    rows: usize,
    cols: usize,
    values: Vec<u32>,
}

impl ExtendedGrid {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }
}
