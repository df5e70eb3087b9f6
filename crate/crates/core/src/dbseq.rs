//! Nonzero De Bruijn sequences from traces of powers of a generator.
//!
//! For a generator `g` of `GF(p^d)^×` and a symbol field `GF(p^m)`
//! (`m | d`, `m < d`) the sequence `s_i = tr_{GF(p^d)/GF(p^m)}(λ g^i)`,
//! `0 ≤ i < p^d − 1`, has window length `d/m` and every nonzero window
//! occurs exactly once. It obeys the recurrence given by the minimal
//! polynomial of `g` over `GF(p^m)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx};

/// A punctured (length `p^d − 1`) De Bruijn sequence with its feedback vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbSequence {
    symbols: Vec<Element>,
    feedback: Vec<Element>,
    window: usize,
    symbol_degree: usize,
    source_degree: usize,
    generator_exp: u64,
    lambda: Element,
}

/// Negated low coefficients `(−c_0, …, −c_{k−1})` of the minimal polynomial
/// of `α` over `GF(p^m)`; `k = n/m`.
pub fn feedback_vector(ctx: &FieldCtx, m: usize) -> Result<Vec<Element>> {
    ctx.check_divisor(m)?;
    if m == ctx.n() {
        return Err(Error::NotProperTower);
    }
    let mp = ctx.minimal_poly(m, &ctx.alpha())?;
    let k = mp.degree();
    Ok(mp.coeffs()[..k].iter().map(|c| ctx.neg(c)).collect())
}

/// Runs `s_{i+k} = Σ_j feedback[j] · s_{i+j}` for `count` more symbols and
/// returns only the new ones.
pub fn lfsr_extend(ctx: &FieldCtx, seed: &[Element], feedback: &[Element], count: usize) -> Result<Vec<Element>> {
    if seed.len() != feedback.len() {
        return Err(Error::LengthMismatch { expected: feedback.len(), found: seed.len() });
    }
    if seed.iter().all(Element::is_zero) {
        return Err(Error::AllZeroSeed);
    }
    let k = seed.len();
    let mut state: Vec<Element> = seed.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let next = state.iter().zip(feedback).fold(ctx.zero(), |acc, (s, f)| ctx.add(&acc, &ctx.mul(s, f)));
        out.push(next.clone());
        state.rotate_left(1);
        state[k - 1] = next;
    }
    Ok(out)
}

/// Smallest `r` with `b[i] = a[(r + i) mod len]` for all `i`.
pub fn shift_of<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    let len = a.len();
    if len == 0 {
        return Some(0);
    }
    (0..len).find(|&r| (0..len).all(|i| b[i] == a[(r + i) % len]))
}

/// Inserts one zero into the first maximal run of `window − 1` zeros,
/// turning a punctured sequence into a full one that also contains the
/// all-zero window.
///
/// Fails with `NoZeroRun` when no such run exists or when a run of
/// `window` zeros is already present.
pub fn lift_to_full(symbols: &[Element], window: usize) -> Result<Vec<Element>> {
    let len = symbols.len();
    if len == 0 || window == 0 || symbols.iter().all(Element::is_zero) {
        return Err(Error::NoZeroRun);
    }
    let zero = |i: usize| symbols[i % len].is_zero();
    let mut target = None;
    for start in 0..len {
        if !zero(start) || zero(start + len - 1) {
            continue;
        }
        let run = (0..len).take_while(|&k| zero(start + k)).count();
        if run >= window {
            return Err(Error::NoZeroRun);
        }
        if run == window - 1 && target.is_none() {
            target = Some(start);
        }
    }
    let at = match (window, target) {
        (1, _) => 0,
        (_, Some(at)) => at,
        (_, None) => return Err(Error::NoZeroRun),
    };
    let mut out = Vec::with_capacity(len + 1);
    out.extend_from_slice(&symbols[..at]);
    out.push(symbols[0].zeroed());
    out.extend_from_slice(&symbols[at..]);
    Ok(out)
}

impl DbSequence {
    /// `s_i = tr_{GF(p^n)/GF(p^m)}(λ α^i)`.
    pub fn new(ctx: &FieldCtx, m: usize, lambda: &Element) -> Result<Self> {
        Self::generate(ctx, ctx.n(), m, lambda)
    }

    /// The trace sequence of the canonical generator of the subfield
    /// `GF(p^d)` over `GF(p)` with `λ = 1` (e.g. `DB_β` for `β = α^t`).
    pub fn of_subfield(ctx: &FieldCtx, d: usize) -> Result<Self> {
        Self::generate(ctx, d, 1, &ctx.one())
    }

    /// General form: generator `g` of `GF(p^d)^×`, symbols in `GF(p^m)`,
    /// `λ ∈ GF(p^d)` nonzero.
    pub fn generate(ctx: &FieldCtx, d: usize, m: usize, lambda: &Element) -> Result<Self> {
        ctx.check_divisor(d)?;
        if m == 0 || !d.is_multiple_of(m) {
            return Err(Error::NotADivisor { divisor: m as u64, of: d as u64 });
        }
        if m == d {
            return Err(Error::NotProperTower);
        }
        if lambda.is_zero() {
            return Err(Error::ZeroForm);
        }
        if !ctx.in_subfield(d, lambda) {
            return Err(Error::NotInSubfield);
        }
        let generator = ctx.subfield_generator(d)?;
        let generator_exp = (ctx.group_order()) / (ctx.subfield_size(d) - 1);
        let len = (ctx.subfield_size(d) - 1) as usize;
        let mut symbols = Vec::with_capacity(len);
        let mut x = lambda.clone();
        for _ in 0..len {
            symbols.push(ctx.relative_trace(&x, d, m)?);
            x = ctx.mul(&x, &generator);
        }
        let mp = ctx.minimal_poly(m, &generator)?;
        let window = mp.degree();
        debug_assert_eq!(window, d / m);
        let feedback = mp.coeffs()[..window].iter().map(|c| ctx.neg(c)).collect();
        Ok(DbSequence {
            symbols,
            feedback,
            window,
            symbol_degree: m,
            source_degree: d,
            generator_exp,
            lambda: lambda.clone(),
        })
    }

    pub fn symbols(&self) -> &[Element] {
        &self.symbols
    }

    pub fn feedback(&self) -> &[Element] {
        &self.feedback
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Degree `m` of the symbol field.
    pub fn symbol_degree(&self) -> usize {
        self.symbol_degree
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// The generator is `α^generator_exp`.
    pub fn generator_exp(&self) -> u64 {
        self.generator_exp
    }

    pub fn lambda(&self) -> &Element {
        &self.lambda
    }

    /// Symbols as prime-field digits; `None` unless `m = 1`.
    pub fn digits(&self, ctx: &FieldCtx) -> Option<Vec<u32>> {
        self.symbols.iter().map(|s| ctx.as_scalar(s)).collect()
    }

    /// The recurrence holds at every cyclic index.
    pub fn satisfies_recurrence(&self, ctx: &FieldCtx) -> bool {
        let len = self.len();
        (0..len).all(|i| {
            let predicted = (0..self.window)
                .fold(ctx.zero(), |acc, k| ctx.add(&acc, &ctx.mul(&self.feedback[k], &self.symbols[(i + k) % len])));
            predicted == self.symbols[(i + self.window) % len]
        })
    }

    /// Cyclic windows of length `window`, starting at each index.
    pub fn windows(&self) -> Vec<Vec<Element>> {
        cyclic_windows(&self.symbols, self.window)
    }

    /// Every nonzero window occurs exactly once.
    pub fn windows_complete(&self) -> bool {
        let wins = self.windows();
        let nonzero = wins.iter().all(|w| w.iter().any(|e| !e.is_zero()));
        let distinct: BTreeSet<&Vec<Element>> = wins.iter().collect();
        nonzero && distinct.len() == wins.len()
    }

    pub fn lift_to_full(&self) -> Result<Vec<Element>> {
        lift_to_full(&self.symbols, self.window)
    }

    /// Expands each symbol into its coordinates over `GF(p)` in the basis
    /// `1, β, …, β^{m−1}` (`β` the canonical generator of `GF(p^m)`).
    /// With `full`, the sequence is lifted first.
    pub fn to_strip(&self, ctx: &FieldCtx, full: bool) -> Result<Strip> {
        let symbols = if full { self.lift_to_full()? } else { self.symbols.clone() };
        Strip::from_symbols(ctx, &symbols, self.symbol_degree, full)
    }
}

fn cyclic_windows<T: Clone>(symbols: &[T], window: usize) -> Vec<Vec<T>> {
    let len = symbols.len();
    (0..len).map(|i| (0..window).map(|k| symbols[(i + k) % len].clone()).collect()).collect()
}

/// A De Bruijn strip: `m` rows over `GF(p)`, column `j` = coordinates of
/// symbol `j`, top row = constant coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    full: bool,
}

impl Strip {
    pub fn from_symbols(ctx: &FieldCtx, symbols: &[Element], m: usize, full: bool) -> Result<Self> {
        let beta = ctx.subfield_generator(m)?;
        let p = ctx.p();
        // enumerate GF(p^m) once to invert the coordinate map
        let mut basis = vec![ctx.one()];
        for k in 1..m {
            basis.push(ctx.mul(&basis[k - 1], &beta));
        }
        let mut coords: BTreeMap<Element, Vec<u32>> = BTreeMap::new();
        let total = ctx.subfield_size(m);
        for idx in 0..total {
            let mut rest = idx;
            let digits: Vec<u32> = (0..m)
                .map(|_| {
                    let d = (rest % p as u64) as u32;
                    rest /= p as u64;
                    d
                })
                .collect();
            let value = digits.iter().zip(&basis).fold(ctx.zero(), |acc, (&c, b)| ctx.add(&acc, &ctx.scale(c, b)));
            coords.insert(value, digits);
        }
        let cols = symbols.len();
        let mut entries = vec![0u32; m * cols];
        for (j, s) in symbols.iter().enumerate() {
            let c = coords.get(s).ok_or(Error::NotInSubfield)?;
            for (i, &v) in c.iter().enumerate() {
                entries[i * cols + j] = v;
            }
        }
        Ok(Strip { rows: m, cols, entries, full })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// All `rows × width` blocks, cyclic in the column direction, each
    /// flattened row-major.
    pub fn windows(&self, width: usize) -> Vec<Vec<u32>> {
        (0..self.cols)
            .map(|j| {
                let mut block = Vec::with_capacity(self.rows * width);
                for r in 0..self.rows {
                    for k in 0..width {
                        block.push(self.get(r, (j + k) % self.cols));
                    }
                }
                block
            })
            .collect()
    }

    pub fn windows_distinct(&self, width: usize) -> bool {
        let wins = self.windows(width);
        let set: BTreeSet<&Vec<u32>> = wins.iter().collect();
        set.len() == wins.len()
    }

    pub fn contains_zero_block(&self, width: usize) -> bool {
        self.windows(width).iter().any(|w| w.iter().all(|&v| v == 0))
    }
}
