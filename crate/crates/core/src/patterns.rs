//! Sampling patterns on a torus.
//!
//! A pattern `S` picks cells of the grid; reading the torus through every
//! translate of `S` gives one vector in `GF(p)^{|S|}` per grid position. For
//! `|S| = n` those vectors are exactly the nonzero vectors, each once, if
//! and only if the elements `A|_S` form a basis of `GF(p^n)` over `GF(p)`.
//!
//! Cells are kept sorted row-major; every value vector read from or written
//! to a pattern uses that order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx};
use crate::linalg::{rank_of, Matrix};
use crate::torus::Torus;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    cells: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslateOffset {
    pub a: usize,
    pub b: usize,
}

impl TranslateOffset {
    pub fn new(a: usize, b: usize) -> Self {
        TranslateOffset { a, b }
    }
}

impl Pattern {
    /// Sorts and deduplicates the cells.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(cells: I) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = cells.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern { cells: set.into_iter().collect() })
    }

    /// Full `rows × cols` rectangle anchored at the origin.
    pub fn rectangle(rows: usize, cols: usize) -> Result<Self> {
        Self::new((0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))))
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, cell: (usize, usize)) -> Option<usize> {
        self.cells.binary_search(&cell).ok()
    }

    /// `(I, J)`: row and column extents, `max − min`.
    pub fn extents(&self) -> (usize, usize) {
        // cells are sorted by row, so rows come for free
        let rows = self.cells[self.cells.len() - 1].0 - self.cells[0].0;
        let max_j = self.cells.iter().map(|c| c.1).max().unwrap();
        let min_j = self.cells.iter().map(|c| c.1).min().unwrap();
        (rows, max_j - min_j)
    }

    /// Shifts the pattern so its smallest row and column are zero.
    pub fn normalized(&self) -> Pattern {
        let min_i = self.cells.iter().map(|c| c.0).min().unwrap();
        let min_j = self.cells.iter().map(|c| c.1).min().unwrap();
        Pattern::new(self.cells.iter().map(|&(i, j)| (i - min_i, j - min_j))).unwrap()
    }

    /// `T_{a,b}(S)` on a `s × t` torus.
    pub fn translate(&self, offset: TranslateOffset, s: usize, t: usize) -> Pattern {
        Pattern::new(self.cells.iter().map(|&(i, j)| ((i + offset.a) % s, (j + offset.b) % t))).unwrap()
    }

    pub fn is_disjoint(&self, other: &Pattern) -> bool {
        self.cells.iter().all(|c| other.position(*c).is_none())
    }

    pub fn union(&self, other: &Pattern) -> Pattern {
        Pattern::new(self.cells.iter().chain(other.cells.iter()).copied()).unwrap()
    }
}

/// Rank of field elements as vectors over `GF(p)`.
pub fn elements_rank(ctx: &FieldCtx, elements: &[Element]) -> usize {
    let rows: Vec<Vec<u32>> = elements.iter().map(|e| e.coeffs().to_vec()).collect();
    rank_of(ctx.p(), &rows)
}

/// The `m × (n/m)` rectangle whose elements `β^i γ^j` form a Kronecker basis
/// when `s = p^m − 1` and `gcd(s, t) = 1`.
pub fn kronecker_pattern(ctx: &FieldCtx, m: usize) -> Result<Pattern> {
    if m == 0 || !ctx.n().is_multiple_of(m) {
        return Err(Error::NotSubfieldRegime);
    }
    let s = ctx.subfield_size(m) - 1;
    let t = ctx.group_order() / s;
    if gcd(s, t) != 1 {
        return Err(Error::NotSubfieldRegime);
    }
    Pattern::rectangle(m, ctx.n() / m)
}

/// Searches `z = α^k` (smallest `k`) with `V ∩ zW = {0}`, where `V` and `W`
/// are spanned by the given elements. Returns `Ok(None)` only if the scan
/// exhausts the group.
pub fn lemma_witness(ctx: &FieldCtx, v: &[Element], w: &[Element]) -> Result<Option<u64>> {
    let dv = elements_rank(ctx, v);
    let dw = elements_rank(ctx, w);
    if dv + dw > ctx.n() {
        return Err(Error::DimensionExceeded { total: dv + dw, n: ctx.n() });
    }
    let mut rows: Vec<Vec<u32>> = v.iter().map(|e| e.coeffs().to_vec()).collect();
    let base = rows.len();
    let mut z = ctx.one();
    for k in 0..ctx.group_order() {
        rows.truncate(base);
        rows.extend(w.iter().map(|e| ctx.mul(&z, e).coeffs().to_vec()));
        if rank_of(ctx.p(), &rows) == dv + dw {
            return Ok(Some(k));
        }
        z = ctx.mul_alpha(&z);
    }
    Ok(None)
}

/// The isomorphism `Φ(z) = (ψ(x z))_{x ∈ A|_S}` for a basis pattern, in the
/// power basis, together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingCertificate {
    pub pattern: Pattern,
    pub basis_elements: Vec<Element>,
    pub phi: Matrix,
    pub phi_inverse: Matrix,
}

/// Which cells an [`UpdateMatrix`] produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpdateTarget {
    /// Every cell of the input pattern.
    Full,
    /// Only the cells of the shifted pattern not already covered.
    NewCells,
    /// Arbitrary cells, in the frame of the input pattern.
    Cells(Pattern),
}

/// Linear rule taking the value pattern at `x` to values at `x·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateMatrix {
    /// `(di mod s, dj mod t)` with `y = β^{di} γ^{dj}`.
    pub shift: (usize, usize),
    pub input: Pattern,
    /// Output cells, one per matrix row.
    pub outputs: Vec<(usize, usize)>,
    /// `|outputs| × |input|`; row `k` expands `y · A_{outputs[k]}` over `A|_input`.
    pub coeffs: Matrix,
    /// For `NewCells`: `(cell index, source index)` pairs of input cells whose
    /// new value is an old value moved over.
    pub carried: Vec<(usize, usize)>,
    target_is_new_cells: bool,
}

impl UpdateMatrix {
    /// Values of the output cells at `x·y` from the input values at `x`.
    pub fn apply(&self, values: &[u32]) -> Vec<u32> {
        self.coeffs.mul_vec(values)
    }

    /// Full input-pattern values at `x·y`; only for `Full` and `NewCells`.
    pub fn advance(&self, values: &[u32]) -> Option<Vec<u32>> {
        let computed = self.apply(values);
        if !self.target_is_new_cells {
            return (self.outputs.len() == self.input.len()
                && self.outputs.iter().zip(self.input.cells()).all(|(a, b)| a == b))
            .then_some(computed);
        }
        let mut out = alloc::vec![0u32; self.input.len()];
        for &(dst, src) in &self.carried {
            out[dst] = values[src];
        }
        for (cell, v) in self.outputs.iter().zip(computed) {
            out[self.input.position(*cell).expect("output cell of the input pattern")] = v;
        }
        Some(out)
    }
}

impl Torus<'_> {
    fn check_bounds(&self, pattern: &Pattern) -> Result<()> {
        if pattern.cells().iter().any(|&(i, j)| i >= self.s() || j >= self.t()) {
            return Err(Error::OutOfBounds);
        }
        Ok(())
    }

    /// `A|_S` in row-major cell order.
    pub fn elements_of(&self, pattern: &Pattern) -> Result<Vec<Element>> {
        self.check_bounds(pattern)?;
        Ok(pattern.cells().iter().map(|&(i, j)| self.element(i, j)).collect())
    }

    /// Value pattern `B|_{T_{a,b}(S)}`.
    pub fn read_pattern(&self, pattern: &Pattern, offset: TranslateOffset) -> Vec<u32> {
        pattern.cells().iter().map(|&(i, j)| self.value(i + offset.a, j + offset.b)).collect()
    }

    pub fn pattern_rank(&self, pattern: &Pattern) -> Result<usize> {
        Ok(elements_rank(self.field(), &self.elements_of(pattern)?))
    }

    pub fn is_independent(&self, pattern: &Pattern) -> Result<bool> {
        Ok(self.pattern_rank(pattern)? == pattern.len())
    }

    /// `|S| = n` and `A|_S` has full rank.
    pub fn is_basis(&self, pattern: &Pattern) -> Result<bool> {
        if pattern.len() != self.field().n() {
            self.check_bounds(pattern)?;
            return Ok(false);
        }
        self.is_independent(pattern)
    }

    /// Brute force over all `s·t` translates: true iff the value patterns
    /// are pairwise distinct and nonzero.
    pub fn verify_sampling(&self, pattern: &Pattern) -> Result<bool> {
        let n = self.field().n();
        if pattern.len() != n {
            return Err(Error::WrongSize { expected: n, found: pattern.len() });
        }
        self.check_bounds(pattern)?;
        let mut seen = BTreeSet::new();
        for a in 0..self.s() {
            for b in 0..self.t() {
                let v = self.read_pattern(pattern, TranslateOffset { a, b });
                if v.iter().all(|&x| x == 0) || !seen.insert(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Value pattern ↦ translate, by exhaustive enumeration.
    pub fn translate_table(&self, pattern: &Pattern) -> Result<BTreeMap<Vec<u32>, TranslateOffset>> {
        self.check_bounds(pattern)?;
        let mut table = BTreeMap::new();
        for a in 0..self.s() {
            for b in 0..self.t() {
                let off = TranslateOffset { a, b };
                table.entry(self.read_pattern(pattern, off)).or_insert(off);
            }
        }
        Ok(table)
    }

    pub fn certificate(&self, pattern: &Pattern) -> Result<SamplingCertificate> {
        if !self.is_basis(pattern)? {
            return Err(Error::NotABasis);
        }
        let ctx = self.field();
        let n = ctx.n();
        let basis_elements = self.elements_of(pattern)?;
        let mut phi = Matrix::zeros(ctx.p(), n, n);
        for (k, e) in basis_elements.iter().enumerate() {
            let mut y = e.clone();
            for c in 0..n {
                phi.set(k, c, self.form().eval(ctx, &y));
                y = ctx.mul_alpha(&y);
            }
        }
        let phi_inverse = phi.inverse().ok_or(Error::NotABasis)?;
        Ok(SamplingCertificate { pattern: pattern.clone(), basis_elements, phi, phi_inverse })
    }

    /// The unique translate whose value pattern equals `values`:
    /// `z = Φ^{-1}(values)`, then `log z = t·a + s·b` is split by CRT.
    pub fn decode(&self, certificate: &SamplingCertificate, values: &[u32]) -> Result<TranslateOffset> {
        let ctx = self.field();
        if values.len() != ctx.n() {
            return Err(Error::LengthMismatch { expected: ctx.n(), found: values.len() });
        }
        if values.iter().all(|&v| v == 0) {
            return Err(Error::AllZeroPattern);
        }
        if values.iter().any(|&v| v >= ctx.p()) {
            return Err(Error::MalformedElement);
        }
        let z = ctx.element(&certificate.phi_inverse.mul_vec(values))?;
        let (a, b) = self.position_of_exponent(ctx.log(&z)?);
        Ok(TranslateOffset { a, b })
    }

    /// First row-major `(a, b)` such that `T_{a,b}(S2)` avoids the cells of
    /// `S1` and `S1 ∪ T_{a,b}(S2)` is independent.
    pub fn find_extension_shift(&self, s1: &Pattern, s2: &Pattern) -> Result<TranslateOffset> {
        let n = self.field().n();
        let d1 = self.pattern_rank(s1)?;
        let d2 = self.pattern_rank(s2)?;
        if d1 + d2 > n {
            return Err(Error::DimensionExceeded { total: d1 + d2, n });
        }
        if d1 != s1.len() || d2 != s2.len() {
            return Err(Error::DependentPattern);
        }
        for a in 0..self.s() {
            for b in 0..self.t() {
                let offset = TranslateOffset { a, b };
                let moved = s2.translate(offset, self.s(), self.t());
                if !moved.is_disjoint(s1) {
                    continue;
                }
                if self.is_independent(&s1.union(&moved))? {
                    return Ok(offset);
                }
            }
        }
        Err(Error::NoValidShift)
    }

    /// Union of `n/m` translates of an independent `m`-cell pattern, the
    /// first being `S0` itself, each placed by [`Self::find_extension_shift`].
    pub fn recursive_build(&self, seed: &Pattern) -> Result<Pattern> {
        let n = self.field().n();
        let m = seed.len();
        if !n.is_multiple_of(m) {
            return Err(Error::NotADivisor { divisor: m as u64, of: n as u64 });
        }
        if !self.is_independent(seed)? {
            return Err(Error::DependentPattern);
        }
        let mut pattern = seed.clone();
        for _ in 1..n / m {
            let offset = self.find_extension_shift(&pattern, seed)?;
            pattern = pattern.union(&seed.translate(offset, self.s(), self.t()));
        }
        debug_assert!(self.is_basis(&pattern)?);
        Ok(pattern)
    }

    /// Update rule for the shift `y = β^{di} γ^{dj}` (one row down is
    /// `(1, 0)`, one column right is `(0, 1)`).
    pub fn update_matrix(&self, input: &Pattern, shift: (i64, i64), target: &UpdateTarget) -> Result<UpdateMatrix> {
        if !self.is_basis(input)? {
            return Err(Error::NotABasis);
        }
        let ctx = self.field();
        let (s, t) = (self.s(), self.t());
        let di = shift.0.rem_euclid(s as i64) as usize;
        let dj = shift.1.rem_euclid(t as i64) as usize;
        let moved = |&(i, j): &(usize, usize)| ((i + di) % s, (j + dj) % t);

        let mut carried = Vec::new();
        let outputs: Vec<(usize, usize)> = match target {
            UpdateTarget::Full => input.cells().to_vec(),
            UpdateTarget::NewCells => {
                let mut out = Vec::new();
                for (k, cell) in input.cells().iter().enumerate() {
                    match input.position(moved(cell)) {
                        Some(src) => carried.push((k, src)),
                        None => out.push(*cell),
                    }
                }
                out
            }
            UpdateTarget::Cells(p) => p.cells().to_vec(),
        };

        let basis: Vec<Vec<u32>> = self.elements_of(input)?.iter().map(|e| e.coeffs().to_vec()).collect();
        // columns are the basis elements; its inverse gives coordinates
        let to_coords = Matrix::from_rows(ctx.p(), &basis).transpose().inverse().ok_or(Error::NotABasis)?;
        let mut coeffs = Matrix::zeros(ctx.p(), outputs.len(), input.len());
        for (row, cell) in outputs.iter().enumerate() {
            let (i, j) = moved(cell);
            let target_elem = self.element(i, j);
            let c = to_coords.mul_vec(target_elem.coeffs());
            for (col, v) in c.into_iter().enumerate() {
                coeffs.set(row, col, v);
            }
        }
        Ok(UpdateMatrix {
            shift: (di, dj),
            input: input.clone(),
            outputs,
            coeffs,
            carried,
            target_is_new_cells: matches!(target, UpdateTarget::NewCells),
        })
    }
}
