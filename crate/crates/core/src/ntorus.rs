//! N-dimensional tori from pairwise coprime factorisations `P_1 ⋯ P_N = p^n − 1`.
//!
//! Index `(i_1, …, i_N)` holds `Π β_j^{i_j}` with `β_j = α^{P̂_j}`,
//! `P̂_j = Π_{k≠j} P_k`. Layout is row-major, last index fastest.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx, LinearForm};
use crate::linalg::rank_of;
use crate::torus::Torus;

#[derive(Clone, Debug)]
pub struct NTorus<'f> {
    ctx: &'f FieldCtx,
    dims: Vec<usize>,
    cofactors: Vec<u64>,
    exponents: Vec<u64>,
    values: Vec<u32>,
    form: LinearForm,
}

impl<'f> NTorus<'f> {
    pub fn new(ctx: &'f FieldCtx, dims: &[usize], form: &LinearForm) -> Result<Self> {
        for (a, &x) in dims.iter().enumerate() {
            for &y in &dims[a + 1..] {
                if gcd(x as u64, y as u64) != 1 {
                    return Err(Error::NotCoprime);
                }
            }
        }
        let order = ctx.group_order();
        let product = dims.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64));
        if dims.is_empty() || product != Some(order) {
            return Err(Error::BadProduct);
        }
        if form.lambda().is_zero() {
            return Err(Error::ZeroForm);
        }
        let cofactors: Vec<u64> = dims.iter().map(|&d| order / d as u64).collect();

        let mut by_exponent = Vec::with_capacity(order as usize);
        let mut x = ctx.one();
        for _ in 0..order {
            by_exponent.push(form.eval(ctx, &x));
            x = ctx.mul_alpha(&x);
        }

        let len = order as usize;
        let mut exponents = Vec::with_capacity(len);
        let mut index = vec![0usize; dims.len()];
        for _ in 0..len {
            let e = index.iter().zip(&cofactors).fold(0u64, |acc, (&i, &c)| (acc + i as u64 * c) % order);
            exponents.push(e);
            // odometer, last axis fastest
            for axis in (0..dims.len()).rev() {
                index[axis] += 1;
                if index[axis] < dims[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
        let values = exponents.iter().map(|&e| by_exponent[e as usize]).collect();
        let torus = NTorus { ctx, dims: dims.to_vec(), cofactors, exponents, values, form: form.clone() };
        debug_assert!(torus.exponents_are_bijective());
        Ok(torus)
    }

    /// The 2-D torus `(s, t)` seen as an N-torus with two axes.
    pub fn from_torus(torus: &Torus<'f>) -> Result<Self> {
        Self::new(torus.field(), &[torus.s(), torus.t()], torus.form())
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.ctx
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Row-major values.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `β_j = α^{P̂_j}`.
    pub fn generator(&self, axis: usize) -> Element {
        self.ctx.alpha_pow(self.cofactors[axis] as i64)
    }

    /// Flat offset of an index, each coordinate taken modulo its dimension.
    pub fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i % d)
    }

    pub fn index_of(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            index[axis] = flat % self.dims[axis];
            flat /= self.dims[axis];
        }
        index
    }

    pub fn exponent(&self, index: &[usize]) -> u64 {
        self.exponents[self.flat_index(index)]
    }

    pub fn value(&self, index: &[usize]) -> u32 {
        self.values[self.flat_index(index)]
    }

    pub fn element(&self, index: &[usize]) -> Element {
        self.ctx.alpha_pow(self.exponent(index) as i64)
    }

    /// Inverse of the exponent map: `i_j = k · P̂_j^{-1} mod P_j`.
    pub fn position_of_exponent(&self, k: u64) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.cofactors)
            .map(|(&d, &c)| {
                let d = d as u64;
                let inv = mod_inverse(c % d, d).expect("coprime dims");
                ((k % d) as u128 * inv as u128 % d as u128) as usize
            })
            .collect()
    }

    pub fn exponents_are_bijective(&self) -> bool {
        let mut seen = vec![false; self.exponents.len()];
        self.exponents.iter().all(|&e| !core::mem::replace(&mut seen[e as usize], true))
    }

    fn check_pattern(&self, pattern: &[Vec<usize>]) -> Result<()> {
        let ok = pattern.iter().all(|c| c.len() == self.dims.len() && c.iter().zip(&self.dims).all(|(&i, &d)| i < d));
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfBounds)
        }
    }

    pub fn read_pattern(&self, pattern: &[Vec<usize>], offset: &[usize]) -> Vec<u32> {
        let mut cell = vec![0; self.dims.len()];
        pattern
            .iter()
            .map(|c| {
                for (k, x) in cell.iter_mut().enumerate() {
                    *x = c[k] + offset[k];
                }
                self.value(&cell)
            })
            .collect()
    }

    /// Rank test: `|S| = n` and the elements at `S` are independent.
    pub fn is_basis(&self, pattern: &[Vec<usize>]) -> Result<bool> {
        self.check_pattern(pattern)?;
        let distinct: BTreeSet<&Vec<usize>> = pattern.iter().collect();
        if pattern.len() != self.ctx.n() || distinct.len() != pattern.len() {
            return Ok(false);
        }
        let rows: Vec<Vec<u32>> = pattern.iter().map(|c| self.element(c).coeffs().to_vec()).collect();
        Ok(rank_of(self.ctx.p(), &rows) == self.ctx.n())
    }

    /// Brute force over every translate: true iff the value vectors are
    /// pairwise distinct and nonzero.
    pub fn verify_sampling(&self, pattern: &[Vec<usize>]) -> Result<bool> {
        let n = self.ctx.n();
        if pattern.len() != n {
            return Err(Error::WrongSize { expected: n, found: pattern.len() });
        }
        self.check_pattern(pattern)?;
        let mut seen = BTreeSet::new();
        for flat in 0..self.len() {
            let v = self.read_pattern(pattern, &self.index_of(flat));
            if v.iter().all(|&x| x == 0) || !seen.insert(v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Scans cells in row-major order, keeping each one that raises the rank,
    /// until `n` cells are found.
    pub fn greedy_basis_pattern(&self) -> Vec<Vec<usize>> {
        let n = self.ctx.n();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut cells = Vec::new();
        for flat in 0..self.len() {
            if cells.len() == n {
                break;
            }
            let index = self.index_of(flat);
            rows.push(self.element(&index).coeffs().to_vec());
            if rank_of(self.ctx.p(), &rows) == rows.len() {
                cells.push(index);
            } else {
                rows.pop();
            }
        }
        cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_errors() {
        let f = FieldCtx::new(2, 4).unwrap();
        let tr = LinearForm::trace(&f);
        assert_eq!(NTorus::new(&f, &[3, 6], &tr).unwrap_err(), Error::NotCoprime);
        assert_eq!(NTorus::new(&f, &[3, 7], &tr).unwrap_err(), Error::BadProduct);
        assert_eq!(NTorus::new(&f, &[], &tr).unwrap_err(), Error::BadProduct);
    }

    #[test]
    fn two_axes_match_the_planar_torus() {
        let f = FieldCtx::new(2, 4).unwrap();
        let tr = LinearForm::trace(&f);
        let planar = Torus::new(&f, 3, 5, &tr).unwrap();
        let nt = NTorus::from_torus(&planar).unwrap();
        assert_eq!(nt.values(), planar.values());
        assert_eq!(nt.exponents(), planar.exponents());
        for k in 0..15 {
            let idx = nt.position_of_exponent(k);
            assert_eq!(nt.exponent(&idx), k);
        }
    }

    #[test]
    fn index_round_trip() {
        let f = FieldCtx::new(2, 6).unwrap();
        let nt = NTorus::new(&f, &[7, 9], &LinearForm::trace(&f)).unwrap();
        for flat in 0..nt.len() {
            assert_eq!(nt.flat_index(&nt.index_of(flat)), flat);
        }
        let basis = nt.greedy_basis_pattern();
        assert_eq!(basis.len(), 6);
        assert!(nt.is_basis(&basis).unwrap());
        assert!(nt.verify_sampling(&basis).unwrap());
        assert_eq!(nt.verify_sampling(&basis[..2]).unwrap_err(), Error::WrongSize { expected: 6, found: 2 });
    }
}
