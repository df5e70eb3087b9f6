//! Polynomials over a subfield `GF(p^m) ⊂ GF(p^n)`, minimal polynomials and
//! the orbit factorisation of `x^t − 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx};

/// Polynomial whose coefficients (low-to-high) lie in `GF(p^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldPoly {
    sub_degree: usize,
    coeffs: Vec<Element>,
}

impl SubfieldPoly {
    /// Checks `m | n` and that each coefficient is fixed by `x ↦ x^{p^m}`.
    pub fn new(ctx: &FieldCtx, m: usize, coeffs: Vec<Element>) -> Result<Self> {
        ctx.check_divisor(m)?;
        if coeffs.iter().any(|c| c.coeffs().len() != ctx.n()) {
            return Err(Error::MalformedElement);
        }
        if !coeffs.iter().all(|c| ctx.in_subfield(m, c)) {
            return Err(Error::NotInSubfield);
        }
        Ok(SubfieldPoly { sub_degree: m, coeffs })
    }

    pub fn sub_degree(&self) -> usize {
        self.sub_degree
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^{d−1}`.
    pub fn second_leading(&self) -> Option<&Element> {
        self.coeffs.len().checked_sub(2).map(|i| &self.coeffs[i])
    }

    pub fn eval(&self, ctx: &FieldCtx, x: &Element) -> Element {
        self.coeffs.iter().rev().fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &SubfieldPoly) -> SubfieldPoly {
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        SubfieldPoly { sub_degree: self.sub_degree.min(other.sub_degree), coeffs: out }
    }
}

/// Monic `Π (x − r)` over the given roots.
fn product_of_linears(ctx: &FieldCtx, m: usize, roots: &[Element]) -> SubfieldPoly {
    let mut coeffs = vec![ctx.one()];
    for r in roots {
        let neg = ctx.neg(r);
        let mut next = vec![ctx.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(&next[i + 1], c);
            next[i] = ctx.add(&next[i], &ctx.mul(c, &neg));
        }
        coeffs = next;
    }
    SubfieldPoly { sub_degree: m, coeffs }
}

/// Cosets of multiplication by `q` acting on `Z/t`, each sorted, listed by
/// smallest member.
pub fn cyclotomic_cosets(q: u64, t: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; t as usize];
    let mut cosets = Vec::new();
    for start in 0..t {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut e = start;
        while !seen[e as usize] {
            seen[e as usize] = true;
            coset.push(e);
            e = ((e as u128 * q as u128) % t as u128) as u64;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    cosets
}

/// One irreducible factor of `x^t − 1` over `GF(p^m)` with the coset of
/// exponents of `γ` that are its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFactor {
    pub coset: Vec<u64>,
    pub poly: SubfieldPoly,
}

impl FieldCtx {
    /// Minimal polynomial of `a` over `GF(p^m)`: product of `x − a^{p^{mi}}`
    /// over the Frobenius orbit of `a`.
    pub fn minimal_poly(&self, m: usize, a: &Element) -> Result<SubfieldPoly> {
        self.check_divisor(m)?;
        let mut orbit = vec![a.clone()];
        let mut y = self.frobenius_pow(a, m);
        while y != *a {
            orbit.push(y.clone());
            y = self.frobenius_pow(&y, m);
        }
        Ok(product_of_linears(self, m, &orbit))
    }

    /// Factors `x^t − 1` over `GF(p^m)` with `γ = α^{(p^n−1)/t}`, one factor
    /// per coset of multiplication by `p^m` modulo `t`.
    pub fn factor_unity(&self, m: usize, t: u64) -> Result<Vec<OrbitFactor>> {
        self.check_divisor(m)?;
        let order = self.group_order();
        if t == 0 || !order.is_multiple_of(t) {
            return Err(Error::NotADivisor { divisor: t, of: order });
        }
        let gamma_exp = (order / t) as i64;
        let q = self.subfield_size(m) % t;
        let factors = cyclotomic_cosets(q, t)
            .into_iter()
            .map(|coset| {
                let roots: Vec<Element> = coset.iter().map(|&e| self.alpha_pow(gamma_exp * e as i64)).collect();
                let poly = product_of_linears(self, m, &roots);
                OrbitFactor { coset, poly }
            })
            .collect();
        Ok(factors)
    }
}
