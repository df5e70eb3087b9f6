//! Text syntax for elements and subfield polynomials.
//!
//! Elements are written `poly:[c0,c1,...]` (power-basis coefficients) or
//! `pow:k` (the power `α^k`). Polynomials are `[e0, e1, ...]`, constant term
//! first, each coefficient in element syntax.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Element, FieldCtx};
use crate::subfield::SubfieldPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementStyle {
    Poly,
    /// `pow:k` for nonzero elements; zero still prints as `poly:[…]`.
    Power,
}

pub fn format_element(ctx: &FieldCtx, e: &Element, style: ElementStyle) -> String {
    if style == ElementStyle::Power && !e.is_zero() {
        if let Ok(k) = ctx.log(e) {
            return format!("pow:{k}");
        }
    }
    let digits: Vec<String> = e.coeffs().iter().map(u32::to_string).collect();
    format!("poly:[{}]", digits.join(","))
}

pub fn parse_element(ctx: &FieldCtx, text: &str) -> Result<Element> {
    let text = text.trim();
    if let Some(k) = text.strip_prefix("pow:") {
        let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
        return Ok(ctx.alpha_pow(k));
    }
    if let Some(body) = text.strip_prefix("poly:") {
        let body = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected poly:[...] in {text:?}")))?;
        let coeffs = body
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad digit {s:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        return ctx.element(&coeffs);
    }
    Err(Error::Parse(format!("unknown element syntax {text:?}")))
}

pub fn format_subfield_poly(ctx: &FieldCtx, poly: &SubfieldPoly, style: ElementStyle) -> String {
    let parts: Vec<String> = poly.coeffs().iter().map(|c| format_element(ctx, c, style)).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses a polynomial and checks every coefficient lies in `GF(p^m)`.
pub fn parse_subfield_poly(ctx: &FieldCtx, m: usize, text: &str) -> Result<SubfieldPoly> {
    let body = text
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [...] in {text:?}")))?;
    let mut coeffs = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                coeffs.push(parse_element(ctx, &body[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !body[start..].trim().is_empty() {
        coeffs.push(parse_element(ctx, &body[start..])?);
    }
    SubfieldPoly::new(ctx, m, coeffs)
}
