//! Trace-based De Bruijn sequences, strips and tori over finite fields.
//!
//! Every nonzero element of `GF(p^n)` is a power of a primitive element `α`.
//! Projecting `α^k` through a nonzero linear form `ψ: GF(p^n) → GF(p)` gives a
//! nonzero De Bruijn sequence; arranging the exponents on an `s × t` grid with
//! `β = α^t`, `γ = α^s` (and `gcd(s, t) = 1`) gives a De Bruijn torus. This
//! crate builds those objects, checks sampling patterns on them, classifies
//! torus columns through the factorisation of `x^t − 1`, derives linear update
//! rules and decodes observed windows back to grid coordinates.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use dbtorus_core::{FieldCtx, LinearForm, Torus};
//!
//! let field = FieldCtx::new(2, 4).unwrap();
//! let torus = Torus::new(&field, 3, 5, &LinearForm::trace(&field)).unwrap();
//! assert_eq!(torus.row(0), &[0, 1, 1, 1, 1]);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod arith;
mod error;
mod field;
mod linalg;
mod notation;
mod poly;
mod subfield;

pub mod dbseq;
pub mod ntorus;
pub mod patterns;
pub mod torus;

pub use arith::{factor_u64, gcd, is_prime, mod_inverse};
pub use error::{Error, Result};
pub use field::{find_primitive_modulus, Element, FieldCtx, LinearForm, DEFAULT_TABLE_CAP};
pub use linalg::Matrix;
pub use notation::{format_element, format_subfield_poly, parse_element, parse_subfield_poly, ElementStyle};
pub use subfield::{cyclotomic_cosets, OrbitFactor, SubfieldPoly};

pub use dbseq::{DbSequence, Strip};
pub use ntorus::NTorus;
pub use patterns::{Pattern, SamplingCertificate, TranslateOffset, UpdateMatrix, UpdateTarget};
pub use torus::{ColumnLabel, ColumnReport, ExtendedGrid, OccurrenceCounts, Torus};
