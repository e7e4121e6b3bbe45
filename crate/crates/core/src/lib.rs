//! Exact twisted-conjugacy witnesses for orthogonal and symplectic matrix
//! groups over rational function fields.
//!
//! Given `A` in `O_n`, `SO_n` or `Sp_2n` over `Q`, the engine builds a field
//! with a matrix `X` of fresh symbols and the substitution automorphism
//! `phi(X) = X A`, decomposes `X` by Gram-Schmidt, reduces to a normal form
//! `E` and returns a witness `X_tot` with `E phi(X_tot) = X_tot A`, all
//! verified by exact arithmetic.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decomp;
pub mod error;
pub mod field;
pub mod fieldmap;
pub mod matrix;
pub mod ratfunc;
pub mod tower;
pub mod twist;

pub use error::{Error, Result};
pub use field::{BaseField, Field};
