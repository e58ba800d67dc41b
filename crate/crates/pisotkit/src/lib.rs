//! Certified arbitrary-precision toolkit for the distribution of
//! (alpha * zeta^n) mod 1: approximation constants sigma_n, Pisot number
//! certification, theorem-level bound reports, and the explicit extremal
//! constructions, all over rigorous dyadic ball arithmetic.

pub mod constructions;
pub mod dioph;
pub mod error;
pub mod exactreal;
pub(crate) mod numberfield;
pub mod pisot;
pub mod polyalg;
pub mod sigma;

pub use error::{Error, Result};
pub use exactreal::{
    exact_hit_test, nearest_int, refine_until_certified, Dyadic, Enclosure, NearestIntResult,
    PrecisionPolicy, SymbolicReal,
};
pub use polyalg::{IntPoly, RootSpectrum};
