//! Exact computations with Drinfeld associators, the Grothendieck–Teichmüller
//! groups GT₁ and GRT₁, and the braid group representations they act on.
//!
//! Everything is exact: coefficients are rationals, polynomials over ℚ in
//! named symbols, or multiquadratic surds. Series are truncated at an explicit
//! degree and carry the degree through which they are known.

pub mod associator;
pub mod braid;
pub mod check;
pub mod characters;
pub mod coeff;
pub mod error;
pub mod grt;
pub mod hecke;
pub mod holonomy;
pub mod kz;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod series;
pub mod text;

pub use coeff::{Coeff, Rational, Surd, SymCoef};
pub use error::{Error, Result};
pub use series::{Alphabet, NCSeries, Word};
