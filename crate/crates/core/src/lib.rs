//! Exact heights, generalized gcds, almost S-units, Hilbert-function combinatorics and
//! power-sum algebra over the rationals.

pub mod arith;
pub mod error;
pub mod gengcd;
pub mod harness;
pub mod heights;
pub mod hilbert;
pub mod interval;
pub mod linalg;
pub mod logreal;
pub mod lrs;
pub mod multipoly;
pub mod places;

pub use error::{Error, Result};
pub use logreal::LogReal;
pub use places::{log_abs, parse_rational, support, valuation, Place, PlaceSet};

pub type Rational = num_rational::BigRational;

/// Default working precision in bits for certified comparisons.
pub const DEFAULT_PREC: u32 = 128;
