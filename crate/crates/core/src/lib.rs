//! Exact Hilbert series of Chow rings of polymatroids with arbitrary
//! building sets, Poincaré polynomials of `M̄_{0,n+1}`, and checks on
//! coefficient sequences.

pub mod braid;
pub mod building;
pub mod chow;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod polymatroid;
pub mod polynomial;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use polymatroid::{ElemSet, GroundSet, Polymatroid};
pub use polynomial::{Polynomial, TruncatedSeries};

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;
pub type RatSeries = TruncatedSeries<BigRational>;
