//! Exact linear algebra over Q and Z.

use num_bigint::BigInt;
use num_rational::BigRational;

mod lattice;
mod matrix;
mod poly;
mod spectral;
mod sturm;

pub use lattice::{gram_det, hnf, hnf_and_index, IntLattice};
pub use matrix::RatMatrix;
pub use poly::{IntPoly, RatPoly};
pub use spectral::{charpoly, is_squarefree, minpoly, SquarefreeWitness};
pub use sturm::{isolate_real_roots, sturm_count, Endpoint, QuadRingElem, SturmSequence};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Serialize a polynomial as its comma-separated coefficient string.
pub(crate) fn serde_poly<S: serde::Serializer>(p: &RatPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.coeff_string())
}

/// Serialize a big integer as a decimal string.
pub(crate) fn serde_int<S: serde::Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serialize a rational as `"p/q"` (or `"p"`).
pub(crate) fn serde_rat<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Integer matrix entry.
pub fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}
