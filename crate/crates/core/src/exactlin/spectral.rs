//! Characteristic and minimal polynomials, and the squarefree test that
//! turns a minimal polynomial into a semi-simplicity certificate.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{RatMatrix, RatPoly, Rational};
use crate::error::{Error, Result};

/// `det(x*I - m)` via reduction to upper Hessenberg form over Q.
pub fn charpoly(m: &RatMatrix) -> Result<RatPoly> {
    let n = m.require_square()?;
    let h = hessenberg(m);
    // p[k] is the charpoly of the leading k x k block.
    let mut p: Vec<RatPoly> = Vec::with_capacity(n + 1);
    p.push(RatPoly::one());
    for k in 1..=n {
        let diag = h.get(k - 1, k - 1).clone();
        let mut pk = &RatPoly::linear_root(diag) * &p[k - 1];
        let mut t = Rational::one();
        for i in 1..k {
            t *= h.get(k - i, k - i - 1);
            let c = h.get(k - i - 1, k - 1);
            if t.is_zero() {
                break;
            }
            if c.is_zero() {
                continue;
            }
            pk = &pk - &p[k - i - 1].scale(&(c * &t));
        }
        p.push(pk);
    }
    Ok(p.pop().unwrap())
}

/// Similarity transform to upper Hessenberg form.
fn hessenberg(m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| !h.get(i, col).is_zero()) else {
            continue;
        };
        if i != piv_row {
            for j in 0..n {
                let a = h.get(i, j).clone();
                let b = h.get(piv_row, j).clone();
                h.set(i, j, b);
                h.set(piv_row, j, a);
            }
            for r in 0..n {
                let a = h.get(r, i).clone();
                let b = h.get(r, piv_row).clone();
                h.set(r, i, b);
                h.set(r, piv_row, a);
            }
        }
        let pivot = h.get(piv_row, col).clone();
        for i in piv_row + 1..n {
            if h.get(i, col).is_zero() {
                continue;
            }
            let u = h.get(i, col) / &pivot;
            for j in 0..n {
                let v = h.get(i, j) - &u * h.get(piv_row, j);
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = h.get(r, piv_row) + &u * h.get(r, i);
                h.set(r, piv_row, v);
            }
        }
    }
    h
}

/// Monic annihilating polynomial of least degree.
///
/// Found as the first linear dependency among `I, m, m^2, ...` flattened
/// into vectors.
pub fn minpoly(m: &RatMatrix) -> Result<RatPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(RatPoly::one());
    }
    let mut powers = Vec::with_capacity(n + 1);
    let mut cur = RatMatrix::identity(n);
    for _ in 0..=n {
        powers.push(cur.entries().to_vec());
        cur = cur.checked_mul(m)?;
    }
    let krylov = RatMatrix::from_columns(n * n, &powers)?;
    let (r, pivots) = krylov.rref();
    let d = (0..=n).find(|c| !pivots.contains(c)).ok_or_else(|| {
        Error::Internal("Cayley-Hamilton violated: no dependency among n+1 powers".into())
    })?;
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[d] = Rational::one();
    for (row, &p) in pivots.iter().enumerate() {
        if p < d {
            coeffs[p] = -r.get(row, d).clone();
        }
    }
    Ok(RatPoly::new(coeffs))
}

/// Result of the squarefree test: `gcd(f, f')` is the witness either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeWitness {
    pub squarefree: bool,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub gcd: RatPoly,
}

pub fn is_squarefree(f: &RatPoly) -> Result<SquarefreeWitness> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = RatPoly::gcd(f, &f.derivative());
    Ok(SquarefreeWitness { squarefree: g.degree() == Some(0), gcd: g })
}
