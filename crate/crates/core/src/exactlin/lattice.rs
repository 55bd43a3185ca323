//! Integer lattices: Hermite normal form, containment and index.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, RatMatrix, Rational};
use crate::error::{Error, Result};

/// Row-style Hermite normal form. Returns only the nonzero rows; pivots are
/// positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let mut m: Vec<Vec<Integer>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            // smallest nonzero magnitude in column c at or below row r
            let Some(best) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()))
            else {
                break;
            };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = m[r].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&pivot_row[c]);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// A Z-lattice given by linearly independent integer basis rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    ambient: usize,
    basis: Vec<Vec<Integer>>,
}

impl IntLattice {
    /// Lattice with the given basis; rejects dependent rows.
    pub fn new(ambient: usize, basis: Vec<Vec<Integer>>) -> Result<Self> {
        if basis.iter().any(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch("basis row length".into()));
        }
        if hnf(&basis).len() != basis.len() {
            return Err(Error::RankMismatch("basis rows are linearly dependent".into()));
        }
        Ok(IntLattice { ambient, basis })
    }

    /// Lattice spanned by arbitrary generators, stored with its HNF basis.
    pub fn span(ambient: usize, generators: &[Vec<Integer>]) -> Result<Self> {
        if generators.iter().any(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        Ok(IntLattice { ambient, basis: hnf(generators) })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let ambient = rows.first().map_or(0, |r| r.len());
        Self::new(ambient, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Integer>] {
        &self.basis
    }

    pub fn hnf_basis(&self) -> Vec<Vec<Integer>> {
        hnf(&self.basis)
    }

    fn as_rat(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.basis.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect(),
        )
        .unwrap_or_else(|_| RatMatrix::zeros(0, self.ambient))
    }

    /// Integer coordinates of `other`'s basis in terms of this basis, or
    /// `NotContained` if some vector is not an integral combination.
    pub fn coordinates_of(&self, other: &IntLattice) -> Result<RatMatrix> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("ambient dimensions differ".into()));
        }
        if other.rank() == 0 {
            return Ok(RatMatrix::zeros(0, self.rank()));
        }
        if self.rank() == 0 {
            return Err(Error::NotContained);
        }
        let sup_t = self.as_rat().transpose();
        let sub_t = other.as_rat().transpose();
        let x = sup_t.solve_left_cols(&sub_t)?.ok_or(Error::NotContained)?;
        if !x.is_integral() {
            return Err(Error::NotContained);
        }
        Ok(x.transpose())
    }
}

/// `|sup / sub|` for lattices of equal rank with `sub` contained in `sup`.
pub fn hnf_and_index(sub: &IntLattice, sup: &IntLattice) -> Result<Integer> {
    if sub.rank() != sup.rank() {
        return Err(Error::RankMismatch(format!("sub has rank {}, sup has rank {}", sub.rank(), sup.rank())));
    }
    let coords = sup.coordinates_of(sub)?;
    let rows: Vec<Vec<Integer>> =
        (0..coords.rows()).map(|i| coords.row(i).iter().map(|x| x.to_integer()).collect()).collect();
    let h = hnf(&rows);
    if h.len() != sub.rank() {
        return Err(Error::RankMismatch("coordinate matrix is singular".into()));
    }
    Ok(h.iter().enumerate().map(|(i, r)| r[i].clone()).fold(BigInt::one(), |a, b| a * b))
}

/// Determinant of a Gram matrix.
pub fn gram_det(gram: &RatMatrix) -> Result<Rational> {
    gram.det()
}
