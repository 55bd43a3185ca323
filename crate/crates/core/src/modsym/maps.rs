//! Modular symbols `{alpha, beta}` between cusps, the Atkin-Lehner
//! involution and the degeneracy maps between levels.

use num_traits::Zero;

use super::space::{lift_to_sl2, ModSymSpace};
use crate::exactlin::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Coordinates of `{0, u/v}` via the continued fraction of `u/v`.
///
/// With convergents `p_j/q_j` (and `p_{-2}/q_{-2} = 0/1`,
/// `p_{-1}/q_{-1} = 1/0`) the symbol is the sum of the Manin symbols
/// `((-1)^(j-1) q_j : q_{j-1})` for `j = -1..r`.
pub fn zero_to_cusp(space: &ModSymSpace, u: i64, v: i64) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); space.dim()];
    let mut add = |c: i64, d: i64| {
        if let Some(i) = space.p1().index(c, d) {
            for (k, x) in space.symbol_coords(i) {
                acc[*k] += x;
            }
        }
    };
    // j = -1 term is {0, oo} = (0 : 1)
    add(0, 1);
    if v == 0 {
        return acc;
    }
    let (mut u, mut v) = if v < 0 { (-u, -v) } else { (u, v) };
    let (mut q_prev2, mut q_prev) = (1i64, 0i64);
    let mut sign = -1i64; // (-1)^(j-1) at j = 0
    loop {
        let a = u.div_euclid(v);
        let q = a * q_prev + q_prev2;
        add(sign * q, q_prev);
        let r = u - a * v;
        if r == 0 {
            break;
        }
        (u, v) = (v, r);
        (q_prev2, q_prev) = (q_prev, q);
        sign = -sign;
    }
    acc
}

/// Coordinates of `{a, b}` for cusps given as `(num, den)`.
pub fn cusp_symbol(space: &ModSymSpace, a: (i64, i64), b: (i64, i64)) -> Vec<Rational> {
    let to_b = zero_to_cusp(space, b.0, b.1);
    let to_a = zero_to_cusp(space, a.0, a.1);
    to_b.into_iter().zip(to_a).map(|(x, y)| x - y).collect()
}

/// Matrix of `{alpha, beta} -> {m alpha, m beta}` from `from` to `to`, for an
/// integer matrix `m` that normalizes the groups appropriately.
fn moebius_map(from: &ModSymSpace, to: &ModSymSpace, m: [i64; 4]) -> RatMatrix {
    let [ma, mb, mc, md] = m;
    let act = |num: i64, den: i64| (ma * num + mb * den, mc * num + md * den);
    let cols: Vec<Vec<Rational>> = from
        .basis_symbols()
        .iter()
        .map(|&i| {
            let e = from.p1().get(i);
            let [a, b, c, d] = lift_to_sl2(from.level(), e.c, e.d);
            cusp_symbol(to, act(b, d), act(a, c))
        })
        .collect();
    RatMatrix::from_columns(to.dim(), &cols).expect("columns have the target dimension")
}

/// The involution `z -> -1/(Nz)` on the full space.
pub fn atkin_lehner_full(space: &ModSymSpace) -> RatMatrix {
    moebius_map(space, space, [0, -1, space.level() as i64, 0])
}

/// The Atkin-Lehner involution restricted to the cuspidal +-subspace.
pub fn atkin_lehner(space: &ModSymSpace) -> Result<RatMatrix> {
    space.restrict_to_plus(&atkin_lehner_full(space))
}

fn check_divides(low: &ModSymSpace, high: &ModSymSpace) -> Result<u64> {
    if high.level() % low.level() != 0 {
        return Err(Error::InvalidInput(format!("{} does not divide {}", low.level(), high.level())));
    }
    Ok(high.level() / low.level())
}

/// `{alpha, beta}` at level M viewed at level N (N | M), on full spaces.
pub fn degeneracy_down(high: &ModSymSpace, low: &ModSymSpace) -> Result<RatMatrix> {
    check_divides(low, high)?;
    let cols: Vec<Vec<Rational>> = high
        .basis_symbols()
        .iter()
        .map(|&i| {
            let e = high.p1().get(i);
            low.manin_vector(e.c as i64, e.d as i64)
        })
        .collect();
    RatMatrix::from_columns(low.dim(), &cols)
}

/// Pullback from level N to level M (N | M): each Manin symbol goes to the
/// sum of the symbols above it.
pub fn degeneracy_up(low: &ModSymSpace, high: &ModSymSpace) -> Result<RatMatrix> {
    check_divides(low, high)?;
    let mut cols = vec![vec![Rational::zero(); high.dim()]; low.dim()];
    let col_of: std::collections::BTreeMap<usize, usize> =
        low.basis_symbols().iter().enumerate().map(|(j, &i)| (i, j)).collect();
    for (idx, e) in high.p1().elements().iter().enumerate() {
        let Some(below) = low.p1().index(e.c as i64, e.d as i64) else { continue };
        let Some(&j) = col_of.get(&below) else { continue };
        for (k, x) in high.symbol_coords(idx) {
            cols[j][*k] += x;
        }
    }
    RatMatrix::from_columns(high.dim(), &cols)
}

/// Embedding of the cuspidal +-space of level N into that of level M
/// realizing `f(z) -> f(dz)`, in +-coordinates (`g_M x g_N`).
///
/// For `d = 1` this is the pullback; otherwise it is conjugated by the
/// Atkin-Lehner involutions at levels N and dN, and pulled back to M.
pub fn degeneracy_old_embedding(low: &ModSymSpace, high: &ModSymSpace, d: u64) -> Result<RatMatrix> {
    let ratio = check_divides(low, high)?;
    if d == 0 || ratio % d != 0 {
        return Err(Error::InvalidInput(format!("{d} does not divide {ratio}")));
    }
    let full = if d == 1 {
        degeneracy_up(low, high)?
    } else {
        let mid_owned;
        let mid = if d == ratio {
            high
        } else {
            mid_owned = ModSymSpace::new(low.level() * d)?;
            &mid_owned
        };
        let up = degeneracy_up(low, mid)?;
        let twisted = atkin_lehner_full(mid).checked_mul(&up)?.checked_mul(&atkin_lehner_full(low))?;
        if d == ratio {
            twisted
        } else {
            degeneracy_up(mid, high)?.checked_mul(&twisted)?
        }
    };
    high.plus_coordinates(&full.checked_mul(low.plus_basis())?)
}

/// Independent columns spanning the column space.
pub fn column_space(m: &RatMatrix) -> RatMatrix {
    let (_, pivots) = m.rref();
    m.select_cols(&pivots)
}

/// The part of the cuspidal +-space of level M coming from level N, as a
/// basis in +-coordinates: the span of the images of `f(dz)` for all
/// `d | M/N`.
pub fn old_subspace(low: &ModSymSpace, high: &ModSymSpace) -> Result<RatMatrix> {
    let ratio = check_divides(low, high)?;
    let mut all = RatMatrix::zeros(high.plus_dim(), 0);
    for d in crate::arith::divisors(ratio) {
        all = all.hstack(&degeneracy_old_embedding(low, high, d)?)?;
    }
    Ok(column_space(&all))
}

/// The p-new part of the cuspidal +-space of level M (p | M): common kernel
/// of the two degeneracy maps to level M/p, in +-coordinates.
pub fn p_new_subspace(high: &ModSymSpace, low: &ModSymSpace) -> Result<RatMatrix> {
    let ratio = check_divides(low, high)?;
    if !crate::arith::is_prime(ratio) {
        return Err(Error::InvalidInput(format!("level ratio {ratio} is not prime")));
    }
    let down = degeneracy_down(high, low)?;
    let plus = high.plus_basis();
    let a1 = down.checked_mul(plus)?;
    let ap = down.checked_mul(&atkin_lehner_full(high))?.checked_mul(plus)?;
    Ok(a1.vstack(&ap)?.kernel().0)
}

/// Matrix of `op` on the invariant subspace spanned by the columns of `basis`.
pub fn restrict(op: &RatMatrix, basis: &RatMatrix) -> Result<RatMatrix> {
    if basis.cols() == 0 {
        return Ok(RatMatrix::zeros(0, 0));
    }
    let image = op.checked_mul(basis)?;
    basis
        .solve_left_cols(&image)?
        .ok_or_else(|| Error::Internal("subspace is not invariant under the operator".into()))
}
