//! The space of weight-2 modular symbols for Γ0(N) as a quotient of the free
//! module on Manin symbols.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::cusps::{Cusp, CuspList};
use super::genus::genus_x0;
use super::heilbronn::heilbronn;
use super::p1::P1List;
use crate::arith::{ext_gcd, gcd};
use crate::exactlin::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Sparse coordinates of one Manin symbol in the quotient basis.
pub type SparseVec = Vec<(usize, Rational)>;

/// T_n restricted to the cuspidal +-subspace of a fixed level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    pub level: u64,
    pub n: u64,
    pub matrix: Arc<RatMatrix>,
}

#[derive(Debug)]
pub struct ModSymSpace {
    level: u64,
    p1: P1List,
    coords: Vec<SparseVec>,
    basis: Vec<usize>,
    star: RatMatrix,
    cusps: Vec<Cusp>,
    boundary: RatMatrix,
    plus_basis: RatMatrix,
    plus_rows: Vec<usize>,
    hecke: RwLock<BTreeMap<u64, Arc<RatMatrix>>>,
}

/// Signed union-find for the two-term relations `x_i = s * x_j`.
struct SignedUnion {
    parent: Vec<usize>,
    sign: Vec<i8>,
    zero: Vec<bool>,
}

impl SignedUnion {
    fn new(n: usize) -> Self {
        SignedUnion { parent: (0..n).collect(), sign: vec![1; n], zero: vec![false; n] }
    }

    /// `(root, s)` with `x_i = s * x_root`.
    fn find(&mut self, i: usize) -> (usize, i8) {
        let p = self.parent[i];
        if p == i {
            return (i, 1);
        }
        let (r, s) = self.find(p);
        self.parent[i] = r;
        self.sign[i] *= s;
        (r, self.sign[i])
    }

    fn relate(&mut self, i: usize, j: usize, s: i8) {
        let (ri, si) = self.find(i);
        let (rj, sj) = self.find(j);
        let t = si * s * sj;
        if ri == rj {
            if t == -1 {
                self.zero[ri] = true;
            }
            return;
        }
        self.parent[ri] = rj;
        self.sign[ri] = t;
        self.zero[rj] |= self.zero[ri];
    }
}

/// Lift `(c : d)` to a matrix `[[a, b], [c, d]]` in SL2(Z) with the bottom row
/// congruent to `(c, d)` mod N.
pub(crate) fn lift_to_sl2(n: u64, c: u64, d: u64) -> [i64; 4] {
    let ni = n as i64;
    let (mut c, mut d) = (c as i64, d as i64);
    if n == 1 {
        (c, d) = (0, 1);
    } else if c == 0 {
        c = ni;
    } else {
        while gcd(c, d) != 1 {
            d += ni;
        }
    }
    let (_, x, y) = ext_gcd(c, d);
    // c*x + d*y = 1, so a = y, b = -x
    [y, -x, c, d]
}

fn add_scaled(acc: &mut [Rational], v: &SparseVec, s: &Rational) {
    for (k, x) in v {
        acc[*k] += x * s;
    }
}

impl ModSymSpace {
    pub fn new(n: u64) -> Result<Self> {
        let p1 = P1List::new(n)?;
        let len = p1.len();

        let mut uf = SignedUnion::new(len);
        for i in 0..len {
            uf.relate(i, p1.s_image(i), -1);
        }
        let mut class_of_root = vec![usize::MAX; len];
        let mut roots = Vec::new();
        let mut sym_class: Vec<Option<(usize, i8)>> = vec![None; len];
        for i in 0..len {
            let (r, s) = uf.find(i);
            if uf.zero[r] {
                continue;
            }
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = roots.len();
                roots.push(r);
            }
            sym_class[i] = Some((class_of_root[r], s));
        }
        let nclass = roots.len();

        // three-term relations, one per tau-orbit
        let mut seen = vec![false; len];
        let mut rels: Vec<Vec<Rational>> = Vec::new();
        for i in 0..len {
            if seen[i] {
                continue;
            }
            let orbit = [i, p1.tau_image(i), p1.tau_image(p1.tau_image(i))];
            let mut row = vec![Rational::zero(); nclass];
            for &j in &orbit {
                seen[j] = true;
            }
            // a fixed point gives 3x = 0; the orbit list repeats it three times
            for &j in &orbit {
                if let Some((cl, s)) = sym_class[j] {
                    row[cl] += Rational::from_integer(s.into());
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rels.push(row);
            }
        }
        let (free, pivot_expr) = if rels.is_empty() {
            ((0..nclass).collect::<Vec<_>>(), Vec::new())
        } else {
            let rel = RatMatrix::from_rows(rels)?;
            let (r, pivots) = rel.rref();
            let free: Vec<usize> = (0..nclass).filter(|c| !pivots.contains(c)).collect();
            let expr: Vec<(usize, Vec<Rational>)> =
                pivots.iter().enumerate().map(|(row, &p)| (p, r.row(row).to_vec())).collect();
            (free, expr)
        };
        let dim = free.len();
        let mut class_coords: Vec<SparseVec> = vec![Vec::new(); nclass];
        for (j, &f) in free.iter().enumerate() {
            class_coords[f] = vec![(j, Rational::one())];
        }
        for (p, row) in &pivot_expr {
            class_coords[*p] = free
                .iter()
                .enumerate()
                .filter(|(_, &f)| !row[f].is_zero())
                .map(|(j, &f)| (j, -row[f].clone()))
                .collect();
        }
        let coords: Vec<SparseVec> = sym_class
            .iter()
            .map(|sc| match sc {
                None => Vec::new(),
                Some((cl, s)) => {
                    let s = Rational::from_integer((*s).into());
                    class_coords[*cl].iter().map(|(k, x)| (*k, x * &s)).collect()
                }
            })
            .collect();
        let basis: Vec<usize> = free.iter().map(|&f| roots[f]).collect();

        let mut star = RatMatrix::zeros(dim, dim);
        for (j, &b) in basis.iter().enumerate() {
            for (k, x) in &coords[p1.star_image(b)] {
                star.set(*k, j, x.clone());
            }
        }

        let mut cl = CuspList::new(n);
        let mut entries: Vec<(usize, usize, i64)> = Vec::new();
        for (j, &b) in basis.iter().enumerate() {
            let e = p1.get(b);
            let [a, bb, c, d] = lift_to_sl2(n, e.c, e.d);
            // g{0, oo} = {b/d, a/c}; boundary is [a/c] - [b/d]
            entries.push((cl.index_of(Cusp::new(a, c)), j, 1));
            entries.push((cl.index_of(Cusp::new(bb, d)), j, -1));
        }
        let mut boundary = RatMatrix::zeros(cl.len(), dim);
        for (i, j, s) in entries {
            let v = boundary.get(i, j) + Rational::from_integer(s.into());
            boundary.set(i, j, v);
        }

        let stacked = boundary.vstack(&(&star - &RatMatrix::identity(dim)))?;
        let (plus_basis, plus_rows) = stacked.kernel();

        let space = ModSymSpace {
            level: n,
            p1,
            coords,
            basis,
            star,
            cusps: cl.reps().to_vec(),
            boundary,
            plus_basis,
            plus_rows,
            hecke: RwLock::new(BTreeMap::new()),
        };
        let g = genus_x0(n) as usize;
        if space.plus_dim() != g {
            return Err(Error::Internal(format!(
                "level {n}: cuspidal +-dimension {} differs from genus {g}",
                space.plus_dim()
            )));
        }
        Ok(space)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    /// Dimension of the full space of modular symbols.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the cuspidal +-subspace.
    pub fn plus_dim(&self) -> usize {
        self.plus_basis.cols()
    }

    /// P¹ indices of the Manin symbols forming the basis.
    pub fn basis_symbols(&self) -> &[usize] {
        &self.basis
    }

    /// Coordinates of the Manin symbol with P¹ index `i`.
    pub fn symbol_coords(&self, i: usize) -> &SparseVec {
        &self.coords[i]
    }

    /// Dense coordinates of `(c : d)`, zero when the pair is not in P¹.
    pub fn manin_vector(&self, c: i64, d: i64) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        if let Some(i) = self.p1.index(c, d) {
            add_scaled(&mut v, &self.coords[i], &Rational::one());
        }
        v
    }

    /// Matrix of `x -> sum_i w_i * x_{f_i(x)}` where `f` acts on the
    /// bottom row of each basis symbol; pairs outside P¹ are dropped.
    pub(crate) fn symbol_map(&self, images: impl Fn(u64, u64) -> Vec<(i64, i64)>) -> RatMatrix {
        let dim = self.dim();
        let mut m = RatMatrix::zeros(dim, dim);
        for (j, &b) in self.basis.iter().enumerate() {
            let e = self.p1.get(b);
            let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
            for (c, d) in images(e.c, e.d) {
                if let Some(i) = self.p1.index(c, d) {
                    *counts.entry(i).or_insert(0) += 1;
                }
            }
            let mut col = vec![Rational::zero(); dim];
            for (i, k) in counts {
                add_scaled(&mut col, &self.coords[i], &Rational::from_integer(k.into()));
            }
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn star(&self) -> &RatMatrix {
        &self.star
    }

    /// `((1 + star)/2, (1 - star)/2)`.
    pub fn star_projectors(&self) -> (RatMatrix, RatMatrix) {
        let id = RatMatrix::identity(self.dim());
        let half = Rational::new(1.into(), 2.into());
        ((&id + &self.star).scale(&half), (&id - &self.star).scale(&half))
    }

    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    /// Boundary map to the free module on cusp classes.
    pub fn boundary(&self) -> &RatMatrix {
        &self.boundary
    }

    /// Basis (columns) of the full cuspidal subspace.
    pub fn cuspidal_basis(&self) -> RatMatrix {
        self.boundary.kernel().0
    }

    /// Basis (columns) of the cuspidal +-subspace. The rows listed by
    /// [`Self::plus_pivot_rows`] form an identity block.
    pub fn plus_basis(&self) -> &RatMatrix {
        &self.plus_basis
    }

    pub fn plus_pivot_rows(&self) -> &[usize] {
        &self.plus_rows
    }

    /// Coordinates in the +-basis of vectors (columns) lying in the
    /// cuspidal +-subspace.
    pub fn plus_coordinates(&self, v: &RatMatrix) -> Result<RatMatrix> {
        if v.rows() != self.dim() {
            return Err(Error::DimensionMismatch("vector length differs from space dimension".into()));
        }
        let x = v.select_rows(&self.plus_rows);
        if self.plus_basis.checked_mul(&x)? != *v {
            return Err(Error::Internal(format!("level {}: vector leaves the cuspidal +-subspace", self.level)));
        }
        Ok(x)
    }

    /// Restriction of a full-space operator to the cuspidal +-subspace.
    pub fn restrict_to_plus(&self, op: &RatMatrix) -> Result<RatMatrix> {
        self.plus_coordinates(&op.checked_mul(&self.plus_basis)?)
    }

    /// T_n on the full space.
    pub fn hecke_full(&self, n: u64) -> Result<RatMatrix> {
        if n == 0 {
            return Err(Error::InvalidInput("Hecke index must be positive".into()));
        }
        let hs = heilbronn(n);
        Ok(self.symbol_map(|c, d| {
            let (c, d) = (c as i64, d as i64);
            hs.iter().map(|[a, b, cc, dd]| (c * a + d * cc, c * b + d * dd)).collect()
        }))
    }

    /// T_n on the cuspidal +-subspace, computed once and cached.
    pub fn hecke_matrix(&self, n: u64) -> Result<HeckeMatrix> {
        if let Some(m) = self.hecke.read().expect("hecke cache poisoned").get(&n) {
            return Ok(HeckeMatrix { level: self.level, n, matrix: m.clone() });
        }
        let m = Arc::new(self.restrict_to_plus(&self.hecke_full(n)?)?);
        let m = self.hecke.write().expect("hecke cache poisoned").entry(n).or_insert(m).clone();
        Ok(HeckeMatrix { level: self.level, n, matrix: m })
    }

    /// Snapshot of the cached +-space Hecke matrices, ordered by n.
    pub fn cached_hecke(&self) -> Vec<(u64, Arc<RatMatrix>)> {
        self.hecke.read().expect("hecke cache poisoned").iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Seed the cache (used when loading persisted matrices).
    pub(crate) fn insert_cached(&self, n: u64, m: RatMatrix) -> Result<()> {
        let g = self.plus_dim();
        if m.rows() != g || m.cols() != g {
            return Err(Error::DimensionMismatch(format!("cached T_{n} has wrong shape")));
        }
        self.hecke.write().expect("hecke cache poisoned").entry(n).or_insert_with(|| Arc::new(m));
        Ok(())
    }
}
