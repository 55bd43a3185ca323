//! The Hecke algebra as a Z-lattice of matrices: trace form, discriminant,
//! reducedness and the sublattice spanned by the first g operators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::divisor_count;
use crate::exactlin::{hnf, hnf_and_index, is_squarefree, minpoly, IntLattice, Integer, RatMatrix, RatPoly, Rational};
use crate::error::{Error, Result};
use crate::modsym::{gamma0_index, ModSymSpace};

/// `ceil(k * mu / 12)` with `mu` the index of Γ0(N).
pub fn sturm_bound(n: u64, k: u64) -> u64 {
    (k * gamma0_index(n)).div_ceil(12)
}

/// Matrix of pairwise `trace(x_i x_j)`.
pub fn trace_gram(basis: &[RatMatrix]) -> Result<RatMatrix> {
    let r = basis.len();
    let mut g = RatMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = basis[i].checked_mul(&basis[j])?.trace()?;
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(g)
}

fn to_integer(x: Rational, what: &str) -> Result<Integer> {
    if !x.is_integer() {
        return Err(Error::Internal(format!("{what} {x} is not an integer")));
    }
    Ok(x.to_integer())
}

/// Z-span of a list of commuting matrices, stored as scaled flat rows.
#[derive(Clone, Debug)]
pub struct HeckeLattice {
    level: u64,
    size: usize,
    generators: Vec<RatMatrix>,
    scale: Integer,
    lattice: IntLattice,
    basis: Vec<RatMatrix>,
    gram: RatMatrix,
    discr: Integer,
}

impl HeckeLattice {
    /// Lattice spanned by `generators` (square matrices of one size).
    pub fn from_matrices(level: u64, generators: Vec<RatMatrix>) -> Result<Self> {
        let size = generators.first().map_or(0, RatMatrix::rows);
        if generators.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::DimensionMismatch("generators must be square of one size".into()));
        }
        let scale = generators.iter().fold(BigInt::one(), |acc, m| num_integer::Integer::lcm(&acc, &m.denominator_lcm()));
        let rows: Vec<Vec<Integer>> = generators.iter().map(|m| flatten(m, &scale)).collect();
        let lattice = IntLattice::span(size * size, &rows)?;
        let basis: Vec<RatMatrix> = lattice.basis().iter().map(|r| unflatten(r, size, &scale)).collect();
        let gram = trace_gram(&basis)?;
        let discr = to_integer(gram.det()?, "discriminant")?;
        Ok(HeckeLattice { level, size, generators, scale, lattice, basis, gram, discr })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Size of the matrices (the dimension acted on).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    /// Z-basis (in Hermite normal form) as matrices.
    pub fn basis_matrices(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn scale(&self) -> &Integer {
        &self.scale
    }

    /// Discriminant of the trace form; 1 for the zero algebra.
    pub fn discr(&self) -> &Integer {
        &self.discr
    }

    fn sublattice(&self, mats: &[RatMatrix]) -> Result<IntLattice> {
        let rows: Vec<Vec<Integer>> = mats.iter().map(|m| flatten(m, &self.scale)).collect();
        IntLattice::span(self.size * self.size, &rows)
    }
}

fn flatten(m: &RatMatrix, scale: &Integer) -> Vec<Integer> {
    m.entries().iter().map(|x| (x * Rational::from_integer(scale.clone())).to_integer()).collect()
}

fn unflatten(row: &[Integer], size: usize, scale: &Integer) -> RatMatrix {
    let data = row.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect();
    RatMatrix::new(size, size, data).expect("row has size^2 entries")
}

/// T_1..T_b (b the Sturm bound) on the cuspidal +-space.
pub fn build_hecke_lattice(space: &ModSymSpace) -> Result<HeckeLattice> {
    let n = space.level();
    let b = sturm_bound(n, 2);
    let gens = (1..=b).map(|i| space.hecke_matrix(i).map(|h| (*h.matrix).clone())).collect::<Result<Vec<_>>>()?;
    let lat = HeckeLattice::from_matrices(n, gens)?;
    if lat.rank() != space.plus_dim() {
        return Err(Error::Internal(format!("level {n}: Hecke lattice rank {} but genus {}", lat.rank(), space.plus_dim())));
    }
    Ok(lat)
}

pub fn discr(lattice: &HeckeLattice) -> Integer {
    lattice.discr().clone()
}

/// Two independent witnesses of reducedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCertificate {
    pub reduced: bool,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub discr: Integer,
    /// Coefficients `c_i` of the combination `sum c_i * basis_i`.
    pub combination: Vec<i64>,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub combination_minpoly: RatPoly,
    /// Minimal polynomial of the combination is squarefree of degree = rank.
    pub generator_squarefree: bool,
}

const COMBINATION_SEED: u64 = 0x4865_636b_6531;
const COMBINATION_TRIES: usize = 16;

/// `discr != 0`, cross-checked against a squarefree minimal polynomial of
/// full degree for a small random integer combination of the basis.
pub fn is_reduced(lattice: &HeckeLattice) -> Result<ReducedCertificate> {
    let r = lattice.rank();
    let by_discr = !lattice.discr().is_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(COMBINATION_SEED);
    let mut last = (Vec::new(), RatPoly::one(), r == 0);
    if r > 0 {
        for _ in 0..COMBINATION_TRIES {
            let c: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
            let mut m = RatMatrix::zeros(lattice.size(), lattice.size());
            for (ci, bi) in c.iter().zip(lattice.basis_matrices()) {
                m = m.checked_add(&bi.scale(&Rational::from_integer((*ci).into())))?;
            }
            let f = minpoly(&m)?;
            let ok = f.degree() == Some(r) && is_squarefree(&f)?.squarefree;
            last = (c, f, ok);
            if ok {
                break;
            }
        }
    }
    let (combination, combination_minpoly, generator_squarefree) = last;
    if by_discr != generator_squarefree {
        return Err(Error::Internal(format!(
            "level {}: discriminant and generator witnesses disagree on reducedness",
            lattice.level()
        )));
    }
    Ok(ReducedCertificate { reduced: by_discr, discr: lattice.discr().clone(), combination, combination_minpoly, generator_squarefree })
}

/// The span of the first g generators (g = rank) and its index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TPrimeReport {
    pub rank: usize,
    /// `|T/T'|`, or `None` when T' has smaller rank.
    #[serde(serialize_with = "serde_opt_int")]
    pub index: Option<Integer>,
    #[serde(serialize_with = "serde_opt_int")]
    pub discr_tprime: Option<Integer>,
    /// `discr(T) * |T/T'|^2 == discr(T')`.
    pub identity_holds: bool,
}

fn serde_opt_int<S: serde::Serializer>(x: &Option<Integer>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_str("infinite"),
    }
}

pub fn tprime_index(lattice: &HeckeLattice) -> Result<TPrimeReport> {
    let g = lattice.rank();
    let first = &lattice.generators()[..g.min(lattice.generators().len())];
    let sub = lattice.sublattice(first)?;
    if sub.rank() < g {
        return Ok(TPrimeReport { rank: sub.rank(), index: None, discr_tprime: None, identity_holds: false });
    }
    let index = hnf_and_index(&sub, lattice.lattice())?;
    let discr_tprime = to_integer(trace_gram(first)?.det()?, "discriminant of T'")?;
    let identity_holds = lattice.discr() * &index * &index == discr_tprime;
    if !identity_holds {
        return Err(Error::Internal(format!("level {}: discr(T)|T/T'|^2 != discr(T')", lattice.level())));
    }
    Ok(TPrimeReport { rank: g, index: Some(index), discr_tprime: Some(discr_tprime), identity_holds })
}

/// `(g!)^2 * prod_{i<=g} sigma(i)^2 * i`, with sigma the divisor count: the
/// square of `g! * prod sigma(i) sqrt(i)`.
pub fn weil_bound_squared(g: usize) -> Integer {
    let mut b = BigInt::one();
    for i in 1..=g as u64 {
        let s = BigInt::from(divisor_count(i));
        b *= BigInt::from(i) * BigInt::from(i) * &s * &s * BigInt::from(i);
    }
    b
}

/// Comparison of `|discr(T')|` with the product bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub bound_squared: Integer,
    /// `|discr(T')|^2 <= bound_squared`, i.e. `|discr(T')| <= g! prod sigma(i) sqrt(i)`.
    pub linear_form_holds: bool,
    /// `|discr(T')| <= bound_squared`, i.e. `|det a_i(w_j)| <= g! prod sigma(i) sqrt(i)`.
    pub determinant_form_holds: bool,
}

pub fn bound_check(discr_tprime: &Integer, g: usize) -> BoundCheck {
    let bound_squared = weil_bound_squared(g);
    let a = discr_tprime.abs();
    BoundCheck { linear_form_holds: &a * &a <= bound_squared, determinant_form_holds: a <= bound_squared, bound_squared }
}

/// One line of the discriminant sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    #[serde(rename = "N")]
    pub level: u64,
    pub g: usize,
    pub b: u64,
    pub rank: usize,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub discr_t: Integer,
    #[serde(serialize_with = "serde_opt_int")]
    pub discr_tprime: Option<Integer>,
    #[serde(serialize_with = "serde_opt_int")]
    pub index: Option<Integer>,
    pub reduced: bool,
    pub bound_check: Option<BoundCheck>,
}

pub fn discriminant_report(space: &ModSymSpace) -> Result<DiscriminantReport> {
    let lat = build_hecke_lattice(space)?;
    let red = is_reduced(&lat)?;
    let tp = tprime_index(&lat)?;
    let bc = tp.discr_tprime.as_ref().map(|d| bound_check(d, lat.rank()));
    Ok(DiscriminantReport {
        level: space.level(),
        g: space.plus_dim(),
        b: sturm_bound(space.level(), 2),
        rank: lat.rank(),
        discr_t: lat.discr().clone(),
        discr_tprime: tp.discr_tprime,
        index: tp.index,
        reduced: red.reduced,
        bound_check: bc,
    })
}

/// Hermite normal form of a lattice's scaled coordinates (exposed for reports).
pub fn hnf_rows(lattice: &HeckeLattice) -> Vec<Vec<Integer>> {
    hnf(lattice.lattice().basis())
}
